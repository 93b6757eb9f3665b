//! Randomized verification of the ring identities that the relations
//! rest on: a determinant identity valid over every commutative ring
//! (exercised over Z, Z/4, Z/6, F_2, F_9), its two cofactor-expansion
//! ingredients, and its specialization to the `u`/`d`-polynomials —
//! plus the exact-division check behind the Dickson-factor reduction.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Fq};
use crate::groups::star;
use crate::invgen::{build_det_d, build_u, q_pow, InvariantSet};
use crate::mpoly::{BiPoly, Monomial};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// A supported coefficient ring. Z/m with composite `m` exercises the
/// zero-divisor generality; no operation here ever inverts.
#[derive(Debug, Clone)]
pub enum Ring {
    Int,
    Zmod(u64),
    Gf(Arc<FieldCtx>),
}

/// A tagged element of one of the supported rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingElem {
    Int(BigInt),
    Zmod(u64),
    Gf(Fq),
}

impl Ring {
    pub fn name(&self) -> String {
        match self {
            Ring::Int => "Z".to_string(),
            Ring::Zmod(m) => format!("Z/{m}"),
            Ring::Gf(ctx) => format!("F_{}", ctx.q),
        }
    }

    pub fn zero(&self) -> RingElem {
        match self {
            Ring::Int => RingElem::Int(BigInt::zero()),
            Ring::Zmod(_) => RingElem::Zmod(0),
            Ring::Gf(ctx) => RingElem::Gf(ctx.zero()),
        }
    }

    pub fn one(&self) -> RingElem {
        match self {
            Ring::Int => RingElem::Int(BigInt::from(1)),
            Ring::Zmod(_) => RingElem::Zmod(1),
            Ring::Gf(ctx) => RingElem::Gf(ctx.one()),
        }
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (self, a, b) {
            (Ring::Int, RingElem::Int(x), RingElem::Int(y)) => RingElem::Int(x + y),
            (Ring::Zmod(m), RingElem::Zmod(x), RingElem::Zmod(y)) => {
                RingElem::Zmod((x + y) % m)
            }
            (Ring::Gf(ctx), RingElem::Gf(x), RingElem::Gf(y)) => RingElem::Gf(ctx.add(x, y)),
            _ => panic!("ring/element mismatch"),
        }
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        match (self, a) {
            (Ring::Int, RingElem::Int(x)) => RingElem::Int(-x),
            (Ring::Zmod(m), RingElem::Zmod(x)) => RingElem::Zmod((m - x) % m),
            (Ring::Gf(ctx), RingElem::Gf(x)) => RingElem::Gf(ctx.neg(x)),
            _ => panic!("ring/element mismatch"),
        }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (self, a, b) {
            (Ring::Int, RingElem::Int(x), RingElem::Int(y)) => RingElem::Int(x * y),
            (Ring::Zmod(m), RingElem::Zmod(x), RingElem::Zmod(y)) => {
                RingElem::Zmod((x * y) % m)
            }
            (Ring::Gf(ctx), RingElem::Gf(x), RingElem::Gf(y)) => RingElem::Gf(ctx.mul(x, y)),
            _ => panic!("ring/element mismatch"),
        }
    }

    pub fn is_zero(&self, a: &RingElem) -> bool {
        match a {
            RingElem::Int(x) => x.is_zero(),
            RingElem::Zmod(x) => *x == 0,
            RingElem::Gf(x) => x.is_zero(),
        }
    }

    pub fn random(&self, rng: &mut impl Rng) -> RingElem {
        match self {
            Ring::Int => RingElem::Int(BigInt::from(rng.gen_range(-9i64..=9))),
            Ring::Zmod(m) => RingElem::Zmod(rng.gen_range(0..*m)),
            Ring::Gf(ctx) => RingElem::Gf(ctx.decode(rng.gen_range(0..ctx.q as usize))),
        }
    }

    pub fn random_matrix(&self, n: usize, rng: &mut impl Rng) -> Vec<Vec<RingElem>> {
        (0..n)
            .map(|_| (0..n).map(|_| self.random(rng)).collect())
            .collect()
    }
}

/// Division-free determinant by cofactor expansion along the first
/// row; intended for `n <= 5`. The empty matrix has determinant 1.
pub fn det(ring: &Ring, m: &[Vec<RingElem>]) -> Result<RingElem> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::ArityMismatch(row.len(), n));
        }
    }
    if n == 0 {
        return Ok(ring.one());
    }
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = ring.zero();
    for col in 0..n {
        if ring.is_zero(&m[0][col]) {
            continue;
        }
        let minor: Vec<Vec<RingElem>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let cof = ring.mul(&m[0][col], &det(ring, &minor)?);
        if col % 2 == 0 {
            acc = ring.add(&acc, &cof);
        } else {
            acc = ring.sub(&acc, &cof);
        }
    }
    Ok(acc)
}

/// Submatrix of `m` restricted to the given (0-based) rows and columns.
fn submatrix(m: &[Vec<RingElem>], rows: &[usize], cols: &[usize]) -> Vec<Vec<RingElem>> {
    rows.iter()
        .map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect())
        .collect()
}

fn sign_of(ring: &Ring, parity: usize) -> RingElem {
    if parity % 2 == 0 {
        ring.one()
    } else {
        ring.neg(&ring.one())
    }
}

/// The determinant identity over an arbitrary commutative ring: the
/// triple sum of minor products against `a_{i,l} b_{j,n+1-l}` equals
/// `det(a[1..k][1..k]) * det(b[1..n+1-k][1..n+1-k])`. The `k = 1` and
/// `k = n` minor conventions fall out of the empty-determinant rule.
pub fn check_det_identity(
    ring: &Ring,
    n: usize,
    k: usize,
    a: &[Vec<RingElem>],
    b: &[Vec<RingElem>],
) -> Result<bool> {
    assert!(1 <= k && k <= n);
    let cols_a: Vec<usize> = (0..k - 1).collect();
    let cols_b: Vec<usize> = (0..n - k).collect();
    let mut lhs = ring.zero();
    for i in 1..=k {
        let rows_a: Vec<usize> = (0..k).filter(|&r| r != i - 1).collect();
        let da = det(ring, &submatrix(a, &rows_a, &cols_a))?;
        for j in 1..=(n + 1 - k) {
            let rows_b: Vec<usize> = (0..n + 1 - k).filter(|&r| r != j - 1).collect();
            let db = det(ring, &submatrix(b, &rows_b, &cols_b))?;
            for l in 1..=n {
                let mut term = ring.mul(&a[i - 1][l - 1], &b[j - 1][n - l]);
                term = ring.mul(&term, &da);
                term = ring.mul(&term, &db);
                term = ring.mul(&term, &sign_of(ring, i + j + n + 1));
                lhs = ring.add(&lhs, &term);
            }
        }
    }
    let rows_ka: Vec<usize> = (0..k).collect();
    let cols_ka: Vec<usize> = (0..k).collect();
    let rows_kb: Vec<usize> = (0..n + 1 - k).collect();
    let cols_kb: Vec<usize> = (0..n + 1 - k).collect();
    let rhs = ring.mul(
        &det(ring, &submatrix(a, &rows_ka, &cols_ka))?,
        &det(ring, &submatrix(b, &rows_kb, &cols_kb))?,
    );
    Ok(lhs == rhs)
}

/// The row-expansion ingredient on the `a`-side: `Σ_i (-1)^i a_{i,l} *
/// minor_i = (-1)^k det(a-columns 1..k-1 extended by column l)`, which
/// vanishes for `l <= k-1` (repeated column).
pub fn check_cofactor_x(ring: &Ring, k: usize, l: usize, a: &[Vec<RingElem>]) -> Result<bool> {
    let cols: Vec<usize> = (0..k - 1).collect();
    let mut lhs = ring.zero();
    for i in 1..=k {
        let rows: Vec<usize> = (0..k).filter(|&r| r != i - 1).collect();
        let minor = det(ring, &submatrix(a, &rows, &cols))?;
        let term = ring.mul(&a[i - 1][l - 1], &minor);
        lhs = ring.add(&lhs, &ring.mul(&term, &sign_of(ring, i)));
    }
    let mut ext_cols = cols.clone();
    ext_cols.push(l - 1);
    let rows: Vec<usize> = (0..k).collect();
    let rhs = ring.mul(
        &det(ring, &submatrix(a, &rows, &ext_cols))?,
        &sign_of(ring, k),
    );
    if lhs != rhs {
        return Ok(false);
    }
    if l <= k - 1 && !ring.is_zero(&rhs) {
        return Ok(false);
    }
    Ok(true)
}

/// The column-extension ingredient on the `b`-side, with its vanishing
/// range `l >= k+1`.
pub fn check_cofactor_y(
    ring: &Ring,
    n: usize,
    k: usize,
    l: usize,
    b: &[Vec<RingElem>],
) -> Result<bool> {
    let m = n + 1 - k;
    let cols: Vec<usize> = (0..n - k).collect();
    let mut lhs = ring.zero();
    for j in 1..=m {
        let rows: Vec<usize> = (0..m).filter(|&r| r != j - 1).collect();
        let minor = det(ring, &submatrix(b, &rows, &cols))?;
        let term = ring.mul(&b[j - 1][n - l], &minor);
        lhs = ring.add(&lhs, &ring.mul(&term, &sign_of(ring, j)));
    }
    let mut ext_cols = cols.clone();
    ext_cols.push(n - l);
    let rows: Vec<usize> = (0..m).collect();
    let rhs = ring.mul(
        &det(ring, &submatrix(b, &rows, &ext_cols))?,
        &sign_of(ring, m),
    );
    if lhs != rhs {
        return Ok(false);
    }
    if l >= k + 1 && !ring.is_zero(&rhs) {
        return Ok(false);
    }
    Ok(true)
}

/// The specialization of the determinant identity to the polynomial
/// ring: `Σ_{i,j} (-1)^{i+j+n+1} u_{i-j}^{q^{min(i,j)}} d_{k-1,i}
/// d_{n-k,j}* = d_{k,k} d_{n+1-k,n+1-k}*`.
pub fn check_specialization(field: &Arc<FieldCtx>, n: usize, k: usize) -> Result<bool> {
    assert!(1 <= k && k <= n);
    let q = field.q;
    let mut lhs = BiPoly::zero(field.clone(), n);
    for i in 0..k {
        let da = build_det_d(field, n, k - 1, i)?;
        for j in 0..=(n - k) {
            let db = star(&build_det_d(field, n, n - k, j)?);
            let u = build_u(field, n, i as i64 - j as i64)?
                .pow(q_pow(q, std::cmp::min(i, j) as u64)?)?;
            let mut term = u.mul(&da)?.mul(&db)?;
            if (i + j + n + 1) % 2 == 1 {
                term = term.neg();
            }
            lhs = lhs.add(&term)?;
        }
    }
    let rhs = build_det_d(field, n, k, k)?.mul(&star(&build_det_d(field, n, n + 1 - k, n + 1 - k)?))?;
    Ok(lhs == rhs)
}

/// The inner-sum specialization: `Σ_l x_l^{q^{i-1}} y_l^{q^{j-1}} =
/// u_{i-j}^{q^{min(i-1,j-1)}}`.
pub fn check_inner_sum(field: &Arc<FieldCtx>, n: usize, i: usize, j: usize) -> Result<bool> {
    let q = field.q;
    let mut lhs = BiPoly::zero(field.clone(), n);
    for l in 1..=n {
        let x = BiPoly::var_x(field.clone(), n, l).pow(q_pow(q, i as u64 - 1)?)?;
        let y = BiPoly::var_y(field.clone(), n, l).pow(q_pow(q, j as u64 - 1)?)?;
        lhs = lhs.add(&x.mul(&y)?)?;
    }
    let rhs = build_u(field, n, i as i64 - j as i64)?
        .pow(q_pow(q, std::cmp::min(i - 1, j - 1) as u64)?)?;
    Ok(lhs == rhs)
}

/// Exact division of `num` by a single nonzero divisor under the
/// canonical monomial order; errors if any reduction step leaves a
/// leading term not divisible by the divisor's leading term.
pub fn exact_divide(num: &BiPoly, den: &BiPoly) -> Result<BiPoly> {
    if den.is_zero() {
        return Err(Error::ZeroInverse);
    }
    let field = num.field().clone();
    let n = num.n();
    let (lt_m, lt_c) = den
        .terms()
        .iter()
        .next_back()
        .map(|(m, c)| (m.clone(), c.clone()))
        .expect("nonzero divisor");
    let lt_c_inv = field.inv(&lt_c)?;
    let mut rem = num.clone();
    let mut quot = BiPoly::zero(field.clone(), n);
    while !rem.is_zero() {
        let (m, c) = rem
            .terms()
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        let divisible = m
            .xexp
            .iter()
            .zip(&lt_m.xexp)
            .all(|(&a, &b)| a >= b)
            && m.yexp.iter().zip(&lt_m.yexp).all(|(&a, &b)| a >= b);
        if !divisible {
            return Err(Error::Unsupported(format!(
                "not divisible: leading term {:?} is not a multiple of the divisor's",
                m
            )));
        }
        let qm = Monomial {
            xexp: m.xexp.iter().zip(&lt_m.xexp).map(|(&a, &b)| a - b).collect(),
            yexp: m.yexp.iter().zip(&lt_m.yexp).map(|(&a, &b)| a - b).collect(),
        };
        let qc = field.mul(&c, &lt_c_inv);
        let qterm = BiPoly::from_terms(field.clone(), n, vec![(qm, qc)]);
        rem = rem.sub(&qterm.mul(den)?)?;
        quot = quot.add(&qterm)?;
    }
    Ok(quot)
}

/// Both sides of the specialized identity are divisible by
/// `∏_{j<k} f_j * ∏_{j<=n-k} f_j*`; verified by exact division.
pub fn check_divisibility(field: &Arc<FieldCtx>, n: usize, k: usize) -> Result<bool> {
    let inv = InvariantSet::build(field, n)?;
    let mut divisor = BiPoly::one(field.clone(), n);
    for j in 1..k {
        divisor = divisor.mul(inv.f(j))?;
    }
    for j in 1..=(n - k) {
        divisor = divisor.mul(inv.fstar(j))?;
    }
    let rhs = build_det_d(field, n, k, k)?
        .mul(&star(&build_det_d(field, n, n + 1 - k, n + 1 - k)?))?;
    let q = field.q;
    let mut lhs = BiPoly::zero(field.clone(), n);
    for i in 0..k {
        let da = build_det_d(field, n, k - 1, i)?;
        for j in 0..=(n - k) {
            let db = star(&build_det_d(field, n, n - k, j)?);
            let u = build_u(field, n, i as i64 - j as i64)?
                .pow(q_pow(q, std::cmp::min(i, j) as u64)?)?;
            let mut term = u.mul(&da)?.mul(&db)?;
            if (i + j + n + 1) % 2 == 1 {
                term = term.neg();
            }
            lhs = lhs.add(&term)?;
        }
    }
    let ok_rhs = exact_divide(&rhs, &divisor).is_ok();
    let ok_lhs = exact_divide(&lhs, &divisor).is_ok();
    Ok(ok_rhs && ok_lhs)
}

/// Result of a seeded fuzzing run.
#[derive(Debug, Clone)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: usize,
    pub failures: usize,
    pub failing_cases: Vec<String>,
}

impl FuzzReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "seed": self.seed,
            "trials": self.trials,
            "failures": self.failures,
            "failing_cases": self.failing_cases,
        })
    }
}

/// The standard ring suite: Z, Z/4, Z/6, F_2, F_9.
pub fn standard_rings() -> Result<Vec<Ring>> {
    Ok(vec![
        Ring::Int,
        Ring::Zmod(4),
        Ring::Zmod(6),
        Ring::Gf(FieldCtx::new(2, 1)?),
        Ring::Gf(FieldCtx::new(3, 2)?),
    ])
}

/// Seeded random verification of the determinant identity: `trials`
/// instances per `(n, k)` pair per ring, `n` up to `n_max`.
pub fn fuzz_det_identity(n_max: usize, trials: usize, seed: u64) -> Result<FuzzReport> {
    let rings = standard_rings()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0usize;
    let mut failures = 0usize;
    let mut failing_cases = Vec::new();
    for n in 1..=n_max {
        for k in 1..=n {
            for ring in &rings {
                for t in 0..trials {
                    let a = ring.random_matrix(n, &mut rng);
                    let b = ring.random_matrix(n, &mut rng);
                    total += 1;
                    if !check_det_identity(ring, n, k, &a, &b)? {
                        failures += 1;
                        if failing_cases.len() < 16 {
                            failing_cases.push(format!(
                                "ring {} n {n} k {k} trial {t}",
                                ring.name()
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(FuzzReport {
        seed,
        trials: total,
        failures,
        failing_cases,
    })
}

//! Constructors for the named invariants: the pairing invariants `u_j`,
//! the orbit products `f_i` and `f_i*`, their `(q-1)`-st powers
//! `ftilde_i` and `ftilde_i*`, the Dickson sums `c_{s,t}`, and the
//! Moore-type determinants `d_{k,i}`.
//!
//! `f_i` is built from the explicit `q^{i-1}`-fold product formula; the
//! orbit code in `groups` is the cross-check, not the constructor.

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::groups;
use crate::mpoly::BiPoly;
use std::collections::BTreeMap;
use std::sync::Arc;

/// `q^k`, checked.
pub fn q_pow(q: u64, k: u64) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(q).ok_or(Error::Overflow("q-power"))?;
    }
    Ok(acc)
}

/// `u_j = Σ_k x_k^{q^j} y_k` for `j >= 0`, `u_{-j} = Σ_k x_k y_k^{q^j}`.
pub fn build_u(field: &Arc<FieldCtx>, n: usize, j: i64) -> Result<BiPoly> {
    let e = q_pow(field.q, j.unsigned_abs())?;
    let mut acc = BiPoly::zero(field.clone(), n);
    for k in 1..=n {
        let x = BiPoly::var_x(field.clone(), n, k);
        let y = BiPoly::var_y(field.clone(), n, k);
        let term = if j >= 0 {
            x.pow(e)?.mul(&y)?
        } else {
            x.mul(&y.pow(e)?)?
        };
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// The orbit product `f_i = prod over (a_1..a_{i-1}) in F_q^{i-1} of
/// (x_i + Σ_j a_j x_j)`, homogeneous of degree `q^{i-1}`.
pub fn build_f(field: &Arc<FieldCtx>, n: usize, i: usize) -> Result<BiPoly> {
    assert!(1 <= i && i <= n);
    let elements = field.elements();
    let mut acc = BiPoly::one(field.clone(), n);
    let mut tuple = vec![0usize; i - 1];
    loop {
        let mut factor = BiPoly::var_x(field.clone(), n, i);
        for (j, &idx) in tuple.iter().enumerate() {
            let c = &elements[idx];
            if !c.is_zero() {
                factor = factor.add(&BiPoly::var_x(field.clone(), n, j + 1).scalar_mul(c))?;
            }
        }
        acc = acc.mul(&factor)?;
        // advance the mixed-radix tuple
        let mut pos = 0;
        loop {
            if pos == tuple.len() {
                return Ok(acc);
            }
            tuple[pos] += 1;
            if tuple[pos] < elements.len() {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

pub fn build_fstar(field: &Arc<FieldCtx>, n: usize, i: usize) -> Result<BiPoly> {
    Ok(groups::star(&build_f(field, n, i)?))
}

pub fn build_ftilde(field: &Arc<FieldCtx>, n: usize, i: usize) -> Result<BiPoly> {
    build_f(field, n, i)?.pow(field.q - 1)
}

pub fn build_ftildestar(field: &Arc<FieldCtx>, n: usize, i: usize) -> Result<BiPoly> {
    Ok(groups::star(&build_ftilde(field, n, i)?))
}

/// Strictly increasing `m`-tuples from `1..=s` (1-based).
pub(crate) fn increasing_tuples(s: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m == 0 {
        out.push(Vec::new());
        return out;
    }
    if m > s {
        return out;
    }
    let mut cur = Vec::with_capacity(m);
    fn rec(start: usize, s: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for j in start..=s {
            cur.push(j);
            rec(j + 1, s, m, cur, out);
            cur.pop();
        }
    }
    rec(1, s, m, &mut cur, &mut out);
    out
}

/// The Dickson sum `c_{s,t} = Σ_{1<=j_1<...<j_{s-t}<=s} prod_l
/// ftilde_{j_l}^{q^{t+l-j_l}}`, with `c_{s,s} = 1`. A polynomial in the
/// x-variables only; the starred version is `star` of this.
pub fn build_dickson(field: &Arc<FieldCtx>, n: usize, s: usize, t: usize) -> Result<BiPoly> {
    assert!(t <= s && s <= n);
    if t == s {
        return Ok(BiPoly::one(field.clone(), n));
    }
    let q = field.q;
    let ftilde: Vec<BiPoly> = (1..=s)
        .map(|i| build_ftilde(field, n, i))
        .collect::<Result<_>>()?;
    let mut acc = BiPoly::zero(field.clone(), n);
    for tuple in increasing_tuples(s, s - t) {
        let mut prod = BiPoly::one(field.clone(), n);
        for (l, &jl) in tuple.iter().enumerate() {
            // exponent q^{t + (l+1) - j_l}; t + l + 1 >= j_l always holds
            let exp = q_pow(q, (t + l + 1 - jl) as u64)?;
            prod = prod.mul(&ftilde[jl - 1].pow(exp)?)?;
        }
        acc = acc.add(&prod)?;
    }
    Ok(acc)
}

/// Determinant of a square matrix of polynomials by cofactor expansion
/// (division-free; intended for `k <= 5`).
pub fn poly_det(field: &Arc<FieldCtx>, n: usize, m: &[Vec<BiPoly>]) -> Result<BiPoly> {
    let k = m.len();
    if k == 0 {
        return Ok(BiPoly::one(field.clone(), n));
    }
    if k == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = BiPoly::zero(field.clone(), n);
    for (col, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BiPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cof = entry.mul(&poly_det(field, n, &minor)?)?;
        if col % 2 == 0 {
            acc = acc.add(&cof)?;
        } else {
            acc = acc.sub(&cof)?;
        }
    }
    Ok(acc)
}

/// The Moore-type determinant `d_{k,i}`: the `k x k` determinant with
/// rows `x_j^{q^m}` for `m = 0..=k`, the row `m = i` omitted.
pub fn build_det_d(field: &Arc<FieldCtx>, n: usize, k: usize, i: usize) -> Result<BiPoly> {
    assert!(k <= n && i <= k);
    let q = field.q;
    let mut rows = Vec::with_capacity(k);
    for m in 0..=k {
        if m == i {
            continue;
        }
        let exp = q_pow(q, m as u64)?;
        let row: Vec<BiPoly> = (1..=k)
            .map(|j| BiPoly::var_x(field.clone(), n, j).pow(exp))
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    poly_det(field, n, &rows)
}

/// All named invariants for one `(n, q)`, with the `u`-window
/// `[-(n-1), n-1]` (wide enough for `U_n`, `B_n` and `GL_n` uses).
#[derive(Debug, Clone)]
pub struct InvariantSet {
    pub n: usize,
    pub field: Arc<FieldCtx>,
    /// `f[i-1]` is `f_i`.
    pub f: Vec<BiPoly>,
    pub fstar: Vec<BiPoly>,
    pub ftilde: Vec<BiPoly>,
    pub ftildestar: Vec<BiPoly>,
    pub u: BTreeMap<i64, BiPoly>,
}

impl InvariantSet {
    pub fn build(field: &Arc<FieldCtx>, n: usize) -> Result<InvariantSet> {
        let q = field.q;
        let f: Vec<BiPoly> = (1..=n)
            .map(|i| build_f(field, n, i))
            .collect::<Result<_>>()?;
        let fstar: Vec<BiPoly> = f.iter().map(groups::star).collect();
        let ftilde: Vec<BiPoly> = f.iter().map(|p| p.pow(q - 1)).collect::<Result<_>>()?;
        let ftildestar: Vec<BiPoly> = ftilde.iter().map(groups::star).collect();
        let mut u = BTreeMap::new();
        let w = n as i64 - 1;
        for j in -w..=w {
            u.insert(j, build_u(field, n, j)?);
        }
        Ok(InvariantSet {
            n,
            field: field.clone(),
            f,
            fstar,
            ftilde,
            ftildestar,
            u,
        })
    }

    pub fn f(&self, i: usize) -> &BiPoly {
        &self.f[i - 1]
    }
    pub fn fstar(&self, i: usize) -> &BiPoly {
        &self.fstar[i - 1]
    }
    pub fn ftilde(&self, i: usize) -> &BiPoly {
        &self.ftilde[i - 1]
    }
    pub fn ftildestar(&self, i: usize) -> &BiPoly {
        &self.ftildestar[i - 1]
    }
    pub fn u(&self, j: i64) -> &BiPoly {
        &self.u[&j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{act, orbit, star, GroupKind, GroupSpec};
    use crate::mpoly::Bidegree;

    fn fq(p: u64) -> Arc<FieldCtx> {
        FieldCtx::new(p, 1).unwrap()
    }

    #[test]
    fn u_formulas() {
        let f2 = fq(2);
        let u0 = build_u(&f2, 2, 0).unwrap();
        assert_eq!(u0, BiPoly::parse(f2.clone(), 2, "x1*y1 + x2*y2").unwrap());
        let u1 = build_u(&f2, 2, 1).unwrap();
        assert_eq!(u1, BiPoly::parse(f2.clone(), 2, "x1^2*y1 + x2^2*y2").unwrap());
        // u_i = F^i(u_0), u_{-i} = (F*)^i(u_0), u_{-i} = u_i^*
        assert_eq!(u1, u0.frobenius_x().unwrap());
        assert_eq!(build_u(&f2, 2, -1).unwrap(), u0.frobenius_y().unwrap());
        for j in -1..=1i64 {
            assert_eq!(star(&build_u(&f2, 2, j).unwrap()), build_u(&f2, 2, -j).unwrap());
        }
    }

    #[test]
    fn f_small_cases() {
        for p in [2u64, 3, 5] {
            let f = fq(p);
            let q = f.q;
            assert_eq!(build_f(&f, 2, 1).unwrap(), BiPoly::var_x(f.clone(), 2, 1));
            // f_2 = x2^q - x2 x1^{q-1}
            let f2 = build_f(&f, 2, 2).unwrap();
            let minus_one = q - 1;
            let expect = BiPoly::parse(
                f.clone(),
                2,
                &format!("x2^{q} + {minus_one}*x1^{}*x2", q - 1),
            )
            .unwrap();
            assert_eq!(f2, expect);
            // f_2* = y1^q - y1 y2^{q-1}
            let f2s = build_fstar(&f, 2, 2).unwrap();
            let expect = BiPoly::parse(
                f.clone(),
                2,
                &format!("y1^{q} + {minus_one}*y1*y2^{}", q - 1),
            )
            .unwrap();
            assert_eq!(f2s, expect);
        }
    }

    #[test]
    fn f_degree_and_orbit_cross_check() {
        for (n, p) in [(2usize, 2u64), (2, 3), (3, 2)] {
            let field = fq(p);
            let q = field.q;
            let un = GroupSpec::new(GroupKind::Un, n, field.clone());
            for i in 1..=n {
                let fi = build_f(&field, n, i).unwrap();
                assert_eq!(fi.bidegree(), Bidegree::Of(q.pow(i as u32 - 1), 0));
                // equals the product over the U_n-orbit of x_i
                let orb = orbit(&un, &BiPoly::var_x(field.clone(), n, i), 1000).unwrap();
                assert_eq!(orb.len(), q.pow(i as u32 - 1) as usize);
                let mut prod = BiPoly::one(field.clone(), n);
                for h in &orb {
                    prod = prod.mul(h).unwrap();
                }
                assert_eq!(fi, prod);
            }
        }
    }

    #[test]
    fn ftilde_is_negated_bn_orbit_product() {
        let field = fq(3);
        let n = 2;
        let bn = GroupSpec::new(GroupKind::Bn, n, field.clone());
        for i in 1..=n {
            let orb = orbit(&bn, &BiPoly::var_x(field.clone(), n, i), 1000).unwrap();
            let mut prod = BiPoly::one(field.clone(), n);
            for h in &orb {
                prod = prod.mul(h).unwrap();
            }
            assert_eq!(build_ftilde(&field, n, i).unwrap(), prod.neg());
        }
    }

    #[test]
    fn dickson_base_cases() {
        let f3 = fq(3);
        let n = 3;
        for s in 0..=n {
            assert_eq!(
                build_dickson(&f3, n, s, s).unwrap(),
                BiPoly::one(f3.clone(), n)
            );
        }
        // c_{1,0} = x1^{q-1}
        assert_eq!(
            build_dickson(&f3, n, 1, 0).unwrap(),
            BiPoly::parse(f3.clone(), n, "x1^2").unwrap()
        );
        // c_{k,0} = prod ftilde_l
        for k in 1..=n {
            let mut prod = BiPoly::one(f3.clone(), n);
            for l in 1..=k {
                prod = prod.mul(&build_ftilde(&f3, n, l).unwrap()).unwrap();
            }
            assert_eq!(build_dickson(&f3, n, k, 0).unwrap(), prod);
        }
    }

    #[test]
    fn det_d_base_and_recursion() {
        let f2 = fq(2);
        let n = 3;
        assert_eq!(
            build_det_d(&f2, n, 1, 1).unwrap(),
            BiPoly::var_x(f2.clone(), n, 1)
        );
        // d_{k+1,k+1} = d_{k,k} f_{k+1}
        for k in 1..n {
            let lhs = build_det_d(&f2, n, k + 1, k + 1).unwrap();
            let rhs = build_det_d(&f2, n, k, k)
                .unwrap()
                .mul(&build_f(&f2, n, k + 1).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn moore_dickson_spot_check() {
        // d_{k,i} = prod_{j<=k} f_j * c_{k,i} at (k,i) = (2,1), n=3, q=2
        let f2 = fq(2);
        let n = 3;
        let lhs = build_det_d(&f2, n, 2, 1).unwrap();
        let prod = build_f(&f2, n, 1)
            .unwrap()
            .mul(&build_f(&f2, n, 2).unwrap())
            .unwrap();
        let rhs = prod.mul(&build_dickson(&f2, n, 2, 1).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn invariance_under_generating_sets() {
        for (n, p) in [(2usize, 3u64), (3, 2)] {
            let field = fq(p);
            let inv = InvariantSet::build(&field, n).unwrap();
            let un = GroupSpec::new(GroupKind::Un, n, field.clone());
            let bn = GroupSpec::new(GroupKind::Bn, n, field.clone());
            let gln = GroupSpec::new(GroupKind::GLn, n, field.clone());
            for sigma in un.generators() {
                for i in 1..=n {
                    assert_eq!(&act(&sigma, inv.f(i)).unwrap(), inv.f(i));
                    assert_eq!(&act(&sigma, inv.fstar(i)).unwrap(), inv.fstar(i));
                }
            }
            for sigma in bn.generators() {
                for i in 1..=n {
                    assert_eq!(&act(&sigma, inv.ftilde(i)).unwrap(), inv.ftilde(i));
                    assert_eq!(&act(&sigma, inv.ftildestar(i)).unwrap(), inv.ftildestar(i));
                }
            }
            for sigma in gln.generators() {
                for j in -(n as i64 - 1)..=(n as i64 - 1) {
                    assert_eq!(&act(&sigma, inv.u(j)).unwrap(), inv.u(j));
                }
                for t in 0..n {
                    let c = build_dickson(&field, n, n, t).unwrap();
                    assert_eq!(act(&sigma, &c).unwrap(), c, "c_{{{n},{t}}} not GL-invariant");
                    let cs = star(&c);
                    assert_eq!(act(&sigma, &cs).unwrap(), cs);
                }
            }
        }
    }

    #[test]
    fn u_bidegrees() {
        let f3 = fq(3);
        let n = 3;
        for j in -2..=2i64 {
            let u = build_u(&f3, n, j).unwrap();
            let expect = if j >= 0 {
                Bidegree::Of(3u64.pow(j as u32), 1)
            } else {
                Bidegree::Of(1, 3u64.pow((-j) as u32))
            };
            assert_eq!(u.bidegree(), expect, "u_{j}");
        }
    }
}

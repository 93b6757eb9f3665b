//! Sparse multivariate polynomials over `F_q` in the `2n` variables
//! `x_1..x_n, y_1..y_n`, carrying the bigrading that assigns `(1,0)` to
//! every `x_i` and `(0,1)` to every `y_i`.
//!
//! Terms are kept in a canonical total order (graded-lexicographic,
//! `x_1 > ... > x_n > y_1 > ... > y_n`) so that rendering, equality and
//! golden files are deterministic. The zero polynomial has an empty
//! term map and its bidegree is reported as a distinct answer, never as
//! `(0,0)`.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Fq};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Shared behavior of the monomial alphabets used by [`BiPoly`] and by
/// the abstract generator-symbol polynomials in `presentation`.
pub trait MonoOps: Ord + Clone {
    fn mono_mul(&self, other: &Self) -> Result<Self>;
    /// Multiplies every exponent by `factor` (the termwise part of a
    /// characteristic-`p` power).
    fn scale_exp(&self, factor: u64) -> Result<Self>;
}

/// A monomial in `x_1..x_n, y_1..y_n`, stored as two exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub xexp: Vec<u64>,
    pub yexp: Vec<u64>,
}

impl Monomial {
    pub fn unit(n: usize) -> Monomial {
        Monomial {
            xexp: vec![0; n],
            yexp: vec![0; n],
        }
    }

    pub fn bidegree(&self) -> Result<(u64, u64)> {
        let mut d: u64 = 0;
        for &a in &self.xexp {
            d = d.checked_add(a).ok_or(Error::Overflow("x-degree"))?;
        }
        let mut e: u64 = 0;
        for &b in &self.yexp {
            e = e.checked_add(b).ok_or(Error::Overflow("y-degree"))?;
        }
        Ok((d, e))
    }

    fn total_degree(&self) -> Result<u64> {
        let (d, e) = self.bidegree()?;
        d.checked_add(e).ok_or(Error::Overflow("total degree"))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded-lex: total degree first, then lexicographically with
    /// `x_1 > ... > x_n > y_1 > ... > y_n`.
    fn cmp(&self, other: &Self) -> Ordering {
        let ta = self.total_degree().expect("overflow-checked on construction");
        let tb = other.total_degree().expect("overflow-checked on construction");
        ta.cmp(&tb)
            .then_with(|| self.xexp.cmp(&other.xexp))
            .then_with(|| self.yexp.cmp(&other.yexp))
    }
}

impl MonoOps for Monomial {
    fn mono_mul(&self, other: &Self) -> Result<Monomial> {
        if self.xexp.len() != other.xexp.len() {
            return Err(Error::ArityMismatch(self.xexp.len(), other.xexp.len()));
        }
        let add = |u: &[u64], v: &[u64]| -> Result<Vec<u64>> {
            u.iter()
                .zip(v)
                .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow("exponent")))
                .collect()
        };
        let m = Monomial {
            xexp: add(&self.xexp, &other.xexp)?,
            yexp: add(&self.yexp, &other.yexp)?,
        };
        m.total_degree()?;
        Ok(m)
    }

    fn scale_exp(&self, factor: u64) -> Result<Monomial> {
        let scale = |u: &[u64]| -> Result<Vec<u64>> {
            u.iter()
                .map(|&a| a.checked_mul(factor).ok_or(Error::Overflow("exponent")))
                .collect()
        };
        let m = Monomial {
            xexp: scale(&self.xexp)?,
            yexp: scale(&self.yexp)?,
        };
        m.total_degree()?;
        Ok(m)
    }
}

// ---- generic sparse-map arithmetic, shared with the symbol polynomials ----

pub(crate) fn map_add_term<M: Ord>(ctx: &FieldCtx, map: &mut BTreeMap<M, Fq>, m: M, c: Fq) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = ctx.add(o.get(), &c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

pub(crate) fn map_mul<M: MonoOps>(
    ctx: &FieldCtx,
    a: &BTreeMap<M, Fq>,
    b: &BTreeMap<M, Fq>,
) -> Result<BTreeMap<M, Fq>> {
    let mut out = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.mono_mul(mb)?;
            let c = ctx.mul(ca, cb);
            map_add_term(ctx, &mut out, m, c);
        }
    }
    Ok(out)
}

/// Termwise `p`-th power: valid in characteristic `p` because the map
/// `f -> f^p` is a ring endomorphism.
pub(crate) fn map_pow_p<M: MonoOps>(
    ctx: &FieldCtx,
    a: &BTreeMap<M, Fq>,
) -> Result<BTreeMap<M, Fq>> {
    let mut out = BTreeMap::new();
    for (m, c) in a {
        out.insert(m.scale_exp(ctx.p)?, ctx.frobenius(c));
    }
    Ok(out)
}

/// `a^k` by base-`p` digit decomposition of `k`; each `p`-th power is a
/// termwise operation, and the digit powers are small repeated products.
pub(crate) fn map_pow<M: MonoOps>(
    ctx: &FieldCtx,
    a: &BTreeMap<M, Fq>,
    k: u64,
    unit: M,
) -> Result<BTreeMap<M, Fq>> {
    let mut acc = BTreeMap::new();
    acc.insert(unit, ctx.one());
    if k == 0 {
        return Ok(acc);
    }
    let mut base = a.clone();
    let mut rem = k;
    while rem > 0 {
        let digit = rem % ctx.p;
        for _ in 0..digit {
            acc = map_mul(ctx, &acc, &base)?;
        }
        rem /= ctx.p;
        if rem > 0 {
            base = map_pow_p(ctx, &base)?;
        }
    }
    Ok(acc)
}

/// The bidegree of a polynomial: a pair for bihomogeneous nonzero
/// input, and distinct answers for the zero polynomial and for
/// non-bihomogeneous input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bidegree {
    Zero,
    Mixed,
    Of(u64, u64),
}

/// A sparse bigraded polynomial. No stored coefficient is zero.
#[derive(Debug, Clone)]
pub struct BiPoly {
    n: usize,
    field: Arc<FieldCtx>,
    terms: BTreeMap<Monomial, Fq>,
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && *self.field == *other.field && self.terms == other.terms
    }
}
impl Eq for BiPoly {}

impl PartialOrd for BiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for BiPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.terms.cmp(&other.terms))
    }
}

impl BiPoly {
    pub fn zero(field: Arc<FieldCtx>, n: usize) -> BiPoly {
        BiPoly {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Arc<FieldCtx>, n: usize, c: Fq) -> BiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(n), c);
        }
        BiPoly { n, field, terms }
    }

    pub fn one(field: Arc<FieldCtx>, n: usize) -> BiPoly {
        let c = field.one();
        BiPoly::constant(field, n, c)
    }

    /// The variable `x_i` (1-based).
    pub fn var_x(field: Arc<FieldCtx>, n: usize, i: usize) -> BiPoly {
        assert!(1 <= i && i <= n);
        let mut m = Monomial::unit(n);
        m.xexp[i - 1] = 1;
        let c = field.one();
        BiPoly::from_terms(field, n, vec![(m, c)])
    }

    /// The variable `y_i` (1-based).
    pub fn var_y(field: Arc<FieldCtx>, n: usize, i: usize) -> BiPoly {
        assert!(1 <= i && i <= n);
        let mut m = Monomial::unit(n);
        m.yexp[i - 1] = 1;
        let c = field.one();
        BiPoly::from_terms(field, n, vec![(m, c)])
    }

    pub fn from_terms(field: Arc<FieldCtx>, n: usize, terms: Vec<(Monomial, Fq)>) -> BiPoly {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.xexp.len(), n);
            map_add_term(&field, &mut map, m, c);
        }
        BiPoly {
            n,
            field,
            terms: map,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Fq> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn compat(&self, other: &BiPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch(self.n, other.n));
        }
        if *self.field != *other.field {
            return Err(Error::MixedField);
        }
        Ok(())
    }

    pub fn add(&self, other: &BiPoly) -> Result<BiPoly> {
        self.compat(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            map_add_term(&self.field, &mut terms, m.clone(), c.clone());
        }
        Ok(BiPoly {
            n: self.n,
            field: self.field.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> BiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), self.field.neg(c)))
            .collect();
        BiPoly {
            n: self.n,
            field: self.field.clone(),
            terms,
        }
    }

    pub fn sub(&self, other: &BiPoly) -> Result<BiPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiPoly) -> Result<BiPoly> {
        self.compat(other)?;
        Ok(BiPoly {
            n: self.n,
            field: self.field.clone(),
            terms: map_mul(&self.field, &self.terms, &other.terms)?,
        })
    }

    pub fn scalar_mul(&self, c: &Fq) -> BiPoly {
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            map_add_term(&self.field, &mut terms, m.clone(), self.field.mul(a, c));
        }
        BiPoly {
            n: self.n,
            field: self.field.clone(),
            terms,
        }
    }

    pub fn pow(&self, k: u64) -> Result<BiPoly> {
        Ok(BiPoly {
            n: self.n,
            field: self.field.clone(),
            terms: map_pow(&self.field, &self.terms, k, Monomial::unit(self.n))?,
        })
    }

    pub fn bidegree(&self) -> Bidegree {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Bidegree::Zero,
            Some(m) => m.bidegree().expect("checked on construction"),
        };
        for m in it {
            if m.bidegree().expect("checked on construction") != first {
                return Bidegree::Mixed;
            }
        }
        Bidegree::Of(first.0, first.1)
    }

    /// The substitution homomorphism sending `x_i` to `ximgs[i-1]` and
    /// `y_i` to `yimgs[i-1]`.
    pub fn substitute(&self, ximgs: &[BiPoly], yimgs: &[BiPoly]) -> Result<BiPoly> {
        if ximgs.len() != self.n || yimgs.len() != self.n {
            return Err(Error::ArityMismatch(ximgs.len() + yimgs.len(), 2 * self.n));
        }
        let out_n = ximgs.first().map(|p| p.n).unwrap_or(self.n);
        let mut cache: BTreeMap<(usize, u64), BiPoly> = BTreeMap::new();
        let mut power = |var: usize, img: &BiPoly, e: u64| -> Result<BiPoly> {
            if let Some(p) = cache.get(&(var, e)) {
                return Ok(p.clone());
            }
            let p = img.pow(e)?;
            cache.insert((var, e), p.clone());
            Ok(p)
        };
        let mut out = BiPoly::zero(self.field.clone(), out_n);
        for (m, c) in &self.terms {
            let mut prod = BiPoly::constant(self.field.clone(), out_n, c.clone());
            for (i, &a) in m.xexp.iter().enumerate() {
                if a > 0 {
                    prod = prod.mul(&power(i, &ximgs[i], a)?)?;
                }
            }
            for (i, &b) in m.yexp.iter().enumerate() {
                if b > 0 {
                    prod = prod.mul(&power(self.n + i, &yimgs[i], b)?)?;
                }
            }
            out = out.add(&prod)?;
        }
        Ok(out)
    }

    /// The homomorphism `F`: `x_i -> x_i^q`, `y_i -> y_i`. Coefficients
    /// lie in `F_q`, so only x-exponents scale.
    pub fn frobenius_x(&self) -> Result<BiPoly> {
        self.frob_block(true)
    }

    /// The homomorphism `F*`: `x_i -> x_i`, `y_i -> y_i^q`.
    pub fn frobenius_y(&self) -> Result<BiPoly> {
        self.frob_block(false)
    }

    fn frob_block(&self, xblock: bool) -> Result<BiPoly> {
        let q = self.field.q;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let scale = |u: &[u64]| -> Result<Vec<u64>> {
                u.iter()
                    .map(|&a| a.checked_mul(q).ok_or(Error::Overflow("exponent")))
                    .collect()
            };
            let nm = if xblock {
                Monomial {
                    xexp: scale(&m.xexp)?,
                    yexp: m.yexp.clone(),
                }
            } else {
                Monomial {
                    xexp: m.xexp.clone(),
                    yexp: scale(&m.yexp)?,
                }
            };
            nm.bidegree()?;
            terms.insert(nm, c.clone());
        }
        Ok(BiPoly {
            n: self.n,
            field: self.field.clone(),
            terms,
        })
    }

    // ---- rendering and parsing ----

    /// Canonical text form, leading term first, e.g. `x1^2*y3 + 2*x2`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            let is_unit_mono =
                m.xexp.iter().all(|&a| a == 0) && m.yexp.iter().all(|&b| b == 0);
            if *c != self.field.one() || is_unit_mono {
                factors.push(self.field.render(c));
            }
            for (i, &a) in m.xexp.iter().enumerate() {
                match a {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, a)),
                }
            }
            for (i, &b) in m.yexp.iter().enumerate() {
                match b {
                    0 => {}
                    1 => factors.push(format!("y{}", i + 1)),
                    _ => factors.push(format!("y{}^{}", i + 1, b)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }

    /// Parses the text form produced by [`BiPoly::render`]. Rejects
    /// malformed input with an error; never panics.
    pub fn parse(field: Arc<FieldCtx>, n: usize, input: &str) -> Result<BiPoly> {
        Parser {
            field: field.clone(),
            n,
            chars: input.as_bytes(),
            pos: 0,
        }
        .parse_poly()
    }

    /// JSON form: a list of `{"xexp": [...], "yexp": [...], "coeff": [...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let list: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                xexp: m.xexp.clone(),
                yexp: m.yexp.clone(),
                coeff: c.0.clone(),
            })
            .collect();
        serde_json::json!({ "n": self.n, "terms": list })
    }

    pub fn from_json(field: Arc<FieldCtx>, value: &serde_json::Value) -> Result<BiPoly> {
        #[derive(Deserialize)]
        struct PolyJson {
            n: usize,
            terms: Vec<TermJson>,
        }
        let pj: PolyJson = serde_json::from_value(value.clone())?;
        let mut out = BiPoly::zero(field.clone(), pj.n);
        for t in pj.terms {
            if t.xexp.len() != pj.n || t.yexp.len() != pj.n {
                return Err(Error::ArityMismatch(t.xexp.len(), pj.n));
            }
            if t.coeff.len() != field.e as usize || t.coeff.iter().any(|&c| c >= field.p) {
                return Err(Error::Parse("bad coefficient encoding".into()));
            }
            let m = Monomial {
                xexp: t.xexp,
                yexp: t.yexp,
            };
            m.total_degree()?;
            map_add_term(&field, &mut out.terms, m, Fq(t.coeff));
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    xexp: Vec<u64>,
    yexp: Vec<u64>,
    coeff: Vec<u64>,
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// ---- text parser ----

struct Parser<'a> {
    field: Arc<FieldCtx>,
    n: usize,
    chars: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected '{}' at byte {}",
                c as char, self.pos
            )))
        }
    }

    fn parse_u64(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add((c - b'0') as u64))
                    .ok_or(Error::Overflow("integer literal"))?;
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(Error::Parse(format!("expected integer at byte {start}")));
        }
        Ok(v)
    }

    fn parse_poly(&mut self) -> Result<BiPoly> {
        let mut out = BiPoly::zero(self.field.clone(), self.n);
        loop {
            let term = self.parse_term()?;
            out = out.add(&term)?;
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                }
                None => break,
                Some(c) => {
                    return Err(Error::Parse(format!(
                        "unexpected '{}' at byte {}",
                        c as char, self.pos
                    )))
                }
            }
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<BiPoly> {
        let mut acc = BiPoly::one(self.field.clone(), self.n);
        loop {
            self.skip_ws();
            let factor = self.parse_factor()?;
            acc = acc.mul(&factor)?;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let c = self.parse_ext_coeff()?;
                self.expect(b')')?;
                Ok(BiPoly::constant(self.field.clone(), self.n, c))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.parse_u64()?;
                let c = self.field.from_int((v % self.field.p) as i64);
                Ok(BiPoly::constant(self.field.clone(), self.n, c))
            }
            Some(b'x') | Some(b'y') => {
                let is_x = self.peek() == Some(b'x');
                self.pos += 1;
                let idx = self.parse_u64()? as usize;
                if idx == 0 || idx > self.n {
                    return Err(Error::Parse(format!("variable index {idx} out of range")));
                }
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.parse_u64()?
                } else {
                    1
                };
                let mut m = Monomial::unit(self.n);
                if is_x {
                    m.xexp[idx - 1] = exp;
                } else {
                    m.yexp[idx - 1] = exp;
                }
                m.total_degree()?;
                let one = self.field.one();
                Ok(BiPoly::from_terms(self.field.clone(), self.n, vec![(m, one)]))
            }
            other => Err(Error::Parse(format!(
                "unexpected {:?} at byte {}",
                other.map(|c| c as char),
                self.pos
            ))),
        }
    }

    /// A coefficient polynomial in `t`, e.g. `1+2*t+t^2`.
    fn parse_ext_coeff(&mut self) -> Result<Fq> {
        let mut acc = self.field.zero();
        loop {
            self.skip_ws();
            let mut scalar: u64 = 1;
            let mut has_scalar = false;
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                scalar = self.parse_u64()? % self.field.p;
                has_scalar = true;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                }
            }
            let mut texp: u64 = 0;
            if self.peek() == Some(b't') {
                self.pos += 1;
                texp = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    texp = self.parse_u64()?;
                }
            } else if !has_scalar {
                return Err(Error::Parse(format!(
                    "expected coefficient term at byte {}",
                    self.pos
                )));
            }
            if texp >= self.field.e as u64 {
                return Err(Error::Parse(format!("t-exponent {texp} out of range")));
            }
            let mut c = vec![0u64; self.field.e as usize];
            c[texp as usize] = scalar;
            acc = self.field.add(&acc, &Fq(c));
            self.skip_ws();
            if self.peek() == Some(b'+') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(acc)
    }
}

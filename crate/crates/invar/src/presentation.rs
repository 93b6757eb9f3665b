//! Abstract presentations of the invariant rings: generator symbols
//! with bidegrees, relation polynomials in those symbols, kernel
//! verification by substitution, and the mechanical structure checks
//! (which generator each relation can eliminate, and which `u_j` it is
//! "the relation for").
//!
//! Symbol polynomials reuse the sparse-map arithmetic from `mpoly`,
//! just over the generator-symbol alphabet instead of `x_i, y_i`.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Fq};
use crate::groups::GroupKind;
use crate::invgen::{increasing_tuples, q_pow, InvariantSet};
use crate::mpoly::{map_add_term, map_mul, map_pow, BiPoly, MonoOps};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A generator symbol of the presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenSymbol {
    /// `f_i`, the unipotent orbit product of `x_i`.
    F(usize),
    /// `f_i*`, its image under the `*` involution.
    Fs(usize),
    /// `ftilde_i = f_i^{q-1}`.
    Ft(usize),
    /// `ftilde_i*`.
    Fts(usize),
    /// `u_j`.
    U(i64),
}

impl GenSymbol {
    pub fn name(&self) -> String {
        match self {
            GenSymbol::F(i) => format!("F{i}"),
            GenSymbol::Fs(i) => format!("Fs{i}"),
            GenSymbol::Ft(i) => format!("Ft{i}"),
            GenSymbol::Fts(i) => format!("Fts{i}"),
            GenSymbol::U(j) if *j >= 0 => format!("U{j}"),
            GenSymbol::U(j) => format!("Um{}", -j),
        }
    }

    pub fn from_name(s: &str) -> Result<GenSymbol> {
        let bad = || Error::Parse(format!("unknown generator symbol '{s}'"));
        let idx = |rest: &str| -> Result<usize> { rest.parse().map_err(|_| bad()) };
        if let Some(r) = s.strip_prefix("Fts") {
            Ok(GenSymbol::Fts(idx(r)?))
        } else if let Some(r) = s.strip_prefix("Fs") {
            Ok(GenSymbol::Fs(idx(r)?))
        } else if let Some(r) = s.strip_prefix("Ft") {
            Ok(GenSymbol::Ft(idx(r)?))
        } else if let Some(r) = s.strip_prefix("F") {
            Ok(GenSymbol::F(idx(r)?))
        } else if let Some(r) = s.strip_prefix("Um") {
            Ok(GenSymbol::U(-(idx(r)? as i64)))
        } else if let Some(r) = s.strip_prefix("U") {
            Ok(GenSymbol::U(idx(r)? as i64))
        } else {
            Err(bad())
        }
    }

    /// The bidegree table for the generating invariants.
    pub fn bidegree(&self, q: u64) -> Result<(u64, u64)> {
        Ok(match self {
            GenSymbol::F(i) => (q_pow(q, *i as u64 - 1)?, 0),
            GenSymbol::Fs(i) => (0, q_pow(q, *i as u64 - 1)?),
            GenSymbol::Ft(i) => {
                let d = (q - 1)
                    .checked_mul(q_pow(q, *i as u64 - 1)?)
                    .ok_or(Error::Overflow("bidegree"))?;
                (d, 0)
            }
            GenSymbol::Fts(i) => {
                let e = (q - 1)
                    .checked_mul(q_pow(q, *i as u64 - 1)?)
                    .ok_or(Error::Overflow("bidegree"))?;
                (0, e)
            }
            GenSymbol::U(j) if *j >= 0 => (q_pow(q, *j as u64)?, 1),
            GenSymbol::U(j) => (1, q_pow(q, (-j) as u64)?),
        })
    }

    /// Image under the `*` involution.
    pub fn star(&self) -> GenSymbol {
        match self {
            GenSymbol::F(i) => GenSymbol::Fs(*i),
            GenSymbol::Fs(i) => GenSymbol::F(*i),
            GenSymbol::Ft(i) => GenSymbol::Fts(*i),
            GenSymbol::Fts(i) => GenSymbol::Ft(*i),
            GenSymbol::U(j) => GenSymbol::U(-j),
        }
    }

    /// True for the `f`-families living on the x-side (`F`, `Ft`).
    pub fn is_x_family(&self) -> bool {
        matches!(self, GenSymbol::F(_) | GenSymbol::Ft(_))
    }

    /// True for the `f`-families living on the y-side (`Fs`, `Fts`).
    pub fn is_y_family(&self) -> bool {
        matches!(self, GenSymbol::Fs(_) | GenSymbol::Fts(_))
    }

    pub fn is_f_family(&self) -> bool {
        self.is_x_family() || self.is_y_family()
    }
}

/// A monomial in generator symbols; no stored exponent is zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SymMono(pub BTreeMap<GenSymbol, u64>);

impl SymMono {
    pub fn unit() -> SymMono {
        SymMono(BTreeMap::new())
    }

    pub fn single(sym: GenSymbol, exp: u64) -> SymMono {
        let mut m = BTreeMap::new();
        if exp > 0 {
            m.insert(sym, exp);
        }
        SymMono(m)
    }

    pub fn exp_of(&self, sym: &GenSymbol) -> u64 {
        self.0.get(sym).copied().unwrap_or(0)
    }

    pub fn bidegree(&self, q: u64) -> Result<(u64, u64)> {
        let mut d: u64 = 0;
        let mut e: u64 = 0;
        for (sym, &exp) in &self.0 {
            let (a, b) = sym.bidegree(q)?;
            d = a
                .checked_mul(exp)
                .and_then(|v| d.checked_add(v))
                .ok_or(Error::Overflow("bidegree"))?;
            e = b
                .checked_mul(exp)
                .and_then(|v| e.checked_add(v))
                .ok_or(Error::Overflow("bidegree"))?;
        }
        Ok((d, e))
    }
}

impl MonoOps for SymMono {
    fn mono_mul(&self, other: &Self) -> Result<SymMono> {
        let mut out = self.0.clone();
        for (sym, &exp) in &other.0 {
            let e = out.entry(*sym).or_insert(0);
            *e = e.checked_add(exp).ok_or(Error::Overflow("exponent"))?;
        }
        Ok(SymMono(out))
    }

    fn scale_exp(&self, factor: u64) -> Result<SymMono> {
        let mut out = BTreeMap::new();
        for (sym, &exp) in &self.0 {
            out.insert(
                *sym,
                exp.checked_mul(factor).ok_or(Error::Overflow("exponent"))?,
            );
        }
        Ok(SymMono(out))
    }
}

/// A sparse polynomial in generator symbols over `F_q`.
#[derive(Debug, Clone)]
pub struct SymPoly {
    field: Arc<FieldCtx>,
    terms: BTreeMap<SymMono, Fq>,
}

impl PartialEq for SymPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.terms == other.terms
    }
}
impl Eq for SymPoly {}

impl SymPoly {
    pub fn zero(field: Arc<FieldCtx>) -> SymPoly {
        SymPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Arc<FieldCtx>, c: Fq) -> SymPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(SymMono::unit(), c);
        }
        SymPoly { field, terms }
    }

    pub fn one(field: Arc<FieldCtx>) -> SymPoly {
        let c = field.one();
        SymPoly::constant(field, c)
    }

    pub fn symbol(field: Arc<FieldCtx>, sym: GenSymbol) -> SymPoly {
        SymPoly::sym_pow(field, sym, 1)
    }

    pub fn sym_pow(field: Arc<FieldCtx>, sym: GenSymbol, exp: u64) -> SymPoly {
        let mut terms = BTreeMap::new();
        terms.insert(SymMono::single(sym, exp), field.one());
        SymPoly { field, terms }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<SymMono, Fq> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SymPoly) -> Result<SymPoly> {
        if *self.field != *other.field {
            return Err(Error::MixedField);
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            map_add_term(&self.field, &mut terms, m.clone(), c.clone());
        }
        Ok(SymPoly {
            field: self.field.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> SymPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), self.field.neg(c)))
            .collect();
        SymPoly {
            field: self.field.clone(),
            terms,
        }
    }

    pub fn sub(&self, other: &SymPoly) -> Result<SymPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SymPoly) -> Result<SymPoly> {
        if *self.field != *other.field {
            return Err(Error::MixedField);
        }
        Ok(SymPoly {
            field: self.field.clone(),
            terms: map_mul(&self.field, &self.terms, &other.terms)?,
        })
    }

    pub fn pow(&self, k: u64) -> Result<SymPoly> {
        Ok(SymPoly {
            field: self.field.clone(),
            terms: map_pow(&self.field, &self.terms, k, SymMono::unit())?,
        })
    }

    /// Applies the `*` involution to every symbol; coefficients in
    /// `F_q` are fixed.
    pub fn star(&self) -> SymPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let sm = SymMono(m.0.iter().map(|(s, &e)| (s.star(), e)).collect());
                (sm, c.clone())
            })
            .collect();
        SymPoly {
            field: self.field.clone(),
            terms,
        }
    }

    /// Bidegree under the generator bidegree table; `None` for the zero
    /// polynomial or non-bihomogeneous input.
    pub fn bidegree(&self) -> Result<Option<(u64, u64)>> {
        let q = self.field.q;
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Ok(None),
            Some(m) => m.bidegree(q)?,
        };
        for m in it {
            if m.bidegree(q)? != first {
                return Ok(None);
            }
        }
        Ok(Some(first))
    }

    /// All symbols occurring with nonzero exponent.
    pub fn symbols(&self) -> Vec<GenSymbol> {
        let mut set = std::collections::BTreeSet::new();
        for m in self.terms.keys() {
            for sym in m.0.keys() {
                set.insert(*sym);
            }
        }
        set.into_iter().collect()
    }

    pub fn degree_in(&self, sym: &GenSymbol) -> u64 {
        self.terms
            .keys()
            .map(|m| m.exp_of(sym))
            .max()
            .unwrap_or(0)
    }

    /// The coefficient of `sym` when the polynomial has degree exactly
    /// 1 in `sym`; `None` otherwise.
    pub fn linear_coefficient(&self, sym: &GenSymbol) -> Option<SymPoly> {
        if self.degree_in(sym) != 1 {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exp_of(sym) == 1 {
                let mut stripped = m.0.clone();
                stripped.remove(sym);
                map_add_term(&self.field, &mut terms, SymMono(stripped), c.clone());
            }
        }
        Some(SymPoly {
            field: self.field.clone(),
            terms,
        })
    }

    /// The "relation for `u_j`" property: exactly one monomial is a
    /// pure power of `U_j`, and every other monomial involves at least
    /// one symbol of the `f`-families.
    pub fn is_relation_for(&self, j: i64) -> bool {
        let mut pure = 0usize;
        for m in self.terms.keys() {
            let is_pure_uj = m.0.len() == 1 && m.0.contains_key(&GenSymbol::U(j));
            if is_pure_uj {
                pure += 1;
            } else if !m.0.keys().any(|s| s.is_f_family()) {
                return false;
            }
        }
        pure == 1
    }

    /// Degree 1 in `sym` with a single-monomial coefficient lying
    /// entirely in the x-side (`xside = true`) or y-side `f`-families.
    pub fn eliminates(&self, sym: &GenSymbol, xside: bool) -> bool {
        let coeff = match self.linear_coefficient(sym) {
            Some(c) => c,
            None => return false,
        };
        if coeff.terms.len() != 1 {
            return false;
        }
        let m = coeff.terms.keys().next().unwrap();
        m.0.keys()
            .all(|s| if xside { s.is_x_family() } else { s.is_y_family() })
    }

    /// Evaluation at concrete invariants, with a caller-supplied cache
    /// of symbol powers shared across relations.
    pub fn eval(
        &self,
        inv: &InvariantSet,
        cache: &mut BTreeMap<(GenSymbol, u64), BiPoly>,
    ) -> Result<BiPoly> {
        let n = inv.n;
        let field = inv.field.clone();
        let mut out = BiPoly::zero(field.clone(), n);
        for (m, c) in &self.terms {
            let mut prod = BiPoly::constant(field.clone(), n, c.clone());
            for (sym, &exp) in &m.0 {
                let key = (*sym, exp);
                let p = match cache.get(&key) {
                    Some(p) => p.clone(),
                    None => {
                        let base = match sym {
                            GenSymbol::F(i) => inv.f(*i),
                            GenSymbol::Fs(i) => inv.fstar(*i),
                            GenSymbol::Ft(i) => inv.ftilde(*i),
                            GenSymbol::Fts(i) => inv.ftildestar(*i),
                            GenSymbol::U(j) => inv.u(*j),
                        };
                        let p = base.pow(exp)?;
                        cache.insert(key, p.clone());
                        p
                    }
                };
                prod = prod.mul(&p)?;
            }
            out = out.add(&prod)?;
        }
        Ok(out)
    }

    /// Canonical text form, e.g. `U0^2 + 2*F1*Fs1*U0`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if *c != self.field.one() || m.0.is_empty() {
                factors.push(self.field.render(c));
            }
            for (sym, &exp) in &m.0 {
                if exp == 1 {
                    factors.push(sym.name());
                } else {
                    factors.push(format!("{}^{}", sym.name(), exp));
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Labels of the relation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelLabel {
    /// `R_k`.
    R(usize),
    /// `R_k^+`.
    RPlus(usize),
    /// `R_k^-`.
    RMinus(usize),
    /// `Rt_k` (the `(q-1)`-st power relation of the triangular case).
    Rt(usize),
    /// `Rt_k^+`.
    RtPlus(usize),
    /// The single relation of the `n = 2` unipotent case.
    R2Special,
    /// The symmetrized replacement for `R_3^-` at `n = 4`.
    R3Prime,
}

impl RelLabel {
    pub fn name(&self) -> String {
        match self {
            RelLabel::R(k) => format!("R{k}"),
            RelLabel::RPlus(k) => format!("R{k}+"),
            RelLabel::RMinus(k) => format!("R{k}-"),
            RelLabel::Rt(k) => format!("Rt{k}"),
            RelLabel::RtPlus(k) => format!("Rt{k}+"),
            RelLabel::R2Special => "R2special".to_string(),
            RelLabel::R3Prime => "R3prime".to_string(),
        }
    }

    pub fn from_name(s: &str) -> Result<RelLabel> {
        let bad = || Error::Parse(format!("unknown relation label '{s}'"));
        match s {
            "R2special" => return Ok(RelLabel::R2Special),
            "R3prime" => return Ok(RelLabel::R3Prime),
            _ => {}
        }
        let (body, plus, minus) = if let Some(b) = s.strip_suffix('+') {
            (b, true, false)
        } else if let Some(b) = s.strip_suffix('-') {
            (b, false, true)
        } else {
            (s, false, false)
        };
        let parse_k = |r: &str| -> Result<usize> { r.parse().map_err(|_| bad()) };
        if let Some(r) = body.strip_prefix("Rt") {
            let k = parse_k(r)?;
            if minus {
                return Err(bad());
            }
            Ok(if plus { RelLabel::RtPlus(k) } else { RelLabel::Rt(k) })
        } else if let Some(r) = body.strip_prefix('R') {
            let k = parse_k(r)?;
            Ok(if plus {
                RelLabel::RPlus(k)
            } else if minus {
                RelLabel::RMinus(k)
            } else {
                RelLabel::R(k)
            })
        } else {
            Err(bad())
        }
    }

    /// The bidegree table for the relations.
    pub fn expected_bidegree(&self, n: usize, q: u64) -> Result<(u64, u64)> {
        let qp = |k: u64| q_pow(q, k);
        Ok(match self {
            RelLabel::R(k) => (qp(*k as u64 - 1)?, qp((n - k) as u64)?),
            RelLabel::RPlus(k) => (qp(*k as u64)?, qp((n - k) as u64)?),
            RelLabel::RMinus(k) => (qp(*k as u64 - 1)?, qp((n + 1 - k) as u64)?),
            RelLabel::Rt(k) => {
                let d = (q - 1)
                    .checked_mul(qp(*k as u64 - 1)?)
                    .ok_or(Error::Overflow("bidegree"))?;
                let e = (q - 1)
                    .checked_mul(qp((n - k) as u64)?)
                    .ok_or(Error::Overflow("bidegree"))?;
                (d, e)
            }
            RelLabel::RtPlus(k) => (qp(*k as u64)?, qp((n - k) as u64)?),
            RelLabel::R2Special => (q, q),
            RelLabel::R3Prime => (qp(2)?, qp(2)?),
        })
    }
}

impl fmt::Display for RelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A labeled relation polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelPoly {
    pub label: RelLabel,
    pub poly: SymPoly,
}

/// The Dickson sum `c_{s,t}` expanded in presentation symbols. In the
/// unipotent alphabet (`tilde = false`) the `F_j` carry exponents
/// `q^{t+l-j_l}(q-1)`; in the triangular alphabet the `Ft_j` carry
/// `q^{t+l-j_l}`.
pub fn dickson_sym(
    field: &Arc<FieldCtx>,
    s: usize,
    t: usize,
    starred: bool,
    tilde: bool,
) -> Result<SymPoly> {
    assert!(t <= s);
    let q = field.q;
    let mut acc = SymPoly::zero(field.clone());
    for tuple in increasing_tuples(s, s - t) {
        let mut mono = SymMono::unit();
        for (l, &jl) in tuple.iter().enumerate() {
            let mut exp = q_pow(q, (t + l + 1 - jl) as u64)?;
            if !tilde {
                exp = exp.checked_mul(q - 1).ok_or(Error::Overflow("exponent"))?;
            }
            let sym = match (starred, tilde) {
                (false, false) => GenSymbol::F(jl),
                (true, false) => GenSymbol::Fs(jl),
                (false, true) => GenSymbol::Ft(jl),
                (true, true) => GenSymbol::Fts(jl),
            };
            mono = mono.mono_mul(&SymMono::single(sym, exp))?;
        }
        let one = SymPoly {
            field: field.clone(),
            terms: BTreeMap::from([(mono, field.one())]),
        };
        acc = acc.add(&one)?;
    }
    Ok(acc)
}

fn sign(field: &Arc<FieldCtx>, parity: usize) -> Fq {
    if parity % 2 == 0 {
        field.one()
    } else {
        field.neg(&field.one())
    }
}

/// The double sum `Σ_{i,j} (-1)^{i+j+n+1} c_{k-1,i} c*_{n-k,j}
/// U_{i-j+shift}^{q^{min(i+di, j+dj)}}`, with an optional `q`-power on
/// the unstarred (or starred) Dickson factor. Shared core of all
/// relation families.
#[allow(clippy::too_many_arguments)]
fn double_sum(
    field: &Arc<FieldCtx>,
    n: usize,
    k: usize,
    tilde: bool,
    shift: i64,
    di: usize,
    dj: usize,
    c_power: u64,
    cs_power: u64,
) -> Result<SymPoly> {
    let q = field.q;
    let mut acc = SymPoly::zero(field.clone());
    for i in 0..k {
        let ci = dickson_sym(field, k - 1, i, false, tilde)?.pow(c_power)?;
        for j in 0..=(n - k) {
            let cj = dickson_sym(field, n - k, j, true, tilde)?.pow(cs_power)?;
            let exp = q_pow(q, std::cmp::min(i + di, j + dj) as u64)?;
            let u = SymPoly::sym_pow(
                field.clone(),
                GenSymbol::U(i as i64 - j as i64 + shift),
                exp,
            );
            let term = ci
                .mul(&cj)?
                .mul(&u)?
                .mul(&SymPoly::constant(field.clone(), sign(field, i + j + n + 1)))?;
            acc = acc.add(&term)?;
        }
    }
    Ok(acc)
}

/// Builds the relation polynomial for one label at parameters `(n, q)`.
/// Labels may be built outside the theorem's lists (the symbol window
/// is open-ended), but `k` must stay in `1..=n` for the family to make
/// sense.
pub fn build_relation(field: &Arc<FieldCtx>, label: RelLabel, n: usize) -> Result<RelPoly> {
    let q = field.q;
    let check_k = |k: usize, hi: usize| -> Result<()> {
        if k < 1 || k > hi {
            Err(Error::Unsupported(format!(
                "relation {} out of range for n = {n}",
                label.name()
            )))
        } else {
            Ok(())
        }
    };
    let tail = |a: SymPoly, b: SymPoly| -> Result<SymPoly> { a.mul(&b) };
    let poly = match label {
        RelLabel::R(k) => {
            check_k(k, n)?;
            let s = double_sum(field, n, k, false, 0, 0, 0, 1, 1)?;
            s.sub(&tail(
                SymPoly::symbol(field.clone(), GenSymbol::F(k)),
                SymPoly::symbol(field.clone(), GenSymbol::Fs(n + 1 - k)),
            )?)?
        }
        RelLabel::RPlus(k) => {
            check_k(k, n)?;
            let s = double_sum(field, n, k, false, 1, 1, 0, q, 1)?;
            s.sub(&tail(
                SymPoly::sym_pow(field.clone(), GenSymbol::F(k), q),
                SymPoly::symbol(field.clone(), GenSymbol::Fs(n + 1 - k)),
            )?)?
        }
        RelLabel::RMinus(k) => {
            check_k(k, n)?;
            let s = double_sum(field, n, k, false, -1, 0, 1, 1, q)?;
            s.sub(&tail(
                SymPoly::symbol(field.clone(), GenSymbol::F(k)),
                SymPoly::sym_pow(field.clone(), GenSymbol::Fs(n + 1 - k), q),
            )?)?
        }
        RelLabel::Rt(k) => {
            check_k(k, n)?;
            let s = double_sum(field, n, k, true, 0, 0, 0, 1, 1)?;
            s.pow(q - 1)?.sub(&tail(
                SymPoly::symbol(field.clone(), GenSymbol::Ft(k)),
                SymPoly::symbol(field.clone(), GenSymbol::Fts(n + 1 - k)),
            )?)?
        }
        RelLabel::RtPlus(k) => {
            check_k(k, n)?;
            // the `F`-image minus the `Ft_k`-fold of the plain sum
            let plus = double_sum(field, n, k, true, 1, 1, 0, q, 1)?;
            let plain = double_sum(field, n, k, true, 0, 0, 0, 1, 1)?;
            plus.sub(&plain.mul(&SymPoly::symbol(field.clone(), GenSymbol::Ft(k)))?)?
        }
        RelLabel::R2Special => {
            if n != 2 {
                return Err(Error::Unsupported(
                    "the special relation exists only at n = 2".into(),
                ));
            }
            // U0^q - (F1*Fs1)^{q-1}*U0 - F1^q*Fs2 - Fs1^q*F2
            let u0q = SymPoly::sym_pow(field.clone(), GenSymbol::U(0), q);
            let mid = SymPoly::sym_pow(field.clone(), GenSymbol::F(1), q - 1)
                .mul(&SymPoly::sym_pow(field.clone(), GenSymbol::Fs(1), q - 1))?
                .mul(&SymPoly::symbol(field.clone(), GenSymbol::U(0)))?;
            let t1 = SymPoly::sym_pow(field.clone(), GenSymbol::F(1), q)
                .mul(&SymPoly::symbol(field.clone(), GenSymbol::Fs(2)))?;
            let t2 = SymPoly::sym_pow(field.clone(), GenSymbol::Fs(1), q)
                .mul(&SymPoly::symbol(field.clone(), GenSymbol::F(2)))?;
            u0q.sub(&mid)?.sub(&t1)?.sub(&t2)?
        }
        RelLabel::R3Prime => {
            if n != 4 {
                return Err(Error::Unsupported(
                    "the symmetrized relation exists only at n = 4".into(),
                ));
            }
            // the *-invariant substitute for R3-:
            // U0^{q^2} - Fs1^{q(q-1)} U1^q - F1^{q(q-1)} Um1^q
            //   + ((F1 Fs1)^{q(q-1)} - (F2 Fs2)^{q-1}) U0^q
            //   + (F2 Fs1 Fs2)^{q-1} U1 + (F1 F2 Fs2)^{q-1} Um1
            //   - (F1 F2 Fs1 Fs2)^{q-1} U0 - F3 Fs2^q - F2^q Fs3
            let sp = |pairs: &[(GenSymbol, u64)]| -> SymPoly {
                let mut m = SymMono::unit();
                for &(s, e) in pairs {
                    m = m.mono_mul(&SymMono::single(s, e)).expect("small exponents");
                }
                SymPoly {
                    field: field.clone(),
                    terms: BTreeMap::from([(m, field.one())]),
                }
            };
            use GenSymbol::*;
            let qq = q * (q - 1);
            sp(&[(U(0), q * q)])
                .sub(&sp(&[(Fs(1), qq), (U(1), q)]))?
                .sub(&sp(&[(F(1), qq), (U(-1), q)]))?
                .add(&sp(&[(F(1), qq), (Fs(1), qq), (U(0), q)]))?
                .sub(&sp(&[(F(2), q - 1), (Fs(2), q - 1), (U(0), q)]))?
                .add(&sp(&[(F(2), q - 1), (Fs(1), q - 1), (Fs(2), q - 1), (U(1), 1)]))?
                .add(&sp(&[(F(1), q - 1), (F(2), q - 1), (Fs(2), q - 1), (U(-1), 1)]))?
                .sub(&sp(&[
                    (F(1), q - 1),
                    (F(2), q - 1),
                    (Fs(1), q - 1),
                    (Fs(2), q - 1),
                    (U(0), 1),
                ]))?
                .sub(&sp(&[(F(3), 1), (Fs(2), q)]))?
                .sub(&sp(&[(F(2), q), (Fs(3), 1)]))?
        }
    };
    Ok(RelPoly { label, poly })
}

/// A full presentation: generator list and relation list in canonical
/// order.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub group: GroupKind,
    pub n: usize,
    pub field: Arc<FieldCtx>,
    pub generators: Vec<GenSymbol>,
    pub relations: Vec<RelPoly>,
    /// Set when the uniform description does not apply (the trivial
    /// `n = 1` unipotent case, returned as a free presentation).
    pub free_flagged: bool,
}

pub fn build_presentation(
    kind: GroupKind,
    n: usize,
    field: &Arc<FieldCtx>,
) -> Result<Presentation> {
    match kind {
        GroupKind::Un => {
            if n == 1 {
                // trivial group: the full polynomial ring, free on x1, y1
                return Ok(Presentation {
                    group: kind,
                    n,
                    field: field.clone(),
                    generators: vec![GenSymbol::F(1), GenSymbol::Fs(1)],
                    relations: vec![],
                    free_flagged: true,
                });
            }
            let mut generators = Vec::new();
            for i in 1..=n {
                generators.push(GenSymbol::F(i));
            }
            for i in 1..=n {
                generators.push(GenSymbol::Fs(i));
            }
            for j in (2 - n as i64)..=(n as i64 - 2) {
                generators.push(GenSymbol::U(j));
            }
            let relations = if n == 2 {
                vec![build_relation(field, RelLabel::R2Special, n)?]
            } else {
                let mut rels = vec![
                    build_relation(field, RelLabel::RPlus(1), n)?,
                    build_relation(field, RelLabel::R(2), n)?,
                ];
                for k in 3..n {
                    rels.push(build_relation(field, RelLabel::RMinus(k), n)?);
                    rels.push(build_relation(field, RelLabel::R(k), n)?);
                }
                rels.push(build_relation(field, RelLabel::RMinus(n), n)?);
                rels
            };
            Ok(Presentation {
                group: kind,
                n,
                field: field.clone(),
                generators,
                relations,
                free_flagged: false,
            })
        }
        GroupKind::Bn => {
            let mut generators = Vec::new();
            for i in 1..=n {
                generators.push(GenSymbol::Ft(i));
            }
            for i in 1..=n {
                generators.push(GenSymbol::Fts(i));
            }
            for j in (1 - n as i64)..=(n as i64 - 1) {
                generators.push(GenSymbol::U(j));
            }
            let mut relations = Vec::new();
            for k in 1..n {
                relations.push(build_relation(field, RelLabel::Rt(k), n)?);
                relations.push(build_relation(field, RelLabel::RtPlus(k), n)?);
            }
            relations.push(build_relation(field, RelLabel::Rt(n), n)?);
            Ok(Presentation {
                group: kind,
                n,
                field: field.clone(),
                generators,
                relations,
                free_flagged: false,
            })
        }
        GroupKind::SLn | GroupKind::GLn => Err(Error::Unsupported(format!(
            "no finite presentation is provided for group '{}'",
            kind.name()
        ))),
    }
}

/// Per-relation kernel-verification outcome.
#[derive(Debug, Clone)]
pub struct KernelEntry {
    pub label: RelLabel,
    pub pass: bool,
    /// Number of monomials in the nonzero residue (0 on pass).
    pub residue_terms: usize,
    pub residue: Option<String>,
}

#[derive(Debug, Clone)]
pub struct KernelReport {
    pub entries: Vec<KernelEntry>,
}

impl KernelReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// Substitutes concrete invariants for every symbol of every relation
/// and reports which relations expand to zero.
pub fn verify_kernel(p: &Presentation, inv: &InvariantSet) -> Result<KernelReport> {
    if inv.n != p.n || *inv.field != *p.field {
        return Err(Error::Unsupported(
            "presentation and invariant set disagree on (n, q)".into(),
        ));
    }
    let mut cache = BTreeMap::new();
    let mut entries = Vec::new();
    for rel in &p.relations {
        let residue = rel.poly.eval(inv, &mut cache)?;
        let pass = residue.is_zero();
        entries.push(KernelEntry {
            label: rel.label,
            pass,
            residue_terms: residue.num_terms(),
            residue: if pass { None } else { Some(residue.render()) },
        });
    }
    Ok(KernelReport { entries })
}

/// One row of the mechanical elimination table.
#[derive(Debug, Clone)]
pub struct ElimRow {
    pub label: RelLabel,
    pub relation_for: i64,
    pub f_eliminates: Vec<GenSymbol>,
    pub fstar_eliminates: Vec<GenSymbol>,
    pub involves: Vec<GenSymbol>,
    pub ok: bool,
    pub detail: Vec<String>,
}

/// The expected table rows for a presentation's relation list, straight
/// from the proof's two tables.
fn expected_elim_row(label: RelLabel, n: usize) -> Option<(i64, Vec<GenSymbol>, Vec<GenSymbol>, Vec<GenSymbol>)> {
    use GenSymbol::*;
    let ni = n as i64;
    let urange = |lo: i64, hi: i64| -> Vec<GenSymbol> { (lo..=hi).map(U).collect() };
    let frange = |hi: usize| -> Vec<GenSymbol> { (1..=hi).map(F).collect() };
    let fsrange = |hi: usize| -> Vec<GenSymbol> { (1..=hi).map(Fs).collect() };
    let ftrange = |hi: usize| -> Vec<GenSymbol> { (1..=hi).map(Ft).collect() };
    let ftsrange = |hi: usize| -> Vec<GenSymbol> { (1..=hi).map(Fts).collect() };
    match label {
        RelLabel::RPlus(k) => {
            let ki = k as i64;
            let mut inv = frange(k);
            inv.extend(fsrange(n + 1 - k));
            inv.extend(urange(ki - ni + 1, ki));
            Some((2 * ki - ni, vec![Fs(n + 1 - k)], vec![U(ki)], inv))
        }
        RelLabel::R(k) => {
            let ki = k as i64;
            let mut inv = frange(k);
            inv.extend(fsrange(n + 1 - k));
            inv.extend(urange(ki - ni, ki - 1));
            Some((
                2 * ki - ni - 1,
                vec![Fs(n + 1 - k), U(ki - ni)],
                vec![F(k), U(ki - 1)],
                inv,
            ))
        }
        RelLabel::RMinus(k) => {
            let ki = k as i64;
            let mut inv = frange(k);
            inv.extend(fsrange(n + 1 - k));
            inv.extend(urange(ki - ni - 1, ki - 2));
            Some((2 * ki - ni - 2, vec![U(ki - ni - 1)], vec![F(k)], inv))
        }
        RelLabel::Rt(k) => {
            let ki = k as i64;
            let mut inv = ftrange(k);
            inv.extend(ftsrange(n + 1 - k));
            inv.extend(urange(ki - ni, ki - 1));
            Some((2 * ki - ni - 1, vec![Fts(n + 1 - k)], vec![Ft(k)], inv))
        }
        RelLabel::RtPlus(k) => {
            let ki = k as i64;
            let mut inv = ftrange(k);
            inv.extend(ftsrange(n - k));
            inv.extend(urange(ki - ni, ki));
            Some((2 * ki - ni, vec![U(ki - ni)], vec![U(ki)], inv))
        }
        RelLabel::R2Special => Some((
            0,
            vec![Fs(2)],
            vec![F(2)],
            vec![F(1), F(2), Fs(1), Fs(2), U(0)],
        )),
        RelLabel::R3Prime => None,
    }
}

/// Mechanically confirms, for every relation, the three proof-table
/// columns: the `u_j` the relation is "for", the generators it
/// f-eliminates, and the generators it f*-eliminates — plus the exact
/// set of symbols involved.
pub fn check_elimination_structure(p: &Presentation) -> Result<Vec<ElimRow>> {
    let mut rows = Vec::new();
    for rel in &p.relations {
        let (ufor, felim, fselim, involves) = match expected_elim_row(rel.label, p.n) {
            Some(row) => row,
            None => continue,
        };
        let mut detail = Vec::new();
        if !rel.poly.is_relation_for(ufor) {
            detail.push(format!("not a relation for U index {ufor}"));
        }
        for g in &felim {
            if !rel.poly.eliminates(g, true) {
                detail.push(format!("does not f-eliminate {}", g.name()));
            }
        }
        for g in &fselim {
            if !rel.poly.eliminates(g, false) {
                detail.push(format!("does not f*-eliminate {}", g.name()));
            }
        }
        let actual = rel.poly.symbols();
        let mut expected_sorted = involves.clone();
        expected_sorted.sort();
        if actual != expected_sorted {
            detail.push(format!(
                "involved symbols {:?} differ from expected {:?}",
                actual.iter().map(|s| s.name()).collect::<Vec<_>>(),
                expected_sorted.iter().map(|s| s.name()).collect::<Vec<_>>()
            ));
        }
        rows.push(ElimRow {
            label: rel.label,
            relation_for: ufor,
            f_eliminates: felim,
            fstar_eliminates: fselim,
            involves: expected_sorted,
            ok: detail.is_empty(),
            detail,
        });
    }
    Ok(rows)
}

/// A generator whose bidegree componentwise dominates some relation
/// bidegree — the only way the generator could be removable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityFlag {
    pub generator: GenSymbol,
    pub relation: RelLabel,
}

pub fn check_minimality_obstruction(p: &Presentation) -> Result<Vec<MinimalityFlag>> {
    let q = p.field.q;
    let mut flags = Vec::new();
    for g in &p.generators {
        let (a, b) = g.bidegree(q)?;
        for rel in &p.relations {
            let (c, d) = rel.label.expected_bidegree(p.n, q)?;
            if c <= a && d <= b {
                flags.push(MinimalityFlag {
                    generator: *g,
                    relation: rel.label,
                });
            }
        }
    }
    Ok(flags)
}

// ---- serialization ----

impl Presentation {
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let q = self.field.q;
        let gens: Vec<serde_json::Value> = self
            .generators
            .iter()
            .map(|g| {
                let (d, e) = g.bidegree(q)?;
                Ok(serde_json::json!({ "name": g.name(), "bidegree": [d, e] }))
            })
            .collect::<Result<_>>()?;
        let rels: Vec<serde_json::Value> = self
            .relations
            .iter()
            .map(|r| {
                let terms: Vec<serde_json::Value> = r
                    .poly
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let exps: BTreeMap<String, u64> =
                            m.0.iter().map(|(s, &e)| (s.name(), e)).collect();
                        serde_json::json!({ "exps": exps, "coeff": c.0 })
                    })
                    .collect();
                serde_json::json!({ "label": r.label.name(), "terms": terms })
            })
            .collect();
        Ok(serde_json::json!({
            "group": self.group.name(),
            "n": self.n,
            "q": q,
            "p": self.field.p,
            "e": self.field.e,
            "generators": gens,
            "relations": rels,
            "free": self.free_flagged,
        }))
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Presentation> {
        #[derive(Deserialize)]
        struct GenJson {
            name: String,
            bidegree: (u64, u64),
        }
        #[derive(Deserialize)]
        struct TermJson {
            exps: BTreeMap<String, u64>,
            coeff: Vec<u64>,
        }
        #[derive(Deserialize)]
        struct RelJson {
            label: String,
            terms: Vec<TermJson>,
        }
        #[derive(Deserialize)]
        struct PresJson {
            group: String,
            n: usize,
            p: u64,
            e: u32,
            generators: Vec<GenJson>,
            relations: Vec<RelJson>,
            #[serde(default)]
            free: bool,
        }
        let pj: PresJson = serde_json::from_value(value.clone())?;
        let field = FieldCtx::new(pj.p, pj.e)?;
        let mut generators = Vec::new();
        for g in pj.generators {
            let sym = GenSymbol::from_name(&g.name)?;
            if sym.bidegree(field.q)? != g.bidegree {
                return Err(Error::Parse(format!(
                    "generator {} carries a wrong bidegree",
                    g.name
                )));
            }
            generators.push(sym);
        }
        let mut relations = Vec::new();
        for r in pj.relations {
            let label = RelLabel::from_name(&r.label)?;
            let mut terms = BTreeMap::new();
            for t in r.terms {
                if t.coeff.len() != field.e as usize || t.coeff.iter().any(|&c| c >= field.p) {
                    return Err(Error::Parse("bad coefficient encoding".into()));
                }
                let mut mono = SymMono::unit();
                for (name, exp) in t.exps {
                    let sym = GenSymbol::from_name(&name)?;
                    mono = mono.mono_mul(&SymMono::single(sym, exp))?;
                }
                map_add_term(&field, &mut terms, mono, Fq(t.coeff));
            }
            relations.push(RelPoly {
                label,
                poly: SymPoly {
                    field: field.clone(),
                    terms,
                },
            });
        }
        Ok(Presentation {
            group: GroupKind::from_name(&pj.group)?,
            n: pj.n,
            field,
            generators,
            relations,
            free_flagged: pj.free,
        })
    }

    /// A plain-text computer-algebra script declaring the polynomial
    /// ring on the generator symbols and the relation ideal.
    pub fn to_cas_script(&self) -> String {
        let names: Vec<String> = self.generators.iter().map(|g| g.name()).collect();
        let mut out = String::new();
        out.push_str(&format!(
            "ring R = {}, ({}), dp;\n",
            self.field.q,
            names.join(",")
        ));
        if self.relations.is_empty() {
            out.push_str("ideal I = 0;\n");
            return out;
        }
        let polys: Vec<String> = self
            .relations
            .iter()
            .map(|r| r.poly.render().replace(" + ", "+"))
            .collect();
        out.push_str(&format!("ideal I = {};\n", polys.join(",\n  ")));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;

    fn fq(p: u64) -> Arc<FieldCtx> {
        FieldCtx::new(p, 1).unwrap()
    }

    fn sp(field: &Arc<FieldCtx>, pairs: &[(GenSymbol, u64)]) -> SymPoly {
        let mut m = SymMono::unit();
        for &(s, e) in pairs {
            m = m.mono_mul(&SymMono::single(s, e)).unwrap();
        }
        let mut p = SymPoly::zero(field.clone());
        map_add_term(field, &mut p.terms, m, field.one());
        p
    }

    #[test]
    fn symbol_names_round_trip() {
        for sym in [
            GenSymbol::F(1),
            GenSymbol::Fs(12),
            GenSymbol::Ft(3),
            GenSymbol::Fts(2),
            GenSymbol::U(0),
            GenSymbol::U(5),
            GenSymbol::U(-3),
        ] {
            assert_eq!(GenSymbol::from_name(&sym.name()).unwrap(), sym);
        }
        assert!(GenSymbol::from_name("G1").is_err());
        assert!(GenSymbol::from_name("U").is_err());
    }

    #[test]
    fn label_names_round_trip() {
        for label in [
            RelLabel::R(2),
            RelLabel::RPlus(1),
            RelLabel::RMinus(4),
            RelLabel::Rt(3),
            RelLabel::RtPlus(1),
            RelLabel::R2Special,
            RelLabel::R3Prime,
        ] {
            assert_eq!(RelLabel::from_name(&label.name()).unwrap(), label);
        }
        assert!(RelLabel::from_name("Rt2-").is_err());
    }

    #[test]
    fn symbol_bidegrees() {
        let q = 3;
        assert_eq!(GenSymbol::F(3).bidegree(q).unwrap(), (9, 0));
        assert_eq!(GenSymbol::Fs(2).bidegree(q).unwrap(), (0, 3));
        assert_eq!(GenSymbol::Ft(2).bidegree(q).unwrap(), (6, 0));
        assert_eq!(GenSymbol::Fts(1).bidegree(q).unwrap(), (0, 2));
        assert_eq!(GenSymbol::U(2).bidegree(q).unwrap(), (9, 1));
        assert_eq!(GenSymbol::U(-1).bidegree(q).unwrap(), (1, 3));
    }

    #[test]
    fn relation_r2_at_n3_matches_display() {
        // U0^q - Fs1^{q-1} U1 - F1^{q-1} Um1 + (F1 Fs1)^{q-1} U0 - F2 Fs2
        for p in [2u64, 3] {
            let f = fq(p);
            let q = f.q;
            use GenSymbol::*;
            let expect = sp(&f, &[(U(0), q)])
                .sub(&sp(&f, &[(Fs(1), q - 1), (U(1), 1)]))
                .unwrap()
                .sub(&sp(&f, &[(F(1), q - 1), (U(-1), 1)]))
                .unwrap()
                .add(&sp(&f, &[(F(1), q - 1), (Fs(1), q - 1), (U(0), 1)]))
                .unwrap()
                .sub(&sp(&f, &[(F(2), 1), (Fs(2), 1)]))
                .unwrap();
            let rel = build_relation(&f, RelLabel::R(2), 3).unwrap();
            assert_eq!(rel.poly, expect);
        }
    }

    #[test]
    fn relation_r1_at_n3_matches_display() {
        // Um2 - (Fs1^{q(q-1)} + Fs2^{q-1}) Um1 + (Fs1 Fs2)^{q-1} U0 - F1 Fs3
        let f = fq(3);
        let q = f.q;
        use GenSymbol::*;
        let expect = sp(&f, &[(U(-2), 1)])
            .sub(&sp(&f, &[(Fs(1), q * (q - 1)), (U(-1), 1)]))
            .unwrap()
            .sub(&sp(&f, &[(Fs(2), q - 1), (U(-1), 1)]))
            .unwrap()
            .add(&sp(&f, &[(Fs(1), q - 1), (Fs(2), q - 1), (U(0), 1)]))
            .unwrap()
            .sub(&sp(&f, &[(F(1), 1), (Fs(3), 1)]))
            .unwrap();
        let rel = build_relation(&f, RelLabel::R(1), 3).unwrap();
        assert_eq!(rel.poly, expect);
    }

    #[test]
    fn b1_relation() {
        let f = fq(3);
        use GenSymbol::*;
        let expect = sp(&f, &[(U(0), 2)])
            .sub(&sp(&f, &[(Ft(1), 1), (Fts(1), 1)]))
            .unwrap();
        let rel = build_relation(&f, RelLabel::Rt(1), 1).unwrap();
        assert_eq!(rel.poly, expect);
    }

    #[test]
    fn b2_relations_match_display() {
        let f = fq(3);
        let q = f.q;
        use GenSymbol::*;
        // Rt1 = (Um1 - Fts1 U0)^{q-1} - Ft1 Fts2
        let s = sp(&f, &[(U(-1), 1)])
            .sub(&sp(&f, &[(Fts(1), 1), (U(0), 1)]))
            .unwrap();
        let expect = s
            .pow(q - 1)
            .unwrap()
            .sub(&sp(&f, &[(Ft(1), 1), (Fts(2), 1)]))
            .unwrap();
        assert_eq!(build_relation(&f, RelLabel::Rt(1), 2).unwrap().poly, expect);
        // Rt1+ = U0^q - Ft1 Um1 - Fts1 U1 + Ft1 Fts1 U0
        let expect = sp(&f, &[(U(0), q)])
            .sub(&sp(&f, &[(Ft(1), 1), (U(-1), 1)]))
            .unwrap()
            .sub(&sp(&f, &[(Fts(1), 1), (U(1), 1)]))
            .unwrap()
            .add(&sp(&f, &[(Ft(1), 1), (Fts(1), 1), (U(0), 1)]))
            .unwrap();
        assert_eq!(
            build_relation(&f, RelLabel::RtPlus(1), 2).unwrap().poly,
            expect
        );
        // Rt2 = (U1 - Ft1 U0)^{q-1} - Ft2 Fts1
        let s = sp(&f, &[(U(1), 1)])
            .sub(&sp(&f, &[(Ft(1), 1), (U(0), 1)]))
            .unwrap();
        let expect = s
            .pow(q - 1)
            .unwrap()
            .sub(&sp(&f, &[(Ft(2), 1), (Fts(1), 1)]))
            .unwrap();
        assert_eq!(build_relation(&f, RelLabel::Rt(2), 2).unwrap().poly, expect);
    }

    #[test]
    fn presentation_counts() {
        let f = fq(2);
        let p2 = build_presentation(GroupKind::Un, 2, &f).unwrap();
        assert_eq!((p2.generators.len(), p2.relations.len()), (5, 1));
        for n in 3..=5 {
            let p = build_presentation(GroupKind::Un, n, &f).unwrap();
            assert_eq!(p.generators.len(), 4 * n - 3);
            assert_eq!(p.relations.len(), 2 * n - 3);
        }
        for n in 1..=5 {
            let p = build_presentation(GroupKind::Bn, n, &f).unwrap();
            assert_eq!(p.generators.len(), 4 * n - 1);
            assert_eq!(p.relations.len(), 2 * n - 1);
        }
        let p1 = build_presentation(GroupKind::Un, 1, &f).unwrap();
        assert!(p1.free_flagged && p1.relations.is_empty());
        assert!(build_presentation(GroupKind::GLn, 2, &f).is_err());
    }

    #[test]
    fn un4_relation_order() {
        let f = fq(2);
        let p = build_presentation(GroupKind::Un, 4, &f).unwrap();
        let labels: Vec<RelLabel> = p.relations.iter().map(|r| r.label).collect();
        assert_eq!(
            labels,
            vec![
                RelLabel::RPlus(1),
                RelLabel::R(2),
                RelLabel::RMinus(3),
                RelLabel::R(3),
                RelLabel::RMinus(4),
            ]
        );
    }

    #[test]
    fn relation_bidegrees_match_table() {
        for p in [2u64, 3] {
            let f = fq(p);
            for n in [2usize, 3, 4] {
                for kind in [GroupKind::Un, GroupKind::Bn] {
                    let pres = build_presentation(kind, n, &f).unwrap();
                    for rel in &pres.relations {
                        let got = rel.poly.bidegree().unwrap();
                        let expect = rel.label.expected_bidegree(n, f.q).unwrap();
                        assert_eq!(got, Some(expect), "{} at n={n} q={}", rel.label.name(), f.q);
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_small_cases() {
        for (kind, n, p) in [
            (GroupKind::Un, 2, 2u64),
            (GroupKind::Un, 2, 3),
            (GroupKind::Un, 3, 2),
            (GroupKind::Bn, 1, 3),
            (GroupKind::Bn, 2, 2),
        ] {
            let f = fq(p);
            let pres = build_presentation(kind, n, &f).unwrap();
            let inv = InvariantSet::build(&f, n).unwrap();
            let report = verify_kernel(&pres, &inv).unwrap();
            assert!(report.all_pass(), "{kind:?} n={n} q={p}: {report:?}");
        }
    }

    #[test]
    fn corrupted_relation_fails_kernel() {
        let f = fq(3);
        let mut pres = build_presentation(GroupKind::Un, 2, &f).unwrap();
        // flip the sign of one term
        let poly = &pres.relations[0].poly;
        let bad = poly
            .add(&SymPoly::sym_pow(f.clone(), GenSymbol::U(0), f.q))
            .unwrap();
        pres.relations[0].poly = bad;
        let inv = InvariantSet::build(&f, 2).unwrap();
        let report = verify_kernel(&pres, &inv).unwrap();
        assert!(!report.all_pass());
        assert!(report.entries[0].residue_terms > 0);
    }

    #[test]
    fn elimination_structure_small() {
        for (kind, n, p) in [
            (GroupKind::Un, 2, 2u64),
            (GroupKind::Un, 3, 2),
            (GroupKind::Un, 3, 3),
            (GroupKind::Bn, 2, 2),
            (GroupKind::Bn, 2, 3),
            (GroupKind::Bn, 3, 2),
        ] {
            let f = fq(p);
            let pres = build_presentation(kind, n, &f).unwrap();
            let rows = check_elimination_structure(&pres).unwrap();
            assert_eq!(rows.len(), pres.relations.len());
            for row in rows {
                assert!(row.ok, "{kind:?} n={n} q={p} {}: {:?}", row.label.name(), row.detail);
            }
        }
    }

    #[test]
    fn r2special_eliminates_with_expected_coefficient() {
        let f = fq(3);
        let q = f.q;
        let rel = build_relation(&f, RelLabel::R2Special, 2).unwrap();
        let coeff = rel.poly.linear_coefficient(&GenSymbol::Fs(2)).unwrap();
        let expect = sp(&f, &[(GenSymbol::F(1), q)]).neg();
        assert_eq!(coeff, expect);
    }

    #[test]
    fn minimality_flags() {
        // only the q = 2 triangular case flags anything: Rt1 and Rtn
        let f2 = fq(2);
        let pres = build_presentation(GroupKind::Bn, 3, &f2).unwrap();
        let flags = check_minimality_obstruction(&pres).unwrap();
        let rels: std::collections::BTreeSet<String> =
            flags.iter().map(|fl| fl.relation.name()).collect();
        assert_eq!(rels, ["Rt1", "Rt3"].iter().map(|s| s.to_string()).collect());

        let f3 = fq(3);
        for (kind, n) in [(GroupKind::Un, 3), (GroupKind::Bn, 1), (GroupKind::Bn, 3)] {
            let pres = build_presentation(kind, n, &f3).unwrap();
            assert!(check_minimality_obstruction(&pres).unwrap().is_empty());
        }
    }

    #[test]
    fn special_relation_is_combination() {
        // R2special = F1^{q-1} * R1 + R2- at n = 2
        for p in [2u64, 3, 5] {
            let f = fq(p);
            let q = f.q;
            let r1 = build_relation(&f, RelLabel::R(1), 2).unwrap().poly;
            let r2m = build_relation(&f, RelLabel::RMinus(2), 2).unwrap().poly;
            let combo = SymPoly::sym_pow(f.clone(), GenSymbol::F(1), q - 1)
                .mul(&r1)
                .unwrap()
                .add(&r2m)
                .unwrap();
            let special = build_relation(&f, RelLabel::R2Special, 2).unwrap().poly;
            assert_eq!(combo, special);
        }
    }

    #[test]
    fn star_symmetry_at_n4() {
        for p in [2u64, 3] {
            let f = fq(p);
            let r1p = build_relation(&f, RelLabel::RPlus(1), 4).unwrap().poly;
            let r4m = build_relation(&f, RelLabel::RMinus(4), 4).unwrap().poly;
            assert_eq!(r1p.star(), r4m);
            let r2 = build_relation(&f, RelLabel::R(2), 4).unwrap().poly;
            let r3 = build_relation(&f, RelLabel::R(3), 4).unwrap().poly;
            assert_eq!(r2.star(), r3);
        }
    }

    #[test]
    fn symmetrized_relation_identity() {
        // R3' = R3- + F2^{q-1} * R2 at n = 4, and R3' is *-invariant
        for p in [2u64, 3] {
            let f = fq(p);
            let q = f.q;
            let r3m = build_relation(&f, RelLabel::RMinus(3), 4).unwrap().poly;
            let r2 = build_relation(&f, RelLabel::R(2), 4).unwrap().poly;
            let combo = r3m
                .add(
                    &SymPoly::sym_pow(f.clone(), GenSymbol::F(2), q - 1)
                        .mul(&r2)
                        .unwrap(),
                )
                .unwrap();
            let r3p = build_relation(&f, RelLabel::R3Prime, 4).unwrap().poly;
            assert_eq!(combo, r3p);
            assert_eq!(r3p.star(), r3p);
        }
    }

    #[test]
    fn json_round_trip() {
        let f = fq(3);
        for (kind, n) in [(GroupKind::Un, 3), (GroupKind::Bn, 2)] {
            let pres = build_presentation(kind, n, &f).unwrap();
            let v = pres.to_json().unwrap();
            let back = Presentation::from_json(&v).unwrap();
            assert_eq!(back.generators, pres.generators);
            assert_eq!(back.relations.len(), pres.relations.len());
            for (a, b) in back.relations.iter().zip(&pres.relations) {
                assert_eq!(a.label, b.label);
                assert_eq!(a.poly, b.poly);
            }
        }
        assert!(Presentation::from_json(&serde_json::json!({"group": "zz"})).is_err());
    }

    #[test]
    fn cas_script_shape() {
        let f = fq(3);
        let pres = build_presentation(GroupKind::Un, 2, &f).unwrap();
        let script = pres.to_cas_script();
        assert!(script.starts_with("ring R = 3, (F1,F2,Fs1,Fs2,U0), dp;"));
        assert!(script.contains("ideal I = "));
    }
}

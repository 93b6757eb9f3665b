//! Independent ground truth by exact linear algebra over `F_q`:
//! per-bidegree invariant-space dimensions (kernel of the stacked
//! `act(σ) - id` maps on a monomial basis), subalgebra-span dimensions
//! (knapsack enumeration of generator-exponent tuples plus row
//! reduction), degree-by-degree generation checks, and the special
//! linear counterexample report.
//!
//! Averaging operators are never used: the group orders here are
//! divisible by the characteristic.

use crate::error::{Error, Result};
use crate::gf::Tables;
use crate::groups::{act, orbit, star, GroupKind, GroupSpec};
use crate::invgen::{build_dickson, build_u, InvariantSet};
use crate::mpoly::{Bidegree, BiPoly, Monomial};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Hard bound on monomial-basis size, overridable via the
/// `INVAR_MAX_COLUMNS` environment variable.
pub fn max_columns() -> usize {
    std::env::var("INVAR_MAX_COLUMNS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(20_000)
}

/// All weak compositions of `total` into `parts` parts, in
/// lexicographic order.
fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u64; parts];
    fn rec(pos: usize, rem: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if pos == cur.len() - 1 {
            cur[pos] = rem;
            out.push(cur.clone());
            return;
        }
        for v in 0..=rem {
            cur[pos] = v;
            rec(pos + 1, rem - v, cur, out);
        }
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// The monomial basis of the bidegree-`(d, e)` component, in a fixed
/// deterministic order.
pub fn monomial_basis(n: usize, d: u64, e: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    for xexp in compositions(d, n) {
        for yexp in compositions(e, n) {
            out.push(Monomial {
                xexp: xexp.clone(),
                yexp,
            });
        }
    }
    out
}

fn basis_index(basis: &[Monomial]) -> BTreeMap<Monomial, usize> {
    basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect()
}

/// A polynomial as a coordinate row over a monomial basis, in packed
/// field-element codes.
fn poly_to_row(
    p: &BiPoly,
    index: &BTreeMap<Monomial, usize>,
    len: usize,
) -> Result<Vec<u32>> {
    let ctx = p.field();
    let mut row = vec![0u32; len];
    for (m, c) in p.terms() {
        let i = *index.get(m).ok_or_else(|| {
            Error::Unsupported("polynomial leaves the bidegree component".into())
        })?;
        row[i] = ctx.encode(c) as u32;
    }
    Ok(row)
}

/// Gauss-Jordan null space of the matrix whose rows are `rows` (each
/// of width `k`): returns a basis of `{w : rows * w = 0}`.
fn null_space(t: &Tables, mut rows: Vec<Vec<u32>>, k: usize) -> Vec<Vec<u32>> {
    rows.retain(|r| r.iter().any(|&x| x != 0));
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0usize;
    for c in 0..k {
        let mut pr = None;
        for i in r..rows.len() {
            if rows[i][c] != 0 {
                pr = Some(i);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        rows.swap(r, pr);
        let inv = t.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = t.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in c..k {
                    let s = t.mul(f, rows[r][j]);
                    rows[i][j] = t.sub(rows[i][j], s);
                }
                // columns before c are already reduced in rows below;
                // for rows above, earlier pivot columns stay zero here
                // because rows[r] is zero there.
                for j in 0..c {
                    let s = t.mul(f, rows[r][j]);
                    rows[i][j] = t.sub(rows[i][j], s);
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let pivot_cols: std::collections::BTreeSet<usize> =
        pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for f in 0..k {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut w = vec![0u32; k];
        w[f] = 1;
        for &(pr, pc) in &pivots {
            w[pc] = t.neg(rows[pr][f]);
        }
        basis.push(w);
    }
    basis
}

/// Incremental rank computation over `F_q`.
struct RowReducer<'a> {
    t: &'a Tables,
    /// Reduced rows, each normalized with a distinct pivot column.
    rows: Vec<(usize, Vec<u32>)>,
}

impl<'a> RowReducer<'a> {
    fn new(t: &'a Tables) -> Self {
        RowReducer { t, rows: Vec::new() }
    }

    /// Reduces `row` against the current basis; returns true if it
    /// added a new dimension.
    fn add(&mut self, mut row: Vec<u32>) -> bool {
        for (p, r) in &self.rows {
            if row[*p] != 0 {
                let f = row[*p];
                for j in 0..row.len() {
                    let s = self.t.mul(f, r[j]);
                    row[j] = self.t.sub(row[j], s);
                }
            }
        }
        match row.iter().position(|&x| x != 0) {
            None => false,
            Some(p) => {
                let inv = self.t.inv(row[p]);
                for x in row.iter_mut() {
                    *x = self.t.mul(*x, inv);
                }
                self.rows.push((p, row));
                true
            }
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Dimension of the `G`-invariant subspace in bidegree `(d, e)`,
/// with an explicit basis-size bound.
pub fn invariant_dim_bounded(
    group: &GroupSpec,
    d: u64,
    e: u64,
    max_cols: usize,
) -> Result<usize> {
    let n = group.n;
    let field = &group.field;
    let tables = field.tables()?;
    let basis = monomial_basis(n, d, e);
    let nb = basis.len();
    if nb > max_cols {
        return Err(Error::ResourceBound(format!(
            "bidegree ({d}, {e}) needs {nb} basis monomials (bound {max_cols})"
        )));
    }
    let index = basis_index(&basis);
    // kernel basis as column vectors over the monomial basis;
    // start with the full space
    let mut kernel: Vec<Vec<u32>> = (0..nb)
        .map(|i| {
            let mut v = vec![0u32; nb];
            v[i] = 1;
            v
        })
        .collect();
    for sigma in group.generators() {
        if kernel.is_empty() {
            break;
        }
        // sparse columns of act(sigma) - id on the monomial basis
        let mut cols: Vec<Vec<(usize, u32)>> = Vec::with_capacity(nb);
        let mut trivial = true;
        for (i, m) in basis.iter().enumerate() {
            let p = BiPoly::from_terms(field.clone(), n, vec![(m.clone(), field.one())]);
            let img = act(&sigma, &p)?;
            let mut col: Vec<(usize, u32)> = img
                .terms()
                .iter()
                .map(|(mm, c)| {
                    index
                        .get(mm)
                        .map(|&r| (r, field.encode(c) as u32))
                        .ok_or(Error::Unsupported("action left the component".into()))
                })
                .collect::<Result<_>>()?;
            // subtract the identity
            match col.binary_search_by_key(&i, |&(r, _)| r) {
                Ok(pos) => {
                    let v = tables.sub(col[pos].1, 1);
                    if v == 0 {
                        col.remove(pos);
                    } else {
                        col[pos].1 = v;
                    }
                }
                Err(pos) => col.insert(pos, (i, tables.neg(1))),
            }
            if !col.is_empty() {
                trivial = false;
            }
            cols.push(col);
        }
        if trivial {
            continue; // sigma acts as the identity on this component
        }
        // constraint matrix C = (act - id) * kernel, rows indexed by
        // basis monomials, columns by current kernel vectors
        let k = kernel.len();
        let mut constraint = vec![vec![0u32; k]; nb];
        for (j, v) in kernel.iter().enumerate() {
            for (i, &vi) in v.iter().enumerate() {
                if vi == 0 {
                    continue;
                }
                for &(r, c) in &cols[i] {
                    let add = tables.mul(vi, c);
                    constraint[r][j] = tables.add(constraint[r][j], add);
                }
            }
        }
        let null = null_space(tables, constraint, k);
        // new kernel = kernel * null
        let mut next = Vec::with_capacity(null.len());
        for w in null {
            let mut v = vec![0u32; nb];
            for (j, &wj) in w.iter().enumerate() {
                if wj == 0 {
                    continue;
                }
                for (i, &kv) in kernel[j].iter().enumerate() {
                    if kv != 0 {
                        v[i] = tables.add(v[i], tables.mul(wj, kv));
                    }
                }
            }
            next.push(v);
        }
        kernel = next;
    }
    Ok(kernel.len())
}

pub fn invariant_dim(group: &GroupSpec, d: u64, e: u64) -> Result<usize> {
    invariant_dim_bounded(group, d, e, max_columns())
}

/// Dimension of the span, inside the bidegree-`(d, e)` component, of
/// all products `∏ g_i^{m_i}` with matching total bidegree.
pub fn subalgebra_dim(gens: &[BiPoly], n: usize, d: u64, e: u64) -> Result<usize> {
    subalgebra_dim_bounded(gens, n, d, e, max_columns(), 1_000_000)
}

pub fn subalgebra_dim_bounded(
    gens: &[BiPoly],
    n: usize,
    d: u64,
    e: u64,
    max_cols: usize,
    max_tuples: usize,
) -> Result<usize> {
    if gens.is_empty() {
        return Ok(if (d, e) == (0, 0) { 1 } else { 0 });
    }
    let field = gens[0].field().clone();
    let tables = field.tables()?;
    let mut graded: Vec<(&BiPoly, (u64, u64))> = Vec::new();
    for g in gens {
        match g.bidegree() {
            Bidegree::Of(a, b) if (a, b) != (0, 0) => graded.push((g, (a, b))),
            _ => {
                return Err(Error::Unsupported(
                    "subalgebra generators must be bihomogeneous and nonconstant".into(),
                ))
            }
        }
    }
    let basis = monomial_basis(n, d, e);
    if basis.len() > max_cols {
        return Err(Error::ResourceBound(format!(
            "bidegree ({d}, {e}) needs {} basis monomials (bound {max_cols})",
            basis.len()
        )));
    }
    let index = basis_index(&basis);
    let mut reducer = RowReducer::new(tables);
    let mut leaves = 0usize;
    // depth-first over exponent tuples with a running product
    fn dfs(
        graded: &[(&BiPoly, (u64, u64))],
        idx: usize,
        rd: u64,
        re: u64,
        cur: &BiPoly,
        index: &BTreeMap<Monomial, usize>,
        width: usize,
        reducer: &mut RowReducer,
        leaves: &mut usize,
        max_tuples: usize,
    ) -> Result<()> {
        if idx == graded.len() {
            if rd == 0 && re == 0 {
                *leaves += 1;
                if *leaves > max_tuples {
                    return Err(Error::ResourceBound(format!(
                        "more than {max_tuples} exponent tuples"
                    )));
                }
                reducer.add(poly_to_row(cur, index, width)?);
            }
            return Ok(());
        }
        let (g, (a, b)) = graded[idx];
        let mut prod = cur.clone();
        let (mut rd, mut re) = (rd, re);
        loop {
            dfs(
                graded, idx + 1, rd, re, &prod, index, width, reducer, leaves, max_tuples,
            )?;
            if (a > 0 && a > rd) || (b > 0 && b > re) {
                break;
            }
            rd -= a;
            re -= b;
            prod = prod.mul(g)?;
        }
        Ok(())
    }
    let one = BiPoly::one(field.clone(), n);
    dfs(
        &graded,
        0,
        d,
        e,
        &one,
        &index,
        basis.len(),
        &mut reducer,
        &mut leaves,
        max_tuples,
    )?;
    Ok(reducer.rank())
}

/// One cell of a generation check.
#[derive(Debug, Clone)]
pub struct CellCheck {
    pub d: u64,
    pub e: u64,
    pub subalgebra: usize,
    pub invariant: usize,
}

#[derive(Debug, Clone)]
pub struct GenerationReport {
    pub cutoff: u64,
    pub cells: Vec<CellCheck>,
    /// First cell (ordered by total degree, then by x-degree) where
    /// the span falls short.
    pub first_deficit: Option<(u64, u64)>,
    pub pass: bool,
}

impl GenerationReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "cutoff": self.cutoff,
            "pass": self.pass,
            "first_deficit": self.first_deficit,
            "cells": self.cells.iter().map(|c| serde_json::json!({
                "d": c.d, "e": c.e,
                "subalgebra": c.subalgebra,
                "invariant": c.invariant,
                "pass": c.subalgebra == c.invariant,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Compares the span of `gens` with the full invariant space in every
/// bidegree with `d + e <= cutoff`.
pub fn check_generation(
    group: &GroupSpec,
    gens: &[BiPoly],
    cutoff: u64,
) -> Result<GenerationReport> {
    let mut cells = Vec::new();
    let mut first_deficit = None;
    for t in 0..=cutoff {
        for d in 0..=t {
            let e = t - d;
            let sub = subalgebra_dim(gens, group.n, d, e)?;
            let inv = invariant_dim(group, d, e)?;
            if sub != inv && first_deficit.is_none() {
                first_deficit = Some((d, e));
            }
            cells.push(CellCheck {
                d,
                e,
                subalgebra: sub,
                invariant: inv,
            });
        }
    }
    Ok(GenerationReport {
        cutoff,
        cells,
        pass: first_deficit.is_none(),
        first_deficit,
    })
}

/// The generating sets whose completeness the generation checks test.
pub fn theorem_generators(kind: GroupKind, inv: &InvariantSet) -> Result<Vec<BiPoly>> {
    let n = inv.n;
    let mut gens = Vec::new();
    match kind {
        GroupKind::Un => {
            gens.extend(inv.f.iter().cloned());
            gens.extend(inv.fstar.iter().cloned());
            if n >= 2 {
                for j in (2 - n as i64)..=(n as i64 - 2) {
                    gens.push(inv.u(j).clone());
                }
            }
        }
        GroupKind::Bn => {
            gens.extend(inv.ftilde.iter().cloned());
            gens.extend(inv.ftildestar.iter().cloned());
            for j in (1 - n as i64)..=(n as i64 - 1) {
                gens.push(inv.u(j).clone());
            }
        }
        _ => {
            return Err(Error::Unsupported(
                "theorem generators exist only for the unipotent and triangular groups".into(),
            ))
        }
    }
    Ok(gens)
}

/// The conjectured generating set for the general linear group: the
/// classical Dickson invariants, their `*`-images, and the full
/// `u`-window.
pub fn conjecture_generators(
    field: &Arc<crate::gf::FieldCtx>,
    n: usize,
) -> Result<Vec<BiPoly>> {
    let mut gens = Vec::new();
    for t in 0..n {
        gens.push(build_dickson(field, n, n, t)?);
    }
    for t in 0..n {
        gens.push(star(&build_dickson(field, n, n, t)?));
    }
    for j in (1 - n as i64)..=(n as i64 - 1) {
        gens.push(build_u(field, n, j)?);
    }
    Ok(gens)
}

/// A table of invariant dimensions up to a total-degree cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimTable {
    pub group: GroupKind,
    pub n: usize,
    pub q: u64,
    pub cutoff: u64,
    pub dims: BTreeMap<(u64, u64), usize>,
}

pub fn build_dim_table(group: &GroupSpec, cutoff: u64) -> Result<DimTable> {
    let mut dims = BTreeMap::new();
    for t in 0..=cutoff {
        for d in 0..=t {
            let e = t - d;
            dims.insert((d, e), invariant_dim(group, d, e)?);
        }
    }
    Ok(DimTable {
        group: group.kind,
        n: group.n,
        q: group.field.q,
        cutoff,
        dims,
    })
}

impl DimTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,e,dim\n");
        for (&(d, e), &dim) in &self.dims {
            out.push_str(&format!("{d},{e},{dim}\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group.name(),
            "n": self.n,
            "q": self.q,
            "cutoff": self.cutoff,
            "dims": self.dims.iter().map(|(&(d, e), &dim)| {
                serde_json::json!([d, e, dim])
            }).collect::<Vec<_>>(),
        })
    }
}

/// The special linear counterexample: `SL_2(F_3)` invariants are not
/// generated by the natural-module generators, their `*`-images, and
/// the pairing invariants.
#[derive(Debug, Clone)]
pub struct Sl2Report {
    pub orbit_len: usize,
    pub contains_neg_h: bool,
    /// `f_1, f_2` do generate the y-degree-0 invariants up to the
    /// cutoff.
    pub v_generation_ok: bool,
    pub first_deficit: Option<(u64, u64)>,
    pub deficit_amount: usize,
}

impl Sl2Report {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "orbit_len": self.orbit_len,
            "contains_neg_h": self.contains_neg_h,
            "v_generation_ok": self.v_generation_ok,
            "first_deficit": self.first_deficit,
            "deficit_amount": self.deficit_amount,
        })
    }
}

pub fn sl2_counterexample_report(cutoff: u64) -> Result<Sl2Report> {
    let field = crate::gf::FieldCtx::new(3, 1)?;
    let n = 2;
    let group = GroupSpec::new(GroupKind::SLn, n, field.clone());
    let f1 = BiPoly::parse(field.clone(), n, "x1^3*x2 + 2*x1*x2^3")?;
    let f2 = BiPoly::parse(field.clone(), n, "x1^6 + x1^4*x2^2 + x1^2*x2^4 + x2^6")?;
    let h = BiPoly::parse(field.clone(), n, "x1*y2 + 2*x2*y1")?;
    let orb = orbit(&group, &h, 100)?;
    let contains_neg_h = orb.contains(&h.neg());
    let mut v_generation_ok = true;
    for d in 0..=cutoff {
        let sub = subalgebra_dim(&[f1.clone(), f2.clone()], n, d, 0)?;
        let inv = invariant_dim(&group, d, 0)?;
        if sub != inv {
            v_generation_ok = false;
        }
    }
    let gens = vec![
        f1.clone(),
        f2.clone(),
        star(&f1),
        star(&f2),
        build_u(&field, n, -1)?,
        build_u(&field, n, 0)?,
        build_u(&field, n, 1)?,
    ];
    let report = check_generation(&group, &gens, cutoff)?;
    let deficit_amount = report
        .first_deficit
        .and_then(|(d, e)| {
            report
                .cells
                .iter()
                .find(|c| (c.d, c.e) == (d, e))
                .map(|c| c.invariant - c.subalgebra)
        })
        .unwrap_or(0);
    Ok(Sl2Report {
        orbit_len: orb.len(),
        contains_neg_h,
        v_generation_ok,
        first_deficit: report.first_deficit,
        deficit_amount,
    })
}

/// Count of monomials in the classical x-side generators of the given
/// x-degree — the closed-form cross-check for `invariant_dim(·, d, 0)`.
pub fn classical_xside_dim(kind: GroupKind, n: usize, q: u64, d: u64) -> Result<usize> {
    // degrees of the free generators of the x-side invariant ring
    let degs: Vec<u64> = match kind {
        GroupKind::Un => (0..n as u32).map(|i| q.pow(i)).collect(),
        GroupKind::Bn => (0..n as u32).map(|i| (q - 1) * q.pow(i)).collect(),
        _ => {
            return Err(Error::Unsupported(
                "closed form implemented for the unipotent and triangular groups only".into(),
            ))
        }
    };
    fn count(degs: &[u64], d: u64) -> usize {
        if degs.is_empty() {
            return usize::from(d == 0);
        }
        let mut total = 0;
        let mut rem = d;
        loop {
            total += count(&degs[1..], rem);
            if rem < degs[0] {
                break;
            }
            rem -= degs[0];
        }
        total
    }
    Ok(count(&degs, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;

    fn group(kind: GroupKind, n: usize, p: u64) -> GroupSpec {
        GroupSpec::new(kind, n, FieldCtx::new(p, 1).unwrap())
    }

    #[test]
    fn constants_are_invariant() {
        for kind in [GroupKind::Un, GroupKind::Bn, GroupKind::SLn, GroupKind::GLn] {
            assert_eq!(invariant_dim(&group(kind, 2, 2), 0, 0).unwrap(), 1);
        }
    }

    #[test]
    fn known_small_dimensions() {
        // U_3 over F_2 at (1,1): span {x1 y3, u0}
        assert_eq!(invariant_dim(&group(GroupKind::Un, 3, 2), 1, 1).unwrap(), 2);
        // GL_2 over F_2 at (1,1): span {u0}
        assert_eq!(invariant_dim(&group(GroupKind::GLn, 2, 2), 1, 1).unwrap(), 1);
    }

    #[test]
    fn xside_matches_classical_counts() {
        for (kind, n, p, dmax) in [
            (GroupKind::Un, 2, 2u64, 8u64),
            (GroupKind::Un, 2, 3, 8),
            (GroupKind::Bn, 2, 3, 8),
        ] {
            let g = group(kind, n, p);
            for d in 0..=dmax {
                assert_eq!(
                    invariant_dim(&g, d, 0).unwrap(),
                    classical_xside_dim(kind, n, p, d).unwrap(),
                    "{kind:?} d={d}"
                );
            }
        }
    }

    #[test]
    fn resource_bound_is_reported() {
        let g = group(GroupKind::Un, 3, 2);
        assert!(matches!(
            invariant_dim_bounded(&g, 6, 6, 10),
            Err(Error::ResourceBound(_))
        ));
    }

    #[test]
    fn subalgebra_single_variable() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        let x1 = BiPoly::var_x(f2, 1, 1);
        assert_eq!(subalgebra_dim(&[x1.clone()], 1, 3, 0).unwrap(), 1);
        assert_eq!(subalgebra_dim(&[x1], 1, 0, 1).unwrap(), 0);
    }

    #[test]
    fn subalgebra_rejects_inhomogeneous() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        let bad = BiPoly::parse(f2, 2, "x1 + y1").unwrap();
        assert!(subalgebra_dim(&[bad], 2, 2, 2).is_err());
    }

    #[test]
    fn theorem_generators_fill_a_cell() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        let inv = InvariantSet::build(&f2, 2).unwrap();
        let gens = theorem_generators(GroupKind::Un, &inv).unwrap();
        let g = group(GroupKind::Un, 2, 2);
        let sub = subalgebra_dim(&gens, 2, 2, 2).unwrap();
        let id = invariant_dim(&g, 2, 2).unwrap();
        assert_eq!(sub, id);
    }

    #[test]
    fn generation_check_u2() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let inv = InvariantSet::build(&f3, 2).unwrap();
        let gens = theorem_generators(GroupKind::Un, &inv).unwrap();
        let g = group(GroupKind::Un, 2, 3);
        let report = check_generation(&g, &gens, 6).unwrap();
        assert!(report.pass, "{:?}", report.first_deficit);
    }

    #[test]
    fn subalgebra_never_exceeds_invariants() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        let inv = InvariantSet::build(&f2, 2).unwrap();
        let gens = theorem_generators(GroupKind::Bn, &inv).unwrap();
        let g = group(GroupKind::Bn, 2, 2);
        for t in 0..=5u64 {
            for d in 0..=t {
                let sub = subalgebra_dim(&gens, 2, d, t - d).unwrap();
                let id = invariant_dim(&g, d, t - d).unwrap();
                assert!(sub <= id, "({d}, {})", t - d);
            }
        }
    }

    #[test]
    fn conjecture_generator_count_and_invariance() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        let gens = conjecture_generators(&f2, 2).unwrap();
        assert_eq!(gens.len(), 7);
        let g = group(GroupKind::GLn, 2, 2);
        for sigma in g.generators() {
            for gen in &gens {
                assert_eq!(&act(&sigma, gen).unwrap(), gen);
            }
        }
    }

    #[test]
    fn determinism() {
        let g = group(GroupKind::Bn, 2, 3);
        let a = build_dim_table(&g, 5).unwrap();
        let b = build_dim_table(&g, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dims[&(0, 0)], 1);
    }

    #[test]
    fn sl2_orbit_facts() {
        let report_part = {
            let field = FieldCtx::new(3, 1).unwrap();
            let group = GroupSpec::new(GroupKind::SLn, 2, field.clone());
            let h = BiPoly::parse(field, 2, "x1*y2 + 2*x2*y1").unwrap();
            let orb = orbit(&group, &h, 100).unwrap();
            (orb.len(), orb.contains(&h.neg()))
        };
        assert_eq!(report_part, (6, true));
    }
}

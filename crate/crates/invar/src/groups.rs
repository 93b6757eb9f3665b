//! The matrix groups `U_n`, `B_n`, `SL_n`, `GL_n` over `F_q`, their
//! action on `K[V + V*]`, the `*` involution, and orbit computation.
//!
//! Invariance is always tested on generating sets; full closure
//! enumeration is used only for orbit computation and order sanity
//! checks.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Fq};
use crate::mpoly::BiPoly;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::collections::VecDeque;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Un,
    Bn,
    SLn,
    GLn,
}

impl GroupKind {
    pub fn name(&self) -> &'static str {
        match self {
            GroupKind::Un => "un",
            GroupKind::Bn => "bn",
            GroupKind::SLn => "sln",
            GroupKind::GLn => "gln",
        }
    }

    pub fn from_name(s: &str) -> Result<GroupKind> {
        match s {
            "un" => Ok(GroupKind::Un),
            "bn" => Ok(GroupKind::Bn),
            "sln" => Ok(GroupKind::SLn),
            "gln" => Ok(GroupKind::GLn),
            _ => Err(Error::Parse(format!("unknown group kind '{s}'"))),
        }
    }
}

/// One of the four named groups over a fixed field.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub n: usize,
    pub field: Arc<FieldCtx>,
}

/// An `n x n` matrix over `F_q`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatFq {
    pub n: usize,
    pub field: Arc<FieldCtx>,
    pub entries: Vec<Fq>,
}

impl PartialOrd for MatFq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for MatFq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl MatFq {
    pub fn identity(field: Arc<FieldCtx>, n: usize) -> MatFq {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = field.one();
        }
        MatFq { n, field, entries }
    }

    pub fn at(&self, i: usize, j: usize) -> &Fq {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &MatFq) -> MatFq {
        let n = self.n;
        let f = &self.field;
        let mut out = MatFq::identity(self.field.clone(), n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = f.zero();
                for k in 0..n {
                    acc = f.add(&acc, &f.mul(self.at(i, k), other.at(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<MatFq> {
        let n = self.n;
        let f = &self.field;
        let mut a: Vec<Fq> = self.entries.clone();
        let mut b = MatFq::identity(self.field.clone(), n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    b.entries.swap(pivot * n + j, col * n + j);
                }
            }
            let inv = f.inv(&a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = f.mul(&a[col * n + j], &inv);
                b.entries[col * n + j] = f.mul(&b.entries[col * n + j], &inv);
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    let t = f.mul(&factor, &a[col * n + j]);
                    a[r * n + j] = f.sub(&a[r * n + j], &t);
                    let t = f.mul(&factor, &b.entries[col * n + j]);
                    b.entries[r * n + j] = f.sub(&b.entries[r * n + j], &t);
                }
            }
        }
        Ok(b)
    }

    pub fn transpose(&self) -> MatFq {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.at(j, i).clone());
            }
        }
        out
    }

    /// Conjugation by the antidiagonal permutation: `J (σ^{-1})^T J`.
    pub fn star(&self) -> Result<MatFq> {
        let n = self.n;
        let it = self.inverse()?.transpose();
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, it.at(n - 1 - i, n - 1 - j).clone());
            }
        }
        Ok(out)
    }

    /// Row-major JSON array of field-element encodings.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<Vec<u64>>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j).0.clone()).collect())
            .collect();
        serde_json::json!(rows)
    }
}

impl GroupSpec {
    pub fn new(kind: GroupKind, n: usize, field: Arc<FieldCtx>) -> GroupSpec {
        GroupSpec { kind, n, field }
    }

    /// A finite generating set.
    ///
    /// `U_n`: the transvections `I + c E_{i,i+1}` with `c` ranging over
    /// an `F_p`-basis of `F_q`. `B_n`: those plus the diagonal matrices
    /// `diag(1,..,w,..,1)` with `w` the deterministic primitive element.
    /// `SL_n`: all transvections `I + c E_{i,j}`, `i != j`. `GL_n`:
    /// `SL_n` generators plus `diag(w,1,..,1)`.
    pub fn generators(&self) -> Vec<MatFq> {
        let n = self.n;
        let f = &self.field;
        let basis = f.fp_basis();
        let mut gens = Vec::new();
        let transvection = |i: usize, j: usize, c: &Fq| {
            let mut m = MatFq::identity(f.clone(), n);
            m.set(i, j, c.clone());
            m
        };
        match self.kind {
            GroupKind::Un => {
                for i in 0..n.saturating_sub(1) {
                    for c in &basis {
                        gens.push(transvection(i, i + 1, c));
                    }
                }
            }
            GroupKind::Bn => {
                for i in 0..n.saturating_sub(1) {
                    for c in &basis {
                        gens.push(transvection(i, i + 1, c));
                    }
                }
                let w = f.primitive_element();
                for i in 0..n {
                    let mut m = MatFq::identity(f.clone(), n);
                    m.set(i, i, w.clone());
                    gens.push(m);
                }
            }
            GroupKind::SLn => {
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            for c in &basis {
                                gens.push(transvection(i, j, c));
                            }
                        }
                    }
                }
            }
            GroupKind::GLn => {
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            for c in &basis {
                                gens.push(transvection(i, j, c));
                            }
                        }
                    }
                }
                let w = f.primitive_element();
                let mut m = MatFq::identity(f.clone(), n);
                m.set(0, 0, w);
                gens.push(m);
            }
        }
        // n = 1 unipotent group is trivial; keep the identity so callers
        // always see a nonempty generating set.
        if gens.is_empty() {
            gens.push(MatFq::identity(f.clone(), n));
        }
        gens
    }

    /// Full closure enumeration from the generators, bounded.
    pub fn elements(&self, bound: usize) -> Result<Vec<MatFq>> {
        let gens = self.generators();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        let id = MatFq::identity(self.field.clone(), self.n);
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(m) = queue.pop_front() {
            for g in &gens {
                let next = m.mul(g);
                if seen.insert(next.clone()) {
                    if seen.len() > bound {
                        return Err(Error::OrbitBound(bound));
                    }
                    queue.push_back(next);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

/// The action of an invertible matrix on `K[V + V*]`: x-variables
/// transform by the matrix on `V`, y-variables by the contragredient
/// (`σ^{-1}` transposed) action on `V*`.
pub fn act(sigma: &MatFq, f: &BiPoly) -> Result<BiPoly> {
    let n = sigma.n;
    if n != f.n() {
        return Err(Error::ArityMismatch(n, f.n()));
    }
    let inv = sigma.inverse()?;
    let field = f.field().clone();
    let mut ximgs = Vec::with_capacity(n);
    let mut yimgs = Vec::with_capacity(n);
    for j in 0..n {
        // σ·x_j = Σ_i σ_{i,j} x_i
        let mut xi = BiPoly::zero(field.clone(), n);
        for i in 0..n {
            let c = sigma.at(i, j);
            if !c.is_zero() {
                xi = xi.add(&BiPoly::var_x(field.clone(), n, i + 1).scalar_mul(c))?;
            }
        }
        ximgs.push(xi);
        // σ·y_j = Σ_i (σ^{-1})_{j,i} y_i
        let mut yj = BiPoly::zero(field.clone(), n);
        for i in 0..n {
            let c = inv.at(j, i);
            if !c.is_zero() {
                yj = yj.add(&BiPoly::var_y(field.clone(), n, i + 1).scalar_mul(c))?;
            }
        }
        yimgs.push(yj);
    }
    f.substitute(&ximgs, &yimgs)
}

/// The involution `x_i -> y_{n+1-i}`, `y_i -> x_{n+1-i}`: an involutive
/// ring automorphism implemented as a monomial relabeling.
pub fn star(f: &BiPoly) -> BiPoly {
    let n = f.n();
    let field = f.field().clone();
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut xexp = m.yexp.clone();
            xexp.reverse();
            let mut yexp = m.xexp.clone();
            yexp.reverse();
            (crate::mpoly::Monomial { xexp, yexp }, c.clone())
        })
        .collect();
    BiPoly::from_terms(field, n, terms)
}

/// The orbit `{σ·f : σ in G}` by breadth-first closure under the
/// generators, deduplicated by canonical polynomial equality.
pub fn orbit(group: &GroupSpec, f: &BiPoly, bound: usize) -> Result<BTreeSet<BiPoly>> {
    let gens = group.generators();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(f.clone());
    queue.push_back(f.clone());
    while let Some(g) = queue.pop_front() {
        for sigma in &gens {
            let next = act(sigma, &g)?;
            if seen.insert(next.clone()) {
                if seen.len() > bound {
                    return Err(Error::OrbitBound(bound));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

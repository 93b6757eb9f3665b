//! Exact arithmetic in the finite field `F_q`, `q = p^e`.
//!
//! Elements are coefficient vectors of length `e` over `F_p`,
//! representing polynomials in the root of a fixed monic irreducible
//! modulus. The modulus is chosen deterministically (lexicographically
//! smallest, coefficients compared low-to-high) so that serialized
//! output is reproducible across runs and platforms. No discrete-log
//! tables: multiplication is reduction of the polynomial product.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// A field context: the prime `p`, the extension degree `e`, the
/// modulus, and `q = p^e`. Immutable after construction and safe to
/// share across threads.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldCtx {
    pub p: u64,
    pub e: u32,
    /// Monic, degree `e`, coefficients low-to-high (length `e + 1`).
    pub modulus: Vec<u64>,
    pub q: u64,
    /// Lookup tables for small fields (used by the oracle), indexed by
    /// the packed element encoding.
    #[serde(skip)]
    tables: Option<Arc<Tables>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for FieldCtx {}

/// A field element: residues mod `p`, low-to-high, length `e`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fq(pub Vec<u64>);

/// Packed add/mul/neg/inv tables over element indices, for fields with
/// `q` at most [`TABLE_LIMIT`].
#[derive(Debug)]
pub struct Tables {
    pub q: usize,
    pub add: Vec<u32>,
    pub mul: Vec<u32>,
    pub neg: Vec<u32>,
    /// `inv[0]` is unused (set to 0).
    pub inv: Vec<u32>,
}

const TABLE_LIMIT: u64 = 1024;

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut k: u64| {
        let mut r = 1u64;
        a %= n;
        while k > 0 {
            if k & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            k >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---- polynomial helpers over F_p, coefficients low-to-high ----

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_mul_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + (p - lead % p) * mi) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    // Monic f of degree >= 1; trial division by all monic polynomials of
    // degree up to deg(f)/2. Desk-scale p and e keep this cheap.
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for k in 0..count {
            let mut g = vec![0u64; d + 1];
            let mut kk = k;
            for c in g.iter_mut().take(d) {
                *c = kk % p;
                kk /= p;
            }
            g[d] = 1;
            let r = poly_rem_monic(f, &g, p);
            if r.is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    /// Constructs `F_{p^e}` with the lexicographically smallest monic
    /// irreducible modulus (coefficients compared low-to-high).
    pub fn new(p: u64, e: u32) -> Result<Arc<FieldCtx>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroExtension);
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q
                .checked_mul(p)
                .ok_or(Error::Overflow("p^e exceeds 64 bits"))?;
        }
        let deg = e as usize;
        let mut modulus = None;
        // Low coefficients are the most significant for the lex order, so
        // enumerate c_0 in the outermost digit position.
        'search: for k in 0..q {
            let mut f = vec![0u64; deg + 1];
            let mut kk = k;
            for i in (0..deg).rev() {
                f[i] = kk % p;
                kk /= p;
            }
            f[deg] = 1;
            if is_irreducible(&f, p) {
                modulus = Some(f);
                break 'search;
            }
        }
        let modulus = modulus.expect("an irreducible polynomial of every degree exists");
        let mut ctx = FieldCtx {
            p,
            e,
            modulus,
            q,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            ctx.tables = Some(Arc::new(ctx.build_tables()));
        }
        Ok(Arc::new(ctx))
    }

    pub fn zero(&self) -> Fq {
        Fq(vec![0; self.e as usize])
    }

    pub fn one(&self) -> Fq {
        self.from_int(1)
    }

    /// Embeds an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> Fq {
        let p = self.p as i64;
        let mut c = vec![0u64; self.e as usize];
        c[0] = (v.rem_euclid(p)) as u64;
        Fq(c)
    }

    fn reduce(&self, prod: &[u64]) -> Fq {
        let mut r = poly_rem_monic(prod, &self.modulus, self.p);
        r.resize(self.e as usize, 0);
        Fq(r)
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(a.0
            .iter()
            .zip(&b.0)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect())
    }

    pub fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(a.0
            .iter()
            .zip(&b.0)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect())
    }

    pub fn neg(&self, a: &Fq) -> Fq {
        Fq(a.0.iter().map(|&x| (self.p - x) % self.p).collect())
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        self.reduce(&poly_mul_mod_p(&a.0, &b.0, self.p))
    }

    pub fn pow(&self, a: &Fq, mut k: u64) -> Fq {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// The `p`-power Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: &Fq) -> Fq {
        self.pow(a, self.p)
    }

    /// All `q` elements, in lexicographic coefficient order (low-to-high).
    pub fn elements(&self) -> Vec<Fq> {
        let deg = self.e as usize;
        let mut out = Vec::with_capacity(self.q as usize);
        for k in 0..self.q {
            let mut c = vec![0u64; deg];
            let mut kk = k;
            for i in (0..deg).rev() {
                c[i] = kk % self.p;
                kk /= self.p;
            }
            out.push(Fq(c));
        }
        out
    }

    /// An `F_p`-basis of `F_q`: the powers `1, t, ..., t^{e-1}`.
    pub fn fp_basis(&self) -> Vec<Fq> {
        (0..self.e as usize)
            .map(|i| {
                let mut c = vec![0u64; self.e as usize];
                c[i] = 1;
                Fq(c)
            })
            .collect()
    }

    /// The lexicographically smallest generator of the multiplicative
    /// group (deterministic primitive element).
    pub fn primitive_element(&self) -> Fq {
        'cand: for a in self.elements() {
            if a.is_zero() {
                continue;
            }
            // Multiplicative order must be exactly q - 1.
            for d in divisors(self.q - 1) {
                if d < self.q - 1 && self.pow(&a, d) == self.one() {
                    continue 'cand;
                }
            }
            return a;
        }
        unreachable!("F_q^x is cyclic")
    }

    // ---- packed encoding and tables ----

    pub fn encode(&self, a: &Fq) -> usize {
        let mut idx = 0usize;
        for &c in a.0.iter().rev() {
            idx = idx * self.p as usize + c as usize;
        }
        idx
    }

    pub fn decode(&self, mut idx: usize) -> Fq {
        let mut c = vec![0u64; self.e as usize];
        for ci in c.iter_mut() {
            *ci = (idx % self.p as usize) as u64;
            idx /= self.p as usize;
        }
        Fq(c)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        let mut neg = vec![0u32; q];
        let mut inv = vec![0u32; q];
        let els: Vec<Fq> = (0..q).map(|i| self.decode(i)).collect();
        for i in 0..q {
            neg[i] = self.encode(&self.neg(&els[i])) as u32;
            if i != self.encode(&self.zero()) {
                inv[i] = self.encode(&self.inv(&els[i]).unwrap()) as u32;
            }
            for j in 0..q {
                add[i * q + j] = self.encode(&self.add(&els[i], &els[j])) as u32;
                mul[i * q + j] = self.encode(&self.mul(&els[i], &els[j])) as u32;
            }
        }
        Tables {
            q,
            add,
            mul,
            neg,
            inv,
        }
    }

    /// Lookup tables, available for fields with `q <= 1024`.
    pub fn tables(&self) -> Result<&Tables> {
        self.tables.as_deref().ok_or_else(|| {
            Error::ResourceBound(format!("no lookup tables for q = {}", self.q))
        })
    }

    /// Renders a coefficient: an integer for prime fields, the
    /// parenthesized polynomial in `t` for extension fields.
    pub fn render(&self, a: &Fq) -> String {
        if self.e == 1 {
            return a.0[0].to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in a.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let s = match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{c}*t"),
                (_, 1) => format!("t^{i}"),
                (_, _) => format!("{c}*t^{i}"),
            };
            parts.push(s);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            format!("({})", parts.join("+"))
        }
    }
}

impl Tables {
    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

impl Fq {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducible_moduli() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        assert_eq!(f2.q, 2);
        let f4 = FieldCtx::new(2, 2).unwrap();
        assert_eq!(f4.q, 4);
        assert_eq!(f4.modulus, vec![1, 1, 1]); // t^2 + t + 1
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.q, 9);
        assert_eq!(f9.modulus, vec![1, 0, 1]); // t^2 + 1
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(FieldCtx::new(6, 1), Err(Error::NotPrime(6))));
        assert!(matches!(FieldCtx::new(2, 0), Err(Error::ZeroExtension)));
        assert!(matches!(FieldCtx::new(2, 64), Err(Error::Overflow(_))));
    }

    #[test]
    fn prime_field_mul() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let a = f5.from_int(3);
        let b = f5.from_int(4);
        assert_eq!(f5.mul(&a, &b), f5.from_int(2)); // 12 mod 5
    }

    #[test]
    fn f4_mul_and_frobenius() {
        let f4 = FieldCtx::new(2, 2).unwrap();
        let t = Fq(vec![0, 1]);
        let t_plus_1 = Fq(vec![1, 1]);
        assert_eq!(f4.mul(&t, &t), t_plus_1); // t^2 = t + 1
        assert_eq!(f4.frobenius(&t), t_plus_1);
    }

    #[test]
    fn f9_frobenius() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let t = Fq(vec![0, 1]);
        // t^3 = -t mod t^2 + 1
        assert_eq!(f9.frobenius(&t), Fq(vec![0, 2]));
        // applying it e times is the identity
        assert_eq!(f9.frobenius(&f9.frobenius(&t)), t);
    }

    #[test]
    fn fermat_and_inverses() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (2, 3), (3, 4), (2, 4)] {
            let f = FieldCtx::new(p, e).unwrap();
            assert!(f.q <= 81);
            let mut prod = f.one();
            for a in f.elements() {
                assert_eq!(f.pow(&a, f.q), a, "a^q = a in F_{}", f.q);
                if !a.is_zero() {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                    prod = f.mul(&prod, &a);
                }
            }
            // product of all nonzero elements is -1
            assert_eq!(prod, f.neg(&f.one()));
        }
    }

    #[test]
    fn primitive_elements() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(f3.primitive_element(), f3.from_int(2));
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.primitive_element(), f7.from_int(3));
        let f4 = FieldCtx::new(2, 2).unwrap();
        let w = f4.primitive_element();
        assert_eq!(f4.pow(&w, 3), f4.one());
        assert_ne!(f4.pow(&w, 1), f4.one());
    }

    #[test]
    fn tables_agree_with_arithmetic() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let t = f9.tables().unwrap();
        for i in 0..9u32 {
            for j in 0..9u32 {
                let a = f9.decode(i as usize);
                let b = f9.decode(j as usize);
                assert_eq!(t.mul(i, j) as usize, f9.encode(&f9.mul(&a, &b)));
                assert_eq!(t.add(i, j) as usize, f9.encode(&f9.add(&a, &b)));
            }
        }
    }
}

//! Bigraded Hilbert series of the complete-intersection invariant
//! rings, stored as exact rational functions (factor lists of the shape
//! `1 - s^a t^b`) and expanded to truncated two-variable power series
//! with arbitrary-precision coefficients.

use crate::error::{Error, Result};
use crate::groups::GroupKind;
use crate::invgen::q_pow;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// A rational function `∏(1 - s^a t^b) / ∏(1 - s^c t^d)` as two factor
/// multisets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRational {
    pub numerator: Vec<(u64, u64)>,
    pub denominator: Vec<(u64, u64)>,
}

/// The series for the unipotent or triangular invariant ring.
pub fn series_for(kind: GroupKind, n: usize, q: u64) -> Result<HilbertRational> {
    let qp = |k: u64| q_pow(q, k);
    match kind {
        GroupKind::Un => {
            if n == 1 {
                // trivial group: free on x1, y1
                return Ok(HilbertRational {
                    numerator: vec![],
                    denominator: vec![(1, 0), (0, 1)],
                });
            }
            let mut numerator = Vec::new();
            for k in 2..n {
                numerator.push((qp(k as u64 - 1)?, qp((n - k) as u64)?));
            }
            for k in 1..n {
                numerator.push((qp(k as u64)?, qp((n - k) as u64)?));
            }
            let mut denominator = Vec::new();
            for i in 0..n as u64 {
                denominator.push((qp(i)?, 0));
            }
            for i in 0..n as u64 {
                denominator.push((0, qp(i)?));
            }
            for i in 0..(n as u64 - 1) {
                denominator.push((qp(i)?, 1));
            }
            for i in 1..(n as u64 - 1) {
                denominator.push((1, qp(i)?));
            }
            Ok(HilbertRational {
                numerator,
                denominator,
            })
        }
        GroupKind::Bn => {
            let mul = |a: u64| -> Result<u64> {
                (q - 1).checked_mul(a).ok_or(Error::Overflow("exponent"))
            };
            let mut numerator = Vec::new();
            for k in 1..=n {
                numerator.push((mul(qp(k as u64 - 1)?)?, mul(qp((n - k) as u64)?)?));
            }
            for k in 1..n {
                numerator.push((qp(k as u64)?, qp((n - k) as u64)?));
            }
            let mut denominator = Vec::new();
            for i in 0..n as u64 {
                denominator.push((mul(qp(i)?)?, 0));
            }
            for i in 0..n as u64 {
                denominator.push((0, mul(qp(i)?)?));
            }
            for i in 0..n as u64 {
                denominator.push((qp(i)?, 1));
            }
            for i in 1..n as u64 {
                denominator.push((1, qp(i)?));
            }
            Ok(HilbertRational {
                numerator,
                denominator,
            })
        }
        _ => Err(Error::Unsupported(format!(
            "no closed-form series for group '{}'",
            kind.name()
        ))),
    }
}

/// Default truncation: deep enough that the largest relation factors
/// actually affect the table, floored at 12.
pub fn default_cutoff(n: usize, q: u64) -> u64 {
    let base = q_pow(q, n as u64 - 1).unwrap_or(u64::MAX / 2);
    std::cmp::max(2 * base + 2, 12)
}

/// A truncated two-variable power series with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTrunc {
    pub max_d: usize,
    pub max_e: usize,
    /// `coeffs[d][e]`.
    pub coeffs: Vec<Vec<BigInt>>,
}

impl SeriesTrunc {
    pub fn at(&self, d: usize, e: usize) -> &BigInt {
        &self.coeffs[d][e]
    }

    /// Diagonal sums `Σ_{d+e=k}`, defined for `k ≤ min(max_d, max_e)`.
    pub fn total_degree_series(&self) -> Vec<BigInt> {
        let kmax = std::cmp::min(self.max_d, self.max_e);
        (0..=kmax)
            .map(|k| {
                (0..=k)
                    .filter(|&d| k - d <= self.max_e && d <= self.max_d)
                    .map(|d| self.coeffs[d][k - d].clone())
                    .sum()
            })
            .collect()
    }

    /// `d,e,dim` lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,e,dim\n");
        for d in 0..=self.max_d {
            for e in 0..=self.max_e {
                out.push_str(&format!("{d},{e},{}\n", self.coeffs[d][e]));
            }
        }
        out
    }
}

/// Expands the rational function as a power series, truncated beyond
/// `(max_d, max_e)`. Each denominator factor contributes a geometric
/// series via an in-place forward recurrence; each numerator factor is
/// a subtract-shift applied in decreasing index order.
pub fn expand(h: &HilbertRational, max_d: usize, max_e: usize) -> Result<SeriesTrunc> {
    for &(a, b) in h.numerator.iter().chain(&h.denominator) {
        if (a, b) == (0, 0) {
            return Err(Error::Unsupported("factor (1 - s^0 t^0) vanishes".into()));
        }
    }
    let mut t = vec![vec![BigInt::from(0); max_e + 1]; max_d + 1];
    t[0][0] = BigInt::from(1);
    for &(a, b) in &h.denominator {
        let (a, b) = (a as usize, b as usize);
        if a > max_d && b > max_e {
            continue;
        }
        for d in 0..=max_d {
            for e in 0..=max_e {
                if d >= a && e >= b && !t[d - a][e - b].is_zero() {
                    let add = t[d - a][e - b].clone();
                    t[d][e] += add;
                }
            }
        }
    }
    for &(a, b) in &h.numerator {
        let (a, b) = (a as usize, b as usize);
        for d in (0..=max_d).rev() {
            for e in (0..=max_e).rev() {
                if d >= a && e >= b && !t[d - a][e - b].is_zero() {
                    let sub = t[d - a][e - b].clone();
                    t[d][e] -= sub;
                }
            }
        }
    }
    Ok(SeriesTrunc {
        max_d,
        max_e,
        coeffs: t,
    })
}

impl HilbertRational {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "numerator": self.numerator,
            "denominator": self.denominator,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<HilbertRational> {
        let h: HilbertRational = serde_json::from_value(value.clone())?;
        for &(a, b) in h.numerator.iter().chain(&h.denominator) {
            if (a, b) == (0, 0) {
                return Err(Error::Parse("factor (0, 0) is not allowed".into()));
            }
        }
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn un2_numerator() {
        for q in [2u64, 3, 5] {
            let h = series_for(GroupKind::Un, 2, q).unwrap();
            assert_eq!(h.numerator, vec![(q, q)]);
            assert_eq!(h.denominator.len(), 5);
        }
    }

    #[test]
    fn b1_factors() {
        let q = 3;
        let h = series_for(GroupKind::Bn, 1, q).unwrap();
        assert_eq!(h.numerator, vec![(q - 1, q - 1)]);
        assert_eq!(h.denominator, vec![(q - 1, 0), (0, q - 1), (1, 1)]);
    }

    #[test]
    fn complete_intersection_bookkeeping() {
        // |denominator| - |numerator| = Krull dimension 2n
        for q in [2u64, 3] {
            for n in 1..=5 {
                for kind in [GroupKind::Un, GroupKind::Bn] {
                    let h = series_for(kind, n, q).unwrap();
                    assert_eq!(h.denominator.len() - h.numerator.len(), 2 * n);
                }
            }
        }
    }

    #[test]
    fn geometric_product_all_ones() {
        let h = HilbertRational {
            numerator: vec![],
            denominator: vec![(1, 0), (0, 1)],
        };
        let t = expand(&h, 6, 6).unwrap();
        for d in 0..=6 {
            for e in 0..=6 {
                assert_eq!(t.at(d, e), &BigInt::from(1));
            }
        }
    }

    #[test]
    fn cancellation_factor() {
        // (1 - s^2) / ((1 - s)(1 - s^2)) = 1/(1 - s)
        let h = HilbertRational {
            numerator: vec![(2, 0)],
            denominator: vec![(1, 0), (2, 0)],
        };
        let t = expand(&h, 8, 2).unwrap();
        for d in 0..=8 {
            assert_eq!(t.at(d, 0), &BigInt::from(1));
            assert_eq!(t.at(d, 1), &BigInt::from(0));
        }
    }

    #[test]
    fn un3_q2_low_coefficients() {
        let t = expand(&series_for(GroupKind::Un, 3, 2).unwrap(), 12, 12).unwrap();
        assert_eq!(t.at(0, 0), &BigInt::from(1));
        // span {f1 f1*, u0}
        assert_eq!(t.at(1, 1), &BigInt::from(2));
        // f1 alone in x-degree 1
        assert_eq!(t.at(1, 0), &BigInt::from(1));
    }

    #[test]
    fn b1_q3_total_degree() {
        let t = expand(&series_for(GroupKind::Bn, 1, 3).unwrap(), 8, 8).unwrap();
        let diag = t.total_degree_series();
        assert_eq!(diag[0], BigInt::from(1));
        assert_eq!(diag[1], BigInt::from(0));
        // ftilde1, ftilde1*, u0
        assert_eq!(diag[2], BigInt::from(3));
    }

    #[test]
    fn nonnegative_and_symmetric() {
        for q in [2u64, 3] {
            for n in [1usize, 2, 3] {
                for kind in [GroupKind::Un, GroupKind::Bn] {
                    let t = expand(&series_for(kind, n, q).unwrap(), 12, 12).unwrap();
                    for d in 0..=12 {
                        for e in 0..=12 {
                            assert!(t.at(d, e) >= &BigInt::from(0));
                            assert_eq!(t.at(d, e), t.at(e, d), "{kind:?} n={n} q={q}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generator_witnesses() {
        let q = 3u64;
        let t = expand(&series_for(GroupKind::Un, 3, q).unwrap(), 10, 10).unwrap();
        for i in 1..=2usize {
            let d = q.pow(i as u32 - 1) as usize;
            assert!(t.at(d, 0) >= &BigInt::from(1));
            assert!(t.at(0, d) >= &BigInt::from(1));
        }
    }

    #[test]
    fn json_round_trip() {
        let h = series_for(GroupKind::Bn, 2, 3).unwrap();
        let back = HilbertRational::from_json(&h.to_json()).unwrap();
        assert_eq!(back, h);
        assert!(HilbertRational::from_json(&serde_json::json!({
            "numerator": [[0, 0]], "denominator": []
        }))
        .is_err());
    }

    #[test]
    fn csv_shape() {
        let t = expand(&series_for(GroupKind::Bn, 1, 2).unwrap(), 2, 2).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("d,e,dim\n0,0,1\n"));
        assert_eq!(csv.lines().count(), 10);
    }
}

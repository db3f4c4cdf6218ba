//! Partial sums of `Σ 1/n²` and `Σ 1/(2n+1)²` with two-sided tail bounds.
//!
//! Each enclosure is `[S + lower tail, S + upper tail]` widened outward by
//! `1e-15` relative, which covers the rounding of a compensated partial sum.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::summation::CompensatedSum;

/// Relative outward widening applied to every computed endpoint.
pub const SLOP: f64 = 1e-15;

/// A closed interval `[lo, hi]` known to contain some limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    lo: f64,
    hi: f64,
}

impl Enclosure {
    /// Panics if `lo > hi` or either end is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "enclosure requires lo <= hi, got [{lo}, {hi}]");
        Self { lo, hi }
    }

    /// Widens `[lo, hi]` outward by [`SLOP`] relative.
    fn outward(lo: f64, hi: f64) -> Self {
        Self::new(lo - SLOP * lo.abs(), hi + SLOP * hi.abs())
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Enclosure) -> Option<Enclosure> {
        self.overlaps(other)
            .then(|| Enclosure::new(self.lo.max(other.lo), self.hi.min(other.hi)))
    }

    /// `k · [lo, hi]` for `k > 0`, widened outward.
    pub fn scale(&self, k: f64) -> Enclosure {
        assert!(k > 0.0, "scale factor must be positive");
        Self::outward(k * self.lo, k * self.hi)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo, self.hi)
    }
}

/// `Σ_{n=1}^{N} 1/n²`, summed in ascending `n`.
pub fn partial_reciprocal_squares(n_terms: u64) -> f64 {
    (1..=n_terms)
        .map(|n| {
            let k = n as f64;
            1.0 / (k * k)
        })
        .collect::<CompensatedSum>()
        .value()
}

/// `Σ_{n=0}^{N-1} 1/(2n+1)²`, summed in ascending `n`.
pub fn partial_odd_reciprocal_squares(n_terms: u64) -> f64 {
    (0..n_terms)
        .map(|n| {
            let k = 2.0 * n as f64 + 1.0;
            1.0 / (k * k)
        })
        .collect::<CompensatedSum>()
        .value()
}

/// Enclosure of `Σ_{n≥1} 1/n²` from the first `N` terms.
///
/// The tail `Σ_{n>N} 1/n²` lies between `∫_{N+1}^∞ dx/x² = 1/(N+1)` and
/// `∫_N^∞ dx/x² = 1/N`.
pub fn sum_reciprocal_squares(n_terms: u64) -> Enclosure {
    assert!(n_terms >= 1, "need at least one term");
    let s = partial_reciprocal_squares(n_terms);
    let n = n_terms as f64;
    Enclosure::outward(s + 1.0 / (n + 1.0), s + 1.0 / n)
}

/// Enclosure of `Σ_{n≥0} 1/(2n+1)²` from the terms `n = 0 … N-1`.
///
/// Telescoping `1/((2n+1)(2n+3)) < 1/(2n+1)² < 1/(2n(2n+2))` over `n ≥ N`
/// bounds the tail by `1/(2(2N+1))` below and `1/(4N)` above.
pub fn sum_odd_reciprocal_squares(n_terms: u64) -> Enclosure {
    assert!(n_terms >= 1, "need at least one term");
    let s = partial_odd_reciprocal_squares(n_terms);
    let n = n_terms as f64;
    Enclosure::outward(s + 1.0 / (2.0 * (2.0 * n + 1.0)), s + 1.0 / (4.0 * n))
}

/// The odd-square enclosure next to `3/4` of the full-series enclosure.
/// Both contain `Σ 1/(2n+1)²`, so they overlap.
pub fn odd_to_full_relation(n_terms: u64) -> (Enclosure, Enclosure) {
    (
        sum_odd_reciprocal_squares(n_terms),
        sum_reciprocal_squares(n_terms).scale(0.75),
    )
}

/// Enclosure of `Σ 1/n²` obtained by intersecting the two sides of
/// [`odd_to_full_relation`] and scaling back by `4/3`.
///
/// `None` when the two sides fail to overlap.
pub fn basel_via_odd_relation(n_terms: u64) -> Option<Enclosure> {
    let (odd, full) = odd_to_full_relation(n_terms);
    odd.intersect(&full).map(|e| e.scale(4.0 / 3.0))
}

//! Truncated Hilbert series: degreewise k-dimensions of a graded object.

use serde::{Deserialize, Serialize};

/// Dimension counts over a degree window. Coefficient `i` is the dimension
/// in degree `lo + i`; degrees outside the stored window read as zero.
/// Shifts can make `lo` negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    lo: i64,
    coeffs: Vec<usize>,
}

impl HilbertSeries {
    pub fn new(lo: i64, coeffs: Vec<usize>) -> Self {
        let mut hs = HilbertSeries { lo, coeffs };
        hs.trim();
        hs
    }

    pub fn zero() -> Self {
        HilbertSeries {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn from_fn(lo: i64, hi: i64, mut f: impl FnMut(i64) -> usize) -> Self {
        let coeffs = (lo..=hi).map(|d| f(d)).collect();
        HilbertSeries::new(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.first() == Some(&0) {
            self.coeffs.remove(0);
            self.lo += 1;
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn get(&self, d: i64) -> usize {
        if d < self.lo {
            return 0;
        }
        let idx = (d - self.lo) as usize;
        self.coeffs.get(idx).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn support_lo(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo)
        }
    }

    /// Highest degree with a nonzero coefficient within the stored window.
    pub fn support_hi(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.support_hi().unwrap().max(other.support_hi().unwrap());
        HilbertSeries::from_fn(lo, hi, |d| self.get(d) + other.get(d))
    }

    pub fn shifted(&self, a: i64) -> Self {
        HilbertSeries {
            lo: self.lo + a,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Total dimension over the stored window.
    pub fn total(&self) -> usize {
        self.coeffs.iter().sum()
    }

    /// Equality of coefficients for every degree `<= hi`.
    pub fn eq_up_to(&self, other: &Self, hi: i64) -> bool {
        let lo = match (self.support_lo(), other.support_lo()) {
            (None, None) => return true,
            (a, b) => a.unwrap_or(i64::MAX).min(b.unwrap_or(i64::MAX)),
        };
        (lo..=hi).all(|d| self.get(d) == other.get(d))
    }

    /// Coefficients listed from degree 0 through `hi` (for display/JSON).
    pub fn window(&self, hi: i64) -> Vec<usize> {
        (0..=hi).map(|d| self.get(d)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_and_shifts() {
        let a = HilbertSeries::new(0, vec![1, 2, 2]);
        let b = a.shifted(1);
        assert_eq!(b.get(0), 0);
        assert_eq!(b.get(1), 1);
        let s = a.add(&b);
        assert_eq!(s.get(1), 3);
        assert_eq!(s.get(3), 2);
    }

    #[test]
    fn trim_and_support() {
        let a = HilbertSeries::new(-2, vec![0, 0, 1, 1, 0]);
        assert_eq!(a.support_lo(), Some(0));
        assert_eq!(a.support_hi(), Some(1));
        assert!(HilbertSeries::new(3, vec![0, 0]).is_zero());
    }
}

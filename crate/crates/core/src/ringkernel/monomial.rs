//! Monomials in a fixed number of variables, ordered by graded reverse
//! lexicographic order (degrevlex).

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// A monomial `x_1^{e_1} ... x_n^{e_n}`, standard grading.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial { exps }
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial {
            exps: vec![0; num_vars],
        }
    }

    pub fn var(i: usize, num_vars: usize) -> Self {
        let mut exps = vec![0; num_vars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div_into(&self, other: &Self) -> Self {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// All monomials of the given degree, ascending in the monomial order.
    pub fn all_of_degree(num_vars: usize, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u16; num_vars];
        fill(num_vars, degree, 0, &mut current, &mut out);
        out.sort();
        out
    }
}

fn fill(num_vars: usize, remaining: u32, idx: usize, current: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    if idx == num_vars - 1 {
        current[idx] = remaining as u16;
        out.push(Monomial::new(current.clone()));
        current[idx] = 0;
        return;
    }
    for e in 0..=remaining {
        current[idx] = e as u16;
        fill(num_vars, remaining - e, idx + 1, current, out);
    }
    current[idx] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Equal degree: the monomial whose last differing exponent is
        // smaller is the larger one (reverse lexicographic from the right).
        for i in (0..self.exps.len()).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degrevlex_on_two_vars() {
        // In two variables degrevlex agrees with deglex: x^2 > xy > y^2.
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        assert!(m(&[1, 0]) > m(&[0, 1]));
        assert!(m(&[0, 2]) > m(&[1, 0]));
    }

    #[test]
    fn degrevlex_three_vars_classic() {
        // x*z < y^2 in degrevlex (z exponent differs last, larger exponent loses).
        assert!(m(&[1, 0, 1]) < m(&[0, 2, 0]));
        // x^2*y*z^2 < x*y^3*z
        assert!(m(&[2, 1, 2]) < m(&[1, 3, 1]));
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let all = Monomial::all_of_degree(3, 4);
        assert_eq!(all.len(), 15); // C(4+2, 2)
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 0]);
        assert!(b.divides(&a));
        assert_eq!(b.div_into(&a), m(&[1, 1]));
        assert_eq!(a.lcm(&m(&[0, 3])), m(&[2, 3]));
        assert!(m(&[1, 0]).coprime(&m(&[0, 2])));
        assert!(!m(&[1, 1]).coprime(&m(&[0, 2])));
    }
}

//! Multivariate polynomials over a prime field.
//!
//! Terms are kept in a `BTreeMap` keyed by the degrevlex order, so the
//! leading term is the last entry and iteration order is canonical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::field::{FieldElement, PrimeField};
use super::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement, num_vars: usize) -> Self {
        let mut p = Polynomial::zero(num_vars);
        if c != 0 {
            p.terms.insert(Monomial::one(num_vars), c);
        }
        p
    }

    pub fn variable(i: usize, num_vars: usize) -> Self {
        let mut p = Polynomial::zero(num_vars);
        p.terms.insert(Monomial::var(i, num_vars), 1);
        p
    }

    pub fn monomial(m: Monomial, c: FieldElement) -> Self {
        let mut p = Polynomial::zero(m.num_vars());
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Self {
        let mut p = Polynomial::zero(num_vars);
        for (m, c) in terms {
            debug_assert_eq!(m.num_vars(), num_vars);
            if c != 0 {
                p.terms.insert(m, c);
            }
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElement)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Leading term under degrevlex.
    pub fn leading(&self) -> Option<(&Monomial, FieldElement)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    /// Total degree of the leading term.
    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    /// `Some(d)` when every term has total degree `d`. The zero polynomial
    /// is homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = it.next()?.degree();
        for m in it {
            if m.degree() != first {
                return None;
            }
        }
        Some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// True when the polynomial is a nonzero scalar (a unit of the graded ring).
    pub fn is_unit_scalar(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one()
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeff(&Monomial::one(self.num_vars))
    }

    pub fn add_assign_term(&mut self, field: &PrimeField, m: Monomial, c: FieldElement) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, field: &PrimeField, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_assign_term(field, m.clone(), c);
        }
        out
    }

    pub fn sub(&self, field: &PrimeField, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_assign_term(field, m.clone(), field.neg(c));
        }
        out
    }

    pub fn neg(&self, field: &PrimeField) -> Self {
        let mut out = Polynomial::zero(self.num_vars);
        for (m, c) in self.terms() {
            out.terms.insert(m.clone(), field.neg(c));
        }
        out
    }

    pub fn scale(&self, field: &PrimeField, c: FieldElement) -> Self {
        if c == 0 {
            return Polynomial::zero(self.num_vars);
        }
        let mut out = Polynomial::zero(self.num_vars);
        for (m, a) in self.terms() {
            out.terms.insert(m.clone(), field.mul(a, c));
        }
        out
    }

    pub fn mul_term(&self, field: &PrimeField, m: &Monomial, c: FieldElement) -> Self {
        if c == 0 {
            return Polynomial::zero(self.num_vars);
        }
        let mut out = Polynomial::zero(self.num_vars);
        for (mm, a) in self.terms() {
            out.terms.insert(mm.mul(m), field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, field: &PrimeField, other: &Self) -> Self {
        let mut out = Polynomial::zero(self.num_vars);
        for (m, c) in other.terms() {
            for (mm, a) in self.terms() {
                out.add_assign_term(field, mm.mul(m), field.mul(a, c));
            }
        }
        out
    }

    /// Normalize so the leading coefficient is 1.
    pub fn monic(&self, field: &PrimeField) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(field, field.inv(c)),
        }
    }

    /// Render with the given variable names, terms in descending order.
    pub fn display(&self, var_names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 1 {
                    factors.push(var_names[i].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", var_names[i], e));
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn x() -> Polynomial {
        Polynomial::variable(0, 2)
    }

    fn y() -> Polynomial {
        Polynomial::variable(1, 2)
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let f = field();
        let p = x().mul(&f, &x()).sub(&f, &y().mul(&f, &y())); // x^2 - y^2
        assert_eq!(p.num_terms(), 2);
        let q = p.add(&f, &y().mul(&f, &y()));
        assert_eq!(q, x().mul(&f, &x()));
        assert!(p.sub(&f, &p).is_zero());
    }

    #[test]
    fn leading_term_is_degrevlex_max() {
        let f = field();
        // x*y + y^3: leading should be y^3 (higher degree)
        let p = x().mul(&f, &y()).add(&f, &y().mul(&f, &y()).mul(&f, &y()));
        let (lm, _) = p.leading().unwrap();
        assert_eq!(lm.degree(), 3);
    }

    #[test]
    fn homogeneity() {
        let f = field();
        let p = x().mul(&f, &x()).sub(&f, &y().mul(&f, &y()));
        assert_eq!(p.homogeneous_degree(), Some(2));
        let q = p.add(&f, &x());
        assert!(!q.is_homogeneous());
        assert!(Polynomial::zero(2).is_homogeneous());
    }

    #[test]
    fn display_matches_expected_format() {
        let f = field();
        let names = vec!["x".to_string(), "y".to_string()];
        let p = x().mul(&f, &x()).add(&f, &y().scale(&f, 3));
        assert_eq!(p.display(&names), "x^2 + 3*y");
        assert_eq!(Polynomial::zero(2).display(&names), "0");
        assert_eq!(Polynomial::constant(2, 2).display(&names), "2");
    }
}

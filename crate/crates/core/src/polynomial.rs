//! Sparse polynomials over `F_q` keyed by monomial.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::monomial::Monomial;

/// Polynomial in a fixed number of variables. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Elem>,
}

#[derive(Serialize)]
struct TermJson {
    monomial: String,
    coeff: Elem,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(mu: Monomial) -> Self {
        let nvars = mu.nvars();
        Self { nvars, terms: BTreeMap::from([(mu, 1)]) }
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms(
        field: &FieldSpec,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Elem)>,
    ) -> Result<Self> {
        let mut out = Self::zero(nvars);
        for (mu, c) in terms {
            if mu.nvars() != nvars {
                return Err(Error::AmbientMismatch { expected: nvars, found: mu.nvars() });
            }
            if u32::from(c) >= field.q() {
                return Err(Error::BadEncoding { value: c.into(), q: field.q() });
            }
            out.add_term(field, mu, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, field: &FieldSpec, mu: Monomial, c: Elem) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mu) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = field.add(*slot.get(), c);
                if sum == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, Elem)> {
        self.terms.iter().map(|(mu, &c)| (mu, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mu: &Monomial) -> Elem {
        self.terms.get(mu).copied().unwrap_or(0)
    }

    /// Largest monomial in lex order with nonzero coefficient.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn add(&self, field: &FieldSpec, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (mu, c) in other.terms() {
            out.add_term(field, mu.clone(), c);
        }
        out
    }

    pub fn scale(&self, field: &FieldSpec, c: Elem) -> Polynomial {
        if c == 0 {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(mu, &a)| (mu.clone(), field.mul(a, c))).collect();
        Self { nvars: self.nvars, terms }
    }

    pub fn mul(&self, field: &FieldSpec, other: &Polynomial) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (mu, a) in self.terms() {
            for (nu, b) in other.terms() {
                out.add_term(field, mu.mul(nu), field.mul(a, b));
            }
        }
        out
    }

    pub fn evaluate(&self, field: &FieldSpec, point: &[Elem]) -> Elem {
        let mut acc = 0;
        for (mu, c) in self.terms() {
            let mut v = c;
            for (&x, &a) in point.iter().zip(mu.exps()) {
                if a > 0 {
                    v = field.mul(v, field.pow(x, a.into()));
                }
            }
            acc = field.add(acc, v);
        }
        acc
    }

    /// Termwise projective reduction with coefficients merged.
    pub fn reduce(&self, field: &FieldSpec) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (mu, c) in self.terms() {
            out.add_term(field, mu.reduce(field.q()), c);
        }
        out
    }

    /// Multiplies each term by `x_var^(degree - deg term)`. Fails when a term
    /// already exceeds `degree`.
    pub fn homogenize(&self, var: usize, degree: u32) -> Result<Polynomial> {
        let mut terms = BTreeMap::new();
        for (mu, c) in self.terms() {
            let deg = mu.degree();
            if deg > degree {
                return Err(Error::OutOfRange(format!(
                    "term {mu} has degree above {degree}"
                )));
            }
            let mut exps = mu.exps().to_vec();
            exps[var] += degree - deg;
            terms.insert(Monomial::new(exps), c);
        }
        Ok(Self { nvars: self.nvars, terms })
    }

    fn json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .rev()
            .map(|(mu, &c)| TermJson { monomial: mu.to_string(), coeff: c })
            .collect()
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (mu, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if *c == 1 {
                write!(f, "{mu}")?;
            } else if mu.degree() == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{mu}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.json_terms().serialize(serializer)
    }
}

/// A polynomial whose terms all have degree `degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct HomogeneousPolynomial {
    #[serde(skip)]
    degree: u32,
    poly: Polynomial,
}

impl HomogeneousPolynomial {
    pub fn new(degree: u32, poly: Polynomial) -> Result<Self> {
        if let Some(mu) = poly.terms.keys().find(|mu| mu.degree() != degree) {
            return Err(Error::OutOfRange(format!("{mu} does not have degree {degree}")));
        }
        Ok(Self { degree, poly })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn evaluate(&self, field: &FieldSpec, point: &[Elem]) -> Elem {
        self.poly.evaluate(field, point)
    }

    pub fn reduce(&self, field: &FieldSpec) -> HomogeneousPolynomial {
        Self { degree: self.degree, poly: self.poly.reduce(field) }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.poly.leading_monomial()
    }
}

impl std::fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.poly.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::all_monomials;

    fn poly(field: &FieldSpec, nvars: usize, terms: &[(&str, Elem)]) -> Polynomial {
        Polynomial::from_terms(
            field,
            nvars,
            terms.iter().map(|(s, c)| (Monomial::parse(s, nvars).unwrap(), *c)),
        )
        .unwrap()
    }

    fn all_points(q: u32, nvars: usize) -> Vec<Vec<Elem>> {
        let mut out = vec![vec![]];
        for _ in 0..nvars {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..q as Elem).map(move |c| {
                        let mut p = p.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn characteristic_two_cancellation() {
        let f2 = FieldSpec::new(2).unwrap();
        let f = poly(&f2, 2, &[("x0^2*x1", 1), ("x0*x1^2", 1)]);
        assert!(f.reduce(&f2).is_zero());
        for p in all_points(2, 2) {
            assert_eq!(f.evaluate(&f2, &p), 0);
        }
    }

    #[test]
    fn reduced_input_is_unchanged() {
        let f5 = FieldSpec::new(5).unwrap();
        let f = poly(&f5, 3, &[("x0^2*x1", 3), ("x2^3", 4), ("x0*x1*x2", 1)]);
        assert_eq!(f.reduce(&f5), f);
        assert!(Polynomial::zero(3).reduce(&f5).is_zero());
    }

    #[test]
    fn reduction_preserves_values() {
        for q in [2u32, 3, 4] {
            let field = FieldSpec::new(q).unwrap();
            for deg in 0..=6 {
                for mu in all_monomials(3, deg) {
                    let f = Polynomial::monomial(mu.clone());
                    let g = f.reduce(&field);
                    for p in all_points(q, 3) {
                        assert_eq!(f.evaluate(&field, &p), g.evaluate(&field, &p), "q={q} {mu}");
                    }
                }
            }
        }
    }

    #[test]
    fn coefficients_merge_and_cancel() {
        let f3 = FieldSpec::new(3).unwrap();
        let f = poly(&f3, 2, &[("x0", 1), ("x0", 2), ("x1", 1)]);
        assert_eq!(f.len(), 1);
        assert_eq!(f.to_string(), "x1");
        let g = poly(&f3, 2, &[("x0", 1), ("x1", 2)]);
        let h = g.mul(&f3, &g);
        // (x0 + 2 x1)^2 = x0^2 + x0 x1 + x1^2 over F_3
        assert_eq!(h.to_string(), "x0^2 + x0*x1 + x1^2");
    }

    #[test]
    fn homogenize_and_json() {
        let f3 = FieldSpec::new(3).unwrap();
        let f = poly(&f3, 3, &[("x0", 1), ("1", 2)]);
        let h = f.homogenize(2, 2).unwrap();
        assert_eq!(h.to_string(), "x0*x2 + 2*x2^2");
        assert!(HomogeneousPolynomial::new(2, h.clone()).is_ok());
        assert!(HomogeneousPolynomial::new(2, f.clone()).is_err());
        let json = serde_json::to_string(&h).unwrap();
        assert_eq!(json, r#"[{"monomial":"x0*x2","coeff":1},{"monomial":"x2^2","coeff":2}]"#);
        assert!(f.homogenize(2, 0).is_err());
    }
}

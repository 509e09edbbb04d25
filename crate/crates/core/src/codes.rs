//! Projective Reed-Muller codes `PRM_q(d, m)` and their generalized Hamming
//! weights by exhaustive enumeration of subcodes.

use serde::Serialize;

use crate::echelon::{self, gaussian_binomial, Goal};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::formulas::projective_count;
use crate::monomial::{reduced_monomials, Monomial};
use crate::points::{evaluation_table, projective_points};
use crate::variety::{brute_force_er, FormSpace, SearchOptions};

/// A linear code given by a generator matrix whose rows are the values of
/// the reduced degree-`d` monomials (descending lex) at the canonical points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    pub q: u32,
    pub d: u32,
    pub m: usize,
    pub basis: Vec<Monomial>,
    pub points: Vec<Vec<Elem>>,
    pub generator: Vec<Vec<Elem>>,
}

impl LinearCode {
    pub fn length(&self) -> usize {
        self.points.len()
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    /// Positions where every generator row vanishes.
    pub fn zero_columns(&self) -> usize {
        (0..self.length()).filter(|&c| self.generator.iter().all(|row| row[c] == 0)).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.generator {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Export<'a> {
            schema: u32,
            q: u32,
            d: u32,
            m: usize,
            n: usize,
            k: usize,
            basis: Vec<String>,
            points: &'a [Vec<Elem>],
            generator: &'a [Vec<Elem>],
        }
        serde_json::to_value(Export {
            schema: 1,
            q: self.q,
            d: self.d,
            m: self.m,
            n: self.length(),
            k: self.dimension(),
            basis: self.basis.iter().map(ToString::to_string).collect(),
            points: &self.points,
            generator: &self.generator,
        })
        .expect("plain data")
    }
}

/// `PRM_q(d, m)`. Any `d >= 1` is accepted; beyond `m(q-1)` the code is all
/// of `F_q^n`.
pub fn build_prm(field: &FieldSpec, d: u32, m: usize) -> Result<LinearCode> {
    if d == 0 {
        return Err(Error::OutOfRange("PRM codes need d >= 1".into()));
    }
    let basis = reduced_monomials(m, field.q(), d, None)?.as_slice().to_vec();
    let points = projective_points(field, m);
    let generator = evaluation_table(field, &basis, &points);
    Ok(LinearCode { q: field.q(), d, m, basis, points, generator })
}

fn support(field: &FieldSpec, code: &LinearCode, coeffs: &[Vec<Elem>]) -> u128 {
    let words: Vec<Vec<Elem>> =
        coeffs.iter().map(|c| echelon::combine(field, c, &code.generator)).collect();
    (0..code.length()).filter(|&p| words.iter().any(|w| w[p] != 0)).count() as u128
}

/// Support size of the subcode spanned by `basis`, given as message vectors.
pub fn subspace_weight(field: &FieldSpec, code: &LinearCode, basis: &[Vec<Elem>]) -> Result<u128> {
    if basis.iter().any(|b| b.len() != code.dimension()) {
        return Err(Error::AmbientMismatch {
            expected: code.dimension(),
            found: basis.iter().map(Vec::len).find(|&l| l != code.dimension()).unwrap_or(0),
        });
    }
    if basis.is_empty() || echelon::rank(field, basis) < basis.len() {
        return Err(Error::DependentBasis);
    }
    Ok(support(field, code, basis))
}

/// `d_r`: smallest support of an `r`-dimensional subcode.
pub fn ghw_exhaustive(
    field: &FieldSpec,
    code: &LinearCode,
    r: usize,
    opts: &SearchOptions,
) -> Result<u128> {
    let k = code.dimension();
    if r == 0 || r > k {
        return Err(Error::OutOfRange(format!("r = {r} outside 1..={k}")));
    }
    let required = gaussian_binomial(k, r, code.q).saturating_mul(code.length() as u128);
    if required > opts.budget {
        return Err(Error::BudgetExceeded { required, budget: opts.budget });
    }
    let best = echelon::search(code.q, k, r, opts.workers, Goal::Min, |_, rows| {
        support(field, code, rows)
    })?;
    Ok(best.value)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityRow {
    pub r: usize,
    pub d_r: u128,
    pub e_bar: u128,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub q: u32,
    pub d: u32,
    pub m: usize,
    pub p_m: u128,
    pub rows: Vec<DualityRow>,
    pub holds: bool,
}

/// Checks `d_r(PRM_q(d, m)) + ē_r(d, m) = p_m` for `r = 1..=r_max`, with
/// `d_r` from subcode supports and `ē_r` from zero counts of reduced forms.
pub fn check_duality(
    field: &FieldSpec,
    d: u32,
    m: usize,
    r_max: usize,
    opts: &SearchOptions,
) -> Result<DualityReport> {
    let code = build_prm(field, d, m)?;
    let p_m = projective_count(m as i64, field.q())?;
    let mut rows = Vec::new();
    for r in 1..=r_max.min(code.dimension()) {
        let d_r = ghw_exhaustive(field, &code, r, opts)?;
        let e_bar = brute_force_er(field, r, d, m, FormSpace::Reduced, opts)?.value;
        rows.push(DualityRow { r, d_r, e_bar, holds: d_r + e_bar == p_m });
    }
    let holds = rows.iter().all(|row| row.holds);
    Ok(DualityReport { q: field.q(), d, m, p_m, rows, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{sorensen_dim, sorensen_mindist};

    fn field(q: u32) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    #[test]
    fn code_parameters() {
        let f3 = field(3);
        let c = build_prm(&f3, 2, 2).unwrap();
        assert_eq!((c.length(), c.dimension()), (13, 6));
        assert_eq!(echelon::rank(&f3, &c.generator), 6);
        let f2 = field(2);
        let c = build_prm(&f2, 3, 1).unwrap();
        assert_eq!((c.length(), c.dimension()), (3, 3));
        let simplex = build_prm(&f2, 1, 2).unwrap();
        assert_eq!((simplex.length(), simplex.dimension()), (7, 3));
        assert_eq!(simplex.zero_columns(), 0);
        let mut cols: Vec<Vec<Elem>> =
            (0..7).map(|p| simplex.generator.iter().map(|row| row[p]).collect()).collect();
        cols.sort();
        cols.dedup();
        assert_eq!(cols.len(), 7);
        assert!(build_prm(&f2, 0, 1).is_err());
    }

    #[test]
    fn weights() {
        let f3 = field(3);
        let c = build_prm(&f3, 1, 2).unwrap();
        // row 0 is ev(x0)
        assert_eq!(subspace_weight(&f3, &c, &[vec![1, 0, 0]]).unwrap(), 9);
        assert_eq!(
            subspace_weight(&f3, &c, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap(),
            13
        );
        assert_eq!(subspace_weight(&f3, &c, &[]), Err(Error::DependentBasis));
        assert_eq!(
            subspace_weight(&f3, &c, &[vec![1, 2, 0], vec![2, 1, 0]]),
            Err(Error::DependentBasis)
        );
    }

    #[test]
    fn hierarchy_of_small_code() {
        let f3 = field(3);
        let opts = SearchOptions::default();
        let c = build_prm(&f3, 2, 1).unwrap();
        let d: Vec<u128> = (1..=3).map(|r| ghw_exhaustive(&f3, &c, r, &opts).unwrap()).collect();
        assert_eq!(d, vec![2, 3, 4]);
    }

    #[test]
    fn minimum_distances() {
        let opts = SearchOptions::default();
        for (q, d, m) in [(3u32, 2u32, 2usize), (2, 2, 2), (4, 3, 1), (2, 1, 3)] {
            let f = field(q);
            let c = build_prm(&f, d, m).unwrap();
            assert_eq!(ghw_exhaustive(&f, &c, 1, &opts).unwrap(), sorensen_mindist(d, m, q).unwrap());
            assert_eq!(c.dimension() as u128, sorensen_dim(d, m, q).unwrap());
        }
    }

    #[test]
    fn export_formats() {
        let f2 = field(2);
        let c = build_prm(&f2, 1, 1).unwrap();
        assert_eq!(c.to_csv(), "0,1,1\n1,1,0\n");
        let json = c.to_json();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["n"], 3);
        assert_eq!(json["k"], 2);
    }

    #[test]
    fn duality_on_small_codes() {
        let opts = SearchOptions::default();
        let report = check_duality(&field(3), 1, 2, 3, &opts).unwrap();
        let d: Vec<u128> = report.rows.iter().map(|r| r.d_r).collect();
        assert_eq!(d, vec![9, 12, 13]);
        assert!(report.holds);
        let report = check_duality(&field(2), 3, 1, 3, &opts).unwrap();
        let d: Vec<u128> = report.rows.iter().map(|r| r.d_r).collect();
        let e: Vec<u128> = report.rows.iter().map(|r| r.e_bar).collect();
        assert_eq!(d, vec![1, 2, 3]);
        assert_eq!(e, vec![2, 1, 0]);
    }
}

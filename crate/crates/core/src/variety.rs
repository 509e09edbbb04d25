//! Ground truth by enumeration: rational point counts of `V(F_1, ..., F_r)`,
//! exhaustive maxima over all `r`-dimensional spaces of forms, maximal
//! footprints over all `r`-subsets of reduced monomials, and an explicit
//! family of forms attaining the conjectured value of `e_r(d, m)`.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::echelon::{self, gaussian_binomial, Goal};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::formulas::{binomial, compute_h, decompose_r, projective_count};
use crate::hypercube::{hypercube, DegreeFilter};
use crate::monomial::{all_monomials, reduced_monomials, stable_degree, Monomial, MonomialSet};
use crate::points::{affine_points, evaluation_table, projective_points};
use crate::polynomial::{HomogeneousPolynomial, Polynomial};

pub const DEFAULT_BUDGET: u128 = 100_000_000;
pub const BUDGET_ENV: &str = "FOOTPRINT_LAB_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Upper limit on (candidate × point) evaluations.
    pub budget: u128,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, workers: 0 }
    }
}

impl SearchOptions {
    /// Default options with the budget taken from `FOOTPRINT_LAB_BUDGET` when set.
    pub fn from_env() -> Result<Self> {
        let mut opts = Self::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            opts.budget = parse_budget(&raw)?;
        }
        Ok(opts)
    }

    fn check(&self, required: u128) -> Result<()> {
        if required > self.budget {
            Err(Error::BudgetExceeded { required, budget: self.budget })
        } else {
            Ok(())
        }
    }
}

/// Accepts plain integers as well as `1e8`-style values.
pub fn parse_budget(raw: &str) -> Result<u128> {
    let raw = raw.trim();
    let value = if let Some((mant, exp)) = raw.split_once(['e', 'E']) {
        let mant: u128 = mant.parse().map_err(|_| Error::Parse(format!("bad budget `{raw}`")))?;
        let exp: u32 = exp.parse().map_err(|_| Error::Parse(format!("bad budget `{raw}`")))?;
        10u128
            .checked_pow(exp)
            .and_then(|p| p.checked_mul(mant))
            .ok_or_else(|| Error::Parse(format!("budget `{raw}` too large")))?
    } else {
        raw.parse().map_err(|_| Error::Parse(format!("bad budget `{raw}`")))?
    };
    if value == 0 {
        return Err(Error::Parse("budget must be positive".into()));
    }
    Ok(value)
}

/// Which degree-`d` forms span the search space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormSpace {
    /// Projectively reduced forms, spanned by `Ṁ_d`.
    Reduced,
    /// All forms of degree `d`.
    AllHomogeneous,
}

/// `|V(polys)(F_q)|` inside `P^m`.
pub fn count_common_zeros(
    field: &FieldSpec,
    polys: &[HomogeneousPolynomial],
    m: usize,
) -> Result<u128> {
    if let Some(f) = polys.iter().find(|f| f.nvars() != m + 1) {
        return Err(Error::AmbientMismatch { expected: m + 1, found: f.nvars() });
    }
    let count = projective_points(field, m)
        .iter()
        .filter(|p| polys.iter().all(|f| f.evaluate(field, p) == 0))
        .count();
    Ok(count as u128)
}

/// Zero count of the span of `rows` (coefficients over the columns of `table`).
fn common_zeros(field: &FieldSpec, table: &[Vec<Elem>], rows: &[Vec<Elem>]) -> u128 {
    let npoints = table.first().map_or(0, Vec::len);
    let mut count = 0;
    'points: for p in 0..npoints {
        for row in rows {
            let mut v = 0;
            for (c, &a) in row.iter().enumerate() {
                if a != 0 {
                    v = field.add(v, field.mul(a, table[c][p]));
                }
            }
            if v != 0 {
                continue 'points;
            }
        }
        count += 1;
    }
    count
}

fn rows_to_polys(
    field: &FieldSpec,
    columns: &[Monomial],
    nvars: usize,
    rows: &[Vec<Elem>],
) -> Vec<Polynomial> {
    rows.iter()
        .map(|row| {
            let terms = columns.iter().cloned().zip(row.iter().copied());
            Polynomial::from_terms(field, nvars, terms).expect("columns share the ambient")
        })
        .collect()
}

/// A footprint-bound check failure: a subspace with more zeros than the
/// footprint of its leading monomials allows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundViolation {
    pub leading_monomials: Vec<String>,
    pub zeros: u128,
    pub bound: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FootprintAudit {
    pub degree: u32,
    pub checked: u128,
    pub violations: u128,
    pub first_violation: Option<BoundViolation>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErSearch {
    pub value: u128,
    pub witness: Vec<HomogeneousPolynomial>,
    pub subspaces: u128,
    /// Present for reduced-form searches.
    pub audit: Option<FootprintAudit>,
}

/// Exact `e_r(d, m)` (all forms) or `ē_r(d, m)` (reduced forms) by visiting
/// every `r`-dimensional space of forms once.
pub fn brute_force_er(
    field: &FieldSpec,
    r: usize,
    d: u32,
    m: usize,
    space: FormSpace,
    opts: &SearchOptions,
) -> Result<ErSearch> {
    let q = field.q();
    let nvars = m + 1;
    let columns: Vec<Monomial> = match space {
        FormSpace::Reduced => reduced_monomials(m, q, d, None)?.as_slice().to_vec(),
        FormSpace::AllHomogeneous => all_monomials(nvars, d),
    };
    let n = columns.len();
    if r == 0 || r > n {
        return Err(Error::OutOfRange(format!("r = {r} outside 1..={n}")));
    }
    let points = projective_points(field, m);
    opts.check(gaussian_binomial(n, r, q).saturating_mul(points.len() as u128))?;
    let table = evaluation_table(field, &columns, &points);

    let audit_degree = stable_degree(d, m, q);
    let bounds: Option<HashMap<Vec<usize>, u128>> = (space == FormSpace::Reduced).then(|| {
        echelon::combinations(n, r)
            .into_par_iter()
            .map(|pivots| {
                let lm = MonomialSet::from_vec(
                    nvars,
                    pivots.iter().map(|&c| columns[c].clone()).collect(),
                )
                .expect("same ambient");
                let size = lm.footprint_size(audit_degree, q) as u128;
                (pivots, size)
            })
            .collect()
    });
    let violations = Mutex::new((0u128, None::<(Vec<usize>, Vec<Vec<Elem>>, u128, u128)>));

    let best = echelon::search(q, n, r, opts.workers, Goal::Max, |pivots, rows| {
        let zeros = common_zeros(field, &table, rows);
        if let Some(bounds) = &bounds {
            let bound = bounds[pivots];
            if zeros > bound {
                let mut guard = violations.lock().expect("not poisoned");
                guard.0 += 1;
                let replace = match &guard.1 {
                    None => true,
                    Some((p, rw, _, _)) => (pivots, rows) < (p.as_slice(), rw.as_slice()),
                };
                if replace {
                    guard.1 = Some((pivots.to_vec(), rows.to_vec(), zeros, bound));
                }
            }
        }
        zeros
    })?;

    let witness = rows_to_polys(field, &columns, nvars, &best.rows)
        .into_iter()
        .map(|p| HomogeneousPolynomial::new(d, p).expect("degree-d columns"))
        .collect();
    let audit = bounds.map(|_| {
        let (count, first) = violations.into_inner().expect("not poisoned");
        FootprintAudit {
            degree: audit_degree,
            checked: best.visited,
            violations: count,
            first_violation: first.map(|(pivots, _, zeros, bound)| BoundViolation {
                leading_monomials: pivots.iter().map(|&c| columns[c].to_string()).collect(),
                zeros,
                bound,
            }),
        }
    });
    Ok(ErSearch { value: best.value, witness, subspaces: best.visited, audit })
}

#[derive(Debug, Clone, Serialize)]
pub struct AffineSearch {
    pub value: u128,
    pub witness: Vec<Polynomial>,
    pub subspaces: u128,
}

/// Exact `ē^A_r(d, m)`: maximum affine zero count over all `r`-dimensional
/// spaces of reduced polynomials of degree at most `d` in `m` variables.
pub fn brute_force_affine_er(
    field: &FieldSpec,
    r: usize,
    d: u32,
    m: usize,
    opts: &SearchOptions,
) -> Result<AffineSearch> {
    let q = field.q();
    let columns = hypercube(m, q, Some(DegreeFilter::Le(d)));
    let n = columns.len();
    if r == 0 || r > n {
        return Err(Error::OutOfRange(format!("r = {r} outside 1..={n}")));
    }
    let points = affine_points(field, m);
    opts.check(gaussian_binomial(n, r, q).saturating_mul(points.len() as u128))?;
    let table = evaluation_table(field, &columns, &points);
    let best = echelon::search(q, n, r, opts.workers, Goal::Max, |_, rows| {
        common_zeros(field, &table, rows)
    })?;
    let witness = rows_to_polys(field, &columns, m, &best.rows);
    Ok(AffineSearch { value: best.value, witness, subspaces: best.visited })
}

#[derive(Debug, Clone, Serialize)]
pub struct FootprintSearch {
    pub value: u128,
    pub witness: MonomialSet,
    pub subsets: u128,
}

/// `A_r(d, m; e)`: the largest `|Δ_e(S)|` over `r`-subsets `S ⊆ Ṁ_d`.
pub fn brute_force_max_footprint(
    r: usize,
    d: u32,
    m: usize,
    q: u32,
    e: u32,
    opts: &SearchOptions,
) -> Result<FootprintSearch> {
    let all = reduced_monomials(m, q, d, None)?;
    let n = all.len();
    if r == 0 || r > n {
        return Err(Error::OutOfRange(format!("r = {r} outside 1..={n}")));
    }
    let ambient = reduced_monomials(m, q, e, None)?;
    let subsets = binomial(n as i64, r as i64)?;
    opts.check(subsets.saturating_mul(ambient.len() as u128))?;
    let combos = echelon::combinations(n, r);
    let scored = echelon::with_workers(opts.workers, || {
        combos
            .par_iter()
            .enumerate()
            .map(|(idx, c)| {
                let set = all.filter(|mu| c.iter().any(|&k| all.as_slice()[k] == *mu));
                let size = ambient.iter().filter(|mu| !set.any_divides(mu)).count() as u128;
                (size, idx)
            })
            .reduce(
                || (0, usize::MAX),
                |a, b| if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) { a } else { b },
            )
    })?;
    let (value, idx) = scored;
    let chosen = &combos[idx];
    let witness = MonomialSet::from_vec(
        m + 1,
        chosen.iter().map(|&k| all.as_slice()[k].clone()).collect(),
    )?;
    Ok(FootprintSearch { value, witness, subsets })
}

/// Forms attaining the conjectured lower bound, with their verified count.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub i: usize,
    pub j: u128,
    pub expected: u128,
    pub count: u128,
    pub forms: Vec<HomogeneousPolynomial>,
    /// True when the product construction failed and a search supplied the affine part.
    pub searched: bool,
}

/// `Π_t Π_{s<β_t} (x_t - c_s)` in `nvars` variables, `c_s` the `s`-th field element.
fn product_of_lines(field: &FieldSpec, nvars: usize, beta: &[u32]) -> Polynomial {
    let mut g = Polynomial::monomial(Monomial::one(nvars));
    for (t, &b) in beta.iter().enumerate() {
        for s in 0..b {
            let c = s as Elem;
            let line = Polynomial::from_terms(
                field,
                nvars,
                [(Monomial::var(nvars, t, 1), 1), (Monomial::one(nvars), field.neg(c))],
            )
            .expect("valid terms");
            g = g.mul(field, &line);
        }
    }
    g
}

/// Embeds a polynomial in the first `k` variables into `nvars` variables.
fn widen(field: &FieldSpec, f: &Polynomial, nvars: usize) -> Polynomial {
    let terms = f.terms().map(|(mu, c)| {
        let mut exps = mu.exps().to_vec();
        exps.resize(nvars, 0);
        (Monomial::new(exps), c)
    });
    Polynomial::from_terms(field, nvars, terms).expect("widened terms")
}

/// `r` linearly independent degree-`d` forms whose common zeros number
/// `H_j(d-1, m-i) + p_{m-i-1}`: all degree-`d` monomials in `x_0..x_{m-a+1}`
/// divisible by `x_{m-a+1}` for `a = 1..i`, cutting out the linear space
/// `x_{m-i+1} = ... = x_m = 0`, together with `j` homogenized products of
/// linear factors whose affine zero sets realize `H_j` on the patch `x_{m-i} = 1`.
pub fn construct_witness(
    field: &FieldSpec,
    r: u128,
    d: u32,
    m: usize,
    opts: &SearchOptions,
) -> Result<Witness> {
    let q = field.q();
    if d == 0 || d > q {
        return Err(Error::OutOfRange(format!("need 1 <= d <= q, got d = {d}, q = {q}")));
    }
    let dec = decompose_r(r, d, m)?;
    let (i, j) = (dec.i, dec.j);
    let nvars = m + 1;
    let k = m - i;
    let expected = compute_h(j, d - 1, k, q)? + projective_count(k as i64 - 1, q)?;

    let mut forms = Vec::new();
    for a in 1..=i {
        let top = m - a + 1;
        for mu in all_monomials(top + 1, d) {
            if mu.exp(top) == 0 {
                continue;
            }
            let mut exps = mu.exps().to_vec();
            exps.resize(nvars, 0);
            let poly = Polynomial::monomial(Monomial::new(exps));
            forms.push(HomogeneousPolynomial::new(d, poly)?);
        }
    }
    let base = forms.len();
    let affine_part = |affine: Vec<Polynomial>| -> Result<Vec<HomogeneousPolynomial>> {
        affine
            .iter()
            .map(|g| {
                let g = widen(field, g, nvars);
                HomogeneousPolynomial::new(d, g.homogenize(k, d)?)
            })
            .collect()
    };

    let j_usize = usize::try_from(j).map_err(|_| Error::Overflow("witness size"))?;
    let betas = first_tuples(k, d - 1, q, j_usize);
    let products: Vec<Polynomial> = betas.iter().map(|b| product_of_lines(field, k, b)).collect();
    forms.extend(affine_part(products)?);
    let mut searched = false;
    let mut count = count_common_zeros(field, &forms, m)?;
    if count != expected || !independent(field, &forms) {
        // fall back to an exhaustive search for the affine part
        forms.truncate(base);
        searched = true;
        if j_usize > 0 {
            let found = brute_force_affine_er(field, j_usize, d - 1, k, opts)?;
            forms.extend(affine_part(found.witness)?);
        }
        count = count_common_zeros(field, &forms, m)?;
        if count < expected || !independent(field, &forms) {
            return Err(Error::WitnessInvalid { expected, found: count });
        }
    }
    debug_assert_eq!(forms.len() as u128, r);
    Ok(Witness { i, j, expected, count, forms, searched })
}

/// First `count` tuples of `Q^len_{≤total}` in descending lex.
fn first_tuples(len: usize, total: u32, q: u32, count: usize) -> Vec<Vec<u32>> {
    hypercube(len, q, Some(DegreeFilter::Le(total)))
        .into_iter()
        .take(count)
        .map(|mu| mu.exps().to_vec())
        .collect()
}

fn independent(field: &FieldSpec, forms: &[HomogeneousPolynomial]) -> bool {
    let mut monos: Vec<&Monomial> = forms.iter().flat_map(|f| f.poly().terms().map(|(mu, _)| mu)).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<Elem>> = forms
        .iter()
        .map(|f| monos.iter().map(|mu| f.poly().coeff(mu)).collect())
        .collect();
    echelon::rank(field, &rows) == forms.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u32) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    fn form(f: &FieldSpec, nvars: usize, d: u32, terms: &[(&str, Elem)]) -> HomogeneousPolynomial {
        let p = Polynomial::from_terms(
            f,
            nvars,
            terms.iter().map(|(s, c)| (Monomial::parse(s, nvars).unwrap(), *c)),
        )
        .unwrap();
        HomogeneousPolynomial::new(d, p).unwrap()
    }

    #[test]
    fn zero_counts() {
        for q in [2u32, 3, 4, 5] {
            let f = field(q);
            let x0 = form(&f, 3, 1, &[("x0", 1)]);
            assert_eq!(count_common_zeros(&f, &[x0], 2).unwrap(), projective_count(1, q).unwrap());
            assert_eq!(count_common_zeros(&f, &[], 2).unwrap(), projective_count(2, q).unwrap());
        }
        let f3 = field(3);
        let conic = form(&f3, 3, 2, &[("x0*x1", 1), ("x2^2", 2)]);
        assert_eq!(count_common_zeros(&f3, std::slice::from_ref(&conic), 2).unwrap(), 4);
        assert!(matches!(
            count_common_zeros(&f3, &[conic], 3),
            Err(Error::AmbientMismatch { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn budget_parsing() {
        assert_eq!(parse_budget("1e8").unwrap(), 100_000_000);
        assert_eq!(parse_budget("12345").unwrap(), 12345);
        assert!(parse_budget("0").is_err());
        assert!(parse_budget("abc").is_err());
    }

    #[test]
    fn small_searches() {
        let opts = SearchOptions::default();
        let f3 = field(3);
        let v: Vec<u128> = (1..=3)
            .map(|r| brute_force_er(&f3, r, 1, 2, FormSpace::Reduced, &opts).unwrap().value)
            .collect();
        assert_eq!(v, vec![4, 1, 0]);
        let a = brute_force_affine_er(&f3, 1, 1, 2, &opts).unwrap();
        assert_eq!(a.value, 3);
        let full = brute_force_affine_er(&f3, 3, 1, 2, &opts).unwrap();
        assert_eq!(full.value, 0);
    }

    #[test]
    fn witness_matches_reported_count() {
        let opts = SearchOptions::default();
        let f3 = field(3);
        let search = brute_force_er(&f3, 2, 2, 2, FormSpace::Reduced, &opts).unwrap();
        assert_eq!(search.value, 5);
        assert_eq!(count_common_zeros(&f3, &search.witness, 2).unwrap(), 5);
        let audit = search.audit.unwrap();
        assert_eq!(audit.violations, 0);
        assert_eq!(audit.checked, gaussian_binomial(6, 2, 3));
    }

    #[test]
    fn budget_refusal() {
        let opts = SearchOptions { budget: 10, workers: 1 };
        let err = brute_force_er(&field(3), 2, 2, 2, FormSpace::Reduced, &opts).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 10, .. }));
    }

    #[test]
    fn footprint_maximum_singletons() {
        let opts = SearchOptions::default();
        let best = brute_force_max_footprint(1, 2, 2, 3, 6, &opts).unwrap();
        assert_eq!(best.value, 8);
        assert_eq!(best.witness.to_strings(), vec!["x0^2"]);
        let full = brute_force_max_footprint(6, 2, 2, 3, 6, &opts).unwrap();
        assert_eq!(full.value, 0);
    }

    #[test]
    fn witness_examples() {
        let opts = SearchOptions::default();
        let f3 = field(3);
        let w = construct_witness(&f3, 1, 2, 2, &opts).unwrap();
        assert_eq!((w.count, w.forms.len()), (7, 1));
        assert!(!w.searched);
        let w = construct_witness(&f3, 6, 2, 2, &opts).unwrap();
        assert_eq!(w.count, 0);
        // block boundary: union of monomial bases only
        let w = construct_witness(&f3, 3, 2, 2, &opts).unwrap();
        assert_eq!((w.i, w.j, w.count), (1, 0, 4));
        assert!(w.forms.iter().all(|f| f.poly().len() == 1));
    }
}

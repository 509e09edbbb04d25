//! The hypercube `ℍ^(ℓ)` of reduced monomials in `x_0, ..., x_{ℓ-1}`
//! (every exponent below `q`), its internal shadows and footprints, the
//! initial lex segments `M_d^(ℓ)(ρ)` and `L_d^(ℓ)(ρ')`, and the
//! specialization map from projective monomials onto it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{for_each_composition, Monomial, MonomialSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HypercubeSet {
    #[serde(skip)]
    nvars: usize,
    #[serde(skip)]
    q: u32,
    #[serde(rename = "elements")]
    elems: Vec<Monomial>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexMode {
    /// Segments of `ℍ_{≤d}`.
    BoundedDegree,
    /// Segments of `ℍ_d`.
    ExactDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeFilter {
    Eq(u32),
    Le(u32),
    Lt(u32),
    Ge(u32),
    Gt(u32),
}

impl DegreeFilter {
    pub fn accepts(self, deg: u32) -> bool {
        match self {
            DegreeFilter::Eq(d) => deg == d,
            DegreeFilter::Le(d) => deg <= d,
            DegreeFilter::Lt(d) => deg < d,
            DegreeFilter::Ge(d) => deg >= d,
            DegreeFilter::Gt(d) => deg > d,
        }
    }
}

/// Every element of `ℍ^(nvars)` with degree accepted by `filter`, in
/// descending lex order.
pub fn hypercube(nvars: usize, q: u32, filter: Option<DegreeFilter>) -> Vec<Monomial> {
    let top = nvars as u32 * (q - 1);
    let mut out = Vec::new();
    let mut push = |exps: &[u32]| out.push(Monomial::new(exps.to_vec()));
    for deg in 0..=top {
        if filter.is_none_or(|f| f.accepts(deg)) {
            for_each_composition(nvars, deg, q - 1, &mut push);
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

impl HypercubeSet {
    pub fn new(nvars: usize, q: u32, mut elems: Vec<Monomial>) -> Result<Self> {
        for mu in &elems {
            if mu.nvars() != nvars {
                return Err(Error::AmbientMismatch { expected: nvars, found: mu.nvars() });
            }
            if mu.exps().iter().any(|&a| a >= q) {
                return Err(Error::OutOfRange(format!("{mu} is not in the hypercube for q = {q}")));
            }
        }
        elems.sort_by(|a, b| b.cmp(a));
        elems.dedup();
        Ok(Self { nvars, q, elems })
    }

    pub fn empty(nvars: usize, q: u32) -> Self {
        Self { nvars, q, elems: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn as_slice(&self) -> &[Monomial] {
        &self.elems
    }

    pub fn contains(&self, mu: &Monomial) -> bool {
        self.elems.binary_search_by(|probe| mu.cmp(probe)).is_ok()
    }

    pub fn is_subset(&self, other: &HypercubeSet) -> bool {
        self.elems.iter().all(|mu| other.contains(mu))
    }

    pub fn union(&self, other: &HypercubeSet) -> HypercubeSet {
        let mut all = self.elems.clone();
        all.extend(other.elems.iter().cloned());
        HypercubeSet::new(self.nvars, self.q, all).expect("same hypercube")
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.elems.iter().map(ToString::to_string).collect()
    }

    fn divides_some(&self, mu: &Monomial) -> bool {
        self.elems.iter().any(|nu| nu.divides(mu))
    }

    /// `SH^(ℓ)(T)`, optionally degree-sliced.
    pub fn shadow(&self, filter: Option<DegreeFilter>) -> HypercubeSet {
        let elems = hypercube(self.nvars, self.q, filter)
            .into_iter()
            .filter(|mu| self.divides_some(mu))
            .collect();
        Self { nvars: self.nvars, q: self.q, elems }
    }

    /// `FP^(ℓ)(T)`, optionally degree-sliced.
    pub fn footprint(&self, filter: Option<DegreeFilter>) -> HypercubeSet {
        let elems = hypercube(self.nvars, self.q, filter)
            .into_iter()
            .filter(|mu| !self.divides_some(mu))
            .collect();
        Self { nvars: self.nvars, q: self.q, elems }
    }

    /// True when `self` is an initial segment (in descending lex) of `ambient`.
    pub fn is_initial_segment_of(&self, ambient: &[Monomial]) -> bool {
        self.elems.len() <= ambient.len() && self.elems[..] == ambient[..self.elems.len()]
    }
}

/// `M_d^(ℓ)(count)` or `L_d^(ℓ)(count)`.
pub fn hypercube_lex_set(
    nvars: usize,
    q: u32,
    d: u32,
    count: usize,
    mode: LexMode,
) -> Result<HypercubeSet> {
    let filter = match mode {
        LexMode::BoundedDegree => DegreeFilter::Le(d),
        LexMode::ExactDegree => DegreeFilter::Eq(d),
    };
    let ambient = hypercube(nvars, q, Some(filter));
    if count > ambient.len() {
        return Err(Error::CountOutOfRange { count: count as u128, max: ambient.len() as u128 });
    }
    Ok(HypercubeSet { nvars, q, elems: ambient[..count].to_vec() })
}

/// `σ^(ℓ)`: sends `x_0^{a_0}...x_ℓ^{a_ℓ}` to `x_0^{a_0}...x_{ℓ-1}^{a_{ℓ-1}}`
/// and anything involving `x_j`, `j > ℓ`, to zero. Returns `None` for zero.
pub fn specialize_one(mu: &Monomial, level: usize) -> Option<Monomial> {
    mu.supported_on(level).then(|| Monomial::new(mu.exps()[..level].to_vec()))
}

/// Image of a set under `σ^(ℓ)` with zero dropped. Fails with `OutOfRange`
/// if some image has an exponent `>= q`, which cannot happen for sets of
/// the form `S^<ℓ>`.
pub fn specialize(set: &MonomialSet, level: usize, q: u32) -> Result<HypercubeSet> {
    let m = set.nvars() - 1;
    if level > m {
        return Err(Error::BadLevel { level, m });
    }
    let images = set.iter().filter_map(|mu| specialize_one(mu, level)).collect();
    HypercubeSet::new(level, q, images)
}

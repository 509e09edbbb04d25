//! Monomials in `x_0, ..., x_m`, projective reduction, and projective
//! shadows/footprints inside the reduced monomials of a fixed degree.
//!
//! The term order is lexicographic with `x_0 > x_1 > ... > x_m`, which is
//! exactly the derived ordering on exponent vectors. Sets are stored sorted
//! in descending order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Self { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, index: usize, power: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = power;
        Self { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.exps[index]
    }

    /// Index of the last variable with a positive exponent, `None` for `1`.
    pub fn last_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&a| a > 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    /// True when every exponent is supported on `x_0, ..., x_level`.
    pub fn supported_on(&self, level: usize) -> bool {
        self.exps.iter().skip(level + 1).all(|&a| a == 0)
    }

    /// Projective reduction: exponents before the last occurring variable are
    /// folded into `1..=q-1` modulo `q - 1` (zero stays zero) and the excess
    /// is moved onto the last occurring variable.
    pub fn reduce(&self, q: u32) -> Monomial {
        let Some(last) = self.last_var() else {
            return self.clone();
        };
        let mut exps = self.exps.clone();
        let mut excess = 0;
        for a in exps.iter_mut().take(last) {
            let folded = fold_exponent(*a, q);
            excess += *a - folded;
            *a = folded;
        }
        exps[last] += excess;
        Monomial { exps }
    }

    pub fn is_reduced(&self, q: u32) -> bool {
        match self.last_var() {
            None => true,
            Some(last) => self.exps[..last].iter().all(|&a| a < q),
        }
    }

    /// Parses `x0^2*x1*x2^3` or `1` in `nvars` variables.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let text = text.trim();
        let mut exps = vec![0; nvars];
        if text == "1" {
            return Ok(Self { exps });
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let (var, power) = match factor.split_once('^') {
                Some((v, p)) => (v, p.trim().parse::<u32>().map_err(|_| bad(text))?),
                None => (factor, 1),
            };
            let index: usize = var
                .trim()
                .strip_prefix('x')
                .ok_or_else(|| bad(text))?
                .parse()
                .map_err(|_| bad(text))?;
            if index >= nvars {
                return Err(Error::Parse(format!(
                    "variable x{index} outside x0..x{}",
                    nvars.saturating_sub(1)
                )));
            }
            exps[index] += power;
        }
        Ok(Self { exps })
    }
}

fn bad(text: &str) -> Error {
    Error::Parse(format!("malformed monomial `{text}`"))
}

fn fold_exponent(a: u32, q: u32) -> u32 {
    if a == 0 {
        0
    } else {
        (a - 1) % (q - 1) + 1
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.exps.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if a == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{a}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Finite set of monomials sharing one ambient variable count, kept in
/// descending lex order without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialSet {
    nvars: usize,
    elems: Vec<Monomial>,
}

impl MonomialSet {
    pub fn empty(nvars: usize) -> Self {
        Self { nvars, elems: Vec::new() }
    }

    pub fn from_vec(nvars: usize, mut elems: Vec<Monomial>) -> Result<Self> {
        if let Some(bad) = elems.iter().find(|mu| mu.nvars() != nvars) {
            return Err(Error::AmbientMismatch { expected: nvars, found: bad.nvars() });
        }
        elems.sort_by(|a, b| b.cmp(a));
        elems.dedup();
        Ok(Self { nvars, elems })
    }

    /// Builds from elements already known to share `nvars`.
    pub(crate) fn from_sorted_unchecked(nvars: usize, elems: Vec<Monomial>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] > w[1]));
        Self { nvars, elems }
    }

    pub fn parse_all<'a>(nvars: usize, items: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let elems = items
            .into_iter()
            .map(|s| Monomial::parse(s, nvars))
            .collect::<Result<Vec<_>>>()?;
        Self::from_vec(nvars, elems)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Monomial> {
        self.elems.iter()
    }

    pub fn as_slice(&self) -> &[Monomial] {
        &self.elems
    }

    pub fn contains(&self, mu: &Monomial) -> bool {
        self.elems.binary_search_by(|probe| mu.cmp(probe)).is_ok()
    }

    pub fn is_subset(&self, other: &MonomialSet) -> bool {
        self.elems.iter().all(|mu| other.contains(mu))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.elems.iter().map(ToString::to_string).collect()
    }

    /// `m`, the largest variable index.
    fn top(&self) -> usize {
        self.nvars - 1
    }

    fn check_level(&self, level: usize) -> Result<()> {
        if level > self.top() {
            Err(Error::BadLevel { level, m: self.top() })
        } else {
            Ok(())
        }
    }

    /// `S^<level>`: members supported on `x_0..x_level` whose exponents
    /// below `level` are all `< q`.
    pub fn restrict_level(&self, level: usize, q: u32) -> Result<MonomialSet> {
        self.check_level(level)?;
        let elems = self
            .elems
            .iter()
            .filter(|mu| mu.supported_on(level) && mu.exps[..level].iter().all(|&a| a < q))
            .cloned()
            .collect();
        Ok(Self::from_sorted_unchecked(self.nvars, elems))
    }

    /// Members of `self` that divide `mu`.
    pub fn any_divides(&self, mu: &Monomial) -> bool {
        self.elems.iter().any(|nu| nu.divides(mu))
    }

    /// Shadow `∇_e(S)`, optionally restricted to one level.
    pub fn shadow(&self, e: u32, q: u32, level: Option<usize>) -> Result<MonomialSet> {
        let ambient = reduced_monomials(self.top(), q, e, level)?;
        Ok(ambient.filter(|mu| self.any_divides(mu)))
    }

    /// Footprint `Δ_e(S)`, optionally restricted to one level.
    pub fn footprint(&self, e: u32, q: u32, level: Option<usize>) -> Result<MonomialSet> {
        let ambient = reduced_monomials(self.top(), q, e, level)?;
        Ok(ambient.filter(|mu| !self.any_divides(mu)))
    }

    pub fn footprint_size(&self, e: u32, q: u32) -> usize {
        let ambient = reduced_monomials(self.top(), q, e, None).expect("level is None");
        ambient.iter().filter(|mu| !self.any_divides(mu)).count()
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> MonomialSet {
        let elems = self.elems.iter().filter(|mu| keep(mu)).cloned().collect();
        Self::from_sorted_unchecked(self.nvars, elems)
    }

    /// Image under the expander map. For `μ = x_0^{i_0}...x_m^{i_m}` the
    /// image is `μ x_{m-1}/x_m` when the monomial obtained by merging the
    /// last two exponents is not in the set and `i_{m-1} + 1 < q`;
    /// otherwise `μ` itself. Identity when there is a single variable.
    /// Injective for degrees below `q`; beyond that two elements can land
    /// on the same monomial, e.g. `{x0*x1, x1^2}` over `F_2`.
    pub fn expand(&self, q: u32) -> MonomialSet {
        let elems = self.elems.iter().map(|mu| self.expand_one(mu, q)).collect();
        MonomialSet::from_vec(self.nvars, elems).expect("degree-preserving image")
    }

    pub fn expand_one(&self, mu: &Monomial, q: u32) -> Monomial {
        if self.nvars < 2 {
            return mu.clone();
        }
        let m = self.top();
        let mut merged = mu.exps.clone();
        merged[m - 1] += merged[m];
        merged[m] = 0;
        let merged = Monomial::new(merged);
        if !self.contains(&merged) && mu.exps[m - 1] + 1 < q {
            let mut exps = mu.exps.clone();
            exps[m - 1] += 1;
            exps[m] -= 1;
            Monomial::new(exps)
        } else {
            mu.clone()
        }
    }

    pub fn union(&self, other: &MonomialSet) -> MonomialSet {
        let mut all = self.elems.clone();
        all.extend(other.elems.iter().cloned());
        MonomialSet::from_vec(self.nvars, all).expect("same ambient")
    }
}

impl<'a> IntoIterator for &'a MonomialSet {
    type Item = &'a Monomial;
    type IntoIter = std::slice::Iter<'a, Monomial>;
    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

impl FromStr for Monomial {
    type Err = Error;
    /// Infers the ambient count from the largest variable index present.
    fn from_str(s: &str) -> Result<Self> {
        let max_index = s
            .split('*')
            .filter_map(|f| f.trim().strip_prefix('x'))
            .filter_map(|f| f.split('^').next()?.trim().parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        Monomial::parse(s, max_index + 1)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for MonomialSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elems.iter().map(ToString::to_string))
    }
}

/// Calls `f` on every exponent vector of length `len` with entries in
/// `0..=cap` summing to exactly `total`, in descending lex order.
pub(crate) fn for_each_composition(
    len: usize,
    total: u32,
    cap: u32,
    f: &mut impl FnMut(&[u32]),
) {
    fn rec(buf: &mut Vec<u32>, len: usize, left: u32, cap: u32, f: &mut impl FnMut(&[u32])) {
        if buf.len() == len {
            if left == 0 {
                f(buf);
            }
            return;
        }
        let slots_after = (len - buf.len() - 1) as u64;
        let hi = left.min(cap);
        for v in (0..=hi).rev() {
            if ((left - v) as u64) > slots_after * cap as u64 {
                break;
            }
            buf.push(v);
            rec(buf, len, left - v, cap, f);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(len);
    rec(&mut buf, len, total, cap, f);
}

/// `Ṁ_e` (or its level slice `Ṁ_e^(level)`) for `m + 1` variables, in
/// descending lex order.
pub fn reduced_monomials(m: usize, q: u32, e: u32, level: Option<usize>) -> Result<MonomialSet> {
    if let Some(level) = level {
        if level > m {
            return Err(Error::BadLevel { level, m });
        }
    }
    let nvars = m + 1;
    let mut elems = Vec::new();
    let levels: Vec<usize> = match level {
        Some(l) => vec![l],
        None => (0..=m).collect(),
    };
    for &l in &levels {
        if l == 0 {
            elems.push(Monomial::var(nvars, 0, e));
            continue;
        }
        if e == 0 {
            continue;
        }
        // a_0..a_{l-1} in 0..q with sum <= e - 1, a_l = e - sum > 0.
        for s in 0..e {
            for_each_composition(l, s, q - 1, &mut |head| {
                let mut exps = vec![0; nvars];
                exps[..l].copy_from_slice(head);
                exps[l] = e - s;
                elems.push(Monomial::new(exps));
            });
        }
    }
    elems.sort_by(|a, b| b.cmp(a));
    Ok(MonomialSet::from_sorted_unchecked(nvars, elems))
}

/// `M_d(r)`: the first `r` members of `Ṁ_d` in descending lex order.
pub fn lex_set_projective(m: usize, q: u32, d: u32, r: usize) -> Result<MonomialSet> {
    let all = reduced_monomials(m, q, d, None)?;
    if r > all.len() {
        return Err(Error::CountOutOfRange { count: r as u128, max: all.len() as u128 });
    }
    Ok(MonomialSet::from_sorted_unchecked(m + 1, all.elems[..r].to_vec()))
}

/// The degree beyond which footprint sizes are evaluated: `d + m(q-1)`.
pub fn stable_degree(d: u32, m: usize, q: u32) -> u32 {
    d + m as u32 * (q - 1)
}

/// Every monomial of degree exactly `d` in `nvars` variables, descending lex.
pub fn all_monomials(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for_each_composition(nvars, d, d, &mut |e| out.push(Monomial::new(e.to_vec())));
    out
}

/// Orders two monomials by descending lex, the canonical set order.
pub fn descending(a: &Monomial, b: &Monomial) -> Ordering {
    b.cmp(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(s: &str, nvars: usize) -> Monomial {
        Monomial::parse(s, nvars).unwrap()
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let mu = mono("x0^2*x1*x2^3", 3);
        assert_eq!(mu.exps(), &[2, 1, 3]);
        assert_eq!(mu.to_string(), "x0^2*x1*x2^3");
        assert_eq!(mono("1", 3).to_string(), "1");
        assert!(Monomial::parse("x3", 3).is_err());
        assert!(Monomial::parse("y0", 3).is_err());
        assert!(Monomial::parse("x0^", 3).is_err());
        let json = serde_json::to_string(&mu).unwrap();
        assert_eq!(json, "\"x0^2*x1*x2^3\"");
    }

    #[test]
    fn lex_matches_variable_order() {
        assert!(mono("x0", 3) > mono("x1^5", 3));
        assert!(mono("x0*x1", 3) > mono("x0*x2", 3));
        assert!(mono("x1", 2) > mono("1", 2));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(mono("1", 3).reduce(3), mono("1", 3));
        assert_eq!(mono("x0^3*x1", 2).reduce(3), mono("x0*x1^3", 2));
        assert_eq!(mono("x0^5*x2^2", 3).reduce(3), mono("x0*x2^6", 3));
        // trailing variable is never folded
        assert_eq!(mono("x0^7", 2).reduce(3), mono("x0^7", 2));
        // q = 2 collapses every leading exponent to 1
        assert_eq!(mono("x0^4*x1^2*x2", 3).reduce(2), mono("x0*x1*x2^5", 3));
    }

    #[test]
    fn reduced_enumeration_examples() {
        let set = reduced_monomials(1, 3, 4, None).unwrap();
        assert_eq!(set.to_strings(), vec!["x0^4", "x0^2*x1^2", "x0*x1^3", "x1^4"]);
        assert_eq!(reduced_monomials(2, 3, 0, None).unwrap().to_strings(), vec!["1"]);
        assert_eq!(
            reduced_monomials(2, 3, 5, Some(3)),
            Err(Error::BadLevel { level: 3, m: 2 })
        );
        // level sizes are q^l once e > l(q-1)
        for l in 0..=2 {
            let slice = reduced_monomials(2, 3, 7, Some(l)).unwrap();
            assert_eq!(slice.len(), 3usize.pow(l as u32));
        }
    }

    #[test]
    fn shadow_and_footprint_examples() {
        let empty = MonomialSet::empty(3);
        assert_eq!(empty.footprint(4, 3, None).unwrap(), reduced_monomials(2, 3, 4, None).unwrap());
        let s = MonomialSet::parse_all(3, ["x0"]).unwrap();
        assert_eq!(s.footprint(6, 3, None).unwrap().len(), 4);
        // single variable pair, S = {x0^d}: footprint size d at large e
        for d in 1..5u32 {
            let s = MonomialSet::from_vec(2, vec![Monomial::var(2, 0, d)]).unwrap();
            let e = stable_degree(d, 1, 5);
            assert_eq!(s.footprint(e, 5, None).unwrap().len(), d as usize);
        }
    }

    #[test]
    fn restrict_level_examples() {
        let s = MonomialSet::parse_all(3, ["x0*x2"]).unwrap();
        assert!(s.restrict_level(1, 3).unwrap().is_empty());
        let s = MonomialSet::parse_all(2, ["x0^3*x1"]).unwrap();
        assert!(s.restrict_level(1, 3).unwrap().is_empty());
        let all = reduced_monomials(2, 5, 3, None).unwrap();
        assert_eq!(all.restrict_level(2, 5).unwrap(), all);
        assert!(all.restrict_level(3, 5).is_err());
    }

    #[test]
    fn expander_examples() {
        let s = MonomialSet::parse_all(3, ["x0*x2"]).unwrap();
        assert_eq!(s.expand(3).to_strings(), vec!["x0*x1"]);
        let s = MonomialSet::parse_all(3, ["x0*x2", "x0*x1"]).unwrap();
        assert_eq!(s.expand_one(&mono("x0*x2", 3), 3), mono("x0*x2", 3));
        assert_eq!(s.expand(3), s);
        let s = MonomialSet::parse_all(3, ["x0^2", "x1^2"]).unwrap();
        assert_eq!(s.expand(3), s);
    }

    #[test]
    fn lex_set_examples() {
        assert_eq!(
            lex_set_projective(2, 3, 2, 4).unwrap().to_strings(),
            vec!["x0^2", "x0*x1", "x0*x2", "x1^2"]
        );
        assert!(lex_set_projective(2, 3, 2, 0).unwrap().is_empty());
        assert_eq!(lex_set_projective(3, 7, 4, 1).unwrap().to_strings(), vec!["x0^4"]);
        assert!(lex_set_projective(2, 3, 2, 7).is_err());
    }

    #[test]
    fn position_of_pure_powers() {
        // the (sum_{a<=i} C(m+d-a, d-1) + 1)-th element of Ṁ_d is x_i^d
        let (m, d, q) = (3usize, 3u32, 5u32);
        let all = reduced_monomials(m, q, d, None).unwrap();
        let binom = |n: u64, k: u64| -> u64 { (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
        let mut offset = 0u64;
        for i in 0..=m {
            assert_eq!(all.as_slice()[offset as usize], Monomial::var(m + 1, i, d));
            offset += binom(m as u64 + d as u64 - (i as u64 + 1), d as u64 - 1);
        }
    }
}

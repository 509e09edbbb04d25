//! Closed forms: `p_j`, `H_r`, `K_r`, Macaulay tuples, the `(i, j)`
//! decomposition of `r`, conjectured and proven values of `e_r(d, m)`,
//! `r_d`, `ρ_d`, Sørensen's dimension and minimum distance, and the
//! generalized Hamming weight lower bound.
//!
//! Everything is exact `u128` arithmetic; anything that would overflow
//! returns `Error::Overflow` instead of wrapping.

use serde::Serialize;

use crate::error::{Error, Result};

fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::OutOfRange(format!("q = {q} must be at least 2")));
    }
    Ok(())
}

fn add(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

fn mul(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

/// `C(n, k)`, zero when `k < 0` or `n < k`.
pub fn binomial(n: i64, k: i64) -> Result<u128> {
    if k < 0 || n < k {
        return Ok(0);
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        let g = gcd(acc, i + 1);
        let (a, div) = (acc / g, (i + 1) / g);
        acc = mul(a, (n - i) / div, "binomial")?;
    }
    Ok(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn pow(q: u32, e: u32) -> Result<u128> {
    (q as u128).checked_pow(e).ok_or(Error::Overflow("power of q"))
}

/// `⌊q^e⌋` for `e >= -1`, so `⌊q^{-1}⌋ = 0`.
pub fn floor_pow(q: u32, e: i64) -> Result<u128> {
    if e < 0 {
        Ok(0)
    } else {
        pow(q, e as u32)
    }
}

/// `p_j = q^j + ... + q + 1`, zero for negative `j`.
pub fn projective_count(j: i64, q: u32) -> Result<u128> {
    let mut acc = 0u128;
    for e in 0..=j {
        acc = add(acc, pow(q, e as u32)?, "p_j")?;
    }
    Ok(acc)
}

/// `exact[n][s]`: tuples of length `n` over `0..q` summing to `s`.
fn exact_counts(len: usize, total: u32, q: u32) -> Result<Vec<Vec<u128>>> {
    let total = total as usize;
    let mut table = vec![vec![0u128; total + 1]; len + 1];
    table[0][0] = 1;
    for n in 1..=len {
        for s in 0..=total {
            let mut acc = 0u128;
            for a in 0..=(q as usize - 1).min(s) {
                acc = add(acc, table[n - 1][s - a], "tuple count")?;
            }
            table[n][s] = acc;
        }
    }
    Ok(table)
}

/// `bounded[n][s]`: tuples of length `n` over `0..q` summing to at most `s`.
fn bounded_counts(len: usize, total: u32, q: u32) -> Result<Vec<Vec<u128>>> {
    let mut table = exact_counts(len, total, q)?;
    for row in table.iter_mut() {
        for s in 1..row.len() {
            row[s] = add(row[s], row[s - 1], "tuple count")?;
        }
    }
    Ok(table)
}

/// `|Q^len_{≤total}|`.
pub fn bounded_tuple_count(len: usize, total: u32, q: u32) -> Result<u128> {
    check_q(q)?;
    Ok(bounded_counts(len, total, q)?[len][total as usize])
}

/// The `index`-th (1-based) element of `Q^len_{≤total}` in descending lex.
pub fn bounded_tuple(len: usize, total: u32, q: u32, index: u128) -> Result<Vec<u32>> {
    check_q(q)?;
    let table = bounded_counts(len, total, q)?;
    let max = table[len][total as usize];
    if index == 0 || index > max {
        return Err(Error::IndexOutOfRange { index, max });
    }
    let mut rest = index - 1;
    let mut left = total;
    let mut out = Vec::with_capacity(len);
    for pos in 0..len {
        let tail = len - pos - 1;
        let mut chosen = None;
        for v in (0..=left.min(q - 1)).rev() {
            let block = table[tail][(left - v) as usize];
            if rest < block {
                chosen = Some(v);
                break;
            }
            rest -= block;
        }
        let v = chosen.expect("index within range");
        out.push(v);
        left -= v;
    }
    Ok(out)
}

/// `H_r(d, m)`.
pub fn compute_h(r: u128, d: u32, m: usize, q: u32) -> Result<u128> {
    check_q(q)?;
    if r == 0 {
        return pow(q, m as u32);
    }
    if r == 1 && (d == 0 || m == 0) {
        return Ok(0);
    }
    let alpha = bounded_tuple(m, d, q, r)?;
    let mut acc = 0u128;
    for (i, &a) in alpha.iter().enumerate() {
        acc = add(acc, mul(a as u128, pow(q, (m - 1 - i) as u32)?, "H_r")?, "H_r")?;
    }
    Ok(acc)
}

/// `red[n][s]`: projectively reduced monomials of degree `s` in `n` variables.
fn reduced_counts(nvars: usize, total: u32, q: u32) -> Result<Vec<Vec<u128>>> {
    let total = total as usize;
    let mut table = vec![vec![0u128; total + 1]; nvars + 1];
    table[0][0] = 1;
    for n in 1..=nvars {
        table[n][0] = 1;
        for s in 1..=total {
            // first exponent equal to s (rest zero), or below min(q, s) with a
            // nonzero reduced tail
            let mut acc = 1u128;
            for a in 0..=(q as usize - 1).min(s - 1) {
                acc = add(acc, table[n - 1][s - a], "reduced monomial count")?;
            }
            table[n][s] = acc;
        }
    }
    Ok(table)
}

/// `|Ṁ_d|` in `m + 1` variables.
pub fn reduced_monomial_count(m: usize, d: u32, q: u32) -> Result<u128> {
    check_q(q)?;
    Ok(reduced_counts(m + 1, d, q)?[m + 1][d as usize])
}

/// Exponents of the `r`-th (1-based) member of `Ṁ_d` in descending lex.
pub fn reduced_monomial_at(m: usize, d: u32, q: u32, r: u128) -> Result<Vec<u32>> {
    check_q(q)?;
    let nvars = m + 1;
    let table = reduced_counts(nvars, d, q)?;
    let max = table[nvars][d as usize];
    if r == 0 || r > max {
        return Err(Error::CountOutOfRange { count: r, max });
    }
    let mut rest = r - 1;
    let mut left = d;
    let mut out = vec![0u32; nvars];
    for pos in 0..nvars {
        if left == 0 {
            break;
        }
        let tail = nvars - pos - 1;
        // the candidate a = left comes first in descending order
        if rest == 0 {
            out[pos] = left;
            break;
        }
        rest -= 1;
        let mut chosen = None;
        for a in (0..=(q - 1).min(left - 1)).rev() {
            let block = table[tail][(left - a) as usize];
            if rest < block {
                chosen = Some(a);
                break;
            }
            rest -= block;
        }
        let a = chosen.expect("index within range");
        out[pos] = a;
        left -= a;
    }
    Ok(out)
}

/// `K_r(d, m) = Σ_{j<m} a_j p_{m-1-j}` for the `r`-th reduced monomial.
pub fn compute_k(r: u128, d: u32, m: usize, q: u32) -> Result<u128> {
    let a = reduced_monomial_at(m, d, q, r)?;
    let mut acc = 0u128;
    for (j, &aj) in a.iter().take(m).enumerate() {
        let p = projective_count(m as i64 - 1 - j as i64, q)?;
        acc = add(acc, mul(aj as u128, p, "K_r")?, "K_r")?;
    }
    Ok(acc)
}

/// Macaulay `d`-tuple `(m_d, ..., m_1)` of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MacaulayTuple {
    pub n: u128,
    pub d: u32,
    /// `entries[0] = m_d`, ..., `entries[d-1] = m_1`.
    pub entries: Vec<i64>,
}

impl MacaulayTuple {
    /// `Σ C(m_a + a, a)`.
    pub fn value(&self) -> Result<u128> {
        let mut acc = 0u128;
        for (k, &ma) in self.entries.iter().enumerate() {
            let a = (self.d as usize - k) as i64;
            acc = add(acc, binomial(ma + a, a)?, "Macaulay value")?;
        }
        Ok(acc)
    }

    /// `m_a` for `1 <= a <= d`.
    pub fn m(&self, a: u32) -> i64 {
        self.entries[(self.d - a) as usize]
    }
}

pub fn macaulay_tuple(n: u128, d: u32) -> Result<MacaulayTuple> {
    if d == 0 {
        return Err(Error::OutOfRange("Macaulay tuples need d >= 1".into()));
    }
    let mut left = n;
    let mut entries = Vec::with_capacity(d as usize);
    for a in (1..=d as i64).rev() {
        // largest s with C(s, a) <= left; C(a - 1, a) = 0 always qualifies
        let mut s = a - 1;
        while binomial(s + 1, a)? <= left {
            s += 1;
        }
        left -= binomial(s, a)?;
        entries.push(s - a);
    }
    debug_assert_eq!(left, 0);
    Ok(MacaulayTuple { n, d, entries })
}

fn check_macaulay_domain(r: u128, d: u32, m: usize, q: u32) -> Result<u128> {
    check_q(q)?;
    if d == 0 || d >= q {
        return Err(Error::OutOfRange(format!("need 1 <= d < q, got d = {d}, q = {q}")));
    }
    let total = binomial(m as i64 + d as i64, d as i64)?;
    if r > total {
        return Err(Error::IndexOutOfRange { index: r, max: total });
    }
    Ok(total)
}

/// `H_r(d, m) = Σ_a ⌊q^{m_a}⌋` over the Macaulay tuple of `C(m+d, d) - r`.
pub fn compute_h_via_macaulay(r: u128, d: u32, m: usize, q: u32) -> Result<u128> {
    let total = check_macaulay_domain(r, d, m, q)?;
    let tuple = macaulay_tuple(total - r, d)?;
    let mut acc = 0u128;
    for &ma in &tuple.entries {
        acc = add(acc, floor_pow(q, ma)?, "H_r")?;
    }
    Ok(acc)
}

/// `r = Σ_{a=1}^{i} C(m+d-a, d-1) + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ErDecomposition {
    pub r: u128,
    pub d: u32,
    pub m: usize,
    pub i: usize,
    pub j: u128,
}

pub fn decompose_r(r: u128, d: u32, m: usize) -> Result<ErDecomposition> {
    if d == 0 {
        return Err(Error::OutOfRange("decomposition needs d >= 1".into()));
    }
    let total = binomial(m as i64 + d as i64, d as i64)?;
    if r == 0 || r > total {
        return Err(Error::OutOfRange(format!("r = {r} outside 1..={total}")));
    }
    if r == total {
        return Ok(ErDecomposition { r, d, m, i: m, j: 1 });
    }
    let mut i = 0;
    let mut j = r;
    while i < m {
        let block = binomial((m + d as usize - i - 1) as i64, d as i64 - 1)?;
        if j < block {
            break;
        }
        j -= block;
        i += 1;
    }
    Ok(ErDecomposition { r, d, m, i, j })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// A theorem pins down `e_r(d, m)` at this value.
    Proven,
    /// `d < q`; the value is conjectured and is a proven lower bound.
    Conjectural,
    /// `d = q`; the value is only a lower bound.
    LowerBound,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Proven => "proven",
            Status::Conjectural => "conjectural",
            Status::LowerBound => "lower-bound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ErValue {
    pub value: u128,
    pub status: Status,
}

/// `H_j(d-1, m-i) + p_{m-i-1}` with its status.
pub fn conjectured_er(r: u128, d: u32, m: usize, q: u32) -> Result<ErValue> {
    check_q(q)?;
    if d == 0 || d > q {
        return Err(Error::OutOfRange(format!("need 1 <= d <= q, got d = {d}, q = {q}")));
    }
    let dec = decompose_r(r, d, m)?;
    let k = m - dec.i;
    let value = add(
        compute_h(dec.j, d - 1, k, q)?,
        projective_count(k as i64 - 1, q)?,
        "conjectured e_r",
    )?;
    let status = if known_er(r, d, m, q)?.is_some() {
        Status::Proven
    } else if d == q {
        Status::LowerBound
    } else if r <= binomial(m as i64 + 2, 2)? {
        Status::Proven
    } else {
        Status::Conjectural
    };
    Ok(ErValue { value, status })
}

/// `p_{m_d} + Σ_{a<d} ⌊q^{m_a}⌋` over the Macaulay tuple of `C(m+d, d) - r`.
pub fn conjectured_er_macaulay(r: u128, d: u32, m: usize, q: u32) -> Result<u128> {
    let total = check_macaulay_domain(r, d, m, q)?;
    if r == 0 {
        return Err(Error::OutOfRange("r must be at least 1".into()));
    }
    let tuple = macaulay_tuple(total - r, d)?;
    let mut acc = projective_count(tuple.entries[0], q)?;
    for &ma in &tuple.entries[1..] {
        acc = add(acc, floor_pow(q, ma)?, "conjectured e_r")?;
    }
    Ok(acc)
}

/// Values of `e_r(d, m)` settled by a closed-form theorem, when `r` falls
/// in one of the covered families: the last `d + 1` ranks, linear forms,
/// the projective line, and the ranks `Σ_{a≤i} C(m+d-a, d-1) - t`.
pub fn known_er(r: u128, d: u32, m: usize, q: u32) -> Result<Option<u128>> {
    check_q(q)?;
    let total = binomial(m as i64 + d as i64, d as i64)?;
    if d == 0 || r == 0 || r > total {
        return Ok(None);
    }
    if r == total && d <= q {
        return Ok(Some(0));
    }
    if d == 1 {
        return Ok(Some(projective_count(m as i64 - r as i64, q)?));
    }
    if d >= q {
        return Ok(None);
    }
    let s = total - r;
    if s <= d as u128 {
        return Ok(Some(s));
    }
    if m == 1 {
        return Ok(Some(d as u128 - r + 1));
    }
    let mut prefix = 0u128;
    for i in 1..=m + 1 {
        prefix += binomial((m + d as usize - i) as i64, d as i64 - 1)?;
        if r <= prefix && prefix - r < d as u128 {
            let t = prefix - r;
            return Ok(Some(add(projective_count(m as i64 - i as i64, q)?, t, "e_r")?));
        }
    }
    Ok(None)
}

fn signed(v: u128) -> Result<i128> {
    i128::try_from(v).map_err(|_| Error::Overflow("alternating sum"))
}

fn unsigned(v: i128, what: &'static str) -> Result<u128> {
    u128::try_from(v).map_err(|_| Error::Overflow(what))
}

/// `r_d`: dimension of the degree-`d` part of the vanishing ideal of `P^m(F_q)`.
pub fn gamma_dim(d: u32, m: usize, q: u32) -> Result<u128> {
    check_q(q)?;
    let (d, m, q) = (d as i64, m as i64, q as i64);
    let mut acc: i128 = 0;
    for j in 2..=m + 1 {
        let outer = signed(binomial(m + 1, j)?)?;
        let mut inner: i128 = 0;
        for i in 0..=j - 2 {
            let k = d + (i + 1) * (q - 1) - j * q;
            inner += signed(binomial(k + m, k)?)?;
        }
        let term = outer.checked_mul(inner).ok_or(Error::Overflow("r_d"))?;
        acc += if j % 2 == 0 { term } else { -term };
    }
    unsigned(acc, "r_d")
}

/// `ρ_d`: dimension of the degree-`≤d` part of the vanishing ideal of `A^m(F_q)`.
pub fn affine_vanishing_dim(d: u32, m: usize, q: u32) -> Result<u128> {
    check_q(q)?;
    let (d, m, q) = (d as i64, m as i64, q as i64);
    let mut acc: i128 = 0;
    for j in 1..=m {
        let term = signed(binomial(m, j)?)?
            .checked_mul(signed(binomial(m + d - j * q, d - j * q)?)?)
            .ok_or(Error::Overflow("rho_d"))?;
        acc += if j % 2 == 1 { term } else { -term };
    }
    unsigned(acc, "rho_d")
}

fn check_prm_range(d: u32, m: usize, q: u32) -> Result<()> {
    check_q(q)?;
    if d == 0 || d as u64 > m as u64 * (q as u64 - 1) {
        return Err(Error::OutOfRange(format!(
            "need 1 <= d <= m(q-1) = {}, got d = {d}",
            m as u64 * (q as u64 - 1)
        )));
    }
    Ok(())
}

/// Sørensen's alternating-sum dimension of `PRM_q(d, m)`.
pub fn sorensen_dim(d: u32, m: usize, q: u32) -> Result<u128> {
    check_prm_range(d, m, q)?;
    let (m, qi) = (m as i64, q as i64);
    let mut acc: i128 = 0;
    let step = q - 1;
    let mut t = (d - 1) % step + 1;
    while t <= d {
        let t64 = t as i64;
        for j in 0..=m + 1 {
            let k = t64 - j * qi;
            let term = signed(binomial(m + 1, j)?)?
                .checked_mul(signed(binomial(k + m, k)?)?)
                .ok_or(Error::Overflow("PRM dimension"))?;
            acc += if j % 2 == 0 { term } else { -term };
        }
        t += step;
    }
    unsigned(acc, "PRM dimension")
}

/// `(q - s) q^{m-t-1}` where `d - 1 = t(q-1) + s`, `0 <= s < q - 1`.
pub fn sorensen_mindist(d: u32, m: usize, q: u32) -> Result<u128> {
    check_prm_range(d, m, q)?;
    let t = (d - 1) / (q - 1);
    let s = (d - 1) % (q - 1);
    mul((q - s) as u128, pow(q, m as u32 - t - 1)?, "minimum distance")
}

/// `m + 1 + Σ_{j<m} β_j p_{m-1-j}` where `β` is the `r`-th member, in
/// ascending lex, of the tuples in `{0..q-1}^{m+1}` summing to `(m+1)(q-1) - d`.
pub fn ghw_lower_bound(r: u128, d: u32, m: usize, q: u32) -> Result<u128> {
    check_q(q)?;
    if d == 0 || d >= q {
        return Err(Error::OutOfRange(format!("need 1 <= d < q, got d = {d}, q = {q}")));
    }
    let total = binomial(m as i64 + d as i64, m as i64)?;
    if r == 0 || r > total {
        return Err(Error::OutOfRange(format!("r = {r} outside 1..={total}")));
    }
    let len = m + 1;
    let sum = len as u32 * (q - 1) - d;
    let table = exact_counts(len, sum, q)?;
    let mut rest = r - 1;
    let mut left = sum;
    let mut beta = Vec::with_capacity(len);
    for pos in 0..len {
        let tail = len - pos - 1;
        let mut chosen = None;
        for v in 0..=left.min(q - 1) {
            let block = table[tail][(left - v) as usize];
            if rest < block {
                chosen = Some(v);
                break;
            }
            rest -= block;
        }
        let v = chosen.expect("rank within range");
        beta.push(v);
        left -= v;
    }
    let mut acc = len as u128;
    for (j, &b) in beta.iter().take(m).enumerate() {
        let p = projective_count(m as i64 - 1 - j as i64, q)?;
        acc = add(acc, mul(b as u128, p, "GHW bound")?, "GHW bound")?;
    }
    Ok(acc)
}

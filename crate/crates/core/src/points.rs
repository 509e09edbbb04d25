//! Rational points of `P^m(F_q)` and `A^m(F_q)` in a fixed order, and
//! tabulated monomial values at them.

use crate::field::{Elem, FieldSpec};
use crate::monomial::Monomial;

/// Canonical projective points: the last nonzero coordinate is 1. Blocks
/// run over the position of that coordinate from `m` down to 0; inside a
/// block the earlier coordinates count up like an odometer with `x_0`
/// most significant.
pub fn projective_points(field: &FieldSpec, m: usize) -> Vec<Vec<Elem>> {
    let q = field.q() as usize;
    let mut out = Vec::new();
    for last in (0..=m).rev() {
        for head in odometer(q, last) {
            let mut p = vec![0; m + 1];
            p[..last].copy_from_slice(&head);
            p[last] = 1;
            out.push(p);
        }
    }
    out
}

/// All of `F_q^n`, odometer order with coordinate 0 most significant.
pub fn affine_points(field: &FieldSpec, n: usize) -> Vec<Vec<Elem>> {
    odometer(field.q() as usize, n)
}

fn odometer(q: usize, len: usize) -> Vec<Vec<Elem>> {
    let total = q.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0 as Elem; len];
    for _ in 0..total {
        out.push(cur.clone());
        for slot in cur.iter_mut().rev() {
            *slot += 1;
            if (*slot as usize) < q {
                break;
            }
            *slot = 0;
        }
    }
    out
}

pub fn monomial_value(field: &FieldSpec, mu: &Monomial, point: &[Elem]) -> Elem {
    let mut v: Elem = 1;
    for (&x, &a) in point.iter().zip(mu.exps()) {
        if a > 0 {
            v = field.mul(v, field.pow(x, a.into()));
        }
    }
    v
}

/// `table[c][p]`: value of `monomials[c]` at `points[p]`.
pub fn evaluation_table(
    field: &FieldSpec,
    monomials: &[Monomial],
    points: &[Vec<Elem>],
) -> Vec<Vec<Elem>> {
    monomials
        .iter()
        .map(|mu| points.iter().map(|p| monomial_value(field, mu, p)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::projective_count;
    use std::collections::HashSet;

    #[test]
    fn counts_and_normalization() {
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            let field = FieldSpec::new(q).unwrap();
            for m in 0..=3usize {
                let pts = projective_points(&field, m);
                assert_eq!(pts.len() as u128, projective_count(m as i64, q).unwrap());
                for p in &pts {
                    let last = p.iter().rposition(|&c| c != 0).unwrap();
                    assert_eq!(p[last], 1);
                }
                // no two points on the same line through the origin
                let mut seen = HashSet::new();
                for p in &pts {
                    let mut scaled: Vec<Vec<Elem>> = (1..q as Elem)
                        .map(|c| p.iter().map(|&x| field.mul(c, x)).collect())
                        .collect();
                    scaled.sort();
                    assert!(seen.insert(scaled[0].clone()));
                }
            }
        }
    }

    #[test]
    fn order_is_fixed() {
        let f3 = FieldSpec::new(3).unwrap();
        let pts = projective_points(&f3, 1);
        assert_eq!(pts, vec![vec![0, 1], vec![1, 1], vec![2, 1], vec![1, 0]]);
        assert_eq!(projective_points(&f3, 0), vec![vec![1]]);
        let aff = affine_points(&f3, 2);
        assert_eq!(aff.len(), 9);
        assert_eq!(aff[1], vec![0, 1]);
        assert_eq!(affine_points(&f3, 0), vec![Vec::<Elem>::new()]);
    }
}

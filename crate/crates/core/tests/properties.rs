use proptest::prelude::*;

use footprint_core::echelon::{search, Goal};
use footprint_core::formulas::{
    binomial, bounded_tuple_count, compute_h, compute_h_via_macaulay, compute_k, conjectured_er, conjectured_er_macaulay,
    macaulay_tuple,
};
use footprint_core::hypercube::{hypercube, hypercube_lex_set, DegreeFilter, HypercubeSet, LexMode};
use footprint_core::{reduced_monomials, stable_degree, Elem, FieldSpec, Monomial, MonomialSet};

const QS: [u32; 9] = [2, 3, 4, 5, 7, 8, 9, 16, 27];

fn field_and_elems() -> impl Strategy<Value = (FieldSpec, Elem, Elem, Elem)> {
    prop::sample::select(QS.to_vec()).prop_flat_map(|q| {
        let e = 0..q as Elem;
        (Just(FieldSpec::new(q).unwrap()), e.clone(), e.clone(), e)
    })
}

/// `(q, m, d, mask)` small enough that `Ṁ_d` fits in a 64-bit mask.
fn subset_instance() -> impl Strategy<Value = (u32, usize, u32, Vec<Monomial>)> {
    (prop::sample::select(vec![2u32, 3, 4]), 1usize..=2, 1u32..=3, any::<u64>()).prop_map(
        |(q, m, d, mask)| {
            let all = reduced_monomials(m, q, d, None).unwrap();
            let set = all
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> (k % 64) & 1 == 1)
                .map(|(_, mu)| mu.clone())
                .collect();
            (q, m, d, set)
        },
    )
}

proptest! {
    #[test]
    fn field_axioms((f, a, b, c) in field_and_elems()) {
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        match f.inv(a) {
            Some(i) => prop_assert_eq!(f.mul(a, i), 1),
            None => prop_assert_eq!(a, 0),
        }
        prop_assert_eq!(f.pow(a, f.q() as u64), a);
    }

    #[test]
    fn reduction_is_idempotent(q in prop::sample::select(QS.to_vec()), exps in prop::collection::vec(0u32..40, 1..5)) {
        let mu = Monomial::new(exps);
        let red = mu.reduce(q);
        prop_assert!(red.is_reduced(q));
        prop_assert_eq!(red.degree(), mu.degree());
        prop_assert_eq!(red.reduce(q), red.clone());
        prop_assert_eq!(red.last_var(), mu.last_var());
    }

    #[test]
    fn footprint_splits_by_level((q, m, d, set) in subset_instance()) {
        let set = MonomialSet::from_vec(m + 1, set).unwrap();
        let e = stable_degree(d, m, q);
        let total = set.footprint_size(e, q);
        let by_level: usize = (0..=m).map(|l| set.footprint(e, q, Some(l)).unwrap().len()).sum();
        prop_assert_eq!(total, by_level);
        let ambient = reduced_monomials(m, q, e, None).unwrap().len();
        prop_assert_eq!(total + set.shadow(e, q, None).unwrap().len(), ambient);
    }

    #[test]
    fn expander_is_injective_and_grows((q, m, d, set) in subset_instance()) {
        let set = MonomialSet::from_vec(m + 1, set).unwrap();
        let image = set.expand(q);
        if d < q {
            prop_assert_eq!(image.len(), set.len());
        }
        prop_assert!(image.iter().all(|mu| mu.degree() == d && mu.is_reduced(q)));
        let e = stable_degree(d, m, q);
        prop_assert!(set.footprint_size(e, q) <= image.footprint_size(e, q));
    }

    #[test]
    fn footprint_is_stable_past_threshold((q, m, d, set) in subset_instance(), extra in 1u32..4) {
        let set = MonomialSet::from_vec(m + 1, set).unwrap();
        let e = stable_degree(d, m, q);
        prop_assert_eq!(set.footprint_size(e, q), set.footprint_size(e + extra, q));
    }

    #[test]
    fn lex_segment_beats_random_subset(q in 2u32..=4, d in 0u32..=3, mask in any::<u32>()) {
        let ball = hypercube(2, q, Some(DegreeFilter::Le(d)));
        let t: Vec<Monomial> = ball.iter().enumerate().filter(|(k, _)| mask >> (k % 32) & 1 == 1).map(|(_, mu)| mu.clone()).collect();
        let t = HypercubeSet::new(2, q, t).unwrap();
        let seg = hypercube_lex_set(2, q, d, t.len(), LexMode::BoundedDegree).unwrap();
        prop_assert!(t.footprint(None).len() <= seg.footprint(None).len());
    }

    #[test]
    fn macaulay_forms_agree(q in prop::sample::select(vec![3u32, 4, 5, 7, 8, 9, 11]), m in 0usize..=5, d_seed in 0u32..100, r_seed in any::<u64>()) {
        let d = 1 + d_seed % (q - 1);
        let total = binomial(m as i64 + d as i64, d as i64).unwrap();
        let r = r_seed as u128 % (total + 1);
        prop_assert_eq!(compute_h(r, d, m, q).unwrap(), compute_h_via_macaulay(r, d, m, q).unwrap());
        let tuple = macaulay_tuple(total - r, d).unwrap();
        prop_assert_eq!(tuple.value().unwrap(), total - r);
        if r >= 1 {
            let conj = conjectured_er(r, d, m, q).unwrap().value;
            prop_assert_eq!(conj, conjectured_er_macaulay(r, d, m, q).unwrap());
            prop_assert!(conj <= compute_k(r, d, m, q).unwrap());
        }
    }

    #[test]
    fn h_is_nonincreasing(q in 2u32..=7, m in 1usize..=4, d in 1u32..=6) {
        let d = d.min(m as u32 * (q - 1));
        let total = bounded_tuple_count(m, d, q).unwrap().min(200);
        let values: Vec<u128> = (0..=total).map(|r| compute_h(r, d, m, q).unwrap()).collect();
        prop_assert!(values.windows(2).all(|w| w[0] >= w[1]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn search_ignores_worker_count(n in 2usize..=4, r_seed in 0usize..4, weights in prop::collection::vec(0u128..5, 4)) {
        let r = 1 + r_seed % n;
        let score = |_: &[usize], rows: &[Vec<Elem>]| -> u128 {
            rows.iter().flatten().zip(weights.iter().cycle()).map(|(&x, &w)| x as u128 * w).sum()
        };
        let one = search(3, n, r, 1, Goal::Max, score).unwrap();
        let many = search(3, n, r, 4, Goal::Max, score).unwrap();
        prop_assert_eq!(one, many);
    }
}

#[test]
fn expander_collides_once_degree_reaches_q() {
    let set = MonomialSet::parse_all(2, ["x0*x1", "x1^2"]).unwrap();
    let image = set.expand(2);
    assert_eq!(image.to_strings(), vec!["x0*x1"]);
}

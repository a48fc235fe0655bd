use braid_cones::foata::{fcyc, intercalation, is_prime, prime_decompose};
use braid_cones::genfun::{chains_gf_rhs, elementary_symmetric, falling_bracket, TruncatedSeries};
use braid_cones::whitney::{poincare_via_lrmax, poincare_via_transverse};
use braid_cones::{IntPolynomial, MultisetPermutation, Poset};
use proptest::prelude::*;

fn multiset_perm(letters: usize, max_len: usize) -> impl Strategy<Value = MultisetPermutation> {
    prop::collection::vec(1..=letters, 0..=max_len).prop_map(|bottom| {
        let mut top = bottom.clone();
        top.sort();
        MultisetPermutation::from_rows(&top, &bottom).unwrap()
    })
}

fn poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (0..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * n)))
        .prop_map(|(n, edges)| {
            let rel: Vec<(usize, usize)> = (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .filter(|&(i, j)| edges[(i - 1) * n + j - 1])
                .collect();
            Poset::from_relations(n, &rel).unwrap()
        })
}

proptest! {
    #[test]
    fn intercalation_is_associative(
        a in multiset_perm(3, 4),
        b in multiset_perm(3, 4),
        c in multiset_perm(3, 4),
    ) {
        prop_assert_eq!(
            intercalation(&intercalation(&a, &b), &c),
            intercalation(&a, &intercalation(&b, &c))
        );
    }

    #[test]
    fn disjoint_supports_commute(a in multiset_perm(2, 4), b in multiset_perm(2, 4)) {
        let shifted = MultisetPermutation::new(
            b.columns().iter().map(|&(x, y)| (x + 2, y + 2)).collect(),
        )
        .unwrap();
        prop_assert!(a.is_disjoint_from(&shifted));
        prop_assert_eq!(intercalation(&a, &shifted), intercalation(&shifted, &a));
    }

    #[test]
    fn prime_factors_rebuild(sigma in multiset_perm(4, 8)) {
        let f = prime_decompose(&sigma);
        prop_assert!(f.factors.iter().all(is_prime));
        prop_assert_eq!(f.len(), fcyc(&sigma));
        prop_assert_eq!(f.product(), sigma);
    }

    #[test]
    fn ordinal_sum_poincare_multiplies(p in poset(4), q in poset(4)) {
        prop_assert_eq!(
            poincare_via_transverse(&p.ordinal_sum(&q)),
            poincare_via_transverse(&p) * poincare_via_transverse(&q)
        );
    }

    #[test]
    fn disjoint_union_with_point_agrees(p in poset(6)) {
        let bigger = p.disjoint_union(&Poset::antichain(1));
        prop_assert_eq!(poincare_via_transverse(&bigger), poincare_via_lrmax(&bigger));
        prop_assert_eq!(poincare_via_transverse(&p.opposite()), poincare_via_transverse(&p));
    }
}

#[test]
fn antichain_recursion() {
    let mut prev = poincare_via_transverse(&Poset::antichain(1));
    for ell in 1..=5 {
        let next = poincare_via_transverse(&Poset::antichain(ell + 1));
        assert_eq!(next, &prev * &IntPolynomial::from_i64s(&[1, ell as i64]));
        prev = next;
    }
}

#[test]
fn series_inverse_identity() {
    for ell in 1..=3 {
        let d = 6;
        let s = (1..=ell).fold(TruncatedSeries::zero(ell, d), |acc, j| {
            acc.add(&elementary_symmetric(ell, j, d).scale(&falling_bracket(j)))
        });
        let one = TruncatedSeries::one(ell, d);
        let product = one.sub(&s).mul(&chains_gf_rhs(ell, d));
        assert_eq!(product.to_string(), one.to_string());
    }
}

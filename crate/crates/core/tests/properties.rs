use proptest::prelude::*;

use qperfect::codes::Code;
use qperfect::concat::{concatenate, rank_of_alpha, standard_partitions, ConcatInput, Permutation};
use qperfect::gf::{self, Elem};
use qperfect::linalg::{in_span, MonomialMap};

const FIELDS: [usize; 5] = [2, 3, 4, 5, 7];

fn small_code() -> impl Strategy<Value = Code> {
    (prop::sample::select(FIELDS.to_vec()), 1usize..6).prop_flat_map(|(q, n)| {
        let word = prop::collection::vec(0..q as Elem, n);
        prop::collection::btree_set(word, 1..12).prop_map(move |ws| Code::new(gf::field(q).unwrap(), n, ws).unwrap())
    })
}

fn monomial(n: usize, q: usize) -> impl Strategy<Value = MonomialMap> {
    let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
    let scales = prop::collection::vec(1..q as Elem, n);
    (perm, scales).prop_map(move |(p, s)| MonomialMap::new(p, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_dual_is_the_span(code in small_code()) {
        let f = code.field();
        let dd = code.orthogonal().dual();
        prop_assert_eq!(dd.dimension(), code.rank());
        for w in code.words() {
            prop_assert!(dd.contains(w));
        }
        for g in dd.generator().rows() {
            let rows: Vec<Vec<Elem>> = code.words().map(<[Elem]>::to_vec).collect();
            prop_assert!(in_span(f, g, &rows));
        }
    }

    #[test]
    fn span_and_dual_fill_the_space(code in small_code()) {
        let q = code.field().q() as u128;
        let span = q.pow(code.rank() as u32);
        let dual = code.orthogonal().cardinality().unwrap();
        prop_assert_eq!(span * dual, q.pow(code.n() as u32));
    }

    #[test]
    fn rank_is_monomial_invariant((code, map) in small_code().prop_flat_map(|c| {
        let (n, q) = (c.n(), c.field().q());
        (Just(c), monomial(n, q))
    })) {
        let image = code.monomial_image(&map).unwrap();
        prop_assert_eq!(image.rank(), code.rank());
        prop_assert_eq!(image.len(), code.len());
        if code.len() >= 2 {
            prop_assert_eq!(image.min_distance().unwrap(), code.min_distance().unwrap());
        }
    }

    #[test]
    fn translation_keeps_distances(code in small_code(), seed in any::<u64>()) {
        let q = code.field().q() as u64;
        let v: Vec<Elem> = (0..code.n()).map(|i| ((seed >> (i * 8)) % q) as Elem).collect();
        let t = code.translate(&v).unwrap();
        prop_assert_eq!(t.len(), code.len());
        if code.len() >= 2 {
            prop_assert_eq!(t.min_distance().unwrap(), code.min_distance().unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rank_shortcut_matches_brute_force(rest in Just((1..9).collect::<Vec<usize>>()).prop_shuffle()) {
        let (p1, p2) = standard_partitions(3, 2).unwrap();
        let z1 = p1.part_index(&[0; 4]).unwrap();
        let z2 = p2.part_index(&[0; 9]).unwrap();
        prop_assume!(z1 == 0 && z2 == 0);
        let mut images = vec![0];
        images.extend(rest);
        let input = ConcatInput { p1, p2, alpha: Permutation::new(images).unwrap() };
        let code = concatenate(&input).unwrap();
        prop_assert_eq!(rank_of_alpha(&input).unwrap(), code.rank());
        prop_assert!(code.rank() <= 12);
    }
}

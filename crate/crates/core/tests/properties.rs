use proptest::prelude::*;
use proptest::sample::select;

use ratpark::affine::{enumerate_sommers, window_to_tuple, AffinePermutation};
use ratpark::filter::{enumerate_balanced, Filter};
use ratpark::serial::Json;
use ratpark::tuple::{map_a_inverse, zeta, zeta_inverse};
use ratpark::word::parking_words;
use ratpark::{FilterTuple, Point, SolverConfig, Word};

const COPRIME: [(usize, usize); 6] = [(3, 4), (4, 3), (3, 5), (5, 3), (4, 5), (5, 6)];

fn point(m: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(-60i64..60, m).prop_map(Point::from_unsorted)
}

fn any_word(m: usize, n: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..m, n).prop_map(move |letters| Word::new(m, letters).unwrap())
}

fn parking_word() -> impl Strategy<Value = Word> {
    select(&COPRIME[..]).prop_flat_map(|(m, n)| select(parking_words(m, n)))
}

fn balanced_filter() -> impl Strategy<Value = Filter> {
    select(&COPRIME[..]).prop_flat_map(|(m, n)| select(enumerate_balanced(m, n).unwrap()))
}

fn sommers_element() -> impl Strategy<Value = (usize, AffinePermutation)> {
    select(&COPRIME[..4]).prop_flat_map(|(m, n)| (Just(m), select(enumerate_sommers(m, n).unwrap())))
}

fn point_pair_and_word() -> impl Strategy<Value = (Point, Point, Word)> {
    (2usize..7, 1usize..8).prop_flat_map(|(m, n)| (point(m), point(m), any_word(m, n)))
}

proptest! {
    #[test]
    fn letters_keep_points_sorted_with_fixed_sum((x, _, w) in point_pair_and_word()) {
        let y = x.apply_word(&w).unwrap();
        prop_assert_eq!(y.sum(), x.sum());
        prop_assert!(y.coords().windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn words_never_stretch_distances((x, y, w) in point_pair_and_word()) {
        let before = x.distance(&y).unwrap();
        let after = x.apply_word(&w).unwrap().distance(&y.apply_word(&w).unwrap()).unwrap();
        prop_assert!(after <= before);
    }

    #[test]
    fn parking_is_invariant_under_rearrangement(
        (w, shuffled) in parking_word().prop_flat_map(|w| (Just(w.clone()), Just(w.letters().to_vec()).prop_shuffle()))
    ) {
        prop_assert!(Word::new(w.m(), shuffled).unwrap().is_parking());
        prop_assert!(w.sorted().is_dyck());
    }

    #[test]
    fn zeta_round_trips(w in parking_word()) {
        let z = zeta(&w).unwrap();
        prop_assert!(z.is_parking());
        prop_assert_eq!(zeta_inverse(&z, SolverConfig::default()).unwrap(), w);
    }

    #[test]
    fn removing_a_level_keeps_a_filter(b in balanced_filter(), pick in any::<prop::sample::Index>()) {
        let removable = b.removable_levels();
        prop_assume!(!removable.is_empty());
        let v = *pick.get(&removable);
        let after = b.remove(v).unwrap();
        prop_assert!(Filter::new(b.m(), b.n(), &after.row_minima()).is_ok());
        prop_assert!(!after.contains_level(v));
        prop_assert!(after.contains_level(v + b.m() as i64) && after.contains_level(v + b.n() as i64));
    }

    #[test]
    fn area_side_tuples_validate(w in parking_word()) {
        let t = map_a_inverse(&w).unwrap();
        let rebuilt = FilterTuple::new(t.initial().clone(), t.removals().to_vec()).unwrap();
        prop_assert_eq!(rebuilt.map_a(), w);
        let stages = t.stages();
        prop_assert_eq!(stages.last().unwrap(), &stages[0].translate(t.n() as i64));
    }

    #[test]
    fn sommers_windows_match_their_tuples((m, w) in sommers_element()) {
        let t = window_to_tuple(&w, m).unwrap();
        prop_assert_eq!(t.removals(), w.window());
        prop_assert_eq!(w.pak_stanley(m).unwrap(), t.map_b());
    }

    #[test]
    fn value_position_inverts_eval((_, w) in sommers_element(), v in -200i64..200) {
        prop_assert_eq!(w.eval(w.value_position(v)), v);
    }

    #[test]
    fn json_round_trips(w in parking_word(), b in balanced_filter(), x in point(5), (_, a) in sommers_element()) {
        prop_assert_eq!(Word::from_json(&w.to_json()).unwrap(), w.clone());
        prop_assert_eq!(Filter::from_json(&b.to_json()).unwrap(), b);
        prop_assert_eq!(Point::from_json(&x.to_json()).unwrap(), x);
        prop_assert_eq!(AffinePermutation::from_json(&a.to_json()).unwrap(), a);
        let t = map_a_inverse(&w).unwrap();
        prop_assert_eq!(FilterTuple::from_json_str(&t.to_json().to_string()).unwrap(), t);
    }
}

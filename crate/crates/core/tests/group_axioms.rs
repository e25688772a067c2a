use krstrata::{AffinePermutation, Coweight};
use proptest::prelude::*;

/// A random affine permutation of period `d`: a permutation plus shifts.
fn element(d: usize) -> impl Strategy<Value = AffinePermutation> {
    (
        Just((1..=d as i64).collect::<Vec<_>>()).prop_shuffle(),
        proptest::collection::vec(-3i64..=3, d),
    )
        .prop_map(move |(perm, shifts)| {
            let window = perm.iter().zip(&shifts).map(|(p, s)| p + d as i64 * s).collect();
            AffinePermutation::new(window).unwrap()
        })
}

fn triple() -> impl Strategy<Value = (AffinePermutation, AffinePermutation, AffinePermutation)> {
    (1usize..=8).prop_flat_map(|d| (element(d), element(d), element(d)))
}

proptest! {
    #[test]
    fn associativity_and_inverses((a, b, c) in triple()) {
        let d = a.period();
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a * &a.inverse()).is_identity());
        prop_assert!((&a.inverse() * &a).is_identity());
        prop_assert_eq!(&a * &AffinePermutation::identity(d), a.clone());
        prop_assert_eq!((&a * &b).val_det(), a.val_det() + b.val_det());
    }

    #[test]
    fn factorization_round_trips((a, _b, _c) in triple()) {
        let x = a.finite_part();
        let lambda = a.translation_part();
        prop_assert_eq!(AffinePermutation::from_parts(&x, &lambda).unwrap(), a.clone());
        prop_assert_eq!(a.is_translation(), x.is_identity());
        // action on coweights is an affine map compatible with composition
        let v = Coweight((0..a.period() as i64).collect());
        let ab = &a * &_b;
        prop_assert_eq!(ab.act(&v).unwrap(), a.act(&_b.act(&v).unwrap()).unwrap());
    }

    #[test]
    fn serde_round_trip((a, _b, _c) in triple()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<AffinePermutation>(&s).unwrap(), a);
    }
}

#[test]
fn invalid_windows_fail_to_deserialize() {
    assert!(serde_json::from_str::<AffinePermutation>("[1,3]").is_err());
    assert!(serde_json::from_str::<AffinePermutation>("[]").is_err());
}

use krstrata::weyl::oracle::{ball_sorted, bruhat_leq_subword};
use krstrata::{Group, WeylGroup};

#[test]
fn lifting_property_matches_subwords() {
    for group in [Group::Gl(3), Group::Gsp(1), Group::Gsp(2)] {
        let weyl = WeylGroup::new(group);
        let ball = ball_sorted(group, 5);
        for (y, _) in &ball {
            for (x, _) in &ball {
                assert_eq!(
                    weyl.bruhat_leq(x, y).unwrap(),
                    bruhat_leq_subword(group, x, y),
                    "{group}: {x} <= {y}"
                );
            }
        }
    }
}

#[test]
fn partial_order_axioms() {
    for group in [Group::Gl(3), Group::Gsp(2)] {
        let weyl = WeylGroup::new(group);
        let elems: Vec<_> = ball_sorted(group, 4).into_iter().map(|(w, _)| w).collect();
        let leq: Vec<Vec<bool>> = elems
            .iter()
            .map(|x| elems.iter().map(|y| weyl.bruhat_leq(x, y).unwrap()).collect())
            .collect();
        let m = elems.len();
        for i in 0..m {
            assert!(leq[i][i]);
            for j in 0..m {
                if i != j && leq[i][j] {
                    assert!(!leq[j][i], "antisymmetry {} {}", elems[i], elems[j]);
                    assert!(weyl.length(&elems[i]).unwrap() < weyl.length(&elems[j]).unwrap());
                }
                for k in 0..m {
                    if leq[i][j] && leq[j][k] {
                        assert!(leq[i][k], "transitivity");
                    }
                }
            }
        }
    }
}

#[test]
fn different_components_are_incomparable() {
    let group = Group::Gsp(1);
    let weyl = WeylGroup::new(group);
    let omega = group.omega_generator().unwrap();
    for (w, _) in ball_sorted(group, 3) {
        assert!(!weyl.bruhat_leq(&w, &(&w * &omega)).unwrap());
    }
}

use krstrata::rpoly::{hecke_verify, RPolynomials};
use krstrata::weyl::oracle::ball_sorted;
use krstrata::{Group, IntPolynomial};

#[test]
fn degree_equals_length_difference_and_monic() {
    for group in [Group::Gl(3), Group::Gsp(2)] {
        let rp = RPolynomials::new(group);
        let ball = ball_sorted(group, 5);
        let mut nonzero = 0;
        for (y, ly) in &ball {
            for (x, lx) in &ball {
                let r = rp.r(x, y).unwrap();
                if r.is_zero() {
                    assert!(!rp.weyl().bruhat_leq(x, y).unwrap());
                    continue;
                }
                nonzero += 1;
                assert_eq!(r.degree(), Some(ly - lx), "{x} {y}");
                assert!(r.is_monic());
                // R(1) = 0 unless x = y
                assert_eq!(r.eval_i64(1) == 1.into(), x == y);
            }
        }
        assert!(nonzero > ball.len());
    }
}

#[test]
fn invariant_under_omega() {
    for group in [Group::Gl(3), Group::Gsp(2)] {
        let rp = RPolynomials::new(group);
        let tau = group.omega_generator().unwrap();
        let ball = ball_sorted(group, 4);
        for (y, _) in &ball {
            for (x, _) in &ball {
                assert_eq!(rp.r(&(x * &tau), &(y * &tau)).unwrap(), rp.r(x, y).unwrap());
            }
        }
    }
}

#[test]
fn hecke_algebra_oracle() {
    assert!(hecke_verify(Group::Gl(2), 3).unwrap());
    assert!(hecke_verify(Group::Gl(3), 3).unwrap());
    assert!(hecke_verify(Group::Gsp(1), 3).unwrap());
    assert!(hecke_verify(Group::Gsp(2), 3).unwrap());
}

#[test]
fn simple_reflection_values() {
    let rp = RPolynomials::new(Group::Gsp(2));
    let gens = Group::Gsp(2).simple_reflections();
    let e = krstrata::AffinePermutation::identity(4);
    let st = &gens[0] * &gens[1];
    // R_{e, st} = (q - 1)^2 for a length-2 element
    assert_eq!(rp.r(&e, &st).unwrap(), IntPolynomial::from_i64s(&[1, -2, 1]));
}

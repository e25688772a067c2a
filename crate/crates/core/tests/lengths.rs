use krstrata::weyl::oracle::{bfs_ball, iwahori_matsumoto_length};
use krstrata::{AffinePermutation, Group, GspElement};

const GROUPS: [Group; 5] = [Group::Gl(2), Group::Gl(3), Group::Gl(4), Group::Gsp(1), Group::Gsp(2)];

#[test]
fn length_agrees_with_breadth_first_search() {
    for group in GROUPS {
        let ball = bfs_ball(group, 6);
        for (w, &l) in &ball {
            assert_eq!(group.length(w).unwrap(), l, "{group} {w}");
            assert_eq!(iwahori_matsumoto_length(group, w), l, "{group} {w}");
            assert_eq!(group.reduced_word(w).unwrap().0.len(), l, "{group} {w}");
        }
    }
}

#[test]
fn omega_has_length_zero_and_normalizes() {
    for group in GROUPS {
        let omega = group.omega_generator().unwrap();
        assert_eq!(group.length(&omega).unwrap(), 0);
        for (w, &l) in &bfs_ball(group, 4) {
            assert_eq!(group.length(&(w * &omega)).unwrap(), l);
            assert_eq!(group.length(&(&omega * w)).unwrap(), l);
        }
    }
}

/// Bott's formula: the Poincare series of `W_a` is
/// `prod_i [d_i]_q / (1 - q^{d_i - 1})` over the degrees `d_i` of `W_0`.
fn bott_series(degrees: &[usize], terms: usize) -> Vec<u64> {
    let mut series = vec![0u64; terms];
    series[0] = 1;
    for &deg in degrees {
        // multiply by 1 + q + ... + q^{deg-1}
        let mut next = vec![0u64; terms];
        for (k, &c) in series.iter().enumerate() {
            for j in 0..deg {
                if k + j < terms {
                    next[k + j] += c;
                }
            }
        }
        // divide by 1 - q^{deg-1}
        for k in (deg - 1)..terms {
            next[k] += next[k - (deg - 1)];
        }
        series = next;
    }
    series
}

#[test]
fn ball_sizes_match_poincare_series() {
    let cases: [(Group, &[usize]); 4] = [
        (Group::Gl(2), &[2]),
        (Group::Gl(3), &[2, 3]),
        (Group::Gsp(1), &[2]),
        (Group::Gsp(2), &[2, 4]),
    ];
    for (group, degrees) in cases {
        let ball = bfs_ball(group, 6);
        let by_len: Vec<u64> = (0..=6)
            .map(|l| ball.values().filter(|&&v| v == l).count() as u64)
            .collect();
        assert_eq!(by_len, bott_series(degrees, 7), "{group}");
    }
}

#[test]
fn gsp_element_length_matches_group() {
    for (w, &l) in &bfs_ball(Group::Gsp(2), 5) {
        let g = GspElement::new(w.clone()).unwrap();
        assert_eq!(g.length(), l);
        assert_eq!(g.similitude(), 0);
    }
    assert!(GspElement::new(AffinePermutation::new(vec![2, 1, 3, 4]).unwrap()).is_err());
}

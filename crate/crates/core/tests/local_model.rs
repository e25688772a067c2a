use std::collections::BTreeMap;

use krstrata::alcove::enumerate_perm_gsp;
use krstrata::local_model::chain::{
    cell_of_point, enumerate_points, orbit_rep, point_p_rank, stratified_count,
};
use krstrata::local_model::{iwahori_act, random_iwahori};
use krstrata::prank::{p_rank, strata_report};
use krstrata::{Group, WeylGroup};

fn expected_histogram(n: usize, q: i64) -> BTreeMap<usize, u64> {
    let weyl = WeylGroup::new(Group::Gsp(n));
    let report = strata_report(n, &weyl).unwrap();
    report
        .count_polynomials
        .iter()
        .map(|(&r, p)| (r, u64::try_from(p.eval_i64(q)).unwrap()))
        .collect()
}

#[test]
fn point_counts_match_cells() {
    for (n, q) in [(1, 2), (1, 3), (1, 5), (1, 7), (2, 2), (2, 3)] {
        assert_eq!(stratified_count(n, q as u64).unwrap(), expected_histogram(n, q), "n={n} q={q}");
    }
}

#[test]
fn every_point_lands_in_kr() {
    for (n, q) in [(1, 3), (2, 2), (2, 3)] {
        let kr = enumerate_perm_gsp(n).unwrap();
        let mut cells = BTreeMap::new();
        for pt in enumerate_points(n, q).unwrap() {
            assert!(pt.duality_pairing_holds());
            let w = cell_of_point(&pt).unwrap();
            assert!(kr.contains(w.perm()));
            assert_eq!(point_p_rank(&pt), p_rank(&w).unwrap());
            *cells.entry(w.into_perm()).or_insert(0u64) += 1;
        }
        // each cell is an affine space of dimension l(w)
        let group = Group::Gsp(n);
        for (w, count) in cells {
            assert_eq!(count, q.pow(group.length(&w).unwrap() as u32));
        }
    }
}

#[test]
fn orbit_representatives_have_the_predicted_rank() {
    for n in 1..=2 {
        for w in enumerate_perm_gsp(n).unwrap().gsp_elements() {
            for q in [2, 3] {
                let pt = orbit_rep(&w, q).unwrap();
                assert_eq!(point_p_rank(&pt), p_rank(&w).unwrap(), "{w}");
            }
        }
    }
}

#[test]
fn random_action_is_reproducible() {
    let a = random_iwahori(2, 3, 42).unwrap();
    let b = random_iwahori(2, 3, 42).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, random_iwahori(2, 3, 43).unwrap());
    let w = enumerate_perm_gsp(2).unwrap().gsp_elements()[5].clone();
    let pt = orbit_rep(&w, 3).unwrap();
    assert_eq!(iwahori_act(&a, &pt).unwrap(), iwahori_act(&b, &pt).unwrap());
}

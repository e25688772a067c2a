//! Named verification checks for `krstrata verify`.

use std::collections::BTreeSet;
use std::io::Write;

use anyhow::Context;

use krstrata::alcove::{
    enumerate_adm_gsp, enumerate_perm_gsp, is_permissible_gl, is_permissible_lattice,
    orbit_translations, MAX_ADM_N,
};
use krstrata::local_model::chain::{
    cell_of_point, max_points_q, orbit_rep, point_p_rank, stratified_count,
};
use krstrata::local_model::{iwahori_act, random_iwahori, Fq};
use krstrata::prank::{density_check, maximal_elements, p_rank, strata_report, MAX_REPORT_N};
use krstrata::rpoly::{hecke_verify, is_prime_power, ss_trace, RPolynomials};
use krstrata::weyl::oracle::bfs_ball;
use krstrata::{AffinePermutation, Error, Group, WeylGroup};

use crate::{usage, Common, Failure, EXIT_FAIL, EXIT_OK};

pub const CHECKS: [&str; 10] = [
    "vertex-lattice",
    "adm-perm",
    "maximal",
    "p-rank",
    "density",
    "points",
    "orbit-reps",
    "iwahori",
    "hecke",
    "trace",
];

pub const IWAHORI_SAMPLES: u64 = 100;

/// Largest `n` each check supports.
pub fn max_n(check: &str) -> usize {
    match check {
        "vertex-lattice" | "hecke" | "p-rank" => MAX_REPORT_N,
        "adm-perm" | "maximal" | "density" | "trace" => MAX_ADM_N,
        _ => 2,
    }
}

pub struct Outcome {
    pub name: &'static str,
    pub pass: bool,
    pub count: usize,
}

pub fn run_check(name: &'static str, n: usize, q: u64, seed: u64) -> krstrata::Result<Outcome> {
    if n > max_n(name) {
        return Err(Error::SizeLimit {
            what: format!("check {name} for n = {n}"),
            limit: format!("n <= {}", max_n(name)),
        });
    }
    let group = Group::Gsp(n);
    let (pass, count) = match name {
        "vertex-lattice" => vertex_lattice()?,
        "adm-perm" => {
            let weyl = WeylGroup::new(group);
            let perm = enumerate_perm_gsp(n)?;
            (enumerate_adm_gsp(n, &weyl)? == perm, perm.len())
        }
        "maximal" => {
            let weyl = WeylGroup::new(group);
            let rep = strata_report(n, &weyl)?;
            let max = maximal_elements(&rep, &weyl)?;
            let translations: BTreeSet<_> = orbit_translations(n).into_iter().collect();
            let lengths_ok = max
                .iter()
                .map(|t| group.length(t))
                .collect::<krstrata::Result<Vec<_>>>()?
                .iter()
                .all(|&l| l == n * (n + 1) / 2);
            (max == translations && lengths_ok, max.len())
        }
        "p-rank" => {
            let kr = enumerate_perm_gsp(n)?;
            let mut ok = true;
            for g in kr.gsp_elements() {
                // p_rank itself checks the fixed-point formula
                let r = p_rank(&g)?;
                ok &= (r == n) == g.perm().is_translation();
            }
            (ok, kr.len())
        }
        "density" => (density_check(n, &WeylGroup::new(group))?, enumerate_perm_gsp(n)?.len()),
        "points" => {
            point_field(n, q)?;
            let counts = stratified_count(n, q)?;
            let rep = strata_report(n, &WeylGroup::new(group))?;
            let summary = crate::report::PointSummary::new(n, q, counts, &rep);
            (summary.matches_polynomial, summary.total as usize)
        }
        "orbit-reps" => {
            point_field(n, q)?;
            let kr = enumerate_perm_gsp(n)?;
            let mut ok = true;
            for w in kr.gsp_elements() {
                let pt = orbit_rep(&w, q)?;
                ok &= pt.validate().is_ok()
                    && point_p_rank(&pt) == p_rank(&w)?
                    && cell_of_point(&pt)? == w;
            }
            (ok, kr.len())
        }
        "iwahori" => {
            point_field(n, q)?;
            let kr = enumerate_perm_gsp(n)?;
            let mut ok = true;
            let mut count = 0;
            for (index, w) in kr.gsp_elements().into_iter().enumerate() {
                let pt = orbit_rep(&w, q)?;
                let rank = point_p_rank(&pt);
                for k in 0..IWAHORI_SAMPLES {
                    let s = seed
                        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                        .wrapping_add(index as u64 * IWAHORI_SAMPLES + k);
                    let moved = iwahori_act(&random_iwahori(n, q, s)?, &pt)?;
                    ok &= point_p_rank(&moved) == rank && cell_of_point(&moved)? == w;
                    count += 1;
                }
            }
            (ok, count)
        }
        "hecke" => {
            let g = Group::Gsp(n.min(2));
            (hecke_verify(g, 3)?, bfs_ball(g, 3).len())
        }
        "trace" => {
            if !is_prime_power(q) {
                return Err(Error::UnsupportedField(q));
            }
            let rp = RPolynomials::new(group);
            let mut ok = true;
            let ts = orbit_translations(n);
            for t in &ts {
                let g = krstrata::GspElement::new(t.clone())?;
                ok &= ss_trace(&rp, &g, q, 1)?.value == 1.into();
            }
            (ok, ts.len())
        }
        _ => unreachable!("check names are validated"),
    };
    Ok(Outcome { name, pass, count })
}

fn point_field(n: usize, q: u64) -> krstrata::Result<()> {
    Fq::new(q)?;
    if q > max_points_q(n) {
        return Err(Error::SizeLimit {
            what: format!("points over F_{q} for n = {n}"),
            limit: format!("q <= {}", max_points_q(n)),
        });
    }
    Ok(())
}

/// Vertex and lattice permissibility agree on `GL(d)`, `d = 2..4`, over the
/// elements of length `<= 5` in every val-det component `0..=d`.
fn vertex_lattice() -> krstrata::Result<(bool, usize)> {
    let mut ok = true;
    let mut count = 0;
    for d in 2..=4 {
        let group = Group::Gl(d);
        let omega = group.omega_generator()?;
        let ball = bfs_ball(group, 5);
        let mut shift = AffinePermutation::identity(d);
        for r in 0..=d {
            for w in ball.keys() {
                let w = w * &shift;
                ok &= is_permissible_gl(&w, r) == is_permissible_lattice(&w, r)?;
                count += 1;
            }
            shift = &shift * &omega;
        }
    }
    Ok((ok, count))
}

pub fn cmd_verify(
    common: &Common,
    q: u64,
    seed: u64,
    checks: &[String],
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let n = usize::try_from(common.n).map_err(|_| usage("n out of range"))?;
    let selected: Vec<&'static str> = if checks.is_empty() {
        if n > MAX_REPORT_N {
            return Err(Error::SizeLimit {
                what: format!("verification for n = {n}"),
                limit: format!("n <= {MAX_REPORT_N}"),
            }
            .into());
        }
        CHECKS
            .iter()
            .copied()
            .filter(|c| n <= max_n(c) && (max_n(c) > 2 || q <= max_points_q(n)))
            .collect()
    } else {
        let mut out = Vec::new();
        for c in checks {
            match CHECKS.iter().find(|k| **k == c.as_str()) {
                Some(k) => out.push(*k),
                None => {
                    return Err(usage(format!(
                        "unknown check {c:?}; available: {}",
                        CHECKS.join(", ")
                    )))
                }
            }
        }
        out
    };
    let mut all = true;
    for name in selected {
        let o = run_check(name, n, q, seed)?;
        all &= o.pass;
        writeln!(
            stdout,
            "{} {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.name,
            o.count
        )
        .context("writing to stdout")?;
    }
    Ok(if all { EXIT_OK } else { EXIT_FAIL })
}

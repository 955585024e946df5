//! End-to-end acceptance checks. Each test prints one PASS/FAIL line.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xconn_core::closed_form::{ceiling_identity, Family, SmallCase};
use xconn_core::extra_conn::{
    check_g_extra_cut, enumerate_min_cuts, kappa_extra_fragment, kappa_extra_subset, Kappa,
};
use xconn_core::verifier::{
    cartesian_formula_values, check_cut_structure, sweep, OracleValue, SweepConfig, SweepReport,
    SweepRow, DEFAULT_ENUM_CEILING,
};
use xconn_core::{make_cycle, make_path, strong_product, Graph};

fn verdict(id: u32, what: &str, ok: bool, detail: &str) {
    println!(
        "{} criterion {id:>2}: {what} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} failed: {detail}");
}

/// Smallest `k` with `k * k >= x`.
fn isqrt_up(x: usize) -> usize {
    let mut k = 0;
    while k * k < x {
        k += 1;
    }
    k
}

fn expected(family: Family, m: usize, n: usize, g: usize) -> usize {
    match family {
        Family::PathPath => m.min(n).min(isqrt_up(4 * (g + 1)) + 1),
        Family::CyclePath => m.min(2 * n).min(isqrt_up(8 * (g + 1)) + 2),
        Family::CycleCycle => (2 * m).min(2 * n).min(isqrt_up(16 * (g + 1)) + 4),
    }
}

fn grid_configs() -> Vec<SweepConfig> {
    vec![
        SweepConfig::new(Family::PathPath, 3..=6, 3..=6),
        SweepConfig::new(Family::CyclePath, 4..=6, 3..=5),
        SweepConfig::new(Family::CycleCycle, 4..=5, 4..=5),
    ]
}

fn run_grids() -> Vec<(SweepReport, Duration)> {
    grid_configs()
        .iter()
        .map(|c| {
            let start = Instant::now();
            (sweep(c).expect("sweep runs"), start.elapsed())
        })
        .collect()
}

fn shared_grids() -> &'static [(SweepReport, Duration)] {
    static GRIDS: OnceLock<Vec<(SweepReport, Duration)>> = OnceLock::new();
    GRIDS.get_or_init(run_grids)
}

fn grids() -> impl Iterator<Item = &'static SweepReport> {
    shared_grids().iter().map(|(r, _)| r)
}

fn grid(family: Family) -> (&'static [SweepRow], Duration) {
    let index = match family {
        Family::PathPath => 0,
        Family::CyclePath => 1,
        Family::CycleCycle => 2,
    };
    let (report, elapsed) = &shared_grids()[index];
    (&report.rows, *elapsed)
}

fn grid_rows(family: Family) -> &'static [SweepRow] {
    grid(family).0
}

fn grid_matches(id: u32, family: Family, what: &str) {
    let (rows, elapsed) = grid(family);
    let mismatches: Vec<String> = rows
        .iter()
        .filter(|r| r.guard)
        .filter(|r| {
            r.oracle != OracleValue::Value(Kappa::Finite(expected(family, r.m, r.n, r.g)))
                || r.agree != Some(true)
        })
        .map(|r| format!("m={} n={} g={} oracle={}", r.m, r.n, r.g, r.oracle))
        .collect();
    let checked = rows.iter().filter(|r| r.guard).count();
    verdict(
        id,
        what,
        checked > 0 && mismatches.is_empty(),
        &format!(
            "{checked} in-guard cells, {} mismatches {:?}, sweep {elapsed:.1?}",
            mismatches.len(),
            mismatches,
        ),
    );
}

#[test]
fn criterion_01_path_path_grid() {
    grid_matches(
        1,
        Family::PathPath,
        "P_m x P_n grid matches min{m, n, ceil(2 sqrt(g+1)) + 1}",
    );
}

#[test]
fn criterion_02_cycle_path_grid() {
    grid_matches(
        2,
        Family::CyclePath,
        "C_m x P_n grid matches min{m, 2n, ceil(2 sqrt(2(g+1))) + 2}",
    );
}

#[test]
fn criterion_03_cycle_cycle_grid() {
    grid_matches(
        3,
        Family::CycleCycle,
        "C_m x C_n grid matches min{2m, 2n, ceil(4 sqrt(g+1)) + 4}",
    );
}

#[test]
fn criterion_04_small_factor_cases() {
    let mut checked = 0;
    let mut failures = Vec::new();
    for case in SmallCase::ALL {
        for n in 1..=8 {
            if case == SmallCase::C3Cn && n < 3 {
                continue;
            }
            let Some(bound) = case.guard_bound(n) else {
                continue;
            };
            let pg = case.build(n).unwrap();
            for g in 0..=bound {
                checked += 1;
                let got = kappa_extra_fragment(pg.graph(), g).unwrap().value;
                if got != Kappa::Finite(case.value()) {
                    failures.push(format!("{case:?} n={n} g={g}: {got}"));
                }
            }
        }
    }
    verdict(
        4,
        "small-factor products have constant kappa_g",
        checked > 0 && failures.is_empty(),
        &format!("{checked} cases, failures {failures:?}"),
    );
}

#[test]
fn criterion_05_witnesses_certify_upper_bounds() {
    let mut checked = 0;
    let mut failures = Vec::new();
    for family in [Family::PathPath, Family::CyclePath, Family::CycleCycle] {
        for r in grid_rows(family).iter().filter(|r| r.guard) {
            checked += 1;
            let sizes_exact = r
                .witnesses
                .iter()
                .all(|w| w.valid && w.size == Some(w.predicted_size));
            let active = r
                .witnesses
                .iter()
                .any(|w| w.valid && w.size == Some(expected(family, r.m, r.n, r.g)));
            if !sizes_exact || !active || r.witnesses_ok != Some(true) {
                failures.push(format!(
                    "{family} m={} n={} g={} {:?}",
                    r.m, r.n, r.g, r.witnesses
                ));
            }
        }
    }
    verdict(
        5,
        "every constructible witness is a valid cut of predicted size; active term attained",
        checked > 0 && failures.is_empty(),
        &format!("{checked} cells, failures {failures:?}"),
    );
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let extra = rng.gen_range(0..=n * (n - 1) / 4);
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn solvers_agree(g: &Graph, extra: usize) -> Result<(), String> {
    let subset = kappa_extra_subset(g, extra, None).map_err(|e| e.to_string())?;
    let fragment = kappa_extra_fragment(g, extra).map_err(|e| e.to_string())?;
    if subset.value != fragment.value {
        return Err(format!(
            "subset {} vs fragment {}",
            subset.value, fragment.value
        ));
    }
    for witness in [&subset.witness, &fragment.witness].into_iter().flatten() {
        let verdict = check_g_extra_cut(g, witness, extra).map_err(|e| e.to_string())?;
        if !verdict.is_g_extra || Kappa::Finite(witness.len()) != subset.value {
            return Err(format!("witness {witness} rejected"));
        }
    }
    if subset.witness.is_none() != (subset.value == Kappa::Infinite) {
        return Err("witness presence does not match value".into());
    }
    Ok(())
}

#[test]
fn criterion_06_solvers_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_6ec7);
    let mut failures = Vec::new();
    let mut random = 0;
    for _ in 0..200 {
        let n = rng.gen_range(6..=12);
        let extra = rng.gen_range(0..=2);
        let g = random_connected(&mut rng, n);
        random += 1;
        if let Err(e) = solvers_agree(&g, extra) {
            failures.push(format!("random n={n} extra={extra}: {e}"));
        }
    }

    let mut family = 0;
    let mut instances = Vec::new();
    for f in [Family::PathPath, Family::CyclePath, Family::CycleCycle] {
        for m in 3..=16 {
            for n in 3..=16 {
                if m * n <= 16 {
                    if let Ok(pg) = f.build(m, n) {
                        instances.push((format!("{f} {m}x{n}"), pg.graph().clone()));
                    }
                }
            }
        }
    }
    for case in SmallCase::ALL {
        for n in 1..=16 {
            if let Ok(pg) = case.build(n) {
                if pg.graph().vertex_count() <= 16 && pg.graph().vertex_count() >= 2 {
                    instances.push((format!("{case:?} n={n}"), pg.graph().clone()));
                }
            }
        }
    }
    for (name, g) in &instances {
        for extra in 0..=g.vertex_count() / 2 {
            family += 1;
            if let Err(e) = solvers_agree(g, extra) {
                failures.push(format!("{name} extra={extra}: {e}"));
            }
        }
    }
    verdict(
        6,
        "subset and fragment solvers agree",
        failures.is_empty(),
        &format!("{random} random graphs, {family} family instances, failures {failures:?}"),
    );
}

#[test]
fn criterion_07_ceiling_identities() {
    let start = Instant::now();
    let mut summary = Vec::new();
    let mut ok = true;
    for kind in [Family::PathPath, Family::CyclePath, Family::CycleCycle] {
        let failing: Vec<u64> = (0..=1_000_000u64)
            .filter(|&g| !ceiling_identity(kind, g))
            .collect();
        ok &= failing.is_empty();
        summary.push(format!(
            "{kind:?}: {} failures, first {:?}",
            failing.len(),
            failing.first()
        ));
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs_f64() < 1.0;
    verdict(
        7,
        "ceiling identities hold for g in [0, 10^6]",
        ok,
        &format!("{}; {elapsed:.1?}", summary.join("; ")),
    );
}

#[test]
fn criterion_08_min_vertex_cuts_are_structured() {
    let p3 = make_path(3).unwrap();
    let p4 = make_path(4).unwrap();
    let c4 = make_cycle(4).unwrap();
    let mut results = Vec::new();
    for (name, a, b) in [
        ("P3xP3", &p3, &p3),
        ("P3xP4", &p3, &p4),
        ("P4xP4", &p4, &p4),
        ("C4xP3", &c4, &p3),
        ("C4xC4", &c4, &c4),
    ] {
        let pg = strong_product(a, b).unwrap();
        let cuts = enumerate_min_cuts(pg.graph(), 0).unwrap().len();
        results.push((name, cuts, check_cut_structure(&pg).unwrap()));
    }
    verdict(
        8,
        "every minimum vertex cut is an I-set or an L-set",
        results.iter().all(|r| r.2 && r.1 > 0),
        &format!("{results:?}"),
    );
}

#[test]
fn criterion_09_layer_bounds() {
    let mut rows = 0;
    let mut failures = Vec::new();
    for family in [Family::PathPath, Family::CyclePath, Family::CycleCycle] {
        for r in grid_rows(family) {
            if r.m * r.n > DEFAULT_ENUM_CEILING {
                continue;
            }
            if let OracleValue::Value(Kappa::Finite(_)) = r.oracle {
                rows += 1;
                if r.layer_bounds != Some(true) {
                    failures.push(format!("{family} m={} n={} g={}", r.m, r.n, r.g));
                }
            }
        }
    }
    verdict(
        9,
        "layer bounds hold on every enumerated minimum cut",
        rows > 0 && failures.is_empty(),
        &format!("{rows} cells, failures {failures:?}"),
    );
}

#[test]
fn criterion_10_cartesian_formula() {
    let p2 = make_path(2).unwrap();
    let p3 = make_path(3).unwrap();
    let p4 = make_path(4).unwrap();
    let p5 = make_path(5).unwrap();
    let c4 = make_cycle(4).unwrap();
    let c5 = make_cycle(5).unwrap();
    let mut results = Vec::new();
    for (name, a, b) in [
        ("P3xP3", &p3, &p3),
        ("C4xC4", &c4, &c4),
        ("P2xP5", &p2, &p5),
        ("C5xP4", &c5, &p4),
    ] {
        let (oracle, formula) = cartesian_formula_values(a, b).unwrap();
        results.push((name, oracle, formula));
    }
    verdict(
        10,
        "Cartesian connectivity min-formula matches the oracle",
        results.iter().all(|r| r.1 == r.2),
        &format!("{results:?}"),
    );
}

#[test]
fn criterion_11_monotone_in_g() {
    let violations: Vec<_> = grids().flat_map(|r| r.monotonicity_violations()).collect();
    let pairs = grids()
        .flat_map(|r| r.rows.windows(2))
        .filter(|w| w[0].guard && w[1].guard && (w[0].m, w[0].n) == (w[1].m, w[1].n))
        .count();
    verdict(
        11,
        "kappa_g <= kappa_{g+1} on consecutive in-guard pairs",
        pairs > 0 && violations.is_empty(),
        &format!("{pairs} pairs, violations {violations:?}"),
    );
}

#[test]
fn criterion_12_reports_are_deterministic() {
    let first: Vec<String> = grids().map(SweepReport::to_csv).collect();
    let second: Vec<String> = run_grids().iter().map(|(r, _)| r.to_csv()).collect();
    let bytes: usize = first.iter().map(String::len).sum();
    verdict(
        12,
        "repeated sweeps produce byte-identical CSV",
        first == second,
        &format!("{bytes} bytes per run"),
    );
}

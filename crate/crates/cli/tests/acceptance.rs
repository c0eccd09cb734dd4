//! Acceptance gate for the whole pipeline. Each test covers one numbered
//! criterion, prints a single [PASS]/[FAIL] line, and enforces the stated
//! tolerance and time budget. The oracles here are independent of the
//! library path being tested: exact integer combinatorics for the weights,
//! exact rational characteristic polynomial root brackets for the spectra,
//! and closed-form arithmetic for the thresholds.

use std::process::Command;
use std::time::{Duration, Instant};

use num::BigRational;

use garland_core::banach::{local_threshold, p_max_for_lambda, stability_p_range};
use garland_core::complex::is_subset;
use garland_core::spectral::{DescentDirection, DescentInterval, Sided};
use garland_core::{
    asymptotic_report, certify_local, descent_map, link_expansion_experiment, min_link_profiles,
    nowak_gate_constant, spectrum, verify_all, verify_identity, BanachClassSpec, CochainSpace,
    CoefficientSpace, CurveModulus, GroupAction, Identity, Rng, SimplicialComplex,
};
use garland_testkit::exact::{rational_eigenvalues, RationalMatrix};
use garland_testkit::gen::{conditioned_two_complex, random_pure_complex, random_rational_graph};

fn report(n: u32, ok: bool, detail: &str) {
    println!("[{}] criterion {n}: {detail}", if ok { "PASS" } else { "FAIL" });
}

fn complete_skeleton(dim: usize, vertices: u32) -> SimplicialComplex {
    let mut tops: Vec<Vec<u32>> = Vec::new();
    let mut current: Vec<u32> = (0..=dim as u32).collect();
    loop {
        tops.push(current.clone());
        // advance the combination in lexicographic order
        let mut i = dim + 1;
        loop {
            if i == 0 {
                return SimplicialComplex::from_top_sets(tops).unwrap();
            }
            i -= 1;
            if current[i] + 1 <= vertices - (dim as u32 + 1 - i as u32) {
                current[i] += 1;
                for j in i + 1..=dim {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn factorial(x: usize) -> u64 {
    (1..=x as u64).product()
}

#[test]
fn criterion_1_weights_match_the_closed_form() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let mut faces_checked = 0u64;
    for trial in 0..50u64 {
        let mut draw = Rng::new(31).derive(&[trial]);
        let n = 1 + draw.below(4) as usize;
        let vertices = (n as u32) + 2 + draw.below(6) as u32;
        let tops = 1 + draw.below(40) as usize;
        let complex = random_pure_complex(1000 + trial, n, vertices, tops);
        let top_count = complex.faces(n).len() as u64;
        for k in 0..=n {
            for face in complex.faces(k) {
                let containing = complex
                    .faces(n)
                    .iter()
                    .filter(|top| is_subset(face, top))
                    .count() as u64;
                let expected = factorial(n - k) * containing;
                let got = complex.weight(face).unwrap();
                if got != expected {
                    failures.push(format!(
                        "trial {trial} face {face:?}: weight {got} != closed form {expected}"
                    ));
                }
                faces_checked += 1;
            }
        }
        let empty_expected = factorial(n + 1) * top_count;
        if complex.weight_empty() != empty_expected {
            failures.push(format!("trial {trial}: empty-set weight mismatch"));
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(10);
    report(
        1,
        ok,
        &format!(
            "weight recursion equals (n-k)! * top-count on 50 complexes, {faces_checked} faces, {:.2}s",
            elapsed.as_secs_f64()
        ),
    );
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    assert!(elapsed < Duration::from_secs(10), "criterion 1 over budget: {elapsed:?}");
}

#[test]
fn criterion_2_spectra_match_exact_root_brackets() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let mut compared = 0u64;
    for sample in 0..200u64 {
        let graph = random_rational_graph(2000 + sample, 6);
        let ids = graph.vertices().to_vec();
        let n = ids.len();
        // Exact rational random walk matrix; it is similar to the
        // symmetrized matrix the library diagonalizes, so the spectra agree.
        let zero = BigRational::from_integer(0.into());
        let mut data = vec![zero; n * n];
        for (i, &u) in ids.iter().enumerate() {
            let mass = graph.vertex_weight(u).unwrap().clone();
            for (j, &v) in ids.iter().enumerate() {
                if let Some(w) = graph.edge_weight(u, v) {
                    data[i * n + j] = w / &mass;
                }
            }
        }
        let exact = RationalMatrix::from_rationals(n, data);
        let brackets = rational_eigenvalues(&exact, 1e-12);
        let total: usize = brackets.iter().map(|b| b.multiplicity).sum();
        if total != n {
            failures.push(format!("sample {sample}: bracket multiplicities sum to {total}, want {n}"));
            continue;
        }
        let profile = spectrum(&graph).unwrap();
        let mut ascending = profile.eigenvalues.clone();
        ascending.reverse();
        let mut idx = 0;
        for bracket in &brackets {
            for _ in 0..bracket.multiplicity {
                let lambda = ascending[idx];
                if !bracket.contains_f64(lambda, 1e-9) {
                    failures.push(format!(
                        "sample {sample} eigenvalue {idx}: {lambda} outside exact bracket [{}, {}]",
                        bracket.lo, bracket.hi
                    ));
                }
                idx += 1;
                compared += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(30);
    report(
        2,
        ok,
        &format!(
            "200 random rational graphs, {compared} eigenvalues within 1e-9 of exact brackets, {:.2}s",
            elapsed.as_secs_f64()
        ),
    );
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    assert!(elapsed < Duration::from_secs(30), "criterion 2 over budget: {elapsed:?}");
}

/// Group actions for the identity grid: trivial, the 3-cycle, and the full
/// symmetric group on the first three vertices.
fn grid_actions(vertices: u32) -> Vec<(&'static str, GroupAction)> {
    let mut cycle: Vec<u32> = (0..vertices).collect();
    cycle[0] = 1;
    cycle[1] = 2;
    cycle[2] = 0;
    let mut swap: Vec<u32> = (0..vertices).collect();
    swap[0] = 1;
    swap[1] = 0;
    vec![
        ("trivial", GroupAction::trivial(vertices)),
        ("c3", GroupAction::from_generators(vertices, vec![cycle.clone()]).unwrap()),
        ("s3", GroupAction::from_generators(vertices, vec![cycle, swap]).unwrap()),
    ]
}

fn identity_grid(mut visit: impl FnMut(&CochainSpace, usize, u64)) {
    let mut config = 0u64;
    for n in 2..=4usize {
        let vertices = n as u32 + 3;
        let complex = complete_skeleton(n, vertices);
        for (_, action) in grid_actions(vertices) {
            for k in 1..n {
                for d in [1usize, 2, 3] {
                    for p in [2.0f64, 3.0, 4.0] {
                        let coeff = CoefficientSpace::trivial(&action, d, p).unwrap();
                        let space =
                            CochainSpace::new(complex.clone(), action.clone(), coeff).unwrap();
                        visit(&space, k, config);
                        config += 1;
                    }
                }
            }
        }
    }
}

#[test]
fn criterion_3_identity_suite_holds_on_the_grid() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let mut total_trials = 0usize;
    identity_grid(|space, k, config| {
        let reports = verify_all(space, k, 2, 600 + config, 1e-9).unwrap();
        for r in &reports {
            total_trials += r.trials;
            if !r.pass {
                failures.push(format!(
                    "config {config} k={k}: {} residual {:.3e} over 1e-9",
                    r.identity.name(),
                    r.max_residual
                ));
            }
        }
    });
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && total_trials >= 200 && elapsed < Duration::from_secs(120);
    report(
        3,
        ok,
        &format!(
            "cochain identities hold to 1e-9 over {total_trials} randomized trials, {:.2}s",
            elapsed.as_secs_f64()
        ),
    );
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    assert!(total_trials >= 200, "only {total_trials} trials");
    assert!(elapsed < Duration::from_secs(120), "criterion 3 over budget: {elapsed:?}");
}

#[test]
fn criterion_4_differential_norm_bound_holds_on_the_grid() {
    let mut failures: Vec<String> = Vec::new();
    let mut total_trials = 0usize;
    identity_grid(|space, k, config| {
        let r = verify_identity(space, Identity::DBound, k, 2, 900 + config, 1e-9).unwrap();
        total_trials += r.trials;
        if !r.pass {
            failures.push(format!(
                "config {config} k={k}: ||d phi|| exceeds sqrt(k+2)||phi|| by {:.3e}",
                r.max_residual
            ));
        }
    });
    let ok = failures.is_empty();
    report(
        4,
        ok,
        &format!(
            "||d phi|| <= sqrt(k+2) ||phi|| + 1e-9 across {total_trials} randomized trials"
        ),
    );
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn criterion_5_threshold_formulas_are_exact() {
    let power = CurveModulus::Power { theta: 1.0 };
    let hilbert = CurveModulus::Hilbert;
    let mut failures: Vec<String> = Vec::new();
    if local_threshold(1, &power).unwrap() != 0.25 {
        failures.push("local_threshold(1, power theta=1) != 1/4".into());
    }
    if local_threshold(2, &power).unwrap() != 1.0 / 6.0 {
        failures.push("local_threshold(2, power theta=1) != 1/6".into());
    }
    if local_threshold(1, &hilbert).unwrap() != 0.5 {
        failures.push("local_threshold(1, hilbert) != 1/2".into());
    }
    let p_max = p_max_for_lambda(0.125, 1).unwrap().unwrap();
    if (p_max - 3.0).abs() > 1e-12 {
        failures.push(format!("p_max(1/8, k=1) = {p_max}, want 3"));
    }
    let (lo, hi) = stability_p_range(1.0).unwrap();
    if (lo - 2.0).abs() > 1e-12 || (hi - 2.0).abs() > 1e-12 {
        failures.push(format!("stability_p_range(1) = ({lo}, {hi}), want (2, 2)"));
    }
    let (lo, hi) = stability_p_range(2.0 / 3.0).unwrap();
    if (lo - 1.5).abs() > 1e-12 || (hi - 3.0).abs() > 1e-12 {
        failures.push(format!("stability_p_range(2/3) = ({lo}, {hi}), want (1.5, 3)"));
    }
    let ok = failures.is_empty();
    report(5, ok, "closed-form thresholds, p_max, and stability ranges match hand arithmetic");
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn criterion_6_certificates_and_the_contraction_gate() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let k7 = complete_skeleton(2, 7);
    let hilbert = BanachClassSpec::hilbert();
    let power1 = BanachClassSpec::power(1.0).unwrap();

    let cert = certify_local(&k7, None, 1, &hilbert).unwrap();
    if !cert.certified || (cert.measured - 0.2).abs() > 1e-9 {
        failures.push(format!(
            "k7 hilbert: certified={} measured={} want certified at 1/5",
            cert.certified, cert.measured
        ));
    }
    let gate_measured = cert.measured;

    let cert = certify_local(&k7, None, 1, &power1).unwrap();
    if !cert.certified || (cert.measured - 0.4).abs() > 1e-9 {
        failures.push(format!(
            "k7 power theta=1: certified={} measured={} want certified at 2/5",
            cert.certified, cert.measured
        ));
    }

    let octahedron = SimplicialComplex::build(&[
        vec![0, 2, 4],
        vec![0, 2, 5],
        vec![0, 3, 4],
        vec![0, 3, 5],
        vec![1, 2, 4],
        vec![1, 2, 5],
        vec![1, 3, 4],
        vec![1, 3, 5],
    ])
    .unwrap();
    let cert = certify_local(&octahedron, None, 1, &hilbert).unwrap();
    if cert.certified || (cert.measured - 1.0).abs() > 1e-9 {
        failures.push(format!(
            "octahedron: certified={} measured={} want a refusal at 1",
            cert.certified, cert.measured
        ));
    }

    // The gate constant from a measured local bound must dominate the
    // pairing inequality on actual cochains.
    let action = GroupAction::trivial(7);
    let coeff = CoefficientSpace::trivial(&action, 1, 2.0).unwrap();
    let space = CochainSpace::new(k7, action, coeff).unwrap();
    let c = nowak_gate_constant(1, gate_measured);
    let gate = verify_identity(&space, Identity::Nowak { c }, 1, 50, 66, 1e-9).unwrap();
    if !gate.pass {
        failures.push(format!(
            "contraction gate violated by {:.3e} with c = 2 * measured",
            gate.max_residual
        ));
    }

    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(10);
    report(
        6,
        ok,
        &format!(
            "complete 2-skeleton certifies, octahedron refuses, gate holds on 50 trials, {:.2}s",
            elapsed.as_secs_f64()
        ),
    );
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    assert!(elapsed < Duration::from_secs(10), "criterion 6 over budget: {elapsed:?}");
}

#[test]
fn criterion_7_skeleton_spectra_stay_in_the_descended_hull() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let mut samples = 0usize;
    let mut attempt = 0u64;
    while samples < 100 && attempt < 200 {
        let seed = 7000 + attempt;
        let n = 7 + (attempt % 2) as u32;
        attempt += 1;
        let Some(complex) = conditioned_two_complex(seed, n, 9, 10, 0.5, 60) else {
            continue;
        };
        let survey = min_link_profiles(&complex, None, 0, Sided::Two).unwrap();
        // Hull of all nontrivial vertex-link eigenvalues, widened to
        // include 0 so the interval is a valid transfer domain.
        let (mut lo, mut hi) = (0.0f64, 0.0f64);
        for link in &survey.links {
            for &e in &link.profile.eigenvalues[link.profile.trivial_multiplicity..] {
                lo = lo.min(e);
                hi = hi.max(e);
            }
        }
        let mapped =
            descent_map(DescentInterval { lo, hi }, 2, DescentDirection::Forward).unwrap();
        let profile = spectrum(&complex.skeleton_graph().unwrap()).unwrap();
        for &e in &profile.eigenvalues[profile.trivial_multiplicity..] {
            if e < mapped.lo - 1e-9 || e > mapped.hi + 1e-9 {
                failures.push(format!(
                    "seed {seed}: skeleton eigenvalue {e} outside [{}, {}]",
                    mapped.lo, mapped.hi
                ));
            }
        }
        samples += 1;
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && samples >= 100 && elapsed < Duration::from_secs(60);
    report(
        7,
        ok,
        &format!(
            "skeleton spectra of {samples} conditioned 2-complexes inside the forward hull, {:.2}s",
            elapsed.as_secs_f64()
        ),
    );
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    assert!(samples >= 100, "only {samples} qualifying samples");
    assert!(elapsed < Duration::from_secs(60), "criterion 7 over budget: {elapsed:?}");
}

#[test]
fn criterion_8_random_presentation_links_expand() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();

    let (_, summaries) = link_expansion_experiment(&[50, 100, 150], 4.0, 20, 8).unwrap();
    for s in &summaries {
        if (s.connected_trials as f64) < 0.9 * s.trials as f64 {
            failures.push(format!(
                "m={}: only {}/{} links connected",
                s.m, s.connected_trials, s.trials
            ));
        }
        println!(
            "    m={} rho={:.3e}: {}/{} connected, median lambda_two {:.4}, C-hat {:.3}",
            s.m, s.rho, s.connected_trials, s.trials, s.median_two_sided, s.c_hat
        );
    }

    // Denser relator sets should give better expanders. Batches share
    // relator draws across multipliers, so the comparison is paired.
    let mut monotone = 0;
    for batch in 0..5u64 {
        let mut medians = Vec::new();
        for mult in [2.0, 4.0, 8.0] {
            let (_, s) = link_expansion_experiment(&[100], mult, 10, 800 + batch).unwrap();
            medians.push(s[0].median_two_sided);
        }
        if medians[0] >= medians[1] && medians[1] >= medians[2] {
            monotone += 1;
        }
    }
    if monotone < 4 {
        failures.push(format!("median lambda_two monotone in only {monotone}/5 batches"));
    }

    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(300);
    report(
        8,
        ok,
        &format!(
            "links >=90% connected at m in {{50,100,150}}, medians monotone in {monotone}/5 batches, {:.2}s",
            elapsed.as_secs_f64()
        ),
    );
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    assert!(elapsed < Duration::from_secs(300), "criterion 8 over budget: {elapsed:?}");
}

#[test]
fn criterion_9_asymptotic_report_matches_hand_arithmetic() {
    let report_values = asymptotic_report(1000, 0.4, 1.0, 1.0, None).unwrap();
    let expected_lower = 0.1 * (1999.0f64).ln();
    let expected_upper = 150.0 * (1999.0f64).ln();
    let mut failures: Vec<String> = Vec::new();
    if (report_values.confdim_lower - expected_lower).abs() > 1e-12 {
        failures.push(format!(
            "confdim lower {} want {expected_lower}",
            report_values.confdim_lower
        ));
    }
    if (report_values.confdim_upper - expected_upper).abs() > 1e-12 {
        failures.push(format!(
            "confdim upper {} want {expected_upper}",
            report_values.confdim_upper
        ));
    }
    let ok = failures.is_empty();
    report(9, ok, "conformal dimension window at m=1000, d=0.4 matches 0.1*ln(1999) and 150*ln(1999)");
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn criterion_10_cli_output_is_byte_stable() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    let complex_path = dir.join("acceptance_k7.json");
    let mut tops = Vec::new();
    for a in 0..7 {
        for b in a + 1..7 {
            for c in b + 1..7 {
                tops.push(format!("[{a},{b},{c}]"));
            }
        }
    }
    std::fs::write(&complex_path, format!("{{\"top_simplices\":[{}]}}", tops.join(",")))
        .unwrap();

    let mut failures: Vec<String> = Vec::new();
    let runs: Vec<Vec<&str>> = vec![
        vec!["certify", "--complex", complex_path.to_str().unwrap(), "--k", "1", "--seed", "12"],
        vec!["spectra", "--complex", complex_path.to_str().unwrap()],
        vec!["randgroup", "experiment", "--m-list", "15,20", "--trials", "3", "--seed", "5"],
        vec!["report", "--m", "1000", "--d", "0.4"],
        vec!["thresholds", "--class", "power:0.8", "--lambda", "0.1"],
    ];
    for args in &runs {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_garland"))
                .args(args)
                .env_remove("GARLAND_SEED")
                .output()
                .unwrap()
        };
        let first = run();
        let second = run();
        if first.stdout != second.stdout || first.stdout.is_empty() {
            failures.push(format!("{args:?} not byte-stable"));
        }
    }
    let ok = failures.is_empty();
    report(10, ok, "five CLI invocations rerun byte-identical JSON");
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

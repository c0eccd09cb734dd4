//! Seeded random generators for test inputs. Deterministic in the seed, so
//! failures reproduce.

use std::collections::BTreeSet;

use num::BigRational;

use garland_core::spectral::{min_link_profiles, Sided};
use garland_core::{Rng, SimplicialComplex, WeightedGraph};

/// Connected graph on n vertices: a random spanning tree plus `extra` more
/// edges, all with small positive integer weights.
pub fn random_connected_graph(seed: u64, n: u32, extra: usize) -> WeightedGraph {
    assert!(n >= 2);
    let mut rng = Rng::new(seed).derive(&[71, n as u64, extra as u64]);
    let mut edges: Vec<(u32, u32, u64)> = Vec::new();
    for v in 1..n {
        let u = rng.below(v as u64) as u32;
        edges.push((u, v, 1 + rng.below(5)));
    }
    let mut added = 0;
    let mut guard = 0;
    while added < extra && guard < 10 * extra + 100 {
        guard += 1;
        let a = rng.below(n as u64) as u32;
        let b = rng.below(n as u64) as u32;
        if a == b || edges.iter().any(|&(x, y, _)| (x, y) == (a.min(b), a.max(b))) {
            continue;
        }
        edges.push((a.min(b), a.max(b), 1 + rng.below(5)));
        added += 1;
    }
    WeightedGraph::from_integer_edges(edges).expect("generated graph is valid")
}

/// Pure n-complex: up to `tops` distinct (n+1)-subsets of {0..vertices}.
/// May return fewer tops when the subset space is tight.
pub fn random_pure_complex(seed: u64, n: usize, vertices: u32, tops: usize) -> SimplicialComplex {
    assert!(vertices as usize > n && tops >= 1);
    let mut rng = Rng::new(seed).derive(&[74, n as u64, vertices as u64, tops as u64]);
    let mut chosen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut guard = 0;
    while chosen.len() < tops && guard < 100 * tops + 1000 {
        guard += 1;
        let mut s = BTreeSet::new();
        while s.len() < n + 1 {
            s.insert(rng.below(vertices as u64) as u32);
        }
        chosen.insert(s.into_iter().collect());
    }
    SimplicialComplex::from_top_sets(chosen.into_iter().collect())
        .expect("distinct equal-cardinality tops form a pure complex")
}

/// Graph on 2 to max_vertices vertices, each possible edge kept with
/// probability 1/2 and given a random weight num/den with both parts in
/// 1..=9. At least one edge; connectivity not guaranteed.
pub fn random_rational_graph(seed: u64, max_vertices: u32) -> WeightedGraph {
    assert!(max_vertices >= 2);
    let mut rng = Rng::new(seed).derive(&[75, max_vertices as u64]);
    let n = 2 + rng.below(max_vertices as u64 - 1) as u32;
    loop {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.below(2) == 0 {
                    let num = 1 + rng.below(9) as i64;
                    let den = 1 + rng.below(9) as i64;
                    edges.push((a, b, BigRational::new(num.into(), den.into())));
                }
            }
        }
        if !edges.is_empty() {
            return WeightedGraph::from_edges(edges).expect("positive weights, no loops");
        }
    }
}

/// Pure 2-complex on up to n vertices: every triangle of the complete graph
/// is kept independently with probability keep_num/keep_den. Returns None
/// when no triangle survives.
pub fn random_two_complex(seed: u64, n: u32, keep_num: u64, keep_den: u64) -> Option<SimplicialComplex> {
    let mut rng = Rng::new(seed).derive(&[72, n as u64, keep_num, keep_den]);
    let mut tops = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if rng.below(keep_den) < keep_num {
                    tops.push(vec![a, b, c]);
                }
            }
        }
    }
    if tops.is_empty() {
        return None;
    }
    Some(SimplicialComplex::from_top_sets(tops).expect("triangle list is a valid pure family"))
}

/// Random 2-complex conditioned on the hypotheses of the descent theorem:
/// connected 1-skeleton, every vertex link connected, and worst two-sided
/// vertex-link bound at most `lambda_cap`. Deterministically resamples with
/// derived seeds until a sample qualifies or attempts run out.
pub fn conditioned_two_complex(
    seed: u64,
    n: u32,
    keep_num: u64,
    keep_den: u64,
    lambda_cap: f64,
    max_attempts: u64,
) -> Option<SimplicialComplex> {
    for attempt in 0..max_attempts {
        let sub = Rng::new(seed).derive(&[73, attempt]).next_u64();
        let Some(complex) = random_two_complex(sub, n, keep_num, keep_den) else {
            continue;
        };
        if complex.face_count(0) < n as usize {
            continue;
        }
        let Ok(skeleton) = complex.skeleton_graph() else { continue };
        if !skeleton.is_connected() {
            continue;
        }
        let Ok(survey) = min_link_profiles(&complex, None, 0, Sided::Two) else {
            continue;
        };
        if survey.worst <= lambda_cap {
            return Some(complex);
        }
    }
    None
}

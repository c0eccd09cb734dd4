//! Random triangular presentations and their vertex links.
//!
//! Letters are encoded as integers in `0..2m`: code `i < m` is the
//! generator `a_{i+1}`, code `i >= m` is its formal inverse `A_{i-m+1}`.
//! A relator is a cyclically reduced word of length 3, stored as the
//! array of its three letter codes.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::rng::Rng;
use crate::spectral::spectrum;

pub type Relator = [u32; 3];

pub fn inverse_letter(m: u32, letter: u32) -> u32 {
    (letter + m) % (2 * m)
}

pub fn letter_name(m: u32, letter: u32) -> String {
    if letter < m {
        format!("a{}", letter + 1)
    } else {
        format!("A{}", letter - m + 1)
    }
}

fn cyclically_reduced(m: u32, w: &Relator) -> bool {
    w[1] != inverse_letter(m, w[0])
        && w[2] != inverse_letter(m, w[1])
        && w[0] != inverse_letter(m, w[2])
}

/// Lexicographically least cyclic rotation.
fn rotation_canonical(w: &Relator) -> Relator {
    let r1 = [w[1], w[2], w[0]];
    let r2 = [w[2], w[0], w[1]];
    (*w).min(r1).min(r2)
}

/// Number of cyclically reduced length-3 words over 2m letters.
///
/// Fixing the first letter x, the middle letter is either x again
/// (leaving 2m-1 choices for the last) or one of the 2m-2 letters
/// distinct from both x and its inverse (leaving 2m-2 for the last,
/// which must avoid two distinct forbidden letters).
pub fn relator_space_count(m: u32) -> u64 {
    let q = 2 * m as u64;
    q * ((q - 1) + (q - 2) * (q - 2))
}

/// Streams the relator space in lexicographic order of letter codes.
/// With `rotation_classes` set, only the least rotation of each cyclic
/// class is yielded.
pub struct RelatorIter {
    m: u32,
    q: u64,
    idx: u64,
    end: u64,
    rotation_classes: bool,
}

pub fn relator_space(m: u32, rotation_classes: bool) -> RelatorIter {
    let q = 2 * m as u64;
    RelatorIter { m, q, idx: 0, end: q * q * q, rotation_classes }
}

impl Iterator for RelatorIter {
    type Item = Relator;

    fn next(&mut self) -> Option<Relator> {
        while self.idx < self.end {
            let i = self.idx;
            self.idx += 1;
            let w = [
                (i / (self.q * self.q)) as u32,
                ((i / self.q) % self.q) as u32,
                (i % self.q) as u32,
            ];
            if !cyclically_reduced(self.m, &w) {
                continue;
            }
            if self.rotation_classes && rotation_canonical(&w) != w {
                continue;
            }
            return Some(w);
        }
        None
    }
}

/// A group presentation in the triangular model: m generators and a
/// deduplicated set of cyclically reduced length-3 relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    m: u32,
    relators: Vec<Relator>,
}

impl Presentation {
    pub fn new(m: u32, relators: Vec<Relator>) -> Result<Self> {
        if m == 0 {
            return Err(Error::OutOfRange("a presentation needs at least one generator".into()));
        }
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(relators.len());
        for w in relators {
            for &l in &w {
                if l >= 2 * m {
                    return Err(Error::InvalidRelator {
                        text: format!("{w:?}"),
                        reason: format!("letter code {l} out of range for m = {m}"),
                    });
                }
            }
            if !cyclically_reduced(m, &w) {
                return Err(Error::InvalidRelator {
                    text: word_text(m, &w),
                    reason: "adjacent inverse pair (read cyclically)".into(),
                });
            }
            if seen.insert(w) {
                kept.push(w);
            }
        }
        Ok(Presentation { m, relators: kept })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn len(&self) -> usize {
        self.relators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relators.is_empty()
    }

    /// One relator per line, letters space-separated, e.g. "a1 a2 A1".
    pub fn format(&self) -> String {
        let mut out = String::new();
        for w in &self.relators {
            out.push_str(&word_text(self.m, w));
            out.push('\n');
        }
        out
    }

    /// Parses the line format produced by [`Presentation::format`].
    /// Whitespace between letters is optional; blank lines and lines
    /// starting with '#' are skipped. The generator count is the largest
    /// letter index present.
    pub fn parse(text: &str) -> Result<Self> {
        let mut words: Vec<Vec<(bool, u32)>> = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: String| Error::InvalidRelator { text: line.to_string(), reason };
            let mut letters = Vec::new();
            let mut chars = line.chars().peekable();
            while let Some(c) = chars.next() {
                if c.is_whitespace() {
                    continue;
                }
                let upper = match c {
                    'a' => false,
                    'A' => true,
                    _ => return Err(bad(format!("unexpected character '{c}'"))),
                };
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let idx: u32 = digits
                    .parse()
                    .map_err(|_| bad("every letter needs a numeric index".into()))?;
                if idx == 0 {
                    return Err(bad("letter indices start at 1".into()));
                }
                letters.push((upper, idx));
            }
            if letters.len() != 3 {
                return Err(bad(format!("expected 3 letters, found {}", letters.len())));
            }
            words.push(letters);
        }
        if words.is_empty() {
            return Err(Error::EmptyInput("presentation text"));
        }
        let m = words.iter().flatten().map(|&(_, i)| i).max().unwrap();
        let relators = words
            .into_iter()
            .map(|ls| {
                let mut w = [0u32; 3];
                for (slot, (upper, idx)) in w.iter_mut().zip(ls) {
                    *slot = if upper { m + idx - 1 } else { idx - 1 };
                }
                w
            })
            .collect();
        Presentation::new(m, relators)
    }
}

fn word_text(m: u32, w: &Relator) -> String {
    w.iter().map(|&l| letter_name(m, l)).collect::<Vec<_>>().join(" ")
}

/// Uniform sample of exactly `count` distinct relators via reservoir
/// sampling (Algorithm R) over the streamed enumeration, then sorted.
pub fn sample_presentation_with_count(
    m: u32,
    count: u64,
    seed: u64,
    rotation_classes: bool,
) -> Result<Presentation> {
    if m == 0 {
        return Err(Error::OutOfRange("sampling needs m >= 1".into()));
    }
    let available = if rotation_classes {
        relator_space(m, true).count() as u64
    } else {
        relator_space_count(m)
    };
    if count > available {
        return Err(Error::TooManyRelators { requested: count, available });
    }
    let mut rng = Rng::new(seed).derive(&[41, m as u64, count]);
    let c = count as usize;
    let mut reservoir: Vec<Relator> = Vec::with_capacity(c);
    for (i, w) in relator_space(m, rotation_classes).enumerate() {
        if i < c {
            reservoir.push(w);
        } else {
            let j = rng.below(i as u64 + 1) as usize;
            if j < c {
                reservoir[j] = w;
            }
        }
    }
    reservoir.sort_unstable();
    Presentation::new(m, reservoir)
}

/// Density model: a uniform subset of exactly floor((2m-1)^(3d)) relators.
pub fn sample_presentation_density(
    m: u32,
    d: f64,
    seed: u64,
    rotation_classes: bool,
) -> Result<Presentation> {
    if !(d > 0.0 && d < 1.0) {
        return Err(Error::OutOfRange(format!("density model needs d in (0,1), got {d}")));
    }
    if m == 0 {
        return Err(Error::OutOfRange("sampling needs m >= 1".into()));
    }
    let count = ((2 * m - 1) as f64).powf(3.0 * d).floor() as u64;
    sample_presentation_with_count(m, count, seed, rotation_classes)
}

/// Binomial model: every relator joins independently with probability rho.
pub fn sample_presentation_binomial(
    m: u32,
    rho: f64,
    seed: u64,
    rotation_classes: bool,
) -> Result<Presentation> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::OutOfRange(format!("binomial model needs rho in [0,1], got {rho}")));
    }
    if m == 0 {
        return Err(Error::OutOfRange("sampling needs m >= 1".into()));
    }
    let mut rng = Rng::new(seed).derive(&[42, m as u64]);
    let relators: Vec<Relator> = relator_space(m, rotation_classes)
        .filter(|_| rng.next_f64() < rho)
        .collect();
    Presentation::new(m, relators)
}

/// Vertex link of the presentation complex. Vertices are the 2m letters;
/// every cyclic consecutive pair (x, y) in a relator contributes weight 1
/// to the edge {x^-1, y}. Cyclic reduction rules out loops. Letters
/// incident to no edge are dropped and reported in the warning list; an
/// empty relator set yields no graph at all.
///
/// With `symmetrize` each relator also contributes the edges of its
/// inverse word, doubling the edge mass from 3 to 6 per relator.
pub fn zuk_link(p: &Presentation, symmetrize: bool) -> (Option<WeightedGraph>, Vec<String>) {
    let m = p.m();
    let mut acc: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    let add_word = |acc: &mut BTreeMap<(u32, u32), u64>, w: &Relator| {
        for i in 0..3 {
            let x = w[i];
            let y = w[(i + 1) % 3];
            let a = inverse_letter(m, x);
            let key = if a <= y { (a, y) } else { (y, a) };
            *acc.entry(key).or_insert(0) += 1;
        }
    };
    for w in p.relators() {
        add_word(&mut acc, w);
        if symmetrize {
            let inv = [
                inverse_letter(m, w[2]),
                inverse_letter(m, w[1]),
                inverse_letter(m, w[0]),
            ];
            add_word(&mut acc, &inv);
        }
    }
    let mut warnings = Vec::new();
    if acc.is_empty() {
        warnings.push("no relators; the link is empty".to_string());
        return (None, warnings);
    }
    let mut incident = vec![false; 2 * m as usize];
    for &(u, v) in acc.keys() {
        incident[u as usize] = true;
        incident[v as usize] = true;
    }
    for l in 0..2 * m {
        if !incident[l as usize] {
            warnings.push(format!("letter {} never occurs; dropped from the link", letter_name(m, l)));
        }
    }
    let graph = WeightedGraph::from_integer_edges(acc.into_iter().map(|((u, v), w)| (u, v, w)))
        .expect("link edges are loop-free with positive weight");
    (Some(graph), warnings)
}

/// One sampled link and its spectral summary. Lambda fields are NaN when
/// no graph exists (empty relator set).
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub m: u32,
    pub rho: f64,
    pub seed: u64,
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub lambda_two_sided: f64,
    pub lambda_one_sided: f64,
}

/// Per-m aggregate over the connected rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSummary {
    pub m: u32,
    pub rho: f64,
    pub trials: u32,
    pub connected_trials: u32,
    pub median_two_sided: f64,
    pub median_one_sided: f64,
    /// median of lambda_two_sided^2 * rho * m^2, the empirical constant
    /// in the sqrt(C/(rho m^2)) expansion rate.
    pub c_hat: f64,
}

fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

fn run_trial(m: u32, rho: f64, seed: u64) -> Result<ExperimentRow> {
    let p = sample_presentation_binomial(m, rho, seed, false)?;
    let (graph, _warnings) = zuk_link(&p, false);
    Ok(match graph {
        None => ExperimentRow {
            m,
            rho,
            seed,
            vertices: 0,
            edges: 0,
            connected: false,
            lambda_two_sided: f64::NAN,
            lambda_one_sided: f64::NAN,
        },
        Some(g) => {
            let profile = spectrum(&g)?;
            ExperimentRow {
                m,
                rho,
                seed,
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                connected: profile.connected,
                lambda_two_sided: profile.lambda_two,
                lambda_one_sided: profile.lambda_one,
            }
        }
    })
}

/// Samples binomial presentations at rho(m) = multiplier * ln(m) / (8 m^2)
/// and profiles each Zuk link. The multiplier must exceed 1 so that rho
/// stays above the connectivity rate log(m)/(8 m^2), and rho must stay
/// below m^-1.42. Trials run in parallel; per-trial seeds depend only on
/// (base seed, m, trial index), so runs with different multipliers share
/// randomness and compare as paired samples.
pub fn link_expansion_experiment(
    m_list: &[u32],
    multiplier: f64,
    trials: u32,
    seed: u64,
) -> Result<(Vec<ExperimentRow>, Vec<ExperimentSummary>)> {
    if m_list.is_empty() {
        return Err(Error::EmptyInput("experiment m list"));
    }
    if trials == 0 {
        return Err(Error::OutOfRange("experiment needs at least one trial".into()));
    }
    if !multiplier.is_finite() || multiplier <= 1.0 {
        return Err(Error::OutOfRange(format!(
            "rho rule multiplier must exceed 1, got {multiplier}"
        )));
    }
    let mut jobs = Vec::new();
    for &m in m_list {
        if m < 2 {
            return Err(Error::OutOfRange(format!("experiment needs m >= 2, got {m}")));
        }
        let mf = m as f64;
        let rho = multiplier * mf.ln() / (8.0 * mf * mf);
        let cap = mf.powf(-1.42);
        if rho >= cap {
            return Err(Error::OutOfRange(format!(
                "rho {rho:.6e} at m = {m} violates the bound m^-1.42 = {cap:.6e}"
            )));
        }
        for t in 0..trials {
            let trial_seed = Rng::new(seed).derive(&[43, m as u64, t as u64]).next_u64();
            jobs.push((m, rho, trial_seed));
        }
    }
    let rows = jobs
        .into_par_iter()
        .map(|(m, rho, s)| run_trial(m, rho, s))
        .collect::<Result<Vec<_>>>()?;
    let mut summaries = Vec::new();
    for &m in m_list {
        let group: Vec<&ExperimentRow> = rows.iter().filter(|r| r.m == m).collect();
        let rho = group[0].rho;
        let connected: Vec<&ExperimentRow> =
            group.iter().filter(|r| r.connected).copied().collect();
        let mf = m as f64;
        summaries.push(ExperimentSummary {
            m,
            rho,
            trials,
            connected_trials: connected.len() as u32,
            median_two_sided: median(connected.iter().map(|r| r.lambda_two_sided).collect()),
            median_one_sided: median(connected.iter().map(|r| r.lambda_one_sided).collect()),
            c_hat: median(
                connected
                    .iter()
                    .map(|r| r.lambda_two_sided * r.lambda_two_sided * rho * mf * mf)
                    .collect(),
            ),
        });
    }
    Ok((rows, summaries))
}

/// Closed-form consequences for a random group at density d, conditional
/// on the expansion constant C supplied by the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub m: u32,
    pub d: f64,
    pub c: f64,
    pub eta: f64,
    /// Base of every logarithm in the formulas; e unless overridden.
    pub log_base: f64,
    /// Exponent range with vanishing L^p cohomology in degree 1, when the
    /// upper endpoint reaches 2.
    pub p_interval: Option<(f64, f64)>,
    pub confdim_lower: f64,
    pub confdim_upper: f64,
    /// Density above which the model is infinite hyperbolic with overwhelming
    /// probability, at margin parameter eta.
    pub density_threshold: f64,
    pub note: String,
}

pub fn asymptotic_report(
    m: u32,
    d: f64,
    c: f64,
    eta: f64,
    log_base: Option<f64>,
) -> Result<AsymptoticReport> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("asymptotic report needs m >= 2, got {m}")));
    }
    if !(d >= 1.0 / 3.0 && d < 0.5) {
        return Err(Error::OutOfRange(format!(
            "asymptotic report needs density d in [1/3, 1/2), got {d}"
        )));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::OutOfRange(format!("expansion constant C must be positive, got {c}")));
    }
    if !(eta > 0.0 && eta < 2.0) {
        return Err(Error::OutOfRange(format!("margin eta must lie in (0,2), got {eta}")));
    }
    let base = log_base.unwrap_or(std::f64::consts::E);
    if !(base > 1.0) || !base.is_finite() {
        return Err(Error::OutOfRange(format!("log base must exceed 1, got {base}")));
    }
    let lg = |x: f64| x.ln() / base.ln();
    let mf = m as f64;
    let p_hi = 0.5 * (3.0 * d - 1.0) * lg(2.0 * mf - 1.0) - 0.5 * lg(c);
    let p_interval = if p_hi >= 2.0 { Some((2.0, p_hi)) } else { None };
    let confdim_upper = 30.0 / (1.0 - 2.0 * d) * lg(2.0 * mf - 1.0);
    let density_threshold = 1.0 / 3.0 + (lg(lg(mf)) - lg(2.0 - eta)) / (3.0 * lg(mf));
    Ok(AsymptoticReport {
        m,
        d,
        c,
        eta,
        log_base: base,
        p_interval,
        confdim_lower: p_hi,
        confdim_upper,
        density_threshold,
        note: format!("conditional on C = {c}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    #[test]
    fn one_generator_space_is_the_two_constant_words() {
        let words: Vec<Relator> = relator_space(1, false).collect();
        assert_eq!(words, vec![[0, 0, 0], [1, 1, 1]]);
        assert_eq!(relator_space_count(1), 2);
    }

    #[test]
    fn count_matches_brute_force_filter() {
        for m in 1..=4u32 {
            let q = 2 * m;
            let mut brute = 0u64;
            for x in 0..q {
                for y in 0..q {
                    for z in 0..q {
                        if cyclically_reduced(m, &[x, y, z]) {
                            brute += 1;
                        }
                    }
                }
            }
            assert_eq!(brute, relator_space_count(m), "m = {m}");
            assert_eq!(relator_space(m, false).count() as u64, brute);
            assert_eq!(brute % 2, 0, "inverse closure pairs words");
            assert_eq!(brute, (2 * m as u64 - 1).pow(3) + 1);
        }
        assert_eq!(relator_space_count(2), 28);
    }

    #[test]
    fn rotation_classes_partition_the_space() {
        let classes: Vec<Relator> = relator_space(2, true).collect();
        assert_eq!(classes.len(), 12);
        for w in &classes {
            assert_eq!(rotation_canonical(w), *w);
        }
        let mut expanded = 0;
        for w in &classes {
            let r1 = [w[1], w[2], w[0]];
            let mut size = 1;
            if r1 != *w {
                size = 3;
            }
            expanded += size;
        }
        assert_eq!(expanded, 28);
    }

    #[test]
    fn aba_link_edges() {
        let p = Presentation::new(2, vec![[0, 1, 0]]).unwrap();
        let (graph, warnings) = zuk_link(&p, false);
        let g = graph.unwrap();
        assert!(warnings.is_empty());
        let one = BigRational::from_integer(1.into());
        assert_eq!(g.edge_weight(1, 2).unwrap(), &one);
        assert_eq!(g.edge_weight(0, 3).unwrap(), &one);
        assert_eq!(g.edge_weight(0, 2).unwrap(), &one);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn link_is_rotation_invariant_and_has_mass_three_per_relator() {
        let p1 = Presentation::new(3, vec![[0, 1, 2], [4, 0, 0]]).unwrap();
        let p2 = Presentation::new(3, vec![[1, 2, 0], [0, 4, 0]]).unwrap();
        let (g1, _) = zuk_link(&p1, false);
        let (g2, _) = zuk_link(&p2, false);
        let g1 = g1.unwrap();
        let g2 = g2.unwrap();
        let e1: Vec<_> = g1.edges().map(|(u, v, w)| (u, v, w.clone())).collect();
        let e2: Vec<_> = g2.edges().map(|(u, v, w)| (u, v, w.clone())).collect();
        assert_eq!(e1, e2);
        assert_eq!(g1.total_edge_weight(), BigRational::from_integer(6.into()));
        let (g3, _) = zuk_link(&p1, true);
        assert_eq!(g3.unwrap().total_edge_weight(), BigRational::from_integer(12.into()));
    }

    #[test]
    fn empty_and_full_binomial_samples() {
        let empty = sample_presentation_binomial(2, 0.0, 9, false).unwrap();
        assert!(empty.is_empty());
        let (graph, warnings) = zuk_link(&empty, false);
        assert!(graph.is_none());
        assert_eq!(warnings.len(), 1);
        let full = sample_presentation_binomial(2, 1.0, 9, false).unwrap();
        assert_eq!(full.len() as u64, relator_space_count(2));
    }

    #[test]
    fn binomial_inclusion_frequency_within_three_sigma() {
        let m = 2;
        let rho = 0.25;
        let n = 10_000u64;
        let words: Vec<Relator> = relator_space(m, false).collect();
        let mut hits = vec![0u64; words.len()];
        let mut base = Rng::new(7);
        for _ in 0..n {
            let p = sample_presentation_binomial(m, rho, base.next_u64(), false).unwrap();
            let set: HashSet<Relator> = p.relators().iter().copied().collect();
            for (i, w) in words.iter().enumerate() {
                if set.contains(w) {
                    hits[i] += 1;
                }
            }
        }
        let sigma = (rho * (1.0 - rho) / n as f64).sqrt();
        for (i, &h) in hits.iter().enumerate() {
            let freq = h as f64 / n as f64;
            assert!(
                (freq - rho).abs() <= 3.0 * sigma,
                "word {i} frequency {freq} strays from {rho}"
            );
        }
    }

    #[test]
    fn density_sample_has_exact_cardinality() {
        let expected = (5f64).powf(1.5).floor() as usize;
        assert_eq!(expected, 11);
        let p = sample_presentation_density(3, 0.5, 21, false).unwrap();
        assert_eq!(p.len(), expected);
        for pair in p.relators().windows(2) {
            assert!(pair[0] < pair[1], "sorted and distinct");
        }
        let again = sample_presentation_density(3, 0.5, 21, false).unwrap();
        assert_eq!(p, again);
        let other = sample_presentation_density(3, 0.5, 22, false).unwrap();
        assert_ne!(p, other);
    }

    #[test]
    fn requesting_more_relators_than_exist_fails() {
        let err = sample_presentation_with_count(1, 3, 5, false).unwrap_err();
        assert!(matches!(err, Error::TooManyRelators { requested: 3, available: 2 }));
        let both = sample_presentation_with_count(1, 2, 5, false).unwrap();
        assert_eq!(both.relators(), &[[0, 0, 0], [1, 1, 1]]);
        // The density model itself cannot overflow: the requested count
        // floor((2m-1)^(3d)) with d < 1 stays below (2m-1)^3 + 1, the
        // space size.
        for m in 1..=5 {
            assert_eq!(relator_space_count(m), (2 * m as u64 - 1).pow(3) + 1);
        }
    }

    #[test]
    fn parse_and_format_round_trip() {
        let p = Presentation::new(2, vec![[0, 1, 0], [3, 3, 0]]).unwrap();
        let text = p.format();
        assert_eq!(text, "a1 a2 a1\nA2 A2 a1\n");
        let back = Presentation::parse(&text).unwrap();
        assert_eq!(back, p);
        let dense = Presentation::parse("a1a2a1").unwrap();
        assert_eq!(dense.relators(), &[[0, 1, 0]]);
        assert!(matches!(
            Presentation::parse("a1 a2"),
            Err(Error::InvalidRelator { .. })
        ));
        assert!(matches!(
            Presentation::parse("a1 A1 a2"),
            Err(Error::InvalidRelator { .. })
        ));
        assert!(matches!(
            Presentation::parse("x1 a1 a1"),
            Err(Error::InvalidRelator { .. })
        ));
        assert!(matches!(Presentation::parse("\n# only comments\n"), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn experiment_guards_and_reproducibility() {
        assert!(matches!(
            link_expansion_experiment(&[50], 1.0, 2, 3),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            link_expansion_experiment(&[2], 50.0, 2, 3),
            Err(Error::OutOfRange(_))
        ));
        let (rows, summaries) = link_expansion_experiment(&[20], 4.0, 4, 11).unwrap();
        let (rows2, _) = link_expansion_experiment(&[20], 4.0, 4, 11).unwrap();
        assert_eq!(rows, rows2);
        assert_eq!(rows.len(), 4);
        assert_eq!(summaries.len(), 1);
        assert_eq!(summaries[0].connected_trials as usize, rows.iter().filter(|r| r.connected).count());
        for r in &rows {
            if r.connected {
                assert!(r.lambda_two_sided >= 0.0 && r.lambda_two_sided <= 1.0);
                assert!(r.vertices <= 40);
            }
        }
    }

    #[test]
    fn asymptotic_report_formulas() {
        let r = asymptotic_report(1000, 0.4, 1.0, 1.0, None).unwrap();
        let l = (1999f64).ln();
        assert!((r.confdim_lower - 0.1 * l).abs() <= 1e-12);
        assert!((r.confdim_upper - 150.0 * l).abs() <= 1e-12);
        assert!(r.p_interval.is_none(), "upper endpoint {} below 2", r.confdim_lower);
        assert!(r.note.contains("C = 1"));
        // d = 1/3 degenerates the lower bound to -log(C)/2.
        let edge = asymptotic_report(1000, 1.0 / 3.0, 1.0, 1.0, None).unwrap();
        assert!(edge.confdim_lower.abs() < 1e-12);
        // Large m pushes the p interval open.
        let big = asymptotic_report(1_000_000_000, 0.45, 1.0, 1.0, None).unwrap();
        let endpoint = 0.5 * 0.35 * (2e9f64 - 1.0).ln();
        assert!(endpoint > 2.0);
        let (lo, hi) = big.p_interval.unwrap();
        assert_eq!(lo, 2.0);
        assert!((hi - endpoint).abs() < 1e-9);
        // Base-10 logs rescale every entry.
        let ten = asymptotic_report(1000, 0.4, 1.0, 1.0, Some(10.0)).unwrap();
        assert!((ten.confdim_lower - 0.1 * (1999f64).log10()).abs() <= 1e-12);
        assert!(matches!(asymptotic_report(1000, 0.3, 1.0, 1.0, None), Err(Error::OutOfRange(_))));
        assert!(matches!(asymptotic_report(1000, 0.4, 0.0, 1.0, None), Err(Error::OutOfRange(_))));
        assert!(matches!(asymptotic_report(1000, 0.4, 1.0, 2.0, None), Err(Error::OutOfRange(_))));
        assert!(matches!(asymptotic_report(1000, 0.4, 1.0, 1.0, Some(1.0)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn density_threshold_decreases_in_eta() {
        let lo = asymptotic_report(100, 0.4, 1.0, 0.5, None).unwrap().density_threshold;
        let hi = asymptotic_report(100, 0.4, 1.0, 1.5, None).unwrap().density_threshold;
        assert!(hi > lo, "larger margin demands higher density");
    }
}

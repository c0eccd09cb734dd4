//! Vanishing certificates from link spectra.
//!
//! Two routes to the same conclusion. The local route measures the links of
//! (k-1)-simplices directly and compares the transferred operator norm
//! against 1/(k+1). The descent route measures only the deepest links (the
//! graphs at the links of (n-2)-simplices) and pulls the degree-k threshold
//! back through the interval transfer, trading sharper thresholds for much
//! smaller eigenproblems.
//!
//! A certificate is a verdict plus everything needed to audit it: the worst
//! measured value and the simplex attaining it, the threshold, the margin,
//! and the list of assumptions that were machine-checked or user-asserted.
//! Failure is inconclusive, never a nonvanishing claim.

use crate::action::GroupAction;
use crate::banach::{local_threshold, stability_p_range, tensor_norm_bound, BanachClassSpec, CurveModulus};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::spectral::{min_link_profiles, Sided};

/// Measured spectra carry eigensolver error, so a margin this small cannot
/// be distinguished from an exact tie. Ties are not certified, and neither
/// is anything inside the guard.
const MARGIN_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriterionId {
    Local,
    DescentTwo,
    DescentOne,
}

impl CriterionId {
    pub fn name(self) -> &'static str {
        match self {
            CriterionId::Local => "local",
            CriterionId::DescentTwo => "descent-two-sided",
            CriterionId::DescentOne => "descent-one-sided",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub criterion: CriterionId,
    pub k: usize,
    pub n: usize,
    pub class: BanachClassSpec,
    /// worst sided expansion value over the surveyed link representatives
    pub lambda: f64,
    /// representative simplex attaining the worst value
    pub witness: Vec<u32>,
    /// the value compared against the threshold: the transferred tensor norm
    /// for the local criterion, the raw link value for descent
    pub measured: f64,
    pub threshold: f64,
    /// threshold - measured; certified requires it strictly positive
    pub margin: f64,
    pub certified: bool,
    pub conclusion: String,
    pub assumptions: Vec<String>,
    /// stable hash of the complex the certificate talks about
    pub fingerprint: String,
}

/// FNV-1a over the dimension and top simplices; stable across runs, used to
/// refuse mixing certificates from different complexes.
pub fn complex_fingerprint(complex: &SimplicialComplex) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    let n = complex.dim();
    eat(n as u64);
    for top in complex.faces(n) {
        for &v in top {
            eat(v as u64);
        }
        eat(u64::MAX);
    }
    format!("{h:016x}")
}

fn action_assumption(action: Option<&GroupAction>) -> String {
    match action {
        Some(a) => format!(
            "group action by simplicial automorphisms, order {}: machine-checked",
            a.order()
        ),
        None => "no group action supplied: surveyed all links, not just orbit representatives".into(),
    }
}

/// Direct criterion in degree k: the worst two-sided walk bound over the
/// (k-1)-link representatives, transferred through the class modulus, must
/// be strictly below 1/(k+1).
pub fn certify_local(
    complex: &SimplicialComplex,
    action: Option<&GroupAction>,
    k: usize,
    class: &BanachClassSpec,
) -> Result<Certificate> {
    let n = complex.dim();
    if k < 1 || k > n.saturating_sub(1) {
        return Err(Error::DegreeOutOfRange { k, n, reason: "local criterion needs 1 <= k <= n-1" });
    }
    let survey = min_link_profiles(complex, action, k - 1, Sided::Two)?;
    let lambda = survey.worst;
    let measured = tensor_norm_bound(lambda, &class.modulus);
    let threshold = 1.0 / (k + 1) as f64;
    let margin = threshold - measured;
    let certified = margin > MARGIN_GUARD;
    let conclusion = if certified {
        format!(
            "equivariant degree-{k} cohomology vanishes for every isometric representation on the class {}",
            class.label
        )
    } else {
        format!(
            "not certified: transferred bound {measured:.6} does not beat 1/(k+1) = {threshold:.6}"
        )
    };
    Ok(Certificate {
        criterion: CriterionId::Local,
        k,
        n,
        class: class.clone(),
        lambda,
        witness: survey.witness,
        measured,
        threshold,
        margin,
        certified,
        conclusion,
        assumptions: vec![
            format!("all ({}-1)-links have connected 1-skeletons: machine-checked", k),
            action_assumption(action),
        ],
        fingerprint: complex_fingerprint(complex),
    })
}

/// Descent criterion in degree k: only the links of (n-2)-simplices are
/// measured; their worst value must stay strictly below the degree-k local
/// threshold pulled back through the interval transfer,
/// lambda*/(1 + (n-k-1) lambda*). One-sided surveys apply only when
/// k <= n - 1/lambda*, since unmeasured lower spectra descend to -1/(n-k).
pub fn certify_descent(
    complex: &SimplicialComplex,
    action: Option<&GroupAction>,
    k: usize,
    class: &BanachClassSpec,
    sided: Sided,
) -> Result<Certificate> {
    let n = complex.dim();
    if k < 1 || k > n.saturating_sub(1) {
        return Err(Error::DegreeOutOfRange { k, n, reason: "descent criterion needs 1 <= k <= n-1" });
    }
    // Standing hypothesis: every link of dimension >= 1 is connected. The
    // deepest survey is kept; the others only run the connectivity check.
    let mut deepest = None;
    for j in 0..=n - 2 {
        let survey = min_link_profiles(complex, action, j, sided)?;
        if j == n - 2 {
            deepest = Some(survey);
        }
    }
    let survey = deepest.expect("loop covered j = n-2");
    let lambda_star = local_threshold(k, &class.modulus)?;
    let mut assumptions = vec![
        "all links of dimension >= 1 have connected 1-skeletons: machine-checked".into(),
        action_assumption(action),
    ];
    if sided == Sided::One {
        let bound = n as f64 - 1.0 / lambda_star;
        if (k as f64) > bound {
            return Err(Error::OneSidedInapplicable { k, bound });
        }
        assumptions.push(format!(
            "one-sided regime applicable: k = {k} <= n - 1/lambda* = {bound:.6}"
        ));
    }
    let mapped = lambda_star / (1.0 + (n - k - 1) as f64 * lambda_star);
    let measured = survey.worst;
    let margin = mapped - measured;
    let certified = margin > MARGIN_GUARD;
    let conclusion = if certified {
        format!(
            "deepest links beat the descended threshold; equivariant degree-{k} cohomology vanishes for the class {}",
            class.label
        )
    } else {
        format!(
            "not certified: worst deep-link value {measured:.6} does not beat the descended threshold {mapped:.6}"
        )
    };
    Ok(Certificate {
        criterion: match sided {
            Sided::Two => CriterionId::DescentTwo,
            Sided::One => CriterionId::DescentOne,
        },
        k,
        n,
        class: class.clone(),
        lambda: measured,
        witness: survey.witness,
        measured,
        threshold: mapped,
        margin,
        certified,
        conclusion,
        assumptions,
        fingerprint: complex_fingerprint(complex),
    })
}

/// The constant the coupling gate inherits from a local certificate: the
/// inequality |<phi,psi>| <= C (||phi||^2 + ||psi||^2)/2 + |<d phi, d psi>|
/// + |<d* phi, d* psi>| holds with C = (k+1) times the transferred bound.
pub fn nowak_gate_constant(k: usize, measured: f64) -> f64 {
    (k + 1) as f64 * measured
}

#[derive(Debug, Clone, Default)]
pub struct ConcludeFlags {
    /// the quotient space is aspherical: lifts equivariant vanishing to
    /// group cohomology; cannot be machine-checked here
    pub aspherical: bool,
}

#[derive(Debug, Clone)]
pub struct Conclusions {
    /// certified (degree, class label) pairs
    pub vanishing: Vec<(usize, String)>,
    /// p-interval with the fixed-point property for affine isometric
    /// actions on L^p, from a certified degree-1 power-class certificate
    pub fixed_point: Option<(f64, f64)>,
    /// p-interval of norm stability, from a certified degree-2 power-class
    /// certificate on an aspherical complex of dimension >= 3
    pub stability: Option<(f64, f64)>,
    /// conclusions hold at the group level, not just equivariantly
    pub group_level: bool,
    pub assumptions: Vec<String>,
}

fn power_theta(modulus: &CurveModulus) -> Option<f64> {
    match modulus {
        CurveModulus::Hilbert => Some(1.0),
        CurveModulus::Power { theta } => Some(*theta),
        CurveModulus::Table { .. } => None,
    }
}

/// Combine certificates over one complex into downstream statements.
pub fn conclude(certificates: &[Certificate], flags: &ConcludeFlags) -> Result<Conclusions> {
    if certificates.is_empty() {
        return Err(Error::EmptyInput("certificates"));
    }
    let fp = &certificates[0].fingerprint;
    for c in certificates {
        if &c.fingerprint != fp {
            return Err(Error::InconsistentInputs(format!(
                "fingerprints {} and {}",
                fp, c.fingerprint
            )));
        }
    }
    let mut vanishing = Vec::new();
    let mut fixed_point = None;
    let mut stability = None;
    let mut assumptions = Vec::new();
    for c in certificates {
        if !c.certified {
            continue;
        }
        vanishing.push((c.k, c.class.label.clone()));
        if c.k == 1 {
            if let Some(theta) = power_theta(&c.class.modulus) {
                let hi = 2.0 / theta;
                let cur = fixed_point.get_or_insert((2.0, hi));
                cur.1 = cur.1.max(hi);
            }
        }
        if c.k == 2 && flags.aspherical && c.n >= 3 {
            if let Some(theta0) = power_theta(&c.class.modulus) {
                let range = stability_p_range(theta0)?;
                let cur = stability.get_or_insert(range);
                cur.0 = cur.0.min(range.0);
                cur.1 = cur.1.max(range.1);
            }
        }
    }
    if fixed_point.is_some() {
        assumptions.push(
            "fixed-point conclusion assumes the complex is simply connected: user-asserted".into(),
        );
        assumptions.push(
            "a certified power class covers every class with a larger exponent theta".into(),
        );
    }
    if flags.aspherical {
        assumptions.push("aspherical quotient: user-asserted, lifts statements to the group".into());
    }
    let group_level = flags.aspherical && !vanishing.is_empty();
    Ok(Conclusions { vanishing, fixed_point, stability, group_level, assumptions })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_two_skeleton(v: u32) -> SimplicialComplex {
        let mut tops = Vec::new();
        for a in 0..v {
            for b in a + 1..v {
                for c in b + 1..v {
                    tops.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::from_top_sets(tops).unwrap()
    }

    fn octahedron() -> SimplicialComplex {
        SimplicialComplex::from_top_sets(vec![
            vec![0, 1, 2],
            vec![0, 1, 5],
            vec![0, 4, 2],
            vec![0, 4, 5],
            vec![3, 1, 2],
            vec![3, 1, 5],
            vec![3, 4, 2],
            vec![3, 4, 5],
        ])
        .unwrap()
    }

    fn simplex_boundary(v: u32) -> SimplicialComplex {
        let all: Vec<u32> = (0..v).collect();
        let tops: Vec<Vec<u32>> = (0..v as usize)
            .map(|skip| {
                all.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &x)| x).collect()
            })
            .collect();
        SimplicialComplex::from_top_sets(tops).unwrap()
    }

    #[test]
    fn complete_skeleton_certifies_k1() {
        let c = complete_two_skeleton(7);
        let cert = certify_local(&c, None, 1, &BanachClassSpec::hilbert()).unwrap();
        assert!(cert.certified);
        assert!((cert.lambda - 0.2).abs() < 1e-9);
        assert!((cert.measured - 0.2).abs() < 1e-9);
        assert_eq!(cert.threshold, 0.5);
        let cert = certify_local(&c, None, 1, &BanachClassSpec::power(1.0).unwrap()).unwrap();
        assert!(cert.certified);
        assert!((cert.measured - 0.4).abs() < 1e-9);
    }

    #[test]
    fn octahedron_fails_k1() {
        let cert = certify_local(&octahedron(), None, 1, &BanachClassSpec::hilbert()).unwrap();
        assert!(!cert.certified);
        assert!((cert.measured - 1.0).abs() < 1e-9);
        assert!(cert.margin < 0.0);
    }

    #[test]
    fn tie_is_not_certified() {
        // Boundary of the tetrahedron: vertex links are triangles with
        // two-sided value exactly 1/2, a tie against the k=1 threshold.
        let cert = certify_local(&simplex_boundary(4), None, 1, &BanachClassSpec::hilbert()).unwrap();
        assert!((cert.measured - 0.5).abs() < 1e-12);
        assert!(!cert.certified);
    }

    #[test]
    fn descent_on_simplex_boundary() {
        // Boundary of the 4-simplex: n = 3, edge links are triangles.
        let c = simplex_boundary(5);
        let hilbert = BanachClassSpec::hilbert();
        // One-sided: lambda* = 1/2, mapped = 1/3, worst one-sided = -1/2.
        let cert = certify_descent(&c, None, 1, &hilbert, Sided::One).unwrap();
        assert!((cert.threshold - 1.0 / 3.0).abs() < 1e-12);
        assert!((cert.measured + 0.5).abs() < 1e-9);
        assert!(cert.certified);
        // Two-sided: worst = 1/2 >= 1/3, not certified.
        let cert = certify_descent(&c, None, 1, &hilbert, Sided::Two).unwrap();
        assert!(!cert.certified);
        assert!((cert.measured - 0.5).abs() < 1e-9);
    }

    #[test]
    fn one_sided_inapplicable_for_small_threshold() {
        // power theta=1 at k=1: lambda* = 1/4, n - 1/lambda* = 3 - 4 < 1.
        let c = simplex_boundary(5);
        let class = BanachClassSpec::power(1.0).unwrap();
        assert!(matches!(
            certify_descent(&c, None, 1, &class, Sided::One),
            Err(Error::OneSidedInapplicable { .. })
        ));
    }

    #[test]
    fn descent_degenerates_to_local_threshold_at_top_degree() {
        // n = 2, k = 1: n-k-1 = 0, the mapped threshold equals lambda*.
        let c = complete_two_skeleton(7);
        let cert = certify_descent(&c, None, 1, &BanachClassSpec::hilbert(), Sided::Two).unwrap();
        assert_eq!(cert.threshold, 0.5);
        assert!(cert.certified);
    }

    #[test]
    fn conclusions_intervals_and_gating() {
        // Vertex links are K_10, two-sided 1/9; the power(2/3) transfer gives
        // 2*(1/9)^(2/3) which clears the 1/2 threshold (K_7 would not).
        let c = complete_two_skeleton(11);
        let cert = certify_local(&c, None, 1, &BanachClassSpec::power(2.0 / 3.0).unwrap()).unwrap();
        assert!(cert.certified, "measured {}", cert.measured);
        let conc = conclude(&[cert.clone()], &ConcludeFlags::default()).unwrap();
        let (lo, hi) = conc.fixed_point.unwrap();
        assert!((lo - 2.0).abs() < 1e-12 && (hi - 3.0).abs() < 1e-12);
        assert!(!conc.group_level);
        assert!(conc.stability.is_none());
        let conc = conclude(&[cert], &ConcludeFlags { aspherical: true }).unwrap();
        assert!(conc.group_level);
    }

    #[test]
    fn stability_interval_needs_aspherical_and_dimension() {
        // A 3-dimensional complex certifying k=2 under hilbert: the complete
        // 3-skeleton on 9 vertices has edge links K_7 with two-sided 1/6 and
        // triangle... the k=2 criterion surveys 1-links, threshold 1/3.
        let mut tops = Vec::new();
        for a in 0..9u32 {
            for b in a + 1..9 {
                for c in b + 1..9 {
                    for d in c + 1..9 {
                        tops.push(vec![a, b, c, d]);
                    }
                }
            }
        }
        let c = SimplicialComplex::from_top_sets(tops).unwrap();
        let cert = certify_local(&c, None, 2, &BanachClassSpec::hilbert()).unwrap();
        assert!(cert.certified, "measured {}", cert.measured);
        let conc = conclude(&[cert.clone()], &ConcludeFlags { aspherical: true }).unwrap();
        let (lo, hi) = conc.stability.unwrap();
        assert!((lo - 2.0).abs() < 1e-12 && (hi - 2.0).abs() < 1e-12);
        let conc = conclude(&[cert], &ConcludeFlags::default()).unwrap();
        assert!(conc.stability.is_none());
    }

    #[test]
    fn mixed_fingerprints_rejected() {
        let a = certify_local(&complete_two_skeleton(7), None, 1, &BanachClassSpec::hilbert()).unwrap();
        let b = certify_local(&octahedron(), None, 1, &BanachClassSpec::hilbert()).unwrap();
        assert!(matches!(
            conclude(&[a, b], &ConcludeFlags::default()),
            Err(Error::InconsistentInputs(_))
        ));
    }

    #[test]
    fn gate_constant_matches_certificate() {
        let c = complete_two_skeleton(7);
        let cert = certify_local(&c, None, 1, &BanachClassSpec::hilbert()).unwrap();
        assert!((nowak_gate_constant(cert.k, cert.measured) - 0.4).abs() < 1e-9);
    }
}

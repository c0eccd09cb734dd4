//! Random-walk spectra of weighted graphs and their use on links.
//!
//! The walk operator A is diagonalized through the symmetrized matrix
//! B[u][v] = m({u,v}) / sqrt(m(u) m(v)), which shares its spectrum. Every
//! reported spectrum is re-verified: eigenpair residuals, the trivial
//! eigenvalue at 1, and the combinatorial cross-checks (connectivity equals
//! multiplicity one at 1, bipartiteness equals an eigenvalue at -1).

use crate::action::{simplex_orbits, GroupAction};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::jacobi_eigen;

const RESIDUAL_TOL: f64 = 1e-9;
const FLAG_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct SpectralProfile {
    /// all eigenvalues of the walk operator, sorted descending
    pub eigenvalues: Vec<f64>,
    /// second largest eigenvalue (one copy of the trivial 1 excluded)
    pub lambda_one: f64,
    /// largest absolute value among nontrivial eigenvalues
    pub lambda_two: f64,
    pub connected: bool,
    pub bipartite: bool,
    /// multiplicity of the eigenvalue 1, up to tolerance
    pub trivial_multiplicity: usize,
}

pub fn spectrum(graph: &WeightedGraph) -> Result<SpectralProfile> {
    let b = graph.symmetrized_matrix();
    let eigen = jacobi_eigen(&b)?;
    let n = b.rows;

    let mut max_residual = 0.0f64;
    for (idx, &lam) in eigen.values.iter().enumerate() {
        let x: Vec<f64> = (0..n).map(|i| eigen.vectors[(i, idx)]).collect();
        let bx = b.mul_vec(&x);
        let res: f64 = bx
            .iter()
            .zip(&x)
            .map(|(a, v)| (a - lam * v) * (a - lam * v))
            .sum::<f64>()
            .sqrt();
        max_residual = max_residual.max(res);
    }
    if max_residual > RESIDUAL_TOL {
        return Err(Error::NumericalCheck {
            what: "eigenpair residual of symmetrized walk matrix".into(),
            residual: max_residual,
        });
    }

    let mut values = eigen.values;
    values.sort_by(|a, b| b.total_cmp(a));

    if values[0] > 1.0 + FLAG_TOL || values[n - 1] < -1.0 - FLAG_TOL {
        return Err(Error::NumericalCheck {
            what: "walk spectrum escapes [-1, 1]".into(),
            residual: values[0].max(-values[n - 1]) - 1.0,
        });
    }
    if (values[0] - 1.0).abs() > FLAG_TOL {
        return Err(Error::NumericalCheck {
            what: "trivial eigenvalue 1 missing from walk spectrum".into(),
            residual: (values[0] - 1.0).abs(),
        });
    }

    let connected = graph.is_connected();
    let bipartite = graph.is_bipartite();
    let trivial_multiplicity = values.iter().filter(|&&v| (v - 1.0).abs() <= FLAG_TOL).count();

    if connected != (trivial_multiplicity == 1) {
        return Err(Error::NumericalCheck {
            what: format!(
                "connectivity ({connected}) disagrees with multiplicity of eigenvalue 1 ({trivial_multiplicity})"
            ),
            residual: f64::NAN,
        });
    }
    let has_minus_one = (values[n - 1] + 1.0).abs() <= FLAG_TOL;
    if bipartite != has_minus_one {
        return Err(Error::NumericalCheck {
            what: format!("bipartiteness ({bipartite}) disagrees with eigenvalue -1 ({has_minus_one})"),
            residual: f64::NAN,
        });
    }

    let lambda_one = values[1];
    let lambda_two = values[1].abs().max(values[n - 1].abs());

    Ok(SpectralProfile {
        eigenvalues: values,
        lambda_one,
        lambda_two,
        connected,
        bipartite,
        trivial_multiplicity,
    })
}

/// The least lambda for which the graph is a one-/two-sided lambda-spectral
/// expander: one-sided bounds the spectrum above by lambda (trivial
/// eigenvalue excluded), two-sided bounds it in absolute value, equivalently
/// the operator norm of A(I - M).
#[derive(Debug, Clone)]
pub struct ExpanderProfile {
    pub one_sided: f64,
    pub two_sided: f64,
    pub profile: SpectralProfile,
}

pub fn expander_profile(graph: &WeightedGraph) -> Result<ExpanderProfile> {
    let profile = spectrum(graph)?;
    if !profile.connected {
        return Err(Error::Disconnected);
    }
    Ok(ExpanderProfile {
        one_sided: profile.lambda_one,
        two_sided: profile.lambda_two,
        profile,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentInterval {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescentDirection {
    /// from link bounds [kappa1, kappa2] to skeleton bounds
    Forward,
    /// from desired skeleton bounds [lambda1, lambda2] to link requirements
    Inverse,
}

/// Interval transfer of the spectral descent: a pure l-dimensional complex
/// with connected links whose codimension-2 link walks have nontrivial
/// spectra in [kappa1, kappa2] has its 1-skeleton walk spectrum inside
/// [kappa1/(1-(l-1)kappa1), kappa2/(1-(l-1)kappa2)] union {1}, and the
/// inverse map recovers the link requirement from a skeleton target.
pub fn descent_map(
    interval: DescentInterval,
    l: usize,
    direction: DescentDirection,
) -> Result<DescentInterval> {
    if l < 2 {
        return Err(Error::OutOfRange(format!("descent needs dimension l >= 2, got {l}")));
    }
    let (lo, hi) = (interval.lo, interval.hi);
    let lm1 = (l - 1) as f64;
    const EPS: f64 = 1e-12;
    match direction {
        DescentDirection::Forward => {
            if !(-1.0 - EPS..=EPS).contains(&lo) || !(-EPS..=1.0 / l as f64 + EPS).contains(&hi) {
                return Err(Error::OutOfRange(format!(
                    "forward descent needs -1 <= lo <= 0 <= hi <= 1/{l}, got [{lo}, {hi}]"
                )));
            }
            Ok(DescentInterval { lo: lo / (1.0 - lm1 * lo), hi: hi / (1.0 - lm1 * hi) })
        }
        DescentDirection::Inverse => {
            if !(-1.0 - EPS..=EPS).contains(&lo) || !(-EPS..=1.0 + EPS).contains(&hi) {
                return Err(Error::OutOfRange(format!(
                    "inverse descent needs -1 <= lo <= 0 <= hi <= 1, got [{lo}, {hi}]"
                )));
            }
            // The lower requirement degenerates to -1 when the denominator
            // vanishes: every walk spectrum is bounded below by -1 anyway.
            let denom = 1.0 + lm1 * lo;
            let mapped_lo = if denom <= 0.0 { -1.0 } else { (lo / denom).max(-1.0) };
            Ok(DescentInterval { lo: mapped_lo, hi: hi / (1.0 + lm1 * hi) })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sided {
    One,
    Two,
}

#[derive(Debug, Clone)]
pub struct LinkProfile {
    /// orbit representative whose link was measured
    pub tau: Vec<u32>,
    /// expansion value in the requested sidedness
    pub value: f64,
    pub profile: SpectralProfile,
}

#[derive(Debug, Clone)]
pub struct LinkSurvey {
    pub j: usize,
    pub sided: Sided,
    pub links: Vec<LinkProfile>,
    /// worst (largest) expansion value over all representatives
    pub worst: f64,
    /// representative attaining the worst value
    pub witness: Vec<u32>,
}

/// Survey the links of all j-simplices (orbit representatives when an action
/// is given). Every surveyed link must have a connected 1-skeleton.
pub fn min_link_profiles(
    complex: &SimplicialComplex,
    action: Option<&GroupAction>,
    j: usize,
    sided: Sided,
) -> Result<LinkSurvey> {
    let n = complex.dim();
    if n < 1 || j > n - 2 {
        return Err(Error::DegreeOutOfRange {
            k: j,
            n,
            reason: "links of j-simplices must have dimension >= 1, so j <= n-2",
        });
    }
    let reps: Vec<Vec<u32>> = match action {
        Some(a) => {
            a.validate_on(complex)?;
            simplex_orbits(complex, a, j)?.into_iter().map(|o| o.rep).collect()
        }
        None => complex.faces(j).to_vec(),
    };
    let mut links = Vec::with_capacity(reps.len());
    for tau in reps {
        let link = complex.link(&tau)?;
        let graph = link.skeleton_graph()?;
        if !graph.is_connected() {
            return Err(Error::DisconnectedLink { simplex: tau });
        }
        let ep = expander_profile(&graph)?;
        let value = match sided {
            Sided::One => ep.one_sided,
            Sided::Two => ep.two_sided,
        };
        links.push(LinkProfile { tau, value, profile: ep.profile });
    }
    let (wi, worst) = links
        .iter()
        .enumerate()
        .map(|(i, l)| (i, l.value))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one link");
    Ok(LinkSurvey { j, sided, witness: links[wi].tau.clone(), worst, links })
}

//! Randomized numerical verification of the operator identities the
//! certification route rests on. Each check samples random compatible
//! cochains, evaluates both sides of an identity literally, and reports the
//! worst normalized residual over the trials.
//!
//! Equalities use the residual |lhs - rhs| / (1 + |lhs| + |rhs|); one-sided
//! bounds use the positive part of the excess with the same normalization,
//! so a passing report means "no violation beyond roundoff" rather than
//! "sharp".

use crate::cochain::{Cochain, CochainSpace, Localized, Side};
use crate::error::{Error, Result};
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Identity {
    /// (k+1)! <phi, psi> equals the stabilizer-weighted sum of localized
    /// couplings over the (k-1)-transversal.
    NormLocalization,
    /// <d*phi, d*psi> equals the localized sum with the link averaging
    /// projector applied, scaled by 1/k!.
    DstarLocalization,
    /// <d phi, d psi> equals <phi, psi> minus the localized sum with the
    /// link random walk applied, scaled by 1/k!.
    Garland,
    /// d(d phi) = 0.
    DdZero,
    /// ||d phi|| <= sqrt(k+2) ||phi||.
    DBound,
    /// <d phi, psi> = <phi, d* psi> for psi of degree k+1.
    Adjointness,
    /// The duality partner satisfies ||phi*|| = ||phi|| and
    /// <phi, phi*> = ||phi||^2.
    Duality,
    /// |<phi, psi>| <= c (||phi||^2 + ||psi||^2)/2 + |<d phi, d psi>|
    ///                + |<d* phi, d* psi>|.
    Nowak { c: f64 },
}

impl Identity {
    pub fn name(&self) -> &'static str {
        match self {
            Identity::NormLocalization => "norm-localization",
            Identity::DstarLocalization => "codifferential-localization",
            Identity::Garland => "garland",
            Identity::DdZero => "dd-zero",
            Identity::DBound => "differential-bound",
            Identity::Adjointness => "adjointness",
            Identity::Duality => "duality",
            Identity::Nowak { .. } => "contraction-gate",
        }
    }

    fn tag(&self) -> u64 {
        match self {
            Identity::NormLocalization => 1,
            Identity::DstarLocalization => 2,
            Identity::Garland => 3,
            Identity::DdZero => 4,
            Identity::DBound => 5,
            Identity::Adjointness => 6,
            Identity::Duality => 7,
            Identity::Nowak { .. } => 8,
        }
    }

    /// Inclusive degree range on a complex of dimension n, or None when the
    /// complex is too small to state the identity at all.
    pub fn degree_range(&self, n: usize) -> Option<(usize, usize)> {
        let r = match self {
            Identity::NormLocalization | Identity::DstarLocalization => (1, n),
            Identity::Garland | Identity::Nowak { .. } => {
                if n < 2 {
                    return None;
                }
                (1, n - 1)
            }
            Identity::DdZero => {
                if n < 2 {
                    return None;
                }
                (0, n - 2)
            }
            Identity::DBound | Identity::Adjointness => {
                if n < 1 {
                    return None;
                }
                (0, n - 1)
            }
            Identity::Duality => (0, n),
        };
        Some(r)
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub identity: Identity,
    pub degree: usize,
    pub trials: usize,
    /// trials where a sampled cochain was identically zero because every
    /// orbit subspace is degenerate
    pub zero_trials: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn residual(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / (1.0 + lhs.abs() + rhs.abs())
}

fn excess(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).max(0.0) / (1.0 + lhs.abs() + rhs.abs())
}

/// Stabilizer-weighted sum of localized couplings over the ordered
/// (k-1)-transversal, with a transform applied to the localized phi.
fn localized_sum<F>(space: &CochainSpace, phi: &Cochain, psi: &Cochain, transform: F) -> Result<f64>
where
    F: Fn(&Localized) -> Result<Localized>,
{
    let k = phi.degree;
    let data = space.degree_data(k - 1);
    let mut total = 0.0;
    for (oi, tau) in &data.ordered_reps {
        let stab = data.orbits[*oi].pointwise_size as f64;
        let lphi = transform(&space.localize(phi, tau)?)?;
        let lpsi = space.localize(psi, tau)?;
        total += space.local_couple(&lphi, &lpsi)? / stab;
    }
    Ok(total)
}

fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Run one identity at a fixed degree over the given number of random
/// trials. Each trial draws a fresh primal/dual cochain pair from a seed
/// derived off the base seed, so reports are reproducible.
pub fn verify_identity(
    space: &CochainSpace,
    identity: Identity,
    k: usize,
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<VerificationReport> {
    let n = space.complex().dim();
    let range = identity.degree_range(n).ok_or(Error::UnsupportedDegree {
        k,
        n,
        reason: "complex dimension too small for this identity",
    })?;
    if k < range.0 || k > range.1 {
        return Err(Error::UnsupportedDegree {
            k,
            n,
            reason: match identity {
                Identity::NormLocalization | Identity::DstarLocalization => {
                    "localization identities need 1 <= k <= n"
                }
                Identity::Garland | Identity::Nowak { .. } => {
                    "link identities need 1 <= k <= n-1"
                }
                Identity::DdZero => "d.d needs k <= n-2",
                Identity::DBound | Identity::Adjointness => "differential needs k <= n-1",
                Identity::Duality => "degree exceeds the complex dimension",
            },
        });
    }
    if trials == 0 {
        return Err(Error::OutOfRange("trial count must be >= 1".into()));
    }
    if let Identity::Nowak { c } = identity {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::OutOfRange(format!("contraction gate constant must be positive, got {c}")));
        }
    }
    let base = Rng::new(seed);
    let mut max_residual: f64 = 0.0;
    let mut zero_trials = 0;
    for t in 0..trials {
        let mut sub = base.derive(&[identity.tag(), k as u64, t as u64]);
        let phi_seed = sub.next_u64();
        let psi_seed = sub.next_u64();
        let (phi, _) = space.random_cochain(k, Side::Primal, phi_seed)?;
        let r = match identity {
            Identity::NormLocalization => {
                let (psi, _) = space.random_cochain(k, Side::Dual, psi_seed)?;
                if phi.is_zero() || psi.is_zero() {
                    zero_trials += 1;
                }
                let lhs = factorial_f64(k + 1) * space.couple(&phi, &psi)?;
                let rhs = localized_sum(space, &phi, &psi, |l| Ok(l.clone()))?;
                residual(lhs, rhs)
            }
            Identity::DstarLocalization => {
                let (psi, _) = space.random_cochain(k, Side::Dual, psi_seed)?;
                if phi.is_zero() || psi.is_zero() {
                    zero_trials += 1;
                }
                let lhs = space.couple(&space.codifferential(&phi)?, &space.codifferential(&psi)?)?;
                let rhs = localized_sum(space, &phi, &psi, |l| space.apply_local_averaging(l))?
                    / factorial_f64(k);
                residual(lhs, rhs)
            }
            Identity::Garland => {
                let (psi, _) = space.random_cochain(k, Side::Dual, psi_seed)?;
                if phi.is_zero() || psi.is_zero() {
                    zero_trials += 1;
                }
                let lhs = space.couple(&space.differential(&phi)?, &space.differential(&psi)?)?;
                let walked = localized_sum(space, &phi, &psi, |l| space.apply_local_walk(l))?
                    / factorial_f64(k);
                let rhs = space.couple(&phi, &psi)? - walked;
                residual(lhs, rhs)
            }
            Identity::DdZero => {
                if phi.is_zero() {
                    zero_trials += 1;
                }
                let dd = space.differential(&space.differential(&phi)?)?;
                space.norm(&dd)? / (1.0 + space.norm(&phi)?)
            }
            Identity::DBound => {
                if phi.is_zero() {
                    zero_trials += 1;
                }
                let lhs = space.norm(&space.differential(&phi)?)?;
                let rhs = ((k + 2) as f64).sqrt() * space.norm(&phi)?;
                excess(lhs, rhs)
            }
            Identity::Adjointness => {
                let (psi, _) = space.random_cochain(k + 1, Side::Dual, psi_seed)?;
                if phi.is_zero() || psi.is_zero() {
                    zero_trials += 1;
                }
                let lhs = space.couple(&space.differential(&phi)?, &psi)?;
                let rhs = space.couple(&phi, &space.codifferential(&psi)?)?;
                residual(lhs, rhs)
            }
            Identity::Duality => {
                if phi.is_zero() {
                    zero_trials += 1;
                }
                let star = space.duality_partner(&phi)?;
                let n2 = space.norm_sq(&phi)?;
                let r1 = residual(space.norm_sq(&star)?, n2);
                let r2 = residual(space.couple(&phi, &star)?, n2);
                r1.max(r2)
            }
            Identity::Nowak { c } => {
                let (psi, _) = space.random_cochain(k, Side::Dual, psi_seed)?;
                if phi.is_zero() || psi.is_zero() {
                    zero_trials += 1;
                }
                let lhs = space.couple(&phi, &psi)?.abs();
                let smooth = c * (space.norm_sq(&phi)? + space.norm_sq(&psi)?) / 2.0;
                let high = space
                    .couple(&space.differential(&phi)?, &space.differential(&psi)?)?
                    .abs();
                let low = space
                    .couple(&space.codifferential(&phi)?, &space.codifferential(&psi)?)?
                    .abs();
                excess(lhs, smooth + high + low)
            }
        };
        max_residual = max_residual.max(r);
    }
    Ok(VerificationReport {
        identity,
        degree: k,
        trials,
        zero_trials,
        max_residual,
        tolerance,
        pass: max_residual <= tolerance,
    })
}

/// Run every identity valid at the given degree. Inequality gates that need
/// an external constant are omitted; certification supplies its own.
pub fn verify_all(
    space: &CochainSpace,
    k: usize,
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<Vec<VerificationReport>> {
    let n = space.complex().dim();
    let all = [
        Identity::NormLocalization,
        Identity::DstarLocalization,
        Identity::Garland,
        Identity::DdZero,
        Identity::DBound,
        Identity::Adjointness,
        Identity::Duality,
    ];
    let mut out = Vec::new();
    for id in all {
        let Some((lo, hi)) = id.degree_range(n) else { continue };
        if k < lo || k > hi {
            continue;
        }
        out.push(verify_identity(space, id, k, trials, seed, tolerance)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::GroupAction;
    use crate::coeff::CoefficientSpace;
    use crate::complex::SimplicialComplex;

    fn tetrahedron_space() -> CochainSpace {
        let c = SimplicialComplex::build(&[vec![0, 1, 2, 3]]).unwrap();
        let a = GroupAction::trivial(4);
        let coeff = CoefficientSpace::trivial(&a, 1, 2.0).unwrap();
        CochainSpace::new(c, a, coeff).unwrap()
    }

    #[test]
    fn all_identities_hold_on_the_solid_tetrahedron() {
        let space = tetrahedron_space();
        for k in 1..=2 {
            for report in verify_all(&space, k, 5, 42, 1e-9).unwrap() {
                assert!(
                    report.pass,
                    "{} fails at k={k}: residual {:.3e}",
                    report.identity.name(),
                    report.max_residual
                );
            }
        }
    }

    #[test]
    fn garland_identity_with_symmetry_and_sign_coefficients() {
        let c = SimplicialComplex::build(&[vec![0, 1, 2, 3]]).unwrap();
        let a = GroupAction::from_generators(4, vec![vec![1, 0, 2, 3], vec![1, 2, 0, 3]]).unwrap();
        let coeff = CoefficientSpace::sign_rep(&a, 2.0).unwrap();
        let space = CochainSpace::new(c, a, coeff).unwrap();
        let report = verify_identity(&space, Identity::Garland, 1, 8, 7, 1e-9).unwrap();
        assert!(report.pass, "residual {:.3e}", report.max_residual);
        let report = verify_identity(&space, Identity::NormLocalization, 2, 8, 7, 1e-9).unwrap();
        assert!(report.pass, "residual {:.3e}", report.max_residual);
    }

    #[test]
    fn p3_coefficients_still_satisfy_the_equalities() {
        let c = SimplicialComplex::build(&[vec![0, 1, 2, 3]]).unwrap();
        let a = GroupAction::from_generators(4, vec![vec![1, 2, 0, 3]]).unwrap();
        let coeff = CoefficientSpace::sign_rep(&a, 3.0).unwrap();
        let space = CochainSpace::new(c, a, coeff).unwrap();
        for id in [
            Identity::NormLocalization,
            Identity::Garland,
            Identity::Adjointness,
            Identity::Duality,
        ] {
            let report = verify_identity(&space, id, 1, 6, 11, 1e-9).unwrap();
            assert!(report.pass, "{} residual {:.3e}", id.name(), report.max_residual);
        }
    }

    #[test]
    fn degree_guards_reject_out_of_range_requests() {
        let space = tetrahedron_space();
        assert!(matches!(
            verify_identity(&space, Identity::Garland, 0, 1, 1, 1e-9),
            Err(Error::UnsupportedDegree { .. })
        ));
        assert!(matches!(
            verify_identity(&space, Identity::Garland, 3, 1, 1, 1e-9),
            Err(Error::UnsupportedDegree { .. })
        ));
        assert!(matches!(
            verify_identity(&space, Identity::DdZero, 2, 1, 1, 1e-9),
            Err(Error::UnsupportedDegree { .. })
        ));
    }

    #[test]
    fn contraction_gate_holds_with_a_generous_constant_and_fails_scaled() {
        // On the solid tetrahedron the vertex links are triangles with
        // two-sided spectral bound 1/2, so the gate constant from the local
        // data certifies degree 1 with room to spare at c = 0.9.
        let space = tetrahedron_space();
        let report =
            verify_identity(&space, Identity::Nowak { c: 0.9 }, 1, 10, 5, 1e-9).unwrap();
        assert!(report.pass, "violation {:.3e}", report.max_residual);
    }
}

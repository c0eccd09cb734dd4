//! Norm-compatibility moduli for Banach coefficient classes and the
//! thresholds they induce.
//!
//! A modulus alpha maps a scalar contraction bound delta to a bound on the
//! same operator tensored with the identity of any space in the class:
//! power moduli alpha(t) = t^theta cover the theta-Hilbertian spaces (with
//! L^p corresponding to theta = 2/p for p >= 2 and 2 - 2/p below), the
//! hilbert modulus is the identity, and table moduli interpolate sampled
//! values. The walk operator A(I - M) tensored with any identity has norm
//! at most 2, so every transferred bound is capped there.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum CurveModulus {
    Hilbert,
    Power { theta: f64 },
    /// strictly increasing samples (t, alpha(t)) with t and alpha in (0, 1]
    Table { points: Vec<(f64, f64)> },
}

impl CurveModulus {
    pub fn power(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta <= 1.0) {
            return Err(Error::OutOfRange(format!("power modulus needs theta in (0,1], got {theta}")));
        }
        Ok(CurveModulus::Power { theta })
    }

    pub fn table(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("table modulus needs at least one sample"));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(Error::OutOfRange(format!(
                    "table modulus samples must be strictly increasing, got {:?} then {:?}",
                    w[0], w[1]
                )));
            }
        }
        for &(t, a) in &points {
            if !(t > 0.0 && t <= 1.0 && a > 0.0 && a <= 1.0) {
                return Err(Error::OutOfRange(format!(
                    "table modulus samples must lie in (0,1] x (0,1], got ({t}, {a})"
                )));
            }
        }
        Ok(CurveModulus::Table { points })
    }

    pub fn label(&self) -> String {
        match self {
            CurveModulus::Hilbert => "hilbert".into(),
            CurveModulus::Power { theta } => format!("power(theta={theta})"),
            CurveModulus::Table { points } => format!("table({} samples)", points.len()),
        }
    }

    /// Evaluate alpha(t) for t in [0, 1]. Table moduli interpolate linearly
    /// and are clamped to their end samples outside the sampled range.
    pub fn alpha(&self, t: f64) -> f64 {
        match self {
            CurveModulus::Hilbert => t,
            CurveModulus::Power { theta } => {
                if *theta == 1.0 {
                    t
                } else if t == 0.0 {
                    0.0
                } else {
                    t.powf(*theta)
                }
            }
            CurveModulus::Table { points } => {
                let first = points[0];
                let last = points[points.len() - 1];
                if t <= first.0 {
                    return first.1;
                }
                if t >= last.0 {
                    return last.1;
                }
                for w in points.windows(2) {
                    let (t0, a0) = w[0];
                    let (t1, a1) = w[1];
                    if t <= t1 {
                        return a0 + (a1 - a0) * (t - t0) / (t1 - t0);
                    }
                }
                last.1
            }
        }
    }

    /// Inverse of alpha at target, by closed form or bisection to 1e-12.
    pub fn alpha_inverse(&self, target: f64) -> Result<f64> {
        match self {
            CurveModulus::Hilbert => Ok(target),
            CurveModulus::Power { theta } => {
                if *theta == 1.0 {
                    Ok(target)
                } else {
                    Ok(target.powf(1.0 / theta))
                }
            }
            CurveModulus::Table { points } => {
                let first = points[0];
                let last = points[points.len() - 1];
                if target < first.1 {
                    return Err(Error::UnreachableThreshold { target, min_alpha: first.1 });
                }
                if target >= last.1 {
                    return Ok(last.0);
                }
                let (mut lo, mut hi) = (first.0, last.0);
                while hi - lo > 1e-12 {
                    let mid = 0.5 * (lo + hi);
                    if self.alpha(mid) < target {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                Ok(0.5 * (lo + hi))
            }
        }
    }
}

/// A named Banach coefficient class: the label is free-form, the modulus
/// carries the mathematics.
#[derive(Debug, Clone)]
pub struct BanachClassSpec {
    pub label: String,
    pub modulus: CurveModulus,
}

impl BanachClassSpec {
    pub fn hilbert() -> Self {
        BanachClassSpec { label: "hilbert".into(), modulus: CurveModulus::Hilbert }
    }

    pub fn power(theta: f64) -> Result<Self> {
        Ok(BanachClassSpec {
            label: format!("power(theta={theta})"),
            modulus: CurveModulus::power(theta)?,
        })
    }
}

/// theta for which L^p is theta-Hilbertian: 2/p at or above 2, 2 - 2/p
/// between 1 and 2.
pub fn theta_of_p(p: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::OutOfRange(format!("theta_of_p needs p in (1, inf), got {p}")));
    }
    if p >= 2.0 {
        Ok(2.0 / p)
    } else {
        Ok(2.0 - 2.0 / p)
    }
}

/// Norm of the walk operator tensored with the identity of a class member,
/// from the scalar two-sided bound lambda. The hilbert modulus transfers
/// lambda unchanged; curved classes pay the factor 2, capped by the
/// unconditional bound 2.
pub fn tensor_norm_bound(lambda: f64, modulus: &CurveModulus) -> f64 {
    let l = lambda.clamp(0.0, 1.0);
    match modulus {
        CurveModulus::Hilbert => l,
        _ => (2.0 * modulus.alpha(l)).min(2.0),
    }
}

/// Bound for a delta-contraction that is L-bounded on every Banach space.
pub fn l_contractive_bound(l: f64, delta: f64, modulus: &CurveModulus) -> Result<f64> {
    if l < 1.0 {
        return Err(Error::OutOfRange(format!("l_contractive_bound needs L >= 1, got {l}")));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::OutOfRange(format!("l_contractive_bound needs delta in (0,1], got {delta}")));
    }
    Ok(l * modulus.alpha(delta))
}

/// The largest two-sided link bound that still certifies vanishing in
/// degree k over the class: alpha_inverse(1/(2(k+1))), with the hilbert
/// modulus needing no factor 2.
pub fn local_threshold(k: usize, modulus: &CurveModulus) -> Result<f64> {
    if k == 0 {
        return Err(Error::OutOfRange("local_threshold needs k >= 1".into()));
    }
    let kf = (k + 1) as f64;
    match modulus {
        CurveModulus::Hilbert => Ok(1.0 / kf),
        _ => modulus.alpha_inverse(1.0 / (2.0 * kf)),
    }
}

/// Largest p >= 2 for which a two-sided link bound lambda certifies in
/// degree k over L^p, i.e. 2 ln(1/lambda) / ln(2(k+1)); None when even
/// p = 2 fails.
pub fn p_max_for_lambda(lambda: f64, k: usize) -> Result<Option<f64>> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::OutOfRange(format!("p_max_for_lambda needs lambda in (0,1), got {lambda}")));
    }
    if k == 0 {
        return Err(Error::OutOfRange("p_max_for_lambda needs k >= 1".into()));
    }
    let p = 2.0 * (1.0 / lambda).ln() / (2.0 * (k + 1) as f64).ln();
    Ok(if p >= 2.0 { Some(p) } else { None })
}

/// The p-interval on which degree-2 vanishing over the theta0 power class
/// yields p-norm stability: [1 + theta0/(2 - theta0), 2/theta0].
pub fn stability_p_range(theta0: f64) -> Result<(f64, f64)> {
    if !(theta0 > 0.0 && theta0 <= 1.0) {
        return Err(Error::OutOfRange(format!("stability_p_range needs theta0 in (0,1], got {theta0}")));
    }
    Ok((1.0 + theta0 / (2.0 - theta0), 2.0 / theta0))
}

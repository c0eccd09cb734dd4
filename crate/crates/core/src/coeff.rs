//! Finite-dimensional l^p coefficient spaces carrying an isometric linear
//! action of the vertex group.
//!
//! A space is R^d with the l^p norm and one matrix per group element. For
//! p = 2 any orthogonal representation is isometric; for p != 2 the linear
//! isometries of l^p are exactly the signed permutation matrices, and the
//! constructor enforces that shape. The dual space is R^d with the conjugate
//! exponent q = p/(p-1) and the dual action g -> pi(g^{-1})^T, so the
//! coordinate pairing is invariant.

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

const REP_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct CoefficientSpace {
    pub d: usize,
    pub p: f64,
    rep: Vec<Matrix>,
}

impl CoefficientSpace {
    /// d-dimensional space with the action given element by element.
    /// Validates the homomorphism property on all pairs and the l^p isometry
    /// of every matrix.
    pub fn from_matrices(action: &GroupAction, d: usize, p: f64, rep: Vec<Matrix>) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::OutOfRange(format!("coefficient exponent p must be in (1, inf), got {p}")));
        }
        if d == 0 {
            return Err(Error::OutOfRange("coefficient dimension d must be >= 1".into()));
        }
        if rep.len() != action.order() {
            return Err(Error::InvalidRepresentation(format!(
                "expected {} matrices, got {}",
                action.order(),
                rep.len()
            )));
        }
        for (i, m) in rep.iter().enumerate() {
            if m.rows != d || m.cols != d {
                return Err(Error::InvalidRepresentation(format!(
                    "matrix for element {i} is {}x{}, expected {d}x{d}",
                    m.rows, m.cols
                )));
            }
        }
        let id = Matrix::identity(d);
        if rep[action.identity()].max_abs_diff(&id) > REP_TOL {
            return Err(Error::InvalidRepresentation("identity element must act as the identity".into()));
        }
        for g in 0..action.order() {
            for h in 0..action.order() {
                let gh = action.compose(g, h);
                let prod = rep[g].mul(&rep[h]);
                let err = prod.max_abs_diff(&rep[gh]);
                if err > REP_TOL {
                    return Err(Error::InvalidRepresentation(format!(
                        "homomorphism fails at pair ({g}, {h}): residual {err:.3e}"
                    )));
                }
            }
        }
        for (i, m) in rep.iter().enumerate() {
            if (p - 2.0).abs() < 1e-15 {
                let err = m.transpose().mul(m).max_abs_diff(&id);
                if err > REP_TOL {
                    return Err(Error::InvalidRepresentation(format!(
                        "element {i} is not an l^2 isometry: residual {err:.3e}"
                    )));
                }
            } else if !is_signed_permutation(m) {
                return Err(Error::InvalidRepresentation(format!(
                    "element {i} is not a signed permutation; these are the only l^p isometries for p != 2"
                )));
            }
        }
        Ok(CoefficientSpace { d, p, rep })
    }

    /// Trivial action on R^d.
    pub fn trivial(action: &GroupAction, d: usize, p: f64) -> Result<Self> {
        let rep = vec![Matrix::identity(d); action.order()];
        Self::from_matrices(action, d, p, rep)
    }

    /// One-dimensional action by the sign of the vertex permutation.
    pub fn sign_rep(action: &GroupAction, p: f64) -> Result<Self> {
        let rep = (0..action.order())
            .map(|g| {
                let mut m = Matrix::zeros(1, 1);
                m[(0, 0)] = action.parity(g);
                m
            })
            .collect();
        Self::from_matrices(action, 1, p, rep)
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.rep[g]
    }

    /// Conjugate exponent.
    pub fn q(&self) -> f64 {
        self.p / (self.p - 1.0)
    }

    /// The dual space: conjugate exponent, action g -> pi(g^{-1})^T.
    pub fn dual(&self, action: &GroupAction) -> CoefficientSpace {
        let rep = (0..action.order())
            .map(|g| self.rep[action.inverse(g)].transpose())
            .collect();
        CoefficientSpace { d: self.d, p: self.q(), rep }
    }
}

fn is_signed_permutation(m: &Matrix) -> bool {
    let n = m.rows;
    let mut col_used = vec![false; n];
    for i in 0..n {
        let mut hit = None;
        for j in 0..n {
            let v = m[(i, j)].abs();
            if (v - 1.0).abs() <= REP_TOL {
                if hit.is_some() {
                    return false;
                }
                hit = Some(j);
            } else if v > REP_TOL {
                return false;
            }
        }
        match hit {
            Some(j) if !col_used[j] => col_used[j] = true,
            _ => return false,
        }
    }
    true
}

pub fn lp_norm(x: &[f64], p: f64) -> f64 {
    if (p - 2.0).abs() < 1e-15 {
        x.iter().map(|v| v * v).sum::<f64>().sqrt()
    } else {
        x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Coordinate pairing between a space and its dual.
pub fn pairing(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// The normalized duality partner of x in l^p: the functional of norm
/// ||x||_p pairing with x to ||x||_p^2. Coordinatewise
/// sign(x_i) |x_i|^{p-1} ||x||_p^{2-p}; the identity map when p = 2.
pub fn duality_vec(x: &[f64], p: f64) -> Vec<f64> {
    if (p - 2.0).abs() < 1e-15 {
        return x.to_vec();
    }
    let np = lp_norm(x, p);
    if np == 0.0 {
        return vec![0.0; x.len()];
    }
    let scale = np.powf(2.0 - p);
    x.iter()
        .map(|&v| if v == 0.0 { 0.0 } else { v.signum() * v.abs().powf(p - 1.0) * scale })
        .collect()
}

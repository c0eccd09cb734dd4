//! Equivariant alternating cochains with Banach coefficients, and the
//! operators of the weighted calculus: differential, codifferential,
//! couplings, norms, duality partners, and localization to links.
//!
//! A cochain of degree k stores one coefficient vector per orbit of
//! unordered k-simplices, namely the value at the sorted orbit
//! representative. Values at every other ordered simplex follow from
//! equivariance and alternation:
//!
//!   phi(g . sigma) = pi(g) phi(sigma),   phi(sigma . gamma) = sgn(gamma) phi(sigma).
//!
//! A stored value must be compatible with the setwise stabilizer of its
//! representative; the projector onto the compatible subspace is the signed
//! average of the stabilizer action and is applied when sampling and checked
//! when importing values.
//!
//! Sums over "ordered simplices modulo the action" run literally over the
//! materialized transversal rather than over collapsed orbit weights. That
//! keeps every formula in its stated shape and exercises the evaluation path
//! the identities quantify over; the complexes this crate targets are small
//! enough that the redundancy is cheap.

use std::collections::HashMap;

use crate::action::{orbit_data, permutation_sign_u8, GroupAction, OrbitData};
use crate::coeff::{duality_vec, lp_norm, pairing, CoefficientSpace};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::Rng;

/// Relative tolerance for the subspace-membership checks run after each
/// operator application.
const MEMBERSHIP_TOL: f64 = 1e-8;
/// Below this l2 mass a projected sample counts as a zero subspace.
const ZERO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// coefficients in E with the representation pi
    Primal,
    /// coefficients in the dual space with pi-bar
    Dual,
}

impl Side {
    fn tag(self) -> u64 {
        match self {
            Side::Primal => 0,
            Side::Dual => 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Cochain {
    pub degree: usize,
    pub side: Side,
    /// value at the sorted representative of each orbit, orbit order
    pub values: Vec<Vec<f64>>,
}

impl Cochain {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|&x| x == 0.0))
    }
}

/// A cochain restricted to the link of an ordered simplex tau:
/// v -> phi(v tau) on the link vertices, with the link vertex weights.
#[derive(Debug, Clone)]
pub struct Localized {
    pub tau: Vec<u32>,
    pub side: Side,
    /// link vertices, ascending
    pub vertices: Vec<u32>,
    /// m(v tau), aligned with vertices
    pub weights: Vec<f64>,
    /// m(tau) = sum of the vertex weights
    pub weight_tau: f64,
    /// phi(v tau), aligned with vertices
    pub values: Vec<Vec<f64>>,
}

struct CachedLink {
    vertices: Vec<u32>,
    weights: Vec<f64>,
    weight_tau: f64,
    /// random-walk matrix of the link skeleton; None when the link is
    /// zero-dimensional
    walk: Option<Matrix>,
}

/// The full cochain complex: spaces C^k for 0 <= k <= n on both sides,
/// with precomputed orbit transversals, stabilizer projectors, and link data.
pub struct CochainSpace {
    complex: SimplicialComplex,
    action: GroupAction,
    primal: CoefficientSpace,
    dual: CoefficientSpace,
    degrees: Vec<OrbitData>,
    primal_proj: Vec<Vec<Matrix>>,
    dual_proj: Vec<Vec<Matrix>>,
    links: HashMap<Vec<u32>, CachedLink>,
}

impl CochainSpace {
    pub fn new(
        complex: SimplicialComplex,
        action: GroupAction,
        coefficients: CoefficientSpace,
    ) -> Result<Self> {
        action.validate_on(&complex)?;
        let dual = coefficients.dual(&action);
        let n = complex.dim();
        let mut degrees = Vec::with_capacity(n + 1);
        for k in 0..=n {
            degrees.push(orbit_data(&complex, &action, k)?);
        }
        let mut primal_proj = Vec::with_capacity(n + 1);
        let mut dual_proj = Vec::with_capacity(n + 1);
        for data in &degrees {
            let mut row_p = Vec::with_capacity(data.orbits.len());
            let mut row_d = Vec::with_capacity(data.orbits.len());
            for orbit in &data.orbits {
                row_p.push(signed_average(&coefficients, &orbit.stab_even, &orbit.stab_odd)?);
                row_d.push(signed_average(&dual, &orbit.stab_even, &orbit.stab_odd)?);
            }
            primal_proj.push(row_p);
            dual_proj.push(row_d);
        }
        let mut links = HashMap::new();
        for k in 0..n {
            for tau in complex.faces(k) {
                links.insert(tau.clone(), build_link(&complex, tau)?);
            }
        }
        Ok(CochainSpace { complex, action, primal: coefficients, dual, degrees, primal_proj, dual_proj, links })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn coefficients(&self, side: Side) -> &CoefficientSpace {
        match side {
            Side::Primal => &self.primal,
            Side::Dual => &self.dual,
        }
    }

    pub fn degree_data(&self, k: usize) -> &OrbitData {
        &self.degrees[k]
    }

    pub fn projector(&self, side: Side, k: usize, orbit: usize) -> &Matrix {
        match side {
            Side::Primal => &self.primal_proj[k][orbit],
            Side::Dual => &self.dual_proj[k][orbit],
        }
    }

    fn check_degree(&self, k: usize) -> Result<()> {
        let n = self.complex.dim();
        if k > n {
            return Err(Error::DegreeOutOfRange { k, n, reason: "no simplices above the complex dimension" });
        }
        Ok(())
    }

    pub fn zero_cochain(&self, k: usize, side: Side) -> Result<Cochain> {
        self.check_degree(k)?;
        let d = self.coefficients(side).d;
        let values = vec![vec![0.0; d]; self.degrees[k].orbits.len()];
        Ok(Cochain { degree: k, side, values })
    }

    /// Sample a random cochain: one standard normal vector per orbit,
    /// projected onto the stabilizer-compatible subspace. Returns the orbit
    /// indices whose subspace is zero (their values are forced to zero).
    pub fn random_cochain(&self, k: usize, side: Side, seed: u64) -> Result<(Cochain, Vec<usize>)> {
        self.check_degree(k)?;
        let d = self.coefficients(side).d;
        let mut values = Vec::with_capacity(self.degrees[k].orbits.len());
        let mut forced = Vec::new();
        let base = Rng::new(seed);
        for oi in 0..self.degrees[k].orbits.len() {
            let mut rng = base.derive(&[side.tag(), k as u64, oi as u64]);
            let x: Vec<f64> = (0..d).map(|_| rng.next_normal()).collect();
            let mut v = self.projector(side, k, oi).mul_vec(&x);
            if lp_norm(&v, 2.0) < ZERO_TOL {
                v = vec![0.0; d];
                forced.push(oi);
            }
            values.push(v);
        }
        Ok((Cochain { degree: k, side, values }, forced))
    }

    /// Like random_cochain, but an all-zero result is an error.
    pub fn random_nonzero_cochain(&self, k: usize, side: Side, seed: u64) -> Result<Cochain> {
        let (c, _) = self.random_cochain(k, side, seed)?;
        if c.is_zero() {
            return Err(Error::DegenerateSubspace);
        }
        Ok(c)
    }

    /// Import raw per-orbit values, checking stabilizer compatibility.
    pub fn from_values(&self, k: usize, side: Side, values: Vec<Vec<f64>>) -> Result<Cochain> {
        self.check_degree(k)?;
        let d = self.coefficients(side).d;
        if values.len() != self.degrees[k].orbits.len() {
            return Err(Error::OutOfRange(format!(
                "expected {} orbit values at degree {k}, got {}",
                self.degrees[k].orbits.len(),
                values.len()
            )));
        }
        for (oi, v) in values.iter().enumerate() {
            if v.len() != d {
                return Err(Error::OutOfRange(format!(
                    "value for orbit {oi} has dimension {}, coefficient space has {d}",
                    v.len()
                )));
            }
            self.check_membership(side, k, oi, v)?;
        }
        Ok(Cochain { degree: k, side, values })
    }

    fn check_membership(&self, side: Side, k: usize, orbit: usize, v: &[f64]) -> Result<()> {
        let pv = self.projector(side, k, orbit).mul_vec(v);
        let scale = 1.0 + lp_norm(v, 2.0);
        let dev = pv
            .iter()
            .zip(v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        if dev > MEMBERSHIP_TOL * scale {
            return Err(Error::NumericalCheck {
                what: format!("stabilizer compatibility of the value on orbit {orbit} at degree {k}"),
                residual: dev / scale,
            });
        }
        Ok(())
    }

    /// Value at an arbitrary ordered simplex, via the transporter to the
    /// orbit representative and the sign of the residual reordering.
    pub fn eval(&self, c: &Cochain, tuple: &[u32]) -> Result<Vec<f64>> {
        if tuple.is_empty() {
            return Err(Error::EmptyInput("ordered simplex"));
        }
        if tuple.len() != c.degree + 1 {
            return Err(Error::DegreeMismatch(c.degree, tuple.len() - 1));
        }
        let mut sorted = tuple.to_vec();
        sorted.sort_unstable();
        let &(oi, g) = self.degrees[c.degree]
            .locate
            .get(&sorted)
            .ok_or_else(|| Error::NotASimplex { simplex: sorted.clone() })?;
        let rep = &self.degrees[c.degree].orbits[oi].rep;
        // tuple = g . (rep reordered by gamma); undo g, then read gamma off
        // the positions in rep.
        let pre = self.action.apply_tuple(self.action.inverse(g), tuple);
        let gamma: Vec<u8> = pre
            .iter()
            .map(|&v| rep.iter().position(|&x| x == v).unwrap() as u8)
            .collect();
        let sign = permutation_sign_u8(&gamma);
        let mat = self.coefficients(c.side).matrix(g);
        let mut out = mat.mul_vec(&c.values[oi]);
        if sign < 0.0 {
            for x in &mut out {
                *x = -*x;
            }
        }
        Ok(out)
    }

    /// Simplicial differential: (d phi)(sigma) = sum_i (-1)^i phi(sigma_i).
    pub fn differential(&self, c: &Cochain) -> Result<Cochain> {
        let k = c.degree;
        if k >= self.complex.dim() {
            return Err(Error::TopDegree(k));
        }
        let data = &self.degrees[k + 1];
        let d = self.coefficients(c.side).d;
        let mut values = Vec::with_capacity(data.orbits.len());
        for (oi, orbit) in data.orbits.iter().enumerate() {
            let mut acc = vec![0.0; d];
            for i in 0..=k + 1 {
                let mut face: Vec<u32> = orbit.rep.clone();
                face.remove(i);
                let term = self.eval(c, &face)?;
                let s = if i % 2 == 0 { 1.0 } else { -1.0 };
                for (a, t) in acc.iter_mut().zip(&term) {
                    *a += s * t;
                }
            }
            self.check_membership(c.side, k + 1, oi, &acc)?;
            values.push(acc);
        }
        Ok(Cochain { degree: k + 1, side: c.side, values })
    }

    /// Weighted codifferential, the adjoint of the differential on the other
    /// side: (d* psi)(tau) = sum_v m(v tau)/m(tau) psi(v tau).
    pub fn codifferential(&self, c: &Cochain) -> Result<Cochain> {
        let k1 = c.degree;
        if k1 == 0 {
            return Err(Error::DegreeOutOfRange {
                k: 0,
                n: self.complex.dim(),
                reason: "codifferential needs degree >= 1",
            });
        }
        let k = k1 - 1;
        let data = &self.degrees[k];
        let d = self.coefficients(c.side).d;
        let mut values = Vec::with_capacity(data.orbits.len());
        for (oi, orbit) in data.orbits.iter().enumerate() {
            let cached = &self.links[&orbit.rep];
            let mut acc = vec![0.0; d];
            let mut tuple = Vec::with_capacity(k + 2);
            for (vi, &v) in cached.vertices.iter().enumerate() {
                tuple.clear();
                tuple.push(v);
                tuple.extend_from_slice(&orbit.rep);
                let term = self.eval(c, &tuple)?;
                let w = cached.weights[vi] / cached.weight_tau;
                for (a, t) in acc.iter_mut().zip(&term) {
                    *a += w * t;
                }
            }
            self.check_membership(c.side, k, oi, &acc)?;
            values.push(acc);
        }
        Ok(Cochain { degree: k, side: c.side, values })
    }

    /// Invariant coupling of a primal and a dual cochain of the same degree:
    /// sum over the ordered transversal of m(sigma)/((k+1)! |stab|) times the
    /// coordinate pairing of the two values.
    pub fn couple(&self, phi: &Cochain, psi: &Cochain) -> Result<f64> {
        if phi.degree != psi.degree {
            return Err(Error::DegreeMismatch(phi.degree, psi.degree));
        }
        if phi.side != Side::Primal || psi.side != Side::Dual {
            return Err(Error::OutOfRange(
                "coupling takes a primal cochain first and a dual cochain second".into(),
            ));
        }
        let k = phi.degree;
        let data = &self.degrees[k];
        let kfact = factorial_f64(k + 1);
        let mut total = 0.0;
        for (oi, tuple) in &data.ordered_reps {
            let orbit = &data.orbits[*oi];
            let m = self.complex.weight(&orbit.rep)? as f64;
            let a = self.eval(phi, tuple)?;
            let b = self.eval(psi, tuple)?;
            total += m / (kfact * orbit.pointwise_size as f64) * pairing(&a, &b);
        }
        Ok(total)
    }

    /// Squared norm: the coupling-shaped sum with the coefficient norm of the
    /// value in place of the pairing.
    pub fn norm_sq(&self, c: &Cochain) -> Result<f64> {
        let p = self.coefficients(c.side).p;
        let k = c.degree;
        let data = &self.degrees[k];
        let kfact = factorial_f64(k + 1);
        let mut total = 0.0;
        for (oi, tuple) in &data.ordered_reps {
            let orbit = &data.orbits[*oi];
            let m = self.complex.weight(&orbit.rep)? as f64;
            let nv = lp_norm(&self.eval(c, tuple)?, p);
            total += m / (kfact * orbit.pointwise_size as f64) * nv * nv;
        }
        Ok(total)
    }

    pub fn norm(&self, c: &Cochain) -> Result<f64> {
        Ok(self.norm_sq(c)?.sqrt())
    }

    /// Duality partner of a primal cochain: the coordinatewise l^p duality
    /// map applied per orbit, projected onto the dual compatible subspace.
    /// For the signed-permutation representations this crate admits at
    /// p != 2 the duality map is already equivariant and the projection is
    /// a no-op up to roundoff; the membership check enforces that.
    pub fn duality_partner(&self, phi: &Cochain) -> Result<Cochain> {
        if phi.side != Side::Primal {
            return Err(Error::OutOfRange("duality partner is defined for primal cochains".into()));
        }
        let p = self.primal.p;
        let k = phi.degree;
        let mut values = Vec::with_capacity(phi.values.len());
        for (oi, v) in phi.values.iter().enumerate() {
            let raw = duality_vec(v, p);
            let proj = self.projector(Side::Dual, k, oi).mul_vec(&raw);
            let scale = 1.0 + lp_norm(&raw, 2.0);
            let dev = proj
                .iter()
                .zip(&raw)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            if dev > MEMBERSHIP_TOL * scale {
                return Err(Error::NumericalCheck {
                    what: format!("equivariance of the duality partner on orbit {oi} at degree {k}"),
                    residual: dev / scale,
                });
            }
            values.push(proj);
        }
        Ok(Cochain { degree: k, side: Side::Dual, values })
    }

    /// Restrict a degree-k cochain to the link of the ordered (k-1)-simplex
    /// tau: the map v -> phi(v tau) on link vertices.
    pub fn localize(&self, c: &Cochain, tau: &[u32]) -> Result<Localized> {
        let k = c.degree;
        if k == 0 {
            return Err(Error::DegreeOutOfRange {
                k: 0,
                n: self.complex.dim(),
                reason: "localization needs degree >= 1",
            });
        }
        if tau.is_empty() {
            return Err(Error::EmptyInput("localization simplex"));
        }
        if tau.len() != k {
            return Err(Error::DegreeMismatch(k - 1, tau.len() - 1));
        }
        let mut sorted = tau.to_vec();
        sorted.sort_unstable();
        let cached = self
            .links
            .get(&sorted)
            .ok_or_else(|| Error::NotASimplex { simplex: sorted.clone() })?;
        let mut values = Vec::with_capacity(cached.vertices.len());
        let mut tuple = Vec::with_capacity(k + 1);
        for &v in &cached.vertices {
            tuple.clear();
            tuple.push(v);
            tuple.extend_from_slice(tau);
            values.push(self.eval(c, &tuple)?);
        }
        Ok(Localized {
            tau: tau.to_vec(),
            side: c.side,
            vertices: cached.vertices.clone(),
            weights: cached.weights.clone(),
            weight_tau: cached.weight_tau,
            values,
        })
    }

    /// Weighted inner product on the link: sum_v m(v tau) (a(v), b(v)).
    pub fn local_couple(&self, a: &Localized, b: &Localized) -> Result<f64> {
        if a.tau != b.tau {
            return Err(Error::InconsistentInputs(format!(
                "localizations at {:?} and {:?}",
                a.tau, b.tau
            )));
        }
        let mut total = 0.0;
        for ((w, x), y) in a.weights.iter().zip(&a.values).zip(&b.values) {
            total += w * pairing(x, y);
        }
        Ok(total)
    }

    /// Apply the link random walk to a localized cochain, coordinatewise in
    /// the coefficients.
    pub fn apply_local_walk(&self, loc: &Localized) -> Result<Localized> {
        let mut sorted = loc.tau.clone();
        sorted.sort_unstable();
        let cached = &self.links[&sorted];
        let walk = cached.walk.as_ref().ok_or(Error::DimensionZero)?;
        let mut out = loc.clone();
        for (vi, val) in out.values.iter_mut().enumerate() {
            for x in val.iter_mut() {
                *x = 0.0;
            }
            for (ui, uval) in loc.values.iter().enumerate() {
                let a = walk[(vi, ui)];
                if a != 0.0 {
                    for (o, u) in val.iter_mut().zip(uval) {
                        *o += a * u;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Apply the averaging projector on the link: every vertex value becomes
    /// the weighted mean sum_v m(v tau) phi(v) / m(tau).
    pub fn apply_local_averaging(&self, loc: &Localized) -> Result<Localized> {
        let d = loc.values.first().map(|v| v.len()).unwrap_or(0);
        let mut mean = vec![0.0; d];
        for (w, val) in loc.weights.iter().zip(&loc.values) {
            for (m, x) in mean.iter_mut().zip(val) {
                *m += w * x;
            }
        }
        for m in &mut mean {
            *m /= loc.weight_tau;
        }
        let mut out = loc.clone();
        for val in &mut out.values {
            val.clone_from(&mean);
        }
        Ok(out)
    }
}

fn signed_average(space: &CoefficientSpace, even: &[usize], odd: &[usize]) -> Result<Matrix> {
    let d = space.d;
    let mut acc = Matrix::zeros(d, d);
    for &g in even {
        let m = space.matrix(g);
        for i in 0..d {
            for j in 0..d {
                acc[(i, j)] += m[(i, j)];
            }
        }
    }
    for &g in odd {
        let m = space.matrix(g);
        for i in 0..d {
            for j in 0..d {
                acc[(i, j)] -= m[(i, j)];
            }
        }
    }
    let total = (even.len() + odd.len()) as f64;
    for i in 0..d {
        for j in 0..d {
            acc[(i, j)] /= total;
        }
    }
    let idem = acc.mul(&acc).max_abs_diff(&acc);
    if idem > 1e-10 {
        return Err(Error::NumericalCheck {
            what: "stabilizer projector idempotence".into(),
            residual: idem,
        });
    }
    Ok(acc)
}

fn build_link(complex: &SimplicialComplex, tau: &[u32]) -> Result<CachedLink> {
    let link = complex.link(tau)?;
    let vertices = link.vertex_ids();
    let weights: Vec<f64> = vertices
        .iter()
        .map(|&v| link.weight(&[v]).map(|w| w as f64))
        .collect::<Result<_>>()?;
    let weight_tau = complex.weight(tau)? as f64;
    debug_assert_eq!(weights.iter().sum::<f64>(), weight_tau);
    let walk = if link.dim() >= 1 {
        let graph = link.skeleton_graph()?;
        debug_assert_eq!(graph.vertices(), &vertices[..]);
        Some(graph.random_walk_matrix())
    } else {
        None
    };
    Ok(CachedLink { vertices, weights, weight_tau, walk })
}

fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

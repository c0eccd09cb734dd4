//! Exact eigenvalue brackets for small rational matrices.
//!
//! The characteristic polynomial is computed with the Faddeev-LeVerrier
//! recurrence in BigRational arithmetic, split into squarefree factors by
//! Yun's algorithm so multiplicities come out exactly, and the real roots of
//! each factor are isolated with Sturm sequences and narrowed by bisection.
//! Everything stays rational until the final interval is converted, so the
//! brackets are certificates, not estimates.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// One real eigenvalue: a rational bracket of width below the requested
/// tolerance, together with its algebraic multiplicity.
#[derive(Debug, Clone)]
pub struct EigenvalueBracket {
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: usize,
}

impl EigenvalueBracket {
    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        rational_to_f64(&mid)
    }

    pub fn contains_f64(&self, x: f64, slack: f64) -> bool {
        let lo = rational_to_f64(&self.lo) - slack;
        let hi = rational_to_f64(&self.hi) + slack;
        lo <= x && x <= hi
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    // Scale down in tandem to stay inside f64 range for large rationals.
    let nb = numer.bits().max(denom.bits());
    if nb <= 52 {
        let n: f64 = numer.to_string().parse().unwrap();
        let d: f64 = denom.to_string().parse().unwrap();
        return n / d;
    }
    let shift = nb - 52;
    let n = numer >> shift;
    let d = denom >> shift;
    let nf: f64 = n.to_string().parse().unwrap();
    let df: f64 = d.to_string().parse().unwrap();
    nf / df
}

/// Dense rational matrix, row major.
#[derive(Debug, Clone)]
pub struct RationalMatrix {
    pub n: usize,
    pub data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn from_f64_grid(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            for &x in r {
                data.push(BigRational::from_float(x).expect("finite entry"));
            }
        }
        RationalMatrix { n, data }
    }

    pub fn from_rationals(n: usize, data: Vec<BigRational>) -> Self {
        assert_eq!(data.len(), n * n);
        RationalMatrix { n, data }
    }

    fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        let n = self.n;
        let mut data = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        data[i * n + j] += a * b;
                    }
                }
            }
        }
        RationalMatrix { n, data }
    }

    fn trace(&self) -> BigRational {
        (0..self.n).map(|i| self.at(i, i).clone()).sum()
    }

    fn add_scalar_diag(&mut self, c: &BigRational) {
        let n = self.n;
        for i in 0..n {
            self.data[i * n + i] += c;
        }
    }
}

/// Coefficients of the characteristic polynomial det(xI - A), highest degree
/// first: x^n + c[1] x^{n-1} + ... + c[n].
pub fn char_poly(m: &RationalMatrix) -> Vec<BigRational> {
    let n = m.n;
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[0] = BigRational::one();
    // Faddeev-LeVerrier: M_1 = A, c_k = -tr(M_k)/k, M_{k+1} = A (M_k + c_k I).
    let mut mk = m.clone();
    for k in 1..=n {
        let ck = -mk.trace() / BigRational::from_integer(BigInt::from(k as i64));
        coeffs[k] = ck.clone();
        if k < n {
            mk.add_scalar_diag(&ck);
            mk = m.mul(&mk);
        }
    }
    coeffs
}

// Polynomials are coefficient vectors, highest degree first, no leading zero.

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
    }
    p
}

fn poly_degree(p: &[BigRational]) -> usize {
    p.len() - 1
}

fn poly_is_zero(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn poly_derivative(p: &[BigRational]) -> Vec<BigRational> {
    let d = poly_degree(p);
    if d == 0 {
        return vec![BigRational::zero()];
    }
    p[..d]
        .iter()
        .enumerate()
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from((d - i) as i64)))
        .collect()
}

fn poly_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p {
        acc = acc * x + c;
    }
    acc
}

/// Remainder of a by b (b nonzero). Subtracting factor * b aligned at the
/// leading coefficient kills the lead of r each round.
fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = poly_degree(b);
    let mut r = a.to_vec();
    while !poly_is_zero(&r) && poly_degree(&r) >= db {
        let factor = &r[0] / &b[0];
        for i in 0..=db {
            let sub = &factor * &b[i];
            r[i] -= sub;
        }
        r = poly_trim(r);
        if poly_is_zero(&r) {
            break;
        }
    }
    r
}

fn poly_div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    // Long division, asserting zero remainder.
    let db = poly_degree(b);
    let mut r = a.to_vec();
    let mut q = vec![BigRational::zero(); poly_degree(a).saturating_sub(db) + 1];
    while !poly_is_zero(&r) && poly_degree(&r) >= db {
        let dr = poly_degree(&r);
        let factor = &r[0] / &b[0];
        let qi = q.len() - (dr - db) - 1;
        q[qi] = factor.clone();
        for i in 0..=db {
            let sub = &factor * &b[i];
            r[i] -= sub;
        }
        r = poly_trim(r);
    }
    assert!(poly_is_zero(&r), "division was not exact");
    q
}

fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = poly_trim(a.to_vec());
    let mut y = poly_trim(b.to_vec());
    while !poly_is_zero(&y) {
        let r = poly_rem(&x, &y);
        x = y;
        y = poly_trim(r);
        if poly_degree(&y) == 0 && !y[0].is_zero() {
            x = vec![BigRational::one()];
            break;
        }
    }
    // normalize monic
    if !x[0].is_zero() && !x[0].is_one() {
        let lead = x[0].clone();
        for c in &mut x {
            *c /= lead.clone();
        }
    }
    x
}

/// Yun's squarefree decomposition: returns (factor, multiplicity) pairs with
/// squarefree factors and distinct multiplicities covering p.
pub fn squarefree_decomposition(p: &[BigRational]) -> Vec<(Vec<BigRational>, usize)> {
    let p = poly_trim(p.to_vec());
    if poly_degree(&p) == 0 {
        return Vec::new();
    }
    let dp = poly_derivative(&p);
    let g = poly_gcd(&p, &dp);
    if poly_degree(&g) == 0 {
        return vec![(p, 1)];
    }
    let mut out = Vec::new();
    let mut w = poly_div_exact(&p, &g);
    let mut y = poly_div_exact(&dp, &g);
    let mut i = 1;
    loop {
        // z = y - w'
        let dw = poly_derivative(&w);
        let mut z = vec![BigRational::zero(); y.len().max(dw.len())];
        let off_y = z.len() - y.len();
        for (idx, c) in y.iter().enumerate() {
            z[off_y + idx] += c;
        }
        let off_dw = z.len() - dw.len();
        for (idx, c) in dw.iter().enumerate() {
            z[off_dw + idx] -= c;
        }
        let z = poly_trim(z);
        if poly_is_zero(&z) {
            if poly_degree(&w) > 0 {
                out.push((w, i));
            }
            break;
        }
        let f = poly_gcd(&w, &z);
        if poly_degree(&f) > 0 {
            out.push((f.clone(), i));
        }
        w = poly_div_exact(&w, &f);
        y = poly_div_exact(&z, &f);
        i += 1;
        if poly_degree(&w) == 0 {
            break;
        }
    }
    out
}

fn sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain of a squarefree polynomial.
fn sturm_chain(p: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut chain = vec![poly_trim(p.to_vec()), poly_derivative(p)];
    loop {
        let last = &chain[chain.len() - 1];
        if poly_is_zero(last) || poly_degree(last) == 0 {
            break;
        }
        let prev = &chain[chain.len() - 2];
        let mut r = poly_rem(prev, last);
        for c in &mut r {
            *c = -c.clone();
        }
        let r = poly_trim(r);
        if poly_is_zero(&r) {
            break;
        }
        chain.push(r);
    }
    chain
}

fn sign_changes(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for p in chain {
        let s = sign(&poly_eval(p, x));
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Number of roots of the (squarefree) chain polynomial in (lo, hi].
fn roots_in(chain: &[Vec<BigRational>], lo: &BigRational, hi: &BigRational) -> usize {
    sign_changes(chain, lo) - sign_changes(chain, hi)
}

/// Cauchy bound on root magnitude: 1 + max |c_i| for a monic polynomial.
fn root_bound(p: &[BigRational]) -> BigRational {
    let lead = p[0].clone();
    let mut m = BigRational::zero();
    for c in &p[1..] {
        let a = (c / &lead).abs();
        if a > m {
            m = a;
        }
    }
    m + BigRational::one()
}

/// All real eigenvalues of the matrix as exact rational brackets of width
/// at most `width`, sorted ascending, with algebraic multiplicities.
pub fn rational_eigenvalues(m: &RationalMatrix, width: f64) -> Vec<EigenvalueBracket> {
    let poly = char_poly(m);
    let width = BigRational::from_float(width).expect("finite width");
    let mut out: Vec<EigenvalueBracket> = Vec::new();
    for (factor, mult) in squarefree_decomposition(&poly) {
        let chain = sturm_chain(&factor);
        let bound = root_bound(&factor);
        let mut stack = vec![(-bound.clone(), bound.clone())];
        while let Some((lo, hi)) = stack.pop() {
            let count = roots_in(&chain, &lo, &hi);
            if count == 0 {
                continue;
            }
            let gap = &hi - &lo;
            if count == 1 && gap <= width {
                // Half-open bracket (lo, hi]; keep as closed interval, it
                // still has the stated width.
                out.push(EigenvalueBracket { lo, hi, multiplicity: mult });
                continue;
            }
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            // A root can sit exactly on mid; the half-open convention
            // (lo, mid], (mid, hi] keeps the counts additive.
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Convenience entry: eigenvalue brackets of a matrix given as f64 rows,
/// treated exactly (each f64 is a rational).
pub fn eigenvalues_of_f64(rows: &[Vec<f64>], width: f64) -> Vec<EigenvalueBracket> {
    rational_eigenvalues(&RationalMatrix::from_f64_grid(rows), width)
}

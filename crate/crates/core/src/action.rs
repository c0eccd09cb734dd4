//! Finite group actions on complexes by vertex permutations, and the orbit
//! bookkeeping the equivariant cochain calculus runs on.
//!
//! For each dimension k we record, per orbit of unordered k-simplices:
//! the lex-smallest representative, a transporter from the representative to
//! every member, the setwise stabilizer split by the sign of the induced
//! position permutation, the pointwise stabilizer order, and a transversal of
//! orderings of the representative modulo the induced permutations. The
//! transversal realizes the representative set of ordered simplices modulo
//! the action; the sorted representatives alone realize the smaller set of
//! representatives modulo action and reordering together.

use std::collections::{BTreeMap, HashMap, HashSet};

use itertools::Itertools;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

const CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct GroupAction {
    degree: u32,
    generators: Vec<Vec<u32>>,
    elements: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    inverse: Vec<usize>,
}

impl GroupAction {
    pub fn trivial(degree: u32) -> Self {
        let id: Vec<u32> = (0..degree).collect();
        let mut index = HashMap::new();
        index.insert(id.clone(), 0);
        GroupAction { degree, generators: Vec::new(), elements: vec![id], index, inverse: vec![0] }
    }

    /// Close the generator set under composition. Elements are discovered by
    /// breadth-first products in generator order, so indexing is stable.
    pub fn from_generators(degree: u32, generators: Vec<Vec<u32>>) -> Result<Self> {
        for g in &generators {
            if !is_permutation(g, degree) {
                return Err(Error::InvalidPermutation(g.clone(), degree));
            }
        }
        let id: Vec<u32> = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut cursor = 0;
        while cursor < elements.len() {
            for g in &generators {
                let prod = compose(&elements[cursor], g);
                if !index.contains_key(&prod) {
                    if elements.len() >= CLOSURE_CAP {
                        return Err(Error::GroupClosureOverflow(CLOSURE_CAP));
                    }
                    index.insert(prod.clone(), elements.len());
                    elements.push(prod);
                }
            }
            cursor += 1;
        }
        let inverse = elements
            .iter()
            .map(|e| {
                let mut inv = vec![0u32; degree as usize];
                for (x, &y) in e.iter().enumerate() {
                    inv[y as usize] = x as u32;
                }
                index[&inv]
            })
            .collect();
        Ok(GroupAction { degree, generators, elements, index, inverse })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &[u32] {
        &self.elements[i]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Index of g*h, the element acting as "h first, then g".
    pub fn compose(&self, g: usize, h: usize) -> usize {
        self.index[&compose(&self.elements[g], &self.elements[h])]
    }

    #[inline]
    pub fn apply_vertex(&self, g: usize, v: u32) -> u32 {
        self.elements[g][v as usize]
    }

    /// Image of an ordered tuple, componentwise.
    pub fn apply_tuple(&self, g: usize, tuple: &[u32]) -> Vec<u32> {
        tuple.iter().map(|&v| self.apply_vertex(g, v)).collect()
    }

    /// Image of an unordered simplex, re-sorted.
    pub fn apply_simplex(&self, g: usize, simplex: &[u32]) -> Vec<u32> {
        let mut img = self.apply_tuple(g, simplex);
        img.sort_unstable();
        img
    }

    /// Sign of the element as a permutation of all vertices.
    pub fn parity(&self, g: usize) -> f64 {
        permutation_sign_u32(&self.elements[g])
    }

    /// Check the action is by simplicial automorphisms of the given complex.
    /// Generators suffice: automorphisms form a group.
    pub fn validate_on(&self, complex: &SimplicialComplex) -> Result<()> {
        let v = complex.face_count(0) as u32;
        if self.degree != v {
            return Err(Error::OutOfRange(format!(
                "action on {} vertices applied to a complex with {} vertices",
                self.degree, v
            )));
        }
        let n = complex.dim();
        for g in &self.generators {
            let gi = self.index[g];
            for top in complex.faces(n) {
                let img = self.apply_simplex(gi, top);
                if !complex.contains(&img) {
                    return Err(Error::NonSimplicialAction {
                        generator: g.clone(),
                        simplex: top.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

fn is_permutation(p: &[u32], degree: u32) -> bool {
    if p.len() != degree as usize {
        return false;
    }
    let mut seen = vec![false; degree as usize];
    for &x in p {
        if x >= degree || seen[x as usize] {
            return false;
        }
        seen[x as usize] = true;
    }
    true
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    // apply b first, then a
    b.iter().map(|&x| a[x as usize]).collect()
}

fn permutation_sign_u32(p: &[u32]) -> f64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1.0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

pub fn permutation_sign_u8(p: &[u8]) -> f64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1.0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// One orbit of unordered k-simplices under the action.
#[derive(Debug, Clone)]
pub struct SimplexOrbit {
    /// lex-smallest member, sorted
    pub rep: Vec<u32>,
    /// every member (sorted simplices), in lex order
    pub members: Vec<Vec<u32>>,
    /// transporters[i] maps rep onto members[i] as a set
    pub transporters: Vec<usize>,
    /// setwise stabilizer elements whose induced position permutation is even
    pub stab_even: Vec<usize>,
    /// ... and odd
    pub stab_odd: Vec<usize>,
    /// order of the pointwise stabilizer
    pub pointwise_size: usize,
    /// distinct induced position permutations of the setwise stabilizer
    pub induced: Vec<Vec<u8>>,
}

impl SimplexOrbit {
    pub fn setwise_size(&self) -> usize {
        self.stab_even.len() + self.stab_odd.len()
    }
}

/// Orbit decomposition of the k-simplices, with ordered-representative data.
#[derive(Debug, Clone)]
pub struct OrbitData {
    pub k: usize,
    pub orbits: Vec<SimplexOrbit>,
    /// representatives of ordered simplices modulo action and reordering:
    /// the sorted representative of each orbit
    pub prime_reps: Vec<Vec<u32>>,
    /// representatives of ordered simplices modulo the action only:
    /// (orbit index, ordered tuple), grouped by orbit
    pub ordered_reps: Vec<(usize, Vec<u32>)>,
    /// sorted simplex -> (orbit index, transporter element index)
    pub locate: HashMap<Vec<u32>, (usize, usize)>,
}

pub fn simplex_orbits(
    complex: &SimplicialComplex,
    action: &GroupAction,
    k: usize,
) -> Result<Vec<SimplexOrbit>> {
    if k > complex.dim() {
        return Err(Error::OutOfRange(format!(
            "orbit data requested at k={k} on a complex of dimension {}",
            complex.dim()
        )));
    }
    let mut visited: HashSet<Vec<u32>> = HashSet::new();
    let mut orbits = Vec::new();
    for f in complex.faces(k) {
        if visited.contains(f) {
            continue;
        }
        let mut member_map: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for gi in 0..action.order() {
            let img = action.apply_simplex(gi, f);
            member_map.entry(img).or_insert(gi);
        }
        let mut stab_even = Vec::new();
        let mut stab_odd = Vec::new();
        let mut pointwise = 0usize;
        let mut induced_set: Vec<Vec<u8>> = Vec::new();
        for gi in 0..action.order() {
            if action.apply_simplex(gi, f) != *f {
                continue;
            }
            // position permutation gamma with g(f_i) = f_{gamma(i)}
            let gamma: Vec<u8> = f
                .iter()
                .map(|&v| {
                    let img = action.apply_vertex(gi, v);
                    f.iter().position(|&x| x == img).unwrap() as u8
                })
                .collect();
            if gamma.iter().enumerate().all(|(i, &x)| i == x as usize) {
                pointwise += 1;
            }
            if permutation_sign_u8(&gamma) > 0.0 {
                stab_even.push(gi);
            } else {
                stab_odd.push(gi);
            }
            if !induced_set.contains(&gamma) {
                induced_set.push(gamma);
            }
        }
        let members: Vec<Vec<u32>> = member_map.keys().cloned().collect();
        let transporters: Vec<usize> = member_map.values().copied().collect();
        for m in &members {
            visited.insert(m.clone());
        }
        let orbit = SimplexOrbit {
            rep: f.clone(),
            members,
            transporters,
            stab_even,
            stab_odd,
            pointwise_size: pointwise,
            induced: induced_set,
        };
        debug_assert_eq!(orbit.members.len() * orbit.setwise_size(), action.order());
        debug_assert_eq!(
            orbit.induced.len() * orbit.pointwise_size,
            orbit.setwise_size()
        );
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Compose position permutations: (a . b)(i) = a(b(i)).
fn compose_u8(a: &[u8], b: &[u8]) -> Vec<u8> {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn orbit_data(
    complex: &SimplicialComplex,
    action: &GroupAction,
    k: usize,
) -> Result<OrbitData> {
    let orbits = simplex_orbits(complex, action, k)?;
    let mut prime_reps = Vec::with_capacity(orbits.len());
    let mut ordered_reps = Vec::new();
    let mut locate = HashMap::new();
    for (oi, orbit) in orbits.iter().enumerate() {
        prime_reps.push(orbit.rep.clone());
        for (m, &t) in orbit.members.iter().zip(&orbit.transporters) {
            locate.insert(m.clone(), (oi, t));
        }
        // Orderings of rep are permutations gamma; the action identifies
        // gamma with h.gamma for each induced h, so keep the lexicographic
        // minimum of each class.
        let positions: Vec<u8> = (0..=k as u8).collect();
        let mut count = 0usize;
        for gamma in positions.iter().copied().permutations(k + 1) {
            let canonical = orbit
                .induced
                .iter()
                .map(|h| compose_u8(h, &gamma))
                .min()
                .unwrap_or_else(|| gamma.clone());
            if gamma == canonical {
                let tuple: Vec<u32> = gamma.iter().map(|&i| orbit.rep[i as usize]).collect();
                ordered_reps.push((oi, tuple));
                count += 1;
            }
        }
        debug_assert_eq!(count * orbit.induced.len(), factorial(k + 1));
    }
    Ok(OrbitData { k, orbits, prime_reps, ordered_reps, locate })
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_on_triangle() -> (SimplicialComplex, GroupAction) {
        let c = SimplicialComplex::build(&[vec![0, 1, 2]]).unwrap();
        let a = GroupAction::from_generators(3, vec![vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        (c, a)
    }

    #[test]
    fn s3_closure_has_six_elements() {
        let (_c, a) = s3_on_triangle();
        assert_eq!(a.order(), 6);
        for g in 0..a.order() {
            assert_eq!(a.compose(g, a.inverse(g)), a.identity());
        }
    }

    #[test]
    fn s3_edge_orbit_stabilizers() {
        let (c, a) = s3_on_triangle();
        a.validate_on(&c).unwrap();
        let orbits = simplex_orbits(&c, &a, 1).unwrap();
        assert_eq!(orbits.len(), 1);
        let o = &orbits[0];
        assert_eq!(o.rep, vec![0, 1]);
        assert_eq!(o.members.len(), 3);
        assert_eq!(o.stab_even.len(), 1);
        assert_eq!(o.stab_odd.len(), 1);
        assert_eq!(o.pointwise_size, 1);
    }

    #[test]
    fn c3_vertex_orbit_is_single() {
        let c = SimplicialComplex::build(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let a = GroupAction::from_generators(3, vec![vec![1, 2, 0]]).unwrap();
        assert_eq!(a.order(), 3);
        let data = orbit_data(&c, &a, 0).unwrap();
        assert_eq!(data.prime_reps.len(), 1);
        assert_eq!(data.orbits[0].pointwise_size, 1);
        assert_eq!(data.ordered_reps.len(), 1);
    }

    #[test]
    fn trivial_action_keeps_all_orderings() {
        let c = SimplicialComplex::build(&[vec![0, 1, 2]]).unwrap();
        let a = GroupAction::trivial(3);
        let data = orbit_data(&c, &a, 1).unwrap();
        assert_eq!(data.prime_reps.len(), 3);
        assert_eq!(data.ordered_reps.len(), 6);
    }

    #[test]
    fn s3_ordered_edge_representatives_collapse() {
        let (c, a) = s3_on_triangle();
        let data = orbit_data(&c, &a, 1).unwrap();
        // one orbit; the swap is in the stabilizer, so a single ordering remains
        assert_eq!(data.ordered_reps.len(), 1);
    }

    #[test]
    fn non_simplicial_action_rejected() {
        let c = SimplicialComplex::build(&[vec![0, 1], vec![1, 2]]).unwrap();
        let a = GroupAction::from_generators(3, vec![vec![1, 0, 2]]).unwrap();
        assert!(matches!(a.validate_on(&c), Err(Error::NonSimplicialAction { .. })));
    }

    #[test]
    fn closure_overflow_is_detected() {
        // A 12-cycle plus a transposition generates S_12 (479M elements),
        // which trips the closure cap.
        let mut cycle: Vec<u32> = (1..12).collect();
        cycle.push(0);
        let mut swap: Vec<u32> = (0..12).collect();
        swap.swap(0, 1);
        assert!(matches!(
            GroupAction::from_generators(12, vec![cycle, swap]),
            Err(Error::GroupClosureOverflow(_))
        ));
    }
}

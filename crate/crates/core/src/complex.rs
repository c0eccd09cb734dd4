//! Pure finite simplicial complexes with the top-down weight function.
//!
//! A complex is built from its top simplices; every face is closed under
//! subsets and carries the weight m(tau) = (n-k)! * #{top sigma : tau in sigma}
//! for dim(tau) = k. Equivalently m is 1 on top simplices and each lower
//! weight is the sum over cofaces one dimension up; both are computed in
//! exact integer arithmetic and checked against each other at build time.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    dim: usize,
    /// faces[k] = lexicographically sorted list of sorted (k+1)-vertex simplices
    faces: Vec<Vec<Vec<u32>>>,
    /// weights[k][i] = m(faces[k][i]), a positive integer
    weights: Vec<Vec<u64>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
    weight_empty: u64,
    /// dense id -> original label, when the complex was built with relabeling
    labels: Option<Vec<i64>>,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

impl SimplicialComplex {
    /// Build from top simplices given with arbitrary integer labels. Vertices
    /// are renamed to dense ids 0..V in sorted label order; the original
    /// labels stay available through [`SimplicialComplex::labels`].
    pub fn build(top: &[Vec<i64>]) -> Result<Self> {
        if top.is_empty() {
            return Err(Error::EmptyInput("no top simplices"));
        }
        let mut labels: Vec<i64> = top.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let to_dense: HashMap<i64, u32> =
            labels.iter().enumerate().map(|(i, &l)| (l, i as u32)).collect();
        let dense_top: Vec<Vec<u32>> = top
            .iter()
            .map(|s| s.iter().map(|l| to_dense[l]).collect())
            .collect();
        let mut complex = Self::from_top_sets(dense_top)?;
        complex.labels = Some(labels);
        Ok(complex)
    }

    /// Build from top simplices over an existing vertex id space, without
    /// relabeling. Used for links, whose vertices keep the parent's ids.
    pub fn from_top_sets(top: Vec<Vec<u32>>) -> Result<Self> {
        if top.is_empty() {
            return Err(Error::EmptyInput("no top simplices"));
        }
        let size = top[0].len();
        if size == 0 {
            return Err(Error::EmptyInput("empty simplex in top list"));
        }
        let mut tops: Vec<Vec<u32>> = Vec::with_capacity(top.len());
        for mut s in top {
            if s.len() != size {
                return Err(Error::MixedDimension(size, s.len()));
            }
            s.sort_unstable();
            for w in s.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateVertexInSimplex { vertex: w[0], simplex: s.clone() });
                }
            }
            tops.push(s);
        }
        tops.sort();
        tops.dedup();

        let dim = size - 1;
        let mut faces: Vec<Vec<Vec<u32>>> = vec![Vec::new(); dim + 1];
        let mut index: Vec<HashMap<Vec<u32>, usize>> = vec![HashMap::new(); dim + 1];
        let mut weights: Vec<Vec<u64>> = vec![Vec::new(); dim + 1];

        for s in &tops {
            index[dim].insert(s.clone(), faces[dim].len());
            faces[dim].push(s.clone());
            weights[dim].push(1);
        }

        // Downward closure with the recursive weight: each face receives the
        // summed weight of its cofaces one dimension up.
        for k in (0..dim).rev() {
            let mut acc: HashMap<Vec<u32>, u64> = HashMap::new();
            for (i, s) in faces[k + 1].iter().enumerate() {
                let w = weights[k + 1][i];
                for drop in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(drop);
                    *acc.entry(f).or_insert(0) += w;
                }
            }
            let mut list: Vec<Vec<u32>> = acc.keys().cloned().collect();
            list.sort();
            for f in list {
                let w = acc[&f];
                index[k].insert(f.clone(), faces[k].len());
                faces[k].push(f);
                weights[k].push(w);
            }
        }

        let weight_empty: u64 = weights[0].iter().sum();

        let complex = SimplicialComplex { dim, faces, weights, index, weight_empty, labels: None };
        complex.check_closed_form();
        Ok(complex)
    }

    /// Cross-check the recursive weights against the closed form
    /// m(tau) = (n-k)! * #{top containing tau}. Exact equality is required.
    fn check_closed_form(&self) {
        let n = self.dim;
        for k in 0..=n {
            let fact = factorial(n - k);
            for (i, f) in self.faces[k].iter().enumerate() {
                let count = self.faces[n]
                    .iter()
                    .filter(|top| is_subset(f, top))
                    .count() as u64;
                assert_eq!(
                    self.weights[k][i],
                    fact * count,
                    "weight recursion disagrees with closed form at {f:?}"
                );
            }
        }
        assert_eq!(
            self.weight_empty,
            factorial(n + 1) * self.faces[n].len() as u64,
            "empty-set weight disagrees with closed form"
        );
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    /// All k-dimensional faces, sorted lexicographically.
    pub fn faces(&self, k: usize) -> &[Vec<u32>] {
        &self.faces[k]
    }

    pub fn face_count(&self, k: usize) -> usize {
        self.faces[k].len()
    }

    pub fn vertex_ids(&self) -> Vec<u32> {
        self.faces[0].iter().map(|v| v[0]).collect()
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        let k = simplex.len().wrapping_sub(1);
        if simplex.is_empty() || k > self.dim {
            return false;
        }
        let mut s = simplex.to_vec();
        s.sort_unstable();
        self.index[k].contains_key(&s)
    }

    /// Weight of a simplex given in any vertex order.
    pub fn weight(&self, simplex: &[u32]) -> Result<u64> {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        let k = s.len().checked_sub(1).ok_or(Error::EmptyInput("empty simplex"))?;
        if k > self.dim {
            return Err(Error::NotASimplex { simplex: s });
        }
        self.index[k]
            .get(&s)
            .map(|&i| self.weights[k][i])
            .ok_or(Error::NotASimplex { simplex: s })
    }

    /// m(empty) = sum of vertex weights = (n+1)! * #top.
    pub fn weight_empty(&self) -> u64 {
        self.weight_empty
    }

    /// Link of a simplex tau: all faces disjoint from tau whose union with
    /// tau is a face. The result keeps the parent's vertex ids, is pure of
    /// dimension n - dim(tau) - 1, and its weights satisfy
    /// m_link(eta) = m(tau union eta) exactly.
    pub fn link(&self, tau: &[u32]) -> Result<SimplicialComplex> {
        let mut t = tau.to_vec();
        t.sort_unstable();
        t.dedup();
        if t.len() != tau.len() {
            return Err(Error::DuplicateVertexInSimplex { vertex: 0, simplex: tau.to_vec() });
        }
        if !self.contains(&t) {
            return Err(Error::NotASimplex { simplex: t });
        }
        if t.len() == self.dim + 1 {
            return Err(Error::OutOfRange(format!(
                "link of a top-dimensional simplex {t:?} is the empty complex"
            )));
        }
        let link_tops: Vec<Vec<u32>> = self.faces[self.dim]
            .iter()
            .filter(|top| is_subset(&t, top))
            .map(|top| top.iter().copied().filter(|v| !t.contains(v)).collect())
            .collect();
        let link = SimplicialComplex::from_top_sets(link_tops)?;
        // m_link(eta) = m(tau union eta): a consequence of purity, checked
        // exactly because both sides are integers.
        for k in 0..=link.dim {
            for (i, eta) in link.faces[k].iter().enumerate() {
                let mut joined = t.clone();
                joined.extend_from_slice(eta);
                joined.sort_unstable();
                let parent = self.weight(&joined)?;
                assert_eq!(link.weights[k][i], parent, "link weight mismatch at {eta:?}");
            }
        }
        Ok(link)
    }

    /// Vertices of the link of tau, i.e. all v with (v union tau) a face.
    pub fn link_vertices(&self, tau: &[u32]) -> Result<Vec<u32>> {
        Ok(self.link(tau)?.vertex_ids())
    }

    /// The weighted 1-skeleton. Needs dimension >= 1.
    pub fn skeleton_graph(&self) -> Result<WeightedGraph> {
        if self.dim == 0 {
            return Err(Error::DimensionZero);
        }
        WeightedGraph::from_integer_edges(
            self.faces[1]
                .iter()
                .zip(&self.weights[1])
                .map(|(e, &w)| (e[0], e[1], w)),
        )
    }
}

pub fn is_subset(small: &[u32], big: &[u32]) -> bool {
    // both sorted
    let mut it = big.iter();
    'outer: for x in small {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

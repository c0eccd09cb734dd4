//! Weighted graphs with exact rational edge weights.
//!
//! Vertex weights are derived, never stored independently:
//! m(v) = sum of m(e) over edges containing v, and m(empty) = sum of m(v).
//! Parallel edges in the input are merged by summing their weights.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone)]
pub struct WeightedGraph {
    vertices: Vec<u32>,
    vindex: HashMap<u32, usize>,
    /// key (u, v) with u < v
    edges: BTreeMap<(u32, u32), BigRational>,
    vertex_weight: Vec<BigRational>,
    total_weight: BigRational,
}

impl WeightedGraph {
    pub fn from_edges<I>(list: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, BigRational)>,
    {
        let mut edges: BTreeMap<(u32, u32), BigRational> = BTreeMap::new();
        for (a, b, w) in list {
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if w <= BigRational::zero() {
                return Err(Error::NonPositiveWeight(w.to_string(), a, b));
            }
            let key = if a < b { (a, b) } else { (b, a) };
            *edges.entry(key).or_insert_with(BigRational::zero) += w;
        }
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }

        let mut vertices: Vec<u32> = edges.keys().flat_map(|&(u, v)| [u, v]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let vindex: HashMap<u32, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();

        let mut vertex_weight = vec![BigRational::zero(); vertices.len()];
        for (&(u, v), w) in &edges {
            vertex_weight[vindex[&u]] += w;
            vertex_weight[vindex[&v]] += w;
        }
        let total_weight = vertex_weight.iter().fold(BigRational::zero(), |a, b| a + b);

        Ok(WeightedGraph { vertices, vindex, edges, vertex_weight, total_weight })
    }

    pub fn from_integer_edges<I>(list: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, u64)>,
    {
        Self::from_edges(
            list.into_iter()
                .map(|(u, v, w)| (u, v, BigRational::from_integer(BigInt::from(w)))),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, &BigRational)> {
        self.edges.iter().map(|(&(u, v), w)| (u, v, w))
    }

    pub fn edge_weight(&self, a: u32, b: u32) -> Option<&BigRational> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.get(&key)
    }

    pub fn vertex_weight(&self, v: u32) -> Option<&BigRational> {
        self.vindex.get(&v).map(|&i| &self.vertex_weight[i])
    }

    /// m(empty) = sum over vertices of m(v) = twice the total edge weight.
    pub fn total_weight(&self) -> &BigRational {
        &self.total_weight
    }

    pub fn total_edge_weight(&self) -> BigRational {
        self.edges.values().fold(BigRational::zero(), |a, b| a + b)
    }

    fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in self.edges.keys() {
            let (iu, iv) = (self.vindex[&u], self.vindex[&v]);
            adj[iu].push(iv);
            adj[iv].push(iu);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let adj = self.adjacency_lists();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == n
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.vertices.len();
        let adj = self.adjacency_lists();
        let mut color = vec![-1i8; n];
        for start in 0..n {
            if color[start] >= 0 {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if color[y] < 0 {
                        color[y] = 1 - color[x];
                        queue.push_back(y);
                    } else if color[y] == color[x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Random walk matrix A with A[v][u] = m({u,v}) / m(v); rows sum to 1.
    pub fn random_walk_matrix(&self) -> Matrix {
        let n = self.vertices.len();
        let mut a = Matrix::zeros(n, n);
        for (&(u, v), w) in &self.edges {
            let (iu, iv) = (self.vindex[&u], self.vindex[&v]);
            let wf = rational_to_f64(w);
            a[(iu, iv)] = wf / rational_to_f64(&self.vertex_weight[iu]);
            a[(iv, iu)] = wf / rational_to_f64(&self.vertex_weight[iv]);
        }
        a
    }

    /// Symmetrization B with B[u][v] = m({u,v}) / sqrt(m(u) m(v)); similar to
    /// A via conjugation by diag(sqrt(m(v))), so it has the same spectrum.
    pub fn symmetrized_matrix(&self) -> Matrix {
        let n = self.vertices.len();
        let sqrt_w: Vec<f64> =
            self.vertex_weight.iter().map(|w| rational_to_f64(w).sqrt()).collect();
        let mut b = Matrix::zeros(n, n);
        for (&(u, v), w) in &self.edges {
            let (iu, iv) = (self.vindex[&u], self.vindex[&v]);
            let val = rational_to_f64(w) / (sqrt_w[iu] * sqrt_w[iv]);
            b[(iu, iv)] = val;
            b[(iv, iu)] = val;
        }
        b
    }

    /// Averaging operator M phi = (1/m(empty)) sum_v m(v) phi(v), as a matrix.
    pub fn averaging_matrix(&self) -> Matrix {
        let n = self.vertices.len();
        let total = rational_to_f64(&self.total_weight);
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            let row_val = rational_to_f64(&self.vertex_weight[i]) / total;
            for j in 0..n {
                m[(j, i)] = row_val;
            }
        }
        m
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(list: &[(u32, u32)]) -> WeightedGraph {
        WeightedGraph::from_integer_edges(list.iter().map(|&(u, v)| (u, v, 1))).unwrap()
    }

    #[test]
    fn vertex_weights_sum_incident_edges() {
        let g = unit(&[(0, 1), (1, 2)]);
        assert_eq!(g.vertex_weight(1).unwrap(), &BigRational::from_integer(2.into()));
        assert_eq!(g.vertex_weight(0).unwrap(), &BigRational::from_integer(1.into()));
        assert_eq!(g.total_weight(), &BigRational::from_integer(4.into()));
    }

    #[test]
    fn parallel_edges_merge() {
        let g = WeightedGraph::from_integer_edges([(0, 1, 1), (1, 0, 2)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edge_weight(0, 1).unwrap(), &BigRational::from_integer(3.into()));
    }

    #[test]
    fn self_loop_rejected() {
        assert!(matches!(
            WeightedGraph::from_integer_edges([(2, 2, 1)]),
            Err(Error::SelfLoop(2))
        ));
    }

    #[test]
    fn connectivity_and_bipartiteness() {
        let path = unit(&[(0, 1), (1, 2)]);
        assert!(path.is_connected());
        assert!(path.is_bipartite());
        let triangle = unit(&[(0, 1), (1, 2), (0, 2)]);
        assert!(triangle.is_connected());
        assert!(!triangle.is_bipartite());
        let two = unit(&[(0, 1), (2, 3)]);
        assert!(!two.is_connected());
    }

    #[test]
    fn random_walk_rows_sum_to_one() {
        let g = unit(&[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let a = g.random_walk_matrix();
        for i in 0..g.vertex_count() {
            let s: f64 = a.row(i).iter().sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }
}

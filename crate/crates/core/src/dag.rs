//! Weighted DAG of grade-`n` basis elements under `Q_n(γ − A_3)`.
//!
//! Vertex `(i,j,k)` stands for `H_i(x)H_j(y)H_k(z)` with `i + j + k = n`.
//! Edges go `(i,j,k) → (i−1,j+1,k)` with weight `−i` and
//! `(i,j,k) → (i,j−1,k+1)` with weight `−j`; both raise the height `j + 2k`
//! by one. Vertices are stored by height, then decreasing lexicographic order.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::hermite::{HermitePoly, MultiIndex};
use crate::operator::{apply_projected, OuContext};

pub type Vertex = [usize; 3];

pub fn height(v: &Vertex) -> usize {
    v[1] + 2 * v[2]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisDag {
    n: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    index: BTreeMap<Vertex, usize>,
}

/// Grade-`n` vertices at height `h`, in decreasing lexicographic order.
pub fn vertices_at_height(n: usize, h: usize) -> Vec<Vertex> {
    // decreasing lex on (i,j,k) at fixed height is decreasing k
    let mut out = Vec::new();
    for k in (0..=h / 2).rev() {
        let j = h - 2 * k;
        if j + k <= n {
            out.push([n - j - k, j, k]);
        }
    }
    out
}

pub fn build_dag(n: usize) -> BasisDag {
    let vertices: Vec<Vertex> = (0..=2 * n).flat_map(|h| vertices_at_height(n, h)).collect();
    let index: BTreeMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut edges = Vec::new();
    for (from, v) in vertices.iter().enumerate() {
        let [i, j, k] = *v;
        if i > 0 {
            edges.push(Edge {
                from,
                to: index[&[i - 1, j + 1, k]],
                weight: -(i as i64),
            });
        }
        if j > 0 {
            edges.push(Edge {
                from,
                to: index[&[i, j - 1, k + 1]],
                weight: -(j as i64),
            });
        }
    }
    BasisDag {
        n,
        vertices,
        edges,
        index,
    }
}

impl BasisDag {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, v: &Vertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn out_edges(&self, from: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.from == from)
    }

    pub fn vertices_at_height(&self, h: usize) -> Vec<Vertex> {
        self.vertices.iter().copied().filter(|v| height(v) == h).collect()
    }

    fn reachable(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(u) = queue.pop_front() {
            if u == to {
                return true;
            }
            for e in self.out_edges(u) {
                if !seen[e.to] {
                    seen[e.to] = true;
                    queue.push_back(e.to);
                }
            }
        }
        false
    }

    /// Length of a directed path `u → v`, `None` when `v` is unreachable.
    /// Every path has the same length, the height difference.
    pub fn distance(&self, u: &Vertex, v: &Vertex) -> Result<Option<usize>> {
        let iu = self.vertex_index(u).ok_or_else(|| Error::VertexNotFound(label(u, usize::MAX)))?;
        let iv = self.vertex_index(v).ok_or_else(|| Error::VertexNotFound(label(v, usize::MAX)))?;
        if !self.reachable(iu, iv) {
            return Ok(None);
        }
        Ok(Some(height(v) - height(u)))
    }

    /// `(i,j,k) ↦ (k,j,i)` maps vertices to vertices and reflects heights about `n`.
    pub fn symmetry_check(&self) -> bool {
        self.vertices.iter().all(|v| {
            let m = [v[2], v[1], v[0]];
            self.index.contains_key(&m) && height(v) + height(&m) == 2 * self.n
        })
    }

    /// Whether `Q_n(γ − A_3)` applied to each vertex expands exactly over its
    /// out-neighbours, with the edge weights as coefficients.
    pub fn matches_operator(&self) -> Result<bool> {
        let ctx = OuContext::unit(3, self.n);
        for (i, v) in self.vertices.iter().enumerate() {
            let image = apply_projected(&ctx.basis(as_multi_index(v)), self.n, &ctx)?;
            let expected = HermitePoly::from_terms(
                3,
                ctx.rho().clone(),
                self.out_edges(i).map(|e| {
                    (
                        as_multi_index(&self.vertices[e.to]),
                        Rational::from_integer(e.weight.into()),
                    )
                }),
            );
            if image != expected {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Kahn's algorithm; returns `None` if a cycle exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.vertices.len()];
        for e in &self.edges {
            indeg[e.to] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.vertices.len()).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for e in self.out_edges(u) {
                indeg[e.to] -= 1;
                if indeg[e.to] == 0 {
                    queue.push_back(e.to);
                }
            }
        }
        (order.len() == self.vertices.len()).then_some(order)
    }

    pub fn export_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph basis_n{} {{", self.n).unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        for h in 0..=2 * self.n {
            let layer = self.vertices_at_height(h);
            if layer.is_empty() {
                continue;
            }
            write!(out, "  {{ rank=same;").unwrap();
            for v in &layer {
                write!(out, " \"{}\";", label(v, self.n)).unwrap();
            }
            writeln!(out, " }}").unwrap();
        }
        for v in &self.vertices {
            let l = label(v, self.n);
            writeln!(out, "  \"{l}\" [label=\"{l}\"];").unwrap();
        }
        for e in &self.edges {
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                label(&self.vertices[e.from], self.n),
                label(&self.vertices[e.to], self.n),
                e.weight
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> DagJson {
        DagJson {
            edges: self
                .edges
                .iter()
                .map(|e| DagEdgeJson {
                    from: self.vertices[e.from].to_vec(),
                    to: self.vertices[e.to].to_vec(),
                    weight: e.weight,
                })
                .collect(),
            n: self.n,
            vertices: self
                .vertices
                .iter()
                .map(|v| DagVertexJson {
                    height: height(v),
                    idx: v.to_vec(),
                })
                .collect(),
        }
    }
}

/// Node id: `"ijk"` when every index fits one digit, `"i_j_k"` otherwise.
pub fn label(v: &Vertex, n: usize) -> String {
    if n <= 9 {
        format!("{}{}{}", v[0], v[1], v[2])
    } else {
        format!("{}_{}_{}", v[0], v[1], v[2])
    }
}

pub fn as_multi_index(v: &Vertex) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

#[derive(Serialize)]
pub struct DagJson {
    pub edges: Vec<DagEdgeJson>,
    pub n: usize,
    pub vertices: Vec<DagVertexJson>,
}

#[derive(Serialize)]
pub struct DagEdgeJson {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    pub weight: i64,
}

#[derive(Serialize)]
pub struct DagVertexJson {
    pub height: usize,
    pub idx: Vec<usize>,
}

/// One line of the chain-length comparison for a given `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarkDistanceRow {
    pub k: usize,
    /// `2n + 1 − 4k`.
    pub q: usize,
    /// The pair `(⌈n/2⌉+k, 0, ⌈n/2⌉−k)`, `(⌈n/2⌉−k, 0, ⌈n/2⌉+k)`.
    pub stated_pair: [Vec<usize>; 2],
    /// Height difference of the stated pair, whether or not both are grade-`n` vertices.
    pub stated_pair_height_gap: usize,
    /// `1 + distance` for the stated pair; `None` if a vertex is missing or unreachable.
    pub stated_pair_value: Option<usize>,
    /// `1 + distance` between the chain's actual endpoint heights `2k` and `2(n−k)`.
    pub endpoint_value: usize,
    pub stated_matches_q: bool,
    pub endpoint_matches_q: bool,
}

pub fn remark_distance_report(n: usize) -> Vec<RemarkDistanceRow> {
    let dag = build_dag(n);
    let half_up = n.div_ceil(2);
    (0..=n / 2)
        .map(|k| {
            let q = 2 * n + 1 - 4 * k;
            let stated_value = if k <= half_up {
                let a = [half_up + k, 0, half_up - k];
                let b = [half_up - k, 0, half_up + k];
                dag.distance(&a, &b).ok().flatten().map(|d| d + 1)
            } else {
                None
            };
            let stated_pair = [
                vec![half_up + k, 0, half_up.saturating_sub(k)],
                vec![half_up.saturating_sub(k), 0, half_up + k],
            ];
            // the endpoints (n−k, 0, k) and (k, 0, n−k) are always vertices
            let endpoint_value = dag
                .distance(&[n - k, 0, k], &[k, 0, n - k])
                .expect("endpoint vertices exist")
                .expect("endpoint is reachable")
                + 1;
            RemarkDistanceRow {
                k,
                q,
                stated_pair_height_gap: 4 * k,
                stated_pair,
                stated_pair_value: stated_value,
                endpoint_value,
                stated_matches_q: stated_value == Some(q),
                endpoint_matches_q: endpoint_value == q,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial_usize;

    #[test]
    fn vertex_counts() {
        assert_eq!(build_dag(3).vertices().len(), 10);
        assert_eq!(build_dag(4).vertices().len(), 15);
        let d0 = build_dag(0);
        assert_eq!(d0.vertices(), &[[0, 0, 0]]);
        assert!(d0.edges().is_empty());
        for n in 0..=12 {
            assert_eq!(build_dag(n).vertices().len(), binomial_usize(n + 2, 2));
        }
    }

    #[test]
    fn source_and_sink() {
        let dag = build_dag(5);
        assert_eq!(dag.vertices()[0], [5, 0, 0]);
        assert_eq!(*dag.vertices().last().unwrap(), [0, 0, 5]);
    }

    #[test]
    fn distances() {
        let n = 4;
        let dag = build_dag(n);
        assert_eq!(dag.distance(&[n, 0, 0], &[0, 0, n]).unwrap(), Some(2 * n));
        assert_eq!(dag.distance(&[2, 1, 1], &[2, 1, 1]).unwrap(), Some(0));
        assert_eq!(dag.distance(&[0, 0, n], &[n, 0, 0]).unwrap(), None);
        // same height, different vertices
        assert_eq!(dag.distance(&[2, 2, 0], &[3, 0, 1]).unwrap(), None);
        assert!(matches!(dag.distance(&[9, 0, 0], &[0, 0, 4]), Err(Error::VertexNotFound(_))));
    }

    #[test]
    fn symmetry() {
        assert!(build_dag(1).symmetry_check());
        for n in 0..=12 {
            assert!(build_dag(n).symmetry_check());
        }
    }

    #[test]
    fn acyclic_and_heights() {
        for n in 0..=8 {
            let dag = build_dag(n);
            assert!(dag.topological_order().is_some());
            for e in dag.edges() {
                assert_eq!(height(&dag.vertices()[e.to]), height(&dag.vertices()[e.from]) + 1);
            }
        }
    }

    #[test]
    fn weights_match_operator() {
        for n in 0..=12 {
            assert!(build_dag(n).matches_operator().unwrap(), "n={n}");
        }
    }

    #[test]
    fn dot_for_small_n() {
        let dot = build_dag(0).export_dot();
        assert!(dot.contains("\"000\" [label=\"000\"];"));
        assert!(!dot.contains("->"));
        let dot = build_dag(1).export_dot();
        assert!(dot.contains("\"100\" -> \"010\" [label=\"-1\"];"));
        assert!(dot.contains("\"010\" -> \"001\" [label=\"-1\"];"));
        assert_eq!(dot.matches("->").count(), 2);
        assert!(build_dag(10).export_dot().contains("\"10_0_0\""));
    }

    #[test]
    fn remark_rows() {
        let rows = remark_distance_report(2);
        assert_eq!(rows[0].q, 5);
        assert_eq!(rows[0].endpoint_value, 5);
        let rows = remark_distance_report(4);
        assert_eq!(rows[1].q, 5);
        assert_eq!(rows[1].endpoint_value, 5);
        let rows = remark_distance_report(3);
        assert_eq!(rows[1].q, 3);
        assert_eq!(rows[1].endpoint_value, 3);
        // for odd n the stated pair is not a pair of grade-n vertices
        assert_eq!(rows[1].stated_pair_value, None);
        assert_eq!(rows[1].stated_pair_height_gap, 4);
        assert!(!rows[1].stated_matches_q);
    }
}

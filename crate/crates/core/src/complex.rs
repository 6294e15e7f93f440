//! ε-neighbourhood graphs and flag triangles on lifted point clouds, and a
//! fundamental cycle basis for the graph's first homology.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::sig17;
use crate::surfaces::{CoverPoint, GroupElement, Surface, SurfaceKind};

/// Base points closer than this are treated as the same point.
pub const DUPLICATE_TOLERANCE: f64 = 1e-12;

/// Base points of a surface, each given by one chosen lift in the cover.
#[derive(Clone, Debug)]
pub struct LiftedPointCloud {
    surface: Surface,
    points: Vec<CoverPoint>,
}

impl LiftedPointCloud {
    pub fn new(surface: Surface, points: Vec<CoverPoint>) -> Result<Self> {
        for p in &points {
            surface.validate(p)?;
        }
        Ok(Self { surface, points })
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn kind(&self) -> SurfaceKind {
        self.surface.kind()
    }

    pub fn points(&self) -> &[CoverPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Same base points with lift `i` replaced by `moves[i]·lift_i`.
    pub fn relift(&self, moves: &[GroupElement]) -> Result<Self> {
        if moves.len() != self.points.len() {
            return Err(Error::Input(format!(
                "relift needs {} group elements, got {}",
                self.points.len(),
                moves.len()
            )));
        }
        let points = self
            .points
            .iter()
            .zip(moves)
            .map(|(p, g)| self.surface.act(g, p))
            .collect::<Result<_>>()?;
        Ok(Self {
            surface: self.surface,
            points,
        })
    }

    /// All pairwise base distances (upper triangle, row-major), computed in
    /// parallel with a schedule-independent result order.
    pub(crate) fn pairwise(&self) -> Result<Vec<((usize, usize), f64, bool)>> {
        let n = self.points.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let bd = self.surface.base_distance(&self.points[i], &self.points[j])?;
                if bd.distance <= DUPLICATE_TOLERANCE {
                    return Err(Error::Input(format!(
                        "points {i} and {j} are the same base point (distance {:e})",
                        bd.distance
                    )));
                }
                Ok(((i, j), bd.distance, bd.tied()))
            })
            .collect()
    }
}

/// Graph on the cloud whose edges join points at base distance `<= epsilon`,
/// with its flag triangles.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonGraph {
    pub n: usize,
    pub epsilon: f64,
    /// `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub edge_lengths: Vec<f64>,
    /// `(i, j, k)` with `i < j < k`, sorted.
    pub triangles: Vec<[usize; 3]>,
    /// Set when the edge length is realised by more than one deck element.
    pub degeneracy_flags: Vec<bool>,
}

impl EpsilonGraph {
    /// Builds the graph from an explicit list of weighted pairs.
    pub fn from_weighted_pairs(
        n: usize,
        epsilon: f64,
        pairs: impl IntoIterator<Item = ((usize, usize), f64, bool)>,
    ) -> Self {
        let mut kept: Vec<((usize, usize), f64, bool)> = pairs
            .into_iter()
            .filter(|&(_, d, _)| d <= epsilon)
            .map(|((i, j), d, t)| ((i.min(j), i.max(j)), d, t))
            .collect();
        kept.sort_by_key(|&(e, _, _)| e);
        let mut graph = EpsilonGraph {
            n,
            epsilon,
            edges: kept.iter().map(|&(e, _, _)| e).collect(),
            edge_lengths: kept.iter().map(|&(_, d, _)| d).collect(),
            triangles: Vec::new(),
            degeneracy_flags: kept.iter().map(|&(_, _, t)| t).collect(),
        };
        graph.triangles = graph.flag_triangles();
        graph
    }

    fn flag_triangles(&self) -> Vec<[usize; 3]> {
        let adj = self.adjacency();
        let mut out = Vec::new();
        for &(i, j) in &self.edges {
            // Walk the sorted neighbour lists of i and j for common k > j.
            let (a, b) = (&adj[i], &adj[j]);
            let (mut x, mut y) = (0, 0);
            while x < a.len() && y < b.len() {
                match a[x].cmp(&b[y]) {
                    std::cmp::Ordering::Less => x += 1,
                    std::cmp::Ordering::Greater => y += 1,
                    std::cmp::Ordering::Equal => {
                        if a[x] > j {
                            out.push([i, j, a[x]]);
                        }
                        x += 1;
                        y += 1;
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        self.edges.binary_search(&(i.min(j), i.max(j))).ok()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.edge_index(i, j).is_some()
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut count = self.n;
        for &(i, j) in &self.edges {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    /// `|E| - |V| + #components`.
    pub fn first_betti_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.n
    }

    pub fn to_export(&self) -> GraphExport {
        GraphExport {
            n: self.n,
            epsilon: self.epsilon,
            edges: self
                .edges
                .iter()
                .zip(&self.edge_lengths)
                .zip(&self.degeneracy_flags)
                .map(|((&(i, j), &length), &degenerate)| ExportEdge(i, j, length, degenerate))
                .collect(),
            triangles: self.triangles.clone(),
        }
    }
}

/// JSON shape `{n, epsilon, edges: [[i, j, length, degenerate]], triangles: [[i, j, k]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphExport {
    pub n: usize,
    #[serde(serialize_with = "sig17::serialize")]
    pub epsilon: f64,
    pub edges: Vec<ExportEdge>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExportEdge(
    pub usize,
    pub usize,
    #[serde(serialize_with = "sig17::serialize")] pub f64,
    pub bool,
);

impl From<GraphExport> for EpsilonGraph {
    fn from(g: GraphExport) -> Self {
        let pairs = g.edges.iter().map(|e| ((e.0, e.1), e.2, e.3));
        EpsilonGraph::from_weighted_pairs(g.n, f64::INFINITY, pairs.collect::<Vec<_>>()).with_epsilon(g.epsilon)
    }
}

impl EpsilonGraph {
    fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }
}

/// Closed-threshold ε-graph: `(i, j)` is an edge iff `d(x_i, x_j) <= epsilon`.
pub fn build_epsilon_graph(cloud: &LiftedPointCloud, epsilon: f64) -> Result<EpsilonGraph> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::Input(format!("epsilon must be positive, got {epsilon}")));
    }
    let pairs = cloud.pairwise()?;
    Ok(EpsilonGraph::from_weighted_pairs(cloud.len(), epsilon, pairs))
}

/// BFS spanning forest and one fundamental cycle per non-tree edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleBasis {
    /// Parent in the spanning forest; `None` for component roots.
    pub parent: Vec<Option<usize>>,
    /// Vertex loops `v0 v1 … vk`, closed by the edge `vk → v0`. Each starts
    /// with the non-tree edge `i → j`, `i < j`.
    pub fundamental_cycles: Vec<Vec<usize>>,
    /// The non-tree edge generating each cycle.
    pub generators: Vec<(usize, usize)>,
}

pub fn cycle_basis(graph: &EpsilonGraph) -> CycleBasis {
    let adj = graph.adjacency();
    let mut parent = vec![None; graph.n];
    let mut depth = vec![usize::MAX; graph.n];
    let mut tree_edges = HashMap::new();
    for root in 0..graph.n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some(v);
                    tree_edges.insert((v.min(w), v.max(w)), ());
                    queue.push_back(w);
                }
            }
        }
    }

    let path_to_root = |mut v: usize, stop: usize| {
        let mut path = vec![v];
        while v != stop {
            v = parent[v].expect("stop vertex is an ancestor");
            path.push(v);
        }
        path
    };

    let mut fundamental_cycles = Vec::new();
    let mut generators = Vec::new();
    for &(i, j) in &graph.edges {
        if tree_edges.contains_key(&(i, j)) {
            continue;
        }
        // Lowest common ancestor by climbing the deeper side.
        let (mut a, mut b) = (i, j);
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a].expect("same component");
            } else {
                b = parent[b].expect("same component");
            }
        }
        let lca = a;
        let from_j = path_to_root(j, lca);
        let from_i = path_to_root(i, lca);
        let mut cycle = vec![i];
        cycle.extend(&from_j);
        // Back down from the lca towards i, excluding both ends.
        cycle.extend(from_i[1..from_i.len().saturating_sub(1)].iter().rev());
        if cycle.len() > 1 && cycle.last() == cycle.first() {
            cycle.pop();
        }
        fundamental_cycles.push(cycle);
        generators.push((i, j));
    }
    CycleBasis {
        parent,
        fundamental_cycles,
        generators,
    }
}

//! Transition homomorphisms of the covering induced on an ε-graph.
//!
//! Each oriented edge `i → j` carries the deck element
//! `t(i→j) = argmin_g d(x̃_i, g·x̃_j)`, so following an edge path in the cover
//! from `x̃_{v0}` reaches `t(v0 v1)…t(v_{m-1} v_m)·x̃_{v_m}`. Products along
//! closed walks give monodromy, and their abelianizations give the ambient
//! first-homology class of the walk. Only edge values and products along
//! walks are stored; nothing else about the edge groupoid is needed.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complex::{build_epsilon_graph, cycle_basis, CycleBasis, EpsilonGraph, GraphExport, LiftedPointCloud};
use crate::error::{Error, Result};
use crate::io::{element_from_json, element_to_json, sig17};
use crate::surfaces::{AbelianClass, GroupElement, SurfaceKind};

#[derive(Clone, Debug)]
pub struct TransitionMap {
    kind: SurfaceKind,
    n: usize,
    edges: Vec<(usize, usize)>,
    triangles: Vec<[usize; 3]>,
    /// `t(i→j)` for `edges[k] = (i, j)`, `i < j`; the reverse orientation is the inverse.
    assignment: Vec<GroupElement>,
    degenerate: Vec<bool>,
}

/// Orientation-aware integer 1-chain on a graph, stored on edges `i < j`
/// with the coefficient of the orientation `i → j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chain {
    coefficients: BTreeMap<(usize, usize), i64>,
}

impl Chain {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coefficient · (from → to)`.
    pub fn add_step(&mut self, from: usize, to: usize, coefficient: i64) {
        let (key, c) = if from < to {
            ((from, to), coefficient)
        } else {
            ((to, from), -coefficient)
        };
        let entry = self.coefficients.entry(key).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coefficients.remove(&key);
        }
    }

    /// The closed walk `v0 → v1 → … → vk → v0`. A trailing repeat of `v0`
    /// is accepted and ignored.
    pub fn from_loop(vertices: &[usize]) -> Self {
        let mut chain = Self::new();
        let walk = closed_walk(vertices);
        for k in 0..walk.len() {
            chain.add_step(walk[k], walk[(k + 1) % walk.len()], 1);
        }
        chain
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = Self::new();
        for (&(i, j), &c) in &self.coefficients {
            out.add_step(i, j, c * k);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.coefficients.iter().map(|(&e, &c)| (e, c))
    }

    /// Nonzero vertex coefficients of `∂`, with `∂(i → j) = j - i`.
    pub fn boundary(&self) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for (&(i, j), &c) in &self.coefficients {
            *out.entry(j).or_insert(0) += c;
            *out.entry(i).or_insert(0) -= c;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_empty()
    }
}

fn closed_walk(vertices: &[usize]) -> &[usize] {
    match vertices {
        [first, .., last] if first == last => &vertices[..vertices.len() - 1],
        _ => vertices,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub checked: usize,
    pub violations: Vec<[usize; 3]>,
}

/// Transition homomorphism realised by nearest deck elements of the lifts.
///
/// Edges whose minimizer is tied get the canonically smallest element and
/// are flagged degenerate.
pub fn compute_transition(cloud: &LiftedPointCloud, graph: &EpsilonGraph) -> Result<TransitionMap> {
    if graph.n != cloud.len() {
        return Err(Error::Input(format!(
            "graph has {} vertices but the cloud has {} points",
            graph.n,
            cloud.len()
        )));
    }
    let surface = cloud.surface();
    let points = cloud.points();
    let per_edge: Vec<(GroupElement, bool)> = graph
        .edges
        .par_iter()
        .map(|&(i, j)| {
            let bd = surface.base_distance(&points[i], &points[j])?;
            Ok((bd.best().clone(), bd.tied()))
        })
        .collect::<Result<_>>()?;
    let (assignment, degenerate) = per_edge.into_iter().unzip();
    Ok(TransitionMap {
        kind: cloud.kind(),
        n: graph.n,
        edges: graph.edges.clone(),
        triangles: graph.triangles.clone(),
        assignment,
        degenerate,
    })
}

impl TransitionMap {
    /// Transition map with explicitly given edge values `t(i→j)`, `i < j`, in
    /// the order of `graph.edges`.
    pub fn from_assignment(kind: SurfaceKind, graph: &EpsilonGraph, assignment: Vec<GroupElement>) -> Result<Self> {
        if assignment.len() != graph.edges.len() {
            return Err(Error::Input(format!(
                "{} edge values for {} edges",
                assignment.len(),
                graph.edges.len()
            )));
        }
        if let Some(g) = assignment.iter().find(|g| g.kind() != kind) {
            return Err(Error::Input(format!("{} element in a {kind} transition map", g.kind())));
        }
        Ok(Self {
            kind,
            n: graph.n,
            edges: graph.edges.clone(),
            triangles: graph.triangles.clone(),
            degenerate: graph.degeneracy_flags.clone(),
            assignment,
        })
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn index(&self, i: usize, j: usize) -> Option<usize> {
        self.edges.binary_search(&(i.min(j), i.max(j))).ok()
    }

    /// `t(i→j)`, or `None` when `ij` is not an edge.
    pub fn get(&self, i: usize, j: usize) -> Option<GroupElement> {
        let k = self.index(i, j)?;
        Some(if i < j {
            self.assignment[k].clone()
        } else {
            self.assignment[k].inverse()
        })
    }

    /// Overrides `t(i→j)` (and so `t(j→i)`).
    pub fn set(&mut self, i: usize, j: usize, g: GroupElement) -> Result<()> {
        let k = self
            .index(i, j)
            .ok_or_else(|| Error::Input(format!("{i}-{j} is not an edge")))?;
        self.assignment[k] = if i < j { g } else { g.inverse() };
        Ok(())
    }

    pub fn is_degenerate(&self, i: usize, j: usize) -> bool {
        self.index(i, j).is_some_and(|k| self.degenerate[k])
    }

    pub fn degenerate_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .zip(&self.degenerate)
            .filter(|(_, &d)| d)
            .map(|(&e, _)| e)
            .collect()
    }

    /// Checks `t(ij) t(jk) = t(ik)` on every flag triangle.
    pub fn verify_cocycle(&self) -> CocycleReport {
        let violations = self
            .triangles
            .iter()
            .filter(|&&[i, j, k]| {
                let (Some(ij), Some(jk), Some(ik)) = (self.get(i, j), self.get(j, k), self.get(i, k)) else {
                    return true;
                };
                ij.multiply(&jk) != ik
            })
            .copied()
            .collect();
        CocycleReport {
            checked: self.triangles.len(),
            violations,
        }
    }

    /// `t'(ij) = θ(i)⁻¹ t(ij) θ(j)`, the transition map of the lifts
    /// `θ(i)⁻¹·x̃_i`.
    pub fn gauge_transform(&self, theta: &[GroupElement]) -> Result<TransitionMap> {
        if theta.len() != self.n {
            return Err(Error::Input(format!("gauge needs {} elements, got {}", self.n, theta.len())));
        }
        let assignment = self
            .edges
            .iter()
            .zip(&self.assignment)
            .map(|(&(i, j), t)| theta[i].inverse().multiply(t).multiply(&theta[j]))
            .collect();
        Ok(TransitionMap {
            assignment,
            ..self.clone()
        })
    }

    /// Ordered product `t(v0 v1) t(v1 v2) … t(vk v0)` around a closed walk.
    pub fn loop_monodromy(&self, walk: &[usize]) -> Result<GroupElement> {
        let walk = closed_walk(walk);
        let mut product = GroupElement::identity(self.kind);
        for k in 0..walk.len() {
            let (a, b) = (walk[k], walk[(k + 1) % walk.len()]);
            let t = self
                .get(a, b)
                .ok_or_else(|| Error::Input(format!("walk step {a} -> {b} is not a graph edge")))?;
            product = product.multiply(&t);
        }
        Ok(product)
    }

    /// `Σ c_e · ab(t(e))` over an integer 1-cycle.
    pub fn homology_class(&self, chain: &Chain) -> Result<AbelianClass> {
        if !chain.is_cycle() {
            return Err(Error::Input(format!("chain has boundary {:?}", chain.boundary())));
        }
        let mut class = AbelianClass::zero(self.kind);
        for ((i, j), c) in chain.iter() {
            let t = self
                .get(i, j)
                .ok_or_else(|| Error::Input(format!("chain uses {i}-{j}, which is not a graph edge")))?;
            class += t.abelianize().scaled(c);
        }
        Ok(class)
    }

    /// Whether any edge of the chain is flagged degenerate.
    pub fn touches_degenerate(&self, chain: &Chain) -> bool {
        chain.iter().any(|((i, j), _)| self.is_degenerate(i, j))
    }

    pub fn to_export(&self) -> Vec<TransitionEdge> {
        self.edges
            .iter()
            .zip(&self.assignment)
            .zip(&self.degenerate)
            .map(|((&(i, j), g), &degenerate)| TransitionEdge {
                i,
                j,
                element: element_to_json(g),
                degenerate,
            })
            .collect()
    }
}

/// One exported edge value `t(i→j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionEdge {
    pub i: usize,
    pub j: usize,
    pub element: Value,
    pub degenerate: bool,
}

/// Class of one fundamental cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClass {
    pub cycle: Vec<usize>,
    pub class: AbelianClass,
    /// The cycle passes through an edge with tied minimizers.
    pub unreliable: bool,
}

/// Everything computed for one cloud at one scale.
#[derive(Clone, Debug)]
pub struct CloudClassification {
    pub graph: EpsilonGraph,
    pub transition: TransitionMap,
    pub basis: CycleBasis,
    pub classes: Vec<CycleClass>,
    pub cocycle: CocycleReport,
    pub degenerate_edges: usize,
}

/// Graph, transition map, cycle basis and the homology class of every
/// fundamental cycle.
pub fn classify_cloud(cloud: &LiftedPointCloud, epsilon: f64) -> Result<CloudClassification> {
    let graph = build_epsilon_graph(cloud, epsilon)?;
    let transition = compute_transition(cloud, &graph)?;
    let basis = cycle_basis(&graph);
    let classes = basis
        .fundamental_cycles
        .iter()
        .map(|cycle| {
            let chain = Chain::from_loop(cycle);
            Ok(CycleClass {
                cycle: cycle.clone(),
                class: transition.homology_class(&chain)?,
                unreliable: transition.touches_degenerate(&chain),
            })
        })
        .collect::<Result<_>>()?;
    let cocycle = transition.verify_cocycle();
    let degenerate_edges = transition.degenerate_edges().len();
    Ok(CloudClassification {
        graph,
        transition,
        basis,
        classes,
        cocycle,
        degenerate_edges,
    })
}

/// JSON report written by `classify`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub surface: SurfaceKind,
    pub n: usize,
    #[serde(serialize_with = "sig17::serialize")]
    pub epsilon: f64,
    pub graph: GraphExport,
    pub transition: Vec<TransitionEdge>,
    pub cycles: Vec<CycleReport>,
    pub cocycle: CocycleReport,
    pub degenerate_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    pub vertices: Vec<usize>,
    pub class: String,
    pub class_free: Vec<i64>,
    pub class_torsion: Vec<u8>,
    pub unreliable: bool,
}

impl CloudClassification {
    pub fn to_report(&self) -> ClassificationReport {
        ClassificationReport {
            surface: self.transition.kind(),
            n: self.graph.n,
            epsilon: self.graph.epsilon,
            graph: self.graph.to_export(),
            transition: self.transition.to_export(),
            cycles: self
                .classes
                .iter()
                .map(|c| CycleReport {
                    vertices: c.cycle.clone(),
                    class: c.class.to_string(),
                    class_free: c.class.free.clone(),
                    class_torsion: c.class.torsion.clone(),
                    unreliable: c.unreliable,
                })
                .collect(),
            cocycle: self.cocycle.clone(),
            degenerate_edges: self.degenerate_edges,
        }
    }
}

impl ClassificationReport {
    /// Rebuilds the transition map from the exported graph and edge values.
    pub fn transition_map(&self) -> Result<TransitionMap> {
        let graph = EpsilonGraph::from(self.graph.clone());
        let assignment = self
            .transition
            .iter()
            .map(|e| element_from_json(self.surface, &e.element))
            .collect::<Result<Vec<_>>>()?;
        TransitionMap::from_assignment(self.surface, &graph, assignment)
    }
}

#[cfg(test)]
mod tests;

//! Four-point Vietoris–Rips persistence, minimal ε-cycles and the sampled
//! principal persistence measure split by homology class.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{EpsilonGraph, LiftedPointCloud, DUPLICATE_TOLERANCE};
use crate::error::{Error, Result};
use crate::io::sig17;
use crate::surfaces::{AbelianClass, BaseDistance, Surface, SurfaceKind};
use crate::transition::{Chain, TransitionMap};

/// Distances closer than this are treated as equal when comparing the
/// smaller diagonal with the largest cross distance.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

/// The three ways to split `{0,1,2,3}` into two diagonal pairs.
const MATCHINGS: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];

/// Outcome of the four-point persistence test on one quadruple.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadrupleResult {
    pub birth: Option<f64>,
    pub death: Option<f64>,
    /// `[x₀, x₁, x₂, x₃]` with `d(x₀,x₁) ≥ d(x₂,x₃) = death` and every
    /// cross distance `< death`.
    pub labelling: Option<[usize; 4]>,
    /// The 4-cycle through the cross pairs, starting at vertex 0 and moving
    /// to its smaller neighbour first.
    pub cycle_order: Option<[usize; 4]>,
    /// Canonically signed class of the cycle.
    pub class: Option<AbelianClass>,
    pub degenerate: bool,
    pub trivial: bool,
}

impl QuadrupleResult {
    fn trivial(degenerate: bool) -> Self {
        Self {
            birth: None,
            death: None,
            labelling: None,
            cycle_order: None,
            class: None,
            degenerate,
            trivial: true,
        }
    }
}

fn validate_matrix(d: &[[f64; 4]; 4]) -> Result<()> {
    for i in 0..4 {
        if d[i][i] != 0.0 {
            return Err(Error::Input(format!("distance matrix has nonzero diagonal entry {}", d[i][i])));
        }
        for j in i + 1..4 {
            if !d[i][j].is_finite() || d[i][j] <= 0.0 {
                return Err(Error::Input(format!("distance d({i},{j}) = {} is not positive", d[i][j])));
            }
            if d[i][j] != d[j][i] {
                return Err(Error::Input(format!("distance matrix is not symmetric at ({i},{j})")));
            }
        }
    }
    Ok(())
}

/// Persistence of the single possible one-cycle in the Rips filtration of
/// four points with pairwise distances `d`.
pub fn four_point_persistence(d: &[[f64; 4]; 4]) -> Result<QuadrupleResult> {
    validate_matrix(d)?;
    let mut degenerate = false;
    for [(a, b), (c, e)] in MATCHINGS {
        let cross = [d[a][c], d[a][e], d[b][c], d[b][e]];
        let birth = cross.into_iter().fold(0.0, f64::max);
        let death = d[a][b].min(d[c][e]);
        if death > birth + BOUNDARY_TOLERANCE {
            let ((x0, x1), (x2, x3)) = if d[a][b] >= d[c][e] { ((a, b), (c, e)) } else { ((c, e), (a, b)) };
            // Every matching lists vertex 0 first, so its cycle neighbours are c and e.
            let cycle = [a, c.min(e), b, c.max(e)];
            return Ok(QuadrupleResult {
                birth: Some(birth),
                death: Some(death),
                labelling: Some([x0, x1, x2, x3]),
                cycle_order: Some(cycle),
                class: None,
                degenerate: false,
                trivial: false,
            });
        }
        if (death - birth).abs() <= BOUNDARY_TOLERANCE {
            degenerate = true;
        }
    }
    Ok(QuadrupleResult::trivial(degenerate))
}

/// The ε-graph on the four points for `ε ∈ [birth, death)`, checked to be
/// the 4-cycle through the cross pairs.
pub fn minimal_cycle_graph(d: &[[f64; 4]; 4], result: &QuadrupleResult, epsilon: f64) -> Result<EpsilonGraph> {
    minimal_cycle_graph_flagged(d, &[[false; 4]; 4], result, epsilon)
}

fn minimal_cycle_graph_flagged(
    d: &[[f64; 4]; 4],
    tied: &[[bool; 4]; 4],
    result: &QuadrupleResult,
    epsilon: f64,
) -> Result<EpsilonGraph> {
    let (Some(birth), Some(death)) = (result.birth, result.death) else {
        return Err(Error::Input("minimal cycle graph needs a persistent quadruple".into()));
    };
    if !(birth <= epsilon && epsilon < death) {
        return Err(Error::Input(format!("epsilon {epsilon} is outside [{birth}, {death})")));
    }
    let pairs = (0..4).flat_map(|i| (i + 1..4).map(move |j| ((i, j), d[i][j], tied[i][j])));
    let graph = EpsilonGraph::from_weighted_pairs(4, epsilon, pairs);
    let adj = graph.adjacency();
    if graph.edges.len() != 4 || adj.iter().any(|nbrs| nbrs.len() != 2) {
        return Err(Error::Assertion(format!(
            "graph at epsilon {epsilon} is not a 4-cycle: edges {:?}",
            graph.edges
        )));
    }
    Ok(graph)
}

/// Persistence and homology class of four lifted points.
pub fn classify_quadruple(cloud: &LiftedPointCloud) -> Result<QuadrupleResult> {
    if cloud.len() != 4 {
        return Err(Error::Input(format!("a quadruple needs 4 points, got {}", cloud.len())));
    }
    let surface = cloud.surface();
    let p = cloud.points();
    let mut found: BTreeMap<(usize, usize), BaseDistance> = BTreeMap::new();
    let mut d = [[0.0; 4]; 4];
    let mut tied = [[false; 4]; 4];
    for i in 0..4 {
        for j in i + 1..4 {
            let bd = surface.base_distance(&p[i], &p[j])?;
            if bd.distance <= DUPLICATE_TOLERANCE {
                return Err(Error::Input(format!("points {i} and {j} are the same base point")));
            }
            d[i][j] = bd.distance;
            d[j][i] = bd.distance;
            tied[i][j] = bd.tied();
            found.insert((i, j), bd);
        }
    }
    let mut result = four_point_persistence(&d)?;
    let (Some(birth), Some(death), Some(cycle)) = (result.birth, result.death, result.cycle_order) else {
        return Ok(result);
    };
    let graph = minimal_cycle_graph_flagged(&d, &tied, &result, (birth + death) / 2.0)?;
    let assignment = graph.edges.iter().map(|e| found[e].best().clone()).collect();
    let transition = TransitionMap::from_assignment(cloud.kind(), &graph, assignment)?;
    let chain = Chain::from_loop(&cycle);
    result.class = Some(transition.homology_class(&chain)?.canonical_sign());
    result.degenerate = transition.touches_degenerate(&chain);
    Ok(result)
}

/// Monte Carlo sample of the principal persistence measure.
#[derive(Clone, Debug)]
pub struct MeasureSample {
    pub surface: SurfaceKind,
    pub total: usize,
    pub persistent: usize,
    /// Persistent quadruples with a tied minimizer on a cycle edge plus
    /// trivial quadruples sitting on the persistence boundary.
    pub degenerate: usize,
    /// Quadruples that raised an error and were left out.
    pub skipped: usize,
    /// Persistent quadruples with their sample index.
    pub points: Vec<(usize, QuadrupleResult)>,
    pub phi_bar: f64,
}

/// Classifies `count` quadruples drawn uniformly from the surface.
///
/// All points are drawn from `seed` before classification starts, so the
/// result does not depend on the thread schedule.
pub fn principal_persistence_measure(surface: &Surface, count: usize, seed: u64) -> Result<MeasureSample> {
    if count == 0 {
        return Err(Error::Input("the number of quadruples must be at least 1".into()));
    }
    let draws = surface.sample_uniform(4 * count, seed);
    let outcomes: Vec<Option<QuadrupleResult>> = draws
        .par_chunks(4)
        .map(|quad| {
            LiftedPointCloud::new(*surface, quad.to_vec())
                .and_then(|cloud| classify_quadruple(&cloud))
                .ok()
        })
        .collect();
    let mut sample = MeasureSample {
        surface: surface.kind(),
        total: count,
        persistent: 0,
        degenerate: 0,
        skipped: 0,
        points: Vec::new(),
        phi_bar: 0.0,
    };
    for (index, outcome) in outcomes.into_iter().enumerate() {
        let Some(result) = outcome else {
            sample.skipped += 1;
            continue;
        };
        sample.degenerate += usize::from(result.degenerate);
        if !result.trivial {
            sample.persistent += 1;
            sample.points.push((index, result));
        }
    }
    sample.phi_bar = sample.persistent as f64 / sample.total as f64;
    Ok(sample)
}

/// One line of the JSONL output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PersistenceRecord {
    pub surface: SurfaceKind,
    pub index: usize,
    #[serde(serialize_with = "sig17::serialize")]
    pub birth: f64,
    #[serde(serialize_with = "sig17::serialize")]
    pub death: f64,
    pub class_free: Vec<i64>,
    pub class_torsion: Vec<u8>,
    pub degenerate: bool,
}

/// Summary JSON. `class_counts` leaves out degenerate quadruples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureSummary {
    pub surface: SurfaceKind,
    pub total: usize,
    pub persistent: usize,
    #[serde(serialize_with = "sig17::serialize")]
    pub phi_bar: f64,
    pub class_counts: BTreeMap<String, usize>,
    pub skipped: usize,
    pub degenerate: usize,
}

impl MeasureSample {
    pub fn records(&self) -> impl Iterator<Item = PersistenceRecord> + '_ {
        self.points.iter().map(|(index, r)| {
            let class = r.class.clone().unwrap_or_else(|| AbelianClass::zero(self.surface));
            PersistenceRecord {
                surface: self.surface,
                index: *index,
                birth: r.birth.unwrap_or(f64::NAN),
                death: r.death.unwrap_or(f64::NAN),
                class_free: class.free,
                class_torsion: class.torsion,
                degenerate: r.degenerate,
            }
        })
    }

    pub fn class_counts(&self) -> BTreeMap<AbelianClass, usize> {
        let mut counts = BTreeMap::new();
        for (_, r) in &self.points {
            if let (false, Some(class)) = (r.degenerate, &r.class) {
                *counts.entry(class.clone()).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn summary(&self) -> MeasureSummary {
        MeasureSummary {
            surface: self.surface,
            total: self.total,
            persistent: self.persistent,
            phi_bar: self.phi_bar,
            class_counts: self.class_counts().into_iter().map(|(c, n)| (c.to_string(), n)).collect(),
            skipped: self.skipped,
            degenerate: self.degenerate,
        }
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for record in self.records() {
            serde_json::to_writer(&mut out, &record)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

//! Ambient first-homology classification of one-cycles in point clouds on
//! the torus, Klein bottle, real projective plane and genus-two surface.
//!
//! Each surface is handled through its universal cover: a point cloud is
//! given by one lift per point, the ε-graph on the cloud gets a transition
//! map `t(i→j)` from nearest deck translates, and closed walks are
//! classified by abelianizing the products of `t` along them.

pub mod complex;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod persistence;
pub mod surfaces;
pub mod transition;

pub use complex::{build_epsilon_graph, cycle_basis, CycleBasis, EpsilonGraph, LiftedPointCloud};
pub use error::{Error, Result};
pub use persistence::{
    classify_quadruple, four_point_persistence, minimal_cycle_graph, principal_persistence_measure, MeasureSample,
    QuadrupleResult,
};
pub use surfaces::{
    AbelianClass, BaseDistance, CoverPoint, GroupElement, SearchConfig, Surface, SurfaceKind, Word,
};
pub use transition::{classify_cloud, compute_transition, Chain, CloudClassification, CocycleReport, TransitionMap};

//! Exact weight combinatorics for highest-weight modules over the affine Lie
//! algebra of type A with `e` residues.
//!
//! Weights are handled in *content* coordinates: a weight `λ = Λ - Σ c_i α_i`
//! is stored as the integer vector `c`. From a [`HighestWeight`] and a
//! [`Content`] the crate derives the hub, defect and degree, decides membership
//! in the weight set `P(Λ)`, enumerates the reduced crystal graph up to a
//! degree cap, and computes the degree bound past which every weight of a
//! given defect sits at the high-degree end of some `i`-string.
//!
//! All arithmetic is exact `i64`; the workspace enables overflow checks in
//! every profile so wraparound aborts instead of corrupting a bound.

pub mod bounds_general;
pub mod checks;
pub mod crystal_graph;
pub mod e2_closed_form;
mod error;
pub mod linalg;
pub mod membership;
pub mod reports;
pub mod root_system;

pub use bounds_general::{
    region_points, sharp_n, sharp_n_with, verify_n, FailingWeight, Reducibility, RegionPoint, RegionReport, SharpBound,
    VerifyReport,
};
pub use crystal_graph::{
    check_external_criterion, is_external, is_i_external, reduce_weight, CriterionViolation, CrystalGraph, Reduction,
    VertexInfo,
};
pub use e2_closed_form::{E2Context, QuDecomposition, SVariant};
pub use error::{Error, Result};
pub use membership::{
    dominant_rep, hub_to_lattice, in_p, is_max, max_table, nu_prime_corner, s_of_m, Dominant, LatticePoint, MaxRow,
    MaxWeight,
};
pub use root_system::{Content, HighestWeight, Hub, RankData};

//! Exact-arithmetic lattice computations on the Enriques surface:
//! the I_{1,10} / Enriques-lattice correspondence, Weyl-chamber reduction,
//! the Φ-invariant and algebraic capacities, symplectic radius bounds,
//! Gromov-Taubes / Seiberg-Witten nonvanishing classifiers, and bounded
//! checks on the K3 covering lattice.

pub mod chamber;
pub mod error;
pub mod invariants;
pub mod k3;
pub mod lattice;
pub mod rat;
pub mod taubes;

pub use chamber::{
    compare_on_chamber, cone_membership, enumerate_vertices_oracle, reduce, vertex_class,
    vertices, ChamberPoint, Comparison, Reduction, ReductionTrace, Region,
};
pub use error::{Error, Result};
pub use invariants::{
    alg_capacity, invariant_report, kahler_bounds, non_kahler_witness, phi_bruteforce,
    phi_closed_form, sample_region, symp_radius_squared, witness_fraction, CapacityResult,
    EnumerationBound, InvariantReport, NefModel, WitnessReport,
};
pub use k3::{
    anti_invariant_sublattice, invariant_sublattice, iota_star, k3_pairing, k3_square,
    period_point_check, pullback, K3Vector, PeriodCandidate, PeriodReport, Sublattice,
};
pub use lattice::{
    canonical_class, forward_cone_membership, forward_reference, gram, pairing, psi, psi_inv,
    r, s, square, Basis, ConeLocation, LatticeVector, ReflectionDescriptor, VectorLiteral,
};
pub use rat::{parse_rat, rat, rat_int, rat_str, Rat};
pub use taubes::{
    classify, connected_rep_exists, forward_closure_member, gt_dimension, symplectic_cone_member,
    BlowupClass, Classification,
};

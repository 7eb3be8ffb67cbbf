//! Combinatorics of compactified Jacobians of monomial unibranch curves.
//!
//! The crate models the local ring of a singular point by its numerical
//! semigroup Γ, the torus-fixed torsion-free rank-one modules by Γ-stable
//! sets of orders, and one-parameter degenerations of free modules by exact
//! polynomial lattices whose saturation gives the flat limit.
//!
//! - [`semigroup`]: invariants, remark checks, partial normalizations, curve types.
//! - [`semimodule`]: ranks, duals, endomorphisms, filtrations, enumeration.
//! - [`strata`]: stratification by `r`, component witnesses, containment DAG.
//! - [`deform`]: family parsing, saturation, flat limits, certificate search.
//! - [`oracle`]: brute-force invariant subspaces over `F_2` and `F_3`.

pub mod bitset;
pub mod deform;
pub mod error;
pub mod oracle;
pub mod semigroup;
pub mod semimodule;
pub mod strata;

pub use bitset::BitSet;
pub use deform::{
    build_lattice, certificate_search, filt_equals_kbar_report, flat_limit, Budget,
    DeformationFamily, KbarEntry, KbarReport, LimitResult, PolyLattice,
};
pub use error::{Error, Result};
pub use oracle::{enumerate_invariant_subspaces, oracle_report, InvariantSubspace, OracleReport};
pub use semigroup::{
    enumerate_semigroups, Condition06, NormalizationChain, NumericalSemigroup, RemarkReport,
    TypeTags,
};
pub use semimodule::{
    CreateMode, EndData, EnumFilter, FiltrationData, GammaSemimodule, Ranks, Shifted,
};
pub use strata::{
    cor411_holds, cor412_intersection, p_split, pushforward, strata_dag, stratify,
    thm31_order_predicate, thm41_predicate, thm42_witness, DagEdge, DagNode, EdgeKind, PSplit,
    Pushforward, StrataDag, Stratum, StratumEntry, StratumReport,
};

//! Exact lattice computation of the groups of degree-3 cohomological
//! invariants of the split groups `SL_n/mu_m` and `HSpin_{4n}`.
//!
//! For a split semisimple group `G` with character lattice `Lambda`, the
//! Weyl-invariant quadratic forms on `Lambda` form an infinite cyclic group
//! `Q(G) = ell q Z`, where `q` is normalized by `q(coroot) = 1`, and the
//! gcd `n_G` of the Dynkin indices of all representations of `G` cuts out
//! the subgroup `Dec(G) = n_G q Z`. The group of indecomposable degree-3
//! invariants is the quotient `(ell Z / n_G Z) q`, while the decomposable
//! part is `F^x/F^{x e}` with `e` the order of the center character group.
//! This crate computes all of those quantities in exact rational
//! arithmetic, evaluates the closed-form case tables for both families, and
//! cross-checks every closed form against independent brute-force oracles.
//!
//! Everything is deterministic: lattices are stored in Hermite normal form,
//! enumerations are lexicographic, and reports serialize byte-identically
//! across runs.

pub mod arith;
pub mod cli;
pub mod error;
pub mod invariants;
pub mod lattice;
pub mod qform;
pub mod repth;
pub mod restrict;
pub mod rootsys;
pub mod verify;

mod intlin;

pub use arith::Rat;
pub use error::{Error, Result};
pub use invariants::{
    report, split_cases, theorem_table_halfspin, theorem_table_sl, CrossCheck, InvariantReport,
    TheoremRow,
};
pub use lattice::{
    lattice_half_spin, lattice_sl_mod_mu, CharLattice, GroupKind, GroupSpec,
};
pub use qform::{
    ell_closed_form_halfspin, ell_closed_form_sl, ell_of_lattice, InvariantForm,
};
pub use repth::{
    dynkin_index, enumerate_dominant, n_chi_type_a, n_closed_form_halfspin, n_closed_form_sl,
    n_g_bruteforce, orbit_index, ord_p_binom, weyl_dim, DominantCharacter, DynkinBounds,
    NgBruteForce,
};
pub use restrict::{
    embed_a_in_d, induced_quotient_map, rost_multiplier, LatticeEmbedding, QuotientMapDescription,
};
pub use rootsys::{
    build_root_datum, fundamental_group, simple_reflection, Family, FundamentalGroupStruct,
    RootDatum,
};

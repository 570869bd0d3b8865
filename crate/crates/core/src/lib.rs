//! Regular cycles of elements of finite permutation groups.
//!
//! An element `g` has a *regular cycle* in an action when some orbit of
//! `<g>` has length equal to the order of `g`. This crate decides that
//! property for the induced actions that come up when studying primitive
//! groups (k-sets, uniform partitions, product actions, vector and affine
//! actions, diagonal actions, coset actions), builds certified witness
//! points from explicit constructions, and evaluates the analytic bounds
//! used to rule out counterexamples in large degree.
//!
//! Module map:
//! - [`perm`] and [`arith`]: permutations, cycle types, factorizations.
//! - [`gf`]: small finite fields, matrices, affine and semilinear maps.
//! - [`groups`]: generator closure, conjugacy classes, coset actions and
//!   the named groups used throughout.
//! - [`actions`]: the [`Action`] trait and every induced action.
//! - [`regcycle`]: decision procedures and witness constructions.
//! - [`bounds`]: interval-certified evaluation of the analytic bounds.
//! - [`lang`]: the group/action/element mini-languages shared with the CLI.
//! - [`suites`]: verification suites run by `regcycle verify`.

pub mod actions;
pub mod arith;
pub mod bounds;
pub mod error;
pub mod gf;
pub mod groups;
pub mod lang;
pub mod suites;
pub mod perm;
pub mod regcycle;

pub use actions::{Action, FixSet};
pub use arith::{factorize, nk_threshold, Factorization};
pub use error::{Error, Result};
pub use groups::GeneratedGroup;
pub use perm::{CycleType, Permutation};
pub use regcycle::{Method, Verdict};

/// Exact rational used for fixed-point ratios and fpr sums.
pub type Rational = num_rational::Ratio<u64>;

//! Exact-arithmetic formal calculus around Novikov algebras and the vertex
//! algebras they generate.
//!
//! The crate builds, over arbitrary-precision rationals:
//!
//! * the one-parameter family of flows `phi_eps(x, z) = e^{z x^eps d/dx} x`
//!   of the additive formal group, together with the auxiliary unit series
//!   attached to them ([`associate`]);
//! * a formal delta-distribution calculus with twisted derivatives
//!   ([`delta`]);
//! * finite-dimensional nonassociative algebras given by structure
//!   constants, Novikov-axiom checkers and the Gelfand construction
//!   ([`novikov`]);
//! * the affinized Lie algebras with cubic central 2-cocycles built from a
//!   Novikov algebra and an invariant form ([`lie`]);
//! * induced vacuum modules in PBW normal ordering with vertex-operator
//!   modes ([`vacuum`]);
//! * coordinate-deformed module checks: the commutator formula, the
//!   deformed associativity axiom and the Jacobi-type identity
//!   ([`phicoord`]).
//!
//! Everything is exact: a check either holds coefficientwise on its stated
//! window or fails with a witness. The `verify` CLI (see `src/main.rs`)
//! drives the whole battery from a plain-text algebra file.

pub mod associate;
pub mod delta;
pub mod lie;
pub mod novikov;
pub mod phicoord;
pub mod report;
pub mod scalar;
pub mod series;
pub mod specfile;
pub mod suites;
pub mod vacuum;

pub use scalar::Q;

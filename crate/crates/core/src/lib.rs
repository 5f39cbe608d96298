//! Exact three-valued model computation for a higher-order logic
//! programming language with negation.
//!
//! A program declares typed predicate constants and defines them with
//! clauses whose bodies are higher-order terms built from application,
//! lambda abstraction, and the connectives `&`, `|`, `~`, `=`, `exists`.
//! Over the (finite) universe of the program's individual constants the
//! engine computes:
//!
//! * the well-founded model, by iterating a stable-revision operator on
//!   pairs of two-valued interpretations to its least fixpoint;
//! * the Kripke-Kleene model, the least fixpoint of the immediate
//!   consequence operator on the same pairs;
//! * all three-valued stable models, for programs small enough to scan.
//!
//! Queries are closed terms of type `o` and evaluate to `false`, `undef`,
//! or `true` in the computed model.

pub mod aft;
pub mod bijection;
pub mod diag;
pub mod domains;
pub mod engine;
pub mod oracle;
pub mod semantics;
pub mod syntax;
pub mod typesys;

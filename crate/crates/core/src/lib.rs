//! Exact-arithmetic engine for arrangements of x-monotone and closed
//! polygonal curves.
//!
//! The crate classifies every pairwise intersection of a curve family into
//! touchings and crossings, materializes weighted charging graphs between the
//! two vertex classes, and audits the finite counting claims those graphs are
//! built to witness. All predicates run on exact rationals; floating point
//! appears only in report-level evaluations of logarithmic bounds.

pub mod arrangement;
pub mod charging;
pub mod files;
pub mod generators;
pub mod geometry;
pub mod rational;
pub mod transforms;

pub use rational::Rat;

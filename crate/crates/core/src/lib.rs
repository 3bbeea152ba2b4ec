//! Preferential attachment growth processes and their limit laws.
//!
//! The crate covers five discrete and continuous growth models:
//!
//! - the Simon model ([`model::simon`]), a directed graph where each step either
//!   adds a vertex with a directed loop or adds an edge from the newest vertex
//!   to a target chosen proportionally to in-degree;
//! - the II-PA model ([`model::iipa`]), where every vertex arrives with a loop
//!   followed by exactly `m` preferential edges;
//! - the Price model ([`model::price`]), with a random out-degree per vertex
//!   and targets drawn from frozen in-degrees;
//! - the Barabási–Albert model ([`model::ba`]) in both its single-edge form
//!   with vertex identification and its rescaled-time per-edge form;
//! - the two-level Yule model ([`model::yule`]) in continuous time.
//!
//! [`theory`] evaluates the closed-form limit distributions, iterates the
//! finite-time master equations and enumerates tiny instances exactly.
//! [`stats`] turns runs into histograms, distances, tail fits and waiting-time
//! samples. [`experiment`] is the seeded, reproducible runner behind the
//! `prefattach` binary.

pub mod error;
pub mod experiment;
pub mod model;
pub mod rng;
pub mod stats;
pub mod theory;

pub use error::{Error, Result};
pub use model::{EventKind, EventRecord, GraphState, ModelSpec, OutDegreeLaw};
pub use rng::{Purpose, StreamRng};

//! Hierarchical skill learning with episodic compositional memory.
//!
//! An [`ecm::Ecm`] chooses a sensing action, maps the haptic reading to a
//! perceptual state through a trained [`haptic`] classifier, and picks a
//! preparatory skill that brings the world into a state where a complex
//! skill succeeds. The [`agent`] plays skills against the simulated
//! [`world`], registers learned skills as preparations of others, and
//! [`convergence`] runs populations of abstracted agents to measure how fast
//! the success rate converges. [`cli`] backs the `skill-ecm` binary.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod agent;
pub mod cli;
pub mod config;
pub mod convergence;
pub mod ecm;
pub mod haptic;
pub mod seed;
pub mod svg;
pub mod world;

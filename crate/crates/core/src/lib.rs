//! Core engine for a higher-order equivariant message-passing interatomic
//! potential.
//!
//! The crate is organised around the pipeline that turns an atomic
//! configuration into an energy and forces:
//!
//! * [`sph`], [`cg`], [`coupling`], [`wigner`] — the O(3) algebra: real
//!   spherical harmonics, real-basis Clebsch–Gordan tables, generalised
//!   coupling-path enumeration and Wigner-D test utilities.
//! * [`radial`] — Bessel radial basis, polynomial cutoff envelope and the
//!   radial MLP producing per-edge weights.
//! * [`graph`] — configurations, neighbor lists and dataset statistics.
//! * [`plan`], [`model`] — the contraction plan realising the looped tensor
//!   contraction, and the full forward pass (embedding, atomic basis,
//!   many-body messages, update, readout).
//! * [`tape`], [`autodiff`] — reverse-mode differentiation over recorded
//!   primitives, yielding forces and parameter gradients; dual numbers give
//!   the second-order term of the force loss.
//! * [`train`] — AMSGrad, plateau scheduler, EMA, loss and metrics.
//! * [`selfcheck`] — the embedded property suite (equivariance, coupling
//!   orthogonality, gradient checks, oracle equivalence).
//!
//! The crate is `no_std`-compatible (with `alloc`); file formats, the CLI
//! and anything touching the OS live in the companion `mace` crate.
//!
//! All floating point work is `f64`. Units are eV, Å and eV/Å throughout;
//! there is no unit-conversion layer.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("mace-core needs either the `std` or the `libm` feature");

pub mod cg;
pub mod coupling;
pub mod error;
pub mod fmath;
pub mod rng;
pub mod scalar;
pub mod sph;
pub mod wigner;

pub use error::{Error, Result};

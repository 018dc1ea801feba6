//! Exact finite models of triangulated categories and the stability-condition
//! machinery built on them: Harder–Narasimhan filtrations, masses, the
//! Bridgeland and slicing metrics, the geometry of central-charge space and of
//! its universal cover, and the analysis of Cauchy sequences of stability
//! conditions that produces generalized stability conditions `(K, σ̄)`.
//!
//! The crate is `no_std` and only needs `alloc`. Transcendental functions come
//! from `libm`.
//!
//! Two categories are supported:
//!
//! * `a1_cyn:N`: the CY-`N` category generated by one spherical object `S`;
//!   its stability manifold is the universal cover of `ℂ*`.
//! * `a2_path`: the bounded derived category of the `A₂` quiver, with simples
//!   `S1`, `S2` and the extension `0 → S2 → E → S1 → 0`.
//!
//! Quotients by thick subcategories produce two further rank ≤ 1 models,
//! `a1_path` and `zero`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod completion;
mod error;
pub mod geometry;
pub mod model;
pub mod norm;
pub mod phase;
pub mod rep;
pub mod stability;

pub use error::{Error, Result};
pub use model::{
    CategoryModel, Charge, Class, DgObject, Heart, HeartRef, Indec, ModelId, Placement, Quotient,
    Shifted, ThickSubcategory,
};
pub use norm::QuadraticForm;
pub use num_complex::Complex64;
pub use stability::{HnFactor, HnFiltration, StabilityCondition};

/// Half-width of the integer shift window used whenever a property has to be
/// checked "for all shifts". Every invariant in this crate is shift-periodic.
pub const SHIFT_WINDOW: i32 = 8;

/// Phases closer than this are treated as equal when grouping HN factors.
pub const PHASE_TIE_TOL: f64 = 1e-12;

/// A limit charge below this modulus counts as zero (the object is massless).
pub const ZERO_CHARGE_TOL: f64 = 1e-12;

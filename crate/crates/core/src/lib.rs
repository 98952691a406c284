//! Plane-wave reflection and transmission for planar stratified stacks of
//! chiral, chiral-nihility and ordinary dielectric slabs in air.
//!
//! The solver is generic over the real scalar type; the `*64` / `*32` aliases
//! below are the concrete instantiations most callers want.

// `!(x <= limit)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod direct;
pub mod error;
pub mod linalg;
pub mod media;
pub mod scalar;
pub mod spectra;
pub mod stack;
pub mod tmm;

pub use error::{Result, TmmError};
pub use media::{EigenwaveKinematics, EigenwaveTemplate, MaterialParams};
pub use scalar::{consts, Cx, Scalar};
pub use spectra::{run_sweep, Engine, PowerBreakdown, SweepAxis, SweepFailure, SweepGrid, SweepOutcome, SweepRow};
pub use stack::{Layer, Stack};
pub use tmm::{Medium, Response};

pub type Material64 = MaterialParams<f64>;
pub type Material32 = MaterialParams<f32>;
pub type Layer64 = Layer<f64>;
pub type Layer32 = Layer<f32>;
pub type Stack64 = Stack<f64>;
pub type Stack32 = Stack<f32>;
pub type Response64 = Response<f64>;
pub type Response32 = Response<f32>;
pub type SweepRow64 = SweepRow<f64>;
pub type Complex64 = Cx<f64>;

//! Exact projective-geometry verification engine.

pub mod error;
pub mod kernel;
pub mod p2;
pub mod p3;
pub mod conics;
pub mod theorems;
pub mod moulton;
pub mod scene;
pub mod fuzz;

pub use error::GeomError;

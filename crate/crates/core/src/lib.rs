//! Measurement-based quantum computation with arbitrary-axis measurements:
//! dense simulation, closed-form nonunitary gates, ZX diagrams, feedback and
//! imaginary-time protocols, and operator-entanglement estimators.

pub mod angle;
pub mod estimators;
pub mod fixtures;
pub mod gates;
pub mod linear_map;
pub mod mbqc;
pub mod numeric;
pub mod protocols;
pub mod zx;

pub use linear_map::LinearMap;

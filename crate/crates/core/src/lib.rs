//! Coloured tangle invariants: the skew-Howe evaluator for fundamental
//! `sl_m` labels, the colour-deformed `m = 2` Khovanov complex and its
//! spectral sequence over a line, a determinant-line ledger and Grassmannian
//! tower geometry.

pub mod exact_algebra;
pub mod tangle_core;
pub mod skew_howe_evaluator;
pub mod coloured_khovanov;
pub mod picard_ledger;
pub mod grassmann_geometry;

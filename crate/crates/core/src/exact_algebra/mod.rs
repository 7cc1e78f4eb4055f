//! Exact scalars, sparse matrices and homology over the rationals and `Q[x]`.

pub mod homology;
pub mod laurent;
pub mod matrix;
pub mod multi;
pub mod ring;
pub mod snf;
pub mod upoly;

pub use homology::{
    graded_homology_over_line, homology_over_field, rank_q, specialize_line, ChainComplex, GradedModuleDecomp,
    LineComplex,
};
pub use laurent::{binomial, qbinom, qfactorial, qint, LaurentPoly};
pub use matrix::SparseMatrix;
pub use multi::{Monomial, MultiPoly};
pub use ring::{qi, qr, Ring, Q};
pub use snf::{smith_normal_form, smith_normal_form_multi, SmithForm};
pub use upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("cannot parse polynomial `{0}`")]
    Parse(String),
    #[error("argument out of range: {0}")]
    Domain(String),
    #[error("unsupported scalar ring: {0}")]
    UnsupportedRing(String),
    #[error("not a complex: d o d != 0 at degree {0}")]
    NotAComplex(i64),
    #[error("grading violation: {0}")]
    Grading(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

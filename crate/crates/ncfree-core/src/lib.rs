//! Exact free differential calculus on polynomials with non-commutative
//! coefficients: the free difference quotient and cyclic derivative, their
//! divergence, number and grading operators, constructive Poincaré-lemma
//! solvers, the kernel decomposition of the cyclic derivative, a block-matrix
//! evaluation harness that cross-validates the symbolic operators
//! numerically, and a Monte-Carlo Haar-unitary trace-moment oracle.

pub mod algebra;
pub mod calculus;
pub mod error;
pub mod haar;
pub mod matricial;
pub mod ncpoly;
pub mod poincare;
pub mod sampling;
pub mod scalar;

pub use algebra::{AlgebraKind, CoeffAlgebra, CoeffElem, Functional};
pub use error::{Error, Result};
pub use ncpoly::{NCPoly, RawWord, TensorPoly, TensorPoly3, Word};
pub use scalar::Scalar;

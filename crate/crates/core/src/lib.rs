//! Generalized inverses and matrix partial orders.
//!
//! The crate decides the minus partial order, the space pre-order and the
//! star order on matrices over the rationals, prime fields and complex
//! floats; constructs and parametrizes inner, reflexive and Moore-Penrose
//! inverses; locates minimal and maximal elements of the minus order;
//! analyzes linear maps that preserve it; and checks the underlying ring
//! identities exhaustively on small finite rings ([`ringlab`]).

pub mod error;
pub mod field;
pub mod geninv;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod orders;
pub mod preservers;
pub mod random;
pub mod ringlab;
pub mod structure;
pub mod svd;

pub use error::{Error, Result};
pub use field::{ComplexFloat, Field, PrimeField, Rationals};
pub use matrix::Matrix;

//! Zero-divisor digraphs of matrix semirings over finite commutative
//! antirings, their twin structure, and their automorphism groups.
//!
//! The automorphism group of `Γ(M_n(S))` is computed two ways: from the
//! component structure of `S` (a maximal orthogonal decomposition of a
//! non-zero-divisor and the labelled twin quotients of the components), and
//! by a backtracking search over the digraph itself. [`aut::verify`] runs
//! both and compares them.
//!
//! ```
//! use std::sync::Arc;
//! use zdaut::{aut, semiring::Builtin};
//!
//! let s = Arc::new("bool".parse::<Builtin>().unwrap().build().unwrap());
//! let order = aut::aut_order(&s, 2, &aut::Limits::default()).unwrap();
//! assert_eq!(order.to_string(), "10080");
//! ```

pub mod aut;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod matrix;
pub mod perm;
pub mod semiring;
pub mod zdg;

pub use error::{Error, Result};
pub use matrix::{Matrix, MatrixSpace};
pub use perm::VertexMap;
pub use semiring::{Builtin, Elem, FiniteSemiring};

//! Exact group determinants of finite abelian groups.
//!
//! The crate evaluates the group determinant `det(x_{g h^-1})` of a finite
//! group in three independent ways (fraction-free elimination, the character
//! product over `Z[zeta_N]`, and the factorization through a subgroup),
//! expands the canonical subgroup polynomials `z_h` symbolically, and carries
//! the machinery that decides which integers are group determinants of
//! `C8 x C2`.

pub mod c8c2;
pub mod cyclotomic;
pub mod error;
pub mod gdet;
pub mod graded_poly;
pub mod groups;
pub mod numtheory;
pub mod search;
pub mod serde_int;

pub use error::{Error, Result};

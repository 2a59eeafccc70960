//! Exact computations around pencils and nets of quadrics, their double
//! covers, Mukai vectors and K3 lattices.

pub mod algebra;
pub mod construction;
pub mod enumerative;
mod error;
pub mod io;
pub mod mukai;
pub mod quadform;
pub mod systems;

pub use algebra::{Fp, OddPrime, Rational};
pub use error::{Error, ErrorKind};

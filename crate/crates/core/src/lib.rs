//! Exact computations for standard graded quadratic algebras `R = Q/I`:
//! Gröbner bases and Hilbert series, Koszul complexes and short Tate
//! complexes, minimal resolutions of the residue field, Koszulness and Golod
//! tests, and verified complete-intersection witnesses of Golod maps.

pub mod algebra;
pub mod classify;
pub mod complexes;
pub mod conditions;
pub mod corpus;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod resolution;
pub mod series;
pub mod structure;
pub mod witness;

pub use error::{Error, Result};

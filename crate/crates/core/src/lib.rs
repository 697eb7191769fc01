//! Exact computations with injective complexes over the dual numbers
//! `R = Z[x]/(x²)`: Prüfer-group models of injective hulls, countable products
//! with formulaic elements, small and big support, associated primes, torsion
//! functors and minimality of injective complexes.

pub mod complexes;
pub mod error;
pub mod exactnum;
pub mod modules;
pub mod oracle;
pub mod ring;
pub mod support;

pub use error::{Error, Result};

//! Exact weight multiplicities and dimensions of multi-variable Weyl
//! modules for gl_r, through closed formulas, generalized parking
//! functions, character recurrences and a brute-force coinvariant oracle.

pub mod characters;
pub mod coinvariants;
pub mod error;
pub mod exactnum;
pub mod formulas;
pub mod methods;
pub mod oeis;
pub mod parking;
pub mod partitions;
pub mod polyfit;
pub mod verify;

pub use error::{Error, Result};

pub mod bitset;
pub mod coxeter;
pub mod error;
pub mod experiments;
pub mod io;
pub mod lattice;
pub mod lpp;
pub mod plot;
pub mod poset;
pub mod prob;
pub mod sim;
pub mod tamari;
pub mod ungar;
pub mod verify;
pub mod weak;
pub mod zoo;

pub use error::{Error, ErrorClass, Result};
pub use lattice::FiniteLattice;
pub use poset::FinitePoset;
pub use prob::Probability;

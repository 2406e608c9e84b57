//! Exact arithmetic and checkers for orthogonal packings of the unit cube.

pub mod certificate;
pub mod constructions;
pub mod cube_core;
pub mod error;
pub mod exactreal;
pub mod finite_group;
pub mod verify;

pub use certificate::{Certificate, Verdict, Witness};
pub use constructions::{Family, FamilySet, SquareSpectrum};
pub use cube_core::{Slab, Vector};
pub use error::{Error, Result};
pub use exactreal::{QuadraticSurd, RefineConfig, SymbolId, SymbolWitness, SymbolicReal};

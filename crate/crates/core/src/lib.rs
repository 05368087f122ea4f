//! Exact computations with positive-primitive formulas over quivers with
//! relations, their interpretation functors and the associated functor
//! categories.

pub mod error;
pub mod interp;
pub mod exactla;
pub mod funcat;
pub mod ppcore;
pub mod ppeval;
pub mod quivalg;
pub mod repmod;
pub mod tensorpure;
pub mod textio;

pub use error::{Error, Result};

//! Exact algebra over F_p and Q: group rings, Witt and Grothendieck-Witt
//! rings, Milnor and Milnor-Witt K-theory, and the general-position chain
//! complexes together with their coinvariant modules.

pub mod error;
pub mod exactla;
pub mod gpcomplex;
pub mod groupring;
pub mod milnor;
pub mod mwk;
pub mod par;
pub mod quadform;

pub use error::{MwError, Result};

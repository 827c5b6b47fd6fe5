//! Complete weight enumerators of the trace codes built from the defining set
//! D_a = {x in F_q^* : Tr(x^{p^alpha+1}) = a}, computed by exhaustive
//! enumeration and by closed forms, plus the character-sum identities the
//! closed forms rest on.

pub mod char_sums;
pub mod cli;
pub mod code;
pub mod cwe;
pub mod error;
pub mod report;
pub mod field;
mod poly;
pub mod suites;
pub mod sweep;
mod words;

pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldParams, MdParity, PrimeResidue};

//! Finite quandles: validation of the quandle axioms, right and left
//! translations, profiles, connectedness, latinity, exhaustive enumeration
//! of small quandles and instance checkers for the criterion that a quandle
//! whose right translations all have cycles of distinct lengths is latin.
//!
//! Elements are always `1..=n` at the public API.
//!
//! ```
//! use quandles::constructions::named_example;
//! use quandles::checks::check_main_theorem;
//!
//! let q = named_example("Q9_4").unwrap();
//! assert_eq!(q.profile().to_string(), "(1,2,6)");
//! let report = check_main_theorem(&q);
//! assert!(report.hypothesis_holds && report.conclusion_holds);
//! ```

pub mod catalog;
pub mod checks;
pub mod cli;
pub mod constructions;
pub mod enumerate;
mod error;
pub mod orbit;
pub mod perm;
pub mod quandle;

pub use error::{Error, Result};
pub use perm::{CycleStructure, Permutation};
pub use quandle::{LeftTranslation, Profile, QuandleTable};

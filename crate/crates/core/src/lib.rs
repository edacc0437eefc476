//! Correction terms `d(S^3_{+1}(K))` and `d(S^3_{-1}(K))` from a generating
//! complex for `CFK∞(K)` over F2, and a mapping-cone check for the surgeries
//! on the Borromean knots.
//!
//! ```
//! use dtower_core::{d_minus_one, d_plus_one, models};
//!
//! let rht = models::rht();
//! assert_eq!(d_plus_one(&rht).unwrap(), -2);
//! assert_eq!(d_minus_one(&rht).unwrap(), 0);
//! ```

pub mod complex;
pub mod cone;
pub mod dinv;
pub mod document;
pub mod error;
pub mod exec;
pub mod f2;
pub mod grading;
pub mod models;
pub mod truncation;

pub use complex::{
    Bifiltration, CanonicalForm, ChainElement, GenId, Generator, GeneratorKey, KnotComplex, ValidationReport,
    Violation, ViolationKind,
};
pub use cone::{verify_borromean, BorromeanReport};
pub use dinv::{
    alt_signature_d, compute_d, compute_d_batch, d_minus_one, d_plus_one, large_surgery_d, DConfig, DInvariantReport,
};
pub use document::{read_complex, write_complex, ComplexDocument};
pub use error::{Error, Result};
pub use exec::Exec;
pub use grading::{assign_gradings, y_slice, GradedComplex};
pub use truncation::{Region, TruncatedComplex};

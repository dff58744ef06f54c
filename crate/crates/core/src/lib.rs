//! Greechie orthogonality diagrams, two-valued measures and a simulated
//! Born-rule random number generator.
//!
//! The crate is organised bottom-up:
//!
//! - [`ray`]: real unit vectors, Born probabilities and context completion.
//! - [`greechie`]: diagrams of atoms and blocks, coordinatizations, the
//!   star and bug configurations, JSON and DOT formats.
//! - [`valuations`]: propagation, enumeration and classification of
//!   two-valued measures.
//! - [`qrng`]: Born-rule sampling with overlap certification.

pub mod error;
pub mod greechie;
pub mod qrng;
pub mod ray;
pub mod valuations;

pub use error::{Error, Result};
pub use greechie::{Atom, Block, Diagram, RealizationReport};
pub use qrng::{CertificationBounds, QrngConfig, SampleRun};
pub use ray::{ContextBasis, Ray};
pub use valuations::{
    ClassificationReport, Contradiction, PartialValuation, Propagation, Status, Valuation,
};

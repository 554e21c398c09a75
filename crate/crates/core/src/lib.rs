//! Exact computation with cofinite partial isometries of ℕ of bounded noise,
//! the bicyclic monoid inside them, the extension by an adjoined copy of `ℤ`
//! and the locally compact topologies on that extension.
//!
//! Products act on the right: `a.compose(&b)` applies `a` first.
//!
//! ```
//! use pisom::PartialIso;
//!
//! let ab = PartialIso::alpha().compose(&PartialIso::beta());
//! assert_eq!(ab, PartialIso::identity());
//! let ba = PartialIso::beta().compose(&PartialIso::alpha());
//! assert_eq!(ba.excluded(), &[1]);
//! ```

pub mod bicyclic;
pub mod element;
pub mod error;
pub mod extension;
pub mod noise;
pub mod oracle;
pub mod relations;
pub mod topology;

pub use bicyclic::{BicyclicNF, BicyclicWord, Letter};
pub use element::{PartialIso, Point};
pub use error::{Error, Result};
pub use extension::ExtElem;
pub use noise::NoiseParams;
pub use oracle::EnumBounds;
pub use topology::{NbhdSpec, TailSeqSpec};

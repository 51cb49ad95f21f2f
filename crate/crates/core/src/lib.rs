//! Enumeration and exact counting of monotone and unate Boolean functions.
//!
//! Functions are truth tables ([`BoolFn`]). The [`enumerate`] module generates the
//! monotone, balanced monotone and unate families by recursive concatenation,
//! [`transforms`] derives further counts by binomial transforms, [`equiv`] counts
//! permutation classes and [`oracle`] checks everything against brute force for
//! small `n`. Large sets are kept sorted on disk in the `.fset` format of [`store`].

pub mod boolfn;
pub mod cli;
pub mod enumerate;
pub mod equiv;
pub mod oracle;
pub mod property;
pub mod store;
pub mod transforms;

pub use boolfn::{BoolFn, BoolFnError, Directions, Signature};
pub use enumerate::{EnumOptions, EnumerateError, FunctionSet, UnateSet};
pub use equiv::{canonical_form, filter_classes, ClassCensus, PermutationIndex};
pub use property::Property;
pub use transforms::{CountSequence, KnownConstants, Label};

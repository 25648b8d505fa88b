//! Exact metric geometry for the bi-pointed (unit interval) and tri-pointed
//! (Sierpinski gasket) functors `X ↦ M ⊗ X` on pointed metric spaces.
//!
//! Distances are exact dyadic rationals throughout. The crate covers one
//! application of the functor ([`tensor`]), the finite approximants of the
//! initial algebra as address words ([`address`]), points of the final
//! coalgebra as letter streams ([`completion`]), mediating morphisms in both
//! directions ([`morphisms`]) and the counterexample computations built on
//! them ([`experiments`]).

pub mod address;
pub mod alphabet;
pub mod completion;
pub mod dyadic;
pub mod experiments;
pub mod morphisms;
pub mod space;
pub mod suites;
pub mod tensor;

pub use address::{AddressError, AddressWord, ColimitPoint};
pub use alphabet::{Alphabet, Base, Letter};
pub use completion::{CompletionPoint, DistanceInterval};
pub use dyadic::Dyadic;
pub use space::{FinitePointedSpace, PointedMetric};

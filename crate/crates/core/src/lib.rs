//! Computable higher dessins d'enfants.
//!
//! * [`perm`], [`dessin`]: permutation monodromy tuples, canonical forms and invariants.
//! * [`enumeration`]: all isomorphism classes at small degree, with counting oracles.
//! * [`words`], [`braid`]: free-group endomorphisms acting on tuples, orbit closure.
//! * [`origami`]: bipartite origamis for four marked points and the two shear moves.
//! * [`covers`]: numerical monodromy of polynomial covers by root tracking.
//! * [`modular`]: double-double evaluation of eta, Weber functions, `lambda*`, `j`.

pub mod braid;
pub mod covers;
pub mod dessin;
pub mod enumeration;
pub mod error;
pub mod modular;
pub mod origami;
pub mod perm;
pub mod words;

/// Version tag carried by every JSON document this crate emits.
pub const SCHEMA: &str = "dessinry/1";

pub use dessin::{DessinClass, Diagnostic, MonodromyTuple, RamificationProfile};
pub use error::DessinError;
pub use perm::Perm;

//! Open games over finite data.
//!
//! Games are built from decisions, lifted function pairs and counits with
//! sequential composition ([`compose`]) and the monoidal product
//! ([`tensor`]). Best response relations are evaluated exactly, by
//! enumeration, with rational utilities.

pub mod compare;
pub mod contexts;
pub mod decisions;
pub mod equiv;
pub mod error;
pub mod finite;
pub mod game;
pub mod json;
pub mod laws;
pub mod lens;
pub mod morphism;
pub mod oracle;
pub mod selection;

pub use decisions::{decision, decision_named, decision_with_passthrough, sequential_game, simultaneous_game};
pub use error::{CoreError, Result};
pub use finite::{enumerate_functions, product, FiniteSet, Rational, Relation, TableFun, Ty, Value};
pub use game::{compose, tensor, BestResponse, Context, OpenGame, StrategyProfile, StrategySlot};
pub use lens::{lens_compose, lens_tensor, Boundary, Lens};
pub use morphism::Morphism;
pub use selection::SelectionFunction;

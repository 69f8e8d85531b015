//! A small language for describing open games.
//!
//! ```text
//! set M = {C, D}
//! outcome R2 = R^2
//! fun q : M*M -> R2 { (C, C) -> (2, 2); (C, D) -> (0, 3); (D, C) -> (3, 0); (D, D) -> (1, 1) }
//! game pd = (decision 1 -> M with argmax[1] || decision 1 -> M with argmax[2]) ; lift q ; counit R2
//! ```
//!
//! `g ; h` runs `g` then `h`. When the domain of `h` covers only the
//! leading factors of the codomain of `g`, the remaining wires pass
//! through beside `h`. `||` places games side by side and binds tighter
//! than `;`.

pub mod ast;
pub mod check;
pub mod compile;
pub mod diag;
pub mod dot;
pub mod lexer;
pub mod parser;
pub mod pretty;

pub use check::{typecheck, Checked, Typed, TypedKind};
pub use compile::{build, compile, compile_expr, CompiledGame, Program};
pub use diag::{Diagnostic, Diagnostics, Span};
pub use dot::emit_dot;
pub use parser::{parse, parse_expr};

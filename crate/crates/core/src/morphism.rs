//! Functions between carriers that may contain numeric factors.
//!
//! A [`TableFun`] needs a finite domain. The structural maps (identities,
//! diagonals, projections to the unit, symmetries) are defined on any
//! carrier, so liftings like `id` on `(1, R)` stay expressible.

use std::fmt;

use crate::error::Result;
use crate::finite::{join_values, split_value, TableFun, Ty, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Morphism {
    Table(TableFun),
    Identity(Ty),
    /// `X → X × X`
    Diagonal(Ty),
    /// `X → 1`
    Terminal(Ty),
    /// `A × B → B × A`
    Swap(Ty, Ty),
}

impl Morphism {
    pub fn dom(&self) -> Ty {
        match self {
            Morphism::Table(t) => t.dom().clone(),
            Morphism::Identity(t) | Morphism::Diagonal(t) | Morphism::Terminal(t) => t.clone(),
            Morphism::Swap(a, b) => a.times(b),
        }
    }

    pub fn cod(&self) -> Ty {
        match self {
            Morphism::Table(t) => t.cod().clone(),
            Morphism::Identity(t) => t.clone(),
            Morphism::Diagonal(t) => t.times(t),
            Morphism::Terminal(_) => Ty::unit(),
            Morphism::Swap(a, b) => b.times(a),
        }
    }

    pub fn apply(&self, x: &Value) -> Result<Value> {
        match self {
            Morphism::Table(t) => t.apply(x),
            Morphism::Identity(t) => {
                t.check(x)?;
                Ok(x.clone())
            }
            Morphism::Diagonal(t) => {
                t.check(x)?;
                join_values(x, t.arity(), x, t.arity())
            }
            Morphism::Terminal(t) => {
                t.check(x)?;
                Ok(Value::unit())
            }
            Morphism::Swap(a, b) => {
                self.dom().check(x)?;
                let (u, v) = split_value(x, a.arity(), b.arity())?;
                join_values(&v, b.arity(), &u, a.arity())
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Morphism::Identity(_))
    }
}

impl From<TableFun> for Morphism {
    fn from(t: TableFun) -> Self {
        Morphism::Table(t)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Morphism::Table(t) => write!(f, "{t}"),
            Morphism::Identity(t) => write!(f, "id[{t}]"),
            Morphism::Diagonal(t) => write!(f, "copy[{t}]"),
            Morphism::Terminal(t) => write!(f, "delete[{t}]"),
            Morphism::Swap(a, b) => write!(f, "swap[{a},{b}]"),
        }
    }
}

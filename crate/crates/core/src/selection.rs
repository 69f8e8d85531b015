//! Multi-valued selection functions `δ : (Y → R) → P(Y)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::finite::{components, Rational, TableFun, Ty, Value};

type NativeRule = dyn Fn(&TableFun) -> Result<Vec<Value>> + Send + Sync;

#[derive(Clone)]
pub enum Rule {
    /// Maximise the whole (numeric) value, or one component of a tuple.
    Argmax(Option<usize>),
    Fix,
    AntiFix,
    /// An explicit map from continuation tables to subsets.
    Table(Arc<HashMap<TableFun, Vec<Value>>>),
    Native(Arc<NativeRule>),
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Argmax(None) => f.write_str("Argmax"),
            Rule::Argmax(Some(i)) => write!(f, "Argmax[{i}]"),
            Rule::Fix => f.write_str("Fix"),
            Rule::AntiFix => f.write_str("AntiFix"),
            Rule::Table(t) => write!(f, "Table({} entries)", t.len()),
            Rule::Native(_) => f.write_str("Native"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SelectionFunction {
    name: Arc<str>,
    rule: Rule,
    /// Declared outcome type, when the rule fixes one.
    outcome: Option<Ty>,
}

impl SelectionFunction {
    pub fn argmax() -> Self {
        SelectionFunction {
            name: Arc::from("argmax"),
            rule: Rule::Argmax(None),
            outcome: None,
        }
    }

    /// Argmax of the `component`-th coordinate (1-based) of tuple outcomes.
    pub fn argmax_component(component: usize) -> Self {
        SelectionFunction {
            name: Arc::from(format!("argmax[{component}]").as_str()),
            rule: Rule::Argmax(Some(component)),
            outcome: None,
        }
    }

    pub fn fix() -> Self {
        SelectionFunction {
            name: Arc::from("fix"),
            rule: Rule::Fix,
            outcome: None,
        }
    }

    pub fn antifix() -> Self {
        SelectionFunction {
            name: Arc::from("antifix"),
            rule: Rule::AntiFix,
            outcome: None,
        }
    }

    /// A selection function given by listing `δ(k)` for every continuation
    /// table `k : Y → R`. The listing must cover all of them.
    pub fn from_table(
        name: &str,
        choices: &Ty,
        outcome: &Ty,
        entries: impl IntoIterator<Item = (TableFun, Vec<Value>)>,
    ) -> Result<Self> {
        let space = crate::finite::FunctionSpace::new(choices, outcome)?;
        let mut map = HashMap::new();
        for (k, subset) in entries {
            if k.dom() != choices || k.cod() != outcome {
                return Err(CoreError::OutcomeTypeMismatch(format!(
                    "selection {name} expects continuations {choices} -> {outcome}, got {} -> {}",
                    k.dom(),
                    k.cod()
                )));
            }
            for y in &subset {
                choices.check(y)?;
            }
            if map.insert(k.clone(), subset).is_some() {
                return Err(CoreError::Invalid(format!("selection {name}: duplicate entry for {k}")));
            }
        }
        if map.len() as u128 != space.count() {
            return Err(CoreError::Invalid(format!(
                "selection {name} lists {} continuations, {} exist",
                map.len(),
                space.count()
            )));
        }
        Ok(SelectionFunction {
            name: Arc::from(name),
            rule: Rule::Table(Arc::new(map)),
            outcome: Some(outcome.clone()),
        })
    }

    pub fn native(
        name: &str,
        outcome: Ty,
        rule: impl Fn(&TableFun) -> Result<Vec<Value>> + Send + Sync + 'static,
    ) -> Self {
        SelectionFunction {
            name: Arc::from(name),
            rule: Rule::Native(Arc::new(rule)),
            outcome: Some(outcome),
        }
    }

    pub fn renamed(&self, name: &str) -> Self {
        SelectionFunction {
            name: Arc::from(name),
            ..self.clone()
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    /// The outcome type this selection function reads when used by a
    /// decision choosing from `moves`.
    pub fn outcome_for(&self, moves: &Ty) -> Ty {
        match (&self.rule, &self.outcome) {
            (_, Some(t)) => t.clone(),
            (Rule::Argmax(_), None) => Ty::num(),
            _ => moves.clone(),
        }
    }

    /// The same rule with component projection removed. A decision always
    /// sees its own scalar utility; the component index only labels it.
    pub(crate) fn scalarised(&self) -> Self {
        match self.rule {
            Rule::Argmax(Some(_)) => SelectionFunction {
                rule: Rule::Argmax(None),
                ..self.clone()
            },
            _ => self.clone(),
        }
    }

    /// `δ(k)`, in the domain order of `k`. Ties are all kept; the result may
    /// be empty.
    pub fn select(&self, k: &TableFun) -> Result<Vec<Value>> {
        let ys = k.dom().elements()?;
        match &self.rule {
            Rule::Argmax(component) => {
                let utils = k
                    .entries()
                    .iter()
                    .map(|v| numeric_component(v, *component))
                    .collect::<Result<Vec<_>>>()?;
                let best = match utils.iter().max() {
                    Some(b) => *b,
                    None => return Ok(Vec::new()),
                };
                Ok(ys
                    .into_iter()
                    .zip(utils)
                    .filter(|(_, u)| *u == best)
                    .map(|(y, _)| y)
                    .collect())
            }
            Rule::Fix | Rule::AntiFix => {
                if k.cod() != k.dom() {
                    return Err(CoreError::OutcomeTypeMismatch(format!(
                        "{} needs a continuation {} -> {}, got {} -> {}",
                        self.name,
                        k.dom(),
                        k.dom(),
                        k.dom(),
                        k.cod()
                    )));
                }
                let want_fixed = matches!(self.rule, Rule::Fix);
                Ok(ys
                    .into_iter()
                    .zip(k.entries())
                    .filter(|(y, ky)| (y == *ky) == want_fixed)
                    .map(|(y, _)| y)
                    .collect())
            }
            Rule::Table(map) => map.get(k).cloned().ok_or_else(|| {
                CoreError::OutcomeTypeMismatch(format!("selection {} is not defined on continuation {k}", self.name))
            }),
            Rule::Native(f) => f(k),
        }
    }
}

fn numeric_component(v: &Value, component: Option<usize>) -> Result<Rational> {
    let picked = match (component, v) {
        (None, v) => v.clone(),
        (Some(i), Value::Tuple(items)) if i >= 1 && i <= items.len() => items[i - 1].clone(),
        (Some(1), v @ Value::Num(_)) => v.clone(),
        (Some(i), v) => return Err(CoreError::NonNumericOutcome(format!("{v} has no component {i}"))),
    };
    picked
        .as_num()
        .ok_or_else(|| CoreError::NonNumericOutcome(picked.to_string()))
}

/// Coordinate `i` (1-based) of a value with `arity` factors.
pub fn project(v: &Value, i: usize, arity: usize) -> Result<Value> {
    let comps = components(v, arity)?;
    comps
        .get(i.wrapping_sub(1))
        .cloned()
        .ok_or_else(|| CoreError::Invalid(format!("{v} has no component {i}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteSet;

    fn cd() -> Ty {
        Ty::set(&FiniteSet::new("M", ["C", "D"]).unwrap())
    }

    fn ab() -> Ty {
        Ty::set(&FiniteSet::new("AB", ["A", "B"]).unwrap())
    }

    fn labels(vs: &[Value]) -> Vec<String> {
        vs.iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn argmax_unique_and_ties() {
        let k = TableFun::new(cd(), Ty::num(), vec![Value::int(0), Value::int(3)]).unwrap();
        assert_eq!(labels(&SelectionFunction::argmax().select(&k).unwrap()), ["D"]);
        let k = TableFun::new(cd(), Ty::num(), vec![Value::int(1), Value::int(1)]).unwrap();
        assert_eq!(labels(&SelectionFunction::argmax().select(&k).unwrap()), ["C", "D"]);
    }

    #[test]
    fn argmax_component_projects() {
        let pay = |a, b| Value::Tuple(vec![Value::int(a), Value::int(b)]);
        // Player one facing an opponent who defects.
        let k = TableFun::new(cd(), Ty::num().power(2), vec![pay(0, 3), pay(1, 1)]).unwrap();
        let sel = SelectionFunction::argmax_component(1);
        assert_eq!(labels(&sel.select(&k).unwrap()), ["D"]);
        let sel = SelectionFunction::argmax_component(2);
        assert_eq!(labels(&sel.select(&k).unwrap()), ["C"]);
    }

    #[test]
    fn argmax_rejects_non_numeric() {
        let k = TableFun::identity(&ab()).unwrap();
        assert!(matches!(
            SelectionFunction::argmax().select(&k),
            Err(CoreError::NonNumericOutcome(_))
        ));
    }

    #[test]
    fn fix_and_antifix() {
        let a = Value::atom("AB", "A");
        let b = Value::atom("AB", "B");
        let id = TableFun::identity(&ab()).unwrap();
        let swap = TableFun::new(ab(), ab(), vec![b.clone(), a.clone()]).unwrap();
        let konst = TableFun::new(ab(), ab(), vec![a.clone(), a.clone()]).unwrap();
        let fix = SelectionFunction::fix();
        let anti = SelectionFunction::antifix();
        assert_eq!(labels(&fix.select(&id).unwrap()), ["A", "B"]);
        assert_eq!(labels(&fix.select(&konst).unwrap()), ["A"]);
        assert!(fix.select(&swap).unwrap().is_empty());
        assert!(anti.select(&id).unwrap().is_empty());
        assert_eq!(labels(&anti.select(&swap).unwrap()), ["A", "B"]);
        assert_eq!(labels(&anti.select(&konst).unwrap()), ["B"]);
    }

    #[test]
    fn fix_needs_endo_continuation() {
        let k = TableFun::new(ab(), Ty::num(), vec![Value::int(0), Value::int(1)]).unwrap();
        assert!(matches!(
            SelectionFunction::fix().select(&k),
            Err(CoreError::OutcomeTypeMismatch(_))
        ));
    }

    #[test]
    fn table_selection_must_be_total() {
        let one = Ty::unit();
        let k = TableFun::identity(&one).unwrap();
        let s = SelectionFunction::from_table("only", &one, &one, [(k.clone(), vec![Value::unit()])]).unwrap();
        assert_eq!(s.select(&k).unwrap(), vec![Value::unit()]);
        assert!(SelectionFunction::from_table("none", &ab(), &ab(), []).is_err());
    }
}

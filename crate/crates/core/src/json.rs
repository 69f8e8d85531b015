//! JSON encodings of sets, types, values, tables, contexts and classic games.
//!
//! * set: `{"name": "M", "elements": ["C", "D"]}`
//! * type: an array of factors, each a set object or `"R"`; `[]` is the unit
//! * atom: `{"set": "M", "el": "C"}` (a bare label is accepted on input)
//! * rational: `{"num": 1, "den": 3}` (an integer is accepted on input)
//! * tuple: an array of component values
//! * table: `{"dom": type, "cod": type, "entries": [[x, y], ...]}`
//! * context: `{"state": value, "continuation": [[y, r], ...]}`

use serde_json::{json, Value as Json};

use crate::compare::OracleKind;
use crate::error::{CoreError, Result};
use crate::finite::{assemble, Base, FiniteSet, Rational, TableFun, Ty, Value};
use crate::game::{Context, StrategyProfile};
use crate::lens::Boundary;
use crate::oracle::{ClassicGame, ClassicSelection};

fn bad(what: impl std::fmt::Display) -> CoreError {
    CoreError::Invalid(format!("invalid JSON: {what}"))
}

pub fn set_to_json(s: &FiniteSet) -> Json {
    json!({"name": s.name(), "elements": s.labels().collect::<Vec<_>>()})
}

pub fn set_from_json(j: &Json) -> Result<FiniteSet> {
    let name = j
        .get("name")
        .and_then(Json::as_str)
        .ok_or_else(|| bad("set needs a string \"name\""))?;
    let els = j
        .get("elements")
        .and_then(Json::as_array)
        .ok_or_else(|| bad("set needs an \"elements\" array"))?;
    let labels = els
        .iter()
        .map(|e| {
            e.as_str()
                .map(str::to_string)
                .ok_or_else(|| bad("element labels are strings"))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteSet::new(name, labels)
}

pub fn ty_to_json(t: &Ty) -> Json {
    Json::Array(
        t.factors()
            .iter()
            .map(|b| match b {
                Base::Set(s) => set_to_json(s),
                Base::Num => Json::String("R".into()),
            })
            .collect(),
    )
}

pub fn ty_from_json(j: &Json) -> Result<Ty> {
    let parts = match j {
        Json::Array(a) => a.as_slice(),
        other => std::slice::from_ref(other),
    };
    let factors = parts
        .iter()
        .map(|f| match f {
            Json::String(s) if s == "R" => Ok(Base::Num),
            obj @ Json::Object(_) => Ok(Base::Set(set_from_json(obj)?)),
            other => Err(bad(format!("type factor {other}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Ty::from_factors(factors))
}

pub fn rational_to_json(r: &Rational) -> Json {
    json!({"num": r.numer(), "den": r.denom()})
}

pub fn rational_from_json(j: &Json) -> Result<Rational> {
    match j {
        Json::Number(n) => n
            .as_i64()
            .map(Rational::from_integer)
            .ok_or_else(|| bad(format!("{n} is not an integer"))),
        Json::Object(_) => {
            let num = j
                .get("num")
                .and_then(Json::as_i64)
                .ok_or_else(|| bad("rational needs \"num\""))?;
            let den = j.get("den").and_then(Json::as_i64).unwrap_or(1);
            if den == 0 {
                return Err(bad("zero denominator"));
            }
            Ok(Rational::new(num, den))
        }
        other => Err(bad(format!("{other} is not a rational"))),
    }
}

pub fn value_to_json(v: &Value) -> Json {
    match v {
        Value::Atom { set, el } => json!({"set": &**set, "el": &**el}),
        Value::Num(r) => rational_to_json(r),
        Value::Tuple(items) => Json::Array(items.iter().map(value_to_json).collect()),
    }
}

fn base_value(j: &Json, b: &Base) -> Result<Value> {
    match b {
        Base::Num => Ok(Value::Num(rational_from_json(j)?)),
        Base::Set(s) => {
            let label = match j {
                Json::String(l) => l.as_str(),
                Json::Object(_) => {
                    if let Some(set) = j.get("set").and_then(Json::as_str) {
                        if set != s.name() {
                            return Err(bad(format!("expected an element of {}, got one of {set}", s.name())));
                        }
                    }
                    j.get("el")
                        .and_then(Json::as_str)
                        .ok_or_else(|| bad("atom needs \"el\""))?
                }
                other => return Err(bad(format!("{other} is not an element of {}", s.name()))),
            };
            s.element(label).ok_or_else(|| CoreError::domain(label, s.name()))
        }
    }
}

/// Decodes a value of type `t`.
pub fn value_from_json(j: &Json, t: &Ty) -> Result<Value> {
    match t.factors() {
        [] => match j {
            Json::Null => Ok(Value::unit()),
            Json::Array(a) if a.is_empty() => Ok(Value::unit()),
            Json::String(s) if s == "*" => Ok(Value::unit()),
            Json::Object(_) if j.get("el").and_then(Json::as_str) == Some("*") => Ok(Value::unit()),
            other => Err(bad(format!("{other} is not the unit value"))),
        },
        [b] => base_value(j, b),
        factors => {
            let items = j
                .as_array()
                .filter(|a| a.len() == factors.len())
                .ok_or_else(|| bad(format!("expected a {}-tuple for {t}", factors.len())))?;
            let comps = items
                .iter()
                .zip(factors)
                .map(|(x, b)| base_value(x, b))
                .collect::<Result<Vec<_>>>()?;
            Ok(assemble(comps))
        }
    }
}

fn entries_to_json(t: &TableFun) -> Json {
    Json::Array(
        t.pairs()
            .map(|(x, y)| Json::Array(vec![value_to_json(&x), value_to_json(y)]))
            .collect(),
    )
}

fn entries_from_json(j: &Json, dom: &Ty, cod: &Ty) -> Result<TableFun> {
    let rows = j.as_array().ok_or_else(|| bad("entries must be an array of pairs"))?;
    let pairs = rows
        .iter()
        .map(|row| match row.as_array().map(Vec::as_slice) {
            Some([x, y]) => Ok((value_from_json(x, dom)?, value_from_json(y, cod)?)),
            _ => Err(bad("each entry is a two-element array")),
        })
        .collect::<Result<Vec<_>>>()?;
    TableFun::from_pairs(dom.clone(), cod.clone(), pairs)
}

pub fn table_to_json(t: &TableFun) -> Json {
    json!({"dom": ty_to_json(t.dom()), "cod": ty_to_json(t.cod()), "entries": entries_to_json(t)})
}

pub fn table_from_json(j: &Json) -> Result<TableFun> {
    let dom = ty_from_json(j.get("dom").ok_or_else(|| bad("table needs \"dom\""))?)?;
    let cod = ty_from_json(j.get("cod").ok_or_else(|| bad("table needs \"cod\""))?)?;
    entries_from_json(
        j.get("entries").ok_or_else(|| bad("table needs \"entries\""))?,
        &dom,
        &cod,
    )
}

pub fn boundary_to_json(b: &Boundary) -> Json {
    json!({"fwd": b.fwd.to_string(), "bwd": b.bwd.to_string()})
}

pub fn context_to_json(c: &Context) -> Json {
    json!({"state": value_to_json(&c.state), "continuation": entries_to_json(&c.continuation)})
}

/// Decodes a context for a game with domain forward type `x` and codomain
/// `cod`.
pub fn context_from_json(j: &Json, x: &Ty, cod: &Boundary) -> Result<Context> {
    let state = match j.get("state") {
        Some(s) => value_from_json(s, x)?,
        None if x.is_unit() => Value::unit(),
        None => return Err(bad("context needs \"state\"")),
    };
    let k = entries_from_json(
        j.get("continuation")
            .ok_or_else(|| bad("context needs \"continuation\""))?,
        &cod.fwd,
        &cod.bwd,
    )?;
    Ok(Context::new(state, k))
}

/// A profile as one entry list per slot.
pub fn profile_to_json(p: &StrategyProfile) -> Json {
    Json::Array(p.tables.iter().map(entries_to_json).collect())
}

fn selection_from_str(s: &str, player: usize) -> Result<ClassicSelection> {
    let (name, idx) = match s.split_once('[') {
        Some((n, rest)) => {
            let i: usize = rest
                .trim_end_matches(']')
                .parse()
                .map_err(|_| bad(format!("selection {s}")))?;
            (n, i)
        }
        None => (s, player),
    };
    match name {
        "argmax" => Ok(ClassicSelection::Argmax(idx)),
        "fix" => Ok(ClassicSelection::Fix(idx)),
        "antifix" => Ok(ClassicSelection::AntiFix(idx)),
        other => Err(bad(format!("unknown selection function {other}"))),
    }
}

/// Decodes a monolithic game:
/// `{"kind": "simultaneous" | "sequential", "players": [set, ...],
///   "outcome": type, "q": [[moves, outcome], ...],
///   "selections": ["argmax", "fix[2]", ...]}`.
/// Selections default to argmax on each player's own coordinate.
pub fn classic_game_from_json(j: &Json) -> Result<(OracleKind, ClassicGame)> {
    let kind = match j.get("kind").and_then(Json::as_str) {
        Some("simultaneous") | None => OracleKind::Simultaneous,
        Some("sequential") => OracleKind::Sequential,
        Some(other) => return Err(bad(format!("unknown game kind {other}"))),
    };
    let players = j
        .get("players")
        .and_then(Json::as_array)
        .ok_or_else(|| bad("game needs \"players\""))?
        .iter()
        .map(|s| Ok(Ty::set(&set_from_json(s)?)))
        .collect::<Result<Vec<_>>>()?;
    let outcome = match j.get("outcome") {
        Some(o) => ty_from_json(o)?,
        None => Ty::num().power(players.len()),
    };
    let dom = crate::finite::product(&players);
    let q = entries_from_json(j.get("q").ok_or_else(|| bad("game needs \"q\""))?, &dom, &outcome)?;
    let sels = match j.get("selections").and_then(Json::as_array) {
        Some(a) => a
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.as_str()
                    .ok_or_else(|| bad("selections are strings"))
                    .and_then(|s| selection_from_str(s, i + 1))
            })
            .collect::<Result<Vec<_>>>()?,
        None => (1..=players.len()).map(ClassicSelection::Argmax).collect(),
    };
    Ok((kind, ClassicGame::new(players, q, sels)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_round_trip() {
        let m = FiniteSet::new("M", ["C", "D"]).unwrap();
        let t = Ty::set(&m).times(&Ty::num());
        let v = Value::Tuple(vec![Value::atom("M", "D"), Value::ratio(-2, 3)]);
        let j = value_to_json(&v);
        assert_eq!(j, json!([{"set": "M", "el": "D"}, {"num": -2, "den": 3}]));
        assert_eq!(value_from_json(&j, &t).unwrap(), v);
        assert!(value_from_json(&json!([{"set": "M", "el": "E"}, 1]), &t).is_err());
    }

    #[test]
    fn tables_round_trip() {
        let m = Ty::set(&FiniteSet::new("M", ["C", "D"]).unwrap());
        let t = TableFun::new(m, Ty::num(), vec![Value::int(0), Value::ratio(1, 2)]).unwrap();
        let back = table_from_json(&table_to_json(&t)).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn classic_game_decodes() {
        let j = json!({
            "kind": "simultaneous",
            "players": [{"name": "M", "elements": ["C", "D"]}, {"name": "M", "elements": ["C", "D"]}],
            "q": [[["C","C"],[2,2]], [["C","D"],[0,3]], [["D","C"],[3,0]], [["D","D"],[1,1]]]
        });
        let (kind, g) = classic_game_from_json(&j).unwrap();
        assert_eq!(kind, OracleKind::Simultaneous);
        assert_eq!(g.sim_equilibria().unwrap().len(), 1);
    }
}

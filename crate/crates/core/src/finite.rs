//! Finite sets, exact values, product types and total functions stored as
//! lookup tables.
//!
//! Every carrier in the engine is a [`Ty`]: a flat product of base factors,
//! each either a named [`FiniteSet`] or the exact rationals. Products are
//! strict: nesting is flattened away and the unit set `1` contributes no
//! factor, so `(A × B) × C`, `A × (B × C)` and `A × 1 × B × C` all have the
//! same factor list and the same elements.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{CoreError, Result};

/// Exact outcome numbers.
pub type Rational = Ratio<i64>;

/// Default bound on the number of function tables enumerated for one
/// strategy slot, and on whole profile spaces.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

pub const UNIT_SET: &str = "1";
pub const UNIT_ELEMENT: &str = "*";

/// A value inhabiting some [`Ty`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    /// An element of a named finite set.
    Atom {
        set: Arc<str>,
        el: Arc<str>,
    },
    Num(Rational),
    /// An element of a product with two or more factors. Never nested.
    Tuple(Vec<Value>),
}

impl Value {
    pub fn unit() -> Value {
        Value::Atom {
            set: Arc::from(UNIT_SET),
            el: Arc::from(UNIT_ELEMENT),
        }
    }

    pub fn atom(set: &str, el: &str) -> Value {
        Value::Atom {
            set: Arc::from(set),
            el: Arc::from(el),
        }
    }

    pub fn int(n: i64) -> Value {
        Value::Num(Rational::from_integer(n))
    }

    /// Panics when `den` is zero.
    pub fn ratio(num: i64, den: i64) -> Value {
        Value::Num(Rational::new(num, den))
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Value::Atom { set, el } if &**set == UNIT_SET && &**el == UNIT_ELEMENT)
    }

    pub fn as_num(&self) -> Option<Rational> {
        match self {
            Value::Num(r) => Some(*r),
            _ => None,
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            Value::Atom { el, .. } => Some(el),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Atom { el, .. } => f.write_str(el),
            Value::Num(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Value::Num(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Value::Tuple(items) => {
                f.write_str("(")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct SetData {
    name: Arc<str>,
    labels: Vec<Arc<str>>,
    index: HashMap<Arc<str>, usize>,
}

/// A named, enumerated set. Iteration order is declaration order.
///
/// Two sets are equal when they have the same name and the same elements;
/// declaration order is presentation only.
#[derive(Clone)]
pub struct FiniteSet(Arc<SetData>);

impl FiniteSet {
    pub fn new<S: AsRef<str>>(name: &str, elements: impl IntoIterator<Item = S>) -> Result<Self> {
        if name.is_empty() {
            return Err(CoreError::Invalid("set name must not be empty".into()));
        }
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        for el in elements {
            let el: Arc<str> = Arc::from(el.as_ref());
            if index.insert(el.clone(), labels.len()).is_some() {
                return Err(CoreError::Invalid(format!("duplicate element {el} in set {name}")));
            }
            labels.push(el);
        }
        if name == UNIT_SET && (labels.len() != 1 || &*labels[0] != UNIT_ELEMENT) {
            return Err(CoreError::Invalid(format!(
                "the set named {UNIT_SET} must be exactly {{{UNIT_ELEMENT}}}"
            )));
        }
        Ok(FiniteSet(Arc::new(SetData {
            name: Arc::from(name),
            labels,
            index,
        })))
    }

    pub fn unit() -> Self {
        FiniteSet::new(UNIT_SET, [UNIT_ELEMENT]).expect("unit set is well formed")
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        &*self.0.name == UNIT_SET
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> + '_ {
        self.0.labels.iter().map(|l| &**l)
    }

    pub fn element(&self, label: &str) -> Option<Value> {
        self.0.index.get(label).map(|&i| self.value_at(i))
    }

    pub fn elements(&self) -> Vec<Value> {
        (0..self.len()).map(|i| self.value_at(i)).collect()
    }

    fn value_at(&self, i: usize) -> Value {
        Value::Atom {
            set: self.0.name.clone(),
            el: self.0.labels[i].clone(),
        }
    }

    pub fn index_of(&self, v: &Value) -> Option<usize> {
        match v {
            Value::Atom { set, el } if **set == *self.0.name => self.0.index.get(el).copied(),
            _ => None,
        }
    }

    pub fn contains(&self, v: &Value) -> bool {
        self.index_of(v).is_some()
    }
}

impl PartialEq for FiniteSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.name == other.0.name
                && self.len() == other.len()
                && self.0.labels.iter().all(|l| other.0.index.contains_key(l)))
    }
}

impl Eq for FiniteSet {}

impl Hash for FiniteSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.name.hash(state);
        self.len().hash(state);
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.name())?;
        for (i, l) in self.labels().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(l)?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One factor of a product type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    Set(FiniteSet),
    /// Exact rationals, the stand-in for real-valued utility.
    Num,
}

impl Base {
    fn contains(&self, v: &Value) -> bool {
        match self {
            Base::Set(s) => s.contains(v),
            Base::Num => matches!(v, Value::Num(_)),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Set(s) => f.write_str(s.name()),
            Base::Num => f.write_str("R"),
        }
    }
}

/// A strict product of base factors. The empty product is the unit `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ty {
    factors: Vec<Base>,
}

impl Ty {
    pub fn unit() -> Ty {
        Ty::default()
    }

    pub fn num() -> Ty {
        Ty {
            factors: vec![Base::Num],
        }
    }

    pub fn set(s: &FiniteSet) -> Ty {
        if s.is_unit() {
            Ty::unit()
        } else {
            Ty {
                factors: vec![Base::Set(s.clone())],
            }
        }
    }

    pub fn from_factors(factors: Vec<Base>) -> Ty {
        let factors = factors
            .into_iter()
            .filter(|b| !matches!(b, Base::Set(s) if s.is_unit()))
            .collect();
        Ty { factors }
    }

    pub fn times(&self, other: &Ty) -> Ty {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ty { factors }
    }

    pub fn power(&self, n: usize) -> Ty {
        product(&vec![self.clone(); n])
    }

    pub fn factors(&self) -> &[Base] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|b| matches!(b, Base::Set(_)))
    }

    /// The factors from `start` onwards, as a type.
    pub fn slice(&self, start: usize, end: usize) -> Ty {
        Ty {
            factors: self.factors[start..end].to_vec(),
        }
    }

    /// Number of elements, saturating; `None` when a factor is numeric.
    pub fn cardinality(&self) -> Option<u128> {
        let mut n: u128 = 1;
        for b in &self.factors {
            match b {
                Base::Set(s) => n = n.saturating_mul(s.len() as u128),
                Base::Num => return None,
            }
        }
        Some(n)
    }

    pub fn contains(&self, v: &Value) -> bool {
        match self.factors.len() {
            0 => v.is_unit(),
            1 => self.factors[0].contains(v),
            n => match v {
                Value::Tuple(items) if items.len() == n => self.factors.iter().zip(items).all(|(b, x)| b.contains(x)),
                _ => false,
            },
        }
    }

    pub(crate) fn check(&self, v: &Value) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(CoreError::domain(v, self))
        }
    }

    /// Position of `v` in the lexicographic enumeration of a finite type.
    pub fn index_of(&self, v: &Value) -> Option<usize> {
        match self.factors.len() {
            0 => v.is_unit().then_some(0),
            1 => match &self.factors[0] {
                Base::Set(s) => s.index_of(v),
                Base::Num => None,
            },
            n => {
                let items = match v {
                    Value::Tuple(items) if items.len() == n => items,
                    _ => return None,
                };
                let mut idx = 0usize;
                for (b, x) in self.factors.iter().zip(items) {
                    let s = match b {
                        Base::Set(s) => s,
                        Base::Num => return None,
                    };
                    idx = idx * s.len() + s.index_of(x)?;
                }
                Some(idx)
            }
        }
    }

    /// All elements in lexicographic order (first factor most significant).
    pub fn elements(&self) -> Result<Vec<Value>> {
        if !self.is_finite() {
            return Err(CoreError::NotFinite(self.to_string()));
        }
        let count = self.cardinality().unwrap_or(0);
        if count > DEFAULT_ENUMERATION_CAP {
            return Err(CoreError::cap(
                format!("elements of {self}"),
                count,
                DEFAULT_ENUMERATION_CAP,
            ));
        }
        Ok(self.sample(&[]))
    }

    /// Elements with every numeric factor ranging over `pool`. For a finite
    /// type this is exactly [`Ty::elements`].
    pub fn sample(&self, pool: &[Rational]) -> Vec<Value> {
        let columns: Vec<Vec<Value>> = self
            .factors
            .iter()
            .map(|b| match b {
                Base::Set(s) => s.elements(),
                Base::Num => pool.iter().map(|r| Value::Num(*r)).collect(),
            })
            .collect();
        cartesian(&columns).into_iter().map(assemble).collect()
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str(UNIT_SET);
        }
        for (i, b) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl From<&FiniteSet> for Ty {
    fn from(s: &FiniteSet) -> Ty {
        Ty::set(s)
    }
}

/// Cartesian product of types: factor lists are concatenated, so the result
/// is flat and the empty product is the unit.
pub fn product(parts: &[Ty]) -> Ty {
    Ty {
        factors: parts.iter().flat_map(|t| t.factors.iter().cloned()).collect(),
    }
}

fn cartesian(columns: &[Vec<Value>]) -> Vec<Vec<Value>> {
    let mut rows: Vec<Vec<Value>> = vec![Vec::new()];
    for col in columns {
        let mut next = Vec::with_capacity(rows.len() * col.len());
        for row in &rows {
            for v in col {
                let mut r = row.clone();
                r.push(v.clone());
                next.push(r);
            }
        }
        rows = next;
    }
    rows
}

/// Builds the value of a type from its flat factor components.
pub fn assemble(mut comps: Vec<Value>) -> Value {
    match comps.len() {
        0 => Value::unit(),
        1 => comps.pop().expect("one component"),
        _ => Value::Tuple(comps),
    }
}

/// The flat factor components of a value of a type with `arity` factors.
pub fn components(v: &Value, arity: usize) -> Result<Vec<Value>> {
    match (arity, v) {
        (0, v) if v.is_unit() => Ok(Vec::new()),
        (1, Value::Tuple(_)) => Err(CoreError::Invalid(format!("{v} is not a single factor"))),
        (1, v) if !v.is_unit() => Ok(vec![v.clone()]),
        (n, Value::Tuple(items)) if n >= 2 && items.len() == n => Ok(items.clone()),
        _ => Err(CoreError::Invalid(format!(
            "{v} does not have {arity} product components"
        ))),
    }
}

/// Splits a value of `left × right` into its two parts, given factor counts.
pub fn split_value(v: &Value, left: usize, right: usize) -> Result<(Value, Value)> {
    if right == 0 {
        return Ok((v.clone(), Value::unit()));
    }
    if left == 0 {
        return Ok((Value::unit(), v.clone()));
    }
    let mut comps = components(v, left + right)?;
    let tail = comps.split_off(left);
    Ok((assemble(comps), assemble(tail)))
}

/// Inverse of [`split_value`].
pub fn join_values(a: &Value, left: usize, b: &Value, right: usize) -> Result<Value> {
    if right == 0 {
        return Ok(a.clone());
    }
    if left == 0 {
        return Ok(b.clone());
    }
    let mut comps = components(a, left)?;
    comps.extend(components(b, right)?);
    Ok(assemble(comps))
}

/// A total function on a finite domain, stored as one entry per domain
/// element in the domain's enumeration order.
///
/// Equality is extensional, so tables over the same set declared in a
/// different element order compare by what they compute.
#[derive(Clone, Debug)]
pub struct TableFun {
    dom: Ty,
    cod: Ty,
    entries: Arc<[Value]>,
}

impl TableFun {
    pub fn new(dom: Ty, cod: Ty, entries: Vec<Value>) -> Result<Self> {
        let n = dom.cardinality().ok_or_else(|| CoreError::NotFinite(dom.to_string()))?;
        if entries.len() as u128 != n {
            return Err(CoreError::Invalid(format!(
                "table over {dom} needs {n} entries, got {}",
                entries.len()
            )));
        }
        for e in &entries {
            cod.check(e)?;
        }
        Ok(TableFun {
            dom,
            cod,
            entries: entries.into(),
        })
    }

    pub fn from_fn(dom: Ty, cod: Ty, mut f: impl FnMut(&Value) -> Result<Value>) -> Result<Self> {
        let entries = dom.elements()?.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        TableFun::new(dom, cod, entries)
    }

    /// Builds a table from explicit pairs; every domain element must appear
    /// exactly once.
    pub fn from_pairs(dom: Ty, cod: Ty, pairs: impl IntoIterator<Item = (Value, Value)>) -> Result<Self> {
        let n = dom.cardinality().ok_or_else(|| CoreError::NotFinite(dom.to_string()))? as usize;
        let mut slots: Vec<Option<Value>> = vec![None; n];
        for (x, y) in pairs {
            let i = dom.index_of(&x).ok_or_else(|| CoreError::domain(&x, &dom))?;
            if slots[i].replace(y).is_some() {
                return Err(CoreError::Invalid(format!("duplicate entry for {x}")));
            }
        }
        let elems = dom.elements()?;
        let entries = slots
            .into_iter()
            .zip(elems)
            .map(|(y, x)| y.ok_or_else(|| CoreError::Invalid(format!("missing entry for {x}"))))
            .collect::<Result<Vec<_>>>()?;
        TableFun::new(dom, cod, entries)
    }

    pub fn identity(ty: &Ty) -> Result<Self> {
        TableFun::new(ty.clone(), ty.clone(), ty.elements()?)
    }

    pub fn constant(dom: Ty, cod: Ty, v: Value) -> Result<Self> {
        TableFun::from_fn(dom, cod, |_| Ok(v.clone()))
    }

    pub fn dom(&self) -> &Ty {
        &self.dom
    }

    pub fn cod(&self) -> &Ty {
        &self.cod
    }

    /// Entries indexed by domain position.
    pub fn entries(&self) -> &[Value] {
        &self.entries
    }

    /// `(x, f(x))` pairs in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (Value, &Value)> + '_ {
        self.dom
            .elements()
            .unwrap_or_default()
            .into_iter()
            .zip(self.entries.iter())
    }

    pub fn apply(&self, x: &Value) -> Result<Value> {
        self.dom
            .index_of(x)
            .map(|i| self.entries[i].clone())
            .ok_or_else(|| CoreError::domain(x, &self.dom))
    }
}

impl PartialEq for TableFun {
    fn eq(&self, other: &Self) -> bool {
        if self.dom != other.dom || self.cod != other.cod {
            return false;
        }
        if self.entries == other.entries && same_order(&self.dom, &other.dom) {
            return true;
        }
        match self.dom.elements() {
            Ok(xs) => xs.iter().all(|x| self.apply(x).ok() == other.apply(x).ok()),
            Err(_) => false,
        }
    }
}

impl Eq for TableFun {}

impl Hash for TableFun {
    fn hash<H: Hasher>(&self, state: &mut H) {
        use std::collections::hash_map::DefaultHasher;
        self.dom.hash(state);
        self.cod.hash(state);
        // Order-independent, to agree with extensional equality.
        let mut acc: u64 = 0;
        for (x, y) in self.pairs() {
            let mut h = DefaultHasher::new();
            x.hash(&mut h);
            y.hash(&mut h);
            acc = acc.wrapping_add(h.finish());
        }
        acc.hash(state);
    }
}

fn same_order(a: &Ty, b: &Ty) -> bool {
    a.factors.iter().zip(&b.factors).all(|(x, y)| match (x, y) {
        (Base::Set(s), Base::Set(t)) => Arc::ptr_eq(&s.0, &t.0) || s.0.labels == t.0.labels,
        _ => true,
    })
}

impl fmt::Display for TableFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dom.is_unit() {
            return write!(f, "{}", self.entries[0]);
        }
        f.write_str("{")?;
        for (i, (x, y)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}->{y}")?;
        }
        f.write_str("}")
    }
}

/// The space of all total functions `dom → cod`, indexed in odometer order:
/// one digit per domain element, the first domain element most significant,
/// each digit running through `cod` in its enumeration order.
#[derive(Clone, Debug)]
pub struct FunctionSpace {
    dom: Ty,
    cod: Ty,
    dom_len: usize,
    cod_elems: Vec<Value>,
    count: u128,
}

impl FunctionSpace {
    pub fn new(dom: &Ty, cod: &Ty) -> Result<Self> {
        let dom_len = dom.cardinality().ok_or_else(|| CoreError::NotFinite(dom.to_string()))?;
        let cod_len = cod.cardinality().ok_or_else(|| CoreError::NotFinite(cod.to_string()))?;
        if cod_len > DEFAULT_ENUMERATION_CAP || dom_len > DEFAULT_ENUMERATION_CAP {
            return Err(CoreError::cap(
                format!("functions {dom} -> {cod}"),
                u128::MAX,
                DEFAULT_ENUMERATION_CAP,
            ));
        }
        let count = checked_pow(cod_len, dom_len);
        Ok(FunctionSpace {
            dom: dom.clone(),
            cod: cod.clone(),
            dom_len: dom_len as usize,
            cod_elems: cod.elements()?,
            count,
        })
    }

    pub fn dom(&self) -> &Ty {
        &self.dom
    }

    pub fn cod(&self) -> &Ty {
        &self.cod
    }

    /// Number of functions, saturating at `u128::MAX`.
    pub fn count(&self) -> u128 {
        self.count
    }

    pub fn nth(&self, mut i: u128) -> TableFun {
        assert!(i < self.count, "function index out of range");
        let base = self.cod_elems.len() as u128;
        let mut entries = vec![Value::unit(); self.dom_len];
        for slot in entries.iter_mut().rev() {
            *slot = self.cod_elems[(i % base) as usize].clone();
            i /= base;
        }
        TableFun {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            entries: entries.into(),
        }
    }

    pub fn index_of(&self, f: &TableFun) -> Option<u128> {
        if f.dom != self.dom || f.cod != self.cod {
            return None;
        }
        let base = self.cod_elems.len() as u128;
        let xs = self.dom.elements().ok()?;
        xs.iter().try_fold(0u128, |acc, x| {
            let d = self.cod.index_of(&f.apply(x).ok()?)? as u128;
            Some(acc * base + d)
        })
    }
}

fn checked_pow(base: u128, exp: u128) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == u128::MAX || acc == 0 {
            break;
        }
    }
    acc
}

/// All total functions `x → y` in odometer order.
pub fn enumerate_functions(x: &Ty, y: &Ty, cap: u128) -> Result<Vec<TableFun>> {
    let space = FunctionSpace::new(x, y)?;
    if space.count() > cap {
        return Err(CoreError::cap(format!("functions {x} -> {y}"), space.count(), cap));
    }
    Ok((0..space.count()).map(|i| space.nth(i)).collect())
}

/// A materialized endo-relation on `0..size` (indices into some canonical
/// enumeration).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    size: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                bits.push(f(i, j));
            }
        }
        Relation { size, bits }
    }

    pub(crate) fn from_rows(size: usize, rows: Vec<Vec<bool>>) -> Self {
        debug_assert!(rows.len() == size && rows.iter().all(|r| r.len() == size));
        Relation {
            size,
            bits: rows.into_iter().flatten().collect(),
        }
    }

    pub fn full(size: usize) -> Self {
        Relation {
            size,
            bits: vec![true; size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.size + j]
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(move |(k, _)| (k / self.size, k % self.size))
    }

    /// Indices `i` with `(i, i)` in the relation.
    pub fn fixpoints(&self) -> Vec<usize> {
        (0..self.size).filter(|&i| self.contains(i, i)).collect()
    }

    /// Intersection; the meet of the semilattice of relations.
    pub fn meet(&self, other: &Relation) -> Result<Relation> {
        if self.size != other.size {
            return Err(CoreError::Invalid(format!(
                "cannot meet relations on {} and {} elements",
                self.size, other.size
            )));
        }
        Ok(Relation {
            size: self.size,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a && *b).collect(),
        })
    }
}

/// Finite stand-ins for numeric factors when a quantifier must range over a
/// type that contains the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub num_pool: Vec<Rational>,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            num_pool: vec![Rational::from_integer(0), Rational::from_integer(1)],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd() -> FiniteSet {
        FiniteSet::new("M", ["C", "D"]).unwrap()
    }

    #[test]
    fn product_is_lexicographic() {
        let m = Ty::set(&cd());
        let p = product(&[m.clone(), m]);
        let shown: Vec<String> = p.elements().unwrap().iter().map(|v| v.to_string()).collect();
        assert_eq!(shown, ["(C, C)", "(C, D)", "(D, C)", "(D, D)"]);
    }

    #[test]
    fn empty_product_is_unit() {
        let p = product(&[]);
        assert!(p.is_unit());
        assert_eq!(p.elements().unwrap(), vec![Value::unit()]);
        assert_eq!(p.to_string(), "1");
    }

    #[test]
    fn unit_factor_is_neutral() {
        let ab = FiniteSet::new("AB", ["A", "B"]).unwrap();
        let p = product(&[Ty::set(&ab), Ty::set(&FiniteSet::unit())]);
        assert_eq!(p.cardinality(), Some(2));
        assert_eq!(p, Ty::set(&ab));
    }

    #[test]
    fn enumerate_small_function_spaces() {
        let one = Ty::unit();
        let m = Ty::set(&cd());
        let fs = enumerate_functions(&one, &m, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].apply(&Value::unit()).unwrap(), Value::atom("M", "C"));
        assert_eq!(fs[1].apply(&Value::unit()).unwrap(), Value::atom("M", "D"));

        let ab = Ty::set(&FiniteSet::new("AB", ["A", "B"]).unwrap());
        let fs = enumerate_functions(&ab, &ab, DEFAULT_ENUMERATION_CAP).unwrap();
        let shown: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
        assert_eq!(shown, ["{A->A, B->A}", "{A->A, B->B}", "{A->B, B->A}", "{A->B, B->B}"]);

        let x = Ty::set(&FiniteSet::new("X", ["x1", "x2", "x3"]).unwrap());
        let y = Ty::set(&FiniteSet::new("Y", ["y1", "y2"]).unwrap());
        assert_eq!(enumerate_functions(&x, &y, DEFAULT_ENUMERATION_CAP).unwrap().len(), 8);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let x = Ty::set(&FiniteSet::new("X", ["a", "b", "c", "d"]).unwrap());
        let err = enumerate_functions(&x, &x, 100).unwrap_err();
        assert!(err.is_cap_exceeded());
    }

    #[test]
    fn apply_prisoners_dilemma_table() {
        let m = Ty::set(&cd());
        let mm = product(&[m.clone(), m]);
        let payoff = |a: i64, b: i64| Value::Tuple(vec![Value::int(a), Value::int(b)]);
        let q = TableFun::new(
            mm,
            Ty::num().power(2),
            vec![payoff(2, 2), payoff(0, 3), payoff(3, 0), payoff(1, 1)],
        )
        .unwrap();
        let cc = Value::Tuple(vec![Value::atom("M", "C"), Value::atom("M", "C")]);
        assert_eq!(q.apply(&cc).unwrap(), payoff(2, 2));
        let ee = Value::Tuple(vec![Value::atom("M", "E"), Value::atom("M", "E")]);
        assert!(matches!(q.apply(&ee), Err(CoreError::Domain { .. })));
    }

    #[test]
    fn identity_table_applies() {
        let ab = Ty::set(&FiniteSet::new("AB", ["A", "B"]).unwrap());
        let id = TableFun::identity(&ab).unwrap();
        assert_eq!(id.apply(&Value::atom("AB", "A")).unwrap(), Value::atom("AB", "A"));
    }

    #[test]
    fn rationals_are_exact() {
        let third = Rational::new(1, 3);
        assert_eq!(third + third + third, Rational::from_integer(1));
    }

    #[test]
    fn set_equality_ignores_declaration_order() {
        let a = FiniteSet::new("S", ["A", "B"]).unwrap();
        let b = FiniteSet::new("S", ["B", "A"]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, FiniteSet::new("T", ["A", "B"]).unwrap());
    }

    #[test]
    fn unit_set_is_checked() {
        assert!(FiniteSet::new("1", ["x"]).is_err());
        assert!(FiniteSet::new("S", ["a", "a"]).is_err());
    }

    #[test]
    fn tables_must_be_total() {
        let ab = Ty::set(&FiniteSet::new("AB", ["A", "B"]).unwrap());
        let err = TableFun::from_pairs(
            ab.clone(),
            ab.clone(),
            [(Value::atom("AB", "A"), Value::atom("AB", "B"))],
        );
        assert!(err.is_err());
        let bad_cod = TableFun::new(ab.clone(), ab, vec![Value::int(1), Value::int(2)]);
        assert!(bad_cod.is_err());
    }

    #[test]
    fn split_and_join_are_inverse() {
        let v = Value::Tuple(vec![Value::int(1), Value::int(2), Value::int(3)]);
        let (a, b) = split_value(&v, 1, 2).unwrap();
        assert_eq!(a, Value::int(1));
        assert_eq!(b, Value::Tuple(vec![Value::int(2), Value::int(3)]));
        assert_eq!(join_values(&a, 1, &b, 2).unwrap(), v);
        let (u, w) = split_value(&v, 0, 3).unwrap();
        assert!(u.is_unit());
        assert_eq!(w, v);
    }

    #[test]
    fn relation_meet_and_fixpoints() {
        let r = Relation::from_fn(3, |i, j| i <= j);
        let s = Relation::from_fn(3, |i, j| i == j || j == 2);
        let m = r.meet(&s).unwrap();
        assert_eq!(
            m.pairs().collect::<Vec<_>>(),
            vec![(0, 0), (0, 2), (1, 1), (1, 2), (2, 2)]
        );
        assert_eq!(m.fixpoints(), vec![0, 1, 2]);
    }
}

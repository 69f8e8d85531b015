//! Lenses `(X, S) → (Y, R)`: a view `X → Y` and an update `X × R → S`.
//!
//! Views and updates are functions rather than stored tables because the
//! backward carriers are often the rationals. Anything that has to range over
//! a carrier (equality, well-formedness) samples numeric factors through
//! [`Sampling`].

use std::fmt;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::finite::{join_values, split_value, Sampling, TableFun, Ty, Value};

/// A pair `(X, S)` of a forward and a backward carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Boundary {
    pub fwd: Ty,
    pub bwd: Ty,
}

impl Boundary {
    pub fn new(fwd: Ty, bwd: Ty) -> Self {
        Boundary { fwd, bwd }
    }

    pub fn unit() -> Self {
        Boundary::new(Ty::unit(), Ty::unit())
    }

    pub fn is_unit(&self) -> bool {
        self.fwd.is_unit() && self.bwd.is_unit()
    }

    pub fn tensor(&self, other: &Boundary) -> Boundary {
        Boundary::new(self.fwd.times(&other.fwd), self.bwd.times(&other.bwd))
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.fwd, self.bwd)
    }
}

type ViewFn = dyn Fn(&Value) -> Result<Value> + Send + Sync;
type UpdateFn = dyn Fn(&Value, &Value) -> Result<Value> + Send + Sync;

#[derive(Clone)]
pub struct Lens {
    dom: Boundary,
    cod: Boundary,
    view: Arc<ViewFn>,
    update: Arc<UpdateFn>,
}

impl fmt::Debug for Lens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lens {} -> {}", self.dom, self.cod)
    }
}

impl Lens {
    pub fn new(
        dom: Boundary,
        cod: Boundary,
        view: impl Fn(&Value) -> Result<Value> + Send + Sync + 'static,
        update: impl Fn(&Value, &Value) -> Result<Value> + Send + Sync + 'static,
    ) -> Self {
        Lens {
            dom,
            cod,
            view: Arc::new(view),
            update: Arc::new(update),
        }
    }

    /// A lens from a view table `X → Y` and an update table `X × R → S`.
    pub fn from_tables(view: TableFun, update: TableFun, s: Ty, r: Ty) -> Result<Self> {
        let x = view.dom().clone();
        let expected = x.times(&r);
        if update.dom() != &expected {
            return Err(CoreError::BoundaryMismatch {
                expected: expected.to_string(),
                found: update.dom().to_string(),
            });
        }
        if update.cod() != &s {
            return Err(CoreError::BoundaryMismatch {
                expected: s.to_string(),
                found: update.cod().to_string(),
            });
        }
        let dom = Boundary::new(x.clone(), s);
        let cod = Boundary::new(view.cod().clone(), r.clone());
        let (xa, ra) = (x.arity(), r.arity());
        Ok(Lens::new(
            dom,
            cod,
            move |v| view.apply(v),
            move |v, q| update.apply(&join_values(v, xa, q, ra)?),
        ))
    }

    pub fn identity(b: &Boundary) -> Self {
        let (fwd, bwd) = (b.fwd.clone(), b.bwd.clone());
        Lens::new(
            b.clone(),
            b.clone(),
            move |x| {
                fwd.check(x)?;
                Ok(x.clone())
            },
            move |_, s| {
                bwd.check(s)?;
                Ok(s.clone())
            },
        )
    }

    /// The lens `(1, 1) → (X, S)` picking out `x`.
    pub fn point(x: Value, b: &Boundary) -> Result<Self> {
        b.fwd.check(&x)?;
        Ok(Lens::new(
            Boundary::unit(),
            b.clone(),
            move |_| Ok(x.clone()),
            |_, _| Ok(Value::unit()),
        ))
    }

    /// The lens `(Y, R) → (1, 1)` given by a continuation `k : Y → R`.
    pub fn copoint(k: TableFun) -> Self {
        let cod = Boundary::unit();
        let dom = Boundary::new(k.dom().clone(), k.cod().clone());
        Lens::new(dom, cod, |_| Ok(Value::unit()), move |y, _| k.apply(y))
    }

    pub fn dom(&self) -> &Boundary {
        &self.dom
    }

    pub fn cod(&self) -> &Boundary {
        &self.cod
    }

    pub fn view(&self, x: &Value) -> Result<Value> {
        self.dom.fwd.check(x)?;
        (self.view)(x)
    }

    pub fn update(&self, x: &Value, r: &Value) -> Result<Value> {
        self.dom.fwd.check(x)?;
        self.cod.bwd.check(r)?;
        (self.update)(x, r)
    }

    /// Checks that every sampled view output lies in `Y` and every update
    /// output lies in `S`.
    pub fn check_well_formed(&self, sampling: &Sampling) -> Result<()> {
        let xs = self.dom.fwd.sample(&sampling.num_pool);
        let rs = self.cod.bwd.sample(&sampling.num_pool);
        for x in &xs {
            let y = self.view(x)?;
            if !self.cod.fwd.contains(&y) {
                return Err(CoreError::domain(y, &self.cod.fwd));
            }
            for r in &rs {
                let s = self.update(x, r)?;
                if !self.dom.bwd.contains(&s) {
                    return Err(CoreError::domain(s, &self.dom.bwd));
                }
            }
        }
        Ok(())
    }

    /// Pointwise equality of views and updates over sampled carriers.
    pub fn agrees_with(&self, other: &Lens, sampling: &Sampling) -> Result<bool> {
        if self.dom != other.dom || self.cod != other.cod {
            return Ok(false);
        }
        let xs = self.dom.fwd.sample(&sampling.num_pool);
        let rs = self.cod.bwd.sample(&sampling.num_pool);
        for x in &xs {
            if self.view(x)? != other.view(x)? {
                return Ok(false);
            }
            for r in &rs {
                if self.update(x, r)? != other.update(x, r)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The view as a table; needs a finite forward domain.
    pub fn view_table(&self) -> Result<TableFun> {
        TableFun::from_fn(self.dom.fwd.clone(), self.cod.fwd.clone(), |x| self.view(x))
    }
}

/// `h` after `g`: view `h.view ∘ g.view`, update
/// `(x, q) ↦ g.update(x, h.update(g.view(x), q))`.
pub fn lens_compose(g: &Lens, h: &Lens) -> Result<Lens> {
    if g.cod != h.dom {
        return Err(CoreError::BoundaryMismatch {
            expected: g.cod.to_string(),
            found: h.dom.to_string(),
        });
    }
    let (g1, h1) = (g.clone(), h.clone());
    let (g2, h2) = (g.clone(), h.clone());
    Ok(Lens::new(
        g.dom.clone(),
        h.cod.clone(),
        move |x| h1.view(&g1.view(x)?),
        move |x, q| {
            let y = g2.view(x)?;
            g2.update(x, &h2.update(&y, q)?)
        },
    ))
}

/// Componentwise product of two lenses.
pub fn lens_tensor(l1: &Lens, l2: &Lens) -> Lens {
    let dom = l1.dom.tensor(&l2.dom);
    let cod = l1.cod.tensor(&l2.cod);
    let xa = (l1.dom.fwd.arity(), l2.dom.fwd.arity());
    let ya = (l1.cod.fwd.arity(), l2.cod.fwd.arity());
    let ra = (l1.cod.bwd.arity(), l2.cod.bwd.arity());
    let sa = (l1.dom.bwd.arity(), l2.dom.bwd.arity());
    let (a1, a2) = (l1.clone(), l2.clone());
    let (b1, b2) = (l1.clone(), l2.clone());
    Lens::new(
        dom,
        cod,
        move |x| {
            let (x1, x2) = split_value(x, xa.0, xa.1)?;
            join_values(&a1.view(&x1)?, ya.0, &a2.view(&x2)?, ya.1)
        },
        move |x, r| {
            let (x1, x2) = split_value(x, xa.0, xa.1)?;
            let (r1, r2) = split_value(r, ra.0, ra.1)?;
            join_values(&b1.update(&x1, &r1)?, sa.0, &b2.update(&x2, &r2)?, sa.1)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{product, FiniteSet};

    fn ab() -> Ty {
        Ty::set(&FiniteSet::new("AB", ["A", "B"]).unwrap())
    }

    #[test]
    fn identity_composes_to_identity() {
        let b = Boundary::new(ab(), ab());
        let id = Lens::identity(&b);
        let c = lens_compose(&id, &id).unwrap();
        assert!(c.agrees_with(&id, &Sampling::default()).unwrap());
    }

    #[test]
    fn point_then_copoint_is_trivial() {
        let m = FiniteSet::new("M", ["C", "D"]).unwrap();
        let mm = product(&[Ty::set(&m), Ty::set(&m)]);
        let r2 = Ty::num().power(2);
        let cc = Value::Tuple(vec![Value::atom("M", "C"), Value::atom("M", "C")]);
        let pay = |a, b| Value::Tuple(vec![Value::int(a), Value::int(b)]);
        let q = TableFun::new(mm.clone(), r2.clone(), vec![pay(2, 2), pay(0, 3), pay(3, 0), pay(1, 1)]).unwrap();
        let p = Lens::point(cc.clone(), &Boundary::new(mm.clone(), r2.clone())).unwrap();
        let k = Lens::copoint(q);
        assert_eq!(k.update(&cc, &Value::unit()).unwrap(), pay(2, 2));
        let closed = lens_compose(&p, &k).unwrap();
        assert!(closed.dom().is_unit() && closed.cod().is_unit());
        assert!(closed.view(&Value::unit()).unwrap().is_unit());
        assert!(closed.update(&Value::unit(), &Value::unit()).unwrap().is_unit());
    }

    #[test]
    fn mismatched_compose_is_rejected() {
        let a = Lens::identity(&Boundary::new(ab(), ab()));
        let b = Lens::identity(&Boundary::new(ab(), Ty::num()));
        assert!(matches!(lens_compose(&a, &b), Err(CoreError::BoundaryMismatch { .. })));
    }

    #[test]
    fn tensor_with_unit_is_neutral() {
        let l = Lens::identity(&Boundary::new(ab(), Ty::num()));
        let t = lens_tensor(&l, &Lens::identity(&Boundary::unit()));
        assert!(t.agrees_with(&l, &Sampling::default()).unwrap());
    }
}

//! Open games `(X, S) → (Y, R)` and their algebra.
//!
//! A game is a composition tree over atoms (decisions, lifted function pairs,
//! counits). Strategy profiles are flat: one table per decision slot, in the
//! left-to-right order of the tree, so reassociating a composite does not
//! change its profile space.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::finite::{join_values, split_value, FunctionSpace, Relation, TableFun, Ty, Value, DEFAULT_ENUMERATION_CAP};
use crate::lens::{Boundary, Lens};
use crate::morphism::Morphism;
use crate::selection::SelectionFunction;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrategySlot {
    pub id: String,
    pub obs: Ty,
    pub moves: Ty,
}

/// One table per slot, aligned with [`OpenGame::slots`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrategyProfile {
    pub tables: Vec<TableFun>,
}

impl StrategyProfile {
    pub fn new(tables: Vec<TableFun>) -> Self {
        StrategyProfile { tables }
    }

    pub fn empty() -> Self {
        StrategyProfile { tables: Vec::new() }
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(")")
    }
}

/// A state `x : X` and a continuation `k : Y → R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    pub state: Value,
    pub continuation: TableFun,
}

impl Context {
    pub fn new(state: Value, continuation: TableFun) -> Self {
        Context { state, continuation }
    }

    /// The only context of a scalar game.
    pub fn trivial() -> Self {
        Context {
            state: Value::unit(),
            continuation: TableFun::identity(&Ty::unit()).expect("unit table"),
        }
    }
}

/// How a sequential composite builds the continuation of its first part.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComposeMode {
    Faithful,
    /// Deliberately wrong: the second part's deviating strategy is played
    /// inside the first part's continuation. Kept as a test fixture.
    DeviatedContinuation,
}

#[derive(Clone, Debug)]
pub enum Node {
    Decision(SelectionFunction),
    Lift {
        play: Morphism,
        coplay: Morphism,
    },
    Counit,
    Seq {
        first: OpenGame,
        second: OpenGame,
        mode: ComposeMode,
    },
    Tensor {
        left: OpenGame,
        right: OpenGame,
    },
}

#[derive(Debug)]
struct GameData {
    dom: Boundary,
    cod: Boundary,
    slots: Vec<StrategySlot>,
    node: Node,
}

#[derive(Clone, Debug)]
pub struct OpenGame(Arc<GameData>);

type Cont<'a> = &'a (dyn Fn(&Value) -> Result<Value> + Sync + 'a);

fn prefixed<'a>(prefix: &str, slots: &'a [StrategySlot]) -> impl Iterator<Item = StrategySlot> + 'a {
    let prefix = prefix.to_string();
    slots.iter().map(move |s| StrategySlot {
        id: format!("{prefix}{}", s.id),
        ..s.clone()
    })
}

impl OpenGame {
    fn build(dom: Boundary, cod: Boundary, slots: Vec<StrategySlot>, node: Node) -> Self {
        OpenGame(Arc::new(GameData { dom, cod, slots, node }))
    }

    pub(crate) fn atom_decision(id: &str, obs: &Ty, moves: &Ty, sel: SelectionFunction) -> Result<Self> {
        for t in [obs, moves] {
            if !t.is_finite() {
                return Err(CoreError::NotFinite(t.to_string()));
            }
        }
        let sel = sel.scalarised();
        let r = sel.outcome_for(moves);
        let slot = StrategySlot {
            id: id.to_string(),
            obs: obs.clone(),
            moves: moves.clone(),
        };
        Ok(OpenGame::build(
            Boundary::new(obs.clone(), Ty::unit()),
            Boundary::new(moves.clone(), r),
            vec![slot],
            Node::Decision(sel),
        ))
    }

    /// The strategically trivial game `(f, g) : (X, S) → (Y, R)` with
    /// `f : X → Y` and `g : R → S`.
    pub fn lift(play: impl Into<Morphism>, coplay: impl Into<Morphism>) -> Self {
        let (play, coplay) = (play.into(), coplay.into());
        let dom = Boundary::new(play.dom(), coplay.cod());
        let cod = Boundary::new(play.cod(), coplay.dom());
        OpenGame::build(dom, cod, Vec::new(), Node::Lift { play, coplay })
    }

    /// Covariant lifting `(f, id_1)`.
    pub fn lift_fwd(f: impl Into<Morphism>) -> Self {
        OpenGame::lift(f, Morphism::Identity(Ty::unit()))
    }

    /// Contravariant lifting `(id_1, g)`.
    pub fn lift_bwd(g: impl Into<Morphism>) -> Self {
        OpenGame::lift(Morphism::Identity(Ty::unit()), g)
    }

    pub fn identity(b: &Boundary) -> Self {
        OpenGame::lift(Morphism::Identity(b.fwd.clone()), Morphism::Identity(b.bwd.clone()))
    }

    /// `ε_X : (X, X) → (1, 1)`, returning the state as coutility.
    pub fn counit(x: &Ty) -> Self {
        OpenGame::build(
            Boundary::new(x.clone(), x.clone()),
            Boundary::unit(),
            Vec::new(),
            Node::Counit,
        )
    }

    /// `(Δ_X, 1) : (X, 1) → (X × X, 1)`
    pub fn copy(x: &Ty) -> Self {
        OpenGame::lift_fwd(Morphism::Diagonal(x.clone()))
    }

    /// `(X, 1) → (1, 1)`
    pub fn delete(x: &Ty) -> Self {
        OpenGame::lift_fwd(Morphism::Terminal(x.clone()))
    }

    /// Covariant lifting of `A × B → B × A`.
    pub fn swap(a: &Ty, b: &Ty) -> Self {
        OpenGame::lift_fwd(Morphism::Swap(a.clone(), b.clone()))
    }

    /// The symmetry `(X1, S1) ⊗ (X2, S2) → (X2, S2) ⊗ (X1, S1)`.
    pub fn symmetry(b1: &Boundary, b2: &Boundary) -> Self {
        OpenGame::lift(
            Morphism::Swap(b1.fwd.clone(), b2.fwd.clone()),
            Morphism::Swap(b2.bwd.clone(), b1.bwd.clone()),
        )
    }

    /// Closes a game with codomain `(Y, R)` against the outcome table
    /// `q : Y → R`: the composite `(q, id_R) ; ε_R`, a game `(Y, R) → (1, 1)`.
    pub fn costate(q: &TableFun) -> Self {
        let r = q.cod().clone();
        let lifted = OpenGame::lift(Morphism::Table(q.clone()), Morphism::Identity(r.clone()));
        compose(&lifted, &OpenGame::counit(&r)).expect("costate boundaries agree")
    }

    pub fn dom(&self) -> &Boundary {
        &self.0.dom
    }

    pub fn cod(&self) -> &Boundary {
        &self.0.cod
    }

    pub fn slots(&self) -> &[StrategySlot] {
        &self.0.slots
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn is_scalar(&self) -> bool {
        self.dom().is_unit() && self.cod().is_unit()
    }

    pub fn is_strategically_trivial(&self) -> bool {
        self.slots().is_empty()
    }

    pub fn profile_space(&self) -> Result<ProfileSpace> {
        ProfileSpace::new(self.slots())
    }

    /// Number of profiles, saturating.
    pub fn profile_count(&self) -> u128 {
        self.profile_space().map(|p| p.count()).unwrap_or(u128::MAX)
    }

    pub fn check_profile(&self, p: &StrategyProfile) -> Result<()> {
        if p.tables.len() != self.slots().len() {
            return Err(CoreError::IncompleteProfile(format!(
                "game has {} slots, profile has {} tables",
                self.slots().len(),
                p.tables.len()
            )));
        }
        for (slot, t) in self.slots().iter().zip(&p.tables) {
            if t.dom() != &slot.obs || t.cod() != &slot.moves {
                return Err(CoreError::IncompleteProfile(format!(
                    "slot {} needs a table {} -> {}, got {} -> {}",
                    slot.id,
                    slot.obs,
                    slot.moves,
                    t.dom(),
                    t.cod()
                )));
            }
        }
        Ok(())
    }

    pub fn check_context(&self, ctx: &Context) -> Result<()> {
        if !self.dom().fwd.contains(&ctx.state) {
            return Err(CoreError::ContextType(format!(
                "state {} is not in {}",
                ctx.state,
                self.dom().fwd
            )));
        }
        let k = &ctx.continuation;
        if k.dom() != &self.cod().fwd || k.cod() != &self.cod().bwd {
            return Err(CoreError::ContextType(format!(
                "continuation {} -> {} does not match codomain {}",
                k.dom(),
                k.cod(),
                self.cod()
            )));
        }
        Ok(())
    }

    pub fn play(&self, p: &StrategyProfile, x: &Value) -> Result<Value> {
        self.check_profile(p)?;
        self.dom().fwd.check(x)?;
        self.play_in(&p.tables, x)
    }

    pub fn coplay(&self, p: &StrategyProfile, x: &Value, r: &Value) -> Result<Value> {
        self.check_profile(p)?;
        self.dom().fwd.check(x)?;
        self.cod().bwd.check(r)?;
        self.coplay_in(&p.tables, x, r)
    }

    /// The lens induced by a profile: view is play, update is coplay.
    pub fn lens(&self, p: &StrategyProfile) -> Result<Lens> {
        self.check_profile(p)?;
        let (g1, g2) = (self.clone(), self.clone());
        let (t1, t2) = (p.tables.clone(), p.tables.clone());
        Ok(Lens::new(
            self.dom().clone(),
            self.cod().clone(),
            move |x| g1.play_in(&t1, x),
            move |x, r| g2.coplay_in(&t2, x, r),
        ))
    }

    pub(crate) fn play_in(&self, s: &[TableFun], x: &Value) -> Result<Value> {
        match self.node() {
            Node::Decision(_) => s[0].apply(x),
            Node::Lift { play, .. } => play.apply(x),
            Node::Counit => Ok(Value::unit()),
            Node::Seq { first, second, .. } => {
                let (s1, s2) = s.split_at(first.slots().len());
                second.play_in(s2, &first.play_in(s1, x)?)
            }
            Node::Tensor { left, right } => {
                let (s1, s2) = s.split_at(left.slots().len());
                let (x1, x2) = split_value(x, left.dom().fwd.arity(), right.dom().fwd.arity())?;
                let y1 = left.play_in(s1, &x1)?;
                let y2 = right.play_in(s2, &x2)?;
                join_values(&y1, left.cod().fwd.arity(), &y2, right.cod().fwd.arity())
            }
        }
    }

    pub(crate) fn coplay_in(&self, s: &[TableFun], x: &Value, r: &Value) -> Result<Value> {
        match self.node() {
            Node::Decision(_) => Ok(Value::unit()),
            Node::Lift { coplay, .. } => coplay.apply(r),
            Node::Counit => Ok(x.clone()),
            Node::Seq { first, second, .. } => {
                let (s1, s2) = s.split_at(first.slots().len());
                let y = first.play_in(s1, x)?;
                let mid = second.coplay_in(s2, &y, r)?;
                first.coplay_in(s1, x, &mid)
            }
            Node::Tensor { left, right } => {
                let (s1, s2) = s.split_at(left.slots().len());
                let (x1, x2) = split_value(x, left.dom().fwd.arity(), right.dom().fwd.arity())?;
                let (r1, r2) = split_value(r, left.cod().bwd.arity(), right.cod().bwd.arity())?;
                let c1 = left.coplay_in(s1, &x1, &r1)?;
                let c2 = right.coplay_in(s2, &x2, &r2)?;
                join_values(&c1, left.dom().bwd.arity(), &c2, right.dom().bwd.arity())
            }
        }
    }

    fn is_faithful(&self) -> bool {
        match self.node() {
            Node::Seq { first, second, mode } => {
                *mode == ComposeMode::Faithful && first.is_faithful() && second.is_faithful()
            }
            Node::Tensor { left, right } => left.is_faithful() && right.is_faithful(),
            _ => true,
        }
    }

    /// For each slot, the observation reached under `s` and the moves its
    /// selection function accepts there. With faithful composition
    /// `(s, t) ∈ B(x, k)` iff every `t_i` picks an accepted move.
    fn slot_choices(&self, s: &[TableFun], x: &Value, k: Cont<'_>, out: &mut Vec<(Value, Vec<Value>)>) -> Result<()> {
        match self.node() {
            Node::Decision(sel) => {
                let slot = &self.slots()[0];
                let table = TableFun::from_fn(slot.moves.clone(), self.cod().bwd.clone(), k)?;
                out.push((x.clone(), sel.select(&table)?));
                Ok(())
            }
            Node::Lift { .. } | Node::Counit => Ok(()),
            Node::Seq { first, second, .. } => {
                let (s1, s2) = s.split_at(first.slots().len());
                let k_first = |y: &Value| -> Result<Value> {
                    let z = second.play_in(s2, y)?;
                    second.coplay_in(s2, y, &k(&z)?)
                };
                first.slot_choices(s1, x, &k_first, out)?;
                let y = first.play_in(s1, x)?;
                second.slot_choices(s2, &y, k, out)
            }
            Node::Tensor { left, right } => {
                let (s1, s2) = s.split_at(left.slots().len());
                let (ya1, ya2) = (left.cod().fwd.arity(), right.cod().fwd.arity());
                let (ra1, ra2) = (left.cod().bwd.arity(), right.cod().bwd.arity());
                let (x1, x2) = split_value(x, left.dom().fwd.arity(), right.dom().fwd.arity())?;
                let y1_fixed = left.play_in(s1, &x1)?;
                let y2_fixed = right.play_in(s2, &x2)?;
                let k1 = |y1: &Value| -> Result<Value> {
                    let r = k(&join_values(y1, ya1, &y2_fixed, ya2)?)?;
                    Ok(split_value(&r, ra1, ra2)?.0)
                };
                let k2 = |y2: &Value| -> Result<Value> {
                    let r = k(&join_values(&y1_fixed, ya1, y2, ya2)?)?;
                    Ok(split_value(&r, ra1, ra2)?.1)
                };
                left.slot_choices(s1, &x1, &k1, out)?;
                right.slot_choices(s2, &x2, &k2, out)
            }
        }
    }

    /// Membership of `(s, t)` in the best response relation at `(x, k)`.
    /// Every constituent is queried exactly once.
    pub(crate) fn br_in(&self, s: &[TableFun], t: &[TableFun], x: &Value, k: Cont<'_>) -> Result<bool> {
        match self.node() {
            Node::Decision(sel) => {
                let slot = &self.slots()[0];
                let table = TableFun::from_fn(slot.moves.clone(), self.cod().bwd.clone(), k)?;
                let chosen = t[0].apply(x)?;
                Ok(sel.select(&table)?.contains(&chosen))
            }
            Node::Lift { .. } | Node::Counit => Ok(true),
            Node::Seq { first, second, mode } => {
                let n = first.slots().len();
                let (s1, s2) = s.split_at(n);
                let (t1, t2) = t.split_at(n);
                let used = match mode {
                    ComposeMode::Faithful => s2,
                    ComposeMode::DeviatedContinuation => t2,
                };
                let k_first = |y: &Value| -> Result<Value> {
                    let z = second.play_in(used, y)?;
                    second.coplay_in(used, y, &k(&z)?)
                };
                let b1 = first.br_in(s1, t1, x, &k_first)?;
                let y = first.play_in(s1, x)?;
                let b2 = second.br_in(s2, t2, &y, k)?;
                Ok(b1 & b2)
            }
            Node::Tensor { left, right } => {
                let n = left.slots().len();
                let (s1, s2) = s.split_at(n);
                let (t1, t2) = t.split_at(n);
                let (xa1, xa2) = (left.dom().fwd.arity(), right.dom().fwd.arity());
                let (ya1, ya2) = (left.cod().fwd.arity(), right.cod().fwd.arity());
                let (ra1, ra2) = (left.cod().bwd.arity(), right.cod().bwd.arity());
                let (x1, x2) = split_value(x, xa1, xa2)?;
                let y1_fixed = left.play_in(s1, &x1)?;
                let y2_fixed = right.play_in(s2, &x2)?;
                let k1 = |y1: &Value| -> Result<Value> {
                    let r = k(&join_values(y1, ya1, &y2_fixed, ya2)?)?;
                    Ok(split_value(&r, ra1, ra2)?.0)
                };
                let k2 = |y2: &Value| -> Result<Value> {
                    let r = k(&join_values(&y1_fixed, ya1, y2, ya2)?)?;
                    Ok(split_value(&r, ra1, ra2)?.1)
                };
                let b1 = left.br_in(s1, t1, &x1, &k1)?;
                let b2 = right.br_in(s2, t2, &x2, &k2)?;
                Ok(b1 & b2)
            }
        }
    }

    /// `(σ, σ') ∈ B(x, k)`.
    pub fn best_responds(&self, ctx: &Context, sigma: &StrategyProfile, dev: &StrategyProfile) -> Result<bool> {
        self.check_context(ctx)?;
        self.check_profile(sigma)?;
        self.check_profile(dev)?;
        let k = |y: &Value| ctx.continuation.apply(y);
        self.br_in(&sigma.tables, &dev.tables, &ctx.state, &k)
    }

    /// The best response relation at a context, evaluated lazily.
    pub fn best_response(&self, ctx: &Context) -> Result<BestResponse> {
        self.check_context(ctx)?;
        Ok(BestResponse {
            game: self.clone(),
            ctx: ctx.clone(),
        })
    }

    /// Selection equilibria of a scalar game.
    pub fn equilibria(&self) -> Result<Vec<StrategyProfile>> {
        if !self.is_scalar() {
            return Err(CoreError::NotScalar(format!("{} -> {}", self.dom(), self.cod())));
        }
        self.equilibria_in(&Context::trivial())
    }

    /// Profiles `σ` with `(σ, σ) ∈ B(x, k)`, in canonical order.
    pub fn equilibria_in(&self, ctx: &Context) -> Result<Vec<StrategyProfile>> {
        self.equilibria_capped(ctx, DEFAULT_ENUMERATION_CAP)
    }

    pub fn equilibria_capped(&self, ctx: &Context, cap: u128) -> Result<Vec<StrategyProfile>> {
        self.check_context(ctx)?;
        let space = self.profile_space()?;
        if space.count() > cap {
            return Err(CoreError::cap("strategy profiles", space.count(), cap));
        }
        let k = |y: &Value| ctx.continuation.apply(y);
        let hits: Vec<Option<StrategyProfile>> = (0..space.count() as usize)
            .into_par_iter()
            .map(|i| {
                let p = space.nth(i as u128);
                match self.br_in(&p.tables, &p.tables, &ctx.state, &k) {
                    Ok(true) => Ok(Some(p)),
                    Ok(false) => Ok(None),
                    Err(e) => Err(e),
                }
            })
            .collect::<Result<_>>()?;
        Ok(hits.into_iter().flatten().collect())
    }
}

/// `h ∘ g`: play `g` then `h`. The profile is `g`'s slots followed by `h`'s.
pub fn compose(g: &OpenGame, h: &OpenGame) -> Result<OpenGame> {
    compose_with(g, h, ComposeMode::Faithful)
}

#[doc(hidden)]
pub fn compose_with(g: &OpenGame, h: &OpenGame, mode: ComposeMode) -> Result<OpenGame> {
    if g.cod() != h.dom() {
        return Err(CoreError::BoundaryMismatch {
            expected: g.cod().to_string(),
            found: h.dom().to_string(),
        });
    }
    let slots = prefixed("l/", g.slots()).chain(prefixed("r/", h.slots())).collect();
    Ok(OpenGame::build(
        g.dom().clone(),
        h.cod().clone(),
        slots,
        Node::Seq {
            first: g.clone(),
            second: h.clone(),
            mode,
        },
    ))
}

/// `g ⊗ h`: simultaneous play side by side.
pub fn tensor(g: &OpenGame, h: &OpenGame) -> OpenGame {
    let slots = prefixed("l/", g.slots()).chain(prefixed("r/", h.slots())).collect();
    OpenGame::build(
        g.dom().tensor(h.dom()),
        g.cod().tensor(h.cod()),
        slots,
        Node::Tensor {
            left: g.clone(),
            right: h.clone(),
        },
    )
}

/// All profiles of a slot list, in mixed-radix order with the first slot
/// most significant and each table in odometer order.
#[derive(Clone, Debug)]
pub struct ProfileSpace {
    spaces: Vec<FunctionSpace>,
    count: u128,
}

impl ProfileSpace {
    pub fn new(slots: &[StrategySlot]) -> Result<Self> {
        let spaces = slots
            .iter()
            .map(|s| FunctionSpace::new(&s.obs, &s.moves))
            .collect::<Result<Vec<_>>>()?;
        let count = spaces.iter().fold(1u128, |acc, s| acc.saturating_mul(s.count()));
        Ok(ProfileSpace { spaces, count })
    }

    pub fn count(&self) -> u128 {
        self.count
    }

    pub fn nth(&self, mut i: u128) -> StrategyProfile {
        assert!(i < self.count, "profile index out of range");
        let mut tables = Vec::with_capacity(self.spaces.len());
        for s in self.spaces.iter().rev() {
            tables.push(s.nth(i % s.count()));
            i /= s.count();
        }
        tables.reverse();
        StrategyProfile { tables }
    }

    pub fn index_of(&self, p: &StrategyProfile) -> Option<u128> {
        if p.tables.len() != self.spaces.len() {
            return None;
        }
        self.spaces
            .iter()
            .zip(&p.tables)
            .try_fold(0u128, |acc, (s, t)| Some(acc * s.count() + s.index_of(t)?))
    }

    /// Every profile; fails when there are more than `cap`.
    pub fn enumerate(&self, cap: u128) -> Result<Vec<StrategyProfile>> {
        if self.count > cap {
            return Err(CoreError::cap("strategy profiles", self.count, cap));
        }
        Ok((0..self.count).map(|i| self.nth(i)).collect())
    }
}

/// A best response relation at a fixed context. Membership is computed on
/// demand; [`BestResponse::materialize`] tabulates it.
#[derive(Clone, Debug)]
pub struct BestResponse {
    game: OpenGame,
    ctx: Context,
}

impl BestResponse {
    pub fn game(&self) -> &OpenGame {
        &self.game
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn contains(&self, sigma: &StrategyProfile, dev: &StrategyProfile) -> Result<bool> {
        self.game.best_responds(&self.ctx, sigma, dev)
    }

    /// The relation over profile indices. Fails when `|Σ|²` exceeds `cap`.
    pub fn materialize(&self, cap: u128) -> Result<Relation> {
        let space = self.game.profile_space()?;
        let n = space.count();
        if n.saturating_mul(n) > cap {
            return Err(CoreError::cap("best response pairs", n.saturating_mul(n), cap));
        }
        let n = n as usize;
        let profiles: Vec<StrategyProfile> = (0..n as u128).map(|i| space.nth(i)).collect();
        let k = |y: &Value| self.ctx.continuation.apply(y);
        let faithful = self.game.is_faithful();
        let rows = profiles
            .par_iter()
            .map(|s| {
                if faithful {
                    let mut choices = Vec::new();
                    self.game.slot_choices(&s.tables, &self.ctx.state, &k, &mut choices)?;
                    return profiles
                        .iter()
                        .map(|t| {
                            t.tables.iter().zip(&choices).try_fold(true, |acc, (table, (obs, ok))| {
                                Ok(acc && ok.contains(&table.apply(obs)?))
                            })
                        })
                        .collect::<Result<Vec<bool>>>();
                }
                profiles
                    .iter()
                    .map(|t| self.game.br_in(&s.tables, &t.tables, &self.ctx.state, &k))
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Relation::from_rows(n, rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{product, FiniteSet};

    fn ab() -> Ty {
        Ty::set(&FiniteSet::new("AB", ["A", "B"]).unwrap())
    }

    #[test]
    fn identity_game() {
        let g = OpenGame::identity(&Boundary::new(ab(), ab()));
        let a = Value::atom("AB", "A");
        let b = Value::atom("AB", "B");
        let p = StrategyProfile::empty();
        assert_eq!(g.play(&p, &a).unwrap(), a);
        assert_eq!(g.coplay(&p, &a, &b).unwrap(), b);
        assert!(g.slots().is_empty());
    }

    #[test]
    fn closed_identity_has_one_equilibrium() {
        let g = OpenGame::identity(&Boundary::unit());
        assert_eq!(g.equilibria().unwrap(), vec![StrategyProfile::empty()]);
    }

    #[test]
    fn counit_reflects_state() {
        let g = OpenGame::counit(&ab());
        let a = Value::atom("AB", "A");
        assert_eq!(g.coplay(&StrategyProfile::empty(), &a, &Value::unit()).unwrap(), a);
        assert!(g.play(&StrategyProfile::empty(), &a).unwrap().is_unit());
    }

    #[test]
    fn compose_rejects_mismatch() {
        let g = OpenGame::identity(&Boundary::new(ab(), ab()));
        let h = OpenGame::counit(&Ty::num());
        assert!(matches!(compose(&g, &h), Err(CoreError::BoundaryMismatch { .. })));
    }

    #[test]
    fn equilibria_needs_scalar() {
        let g = OpenGame::identity(&Boundary::new(ab(), ab()));
        assert!(matches!(g.equilibria(), Err(CoreError::NotScalar(_))));
    }

    #[test]
    fn copy_and_swap() {
        let a = Value::atom("AB", "A");
        let b = Value::atom("AB", "B");
        let e = StrategyProfile::empty();
        let c = OpenGame::copy(&ab());
        assert_eq!(c.play(&e, &a).unwrap(), Value::Tuple(vec![a.clone(), a.clone()]));
        let s = OpenGame::swap(&ab(), &ab());
        assert_eq!(
            s.play(&e, &Value::Tuple(vec![a.clone(), b.clone()])).unwrap(),
            Value::Tuple(vec![b, a])
        );
        assert_eq!(s.dom().fwd, product(&[ab(), ab()]));
    }

    #[test]
    fn profile_space_is_mixed_radix() {
        let slots = vec![
            StrategySlot {
                id: "a".into(),
                obs: Ty::unit(),
                moves: ab(),
            },
            StrategySlot {
                id: "b".into(),
                obs: ab(),
                moves: ab(),
            },
        ];
        let space = ProfileSpace::new(&slots).unwrap();
        assert_eq!(space.count(), 8);
        for i in 0..8 {
            assert_eq!(space.index_of(&space.nth(i)), Some(i));
        }
        assert_eq!(space.nth(4).tables[0].to_string(), "B");
        assert_eq!(space.nth(1).tables[1].to_string(), "{A->A, B->B}");
    }
}

//! Randomised checks of the algebraic laws of open games.
//!
//! Each trial draws small atoms over sets of at most two elements, builds
//! both sides of a law and compares them exhaustively: boundaries, slot
//! signatures, play and coplay on every sampled input, and best response
//! membership for every profile pair in every enumerated context.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::contexts::{contexts, ContextPlan};
use crate::decisions::decision_named;
use crate::error::{CoreError, Result};
use crate::finite::{FiniteSet, Rational, TableFun, Ty, Value};
use crate::game::{compose_with, tensor, ComposeMode, OpenGame, StrategyProfile};
use crate::lens::{lens_compose, lens_tensor, Boundary};
use crate::morphism::Morphism;
use crate::selection::SelectionFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    Identity,
    Assoc,
    Interchange,
    Counit,
    Comonoid,
    LensFactor,
}

impl Law {
    pub const ALL: [Law; 6] = [
        Law::Identity,
        Law::Assoc,
        Law::Interchange,
        Law::Counit,
        Law::Comonoid,
        Law::LensFactor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Identity => "identity",
            Law::Assoc => "assoc",
            Law::Interchange => "interchange",
            Law::Counit => "counit",
            Law::Comonoid => "comonoid",
            Law::LensFactor => "lens-factor",
        }
    }

    pub fn parse(s: &str) -> Option<Law> {
        Law::ALL.into_iter().find(|l| l.name() == s)
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which implementation of sequential composition the laws are checked
/// against. `BrokenCompose` exists to show that the checks can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    Faithful,
    BrokenCompose,
}

impl Algebra {
    pub fn compose(self, g: &OpenGame, h: &OpenGame) -> Result<OpenGame> {
        let mode = match self {
            Algebra::Faithful => ComposeMode::Faithful,
            Algebra::BrokenCompose => ComposeMode::DeviatedContinuation,
        };
        compose_with(g, h, mode)
    }
}

#[derive(Clone, Debug)]
pub struct LawConfig {
    pub seed: u64,
    pub trials: usize,
    pub plan: ContextPlan,
    /// Composites with more profiles than this are redrawn.
    pub max_profiles: u128,
    /// Composites whose codomain has more forward values are redrawn.
    pub max_outputs: u128,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            seed: 0,
            trials: 200,
            plan: ContextPlan::default(),
            max_profiles: 16,
            max_outputs: 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub trial: usize,
    /// Running the law with this seed and one trial reproduces the failure.
    pub seed: u64,
    pub lhs: String,
    pub rhs: String,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct LawOutcome {
    pub law: Law,
    pub trials: usize,
    pub passed: usize,
    pub counterexample: Option<Counterexample>,
}

impl LawOutcome {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Runs one law for `config.trials` trials, stopping at the first failure.
pub fn check_law(law: Law, algebra: Algebra, config: &LawConfig) -> Result<LawOutcome> {
    let mut outcome = LawOutcome {
        law,
        trials: config.trials,
        passed: 0,
        counterexample: None,
    };
    for trial in 0..config.trials {
        let seed = config.seed.wrapping_add(trial as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut plan = config.plan.clone();
        plan.seed = seed;
        let sides = instance(law, algebra, config, &mut rng)?;
        let verdict = match &sides {
            Instance::Games(pairs) => {
                let mut v = None;
                for (lhs, rhs, perm) in pairs {
                    if let Some(reason) = games_agree(lhs, rhs, perm.as_deref(), &plan)? {
                        v = Some((describe(lhs), describe(rhs), reason));
                        break;
                    }
                }
                v
            }
            Instance::Lenses(whole, parts) => lens_factor_failure(whole, parts, &plan)?
                .map(|reason| (describe(whole), "constituent lenses".to_string(), reason)),
        };
        match verdict {
            None => outcome.passed += 1,
            Some((lhs, rhs, reason)) => {
                outcome.counterexample = Some(Counterexample {
                    trial,
                    seed,
                    lhs,
                    rhs,
                    reason,
                });
                break;
            }
        }
    }
    Ok(outcome)
}

fn describe(g: &OpenGame) -> String {
    use crate::game::Node;
    match g.node() {
        Node::Decision(sel) => format!("D[{}: {} -> {}]", sel.name(), g.dom().fwd, g.cod().fwd),
        Node::Lift { play, coplay } if play.is_identity() && coplay.is_identity() => {
            format!("id{}", g.dom())
        }
        Node::Lift { play, coplay } => format!("lift({play} / {coplay})"),
        Node::Counit => format!("counit[{}]", g.dom().fwd),
        Node::Seq { first, second, .. } => format!("({} ; {})", describe(first), describe(second)),
        Node::Tensor { left, right } => format!("({} || {})", describe(left), describe(right)),
    }
}

enum Instance {
    /// Pairs of games that must agree; the permutation maps each slot of
    /// the right-hand game to a slot of the left-hand one.
    Games(Vec<(OpenGame, OpenGame, Option<Vec<usize>>)>),
    Lenses(OpenGame, Parts),
}

enum Parts {
    Seq(OpenGame, OpenGame),
    Tensor(OpenGame, OpenGame),
}

struct Pools {
    a: Ty,
    c: Ty,
}

impl Pools {
    fn new() -> Self {
        Pools {
            a: Ty::set(&FiniteSet::new("A", ["a0", "a1"]).expect("set")),
            c: Ty::set(&FiniteSet::new("C", ["c0", "c1"]).expect("set")),
        }
    }

    fn fwd(&self, rng: &mut impl Rng) -> Ty {
        [Ty::unit(), self.a.clone(), self.c.clone()]
            .choose(rng)
            .expect("nonempty")
            .clone()
    }

    fn bwd(&self, rng: &mut impl Rng) -> Ty {
        [Ty::unit(), self.a.clone(), Ty::num()]
            .choose(rng)
            .expect("nonempty")
            .clone()
    }

    fn boundary(&self, rng: &mut impl Rng) -> Boundary {
        Boundary::new(self.fwd(rng), self.bwd(rng))
    }
}

fn random_value(ty: &Ty, rng: &mut impl Rng) -> Result<Value> {
    if ty.is_finite() {
        let els = ty.elements()?;
        Ok(els.choose(rng).expect("nonempty carrier").clone())
    } else if *ty == Ty::num() {
        Ok(Value::Num(Rational::new(rng.gen_range(-2..=2), rng.gen_range(1..=2))))
    } else {
        Err(CoreError::Invalid(format!("cannot draw from {ty}")))
    }
}

fn random_table(dom: &Ty, cod: &Ty, rng: &mut impl Rng) -> Result<TableFun> {
    let n = dom.elements()?.len();
    let entries = (0..n).map(|_| random_value(cod, rng)).collect::<Result<Vec<_>>>()?;
    TableFun::new(dom.clone(), cod.clone(), entries)
}

/// A random backward map `R' → S` for some `R'` from the pool.
fn random_coplay(s: &Ty, pools: &Pools, rng: &mut impl Rng) -> Result<Morphism> {
    loop {
        let r = pools.bwd(rng);
        if s.is_unit() {
            return Ok(Morphism::Terminal(r));
        }
        if r == *s && rng.gen_bool(0.3) {
            return Ok(Morphism::Identity(r));
        }
        if r.is_finite() {
            return Ok(Morphism::Table(random_table(&r, s, rng)?));
        }
    }
}

/// A random atom whose domain is `dom`.
fn random_atom(dom: &Boundary, pools: &Pools, rng: &mut impl Rng, label: &str) -> Result<OpenGame> {
    loop {
        match rng.gen_range(0..6) {
            0 => return Ok(OpenGame::identity(dom)),
            1 | 2 => {
                let y = pools.fwd(rng);
                let f = random_table(&dom.fwd, &y, rng)?;
                let g = random_coplay(&dom.bwd, pools, rng)?;
                return Ok(OpenGame::lift(f, g));
            }
            3 | 4 if dom.bwd.is_unit() => {
                let y = if rng.gen_bool(0.5) {
                    pools.a.clone()
                } else {
                    pools.c.clone()
                };
                let sel = match rng.gen_range(0..4) {
                    0 => SelectionFunction::fix(),
                    1 => SelectionFunction::antifix(),
                    _ => SelectionFunction::argmax(),
                };
                return decision_named(label, &dom.fwd, &y, sel);
            }
            5 if dom.fwd == dom.bwd => return Ok(OpenGame::counit(&dom.fwd)),
            5 if dom.bwd.is_unit() && dom.fwd.cardinality().unwrap_or(0) <= 2 => return Ok(OpenGame::copy(&dom.fwd)),
            _ => continue,
        }
    }
}

/// A chain of `n` random atoms, each starting where the previous ends.
fn random_chain(n: usize, pools: &Pools, rng: &mut impl Rng, tag: &str) -> Result<Vec<OpenGame>> {
    let mut dom = pools.boundary(rng);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let g = random_atom(&dom, pools, rng, &format!("{tag}{i}"))?;
        dom = g.cod().clone();
        out.push(g);
    }
    Ok(out)
}

fn small_enough(g: &OpenGame, config: &LawConfig) -> bool {
    g.profile_count() <= config.max_profiles
        && g.cod().fwd.cardinality().is_some_and(|n| n <= config.max_outputs)
        && g.dom().fwd.cardinality().is_some_and(|n| n <= config.max_outputs)
}

const REDRAWS: usize = 64;

fn instance(law: Law, algebra: Algebra, config: &LawConfig, rng: &mut impl Rng) -> Result<Instance> {
    let pools = Pools::new();
    for _ in 0..REDRAWS {
        let inst = match law {
            Law::Identity => {
                let g = random_chain(1, &pools, rng, "g")?.remove(0);
                let left = algebra.compose(&OpenGame::identity(g.dom()), &g)?;
                let right = algebra.compose(&g, &OpenGame::identity(g.cod()))?;
                Instance::Games(vec![(left, g.clone(), None), (right, g, None)])
            }
            Law::Assoc => {
                let c = random_chain(3, &pools, rng, "g")?;
                let lhs = algebra.compose(&algebra.compose(&c[0], &c[1])?, &c[2])?;
                let rhs = algebra.compose(&c[0], &algebra.compose(&c[1], &c[2])?)?;
                Instance::Games(vec![(lhs, rhs, None)])
            }
            Law::Interchange => {
                let c1 = random_chain(2, &pools, rng, "g")?;
                let c2 = random_chain(2, &pools, rng, "h")?;
                let (g, h, g2, h2) = (&c1[0], &c1[1], &c2[0], &c2[1]);
                let lhs = algebra.compose(&tensor(g, g2), &tensor(h, h2))?;
                let rhs = tensor(&algebra.compose(g, h)?, &algebra.compose(g2, h2)?);
                // lhs slots: g, g2, h, h2; rhs slots: g, h, g2, h2.
                let (ng, nh, ng2) = (g.slots().len(), h.slots().len(), g2.slots().len());
                let nh2 = h2.slots().len();
                let perm: Vec<usize> = (0..ng)
                    .chain((0..nh).map(|i| ng + ng2 + i))
                    .chain((0..ng2).map(|i| ng + i))
                    .chain((0..nh2).map(|i| ng + ng2 + nh + i))
                    .collect();
                Instance::Games(vec![(lhs, rhs, Some(perm))])
            }
            Law::Counit => {
                let sizes = [1usize, 2];
                let x = set_of("X", *sizes.choose(rng).expect("sizes"));
                let y = set_of("Y", *sizes.choose(rng).expect("sizes"));
                let f = random_table(&x, &y, rng)?;
                let (lhs, rhs) = counit_sides(algebra, &f)?;
                Instance::Games(vec![(lhs, rhs, None)])
            }
            Law::Comonoid => {
                let x = if rng.gen_bool(0.5) {
                    pools.a.clone()
                } else {
                    pools.c.clone()
                };
                let unit = Boundary::new(x.clone(), Ty::unit());
                let id = OpenGame::identity(&unit);
                let copy = OpenGame::copy(&x);
                let del = OpenGame::delete(&x);
                let left_unit = algebra.compose(&copy, &tensor(&del, &id))?;
                let right_unit = algebra.compose(&copy, &tensor(&id, &del))?;
                let assoc_l = algebra.compose(&copy, &tensor(&copy, &id))?;
                let assoc_r = algebra.compose(&copy, &tensor(&id, &copy))?;
                Instance::Games(vec![
                    (left_unit, id.clone(), None),
                    (right_unit, id, None),
                    (assoc_l, assoc_r, None),
                ])
            }
            Law::LensFactor => {
                if rng.gen_bool(0.5) {
                    let c = random_chain(2, &pools, rng, "g")?;
                    let whole = algebra.compose(&c[0], &c[1])?;
                    Instance::Lenses(whole, Parts::Seq(c[0].clone(), c[1].clone()))
                } else {
                    let g = random_chain(1, &pools, rng, "g")?.remove(0);
                    let h = random_chain(1, &pools, rng, "h")?.remove(0);
                    Instance::Lenses(tensor(&g, &h), Parts::Tensor(g, h))
                }
            }
        };
        let ok = match &inst {
            // Strategically trivial on both sides; any size is cheap.
            Instance::Games(_) if matches!(law, Law::Comonoid | Law::Counit) => true,
            Instance::Games(pairs) => pairs
                .iter()
                .all(|(l, r, _)| small_enough(l, config) && small_enough(r, config)),
            Instance::Lenses(whole, _) => small_enough(whole, config),
        };
        if ok {
            return Ok(inst);
        }
    }
    Err(CoreError::Invalid(format!(
        "could not draw a small enough instance for {law} in {REDRAWS} attempts"
    )))
}

fn set_of(name: &str, n: usize) -> Ty {
    let els: Vec<String> = (0..n).map(|i| format!("{}{i}", name.to_lowercase())).collect();
    Ty::set(&FiniteSet::new(name, els).expect("set"))
}

/// Both sides of the counit law for `f : X → Y`:
/// `ε_Y ∘ ((f, id_1) ⊗ id_(1,Y))` and `ε_X ∘ (id_(X,1) ⊗ (id_1, f))`.
pub fn counit_sides(algebra: Algebra, f: &TableFun) -> Result<(OpenGame, OpenGame)> {
    let (x, y) = (f.dom().clone(), f.cod().clone());
    let lhs = algebra.compose(
        &tensor(
            &OpenGame::lift_fwd(f.clone()),
            &OpenGame::identity(&Boundary::new(Ty::unit(), y.clone())),
        ),
        &OpenGame::counit(&y),
    )?;
    let rhs = algebra.compose(
        &tensor(
            &OpenGame::identity(&Boundary::new(x.clone(), Ty::unit())),
            &OpenGame::lift_bwd(f.clone()),
        ),
        &OpenGame::counit(&x),
    )?;
    Ok((lhs, rhs))
}

fn permute(p: &StrategyProfile, perm: Option<&[usize]>) -> StrategyProfile {
    match perm {
        None => p.clone(),
        Some(perm) => StrategyProfile::new(perm.iter().map(|&i| p.tables[i].clone()).collect()),
    }
}

fn base_label(id: &str) -> &str {
    id.rsplit('/').next().unwrap_or(id)
}

/// Compares two games exhaustively. `perm[j]` names the slot of `g1` that
/// slot `j` of `g2` corresponds to. Returns a description of the first
/// difference found.
pub fn games_agree(g1: &OpenGame, g2: &OpenGame, perm: Option<&[usize]>, plan: &ContextPlan) -> Result<Option<String>> {
    if g1.dom() != g2.dom() || g1.cod() != g2.cod() {
        return Ok(Some(format!(
            "boundaries differ: {} -> {} vs {} -> {}",
            g1.dom(),
            g1.cod(),
            g2.dom(),
            g2.cod()
        )));
    }
    let n = g1.slots().len();
    if g2.slots().len() != n {
        return Ok(Some(format!("{} slots vs {}", n, g2.slots().len())));
    }
    let identity: Vec<usize> = (0..n).collect();
    let perm_ref = perm.unwrap_or(&identity);
    for (j, s2) in g2.slots().iter().enumerate() {
        let s1 = &g1.slots()[perm_ref[j]];
        if s1.obs != s2.obs || s1.moves != s2.moves || base_label(&s1.id) != base_label(&s2.id) {
            return Ok(Some(format!("slot {} differs from slot {}", s2.id, s1.id)));
        }
    }
    let profiles = g1.profile_space()?.enumerate(u128::MAX)?;
    let mapped: Vec<StrategyProfile> = profiles.iter().map(|p| permute(p, perm)).collect();
    let xs = g1.dom().fwd.sample(&plan.sampling.num_pool);
    let rs = g1.cod().bwd.sample(&plan.sampling.num_pool);
    for (p1, p2) in profiles.iter().zip(&mapped) {
        for x in &xs {
            let (y1, y2) = (g1.play(p1, x)?, g2.play(p2, x)?);
            if y1 != y2 {
                return Ok(Some(format!("play at {p1}, {x}: {y1} vs {y2}")));
            }
            for r in rs.iter() {
                let (c1, c2) = (g1.coplay(p1, x, r)?, g2.coplay(p2, x, r)?);
                if c1 != c2 {
                    return Ok(Some(format!("coplay at {p1}, {x}, {r}: {c1} vs {c2}")));
                }
            }
        }
    }
    let ctxs = contexts(g1.dom(), g1.cod(), plan)?;
    let found = ctxs
        .par_iter()
        .map(|ctx| -> Result<Option<String>> {
            for (s1, s2) in profiles.iter().zip(&mapped) {
                for (t1, t2) in profiles.iter().zip(&mapped) {
                    let b1 = g1.best_responds(ctx, s1, t1)?;
                    let b2 = g2.best_responds(ctx, s2, t2)?;
                    if b1 != b2 {
                        return Ok(Some(format!(
                            "best response at state {}, continuation {}: ({s1}, {t1}) is {b1} vs {b2}",
                            ctx.state, ctx.continuation
                        )));
                    }
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().next())
}

fn lens_factor_failure(whole: &OpenGame, parts: &Parts, plan: &ContextPlan) -> Result<Option<String>> {
    let (g, h) = match parts {
        Parts::Seq(g, h) | Parts::Tensor(g, h) => (g, h),
    };
    let n = g.slots().len();
    for p in whole.profile_space()?.enumerate(u128::MAX)? {
        let lens = whole.lens(&p)?;
        if let Err(e) = lens.check_well_formed(&plan.sampling) {
            return Ok(Some(format!("lens of {p} is not well formed: {e}")));
        }
        let p1 = StrategyProfile::new(p.tables[..n].to_vec());
        let p2 = StrategyProfile::new(p.tables[n..].to_vec());
        let (l1, l2) = (g.lens(&p1)?, h.lens(&p2)?);
        let expected = match parts {
            Parts::Seq(..) => lens_compose(&l1, &l2)?,
            Parts::Tensor(..) => lens_tensor(&l1, &l2),
        };
        if !lens.agrees_with(&expected, &plan.sampling)? {
            return Ok(Some(format!("lens of {p} differs from the composite of its parts")));
        }
    }
    Ok(None)
}

/// Checks the lens factorization of a game and, recursively, of every
/// composite inside it: each profile's lens is well formed, and every
/// `Seq`/`Tensor` node's lens is the lens composite/product of its parts.
pub fn check_lens_factorization(game: &OpenGame, plan: &ContextPlan) -> Result<Option<String>> {
    use crate::game::Node;
    let (parts, children) = match game.node() {
        Node::Seq { first, second, .. } => (
            Some(Parts::Seq(first.clone(), second.clone())),
            vec![first.clone(), second.clone()],
        ),
        Node::Tensor { left, right } => (
            Some(Parts::Tensor(left.clone(), right.clone())),
            vec![left.clone(), right.clone()],
        ),
        _ => (None, Vec::new()),
    };
    match parts {
        Some(parts) => {
            if let Some(fail) = lens_factor_failure(game, &parts, plan)? {
                return Ok(Some(fail));
            }
        }
        None => {
            for p in game.profile_space()?.enumerate(u128::MAX)? {
                if let Err(e) = game.lens(&p)?.check_well_formed(&plan.sampling) {
                    return Ok(Some(format!("lens of {p} is not well formed: {e}")));
                }
            }
        }
    }
    for c in children {
        if let Some(fail) = check_lens_factorization(&c, plan)? {
            return Ok(Some(fail));
        }
    }
    Ok(None)
}

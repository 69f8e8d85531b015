//! Comparing compositional games with the monolithic oracle on random
//! outcome tables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decisions::{sequential_game, simultaneous_game};
use crate::error::{CoreError, Result};
use crate::finite::{assemble, product, FiniteSet, Rational, TableFun, Ty, Value};
use crate::game::{compose, Context, Node, OpenGame};
use crate::oracle::ClassicGame;
use crate::selection::Rule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    Simultaneous,
    Sequential,
}

#[derive(Clone, Debug)]
pub struct Disagreement {
    pub trial: usize,
    pub q: TableFun,
    pub sigma: usize,
    pub dev: usize,
    pub game: bool,
    pub oracle: bool,
}

#[derive(Clone, Debug)]
pub struct CompareReport {
    pub kind: OracleKind,
    pub trials: usize,
    pub agreed: usize,
    pub profiles: u128,
    pub first_disagreement: Option<Disagreement>,
}

impl CompareReport {
    pub fn all_agree(&self) -> bool {
        self.agreed == self.trials
    }
}

/// Move sets named `X1, X2, …` with elements `a, b, c, …`.
pub fn move_sets(sizes: &[usize]) -> Result<Vec<Ty>> {
    sizes
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let els: Vec<String> = (0..n).map(|j| ((b'a' + j as u8) as char).to_string()).collect();
            Ok(Ty::set(&FiniteSet::new(&format!("X{}", i + 1), els)?))
        })
        .collect()
}

/// A random outcome table `∏ X_i → R^n` with rationals `p/q`,
/// `p ∈ [-5, 5]`, `q ∈ [1, 3]`.
pub fn random_outcome(moves: &[Ty], players: usize, rng: &mut impl Rng) -> Result<TableFun> {
    let dom = product(moves);
    let cod = Ty::num().power(players);
    TableFun::from_fn(dom, cod, |_| {
        let comps = (0..players)
            .map(|_| Value::Num(Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=3))))
            .collect();
        Ok(assemble(comps))
    })
}

/// The move sets of a game of the shape `(1, 1) → (∏ X_i, R^n)` whose `n`
/// slots are maximising decisions, provided its observations match `kind`.
pub fn detect_shape(game: &OpenGame, kind: OracleKind) -> Result<Vec<Ty>> {
    let bad = |why: &str| {
        Err(CoreError::Invalid(format!(
            "game does not have the expected shape: {why}"
        )))
    };
    if !game.dom().is_unit() {
        return bad("domain is not (1, 1)");
    }
    let slots = game.slots();
    let moves: Vec<Ty> = slots.iter().map(|s| s.moves.clone()).collect();
    if game.cod().fwd != product(&moves) {
        return bad("codomain does not list the moves in slot order");
    }
    if game.cod().bwd != Ty::num().power(slots.len()) {
        return bad("one utility coordinate per player is required");
    }
    for (i, s) in slots.iter().enumerate() {
        let expected = match kind {
            OracleKind::Simultaneous => Ty::unit(),
            OracleKind::Sequential => product(&moves[..i]),
        };
        if s.obs != expected {
            return bad(&format!("slot {} observes {}, expected {}", s.id, s.obs, expected));
        }
    }
    if !all_argmax(game) {
        return bad("every decision must maximise");
    }
    Ok(moves)
}

fn all_argmax(g: &OpenGame) -> bool {
    match g.node() {
        Node::Decision(sel) => matches!(sel.rule(), Rule::Argmax(_)),
        Node::Lift { .. } | Node::Counit => true,
        Node::Seq { first, second, .. } => all_argmax(first) && all_argmax(second),
        Node::Tensor { left, right } => all_argmax(left) && all_argmax(right),
    }
}

/// Runs `trials` comparisons. Trial `t` draws its outcome table from seed
/// `seed + t`, so any trial can be replayed on its own.
pub fn compare_game(game: &OpenGame, kind: OracleKind, trials: usize, seed: u64) -> Result<CompareReport> {
    let moves = detect_shape(game, kind)?;
    let n = moves.len();
    let mut report = CompareReport {
        kind,
        trials,
        agreed: 0,
        profiles: game.profile_count(),
        first_disagreement: None,
    };
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
        let q = random_outcome(&moves, n, &mut rng)?;
        let closed = compose(game, &OpenGame::costate(&q))?;
        let ours = closed.best_response(&Context::trivial())?.materialize(u128::MAX)?;
        let classic = ClassicGame::maximising(moves.clone(), q.clone())?;
        let theirs = match kind {
            OracleKind::Simultaneous => classic.sim_relation()?,
            OracleKind::Sequential => classic.seq_relation()?,
        };
        if ours == theirs {
            report.agreed += 1;
        } else if report.first_disagreement.is_none() {
            let size = ours.size().min(theirs.size());
            let (sigma, dev) = (0..size)
                .flat_map(|i| (0..size).map(move |j| (i, j)))
                .find(|&(i, j)| ours.contains(i, j) != theirs.contains(i, j))
                .unwrap_or((0, 0));
            report.first_disagreement = Some(Disagreement {
                trial: t,
                q,
                sigma,
                dev,
                game: size > 0 && ours.contains(sigma, dev),
                oracle: size > 0 && theirs.contains(sigma, dev),
            });
        }
    }
    Ok(report)
}

/// Builds the standard game for `kind` over move sets of the given sizes
/// and compares it with the oracle.
pub fn compare_builder(kind: OracleKind, sizes: &[usize], trials: usize, seed: u64) -> Result<CompareReport> {
    let moves = move_sets(sizes)?;
    let game = match kind {
        OracleKind::Simultaneous => simultaneous_game(&moves)?,
        OracleKind::Sequential => sequential_game(&moves)?,
    };
    compare_game(&game, kind, trials, seed)
}

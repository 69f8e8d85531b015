//! Monolithic higher-order games, evaluated straight from their definitions.
//!
//! Nothing here touches the open-game algebra; only the finite substrate is
//! shared. This is the reference the compositional constructions are tested
//! against.

use crate::error::{CoreError, Result};
use crate::finite::{
    assemble, components, enumerate_functions, product, Relation, TableFun, Ty, Value, DEFAULT_ENUMERATION_CAP,
};

/// A selection function for player `i`, reading coordinate `i` (1-based) of
/// the outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicSelection {
    Argmax(usize),
    Fix(usize),
    AntiFix(usize),
}

/// The data shared by simultaneous and sequential games: move sets, an
/// outcome table `q : ∏ X_i → R` and one selection function per player.
#[derive(Clone, Debug)]
pub struct ClassicGame {
    moves: Vec<Ty>,
    q: TableFun,
    selections: Vec<ClassicSelection>,
}

impl ClassicGame {
    pub fn new(moves: Vec<Ty>, q: TableFun, selections: Vec<ClassicSelection>) -> Result<Self> {
        let expected = product(&moves);
        if q.dom() != &expected {
            return Err(CoreError::BoundaryMismatch {
                expected: expected.to_string(),
                found: q.dom().to_string(),
            });
        }
        if selections.len() != moves.len() {
            return Err(CoreError::Invalid(format!(
                "{} players but {} selection functions",
                moves.len(),
                selections.len()
            )));
        }
        Ok(ClassicGame { moves, q, selections })
    }

    /// All players maximise their own coordinate.
    pub fn maximising(moves: Vec<Ty>, q: TableFun) -> Result<Self> {
        let sels = (1..=moves.len()).map(ClassicSelection::Argmax).collect();
        ClassicGame::new(moves, q, sels)
    }

    pub fn players(&self) -> usize {
        self.moves.len()
    }

    pub fn moves(&self) -> &[Ty] {
        &self.moves
    }

    pub fn outcome(&self) -> &TableFun {
        &self.q
    }

    pub fn selections(&self) -> &[ClassicSelection] {
        &self.selections
    }

    fn outcome_of(&self, play: &[Value]) -> Result<Value> {
        let mut flat = Vec::new();
        for (m, t) in play.iter().zip(&self.moves) {
            flat.extend(components(m, t.arity())?);
        }
        self.q.apply(&assemble(flat))
    }

    /// `δ_i(k)` for `k : X_i → R` given as `(x_i, k(x_i))` pairs.
    fn select(&self, i: usize, k: &[(Value, Value)]) -> Result<Vec<Value>> {
        let arity = self.q.cod().arity();
        let coord = |v: &Value, c: usize| -> Result<Value> {
            let comps = components(v, arity)?;
            comps
                .get(c.wrapping_sub(1))
                .cloned()
                .ok_or_else(|| CoreError::Invalid(format!("outcome {v} has no coordinate {c}")))
        };
        match self.selections[i] {
            ClassicSelection::Argmax(c) => {
                let mut utils = Vec::with_capacity(k.len());
                for (_, r) in k {
                    let u = coord(r, c)?;
                    utils.push(u.as_num().ok_or_else(|| CoreError::NonNumericOutcome(u.to_string()))?);
                }
                let best = utils.iter().max().copied();
                Ok(k.iter()
                    .zip(&utils)
                    .filter(|(_, u)| Some(**u) == best)
                    .map(|((x, _), _)| x.clone())
                    .collect())
            }
            ClassicSelection::Fix(c) | ClassicSelection::AntiFix(c) => {
                let want = matches!(self.selections[i], ClassicSelection::Fix(_));
                let mut out = Vec::new();
                for (x, r) in k {
                    if (coord(r, c)? == *x) == want {
                        out.push(x.clone());
                    }
                }
                Ok(out)
            }
        }
    }

    /// `σ'` best responds to `σ` in the simultaneous game when every
    /// `σ'_i ∈ δ_i(λ x_i. q(σ[i ↦ x_i]))`.
    pub fn sim_best_response(&self, sigma: &[Value], dev: &[Value]) -> Result<bool> {
        self.check_moves(sigma)?;
        self.check_moves(dev)?;
        for i in 0..self.players() {
            let mut k = Vec::new();
            for xi in self.moves[i].elements()? {
                let mut play = sigma.to_vec();
                play[i] = xi.clone();
                k.push((xi, self.outcome_of(&play)?));
            }
            if !self.select(i, &k)?.contains(&dev[i]) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_moves(&self, m: &[Value]) -> Result<()> {
        if m.len() != self.players() {
            return Err(CoreError::IncompleteProfile(format!(
                "{} moves for {} players",
                m.len(),
                self.players()
            )));
        }
        for (v, t) in m.iter().zip(&self.moves) {
            if !t.contains(v) {
                return Err(CoreError::domain(v, t));
            }
        }
        Ok(())
    }

    /// Move profiles of the simultaneous game, player 1 most significant.
    pub fn sim_profiles(&self) -> Result<Vec<Vec<Value>>> {
        let mut rows: Vec<Vec<Value>> = vec![Vec::new()];
        for t in &self.moves {
            let els = t.elements()?;
            rows = rows
                .into_iter()
                .flat_map(|r| {
                    els.iter().map(move |e| {
                        let mut r = r.clone();
                        r.push(e.clone());
                        r
                    })
                })
                .collect();
        }
        Ok(rows)
    }

    pub fn sim_relation(&self) -> Result<Relation> {
        let ps = self.sim_profiles()?;
        let mut rows = Vec::with_capacity(ps.len());
        for s in &ps {
            rows.push(
                ps.iter()
                    .map(|t| self.sim_best_response(s, t))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(Relation::from_rows(ps.len(), rows))
    }

    pub fn sim_equilibria(&self) -> Result<Vec<Vec<Value>>> {
        let mut out = Vec::new();
        for s in self.sim_profiles()? {
            if self.sim_best_response(&s, &s)? {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// The observation type of player `i` (0-based): all earlier moves.
    pub fn history(&self, i: usize) -> Ty {
        product(&self.moves[..i])
    }

    fn check_strategies(&self, sigma: &[TableFun]) -> Result<()> {
        if sigma.len() != self.players() {
            return Err(CoreError::IncompleteProfile(format!(
                "{} strategies for {} players",
                sigma.len(),
                self.players()
            )));
        }
        for (i, s) in sigma.iter().enumerate() {
            if s.dom() != &self.history(i) || s.cod() != &self.moves[i] {
                return Err(CoreError::IncompleteProfile(format!(
                    "player {} needs a strategy {} -> {}",
                    i + 1,
                    self.history(i),
                    self.moves[i]
                )));
            }
        }
        Ok(())
    }

    fn history_value(&self, moves: &[Value]) -> Result<Value> {
        let mut flat = Vec::new();
        for (m, t) in moves.iter().zip(&self.moves) {
            flat.extend(components(m, t.arity())?);
        }
        Ok(assemble(flat))
    }

    /// Course-of-values play: each player applies their strategy to the
    /// moves made so far.
    pub fn seq_play(&self, sigma: &[TableFun]) -> Result<Vec<Value>> {
        self.check_strategies(sigma)?;
        let mut moves = Vec::with_capacity(self.players());
        for s in sigma {
            let h = self.history_value(&moves)?;
            moves.push(s.apply(&h)?);
        }
        Ok(moves)
    }

    /// `U_i(x_i, σ)`: player `i` (0-based) plays `x_i`, everyone else
    /// follows `σ`, later players reacting to the deviation.
    pub fn unilateral_deviation(&self, i: usize, xi: &Value, sigma: &[TableFun]) -> Result<Vec<Value>> {
        self.check_strategies(sigma)?;
        if !self.moves[i].contains(xi) {
            return Err(CoreError::domain(xi, &self.moves[i]));
        }
        let mut moves = Vec::with_capacity(self.players());
        for (j, s) in sigma.iter().enumerate() {
            if j == i {
                moves.push(xi.clone());
            } else {
                let h = self.history_value(&moves)?;
                moves.push(s.apply(&h)?);
            }
        }
        Ok(moves)
    }

    /// For every `i`: `(P(σ[i ↦ σ'_i]))_i ∈ δ_i(λ x_i. q(U_i(x_i, σ)))`.
    pub fn seq_best_response(&self, sigma: &[TableFun], dev: &[TableFun]) -> Result<bool> {
        self.check_strategies(sigma)?;
        self.check_strategies(dev)?;
        for i in 0..self.players() {
            let mut swapped = sigma.to_vec();
            swapped[i] = dev[i].clone();
            let chosen = self.seq_play(&swapped)?[i].clone();
            let mut k = Vec::new();
            for xi in self.moves[i].elements()? {
                let outcome = self.outcome_of(&self.unilateral_deviation(i, &xi, sigma)?)?;
                k.push((xi, outcome));
            }
            if !self.select(i, &k)?.contains(&chosen) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Strategy profiles of the sequential game: players ascending, each
    /// strategy table in odometer order.
    pub fn seq_profiles(&self) -> Result<Vec<Vec<TableFun>>> {
        let mut rows: Vec<Vec<TableFun>> = vec![Vec::new()];
        for i in 0..self.players() {
            let fs = enumerate_functions(&self.history(i), &self.moves[i], DEFAULT_ENUMERATION_CAP)?;
            let total = (rows.len() as u128).saturating_mul(fs.len() as u128);
            if total > DEFAULT_ENUMERATION_CAP {
                return Err(CoreError::cap("sequential profiles", total, DEFAULT_ENUMERATION_CAP));
            }
            rows = rows
                .into_iter()
                .flat_map(|r| {
                    fs.iter().map(move |f| {
                        let mut r = r.clone();
                        r.push(f.clone());
                        r
                    })
                })
                .collect();
        }
        Ok(rows)
    }

    pub fn seq_relation(&self) -> Result<Relation> {
        let ps = self.seq_profiles()?;
        let mut rows = Vec::with_capacity(ps.len());
        for s in &ps {
            rows.push(
                ps.iter()
                    .map(|t| self.seq_best_response(s, t))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(Relation::from_rows(ps.len(), rows))
    }

    pub fn seq_equilibria(&self) -> Result<Vec<Vec<TableFun>>> {
        let mut out = Vec::new();
        for s in self.seq_profiles()? {
            if self.seq_best_response(&s, &s)? {
                out.push(s);
            }
        }
        Ok(out)
    }
}

//! `G1 ∼ G2`: a bijection of strategy profiles commuting with play, coplay
//! and best response.

use crate::contexts::{contexts, ContextPlan};
use crate::error::{CoreError, Result};
use crate::finite::{Relation, Value};
use crate::game::{Context, OpenGame, StrategyProfile};

/// Largest profile space the bijection search accepts by default.
pub const DEFAULT_EQUIV_CAP: u128 = 8;

struct Tabulated {
    profiles: Vec<StrategyProfile>,
    /// Per profile: play and coplay outputs over the sampled inputs.
    behaviour: Vec<Vec<Value>>,
    /// One materialized relation per context.
    relations: Vec<Relation>,
}

fn tabulate(g: &OpenGame, xs: &[Value], rs: &[Value], ctxs: &[Context], cap: u128) -> Result<Tabulated> {
    let profiles = g.profile_space()?.enumerate(cap)?;
    let mut behaviour = Vec::with_capacity(profiles.len());
    for p in &profiles {
        let mut row = Vec::new();
        for x in xs {
            row.push(g.play(p, x)?);
            for r in rs {
                row.push(g.coplay(p, x, r)?);
            }
        }
        behaviour.push(row);
    }
    let relations = ctxs
        .iter()
        .map(|ctx| g.best_response(ctx)?.materialize(u128::MAX))
        .collect::<Result<Vec<_>>>()?;
    Ok(Tabulated {
        profiles,
        behaviour,
        relations,
    })
}

/// Searches for a bijection witnessing `g1 ∼ g2`, returning it as a map
/// from profile indices of `g1` to those of `g2`.
pub fn find_equivalence(g1: &OpenGame, g2: &OpenGame, plan: &ContextPlan, cap: u128) -> Result<Option<Vec<usize>>> {
    if g1.dom() != g2.dom() || g1.cod() != g2.cod() {
        return Err(CoreError::BoundaryMismatch {
            expected: format!("{} -> {}", g1.dom(), g1.cod()),
            found: format!("{} -> {}", g2.dom(), g2.cod()),
        });
    }
    let (n1, n2) = (g1.profile_count(), g2.profile_count());
    if n1.min(n2) > cap {
        return Err(CoreError::cap("profiles for bijection search", n1.min(n2), cap));
    }
    if n1 != n2 {
        return Ok(None);
    }
    // Both games are probed on the same inputs in the same order.
    let xs = g1.dom().fwd.sample(&plan.sampling.num_pool);
    let rs = g1.cod().bwd.sample(&plan.sampling.num_pool);
    let ctxs = contexts(g1.dom(), g1.cod(), plan)?;
    let t1 = tabulate(g1, &xs, &rs, &ctxs, cap)?;
    let t2 = tabulate(g2, &xs, &rs, &ctxs, cap)?;
    let n = t1.profiles.len();
    let signature = |t: &Tabulated, i: usize| {
        let counts: Vec<(usize, usize, bool)> = t
            .relations
            .iter()
            .map(|r| {
                let row = (0..n).filter(|&j| r.contains(i, j)).count();
                let col = (0..n).filter(|&j| r.contains(j, i)).count();
                (row, col, r.contains(i, i))
            })
            .collect();
        (t.behaviour[i].clone(), counts)
    };
    let sig1: Vec<_> = (0..n).map(|i| signature(&t1, i)).collect();
    let sig2: Vec<_> = (0..n).map(|i| signature(&t2, i)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(search(0, &t1, &t2, &sig1, &sig2, &mut map, &mut used).then_some(map))
}

fn search<S: PartialEq>(
    i: usize,
    t1: &Tabulated,
    t2: &Tabulated,
    sig1: &[S],
    sig2: &[S],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = map.len();
    if i == n {
        return true;
    }
    for j in 0..n {
        if used[j] || sig1[i] != sig2[j] {
            continue;
        }
        let consistent = t1.relations.iter().zip(&t2.relations).all(|(r1, r2)| {
            (0..i).all(|a| {
                let b = map[a];
                r1.contains(a, i) == r2.contains(b, j) && r1.contains(i, a) == r2.contains(j, b)
            }) && r1.contains(i, i) == r2.contains(j, j)
        });
        if !consistent {
            continue;
        }
        map[i] = j;
        used[j] = true;
        if search(i + 1, t1, t2, sig1, sig2, map, used) {
            return true;
        }
        used[j] = false;
        map[i] = usize::MAX;
    }
    false
}

pub fn equivalent(g1: &OpenGame, g2: &OpenGame) -> Result<bool> {
    Ok(find_equivalence(g1, g2, &ContextPlan::default(), DEFAULT_EQUIV_CAP)?.is_some())
}

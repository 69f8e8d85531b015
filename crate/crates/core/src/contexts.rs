//! Enumerating the contexts of a game, for checks that quantify over them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CoreError, Result};
use crate::finite::{Sampling, TableFun, Ty, Value};
use crate::game::Context;
use crate::lens::Boundary;

#[derive(Clone, Debug)]
pub struct ContextPlan {
    pub sampling: Sampling,
    /// Continuations are enumerated exhaustively up to this many.
    pub exhaustive_limit: u128,
    /// Otherwise this many are drawn at random.
    pub samples: usize,
    pub seed: u64,
}

impl Default for ContextPlan {
    fn default() -> Self {
        ContextPlan {
            sampling: Sampling::default(),
            exhaustive_limit: 10_000,
            samples: 256,
            seed: 0,
        }
    }
}

/// Continuation tables `Y → R` with values drawn from the sampled carrier
/// of `R`. Exhaustive in odometer order when small enough, seeded random
/// otherwise.
pub fn continuations(y: &Ty, r: &Ty, plan: &ContextPlan) -> Result<Vec<TableFun>> {
    let ys = y.elements()?;
    let rs = r.sample(&plan.sampling.num_pool);
    if rs.is_empty() && !ys.is_empty() {
        return Ok(Vec::new());
    }
    let count = (rs.len() as u128).checked_pow(ys.len() as u32).unwrap_or(u128::MAX);
    let table = |digits: &[usize]| TableFun::new(y.clone(), r.clone(), digits.iter().map(|&d| rs[d].clone()).collect());
    if count <= plan.exhaustive_limit {
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0usize; ys.len()];
        loop {
            out.push(table(&digits)?);
            let mut pos = digits.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < rs.len() {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    (0..plan.samples)
        .map(|_| {
            let digits: Vec<usize> = (0..ys.len()).map(|_| rng.gen_range(0..rs.len())).collect();
            table(&digits)
        })
        .collect()
}

/// Every sampled state paired with every continuation.
pub fn contexts(dom: &Boundary, cod: &Boundary, plan: &ContextPlan) -> Result<Vec<Context>> {
    if !cod.fwd.is_finite() {
        return Err(CoreError::NotFinite(cod.fwd.to_string()));
    }
    let states: Vec<Value> = dom.fwd.sample(&plan.sampling.num_pool);
    let ks = continuations(&cod.fwd, &cod.bwd, plan)?;
    let mut out = Vec::with_capacity(states.len() * ks.len());
    for x in &states {
        for k in &ks {
            out.push(Context::new(x.clone(), k.clone()));
        }
    }
    Ok(out)
}

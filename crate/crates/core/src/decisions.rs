//! Atomic decisions and the standard games assembled from them.

use crate::error::Result;
use crate::finite::{product, Ty};
use crate::game::{compose, tensor, OpenGame};
use crate::lens::Boundary;
use crate::selection::SelectionFunction;

/// `D_δ : (X, 1) → (Y, R)` where `R` is the outcome type `δ` reads.
pub fn decision(x: &Ty, y: &Ty, sel: SelectionFunction) -> Result<OpenGame> {
    let id = sel.name().to_string();
    OpenGame::atom_decision(&id, x, y, sel)
}

/// As [`decision`], with an explicit slot label.
pub fn decision_named(label: &str, x: &Ty, y: &Ty, sel: SelectionFunction) -> Result<OpenGame> {
    OpenGame::atom_decision(label, x, y, sel)
}

/// `D^Δ_{X,Y} = (id_(X,1) ⊗ D_{X,Y}) ∘ (Δ_X, 1) : (X, 1) → (X × Y, R)`.
/// The player sees `x` and the outcome continuation sees both `x` and the
/// choice.
pub fn decision_with_passthrough(x: &Ty, y: &Ty, sel: SelectionFunction) -> Result<OpenGame> {
    let d = decision(x, y, sel)?;
    let side = tensor(&OpenGame::identity(&Boundary::new(x.clone(), Ty::unit())), &d);
    compose(&OpenGame::copy(x), &side)
}

/// `G_n : (1, 1) → (X_1 × … × X_n, R^n)`, built by `G_0 = id_(1,1)` and
/// `G_{i+1} = (id_(1,R^i) ⊗ D^Δ_{X_1…X_i, X_{i+1}}) ∘ G_i`.
///
/// Player `i` observes every earlier move; utility coordinate `i` belongs
/// to player `i`.
pub fn sequential_game(moves: &[Ty]) -> Result<OpenGame> {
    let mut g = OpenGame::identity(&Boundary::unit());
    for (i, xi) in moves.iter().enumerate() {
        let history = product(&moves[..i]);
        let label = format!("p{}", i + 1);
        let step = {
            let d = decision_named(&label, &history, xi, SelectionFunction::argmax())?;
            let side = tensor(&OpenGame::identity(&Boundary::new(history.clone(), Ty::unit())), &d);
            compose(&OpenGame::copy(&history), &side)?
        };
        let carried = OpenGame::identity(&Boundary::new(Ty::unit(), Ty::num().power(i)));
        g = compose(&g, &tensor(&carried, &step))?;
    }
    Ok(g)
}

/// `D_{1,X_1} ⊗ … ⊗ D_{1,X_n} : (1, 1) → (X_1 × … × X_n, R^n)`, all players
/// maximising.
pub fn simultaneous_game(moves: &[Ty]) -> Result<OpenGame> {
    let mut g = OpenGame::identity(&Boundary::unit());
    for (i, xi) in moves.iter().enumerate() {
        let d = decision_named(&format!("p{}", i + 1), &Ty::unit(), xi, SelectionFunction::argmax())?;
        g = if i == 0 { d } else { tensor(&g, &d) };
    }
    Ok(g)
}

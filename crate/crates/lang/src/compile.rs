use std::collections::HashMap;
use std::sync::Arc;

use opengame::{compose, decision_named, tensor, OpenGame};

use crate::check::{typecheck, Checked, NamedContext, Typed, TypedKind};
use crate::diag::{Diagnostic, Diagnostics};
use crate::parser::parse;

#[derive(Clone, Debug)]
pub struct CompiledGame {
    pub name: String,
    pub typed: Arc<Typed>,
    pub game: OpenGame,
}

#[derive(Clone, Debug)]
pub struct Program {
    pub checked: Checked,
    /// In source order.
    pub games: Vec<CompiledGame>,
}

impl Program {
    pub fn game(&self, name: &str) -> Option<&CompiledGame> {
        self.games.iter().find(|g| g.name == name)
    }

    pub fn context(&self, name: &str) -> Option<&NamedContext> {
        self.checked.contexts.iter().find(|c| c.name == name)
    }

    /// Contexts declared for `game`, in source order.
    pub fn contexts_for<'a>(&'a self, game: &'a str) -> impl Iterator<Item = &'a NamedContext> + 'a {
        self.checked.contexts.iter().filter(move |c| c.game == game)
    }
}

/// Parses, checks and compiles a source file.
pub fn build(src: &str) -> Result<Program, Diagnostics> {
    let unit = parse(src)?;
    compile(typecheck(&unit, src)?)
}

pub fn compile(checked: Checked) -> Result<Program, Diagnostics> {
    let mut cache = HashMap::new();
    let mut games = Vec::new();
    let mut diags = Vec::new();
    for g in &checked.games {
        match compile_cached(&g.typed, &mut cache) {
            Ok(game) => games.push(CompiledGame {
                name: g.name.clone(),
                typed: g.typed.clone(),
                game,
            }),
            Err(d) => diags.push(d),
        }
    }
    if diags.is_empty() {
        Ok(Program { checked, games })
    } else {
        Err(Diagnostics(diags))
    }
}

/// Folds a checked expression into core constructors.
pub fn compile_expr(t: &Typed) -> Result<OpenGame, Diagnostic> {
    compile_cached(t, &mut HashMap::new())
}

fn compile_cached(t: &Typed, cache: &mut HashMap<String, OpenGame>) -> Result<OpenGame, Diagnostic> {
    let err = |e: opengame::CoreError| Diagnostic::error(t.span, e.to_string());
    let g = match &t.kind {
        TypedKind::Decision { label, obs, moves, sel } => {
            decision_named(label, obs, moves, sel.clone()).map_err(err)?
        }
        TypedKind::Lift { play, coplay, .. } => OpenGame::lift(play.clone(), coplay.clone()),
        TypedKind::Counit(x) => OpenGame::counit(x),
        TypedKind::Copy(x) => OpenGame::copy(x),
        TypedKind::Delete(x) => OpenGame::delete(x),
        TypedKind::Swap(a, b) => OpenGame::swap(a, b),
        TypedKind::Id(b) => OpenGame::identity(b),
        TypedKind::Seq { first, second, whisker } => {
            let g1 = compile_cached(first, cache)?;
            let mut g2 = compile_cached(second, cache)?;
            if let Some(w) = whisker {
                g2 = tensor(&g2, &OpenGame::identity(w));
            }
            compose(&g1, &g2).map_err(err)?
        }
        TypedKind::Tensor(a, b) => tensor(&compile_cached(a, cache)?, &compile_cached(b, cache)?),
        TypedKind::Ref { name, body } => match cache.get(name) {
            Some(g) => g.clone(),
            None => {
                let g = compile_cached(body, cache)?;
                cache.insert(name.clone(), g.clone());
                g
            }
        },
    };
    if g.dom() != &t.dom || g.cod() != &t.cod {
        return Err(Diagnostic::mismatch(
            t.span,
            "compiled boundary differs from the checked one",
            format!("{} -> {}", t.dom, t.cod),
            format!("{} -> {}", g.dom(), g.cod()),
        ));
    }
    Ok(g)
}

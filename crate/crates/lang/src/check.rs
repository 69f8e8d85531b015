//! Name resolution and boundary checking.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use opengame::finite::{assemble, Base};
use opengame::{Boundary, Context, FiniteSet, Morphism, Rational, SelectionFunction, TableFun, Ty, Value};

use crate::ast::*;
use crate::diag::{Diagnostic, Diagnostics, Span};

/// Resolved non-game declarations.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub sets: BTreeMap<String, FiniteSet>,
    pub outcomes: BTreeMap<String, Ty>,
    pub funs: BTreeMap<String, TableFun>,
    pub selections: BTreeMap<String, SelectionFunction>,
}

/// A game expression annotated with its boundaries.
#[derive(Clone, Debug)]
pub struct Typed {
    pub kind: TypedKind,
    pub span: Span,
    pub dom: Boundary,
    pub cod: Boundary,
}

#[derive(Clone, Debug)]
pub enum TypedKind {
    Decision {
        label: String,
        obs: Ty,
        moves: Ty,
        sel: SelectionFunction,
    },
    Lift {
        play: Morphism,
        coplay: Morphism,
        play_name: String,
        coplay_name: Option<String>,
    },
    Counit(Ty),
    Copy(Ty),
    Delete(Ty),
    Swap(Ty, Ty),
    Id(Boundary),
    /// `whisker` is the part of the left codomain passed through beside
    /// the right game.
    Seq {
        first: Box<Typed>,
        second: Box<Typed>,
        whisker: Option<Boundary>,
    },
    Tensor(Box<Typed>, Box<Typed>),
    Ref {
        name: String,
        body: Arc<Typed>,
    },
}

#[derive(Clone, Debug)]
pub struct CheckedGame {
    pub name: String,
    pub span: Span,
    pub typed: Arc<Typed>,
}

#[derive(Clone, Debug)]
pub struct NamedContext {
    pub name: String,
    pub game: String,
    pub span: Span,
    pub context: Context,
}

#[derive(Clone, Debug)]
pub struct Checked {
    pub env: Env,
    /// In source order.
    pub games: Vec<CheckedGame>,
    pub contexts: Vec<NamedContext>,
}

impl Checked {
    pub fn game(&self, name: &str) -> Option<&CheckedGame> {
        self.games.iter().find(|g| g.name == name)
    }
}

/// Resolves names and assigns a boundary to every game expression.
/// `src` is the text `unit` was parsed from; it is used for slot labels.
pub fn typecheck(unit: &SourceUnit, src: &str) -> Result<Checked, Diagnostics> {
    let mut cx = Checker {
        unit,
        src,
        env: Env::default(),
        diags: Vec::new(),
        outcome_state: HashMap::new(),
        selection_state: HashMap::new(),
        game_state: HashMap::new(),
    };
    cx.check_names();
    for d in &unit.decls {
        if let DeclKind::Set(els) = &d.kind {
            if cx.env.sets.contains_key(&d.name.node) {
                continue;
            }
            match FiniteSet::new(&d.name.node, els.iter().map(|e| e.node.as_str())) {
                Ok(s) => {
                    cx.env.sets.insert(d.name.node.clone(), s);
                }
                Err(e) => cx.diags.push(Diagnostic::error(d.span, e.to_string())),
            }
        }
    }
    for d in &unit.decls {
        if matches!(d.kind, DeclKind::Outcome(_)) {
            let _ = cx.outcome(&d.name.node, d.name.span);
        }
    }
    for d in &unit.decls {
        if let DeclKind::Fun { dom, cod, rows } = &d.kind {
            if cx.env.funs.contains_key(&d.name.node) {
                continue;
            }
            match cx.table(dom, cod, rows, d.span) {
                Ok(t) => {
                    cx.env.funs.insert(d.name.node.clone(), t);
                }
                Err(diag) => cx.diags.push(diag),
            }
        }
    }
    for d in &unit.decls {
        if matches!(d.kind, DeclKind::Selection(_)) {
            let _ = cx.selection(&d.name.node, d.name.span);
        }
    }
    let mut games = Vec::new();
    for d in &unit.decls {
        if matches!(d.kind, DeclKind::Game(_)) {
            if let Some(typed) = cx.game(&d.name.node, d.name.span) {
                games.push(CheckedGame {
                    name: d.name.node.clone(),
                    span: d.span,
                    typed,
                });
            }
        }
    }
    let mut contexts = Vec::new();
    for d in &unit.decls {
        if let DeclKind::Context { game, state, rows } = &d.kind {
            let Some(g) = games.iter().find(|g| g.name == game.node) else {
                if cx.unit.find("game", &game.node).is_none() {
                    cx.diags
                        .push(Diagnostic::error(game.span, format!("unknown game `{}`", game.node)));
                }
                continue;
            };
            match cx.context(&g.typed, state.as_ref(), rows, d.span) {
                Ok(c) => contexts.push(NamedContext {
                    name: d.name.node.clone(),
                    game: game.node.clone(),
                    span: d.span,
                    context: c,
                }),
                Err(diag) => cx.diags.push(diag),
            }
        }
    }
    if cx.diags.is_empty() {
        Ok(Checked {
            env: cx.env,
            games,
            contexts,
        })
    } else {
        cx.diags.sort_by_key(|d| d.span.start);
        Err(Diagnostics(cx.diags))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Visit {
    Active,
    Failed,
}

struct Checker<'a> {
    unit: &'a SourceUnit,
    src: &'a str,
    env: Env,
    diags: Vec<Diagnostic>,
    outcome_state: HashMap<String, Visit>,
    selection_state: HashMap<String, Visit>,
    game_state: HashMap<String, Result<Arc<Typed>, Visit>>,
}

type CResult<T> = Result<T, Diagnostic>;

fn core(span: Span) -> impl Fn(opengame::CoreError) -> Diagnostic {
    move |e| Diagnostic::error(span, e.to_string())
}

impl<'a> Checker<'a> {
    fn check_names(&mut self) {
        let mut seen: HashMap<(&str, &str), Span> = HashMap::new();
        for d in &self.unit.decls {
            let kind = match d.kind.keyword() {
                "set" | "outcome" => "type",
                k => k,
            };
            if let Some(first) = seen.insert((kind, &d.name.node), d.name.span) {
                let (line, col) = first.line_col(self.src);
                self.diags.push(Diagnostic::error(
                    d.name.span,
                    format!("`{}` is already declared at {line}:{col}", d.name.node),
                ));
            }
        }
    }

    fn outcome(&mut self, name: &str, span: Span) -> CResult<Ty> {
        if let Some(t) = self.env.outcomes.get(name) {
            return Ok(t.clone());
        }
        match self.outcome_state.get(name) {
            Some(Visit::Active) => {
                let d = Diagnostic::error(span, format!("outcome `{name}` is defined in terms of itself"));
                return Err(d);
            }
            Some(Visit::Failed) => return Err(Diagnostic::error(span, format!("outcome `{name}` is ill-formed"))),
            None => {}
        }
        let Some(DeclKind::Outcome(t)) = self.unit.find("outcome", name).map(|d| &d.kind) else {
            return Err(Diagnostic::error(span, format!("unknown type `{name}`")));
        };
        self.outcome_state.insert(name.into(), Visit::Active);
        match self.ty(t) {
            Ok(ty) => {
                self.outcome_state.remove(name);
                self.env.outcomes.insert(name.into(), ty.clone());
                Ok(ty)
            }
            Err(d) => {
                self.outcome_state.insert(name.into(), Visit::Failed);
                if !self.diags.contains(&d) {
                    self.diags.push(d.clone());
                }
                Err(d)
            }
        }
    }

    fn ty(&mut self, t: &TyExpr) -> CResult<Ty> {
        match &t.node {
            TyKind::Unit => Ok(Ty::unit()),
            TyKind::Num => Ok(Ty::num()),
            TyKind::Named(n) => match self.env.sets.get(n) {
                Some(s) => Ok(Ty::set(s)),
                None => self.outcome(n, t.span),
            },
            TyKind::Product(parts) => {
                let mut out = Ty::unit();
                for p in parts {
                    out = out.times(&self.ty(p)?);
                }
                Ok(out)
            }
            TyKind::Power(b, n) => Ok(self.ty(b)?.power(*n as usize)),
        }
    }

    fn table(&mut self, dom: &TyExpr, cod: &TyExpr, rows: &[Row], span: Span) -> CResult<TableFun> {
        let (dom, cod) = (self.ty(dom)?, self.ty(cod)?);
        table_from_rows(&dom, &cod, rows, span)
    }

    fn selection(&mut self, name: &str, span: Span) -> CResult<SelectionFunction> {
        if let Some(s) = self.env.selections.get(name) {
            return Ok(s.clone());
        }
        if let Some(v) = self.selection_state.get(name) {
            return Err(Diagnostic::error(
                span,
                match v {
                    Visit::Active => format!("selection `{name}` is defined in terms of itself"),
                    Visit::Failed => format!("selection `{name}` is ill-formed"),
                },
            ));
        }
        let Some(decl) = self.unit.find("selection", name) else {
            return Err(Diagnostic::error(span, format!("unknown selection function `{name}`")));
        };
        let DeclKind::Selection(sd) = &decl.kind else {
            unreachable!()
        };
        self.selection_state.insert(name.into(), Visit::Active);
        let res = match sd {
            SelDecl::Alias(e) => self.sel_expr(e).map(|s| s.renamed(name)),
            SelDecl::Table { moves, outcome, rows } => self.selection_table(name, moves, outcome, rows, decl.span),
        };
        match res {
            Ok(s) => {
                self.selection_state.remove(name);
                self.env.selections.insert(name.into(), s.clone());
                Ok(s)
            }
            Err(d) => {
                self.selection_state.insert(name.into(), Visit::Failed);
                if !self.diags.contains(&d) {
                    self.diags.push(d.clone());
                }
                Err(d)
            }
        }
    }

    fn selection_table(
        &mut self,
        name: &str,
        moves: &TyExpr,
        outcome: &TyExpr,
        rows: &[(Vec<Row>, Vec<Lit>)],
        span: Span,
    ) -> CResult<SelectionFunction> {
        let (y, r) = (self.ty(moves)?, self.ty(outcome)?);
        let mut entries = Vec::new();
        for (k, chosen) in rows {
            let kspan = k.first().map_or(span, |(a, _)| a.span);
            let table = table_from_rows(&y, &r, k, kspan)?;
            let picks = chosen.iter().map(|l| lit_value(l, &y)).collect::<CResult<Vec<_>>>()?;
            entries.push((table, picks));
        }
        SelectionFunction::from_table(name, &y, &r, entries).map_err(core(span))
    }

    fn sel_expr(&mut self, e: &SelExpr) -> CResult<SelectionFunction> {
        Ok(match e {
            SelExpr::Argmax(None) => SelectionFunction::argmax(),
            SelExpr::Argmax(Some(i)) => SelectionFunction::argmax_component(*i),
            SelExpr::Fix => SelectionFunction::fix(),
            SelExpr::AntiFix => SelectionFunction::antifix(),
            SelExpr::Named(n) => self.selection(&n.node, n.span)?,
        })
    }

    fn game(&mut self, name: &str, span: Span) -> Option<Arc<Typed>> {
        match self.game_state.get(name) {
            Some(Ok(t)) => return Some(t.clone()),
            Some(Err(Visit::Active)) => {
                self.diags
                    .push(Diagnostic::error(span, format!("game `{name}` refers to itself")));
                return None;
            }
            Some(Err(Visit::Failed)) => return None,
            None => {}
        }
        let Some(DeclKind::Game(e)) = self.unit.find("game", name).map(|d| &d.kind) else {
            self.diags
                .push(Diagnostic::error(span, format!("unknown game `{name}`")));
            return None;
        };
        self.game_state.insert(name.into(), Err(Visit::Active));
        match self.expr(name, e) {
            Ok(t) => {
                let t = Arc::new(t);
                self.game_state.insert(name.into(), Ok(t.clone()));
                Some(t)
            }
            Err(d) => {
                self.game_state.insert(name.into(), Err(Visit::Failed));
                if let Some(d) = d {
                    self.diags.push(d);
                }
                None
            }
        }
    }

    /// `Err(None)` means the failure was already reported.
    fn expr(&mut self, game: &str, e: &Expr) -> Result<Typed, Option<Diagnostic>> {
        let b = Boundary::new;
        let unit = Ty::unit;
        let (kind, dom, cod) = match &e.node {
            ExprKind::Decision { obs, moves, sel } => {
                let obs = self.ty(obs)?;
                let moves_ty = self.ty(moves)?;
                for (t, what) in [(&obs, "observation"), (&moves_ty, "move")] {
                    if t.cardinality().is_none() {
                        return Err(Some(Diagnostic::error(
                            e.span,
                            format!("a decision's {what} type must be finite, found {t}"),
                        )));
                    }
                }
                let sel = self.sel_expr(sel)?;
                let r = sel.outcome_for(&moves_ty);
                let (line, col) = e.span.line_col(self.src);
                let label = format!("{game}@{line}:{col}");
                let dom = b(obs.clone(), unit());
                let cod = b(moves_ty.clone(), r);
                (
                    TypedKind::Decision {
                        label,
                        obs,
                        moves: moves_ty,
                        sel,
                    },
                    dom,
                    cod,
                )
            }
            ExprKind::Lift { play, coplay } => {
                let (play, play_name) = self.morph(play)?;
                let (coplay, coplay_name) = match coplay {
                    Some(m) => {
                        let (m, n) = self.morph(m)?;
                        (m, Some(n))
                    }
                    None => (Morphism::Identity(unit()), None),
                };
                let dom = b(play.dom(), coplay.cod());
                let cod = b(play.cod(), coplay.dom());
                (
                    TypedKind::Lift {
                        play,
                        coplay,
                        play_name,
                        coplay_name,
                    },
                    dom,
                    cod,
                )
            }
            ExprKind::Counit(t) => {
                let t = self.ty(t)?;
                (TypedKind::Counit(t.clone()), b(t.clone(), t), Boundary::unit())
            }
            ExprKind::Copy(t) => {
                let t = self.ty(t)?;
                (TypedKind::Copy(t.clone()), b(t.clone(), unit()), b(t.times(&t), unit()))
            }
            ExprKind::Delete(t) => {
                let t = self.ty(t)?;
                (TypedKind::Delete(t.clone()), b(t, unit()), Boundary::unit())
            }
            ExprKind::Swap(x, y) => {
                let (x, y) = (self.ty(x)?, self.ty(y)?);
                let dom = b(x.times(&y), unit());
                let cod = b(y.times(&x), unit());
                (TypedKind::Swap(x, y), dom, cod)
            }
            ExprKind::Id(f, s) => {
                let f = self.ty(f)?;
                let s = match s {
                    Some(s) => self.ty(s)?,
                    None => unit(),
                };
                let bd = b(f, s);
                (TypedKind::Id(bd.clone()), bd.clone(), bd)
            }
            ExprKind::Seq(l, r) => {
                let first = self.expr(game, l)?;
                let second = self.expr(game, r)?;
                let whisker = if first.cod == second.dom {
                    None
                } else if let Some(rest) = prefix_rest(&first.cod, &second.dom) {
                    Some(rest)
                } else {
                    return Err(Some(Diagnostic::mismatch(
                        r.span,
                        "sequential composition: the right game's domain does not match the left game's codomain",
                        &first.cod,
                        &second.dom,
                    )));
                };
                let dom = first.dom.clone();
                let cod = match &whisker {
                    Some(w) => second.cod.tensor(w),
                    None => second.cod.clone(),
                };
                let kind = TypedKind::Seq {
                    first: Box::new(first),
                    second: Box::new(second),
                    whisker,
                };
                (kind, dom, cod)
            }
            ExprKind::Tensor(l, r) => {
                let a = self.expr(game, l)?;
                let c = self.expr(game, r)?;
                let dom = a.dom.tensor(&c.dom);
                let cod = a.cod.tensor(&c.cod);
                (TypedKind::Tensor(Box::new(a), Box::new(c)), dom, cod)
            }
            ExprKind::Ref(name) => {
                let body = self.game(name, e.span).ok_or(None)?;
                let (dom, cod) = (body.dom.clone(), body.cod.clone());
                (
                    TypedKind::Ref {
                        name: name.clone(),
                        body,
                    },
                    dom,
                    cod,
                )
            }
        };
        Ok(Typed {
            kind,
            span: e.span,
            dom,
            cod,
        })
    }

    fn morph(&mut self, m: &MorphExpr) -> CResult<(Morphism, String)> {
        match m {
            MorphExpr::Named(n) => match self.env.funs.get(&n.node) {
                Some(t) => Ok((Morphism::Table(t.clone()), n.node.clone())),
                None => {
                    let msg = if self.unit.find("fun", &n.node).is_some() {
                        format!("function `{}` is ill-formed", n.node)
                    } else {
                        format!("unknown function `{}`", n.node)
                    };
                    Err(Diagnostic::error(n.span, msg))
                }
            },
            MorphExpr::Id(t) => {
                let ty = self.ty(t)?;
                let name = format!("id {ty}");
                Ok((Morphism::Identity(ty), name))
            }
        }
    }

    fn context(&mut self, g: &Typed, state: Option<&Lit>, rows: &[Row], span: Span) -> CResult<Context> {
        let x = match state {
            Some(l) => lit_value(l, &g.dom.fwd)?,
            None if g.dom.fwd.is_unit() => Value::unit(),
            None => {
                return Err(Diagnostic::error(
                    span,
                    format!("context needs a `state` of type {}", g.dom.fwd),
                ))
            }
        };
        let k = table_from_rows(&g.cod.fwd, &g.cod.bwd, rows, span)?;
        Ok(Context::new(x, k))
    }
}

/// When `inner` is a prefix of `outer` in both directions, the remaining
/// factors.
fn prefix_rest(outer: &Boundary, inner: &Boundary) -> Option<Boundary> {
    let cut = |o: &Ty, i: &Ty| {
        let (of, inf) = (o.factors(), i.factors());
        (inf.len() <= of.len() && of[..inf.len()] == *inf).then(|| o.slice(inf.len(), of.len()))
    };
    Some(Boundary::new(
        cut(&outer.fwd, &inner.fwd)?,
        cut(&outer.bwd, &inner.bwd)?,
    ))
}

fn table_from_rows(dom: &Ty, cod: &Ty, rows: &[Row], span: Span) -> CResult<TableFun> {
    let pairs = rows
        .iter()
        .map(|(x, y)| Ok((lit_value(x, dom)?, lit_value(y, cod)?)))
        .collect::<CResult<Vec<_>>>()?;
    TableFun::from_pairs(dom.clone(), cod.clone(), pairs).map_err(core(span))
}

fn flatten<'l>(l: &'l Lit, out: &mut Vec<&'l Lit>) {
    match &l.node {
        LitKind::Tuple(items) => items.iter().for_each(|i| flatten(i, out)),
        LitKind::Unit => {}
        _ => out.push(l),
    }
}

/// Reads a literal as a value of type `t`. Nested tuples are flattened to
/// match the factors of `t`.
pub fn lit_value(l: &Lit, t: &Ty) -> CResult<Value> {
    let mut comps = Vec::new();
    flatten(l, &mut comps);
    let factors = t.factors();
    if comps.len() != factors.len() {
        return Err(Diagnostic::mismatch(
            l.span,
            format!("value has {} components, its type has {}", comps.len(), factors.len()),
            t,
            crate::pretty::print_lit(l),
        ));
    }
    let vals = comps
        .iter()
        .zip(factors)
        .map(|(c, f)| base_value(c, f))
        .collect::<CResult<Vec<_>>>()?;
    Ok(assemble(vals))
}

fn base_value(l: &Lit, b: &Base) -> CResult<Value> {
    match (b, &l.node) {
        (Base::Num, LitKind::Num(n, d)) => {
            if *d == 0 {
                return Err(Diagnostic::error(l.span, "zero denominator"));
            }
            Ok(Value::Num(Rational::new(*n, *d)))
        }
        (Base::Set(s), LitKind::Name(label)) => s
            .element(label)
            .ok_or_else(|| Diagnostic::error(l.span, format!("`{label}` is not an element of {}", s.name()))),
        (Base::Set(s), LitKind::Num(n, 1)) => s
            .element(&n.to_string())
            .ok_or_else(|| Diagnostic::error(l.span, format!("`{n}` is not an element of {}", s.name()))),
        (Base::Num, _) => Err(Diagnostic::error(l.span, "expected a number")),
        (Base::Set(s), _) => Err(Diagnostic::error(
            l.span,
            format!("expected an element of {}", s.name()),
        )),
    }
}

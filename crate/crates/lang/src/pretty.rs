use std::fmt::Write;

use crate::ast::*;

pub fn print_unit(u: &SourceUnit) -> String {
    let mut out = String::new();
    for d in &u.decls {
        out.push_str(&print_decl(d));
        out.push('\n');
    }
    out
}

fn rows(rs: &[Row], open: &str, close: &str) -> String {
    let body: Vec<String> = rs
        .iter()
        .map(|(x, y)| format!("{} -> {}", print_lit(x), print_lit(y)))
        .collect();
    format!("{open}{}{close}", body.join("; "))
}

pub fn print_decl(d: &Decl) -> String {
    let name = &d.name.node;
    match &d.kind {
        DeclKind::Set(els) => {
            let els: Vec<&str> = els.iter().map(|e| e.node.as_str()).collect();
            format!("set {name} = {{{}}}", els.join(", "))
        }
        DeclKind::Outcome(t) => format!("outcome {name} = {}", print_ty(t)),
        DeclKind::Fun { dom, cod, rows: rs } => {
            format!(
                "fun {name} : {} -> {} {}",
                print_ty(dom),
                print_ty(cod),
                rows(rs, "{ ", " }")
            )
        }
        DeclKind::Selection(SelDecl::Alias(s)) => format!("selection {name} = {}", print_sel(s)),
        DeclKind::Selection(SelDecl::Table {
            moves,
            outcome,
            rows: rs,
        }) => {
            let mut out = format!("selection {name} : {} -> {} {{", print_ty(moves), print_ty(outcome));
            let body: Vec<String> = rs
                .iter()
                .map(|(k, chosen)| {
                    let c: Vec<String> = chosen.iter().map(print_lit).collect();
                    format!("{} => {{{}}}", rows(k, "[", "]"), c.join(", "))
                })
                .collect();
            for (i, b) in body.iter().enumerate() {
                let sep = if i + 1 < body.len() { ";" } else { "" };
                let _ = write!(out, "\n  {b}{sep}");
            }
            out.push_str("\n}");
            out
        }
        DeclKind::Game(e) => format!("game {name} = {}", print_expr(e)),
        DeclKind::Context { game, state, rows: rs } => {
            let mut out = format!("context {name} for {} {{\n", game.node);
            if let Some(s) = state {
                let _ = writeln!(out, "  state: {}", print_lit(s));
            }
            let _ = write!(out, "  continuation: {}\n}}", rows(rs, "{ ", " }"));
            out
        }
    }
}

pub fn print_sel(s: &SelExpr) -> String {
    match s {
        SelExpr::Argmax(None) => "argmax".into(),
        SelExpr::Argmax(Some(i)) => format!("argmax[{i}]"),
        SelExpr::Fix => "fix".into(),
        SelExpr::AntiFix => "antifix".into(),
        SelExpr::Named(n) => n.node.clone(),
    }
}

pub fn print_ty(t: &TyExpr) -> String {
    match &t.node {
        TyKind::Product(parts) => parts.iter().map(print_ty_factor).collect::<Vec<_>>().join("*"),
        _ => print_ty_factor(t),
    }
}

fn print_ty_factor(t: &TyExpr) -> String {
    match &t.node {
        TyKind::Unit => "1".into(),
        TyKind::Num => "R".into(),
        TyKind::Named(n) => n.clone(),
        TyKind::Product(_) => format!("({})", print_ty(t)),
        TyKind::Power(b, n) => format!("{}^{n}", print_ty_factor(b)),
    }
}

pub fn print_lit(l: &Lit) -> String {
    match &l.node {
        LitKind::Unit => "*".into(),
        LitKind::Name(n) => n.clone(),
        LitKind::Num(n, 1) => n.to_string(),
        LitKind::Num(n, d) => format!("{n}/{d}"),
        LitKind::Tuple(items) => format!("({})", items.iter().map(print_lit).collect::<Vec<_>>().join(", ")),
    }
}

fn print_morph(m: &MorphExpr) -> String {
    match m {
        MorphExpr::Named(n) => n.node.clone(),
        MorphExpr::Id(t) => format!("id {}", print_ty_factor(t)),
    }
}

pub fn print_expr(e: &Expr) -> String {
    expr_at(e, 0)
}

/// Level 0 admits `;`, level 1 admits `||`, level 2 only atoms.
fn expr_at(e: &Expr, level: u8) -> String {
    let (text, own) = match &e.node {
        ExprKind::Seq(a, b) => (format!("{} ; {}", expr_at(a, 0), expr_at(b, 1)), 0),
        ExprKind::Tensor(a, b) => (format!("{} || {}", expr_at(a, 1), expr_at(b, 2)), 1),
        ExprKind::Decision { obs, moves, sel } => (
            format!(
                "decision {} -> {} with {}",
                print_ty(obs),
                print_ty(moves),
                print_sel(sel)
            ),
            2,
        ),
        ExprKind::Lift { play, coplay } => match coplay {
            Some(g) => (format!("lift {} / {}", print_morph(play), print_morph(g)), 2),
            None => (format!("lift {}", print_morph(play)), 2),
        },
        ExprKind::Counit(t) => (format!("counit {}", print_ty(t)), 2),
        ExprKind::Copy(t) => (format!("copy {}", print_ty(t)), 2),
        ExprKind::Delete(t) => (format!("delete {}", print_ty(t)), 2),
        ExprKind::Swap(a, b) => (format!("swap {} {}", print_ty_factor(a), print_ty_factor(b)), 2),
        ExprKind::Id(f, None) => (format!("id {}", print_ty(f)), 2),
        ExprKind::Id(f, Some(b)) => (format!("id {} / {}", print_ty(f), print_ty(b)), 2),
        ExprKind::Ref(n) => (n.clone(), 2),
    };
    if own < level {
        format!("({text})")
    } else {
        text
    }
}

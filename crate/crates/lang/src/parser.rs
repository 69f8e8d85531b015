use crate::ast::*;
use crate::diag::{Diagnostic, Diagnostics, Span};
use crate::lexer::{lex, Tok, Token};

const DECL_KEYWORDS: &[&str] = &["set", "outcome", "fun", "selection", "game", "context"];

/// Parses a whole source file. Errors in one declaration do not stop the
/// others from being parsed, so several diagnostics may come back.
pub fn parse(src: &str) -> Result<SourceUnit, Diagnostics> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let mut unit = SourceUnit::default();
    let mut diags = Vec::new();
    while !p.at(&Tok::Eof) {
        match p.decl() {
            Ok(d) => unit.decls.push(d),
            Err(d) => {
                diags.push(d);
                p.recover();
            }
        }
    }
    if diags.is_empty() {
        Ok(unit)
    } else {
        Err(Diagnostics(diags))
    }
}

/// Parses a single game expression.
pub fn parse_expr(src: &str) -> Result<Expr, Diagnostics> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    p.expect(&Tok::Eof, "end of expression")?;
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn at(&self, t: &Tok) -> bool {
        &self.peek().tok == t
    }

    fn at_kw(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn unexpected(&self, what: &str) -> Diagnostic {
        let t = self.peek();
        if t.tok == Tok::Eof && self.pos > 0 {
            // Point at the last real token, e.g. a dangling `;`.
            let prev = &self.toks[self.pos - 1];
            return Diagnostic::error(
                prev.span,
                format!("expected {what} after {}, found end of input", prev.tok.describe()),
            );
        }
        Diagnostic::error(t.span, format!("expected {what}, found {}", t.tok.describe()))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.at(t) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> PResult<Span> {
        if self.at(t) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(what))
        }
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<Span> {
        if self.at_kw(kw) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Ident> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                let span = self.bump().span;
                Ok(Spanned::new(s, span))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn name(&mut self, what: &str) -> PResult<Ident> {
        let id = self.ident(what)?;
        if is_keyword(&id.node) {
            return Err(Diagnostic::error(id.span, format!("`{}` is a reserved word", id.node)));
        }
        Ok(id)
    }

    fn recover(&mut self) {
        self.bump();
        while !self.at(&Tok::Eof) && !DECL_KEYWORDS.iter().any(|k| self.at_kw(k)) {
            self.bump();
        }
    }

    fn decl(&mut self) -> PResult<Decl> {
        let start = self.peek().span;
        let kw = match &self.peek().tok {
            Tok::Ident(s) if DECL_KEYWORDS.contains(&s.as_str()) => s.clone(),
            _ => return Err(self.unexpected("a declaration (set, outcome, fun, selection, game or context)")),
        };
        self.bump();
        let name = self.name(&format!("a {kw} name"))?;
        let kind = match kw.as_str() {
            "set" => {
                self.expect(&Tok::Eq, "`=`")?;
                self.expect(&Tok::LBrace, "`{`")?;
                let mut els = Vec::new();
                while !self.at(&Tok::RBrace) {
                    els.push(self.label()?);
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(&Tok::RBrace, "`}` or `,`")?;
                DeclKind::Set(els)
            }
            "outcome" => {
                self.expect(&Tok::Eq, "`=`")?;
                DeclKind::Outcome(self.ty()?)
            }
            "fun" => {
                self.expect(&Tok::Colon, "`:`")?;
                let dom = self.ty()?;
                self.expect(&Tok::Arrow, "`->`")?;
                let cod = self.ty()?;
                let rows = self.rows(&Tok::LBrace, &Tok::RBrace)?;
                DeclKind::Fun { dom, cod, rows }
            }
            "selection" => {
                if self.eat(&Tok::Eq) {
                    DeclKind::Selection(SelDecl::Alias(self.sel()?))
                } else {
                    self.expect(&Tok::Colon, "`=` or `:`")?;
                    let moves = self.ty()?;
                    self.expect(&Tok::Arrow, "`->`")?;
                    let outcome = self.ty()?;
                    self.expect(&Tok::LBrace, "`{`")?;
                    let mut rows = Vec::new();
                    while !self.at(&Tok::RBrace) {
                        let k = self.rows(&Tok::LBracket, &Tok::RBracket)?;
                        self.expect(&Tok::FatArrow, "`=>`")?;
                        self.expect(&Tok::LBrace, "`{`")?;
                        let mut chosen = Vec::new();
                        while !self.at(&Tok::RBrace) {
                            chosen.push(self.lit()?);
                            if !self.eat(&Tok::Comma) {
                                break;
                            }
                        }
                        self.expect(&Tok::RBrace, "`}` or `,`")?;
                        rows.push((k, chosen));
                        if !self.eat(&Tok::Semi) && !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(&Tok::RBrace, "`}` or `;`")?;
                    DeclKind::Selection(SelDecl::Table { moves, outcome, rows })
                }
            }
            "game" => {
                self.expect(&Tok::Eq, "`=`")?;
                DeclKind::Game(self.expr()?)
            }
            _ => {
                self.expect_kw("for")?;
                let game = self.name("a game name")?;
                self.expect(&Tok::LBrace, "`{`")?;
                let state = if self.at_kw("state") {
                    self.bump();
                    self.expect(&Tok::Colon, "`:`")?;
                    Some(self.lit()?)
                } else {
                    None
                };
                self.expect_kw("continuation")?;
                self.expect(&Tok::Colon, "`:`")?;
                let rows = self.rows(&Tok::LBrace, &Tok::RBrace)?;
                self.expect(&Tok::RBrace, "`}`")?;
                DeclKind::Context { game, state, rows }
            }
        };
        Ok(Decl {
            name,
            kind,
            span: start.to(self.prev_span()),
        })
    }

    /// A set element: an identifier or a non-negative integer.
    fn label(&mut self) -> PResult<Ident> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => Ok(Spanned::new(s, self.bump().span)),
            Tok::Int(n) => Ok(Spanned::new(n.to_string(), self.bump().span)),
            _ => Err(self.unexpected("an element label")),
        }
    }

    /// `open row (sep row)* [sep] close`, rows `lit -> lit`, sep `;` or `,`.
    fn rows(&mut self, open: &Tok, close: &Tok) -> PResult<Vec<Row>> {
        self.expect(open, &format!("`{}`", open.text()))?;
        let mut rows = Vec::new();
        while !self.at(close) {
            let x = self.lit()?;
            self.expect(&Tok::Arrow, "`->`")?;
            let y = self.lit()?;
            rows.push((x, y));
            if !self.eat(&Tok::Semi) && !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(close, &format!("`{}` or `;`", close.text()))?;
        Ok(rows)
    }

    fn lit(&mut self) -> PResult<Lit> {
        let start = self.peek().span;
        match self.peek().tok.clone() {
            Tok::Star => {
                self.bump();
                Ok(Spanned::new(LitKind::Unit, start))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Spanned::new(LitKind::Name(s), start))
            }
            Tok::Int(_) | Tok::Minus => {
                let neg = self.eat(&Tok::Minus);
                let n = self.int("an integer")?;
                let d = if self.eat(&Tok::Slash) {
                    self.int("a denominator")?
                } else {
                    1
                };
                let n = if neg { -n } else { n };
                Ok(Spanned::new(LitKind::Num(n, d), start.to(self.prev_span())))
            }
            Tok::LParen => {
                self.bump();
                if self.eat(&Tok::RParen) {
                    return Ok(Spanned::new(LitKind::Unit, start.to(self.prev_span())));
                }
                let mut items = vec![self.lit()?];
                while self.eat(&Tok::Comma) {
                    items.push(self.lit()?);
                }
                self.expect(&Tok::RParen, "`)` or `,`")?;
                let span = start.to(self.prev_span());
                Ok(if items.len() == 1 {
                    items.pop().unwrap()
                } else {
                    Spanned::new(LitKind::Tuple(items), span)
                })
            }
            _ => Err(self.unexpected("a value")),
        }
    }

    fn int(&mut self, what: &str) -> PResult<i64> {
        match self.peek().tok {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn ty(&mut self) -> PResult<TyExpr> {
        let first = self.ty_factor()?;
        if !self.at(&Tok::Star) {
            return Ok(first);
        }
        let mut parts = vec![first];
        while self.eat(&Tok::Star) {
            parts.push(self.ty_factor()?);
        }
        let span = parts[0].span.to(self.prev_span());
        Ok(Spanned::new(TyKind::Product(parts), span))
    }

    fn ty_factor(&mut self) -> PResult<TyExpr> {
        let mut base = self.ty_base()?;
        while self.eat(&Tok::Caret) {
            let n = self.int("an exponent")?;
            let n = u32::try_from(n).map_err(|_| Diagnostic::error(self.prev_span(), "exponent out of range"))?;
            let span = base.span.to(self.prev_span());
            base = Spanned::new(TyKind::Power(Box::new(base), n), span);
        }
        Ok(base)
    }

    fn ty_base(&mut self) -> PResult<TyExpr> {
        let start = self.peek().span;
        match self.peek().tok.clone() {
            Tok::Int(1) => {
                self.bump();
                Ok(Spanned::new(TyKind::Unit, start))
            }
            Tok::Ident(s) if s == "R" => {
                self.bump();
                Ok(Spanned::new(TyKind::Num, start))
            }
            Tok::Ident(s) if !is_keyword(&s) => {
                self.bump();
                Ok(Spanned::new(TyKind::Named(s), start))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.ty()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(Spanned::new(inner.node, start.to(self.prev_span())))
            }
            _ => Err(self.unexpected("a type")),
        }
    }

    fn sel(&mut self) -> PResult<SelExpr> {
        let id = self.ident("a selection function")?;
        match id.node.as_str() {
            "argmax" => {
                if self.eat(&Tok::LBracket) {
                    let i = self.int("a player index")?;
                    self.expect(&Tok::RBracket, "`]`")?;
                    if i < 1 {
                        return Err(Diagnostic::error(self.prev_span(), "player indices start at 1"));
                    }
                    Ok(SelExpr::Argmax(Some(i as usize)))
                } else {
                    Ok(SelExpr::Argmax(None))
                }
            }
            "fix" => Ok(SelExpr::Fix),
            "antifix" => Ok(SelExpr::AntiFix),
            s if is_keyword(s) => Err(Diagnostic::error(
                id.span,
                format!("expected a selection function, found `{s}`"),
            )),
            _ => Ok(SelExpr::Named(id)),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut e = self.tensor()?;
        while self.eat(&Tok::Semi) {
            let rhs = self.tensor()?;
            let span = e.span.to(rhs.span);
            e = Spanned::new(ExprKind::Seq(Box::new(e), Box::new(rhs)), span);
        }
        Ok(e)
    }

    fn tensor(&mut self) -> PResult<Expr> {
        let mut e = self.atom()?;
        while self.eat(&Tok::Bar2) {
            let rhs = self.atom()?;
            let span = e.span.to(rhs.span);
            e = Spanned::new(ExprKind::Tensor(Box::new(e), Box::new(rhs)), span);
        }
        Ok(e)
    }

    fn morph(&mut self) -> PResult<MorphExpr> {
        if self.at_kw("id") {
            self.bump();
            Ok(MorphExpr::Id(self.ty_factor()?))
        } else {
            Ok(MorphExpr::Named(self.name("a function name")?))
        }
    }

    fn atom(&mut self) -> PResult<Expr> {
        let start = self.peek().span;
        let kw = match self.peek().tok.clone() {
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                return Ok(Spanned::new(e.node, start.to(self.prev_span())));
            }
            Tok::Ident(s) => s,
            _ => return Err(self.unexpected("a game expression")),
        };
        self.bump();
        let kind = match kw.as_str() {
            "decision" => {
                let obs = self.ty()?;
                self.expect(&Tok::Arrow, "`->`")?;
                let moves = self.ty()?;
                self.expect_kw("with")?;
                let sel = self.sel()?;
                ExprKind::Decision { obs, moves, sel }
            }
            "lift" => {
                let play = self.morph()?;
                let coplay = if self.eat(&Tok::Slash) {
                    Some(self.morph()?)
                } else {
                    None
                };
                ExprKind::Lift { play, coplay }
            }
            "counit" => ExprKind::Counit(self.ty()?),
            "copy" => ExprKind::Copy(self.ty()?),
            "delete" => ExprKind::Delete(self.ty()?),
            "swap" => {
                let a = self.ty_factor()?;
                let b = self.ty_factor()?;
                ExprKind::Swap(a, b)
            }
            "id" => {
                let fwd = self.ty()?;
                let bwd = if self.eat(&Tok::Slash) { Some(self.ty()?) } else { None };
                ExprKind::Id(fwd, bwd)
            }
            s if is_keyword(s) => {
                return Err(Diagnostic::error(
                    start,
                    format!("expected a game expression, found `{s}`"),
                ))
            }
            _ => ExprKind::Ref(kw),
        };
        Ok(Spanned::new(kind, start.to(self.prev_span())))
    }
}

use crate::diag::Span;

/// A node with its source span. Equality ignores the span.
#[derive(Clone, Debug)]
pub struct Spanned<T> {
    pub node: T,
    pub span: Span,
}

impl<T> Spanned<T> {
    pub fn new(node: T, span: Span) -> Self {
        Spanned { node, span }
    }
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl<T: Eq> Eq for Spanned<T> {}

pub type Ident = Spanned<String>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SourceUnit {
    pub decls: Vec<Decl>,
}

#[derive(Clone, Debug)]
pub struct Decl {
    pub name: Ident,
    pub kind: DeclKind,
    pub span: Span,
}

impl PartialEq for Decl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.kind == other.kind
    }
}

impl Eq for Decl {}

pub type Row = (Lit, Lit);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Set(Vec<Ident>),
    Outcome(TyExpr),
    Fun {
        dom: TyExpr,
        cod: TyExpr,
        rows: Vec<Row>,
    },
    Selection(SelDecl),
    Game(Expr),
    Context {
        game: Ident,
        state: Option<Lit>,
        rows: Vec<Row>,
    },
}

impl DeclKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            DeclKind::Set(_) => "set",
            DeclKind::Outcome(_) => "outcome",
            DeclKind::Fun { .. } => "fun",
            DeclKind::Selection(_) => "selection",
            DeclKind::Game(_) => "game",
            DeclKind::Context { .. } => "context",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelDecl {
    Alias(SelExpr),
    /// `δ(k)` listed for every continuation `k : moves → outcome`.
    Table {
        moves: TyExpr,
        outcome: TyExpr,
        rows: Vec<(Vec<Row>, Vec<Lit>)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelExpr {
    Argmax(Option<usize>),
    Fix,
    AntiFix,
    Named(Ident),
}

pub type TyExpr = Spanned<TyKind>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TyKind {
    Unit,
    Num,
    Named(String),
    Product(Vec<TyExpr>),
    Power(Box<TyExpr>, u32),
}

pub type Lit = Spanned<LitKind>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LitKind {
    Unit,
    Name(String),
    Num(i64, i64),
    Tuple(Vec<Lit>),
}

pub type Expr = Spanned<ExprKind>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphExpr {
    Named(Ident),
    Id(TyExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Decision { obs: TyExpr, moves: TyExpr, sel: SelExpr },
    Lift { play: MorphExpr, coplay: Option<MorphExpr> },
    Counit(TyExpr),
    Copy(TyExpr),
    Delete(TyExpr),
    Swap(TyExpr, TyExpr),
    Id(TyExpr, Option<TyExpr>),
    Seq(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Ref(String),
}

pub const KEYWORDS: &[&str] = &[
    "set",
    "outcome",
    "fun",
    "selection",
    "game",
    "context",
    "decision",
    "lift",
    "counit",
    "copy",
    "delete",
    "swap",
    "id",
    "with",
    "argmax",
    "fix",
    "antifix",
    "for",
    "state",
    "continuation",
    "R",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

impl SourceUnit {
    pub fn find(&self, keyword: &str, name: &str) -> Option<&Decl> {
        self.decls
            .iter()
            .find(|d| d.kind.keyword() == keyword && d.name.node == name)
    }
}

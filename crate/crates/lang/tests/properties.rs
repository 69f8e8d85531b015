use gamelang::ast::*;
use gamelang::pretty::print_unit;
use gamelang::{build, compile_expr, emit_dot, parse, Span, Typed, TypedKind};
use opengame::contexts::ContextPlan;
use opengame::laws::games_agree;
use opengame::{compose, tensor, OpenGame};
use proptest::prelude::*;

fn sp<T>(t: T) -> Spanned<T> {
    Spanned::new(t, Span::default())
}

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["A", "B", "Mv", "x1", "q", "pay_off", "Y'"]).prop_map(String::from)
}

fn ty() -> impl Strategy<Value = TyExpr> {
    let leaf = prop_oneof![
        Just(sp(TyKind::Unit)),
        Just(sp(TyKind::Num)),
        name().prop_map(|n| sp(TyKind::Named(n))),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(|v| sp(TyKind::Product(v))),
            (inner, 0u32..5).prop_map(|(b, n)| sp(TyKind::Power(Box::new(b), n))),
        ]
    })
}

fn lit() -> impl Strategy<Value = Lit> {
    let leaf = prop_oneof![
        Just(sp(LitKind::Unit)),
        name().prop_map(|n| sp(LitKind::Name(n))),
        (-20i64..20, 1i64..5).prop_map(|(n, d)| sp(LitKind::Num(n, d))),
    ];
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop::collection::vec(inner, 2..4).prop_map(|v| sp(LitKind::Tuple(v)))
    })
}

fn sel() -> impl Strategy<Value = SelExpr> {
    prop_oneof![
        Just(SelExpr::Argmax(None)),
        (1usize..4).prop_map(|i| SelExpr::Argmax(Some(i))),
        Just(SelExpr::Fix),
        Just(SelExpr::AntiFix),
        name().prop_map(|n| SelExpr::Named(sp(n))),
    ]
}

fn morph() -> impl Strategy<Value = MorphExpr> {
    prop_oneof![
        name().prop_map(|n| MorphExpr::Named(sp(n))),
        ty().prop_map(MorphExpr::Id)
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (ty(), ty(), sel()).prop_map(|(obs, moves, sel)| sp(ExprKind::Decision { obs, moves, sel })),
        (morph(), prop::option::of(morph())).prop_map(|(play, coplay)| sp(ExprKind::Lift { play, coplay })),
        ty().prop_map(|t| sp(ExprKind::Counit(t))),
        ty().prop_map(|t| sp(ExprKind::Copy(t))),
        ty().prop_map(|t| sp(ExprKind::Delete(t))),
        (ty(), ty()).prop_map(|(a, b)| sp(ExprKind::Swap(a, b))),
        (ty(), prop::option::of(ty())).prop_map(|(a, b)| sp(ExprKind::Id(a, b))),
        name().prop_map(|n| sp(ExprKind::Ref(n))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| sp(ExprKind::Seq(Box::new(a), Box::new(b)))),
            (inner.clone(), inner).prop_map(|(a, b)| sp(ExprKind::Tensor(Box::new(a), Box::new(b)))),
        ]
    })
}

fn rows() -> impl Strategy<Value = Vec<Row>> {
    prop::collection::vec((lit(), lit()), 0..4)
}

fn decl() -> impl Strategy<Value = Decl> {
    let kind = prop_oneof![
        prop::collection::vec(name().prop_map(sp), 0..4).prop_map(DeclKind::Set),
        ty().prop_map(DeclKind::Outcome),
        (ty(), ty(), rows()).prop_map(|(dom, cod, rows)| DeclKind::Fun { dom, cod, rows }),
        sel().prop_map(|s| DeclKind::Selection(SelDecl::Alias(s))),
        (
            ty(),
            ty(),
            prop::collection::vec((rows(), prop::collection::vec(lit(), 0..3)), 0..3)
        )
            .prop_map(|(moves, outcome, rows)| DeclKind::Selection(SelDecl::Table { moves, outcome, rows })),
        expr().prop_map(DeclKind::Game),
        (name(), prop::option::of(lit()), rows()).prop_map(|(g, state, rows)| DeclKind::Context {
            game: sp(g),
            state,
            rows
        }),
    ];
    (name(), kind).prop_map(|(n, kind)| Decl {
        name: sp(n),
        kind,
        span: Span::default(),
    })
}

const ATOMS: &[&str] = &[
    "decision 1 -> X with argmax",
    "decision X -> X with fix",
    "copy X",
    "delete X",
    "id X",
    "id 1 / R",
    "lift f",
    "lift id X / f",
    "counit X",
    "swap X X",
];

const HEADER: &str = "set X = {a, b}\nfun f : X -> X { a -> b; b -> a }\n";

fn small_expr() -> impl Strategy<Value = String> {
    let leaf = prop::sample::select(ATOMS).prop_map(String::from);
    leaf.prop_recursive(2, 6, 2, |inner| {
        (inner.clone(), inner, any::<bool>()).prop_map(|(a, b, seq)| {
            if seq {
                format!("({a}) ; ({b})")
            } else {
                format!("({a}) || ({b})")
            }
        })
    })
}

/// The same fold as the compiler, written out directly.
fn fold(t: &Typed) -> OpenGame {
    match &t.kind {
        TypedKind::Seq { first, second, whisker } => {
            let mut g2 = fold(second);
            if let Some(w) = whisker {
                g2 = tensor(&g2, &OpenGame::identity(w));
            }
            compose(&fold(first), &g2).unwrap()
        }
        TypedKind::Tensor(a, b) => tensor(&fold(a), &fold(b)),
        _ => compile_expr(t).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_then_parse_round_trips(decls in prop::collection::vec(decl(), 0..5)) {
        let unit = SourceUnit { decls };
        let text = print_unit(&unit);
        let back = parse(&text).map_err(|d| TestCaseError::fail(format!("{d}\n{text}")))?;
        prop_assert_eq!(back, unit, "{}", text);
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compiled_composites_are_core_composites(e in small_expr()) {
        let src = format!("{HEADER}game g = {e}\n");
        let Ok(prog) = build(&src) else { return Err(TestCaseError::reject("ill-typed")) };
        let compiled = prog.game("g").unwrap();
        prop_assume!(compiled.game.profile_count() <= 16);
        let small = |t: &opengame::Ty| t.factors().len() <= 2;
        let (d, c) = (compiled.game.dom(), compiled.game.cod());
        prop_assume!(small(&d.fwd) && small(&d.bwd) && small(&c.fwd) && small(&c.bwd));
        let direct = fold(&compiled.typed);
        prop_assert_eq!(compiled.game.dom(), &compiled.typed.dom);
        prop_assert_eq!(compiled.game.cod(), &compiled.typed.cod);
        let diff = games_agree(&compiled.game, &direct, None, &ContextPlan::default()).unwrap();
        prop_assert!(diff.is_none(), "{:?}", diff);
    }

    #[test]
    fn dot_is_a_function_of_the_expression(e in small_expr()) {
        let src = format!("{HEADER}game g = {e}\n");
        let Ok(p1) = build(&src) else { return Err(TestCaseError::reject("ill-typed")) };
        let p2 = build(&src).unwrap();
        let g1 = &p1.game("g").unwrap().typed;
        prop_assert_eq!(emit_dot("g", g1), emit_dot("g", &p2.game("g").unwrap().typed));
    }
}

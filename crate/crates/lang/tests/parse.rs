use gamelang::ast::{DeclKind, Expr, ExprKind, LitKind, SelDecl, SelExpr};
use gamelang::{parse, parse_expr, Span};

fn shape(e: &Expr) -> String {
    match &e.node {
        ExprKind::Seq(a, b) => format!("Seq({},{})", shape(a), shape(b)),
        ExprKind::Tensor(a, b) => format!("Tensor({},{})", shape(a), shape(b)),
        ExprKind::Decision { .. } => "D".into(),
        ExprKind::Lift { .. } => "Lift".into(),
        ExprKind::Counit(_) => "Counit".into(),
        ExprKind::Copy(_) => "Copy".into(),
        ExprKind::Delete(_) => "Delete".into(),
        ExprKind::Swap(..) => "Swap".into(),
        ExprKind::Id(..) => "Id".into(),
        ExprKind::Ref(n) => format!("Ref({n})"),
    }
}

#[test]
fn pd_parse_tree() {
    let src = "game pd = (decision 1 -> M with argmax[1] || decision 1 -> M with argmax[2]) ; lift q ; counit R2";
    let unit = parse(src).unwrap();
    let DeclKind::Game(e) = &unit.decls[0].kind else {
        panic!()
    };
    assert_eq!(shape(e), "Seq(Seq(Tensor(D,D),Lift),Counit)");
    let ExprKind::Seq(inner, _) = &e.node else { panic!() };
    let ExprKind::Seq(t, _) = &inner.node else { panic!() };
    let ExprKind::Tensor(d, _) = &t.node else { panic!() };
    assert!(matches!(
        &d.node,
        ExprKind::Decision {
            sel: SelExpr::Argmax(Some(1)),
            ..
        }
    ));
}

#[test]
fn tensor_binds_tighter_than_seq() {
    assert_eq!(
        shape(&parse_expr("a ; b || c ; d").unwrap()),
        "Seq(Seq(Ref(a),Tensor(Ref(b),Ref(c))),Ref(d))"
    );
    assert_eq!(
        shape(&parse_expr("a || b || c").unwrap()),
        "Tensor(Tensor(Ref(a),Ref(b)),Ref(c))"
    );
    assert_eq!(
        shape(&parse_expr("a || (b ; c)").unwrap()),
        "Tensor(Ref(a),Seq(Ref(b),Ref(c)))"
    );
}

#[test]
fn dangling_semicolon_is_reported_at_the_semicolon() {
    let src = "game bad = decision 1 -> M with argmax ;";
    let d = parse(src).unwrap_err();
    assert_eq!(d.0.len(), 1);
    let semi = src.rfind(';').unwrap();
    assert_eq!(d.0[0].span, Span::new(semi, semi + 1));
}

#[test]
fn empty_file() {
    assert!(parse("").unwrap().decls.is_empty());
    assert!(parse("  // only a comment\n# and another\n").unwrap().decls.is_empty());
}

#[test]
fn errors_in_several_declarations_are_all_reported() {
    let d = parse("set A = {a b}\ngame g = ;\nset B = {b}\ngame h = lift").unwrap_err();
    assert_eq!(d.0.len(), 3, "{d}");
}

#[test]
fn reserved_words_cannot_be_names() {
    let d = parse("set decision = {a}").unwrap_err();
    assert!(d.0[0].message.contains("reserved"));
}

#[test]
fn declarations() {
    let src = r#"
set M = {C, D}
set N = {0, 1, 2}
outcome R2 = R^2
fun f : M -> R { C -> -1/2; D -> 3, }
selection mine = argmax[2]
selection pick : M -> M { [C -> C; D -> D] => {C, D}; [C -> D, D -> C] => {} }
game g = decision 1 -> M with mine
context k for g { continuation: { C -> 0; D -> 1 } }
"#;
    let unit = parse(src).unwrap();
    let kinds: Vec<_> = unit.decls.iter().map(|d| d.kind.keyword()).collect();
    assert_eq!(
        kinds,
        [
            "set",
            "set",
            "outcome",
            "fun",
            "selection",
            "selection",
            "game",
            "context"
        ]
    );
    let DeclKind::Set(els) = &unit.decls[1].kind else {
        panic!()
    };
    assert_eq!(els.iter().map(|e| e.node.as_str()).collect::<Vec<_>>(), ["0", "1", "2"]);
    let DeclKind::Fun { rows, .. } = &unit.decls[3].kind else {
        panic!()
    };
    assert_eq!(rows[0].1.node, LitKind::Num(-1, 2));
    let DeclKind::Selection(SelDecl::Table { rows, .. }) = &unit.decls[5].kind else {
        panic!()
    };
    assert_eq!(rows.len(), 2);
    assert!(rows[1].1.is_empty());
}

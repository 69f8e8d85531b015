use opengame::contexts::ContextPlan;
use opengame::equiv::{equivalent, find_equivalence, DEFAULT_EQUIV_CAP};
use opengame::finite::Sampling;
use opengame::morphism::Morphism;
use opengame::{
    compose, decision, decision_with_passthrough, enumerate_functions, product, sequential_game, tensor, Boundary,
    Context, FiniteSet, OpenGame, SelectionFunction, StrategyProfile, TableFun, Ty, Value,
};

fn set(name: &str, els: &[&str]) -> Ty {
    Ty::set(&FiniteSet::new(name, els.iter().copied()).unwrap())
}

fn pair(a: Value, b: Value) -> Value {
    Value::Tuple(vec![a, b])
}

fn pay(a: i64, b: i64) -> Value {
    pair(Value::int(a), Value::int(b))
}

fn pd_q() -> TableFun {
    let m = set("M", &["C", "D"]);
    TableFun::new(
        product(&[m.clone(), m]),
        Ty::num().power(2),
        vec![pay(2, 2), pay(0, 3), pay(3, 0), pay(1, 1)],
    )
    .unwrap()
}

fn pd_game() -> OpenGame {
    let m = set("M", &["C", "D"]);
    let players = tensor(
        &decision(&Ty::unit(), &m, SelectionFunction::argmax_component(1)).unwrap(),
        &decision(&Ty::unit(), &m, SelectionFunction::argmax_component(2)).unwrap(),
    );
    compose(&players, &OpenGame::costate(&pd_q())).unwrap()
}

fn shown(ps: &[StrategyProfile]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

#[test]
fn prisoners_dilemma_outcome_table() {
    let q = pd_q();
    let c = Value::atom("M", "C");
    let d = Value::atom("M", "D");
    assert_eq!(q.apply(&pair(c.clone(), c.clone())).unwrap(), pay(2, 2));
    assert_eq!(q.apply(&pair(c, d.clone())).unwrap(), pay(0, 3));
    let lifted = OpenGame::lift_fwd(q);
    let e = StrategyProfile::empty();
    assert_eq!(lifted.play(&e, &pair(d.clone(), d)).unwrap(), pay(1, 1));
}

#[test]
fn prisoners_dilemma_equilibrium_and_constant_best_response() {
    let g = pd_game();
    assert!(g.is_scalar());
    assert_eq!(g.profile_count(), 4);
    assert_eq!(shown(&g.equilibria().unwrap()), ["(D, D)"]);
    let space = g.profile_space().unwrap();
    let rel = g.best_response(&Context::trivial()).unwrap().materialize(100).unwrap();
    let dd = 3usize;
    assert_eq!(space.nth(dd as u128).to_string(), "(D, D)");
    for s in 0..4 {
        for t in 0..4 {
            assert_eq!(rel.contains(s, t), t == dd);
        }
    }
}

fn banana(first: SelectionFunction, second: SelectionFunction) -> OpenGame {
    let x = set("X", &["A", "B"]);
    let players = tensor(
        &decision(&Ty::unit(), &x, first).unwrap(),
        &decision(&Ty::unit(), &x, second).unwrap(),
    );
    // Cross the wires so that each player is judged against the other's move.
    let xx = product(&[x.clone(), x.clone()]);
    let cross = OpenGame::lift(Morphism::Swap(x.clone(), x.clone()), Morphism::Identity(xx.clone()));
    compose(&compose(&players, &cross).unwrap(), &OpenGame::counit(&xx)).unwrap()
}

#[test]
fn fix_and_antifix_games() {
    let fix = SelectionFunction::fix;
    let anti = SelectionFunction::antifix;
    assert_eq!(shown(&banana(fix(), fix()).equilibria().unwrap()), ["(A, A)", "(B, B)"]);
    assert_eq!(
        shown(&banana(anti(), anti()).equilibria().unwrap()),
        ["(A, B)", "(B, A)"]
    );
    assert!(banana(fix(), anti()).equilibria().unwrap().is_empty());
}

#[test]
fn passthrough_decision_matches_its_components() {
    let x = set("X", &["A", "B"]);
    let g = decision_with_passthrough(&x, &x, SelectionFunction::argmax()).unwrap();
    assert_eq!(g.profile_count(), 4);
    let a = Value::atom("X", "A");
    let b = Value::atom("X", "B");
    let swap = StrategyProfile::new(vec![
        TableFun::new(x.clone(), x.clone(), vec![b.clone(), a.clone()]).unwrap()
    ]);
    assert_eq!(g.play(&swap, &a).unwrap(), pair(a.clone(), b.clone()));
    // k(x, y) = 1 when x = y: the best deviation copies the observation.
    let xx = product(&[x.clone(), x.clone()]);
    let k = TableFun::from_fn(xx, Ty::num(), |v| match v {
        Value::Tuple(p) => Ok(Value::int((p[0] == p[1]) as i64)),
        _ => unreachable!(),
    })
    .unwrap();
    for state in [a.clone(), b.clone()] {
        let ctx = Context::new(state.clone(), k.clone());
        for s in g.profile_space().unwrap().enumerate(16).unwrap() {
            for t in g.profile_space().unwrap().enumerate(16).unwrap() {
                let expected = t.tables[0].apply(&state).unwrap() == state;
                assert_eq!(g.best_responds(&ctx, &s, &t).unwrap(), expected);
            }
            assert!(g.coplay(&s, &state, &Value::int(7)).unwrap().is_unit());
        }
    }
}

#[test]
fn two_player_sequential_best_response_conditions() {
    let x = set("X", &["A", "B"]);
    let y = set("Y", &["L", "R"]);
    let g = sequential_game(&[x.clone(), y.clone()]).unwrap();
    assert_eq!(g.profile_count(), 8);
    let xy = product(&[x.clone(), y.clone()]);
    let vals = [pay(3, 1), pay(0, 0), pay(1, 2), pay(2, 2)];
    let q = TableFun::new(xy, Ty::num().power(2), vals.to_vec()).unwrap();
    let closed = compose(&g, &OpenGame::costate(&q)).unwrap();
    let first = |v: Value| match v {
        Value::Tuple(p) => p[0].as_num().unwrap(),
        _ => unreachable!(),
    };
    let second = |v: Value| match v {
        Value::Tuple(p) => p[1].as_num().unwrap(),
        _ => unreachable!(),
    };
    let profiles = closed.profile_space().unwrap().enumerate(64).unwrap();
    for s in &profiles {
        for t in &profiles {
            let (s1, s2) = (s.tables[0].apply(&Value::unit()).unwrap(), &s.tables[1]);
            let (t1, t2) = (t.tables[0].apply(&Value::unit()).unwrap(), &t.tables[1]);
            let u1 = |xv: &Value| first(q.apply(&pair(xv.clone(), s2.apply(xv).unwrap())).unwrap());
            let best1 = x.elements().unwrap().iter().map(u1).max().unwrap();
            let u2 = |yv: &Value| second(q.apply(&pair(s1.clone(), yv.clone())).unwrap());
            let best2 = y.elements().unwrap().iter().map(u2).max().unwrap();
            let expected = u1(&t1) == best1 && u2(&t2.apply(&s1).unwrap()) == best2;
            assert_eq!(closed.best_responds(&Context::trivial(), s, t).unwrap(), expected);
        }
    }
}

#[test]
fn perfect_information_play() {
    let x = set("X", &["A", "B"]);
    let y1 = set("Y", &["p", "q"]);
    let y2 = set("Z", &["u", "v"]);
    let first = decision_with_passthrough(&x, &y1, SelectionFunction::argmax()).unwrap();
    let xy = product(&[x.clone(), y1.clone()]);
    let second = tensor(
        &OpenGame::identity(&Boundary::new(Ty::unit(), Ty::num())),
        &decision_with_passthrough(&xy, &y2, SelectionFunction::argmax()).unwrap(),
    );
    let g = compose(&first, &second).unwrap();
    for p in g.profile_space().unwrap().enumerate(1 << 10).unwrap() {
        for xv in x.elements().unwrap() {
            let m1 = p.tables[0].apply(&xv).unwrap();
            let m2 = p.tables[1].apply(&pair(xv.clone(), m1.clone())).unwrap();
            assert_eq!(g.play(&p, &xv).unwrap(), Value::Tuple(vec![xv, m1, m2]));
        }
    }
}

#[test]
fn coplay_of_lift_then_tail_follows_composite_formula() {
    let x = set("X", &["a", "b", "c"]);
    let s = set("S", &["s", "t"]);
    let y = set("Y", &["p", "q"]);
    let r = set("R", &["m", "n", "o"]);
    let one = Ty::unit();
    let first = |f: &TableFun, g: &TableFun| OpenGame::lift(f.clone(), g.clone());
    let fs = enumerate_functions(&x, &y, 1 << 12).unwrap();
    let gs = enumerate_functions(&r, &s, 1 << 12).unwrap();
    let tail_gs = enumerate_functions(&one, &r, 16).unwrap();
    for f in fs.iter().step_by(3) {
        for g in gs.iter().step_by(5) {
            for h in &tail_gs {
                // Tail: (Y, R) → (1, 1), coplay ignores its input and returns h(*).
                let tail = OpenGame::lift(Morphism::Terminal(y.clone()), h.clone());
                let whole = compose(&first(f, g), &tail).unwrap();
                let e = StrategyProfile::empty();
                for xv in x.elements().unwrap() {
                    let y_mid = f.apply(&xv).unwrap();
                    let inner = tail.coplay(&e, &y_mid, &Value::unit()).unwrap();
                    let expected = g.apply(&inner).unwrap();
                    assert_eq!(whole.coplay(&e, &xv, &Value::unit()).unwrap(), expected);
                }
            }
        }
    }
}

#[test]
fn prisoners_dilemma_is_equivalent_to_a_dominant_choice() {
    let n = set("N", &["1", "2", "3", "4"]);
    let k = TableFun::new(n.clone(), Ty::num(), (1..=4).map(Value::int).collect()).unwrap();
    let single = compose(
        &decision(&Ty::unit(), &n, SelectionFunction::argmax()).unwrap(),
        &OpenGame::costate(&k),
    )
    .unwrap();
    let map = find_equivalence(&pd_game(), &single, &ContextPlan::default(), DEFAULT_EQUIV_CAP)
        .unwrap()
        .expect("bijection exists");
    // (D, D) must go to the dominant move 4.
    assert_eq!(map[3], 3);
}

#[test]
fn permuted_move_order_is_equivalent() {
    let ab = set("S", &["A", "B"]);
    let ba = set("S", &["B", "A"]);
    let g = decision(&Ty::unit(), &ab, SelectionFunction::argmax()).unwrap();
    let h = decision(&Ty::unit(), &ba, SelectionFunction::argmax()).unwrap();
    assert!(equivalent(&g, &h).unwrap());
}

#[test]
fn lens_of_point_and_copoint() {
    let m = set("M", &["C", "D"]);
    let mm = product(&[m.clone(), m]);
    let cc = pair(Value::atom("M", "C"), Value::atom("M", "C"));
    let p = opengame::Lens::point(cc.clone(), &Boundary::new(mm.clone(), Ty::num().power(2))).unwrap();
    let k = opengame::Lens::copoint(pd_q());
    let closed = opengame::lens_compose(&p, &k).unwrap();
    closed.check_well_formed(&Sampling::default()).unwrap();
    assert_eq!(k.update(&cc, &Value::unit()).unwrap(), pay(2, 2));
    assert!(opengame::Lens::point(Value::atom("M", "E"), &Boundary::new(mm, Ty::unit())).is_err());
}

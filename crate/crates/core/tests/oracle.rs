use opengame::compare::{compare_builder, compare_game, move_sets, random_outcome, OracleKind};
use opengame::oracle::ClassicGame;
use opengame::{compose, sequential_game, simultaneous_game, Context, OpenGame, Value};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn simultaneous_games_agree_with_oracle() {
    for sizes in [
        vec![2],
        vec![3],
        vec![2, 2],
        vec![2, 3],
        vec![3, 3],
        vec![2, 2, 2],
        vec![2, 3, 2],
    ] {
        let r = compare_builder(OracleKind::Simultaneous, &sizes, 25, 7).unwrap();
        assert!(r.all_agree(), "{sizes:?}: {:?}", r.first_disagreement);
    }
}

#[test]
fn sequential_games_agree_with_oracle() {
    for sizes in [vec![2], vec![2, 2], vec![2, 2, 2]] {
        let r = compare_builder(OracleKind::Sequential, &sizes, 10, 7).unwrap();
        assert!(r.all_agree(), "{sizes:?}: {:?}", r.first_disagreement);
    }
}

#[test]
fn sequential_oracle_rejects_a_simultaneous_game() {
    // The simultaneous game has fewer profiles than the sequential oracle.
    let moves = move_sets(&[2, 2]).unwrap();
    let g = simultaneous_game(&moves).unwrap();
    assert!(compare_game(&g, OracleKind::Sequential, 1, 0).is_err());
}

#[test]
fn two_player_simultaneous_conditions() {
    let moves = move_sets(&[2, 3]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..20 {
        let q = random_outcome(&moves, 2, &mut rng).unwrap();
        let classic = ClassicGame::maximising(moves.clone(), q.clone()).unwrap();
        let closed = compose(&simultaneous_game(&moves).unwrap(), &OpenGame::costate(&q)).unwrap();
        let space = closed.profile_space().unwrap();
        let utility = |a: &Value, b: &Value, i: usize| match q.apply(&Value::Tuple(vec![a.clone(), b.clone()])).unwrap()
        {
            Value::Tuple(p) => p[i].as_num().unwrap(),
            _ => unreachable!(),
        };
        let xs = moves[0].elements().unwrap();
        let ys = moves[1].elements().unwrap();
        for s in 0..space.count() {
            for t in 0..space.count() {
                let (sp, tp) = (space.nth(s), space.nth(t));
                let at = |p: &opengame::StrategyProfile, i: usize| p.tables[i].apply(&Value::unit()).unwrap();
                let (x, y) = (at(&sp, 0), at(&sp, 1));
                let (x2, y2) = (at(&tp, 0), at(&tp, 1));
                let best1 = xs.iter().map(|a| utility(a, &y, 0)).max().unwrap();
                let best2 = ys.iter().map(|b| utility(&x, b, 1)).max().unwrap();
                let expected = utility(&x2, &y, 0) == best1 && utility(&x, &y2, 1) == best2;
                let got = closed.best_responds(&Context::trivial(), &sp, &tp).unwrap();
                assert_eq!(got, expected);
                let oracle = classic.sim_best_response(&[x.clone(), y.clone()], &[x2, y2]).unwrap();
                assert_eq!(oracle, expected);
            }
        }
    }
}

#[test]
fn sequential_equilibria_match_oracle_profiles() {
    let moves = move_sets(&[2, 2]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let q = random_outcome(&moves, 2, &mut rng).unwrap();
    let closed = compose(&sequential_game(&moves).unwrap(), &OpenGame::costate(&q)).unwrap();
    let ours: Vec<Vec<_>> = closed.equilibria().unwrap().into_iter().map(|p| p.tables).collect();
    let theirs = ClassicGame::maximising(moves, q).unwrap().seq_equilibria().unwrap();
    assert_eq!(ours, theirs);
}

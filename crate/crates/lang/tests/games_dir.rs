use std::fs;
use std::path::PathBuf;

use gamelang::build;

fn games_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../games")
}

fn equilibria(file: &str, game: &str) -> Vec<String> {
    let src = fs::read_to_string(games_dir().join(file)).unwrap();
    let prog = build(&src).unwrap_or_else(|d| panic!("{file}: {d}"));
    let g = &prog.game(game).unwrap().game;
    g.equilibria().unwrap().iter().map(|p| p.to_string()).collect()
}

#[test]
fn every_shipped_game_compiles() {
    for entry in fs::read_dir(games_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "game") {
            let src = fs::read_to_string(&path).unwrap();
            if let Err(d) = build(&src) {
                panic!("{}: {d}", path.display());
            }
        }
    }
}

#[test]
fn shipped_equilibria() {
    assert_eq!(equilibria("pd.game", "pd"), ["(D, D)"]);
    assert_eq!(equilibria("coordination.game", "coordination"), ["(A, A)", "(B, B)"]);
    assert_eq!(
        equilibria("anticoordination.game", "anticoordination"),
        ["(A, B)", "(B, A)"]
    );
    assert!(equilibria("matching_pennies.game", "matching_pennies").is_empty());
    assert_eq!(equilibria("simultaneous3.game", "public_goods"), ["(n, n, n)"]);
}

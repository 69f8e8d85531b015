use std::path::PathBuf;
use std::process::{Command, Output};

use opengame_cli::report::Report;

fn games() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../games")
}

fn game(name: &str) -> String {
    games().join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opengame"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn report(args: &[&str]) -> Report {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).expect("report parses")
}

fn displays(r: &Report) -> Vec<&str> {
    r.equilibria.iter().map(|p| p.display.as_str()).collect()
}

fn temp_game(src: &str) -> tempfile::NamedTempFile {
    let f = tempfile::Builder::new().suffix(".game").tempfile().unwrap();
    std::fs::write(f.path(), src).unwrap();
    f
}

#[test]
fn analyze_pd_text() {
    let o = run(&["analyze", &game("pd.game")]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("game pd : (1, 1) -> (1, 1)\n"), "{out}");
    assert!(out.contains("equilibria: 1\n  #3 (D, D)\n"), "{out}");
}

#[test]
fn shipped_equilibria() {
    assert_eq!(
        displays(&report(&["analyze", &game("coordination.game")])),
        ["(A, A)", "(B, B)"]
    );
    assert_eq!(
        displays(&report(&["analyze", &game("anticoordination.game")])),
        ["(A, B)", "(B, A)"]
    );
    assert!(report(&["analyze", &game("matching_pennies.game")])
        .equilibria
        .is_empty());
}

#[test]
fn report_round_trips_and_is_deterministic() {
    let args = [
        "analyze",
        &game("monopolist.game"),
        "--format",
        "json",
        "--br-table",
        "--pair",
        "0",
        "1",
    ];
    let first = stdout(&run(&args));
    assert_eq!(first, stdout(&run(&args)));
    let r: Report = serde_json::from_str(&first).unwrap();
    assert_eq!(r.schema, "report/1");
    assert_eq!(r.to_json() + "\n", first);
    assert!(r.equilibria.iter().all(|p| p.index < r.profiles));
    let table = r.best_response.as_ref().unwrap();
    assert_eq!(table.len() as u128, r.profiles);
    for p in &r.equilibria {
        assert!(table[p.index as usize][p.index as usize]);
    }
    let pair = r.pair.unwrap();
    assert_eq!(pair.member, table[0][1]);
}

#[test]
fn default_game_is_the_last_one() {
    let r = report(&["analyze", &game("simultaneous3.game")]);
    assert_eq!(r.game, "public_goods");
    assert_eq!(displays(&r), ["(n, n, n)"]);
}

#[test]
fn open_game_uses_source_context_unless_overridden() {
    let r = report(&["analyze", &game("ddelta.game")]);
    assert!(r.context.is_some());
    assert_eq!(displays(&r), ["({A->L, B->L})", "({A->L, B->R})"]);

    let ctx = tempfile::NamedTempFile::new().unwrap();
    let json = r#"{"state": "B", "continuation": [[["A","L"],0],[["A","R"],1],[["B","L"],1],[["B","R"],0]]}"#;
    std::fs::write(ctx.path(), json).unwrap();
    let path = ctx.path().display().to_string();
    let r = report(&["analyze", &game("ddelta.game"), "--context-file", &path]);
    assert_eq!(displays(&r), ["({A->L, B->L})", "({A->R, B->L})"]);
}

#[test]
fn open_game_without_context_is_rejected() {
    let f = temp_game("set X = {a, b}\ngame g = decision 1 -> X with argmax\n");
    let o = run(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("needs a context"), "{}", stderr(&o));
}

#[test]
fn diagnostics_exit_two_with_positions() {
    let f = temp_game("set X = {a, b}\ngame g = decision 1 -> X with argmax ;\n");
    let path = f.path().to_str().unwrap().to_string();
    let o = run(&["analyze", &path]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with(&format!("{path}:2:")), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn cap_exceeded_exits_three() {
    let o = run(&["analyze", &game("pd.game"), "--cap", "3"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("cap"));
}

#[test]
fn large_best_response_tables_are_withheld() {
    let src = "set Z = {a, b, c, d, e}\n\
               game g = (decision 1 -> Z with fix || decision 1 -> Z with fix || decision 1 -> Z with fix) ; counit Z*Z*Z\n";
    let f = temp_game(src);
    let path = f.path().to_str().unwrap();
    let r = report(&["analyze", path, "--br-table", "--pair", "0", "124"]);
    assert_eq!(r.profiles, 125);
    assert!(r.best_response.is_none());
    assert_eq!(r.warnings.len(), 1);
    assert!(r.pair.unwrap().member);
    assert_eq!(code(&run(&["analyze", path, "--pair", "0", "125"])), 2);
}

#[test]
fn check_laws_pass_and_mutant_fails() {
    let o = run(&["check", "--laws", "counit", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "counit: pass (200/200)\n");

    let o = run(&[
        "check",
        "--laws",
        "interchange",
        "--seed",
        "11",
        "--mutant",
        "broken-compose",
    ]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    let repro = out
        .lines()
        .find_map(|l| l.trim().strip_prefix("reproduce: opengame "))
        .unwrap();
    let o = run(&repro.split_whitespace().collect::<Vec<_>>());
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL at trial 0"));
}

#[test]
fn unknown_law_is_a_usage_error() {
    assert_eq!(code(&run(&["check", "--laws", "commutativity"])), 2);
}

#[test]
fn compare_reports_agreement() {
    let o = run(&[
        "compare",
        "--builder",
        "sim",
        "--sizes",
        "2,3",
        "--trials",
        "20",
        "--seed",
        "3",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("agreement 20/20 "));

    let o = run(&[
        "compare",
        &game("pd.game"),
        "--game",
        "players",
        "--oracle",
        "sim",
        "--trials",
        "20",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("agreement 20/20 "));

    let o = run(&[
        "compare",
        &game("sequential2.game"),
        "--game",
        "tree",
        "--oracle",
        "seq",
        "--trials",
        "20",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn compare_rejects_the_wrong_shape() {
    let o = run(&[
        "compare",
        &game("sequential2.game"),
        "--game",
        "tree",
        "--oracle",
        "sim",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("expected shape"));
}

#[test]
fn dot_output() {
    let o = run(&["dot", &game("pd.game")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("digraph \"pd\" {"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pd.dot");
    let o = run(&["analyze", &game("pd.game"), "--dot", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn oracle_mode_solves_classic_games() {
    let f = tempfile::NamedTempFile::new().unwrap();
    let json = r#"{"kind": "simultaneous",
        "players": [{"name": "M", "elements": ["C", "D"]}, {"name": "M", "elements": ["C", "D"]}],
        "q": [[["C","C"],[2,2]], [["C","D"],[0,3]], [["D","C"],[3,0]], [["D","D"],[1,1]]]}"#;
    std::fs::write(f.path(), json).unwrap();
    let r = report(&["analyze", "--oracle", f.path().to_str().unwrap(), "--br-table"]);
    assert_eq!(displays(&r), ["(D, D)"]);
    assert_eq!(r.equilibria[0].index, 3);
    let table = r.best_response.unwrap();
    assert!(table.iter().all(|row| row == &[false, false, false, true]));
}

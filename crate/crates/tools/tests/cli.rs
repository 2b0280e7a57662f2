use std::path::PathBuf;
use std::process::{Command, Output};

const A: &str = "|- (z|!y)&(!z|!y)";
const B: &str = "|- (x&y)|(!x&y)";

fn ol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ol"))
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("run ol")
}

fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn prove_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let o = ol(&["prove", "x & y |- x", "--emit-proof", path.to_str().unwrap(), "--stats"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("states_enumerated"));
    let o = ol(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("accepted: x & y |- x"));

    assert_eq!(code(&ol(&["prove", "|-", "--axiom", A, "--axiom", B])), 0);
    assert_eq!(code(&ol(&["prove", "x | y |- x"])), 1);
    assert_eq!(code(&ol(&["prove", "x |- ("])), 2);
    assert_eq!(code(&ol(&["prove", "x |- x", "--axiom", "nonsense"])), 2);
    assert_eq!(code(&ol(&["prove", "forall x. x |- y"])), 2);
    assert_eq!(code(&ol(&["prove", "forall x. x & y |- y", "--quantifiers"])), 0);
}

#[test]
fn interpolate_outputs() {
    let o = ol(&["interpolate", "x & y", "y | z"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "y");
    let o = ol(&["interpolate", "x & y", "y | z", "--quantified"]);
    assert_eq!(stdout(&o).trim(), "forall z. y | z");
    assert_eq!(code(&ol(&["interpolate", "x", "y"])), 1);
    assert_eq!(code(&ol(&["interpolate", "exists x. x", "y"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let o = ol(&["interpolate", "p & q", "q | r", "--emit-proofs", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    for f in ["left.json", "right.json"] {
        assert_eq!(code(&ol(&["check", dir.path().join(f).to_str().unwrap()])), 0);
    }
}

#[test]
fn check_fixtures_and_failures() {
    let o = ol(&["check", "fixtures/fig4a.json", "--axiom", B]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("accepted: |- y"));
    // Without its axiom the same proof is rejected at the axiom leaf.
    let o = ol(&["check", "fixtures/fig4a.json"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("at root.0"));
    assert_eq!(code(&ol(&["check", "missing.json"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(workspace_root().join("fixtures/fig4a.json")).unwrap();
    let tampered = dir.path().join("t.json");
    std::fs::write(&tampered, text.replacen("\"LeftOr\"", "\"LeftXor\"", 1)).unwrap();
    let o = ol(&["check", tampered.to_str().unwrap(), "--axiom", B]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("at root.1: unknown rule `LeftXor`"), "{}", stdout(&o));
    let broken = dir.path().join("b.json");
    std::fs::write(&broken, "{\"rule\": ").unwrap();
    assert_eq!(code(&ol(&["check", broken.to_str().unwrap()])), 2);
}

#[test]
fn eval_commands() {
    let o = ol(&["eval", "--lattice", "m2", "--assign", "y=a", "exists x. !x & (y | x)"]);
    assert_eq!((code(&o), stdout(&o).trim().to_string()), (0, "a".to_string()));
    let o = ol(&["eval", "--lattice", "m4", "--assign", "y=a", "exists x. !x & (y | x)"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = ol(&["eval", "--lattice", "b2", "--assign", "x=1", "x & !x"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = ol(&["eval", "--lattice", "m2", "--assign", "x=a", "--assign", "y=!a", "x | y |- x"]);
    assert_eq!((code(&o), stdout(&o).trim().to_string()), (1, "false".to_string()));
    assert_eq!(code(&ol(&["eval", "--lattice", "m2", "x"])), 2);
    assert_eq!(code(&ol(&["eval", "--lattice", "m2", "--assign", "x=q", "x"])), 2);
    assert_eq!(code(&ol(&["eval", "--lattice", "nope", "--assign", "x=0", "x"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l.json");
    std::fs::write(&path, ol_tools::lattice_json::to_string(&ol_core::builtin("m4").unwrap())).unwrap();
    let o = ol(&["eval", "--lattice", path.to_str().unwrap(), "--assign", "y=a", "exists x. !x & (y | x)"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn demos() {
    let o = ol(&["demo", "no-qe"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("M2: a, M4: 1"));
    let o = ol(&["demo", "refutation"]);
    assert_eq!(code(&o), 0);
    let rows = stdout(&o).lines().filter(|l| l.starts_with("|- ")).count();
    assert_eq!(rows, 4);
    assert_eq!(code(&ol(&["demo", "unknown"])), 2);
    assert_eq!(code(&ol(&["no-such-command"])), 2);
}

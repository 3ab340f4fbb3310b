//! Black-box runs of the compiled binary: frozen stdout bytes, the
//! documented exit codes, and the determinism contract.

use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_incidence"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 stdout")
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("no signal")
}

#[test]
fn classify_three_chain_text() {
    let chain3 = fixture("chain3.json");
    assert_eq!(
        stdout_of(&["classify", "--input", &chain3]),
        "class=Complexity1TwoChain dim=6 c=1\n"
    );
    assert_eq!(
        stdout_of(&["classify", "--input", &chain3, "--format", "json"]),
        "{\"class\":\"Complexity1TwoChain\",\"complexity\":1,\"dim\":6}\n"
    );
}

#[test]
fn mobius_matrices() {
    assert_eq!(
        stdout_of(&["mobius", "--input", &fixture("antichain4.json")]),
        "[[\"1\",\"0\",\"0\",\"0\"],[\"0\",\"1\",\"0\",\"0\"],[\"0\",\"0\",\"1\",\"0\"],[\"0\",\"0\",\"0\",\"1\"]]\n"
    );
    assert_eq!(
        stdout_of(&["mobius", "--input", &fixture("five.json")]),
        "[[\"1\",\"-1\",\"-1\",\"1\",\"1\"],[\"0\",\"1\",\"0\",\"-1\",\"-1\"],[\"0\",\"0\",\"1\",\"-1\",\"-1\"],[\"0\",\"0\",\"0\",\"1\",\"0\"],[\"0\",\"0\",\"0\",\"0\",\"1\"]]\n"
    );
    assert_eq!(
        stdout_of(&["mobius", "--input", &fixture("chain2.json"), "--format", "text"]),
        "1 -1\n0 1\n"
    );
}

#[test]
fn zeta_matrix_and_polynomial() {
    assert_eq!(
        stdout_of(&["zeta", "--input", &fixture("chain2.json")]),
        "[[\"1\",\"1\"],[\"0\",\"1\"]]\n"
    );
    let chain3 = fixture("chain3.json");
    assert_eq!(
        stdout_of(&["zeta", "--input", &chain3, "--m", "4", "--format", "text"]),
        "10\n"
    );
    assert_eq!(
        stdout_of(&["zeta", "--input", &chain3, "--m", "4"]),
        "{\"m\":4,\"value\":\"10\"}\n"
    );
}

#[test]
fn analyze_five_element_report() {
    assert_eq!(
        stdout_of(&["analyze", "--input", &fixture("five.json")]),
        "{\"aut_order\":4,\"betti1\":2,\"class\":\"Higher(4)\",\"complexity\":4,\"dim\":13,\"elements\":5,\"per_component\":[{\"complexity\":4,\"nontrivial_relations\":8,\"size\":5}],\"rank\":9}\n"
    );
    let text = stdout_of(&["analyze", "--input", &fixture("five.json"), "--format", "text"]);
    assert_eq!(
        text,
        "elements=5\ndim=13\ncomplexity=4\nrank=9\nclass=Higher(4)\nbetti1=2\naut_order=4\ncomponent size=5 nontrivial_relations=8 complexity=4\n"
    );
}

#[test]
fn star_reps_words() {
    let text = stdout_of(&["star-reps", "--n", "3"]);
    let words: Vec<&str> = text.lines().collect();
    assert_eq!(
        words,
        [
            "000", "001", "003", "010", "011", "013", "020", "021", "023", "100", "103",
            "120", "123"
        ]
    );
    let json = stdout_of(&["star-reps", "--n", "2", "--format", "json"]);
    assert_eq!(
        json,
        "{\"count\":5,\"n\":2,\"words\":[\"00\",\"01\",\"02\",\"10\",\"12\"]}\n"
    );
}

#[test]
fn star_hasse_shapes() {
    let dot = stdout_of(&["star-hasse", "--n", "2"]);
    assert!(dot.starts_with("graph adherence {\n"));
    assert!(dot.contains("  n0 [label=\"00\"];\n"));
    assert!(dot.ends_with("}\n"));
    assert_eq!(dot.matches(" -- ").count(), 5);

    let text = stdout_of(&["star-hasse", "--n", "2", "--format", "text"]);
    assert_eq!(
        text,
        "node 00 dim=0\nnode 01 dim=1\nnode 02 dim=2\nnode 10 dim=2\nnode 12 dim=3\n\
         cover 00 01\ncover 01 02\ncover 01 10\ncover 02 12\ncover 10 12\n"
    );
}

#[test]
fn torus_lattice_counts() {
    assert_eq!(
        stdout_of(&["torus-lattice", "--n", "2"]),
        "{\"boolean_iso_check\":true,\"cover_count\":\"12\",\"index_set_size\":3,\"n\":2,\"orbit_count\":\"8\"}\n"
    );
    assert_eq!(
        stdout_of(&["torus-lattice", "--n", "6", "--format", "text"]),
        "n=6 index_set_size=11 orbits=2048 covers=11264 boolean_iso_check=skipped\n"
    );
}

#[test]
fn antichain_lattice_star() {
    let dot = stdout_of(&["antichain-lattice", "--input", &fixture("star3.json")]);
    assert_eq!(
        dot,
        "graph intersection_lattice {\n  rankdir=BT;\n  node [shape=box];\n  \
         { rank=same; n0; }\n  { rank=same; n1; n2; n4; }\n  { rank=same; n3; }\n  \
         n0 [label=\"∅\"];\n  n1 [label=\"{x1}\"];\n  n2 [label=\"{x2}\"];\n  \
         n3 [label=\"{x2,x3}\"];\n  n4 [label=\"{x3}\"];\n  \
         n0 -- n1;\n  n0 -- n2;\n  n0 -- n4;\n  n2 -- n3;\n  n4 -- n3;\n}\n"
    );
    let text = stdout_of(&[
        "antichain-lattice",
        "--input",
        &fixture("star3.json"),
        "--format",
        "text",
    ]);
    assert_eq!(
        text,
        "node 0 ∅\nnode 1 {x1} maximal\nnode 2 {x2}\nnode 3 {x2,x3} maximal\nnode 4 {x3}\n\
         cover 0 1\ncover 0 2\ncover 0 4\ncover 2 3\ncover 4 3\n"
    );
}

#[test]
fn fflab_reports() {
    assert_eq!(
        stdout_of(&[
            "fflab",
            "--input",
            &fixture("chain2.json"),
            "--q",
            "2",
            "--closure",
            "true",
        ]),
        "{\"closure\":true,\"completely_regular\":false,\"finite_point_shadow\":true,\"mask_id\":\"I(P)\",\"q\":2,\"regular\":false,\"size\":8,\"units\":2,\"witness\":[[0,1],[0,0]]}\n"
    );
    let text = stdout_of(&[
        "fflab",
        "--input",
        &fixture("star3.json"),
        "--q",
        "3",
        "--antichain",
        "x2,x3",
        "--closure",
        "true",
        "--format",
        "text",
    ]);
    assert_eq!(
        text,
        "mask_id=I(P)_{x2,x3}\nq=3\nclosure=true\nsize=81\nunits=36\nregular=true\ncompletely_regular=true\n"
    );
    // empty string selects the empty antichain, not the full monoid
    let empty = stdout_of(&[
        "fflab",
        "--input",
        &fixture("star3.json"),
        "--q",
        "2",
        "--antichain",
        "",
        "--format",
        "text",
    ]);
    assert!(empty.starts_with("mask_id=I(P)_{}\n"), "got: {empty}");
}

#[test]
fn verify_sweep_passes() {
    let out = run(&["verify", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("verify n_max=2\n"));
    assert!(text.lines().last().unwrap().starts_with("PASS  suites=17  "));
}

#[test]
fn exit_codes_cover_all_paths() {
    // 1: domain errors
    assert_eq!(exit_code(&["mobius", "--input", &fixture("garbage.json")]), 1);
    assert_eq!(
        exit_code(&[
            "fflab",
            "--input",
            &fixture("chain2.json"),
            "--q",
            "2",
            "--antichain",
            "x1,x2",
        ]),
        1
    );
    assert_eq!(
        exit_code(&["zeta", "--input", &fixture("chain2.json"), "--m", "1"]),
        1
    );
    assert_eq!(
        exit_code(&["mobius", "--input", &fixture("chain2.json"), "--format", "dot"]),
        1
    );
    // 2: enumeration cap
    assert_eq!(
        exit_code(&[
            "antichain-lattice",
            "--input",
            &fixture("antichain6.json"),
            "--cap",
            "10",
        ]),
        2
    );
    // 3: I/O
    assert_eq!(exit_code(&["classify", "--input", "/nonexistent/p.json"]), 3);
    // 0: success including help
    assert_eq!(exit_code(&["--help"]), 0);
}

#[test]
fn outputs_are_byte_deterministic() {
    let configs: Vec<Vec<&str>> = vec![
        vec!["analyze", "--input", "FIVE"],
        vec!["mobius", "--input", "FIVE", "--format", "text"],
        vec!["star-reps", "--n", "4", "--format", "json"],
        vec!["star-hasse", "--n", "3"],
        vec!["antichain-lattice", "--input", "FIVE", "--format", "json"],
        vec!["verify", "--n", "2", "--format", "json"],
    ];
    let five = fixture("five.json");
    for config in configs {
        let args: Vec<&str> = config
            .iter()
            .map(|a| if *a == "FIVE" { five.as_str() } else { *a })
            .collect();
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "stdout differs for {args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

use std::process::{Command, Output};

fn garland(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_garland"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn min_int_reports_epsilon() {
    let o = garland(&["min-int", "section13", "aBB", "aB"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("epsilon = 2"), "{out}");
    assert!(out.contains("minimal intersection number = 2"), "{out}");

    let o = garland(&["min-int", "--surface", "torus1", "ab", "aB"]);
    assert!(stdout(&o).contains("minimal intersection number = 2"));
}

#[test]
fn goldman_cross_check() {
    let o = garland(&["goldman", "section13", "aBB", "aB"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("Goldman bracket = 0"), "{out}");
    assert!(out.contains(": pass"), "{out}");
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["min-int", "torus1", "a", "b"], 0),
        (&["min-int", "torus1", "a", "a"], 2),
        (&["min-int", "torus1", "ab", "BA"], 2),
        (&["min-int", "torus1", "a", "1"], 2),
        (&["min-int", "torus1", "a", "b?"], 1),
        (&["min-int", "nowhere", "a", "b"], 1),
        (&["min-int", "torus1", "a"], 1),
        (&["no-such-command"], 1),
        (&["sign-check"], 0),
        (&["graph-check", "3"], 0),
        (&["jacobi-check", "torus1", "2"], 0),
        (&["example-section13"], 0),
        (&["star", "a", "b"], 0),
    ];
    for (args, code) in cases {
        assert_eq!(garland(args).status.code(), Some(*code), "{args:?}");
    }
    let o = garland(&["min-int", "torus1", "a", "a"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("no such common root"), "{err}");
}

#[test]
fn bracket_json_round_trips() {
    for args in [
        ["bracket", "section13", "aBB", "aB", "--json"],
        ["bracket", "torus1", "abAB", "aab", "--json"],
        ["min-int", "torus1", "ab", "aB", "--json"],
    ] {
        let o = garland(&args);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, text);
    }
    let v: serde_json::Value = serde_json::from_str(&stdout(&garland(&[
        "bracket",
        "section13",
        "aBB",
        "aB",
        "--json",
    ])))
    .unwrap();
    let coefs: Vec<&str> = v["element"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["coef"].as_str().unwrap())
        .collect();
    assert_eq!(coefs, ["1/1", "-1/1"]);
}

#[test]
fn surface_files() {
    let dir = std::env::temp_dir().join(format!("garland-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("torus.surface");
    std::fs::write(&path, "name: my-torus\nrank: 2\norder: a b A B\n").unwrap();
    let o = garland(&["min-int", path.to_str().unwrap(), "a", "b"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("minimal intersection number = 1"));

    let bad = dir.join("bad.surface");
    std::fs::write(&bad, "rank: 2\norder: a b A\n").unwrap();
    assert_eq!(
        garland(&["min-int", bad.to_str().unwrap(), "a", "b"])
            .status
            .code(),
        Some(1)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn seeds_change_samples() {
    let a = stdout(&garland(&["jacobi-check", "torus1", "3", "--seed", "1"]));
    let b = stdout(&garland(&["jacobi-check", "torus1", "3", "--seed", "1"]));
    let c = stdout(&garland(&["jacobi-check", "torus1", "3", "--seed", "2"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn oracle_flag_agrees() {
    let o = garland(&[
        "bracket",
        "section13",
        "aBB",
        "aB",
        "--oracle",
        "--max-len",
        "8",
        "--max-power",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

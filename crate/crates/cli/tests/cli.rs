use std::process::{Command, Output};

use totsadic_core::theorem::{Lemma2Certificate, MembershipReport, WitnessReport};
use totsadic_core::{F2u, Rational};

fn totsadic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_totsadic"))
        .args(args)
        .output()
        .expect("failed to run totsadic")
}

fn code(args: &[&str]) -> i32 {
    let out = totsadic(args);
    out.status.code().expect("terminated by signal")
}

#[test]
fn exit_codes() {
    let cases = [
        ("lemma1 --field Q --place 3 --t 3 --y 1,1/3,9,0", 0),
        ("lemma1 --field Q --place 3 --t 4 --y 1", 2),
        (
            "lemma1 --field F2u --places (u),(u+1) --t u^2+u --y 1,u,1/(u+1)",
            0,
        ),
        ("lemma2 --field Q --t 3", 0),
        ("lemma2 --field Q --t -1 --allow-boundary", 1),
        ("lemma2 --field Q --t -1", 2),
        ("lemma2 --field Q --t 0 --allow-boundary", 1),
        ("lemma2 --field F2u --t u", 0),
        ("lemma2 --field Q --t 3/0", 2),
        ("member --field Q --places 2,3,R --minpoly X^2+X-36/49", 0),
        ("member --field Q --places R --minpoly X^2+1", 1),
        ("member --field Q --places 2 --minpoly X^2+X-1", 1),
        ("member --field Q --places 2 --minpoly X^2-2X+1", 2),
        ("member --field Q --places 4 --minpoly X^2+1", 2),
        ("member --field F2u --places (u) --minpoly X^2+X+u", 0),
        ("witness --field Q --places R --samples 10", 0),
        (
            "witness --field F2u --places (u) --samples 20 --precision 32",
            0,
        ),
        ("witness --field Q --precision 0", 2),
        ("bogus", 2),
    ];
    for (line, want) in cases {
        let args: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(code(&args), want, "{line}");
    }
}

#[test]
fn json_is_deterministic_and_out_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = [
        "witness",
        "--field",
        "Q",
        "--places",
        "2,3,R",
        "--samples",
        "30",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let a = totsadic(&args);
    let b = totsadic(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let c = totsadic(&with_out);
    assert_eq!(c.stdout, a.stdout);
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn seed_changes_the_sample() {
    let run = |seed: &str| {
        totsadic(&[
            "witness",
            "--places",
            "R",
            "--samples",
            "20",
            "--seed",
            seed,
            "--format",
            "json",
        ])
        .stdout
    };
    assert_ne!(run("1"), run("2"));
}

fn round_trip<T: serde::de::DeserializeOwned + serde::Serialize>(args: &[&str]) {
    let out = totsadic(args);
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: T = serde_json::from_str(&text).unwrap();
    let mut again = serde_json::to_string_pretty(&parsed).unwrap();
    again.push('\n');
    assert_eq!(again, text, "{args:?}");
}

#[test]
fn reports_round_trip() {
    round_trip::<WitnessReport<Rational>>(&["witness", "--samples", "25", "--format", "json"]);
    round_trip::<WitnessReport<F2u>>(&[
        "witness",
        "--field",
        "F2u",
        "--samples",
        "15",
        "--precision",
        "16",
        "--format",
        "json",
    ]);
    round_trip::<Lemma2Certificate<Rational>>(&[
        "lemma2",
        "--t",
        "-1",
        "--allow-boundary",
        "--format",
        "json",
    ]);
    round_trip::<Lemma2Certificate<F2u>>(&[
        "lemma2", "--field", "F2u", "--t", "u^2+u", "--format", "json",
    ]);
    round_trip::<MembershipReport<Rational>>(&[
        "member",
        "--places",
        "2,3,R",
        "--minpoly",
        "X^2+X-36/49",
        "--format",
        "json",
    ]);
}

#[test]
fn text_output_names_the_verdict() {
    let out = totsadic(&["member", "--places", "R", "--minpoly", "X^2+1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("not totally S-adic"), "{text}");
    let out = totsadic(&["lemma2", "--t", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("t = 3\n"), "{text}");
    assert!(text.contains("irreducible"));
}

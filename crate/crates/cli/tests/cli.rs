use std::fs;
use std::path::{Path, PathBuf};

use ore_kex_cli::document::Document;
use ore_kex_cli::{run, EXIT_CORRUPT, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use tempfile::TempDir;

const SMALL: [&str; 6] = ["--dL", "8", "--dPQ", "3", "--nu", "3"];

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("ore-kex").chain(args.iter().copied()), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8_lossy(&out).into_owned(),
        stderr: String::from_utf8_lossy(&err).into_owned(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Generates parameters and a key pair in `dir` and returns
/// (params, key, public) paths.
fn keygen(dir: &Path, seed: &str) -> (PathBuf, PathBuf, PathBuf) {
    let (params, key, public) = (dir.join("params.txt"), dir.join("key.txt"), dir.join("public.txt"));
    let mut args = vec!["keygen", "--seed", seed];
    args.extend(SMALL);
    args.extend([
        "--params-out",
        path_str(&params),
        "--key-out",
        path_str(&key),
        "--public-out",
        path_str(&public),
    ]);
    let o = cli(&args);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    (params, key, public)
}

#[test]
fn same_seed_gives_identical_output() {
    for command in ["exchange", "three-pass"] {
        let mut args = vec![command, "--seed", "11"];
        args.extend(SMALL);
        let a = cli(&args);
        let b = cli(&args);
        assert_eq!(a.code, EXIT_OK, "{}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
        args[2] = "12";
        assert_ne!(cli(&args).stdout, a.stdout);
    }
    let zkp = ["zkp", "--seed", "3", "--rounds", "8"];
    assert_eq!(cli(&zkp).stdout, cli(&zkp).stdout);
}

#[test]
fn exchange_output_is_a_readable_document() {
    let mut args = vec!["exchange", "--seed", "5"];
    args.extend(SMALL);
    let o = cli(&args);
    let doc = Document::parse(&o.stdout).unwrap();
    assert_eq!(doc.seed, Some(5));
    assert_eq!(doc.get("agreed").unwrap(), "yes");
    assert_eq!(doc.get("nu").unwrap(), "3");
    for name in ["L", "P", "Q", "key", "alice A_part", "bob B_part"] {
        doc.poly(name).unwrap();
    }
    assert!(o.stdout.lines().nth(1).unwrap().starts_with("ring skew p=5 k=3"));
}

#[test]
fn exchange_reuses_a_parameter_file() {
    let dir = TempDir::new().unwrap();
    let (params, _, _) = keygen(dir.path(), "1");
    let o = cli(&["exchange", "--params", path_str(&params), "--seed", "2"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let doc = Document::parse(&o.stdout).unwrap();
    let stored = Document::read(&params).unwrap();
    assert_eq!(doc.get("L").unwrap(), stored.get("L").unwrap());
}

#[test]
fn encryption_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let (params, key, public) = keygen(dir.path(), "21");
    let ct = dir.path().join("ct.txt");
    let message = "attack at dawn \u{2603}";
    let o = cli(&[
        "encrypt", "--params", path_str(&params), "--public", path_str(&public),
        "--message", message, "--seed", "22", "--out", path_str(&ct),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let o = cli(&["decrypt", "--params", path_str(&params), "--key", path_str(&key), "--ciphertext", path_str(&ct)]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.stdout, message);

    // Replace p_bob by a different polynomial: decryption must not succeed quietly.
    let text = fs::read_to_string(&ct).unwrap();
    let corrupted: String = text
        .lines()
        .map(|l| if l.starts_with("p_bob:") { "p_bob: d1^5 + [1,2,3]*d2 + 1".to_owned() } else { l.to_owned() })
        .collect::<Vec<_>>()
        .join("\n");
    fs::write(&ct, corrupted).unwrap();
    let o = cli(&["decrypt", "--params", path_str(&params), "--key", path_str(&key), "--ciphertext", path_str(&ct)]);
    assert_eq!(o.code, EXIT_CORRUPT, "{}", o.stdout);
}

#[test]
fn signatures_through_files() {
    let dir = TempDir::new().unwrap();
    let (params, key, public) = keygen(dir.path(), "31");
    let msg_file = dir.path().join("msg.bin");
    fs::write(&msg_file, [0u8, 255, 7, 7, 42]).unwrap();
    for digest in [None, Some("sha256")] {
        let sig = dir.path().join("sig.txt");
        let mut args = vec![
            "sign", "--params", path_str(&params), "--key", path_str(&key),
            "--message-file", path_str(&msg_file), "--seed", "32", "--out", path_str(&sig),
        ];
        if let Some(d) = digest {
            args.extend(["--digest", d]);
        }
        assert_eq!(cli(&args).code, EXIT_OK);

        let verify = |message: &[&str]| {
            let mut args = vec![
                "verify", "--params", path_str(&params), "--public", path_str(&public),
                "--signature", path_str(&sig),
            ];
            args.extend(message);
            if let Some(d) = digest {
                args.extend(["--digest", d]);
            }
            cli(&args)
        };
        let o = verify(&["--message-file", path_str(&msg_file)]);
        assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "valid\n"));
        assert_eq!(verify(&[]).code, EXIT_OK);
        let o = verify(&["--message", "something else"]);
        assert_eq!((o.code, o.stdout.as_str()), (EXIT_FAILED, "invalid\n"));
    }
}

#[test]
fn key_file_must_match_its_public_key() {
    let dir = TempDir::new().unwrap();
    let (params, key, _) = keygen(dir.path(), "41");
    let text = fs::read_to_string(&key).unwrap();
    let edited: String = text
        .lines()
        .map(|l| if l.starts_with("f:") { "f: [1,2,3,4]" } else { l })
        .collect::<Vec<_>>()
        .join("\n");
    fs::write(&key, edited).unwrap();
    let o = cli(&["sign", "--params", path_str(&params), "--key", path_str(&key), "--message", "x", "--seed", "1"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("does not match"), "{}", o.stderr);
}

#[test]
fn identification_verdicts() {
    let honest = cli(&["zkp", "--seed", "1", "--rounds", "10"]);
    assert_eq!(honest.code, EXIT_OK);
    let doc = Document::parse(&honest.stdout).unwrap();
    assert_eq!(doc.get("accepted_rounds").unwrap(), "10/10");
    for prover in ["split", "trivial"] {
        let o = cli(&["zkp", "--seed", "1", "--rounds", "20", "--prover", prover]);
        assert_eq!(o.code, EXIT_FAILED, "{prover}");
        assert!(o.stdout.contains("verdict: reject"));
    }
}

#[test]
fn weak_key_check() {
    let o = cli(&["check-weak", "--poly", "x1*d1 + 3"]);
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_FAILED, "grading: [0,0,0]\n"));
    let o = cli(&["check-weak", "--poly", "x1*d2 + x2*d1"]);
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "grading: none\n"));
    let l = "3*x2^2 - 5*d2^2 - x2*d3 - x3 - d2";
    let o = cli(&["check-weak", "--poly", "-5*x3^2 - 2*x1*d3 + 34", "--l", l]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.ends_with("screen: accept\n"));
    assert_eq!(cli(&["check-weak", "--ring", "f125-skew2", "--poly", "d1"]).code, EXIT_USAGE);
}

#[test]
fn estimates() {
    let o = cli(&["estimate", "--dL", "30", "--dPQ", "5", "--nu", "10"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("secret_param: 1.247955e8"), "{}", o.stdout);
    assert!(o.stdout.contains("key_size_kb: 46"));
    let o = cli(&["estimate", "--table"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout.matches("PASS").count(), 10);
    assert_eq!(cli(&["estimate", "--dL", "30"]).code, EXIT_USAGE);
}

#[test]
fn challenge_files_replay() {
    let dir = TempDir::new().unwrap();
    for (protocol, seed) in [("exchange", "7"), ("three-pass", "8")] {
        let mut args = vec!["challenge", "--protocol", protocol, "--seed", seed, "--out-dir", path_str(dir.path())];
        args.extend(SMALL);
        assert_eq!(cli(&args).code, EXIT_OK);
        let public = dir.path().join(format!("challenge-{protocol}-{seed}.txt"));
        let answer = dir.path().join(format!("challenge-{protocol}-{seed}-answer.txt"));
        let replay = || cli(&["challenge", "--replay", path_str(&public), path_str(&answer)]);
        assert_eq!(replay().stdout, "replay: ok\n");

        let text = fs::read_to_string(&public).unwrap();
        fs::write(&public, text.replacen("+ [", "+ 2*[", 1)).unwrap();
        let o = replay();
        assert_ne!(o.code, EXIT_OK, "{}", o.stdout);
    }
}

#[test]
fn usage_errors() {
    assert_eq!(cli(&[]).code, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(cli(&["exchange"]).code, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
    assert_eq!(cli(&["exchange", "--seed", "1", "--ring", "weyl1-f7"]).code, EXIT_USAGE);
    assert_eq!(cli(&["exchange", "--seed", "1", "--ring", "weyl3-f70"]).code, EXIT_USAGE);
    let o = cli(&["exchange", "--params", "/nonexistent/params.txt", "--seed", "1"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.starts_with("error: cannot read"));

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "# ore-kex v1\nring skew p=5 k=3 m=[3,3,0,1] sigma=[2,1]\nseed 1 rng=pcg\n").unwrap();
    assert_eq!(cli(&["exchange", "--params", path_str(&bad), "--seed", "1"]).code, EXIT_USAGE);
}

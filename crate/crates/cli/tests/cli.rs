use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use weylmod_cli::{run, EXIT_FALSE, EXIT_INPUT, EXIT_OK};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(p).unwrap()
}

fn go(args: &[&str]) -> weylmod_cli::CliOutput {
    run(args)
}

#[test]
fn golden_rho() {
    let out = go(&["rho", &data("exweyl.q"), "--word", "2 3 1 3 4 1"]);
    assert_eq!((out.code, out.stdout), (EXIT_OK, golden("rho.txt")));
    assert_eq!(golden("rho.txt"), "(0,2) (0,3) (1,1) (1,3) (1,4) (2,1)\n");
}

#[test]
fn golden_embed() {
    let out = go(&[
        "embed",
        &data("exweyl.q"),
        "--m",
        "1:3",
        "--u",
        "0:2,0:3,0:4",
    ]);
    assert_eq!((out.code, out.stdout), (EXIT_FALSE, golden("embed.txt")));
    assert_eq!(golden("embed.txt"), "NO: requires (0,4)^2, U provides 1\n");
    let out = go(&[
        "embed",
        &data("exweyl.q"),
        "--m",
        "1:3",
        "--u",
        "0:2,0:3,0:4",
        "--trace",
    ]);
    assert_eq!(out.stdout, golden("embed_trace.txt"));
}

#[test]
fn golden_leftmost() {
    let out = go(&["leftmost", &data("exweyl.q"), "--word", "2 3 1 2 1"]);
    assert_eq!((out.code, out.stdout), (EXIT_OK, golden("leftmost.txt")));
    assert_eq!(golden("leftmost.txt"), "2 3 2\n");
}

#[test]
fn golden_dot() {
    let out = go(&["ar-dot", &data("a2.q"), "--slices", "2"]);
    assert_eq!(out.stdout, golden("a2.dot"));
}

#[test]
fn exit_codes() {
    let exweyl = data("exweyl.q");
    assert_eq!(go(&["reduced", &exweyl, "--word", "1 1"]).code, EXIT_FALSE);
    assert_eq!(go(&["reduced", &exweyl, "--word", "1 2"]).code, EXIT_OK);
    assert_eq!(go(&["closed", &exweyl, "--word", "3 1 3"]).code, EXIT_FALSE);
    assert_eq!(
        go(&["closed", &exweyl, "--excluded", "0:1,0:3"]).code,
        EXIT_OK
    );
    assert_eq!(go(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(
        go(&["enumerate", &data("a3.q"), "--max-len", "0", "--verify"]).code,
        EXIT_OK
    );
    assert_eq!(go(&["oracle-check", &data("a2.q")]).code, EXIT_OK);
    assert_eq!(go(&["oracle-check", &exweyl]).code, EXIT_INPUT);
    assert_eq!(
        go(&["coxmat", &data("kronecker.cartan")]).stdout,
        "1 inf\ninf 1\n"
    );
}

#[test]
fn parse_errors_name_a_location() {
    let dir = std::env::temp_dir().join(format!("weylmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("n 3\narrows: 1 2; 3 2\n", "line 2, token `3 2`"),
        ("n 3\narrows: 1 2; 2 x\n", "line 2, token `x`"),
        ("cartan:\n2 -1\n-1 2 0\n", "line 3"),
        ("\nfoo 3\n", "line 2, token `foo`"),
    ];
    for (k, (src, location)) in cases.iter().enumerate() {
        let path = dir.join(format!("bad{k}.q"));
        std::fs::write(&path, src).unwrap();
        let out = go(&["coxmat", path.to_str().unwrap()]);
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.stderr.contains(location), "{src:?}: {}", out.stderr);
        assert_eq!(out.stderr.lines().count(), 1);
    }
    let exweyl = data("exweyl.q");
    for (args, location) in [
        (
            vec!["rho", &exweyl, "--word", "1 7"],
            "--word: line 1, token `7`",
        ),
        (
            vec!["embed", &exweyl, "--m", "1;3", "--u", "0:1"],
            "--m: line 1, token `1;3`",
        ),
        (
            vec!["embed", &exweyl, "--m", "1:3", "--u", "0:1,x:2"],
            "--u: line 1, token `x:2`",
        ),
    ] {
        let out = go(&args);
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.stderr.contains(location), "{args:?}: {}", out.stderr);
    }
}

fn random_word(rng: &mut ChaCha8Rng, n: usize) -> String {
    let len = rng.gen_range(0..7);
    (0..len)
        .map(|_| rng.gen_range(1..=n).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn random_vertices(rng: &mut ChaCha8Rng, n: usize, count: usize) -> String {
    (0..count)
        .map(|_| format!("{}:{}", rng.gen_range(0..3), rng.gen_range(1..=n)))
        .collect::<Vec<_>>()
        .join(",")
}

#[test]
fn json_and_text_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let files = [("exweyl.q", 4), ("a3.q", 3), ("kronecker.q", 2)];
    let mut compared = 0;
    while compared < 100 {
        let (file, n) = *files.choose(&mut rng).unwrap();
        let path = data(file);
        let mut args: Vec<String> = match rng.gen_range(0..5) {
            0 => vec![
                "leftmost".into(),
                path,
                "--word".into(),
                random_word(&mut rng, n),
            ],
            1 => vec![
                "reduced".into(),
                path,
                "--word".into(),
                random_word(&mut rng, n),
            ],
            2 => vec![
                "cmp".into(),
                path,
                "--w1".into(),
                random_word(&mut rng, n),
                "--w2".into(),
                random_word(&mut rng, n),
            ],
            3 => {
                let m = random_vertices(&mut rng, n, 1);
                let u_size = rng.gen_range(1..5);
                let u = random_vertices(&mut rng, n, u_size);
                vec!["embed".into(), path, "--m".into(), m, "--u".into(), u]
            }
            _ => vec![
                "closed".into(),
                path,
                "--word".into(),
                random_word(&mut rng, n),
            ],
        };
        let text = run(&args);
        args.insert(0, "--json".into());
        let json_out = run(&args);
        assert_eq!(text.code, json_out.code, "{args:?}");
        if text.code == EXIT_INPUT {
            // Random vertices may be zero modules; both modes must reject them.
            continue;
        }
        let v: Value = serde_json::from_str(&json_out.stdout).unwrap();
        assert_eq!(v["exit"], text.code, "{args:?}");
        let agrees = match args[1].as_str() {
            "leftmost" => {
                let l: Vec<String> = v["leftmost"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.to_string())
                    .collect();
                text.stdout.trim() == l.join(" ")
            }
            "reduced" => v["reduced"].as_bool().unwrap() == (text.stdout.trim() == "reduced"),
            "cmp" => v["order"].as_str().unwrap() == text.stdout.trim(),
            "embed" => v["embeds"].as_bool().unwrap() == text.stdout.starts_with("YES"),
            _ => {
                v["closed"].as_bool().unwrap()
                    == text.stdout.lines().last().unwrap().starts_with("closed")
            }
        };
        assert!(agrees, "{args:?}: {} vs {}", text.stdout, json_out.stdout);
        compared += 1;
    }
}

#[test]
fn help_is_not_an_error() {
    let out = go(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("embed"));
}

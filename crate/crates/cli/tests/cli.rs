use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn binowords(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binowords"))
        .args(args)
        .env_remove("BINOWORDS_PREFIX_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = binowords(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

/// `(n, value)` rows of a complexity CSV.
fn rows(csv: &str) -> Vec<(usize, u64)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let mut f = l.split(',');
            (f.next().unwrap().parse().unwrap(), f.next().unwrap().parse().unwrap())
        })
        .collect()
}

fn thue_morse(len: usize) -> Vec<u8> {
    (0..len).map(|i: usize| (i.count_ones() % 2) as u8).collect()
}

fn distinct_factors(w: &[u8], n: usize) -> usize {
    w.windows(n).collect::<BTreeSet<_>>().len()
}

#[test]
fn generate_prefixes() {
    assert_eq!(stdout(&["generate", "tm", "8"]), "01101001\n");
    assert_eq!(stdout(&["generate", "fib", "19"]), "0100101001001010010\n");
    assert_eq!(stdout(&["generate", "h", "22"]), "0112122122212222122222\n");
}

#[test]
fn bad_spec_is_a_usage_error_naming_the_token() {
    let out = binowords(&["generate", "tmm", "8"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("tmm"));
    assert_eq!(code(&binowords(&["complexity", "tm", "--n-max", "4"])), 2);
    assert_eq!(code(&binowords(&["complexity", "tm", "--binomial", "0", "--n-max", "4"])), 2);
}

#[test]
fn complexity_tables() {
    let tm = rows(&stdout(&["complexity", "tm", "--binomial", "2", "--n-max", "16"]));
    assert_eq!(tm.len(), 17);
    assert!(tm.contains(&(8, 9)) && tm.contains(&(6, 8)));
    let fib = rows(&stdout(&["complexity", "fib", "--factor", "--n-max", "10"]));
    assert_eq!(fib, (0..=10).map(|n| (n, n as u64 + 1)).collect::<Vec<_>>());
    let champ = rows(&stdout(&["complexity", "champ", "--binomial", "1", "--n-max", "10"]));
    assert_eq!(champ, (0..=10).map(|n| (n, n as u64 + 1)).collect::<Vec<_>>());
    let from = rows(&stdout(&["complexity", "tm", "--factor", "--from", "5", "--n-max", "7"]));
    let t = thue_morse(1 << 12);
    let expected: Vec<(usize, u64)> = (5..=7).map(|n| (n, distinct_factors(&t, n) as u64)).collect();
    assert_eq!(from, expected);
}

#[test]
fn complexity_json_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sub/tm.json");
    stdout(&["complexity", "tm", "--abelian", "--n-max", "6", "--format", "json", "--output", path.to_str().unwrap()]);
    let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["values"], serde_json::json!([1, 2, 3, 2, 3, 2, 3]));
    let names: Vec<_> = fs::read_dir(path.parent().unwrap()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names, vec![std::ffi::OsString::from("tm.json")]);
}

#[test]
fn rauzy_tm_order_six_dot() {
    let dot = stdout(&["rauzy", "tm", "6", "--dot"]);
    let vertices = dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    assert_eq!((vertices, edges), (3, 6));
}

#[test]
fn rauzy_fib_order_five_json() {
    let value: serde_json::Value = serde_json::from_str(&stdout(&["rauzy", "fib", "5", "--json"])).unwrap();
    assert_eq!(value["vertex_count"], 2);
    assert_eq!(value["edge_count"], 4);
}

#[test]
fn rauzy_tm_order_one_matches_enumeration() {
    let t = thue_morse(1 << 12);
    let pairs: BTreeSet<&[u8]> = t.windows(2).collect();
    let weights: BTreeSet<u8> = t.iter().copied().collect();
    let value: serde_json::Value = serde_json::from_str(&stdout(&["rauzy", "tm", "1", "--json"])).unwrap();
    assert_eq!(value["vertex_count"], weights.len());
    assert_eq!(value["edge_count"], pairs.len());
    let labels: BTreeSet<String> = value["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["label"].as_str().unwrap().to_string())
        .collect();
    let expected: BTreeSet<String> = pairs.iter().map(|p| format!("{}{}", p[0], p[1])).collect();
    assert_eq!(labels, expected);
}

#[test]
fn rauzy_summary_warns_on_periodic_input() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("alt.txt");
    fs::write(&file, "0 -> 01\n1 -> 01\n").unwrap();
    let spec = format!("image({}, tm)", file.display());
    let out = binowords(&["rauzy", &spec, "10", "--summary", "--k", "1"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("periodic"));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("vertices=1 edges=2"));

    let fib = binowords(&["rauzy", "fib", "10", "--summary", "--k", "2"]);
    assert!(fib.stderr.is_empty());
    assert!(String::from_utf8(fib.stdout).unwrap().contains("#X=4"));
}

#[test]
fn classes_partition_the_factors() {
    let text = stdout(&["classes", "tm", "--k", "2", "--n", "6"]);
    let sizes: usize = text
        .lines()
        .map(|l| l.split_once(": ").unwrap().1.split(' ').count())
        .sum();
    assert_eq!(sizes, distinct_factors(&thue_morse(1 << 12), 6));
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn morphism_classification() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("tm.txt");
    fs::write(&file, "# Thue-Morse\n0 -> 01\n1 -> 10\n").unwrap();
    let value: serde_json::Value = serde_json::from_str(&stdout(&[
        "morphism",
        file.to_str().unwrap(),
        "--power",
        "2",
        "--apply",
        "0",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(value["class"]["rank"], 1);
    assert_eq!(value["class"]["is_uniform"], true);
    assert_eq!(value["adjacency"], serde_json::json!([[2, 2], [2, 2]]));
    assert_eq!(value["image"], "0110");
    assert_eq!(code(&binowords(&["morphism", "/nonexistent/m.txt"])), 4);
}

#[test]
fn factorize_and_decode() {
    let text = stdout(&["factorize", "010", "--j", "1"]);
    assert_eq!(text.lines().count(), 2);
    let text = stdout(&["factorize", "0110100", "--j", "1", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["factorizations"][0]["ancestor"], "0110");
    assert_eq!(code(&binowords(&["factorize", "0120"])), 2);

    let t: String = thue_morse(64).iter().map(|&c| char::from(b'0' + c)).collect();
    let value: serde_json::Value =
        serde_json::from_str(&stdout(&["decode", &t, "--k", "2", "--format", "json"])).unwrap();
    assert_eq!(value["decodings"][0]["u"], "");
    assert_eq!(value["decodings"][0]["y"], t[..16]);
    assert_eq!(code(&binowords(&["decode", "0000000000", "--k", "1"])), 4);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&binowords(&["verify", "michel", "--quick"])), 0);
    let out = binowords(&["verify", "period-doubling", "--json"]);
    assert_eq!(code(&out), 1);
    let reports: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports[0]["suite"], "period-doubling");
    assert_eq!(code(&binowords(&["verify", "no-such-suite"])), 2);
    assert!(stdout(&["verify", "--list"]).lines().any(|l| l == "ochsenschlager"));
}

#[test]
fn stabilization_failure_has_its_own_code() {
    let out = Command::new(env!("CARGO_BIN_EXE_binowords"))
        .args(["complexity", "tm", "--factor", "--n-max", "8"])
        .env("BINOWORDS_PREFIX_CAP", "64")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_binowords"))
        .args(["generate", "tm", "4"])
        .env("BINOWORDS_PREFIX_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["complexity", "tau-g", "--binomial", "2", "--n-max", "20", "--format", "json"][..],
        &["rauzy", "tm", "9", "--json"],
        &["classes", "fib", "--k", "1", "--n", "7", "--format", "json"],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("exp.ini");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn batch_writes_every_task() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "generator = tm\noutput = results\nformats = csv, json, dot\n\n\
         [complexity.b2]\nkind = binomial\nk = 2\nn_max = 16\n\n\
         [rauzy.small]\nn = 1..3\n\n\
         [rauzy.fib]\ngenerator = fib\nn = 5\n\n\
         [verify.michel]\nsuite = michel\n\n\
         [decode.k2]\nk = 2\nlength = 64\n",
    );
    let out = binowords(&["batch", &config]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let results = dir.path().join("results");
    let csv = fs::read_to_string(results.join("complexity-b2.csv")).unwrap();
    assert_eq!(csv, stdout(&["complexity", "tm", "--binomial", "2", "--n-max", "16"]));
    assert_eq!(
        fs::read_to_string(results.join("rauzy-small-n2.dot")).unwrap(),
        stdout(&["rauzy", "tm", "2", "--dot"])
    );
    assert_eq!(fs::read_to_string(results.join("rauzy-fib.csv")).unwrap(), "n,vertices,edges,loops\n5,2,4,2\n");
    for name in ["rauzy-small.csv", "rauzy-small-n3.json", "verify-michel.txt", "verify-michel.json", "decode-k2.json"] {
        assert!(results.join(name).exists(), "{name}");
    }
    let leftovers = fs::read_dir(&results)
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().ends_with(".tmp"))
        .count();
    assert_eq!(leftovers, 0);
}

#[test]
fn batch_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let failing = write_config(dir.path(), "generator = pd\noutput = o\n[verify.pd]\nsuite = period-doubling\n");
    assert_eq!(code(&binowords(&["batch", &failing])), 1);
    let unknown = write_config(dir.path(), "generator = tm\noutput = o\n[rauzy.a]\nn = 2\nshape = round\n");
    assert_eq!(code(&binowords(&["batch", &unknown])), 2);
    let undefined = write_config(dir.path(), "output = o\n[rauzy.a]\nn = 2\n");
    assert_eq!(code(&binowords(&["batch", &undefined])), 2);
    let capped = write_config(dir.path(), "generator = tm\noutput = o\n[complexity.a]\nkind = factor\nn_max = 4\n");
    let out = Command::new(env!("CARGO_BIN_EXE_binowords"))
        .args(["batch", &capped])
        .env("BINOWORDS_PREFIX_CAP", "64")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

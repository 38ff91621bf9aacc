use std::path::PathBuf;
use std::process::{Command, Output};

use cactus_core::format::write_edgelist;
use cactus_core::oracle::{enumerate_small, isomorphic};
use cactus_core::Network;
use tempfile::TempDir;

fn cactus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cactus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> String {
        let path: PathBuf = self.0.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }
}

const TRIANGLE: &str = "cactus-v1 directed\na r t\na r u\na u t\n";
// A pair with equal F, told apart by Q.
const EQUAL_F_FIRST: &str = "cactus-v1 directed\na p w\na p w2\na w l1\na w e1\na e1 t\na w2 t\na t l2\n";
const EQUAL_F_SECOND: &str = "cactus-v1 directed\na p w\na p t\na w l1\na w t\na t e\na e l2\n";

#[test]
fn compute_q_of_triangle() {
    let files = Files::new();
    let tri = files.put("tri.txt", TRIANGLE);
    let o = cactus(&["compute", "--invariant", "Q", "--input", &tri]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "q^2*r + q*r*y + s + y\n");
}

#[test]
fn compute_b_of_stemmed_cherry() {
    let files = Files::new();
    let cherry = files.put("cherry.nwk", "((a,b));\n");
    let o = cactus(&["compute", "--invariant", "B", "--input", &cherry]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x^2 + 2*y\n");
}

#[test]
fn compute_labelled_bl() {
    let files = Files::new();
    let cherry = files.put("cherry.nwk", "(a,b);");
    let o = cactus(&["compute", "--invariant", "Bl", "--input", &cherry]);
    assert_eq!(stdout(&o), "x:a*x:b + y\n");
}

#[test]
fn json_report() {
    let files = Files::new();
    let tri = files.put("tri.txt", TRIANGLE);
    let o = cactus(&["compute", "--invariant", "Q", "--input", &tri, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["invariant"], "Q");
    assert_eq!(v["canonical"], "q^2*r + q*r*y + s + y");
    assert_eq!(v["degree"], 3);
    assert_eq!(v["variables"], serde_json::json!(["q", "r", "s", "y"]));
    assert_eq!(v["n_leaves"], 1);
    assert_eq!(v["k_reticulations"], 1);
}

#[test]
fn f_on_elementary_input_notes_incompleteness() {
    let files = Files::new();
    let tri = files.put("tri.txt", TRIANGLE);
    let o = cactus(&["compute", "--invariant", "F", "--input", &tri]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "r^2 + r*y + s + y\n");
    assert!(stderr(&o).contains("not known to be complete"));
}

#[test]
fn compare_equal_f_pair() {
    let files = Files::new();
    let a = files.put("a.txt", EQUAL_F_FIRST);
    let b = files.put("b.txt", EQUAL_F_SECOND);
    let o = cactus(&["compare", "--invariant", "F", &a, &b]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines[0], "EQUAL");
    assert_eq!(lines[1], lines[2]);

    let o = cactus(&["compare", "--invariant", "Q", &a, &b]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("DISTINCT\n"));
}

#[test]
fn compare_qu_of_relabelled_triangles() {
    let files = Files::new();
    let a = files.put("a.txt", "cactus-v1 undirected\ne a b\ne b c\ne c a\n");
    let b = files.put("b.txt", "cactus-v1 undirected\ne 3 1\ne 2 3\ne 1 2\n");
    let o = cactus(&["compare", "--invariant", "Qu", &a, &b]);
    assert_eq!(o.status.code(), Some(0));
    let o = cactus(&["compute", "--invariant", "Qu", "--factored", "--input", &a]);
    assert_eq!(stdout(&o), "(q^2*r + q*r*y + s + y)^6\n");
}

#[test]
fn kind_mismatch_is_an_input_error() {
    let files = Files::new();
    let a = files.put("a.txt", TRIANGLE);
    let b = files.put("b.txt", "cactus-v1 undirected\ne a b\n");
    let o = cactus(&["compare", "--invariant", "Q", &a, &b]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stderr(&o).lines().count(), 1);
}

#[test]
fn validate_reports_classification() {
    let files = Files::new();
    let tri = files.put("tri.txt", TRIANGLE);
    let o = cactus(&["validate", &tri]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in ["n: 1", "k: 1", "elementary: true", "tree: false"] {
        assert!(text.lines().any(|l| l == line), "missing {line}");
    }
}

#[test]
fn validate_points_at_the_offending_line() {
    let files = Files::new();
    let cyclic = files.put("cyc.txt", "cactus-v1 directed\na x y\na y x\n");
    let o = cactus(&["validate", &cyclic]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let bad = files.put("bad.txt", "cactus-v1 directed\nq x y\n");
    let o = cactus(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn missing_file_is_an_input_error() {
    let o = cactus(&["validate", "/nonexistent/cactus.txt"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cactus(&[]).status.code(), Some(2));
    assert_eq!(
        cactus(&["compute", "--invariant", "X", "--input", "f"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cactus(&["compare", "--invariant", "B", "a", "b"]).status.code(),
        Some(2)
    );
    let o = cactus(&["generate", "--leaves", "3", "--rets", "1", "--elementary", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generate_is_deterministic_and_valid() {
    let args = [
        "generate",
        "--leaves",
        "6",
        "--rets",
        "2",
        "--elementary",
        "0.3",
        "--seed",
        "11",
    ];
    let first = cactus(&args);
    let second = cactus(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let files = Files::new();
    let g = files.put("g.txt", &stdout(&first));
    let o = cactus(&["validate", &g]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "k: 2"));
}

#[test]
fn enumerate_streams_the_catalogue() {
    let o = cactus(&["enumerate", "--max-vertices", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let records = stdout(&o).matches("cactus-v1 directed").count();
    assert_eq!(records, enumerate_small(4, true).unwrap().len());

    let o = cactus(&["enumerate", "--max-vertices", "9"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn q_verdicts_match_the_oracle_on_the_catalogue() {
    let cat = enumerate_small(5, true).unwrap();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let files = Files::new();
    let paths: Vec<String> = cat
        .iter()
        .enumerate()
        .map(|(i, n)| files.put(&format!("{i}.txt"), &write_edgelist(&Network::from(n.clone()))))
        .collect();
    for i in 0..cat.len() {
        for j in i..cat.len() {
            let code = cactus_cli::run(
                ["cactus", "compare", "--invariant", "Q", &paths[i], &paths[j]],
                &mut out,
                &mut err,
            );
            let iso = isomorphic(&cat[i], &cat[j], false).unwrap();
            assert_eq!(code == 0, iso, "{i} vs {j}");
        }
    }
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const EXAMPLE: &str = "Thai food was great, delicousr and not expensive, we loved it. We visited 3 beach resorts , they are highly recommended... We had \"Fire-Vodka\" !!!";

fn keypartx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_keypartx")).args(args).output().unwrap()
}

fn write_example(dir: &Path) -> String {
    let path = dir.join("example.csv");
    let mut w = String::from("id,text\n");
    w.push_str(&format!("1,\"{}\"\n", EXAMPLE.replace('"', "\"\"")));
    fs::write(&path, w).unwrap();
    path.display().to_string()
}

fn run_loose(input: &str, out: &Path) -> Output {
    keypartx(&["run", "--input", input, "--k-weight", "1", "--k-core", "0", "--out-dir", out.to_str().unwrap()])
}

fn manifest(out: &Path) -> serde_json::Value {
    serde_json::from_slice(&fs::read(out.join("run_manifest.json")).unwrap()).unwrap()
}

#[test]
fn default_reduction_of_example_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example(dir.path());
    let out = dir.path().join("out");
    let o = keypartx(&["run", "--input", &input, "--out-dir", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(manifest(&out)["status"], "empty_after_reduction");
    assert!(out.join("graph_full.json").exists());
    assert!(!out.join("partition.json").exists());
}

#[test]
fn loose_reduction_keeps_example_graph() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example(dir.path());
    let out = dir.path().join("out");
    let o = run_loose(&input, &out);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = manifest(&out);
    assert_eq!(m["status"], "ok");
    assert_eq!(m["counts"]["full"]["nodes"], 8);
    assert_eq!(m["counts"]["full"]["edges"], 8);
    assert_eq!(m["counts"]["full"]["directed"], 5);
    assert_eq!(m["corpus"]["sha256"].as_str().unwrap().len(), 64);
    for name in ["graph_full.json", "graph_full.graphml", "graph_full.dot", "graph_reduced.json", "partition.json", "report.csv"] {
        assert!(out.join(name).exists(), "{name}");
    }
    let partition: serde_json::Value = serde_json::from_slice(&fs::read(out.join("partition.json")).unwrap()).unwrap();
    assert!(partition["Q_raw"].as_f64().unwrap() > 0.0);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example(dir.path());
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    run_loose(&input, &a);
    run_loose(&input, &b);
    for name in ["graph_full.json", "graph_reduced.graphml", "graph_reduced.dot", "partition.json", "report.csv"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
}

#[test]
fn inspect_noun_and_top() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example(dir.path());
    let out = dir.path().join("out");
    run_loose(&input, &out);
    let graph = out.join("graph_full.json");
    let graph = graph.to_str().unwrap();
    let o = keypartx(&["inspect", graph, "--noun", "thaifood2n"]);
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("thaifood") && text.contains("great"), "{text}");
    let o = keypartx(&["inspect", graph, "--top", "2"]);
    assert!(o.status.success());
    let o = keypartx(&["inspect", graph, "--noun", "thaifod2n"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("thaifood2n"));
}

#[test]
fn unknown_text_column_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example(dir.path());
    let o = keypartx(&["run", "--input", &input, "--text-col", "review", "--out-dir", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("review"));
}

#[test]
fn k_weight_zero_is_rejected() {
    let o = keypartx(&["run", "--input", "x.csv", "--k-weight", "0"]);
    assert!(!o.status.success());
}

#[test]
fn conllu_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.conllu");
    fs::write(
        &path,
        "# newdoc id = a\n1\tThe\tthe\tDET\t_\t_\t_\t_\t_\t_\n2\troom\troom\tNOUN\t_\t_\t_\t_\t_\t_\n3\twas\tbe\tAUX\t_\t_\t_\t_\t_\t_\n4\tclean\tclean\tADJ\t_\t_\t_\t_\t_\t_\n",
    )
    .unwrap();
    let out = dir.path().join("out");
    let o = keypartx(&[
        "run", "--input", path.to_str().unwrap(), "--format", "conllu", "--k-weight", "1", "--k-core", "0",
        "--out-dir", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let g = fs::read_to_string(out.join("graph_full.json")).unwrap();
    assert!(g.contains("clean2a") && g.contains("room2n"));
}

#[test]
fn train_tagger_on_small_treebank() {
    let dir = tempfile::tempdir().unwrap();
    let bank = dir.path().join("bank.txt");
    fs::write(&bank, "The/OTHER room/NOUN was/VERB clean/ADJ ./OTHER\nWe/PRON loved/VERB it/PRON ./OTHER\n").unwrap();
    let model = dir.path().join("tagger.json");
    let o = keypartx(&[
        "train-tagger", "--treebank", bank.to_str().unwrap(), "--epochs", "3", "--holdout", "0",
        "--out", model.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(model.exists());
}

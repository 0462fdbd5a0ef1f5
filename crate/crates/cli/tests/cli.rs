use std::io::Write;
use std::process::{Command, Output, Stdio};

fn jenga(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_jenga"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} ")))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
        .to_string()
}

#[test]
fn gen_writes_the_box_description() {
    let o = jenga(&["gen", "--n", "5", "--k", "3"], None);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n 5\n#...#\n#.#.#\n#.#.#\n#####\n##...\n");
    let o = jenga(&["gen", "--n", "2", "--k", "2", "--initial"], None);
    assert_eq!(stdout(&o), "n 2\n##\n##\n");
}

#[test]
fn genus_of_a_file() {
    let q = stdout(&jenga(&["gen", "--n", "5", "--k", "3"], None));
    let o = jenga(&["genus", "--in", "-"], Some(&q));
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(value(&out, "genus_euler"), "10");
    assert_eq!(value(&out, "genus_descartes"), "10");
}

#[test]
fn search_reports_the_maximum() {
    let o = jenga(&["search", "--n", "3", "--k", "3", "--threads", "2"], None);
    assert!(o.status.success());
    assert!(stdout(&o).contains("max_genus 3 (matches closed form)\n"));
    let budget = jenga(&["search", "--n", "3", "--k", "3", "--max-states", "5"], None);
    assert!(stdout(&budget).contains("lower bound"));
}

#[test]
fn json_has_the_same_keys() {
    let text = stdout(&jenga(&["genus", "--n", "6", "--k", "3"], None));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&jenga(&["genus", "--n", "6", "--k", "3", "--json"], None)))
            .unwrap();
    let keys: Vec<&str> = text.lines().map(|l| l.split(' ').next().unwrap()).collect();
    let obj = json.as_object().unwrap();
    assert_eq!(obj.keys().map(String::as_str).collect::<Vec<_>>(), keys);
    assert_eq!(obj["genus_euler"], 12);
}

#[test]
fn census_compares_closed_forms() {
    let out = stdout(&jenga(&["census", "--n", "6", "--k", "3", "--exclude-topmost"], None));
    assert_eq!(value(&out, "geometric"), "type_i=16 type_ii=40 type_iii=32");
    assert!(value(&out, "printed").ends_with("matches=false"));
    assert!(value(&out, "candidate").ends_with("matches=true"));
}

#[test]
fn exit_codes() {
    let ok = jenga(&["check", "--n", "3", "--k", "3", "--expect-genus", "3"], None);
    assert_eq!(ok.status.code(), Some(0));
    let wrong = jenga(&["check", "--n", "3", "--k", "3", "--expect-genus", "2"], None);
    assert_eq!(wrong.status.code(), Some(1));
    let malformed = jenga(&["genus", "--in", "-"], Some("n 3\n#x#\n"));
    assert_eq!(malformed.status.code(), Some(1));
    let missing = jenga(&["genus", "--in", "/nonexistent/tower"], None);
    assert_eq!(missing.status.code(), Some(1));
    assert_eq!(jenga(&["genus"], None).status.code(), Some(2));
    assert_eq!(jenga(&["genus", "--frobnicate"], None).status.code(), Some(2));
    assert_eq!(jenga(&["export", "--n", "3", "--k", "3", "--format", "stl"], None).status.code(), Some(2));
}

#[test]
fn export_is_deterministic_and_reimports() {
    let a = stdout(&jenga(&["export", "--n", "3", "--k", "3", "--format", "obj"], None));
    let b = stdout(&jenga(&["export", "--n", "3", "--k", "3", "--format", "obj"], None));
    assert_eq!(a, b);
    let v = a.lines().filter(|l| l.starts_with("v ")).count() as i64;
    let mut edges = std::collections::BTreeSet::new();
    let mut f = 0i64;
    for l in a.lines().filter(|l| l.starts_with("f ")) {
        f += 1;
        let idx: Vec<u32> = l[2..].split(' ').map(|x| x.parse().unwrap()).collect();
        for i in 0..4 {
            let (p, q) = (idx[i], idx[(i + 1) % 4]);
            edges.insert((p.min(q), p.max(q)));
        }
    }
    // genus 3 means chi = -4
    assert_eq!(v - edges.len() as i64 + f, -4);

    let off = stdout(&jenga(&["export", "--n", "2", "--k", "2", "--initial", "--format", "off"], None));
    assert!(off.starts_with("OFF\n"));
}

#[test]
fn render_puts_the_top_first() {
    let out = stdout(&jenga(&["render", "--n", "3", "--k", "3"], None));
    assert_eq!(out.lines().next(), Some("5 X #.."));
    let initial = stdout(&jenga(&["render", "--n", "2", "--k", "2", "--initial"], None));
    assert_eq!(initial, "2 Y ##\n1 X ##\n");
}

#[test]
fn deform_stays_within_bound() {
    let q = "n 3\n.#.\n#.#\n#.#\n###\n#..\n";
    let out = stdout(&jenga(&["deform", "--in", "-"], Some(q)));
    assert_eq!(value(&out, "within_bound"), "true");
    let other = "n 3\n#.#\n#.#\n.#.\n###\n#..\n";
    let o = jenga(&["deform", "--in", "-"], Some(other));
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(value(&stdout(&o), "branch"), "preprocessed");
}

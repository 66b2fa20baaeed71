use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cluster-dyn")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn qsystem_rank_one_orbit() {
    let o = run(&["qsystem", "--type", "A1~", "--init", "1,1", "--steps", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Q(1): 1,1,2,5,13,34\n"), "{}", stdout(&o));
}

#[test]
fn vanishing_layer_gives_partial_table_and_failure() {
    let o = run(&["qsystem", "--type", "A1~", "--init", "1,-1", "--steps", "5", "--signed"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Q(1): 1,-1,0\n"), "{}", stdout(&o));
}

#[test]
fn sigma_c_of_a2() {
    let o = run(&["seed", "--type", "A2", "--sigma-c"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for row in ["   0  0 -2  1", "   0  0  1 -2", "   2 -1  0  0", "  -1  2  0  0"] {
        assert!(out.contains(row), "{out}");
    }
}

#[test]
fn word_seed_json_round_trips() {
    let o = run(&["seed", "--type", "A2", "--word=-1,-2,1,2", "--json", "-"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let json = &out[out.find('{').unwrap()..];
    let doc: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(doc["indices"], serde_json::json!([-1, -2, 1, 2, 3, 4]));
    assert_eq!(doc["frozen"], serde_json::json!([-2, -1, 3, 4]));
    assert_eq!(doc["B"][0], serde_json::json!(["0", "-1/2", "1", "0", "0", "0"]));
}

#[test]
fn even_twisted_a_is_rejected() {
    let o = run(&["seed", "--type", "A2(2)"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("A2(2)"));
}

#[test]
fn unknown_tag_fails() {
    assert!(!run(&["seed", "--type", "Q7"]).status.success());
}

#[test]
fn verify_twist_passes() {
    let o = run(&["verify", "twist", "--n", "3", "--trials", "100", "--seed", "7"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS SL3: 100/100 trials"));
}

#[test]
fn verify_sigma_period_all_finite() {
    let o = run(&["verify", "sigma-period", "--type", "all-finite", "--max-rank", "8"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("sigma-period: 32 cases, 0 failed"));
}

#[test]
fn reports_are_byte_identical() {
    let dir = std::env::temp_dir();
    let paths: Vec<_> = (0..2).map(|i| dir.join(format!("cluster-dyn-report-{}-{i}.json", std::process::id()))).collect();
    for p in &paths {
        let args = ["verify", "ensemble", "--n", "2,3", "--trials", "5", "--seed", "3", "--json", p.to_str().unwrap()];
        assert!(run(&args).status.success());
    }
    let (a, b) = (std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
    assert_eq!(a, b);
    assert!(String::from_utf8_lossy(&a).contains("\"seed\": 3"));
    for p in &paths {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn mutation_carries_coordinates() {
    let o = run(&["mutate", "--type", "A1", "--seq", "1,2", "--init", "1,2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("mu_1 A: 5,2") && out.contains("mu_2 A: 5,13"), "{out}");
}

#[test]
fn type_a_orbit_conserves_invariants() {
    let o = run(&["orbit", "--type", "A3", "--steps", "4", "--seed", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn failing_check_exits_nonzero() {
    // A one-term budget cannot expand anything past the first mutation.
    let o = run(&["verify", "laurent", "--type", "A2", "--points", "5", "--steps", "4", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

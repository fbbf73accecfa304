use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn symca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symca"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Live pixels of a binary PGM written by `evolve`.
fn pgm_live(path: &Path) -> usize {
    let bytes = fs::read(path).unwrap();
    // header: P5\n<w> <h>\n255\n
    let mut newlines = 0;
    let start = bytes
        .iter()
        .position(|&b| {
            newlines += (b == b'\n') as usize;
            newlines == 3
        })
        .unwrap()
        + 1;
    bytes[start..].iter().filter(|&&b| b == 255).count()
}

fn census_column(csv: &str, col: usize) -> Vec<String> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').nth(col).unwrap().to_string())
        .collect()
}

#[test]
fn evolve_tb_writes_frames_and_census() {
    let dir = tempfile::tempdir().unwrap();
    let out = symca(&["evolve", "--rule", "tb", "--steps", "15", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let frames: Vec<_> = (0..=15)
        .map(|t| dir.path().join(format!("tb_{t:04}.pgm")))
        .collect();
    assert!(frames.iter().all(|f| f.exists()));
    let want = [1, 5, 9, 21, 29, 33, 41, 85, 117, 105, 97, 125, 141, 145, 169, 341];
    for (f, w) in frames.iter().zip(want) {
        assert_eq!(pgm_live(f), w, "{}", f.display());
    }
    let csv = fs::read_to_string(dir.path().join("census.csv")).unwrap();
    assert!(csv.starts_with("t,num_sim,num_closed,cum_sim,cum_closed,match\n"));
    assert!(census_column(&csv, 5).iter().all(|m| m == "1"));
    assert_eq!(csv.lines().count(), 17);
}

#[test]
fn evolve_zero_steps_is_the_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out = symca(&["evolve", "--rule", "ta", "--steps", "0", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let pgms: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.path().extension().is_some_and(|x| x == "pgm"))
        .collect();
    assert_eq!(pgms.len(), 1);
    assert_eq!(pgm_live(&pgms[0].path()), 1);
}

#[test]
fn evolve_ts0_populations() {
    let dir = tempfile::tempdir().unwrap();
    let out = symca(&["evolve", "--rule", "ts0", "--steps", "3", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("census.csv")).unwrap();
    assert_eq!(census_column(&csv, 1), ["1", "4", "4", "16"]);
}

#[test]
fn evolve_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let out = symca(&["evolve", "--rule", "ta", "--steps", "6", "--format", "pbm", "--out", d.path().to_str().unwrap()]);
        assert!(out.status.success());
    }
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 8);
    for n in names {
        assert_eq!(fs::read(a.path().join(&n)).unwrap(), fs::read(b.path().join(&n)).unwrap());
    }
}

#[test]
fn census_matches_for_all_builtins() {
    for rule in ["ta", "tb", "ts0"] {
        let out = symca(&["census", "--rule", rule, "--tmax", "256"]);
        assert!(out.status.success(), "{rule}");
        let text = stdout(&out);
        assert_eq!(text.lines().count(), 257);
        assert!(census_column(&text, 5).iter().all(|m| m == "1"), "{rule}");
        if rule == "ts0" {
            let cum = census_column(&text, 4);
            for k in 0..=8u32 {
                assert_eq!(cum[(1usize << k) - 1], 5u64.pow(k).to_string());
            }
        }
    }
}

#[test]
fn eval_prints_exact_fractions() {
    let first = |args: &[&str]| stdout(&symca(args)).lines().next().unwrap().to_string();
    assert_eq!(first(&["eval", "--fn", "F", "--x", "3/4"]), "5/16");
    assert_eq!(first(&["eval", "--fn", "G", "--x", "3/4"]), "11/32");
    assert_eq!(first(&["eval", "--fn", "salem", "--alpha", "1/5", "3/4"]), "9/25");
    assert_eq!(first(&["eval", "--fn", "Hk", "--k", "2", "--x", "1/2"]), "1/4");
    let f = stdout(&symca(&["eval", "--fn", "F", "--x", "3/2^2"]));
    assert!(f.contains("num_a(3)/4^2 = 5/16"), "{f}");
}

#[test]
fn eval_rejects_bad_points() {
    for x in ["0.75", "5/4", "1/3"] {
        let out = symca(&["eval", "--fn", "F", "--x", x]);
        assert_eq!(out.status.code(), Some(2), "{x}");
    }
    let out = symca(&["eval", "--fn", "salem", "--alpha", "3/2", "--x", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_grid_export() {
    let out = symca(&["eval", "--grid", "2", "--k", "2"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "x_num,x_den,F,G,H_k,L_alpha,F_decimal,G_decimal,H_k_decimal,L_alpha_decimal"
    );
    assert!(text.contains("\n3,4,5/16,11/32,"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn integrate_tables() {
    let out = symca(&["integrate", "--fn", "F", "--kmax", "1", "--format", "csv"]);
    assert_eq!(stdout(&out), "k,sum_num,sum_den,target,abs_error_decimal\n1,5,8,1/9,5.1388888888888884e-1\n");

    let out = symca(&["integrate", "--fn", "F", "--kmax", "10", "--format", "csv"]);
    assert!(out.status.success());
    let last = stdout(&out).lines().last().unwrap().to_string();
    let err: f64 = last.rsplit(',').next().unwrap().parse().unwrap();
    assert!((err - 4.53e-3).abs() < 1e-5, "{err}");

    let out = symca(&["integrate", "--fn", "G", "--kmax", "12", "--format", "csv"]);
    let errs: Vec<f64> = stdout(&out)
        .lines()
        .skip(2)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]));
    assert!(*errs.last().unwrap() < 1e-2);

    let out = symca(&["integrate", "--fn", "F", "--kmax", "3"]);
    assert!(stdout(&out).lines().next().unwrap().contains("closed_error"));
    assert_eq!(symca(&["integrate", "--fn", "F", "--kmax", "0"]).status.code(), Some(2));
}

#[test]
fn rulesearch_report() {
    let out = symca(&["rulesearch", "--rule", "a", "--horizon", "32"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["targets"][0]["target"], "ta");
    assert!(v["targets"][0]["count"].as_u64().unwrap() >= 1);
    assert_eq!(v["targets"][0]["pinned"], "000000101010");
    assert_eq!(v["pinned_ta_differs_from_ts0"], true);
    assert_eq!(symca(&["rulesearch", "--horizon", "1"]).status.code(), Some(2));
}

#[test]
fn render_spacetime_pbm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ta.pbm");
    let out = symca(&["render-spacetime", "--rule", "ta", "--steps", "15", "--format", "pbm", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("P1"));
    // 16 frames of 31x31 in a 4x4 tiling with 1-pixel gutters
    assert_eq!(lines.next(), Some("127 127"));
}

#[test]
fn json_rule_files() {
    let dir = tempfile::tempdir().unwrap();
    let rule = dir.path().join("ta.json");
    fs::write(
        &rule,
        r#"{"name": "mine", "outputs": [0,0,0,0,0,0,1,0,1,0,1,0],
            "column_order": ["1/111/1","0/111/1","1/010/1","0/011/1","0/010/1","0/010/0",
                             "1/101/1","0/101/1","1/000/1","0/001/1","0/000/1","0/000/0"]}"#,
    )
    .unwrap();
    let out_dir = dir.path().join("frames");
    let out = symca(&["evolve", "--rule", rule.to_str().unwrap(), "--steps", "3", "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(out_dir.join("census.csv")).unwrap();
    assert_eq!(csv, "t,num_sim,cum_sim\n1,1,1\n2,4,5\n3,5,10\n4,16,26\n");
    assert!(out_dir.join("mine_0003.pgm").exists());
    let census = symca(&["census", "--rule", rule.to_str().unwrap()]);
    assert_eq!(census.status.code(), Some(2));
}

#[test]
fn unknown_rule_is_a_validation_error() {
    let out = symca(&["census", "--rule", "rule30"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rule30"));
}

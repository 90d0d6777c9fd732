use std::path::Path;
use std::process::{Command, Output};

use fracwave_core::{Format, Table};

fn fracwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracwave"))
        .args(args)
        .env_remove("FRACWAVE_THREADS")
        .output()
        .expect("binary runs")
}

fn fracwave_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracwave"))
        .args(args)
        .env("FRACWAVE_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_table(path: &Path, format: Format) -> Table {
    Table::parse(&std::fs::read_to_string(path).unwrap(), format).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn cauchy_density_at_origin() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let o = fracwave(&[
        "stable-density",
        "--alpha",
        "1.0",
        "--t",
        "1.0",
        "--xmax",
        "20",
        "--n",
        "4096",
        "-o",
        p(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let t = read_table(&out, Format::Csv);
    let xs = t.column("x").unwrap();
    let w = t.column("density").unwrap();
    let i = xs
        .iter()
        .position(|&x| x == 0.0)
        .expect("x = 0 on the grid");
    assert_eq!(format!("{:.6}", w[i]), "0.318310");
    assert_eq!(t.metadata["command"], "stable-density");
    assert_eq!(t.metadata["alpha"], "1");
}

#[test]
fn alpha_out_of_range_exits_2_naming_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let o = fracwave(&["stable-density", "--alpha", "2.5", "-o", p(&out)]);
    assert_eq!(o.status.code(), Some(2));
    let msg = stderr(&o);
    assert!(msg.contains("--alpha") && msg.contains("(0, 2]"), "{msg}");
    assert_eq!(msg.trim().lines().count(), 1);
    assert!(!out.exists());
}

#[test]
fn unknown_command_exits_2() {
    assert_eq!(fracwave(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn missing_required_flag_exits_2() {
    assert_eq!(
        fracwave(&["stable-density", "--alpha", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("out.csv");
    let o = fracwave(&["classical-diffuse", "--t", "1", "-o", p(&out)]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn bad_thread_count_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let o = fracwave_threads(&["classical-diffuse", "--t", "1", "-o", p(&out)], "zero");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("FRACWAVE_THREADS"));
}

#[test]
fn ctrw_is_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let args = |path: &str| {
        vec![
            "ctrw",
            "--jumps",
            "stable:1.5",
            "--waits",
            "exp",
            "--walkers",
            "20000",
            "--T",
            "50",
            "--seed",
            "7",
            "-o",
            path,
        ]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>()
    };
    let mut outputs = Vec::new();
    for (j, threads) in ["1", "1", "4"].into_iter().enumerate() {
        let path = dir.path().join(format!("run{j}.csv"));
        let a = args(p(&path));
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        let o = fracwave_threads(&a, threads);
        assert!(o.status.success(), "{}", stderr(&o));
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    let t = Table::parse(std::str::from_utf8(&outputs[0]).unwrap(), Format::Csv).unwrap();
    assert_eq!(t.rows.len(), 20000);
    assert_eq!(t.metadata["seed"], "7");
}

#[test]
fn ctrw_rejects_malformed_laws() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let o = fracwave(&["ctrw", "--jumps", "stable:2.5", "-o", p(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--jumps"));
    let o = fracwave(&["ctrw", "--waits", "weibull", "-o", p(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--waits"));
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let json = dir.path().join("s.json");
    for (path, format) in [(&csv, "csv"), (&json, "json")] {
        let o = fracwave(&[
            "stable-sample",
            "--alpha",
            "1.3",
            "--count",
            "500",
            "--format",
            format,
            "-o",
            p(path),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let a = read_table(&csv, Format::Csv);
    let b = read_table(&json, Format::Json);
    assert_eq!(a.columns, b.columns);
    assert_eq!(a.metadata, b.metadata);
    for (ra, rb) in a.rows.iter().zip(&b.rows) {
        for (x, y) in ra.iter().zip(rb) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}

#[test]
fn tail_index_reads_sample_file() {
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("s.json");
    let est = dir.path().join("e.csv");
    let o = fracwave(&[
        "stable-sample",
        "--alpha",
        "1.5",
        "--count",
        "100000",
        "--format",
        "json",
        "-o",
        p(&samples),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = fracwave(&["tail-index", "--input", p(&samples), "-o", p(&est)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let alpha = read_table(&est, Format::Csv).column("alpha_hat").unwrap()[0];
    assert!((alpha - 1.5).abs() < 0.2, "{alpha}");
}

#[test]
fn wave_solution_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.csv");
    let o = fracwave(&[
        "wave-solution",
        "--kvec",
        "3,4",
        "--x",
        "0,0",
        "--tmin",
        "1",
        "--tmax",
        "1",
        "--n",
        "1",
        "-o",
        p(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let t = read_table(&out, Format::Csv);
    assert!((t.column("re").unwrap()[0] - 0.411659331441438).abs() < 1e-12);
    assert!((t.column("im").unwrap()[0] - 0.583971065059096).abs() < 1e-12);
}

#[test]
fn residual_check_reports_small_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let cases: [&[&str]; 4] = [
        &[
            "--target",
            "pwe",
            "--variant",
            "product2d",
            "--order-m",
            "2",
            "--order-n",
            "1",
            "--k",
            "2",
            "--x",
            "0.3",
        ],
        &[
            "--target", "wave", "--kvec", "3,4", "--x", "0.3", "--y", "0.2", "--t", "1",
        ],
        &["--target", "eigen", "--k", "2", "--x", "1"],
        &[
            "--target",
            "factorization",
            "--k",
            "2",
            "--x",
            "1",
            "--z",
            "1",
        ],
    ];
    for case in cases {
        let mut args = vec!["residual-check"];
        args.extend_from_slice(case);
        args.extend_from_slice(&["-o", p(&out)]);
        let o = fracwave(&args);
        assert!(o.status.success(), "{case:?}: {}", stderr(&o));
        let r = read_table(&out, Format::Csv).column("residual").unwrap()[0];
        assert!(r < 1e-3, "{case:?}: {r}");
    }
}

#[test]
fn hermite_order_limit_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.csv");
    let o = fracwave(&[
        "hermite-beam",
        "--k",
        "2",
        "--m",
        "5",
        "--n",
        "4",
        "-o",
        p(&out),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--m"));
}

#[test]
fn reproduce_figures_writes_all_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = fracwave(&[
        "reproduce-figures",
        "--series-length",
        "200",
        "-o",
        p(dir.path()),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));

    let dens = read_table(&dir.path().join("stable_densities.csv"), Format::Csv);
    assert_eq!(
        dens.columns,
        ["x", "alpha_0.5", "alpha_1", "alpha_1.5", "alpha_2"]
    );
    let xs = dens.column("x").unwrap();
    let i = xs.iter().position(|&x| x.abs() < 1e-12).unwrap();
    assert!((dens.column("alpha_1").unwrap()[i] - std::f64::consts::FRAC_1_PI).abs() < 1e-9);

    let tails = read_table(&dir.path().join("stable_survival_tails.csv"), Format::Csv);
    assert_eq!(tails.rows.len(), 81);
    let s = tails.column("alpha_0.5").unwrap();
    assert!(s.windows(2).all(|w| w[1] <= w[0]));

    let series = read_table(&dir.path().join("sas_series.csv"), Format::Csv);
    assert_eq!(series.columns.len(), 7);
    assert_eq!(series.rows.len(), 200);

    // Same seed, same bytes.
    let again = tempfile::tempdir().unwrap();
    let o = fracwave(&[
        "reproduce-figures",
        "--series-length",
        "200",
        "-o",
        p(again.path()),
    ]);
    assert!(o.status.success());
    assert_eq!(
        std::fs::read(dir.path().join("sas_series.csv")).unwrap(),
        std::fs::read(again.path().join("sas_series.csv")).unwrap()
    );
}

#[test]
fn reproduce_figures_needs_existing_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = fracwave(&["reproduce-figures", "-o", p(&dir.path().join("nope"))]);
    assert_eq!(o.status.code(), Some(3));
}

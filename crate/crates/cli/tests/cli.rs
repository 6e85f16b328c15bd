use std::path::Path;
use std::process::{Command, Output};

fn swlab(args: &[&str]) -> Output {
    swlab_env(args, None)
}

fn swlab_env(args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_swlab"));
    cmd.args(args).env_remove("SWE_SEED");
    if let Some(s) = seed {
        cmd.env("SWE_SEED", s);
    }
    cmd.output().expect("run swlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn oracle_passes_and_detects_bad_quadrature() {
    let ok = swlab(&["oracle", "--samples", "20"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert!(stdout(&ok).trim_end().ends_with("PASS"));
    let bad = swlab(&["oracle", "--samples", "20", "--quad-degree", "2"]);
    assert_eq!(bad.status.code(), Some(1));
    let text = stdout(&bad);
    assert!(text.contains("worst kdx") && text.trim_end().ends_with("FAIL"), "{text}");
    assert_eq!(swlab(&["oracle", "--samples", "0"]).status.code(), Some(2));
}

#[test]
fn dispersion_grid_and_rossby_alias() {
    assert_eq!(swlab(&["dispersion", "--ngrid", "4"]).status.code(), Some(2));
    let g = swlab(&["dispersion", "--ngrid", "8", "--compare-exact"]);
    assert_eq!(g.status.code(), Some(0), "{}", stderr(&g));
    let text = stdout(&g);
    assert!(text.starts_with("k,l,omega1,omega2,omega3,omega4,omega_exact\n"));
    assert!(text.lines().count() > 10);
    let a = swlab(&["rossby", "--ngrid", "12"]);
    let b = swlab(&["dispersion", "--kind", "rossby", "--ngrid", "12"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let header = stdout(&a).lines().next().unwrap().to_string();
    assert_eq!(header, "k,l,omega1,omega2,omega3,omega4,label1,label2,label3,label4");
    // Paper parameters put the frequencies around 1e-8 to 1e-7.
    let w: f64 = stdout(&a).lines().nth(1).unwrap().split(',').nth(5).unwrap().parse().unwrap();
    assert!(w.abs() > 1e-10 && w.abs() < 1e-5, "{w}");
    assert_eq!(swlab(&["rossby", "--fhat", "1,1"]).status.code(), Some(2));
}

#[test]
fn converge_needs_three_levels() {
    let o = swlab(&["converge", "--levels", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("at least 3 levels"));
}

#[test]
fn converge_reports_slopes() {
    let o = swlab(&["converge"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("dx,err_collocated,err_projected\n"));
    assert_eq!(text.lines().count(), 4);
    assert!(stderr(&o).contains("slopes collocated"));
}

#[test]
fn config_file_and_seed_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# small run\nn = 3\nseed = 7\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_cfg = swlab_env(&["helmholtz", "--config", cfg], Some("99"));
    let flag_seed = swlab_env(&["helmholtz", "--config", cfg, "--seed", "7"], Some("99"));
    let env_seed = swlab_env(&["helmholtz", "--n", "3"], Some("7"));
    let default_seed = swlab(&["helmholtz", "--n", "3"]);
    assert_eq!(from_cfg.status.code(), Some(0), "{}", stderr(&from_cfg));
    assert_eq!(from_cfg.stdout, flag_seed.stdout);
    assert_eq!(from_cfg.stdout, env_seed.stdout);
    assert_ne!(from_cfg.stdout, default_seed.stdout);

    let broken = dir.path().join("bad.cfg");
    std::fs::write(&broken, "n = 3\nsede = 1\n").unwrap();
    let o = swlab(&["helmholtz", "--config", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":2"), "{}", stderr(&o));
}

#[test]
fn output_is_deterministic() {
    let a = swlab(&["simulate", "--n", "4", "--steps", "5", "--seed", "3"]);
    let b = swlab(&["simulate", "--n", "4", "--steps", "5", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("t,energy,mean_e,pot_e,stream_e,spurious_e,eta_l2err\n"));
}

#[test]
fn simulate_checks_balance_and_spurious_modes() {
    for init in ["geostrophic", "spurious"] {
        let o = swlab(&["simulate", "--n", "5", "--init", init, "--dt", "0.5", "--steps", "100", "--every", "10"]);
        assert_eq!(o.status.code(), Some(0), "{init}: {}", stderr(&o));
        assert!(stderr(&o).lines().all(|l| l.starts_with("PASS")));
    }
    let o = swlab(&["simulate", "--n", "4", "--filter-hp2", "--steps", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("spurious fraction of filtered run"));
}

#[test]
fn checkpoint_round_trip_and_format_errors() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("state.ck");
    let ck_s = ck.to_str().unwrap();
    let o = swlab(&["simulate", "--n", "3", "--steps", "3", "--write-checkpoint", ck_s]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(dir.path().join("state.mesh").exists());
    let h = swlab(&["helmholtz", "--checkpoint", ck_s]);
    assert_eq!(h.status.code(), Some(0), "{}", stderr(&h));
    let resumed = swlab(&["simulate", "--checkpoint", ck_s, "--steps", "2"]);
    assert_eq!(resumed.status.code(), Some(0), "{}", stderr(&resumed));
    assert!(stdout(&resumed).lines().nth(1).unwrap().starts_with("0.15,"));

    let text = std::fs::read_to_string(&ck).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let bad_line = lines.iter().position(|l| l.starts_with("u ")).unwrap() + 2;
    lines[bad_line - 1] = "not-a-number";
    let broken = dir.path().join("broken.ck");
    std::fs::write(&broken, lines.join("\n")).unwrap();
    let e = swlab(&["helmholtz", "--checkpoint", broken.to_str().unwrap()]);
    assert_eq!(e.status.code(), Some(1));
    assert!(stderr(&e).contains(&format!("line {bad_line}")), "{}", stderr(&e));
}

#[test]
fn dump_matrices_coordinate_format() {
    let dir = tempfile::tempdir().unwrap();
    let o = swlab(&["dump-matrices", "--n", "2", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let mass = std::fs::read_to_string(dir.path().join("mass.txt")).unwrap();
    let mut lines = mass.lines();
    let header: Vec<usize> = lines.next().unwrap().split(' ').map(|v| v.parse().unwrap()).collect();
    assert_eq!(&header[..2], &[16, 16]);
    assert_eq!(lines.clone().count(), header[2]);
    for l in lines {
        let f: Vec<&str> = l.split(' ').collect();
        assert_eq!(f.len(), 3);
        assert!(f[0].parse::<usize>().unwrap() < 16 && f[1].parse::<usize>().unwrap() < 16);
        f[2].parse::<f64>().unwrap();
    }
    for name in ["stiffness", "mass_v", "grad", "perp", "mesh"] {
        assert!(Path::new(&dir.path().join(format!("{name}.txt"))).exists());
    }
    assert_eq!(swlab(&["dump-matrices", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn gnuplot_script_needs_output_file() {
    assert_eq!(swlab(&["dispersion", "--ngrid", "8", "--gnuplot", "x.gp"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("disp.csv");
    let script = dir.path().join("disp.gp");
    let o = swlab(&[
        "dispersion",
        "--ngrid",
        "8",
        "--output",
        data.to_str().unwrap(),
        "--gnuplot",
        script.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    assert!(std::fs::read_to_string(&script).unwrap().contains(data.to_str().unwrap()));
    assert!(std::fs::read_to_string(&data).unwrap().starts_with("k,l,"));
}

#[test]
fn short_flags_are_rejected() {
    assert_eq!(swlab(&["oracle", "-s", "3"]).status.code(), Some(2));
}

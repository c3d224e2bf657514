use std::path::PathBuf;
use std::process::{Command, Output};

use qcalab::dirac::{dirac_scattering_unitary, DiracParams};
use qcalab::state::Alphabet;
use qcalab::SparseState64;

fn qcalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcalab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qcalab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn massless_delta_advances_one_site_per_step() {
    let o = qcalab(&["walk", "--mass", "0", "--epsilon", "0.1", "--steps", "10", "--grid", "64", "--init", "delta:32"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("t,x,re_plus,im_plus,re_minus,im_minus,prob\n"));
    let table = rows(&text);
    assert_eq!(table.len(), 11 * 64);
    for t in 0..=10usize {
        let occupied: Vec<_> = table
            .iter()
            .filter(|r| r[0] == t.to_string() && r[6].parse::<f64>().unwrap() > 0.0)
            .collect();
        assert_eq!(occupied.len(), 1);
        assert_eq!(occupied[0][1], (32 + t).to_string());
        assert_eq!(occupied[0][6].parse::<f64>().unwrap(), 1.0);
    }
}

#[test]
fn engines_agree() {
    let common = ["walk", "--mass", "0.8", "--epsilon", "0.2", "--steps", "12", "--grid", "32", "--init", "gaussian:12:2.5:0.3"];
    let walk = rows(&stdout(&qcalab(&common)));
    let mut args = common.to_vec();
    args.extend(["--engine", "pqca"]);
    let pqca = rows(&stdout(&qcalab(&args)));
    assert_eq!(walk.len(), pqca.len());
    for (a, b) in walk.iter().zip(&pqca) {
        for k in 2..7 {
            let (x, y): (f64, f64) = (a[k].parse().unwrap(), b[k].parse().unwrap());
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn numbers_carry_seventeen_significant_digits() {
    let text = stdout(&qcalab(&["walk", "--steps", "3", "--grid", "8", "--init", "plane:1"]));
    let field = &rows(&text)[5][2];
    let mantissa = field.split('e').next().unwrap().trim_start_matches('-');
    assert_eq!(mantissa.replace('.', "").len(), 17, "{field}");
}

#[test]
fn dump_state_roundtrips() {
    let path = scratch("state.txt");
    let p = path.to_string_lossy().to_string();
    let o = qcalab(&["walk", "--steps", "4", "--grid", "16", "--init", "gaussian:8:2", "--dump-state", &p]);
    assert_eq!(o.status.code(), Some(0));
    let state = SparseState64::parse_dump(Alphabet::new(3).unwrap(), 1, &std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
    assert_eq!(state.len(), 32);
}

#[test]
fn convergence_order_in_range() {
    let o = qcalab(&[
        "converge", "--mass", "0.5", "--mode", "1", "--time", "1.0", "--eps", "0.1,0.05,0.025,0.0125", "--expect-order", "0.7,1.3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("epsilon,l2_error,local_order\n"));
    let table = rows(&text);
    assert_eq!(table.len(), 4);
    assert_eq!(table[0][2], "");
    let stderr = String::from_utf8(o.stderr).unwrap();
    assert!(stderr.contains("fitted order 0.9"), "{stderr}");
}

#[test]
fn trotter_table() {
    let o = qcalab(&["trotter", "--seed", "3", "--expect-order", "1.7,2.3"]);
    assert_eq!(o.status.code(), Some(0));
    let table = rows(&stdout(&o));
    assert_eq!(table.len(), 3);
    let o = qcalab(&["trotter", "--hamiltonian", "diagonal"]);
    for r in rows(&stdout(&o)) {
        assert!(r[1].parse::<f64>().unwrap() < 1e-12);
        assert_eq!(r[2], "");
    }
}

#[test]
fn signal_report() {
    let o = qcalab(&["signal", "--length", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("bob_trace_distance_before 0e0"));
    assert!(text.contains("bob_trace_distance_after 1e0"));
    assert!(text.contains("verdict pass"));
}

#[test]
fn structural_reports() {
    let o = qcalab(&["localize", "--corpus", "dirac-even", "--cells", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("K_1 support {0,1} allowed {0,1} ok"));
    let o = qcalab(&["causality", "--target", "dirac-step", "--cells", "8", "--supercell", "2"]);
    assert_eq!(o.status.code(), Some(0));
    // the same claim on single qubits is false
    let o = qcalab(&["causality", "--cells", "8", "--supercell", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness cell 0"));
    let o = qcalab(&["causality", "--target", "xor", "--cells", "4", "--supercell", "1", "--neighbourhood", "-1,0,1", "--expect", "fail"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn quiescence_from_file() {
    let path = scratch("dirac.txt");
    let u = dirac_scattering_unitary(DiracParams::new(0.3, 0.2).unwrap());
    std::fs::write(&path, u.to_text()).unwrap();
    let o = qcalab(&["quiescence", "--unitary-file", &path.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("quiescence_defect 0e0"));
    // swapping the first two columns moves the vacuum
    let moved = "2 1\n0 0 1 0 0 0 0 0\n1 0 0 0 0 0 0 0\n0 0 0 0 1 0 0 0\n0 0 0 0 0 0 1 0\n";
    std::fs::write(&path, moved).unwrap();
    let o = qcalab(&["quiescence", "--unitary-file", &path.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::write(&path, "2 1\n1 0\n").unwrap();
    assert_eq!(qcalab(&["quiescence", "--unitary-file", &path.to_string_lossy()]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["walk", "--nope"][..],
        &["walk", "-m", "0"],
        &["walk", "--grid", "1"],
        &["walk", "--init", "delta:99", "--grid", "8"],
        &["converge", "--eps", "0.1,0.2"],
        &["trotter", "--cells", "3"],
        &["signal", "--length", "2"],
        &["causality", "--neighbourhood", "near"],
        &["localize", "--corpus", "dirac-even", "--cells", "3"],
        &["teleport"],
    ] {
        let o = qcalab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = qcalab(&["walk", "--grid", "1"]);
    assert!(String::from_utf8(o.stderr).unwrap().contains("--grid"));
}

#[test]
fn config_file_with_flag_override() {
    let path = scratch("walk.cfg");
    std::fs::write(&path, "# walk settings\nmass=0\nsteps=2\ngrid=8\ninit=delta:3\n").unwrap();
    let p = path.to_string_lossy().to_string();
    let table = rows(&stdout(&qcalab(&["walk", "--config", &p])));
    assert_eq!(table.len(), 3 * 8);
    let table = rows(&stdout(&qcalab(&["walk", "--config", &p, "--steps", "5"])));
    assert_eq!(table.len(), 6 * 8);
    std::fs::write(&path, "colour=blue\n").unwrap();
    assert_eq!(qcalab(&["walk", "--config", &p]).status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let path = scratch("signal.txt");
    let o = qcalab(&["signal", "--output", &path.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("verdict pass"));
}

#[test]
fn every_selftest_passes() {
    for cmd in ["walk", "converge", "trotter", "localize", "causality", "signal", "quiescence"] {
        let o = qcalab(&[cmd, "--selftest"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stdout(&o));
        assert!(stdout(&o).lines().all(|l| l.contains(": pass")));
    }
}

#[test]
fn single_precision_runs() {
    let o = qcalab(&["walk", "--precision", "f32", "--steps", "20", "--grid", "32", "--init", "gaussian:16:3"]);
    assert_eq!(o.status.code(), Some(0));
    let last: f64 = rows(&stdout(&o)).iter().filter(|r| r[0] == "20").map(|r| r[6].parse::<f64>().unwrap()).sum();
    assert!((last - 1.0).abs() < 1e-5);
}

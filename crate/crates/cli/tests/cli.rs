use std::f64::consts::FRAC_1_SQRT_2;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lucoset::linalg::{conjugate, haar_unitary, seeded_rng, ComplexMatrix, DensityMatrix};
use lucoset::lu::verify_certificate;
use lucoset::spectral::state_from_eigensystem;
use lucoset::werner::{werner_state, WernerParams};
use lucoset::young::{embed_additive, embed_multiplicative, random_local_unitary, random_young_blocks, LocalStructure};
use lucoset::Complex64;
use lucoset_cli::matrix_file::MatrixFile;
use lucoset_cli::report::certificate_from_report;
use proptest::prelude::*;
use tempfile::TempDir;

fn lucoset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lucoset")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn dims(d: &[usize]) -> LocalStructure {
    LocalStructure::new(d.to_vec()).unwrap()
}

fn write(dir: &TempDir, name: &str, d: &[usize], m: &ComplexMatrix) -> String {
    let path = dir.path().join(name);
    MatrixFile { dims: dims(d), matrix: m.clone() }.write(&path).unwrap();
    path.to_string_lossy().into_owned()
}

fn write_text(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn ket(amps: &[f64]) -> Vec<Complex64> {
    amps.iter().map(|&a| Complex64::new(a, 0.0)).collect()
}

fn bell_mixture() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    let plus = ket(&[s, 0.0, 0.0, s]);
    let minus = ket(&[s, 0.0, 0.0, -s]);
    (&ComplexMatrix::outer(&plus, &plus) + &ComplexMatrix::outer(&minus, &minus)).scale_real(0.5)
}

fn bell_basis() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[
        vec![s, s, 0.0, 0.0],
        vec![0.0, 0.0, s, s],
        vec![0.0, 0.0, s, -s],
        vec![s, -s, 0.0, 0.0],
    ])
    .unwrap()
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("report is JSON")
}

#[test]
fn classify_maximally_mixed() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "m.json", &[2, 2], &ComplexMatrix::identity(4).scale_real(0.25));
    let out = lucoset(&["classify", &path]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("partition: 4\n"), "{}", stdout(&out));
    assert!(stdout(&out).contains("multiplicities: 4"));
}

#[test]
fn classify_werner_point() {
    let dir = TempDir::new().unwrap();
    let rho = werner_state(WernerParams::new(0.0, 0.1).unwrap());
    let path = write(&dir, "w.json", &[2, 2], rho.matrix());
    let out = lucoset(&["classify", &path]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("partition: 3-1\n"));
}

#[test]
fn classify_malformed_entry() {
    let dir = TempDir::new().unwrap();
    let path = write_text(&dir, "bad.json", "{\n  \"dims\": [2],\n  \"matrix\": [[[1, 0], [0, 0]],\n    [[0, 0], [x, 0]]]\n}\n");
    let out = lucoset(&["classify", &path]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("line 4") && err.contains("column"), "{err}");
    assert!(stdout(&out).is_empty());
}

#[test]
fn classify_rejects_invalid_densities() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (ComplexMatrix::from_real_diag(&[0.6, 0.6]), "trace"),
        (ComplexMatrix::from_real_diag(&[1.5, -0.5]), "semidefinite"),
        (ComplexMatrix::from_real_rows(&[vec![0.5, 0.3], vec![0.0, 0.5]]).unwrap(), "hermitian"),
    ];
    for (i, (m, word)) in cases.iter().enumerate() {
        let path = write(&dir, &format!("d{i}.json"), &[2], m);
        let out = lucoset(&["classify", &path]);
        assert_eq!(code(&out), 3);
        assert!(stderr(&out).to_lowercase().contains(word), "{}", stderr(&out));
    }
}

#[test]
fn dims_inconsistent_with_matrix_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let path = write_text(&dir, "d.json", r#"{"dims": [3], "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]}"#);
    assert_eq!(code(&lucoset(&["classify", &path])), 2);
}

#[test]
fn missing_file_is_io_failure() {
    assert_eq!(code(&lucoset(&["classify", "/nonexistent/rho.json"])), 7);
}

#[test]
fn equiv_constructed_pair_with_reloadable_certificate() {
    let dir = TempDir::new().unwrap();
    let ls = dims(&[2, 2]);
    let rho = state_from_eigensystem(&haar_unitary(4, 3), &[0.4, 0.3, 0.2, 0.1]).unwrap();
    let u = random_local_unitary(&ls, &mut seeded_rng(4));
    let moved = conjugate(&rho, &embed_multiplicative(&u, &ls).unwrap()).unwrap();
    let a = write(&dir, "a.json", &[2, 2], moved.matrix());
    let b = write(&dir, "b.json", &[2, 2], rho.matrix());
    let saved = dir.path().join("report.json");
    let out = lucoset(&["equiv", &a, &b, "--seed", "1", "--out", saved.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["verdict"], "Equivalent");
    assert_eq!(r["seed"], 1);
    for key in ["tol_success", "screen_tol", "cluster_tol"] {
        assert!(r["tolerances"][key].is_number());
    }
    let text = std::fs::read_to_string(&saved).unwrap();
    assert_eq!(text, stdout(&out));
    let cert = certificate_from_report(&text).unwrap().unwrap();
    // reload both states from disk, so the check sees exactly what the command saw
    let ra = DensityMatrix::new(MatrixFile::read(Path::new(&a)).unwrap().matrix).unwrap();
    let rb = DensityMatrix::new(MatrixFile::read(Path::new(&b)).unwrap().matrix).unwrap();
    assert!(verify_certificate(&ra, &rb, &cert, 1e-9).unwrap());
}

#[test]
fn equiv_separating_pair() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &[2, 2], &ComplexMatrix::from_real_diag(&[0.5, 0.5, 0.0, 0.0]));
    let b = write(&dir, "b.json", &[2, 2], &bell_mixture());
    let out = lucoset(&["equiv", &a, &b, "--seed", "0"]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["verdict"], "Inequivalent");
    assert_eq!(r["restarts_run"], 0);
    assert!(r["certificate"].is_null());
    let component = r["witness"]["component"].as_str().unwrap();
    assert!(component.contains("reduced spectrum"), "{component}");
}

#[test]
fn equiv_self_gives_identity_certificate() {
    let dir = TempDir::new().unwrap();
    let rho = state_from_eigensystem(&haar_unitary(6, 9), &[0.3, 0.2, 0.2, 0.15, 0.1, 0.05]).unwrap();
    let a = write(&dir, "a.json", &[2, 3], rho.matrix());
    let out = lucoset(&["equiv", &a, &a, "--seed", "2"]);
    assert_eq!(code(&out), 0);
    let cert = certificate_from_report(&stdout(&out)).unwrap().unwrap();
    assert_eq!(cert, vec![ComplexMatrix::identity(2), ComplexMatrix::identity(3)]);
}

#[test]
fn equiv_dims_mismatch() {
    let dir = TempDir::new().unwrap();
    let m = ComplexMatrix::identity(4).scale_real(0.25);
    let a = write(&dir, "a.json", &[2, 2], &m);
    let b = write(&dir, "b.json", &[4], &m);
    let out = lucoset(&["equiv", &a, &b, "--seed", "0"]);
    assert_eq!(code(&out), 5);
    assert!(stdout(&out).is_empty());
}

#[test]
fn equiv_requires_seed() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &[2], &ComplexMatrix::identity(2).scale_real(0.5));
    assert_eq!(code(&lucoset(&["equiv", &a, &a])), 8);
}

#[test]
fn coset_constructed_pair() {
    let dir = TempDir::new().unwrap();
    let ls = dims(&[2, 2]);
    let mut rng = seeded_rng(17);
    let g1 = haar_unitary(4, 16);
    let k = embed_multiplicative(&random_local_unitary(&ls, &mut rng), &ls).unwrap();
    let c = embed_additive(&random_young_blocks(&[2, 1, 1], &mut rng), &[2, 1, 1]).unwrap();
    let g2 = k.matmul(&g1).matmul(&c);
    let p1 = write(&dir, "g1.json", &[2, 2], &g1);
    let p2 = write(&dir, "g2.json", &[2, 2], &g2);
    let out = lucoset(&["coset", &p1, &p2, "--lambda", "2-1-1", "--dims", "2,2", "--seed", "3"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(report(&out)["lambda"], "2-1-1");
    let same = lucoset(&["coset", &p1, &p1, "--lambda", "2-1-1", "--seed", "3"]);
    assert_eq!(code(&same), 0);
}

#[test]
fn coset_identity_vs_bell_basis() {
    let dir = TempDir::new().unwrap();
    let p1 = write(&dir, "i.json", &[2, 2], &ComplexMatrix::identity(4));
    let p2 = write(&dir, "b.json", &[2, 2], &bell_basis());
    let out = lucoset(&["coset", &p1, &p2, "--lambda", "2-2", "--dims", "2,2", "--seed", "0"]);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["verdict"], "Inequivalent");
}

#[test]
fn coset_error_codes() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "i.json", &[2, 2], &ComplexMatrix::identity(4));
    let skew = write(&dir, "s.json", &[2, 2], &ComplexMatrix::from_real_diag(&[1.0, 1.0, 1.0, 1.1]));
    assert_eq!(code(&lucoset(&["coset", &id, &skew, "--lambda", "2-2", "--seed", "0"])), 6);
    assert_eq!(code(&lucoset(&["coset", &id, &id, "--lambda", "2-1", "--seed", "0"])), 8);
    assert_eq!(code(&lucoset(&["coset", &id, &id, "--lambda", "2-x", "--seed", "0"])), 8);
    assert_eq!(code(&lucoset(&["coset", &id, &id, "--lambda", "2-2", "--dims", "3,2", "--seed", "0"])), 5);
    let other = write(&dir, "o.json", &[4], &ComplexMatrix::identity(4));
    assert_eq!(code(&lucoset(&["coset", &id, &other, "--lambda", "2-2", "--seed", "0"])), 5);
}

#[test]
fn werner_scan_small_grid() {
    let out = lucoset(&["werner-scan", "--grid-e", "3", "--grid-f", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "e,f,partition,partition_numeric,agree");
    assert_eq!(lines[1], "0.000000,0.000000,3-1,3-1,true");
    assert_eq!(lines.len(), 7);
}

#[test]
fn werner_scan_single_maximally_mixed_row() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("scan.csv");
    let out = lucoset(&["werner-scan", "--grid-e", "5", "--grid-f", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let fours: Vec<&str> = text.lines().filter(|l| l.split(',').nth(2) == Some("4")).collect();
    assert_eq!(fours, vec!["0.000000,0.250000,4,4,true"]);
}

#[test]
fn werner_scan_default_grid_agrees() {
    let out = lucoset(&["werner-scan"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
    // the triangle holds 50 * 51 / 2 points of the 50 x 50 grid
    assert_eq!(text.lines().count(), 1 + 1275);
}

#[test]
fn werner_scan_unwritable_output() {
    let out = lucoset(&["werner-scan", "--grid-e", "3", "--grid-f", "3", "--out", "/nonexistent/dir/scan.csv"]);
    assert_eq!(code(&out), 7);
}

#[test]
fn werner_scan_bad_grid() {
    assert_eq!(code(&lucoset(&["werner-scan", "--grid-e", "1"])), 8);
}

#[test]
fn partitions_listing_and_counts() {
    let out = lucoset(&["partitions", "--n", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "4\n3-1\n2-2\n2-1-1\n1-1-1-1\n");
    assert_eq!(stdout(&lucoset(&["partitions", "--n", "1", "--count-only"])), "1\n");
    assert_eq!(stdout(&lucoset(&["partitions", "--n", "0", "--count-only"])), "1\n");
    assert_eq!(stdout(&lucoset(&["partitions", "--n", "100", "--count-only"])), "190569292\n");
}

#[test]
fn partitions_out_of_range() {
    assert_eq!(code(&lucoset(&["partitions", "--n", "61"])), 8);
    assert_eq!(code(&lucoset(&["partitions", "--n", "0"])), 8);
    assert_eq!(code(&lucoset(&["partitions", "--n", "1001", "--count-only"])), 8);
}

#[test]
fn random_state_round_trips_through_classify() {
    let dir = TempDir::new().unwrap();
    let path: PathBuf = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let out = lucoset(&["random-state", "--n", "4", "--lambda", "2-2", "--seed", "7", "--out", p]);
    assert_eq!(code(&out), 0);
    let classified = lucoset(&["classify", p]);
    assert!(stdout(&classified).starts_with("partition: 2-2\n"));
    let file = MatrixFile::read(&path).unwrap();
    assert_eq!(file.dims.dims(), &[4]);
}

#[test]
fn random_state_single_block_is_maximally_mixed() {
    for seed in ["1", "99"] {
        let out = lucoset(&["random-state", "--n", "2", "--lambda", "2", "--seed", seed]);
        let file = MatrixFile::parse(&stdout(&out)).unwrap();
        assert_eq!(file.matrix, ComplexMatrix::identity(2).scale_real(0.5));
    }
}

#[test]
fn random_state_is_deterministic() {
    let args = ["random-state", "--n", "6", "--lambda", "3-2-1", "--seed", "5", "--dims", "2,3"];
    let a = lucoset(&args);
    let b = lucoset(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = lucoset(&["random-state", "--n", "6", "--lambda", "3-2-1", "--seed", "6", "--dims", "2,3"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn random_state_bad_lambda() {
    assert_eq!(code(&lucoset(&["random-state", "--n", "4", "--lambda", "2-1", "--seed", "0"])), 8);
    assert_eq!(code(&lucoset(&["random-state", "--n", "4", "--lambda", "1-3", "--seed", "0"])), 8);
    assert_eq!(code(&lucoset(&["random-state", "--n", "4", "--lambda", "4"])), 8);
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(code(&lucoset(&["--help"])), 0);
    assert_eq!(code(&lucoset(&["--version"])), 0);
    assert_eq!(code(&lucoset(&["frobnicate"])), 8);
}

fn entry() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |x| x.is_finite()),
        -1.0..1.0f64,
        Just(0.0),
        Just(-0.0),
        Just(f64::MIN_POSITIVE),
    ]
}

proptest! {
    #[test]
    fn matrix_file_round_trip(n in 1usize..5, entries in prop::collection::vec((entry(), entry()), 16)) {
        let data: Vec<Complex64> = entries.iter().take(n * n).map(|&(a, b)| Complex64::new(a, b)).collect();
        let matrix = ComplexMatrix::new(n, n, data).unwrap();
        let file = MatrixFile { dims: LocalStructure::global(n).unwrap(), matrix };
        let back = MatrixFile::parse(&file.to_json()).unwrap();
        for (x, y) in back.matrix.as_slice().iter().zip(file.matrix.as_slice()) {
            prop_assert_eq!(x.re.to_bits(), y.re.to_bits());
            prop_assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
        prop_assert_eq!(back.dims, file.dims);
    }
}

//! The twelve acceptance criteria at their pinned bounds. Each criterion
//! prints one `criterion N: PASS|FAIL` line; run with `--nocapture` to see
//! them.

use msdual::verify::{self, Bounds, CheckResult};

fn report(criterion: u8, checks: &[CheckResult]) {
    let passed = checks.iter().all(|c| c.passed);
    let detail: Vec<String> = checks.iter().map(|c| c.line()).collect();
    println!("criterion {criterion}: {} [{}]", if passed { "PASS" } else { "FAIL" }, detail.join("; "));
    for c in checks.iter().filter(|c| !c.passed) {
        for f in &c.failures {
            println!("    {f}");
        }
    }
    assert!(passed, "criterion {criterion} failed");
}

fn bounds() -> Bounds {
    Bounds::full()
}

#[test]
fn criterion_01_involution_laws() {
    let b = bounds();
    assert_eq!((b.max_degree, b.integer_degree), (6, 8));
    report(1, &[verify::involution_laws(&b)]);
}

#[test]
fn criterion_02_path_independence() {
    let b = bounds();
    assert_eq!((b.random_vertices, b.random_orders), (100, 3));
    report(2, &[verify::path_independence(&b)]);
}

#[test]
fn criterion_03_mw_agreement() {
    report(3, &[verify::mw_agreement(&bounds())]);
}

#[test]
fn criterion_04_conjugation() {
    report(4, &[verify::conjugation(&bounds())]);
}

#[test]
fn criterion_05_mullineux() {
    report(5, &[verify::mullineux_agreement(&bounds())]);
}

#[test]
fn criterion_06_hall_counts() {
    let b = bounds();
    assert_eq!((b.max_dim, b.hall_qs.clone()), (4, vec![2, 3, 4]));
    report(6, &[verify::hall_counts(&b)]);
}

#[test]
fn criterion_07_adjointness() {
    report(7, &[verify::adjointness(&bounds())]);
}

#[test]
fn criterion_08_aut_counts() {
    report(8, &[verify::aut_counts(&bounds())]);
}

#[test]
fn criterion_09_crystal() {
    let b = bounds();
    report(9, &[verify::crystal_laws(&b), verify::component_counts()]);
}

#[test]
fn criterion_10_canonical_basis() {
    let b = bounds();
    assert_eq!(b.canonical, vec![(2, 6), (3, 4)]);
    report(10, &[verify::canonical_basis_check(&b)]);
}

#[test]
fn criterion_11_geometric_dual() {
    report(11, &[verify::geometric_dual(&bounds())]);
}

#[test]
fn criterion_12_round_trip() {
    let b = bounds();
    assert_eq!(b.round_trip_random, 200);
    report(12, &[verify::round_trip(&b)]);
}

//! One test per acceptance criterion. Each prints a PASS/FAIL line with its
//! runtime against the pinned budget; run with `--nocapture` to see them.

use qplane::embed::SweepOptions;
use qplane::selftest::{run_criterion, Context};

fn jobs() -> usize {
    std::env::var("QPLANE_JOBS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1)
}

fn criterion(id: u8) {
    let mut ctx = Context {
        opts: SweepOptions { jobs: jobs(), all: false },
        ..Context::default()
    };
    let r = run_criterion(id, &mut ctx);
    println!("{r}");
    assert!(r.pass, "{r}");
}

#[test]
fn c1_fano_reproduction() {
    criterion(1);
}

#[test]
fn c2_ternary_axioms() {
    criterion(2);
}

#[test]
fn c3_coordinatization_round_trip() {
    criterion(3);
}

#[test]
fn c4_desarguesian_oracle_agreement() {
    criterion(4);
}

#[test]
fn c5_klein_four_dichotomy() {
    criterion(5);
}

#[test]
fn c6_thickening() {
    criterion(6);
}

#[test]
fn c7_circuit_catalogs() {
    criterion(7);
}

#[test]
fn c8_duality_and_diamond() {
    criterion(8);
}

#[test]
fn c9_witness_soundness() {
    criterion(9);
}

// One-off generator for frozen reference values (run with --ignored).
use crate::oracle::{ssh_reference_dd, OracleInput};
use trishell_core::num_complex::Complex64;
use trishell_core::tissue::VACUUM_PERMITTIVITY;

#[test]
#[ignore]
fn generate_frozen_values() {
    // Case A: standard geometry, homogeneous static sigma, DC, eta = 0.935.
    let a = ssh_reference_dd(
        &OracleInput {
            r1: 0.0791,
            r2: 0.0850,
            r3: 0.0920,
            sigma_c: [
                Complex64::new(0.33, 0.0),
                Complex64::new(0.33, 0.0),
                Complex64::new(0.33, 0.0),
                Complex64::new(0.0, 0.0),
            ],
            eta: 0.935,
            p_r: 15e-9,
        },
        2000,
    );
    println!("case A (homogeneous, DC): {:.17e} + j {:.17e}", a.re, a.im);

    // Case B: standard geometry, heterogeneous static, DC, eta = 0.814.
    let b = ssh_reference_dd(
        &OracleInput {
            r1: 0.0791,
            r2: 0.0850,
            r3: 0.0920,
            sigma_c: [
                Complex64::new(0.33, 0.0),
                Complex64::new(0.0084, 0.0),
                Complex64::new(0.27, 0.0),
                Complex64::new(0.0, 0.0),
            ],
            eta: 0.814,
            p_r: 15e-9,
        },
        2000,
    );
    println!(
        "case B (heterogeneous, DC): {:.17e} + j {:.17e}",
        b.re, b.im
    );

    // Case C: heterogeneous complex at 1 kHz, eta = 0.935.
    let f = 1000.0;
    let we = 2.0 * std::f64::consts::PI * f * VACUUM_PERMITTIVITY;
    let c = ssh_reference_dd(
        &OracleInput {
            r1: 0.0791,
            r2: 0.0850,
            r3: 0.0920,
            sigma_c: [
                Complex64::new(0.33, we * 2.5e4),
                Complex64::new(0.0084, we * 1.1e3),
                Complex64::new(0.27, we * 9.0e3),
                Complex64::new(0.0, we),
            ],
            eta: 0.935,
            p_r: 15e-9,
        },
        2000,
    );
    println!(
        "case C (heterogeneous, 1 kHz): {:.17e} + j {:.17e}",
        c.re, c.im
    );
}

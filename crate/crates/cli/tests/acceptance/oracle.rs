//! Independent reference implementations used by the acceptance criteria:
//! an extended-precision summation of the spherical-harmonics series (fixed
//! l range, per-term powers, double-double arithmetic) and a loop-analysis
//! solution of the fixed seven-branch ladder via Cramer's rule. Neither
//! shares a code path with the crate under test.

use trishell_core::num_complex::Complex64;

use crate::dd::{Dd, DdC};

/// Deterministic SplitMix64 PRNG for reproducible random draws.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn log_range(&mut self, lo: f64, hi: f64) -> f64 {
        10.0_f64.powf(self.range(lo.log10(), hi.log10()))
    }
}

/// Extended-precision summation of the series potential: fixed `l_max`
/// terms, every power computed per term by binary exponentiation in
/// double-double arithmetic.
pub struct OracleInput {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    /// Layer complex conductivities [brain, skull, scalp, air].
    pub sigma_c: [Complex64; 4],
    pub eta: f64,
    pub p_r: f64,
}

pub fn ssh_reference_dd(input: &OracleInput, l_max: u32) -> Complex64 {
    let psi12 = Dd::from_f64(input.r1).div(Dd::from_f64(input.r2));
    let psi13 = Dd::from_f64(input.r1).div(Dd::from_f64(input.r3));
    let psi23 = Dd::from_f64(input.r2).div(Dd::from_f64(input.r3));
    let base = Dd::from_f64(input.eta).mul(psi13);

    let sc: Vec<DdC> = input.sigma_c.iter().map(|s| DdC::new(s.re, s.im)).collect();
    let diff = |i: usize, j: usize| sc[i].sub(sc[j]);
    let tilde = |i: usize, j: usize, lf: f64| sc[i].mul_f64(lf + 1.0).add(sc[j].mul_f64(lf));

    let mut sum = DdC::ZERO;
    for l in 1..=l_max {
        let lf = l as f64;
        // Layer indices: 0 brain, 1 skull, 2 scalp, 3 air.
        let x1 = tilde(1, 0, lf).mul(diff(2, 1)).mul(diff(3, 2));
        let x2 = diff(1, 0).mul(tilde(1, 2, lf)).mul(diff(3, 2));
        let x3 = diff(1, 0).mul(diff(2, 1)).mul(tilde(3, 2, lf));
        let xt = tilde(1, 0, lf).mul(tilde(2, 1, lf)).mul(tilde(3, 2, lf));

        let p23 = psi23.powi(2 * l + 1);
        let p13 = psi13.powi(2 * l + 1);
        let p12 = psi12.powi(2 * l + 1);
        let ll1 = lf * (lf + 1.0);
        let den = x1
            .mul_dd(p23)
            .add(x2.mul_dd(p13))
            .add(x3.mul_dd(p12))
            .mul_f64(ll1)
            .add(xt);

        let two_l1 = 2.0 * lf + 1.0;
        let geom_factor = base.powi(l - 1);
        let num = sc[1]
            .mul(sc[2])
            .mul_f64(lf * two_l1 * two_l1 * two_l1)
            .mul_dd(geom_factor);
        sum = sum.add(num.div(den));
    }

    // p_r / (4 pi r3^2)
    let r3 = Dd::from_f64(input.r3);
    let denom = Dd::pi().mul_f64(4.0).mul(r3).mul(r3);
    let prefactor = Dd::from_f64(input.p_r).div(denom);
    let v = sum.mul_dd(prefactor);
    Complex64::new(v.re.to_f64(), v.im.to_f64())
}

/// Branch impedances of the seven-branch ladder, in the order
/// (z_up, z_skull, z_scalp, z_down, z_tan_brain, z_tan_skull, z_tan_scalp).
pub struct LadderZ {
    pub z1: Complex64, // brain radial up: N0-N1
    pub z2: Complex64, // skull radial: N1-N2
    pub z3: Complex64, // scalp radial: N2-N3
    pub z4: Complex64, // brain radial down: N0-G
    pub z5: Complex64, // tangential brain: N1-G
    pub z6: Complex64, // tangential skull: N2-G
    pub z7: Complex64, // tangential scalp: N3-G
}

/// Loop analysis of the ladder via Cramer's rule on the three fundamental
/// loops (tangential branch currents as unknowns). Returns the node
/// voltages [V(N0), V(N1), V(N2), V(N3)].
pub fn loop_analysis(z: &LadderZ, i_dip: Complex64) -> [Complex64; 4] {
    // Unknowns: i5, i6, i7 (currents through z5, z6, z7 toward G).
    // KVL:
    //  (z1+z4+z5) i5 + (z1+z4) i6 + (z1+z4) i7 = z4 I
    //  z5 i5 - (z2+z6) i6 - z2 i7              = 0
    //  z6 i6 - (z3+z7) i7                      = 0
    let a = [
        [z.z1 + z.z4 + z.z5, z.z1 + z.z4, z.z1 + z.z4],
        [z.z5, -(z.z2 + z.z6), -z.z2],
        [Complex64::new(0.0, 0.0), z.z6, -(z.z3 + z.z7)],
    ];
    let b = [
        z.z4 * i_dip,
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ];

    let det3 = |m: &[[Complex64; 3]; 3]| -> Complex64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let det = det3(&a);
    let col_replaced = |col: usize| -> [[Complex64; 3]; 3] {
        let mut m = a;
        for row in 0..3 {
            m[row][col] = b[row];
        }
        m
    };
    let i5 = det3(&col_replaced(0)) / det;
    let i6 = det3(&col_replaced(1)) / det;
    let i7 = det3(&col_replaced(2)) / det;

    let v0 = z.z4 * (i_dip - i5 - i6 - i7);
    let v1 = z.z5 * i5;
    let v2 = z.z6 * i6;
    let v3 = z.z7 * i7;
    [v0, v1, v2, v3]
}

#[test]
fn loop_analysis_resistive_sanity() {
    // All tangentials open-ish (huge) and unit chain: V3 ~ V0, I through z4.
    let big = Complex64::new(1e12, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let z = LadderZ {
        z1: one,
        z2: one,
        z3: one,
        z4: one,
        z5: big,
        z6: big,
        z7: big,
    };
    let v = loop_analysis(&z, Complex64::new(1.0, 0.0));
    assert!((v[0].re - 1.0).abs() < 1e-6);
    assert!((v[3] - v[0]).norm() < 1e-6);
}

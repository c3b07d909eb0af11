//! Gamma function and the Bessel function J0.

use crate::scalar::{horner, Real};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum<T: Real>(x: T) -> T {
    let mut a = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a = a + T::lit(c) / (x + T::lit(i as f64));
    }
    a
}

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> T {
    assert!(x > T::zero(), "ln_gamma needs a positive argument");
    let half = T::lit(0.5);
    if x < half {
        // reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        return (T::PI() / (T::PI() * x).sin()).ln() - ln_gamma(T::one() - x);
    }
    let z = x - T::one();
    let t = z + T::lit(LANCZOS_G) + half;
    half * (T::TAU()).ln() + (z + half) * t.ln() - t + lanczos_sum(z).ln()
}

/// Gamma function for real `x` away from the non-positive integers.
pub fn gamma<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        return T::PI() / ((T::PI() * x).sin() * gamma(T::one() - x));
    }
    let z = x - T::one();
    let t = z + T::lit(LANCZOS_G) + half;
    T::TAU().sqrt() * t.powf(z + half) * (-t).exp() * lanczos_sum(z)
}

// Rational approximations for J0 (Cephes j0.c).
const J0_DR1: f64 = 5.783_185_962_946_784;
const J0_DR2: f64 = 30.471_262_343_662_087;
const J0_RP: [f64; 4] = [
    -4.794_432_209_782_018e9,
    1.956_174_919_465_565_7e12,
    -2.492_483_443_609_677_2e14,
    9.708_622_510_473_064e15,
];
const J0_RQ: [f64; 8] = [
    4.995_631_471_526_51e2,
    1.737_854_016_763_747e5,
    4.844_096_583_399_621e7,
    1.118_555_370_453_568_3e10,
    2.112_775_201_154_892e12,
    3.105_182_298_574_225_6e14,
    3.181_219_559_432_049_6e16,
    1.710_862_940_810_431_5e18,
];
const J0_PP: [f64; 7] = [
    7.969_367_292_973_471e-4,
    8.283_523_921_074_408e-2,
    1.239_533_716_464_143,
    5.447_250_030_587_687,
    8.747_165_001_998_17,
    5.303_240_382_353_949,
    1.0,
];
const J0_PQ: [f64; 7] = [
    9.244_088_105_588_637e-4,
    8.562_884_743_544_745e-2,
    1.253_527_439_010_589_5,
    5.470_977_403_304_171,
    8.761_908_832_370_695,
    5.306_052_882_353_947,
    1.0,
];
const J0_QP: [f64; 8] = [
    -1.136_638_388_984_691_6e-2,
    -1.282_527_186_705_093_1,
    -1.955_395_442_577_359_7e1,
    -9.320_601_521_237_683e1,
    -1.776_811_679_804_880_6e2,
    -1.470_775_051_549_511_8e2,
    -5.141_053_267_665_993e1,
    -6.050_143_506_007_285,
];
const J0_QQ: [f64; 7] = [
    6.431_782_561_181_78e1,
    8.564_300_259_769_806e2,
    3.882_401_836_054_016_3e3,
    7.240_467_741_956_525e3,
    5.930_727_011_873_169e3,
    2.062_093_316_603_278_3e3,
    2.420_057_402_402_914e2,
];

/// Cephes-style polynomial with coefficients from the highest degree down.
fn polevl<T: Real>(x: T, c: &[f64]) -> T {
    let rev: Vec<T> = c.iter().rev().map(|&v| T::lit(v)).collect();
    horner(&rev, &x)
}

/// As [`polevl`] with an implicit leading coefficient of one.
fn p1evl<T: Real>(x: T, c: &[f64]) -> T {
    let mut rev: Vec<T> = c.iter().rev().map(|&v| T::lit(v)).collect();
    rev.push(T::one());
    horner(&rev, &x)
}

/// Bessel function of the first kind, order zero.
pub fn bessel_j0<T: Real>(x: T) -> T {
    let x = x.abs();
    if x <= T::lit(5.0) {
        let z = x * x;
        if x < T::lit(1e-5) {
            return T::one() - z / T::lit(4.0);
        }
        let p = (z - T::lit(J0_DR1)) * (z - T::lit(J0_DR2));
        return p * polevl(z, &J0_RP) / p1evl(z, &J0_RQ);
    }
    let w = T::lit(5.0) / x;
    let q = T::lit(25.0) / (x * x);
    let p = polevl(q, &J0_PP) / polevl(q, &J0_PQ);
    let qq = polevl(q, &J0_QP) / p1evl(q, &J0_QQ);
    let xn = x - T::FRAC_PI_4();
    let p = p * xn.cos() - w * qq * xn.sin();
    p * (T::lit(2.0) / (T::PI() * x)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_known_values() {
        assert_relative_eq!(gamma(0.5_f64), std::f64::consts::PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(5.0_f64), 24.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(1.0_f64), 1.0, max_relative = 1e-14);
        // mpmath references
        assert_relative_eq!(gamma(0.3_f64), 2.991_568_987_687_590_9, max_relative = 1e-14);
        assert_relative_eq!(gamma(7.5_f64), 1_871.254_305_797_788_8, max_relative = 1e-14);
        assert_relative_eq!(ln_gamma(1000.0_f64), 5_905.220_423_209_181, max_relative = 1e-15);
        assert_relative_eq!(ln_gamma(0.25_f64), 1.288_022_524_698_077_5, max_relative = 1e-14);
    }

    #[test]
    fn j0_known_values() {
        assert_relative_eq!(bessel_j0(0.0_f64), 1.0);
        assert_relative_eq!(bessel_j0(-3.0_f64), -0.260_051_954_901_933_45, max_relative = 1e-14);
        assert_relative_eq!(bessel_j0(2.1752_f64), 0.124_192_966_287_489_41, max_relative = 1e-13);
        assert_relative_eq!(bessel_j0(-5.1_f64), -0.144_334_747_060_500_65, max_relative = 1e-13);
        assert_relative_eq!(bessel_j0(2345.13_f64), 0.012_425_605_700_760_064, max_relative = 1e-12);
    }

    #[test]
    fn single_precision_runs() {
        assert!((gamma(4.0_f32) - 6.0).abs() < 1e-4);
        assert!((bessel_j0(1.0_f32) - 0.765_197_7).abs() < 1e-5);
    }
}

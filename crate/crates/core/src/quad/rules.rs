//! 7-point Gauss / 15-point Kronrod pair on [-1, 1].

#![allow(clippy::excessive_precision)]

/// Non-negative Kronrod nodes, outermost first; the last entry is the center.
pub(crate) const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

pub(crate) const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd-indexed Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
pub(crate) const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(f: impl Fn(f64) -> f64) -> (f64, f64) {
        let mut k = WGK[7] * f(0.0);
        let mut g = WG[3] * f(0.0);
        for j in 0..7 {
            let s = f(XGK[j]) + f(-XGK[j]);
            k += WGK[j] * s;
            if j % 2 == 1 {
                g += WG[j / 2] * s;
            }
        }
        (k, g)
    }

    #[test]
    fn weights_sum_to_interval_length() {
        let (k, g) = apply(|_| 1.0);
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn polynomial_exactness() {
        // Kronrod-15 is exact through degree 22, Gauss-7 through degree 13
        for n in 0..=22 {
            let exact = if n % 2 == 1 {
                0.0
            } else {
                2.0 / (n as f64 + 1.0)
            };
            let (k, g) = apply(|x| x.powi(n));
            assert!((k - exact).abs() < 1e-14, "kronrod degree {n}");
            if n <= 13 {
                assert!((g - exact).abs() < 1e-14, "gauss degree {n}");
            }
        }
        let (_, g) = apply(|x| x.powi(14));
        assert!((g - 2.0 / 15.0).abs() > 1e-6);
    }
}

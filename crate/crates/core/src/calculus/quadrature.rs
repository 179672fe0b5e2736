use crate::error::{Error, Result};
use crate::scalar::Real;

// 15-point Kronrod extension of the 7-point Gauss-Legendre rule on [-1, 1].
// Nodes are listed from the outside in; the Gauss nodes are the odd entries.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Panel budget on top of the depth limit.
const MAX_PANELS: usize = 20_000;

/// Tolerance and recursion limit for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    pub abs_tolerance: T,
    pub max_depth: usize,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self {
            abs_tolerance: T::lit(1e-11),
            max_depth: 60,
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    pub fn with_tolerance(abs_tolerance: T) -> Self {
        Self {
            abs_tolerance,
            ..Self::default()
        }
    }
}

/// Integral estimate with its error bound and panel count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub error: T,
    pub panels: usize,
}

#[derive(Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    magnitude: T,
    depth: usize,
}

fn gauss_kronrod<T: Real, F>(f: &F, a: T, b: T, depth: usize) -> Result<Panel<T>>
where
    F: Fn(T) -> Result<T>,
{
    let center = (a + b) * T::half();
    let half = (b - a) * T::half();
    let eval = |x: T| -> Result<T> {
        let v = f(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { at: x.as_f64() })
        }
    };

    let fc = eval(center)?;
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    let mut magnitude = fc.abs() * T::lit(WGK[7]);
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        let wk = T::lit(WGK[j]);
        kronrod = kronrod + wk * (f1 + f2);
        magnitude = magnitude + wk * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    let value = kronrod * half;
    Ok(Panel {
        a,
        b,
        value,
        error: ((kronrod - gauss) * half).abs(),
        magnitude: magnitude * half.abs(),
        depth,
    })
}

/// Adaptive Gauss-Kronrod (7/15) quadrature with global bisection of the
/// worst panel, for a fallible integrand.
///
/// The requested tolerance is floored at `16 eps ∫|f|`, below which the
/// embedded estimate measures rounding rather than truncation.
pub fn try_integrate_detailed<T: Real, F>(
    f: F,
    a: T,
    b: T,
    cfg: &QuadratureConfig<T>,
) -> Result<Integral<T>>
where
    F: Fn(T) -> Result<T>,
{
    if a == b {
        return Ok(Integral {
            value: T::zero(),
            error: T::zero(),
            panels: 0,
        });
    }
    if a > b {
        let r = try_integrate_detailed(f, b, a, cfg)?;
        return Ok(Integral {
            value: -r.value,
            ..r
        });
    }

    let mut panels = vec![gauss_kronrod(&f, a, b, 0)?];
    loop {
        let total: T = panels.iter().fold(T::zero(), |s, p| s + p.value);
        let error: T = panels.iter().fold(T::zero(), |s, p| s + p.error);
        let magnitude: T = panels.iter().fold(T::zero(), |s, p| s + p.magnitude);
        let target = cfg
            .abs_tolerance
            .max(T::lit(16.0) * T::epsilon() * magnitude);
        if error <= target {
            return Ok(Integral {
                value: total,
                error,
                panels: panels.len(),
            });
        }

        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |(bi, be), (i, p)| {
                if p.error > be {
                    (i, p.error)
                } else {
                    (bi, be)
                }
            });
        let p = panels[worst];
        let mid = (p.a + p.b) * T::half();
        if p.depth >= cfg.max_depth || panels.len() >= MAX_PANELS || mid <= p.a || mid >= p.b {
            return Err(Error::NonConvergence {
                estimate: total.as_f64(),
                error_bound: error.as_f64(),
            });
        }
        let left = gauss_kronrod(&f, p.a, mid, p.depth + 1)?;
        let right = gauss_kronrod(&f, mid, p.b, p.depth + 1)?;
        panels[worst] = left;
        panels.push(right);
    }
}

pub fn try_integrate<T: Real, F>(f: F, a: T, b: T, cfg: &QuadratureConfig<T>) -> Result<T>
where
    F: Fn(T) -> Result<T>,
{
    try_integrate_detailed(f, a, b, cfg).map(|r| r.value)
}

/// `∫_a^b f`. `integrate(f, a, a) = 0`; `a > b` flips the sign.
pub fn integrate<T: Real, F>(f: F, a: T, b: T, cfg: &QuadratureConfig<T>) -> Result<T>
where
    F: Fn(T) -> T,
{
    try_integrate(|x| Ok(f(x)), a, b, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig<f64> {
        QuadratureConfig::default()
    }

    #[test]
    fn constant_and_empty() {
        assert!((integrate(|_| 1.0, 0.0, 1.0, &cfg()).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(integrate(|x: f64| x.exp(), 0.3, 0.3, &cfg()).unwrap(), 0.0);
    }

    #[test]
    fn arcsin_antiderivative() {
        let v = integrate(|u: f64| 1.0 / (1.0 - u * u).sqrt(), 0.0, 0.5, &cfg()).unwrap();
        assert!((v - PI / 6.0).abs() < 1e-13);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let fwd = integrate(|x: f64| x * x, 0.0, 2.0, &cfg()).unwrap();
        let back = integrate(|x: f64| x * x, 2.0, 0.0, &cfg()).unwrap();
        assert_eq!(fwd, -back);
    }

    #[test]
    fn gauss_rule_is_exact_on_low_degree_polynomials() {
        // a single panel already integrates degree 13 exactly in G7
        let r = try_integrate_detailed(|x: f64| Ok(x.powi(12)), -1.0, 1.0, &cfg()).unwrap();
        assert_eq!(r.panels, 1);
        assert!((r.value - 2.0 / 13.0).abs() < 1e-15);
    }

    #[test]
    fn non_convergence_carries_estimate() {
        let tight = QuadratureConfig {
            abs_tolerance: 1e-14,
            max_depth: 3,
        };
        let err = integrate(|x: f64| (50.0 * x).sin().abs(), 0.0, 10.0, &tight).unwrap_err();
        match err {
            Error::NonConvergence {
                estimate,
                error_bound,
            } => {
                assert!(estimate.is_finite());
                assert!(error_bound > 1e-14);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let err = integrate(|x: f64| 1.0 / (x - 0.5), 0.0, 1.0, &cfg()).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }));
    }

    #[test]
    fn integrand_errors_propagate() {
        let err = try_integrate(
            |x: f64| if x > 0.7 { Err(Error::Derivative { z: x }) } else { Ok(x) },
            0.0,
            1.0,
            &cfg(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Derivative { .. }));
    }
}

//! Harmonic representations `1/M(x, y) = ∫₀¹ dt / N^{t}(x, y)`.
//!
//! `M` has such a representation exactly when its Seiffert function `m`
//! satisfies `1/(1+z) <= m'(z) <= 1/(1-z)`; the representer's Seiffert
//! function is then `n(z) = z m'(z)` and `m = I(n)`.
//!
//! Every verdict here is a grid-based falsification test, not a proof.

use crate::calculus::{
    apply_i_operator, derivative_estimate, try_integrate, Domain, GridSpec, QuadratureConfig,
};
use crate::error::{Error, Result};
use crate::means::{seiffert_of_mean, Mean, MeanId, PositivePair, SeiffertFunction};
use crate::scalar::Real;

/// Slack on the derivative bounds before a point counts as a violation.
pub const DERIVATIVE_BOUND_SLACK: f64 = 1e-12;

/// Default tolerance of [`verify_identity`].
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeSource {
    ClosedForm,
    FiniteDifference,
}

/// `m'(z)`, preferring the registered closed form.
pub fn derivative_of<T: Real>(m: &SeiffertFunction<T>, z: T) -> Result<(T, DerivativeSource)> {
    match m.derivative(z) {
        Some(d) => d.map(|v| (v, DerivativeSource::ClosedForm)),
        None => derivative_estimate(|u| m.eval(u), z, None, Domain::seiffert())
            .map(|v| (v, DerivativeSource::FiniteDifference)),
    }
}

/// The candidate representer `n(z) = z m'(z)`.
pub fn construct_candidate<T: Real>(m: &SeiffertFunction<T>) -> SeiffertFunction<T> {
    let m = m.clone();
    let label = format!("z*d/dz {}", m.label());
    SeiffertFunction::new(label, move |z: T| {
        if z == T::zero() {
            return Ok(T::zero());
        }
        Ok(z * derivative_of(&m, z)?.0)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representability {
    Representable,
    Falsified,
    /// No violation found, but the derivative failed somewhere on the grid.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolatedBound {
    /// `m'(z) < 1/(1+z)`
    Lower,
    /// `m'(z) > 1/(1-z)`
    Upper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepresentationVerdict<T> {
    pub status: Representability,
    /// Grid point of the worst violation; present iff falsified.
    pub witness_z: Option<T>,
    /// `m'` at the witness.
    pub derivative_at_witness: Option<T>,
    pub violated: Option<ViolatedBound>,
    /// Minimum over the grid of the distance from `m'(z)` to the nearer bound,
    /// negative where a bound is crossed.
    pub margin: T,
    pub grid: GridSpec<T>,
    pub evaluated: usize,
    pub failed: usize,
    pub closed_form_derivative: bool,
}

impl<T: Real> RepresentationVerdict<T> {
    pub fn is_representable(&self) -> bool {
        self.status == Representability::Representable
    }

    pub fn is_falsified(&self) -> bool {
        self.status == Representability::Falsified
    }
}

/// `m'` at one grid point, with its distance to the nearer bound.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeSample<T> {
    pub z: T,
    pub derivative: Result<T>,
    /// `min(m'(z) - 1/(1+z), 1/(1-z) - m'(z))`
    pub margin: Option<T>,
    pub nearer: Option<ViolatedBound>,
}

pub fn sample_derivative_bounds<T: Real>(
    m: &SeiffertFunction<T>,
    grid: &GridSpec<T>,
) -> Vec<DerivativeSample<T>> {
    grid.points()
        .into_iter()
        .map(|z| {
            let derivative = if z > T::zero() && z < T::one() {
                derivative_of(m, z).and_then(|(d, _)| {
                    if d.is_finite() {
                        Ok(d)
                    } else {
                        Err(Error::Derivative { z: z.as_f64() })
                    }
                })
            } else {
                Err(Error::Domain {
                    what: "derivative bound test",
                    value: z.as_f64(),
                })
            };
            let (margin, nearer) = match derivative {
                Ok(d) => {
                    let lower_gap = d - (T::one() + z).recip();
                    let upper_gap = (T::one() - z).recip() - d;
                    if lower_gap <= upper_gap {
                        (Some(lower_gap), Some(ViolatedBound::Lower))
                    } else {
                        (Some(upper_gap), Some(ViolatedBound::Upper))
                    }
                }
                Err(_) => (None, None),
            };
            DerivativeSample {
                z,
                derivative,
                margin,
                nearer,
            }
        })
        .collect()
}

/// Tests `1/(1+z) <= m'(z) <= 1/(1-z)` at every grid point, with slack
/// [`DERIVATIVE_BOUND_SLACK`].
pub fn check_representable<T: Real>(
    m: &SeiffertFunction<T>,
    grid: &GridSpec<T>,
) -> RepresentationVerdict<T> {
    check_representable_with_slack(m, grid, T::lit(DERIVATIVE_BOUND_SLACK))
}

/// As [`check_representable`], but a point fails only below `-slack`.
pub fn check_representable_with_slack<T: Real>(
    m: &SeiffertFunction<T>,
    grid: &GridSpec<T>,
    slack: T,
) -> RepresentationVerdict<T> {
    let mut margin = T::infinity();
    let mut worst: Option<(T, T, ViolatedBound)> = None;
    let mut evaluated = 0;
    let mut failed = 0;
    for s in sample_derivative_bounds(m, grid) {
        let (Ok(d), Some(gap), Some(side)) = (s.derivative, s.margin, s.nearer) else {
            failed += 1;
            continue;
        };
        evaluated += 1;
        if gap < margin {
            margin = gap;
            if gap < -slack {
                worst = Some((s.z, d, side));
            }
        }
    }
    let status = match (&worst, failed) {
        (Some(_), _) => Representability::Falsified,
        (None, 0) => Representability::Representable,
        (None, _) => Representability::Inconclusive,
    };
    RepresentationVerdict {
        status,
        witness_z: worst.map(|w| w.0),
        derivative_at_witness: worst.map(|w| w.1),
        violated: worst.map(|w| w.2),
        margin,
        grid: *grid,
        evaluated,
        failed,
        closed_form_derivative: m.has_derivative(),
    }
}

/// A represented mean and its harmonic representer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCatalogEntry {
    pub represented: MeanId,
    pub representer: MeanId,
    pub note: &'static str,
}

pub const PAIR_CATALOG: [PairCatalogEntry; 8] = [
    PairCatalogEntry {
        represented: MeanId::P,
        representer: MeanId::G,
        note: "arcsin = I(z/sqrt(1-z^2))",
    },
    PairCatalogEntry {
        represented: MeanId::T,
        representer: MeanId::C,
        note: "arctan = I(z/(1+z^2))",
    },
    PairCatalogEntry {
        represented: MeanId::L,
        representer: MeanId::H,
        note: "artanh = I(z/(1-z^2))",
    },
    PairCatalogEntry {
        represented: MeanId::NS,
        representer: MeanId::R,
        note: "arsinh = I(z/sqrt(1+z^2))",
    },
    PairCatalogEntry {
        represented: MeanId::SIN,
        representer: MeanId::COSMEAN,
        note: "sin = I(z cos z)",
    },
    PairCatalogEntry {
        represented: MeanId::TAN,
        representer: MeanId::COS2MEAN,
        note: "tan = I(z/cos^2 z)",
    },
    PairCatalogEntry {
        represented: MeanId::SINH,
        representer: MeanId::COSHMEAN,
        note: "sinh = I(z cosh z)",
    },
    PairCatalogEntry {
        represented: MeanId::AGM,
        representer: MeanId::V,
        note: "(2/pi) z K(z) = I((2/pi) z E(z)/(1-z^2))",
    },
];

/// Catalog representer of `id`, if it has one.
pub fn representer_of(id: MeanId) -> Option<MeanId> {
    PAIR_CATALOG
        .iter()
        .find(|e| e.represented == id)
        .map(|e| e.representer)
}

/// `A(x, y) ∫₀¹ dt / N^{t}(x, y)`, which is scale free.
fn scaled_representation_integral<T: Real>(
    n: &Mean<T>,
    p: PositivePair<T>,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    let a = p.arithmetic();
    try_integrate(|t: T| Ok(a / n.eval_deformed(p, t)?), T::zero(), T::one(), cfg)
}

/// `∫₀¹ dt / N^{t}(x, y)`.
pub fn representation_integral<T: Real>(
    n: &Mean<T>,
    p: PositivePair<T>,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    Ok(scaled_representation_integral(n, p, cfg)? / p.arithmetic())
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityPoint<T> {
    pub pair: PositivePair<T>,
    pub z: T,
    /// `∫₀¹ dt / N^{t}(x, y)`
    pub integral: Option<T>,
    /// `|M(x, y) ∫₀¹ dt / N^{t}(x, y) - 1|`
    pub residual: Option<T>,
    /// `|m(z) - I(n)(z)| / m(z)`; not computed at `z = 0`.
    pub seiffert_residual: Option<T>,
    pub error: Option<Error>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport<T> {
    pub represented: String,
    pub representer: String,
    pub tolerance: T,
    pub points: Vec<IdentityPoint<T>>,
}

impl<T: Real> IdentityReport<T> {
    pub fn pass(&self) -> bool {
        self.points.iter().all(|p| p.pass)
    }

    pub fn max_residual(&self) -> T {
        self.points
            .iter()
            .flat_map(|p| [p.residual, p.seiffert_residual])
            .flatten()
            .fold(T::zero(), T::max)
    }
}

/// Checks `M(x, y) ∫₀¹ dt / N^{t}(x, y) = 1` at each point, and cross-checks
/// `m(z) = I(n)(z)` on the Seiffert side.
pub fn verify_identity<T: Real>(
    m: &Mean<T>,
    n: &Mean<T>,
    points: &[PositivePair<T>],
    cfg: &QuadratureConfig<T>,
    tol: T,
) -> IdentityReport<T> {
    let m_fn = seiffert_of_mean(m);
    let n_fn = seiffert_of_mean(n);
    let check = |p: PositivePair<T>| -> Result<(T, T, Option<T>)> {
        let j = scaled_representation_integral(n, p, cfg)?;
        let a = p.arithmetic();
        let mv = m.eval(p)?;
        let residual = (mv / a * j - T::one()).abs();
        let z = p.spread();
        let seiffert_residual = if z > T::zero() {
            let mz = m_fn.eval(z)?;
            let iz = apply_i_operator(&n_fn, z, cfg)?;
            Some((mz - iz).abs() / mz)
        } else {
            None
        };
        Ok((j / a, residual, seiffert_residual))
    };
    let points = points
        .iter()
        .map(|&pair| {
            let z = pair.spread();
            match check(pair) {
                Ok((integral, residual, seiffert_residual)) => IdentityPoint {
                    pair,
                    z,
                    integral: Some(integral),
                    residual: Some(residual),
                    seiffert_residual,
                    error: None,
                    pass: residual <= tol && seiffert_residual.is_none_or(|r| r <= tol),
                },
                Err(e) => IdentityPoint {
                    pair,
                    z,
                    integral: None,
                    residual: None,
                    seiffert_residual: None,
                    error: Some(e),
                    pass: false,
                },
            }
        })
        .collect();
    IdentityReport {
        represented: m.label().to_string(),
        representer: n.label().to_string(),
        tolerance: tol,
        points,
    }
}

/// `(|x-y| / (2 log(A/min)), |x-y| / (2 log(max/A)))`; both are `x` on the
/// diagonal.
pub fn log_envelope_bounds<T: Real>(p: PositivePair<T>) -> (T, T) {
    if p.is_diagonal() {
        return (p.x(), p.x());
    }
    let (lo, hi) = (p.lo(), p.hi());
    let a = p.arithmetic();
    let half_gap = (hi - lo) * T::half();
    (
        half_gap / (half_gap / lo).ln_1p(),
        half_gap / (half_gap / a).ln_1p(),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopePoint<T> {
    pub pair: PositivePair<T>,
    pub z: T,
    pub lower: T,
    pub value: Option<T>,
    pub upper: T,
    /// `min(M - lower, upper - M) / A`
    pub margin: Option<T>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeReport<T> {
    pub mean: String,
    pub points: Vec<EnvelopePoint<T>>,
}

impl<T: Real> EnvelopeReport<T> {
    pub fn pass(&self) -> bool {
        self.points.iter().all(|p| p.pass)
    }
}

/// Checks the logarithmic envelope every harmonically represented mean
/// lies in. Passing does not imply representability.
pub fn log_envelope_check<T: Real>(m: &Mean<T>, points: &[PositivePair<T>]) -> EnvelopeReport<T> {
    let slack = T::bound_slack();
    let points = points
        .iter()
        .map(|&pair| {
            let (lower, upper) = log_envelope_bounds(pair);
            let value = m.eval(pair).ok();
            let margin = value.map(|v| (v - lower).min(upper - v) / pair.arithmetic());
            let pass = value.is_some_and(|v| {
                v >= lower * (T::one() - slack) && v <= upper * (T::one() + slack)
            });
            EnvelopePoint {
                pair,
                z: pair.spread(),
                lower,
                value,
                upper,
                margin,
                pass,
            }
        })
        .collect();
    EnvelopeReport {
        mean: m.label().to_string(),
        points,
    }
}

/// `g(z) = artanh z + z³ sin(100 z) / 20`: stays inside the logarithmic
/// envelope (the perturbation is below `-log(1 - z²)/2 >= z²/2` on both
/// sides) while `g'` leaves `[1/(1+z), 1/(1-z)]` from `z ≈ 0.57` on, on both
/// sides. Not a catalog mean.
pub fn counterexample_fixture<T: Real>() -> SeiffertFunction<T> {
    let amp = T::lit(0.05);
    let freq = T::lit(100.0);
    SeiffertFunction::new("artanh+z^3 sin(100z)/20", move |z: T| {
        Ok(z.atanh() + amp * z * z * z * (freq * z).sin())
    })
    .with_derivative(move |z: T| {
        let (s, c) = (freq * z).sin_cos();
        let z2 = z * z;
        Ok((T::one() - z2).recip() + amp * (T::lit(3.0) * z2 * s + freq * z2 * z * c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::means::catalog_seiffert;

    #[test]
    fn candidates_of_inverse_functions() {
        let grid = GridSpec::<f64>::unit_default();
        for (m, n) in [
            (MeanId::L, MeanId::H),
            (MeanId::P, MeanId::G),
            (MeanId::NS, MeanId::R),
        ] {
            let cand = construct_candidate(&catalog_seiffert::<f64>(m));
            let target = catalog_seiffert::<f64>(n);
            for z in grid.points() {
                let (a, b) = (cand.eval(z).unwrap(), target.eval(z).unwrap());
                assert!((a - b).abs() <= 1e-14 * b, "{m}->{n} at {z}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn tanh_is_falsified_on_the_lower_bound() {
        let v = check_representable(&catalog_seiffert::<f64>(MeanId::TANH), &GridSpec::unit_default());
        assert!(v.is_falsified());
        assert_eq!(v.violated, Some(ViolatedBound::Lower));
        let z = v.witness_z.unwrap();
        assert!(z > 0.8, "witness {z}");
        assert!(v.derivative_at_witness.unwrap() < 1.0 / (1.0 + z));
        assert!(v.margin < 0.0);
    }

    #[test]
    fn sine_is_representable() {
        let v = check_representable(&catalog_seiffert::<f64>(MeanId::SIN), &GridSpec::unit_default());
        assert!(v.is_representable());
        assert!(v.margin > 0.0);
        assert!(v.witness_z.is_none());
    }

    #[test]
    fn geometric_mean_breaks_the_upper_bound() {
        let v = check_representable(&catalog_seiffert::<f64>(MeanId::G), &GridSpec::unit_default());
        assert!(v.is_falsified());
        assert_eq!(v.violated, Some(ViolatedBound::Upper));
        let n = construct_candidate(&catalog_seiffert::<f64>(MeanId::G));
        let at = n.eval(0.9).unwrap();
        assert!((at - 10.867_061_078_079_24).abs() < 1e-11);
        assert!(at > 0.9 / 0.1);
    }

    #[test]
    fn arithmetic_is_its_own_representer() {
        let a = Mean::<f64>::catalog(MeanId::A);
        let pts = [PositivePair::new(1.0, 3.0).unwrap(), PositivePair::new(2.0, 9.0).unwrap()];
        let r = verify_identity(&a, &a, &pts, &QuadratureConfig::default(), 1e-15);
        assert!(r.pass(), "{r:?}");
    }

    #[test]
    fn first_seiffert_identity_at_one_three() {
        let p = PositivePair::new(1.0, 3.0).unwrap();
        let g = Mean::<f64>::catalog(MeanId::G);
        let j = representation_integral(&g, p, &QuadratureConfig::default()).unwrap();
        assert!((j - std::f64::consts::PI / 6.0).abs() < 1e-13);
        let r = verify_identity(&Mean::catalog(MeanId::P), &g, &[p], &QuadratureConfig::default(), 1e-9);
        assert!(r.pass());
    }

    #[test]
    fn failing_evaluator_is_reported_per_point() {
        let broken = Mean::<f64>::from_fn("broken", |p| {
            if p.hi() > 5.0 {
                Err(Error::Derivative { z: 0.0 })
            } else {
                Ok(p.arithmetic())
            }
        });
        let a = Mean::catalog(MeanId::A);
        let pts = [PositivePair::new(1.0, 3.0).unwrap(), PositivePair::new(1.0, 9.0).unwrap()];
        let r = verify_identity(&a, &broken, &pts, &QuadratureConfig::default(), 1e-9);
        assert!(r.points[0].pass);
        assert!(!r.points[1].pass);
        assert!(r.points[1].error.is_some());
        assert!(!r.pass());
    }

    #[test]
    fn envelope_examples() {
        let p = PositivePair::new(1.0, 3.0).unwrap();
        let (lo, hi) = log_envelope_bounds(p);
        assert!((lo - 1.0 / 2f64.ln()).abs() < 1e-15);
        assert!((hi - 1.0 / 1.5f64.ln()).abs() < 1e-15);
        for id in [MeanId::P, MeanId::L] {
            assert!(log_envelope_check(&Mean::catalog(id), &[p]).pass());
        }
        let d = PositivePair::new(3.0, 3.0).unwrap();
        assert_eq!(log_envelope_bounds(d), (3.0, 3.0));
    }

    #[test]
    fn counterexample_is_in_envelope_but_not_representable() {
        let g = counterexample_fixture::<f64>();
        let grid = GridSpec::<f64>::unit_default();
        for z in grid.points() {
            let v = g.eval(z).unwrap();
            let (lo, hi) = crate::calculus::log_envelope(z);
            assert!(lo <= v && v <= hi, "z={z}");
        }
        assert!(check_representable(&g, &grid).is_falsified());
    }
}

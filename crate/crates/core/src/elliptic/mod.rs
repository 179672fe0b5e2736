//! Arithmetic-geometric mean and complete elliptic integrals.
//!
//! Everything here uses the *modulus* convention:
//!
//! ```text
//! K(z) = ∫₀^{π/2} dφ / sqrt(1 - z² sin²φ),   E(z) = ∫₀^{π/2} sqrt(1 - z² sin²φ) dφ
//! ```
//!
//! `K` is available through three independent routes (AGM, power series,
//! quadrature); the AGM route is the default. Gauss's identity
//! `AGM(1 - z, 1 + z) = π / (2 K(z))` ties the AGM mean to `K`, and gives the
//! Seiffert function of the AGM, `f(z) = (2/π) z K(z)`.

pub mod exact;

use crate::calculus::{integrate, QuadratureConfig};
use crate::error::{Error, Result};
use crate::means::PositivePair;
use crate::scalar::Real;

const MAX_AGM_STEPS: usize = 64;

/// Largest modulus `K` accepts.
pub const MODULUS_CAP: f64 = 1.0 - 1e-12;

/// Truncation rule for the power series in `z²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesBudget<T> {
    /// Stop once a term falls below this fraction of the running sum.
    pub term_tolerance: T,
    pub max_terms: usize,
}

impl<T: Real> Default for SeriesBudget<T> {
    fn default() -> Self {
        Self {
            term_tolerance: T::lit(1e-16).max(T::epsilon() * T::lit(0.25)),
            max_terms: 10_000,
        }
    }
}

/// Evaluation route for `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KMethod {
    Series,
    Quadrature,
    #[default]
    Agm,
}

fn agm_tolerance<T: Real>() -> T {
    T::lit(1e-15).max(T::epsilon() * T::lit(4.0))
}

/// AGM iteration from `(a, b)` with `a >= b > 0`.
pub(crate) fn agm_raw<T: Real>(a: T, b: T) -> T {
    let tol = agm_tolerance::<T>();
    let (mut a, mut b) = (a.max(b), a.min(b));
    for _ in 0..MAX_AGM_STEPS {
        if a - b <= tol * a {
            break;
        }
        let next = (a + b) * T::half();
        b = a.sqrt() * b.sqrt();
        a = next;
    }
    (a + b) * T::half()
}

/// Arithmetic-geometric mean: the common limit of `a ← (a+b)/2`,
/// `b ← sqrt(ab)`, stopped once `|a - b| <= 1e-15 a`.
pub fn agm<T: Real>(p: PositivePair<T>) -> T {
    if p.is_diagonal() {
        return p.x();
    }
    agm_raw(p.hi(), p.lo())
}

fn check_k_modulus<T: Real>(z: T) -> Result<()> {
    let cap = T::lit(MODULUS_CAP).min(T::one() - T::epsilon());
    if z >= T::zero() && z <= cap {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "elliptic K modulus",
            value: z.as_f64(),
        })
    }
}

/// Complementary modulus `sqrt(1 - z²)`, factored to keep precision near 1.
fn complement<T: Real>(z: T) -> T {
    ((T::one() - z) * (T::one() + z)).sqrt()
}

pub fn ellip_k<T: Real>(z: T, method: KMethod) -> Result<T> {
    match method {
        KMethod::Agm => ellip_k_agm(z),
        KMethod::Series => ellip_k_series(z, SeriesBudget::default()),
        KMethod::Quadrature => ellip_k_quadrature(z, &oracle_quadrature()),
    }
}

/// `K(z) = π / (2 AGM(1, sqrt(1 - z²)))`.
pub fn ellip_k_agm<T: Real>(z: T) -> Result<T> {
    check_k_modulus(z)?;
    if z == T::zero() {
        return Ok(T::FRAC_PI_2());
    }
    Ok(T::PI() / (T::two() * agm_raw(T::one(), complement(z))))
}

/// `K(z) = (π/2) Σ a_m z^{2m}` with `a_m = [(2m-1)!!/(2m)!!]²`, the
/// coefficients generated by `a_{m+1} = a_m ((2m+1)/(2m+2))²`.
pub fn ellip_k_series<T: Real>(z: T, budget: SeriesBudget<T>) -> Result<T> {
    check_k_modulus(z)?;
    let w = z * z;
    let sum = sum_series(w, budget, |_| T::one())?;
    Ok(T::FRAC_PI_2() * sum)
}

/// Σ_{m>=0} weight(m) a_m w^m, stopping on the relative term tolerance.
fn sum_series<T: Real>(w: T, budget: SeriesBudget<T>, weight: impl Fn(usize) -> T) -> Result<T> {
    let mut sum = weight(0);
    let mut a = T::one();
    let mut power = T::one();
    for m in 0..budget.max_terms {
        let r = T::from_count(2 * m + 1) / T::from_count(2 * m + 2);
        a = a * r * r;
        power = power * w;
        let term = weight(m + 1) * a * power;
        sum = sum + term;
        if term.abs() < budget.term_tolerance * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::SeriesBudget {
        terms: budget.max_terms,
    })
}

fn oracle_quadrature<T: Real>() -> QuadratureConfig<T> {
    QuadratureConfig {
        abs_tolerance: T::lit(1e-14).max(T::epsilon() * T::lit(16.0)),
        ..QuadratureConfig::default()
    }
}

/// `K` by adaptive quadrature of its defining integral.
pub fn ellip_k_quadrature<T: Real>(z: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    check_k_modulus(z)?;
    let w = z * z;
    integrate(
        |phi: T| {
            let s = phi.sin();
            (T::one() - w * s * s).sqrt().recip()
        },
        T::zero(),
        T::FRAC_PI_2(),
        cfg,
    )
}

/// Complete elliptic integral of the second kind on `[0, 1]`, by the AGM
/// iteration that accumulates `Σ 2^{n-1} c_n²`:
/// `E = K (1 - Σ_{n>=0} 2^{n-1} c_n²)`, `c_0 = z`, `c_{n+1} = (a_n - b_n)/2`.
pub fn ellip_e<T: Real>(z: T) -> Result<T> {
    if !(z >= T::zero() && z <= T::one()) {
        return Err(Error::Domain {
            what: "elliptic E modulus",
            value: z.as_f64(),
        });
    }
    if z == T::zero() {
        return Ok(T::FRAC_PI_2());
    }
    if z == T::one() {
        return Ok(T::one());
    }
    let tol = agm_tolerance::<T>();
    let mut a = T::one();
    let mut b = complement(z);
    let mut weight = T::half();
    let mut sum = weight * z * z;
    for _ in 0..MAX_AGM_STEPS {
        let c = (a - b) * T::half();
        weight = weight * T::two();
        sum = sum + weight * c * c;
        let next = (a + b) * T::half();
        b = a.sqrt() * b.sqrt();
        a = next;
        if c.abs() <= tol * a {
            break;
        }
    }
    Ok(T::PI() / (T::two() * a) * (T::one() - sum))
}

/// `E` by adaptive quadrature of its defining integral.
pub fn ellip_e_quadrature<T: Real>(z: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    if !(z >= T::zero() && z <= T::one()) {
        return Err(Error::Domain {
            what: "elliptic E modulus",
            value: z.as_f64(),
        });
    }
    let w = z * z;
    integrate(
        |phi: T| {
            let s = phi.sin();
            (T::one() - w * s * s).max(T::zero()).sqrt()
        },
        T::zero(),
        T::FRAC_PI_2(),
        cfg,
    )
}

/// `K'(z) = E(z)/(z(1 - z²)) - K(z)/z`.
///
/// At `z = 0` the formula is 0/0; the limit `K'(0) = 0` is returned there.
/// Below `z = 0.05` the differentiated power series is used instead, since
/// the two terms of the formula cancel to `O(z)` from `O(1/z)`.
pub fn ellip_k_prime<T: Real>(z: T) -> Result<T> {
    check_k_modulus(z)?;
    if z == T::zero() {
        return Ok(T::zero());
    }
    if z < T::lit(0.05) {
        let w = z * z;
        // (π/2) Σ 2m a_m z^{2m-1} = (π/(2z)) Σ 2m a_m w^m
        let s = sum_series(w, SeriesBudget::default(), |m| T::from_count(2 * m))?;
        return Ok(T::FRAC_PI_2() * s / z);
    }
    let k = ellip_k_agm(z)?;
    let e = ellip_e(z)?;
    Ok(e / (z * (T::one() - z) * (T::one() + z)) - k / z)
}

/// `c(m) = (2m+1) [(2m-1)!!/(2m)!!]²`, the coefficient of `z^{2m}` in
/// `f'_AGM`; `c(0) = 1`. Built from the ratio recurrence, never from
/// factorials.
pub fn agm_coefficient<T: Real>(m: usize) -> T {
    let mut a = T::one();
    for k in 0..m {
        let r = T::from_count(2 * k + 1) / T::from_count(2 * k + 2);
        a = a * r * r;
    }
    T::from_count(2 * m + 1) * a
}

/// Seiffert function of the AGM: `f(z) = (2/π) z K(z)`.
pub fn agm_seiffert<T: Real>(z: T) -> Result<T> {
    Ok(T::FRAC_2_PI() * z * ellip_k_agm(z)?)
}

/// `f'_AGM(z) = 1 + Σ_{m>=1} c(m) z^{2m}`.
pub fn agm_seiffert_prime<T: Real>(z: T) -> Result<T> {
    agm_seiffert_prime_series(z, SeriesBudget::default())
}

pub fn agm_seiffert_prime_series<T: Real>(z: T, budget: SeriesBudget<T>) -> Result<T> {
    check_k_modulus(z)?;
    sum_series(z * z, budget, |m| T::from_count(2 * m + 1))
}

/// `f'_AGM(z) = (2/π)(K(z) + z K'(z))`.
pub fn agm_seiffert_prime_closed<T: Real>(z: T) -> Result<T> {
    Ok(T::FRAC_2_PI() * (ellip_k_agm(z)? + z * ellip_k_prime(z)?))
}

/// Derivative registered with the AGM catalog entry: the series, or
/// `(2/π) E(z)/(1 - z²)` once the series would exhaust its budget.
pub(crate) fn agm_seiffert_prime_registered<T: Real>(z: T) -> Result<T> {
    match agm_seiffert_prime(z) {
        Err(Error::SeriesBudget { .. }) => {
            Ok(T::FRAC_2_PI() * ellip_e(z)? / ((T::one() - z) * (T::one() + z)))
        }
        other => other,
    }
}

pub(crate) fn v_mean_raw<T: Real>(lo: T, hi: T) -> T {
    let a = (lo + hi) * T::half();
    let h = lo * (hi / a);
    let z = crate::means::relative_half_spread(
        PositivePair::new(lo, hi).expect("catalog pairs are positive"),
    );
    let e = ellip_e(z).expect("spread lies in [0, 1)");
    T::PI() * h / (T::two() * e)
}

/// `V(x, y) = π H(x, y) / (2 E(z))`.
pub fn v_mean<T: Real>(p: PositivePair<T>) -> T {
    if p.is_diagonal() {
        return p.x();
    }
    v_mean_raw(p.lo(), p.hi())
}

/// Seiffert function of `V`: `v(z) = (2/π) z E(z) / (1 - z²)`.
pub fn v_seiffert<T: Real>(z: T) -> Result<T> {
    let q = (T::one() - z) * (T::one() + z);
    Ok(T::FRAC_2_PI() * z * ellip_e(z)? / q)
}

/// `v'(z) = (2/π) [(2E - K)(1 - z²) + 2z²E] / (1 - z²)²`, using `E' = (E - K)/z`.
pub fn v_seiffert_prime<T: Real>(z: T) -> Result<T> {
    let q = (T::one() - z) * (T::one() + z);
    let e = ellip_e(z)?;
    let k = ellip_k_agm(z)?;
    Ok(T::FRAC_2_PI() * ((T::two() * e - k) * q + T::two() * z * z * e) / (q * q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn agm_examples() {
        let p = PositivePair::new(1.0, 2.0).unwrap();
        assert!(rel(agm(p), 1.456_791_031_046_906_9) < 1e-15);
        let p = PositivePair::new(1.0, 3.0).unwrap();
        assert!(rel(agm(p), 1.863_616_783_244_896_5) < 1e-15);
        let c = PositivePair::new(4.2, 4.2).unwrap();
        assert_eq!(agm(c), 4.2);
    }

    #[test]
    fn k_at_zero_is_half_pi() {
        for method in [KMethod::Agm, KMethod::Series, KMethod::Quadrature] {
            assert!(rel(ellip_k(0.0, method).unwrap(), FRAC_PI_2) < 1e-15);
        }
    }

    #[test]
    fn k_rejects_modulus_one() {
        assert!(ellip_k_agm(1.0).is_err());
        assert!(ellip_k_agm(1.0 - 1e-13).is_err());
        assert!(ellip_k_agm(-0.1).is_err());
        assert!(ellip_k_agm(1.0 - 1e-11).is_ok());
    }

    #[test]
    fn e_endpoints_and_domain() {
        assert_eq!(ellip_e(0.0).unwrap(), FRAC_PI_2);
        assert_eq!(ellip_e(1.0).unwrap(), 1.0);
        assert!(ellip_e(1.0 + 1e-9).is_err());
        assert!(ellip_e(-1e-9).is_err());
        // continuous into z = 1
        assert!((ellip_e(1.0f64 - 1e-12).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn k_prime_special_cases() {
        assert_eq!(ellip_k_prime(0.0).unwrap(), 0.0);
        let small = ellip_k_prime(1e-3).unwrap();
        // K'(z) ≈ (π/2)(z/2 + 9z³/16)
        assert!(rel(small, FRAC_PI_2 * (0.5e-3 + 9.0 / 16.0 * 1e-9)) < 1e-9);
        // formula and series meet at the switch
        let below = ellip_k_prime(0.05 - 1e-12).unwrap();
        let above = ellip_k_prime(0.05).unwrap();
        assert!(rel(below, above) < 1e-10);
    }

    #[test]
    fn coefficient_first_terms() {
        assert_eq!(agm_coefficient::<f64>(0), 1.0);
        assert_eq!(agm_coefficient::<f64>(1), 0.75);
        assert!(rel(agm_coefficient::<f64>(2) / agm_coefficient::<f64>(1), 15.0 / 16.0) < 1e-15);
    }

    #[test]
    fn series_budget_exhaustion_is_an_error() {
        let tiny = SeriesBudget {
            term_tolerance: 1e-16,
            max_terms: 5,
        };
        assert!(matches!(
            ellip_k_series(0.9, tiny),
            Err(Error::SeriesBudget { terms: 5 })
        ));
    }

    #[test]
    fn v_diagonal_and_spot_value() {
        let c = PositivePair::new(2.0, 2.0).unwrap();
        assert_eq!(v_mean(c), 2.0);
        let p = PositivePair::new(1.0, 3.0).unwrap();
        assert!(rel(v_mean(p), PI * 1.5 / (2.0 * ellip_e(0.5).unwrap())) < 1e-15);
    }

    #[test]
    fn registered_agm_derivative_falls_back_near_one() {
        let z = 0.999_99;
        assert!(agm_seiffert_prime(z).is_err());
        let d = agm_seiffert_prime_registered(z).unwrap();
        assert!(rel(d, agm_seiffert_prime_closed(z).unwrap()) < 1e-6);
    }
}

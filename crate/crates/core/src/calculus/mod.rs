//! Quadrature, the integral operator `I`, finite differences and shape
//! probing.

mod derivative;
mod grid;
mod quadrature;
mod shape;

pub use derivative::{default_step, derivative_estimate, Domain};
pub use grid::{GridSpec, Spacing};
pub use quadrature::{
    integrate, try_integrate, try_integrate_detailed, Integral, QuadratureConfig,
};
pub use shape::{probe_shape, probe_shape_with_tolerance, Shape, ShapeVerdict, SHAPE_TOLERANCE};

use crate::error::{Error, Result};
use crate::means::SeiffertFunction;
use crate::scalar::Real;

/// Below this abscissa `f(u)/u` is replaced by its limit 1.
const RATIO_CUTOFF: f64 = 1e-14;

/// `I(f)(z) = ∫₀^z f(u)/u du` for `z ∈ [0, 1)`.
pub fn apply_i_operator<T: Real>(
    f: &SeiffertFunction<T>,
    z: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    if !(z >= T::zero() && z < T::one()) {
        return Err(Error::Domain {
            what: "integral operator",
            value: z.as_f64(),
        });
    }
    let cutoff = T::lit(RATIO_CUTOFF);
    try_integrate(
        |u: T| {
            if u < cutoff {
                Ok(T::one())
            } else {
                Ok(f.eval(u)? / u)
            }
        },
        T::zero(),
        z,
        cfg,
    )
}

/// `I(f)` packaged as a Seiffert function with derivative `f(z)/z`.
pub fn i_transform<T: Real>(f: &SeiffertFunction<T>, cfg: QuadratureConfig<T>) -> SeiffertFunction<T> {
    let inner = f.clone();
    let ratio = f.clone();
    SeiffertFunction::new(format!("I({})", f.label()), move |z| {
        apply_i_operator(&inner, z, &cfg)
    })
    .with_derivative(move |z| ratio.ratio(z))
}

/// `(log(1 + z), -log(1 - z))`: the envelope every `I(f)` lies in.
pub fn log_envelope<T: Real>(z: T) -> (T, T) {
    (z.ln_1p(), -(-z).ln_1p())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::means::MeanId;

    fn cfg() -> QuadratureConfig<f64> {
        QuadratureConfig::default()
    }

    #[test]
    fn i_of_geometric_is_arcsin() {
        let g = SeiffertFunction::new("g", |u: f64| Ok(u / (1.0 - u * u).sqrt()));
        let v = apply_i_operator(&g, 0.5, &cfg()).unwrap();
        assert!((v - std::f64::consts::PI / 6.0).abs() < 1e-12);
    }

    #[test]
    fn i_of_contraharmonic_is_arctan() {
        let c = SeiffertFunction::new("c", |u: f64| Ok(u / (1.0 + u * u)));
        let v = apply_i_operator(&c, 0.5, &cfg()).unwrap();
        assert!((v - 0.5f64.atan()).abs() < 1e-12);
    }

    #[test]
    fn i_of_identity_is_identity() {
        let a = crate::means::catalog_seiffert::<f64>(MeanId::A);
        for z in [0.0, 1e-9, 0.3, 0.97] {
            assert!((apply_i_operator(&a, z, &cfg()).unwrap() - z).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_z_outside_unit_interval() {
        let a = crate::means::catalog_seiffert::<f64>(MeanId::A);
        assert!(apply_i_operator(&a, 1.0, &cfg()).is_err());
        assert!(apply_i_operator(&a, -0.2, &cfg()).is_err());
    }

    #[test]
    fn transform_derivative_is_ratio() {
        let s = crate::means::catalog_seiffert::<f64>(MeanId::SIN);
        let t = i_transform(&s, cfg());
        assert_eq!(t.derivative(0.4).unwrap().unwrap(), 0.4f64.sin() / 0.4);
        // Si(0.4)
        assert!((t.eval(0.4).unwrap() - 0.396_461_464_751_372_9).abs() < 1e-13);
    }
}

use std::fmt;
use std::str::FromStr;

use crate::elliptic;
use crate::error::Error;
use crate::scalar::Real;

use super::SeiffertFunction;

/// Every mean the catalog can evaluate by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MeanId {
    A,
    G,
    H,
    C,
    R,
    L,
    P,
    T,
    NS,
    AGM,
    V,
    SIN,
    TAN,
    SINH,
    TANH,
    /// `A / cos z`
    COSMEAN,
    /// `A cos² z`
    COS2MEAN,
    /// `A / cosh z`
    COSHMEAN,
}

impl MeanId {
    pub const ALL: [MeanId; 18] = [
        MeanId::A,
        MeanId::G,
        MeanId::H,
        MeanId::C,
        MeanId::R,
        MeanId::L,
        MeanId::P,
        MeanId::T,
        MeanId::NS,
        MeanId::AGM,
        MeanId::V,
        MeanId::SIN,
        MeanId::TAN,
        MeanId::SINH,
        MeanId::TANH,
        MeanId::COSMEAN,
        MeanId::COS2MEAN,
        MeanId::COSHMEAN,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MeanId::A => "A",
            MeanId::G => "G",
            MeanId::H => "H",
            MeanId::C => "C",
            MeanId::R => "R",
            MeanId::L => "L",
            MeanId::P => "P",
            MeanId::T => "T",
            MeanId::NS => "NS",
            MeanId::AGM => "AGM",
            MeanId::V => "V",
            MeanId::SIN => "SIN",
            MeanId::TAN => "TAN",
            MeanId::SINH => "SINH",
            MeanId::TANH => "TANH",
            MeanId::COSMEAN => "COSMEAN",
            MeanId::COS2MEAN => "COS2MEAN",
            MeanId::COSHMEAN => "COSHMEAN",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            MeanId::A => "arithmetic mean",
            MeanId::G => "geometric mean",
            MeanId::H => "harmonic mean",
            MeanId::C => "contraharmonic mean",
            MeanId::R => "root mean square",
            MeanId::L => "logarithmic mean",
            MeanId::P => "first Seiffert mean",
            MeanId::T => "second Seiffert mean",
            MeanId::NS => "Neuman-Sandor mean",
            MeanId::AGM => "arithmetic-geometric mean",
            MeanId::V => "harmonic representation of the AGM",
            MeanId::SIN => "sine mean",
            MeanId::TAN => "tangent mean",
            MeanId::SINH => "hyperbolic sine mean",
            MeanId::TANH => "hyperbolic tangent mean",
            MeanId::COSMEAN => "cosine-deflated arithmetic mean",
            MeanId::COS2MEAN => "squared-cosine arithmetic mean",
            MeanId::COSHMEAN => "hyperbolic-cosine-deflated arithmetic mean",
        }
    }

    /// Closed form, with `z = |x-y|/(x+y)` and `A = (x+y)/2`.
    pub fn closed_form(self) -> &'static str {
        match self {
            MeanId::A => "(x+y)/2",
            MeanId::G => "sqrt(xy)",
            MeanId::H => "2xy/(x+y)",
            MeanId::C => "(x^2+y^2)/(x+y)",
            MeanId::R => "sqrt((x^2+y^2)/2)",
            MeanId::L => "(x-y)/(log x - log y)",
            MeanId::P => "|x-y|/(2 arcsin z)",
            MeanId::T => "|x-y|/(2 arctan z)",
            MeanId::NS => "|x-y|/(2 arsinh z)",
            MeanId::AGM => "common limit of a <- (a+b)/2, b <- sqrt(ab)",
            MeanId::V => "pi H(x,y) / (2 E(z))",
            MeanId::SIN => "|x-y|/(2 sin z)",
            MeanId::TAN => "|x-y|/(2 tan z)",
            MeanId::SINH => "|x-y|/(2 sinh z)",
            MeanId::TANH => "|x-y|/(2 tanh z)",
            MeanId::COSMEAN => "A / cos z",
            MeanId::COS2MEAN => "A cos^2 z",
            MeanId::COSHMEAN => "A / cosh z",
        }
    }
}

impl fmt::Display for MeanId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeanId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim();
        MeanId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| Error::UnknownMean(s.to_string()))
    }
}

pub(super) fn spread<T: Real>(lo: T, hi: T) -> T {
    let z = (hi - lo) / (hi + lo);
    z.min(T::one() - T::epsilon() * T::half())
}

/// Catalog evaluator for `lo < hi`.
pub(super) fn eval<T: Real>(id: MeanId, lo: T, hi: T) -> T {
    let a = (lo + hi) * T::half();
    let z = spread(lo, hi);
    if z == T::zero() {
        return a;
    }
    // |x - y| / (2 f(z)) = A z / f(z)
    let via = |f: T| a * z / f;
    match id {
        MeanId::A => a,
        MeanId::G => lo.sqrt() * hi.sqrt(),
        MeanId::H => lo * (hi / a),
        MeanId::C => a * (T::one() + z * z),
        MeanId::R => a * (T::one() + z * z).sqrt(),
        MeanId::L => {
            if z < T::lit(1e-8) {
                // z / artanh z = 1 - z²/3 - 4z⁴/45 - ...
                a * (T::one() - z * z / T::lit(3.0))
            } else if z < T::half() {
                via(z.atanh())
            } else {
                (hi - lo) / (hi.ln() - lo.ln())
            }
        }
        MeanId::P => {
            // arcsin z = atan2(|x-y|/2, G) avoids the 1 - z² cancellation.
            let half_gap = (hi - lo) * T::half();
            half_gap / half_gap.atan2(lo.sqrt() * hi.sqrt())
        }
        MeanId::T => via(z.atan()),
        MeanId::NS => via(z.asinh()),
        MeanId::AGM => elliptic::agm_raw(lo, hi),
        MeanId::V => elliptic::v_mean_raw(lo, hi),
        MeanId::SIN => via(z.sin()),
        MeanId::TAN => via(z.tan()),
        MeanId::SINH => via(z.sinh()),
        MeanId::TANH => via(z.tanh()),
        MeanId::COSMEAN => a / z.cos(),
        MeanId::COS2MEAN => {
            let c = z.cos();
            a * c * c
        }
        MeanId::COSHMEAN => a / z.cosh(),
    }
}

/// Closed-form Seiffert function of a catalog mean with its derivative.
pub fn seiffert<T: Real>(id: MeanId) -> SeiffertFunction<T> {
    let one = T::one();
    let label = format!("f[{id}]");
    match id {
        MeanId::A => SeiffertFunction::new(label, Ok).with_derivative(move |_| Ok(one)),
        MeanId::G => SeiffertFunction::new(label, |z: T| Ok(z / (T::one() - z * z).sqrt()))
            .with_derivative(|z: T| Ok((T::one() - z * z).powf(T::lit(-1.5)))),
        MeanId::H => SeiffertFunction::new(label, |z: T| Ok(z / (T::one() - z * z)))
            .with_derivative(|z: T| {
                let q = T::one() - z * z;
                Ok((T::one() + z * z) / (q * q))
            }),
        MeanId::C => SeiffertFunction::new(label, |z: T| Ok(z / (T::one() + z * z)))
            .with_derivative(|z: T| {
                let q = T::one() + z * z;
                Ok((T::one() - z * z) / (q * q))
            }),
        MeanId::R => SeiffertFunction::new(label, |z: T| Ok(z / (T::one() + z * z).sqrt()))
            .with_derivative(|z: T| Ok((T::one() + z * z).powf(T::lit(-1.5)))),
        MeanId::L => SeiffertFunction::new(label, |z: T| Ok(z.atanh()))
            .with_derivative(|z: T| Ok((T::one() - z * z).recip())),
        MeanId::P => SeiffertFunction::new(label, |z: T| Ok(z.asin()))
            .with_derivative(|z: T| Ok((T::one() - z * z).sqrt().recip())),
        MeanId::T => SeiffertFunction::new(label, |z: T| Ok(z.atan()))
            .with_derivative(|z: T| Ok((T::one() + z * z).recip())),
        MeanId::NS => SeiffertFunction::new(label, |z: T| Ok(z.asinh()))
            .with_derivative(|z: T| Ok((T::one() + z * z).sqrt().recip())),
        MeanId::AGM => SeiffertFunction::new(label, elliptic::agm_seiffert)
            .with_derivative(elliptic::agm_seiffert_prime_registered),
        MeanId::V => SeiffertFunction::new(label, elliptic::v_seiffert)
            .with_derivative(elliptic::v_seiffert_prime),
        MeanId::SIN => {
            SeiffertFunction::new(label, |z: T| Ok(z.sin())).with_derivative(|z: T| Ok(z.cos()))
        }
        MeanId::TAN => SeiffertFunction::new(label, |z: T| Ok(z.tan())).with_derivative(|z: T| {
            let c = z.cos();
            Ok((c * c).recip())
        }),
        MeanId::SINH => {
            SeiffertFunction::new(label, |z: T| Ok(z.sinh())).with_derivative(|z: T| Ok(z.cosh()))
        }
        MeanId::TANH => SeiffertFunction::new(label, |z: T| Ok(z.tanh())).with_derivative(|z: T| {
            let c = z.cosh();
            Ok((c * c).recip())
        }),
        MeanId::COSMEAN => SeiffertFunction::new(label, |z: T| Ok(z * z.cos()))
            .with_derivative(|z: T| Ok(z.cos() - z * z.sin())),
        MeanId::COS2MEAN => SeiffertFunction::new(label, |z: T| {
            let c = z.cos();
            Ok(z / (c * c))
        })
        .with_derivative(|z: T| {
            let (s, c) = z.sin_cos();
            Ok((c + T::two() * z * s) / (c * c * c))
        }),
        MeanId::COSHMEAN => SeiffertFunction::new(label, |z: T| Ok(z * z.cosh()))
            .with_derivative(|z: T| Ok(z.cosh() + z * z.sinh())),
    }
}

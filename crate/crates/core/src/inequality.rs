//! Hermite–Hadamard sandwiches for harmonically represented means, and a
//! grid verifier for chains of mean inequalities.
//!
//! If `1/M = ∫₀¹ dt / N^{t}` and `n(u)/u` is convex, then
//! `H(A, N) <= H(A, N^{1/2}, N^{1/2}, N) <= M <= N^{1/2}`; for concave
//! `n(u)/u` the order reverses.

use crate::error::{Error, Result};
use crate::means::{
    deform_mean, eval_mean, harmonic_with_arithmetic, refined_harmonic, Deform, Mean, MeanId,
    PositivePair,
};
use crate::scalar::Real;

/// Default margin tolerance of [`run_chain_suite`].
pub const CHAIN_TOLERANCE: f64 = 1e-10;

/// `(H(A, N), N^{1/2})` at `p`.
pub fn hh_bounds<T: Real>(n: MeanId, p: PositivePair<T>) -> (T, T) {
    let a = p.arithmetic();
    let v = eval_mean(n, p);
    let half = eval_mean(n, half_pull(p));
    (T::two() * a * v / (a + v), half)
}

/// `H(A, N^{1/2}, N^{1/2}, N)` at `p`.
pub fn hh_refined_lower<T: Real>(n: MeanId, p: PositivePair<T>) -> T {
    let a = p.arithmetic();
    let v = eval_mean(n, p);
    let half = eval_mean(n, half_pull(p));
    T::lit(4.0) / (a.recip() + T::two() / half + v.recip())
}

/// `((3x+y)/4, (x+3y)/4)`.
fn half_pull<T: Real>(p: PositivePair<T>) -> PositivePair<T> {
    let quarter = (p.hi() - p.lo()) * T::lit(0.25);
    PositivePair::new(p.lo() + quarter, p.hi() - quarter).expect("pulled pair stays positive")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaKind {
    /// `4u/(4+u²) > arctan u > u(2+u²)/(2+2u²)`
    Arctan,
    /// `2u/√(u²+4) >= arsinh u >= u/2 + u/(2√(u²+1))`
    Arsinh,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaValues<T> {
    pub lower: T,
    pub value: T,
    pub upper: T,
}

impl<T: Real> LemmaValues<T> {
    pub fn holds_strictly(&self) -> bool {
        self.lower < self.value && self.value < self.upper
    }
}

/// Evaluates the two-sided envelope of `arctan` or `arsinh` at `u ∈ (0, 1)`.
pub fn envelope_lemma<T: Real>(kind: LemmaKind, u: T) -> Result<LemmaValues<T>> {
    if !(u > T::zero() && u < T::one()) {
        return Err(Error::Domain {
            what: "envelope lemma",
            value: u.as_f64(),
        });
    }
    let u2 = u * u;
    let two = T::two();
    let four = T::lit(4.0);
    Ok(match kind {
        LemmaKind::Arctan => LemmaValues {
            lower: u * (two + u2) / (two + two * u2),
            value: u.atan(),
            upper: four * u / (four + u2),
        },
        LemmaKind::Arsinh => LemmaValues {
            lower: u * T::half() + u / (two * (u2 + T::one()).sqrt()),
            value: u.asinh(),
            upper: two * u / (u2 + four).sqrt(),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `n(u)/u` convex: the harmonic lower bound sits below `M`.
    Convex,
    /// `n(u)/u` concave, or a lemma-backed reversal.
    Reversed,
}

/// Terms listed in ascending order: the chain claims
/// `terms[0] <= terms[1] <= … <= terms[k]`.
#[derive(Clone)]
pub struct ChainSpec<T> {
    pub name: String,
    pub terms: Vec<Mean<T>>,
    pub direction: Direction,
    pub note: String,
}

impl<T: Real> std::fmt::Debug for ChainSpec<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChainSpec")
            .field("name", &self.name)
            .field("terms", &self.term_labels())
            .field("direction", &self.direction)
            .finish()
    }
}

impl<T: Real> ChainSpec<T> {
    pub fn term_labels(&self) -> Vec<String> {
        self.terms.iter().map(|t| t.label().to_string()).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainPoint<T> {
    pub index: usize,
    pub pair: PositivePair<T>,
    pub z: T,
    /// Term values; empty when the point was skipped.
    pub values: Vec<T>,
    /// `(terms[i+1] - terms[i]) / A(x, y)`.
    pub margins: Vec<T>,
    pub error: Option<Error>,
}

impl<T: Real> ChainPoint<T> {
    pub fn skipped(&self) -> bool {
        self.error.is_some()
    }

    pub fn min_margin(&self) -> Option<T> {
        self.margins.iter().copied().reduce(T::min)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport<T> {
    pub chain: String,
    pub terms: Vec<String>,
    pub tolerance: T,
    pub points: Vec<ChainPoint<T>>,
}

impl<T: Real> ChainReport<T> {
    /// Smallest margin over all evaluated points (`+inf` when none).
    pub fn min_margin(&self) -> T {
        self.points
            .iter()
            .filter_map(ChainPoint::min_margin)
            .fold(T::infinity(), T::min)
    }

    /// Smallest margin over points with `x != y`.
    pub fn min_margin_unequal(&self) -> T {
        self.points
            .iter()
            .filter(|p| !p.pair.is_diagonal())
            .filter_map(ChainPoint::min_margin)
            .fold(T::infinity(), T::min)
    }

    pub fn skipped(&self) -> usize {
        self.points.iter().filter(|p| p.skipped()).count()
    }

    /// First point whose margin drops below `-tolerance`, or that was skipped.
    pub fn failing_point(&self) -> Option<&ChainPoint<T>> {
        self.points.iter().find(|p| {
            p.skipped() || p.min_margin().is_some_and(|m| m < -self.tolerance)
        })
    }

    pub fn pass(&self) -> bool {
        self.failing_point().is_none()
    }
}

/// Evaluates every term at every pair and records the scaled gaps between
/// neighbours. A term that fails to evaluate skips its point.
pub fn run_chain_suite<T: Real>(
    spec: &ChainSpec<T>,
    pairs: &[PositivePair<T>],
    tol: T,
) -> ChainReport<T> {
    let points = pairs
        .iter()
        .enumerate()
        .map(|(index, &pair)| {
            let z = pair.spread();
            match spec.terms.iter().map(|t| t.eval(pair)).collect::<Result<Vec<T>>>() {
                Ok(values) => {
                    let a = pair.arithmetic();
                    let margins = values.windows(2).map(|w| (w[1] - w[0]) / a).collect();
                    ChainPoint {
                        index,
                        pair,
                        z,
                        values,
                        margins,
                        error: None,
                    }
                }
                Err(e) => ChainPoint {
                    index,
                    pair,
                    z,
                    values: Vec::new(),
                    margins: Vec::new(),
                    error: Some(e),
                },
            }
        })
        .collect();
    ChainReport {
        chain: spec.name.clone(),
        terms: spec.term_labels(),
        tolerance: tol,
        points,
    }
}

/// `N^{1/2}`.
pub fn half_deformation<T: Real>(n: &Mean<T>) -> Mean<T> {
    deform_mean(n, Deform::half()).with_label(format!("{}^{{1/2}}", n.label()))
}

/// The four-term sandwich built from `N`, ordered for `direction`.
pub fn generic_chain<T: Real>(
    name: impl Into<String>,
    m: &Mean<T>,
    n: &Mean<T>,
    direction: Direction,
) -> ChainSpec<T> {
    let mut terms = vec![
        harmonic_with_arithmetic(n),
        refined_harmonic(n),
        m.clone(),
        half_deformation(n),
    ];
    if direction == Direction::Reversed {
        terms.reverse();
    }
    ChainSpec {
        name: name.into(),
        terms,
        direction,
        note: format!("Hermite-Hadamard sandwich of {} by {}", m.label(), n.label()),
    }
}

pub const BUILTIN_CHAIN_NAMES: [&str; 8] = [
    "hh-P-G", "hh-T-C", "hh-L-H", "hh-NS-R", "hh-SIN", "hh-TAN", "hh-SINH", "hh-AGM-V",
];

fn three_term<T: Real>(name: &str, m: MeanId, n: MeanId, direction: Direction, note: &str) -> ChainSpec<T> {
    let nm = Mean::catalog(n);
    let (lo, hi) = match direction {
        Direction::Convex => (harmonic_with_arithmetic(&nm), half_deformation(&nm)),
        Direction::Reversed => (half_deformation(&nm), harmonic_with_arithmetic(&nm)),
    };
    ChainSpec {
        name: name.to_string(),
        terms: vec![lo, Mean::catalog(m), hi],
        direction,
        note: note.to_string(),
    }
}

/// Looks up a named chain.
pub fn builtin_chain<T: Real>(name: &str) -> Result<ChainSpec<T>> {
    use Direction::*;
    use MeanId::*;
    let four_term = |m: MeanId, n: MeanId, note: &str| {
        let mut c = generic_chain(name, &Mean::catalog(m), &Mean::catalog(n), Convex);
        c.note = note.to_string();
        c
    };
    Ok(match name {
        "hh-P-G" => four_term(P, G, "(1-u^2)^(-1/2) is convex"),
        "hh-T-C" => three_term(name, T, C, Reversed, "arctan envelope lemma"),
        "hh-L-H" => four_term(L, H, "(1-u^2)^(-1) is convex"),
        "hh-NS-R" => three_term(name, NS, R, Reversed, "arsinh envelope lemma"),
        "hh-SIN" => three_term(name, SIN, COSMEAN, Reversed, "cos is concave"),
        "hh-TAN" => three_term(name, TAN, COS2MEAN, Convex, "1/cos^2 is convex"),
        "hh-SINH" => three_term(name, SINH, COSHMEAN, Convex, "cosh is convex"),
        "hh-AGM-V" => three_term(name, AGM, V, Convex, "v(z)/z is convex"),
        other => return Err(Error::UnknownChain(other.to_string())),
    })
}

pub fn builtin_chains<T: Real>() -> Vec<ChainSpec<T>> {
    BUILTIN_CHAIN_NAMES
        .iter()
        .map(|n| builtin_chain(n).expect("builtin name"))
        .collect()
}

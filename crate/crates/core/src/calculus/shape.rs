use crate::scalar::Real;

use super::GridSpec;

/// Default tie tolerance of the midpoint test.
pub const SHAPE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Convex,
    Concave,
    /// Passes both tests, e.g. a line.
    Affine,
    Neither,
}

/// Outcome of a midpoint-convexity probe. This is falsification only: a
/// `Convex` verdict means no violation was found on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeVerdict<T> {
    pub classification: Shape,
    /// `(a, (a+b)/2, b)` where convexity fails worst; set only for `Neither`.
    pub witness: Option<[T; 3]>,
    /// Largest `f((a+b)/2) - (f(a)+f(b))/2` seen (positive refutes convexity).
    pub max_excess: T,
    /// Smallest such difference (negative refutes concavity).
    pub min_excess: T,
}

impl<T> ShapeVerdict<T> {
    pub fn is_convex(&self) -> bool {
        matches!(self.classification, Shape::Convex | Shape::Affine)
    }

    pub fn is_concave(&self) -> bool {
        matches!(self.classification, Shape::Concave | Shape::Affine)
    }
}

pub fn probe_shape<T: Real, F: Fn(T) -> T>(f: F, grid: &GridSpec<T>) -> ShapeVerdict<T> {
    probe_shape_with_tolerance(f, grid, T::lit(SHAPE_TOLERANCE))
}

/// Compares `f((a+b)/2)` with `(f(a)+f(b))/2` over every triple of adjacent
/// grid points `a = g[i]`, `b = g[i+2]`. A non-finite value counts against
/// both shapes.
pub fn probe_shape_with_tolerance<T: Real, F: Fn(T) -> T>(
    f: F,
    grid: &GridSpec<T>,
    tol: T,
) -> ShapeVerdict<T> {
    let pts = grid.points();
    let values: Vec<T> = pts.iter().map(|&x| f(x)).collect();
    let mut max_excess = T::neg_infinity();
    let mut min_excess = T::infinity();
    let mut worst: Option<[T; 3]> = None;
    let mut convex = true;
    let mut concave = true;
    for i in 0..pts.len().saturating_sub(2) {
        let (a, b) = (pts[i], pts[i + 2]);
        let mid = (a + b) * T::half();
        let excess = f(mid) - (values[i] + values[i + 2]) * T::half();
        if !excess.is_finite() {
            convex = false;
            concave = false;
            worst.get_or_insert([a, mid, b]);
            continue;
        }
        if excess > max_excess {
            max_excess = excess;
            if excess > tol {
                worst = Some([a, mid, b]);
            }
        }
        min_excess = min_excess.min(excess);
        if excess > tol {
            convex = false;
        }
        if excess < -tol {
            concave = false;
        }
    }
    let classification = match (convex, concave) {
        (true, true) => Shape::Affine,
        (true, false) => Shape::Convex,
        (false, true) => Shape::Concave,
        (false, false) => Shape::Neither,
    };
    ShapeVerdict {
        classification,
        witness: (classification == Shape::Neither).then_some(worst).flatten(),
        max_excess,
        min_excess,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> GridSpec<f64> {
        GridSpec::uniform(0.0, 1.0, 101).unwrap()
    }

    #[test]
    fn square_is_convex() {
        let v = probe_shape(|u: f64| u * u, &grid());
        assert_eq!(v.classification, Shape::Convex);
        assert!(v.witness.is_none());
    }

    #[test]
    fn inverse_root_is_convex() {
        let g = GridSpec::uniform(0.001, 0.999, 200).unwrap();
        let v = probe_shape(|u: f64| (1.0 - u * u).powf(-0.5), &g);
        assert_eq!(v.classification, Shape::Convex);
    }

    #[test]
    fn cosine_is_concave() {
        assert_eq!(probe_shape(f64::cos, &grid()).classification, Shape::Concave);
    }

    #[test]
    fn line_is_affine() {
        let v = probe_shape(|u: f64| 3.0 * u - 1.0, &grid());
        assert_eq!(v.classification, Shape::Affine);
        assert!(v.is_convex() && v.is_concave());
    }

    #[test]
    fn sine_over_full_period_has_witness() {
        let g = GridSpec::uniform(0.0, 6.0, 61).unwrap();
        let v = probe_shape(f64::sin, &g);
        assert_eq!(v.classification, Shape::Neither);
        let [a, m, b] = v.witness.unwrap();
        assert!(a < m && m < b);
        // the witness refutes convexity
        assert!(m.sin() > (a.sin() + b.sin()) / 2.0 + 1e-12);
    }
}

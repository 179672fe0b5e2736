//! Exact rational arithmetic for the `f'_AGM` coefficients
//! `c(m) = (2m+1) [(2m-1)!!/(2m)!!]²`.
//!
//! These are computed straight from the double factorials in arbitrary
//! precision and serve as the reference for the floating-point recurrence.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

/// `n!! = n (n-2) (n-4) ...`, with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// `c(m)` as a reduced fraction; `c(0) = 1`.
pub fn coefficient(m: u64) -> BigRational {
    if m == 0 {
        return BigRational::one();
    }
    let odd = double_factorial(2 * m - 1);
    let even = double_factorial(2 * m);
    let num = BigInt::from(2 * m + 1) * BigInt::from(&odd * &odd);
    let den = BigInt::from(&even * &even);
    BigRational::new(num, den)
}

/// `(2m+1)(2m+3)/(2m+2)²`, the claimed value of `c(m+1)/c(m)`.
pub fn ratio_formula(m: u64) -> BigRational {
    BigRational::new(
        BigInt::from((2 * m + 1) * (2 * m + 3)),
        BigInt::from((2 * m + 2) * (2 * m + 2)),
    )
}

/// Outcome of [`audit_coefficients`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoefficientAudit {
    pub checked: u64,
    /// `m` for which `c(m+1)/c(m)` differs from [`ratio_formula`].
    pub ratio_failures: Vec<u64>,
    /// `m` for which `c(m) >= 1`.
    pub not_below_one: Vec<u64>,
}

impl CoefficientAudit {
    pub fn passed(&self) -> bool {
        self.ratio_failures.is_empty() && self.not_below_one.is_empty()
    }
}

/// Checks the ratio identity for `1 <= m <= max_m` and `c(m) < 1` for
/// `1 <= m <= max_m + 1`, carrying the double factorials incrementally and
/// comparing by cross-multiplication.
pub fn audit_coefficients(max_m: u64) -> CoefficientAudit {
    let mut audit = CoefficientAudit::default();
    // (2m-1)!! and (2m)!! at m = 1
    let mut odd = BigUint::one();
    let mut even = BigUint::from(2u32);
    let frac = |m: u64, odd: &BigUint, even: &BigUint| {
        (BigUint::from(2 * m + 1) * odd * odd, even * even)
    };
    let (mut num, mut den) = frac(1, &odd, &even);
    if num >= den {
        audit.not_below_one.push(1);
    }
    for m in 1..=max_m {
        odd *= 2 * m + 1;
        even *= 2 * m + 2;
        let (next_num, next_den) = frac(m + 1, &odd, &even);
        // next/cur == (2m+1)(2m+3)/(2m+2)²  <=>  next·den·(2m+2)² == num·next_den·(2m+1)(2m+3)
        let lhs = &next_num * &den * BigUint::from((2 * m + 2) * (2 * m + 2));
        let rhs = &num * &next_den * BigUint::from((2 * m + 1) * (2 * m + 3));
        if lhs != rhs {
            audit.ratio_failures.push(m);
        }
        if next_num >= next_den {
            audit.not_below_one.push(m + 1);
        }
        num = next_num;
        den = next_den;
        audit.checked = m;
    }
    audit
}

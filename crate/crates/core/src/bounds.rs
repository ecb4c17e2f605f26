//! Upper bounds on the connected index of K_n and the best lower bound the
//! prime-power constructions give.
//!
//! `f_n(x) = n(n-1)/(2x)` caps the number of classes when the smallest has
//! `x` edges; `g_n(x) = (x+1)(n - x - 1/2)` caps how many classes can touch a
//! tree class with `x` edges. The integer bound takes the best `x` exactly, so
//! these are generic over the scalar: an exact rational for the bound itself,
//! floats for the real critical point.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, Num, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::construct::best_order;

/// Field-like scalar the bound functions are evaluated in.
pub trait Scalar: Num + FromPrimitive + Clone + PartialOrd + Debug {}
impl<T: Num + FromPrimitive + Clone + PartialOrd + Debug> Scalar for T {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("K_{0} is too small; at least 7 vertices are needed")]
    TooSmall(usize),
}

fn lift<T: Scalar>(v: u64) -> T {
    T::from_u64(v).expect("scalar represents small integers")
}

fn half<T: Scalar>() -> T {
    T::one() / (T::one() + T::one())
}

/// `n(n-1) / (2x)`.
pub fn f<T: Scalar>(n: u64, x: T) -> T {
    lift::<T>(n * (n - 1)) / (lift::<T>(2) * x)
}

/// `(x + 1)(n - x - 1/2)`.
pub fn g<T: Scalar>(n: u64, x: T) -> T {
    (x.clone() + T::one()) * (lift::<T>(n) - x - half::<T>())
}

/// `min{f_n(x), g_n(x)}`.
pub fn min_fg<T: Scalar>(n: u64, x: T) -> T {
    let (a, b) = (f(n, x.clone()), g(n, x));
    if a <= b {
        a
    } else {
        b
    }
}

/// `(floor(max_x min{f_n(x), g_n(x)}), argmax)` over natural `x` in `[1, n]`,
/// evaluated in `T` (use an exact rational to keep the floor honest).
///
/// `[1, n]` suffices: for `x` past the real crossing point (which is below
/// `n`) the minimum is at most `f_n`, which only decreases.
pub fn max_min_bound<T: Scalar + ToPrimitive>(n: u64) -> (u64, u64) {
    let mut best: Option<(T, u64)> = None;
    for x in 1..=n.max(1) {
        let v = min_fg::<T>(n, lift(x));
        if best.as_ref().map_or(true, |(b, _)| v > *b) {
            best = Some((v, x));
        }
    }
    let (value, x_star) = best.expect("at least one candidate");
    // floor, valid for any ordered field scalar with exact integers
    let mut fl = value.to_f64().unwrap_or(0.0).floor() as u64;
    while lift::<T>(fl + 1) <= value {
        fl += 1;
    }
    while fl > 0 && lift::<T>(fl) > value {
        fl -= 1;
    }
    (fl, x_star)
}

/// Upper bound on the connected index of K_n (stated for `n >= 8`), computed
/// in exact rationals. Returns `(bound, x_star)`.
pub fn connected_upper_bound(n: u64) -> (u64, u64) {
    max_min_bound::<crate::ExactRational>(n)
}

/// Real crossing point `sqrt(n/2 + 1/16) - 1/4` of `f_n` and `g_n`.
pub fn crossing_point<F: Float + FromPrimitive>(n: u64) -> F {
    let c = |v: f64| F::from_f64(v).expect("float");
    (F::from_u64(n).expect("float") / c(2.0) + c(1.0 / 16.0)).sqrt() - c(0.25)
}

/// `g_n(x0) = (n-1)(sqrt(n/2 + 1/16) + 1/4)`.
pub fn upper_bound_value<F: Float + FromPrimitive>(n: u64) -> F {
    let c = |v: f64| F::from_f64(v).expect("float");
    let nf = F::from_u64(n).expect("float");
    (nf - F::one()) * ((nf / c(2.0) + c(1.0 / 16.0)).sqrt() + c(0.25))
}

/// `|f_n(x0) - g_n(x0)| / f_n(x0)`.
pub fn crossing_residual<F: Float + FromPrimitive + Debug>(n: u64) -> F {
    let x0 = crossing_point::<F>(n);
    let (a, b) = (f(n, x0), g(n, x0));
    (a - b).abs() / a
}

/// Largest supported prime power `q` with `q^2+q+1 <= n` and the connected
/// count `ceil(q/2)(q^2+q+1)` its coloring achieves on K_n.
pub fn best_connected_lower_bound(n: usize) -> Result<(u32, u64), BoundsError> {
    let q = best_order(n).ok_or(BoundsError::TooSmall(n))?;
    let q64 = q as u64;
    Ok((q, q64.div_ceil(2) * (q64 * q64 + q64 + 1)))
}

/// Simple counting bound on the pseudoachromatic index: the smallest class
/// has `s <= C(n,2)/k` edges on at most `min(2s, n)` vertices, and each
/// other class needs its own edge at one of those vertices.
pub fn counting_bound(n: u64) -> u64 {
    let m = n * (n - 1) / 2;
    let touching = |s: u64| (2 * s).min(n) * (n - 1) - 2 * s;
    (1..=m)
        .filter(|&k| (1..=m / k).any(|s| k - 1 <= touching(s)))
        .max()
        .unwrap_or(1)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport<F> {
    pub n: u64,
    pub theorem1_bound: u64,
    pub x_star: u64,
    pub x0: F,
    pub theorem2_value: F,
    /// `(q, value)` when `n >= 7`.
    pub best_lower: Option<(u32, u64)>,
    /// The upper bound is only claimed for `n >= 8`.
    pub informational: bool,
}

pub fn bound_report<F: Float + FromPrimitive>(n: u64) -> BoundReport<F> {
    let (bound, x_star) = connected_upper_bound(n);
    BoundReport {
        n,
        theorem1_bound: bound,
        x_star,
        x0: crossing_point(n),
        theorem2_value: upper_bound_value(n),
        best_lower: best_connected_lower_bound(n as usize).ok(),
        informational: n < 8,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ExactRational;

    fn r(a: i128, b: i128) -> ExactRational {
        ExactRational::new(a, b)
    }

    #[test]
    fn f_and_g_values() {
        assert_eq!(f(8, r(2, 1)), r(14, 1));
        assert_eq!(g(8, r(1, 1)), r(13, 1));
        assert_eq!(f(7, r(1, 1)), r(21, 1));
        assert_eq!(g(7, r(1, 1)), r(11, 1));
        assert_eq!(f(8, 2.0f64), 14.0);
        assert_eq!(g(8, 1.0f32), 13.0);
    }

    #[test]
    fn x0_at_eight() {
        let x0: f64 = crossing_point(8);
        assert!((x0 - (4.0625f64.sqrt() - 0.25)).abs() < 1e-12);
        assert!((x0 - 1.765564).abs() < 1e-6);
        assert!((2.0 * x0 * x0 + x0 - 8.0).abs() < 1e-9);
    }

    #[test]
    fn f32_and_f64_agree() {
        for n in [8u64, 50, 300] {
            let a: f64 = upper_bound_value(n);
            let b: f32 = upper_bound_value(n);
            assert!(((a as f32) - b).abs() / b < 1e-5);
        }
    }

    #[test]
    fn best_lower_examples() {
        assert_eq!(best_connected_lower_bound(7), Ok((2, 7)));
        assert_eq!(best_connected_lower_bound(13), Ok((3, 26)));
        assert_eq!(best_connected_lower_bound(20), Ok((3, 26)));
        assert_eq!(best_connected_lower_bound(6), Err(BoundsError::TooSmall(6)));
    }

    #[test]
    fn counting_bound_small() {
        assert_eq!(counting_bound(2), 1);
        assert_eq!(counting_bound(3), 3);
        assert_eq!(counting_bound(5), 7);
        assert_eq!(counting_bound(7), 11);
    }

    #[test]
    fn report_flags_small_n() {
        let rep: BoundReport<f64> = bound_report(7);
        assert!(rep.informational);
        assert_eq!(rep.best_lower, Some((2, 7)));
    }
}

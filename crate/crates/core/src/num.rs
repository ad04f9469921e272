//! Scalar abstraction shared by the numeric parts of the crate.
//!
//! Everything that computes a ratio, a mean or a tail probability is written
//! against [`Scalar`] so callers can choose `f32` or `f64`. The audit pipeline
//! itself runs in `f64`; see the aliases at the crate root.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar usable by the statistics and saliency code.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + Serialize + DeserializeOwned + 'static
{
    /// Converts an `f64` literal. Every `Scalar` can represent (or round) any `f64`.
    #[inline]
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_count(value: u64) -> Self {
        Self::from_u64(value).expect("count representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(value: usize) -> Self {
        Self::from_usize(value).expect("usize representable in scalar type")
    }

    /// Convergence tolerance for iterative special-function evaluation.
    fn series_tolerance() -> Self;
}

impl Scalar for f32 {
    fn series_tolerance() -> Self {
        1e-7
    }
}

impl Scalar for f64 {
    fn series_tolerance() -> Self {
        1e-15
    }
}

/// Arithmetic mean. Returns `None` for an empty slice.
pub fn mean<F: Scalar>(values: &[F]) -> Option<F> {
    if values.is_empty() {
        return None;
    }
    let sum = values.iter().fold(F::zero(), |acc, &v| acc + v);
    Some(sum / F::from_usize_lossy(values.len()))
}

/// Sample variance with the `n - 1` denominator. Returns `None` when fewer than two values.
pub fn sample_variance<F: Scalar>(values: &[F]) -> Option<F> {
    if values.len() < 2 {
        return None;
    }
    let mu = mean(values)?;
    let ss = values.iter().fold(F::zero(), |acc, &v| acc + (v - mu) * (v - mu));
    Some(ss / F::from_usize_lossy(values.len() - 1))
}

/// Population standard deviation, summed in sorted order so the result does
/// not depend on the order of `values`.
pub fn population_std_sorted<F: Scalar>(values: &[F]) -> Option<F> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let n = F::from_usize_lossy(sorted.len());
    let mu = sorted.iter().fold(F::zero(), |acc, &v| acc + v) / n;
    let mut dev: Vec<F> = sorted.iter().map(|&v| (v - mu) * (v - mu)).collect();
    dev.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let ss = dev.iter().fold(F::zero(), |acc, &v| acc + v);
    Some((ss / n).sqrt())
}

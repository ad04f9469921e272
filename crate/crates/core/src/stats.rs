//! Two-sample hypothesis tests and the special functions behind them.
//!
//! Student-t tail probabilities come from the regularized incomplete beta
//! function, evaluated with a modified-Lentz continued fraction. No external
//! statistics library is involved.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::num::{mean, sample_variance, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("sample `{which}` has {len} value(s); at least {min} required")]
    TooFewValues { which: &'static str, len: usize, min: usize },
    #[error("sample `{which}` contains a non-finite value")]
    NonFinite { which: &'static str },
    #[error("t statistic undefined: both samples have zero variance and equal means")]
    Undefined,
    #[error("paired samples differ in length ({a} vs {b})")]
    LengthMismatch { a: usize, b: usize },
    #[error("incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")]
    NoConvergence { a: f64, b: f64, x: f64 },
}

/// Direction of the alternative hypothesis, stated for `sample_a` relative to `sample_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alternative {
    Greater,
    Less,
    TwoSided,
}

/// Outcome of a two-sample t-test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct TTest<F: Scalar> {
    pub t_statistic: F,
    pub df: F,
    pub p_value: F,
    pub mean_a: F,
    pub mean_b: F,
    pub std_a: F,
    pub std_b: F,
    pub n_a: usize,
    pub n_b: usize,
    pub alternative: Alternative,
}

/// Significance stars: 3 below 0.01, 2 below 0.05, 1 below 0.1.
pub fn significance_stars<F: Scalar>(p_value: F) -> u8 {
    if p_value < F::lit(0.01) {
        3
    } else if p_value < F::lit(0.05) {
        2
    } else if p_value < F::lit(0.1) {
        1
    } else {
        0
    }
}

pub fn render_stars(stars: u8) -> &'static str {
    match stars {
        0 => "",
        1 => "*",
        2 => "**",
        _ => "***",
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma<F: Scalar>(x: F) -> F {
    let half = F::lit(0.5);
    if x < half {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        let pi = F::lit(std::f64::consts::PI);
        return (pi / (pi * x).sin()).ln() - ln_gamma(F::one() - x);
    }
    let x = x - F::one();
    let mut acc = F::lit(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + F::lit(c) / (x + F::from_usize_lossy(i));
    }
    let t = x + F::lit(LANCZOS_G) + half;
    F::lit(0.5 * (2.0 * std::f64::consts::PI).ln()) + (x + half) * t.ln() - t + acc.ln()
}

fn beta_continued_fraction<F: Scalar>(a: F, b: F, x: F) -> Result<F, StatsError> {
    const MAX_ITER: usize = 10_000;
    let tiny = F::min_positive_value() / F::epsilon();
    let eps = F::series_tolerance();
    let one = F::one();
    let guard = |v: F| if v.abs() < tiny { tiny } else { v };

    let qab = a + b;
    let qap = a + one;
    let qam = a - one;
    let mut c = one;
    let mut d = guard(one - qab * x / qap).recip();
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = F::from_usize_lossy(m);
        let m2 = m + m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = guard(one + aa * d).recip();
        c = guard(one + aa / c);
        h = h * d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = guard(one + aa * d).recip();
        c = guard(one + aa / c);
        let delta = d * c;
        h = h * delta;
        if (delta - one).abs() <= eps {
            return Ok(h);
        }
    }
    Err(StatsError::NoConvergence {
        a: a.to_f64().unwrap_or(f64::NAN),
        b: b.to_f64().unwrap_or(f64::NAN),
        x: x.to_f64().unwrap_or(f64::NAN),
    })
}

/// Regularized incomplete beta `I_x(a, b)`, taking both `x` and `1 - x` so
/// callers can supply the complement without cancellation.
pub fn regularized_incomplete_beta<F: Scalar>(a: F, b: F, x: F, one_minus_x: F) -> Result<F, StatsError> {
    if x <= F::zero() {
        return Ok(F::zero());
    }
    if one_minus_x <= F::zero() {
        return Ok(F::one());
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * one_minus_x.ln();
    let front = ln_front.exp();
    if x < (a + F::one()) / (a + b + F::lit(2.0)) {
        Ok(front * beta_continued_fraction(a, b, x)? / a)
    } else {
        Ok(F::one() - front * beta_continued_fraction(b, a, one_minus_x)? / b)
    }
}

/// Upper tail `P(T > t)` of Student's t distribution with `df` degrees of freedom.
pub fn student_t_sf<F: Scalar>(t: F, df: F) -> Result<F, StatsError> {
    if t.is_nan() || df.is_nan() {
        return Ok(F::nan());
    }
    if t.is_infinite() {
        return Ok(if t > F::zero() { F::zero() } else { F::one() });
    }
    let t2 = t * t;
    let (x, y) = if t2.is_infinite() {
        (F::zero(), F::one())
    } else {
        (df / (df + t2), t2 / (df + t2))
    };
    let half = F::lit(0.5);
    // two-tailed mass beyond |t|, halved
    let tail = half * regularized_incomplete_beta(df * half, half, x, y)?;
    Ok(if t > F::zero() { tail } else { F::one() - tail })
}

/// Cumulative `P(T <= t)`.
pub fn student_t_cdf<F: Scalar>(t: F, df: F) -> Result<F, StatsError> {
    student_t_sf(-t, df)
}

fn p_value_for<F: Scalar>(t: F, df: F, alternative: Alternative) -> Result<F, StatsError> {
    Ok(match alternative {
        Alternative::Greater => student_t_sf(t, df)?,
        Alternative::Less => student_t_sf(-t, df)?,
        Alternative::TwoSided => {
            let upper = student_t_sf(t, df)?;
            let lower = student_t_sf(-t, df)?;
            (F::lit(2.0) * upper.min(lower)).min(F::one())
        }
    })
}

fn check_sample<F: Scalar>(values: &[F], which: &'static str, min: usize) -> Result<(), StatsError> {
    if values.len() < min {
        return Err(StatsError::TooFewValues { which, len: values.len(), min });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite { which });
    }
    Ok(())
}

/// Welch's unequal-variance t-test of `sample_a` against `sample_b`.
///
/// `t = (mean_a - mean_b) / sqrt(s_a²/n_a + s_b²/n_b)` with sample (n-1)
/// variances and Welch–Satterthwaite degrees of freedom. When both variances
/// vanish but the means differ, `t` is infinite and `df` falls back to
/// `n_a + n_b - 2`.
pub fn welch_t_test<F: Scalar>(sample_a: &[F], sample_b: &[F], alternative: Alternative) -> Result<TTest<F>, StatsError> {
    check_sample(sample_a, "a", 2)?;
    check_sample(sample_b, "b", 2)?;
    let n_a = sample_a.len();
    let n_b = sample_b.len();
    let (nf_a, nf_b) = (F::from_usize_lossy(n_a), F::from_usize_lossy(n_b));
    let mean_a = mean(sample_a).expect("non-empty");
    let mean_b = mean(sample_b).expect("non-empty");
    let var_a = sample_variance(sample_a).expect("n >= 2");
    let var_b = sample_variance(sample_b).expect("n >= 2");

    let se_a = var_a / nf_a;
    let se_b = var_b / nf_b;
    let se2 = se_a + se_b;
    let diff = mean_a - mean_b;

    let (t, df) = if se2 == F::zero() {
        if diff == F::zero() {
            return Err(StatsError::Undefined);
        }
        let t = if diff > F::zero() { F::infinity() } else { F::neg_infinity() };
        (t, nf_a + nf_b - F::lit(2.0))
    } else {
        let df = se2 * se2 / (se_a * se_a / (nf_a - F::one()) + se_b * se_b / (nf_b - F::one()));
        (diff / se2.sqrt(), df)
    };

    Ok(TTest {
        t_statistic: t,
        df,
        p_value: p_value_for(t, df, alternative)?,
        mean_a,
        mean_b,
        std_a: var_a.sqrt(),
        std_b: var_b.sqrt(),
        n_a,
        n_b,
        alternative,
    })
}

/// Paired t-test on the element-wise differences `a[i] - b[i]`.
pub fn paired_t_test<F: Scalar>(sample_a: &[F], sample_b: &[F], alternative: Alternative) -> Result<TTest<F>, StatsError> {
    if sample_a.len() != sample_b.len() {
        return Err(StatsError::LengthMismatch { a: sample_a.len(), b: sample_b.len() });
    }
    check_sample(sample_a, "a", 2)?;
    check_sample(sample_b, "b", 2)?;
    let n = sample_a.len();
    let diffs: Vec<F> = sample_a.iter().zip(sample_b).map(|(&x, &y)| x - y).collect();
    let d_mean = mean(&diffs).expect("non-empty");
    let d_var = sample_variance(&diffs).expect("n >= 2");
    let nf = F::from_usize_lossy(n);
    let df = nf - F::one();
    let t = if d_var == F::zero() {
        if d_mean == F::zero() {
            return Err(StatsError::Undefined);
        }
        if d_mean > F::zero() {
            F::infinity()
        } else {
            F::neg_infinity()
        }
    } else {
        d_mean / (d_var / nf).sqrt()
    };
    Ok(TTest {
        t_statistic: t,
        df,
        p_value: p_value_for(t, df, alternative)?,
        mean_a: mean(sample_a).expect("non-empty"),
        mean_b: mean(sample_b).expect("non-empty"),
        std_a: sample_variance(sample_a).expect("n >= 2").sqrt(),
        std_b: sample_variance(sample_b).expect("n >= 2").sqrt(),
        n_a: n,
        n_b: n,
        alternative,
    })
}

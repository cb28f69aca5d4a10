//! Log-space growth diagnostics: iterated logarithms, the subfactorial
//! scale, the coefficient-side level-q type diagnostic, and closed-form
//! tower growth ratios.
//!
//! Everything here reads exact rational coefficients but computes in f64
//! log space — codimensions overflow doubles around n = 170, and the tower
//! functions overflow any fixed-width float at once, so values are carried
//! as ln(·) or as exp-towers over a representable mantissa.

use num::BigUint;
use num::Zero;
use thiserror::Error;

use crate::rational::{ln_biguint, ln_rational};
use crate::series::{CodimSequence, EgfSeries};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GrowthError {
    /// A logarithm hit a non-positive intermediate at the given level
    /// (levels count applications, starting at 1).
    #[error("iterated log undefined: level {level} applied to {value}")]
    Domain { level: u32, value: f64 },
    #[error("negative coefficient at index {index}")]
    NegativeCoefficient { index: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// k-fold natural logarithm; `iter_ln(0, x) = x`.
///
/// Negative results are returned as-is; only a non-positive value fed to
/// a further log raises [`GrowthError::Domain`] with the failing level.
pub fn iter_ln(k: u32, x: f64) -> Result<f64, GrowthError> {
    let mut value = x;
    for level in 1..=k {
        if value <= 0.0 {
            return Err(GrowthError::Domain { level, value });
        }
        value = value.ln();
    }
    Ok(value)
}

/// k-fold exponential; `iter_exp(0, x) = x`. Saturates to infinity once
/// the tower leaves f64 range.
pub fn iter_exp(k: u32, x: f64) -> f64 {
    let mut value = x;
    for _ in 0..k {
        value = value.exp();
    }
    value
}

/// ln n! by exact summation of ln k (no Stirling approximation).
pub fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// A point on the subfactorial scale Ψ^q_α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleQuery {
    /// Scale level, q ≥ 2.
    pub q: u32,
    /// Scale parameter, α > 0.
    pub alpha: f64,
    /// Degree, n ≥ 3; for q ≥ 3 additionally ln^{(q−2)} n > 1.
    pub n: u64,
}

/// ln Ψ^q_α(n), where Ψ²_α(n) = (n!)^{1−1/α} and
/// Ψ^q_α(n) = n!/(ln^{(q−2)} n)^{n/α} for q ≥ 3.
pub fn psi_log(query: &ScaleQuery) -> Result<f64, GrowthError> {
    let ScaleQuery { q, alpha, n } = *query;
    if q < 2 {
        return Err(GrowthError::BadParameter(format!("scale level q must be >= 2, got {q}")));
    }
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(GrowthError::BadParameter(format!("alpha must be positive, got {alpha}")));
    }
    if n < 3 {
        return Err(GrowthError::BadParameter(format!("degree must be >= 3, got {n}")));
    }
    let ln_fact = ln_factorial(n);
    if q == 2 {
        return Ok((1.0 - 1.0 / alpha) * ln_fact);
    }
    let log_level = iter_ln(q - 2, n as f64)?;
    if log_level <= 1.0 {
        return Err(GrowthError::BadParameter(format!(
            "Psi undefined: ln^({}) {n} = {log_level} <= 1",
            q - 2
        )));
    }
    Ok(ln_fact - n as f64 / alpha * log_level.ln())
}

/// The coefficient-side diagnostic s_n = a_n^{λ/n}·ln^{(q−2)} n together
/// with its running supremum over the sampled window.
///
/// At finite order only samples and a trend exist: the diagnostic never
/// claims a limit, it reports the data the limsup identity
/// (level-(q−1) type on the modulus side = limsup of s_n) is about.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthDiagnostics {
    pub lambda: f64,
    pub q: u32,
    /// (n, s_n) for every sampled degree with a_n > 0 and the iterated
    /// log defined.
    pub samples: Vec<(usize, f64)>,
    /// sup of s_n over the window — the finite-order type estimate.
    pub running_sup: f64,
    /// Optional modulus-side samples (r, ln^{(q−1)} M(r) / r^λ).
    pub r_samples: Option<Vec<(f64, f64)>>,
}

/// Sample s_n = a_n^{λ/n}·ln^{(q−2)} n for n in [n_lo, n_hi].
///
/// Coefficients in the window must be non-negative; zero coefficients and
/// degrees where the iterated log is undefined are skipped.
pub fn sher_diagnostic(
    coeffs: &EgfSeries,
    lambda: f64,
    q: u32,
    n_lo: usize,
    n_hi: usize,
) -> Result<GrowthDiagnostics, GrowthError> {
    if q < 3 {
        return Err(GrowthError::BadParameter(format!(
            "the coefficient diagnostic needs q >= 3, got {q}"
        )));
    }
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(GrowthError::BadParameter(format!("lambda must be positive, got {lambda}")));
    }
    if n_lo < 1 || n_hi < n_lo || n_hi > coeffs.order() {
        return Err(GrowthError::BadParameter(format!(
            "window [{n_lo}, {n_hi}] not within 1..={}",
            coeffs.order()
        )));
    }
    let mut samples = Vec::new();
    let mut running_sup = f64::NEG_INFINITY;
    for n in n_lo..=n_hi {
        let ln_a = ln_rational(coeffs.coeff(n))
            .ok_or(GrowthError::NegativeCoefficient { index: n })?;
        if ln_a == f64::NEG_INFINITY {
            continue;
        }
        let Ok(log_level) = iter_ln(q - 2, n as f64) else {
            continue;
        };
        let s = (lambda / n as f64 * ln_a).exp() * log_level;
        running_sup = running_sup.max(s);
        samples.push((n, s));
    }
    Ok(GrowthDiagnostics {
        lambda,
        q,
        samples,
        running_sup,
        r_samples: None,
    })
}

/// Modulus-side samples (r, ln^{(q−1)} M(r)/r^λ) from the truncated sum
/// M(r) = Σ a_n r^n. Only meaningful where the truncation tail is
/// negligible; the tower functions use [`tower_growth_ratio`] instead.
pub fn sher_r_samples(
    coeffs: &EgfSeries,
    lambda: f64,
    q: u32,
    rs: &[f64],
) -> Result<Vec<(f64, f64)>, GrowthError> {
    if q < 3 {
        return Err(GrowthError::BadParameter(format!(
            "the modulus diagnostic needs q >= 3, got {q}"
        )));
    }
    rs.iter()
        .map(|&r| {
            if r.is_nan() || r <= 0.0 {
                return Err(GrowthError::BadParameter(format!("r must be positive, got {r}")));
            }
            let ln_m = coeffs
                .eval_log(r)
                .map_err(|e| match e {
                    crate::series::SeriesError::NegativeCoefficient { index } => {
                        GrowthError::NegativeCoefficient { index }
                    }
                    other => GrowthError::BadParameter(other.to_string()),
                })?;
            // ln^{(q-1)} M = ln^{(q-2)} (ln M)
            let v = iter_ln(q - 2, ln_m)?;
            Ok((r, v / r.powf(lambda)))
        })
        .collect()
}

/// A positive real carried as exp^{(level)}(value), so exp-towers far
/// beyond f64 range stay representable.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Leveled {
    level: u32,
    value: f64,
}

// Collapse a level whenever exp would stay finite.
const COLLAPSE_LIMIT: f64 = 700.0;

impl Leveled {
    fn new(value: f64) -> Self {
        Self { level: 0, value }
    }

    fn normalized(mut self) -> Self {
        while self.level > 0 && self.value <= COLLAPSE_LIMIT {
            self.value = self.value.exp();
            self.level -= 1;
        }
        self
    }

    fn exp(self) -> Self {
        Self {
            level: self.level + 1,
            value: self.value,
        }
        .normalized()
    }

    fn ln(self, level_for_error: u32) -> Result<Self, GrowthError> {
        if self.level > 0 {
            return Ok(Self {
                level: self.level - 1,
                value: self.value,
            });
        }
        if self.value <= 0.0 {
            return Err(GrowthError::Domain {
                level: level_for_error,
                value: self.value,
            });
        }
        Ok(Self::new(self.value.ln()))
    }

    /// Multiply by a positive scalar.
    fn scale(self, r: f64) -> Self {
        if self.level == 0 {
            let plain = r * self.value;
            if plain.is_finite() {
                return Self::new(plain);
            }
            // r·v = exp(ln r + ln v); both factors positive here.
            return Self {
                level: 1,
                value: r.ln() + self.value.ln(),
            };
        }
        // r·exp^{(l)}(v) = exp(ln r + exp^{(l-1)}(v)).
        let inner = Self {
            level: self.level - 1,
            value: self.value,
        }
        .normalized();
        if inner.level == 0 {
            Self {
                level: 1,
                value: r.ln() + inner.value,
            }
            .normalized()
        } else {
            // inner > exp(700): adding ln r is far below one ulp.
            self
        }
    }
}

/// ln^{(m−1)}(q̃_m(r)) / r, evaluated through the closed recursion
/// ln q̃_m = r̃_m = r·q̃_{m−1} — never by summing the truncated series,
/// whose tail at real r is astronomically large.
///
/// The identity behind the diagnostic: for m = 2 the ratio is exactly 1;
/// for m ≥ 3 it decreases to 1 as r grows.
pub fn tower_growth_ratio(m: u32, r: f64) -> Result<f64, GrowthError> {
    if m < 2 {
        return Err(GrowthError::BadParameter(format!("tower index must be >= 2, got {m}")));
    }
    if r.is_nan() || r <= 0.0 {
        return Err(GrowthError::BadParameter(format!("r must be positive, got {r}")));
    }
    let mut q = Leveled::new(1.0); // q̃_1 = 1
    for _ in 2..=m {
        q = q.scale(r).exp(); // r̃_k = r·q̃_{k−1}, q̃_k = exp r̃_k
    }
    let mut t = q;
    for level in 1..=(m - 1) {
        t = t.ln(level)?;
    }
    debug_assert_eq!(t.level, 0, "m-1 logs always ground a height-(m-1) tower");
    Ok(t.value / r)
}

/// Log-space margins ln c_n − ln[n!/(ln^{(m−2)} n)^n] for each degree in
/// the window; diagnostic only (the bound of the scale holds up to
/// (1+o(1))^n, so no pass/fail verdict is attached). Zero codimensions
/// yield −∞.
pub fn upper_bound_ratio(
    c: &CodimSequence,
    m: u32,
    n_lo: usize,
    n_hi: usize,
) -> Result<Vec<(usize, f64)>, GrowthError> {
    if m < 3 {
        return Err(GrowthError::BadParameter(format!(
            "the scale comparison needs m >= 3, got {m}"
        )));
    }
    if n_lo < 3 || n_hi < n_lo || n_hi > c.max_degree() {
        return Err(GrowthError::BadParameter(format!(
            "window [{n_lo}, {n_hi}] not within 3..={}",
            c.max_degree()
        )));
    }
    (n_lo..=n_hi)
        .map(|n| {
            let psi = psi_log(&ScaleQuery {
                q: m,
                alpha: 1.0,
                n: n as u64,
            })?;
            let ln_c = ln_codim(c.get(n));
            Ok((n, ln_c - psi))
        })
        .collect()
}

fn ln_codim(c: &BigUint) -> f64 {
    if c.is_zero() {
        f64::NEG_INFINITY
    } else {
        ln_biguint(c)
    }
}

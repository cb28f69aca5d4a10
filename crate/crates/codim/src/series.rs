//! Truncated exponential generating functions over exact rationals.
//!
//! An [`EgfSeries`] stores the Taylor coefficients a_0..a_N of a series
//! truncated at order N, with the convention a_n = c_n / n! for a
//! codimension sequence c_n. All arithmetic is exact; binary operations
//! truncate to the minimum of the two orders (composing series of
//! different requested depths is routine, and zero-padding would
//! fabricate coefficients that were never computed).

use std::fmt;

use num::{BigUint, One, Zero};
use thiserror::Error;

use crate::rational::{factorial, is_nonneg_integer, ln_rational, rat_int, Rational};

/// Errors from series construction and conversion.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// n!·a_n is not a non-negative integer; signals a formula or
    /// implementation bug upstream, never expected for catalog series.
    #[error("coefficient {index} is not a non-negative integer codimension: {value}")]
    Integrality { index: usize, value: Rational },
    /// `exp` of a series with a nonzero constant term leaves the rational
    /// field (exp of a nonzero rational is irrational).
    #[error("exp requires constant term 0, found {found}")]
    NonzeroConstantTerm { found: Rational },
    /// `log` requires constant term exactly 1.
    #[error("log requires constant term 1, found {found}")]
    BadConstantTerm { found: Rational },
    /// Real evaluation requires non-negative coefficients.
    #[error("negative coefficient at index {index}")]
    NegativeCoefficient { index: usize },
}

/// Outcome of a coefficientwise comparison f ⪯ g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dominance {
    /// a_n(f) ≤ a_n(g) for every n up to the common order.
    Holds,
    /// First index where a_n(f) > a_n(g), with both values.
    ViolatedAt {
        index: usize,
        lhs: Rational,
        rhs: Rational,
    },
}

impl Dominance {
    pub fn holds(&self) -> bool {
        matches!(self, Dominance::Holds)
    }
}

/// A sequence of non-negative integer codimensions c_0..c_N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodimSequence {
    values: Vec<BigUint>,
}

impl CodimSequence {
    pub fn new(values: Vec<BigUint>) -> Self {
        assert!(!values.is_empty(), "codimension sequence must reach degree 0");
        Self { values }
    }

    pub fn from_u64(values: &[u64]) -> Self {
        Self::new(values.iter().map(|&v| BigUint::from(v)).collect())
    }

    /// Highest degree stored.
    pub fn max_degree(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn get(&self, n: usize) -> &BigUint {
        &self.values[n]
    }
}

/// Exact truncated exponential generating function: coefficients a_0..a_N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgfSeries {
    taylor: Vec<Rational>,
}

impl EgfSeries {
    /// Series from explicit Taylor coefficients a_0..a_N (N = len-1).
    pub fn from_taylor(taylor: Vec<Rational>) -> Self {
        assert!(!taylor.is_empty(), "series must carry at least a_0");
        Self { taylor }
    }

    /// The zero series truncated at `order`.
    pub fn zero(order: usize) -> Self {
        Self {
            taylor: vec![Rational::zero(); order + 1],
        }
    }

    /// The constant 1 truncated at `order`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.taylor[0] = Rational::one();
        s
    }

    /// coeff·z^power truncated at `order` (the monomial vanishes if
    /// power > order).
    pub fn monomial(coeff: Rational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.taylor[power] = coeff;
        }
        s
    }

    /// The complexity function of a codimension sequence: a_n = c_n / n!.
    pub fn from_codims(c: &CodimSequence) -> Self {
        let taylor = c
            .values()
            .iter()
            .enumerate()
            .map(|(n, cn)| {
                Rational::new(cn.clone().into(), factorial(n).into())
            })
            .collect();
        Self { taylor }
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.taylor.len() - 1
    }

    /// Taylor coefficient a_n. Panics beyond the truncation order.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.taylor[n]
    }

    pub fn taylor(&self) -> &[Rational] {
        &self.taylor
    }

    pub fn is_zero(&self) -> bool {
        self.taylor.iter().all(|a| a.is_zero())
    }

    /// Copy truncated to a (lower or equal) order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self {
            taylor: self.taylor[..=order].to_vec(),
        }
    }

    /// Recover the codimension sequence c_n = n!·a_n.
    ///
    /// Fails with [`SeriesError::Integrality`] when some n!·a_n is not a
    /// non-negative integer.
    pub fn codimensions(&self) -> Result<CodimSequence, SeriesError> {
        let mut values = Vec::with_capacity(self.taylor.len());
        for (n, an) in self.taylor.iter().enumerate() {
            let cn = an * Rational::from_integer(factorial(n).into());
            if !is_nonneg_integer(&cn) {
                return Err(SeriesError::Integrality {
                    index: n,
                    value: an.clone(),
                });
            }
            values.push(cn.to_integer().to_biguint().expect("checked non-negative"));
        }
        Ok(CodimSequence::new(values))
    }

    /// Coefficientwise sum, truncated to the minimum order.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self {
            taylor: (0..=n)
                .map(|i| &self.taylor[i] + &other.taylor[i])
                .collect(),
        }
    }

    /// Coefficientwise difference, truncated to the minimum order.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self {
            taylor: (0..=n)
                .map(|i| &self.taylor[i] - &other.taylor[i])
                .collect(),
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            taylor: self.taylor.iter().map(|a| a * q).collect(),
        }
    }

    /// Cauchy product, truncated to the minimum order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut taylor = vec![Rational::zero(); n + 1];
        for (i, ai) in self.taylor.iter().enumerate().take(n + 1) {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in other.taylor.iter().enumerate().take(n + 1 - i) {
                if bj.is_zero() {
                    continue;
                }
                taylor[i + j] += ai * bj;
            }
        }
        Self { taylor }
    }

    /// k-th power by repeated multiplication; pow(f, 0) = 1.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// exp∘f for f with zero constant term, via the first-derivative
    /// recurrence n·b_n = Σ_{k=1..n} k·a_k·b_{n-k}.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.taylor[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm {
                found: self.taylor[0].clone(),
            });
        }
        let order = self.order();
        let mut b = vec![Rational::zero(); order + 1];
        b[0] = Rational::one();
        for n in 1..=order {
            let mut sum = Rational::zero();
            for k in 1..=n {
                if self.taylor[k].is_zero() {
                    continue;
                }
                sum += &self.taylor[k] * &b[n - k] * rat_int(k as i64);
            }
            b[n] = sum / rat_int(n as i64);
        }
        Ok(Self { taylor: b })
    }

    /// log∘f for f with constant term 1; exact inverse of [`Self::exp`]
    /// at the common order.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.taylor[0].is_one() {
            return Err(SeriesError::BadConstantTerm {
                found: self.taylor[0].clone(),
            });
        }
        let order = self.order();
        let mut g = vec![Rational::zero(); order + 1];
        for n in 1..=order {
            let mut sum = Rational::zero();
            #[allow(clippy::needless_range_loop)] // g and taylor run in opposite directions
            for k in 1..n {
                if g[k].is_zero() || self.taylor[n - k].is_zero() {
                    continue;
                }
                sum += &g[k] * &self.taylor[n - k] * rat_int(k as i64);
            }
            g[n] = &self.taylor[n] - sum / rat_int(n as i64);
        }
        Ok(Self { taylor: g })
    }

    /// Antiderivative with value 0 at the origin: b_0 = 0, b_n = a_{n-1}/n.
    ///
    /// The result has order N+1; integration gains exact knowledge of one
    /// more coefficient.
    pub fn integrate(&self) -> Self {
        let mut taylor = Vec::with_capacity(self.taylor.len() + 1);
        taylor.push(Rational::zero());
        for (n, a) in self.taylor.iter().enumerate() {
            taylor.push(a / rat_int(n as i64 + 1));
        }
        Self { taylor }
    }

    /// ln of the truncated sum Σ_{n≤N} a_n r^n at a real point r > 0,
    /// accumulated in log space so factorial-scale coefficients cannot
    /// overflow. Requires non-negative coefficients, for which the sum
    /// equals the maximum modulus on |z| = r.
    pub fn eval_log(&self, r: f64) -> Result<f64, SeriesError> {
        assert!(r > 0.0, "evaluation point must be positive");
        let ln_r = r.ln();
        let mut terms = Vec::with_capacity(self.taylor.len());
        for (n, a) in self.taylor.iter().enumerate() {
            let ln_a = ln_rational(a)
                .ok_or(SeriesError::NegativeCoefficient { index: n })?;
            if ln_a > f64::NEG_INFINITY {
                terms.push(ln_a + n as f64 * ln_r);
            }
        }
        Ok(log_sum_exp(&terms))
    }
}

/// Coefficientwise comparison f ⪯ g up to the common truncation order.
pub fn coeff_le(f: &EgfSeries, g: &EgfSeries) -> Dominance {
    let n = f.order().min(g.order());
    for i in 0..=n {
        if f.coeff(i) > g.coeff(i) {
            return Dominance::ViolatedAt {
                index: i,
                lhs: f.coeff(i).clone(),
                rhs: g.coeff(i).clone(),
            };
        }
    }
    Dominance::Holds
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

impl fmt::Display for EgfSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, a) in self.taylor.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match n {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "z")?,
                1 => write!(f, "{a} z")?,
                _ if a.is_one() => write!(f, "z^{n}")?,
                _ => write!(f, "{a} z^{n}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

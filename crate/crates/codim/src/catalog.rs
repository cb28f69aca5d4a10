//! Complexity functions of the named varieties, the tower bound
//! generators, and the exact Ratseev lower-bound check.
//!
//! Closed forms implemented here:
//!
//! * associative / Poisson: 1/(1−z) (codimensions n!)
//! * commutative: exp(z)
//! * Lie: −ln(1−z) (codimensions (n−1)!)
//! * nilpotent of class s: the Lie series cut at degree s
//! * metabelian: 1 + z + e^z(z−1) (codimensions n−1)
//! * centre-by-metabelian: (z²/2)e^z + z − z³/6 in characteristic 2,
//!   (z²/2)e^z + 2z − sinh z otherwise
//! * W_s (the mixed identity {X1,X2}⋯{X_{2s−1},X_{2s}} ≡ 0):
//!   e^z (1 + Σ_{k<s} h^k/k!) with h = −z − ln(1−z), plus the equivalent
//!   subtracted form 1/(1−z) − e^z Σ_{k≥s} h^k/k!
//!
//! The towers are built by their defining recurrences on top of the series
//! engine: q̃_1 = 1, r̃_m = z·q̃_{m−1}, q̃_m = exp r̃_m, and the stricter
//! q_1 = 1, r_m = ∫q_{m−1}, q_m = exp r_m. The q̃/r̃ pair dominates every
//! complexity function with a Lie identity of degree m; the q/r pair counts
//! the m-Lie indecomposable words themselves (cross-checked in `words`).

use std::fmt;

use num::{BigUint, One, Zero};
use thiserror::Error;

use crate::rational::{factorial, floor_rational, rat, rat_int, Rational};
use crate::series::EgfSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown variety: {0}")]
    UnknownVariety(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
}

/// A variety from the catalog, identified by its defining identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarietySpec {
    /// All associative algebras.
    Assoc,
    /// Commutative associative algebras.
    Comm,
    /// All Lie algebras.
    Lie,
    /// All Poisson algebras.
    Poisson,
    /// Lie algebras nilpotent of class at most s (s ≥ 1).
    NilpotentLie(u32),
    /// Metabelian Lie algebras.
    Metabelian,
    /// Centre-by-metabelian Lie algebras; the closed form branches on
    /// whether the ground field has characteristic 2.
    CentreByMetabelian { char_two: bool },
    /// Poisson algebras with the mixed identity of s bracket factors
    /// (s ≥ 2).
    MixedW(u32),
    /// Relaxed tower q̃_m (m ≥ 1).
    TowerQ(u32),
    /// Relaxed tower r̃_m (m ≥ 1).
    TowerR(u32),
    /// m-Lie indecomposable words, all: q_m (m ≥ 1).
    IndecompQ(u32),
    /// m-Lie indecomposable words, regular: r_m (m ≥ 1).
    IndecompR(u32),
}

impl VarietySpec {
    /// Parse the CLI grammar: `assoc`, `comm`, `lie`, `poisson`,
    /// `nilp:<s>`, `metab`, `cbm:char2`, `cbm:char0`, `w:<s>`,
    /// `tower-q:<m>`, `tower-r:<m>`, `indecomp-q:<m>`, `indecomp-r:<m>`.
    pub fn parse(name: &str) -> Result<Self, CatalogError> {
        let spec = match name {
            "assoc" => Self::Assoc,
            "comm" => Self::Comm,
            "lie" => Self::Lie,
            "poisson" => Self::Poisson,
            "metab" => Self::Metabelian,
            "cbm:char2" => Self::CentreByMetabelian { char_two: true },
            "cbm:char0" => Self::CentreByMetabelian { char_two: false },
            _ => match name.split_once(':') {
                Some(("nilp", s)) => Self::NilpotentLie(parse_param(name, s)?),
                Some(("w", s)) => Self::MixedW(parse_param(name, s)?),
                Some(("tower-q", m)) => Self::TowerQ(parse_param(name, m)?),
                Some(("tower-r", m)) => Self::TowerR(parse_param(name, m)?),
                Some(("indecomp-q", m)) => Self::IndecompQ(parse_param(name, m)?),
                Some(("indecomp-r", m)) => Self::IndecompR(parse_param(name, m)?),
                _ => return Err(CatalogError::UnknownVariety(name.to_string())),
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Check the parameter ranges.
    pub fn validate(&self) -> Result<(), CatalogError> {
        match *self {
            Self::NilpotentLie(s) if s < 1 => Err(CatalogError::ParamOutOfRange(
                format!("nilpotency class must be >= 1, got {s}"),
            )),
            Self::MixedW(s) if s < 2 => Err(CatalogError::ParamOutOfRange(
                format!("w requires s >= 2, got {s}"),
            )),
            Self::TowerQ(m) | Self::TowerR(m) | Self::IndecompQ(m) | Self::IndecompR(m)
                if m < 1 =>
            {
                Err(CatalogError::ParamOutOfRange(
                    format!("tower index must be >= 1, got {m}"),
                ))
            }
            _ => Ok(()),
        }
    }
}

fn parse_param(name: &str, raw: &str) -> Result<u32, CatalogError> {
    raw.parse()
        .map_err(|_| CatalogError::UnknownVariety(name.to_string()))
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Assoc => write!(f, "assoc"),
            Self::Comm => write!(f, "comm"),
            Self::Lie => write!(f, "lie"),
            Self::Poisson => write!(f, "poisson"),
            Self::NilpotentLie(s) => write!(f, "nilp:{s}"),
            Self::Metabelian => write!(f, "metab"),
            Self::CentreByMetabelian { char_two: true } => write!(f, "cbm:char2"),
            Self::CentreByMetabelian { char_two: false } => write!(f, "cbm:char0"),
            Self::MixedW(s) => write!(f, "w:{s}"),
            Self::TowerQ(m) => write!(f, "tower-q:{m}"),
            Self::TowerR(m) => write!(f, "tower-r:{m}"),
            Self::IndecompQ(m) => write!(f, "indecomp-q:{m}"),
            Self::IndecompR(m) => write!(f, "indecomp-r:{m}"),
        }
    }
}

/// The exact truncated complexity function of a catalog variety.
pub fn complexity(spec: &VarietySpec, order: usize) -> Result<EgfSeries, CatalogError> {
    spec.validate()?;
    Ok(match *spec {
        VarietySpec::Assoc | VarietySpec::Poisson => geometric(order),
        VarietySpec::Comm => exp_z(order),
        VarietySpec::Lie => lie_series(order),
        VarietySpec::NilpotentLie(s) => {
            // Only the free-Lie multilinear component up to degree s survives.
            let mut taylor = lie_series(order).taylor().to_vec();
            for a in taylor.iter_mut().skip(s as usize + 1) {
                *a = Rational::zero();
            }
            EgfSeries::from_taylor(taylor)
        }
        VarietySpec::Metabelian => metabelian(order),
        VarietySpec::CentreByMetabelian { char_two } => centre_by_metabelian(order, char_two),
        VarietySpec::MixedW(s) => mixed_w(s, order),
        VarietySpec::TowerQ(m) => tower_q(m, order),
        VarietySpec::TowerR(m) => tower_r(m, order),
        VarietySpec::IndecompQ(m) => indecomp_q(m, order),
        VarietySpec::IndecompR(m) => indecomp_r(m, order),
    })
}

/// 1/(1−z): every Taylor coefficient 1.
fn geometric(order: usize) -> EgfSeries {
    EgfSeries::from_taylor(vec![Rational::one(); order + 1])
}

/// exp(z).
fn exp_z(order: usize) -> EgfSeries {
    EgfSeries::monomial(Rational::one(), 1, order)
        .exp()
        .expect("z has zero constant term")
}

/// −ln(1−z): a_n = 1/n for n ≥ 1.
fn lie_series(order: usize) -> EgfSeries {
    let mut taylor = vec![Rational::zero()];
    for n in 1..=order {
        taylor.push(rat(1, n as i64));
    }
    EgfSeries::from_taylor(taylor)
}

/// h = −z − ln(1−z) = Σ_{n≥2} z^n/n, the commutator-subalgebra series.
fn commutator_series(order: usize) -> EgfSeries {
    lie_series(order).sub(&EgfSeries::monomial(Rational::one(), 1, order))
}

/// 1 + z + e^z(z−1).
fn metabelian(order: usize) -> EgfSeries {
    let z = EgfSeries::monomial(Rational::one(), 1, order);
    let one = EgfSeries::one(order);
    one.add(&z).add(&exp_z(order).mul(&z.sub(&one)))
}

/// sinh z: a_n = 1/n! for odd n.
fn sinh_z(order: usize) -> EgfSeries {
    let taylor = (0..=order)
        .map(|n| {
            if n % 2 == 1 {
                Rational::new(1.into(), factorial(n).into())
            } else {
                Rational::zero()
            }
        })
        .collect();
    EgfSeries::from_taylor(taylor)
}

fn centre_by_metabelian(order: usize, char_two: bool) -> EgfSeries {
    let half_z2 = EgfSeries::monomial(rat(1, 2), 2, order);
    let z = EgfSeries::monomial(Rational::one(), 1, order);
    let base = half_z2.mul(&exp_z(order));
    if char_two {
        base.add(&z).sub(&EgfSeries::monomial(rat(1, 6), 3, order))
    } else {
        base.add(&z.scale(&rat_int(2))).sub(&sinh_z(order))
    }
}

/// e^z (1 + Σ_{k=1}^{s−1} h^k/k!), the basis count with at most s−1
/// bracket factors.
fn mixed_w(s: u32, order: usize) -> EgfSeries {
    let h = commutator_series(order);
    let mut sum = EgfSeries::one(order);
    let mut h_pow = EgfSeries::one(order);
    let mut k_fact = Rational::one();
    for k in 1..s as usize {
        h_pow = h_pow.mul(&h);
        k_fact *= rat_int(k as i64);
        sum = sum.add(&h_pow.scale(&k_fact.recip()));
    }
    exp_z(order).mul(&sum)
}

/// The subtracted form 1/(1−z) − e^z Σ_{k≥s} h^k/k!.
///
/// h has valuation 2, so h^k vanishes below degree 2k and the infinite
/// sum is exactly the finite sum over 2k ≤ order.
pub fn mixed_w_subtracted_form(s: u32, order: usize) -> Result<EgfSeries, CatalogError> {
    if s < 2 {
        return Err(CatalogError::ParamOutOfRange(format!(
            "w requires s >= 2, got {s}"
        )));
    }
    let h = commutator_series(order);
    let mut sum = EgfSeries::zero(order);
    let mut h_pow = h.pow(s as usize);
    let mut k_fact = Rational::from_integer(factorial(s as usize).into());
    let mut k = s as usize;
    while 2 * k <= order {
        sum = sum.add(&h_pow.scale(&k_fact.recip()));
        k += 1;
        k_fact *= rat_int(k as i64);
        h_pow = h_pow.mul(&h);
    }
    Ok(geometric(order).sub(&exp_z(order).mul(&sum)))
}

fn tower_q(m: u32, order: usize) -> EgfSeries {
    let z = EgfSeries::monomial(Rational::one(), 1, order);
    let mut q = EgfSeries::one(order);
    for _ in 2..=m {
        q = z.mul(&q).exp().expect("z·q has zero constant term");
    }
    q
}

fn tower_r(m: u32, order: usize) -> EgfSeries {
    if m == 1 {
        return EgfSeries::zero(order);
    }
    EgfSeries::monomial(Rational::one(), 1, order).mul(&tower_q(m - 1, order))
}

fn indecomp_q(m: u32, order: usize) -> EgfSeries {
    let mut q = EgfSeries::one(order);
    for _ in 2..=m {
        q = q
            .integrate()
            .truncated(order)
            .exp()
            .expect("integral has zero constant term");
    }
    q
}

fn indecomp_r(m: u32, order: usize) -> EgfSeries {
    if m == 1 {
        return EgfSeries::zero(order);
    }
    indecomp_q(m - 1, order).integrate().truncated(order)
}

/// r̃_m, the coefficientwise upper bound for the complexity function of
/// any Lie variety with an identity of degree m ≥ 2.
pub fn tbound_lie(m: u32, order: usize) -> Result<EgfSeries, CatalogError> {
    if m < 2 {
        return Err(CatalogError::ParamOutOfRange(format!(
            "bound requires identity degree m >= 2, got {m}"
        )));
    }
    Ok(tower_r(m, order))
}

/// q̃_m = exp r̃_m, the coefficientwise upper bound for the complexity
/// function of any Poisson variety with a Lie identity of degree m ≥ 2.
pub fn tbound_poisson(m: u32, order: usize) -> Result<EgfSeries, CatalogError> {
    if m < 2 {
        return Err(CatalogError::ParamOutOfRange(format!(
            "bound requires identity degree m >= 2, got {m}"
        )));
    }
    Ok(tower_q(m, order))
}

/// floor(e·f!) computed exactly from partial sums of Σ f!/k!.
///
/// The tail beyond K is bounded by f!/(K+1)! · (K+2)/(K+1); terms are
/// added until the floor is stable under that bound. Floating-point e
/// would mis-round from f = 18 on.
pub fn floor_e_times_factorial(f: usize) -> BigUint {
    let f_fact = Rational::from_integer(factorial(f).into());
    let mut k_fact = Rational::one();
    let mut sum = Rational::zero();
    let mut k = 0usize;
    loop {
        sum += &f_fact / &k_fact;
        // Tail bound after including term k: Σ_{j>k} f!/j! < f!/(k+1)! · (k+2)/(k+1).
        let next_fact = &k_fact * rat_int(k as i64 + 1);
        if k >= f + 2 {
            let bound = &f_fact / &next_fact * rat(k as i64 + 2, k as i64 + 1);
            let lo = floor_rational(&sum);
            let hi = floor_rational(&(&sum + &bound));
            if lo == hi {
                return lo.to_biguint().expect("e·f! is positive");
            }
        }
        k += 1;
        k_fact = next_fact;
    }
}

/// One row of the Ratseev lower-bound check c_n(W_s) ≥ floor(e·(n−1)!) − 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatseevRow {
    pub n: usize,
    pub codim: BigUint,
    pub bound: BigUint,
    pub pass: bool,
}

/// Check the lower bound for 1 ≤ n ≤ n_max against the exact codimensions
/// of W_s.
pub fn ratseev_check(s: u32, n_max: usize) -> Result<Vec<RatseevRow>, CatalogError> {
    let series = complexity(&VarietySpec::MixedW(s), n_max)?;
    let codims = series
        .codimensions()
        .expect("W_s codimensions are non-negative integers");
    let rows = (1..=n_max)
        .map(|n| {
            let codim = codims.get(n).clone();
            let bound = floor_e_times_factorial(n - 1) - BigUint::one();
            let pass = codim >= bound;
            RatseevRow { n, codim, bound, pass }
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{coeff_le, CodimSequence};

    #[test]
    fn parse_roundtrip() {
        for name in [
            "assoc", "comm", "lie", "poisson", "nilp:3", "metab", "cbm:char2", "cbm:char0",
            "w:2", "tower-q:4", "tower-r:2", "indecomp-q:3", "indecomp-r:5",
        ] {
            let spec = VarietySpec::parse(name).unwrap();
            assert_eq!(spec.to_string(), name);
        }
    }

    #[test]
    fn parse_rejects_unknown_and_out_of_range() {
        assert!(matches!(
            VarietySpec::parse("nosuch"),
            Err(CatalogError::UnknownVariety(_))
        ));
        assert!(matches!(
            VarietySpec::parse("w:1"),
            Err(CatalogError::ParamOutOfRange(_))
        ));
        assert!(matches!(
            VarietySpec::parse("tower-q:0"),
            Err(CatalogError::ParamOutOfRange(_))
        ));
        assert!(matches!(
            VarietySpec::parse("w:x"),
            Err(CatalogError::UnknownVariety(_))
        ));
    }

    #[test]
    fn w2_printed_expansion() {
        let w2 = complexity(&VarietySpec::MixedW(2), 10).unwrap();
        assert_eq!(*w2.coeff(0), rat(1, 1));
        assert_eq!(*w2.coeff(3), rat(1, 1));
        assert_eq!(*w2.coeff(4), rat(7, 8));
        assert_eq!(*w2.coeff(5), rat(17, 24));
        assert_eq!(*w2.coeff(9), rat(25133, 72576));
        assert_eq!(*w2.coeff(10), rat(556037, 1814400));
    }

    #[test]
    fn w3_and_w5_printed_expansions() {
        let w3 = complexity(&VarietySpec::MixedW(3), 10).unwrap();
        assert_eq!(*w3.coeff(5), rat(1, 1));
        assert_eq!(*w3.coeff(6), rat(47, 48));
        assert_eq!(*w3.coeff(8), rat(1021, 1152));
        let w5 = complexity(&VarietySpec::MixedW(5), 10).unwrap();
        assert_eq!(*w5.coeff(9), rat(1, 1));
        assert_eq!(*w5.coeff(10), rat(3839, 3840));
    }

    #[test]
    fn metabelian_codims_are_n_minus_one() {
        let c = complexity(&VarietySpec::Metabelian, 12)
            .unwrap()
            .codimensions()
            .unwrap();
        assert_eq!(*c.get(0), BigUint::zero());
        assert_eq!(*c.get(1), BigUint::one());
        for n in 2..=12 {
            assert_eq!(*c.get(n), BigUint::from(n as u64 - 1), "n = {n}");
        }
    }

    #[test]
    fn centre_by_metabelian_low_codims() {
        let c0 = complexity(&VarietySpec::CentreByMetabelian { char_two: false }, 5)
            .unwrap()
            .codimensions()
            .unwrap();
        assert_eq!(c0, CodimSequence::from_u64(&[0, 1, 1, 2, 6, 9]));
        let c2 = complexity(&VarietySpec::CentreByMetabelian { char_two: true }, 5)
            .unwrap()
            .codimensions()
            .unwrap();
        assert_eq!(c2, CodimSequence::from_u64(&[0, 1, 1, 2, 6, 10]));
    }

    #[test]
    fn char_two_minus_char_zero_is_odd_torsion() {
        // The difference is sinh(z) − z − z³/6: non-negative, supported on
        // odd degrees ≥ 5.
        let c2 = complexity(&VarietySpec::CentreByMetabelian { char_two: true }, 15).unwrap();
        let c0 = complexity(&VarietySpec::CentreByMetabelian { char_two: false }, 15).unwrap();
        let diff = c2.sub(&c0);
        assert!(coeff_le(&EgfSeries::zero(15), &diff).holds());
        for n in 0..=4 {
            assert!(diff.coeff(n).is_zero());
        }
        assert_eq!(*diff.coeff(5), Rational::new(1.into(), factorial(5).into()));
    }

    #[test]
    fn indecomp_q3_gives_bell_numbers() {
        let c = complexity(&VarietySpec::IndecompQ(3), 6)
            .unwrap()
            .codimensions()
            .unwrap();
        assert_eq!(c, CodimSequence::from_u64(&[1, 1, 2, 5, 15, 52, 203]));
    }

    #[test]
    fn tower_q2_is_exp() {
        let q2 = complexity(&VarietySpec::TowerQ(2), 10).unwrap();
        let c = q2.codimensions().unwrap();
        assert!(c.values().iter().all(|v| v.is_one()));
    }

    #[test]
    fn tower_r3_codims_are_n() {
        let c = complexity(&VarietySpec::TowerR(3), 10)
            .unwrap()
            .codimensions()
            .unwrap();
        for n in 0..=10 {
            assert_eq!(*c.get(n), BigUint::from(n as u64));
        }
    }

    #[test]
    fn tower_q3_codims() {
        let c = complexity(&VarietySpec::TowerQ(3), 6)
            .unwrap()
            .codimensions()
            .unwrap();
        assert_eq!(c, CodimSequence::from_u64(&[1, 1, 3, 10, 41, 196, 1057]));
    }

    #[test]
    fn nilpotent_cuts_lie_series() {
        let c = complexity(&VarietySpec::NilpotentLie(2), 5)
            .unwrap()
            .codimensions()
            .unwrap();
        assert_eq!(c, CodimSequence::from_u64(&[0, 1, 1, 0, 0, 0]));
    }

    #[test]
    fn tbound_lie_m2_is_z() {
        let r2 = tbound_lie(2, 8).unwrap();
        assert_eq!(r2, EgfSeries::monomial(Rational::one(), 1, 8));
        assert!(tbound_lie(1, 8).is_err());
    }

    #[test]
    fn tbound_poisson_m2_is_exp() {
        let q2 = tbound_poisson(2, 8).unwrap();
        assert_eq!(q2, complexity(&VarietySpec::Comm, 8).unwrap());
    }

    #[test]
    fn tbound_poisson_dominates_tbound_lie() {
        // q̃_m = exp(r̃_m) ⪰ r̃_m since all coefficients are non-negative.
        for m in 2..=5 {
            let r = tbound_lie(m, 20).unwrap();
            let q = tbound_poisson(m, 20).unwrap();
            assert!(coeff_le(&r, &q).holds(), "m = {m}");
        }
    }

    #[test]
    fn floor_e_factorial_small_values() {
        // floor(e) = 2, floor(6e) = 16.
        assert_eq!(floor_e_times_factorial(0), BigUint::from(2u32));
        assert_eq!(floor_e_times_factorial(1), BigUint::from(2u32));
        assert_eq!(floor_e_times_factorial(3), BigUint::from(16u32));
    }

    #[test]
    fn floor_e_factorial_beats_floating_point() {
        // At f = 18 the f64 product e·18! rounds below the true floor.
        let exact = floor_e_times_factorial(18);
        assert_eq!(exact, BigUint::from(17_403_456_103_284_421u64));
        let via_f64 = (std::f64::consts::E * 6_402_373_705_728_000f64).floor() as u64;
        assert_eq!(via_f64, 17_403_456_103_284_420u64);
    }

    #[test]
    fn ratseev_rows_for_w2() {
        let rows = ratseev_check(2, 4).unwrap();
        assert_eq!(rows[0], RatseevRow {
            n: 1,
            codim: BigUint::one(),
            bound: BigUint::one(),
            pass: true,
        });
        let r4 = &rows[3];
        assert_eq!(r4.codim, BigUint::from(21u32));
        assert_eq!(r4.bound, BigUint::from(15u32));
        assert!(r4.pass);
    }

    #[test]
    fn subtracted_form_agrees_at_low_order() {
        for s in 2..=5 {
            assert_eq!(
                mixed_w_subtracted_form(s, 12).unwrap(),
                complexity(&VarietySpec::MixedW(s), 12).unwrap(),
                "s = {s}"
            );
        }
        // Below degree 4 the subtracted tail is empty.
        let t = mixed_w_subtracted_form(7, 1).unwrap();
        assert_eq!(t, geometric(1));
    }

    #[test]
    fn every_catalog_entry_has_integer_codims() {
        let specs = [
            VarietySpec::Assoc,
            VarietySpec::Comm,
            VarietySpec::Lie,
            VarietySpec::Poisson,
            VarietySpec::NilpotentLie(3),
            VarietySpec::Metabelian,
            VarietySpec::CentreByMetabelian { char_two: true },
            VarietySpec::CentreByMetabelian { char_two: false },
            VarietySpec::MixedW(2),
            VarietySpec::MixedW(4),
            VarietySpec::TowerQ(4),
            VarietySpec::TowerR(4),
            VarietySpec::IndecompQ(4),
            VarietySpec::IndecompR(4),
        ];
        for spec in specs {
            let series = complexity(&spec, 14).unwrap();
            series
                .codimensions()
                .unwrap_or_else(|e| panic!("{spec}: {e}"));
        }
    }
}

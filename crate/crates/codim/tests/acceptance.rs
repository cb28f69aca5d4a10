//! Acceptance suite: the exit criteria for the whole artifact, one test
//! per criterion. Each test prints a single PASS line (visible with
//! `cargo test --test acceptance -- --nocapture`) and enforces its time
//! budget.

use std::time::{Duration, Instant};

use num::{BigUint, One};

use codim::catalog::{
    complexity, floor_e_times_factorial, ratseev_check, tbound_lie, tbound_poisson,
    mixed_w_subtracted_form, VarietySpec,
};
use codim::growth::{sher_diagnostic, tower_growth_ratio};
use codim::rational::{factorial, rat, Rational};
use codim::series::{coeff_le, EgfSeries};
use codim::words::{
    count_cbm_second_derived, count_free_poisson_multilinear, count_kuzmin, count_qm, count_rm,
    count_tilde, TildeKind,
};

fn finish(criterion: u32, started: Instant, budget: Duration, what: &str) {
    let elapsed = started.elapsed();
    println!(
        "acceptance criterion {criterion}: PASS ({elapsed:.2?} / budget {budget:.0?}) — {what}"
    );
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its {budget:?} budget: {elapsed:?}"
    );
}

/// n!·a_n of a series as a big integer; panics if not integral.
fn codim_at(series: &EgfSeries, n: usize) -> BigUint {
    let c = series.coeff(n) * Rational::from_integer(factorial(n).into());
    assert!(c.is_integer(), "non-integral codimension at {n}");
    c.to_integer().to_biguint().expect("non-negative")
}

#[test]
fn criterion_01_mixed_w_golden_coefficients() {
    let started = Instant::now();
    let w2 = complexity(&VarietySpec::MixedW(2), 10).unwrap();
    let golden2 = [
        (4, rat(7, 8)),
        (5, rat(17, 24)),
        (6, rat(41, 72)),
        (7, rat(169, 360)),
        (8, rat(51, 128)),
        (9, rat(25133, 72576)),
        (10, rat(556037, 1814400)),
    ];
    for (n, want) in golden2 {
        assert_eq!(w2.coeff(n), &want, "W_2 coefficient {n}");
    }
    let w3 = complexity(&VarietySpec::MixedW(3), 10).unwrap();
    let golden3 = [
        (6, rat(47, 48)),
        (7, rat(15, 16)),
        (8, rat(1021, 1152)),
        (9, rat(43249, 51840)),
        (10, rat(509, 648)),
    ];
    for (n, want) in golden3 {
        assert_eq!(w3.coeff(n), &want, "W_3 coefficient {n}");
    }
    let w4 = complexity(&VarietySpec::MixedW(4), 10).unwrap();
    let golden4 = [(8, rat(383, 384)), (9, rat(1141, 1152)), (10, rat(5641, 5760))];
    for (n, want) in golden4 {
        assert_eq!(w4.coeff(n), &want, "W_4 coefficient {n}");
    }
    let w5 = complexity(&VarietySpec::MixedW(5), 10).unwrap();
    assert_eq!(w5.coeff(10), &rat(3839, 3840), "W_5 coefficient 10");
    finish(
        1,
        started,
        Duration::from_secs(1),
        "printed expansions of C(W_2..W_5) reproduced exactly",
    );
}

#[test]
fn criterion_02_mixed_w_closed_forms_agree() {
    let started = Instant::now();
    for s in 2..=5u32 {
        let direct = complexity(&VarietySpec::MixedW(s), 40).unwrap();
        let alternate = mixed_w_subtracted_form(s, 40).unwrap();
        assert_eq!(direct, alternate, "s = {s}");
    }
    finish(
        2,
        started,
        Duration::from_secs(5),
        "both closed forms of C(W_s) agree coefficientwise to order 40 for s in 2..=5",
    );
}

#[test]
fn criterion_03_ratseev_lower_bound() {
    let started = Instant::now();
    for s in [2u32, 3] {
        let rows = ratseev_check(s, 25).unwrap();
        assert_eq!(rows.len(), 25);
        for row in rows {
            assert!(
                row.pass,
                "s = {s}, n = {}: c_n = {} < bound {}",
                row.n, row.codim, row.bound
            );
        }
    }
    // The floor itself is exact where f64 already mis-rounds.
    assert_eq!(
        floor_e_times_factorial(18),
        BigUint::from(17_403_456_103_284_421u64)
    );
    finish(
        3,
        started,
        Duration::from_secs(5),
        "c_n(W_s) >= floor(e(n-1)!) - 1 for s in {2,3}, n <= 25, exact floor",
    );
}

#[test]
fn criterion_04_qm_rm_oracle_equivalence() {
    let started = Instant::now();
    for m in 1..=5u32 {
        let q_series = complexity(&VarietySpec::IndecompQ(m), 7).unwrap();
        let r_series = complexity(&VarietySpec::IndecompR(m), 7).unwrap();
        for n in 0..=7usize {
            let q_report = count_qm(n, m).with_series_count(0);
            let q_count = q_report.count_recursive;
            assert_eq!(
                BigUint::from(q_count),
                codim_at(&q_series, n),
                "Q_{m} degree {n}"
            );
            assert_eq!(q_report.count_naive, Some(q_count), "naive Q_{m} degree {n}");
            let r_count = count_rm(n, m).count_recursive;
            assert_eq!(
                BigUint::from(r_count),
                codim_at(&r_series, n),
                "R_{m} degree {n}"
            );
            if n >= 1 && m >= 2 {
                assert_eq!(
                    r_count,
                    count_qm(n - 1, m - 1).count_recursive,
                    "R/Q shift at n = {n}, m = {m}"
                );
            }
        }
    }
    let bell: Vec<u64> = (0..=6).map(|n| count_qm(n, 3).count_recursive).collect();
    assert_eq!(bell, vec![1, 1, 2, 5, 15, 52, 203]);
    finish(
        4,
        started,
        Duration::from_secs(60),
        "brute-force Q_m/R_m counts equal n!·a_n of the recurrence series (n <= 7, m <= 5)",
    );
}

#[test]
fn criterion_05_tilde_tower_oracle() {
    let started = Instant::now();
    for m in 1..=4u32 {
        let q_series = complexity(&VarietySpec::TowerQ(m), 7).unwrap();
        let r_series = complexity(&VarietySpec::TowerR(m), 7).unwrap();
        for n in 0..=7usize {
            assert_eq!(
                BigUint::from(count_tilde(n, m, TildeKind::Q).count_recursive),
                codim_at(&q_series, n),
                "tilde-Q m = {m}, n = {n}"
            );
            assert_eq!(
                BigUint::from(count_tilde(n, m, TildeKind::R).count_recursive),
                codim_at(&r_series, n),
                "tilde-R m = {m}, n = {n}"
            );
        }
    }
    let r3 = complexity(&VarietySpec::TowerR(3), 12).unwrap();
    let q2 = complexity(&VarietySpec::TowerQ(2), 12).unwrap();
    for n in 0..=12usize {
        assert_eq!(codim_at(&r3, n), BigUint::from(n as u64), "r̃_3 codim {n}");
        assert_eq!(codim_at(&q2, n), BigUint::one(), "q̃_2 codim {n}");
    }
    finish(
        5,
        started,
        Duration::from_secs(60),
        "tilde-word counts equal n!·a_n of the tower series (n <= 7, m <= 4)",
    );
}

#[test]
fn criterion_06_kuzmin_and_centre_by_metabelian() {
    let started = Instant::now();
    assert_eq!(count_kuzmin(4).unwrap(), 2);
    assert_eq!(count_kuzmin(5).unwrap(), 5);
    for n in 4..=9usize {
        assert_eq!(
            count_kuzmin(n).unwrap(),
            (n * (n - 3) / 2) as u64,
            "Kuzmin degree {n}"
        );
    }
    let char0 = complexity(&VarietySpec::CentreByMetabelian { char_two: false }, 9).unwrap();
    let char2 = complexity(&VarietySpec::CentreByMetabelian { char_two: true }, 9).unwrap();
    assert_eq!(codim_at(&char0, 4), BigUint::from(6u32));
    assert_eq!(codim_at(&char0, 5), BigUint::from(9u32));
    assert_eq!(codim_at(&char2, 5), BigUint::from(10u32));
    for n in 4..=9usize {
        let metabelian_part = (n - 1) as u64;
        for (series, char_two) in [(&char0, false), (&char2, true)] {
            let oracle = metabelian_part + count_cbm_second_derived(n, char_two).unwrap();
            assert_eq!(
                codim_at(series, n),
                BigUint::from(oracle),
                "centre-by-metabelian char_two = {char_two}, degree {n}"
            );
        }
    }
    finish(
        6,
        started,
        Duration::from_secs(30),
        "Kuzmin enumeration is n(n-3)/2 and the catalog matches the oracle-built counts",
    );
}

#[test]
fn criterion_07_free_poisson_basis() {
    let started = Instant::now();
    let mut fact = BigUint::one();
    for n in 0..=12usize {
        if n > 0 {
            fact *= BigUint::from(n);
        }
        assert_eq!(
            BigUint::from(count_free_poisson_multilinear(n)),
            fact,
            "degree {n}"
        );
    }
    // exp(-ln(1-z)) = 1/(1-z) to order 50.
    let lie = complexity(&VarietySpec::Lie, 50).unwrap();
    let poisson = complexity(&VarietySpec::Poisson, 50).unwrap();
    assert_eq!(lie.exp().unwrap(), poisson);
    finish(
        7,
        started,
        Duration::from_secs(10),
        "free-Poisson multilinear basis counts n! (n <= 12); exp(-ln(1-z)) = 1/(1-z) to order 50",
    );
}

#[test]
fn criterion_08_coefficientwise_tower_bounds() {
    let started = Instant::now();
    let order = 40;
    let metab = complexity(&VarietySpec::Metabelian, order).unwrap();
    assert!(coeff_le(&metab, &tbound_lie(4, order).unwrap()).holds(), "metab vs r̃_4");
    for char_two in [false, true] {
        let cbm = complexity(&VarietySpec::CentreByMetabelian { char_two }, order).unwrap();
        assert!(
            coeff_le(&cbm, &tbound_lie(5, order).unwrap()).holds(),
            "cbm char_two = {char_two} vs r̃_5"
        );
    }
    for s in 1..=3u32 {
        let nilp = complexity(&VarietySpec::NilpotentLie(s), order).unwrap();
        assert!(
            coeff_le(&nilp, &tbound_lie(s + 2, order).unwrap()).holds(),
            "nilp:{s} vs r̃_{}",
            s + 2
        );
    }
    for m in 2..=5u32 {
        let q = complexity(&VarietySpec::IndecompQ(m), order).unwrap();
        let r = complexity(&VarietySpec::IndecompR(m), order).unwrap();
        assert!(
            coeff_le(&q, &tbound_poisson(m, order).unwrap()).holds(),
            "q_{m} vs q̃_{m}"
        );
        assert!(
            coeff_le(&r, &tbound_lie(m, order).unwrap()).holds(),
            "r_{m} vs r̃_{m}"
        );
    }
    finish(
        8,
        started,
        Duration::from_secs(10),
        "every stated complexity function is dominated by its tower bound to order 40",
    );
}

#[test]
fn criterion_09_centre_by_metabelian_dominance() {
    let started = Instant::now();
    let order = 50;
    // Claim-1 bound (z²/2)e^z + z − z³/6 equals the char-2 closed form.
    let z = EgfSeries::monomial(Rational::one(), 1, order);
    let exp_z = z.exp().unwrap();
    let bound = EgfSeries::monomial(rat(1, 2), 2, order)
        .mul(&exp_z)
        .add(&z)
        .sub(&EgfSeries::monomial(rat(1, 6), 3, order));
    let char0 = complexity(&VarietySpec::CentreByMetabelian { char_two: false }, order).unwrap();
    let char2 = complexity(&VarietySpec::CentreByMetabelian { char_two: true }, order).unwrap();
    assert!(coeff_le(&char0, &bound).holds());
    assert!(coeff_le(&char2, &bound).holds());
    assert!(coeff_le(&char0, &char2).holds());
    finish(
        9,
        started,
        Duration::from_secs(1),
        "both characteristic variants sit under the claim-1 bound to order 50",
    );
}

#[test]
fn criterion_10_growth_diagnostics() {
    let started = Instant::now();
    // Closed-form tower ratios, 1e-9 float tolerance.
    let closed_form = |r: f64| (r + r.ln()) / r;
    let at_20 = tower_growth_ratio(3, 20.0).unwrap();
    assert!((at_20 - closed_form(20.0)).abs() < 1e-9);
    assert!(at_20 > 1.0 && at_20 < 1.16, "got {at_20}");
    let mut last = f64::INFINITY;
    for r in [20.0, 40.0, 80.0] {
        let v = tower_growth_ratio(3, r).unwrap();
        assert!((v - closed_form(r)).abs() < 1e-9, "r = {r}");
        assert!(v < last, "ratio must decrease at r = {r}");
        last = v;
    }
    for r in [5.0, 20.0, 300.0] {
        assert_eq!(tower_growth_ratio(2, r).unwrap(), 1.0, "m = 2 is exact");
    }
    // Coefficient-side diagnostic on q̃_3 truncated at 200.
    let q3 = complexity(&VarietySpec::TowerQ(3), 200).unwrap();
    let diag = sher_diagnostic(&q3, 1.0, 3, 100, 200).unwrap();
    assert_eq!(diag.samples.len(), 101);
    for pair in diag.samples.windows(2) {
        assert!(
            pair[1].1 < pair[0].1,
            "s_n must decrease on the tail: {:?} -> {:?}",
            pair[0],
            pair[1]
        );
    }
    let s_200 = diag.samples.last().unwrap().1;
    assert!(s_200 > 1.0 && s_200 < 3.0, "s_200 = {s_200}");
    // And on exp(z), where the type at level 3 is zero.
    let e = complexity(&VarietySpec::Comm, 200).unwrap();
    let diag_e = sher_diagnostic(&e, 1.0, 3, 50, 200).unwrap();
    for (n, s) in &diag_e.samples {
        assert!(*s < 0.5, "exp(z): s_{n} = {s}");
    }
    finish(
        10,
        started,
        Duration::from_secs(60),
        "tower ratios match closed forms and the coefficient diagnostic brackets hold",
    );
}

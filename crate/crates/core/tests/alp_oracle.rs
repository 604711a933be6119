//! T_l^m against an exact-rational evaluation of Rodrigues' formula, and T'
//! against central differences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use so32_legendre::alp::eval_t_second_derivative;
use so32_legendre::{eval_t, eval_t_derivative};

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Integer coefficients of `(x^2 - 1)^l`, lowest degree first.
fn rodrigues_base(l: i64) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); (2 * l + 1) as usize];
    for k in 0..=l {
        let binom = factorial(l) / (factorial(k) * factorial(l - k));
        let sign = if (l - k) % 2 == 0 { 1 } else { -1 };
        c[(2 * k) as usize] = binom * sign;
    }
    c
}

fn differentiate(c: &[BigInt], times: i64) -> Vec<BigInt> {
    let mut c = c.to_vec();
    for _ in 0..times {
        c = c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, v)| v * BigInt::from(k as i64))
            .collect();
    }
    c
}

fn horner(c: &[BigInt], x: &BigRational) -> BigRational {
    c.iter()
        .rev()
        .fold(BigRational::zero(), |acc, v| acc * x + BigRational::from_integer(v.clone()))
}

/// `T_l^m(x)` for `m >= 0` as `sign * sqrt(q)` with `q` exact.
fn oracle(l: i64, m: i64, x: &BigRational) -> f64 {
    // P_l^m = (-1)^m (1-x^2)^{m/2} d^{l+m}/dx^{l+m} (x^2-1)^l / (2^l l!)
    let d = horner(&differentiate(&rodrigues_base(l), l + m), x);
    let scale = BigRational::new(BigInt::one(), BigInt::from(2).pow(l as u32) * factorial(l));
    let core = d * scale;
    let one_minus = BigRational::one() - x * x;
    let norm = BigRational::new(factorial(l - m), factorial(l + m));
    let mut q = core.clone() * core.clone() * norm;
    for _ in 0..m {
        q *= one_minus.clone();
    }
    let mut sign = if core.is_negative() { -1.0 } else { 1.0 };
    if m % 2 == 1 {
        sign = -sign;
    }
    sign * q.to_f64().unwrap().sqrt()
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[test]
fn recurrence_matches_rodrigues_through_degree_20() {
    let points = [
        rational(-99, 100),
        rational(-9, 10),
        rational(-1, 3),
        rational(0, 1),
        rational(1, 7),
        rational(1, 4),
        rational(7, 10),
        rational(19, 20),
    ];
    let mut worst: f64 = 0.0;
    for l in 0..=20 {
        for m in 0..=l {
            for xq in &points {
                let x = xq.to_f64().unwrap();
                let want = oracle(l, m, xq);
                let got = eval_t(l, m, x).unwrap();
                let mirrored = eval_t(l, -m, x).unwrap();
                let phase = if m % 2 == 0 { 1.0 } else { -1.0 };
                worst = worst.max((got - want).abs()).max((mirrored - phase * want).abs());
            }
        }
    }
    assert!(worst < 1e-11, "max deviation {worst:e}");
}

#[test]
fn oracle_reproduces_hand_values() {
    assert_eq!(oracle(0, 0, &rational(3, 10)), 1.0);
    assert!((oracle(1, 1, &rational(0, 1)) + 0.5f64.sqrt()).abs() < 1e-16);
    assert!((oracle(2, 0, &rational(0, 1)) + 0.5).abs() < 1e-16);
}

#[test]
fn derivative_matches_central_differences() {
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    for l in 0..=15 {
        for m in -l..=l {
            for i in 0..=36 {
                let x = -0.9 + 0.05 * i as f64;
                let fd = (eval_t(l, m, x + h).unwrap() - eval_t(l, m, x - h).unwrap()) / (2.0 * h);
                worst = worst.max((eval_t_derivative(l, m, x).unwrap() - fd).abs());
            }
        }
    }
    assert!(worst < 1e-6, "max deviation {worst:e}");
}

#[test]
fn second_derivative_matches_differences_of_first() {
    let h = 1e-6;
    for (l, m) in [(3, 0), (5, 2), (8, -3), (12, 7)] {
        for x in [-0.8, -0.3, 0.1, 0.65] {
            let fd = (eval_t_derivative(l, m, x + h).unwrap() - eval_t_derivative(l, m, x - h).unwrap()) / (2.0 * h);
            let d2 = eval_t_second_derivative(l, m, x).unwrap();
            assert!((d2 - fd).abs() < 1e-5 * (1.0 + d2.abs()), "({l},{m}) at {x}: {d2} vs {fd}");
        }
    }
}

//! Pointwise evaluation of the normalized associated Legendre functions
//!
//! ```text
//! T_l^m(x) = sqrt((l-m)!/(l+m)!) P_l^m(x),   T_l^{-m} = (-1)^m T_l^m
//! ```
//!
//! on the open interval `(-1, 1)`. Values come from a closed-form seed at
//! `l = |m|` followed by the upward three-term recurrence in `l`, which is the
//! sum of the `K+` and `K-` ladder actions:
//!
//! ```text
//! (2l+1) x T_l^m = sqrt((l-m+1)(l+m+1)) T_{l+1}^m + sqrt((l+m)(l-m)) T_{l-1}^m
//! ```
//!
//! Derivatives are solved from the `K-` action
//! `(1-x^2) T' + l x T = sqrt((l+m)(l-m)) T_{l-1}`.

use crate::error::{Error, Result};
use crate::index::is_admissible;

/// Value together with its first and second `x`-derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlpJet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

pub(crate) fn check_x(x: f64) -> Result<()> {
    if x.is_finite() && x.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("x = {x} outside the open interval (-1,1)")))
    }
}

fn check_mode(l: i64, m: i64) -> Result<()> {
    if is_admissible(l, m) {
        Ok(())
    } else {
        Err(Error::Domain(format!("inadmissible (l,m) = ({l},{m})")))
    }
}

fn phase(m: i64) -> f64 {
    if m < 0 && m % 2 != 0 {
        -1.0
    } else {
        1.0
    }
}

/// `T_{|m|}^{|m|}(x) = (-1)^m sqrt((2m-1)!!/(2m)!!) (1-x^2)^{m/2}`.
///
/// The double-factorial ratio is folded in one factor at a time so nothing
/// overflows for large orders.
fn sectoral_seed(m_abs: i64, x: f64) -> f64 {
    let s = (1.0 - x * x).sqrt();
    let mut p = 1.0;
    for k in 1..=m_abs {
        let k = k as f64;
        p *= ((2.0 * k - 1.0) / (2.0 * k)).sqrt() * s;
    }
    if m_abs % 2 == 1 {
        -p
    } else {
        p
    }
}

/// `sqrt(a * b)` for integer factors, taking the product exactly when it fits.
pub(crate) fn sqrt_int_product(a: i64, b: i64) -> f64 {
    if a <= 0 || b <= 0 {
        return 0.0;
    }
    match a.checked_mul(b) {
        Some(p) if p < (1_i64 << 53) => (p as f64).sqrt(),
        _ => (a as f64).sqrt() * (b as f64).sqrt(),
    }
}

/// `T_l^m(x)` for `l = |m|, ..., l_max` (index `l - |m|`). Empty when `l_max < |m|`.
pub fn t_column(m: i64, l_max: i64, x: f64) -> Result<Vec<f64>> {
    check_x(x)?;
    let a = m.abs();
    if l_max < a {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity((l_max - a + 1) as usize);
    out.push(sectoral_seed(a, x));
    if l_max > a {
        out.push((2.0 * a as f64 + 1.0).sqrt() * x * out[0]);
    }
    for l in (a + 1)..l_max {
        let i = (l - a) as usize;
        let up = sqrt_int_product(l - a + 1, l + a + 1);
        let down = sqrt_int_product(l + a, l - a);
        let next = ((2 * l + 1) as f64 * x * out[i] - down * out[i - 1]) / up;
        out.push(next);
    }
    let sign = phase(m);
    if sign < 0.0 {
        out.iter_mut().for_each(|v| *v = -*v);
    }
    Ok(out)
}

/// Values and first two derivatives of `T_l^m(x)` for `l = |m|, ..., l_max`.
pub fn t_jet_column(m: i64, l_max: i64, x: f64) -> Result<Vec<AlpJet>> {
    let values = t_column(m, l_max, x)?;
    let a = m.abs();
    let one_minus = 1.0 - x * x;
    let mut out: Vec<AlpJet> = Vec::with_capacity(values.len());
    for (i, &value) in values.iter().enumerate() {
        let l = a + i as i64;
        let c = sqrt_int_product(l + m, l - m);
        let (prev, prev_d1) = if i > 0 {
            (values[i - 1], out[i - 1].d1)
        } else {
            (0.0, 0.0)
        };
        let lf = l as f64;
        let d1 = (c * prev - lf * x * value) / one_minus;
        let d2 = (c * prev_d1 - lf * value + (2.0 - lf) * x * d1) / one_minus;
        out.push(AlpJet { value, d1, d2 });
    }
    Ok(out)
}

/// `T_l^m(x)` for admissible `(l, m)` and `|x| < 1`.
pub fn eval_t(l: i64, m: i64, x: f64) -> Result<f64> {
    check_mode(l, m)?;
    let col = t_column(m, l, x)?;
    Ok(*col.last().expect("column contains l = |m|"))
}

/// `dT_l^m/dx`.
pub fn eval_t_derivative(l: i64, m: i64, x: f64) -> Result<f64> {
    Ok(eval_t_jet(l, m, x)?.d1)
}

/// `d^2 T_l^m / dx^2`, obtained by differentiating the first-derivative formula.
pub fn eval_t_second_derivative(l: i64, m: i64, x: f64) -> Result<f64> {
    Ok(eval_t_jet(l, m, x)?.d2)
}

pub fn eval_t_jet(l: i64, m: i64, x: f64) -> Result<AlpJet> {
    check_mode(l, m)?;
    let col = t_jet_column(m, l, x)?;
    Ok(*col.last().expect("column contains l = |m|"))
}

/// Checks `T_l^{-m}(x) = (-1)^m T_l^m(x)` to `1e-12` for `m >= 0`.
pub fn phase_relation_check(l: i64, m: i64, x: f64) -> Result<bool> {
    if m < 0 {
        return Err(Error::Domain(format!("phase check expects m >= 0, got {m}")));
    }
    let pos = eval_t(l, m, x)?;
    let neg = eval_t(l, -m, x)?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok((neg - sign * pos).abs() <= 1e-12)
}

/// Residual of the general Legendre equation
/// `(1-x^2) T'' - 2x T' + (l(l+1) - m^2/(1-x^2)) T` at `x`.
pub fn legendre_bracket(l: i64, m: i64, x: f64, jet: AlpJet) -> f64 {
    let one_minus = 1.0 - x * x;
    let lf = l as f64;
    let mf = m as f64;
    one_minus * jet.d2 - 2.0 * x * jet.d1 + (lf * (lf + 1.0) - mf * mf / one_minus) * jet.value
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        for x in [-0.9, -0.2, 0.0, 0.5, 0.99] {
            assert_eq!(eval_t(0, 0, x).unwrap(), 1.0);
        }
        assert!((eval_t(1, 0, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((eval_t(1, 1, 0.0).unwrap() - (-std::f64::consts::FRAC_1_SQRT_2)).abs() < 1e-15);
        assert!((eval_t(2, 0, 0.0).unwrap() - (-0.5)).abs() < 1e-15);
    }

    #[test]
    fn derivative_spot_values() {
        assert_eq!(eval_t_derivative(0, 0, 0.3).unwrap(), 0.0);
        for x in [-0.7, 0.0, 0.25, 0.8] {
            assert!((eval_t_derivative(1, 0, x).unwrap() - 1.0).abs() < 1e-14);
        }
        assert!(eval_t_derivative(2, 0, 0.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(eval_t(1, 2, 0.0), Err(Error::Domain(_))));
        assert!(matches!(eval_t(2, 0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(eval_t(2, 0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(eval_t(2, 0, f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(eval_t_derivative(-1, 0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn phase_relation() {
        assert!(phase_relation_check(3, 2, 0.4).unwrap());
        let (a, b) = (eval_t(3, 2, 0.4).unwrap(), eval_t(3, -2, 0.4).unwrap());
        assert_eq!(a, b);
        assert!(phase_relation_check(1, 1, 0.4).unwrap());
        assert_eq!(eval_t(1, -1, 0.4).unwrap(), -eval_t(1, 1, 0.4).unwrap());
        for l in 0..6 {
            assert!(phase_relation_check(l, 0, -0.3).unwrap());
        }
    }

    #[test]
    fn large_order_seed_is_finite() {
        let v = eval_t(150, 120, 0.3).unwrap();
        assert!(v.is_finite());
        assert!(v != 0.0);
    }

    #[test]
    fn integer_products() {
        assert_eq!(sqrt_int_product(2, 1), 2f64.sqrt());
        assert_eq!(sqrt_int_product(0, 5), 0.0);
        assert_eq!(sqrt_int_product(-1, 5), 0.0);
        let big = 3_000_000_000_i64;
        let v = sqrt_int_product(big, big);
        assert!((v / big as f64 - 1.0).abs() < 1e-15);
    }
}

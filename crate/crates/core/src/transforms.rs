//! Per-channel Legendre transforms.
//!
//! Spectra are stored in the orthonormal basis `phi_l^m = sqrt(l + 1/2) T_l^m`,
//! for which expansion, projection, inner product and Parseval's identity are
//! simultaneously exact:
//!
//! ```text
//! f^m(x) = sum_l c_l phi_l^m(x),    c_l = int f^m(x) phi_l^m(x) dx
//! ```
//!
//! Coefficients on the unnormalized `T_l^m` (the basis the ladder operators act
//! on) are `a_l = sqrt(l + 1/2) c_l`; see [`to_t_basis`] and [`from_t_basis`].

use std::collections::{BTreeMap, BTreeSet};

use crate::alp::{check_x, t_column};
use crate::error::{Error, Result};
use crate::index::{CoeffVector, ModeIndex, Truncation};
use crate::quadrature::{GridFunction, QuadratureRule};

#[derive(Clone, Debug, PartialEq)]
pub struct ChannelSpectrum {
    pub m: i64,
    pub l_max: i64,
    coeffs: BTreeMap<i64, f64>,
}

impl ChannelSpectrum {
    pub fn new(m: i64, l_max: i64) -> Self {
        ChannelSpectrum {
            m,
            l_max,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i64, f64)>>(m: i64, l_max: i64, coeffs: I) -> Result<Self> {
        let mut s = ChannelSpectrum::new(m, l_max);
        for (l, c) in coeffs {
            s.set(l, c)?;
        }
        Ok(s)
    }

    pub fn set(&mut self, l: i64, c: f64) -> Result<()> {
        if l < self.m.abs() || l > self.l_max {
            return Err(Error::Domain(format!(
                "degree {l} outside [{}, {}] for channel m = {}",
                self.m.abs(),
                self.l_max,
                self.m
            )));
        }
        self.coeffs.insert(l, c);
        Ok(())
    }

    pub fn get(&self, l: i64) -> f64 {
        self.coeffs.get(&l).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.coeffs.iter().map(|(l, c)| (*l, *c))
    }

    pub fn energy(&self) -> f64 {
        self.coeffs.values().map(|c| c * c).sum()
    }

    pub fn max_abs_diff(&self, other: &ChannelSpectrum) -> f64 {
        let keys: BTreeSet<i64> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.into_iter()
            .map(|l| (self.get(l) - other.get(l)).abs())
            .fold(0.0, f64::max)
    }
}

fn orthonormal_column(m: i64, l_max: i64, x: f64) -> Result<Vec<f64>> {
    let a = m.abs();
    let mut col = t_column(m, l_max, x)?;
    for (i, v) in col.iter_mut().enumerate() {
        *v *= ((a + i as i64) as f64 + 0.5).sqrt();
    }
    Ok(col)
}

/// `c_l = sum_k w_k phi_l^m(x_k) f(x_k)` for `|m| <= l <= l_max`.
pub fn analyze(f: &GridFunction, l_max: i64) -> Result<ChannelSpectrum> {
    if (f.rule.order() as i64) < l_max + 1 {
        return Err(Error::Usage(format!(
            "{} nodes cannot resolve degree {l_max}; need at least {}",
            f.rule.order(),
            l_max + 1
        )));
    }
    let a = f.m.abs();
    let mut spec = ChannelSpectrum::new(f.m, l_max);
    if l_max < a {
        return Ok(spec);
    }
    let mut acc = vec![0.0; (l_max - a + 1) as usize];
    for ((&x, &w), &v) in f.rule.nodes().iter().zip(f.rule.weights()).zip(&f.values) {
        let col = orthonormal_column(f.m, l_max, x)?;
        for (slot, p) in acc.iter_mut().zip(&col) {
            *slot += w * p * v;
        }
    }
    for (i, c) in acc.into_iter().enumerate() {
        spec.coeffs.insert(a + i as i64, c);
    }
    Ok(spec)
}

/// `f(x_k) = sum_l c_l phi_l^m(x_k)`.
pub fn synthesize(s: &ChannelSpectrum, rule: &QuadratureRule) -> Result<GridFunction> {
    let top = s.coeffs.keys().next_back().copied();
    let mut values = Vec::with_capacity(rule.order());
    for &x in rule.nodes() {
        let v = match top {
            None => 0.0,
            Some(top) => {
                let col = orthonormal_column(s.m, top, x)?;
                let a = s.m.abs();
                s.iter().map(|(l, c)| c * col[(l - a) as usize]).sum()
            }
        };
        values.push(v);
    }
    GridFunction::new(rule.clone(), s.m, values)
}

/// Coefficients on `T_l^m`: `a_l = sqrt(l + 1/2) c_l`, gathered into one vector.
pub fn to_t_basis(spectra: &[ChannelSpectrum], truncation: Truncation) -> Result<CoeffVector<f64>> {
    let mut v = CoeffVector::zeros(truncation);
    for s in spectra {
        for (l, c) in s.iter() {
            v.accumulate(ModeIndex::new(l, s.m)?, c * (l as f64 + 0.5).sqrt())?;
        }
    }
    Ok(v)
}

/// Inverse of [`to_t_basis`]: one spectrum per channel present in `v`, each
/// with `l_max` taken from the truncation.
pub fn from_t_basis(v: &CoeffVector<f64>) -> Vec<ChannelSpectrum> {
    let l_max = v.truncation().l_max;
    let mut out: BTreeMap<i64, ChannelSpectrum> = BTreeMap::new();
    for (mode, a) in v.iter() {
        out.entry(mode.m)
            .or_insert_with(|| ChannelSpectrum::new(mode.m, l_max))
            .coeffs
            .insert(mode.l, a / (mode.l as f64 + 0.5).sqrt());
    }
    out.into_values().collect()
}

fn by_channel<T, F: Fn(&T) -> i64>(items: &[T], key: F) -> Result<BTreeMap<i64, &T>> {
    let mut map = BTreeMap::new();
    for it in items {
        if map.insert(key(it), it).is_some() {
            return Err(Error::Usage(format!("channel m = {} listed twice", key(it))));
        }
    }
    Ok(map)
}

/// `sum_m sum_l f_l^m g_l^m` over orthonormal coefficients.
pub fn inner_product_spectra(f: &[ChannelSpectrum], g: &[ChannelSpectrum]) -> Result<f64> {
    let fm = by_channel(f, |s| s.m)?;
    let gm = by_channel(g, |s| s.m)?;
    if fm.keys().ne(gm.keys()) {
        return Err(Error::Usage("spectra cover different channel sets".into()));
    }
    let mut total = 0.0;
    for (m, a) in &fm {
        let b = gm[m];
        if a.l_max != b.l_max {
            return Err(Error::Usage(format!("truncation mismatch in channel m = {m}")));
        }
        total += a.iter().map(|(l, c)| c * b.get(l)).sum::<f64>();
    }
    Ok(total)
}

/// `sum_m int f^m g^m dx` by quadrature.
pub fn inner_product_grid(f: &[GridFunction], g: &[GridFunction]) -> Result<f64> {
    let fm = by_channel(f, |s| s.m)?;
    let gm = by_channel(g, |s| s.m)?;
    if fm.keys().ne(gm.keys()) {
        return Err(Error::Usage("grid functions cover different channel sets".into()));
    }
    fm.iter().map(|(m, a)| a.dot(gm[m])).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParsevalReport {
    /// `sum_m sum_l (f_l^m)^2`
    pub lhs: f64,
    /// `sum_m sum_k w_k f^m(x_k)^2`
    pub rhs: f64,
    /// Largest node-wise error of synthesize(analyze(f)) against f.
    pub round_trip_residual: f64,
    /// False when the round trip does not reproduce the data, in which case the
    /// two sides only agree approximately.
    pub band_limited: bool,
}

pub fn parseval_check(channels: &[GridFunction], l_max: i64) -> Result<ParsevalReport> {
    by_channel(channels, |g| g.m)?;
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    let mut residual: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for g in channels {
        let spec = analyze(g, l_max)?;
        lhs += spec.energy();
        rhs += g.dot(g)?;
        let back = synthesize(&spec, &g.rule)?;
        residual = residual.max(back.max_abs_diff(g));
        scale = g.values.iter().fold(scale, |s, v| s.max(v.abs()));
    }
    Ok(ParsevalReport {
        lhs,
        rhs,
        round_trip_residual: residual,
        band_limited: residual <= 1e-9 * (1.0 + scale),
    })
}

/// Truncated reproducing kernel `sum_{l=|m|}^{l_max} T_l^m(x) (l + 1/2) T_l^m(y)`.
pub fn completeness_kernel(m: i64, l_max: i64, x: f64, y: f64) -> Result<f64> {
    check_x(x)?;
    check_x(y)?;
    let a = m.abs();
    let tx = t_column(m, l_max, x)?;
    let ty = t_column(m, l_max, y)?;
    Ok(tx
        .iter()
        .zip(&ty)
        .enumerate()
        .map(|(i, (p, q))| p * ((a + i as i64) as f64 + 0.5) * q)
        .sum())
}

/// Quadrature Gram matrix `G[i][j] = sum_k w_k phi_i(x_k) phi_j(x_k)` for
/// `l = |m|, ..., l_max`.
pub fn gram_matrix(m: i64, l_max: i64, rule: &QuadratureRule) -> Result<Vec<Vec<f64>>> {
    let n = (l_max - m.abs() + 1).max(0) as usize;
    let mut g = vec![vec![0.0; n]; n];
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let col = orthonormal_column(m, l_max, x)?;
        for i in 0..n {
            for j in 0..n {
                g[i][j] += w * col[i] * col[j];
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alp::eval_t;
    use crate::quadrature::gauss_legendre;

    #[test]
    fn analyze_examples() {
        let rule = gauss_legendre(4).unwrap();
        let f = GridFunction::sample(&rule, 0, |x| x);
        let s = analyze(&f, 3).unwrap();
        assert!((s.get(1) - (2.0f64 / 3.0).sqrt()).abs() < 1e-14);
        for l in [0, 2, 3] {
            assert!(s.get(l).abs() < 1e-14);
        }

        let rule = gauss_legendre(6).unwrap();
        let f = GridFunction::sample(&rule, 1, |x| eval_t(2, 1, x).unwrap());
        let s = analyze(&f, 4).unwrap();
        assert!((s.get(2) - 1.0 / 2.5f64.sqrt()).abs() < 1e-14);
        assert!((s.get(2) - 0.632456).abs() < 1e-6);

        let zero = GridFunction::zeros(&rule, 2);
        assert!(analyze(&zero, 5).unwrap().iter().all(|(_, c)| c == 0.0));
    }

    #[test]
    fn analyze_requires_enough_nodes() {
        let rule = gauss_legendre(3).unwrap();
        let f = GridFunction::zeros(&rule, 0);
        assert!(matches!(analyze(&f, 3), Err(Error::Usage(_))));
    }

    #[test]
    fn synthesize_examples() {
        let rule = gauss_legendre(7).unwrap();
        let s = ChannelSpectrum::from_coeffs(0, 3, [(1, (2.0f64 / 3.0).sqrt())]).unwrap();
        let g = synthesize(&s, &rule).unwrap();
        for (&x, &v) in rule.nodes().iter().zip(&g.values) {
            assert!((v - x).abs() < 1e-13);
        }
        let empty = synthesize(&ChannelSpectrum::new(2, 5), &rule).unwrap();
        assert!(empty.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn spectrum_rejects_out_of_range_degrees() {
        let mut s = ChannelSpectrum::new(2, 4);
        assert!(s.set(1, 1.0).is_err());
        assert!(s.set(5, 1.0).is_err());
        assert!(s.set(3, 1.0).is_ok());
    }

    #[test]
    fn inner_products() {
        let rule = gauss_legendre(8).unwrap();
        let x = GridFunction::sample(&rule, 0, |x| x);
        assert!((inner_product_grid(std::slice::from_ref(&x), std::slice::from_ref(&x)).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        let sx = analyze(&x, 5).unwrap();
        assert!((inner_product_spectra(std::slice::from_ref(&sx), std::slice::from_ref(&sx)).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        let t = GridFunction::sample(&rule, 2, |x| eval_t(4, 2, x).unwrap());
        assert!((inner_product_grid(std::slice::from_ref(&t), std::slice::from_ref(&t)).unwrap() - 1.0 / 4.5).abs() < 1e-14);
        let z = GridFunction::zeros(&rule, 0);
        assert_eq!(inner_product_grid(std::slice::from_ref(&x), &[z]).unwrap(), 0.0);

        let other = ChannelSpectrum::new(0, 4);
        assert!(matches!(
            inner_product_spectra(std::slice::from_ref(&sx), &[other]),
            Err(Error::Usage(_))
        ));
        let wrong_channel = ChannelSpectrum::new(1, 5);
        assert!(inner_product_spectra(&[sx], &[wrong_channel]).is_err());
    }

    #[test]
    fn parseval_examples() {
        let rule = gauss_legendre(10).unwrap();
        let r = parseval_check(&[GridFunction::sample(&rule, 0, |x| x)], 6).unwrap();
        assert!((r.lhs - 2.0 / 3.0).abs() < 1e-12 && (r.rhs - 2.0 / 3.0).abs() < 1e-12);
        assert!(r.band_limited);

        let phi = GridFunction::sample(&rule, 2, |x| 3.5f64.sqrt() * eval_t(3, 2, x).unwrap());
        let r = parseval_check(&[phi], 6).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12 && (r.rhs - 1.0).abs() < 1e-12);

        let r = parseval_check(&[GridFunction::zeros(&rule, 0)], 6).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));

        let rough = GridFunction::sample(&rule, 0, |x| (5.0 * x).exp());
        let r = parseval_check(&[rough], 3).unwrap();
        assert!(!r.band_limited);
        assert!(r.round_trip_residual > 1e-3);
    }

    #[test]
    fn kernel_basics() {
        for x in [-0.5, 0.1, 0.7] {
            assert!((completeness_kernel(0, 0, x, -0.2).unwrap() - 0.5).abs() < 1e-15);
        }
        let a = completeness_kernel(3, 9, 0.31, -0.77).unwrap();
        let b = completeness_kernel(3, 9, -0.77, 0.31).unwrap();
        assert!((a - b).abs() < 1e-14);
        assert!(completeness_kernel(0, 3, 1.0, 0.0).is_err());
    }

    #[test]
    fn kernel_reproduces_band_limited_functions() {
        let (m, l_max) = (2, 8);
        let rule = gauss_legendre(12).unwrap();
        let f = |x: f64| 0.3 * eval_t(2, 2, x).unwrap() - 1.1 * eval_t(5, 2, x).unwrap() + 0.7 * eval_t(8, 2, x).unwrap();
        for y in [-0.93, -0.2, 0.0, 0.45, 0.88] {
            let v: f64 = rule
                .nodes()
                .iter()
                .zip(rule.weights())
                .map(|(&xk, &w)| w * completeness_kernel(m, l_max, y, xk).unwrap() * f(xk))
                .sum();
            assert!((v - f(y)).abs() < 1e-10, "y={y}");
        }
    }

    #[test]
    fn t_basis_conversion() {
        let t = Truncation::new(4).unwrap();
        let s = ChannelSpectrum::from_coeffs(-1, 4, [(1, 0.5), (3, -2.0)]).unwrap();
        let v = to_t_basis(std::slice::from_ref(&s), t).unwrap();
        assert!((v.get(ModeIndex::new(3, -1).unwrap()) + 2.0 * 3.5f64.sqrt()).abs() < 1e-15);
        let back = from_t_basis(&v);
        assert_eq!(back.len(), 1);
        assert!(back[0].max_abs_diff(&s) < 1e-15);
    }
}

//! Spherical harmonics normalized to match the Legendre ladder elements,
//!
//! ```text
//! Y_l^m(theta, phi) = e^{i m phi} T_l^m(cos theta) / sqrt(2 pi),
//! int conj(Y_l^m) (l + 1/2) Y_l'^m' dOmega = delta_ll' delta_mm',
//! ```
//!
//! the phase-dressed generators `J+/-' = e^{+/- i phi} J+/-`,
//! `R+/-' = e^{+/- i phi} R+/-`, `S+/-' = e^{-/+ i phi} S+/-` (with `K+/-`
//! unchanged), and a two-stage spherical transform: a discrete Fourier sum
//! over `phi` followed by the per-channel Legendre transform.
//!
//! Spherical coefficients `c_lm` expand a field as
//! `f = sum c_lm e^{i m phi} phi_l^m(cos theta)` with
//! `phi_l^m = sqrt(l + 1/2) T_l^m`, i.e. `c_lm` multiplies
//! `sqrt(2 pi) sqrt(l + 1/2) Y_l^m`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::algebra::{Casimir, GeneratorName};
use crate::alp::{eval_t, t_jet_column};
use crate::diffops::{DiffGenerator, Jet, LabeledJet};
use crate::error::{Error, Result};
use crate::index::{is_admissible, CoeffVector, ModeIndex, Truncation};
use crate::quadrature::{gauss_legendre, GridFunction, QuadratureRule};
use crate::transforms::{analyze, synthesize, ChannelSpectrum};

/// Gauss-Legendre nodes in `x = cos(theta)` times `n_phi` equispaced azimuths
/// `phi_j = 2 pi j / n_phi`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereGrid {
    pub theta_rule: QuadratureRule,
    pub n_phi: usize,
}

impl SphereGrid {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        Self::from_rule(gauss_legendre(n_theta)?, n_phi)
    }

    pub fn from_rule(theta_rule: QuadratureRule, n_phi: usize) -> Result<Self> {
        if n_phi == 0 {
            return Err(Error::Domain("need at least one azimuthal node".into()));
        }
        Ok(SphereGrid { theta_rule, n_phi })
    }

    pub fn n_theta(&self) -> usize {
        self.theta_rule.order()
    }

    /// Polar angles `acos(x_i)`, in node order (decreasing).
    pub fn thetas(&self) -> Vec<f64> {
        self.theta_rule.nodes().iter().map(|x| x.acos()).collect()
    }

    pub fn phi(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n_phi as f64
    }

    pub fn len(&self) -> usize {
        self.n_theta() * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Complex samples, row-major: `values[i * n_phi + j]` at `(theta_i, phi_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereField {
    pub grid: SphereGrid,
    pub values: Vec<Complex64>,
}

impl SphereField {
    pub fn new(grid: SphereGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Usage(format!(
                "field has {} values for a {}x{} grid",
                values.len(),
                grid.n_theta(),
                grid.n_phi
            )));
        }
        Ok(SphereField { grid, values })
    }

    pub fn zeros(grid: &SphereGrid) -> Self {
        SphereField {
            grid: grid.clone(),
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Samples `f(x = cos theta, phi)`.
    pub fn sample<F: Fn(f64, f64) -> Complex64>(grid: &SphereGrid, f: F) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for &x in grid.theta_rule.nodes() {
            for j in 0..grid.n_phi {
                values.push(f(x, grid.phi(j)));
            }
        }
        SphereField {
            grid: grid.clone(),
            values,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.grid.n_phi + j]
    }

    pub fn max_abs_diff(&self, other: &SphereField) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn axpy(&mut self, a: Complex64, other: &SphereField) {
        for (v, o) in self.values.iter_mut().zip(&other.values) {
            *v += a * o;
        }
    }
}

/// `Y_l^m(theta, phi)` for `0 < theta < pi`.
pub fn eval_y(l: i64, m: i64, theta: f64, phi: f64) -> Result<Complex64> {
    if !is_admissible(l, m) {
        return Err(Error::Domain(format!("inadmissible (l,m) = ({l},{m})")));
    }
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::Domain(format!("theta = {theta} is a pole or outside (0, pi)")));
    }
    let t = eval_t(l, m, theta.cos())?;
    Ok(Complex64::from_polar(t / (2.0 * PI).sqrt(), m as f64 * phi))
}

/// Factor taking `Y_l^m` here to the common `4 pi`-orthonormal harmonic.
pub fn standard_normalization_factor(l: i64) -> f64 {
    (l as f64 + 0.5).sqrt()
}

/// Rescales spherical coefficients to coefficients on the common
/// `4 pi`-orthonormal harmonics.
pub fn coefficients_to_standard(c: &CoeffVector<Complex64>) -> CoeffVector<Complex64> {
    c.scaled((2.0 * PI).sqrt())
}

/// Samples of the basis function `e^{i m phi} phi_l^m(cos theta)`.
pub fn orthonormal_mode_field(l: i64, m: i64, grid: &SphereGrid) -> Result<SphereField> {
    if !is_admissible(l, m) {
        return Err(Error::Domain(format!("inadmissible (l,m) = ({l},{m})")));
    }
    let norm = (l as f64 + 0.5).sqrt();
    let t: Vec<f64> = grid
        .theta_rule
        .nodes()
        .iter()
        .map(|&x| eval_t(l, m, x))
        .collect::<Result<_>>()?;
    let mut values = Vec::with_capacity(grid.len());
    for tv in t {
        for j in 0..grid.n_phi {
            values.push(Complex64::from_polar(norm * tv, m as f64 * grid.phi(j)));
        }
    }
    SphereField::new(grid.clone(), values)
}

/// Samples of `Y_l^m` on the grid.
pub fn y_field(l: i64, m: i64, grid: &SphereGrid) -> Result<SphereField> {
    let mut f = orthonormal_mode_field(l, m, grid)?;
    let s = 1.0 / ((2.0 * PI).sqrt() * (l as f64 + 0.5).sqrt());
    f.values.iter_mut().for_each(|v| *v *= s);
    Ok(f)
}

fn check_sampling(grid: &SphereGrid, l_max: i64) -> Result<()> {
    if (grid.n_theta() as i64) < l_max + 1 {
        return Err(Error::Usage(format!(
            "n_theta = {} is too small for l_max = {l_max}",
            grid.n_theta()
        )));
    }
    if (grid.n_phi as i64) < 2 * l_max + 1 {
        return Err(Error::Usage(format!(
            "n_phi = {} is too small for l_max = {l_max}",
            grid.n_phi
        )));
    }
    Ok(())
}

/// Fourier coefficients `f^m(x_i) = (1/n_phi) sum_j f(x_i, phi_j) e^{-i m phi_j}`.
fn fourier_channel(f: &SphereField, m: i64) -> Vec<Complex64> {
    let grid = &f.grid;
    let inv = 1.0 / grid.n_phi as f64;
    (0..grid.n_theta())
        .map(|i| {
            (0..grid.n_phi)
                .map(|j| f.get(i, j) * Complex64::from_polar(inv, -(m as f64) * grid.phi(j)))
                .sum()
        })
        .collect()
}

/// Spherical analysis into `c_lm`, `l <= l_max`.
pub fn sht_analyze(f: &SphereField, l_max: i64) -> Result<CoeffVector<Complex64>> {
    check_sampling(&f.grid, l_max)?;
    let rule = &f.grid.theta_rule;
    let mut out = CoeffVector::zeros(Truncation::new(l_max)?);
    for m in -l_max..=l_max {
        let channel = fourier_channel(f, m);
        let re = GridFunction::new(rule.clone(), m, channel.iter().map(|c| c.re).collect())?;
        let im = GridFunction::new(rule.clone(), m, channel.iter().map(|c| c.im).collect())?;
        let (sr, si) = (analyze(&re, l_max)?, analyze(&im, l_max)?);
        for (l, cr) in sr.iter() {
            out.set(ModeIndex::new(l, m)?, Complex64::new(cr, si.get(l)))?;
        }
    }
    Ok(out)
}

/// Spherical synthesis of `c_lm` on `grid`.
pub fn sht_synthesize(coeffs: &CoeffVector<Complex64>, grid: &SphereGrid) -> Result<SphereField> {
    let l_max = coeffs.truncation().l_max;
    let rule = &grid.theta_rule;
    let mut field = SphereField::zeros(grid);
    for m in -l_max..=l_max {
        let mut re = ChannelSpectrum::new(m, l_max);
        let mut im = ChannelSpectrum::new(m, l_max);
        let mut any = false;
        for (mode, c) in coeffs.iter().filter(|(md, _)| md.m == m) {
            re.set(mode.l, c.re)?;
            im.set(mode.l, c.im)?;
            any = true;
        }
        if !any {
            continue;
        }
        let (gr, gi) = (synthesize(&re, rule)?, synthesize(&im, rule)?);
        for i in 0..grid.n_theta() {
            let fm = Complex64::new(gr.values[i], gi.values[i]);
            for j in 0..grid.n_phi {
                field.values[i * grid.n_phi + j] += fm * Complex64::from_polar(1.0, m as f64 * grid.phi(j));
            }
        }
    }
    Ok(field)
}

/// `sum_ij w_i (2 pi / n_phi) conj(a_ij) (l + 1/2) b_ij` for the Gram check.
pub fn weighted_inner_product(a: &SphereField, b: &SphereField, l: i64) -> Complex64 {
    let grid = &a.grid;
    let dphi = 2.0 * PI / grid.n_phi as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, w) in grid.theta_rule.weights().iter().enumerate() {
        for j in 0..grid.n_phi {
            acc += a.get(i, j).conj() * b.get(i, j) * (w * dphi);
        }
    }
    acc * (l as f64 + 0.5)
}

/// A mode `e^{i k phi} g(x)` with degree label `l`: the azimuthal index `k`
/// is what `M = -i d/dphi` returns.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereModeState {
    pub l: i64,
    pub k: i64,
    /// `g` and its `x`-derivatives at each polar node.
    pub jets: Vec<Jet>,
}

impl SphereModeState {
    /// The state of `Y_l^m` on the grid's polar nodes.
    pub fn harmonic(l: i64, m: i64, grid: &SphereGrid) -> Result<Self> {
        if !is_admissible(l, m) {
            return Err(Error::Domain(format!("inadmissible (l,m) = ({l},{m})")));
        }
        let s = 1.0 / (2.0 * PI).sqrt();
        let jets = grid
            .theta_rule
            .nodes()
            .iter()
            .map(|&x| {
                let col = t_jet_column(m, l, x)?;
                let j = *col.last().expect("l >= |m|");
                Ok(Jet::new(j.value * s, j.d1 * s, j.d2 * s))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SphereModeState { l, k: m, jets })
    }

    pub fn to_field(&self, grid: &SphereGrid) -> SphereField {
        let mut values = Vec::with_capacity(grid.len());
        for jet in &self.jets {
            for j in 0..grid.n_phi {
                values.push(Complex64::from_polar(jet.value(), self.k as f64 * grid.phi(j)));
            }
        }
        SphereField {
            grid: grid.clone(),
            values,
        }
    }
}

/// A generator acting on functions on the sphere, dressed with its azimuthal phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimedGenerator {
    pub name: GeneratorName,
}

impl PrimedGenerator {
    pub fn new(name: GeneratorName) -> Self {
        PrimedGenerator { name }
    }

    /// Exponent `s` of the `e^{i s phi}` dressing.
    pub fn phase(&self) -> i64 {
        use GeneratorName::*;
        match self.name {
            Jp | Rp | Sm => 1,
            Jm | Rm | Sp => -1,
            _ => 0,
        }
    }

    /// Applies the dressed operator to a mode state. `M` reads the azimuthal
    /// index of the state, `L` its degree label.
    pub fn apply_state(&self, state: &SphereModeState, grid: &SphereGrid) -> Result<SphereModeState> {
        let op = DiffGenerator::new(self.name);
        let jets = grid
            .theta_rule
            .nodes()
            .iter()
            .zip(&state.jets)
            .map(|(&x, &jet)| {
                op.apply_at(
                    x,
                    LabeledJet {
                        jet,
                        l: state.l,
                        m: state.k,
                    },
                )
                .map(|r| r.jet)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SphereModeState {
            l: state.l + self.name.shift().0,
            k: state.k + self.phase(),
            jets,
        })
    }

    /// The operator applied to `Y_l^m`, sampled on the grid.
    pub fn apply_mode(&self, l: i64, m: i64, grid: &SphereGrid) -> Result<SphereField> {
        let state = SphereModeState::harmonic(l, m, grid)?;
        Ok(self.apply_state(&state, grid)?.to_field(grid))
    }

    /// The operator applied to a band-limited field: the field is decomposed by
    /// [`sht_analyze`] and each mode is acted on with its own labels.
    pub fn apply_field(&self, field: &SphereField, l_max: i64) -> Result<SphereField> {
        let coeffs = sht_analyze(field, l_max)?;
        let grid = &field.grid;
        let mut out = SphereField::zeros(grid);
        for (mode, c) in coeffs.iter() {
            if c.norm() == 0.0 {
                continue;
            }
            let scale = (2.0 * PI).sqrt() * (mode.l as f64 + 0.5).sqrt();
            let image = self.apply_mode(mode.l, mode.m, grid)?;
            out.axpy(c * scale, &image);
        }
        Ok(out)
    }
}

/// A Casimir assembled from the dressed generators, applied to `Y_l^m`.
pub fn primed_casimir(which: Casimir, l: i64, m: i64, grid: &SphereGrid) -> Result<SphereField> {
    use GeneratorName::*;
    let start = SphereModeState::harmonic(l, m, grid)?;
    let prod = |a: GeneratorName, b: GeneratorName| -> Result<SphereField> {
        let mid = PrimedGenerator::new(b).apply_state(&start, grid)?;
        Ok(PrimedGenerator::new(a).apply_state(&mid, grid)?.to_field(grid))
    };
    let terms: Vec<(f64, GeneratorName, GeneratorName)> = match which {
        Casimir::So21K => vec![(1.0, K3, K3), (-0.5, Kp, Km), (-0.5, Km, Kp)],
        Casimir::So3J => vec![(1.0, J3, J3), (0.5, Jp, Jm), (0.5, Jm, Jp)],
        Casimir::So21R => vec![(0.25, R3, R3), (-0.125, Rp, Rm), (-0.125, Rm, Rp)],
        Casimir::So21S => vec![(0.25, S3, S3), (-0.125, Sp, Sm), (-0.125, Sm, Sp)],
        Casimir::So32 => vec![
            (1.0, J3, J3),
            (1.0, K3, K3),
            (0.5, Jp, Jm),
            (0.5, Jm, Jp),
            (-0.5, Kp, Km),
            (-0.5, Km, Kp),
            (-0.25, Rp, Rm),
            (-0.25, Rm, Rp),
            (-0.25, Sp, Sm),
            (-0.25, Sm, Sp),
        ],
    };
    let mut out = SphereField::zeros(grid);
    for (c, a, b) in terms {
        out.axpy(Complex64::new(c, 0.0), &prod(a, b)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn eval_y_examples() {
        let y00 = 1.0 / (2.0 * PI).sqrt();
        for (t, p) in [(0.3, 0.0), (1.2, 2.0), (2.9, 5.5)] {
            assert!((eval_y(0, 0, t, p).unwrap() - c(y00)).norm() < 1e-15);
            assert!((eval_y(1, 0, t, p).unwrap() - c(t.cos() * y00)).norm() < 1e-15);
            for (l, m) in [(1, 1), (3, 2), (5, 3)] {
                let a = eval_y(l, -m, t, p).unwrap();
                let b = eval_y(l, m, t, p).unwrap().conj() * if m % 2 == 0 { 1.0 } else { -1.0 };
                assert!((a - b).norm() < 1e-14);
            }
        }
        assert!((y00 - 0.3989423).abs() < 1e-7);
    }

    #[test]
    fn poles_are_rejected() {
        assert!(matches!(eval_y(1, 0, 0.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(eval_y(1, 0, PI, 0.0), Err(Error::Domain(_))));
        assert!(matches!(eval_y(1, 2, 1.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn analyze_examples() {
        let grid = SphereGrid::new(6, 11).unwrap();
        let f = SphereField::sample(&grid, |x, _| c(1.5f64.sqrt() * x));
        let coeffs = sht_analyze(&f, 5).unwrap();
        let one = ModeIndex::new(1, 0).unwrap();
        for (mode, v) in coeffs.iter() {
            let expected = if mode == one { c(1.0) } else { c(0.0) };
            assert!((v - expected).norm() < 1e-11, "{mode}");
        }
        assert_eq!(coeffs.get(one).re.signum(), 1.0);

        // constant field: c_00 = int phi_0^0 * c dx = sqrt(2) c
        let f = SphereField::sample(&grid, |_, _| c(3.0));
        let coeffs = sht_analyze(&f, 5).unwrap();
        let oracle: f64 = grid
            .theta_rule
            .weights()
            .iter()
            .map(|w| w * 0.5f64.sqrt() * 3.0)
            .sum();
        assert!((coeffs.get(ModeIndex::new(0, 0).unwrap()) - c(oracle)).norm() < 1e-12);
        assert!((oracle - 3.0 * 2f64.sqrt()).abs() < 1e-13);
        assert!(coeffs.clone().pruned(1e-12).len() == 1);

        let zero = SphereField::zeros(&grid);
        assert!(sht_analyze(&zero, 5).unwrap().is_zero(0.0));
    }

    #[test]
    fn undersampling_is_usage_error() {
        let grid = SphereGrid::new(4, 9).unwrap();
        let f = SphereField::zeros(&grid);
        assert!(matches!(sht_analyze(&f, 4), Err(Error::Usage(_))));
        let grid = SphereGrid::new(8, 8).unwrap();
        let f = SphereField::zeros(&grid);
        assert!(matches!(sht_analyze(&f, 4), Err(Error::Usage(_))));
    }

    #[test]
    fn delta_spectrum_synthesizes_basis_function() {
        let grid = SphereGrid::new(5, 9).unwrap();
        let t = Truncation::new(4).unwrap();
        let mut coeffs = CoeffVector::<Complex64>::zeros(t);
        coeffs.set(ModeIndex::new(2, 1).unwrap(), c(1.0)).unwrap();
        let f = sht_synthesize(&coeffs, &grid).unwrap();
        let y = y_field(2, 1, &grid).unwrap();
        let scale = (2.0 * PI).sqrt() * 2.5f64.sqrt();
        for (a, b) in f.values.iter().zip(&y.values) {
            assert!((a - b * scale).norm() < 1e-13);
        }
        let zero = sht_synthesize(&CoeffVector::zeros(t), &grid).unwrap();
        assert!(zero.values.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn primed_examples() {
        let grid = SphereGrid::new(10, 13).unwrap();
        let jp = PrimedGenerator::new(GeneratorName::Jp).apply_mode(1, 0, &grid).unwrap();
        let target = y_field(1, 1, &grid).unwrap();
        for (a, b) in jp.values.iter().zip(&target.values) {
            assert!((a - b * 2f64.sqrt()).norm() < 1e-10);
        }
        let kp = PrimedGenerator::new(GeneratorName::Kp).apply_mode(0, 0, &grid).unwrap();
        assert!(kp.max_abs_diff(&y_field(1, 0, &grid).unwrap()) < 1e-12);
        let sp = PrimedGenerator::new(GeneratorName::Sp).apply_mode(1, 1, &grid).unwrap();
        let target = y_field(2, 0, &grid).unwrap();
        for (a, b) in sp.values.iter().zip(&target.values) {
            assert!((a - b * 2f64.sqrt()).norm() < 1e-10);
        }
    }

    #[test]
    fn phases_track_order_shift() {
        for g in GeneratorName::ALL {
            assert_eq!(PrimedGenerator::new(g).phase(), g.shift().1, "{g}");
        }
    }

    #[test]
    fn apply_field_matches_mode_action() {
        let grid = SphereGrid::new(8, 15).unwrap();
        let l_max = 6;
        let mut f = SphereField::zeros(&grid);
        f.axpy(Complex64::new(0.3, -0.2), &y_field(3, -1, &grid).unwrap());
        f.axpy(Complex64::new(-1.0, 0.5), &y_field(5, 2, &grid).unwrap());
        for name in [GeneratorName::Jm, GeneratorName::Km, GeneratorName::J3, GeneratorName::S3] {
            let p = PrimedGenerator::new(name);
            let got = p.apply_field(&f, l_max).unwrap();
            let mut expected = p.apply_mode(3, -1, &grid).unwrap();
            expected.values.iter_mut().for_each(|v| *v *= Complex64::new(0.3, -0.2));
            expected.axpy(Complex64::new(-1.0, 0.5), &p.apply_mode(5, 2, &grid).unwrap());
            assert!(got.max_abs_diff(&expected) < 1e-11, "{name}");
        }
    }

    #[test]
    fn casimir_through_primed_generators() {
        let grid = SphereGrid::new(8, 13).unwrap();
        for l in 0..=5 {
            for m in -l..=l {
                let cy = primed_casimir(Casimir::So32, l, m, &grid).unwrap();
                let y = y_field(l, m, &grid).unwrap();
                for (a, b) in cy.values.iter().zip(&y.values) {
                    assert!((a + b * 1.25).norm() < 1e-8, "({l},{m})");
                }
            }
        }
    }

    #[test]
    fn standard_normalization() {
        // sqrt(l+1/2) Y_l^m here is the 4 pi-orthonormal harmonic
        let y = eval_y(0, 0, 1.0, 0.0).unwrap() * standard_normalization_factor(0);
        assert!((y.re - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-15);
    }
}

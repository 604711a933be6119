//! Numerical verification suites and their JSON reports.
//!
//! Every check records the identity it tests, the largest deviation observed,
//! the tolerance it was held to and the part of the lattice where the identity
//! is asserted. Reports are deterministic: random inputs come from a seeded
//! generator and checks run in a fixed order.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{
    casimir, commutator, generate_mode, Casimir, GeneratorName, SparseOperator, COMMUTATOR_TABLE,
};
use crate::alp::eval_t_jet;
use crate::diffops::{
    apply_diff, ladder_diff_consistency, ode_residual_direct, ode_residual_from_casimir,
    position_derivative_commutator, route_profiles, Jet,
};
use crate::error::{Error, Result};
use crate::index::{CoeffVector, ModeIndex, Truncation};
use crate::quadrature::{gauss_legendre, GridFunction, QuadratureRule};
use crate::sphere::{
    orthonormal_mode_field, primed_casimir, sht_analyze, sht_synthesize, weighted_inner_product,
    y_field, PrimedGenerator, SphereField, SphereGrid,
};
use crate::transforms::{
    analyze, completeness_kernel, from_t_basis, gram_matrix, parseval_check, synthesize,
    to_t_basis, ChannelSpectrum,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_SEED: u64 = 0x5032_1e6e;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Casimir,
    Diffops,
    Orthogonality,
    Parseval,
    Sphere,
    All,
}

impl Suite {
    /// The individual suites in the order `all` runs them.
    pub const SEQUENCE: [Suite; 6] = [
        Suite::Algebra,
        Suite::Casimir,
        Suite::Diffops,
        Suite::Orthogonality,
        Suite::Parseval,
        Suite::Sphere,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Casimir => "casimir",
            Suite::Diffops => "diffops",
            Suite::Orthogonality => "orthogonality",
            Suite::Parseval => "parseval",
            Suite::Sphere => "sphere",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::SEQUENCE
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Usage(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyParams {
    pub l_max: i64,
    /// Polar grid size for the differential checks.
    pub nodes: usize,
    /// Replaces every per-check default tolerance when set.
    pub tol: Option<f64>,
    pub seed: u64,
}

impl VerifyParams {
    pub fn new(l_max: i64) -> Self {
        VerifyParams {
            l_max,
            nodes: 32,
            tol: None,
            seed: DEFAULT_SEED,
        }
    }

    fn tolerance(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub identity: String,
    /// Eigenvalue or target constant, when the identity has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub validity_window: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub tool_version: String,
    pub parameters: VerifyParams,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

struct Recorder<'a> {
    prefix: &'static str,
    params: &'a VerifyParams,
    checks: Vec<Check>,
}

impl<'a> Recorder<'a> {
    fn new(prefix: &'static str, params: &'a VerifyParams) -> Self {
        Recorder {
            prefix,
            params,
            checks: Vec::new(),
        }
    }

    /// Records one check. A computation error fails the check and keeps its message.
    fn record(
        &mut self,
        id: impl Into<String>,
        identity: impl Into<String>,
        default_tol: f64,
        window: impl Into<String>,
        expected: Option<f64>,
        dev: Result<f64>,
    ) {
        let tolerance = self.params.tolerance(default_tol);
        let (max_deviation, note) = match dev {
            Ok(d) => (d, None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        };
        self.checks.push(Check {
            id: format!("{}/{}", self.prefix, id.into()),
            identity: identity.into(),
            expected,
            max_deviation,
            tolerance,
            validity_window: window.into(),
            pass: max_deviation <= tolerance,
            note,
        });
    }
}

pub fn run_suite(suite: Suite, params: &VerifyParams) -> Result<VerifyReport> {
    if params.l_max < 1 {
        return Err(Error::Usage("verify needs l_max >= 1".into()));
    }
    if params.nodes < 2 {
        return Err(Error::Usage("verify needs at least 2 nodes".into()));
    }
    if let Some(t) = params.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Usage(format!("tolerance must be positive, got {t}")));
        }
    }
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::SEQUENCE.to_vec(),
        s => vec![s],
    };
    let mut checks = Vec::new();
    for s in suites {
        checks.extend(match s {
            Suite::Algebra => algebra_checks(params)?,
            Suite::Casimir => casimir_checks(params)?,
            Suite::Diffops => diffops_checks(params)?,
            Suite::Orthogonality => orthogonality_checks(params)?,
            Suite::Parseval => parseval_checks(params)?,
            Suite::Sphere => sphere_checks(params)?,
            Suite::All => unreachable!(),
        });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        suite,
        tool_version: TOOL_VERSION.to_string(),
        parameters: params.clone(),
        checks,
        pass,
    })
}

fn window_l(l: i64) -> String {
    format!("l <= {l}")
}

fn modes_up_to(l_max: i64) -> impl Iterator<Item = ModeIndex> {
    (0..=l_max).flat_map(|l| (-l..=l).map(move |m| ModeIndex { l, m }))
}

/// Ladder coefficients written out from their closed forms, independently of
/// the generator tables.
fn closed_form_element(name: GeneratorName, l: i64, m: i64) -> Option<(i64, i64, f64)> {
    use GeneratorName::*;
    let (p, dl, dm) = match name {
        Jp => ((l - m) * (l + m + 1), 0, 1),
        Jm => ((l + m) * (l - m + 1), 0, -1),
        Kp => ((l - m + 1) * (l + m + 1), 1, 0),
        Km => ((l + m) * (l - m), -1, 0),
        Rp => ((l + m + 2) * (l + m + 1), 1, 1),
        Rm => ((l + m) * (l + m - 1), -1, -1),
        Sp => ((l - m + 2) * (l - m + 1), 1, -1),
        Sm => ((l - m) * (l - m - 1), -1, 1),
        _ => return None,
    };
    Some((l + dl, m + dm, (p as f64).sqrt()))
}

fn algebra_checks(p: &VerifyParams) -> Result<Vec<Check>> {
    let n = p.l_max;
    let t = Truncation::new(n)?;
    let interior = n - 2;
    let mut r = Recorder::new("algebra", p);

    for name in GeneratorName::LADDERS {
        let op = SparseOperator::generator(name, t);
        let dev = (|| -> Result<f64> {
            let mut worst: f64 = 0.0;
            for src in modes_up_to(n) {
                let (tl, tm, c) = closed_form_element(name, src.l, src.m).expect("ladder");
                let inside = tm.abs() <= tl && tl <= n;
                let got: f64 = op.column(src).iter().map(|e| e.1).sum();
                let want = if inside { c } else { 0.0 };
                let rel = (got - want).abs() / want.abs().max(1.0);
                worst = worst.max(rel);
                if inside {
                    let target = ModeIndex { l: tl, m: tm };
                    if op.column(src).iter().any(|e| e.0 != target) {
                        return Ok(f64::INFINITY);
                    }
                }
            }
            Ok(worst)
        })();
        r.record(
            format!("matrix_elements/{name}"),
            format!("{name} matches its integer-product coefficient (relative)"),
            1e-14,
            window_l(n),
            None,
            dev,
        );
    }
    for name in [GeneratorName::J3, GeneratorName::K3, GeneratorName::R3, GeneratorName::S3] {
        let op = SparseOperator::generator(name, t);
        let (off, diag) = op.diagonal_deviation(n, |md| name.diagonal_value(md.l, md.m).expect("diagonal"));
        r.record(
            format!("matrix_elements/{name}"),
            format!("{name} is diagonal with its closed-form eigenvalue"),
            1e-14,
            window_l(n),
            None,
            Ok(off.max(diag)),
        );
    }

    for id in COMMUTATOR_TABLE {
        r.record(
            format!("commutator{}", id.id()),
            id.statement(),
            1e-12,
            window_l(interior),
            None,
            id.deviation(t, interior),
        );
    }

    use GeneratorName::*;
    type Factorization = (GeneratorName, GeneratorName, &'static str, fn(i64, i64) -> f64);
    let factorizations: [Factorization; 4] = [
        (Kp, Km, "l^2 - m^2", |l, m| (l * l - m * m) as f64),
        (Km, Kp, "(l+1)^2 - m^2", |l, m| ((l + 1) * (l + 1) - m * m) as f64),
        (Jp, Jm, "(l+m)(l-m+1)", |l, m| ((l + m) * (l - m + 1)) as f64),
        (Jm, Jp, "(l-m)(l+m+1)", |l, m| ((l - m) * (l + m + 1)) as f64),
    ];
    for (a, b, text, f) in factorizations {
        let dev = SparseOperator::generator(a, t)
            .compose(&SparseOperator::generator(b, t))
            .map(|op| {
                let w = op.valid_l_max();
                let (off, diag) = op.diagonal_deviation(w, |md| f(md.l, md.m));
                (off.max(diag), w)
            });
        let w = dev.as_ref().map(|d| d.1).unwrap_or(interior);
        r.record(
            format!("factorization/{a}{b}"),
            format!("{a} {b} = {text}"),
            1e-11,
            window_l(w),
            None,
            dev.map(|d| d.0),
        );
    }

    for (raise, lower) in [(Jp, Jm), (Kp, Km), (Rp, Rm), (Sp, Sm)] {
        let up = SparseOperator::generator(raise, t);
        let down = SparseOperator::generator(lower, t);
        let mut worst: f64 = 0.0;
        for (from, to, v) in up.entries() {
            worst = worst.max((down.element(from, to) - v).abs());
        }
        for (from, to, v) in down.entries() {
            worst = worst.max((up.element(from, to) - v).abs());
        }
        r.record(
            format!("adjoint/{lower}"),
            format!("{lower} is the transpose of {raise}"),
            1e-13,
            window_l(n),
            None,
            Ok(worst),
        );
    }

    let gen_window = n.min(10);
    let dev = (|| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for md in modes_up_to(gen_window) {
            let v = generate_mode(md.l, md.m, t)?;
            let unit = CoeffVector::<f64>::unit(t, md.l, md.m)?;
            worst = worst.max(v.sub(&unit)?.norm());
        }
        Ok(worst)
    })();
    r.record(
        "generate_mode",
        "(1/l!) sqrt((l-|m|)!/(l+|m|)!) (J+-)^|m| (K+)^l |0,0> = |l,m>",
        1e-10,
        window_l(gen_window),
        None,
        dev,
    );
    Ok(r.checks)
}

fn casimir_checks(p: &VerifyParams) -> Result<Vec<Check>> {
    let n = p.l_max;
    let t = Truncation::new(n)?;
    let mut r = Recorder::new("casimir", p);
    let mut so32 = None;
    for which in Casimir::ALL {
        let op = casimir(which, t)?;
        let w = op.valid_l_max().min(n - 2);
        let (off, diag) = op.diagonal_deviation(w, |md| which.eigenvalue(md.l, md.m));
        let (identity, expected) = match which {
            Casimir::So21K => ("K3^2 - {K+,K-}/2 = m^2 - 1/4".to_string(), None),
            Casimir::So3J => ("J3^2 + {J+,J-}/2 = l(l+1)".to_string(), None),
            Casimir::So21R => ("(R3^2 - {R+,R-}/2)/4 = -3/16".to_string(), Some(-0.1875)),
            Casimir::So21S => ("(S3^2 - {S+,S-}/2)/4 = -3/16".to_string(), Some(-0.1875)),
            Casimir::So32 => (
                "J3^2 + K3^2 + {J+,J-}/2 - {K+,K-}/2 - {R+,R-}/4 - {S+,S-}/4 = -5/4".to_string(),
                Some(-1.25),
            ),
        };
        r.record(
            format!("eigenvalue/{}", which.name()),
            identity,
            1e-11,
            window_l(w),
            expected,
            Ok(off.max(diag)),
        );
        if which == Casimir::So32 {
            so32 = Some(op);
        }
    }
    let c = so32.expect("so32 is in Casimir::ALL");
    let w = n - 3;
    for g in GeneratorName::INDEPENDENT {
        let dev = commutator(&c, &SparseOperator::generator(g, t)).map(|k| k.max_abs(w));
        r.record(
            format!("central/so32/{g}"),
            format!("[C_so32, {g}] = 0"),
            1e-10,
            window_l(w),
            None,
            dev,
        );
    }
    Ok(r.checks)
}

fn diffops_checks(p: &VerifyParams) -> Result<Vec<Check>> {
    let n = p.l_max;
    let rule = gauss_legendre(p.nodes)?;
    let nodes = p.nodes;
    let mut r = Recorder::new("diffops", p);

    let w = (n - 2).max(0);
    for g in GeneratorName::ALL {
        let dev = (|| -> Result<f64> {
            let mut worst: f64 = 0.0;
            for md in modes_up_to(w) {
                worst = worst.max(ladder_diff_consistency(g, md.l, md.m, &rule)?);
            }
            Ok(worst)
        })();
        r.record(
            format!("ladder_vs_differential/{g}"),
            format!("differential form of {g} on T_l^m equals its ladder action"),
            1e-9,
            format!("l <= {w}, {nodes} Gauss nodes"),
            None,
            dev,
        );
    }

    let dev = (|| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for md in modes_up_to(n) {
            worst = worst.max(ode_residual_direct(md.l, md.m, &rule)?);
        }
        Ok(worst)
    })();
    r.record(
        "ode/direct",
        "(1-x^2)T'' - 2xT' + (l(l+1) - m^2/(1-x^2))T = 0",
        1e-9,
        format!("l <= {n}, {nodes} Gauss nodes"),
        None,
        dev,
    );
    for which in Casimir::ALL {
        let dev = (|| -> Result<f64> {
            let mut worst: f64 = 0.0;
            for md in modes_up_to(n) {
                worst = worst.max(ode_residual_from_casimir(which, md.l, md.m, &rule)?);
            }
            Ok(worst)
        })();
        r.record(
            format!("ode/{}", which.name()),
            format!("Legendre equation reconstructed from the {} Casimir", which.name()),
            1e-9,
            format!("l <= {n}, {nodes} Gauss nodes"),
            None,
            dev,
        );
    }
    let dev = (|| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for md in modes_up_to(n) {
            worst = worst.max(route_profiles(md.l, md.m, &rule, &Casimir::ALL)?.max_disagreement());
        }
        Ok(worst)
    })();
    r.record(
        "ode/route_agreement",
        "all Casimir routes give the same residual profile after their prefactors",
        1e-9,
        format!("l <= {n}, {nodes} Gauss nodes"),
        None,
        dev,
    );

    let dev = (|| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &x in rule.nodes() {
            for l in 0..=n.min(6) {
                let j = eval_t_jet(l, 0, x)?;
                let p = Jet::new(j.value, j.d1, j.d2);
                worst = worst.max((position_derivative_commutator(x, p)? + p.value()).abs());
            }
            let poly = Jet::new(1.0 + 2.0 * x - 3.0 * x * x, 2.0 - 6.0 * x, -6.0);
            worst = worst.max((position_derivative_commutator(x, poly)? + poly.value()).abs());
        }
        Ok(worst)
    })();
    r.record(
        "position_derivative",
        "[X, D_x] = -1",
        1e-12,
        format!("polynomials, {nodes} Gauss nodes"),
        Some(-1.0),
        dev,
    );
    Ok(r.checks)
}

fn random_spectrum(rng: &mut ChaCha8Rng, m: i64, l_max: i64) -> Result<ChannelSpectrum> {
    ChannelSpectrum::from_coeffs(m, l_max, (m.abs()..=l_max).map(|l| (l, rng.gen_range(-1.0..1.0))))
}

fn orthogonality_checks(p: &VerifyParams) -> Result<Vec<Check>> {
    let n = p.l_max;
    let order = (n + 1) as usize;
    let rule = gauss_legendre(order)?;
    let mut r = Recorder::new("orthogonality", p);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);

    let dev = (|| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for m in -n..=n {
            let g = gram_matrix(m, n, &rule)?;
            for (i, row) in g.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((v - want).abs());
                }
            }
        }
        Ok(worst)
    })();
    r.record(
        "gram",
        "sum_k w_k phi_l^m(x_k) phi_l'^m(x_k) = delta_ll'",
        1e-11,
        format!("l <= {n}, {order} Gauss nodes"),
        None,
        dev,
    );

    let dev = quadrature_invariants(&rule);
    r.record(
        "quadrature",
        "Gauss rule: symmetric nodes, positive weights summing to 2, exact through degree 2n-1",
        1e-13,
        format!("{order} nodes"),
        None,
        dev,
    );

    let dev = (|| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for m in -n..=n {
            let s = random_spectrum(&mut rng, m, n)?;
            let g = synthesize(&s, &rule)?;
            let back = analyze(&g, n)?;
            worst = worst.max(back.max_abs_diff(&s));
            let again = synthesize(&back, &rule)?;
            worst = worst.max(again.max_abs_diff(&g));
        }
        Ok(worst)
    })();
    r.record(
        "round_trip",
        "analyze(synthesize(c)) = c and synthesize(analyze(f)) = f",
        1e-11,
        format!("l <= {n}, {order} Gauss nodes"),
        None,
        dev,
    );

    let dev = (|| -> Result<f64> {
        let mut worst: f64 = 0.0;
        let fine = gauss_legendre(order + 7)?;
        let rough = GridFunction::sample(&fine, 1, |x| (3.0 * x).sin() * (1.0 - x * x).sqrt());
        let once = synthesize(&analyze(&rough, n)?, &fine)?;
        let twice = synthesize(&analyze(&once, n)?, &fine)?;
        worst = worst.max(twice.max_abs_diff(&once));
        Ok(worst)
    })();
    r.record(
        "projector",
        "analyze/synthesize is idempotent",
        1e-12,
        format!("l <= {n}, {} Gauss nodes", order + 7),
        None,
        dev,
    );

    let dev = (|| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for m in [0, 1, n / 2, n] {
            let s = random_spectrum(&mut rng, m, n)?;
            let g = synthesize(&s, &rule)?;
            for &y in &[-0.83, -0.2, 0.05, 0.61] {
                let mut acc = 0.0;
                for ((&x, &w), &v) in rule.nodes().iter().zip(rule.weights()).zip(&g.values) {
                    acc += w * completeness_kernel(m, n, y, x)? * v;
                }
                let direct = synthesize(&s, &QuadratureRule::from_parts(vec![y], vec![1.0])?)?;
                worst = worst.max((acc - direct.values[0]).abs());
            }
        }
        Ok(worst)
    })();
    r.record(
        "kernel",
        "sum_k w_k K(y, x_k) f(x_k) = f(y) for band-limited f",
        1e-10,
        format!("l <= {n}, {order} Gauss nodes"),
        None,
        dev,
    );

    let dev = spectrum_ladder_consistency(p, &mut rng);
    r.record(
        "spectrum_ladder",
        "generator on T-basis coefficients equals its differential form on the grid",
        1e-9,
        format!("l <= {}, {} Gauss nodes", (n - 1).max(0), order + 1),
        None,
        dev,
    );
    Ok(r.checks)
}

fn quadrature_invariants(rule: &QuadratureRule) -> Result<f64> {
    let xs = rule.nodes();
    let ws = rule.weights();
    let k = xs.len();
    let mut worst: f64 = (ws.iter().sum::<f64>() - 2.0).abs();
    for i in 0..k {
        worst = worst.max((xs[i] + xs[k - 1 - i]).abs());
        worst = worst.max((ws[i] - ws[k - 1 - i]).abs());
        if ws[i] <= 0.0 || xs[i].abs() >= 1.0 {
            return Ok(f64::INFINITY);
        }
    }
    for d in 0..2 * k as i32 {
        let exact = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
        worst = worst.max((rule.integrate(|x| x.powi(d)) - exact).abs());
    }
    Ok(worst)
}

/// Inputs stop at `l_max - 1` so raised images stay inside the truncation.
fn spectrum_ladder_consistency(p: &VerifyParams, rng: &mut ChaCha8Rng) -> Result<f64> {
    let n = p.l_max;
    let w = (n - 1).max(0);
    let t = Truncation::new(n)?;
    let rule = gauss_legendre((n + 2) as usize)?;
    let mut worst: f64 = 0.0;
    for g in GeneratorName::ALL {
        let (_, dm) = g.shift();
        for m in [-w.min(2), 0, 1.min(w)] {
            let spec = random_spectrum(rng, m, w)?;
            let coeffs = to_t_basis(std::slice::from_ref(&spec), t)?;
            let image = SparseOperator::generator(g, t).apply(&coeffs)?;
            let algebraic = from_t_basis(&image);
            let mut grid = GridFunction::zeros(&rule, m + dm);
            for (l, c) in spec.iter() {
                if c == 0.0 {
                    continue;
                }
                let a = c * (l as f64 + 0.5).sqrt();
                let samples = GridFunction::sample(&rule, m, |x| eval_t_jet(l, m, x).map(|j| j.value).unwrap_or(f64::NAN));
                let d = apply_diff(g, l, m, &samples)?;
                for (acc, v) in grid.values.iter_mut().zip(&d.values) {
                    *acc += a * v;
                }
            }
            let numeric = analyze(&grid, n)?;
            let want = algebraic
                .iter()
                .find(|s| s.m == m + dm)
                .cloned()
                .unwrap_or_else(|| ChannelSpectrum::new(m + dm, n));
            worst = worst.max(numeric.max_abs_diff(&want));
        }
    }
    Ok(worst)
}

fn parseval_checks(p: &VerifyParams) -> Result<Vec<Check>> {
    let n = p.l_max;
    let order = (n + 1) as usize;
    let rule = gauss_legendre(order)?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x9e37_79b9);
    let mut r = Recorder::new("parseval", p);
    let trials = 100;

    let mut worst: f64 = 0.0;
    let mut worst_rt: f64 = 0.0;
    let mut all_band_limited = true;
    let mut status = Ok(());
    for _ in 0..trials {
        let channels = rng.gen_range(1..=3.min(2 * n as usize + 1));
        let mut ms: Vec<i64> = Vec::new();
        while ms.len() < channels {
            let m = rng.gen_range(-n..=n);
            if !ms.contains(&m) {
                ms.push(m);
            }
        }
        let grids: Result<Vec<GridFunction>> = ms
            .iter()
            .map(|&m| random_spectrum(&mut rng, m, n).and_then(|s| synthesize(&s, &rule)))
            .collect();
        match grids.and_then(|g| parseval_check(&g, n)) {
            Ok(rep) => {
                worst = worst.max((rep.lhs - rep.rhs).abs() / (1.0 + rep.lhs));
                worst_rt = worst_rt.max(rep.round_trip_residual);
                all_band_limited &= rep.band_limited;
            }
            Err(e) => {
                status = Err(e);
                break;
            }
        }
    }
    let note = (!all_band_limited).then(|| "some inputs were not band-limited".to_string());
    r.record(
        "random_spectra",
        format!("sum c_l^2 = sum_k w_k f(x_k)^2 over {trials} seeded random spectra (relative to 1 + lhs)"),
        1e-10,
        format!("l <= {n}, {order} Gauss nodes"),
        None,
        status.as_ref().map(|_| worst).map_err(|e| Error::Domain(e.to_string())),
    );
    if let Some(c) = r.checks.last_mut() {
        if c.note.is_none() {
            c.note = note;
        }
    }
    r.record(
        "round_trip",
        "synthesize(analyze(f)) = f on the random inputs",
        1e-11,
        format!("l <= {n}, {order} Gauss nodes"),
        None,
        status.map(|_| worst_rt),
    );

    let dev = (|| -> Result<f64> {
        let xr = GridFunction::sample(&rule, 0, |x| x);
        let rep = parseval_check(&[xr], n)?;
        Ok((rep.lhs - 2.0 / 3.0).abs().max((rep.rhs - 2.0 / 3.0).abs()))
    })();
    r.record(
        "identity_function",
        "f(x) = x has energy 2/3 on both sides",
        1e-12,
        format!("l <= {n}"),
        Some(2.0 / 3.0),
        dev,
    );
    Ok(r.checks)
}

fn sphere_checks(p: &VerifyParams) -> Result<Vec<Check>> {
    let n = p.l_max;
    let mut r = Recorder::new("sphere", p);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x5a5a);

    let lt = n.min(8);
    let grid = SphereGrid::new((lt + 1) as usize, (2 * lt + 1) as usize)?;
    let dev = (|| -> Result<f64> {
        let t = Truncation::new(lt)?;
        let mut c = CoeffVector::<Complex64>::zeros(t);
        for md in t.lattice() {
            c.set(md, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))?;
        }
        let f = sht_synthesize(&c, &grid)?;
        let back = sht_analyze(&f, lt)?;
        let coeff_err = back.sub(&c)?.max_abs();
        let field_err = sht_synthesize(&back, &grid)?.max_abs_diff(&f);
        Ok(coeff_err.max(field_err))
    })();
    r.record(
        "sht_round_trip",
        "sht_analyze(sht_synthesize(c)) = c",
        1e-10,
        format!("l <= {lt}, {}x{} grid", grid.n_theta(), grid.n_phi),
        None,
        dev,
    );

    let dev = (|| -> Result<f64> {
        let t = Truncation::new(lt)?;
        let fields: Vec<(ModeIndex, SphereField)> = t
            .lattice()
            .into_iter()
            .map(|md| y_field(md.l, md.m, &grid).map(|f| (md, f)))
            .collect::<Result<_>>()?;
        let mut worst: f64 = 0.0;
        for (a, fa) in &fields {
            for (b, fb) in &fields {
                let v = weighted_inner_product(fa, fb, b.l);
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((v - want).norm());
            }
        }
        Ok(worst)
    })();
    r.record(
        "weighted_gram",
        "int conj(Y_l^m) (l+1/2) Y_l'^m' dOmega = delta",
        1e-10,
        format!("l <= {lt}, {}x{} grid", grid.n_theta(), grid.n_phi),
        None,
        dev,
    );

    let le = n.min(6);
    let pgrid = SphereGrid::new((le + 4) as usize, (2 * le + 5) as usize)?;
    for g in GeneratorName::ALL {
        let pg = PrimedGenerator::new(g);
        let dev = (|| -> Result<f64> {
            let mut worst: f64 = 0.0;
            for md in modes_up_to(le) {
                let got = pg.apply_mode(md.l, md.m, &pgrid)?;
                let want = match g.action(md) {
                    Some((img, c)) => {
                        let mut f = SphereField::zeros(&pgrid);
                        f.axpy(Complex64::new(c, 0.0), &y_field(img.l, img.m, &pgrid)?);
                        f
                    }
                    None => SphereField::zeros(&pgrid),
                };
                worst = worst.max(got.max_abs_diff(&want));
            }
            Ok(worst)
        })();
        r.record(
            format!("primed_elements/{g}"),
            format!("primed {g} on Y_l^m reproduces the ladder coefficient"),
            1e-9,
            format!("l <= {le}, {}x{} grid", pgrid.n_theta(), pgrid.n_phi),
            None,
            dev,
        );
    }

    let lc = n.min(5);
    for which in Casimir::ALL {
        let dev = (|| -> Result<f64> {
            let mut worst: f64 = 0.0;
            for md in modes_up_to(lc) {
                let got = primed_casimir(which, md.l, md.m, &pgrid)?;
                let mut want = SphereField::zeros(&pgrid);
                want.axpy(
                    Complex64::new(which.eigenvalue(md.l, md.m), 0.0),
                    &y_field(md.l, md.m, &pgrid)?,
                );
                worst = worst.max(got.max_abs_diff(&want));
            }
            Ok(worst)
        })();
        let expected = match which {
            Casimir::So32 => Some(-1.25),
            Casimir::So21R | Casimir::So21S => Some(-0.1875),
            _ => None,
        };
        r.record(
            format!("primed_casimir/{}", which.name()),
            format!("{} Casimir from primed generators is diagonal on Y_l^m", which.name()),
            1e-8,
            format!("l <= {lc}, {}x{} grid", pgrid.n_theta(), pgrid.n_phi),
            expected,
            dev,
        );
    }

    let dev = (|| -> Result<f64> {
        let mut field = SphereField::zeros(&grid);
        for md in Truncation::new(lt)?.lattice() {
            if md.m < 0 {
                continue;
            }
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let f = orthonormal_mode_field(md.l, md.m, &grid)?;
            field.axpy(c, &f);
        }
        for v in field.values.iter_mut() {
            *v = Complex64::new(v.re, 0.0);
        }
        let c = sht_analyze(&field, lt)?;
        let mut worst: f64 = 0.0;
        for (md, v) in c.iter() {
            let mirror = c.get(ModeIndex { l: md.l, m: -md.m });
            let sign = if md.m % 2 == 0 { 1.0 } else { -1.0 };
            worst = worst.max((mirror - v.conj() * sign).norm());
        }
        Ok(worst)
    })();
    r.record(
        "hermiticity",
        "real field: c_{l,-m} = (-1)^m conj(c_{l,m})",
        1e-11,
        format!("l <= {lt}, {}x{} grid", grid.n_theta(), grid.n_phi),
        None,
        dev,
    );
    Ok(r.checks)
}

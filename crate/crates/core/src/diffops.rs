//! Differential realizations of the generators on `(-1, 1)`.
//!
//! With `X f = x f`, `D f = f'` and the diagonal labels `L`, `M` replaced by the
//! integers of the operand (always written to the right):
//!
//! ```text
//! J+/- = -/+ sqrt(1-X^2) D - X/sqrt(1-X^2) M
//! K+   = -(1-X^2) D + X (L+1)          K- = (1-X^2) D + X L
//! R+   = -X sqrt(1-X^2) D - M/sqrt(1-X^2) - sqrt(1-X^2)(L+1)
//! R-   =  X sqrt(1-X^2) D - M/sqrt(1-X^2) - sqrt(1-X^2) L
//! S+   =  X sqrt(1-X^2) D - M/sqrt(1-X^2) + sqrt(1-X^2)(L+1)
//! S-   = -X sqrt(1-X^2) D - M/sqrt(1-X^2) + sqrt(1-X^2) L
//! ```
//!
//! Products of generators need higher derivatives of the operand, so values
//! are carried as second-order [`Jet`]s and every first-order operator lowers
//! the jet order by one.

use std::ops::{Add, Mul};

use crate::algebra::{Casimir, GeneratorName};
use crate::alp::{check_x, eval_t_jet, legendre_bracket, t_jet_column, AlpJet};
use crate::error::{Error, Result};
use crate::index::is_admissible;
use crate::quadrature::{GridFunction, QuadratureRule};

/// Nodes closer to the endpoints than this (in `1 - x^2`) are rejected.
pub const ENDPOINT_GUARD: f64 = 1e-10;

/// Truncated Taylor data `[f, f', f'']` valid up to derivative `order`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    c: [f64; 3],
    order: usize,
}

impl Jet {
    pub const MAX_ORDER: usize = 2;

    pub fn new(value: f64, d1: f64, d2: f64) -> Self {
        Jet {
            c: [value, d1, d2],
            order: 2,
        }
    }

    pub fn constant(v: f64) -> Self {
        Jet::new(v, 0.0, 0.0)
    }

    /// The coordinate `x` itself.
    pub fn variable(x: f64) -> Self {
        Jet::new(x, 1.0, 0.0)
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// `k`-th derivative; `None` past the valid order.
    pub fn derivative(&self, k: usize) -> Option<f64> {
        (k <= self.order).then(|| self.c[k])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `D f`, one order shorter.
    pub fn differentiate(&self) -> Result<Jet> {
        if self.order == 0 {
            return Err(Error::Usage("jet has no derivative information left".into()));
        }
        Ok(Jet {
            c: [self.c[1], self.c[2], 0.0],
            order: self.order - 1,
        })
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet {
            c: self.c.map(|v| v * s),
            order: self.order,
        }
    }
}

impl From<AlpJet> for Jet {
    fn from(j: AlpJet) -> Self {
        Jet::new(j.value, j.d1, j.d2)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet {
            c: [self.c[0] + o.c[0], self.c[1] + o.c[1], self.c[2] + o.c[2]],
            order: self.order.min(o.order),
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let (f, g) = (self.c, o.c);
        Jet {
            c: [
                f[0] * g[0],
                f[1] * g[0] + f[0] * g[1],
                f[2] * g[0] + 2.0 * f[1] * g[1] + f[0] * g[2],
            ],
            order: self.order.min(o.order),
        }
    }
}

/// Jets of the coordinate functions appearing in the realizations.
#[derive(Clone, Copy, Debug)]
struct Coordinate {
    x: Jet,
    /// `sqrt(1 - x^2)`
    s: Jet,
    /// `1/sqrt(1 - x^2)`
    inv_s: Jet,
    /// `1 - x^2`
    one_minus: Jet,
}

impl Coordinate {
    fn at(x: f64) -> Result<Self> {
        check_x(x)?;
        let om = 1.0 - x * x;
        if om < ENDPOINT_GUARD {
            return Err(Error::Domain(format!("node x = {x} too close to an endpoint")));
        }
        let s = om.sqrt();
        Ok(Coordinate {
            x: Jet::variable(x),
            s: Jet::new(s, -x / s, -1.0 / (s * s * s)),
            inv_s: Jet::new(1.0 / s, x / (s * s * s), (1.0 + 2.0 * x * x) / (s * s * s * s * s)),
            one_minus: Jet::new(om, -2.0 * x, -2.0),
        })
    }
}

/// A function of `x` tagged with the labels `(l, m)` that `L` and `M` read.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LabeledJet {
    pub jet: Jet,
    pub l: i64,
    pub m: i64,
}

/// The differential realization of one generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiffGenerator {
    pub name: GeneratorName,
}

impl DiffGenerator {
    pub fn new(name: GeneratorName) -> Self {
        DiffGenerator { name }
    }

    /// `(a, b)` with the operator equal to `a D + b` on an operand labelled `(l, m)`.
    fn coefficients(&self, c: &Coordinate, l: i64, m: i64) -> (Jet, Jet) {
        use GeneratorName::*;
        let (lf, mf) = (l as f64, m as f64);
        let zero = Jet::constant(0.0);
        let k = Jet::constant;
        match self.name {
            Jp => (c.s.scale(-1.0), c.x * c.inv_s.scale(-mf)),
            Jm => (c.s, c.x * c.inv_s.scale(-mf)),
            Kp => (c.one_minus.scale(-1.0), c.x.scale(lf + 1.0)),
            Km => (c.one_minus, c.x.scale(lf)),
            Rp => (
                (c.x * c.s).scale(-1.0),
                c.inv_s.scale(-mf) + c.s.scale(-(lf + 1.0)),
            ),
            Rm => (c.x * c.s, c.inv_s.scale(-mf) + c.s.scale(-lf)),
            Sp => (c.x * c.s, c.inv_s.scale(-mf) + c.s.scale(lf + 1.0)),
            Sm => ((c.x * c.s).scale(-1.0), c.inv_s.scale(-mf) + c.s.scale(lf)),
            J3 => (zero, k(mf)),
            K3 => (zero, k(lf + 0.5)),
            R3 => (zero, k(lf + mf + 0.5)),
            S3 => (zero, k(lf - mf + 0.5)),
        }
    }

    /// Applies the realization at `x`; labels move by the generator's shift.
    pub fn apply_at(&self, x: f64, f: LabeledJet) -> Result<LabeledJet> {
        let c = Coordinate::at(x)?;
        let (a, b) = self.coefficients(&c, f.l, f.m);
        let jet = if self.name.is_diagonal() {
            b * f.jet
        } else {
            a * f.jet.differentiate()? + b * f.jet
        };
        let (dl, dm) = self.name.shift();
        Ok(LabeledJet {
            jet,
            l: f.l + dl,
            m: f.m + dm,
        })
    }
}

fn check_grid(rule: &QuadratureRule) -> Result<()> {
    for &x in rule.nodes() {
        check_x(x)?;
        if 1.0 - x * x < ENDPOINT_GUARD {
            return Err(Error::Domain(format!("node x = {x} too close to an endpoint")));
        }
    }
    Ok(())
}

fn check_mode(l: i64, m: i64) -> Result<()> {
    if is_admissible(l, m) {
        Ok(())
    } else {
        Err(Error::Domain(format!("inadmissible (l,m) = ({l},{m})")))
    }
}

/// Node-wise values of the differential realization applied to `T_l^m`.
///
/// `grid` carries the samples of `T_l^m`; derivatives come from the analytic
/// formula. The result is tagged with the image channel.
pub fn apply_diff(name: GeneratorName, l: i64, m: i64, grid: &GridFunction) -> Result<GridFunction> {
    check_mode(l, m)?;
    check_grid(&grid.rule)?;
    let op = DiffGenerator::new(name);
    let mut values = Vec::with_capacity(grid.values.len());
    for (&x, &v) in grid.rule.nodes().iter().zip(&grid.values) {
        let d = eval_t_jet(l, m, x)?;
        let f = LabeledJet {
            jet: Jet::new(v, d.d1, d.d2),
            l,
            m,
        };
        values.push(op.apply_at(x, f)?.jet.value());
    }
    let (_, dm) = name.shift();
    GridFunction::new(grid.rule.clone(), m + dm, values)
}

/// `max_k |D_name T_l^m (x_k) - coeff * T_image(x_k)|`, with `coeff` the ladder
/// matrix element (zero when the image leaves the cone).
pub fn ladder_diff_consistency(
    name: GeneratorName,
    l: i64,
    m: i64,
    rule: &QuadratureRule,
) -> Result<f64> {
    check_mode(l, m)?;
    let samples = GridFunction::sample(rule, m, |x| eval_t_jet(l, m, x).map(|j| j.value).unwrap_or(f64::NAN));
    let diff = apply_diff(name, l, m, &samples)?;
    let image = crate::index::ModeIndex::new(l, m)
        .ok()
        .and_then(|md| name.action(md));
    let mut worst: f64 = 0.0;
    for (&x, &v) in rule.nodes().iter().zip(&diff.values) {
        let expected = match image {
            Some((img, c)) => c * eval_t_jet(img.l, img.m, x)?.value,
            None => 0.0,
        };
        worst = worst.max((v - expected).abs());
    }
    Ok(worst)
}

/// `C f` for a Casimir built from the differential realizations.
pub fn casimir_action_at(which: Casimir, x: f64, f: LabeledJet) -> Result<f64> {
    use GeneratorName::*;
    let g = |n: GeneratorName, v: LabeledJet| DiffGenerator::new(n).apply_at(x, v);
    let prod = |a: GeneratorName, b: GeneratorName| -> Result<f64> { Ok(g(a, g(b, f)?)?.jet.value()) };
    let anti = |a, b| -> Result<f64> { Ok(prod(a, b)? + prod(b, a)?) };
    let v = match which {
        Casimir::So21K => prod(K3, K3)? - 0.5 * anti(Kp, Km)?,
        Casimir::So3J => prod(J3, J3)? + 0.5 * anti(Jp, Jm)?,
        Casimir::So21R => 0.25 * prod(R3, R3)? - 0.125 * anti(Rp, Rm)?,
        Casimir::So21S => 0.25 * prod(S3, S3)? - 0.125 * anti(Sp, Sm)?,
        Casimir::So32 => {
            prod(J3, J3)? + prod(K3, K3)? + 0.5 * anti(Jp, Jm)?
                - 0.5 * anti(Kp, Km)?
                - 0.25 * anti(Rp, Rm)?
                - 0.25 * anti(Sp, Sm)?
        }
    };
    Ok(v)
}

/// Factor multiplying the Legendre bracket in `C - eigenvalue` along each route:
///
/// ```text
/// K3^2 - {K+,K-}/2 - (M^2 - 1/4)        = (1-X^2) [bracket]
/// J3^2 + {J+,J-}/2 - L(L+1)             = -[bracket]
/// R3^2 - {R+,R-}/2 + 3/4                = X^2 [bracket]     (same for S)
/// ```
///
/// The `R`/`S` Casimirs carry the rescaling by 1/4, so their factor is `X^2/4`. The
/// explicit `so(3,2)` combination is identically `-5/4` as a differential
/// operator, so its route returns a zero profile; it is given the `X^2` factor
/// for reporting.
pub fn route_prefactor(which: Casimir, x: f64) -> f64 {
    match which {
        Casimir::So21K => 1.0 - x * x,
        Casimir::So3J => -1.0,
        Casimir::So21R | Casimir::So21S => 0.25 * x * x,
        Casimir::So32 => x * x,
    }
}

/// `(C f - eigenvalue f) / prefactor` at `x`, for any function `f` labelled `(l, m)`.
///
/// `None` at nodes where the prefactor vanishes.
pub fn route_profile_at(which: Casimir, x: f64, f: LabeledJet) -> Result<Option<f64>> {
    let pref = route_prefactor(which, x);
    if pref.abs() < 1e-8 {
        return Ok(None);
    }
    let c = casimir_action_at(which, x, f)?;
    let eig = which.eigenvalue(f.l, f.m);
    Ok(Some((c - eig * f.jet.value()) / pref))
}

/// Per-node residual profiles of the Legendre equation on `T_l^m`, one per route
/// plus the direct evaluation (last entry).
#[derive(Clone, Debug, PartialEq)]
pub struct RouteProfiles {
    pub nodes: Vec<f64>,
    pub direct: Vec<f64>,
    pub routes: Vec<(Casimir, Vec<Option<f64>>)>,
}

impl RouteProfiles {
    /// Largest node-wise gap between any route and the direct bracket.
    pub fn max_disagreement(&self) -> f64 {
        self.routes
            .iter()
            .flat_map(|(_, prof)| {
                prof.iter()
                    .zip(&self.direct)
                    .filter_map(|(p, d)| p.map(|p| (p - d).abs()))
            })
            .fold(0.0, f64::max)
    }
}

pub fn route_profiles(l: i64, m: i64, rule: &QuadratureRule, routes: &[Casimir]) -> Result<RouteProfiles> {
    check_mode(l, m)?;
    check_grid(rule)?;
    let mut direct = Vec::with_capacity(rule.order());
    let mut per_route: Vec<Vec<Option<f64>>> = vec![Vec::with_capacity(rule.order()); routes.len()];
    for &x in rule.nodes() {
        let col = t_jet_column(m, l, x)?;
        let tj = *col.last().expect("l >= |m|");
        direct.push(legendre_bracket(l, m, x, tj));
        let f = LabeledJet {
            jet: tj.into(),
            l,
            m,
        };
        for (slot, &which) in per_route.iter_mut().zip(routes) {
            slot.push(route_profile_at(which, x, f)?);
        }
    }
    Ok(RouteProfiles {
        nodes: rule.nodes().to_vec(),
        direct,
        routes: routes.iter().copied().zip(per_route).collect(),
    })
}

/// Max absolute residual of the Legendre equation on `T_l^m` at the nodes,
/// reconstructed through the chosen Casimir.
pub fn ode_residual_from_casimir(which: Casimir, l: i64, m: i64, rule: &QuadratureRule) -> Result<f64> {
    let prof = route_profiles(l, m, rule, &[which])?;
    Ok(prof.routes[0]
        .1
        .iter()
        .flatten()
        .map(|v| v.abs())
        .fold(0.0, f64::max))
}

/// Max absolute residual of the Legendre equation evaluated directly from
/// `T`, `T'` and `T''`.
pub fn ode_residual_direct(l: i64, m: i64, rule: &QuadratureRule) -> Result<f64> {
    check_mode(l, m)?;
    let mut worst: f64 = 0.0;
    for &x in rule.nodes() {
        let j = eval_t_jet(l, m, x)?;
        worst = worst.max(legendre_bracket(l, m, x, j).abs());
    }
    Ok(worst)
}

/// `x p'(x) - (x p(x))'` for a function given by its jet at `x`; equals `-p`.
pub fn position_derivative_commutator(x: f64, p: Jet) -> Result<f64> {
    let xp = Jet::variable(x) * p;
    Ok(x * p.differentiate()?.value() - xp.differentiate()?.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alp::eval_t;
    use crate::quadrature::gauss_legendre;
    use GeneratorName::*;

    #[test]
    fn jet_product_rule() {
        let x = 0.3;
        let x2 = Jet::variable(x) * Jet::variable(x);
        assert_eq!(x2.value(), x * x);
        assert_eq!(x2.derivative(1), Some(2.0 * x));
        assert_eq!(x2.derivative(2), Some(2.0));
        let d = x2.differentiate().unwrap();
        assert_eq!(d.order(), 1);
        assert_eq!(d.derivative(2), None);
        assert!(d.differentiate().unwrap().differentiate().is_err());
    }

    #[test]
    fn coordinate_jets_match_finite_differences() {
        let h = 1e-5;
        for x in [-0.8, -0.1, 0.4, 0.9] {
            let c = Coordinate::at(x).unwrap();
            let fd = |f: &dyn Fn(f64) -> f64| {
                (
                    (f(x + h) - f(x - h)) / (2.0 * h),
                    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
                )
            };
            for (jet, f) in [
                (c.s, &(|t: f64| (1.0 - t * t).sqrt()) as &dyn Fn(f64) -> f64),
                (c.inv_s, &|t: f64| 1.0 / (1.0 - t * t).sqrt()),
                (c.one_minus, &|t: f64| 1.0 - t * t),
            ] {
                let (d1, d2) = fd(f);
                assert!((jet.derivative(1).unwrap() - d1).abs() < 1e-7 * (1.0 + d1.abs()));
                assert!((jet.derivative(2).unwrap() - d2).abs() < 1e-4 * (1.0 + d2.abs()));
            }
        }
    }

    #[test]
    fn jp_on_t10_is_minus_sqrt() {
        let rule = gauss_legendre(16).unwrap();
        let g = GridFunction::sample(&rule, 0, |x| x);
        let out = apply_diff(Jp, 1, 0, &g).unwrap();
        assert_eq!(out.m, 1);
        for (&x, &v) in rule.nodes().iter().zip(&out.values) {
            let exact = -(1.0 - x * x).sqrt();
            assert!((v - exact).abs() < 1e-14);
            assert!((v - 2f64.sqrt() * eval_t(1, 1, x).unwrap()).abs() < 1e-14);
        }
        assert!(ladder_diff_consistency(Jp, 1, 0, &rule).unwrap() < 1e-12);
    }

    #[test]
    fn km_annihilates_lowest_weight() {
        let rule = gauss_legendre(8).unwrap();
        let g = GridFunction::sample(&rule, 0, |_| 1.0);
        let out = apply_diff(Km, 0, 0, &g).unwrap();
        assert!(out.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn rp_on_vacuum() {
        let rule = gauss_legendre(12).unwrap();
        let g = GridFunction::sample(&rule, 0, |_| 1.0);
        let out = apply_diff(Rp, 0, 0, &g).unwrap();
        for (&x, &v) in rule.nodes().iter().zip(&out.values) {
            assert!((v - 2f64.sqrt() * eval_t(1, 1, x).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn consistency_examples() {
        let r24 = gauss_legendre(24).unwrap();
        assert!(ladder_diff_consistency(Kp, 3, 2, &r24).unwrap() < 1e-10);
        assert!(ladder_diff_consistency(Sp, 4, -1, &r24).unwrap() < 1e-10);
    }

    #[test]
    fn grid_and_mode_errors() {
        let rule = gauss_legendre(4).unwrap();
        let g = GridFunction::sample(&rule, 0, |_| 1.0);
        assert!(matches!(apply_diff(Jp, 1, 2, &g), Err(Error::Domain(_))));
        let bad = QuadratureRule::from_parts(vec![-0.5, 1.0 - 1e-12], vec![1.0, 1.0]).unwrap();
        let g = GridFunction::sample(&bad, 0, |_| 1.0);
        assert!(matches!(apply_diff(Jp, 1, 0, &g), Err(Error::Domain(_))));
    }

    #[test]
    fn ode_examples() {
        let r20 = gauss_legendre(20).unwrap();
        let r32 = gauss_legendre(32).unwrap();
        assert!(ode_residual_from_casimir(Casimir::So3J, 2, 1, &r20).unwrap() < 1e-9);
        assert!(ode_residual_from_casimir(Casimir::So21K, 5, 0, &r32).unwrap() < 1e-9);
        assert!(ode_residual_from_casimir(Casimir::So32, 4, 3, &r32).unwrap() < 1e-9);
        assert!(ode_residual_direct(7, -3, &r32).unwrap() < 1e-9);
    }

    /// Smooth test function with no relation to any `T_l^m`.
    fn wiggle(x: f64) -> Jet {
        let (e, c, s) = (x.exp(), (2.0 * x).cos(), (2.0 * x).sin());
        Jet::new(e * c, e * (c - 2.0 * s), e * (-3.0 * c - 4.0 * s))
    }

    #[test]
    fn routes_reproduce_the_bracket_for_arbitrary_functions() {
        for &(l, m) in &[(3, 1), (5, -2), (0, 0), (7, 7)] {
            for x in [-0.83, -0.4, 0.1, 0.55, 0.92] {
                let j = wiggle(x);
                let bracket = legendre_bracket(
                    l,
                    m,
                    x,
                    AlpJet {
                        value: j.value(),
                        d1: j.derivative(1).unwrap(),
                        d2: j.derivative(2).unwrap(),
                    },
                );
                let f = LabeledJet { jet: j, l, m };
                for which in [Casimir::So21K, Casimir::So3J, Casimir::So21R, Casimir::So21S] {
                    let p = route_profile_at(which, x, f).unwrap().unwrap();
                    assert!(
                        (p - bracket).abs() < 1e-10 * (1.0 + bracket.abs()),
                        "{which} ({l},{m}) x={x}: {p} vs {bracket}"
                    );
                }
                let c = casimir_action_at(Casimir::So32, x, f).unwrap();
                assert!((c + 1.25 * j.value()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn position_derivative_commutator_is_minus_one() {
        for x in [-0.7, 0.0, 0.33] {
            let p = Jet::new(3.0 * x * x * x - x + 2.0, 9.0 * x * x - 1.0, 18.0 * x);
            let v = position_derivative_commutator(x, p).unwrap();
            assert!((v + p.value()).abs() < 1e-12);
        }
    }
}

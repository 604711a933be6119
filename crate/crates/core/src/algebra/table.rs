//! Closed commutator table of the twelve generators and single-generator
//! identification of computed operators.

use serde::Serialize;

use super::{commutator, GeneratorName, SparseOperator};
use crate::error::Result;
use crate::index::Truncation;

use GeneratorName::*;

/// `[a, b] = sum_k c_k G_k`. An empty right-hand side means the pair commutes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommutatorIdentity {
    pub a: GeneratorName,
    pub b: GeneratorName,
    pub rhs: &'static [(f64, GeneratorName)],
}

impl CommutatorIdentity {
    pub fn id(&self) -> String {
        format!("[{},{}]", self.a, self.b)
    }

    pub fn rhs_string(&self) -> String {
        if self.rhs.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, &(c, g)) in self.rhs.iter().enumerate() {
            let sign = if c < 0.0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            if mag == 1.0 {
                s.push_str(&format!("{sign}{g}"));
            } else {
                s.push_str(&format!("{sign}{mag}{g}"));
            }
        }
        s
    }

    /// `[a,b] = rhs`, as printed in reports.
    pub fn statement(&self) -> String {
        format!("{} = {}", self.id(), self.rhs_string())
    }

    pub fn rhs_operator(&self, truncation: Truncation) -> Result<SparseOperator> {
        if self.rhs.is_empty() {
            return Ok(SparseOperator::zero(truncation));
        }
        let ops: Vec<(f64, SparseOperator)> = self
            .rhs
            .iter()
            .map(|&(c, g)| (c, SparseOperator::generator(g, truncation)))
            .collect();
        let terms: Vec<(f64, &SparseOperator)> = ops.iter().map(|(c, o)| (*c, o)).collect();
        SparseOperator::linear_combination(&terms)
    }

    /// Largest entrywise deviation of `[a,b] - rhs` over columns with `l <= window`.
    pub fn deviation(&self, truncation: Truncation, window: i64) -> Result<f64> {
        let lhs = commutator(
            &SparseOperator::generator(self.a, truncation),
            &SparseOperator::generator(self.b, truncation),
        )?;
        lhs.max_deviation(&self.rhs_operator(truncation)?, window)
    }
}

macro_rules! ci {
    ($a:ident, $b:ident) => {
        CommutatorIdentity { a: $a, b: $b, rhs: &[] }
    };
    ($a:ident, $b:ident, $($c:expr => $g:ident),+) => {
        CommutatorIdentity { a: $a, b: $b, rhs: &[$(($c, $g)),+] }
    };
}

/// All 66 unordered pairs, in the order of [`GeneratorName::ALL`].
pub const COMMUTATOR_TABLE: [CommutatorIdentity; 66] = [
    ci!(Jp, Jm, 2.0 => J3),
    ci!(Jp, J3, -1.0 => Jp),
    ci!(Jp, Kp, 1.0 => Rp),
    ci!(Jp, Km, -1.0 => Sm),
    ci!(Jp, K3),
    ci!(Jp, Rp),
    ci!(Jp, Rm, -2.0 => Km),
    ci!(Jp, R3, -1.0 => Jp),
    ci!(Jp, Sp, 2.0 => Kp),
    ci!(Jp, Sm),
    ci!(Jp, S3, 1.0 => Jp),
    ci!(Jm, J3, 1.0 => Jm),
    ci!(Jm, Kp, 1.0 => Sp),
    ci!(Jm, Km, -1.0 => Rm),
    ci!(Jm, K3),
    ci!(Jm, Rp, 2.0 => Kp),
    ci!(Jm, Rm),
    ci!(Jm, R3, 1.0 => Jm),
    ci!(Jm, Sp),
    ci!(Jm, Sm, -2.0 => Km),
    ci!(Jm, S3, -1.0 => Jm),
    ci!(J3, Kp),
    ci!(J3, Km),
    ci!(J3, K3),
    ci!(J3, Rp, 1.0 => Rp),
    ci!(J3, Rm, -1.0 => Rm),
    ci!(J3, R3),
    ci!(J3, Sp, -1.0 => Sp),
    ci!(J3, Sm, 1.0 => Sm),
    ci!(J3, S3),
    ci!(Kp, Km, -2.0 => K3),
    ci!(Kp, K3, -1.0 => Kp),
    ci!(Kp, Rp),
    ci!(Kp, Rm, -2.0 => Jm),
    ci!(Kp, R3, -1.0 => Kp),
    ci!(Kp, Sp),
    ci!(Kp, Sm, -2.0 => Jp),
    ci!(Kp, S3, -1.0 => Kp),
    ci!(Km, K3, 1.0 => Km),
    ci!(Km, Rp, 2.0 => Jp),
    ci!(Km, Rm),
    ci!(Km, R3, 1.0 => Km),
    ci!(Km, Sp, 2.0 => Jm),
    ci!(Km, Sm),
    ci!(Km, S3, 1.0 => Km),
    ci!(K3, Rp, 1.0 => Rp),
    ci!(K3, Rm, -1.0 => Rm),
    ci!(K3, R3),
    ci!(K3, Sp, 1.0 => Sp),
    ci!(K3, Sm, -1.0 => Sm),
    ci!(K3, S3),
    ci!(Rp, Rm, -4.0 => R3),
    ci!(Rp, R3, -2.0 => Rp),
    ci!(Rp, Sp),
    ci!(Rp, Sm),
    ci!(Rp, S3),
    ci!(Rm, R3, 2.0 => Rm),
    ci!(Rm, Sp),
    ci!(Rm, Sm),
    ci!(Rm, S3),
    ci!(R3, Sp),
    ci!(R3, Sm),
    ci!(R3, S3),
    ci!(Sp, Sm, -4.0 => S3),
    ci!(Sp, S3, -2.0 => Sp),
    ci!(Sm, S3, 2.0 => Sm),
];

/// Table entry for `[a, b]`, with `antisymmetric = true` when the stored
/// identity is `[b, a]`.
pub fn lookup(a: GeneratorName, b: GeneratorName) -> Option<(CommutatorIdentity, bool)> {
    COMMUTATOR_TABLE.iter().find_map(|id| {
        if id.a == a && id.b == b {
            Some((*id, false))
        } else if id.a == b && id.b == a {
            Some((*id, true))
        } else {
            None
        }
    })
}

/// An operator recognized as `coefficient * generator` (or zero).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Identification {
    pub coefficient: f64,
    /// `None` for the zero operator.
    pub generator: Option<GeneratorName>,
    pub residual: f64,
}

impl Identification {
    pub fn describe(&self) -> String {
        match self.generator {
            None => "0".to_string(),
            Some(g) => format!("{}*{}", self.coefficient, g),
        }
    }
}

/// Finds the single generator `G` and real `c` with `op = c G` on columns
/// `l <= window` to within `tol`. The coefficient is rounded to the nearest
/// multiple of `1/4` when that stays within tolerance.
pub fn identify(op: &SparseOperator, window: i64, tol: f64) -> Result<Option<Identification>> {
    let trunc = op.truncation();
    if op.max_abs(window) <= tol {
        return Ok(Some(Identification {
            coefficient: 0.0,
            generator: None,
            residual: op.max_abs(window),
        }));
    }
    let (from, to, value) = op
        .entries()
        .filter(|(from, _, _)| from.l <= window)
        .fold(None::<(_, _, f64)>, |best, e| match best {
            Some(b) if b.2.abs() >= e.2.abs() => Some(b),
            _ => Some(e),
        })
        .expect("nonzero operator has entries");
    let mut best: Option<Identification> = None;
    for g in GeneratorName::ALL {
        let gen = SparseOperator::generator(g, trunc);
        let ge = gen.element(to, from);
        if ge == 0.0 {
            continue;
        }
        let mut c = value / ge;
        let snapped = (c * 4.0).round() / 4.0;
        if (snapped - c).abs() <= tol {
            c = snapped;
        }
        let residual = op.max_deviation(&gen.scaled(c), window)?;
        if residual <= tol && best.as_ref().is_none_or(|b| residual < b.residual) {
            best = Some(Identification {
                coefficient: c,
                generator: Some(g),
                residual,
            });
        }
    }
    Ok(best)
}

use crate::error::{Error, Result};
use crate::index::{ModeIndex, Truncation};

use super::GeneratorName;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Which lattice modes contribute to a spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumConstraint {
    All,
    FixedL(i64),
    FixedM(i64),
    /// Parity of `l + m`.
    LPlusM(Parity),
    /// Parity of `l - m`.
    LMinusM(Parity),
}

impl SpectrumConstraint {
    fn admits(self, mode: ModeIndex) -> bool {
        let parity = |v: i64| {
            if v.rem_euclid(2) == 0 {
                Parity::Even
            } else {
                Parity::Odd
            }
        };
        match self {
            SpectrumConstraint::All => true,
            SpectrumConstraint::FixedL(l) => mode.l == l,
            SpectrumConstraint::FixedM(m) => mode.m == m,
            SpectrumConstraint::LPlusM(p) => parity(mode.l + mode.m) == p,
            SpectrumConstraint::LMinusM(p) => parity(mode.l - mode.m) == p,
        }
    }
}

/// Sorted distinct eigenvalues of a diagonal generator over the constrained modes.
///
/// Eigenvalues are integers or half-integers, so they are exact in `f64` and
/// deduplicated by exact comparison.
pub fn spectrum(
    name: GeneratorName,
    truncation: Truncation,
    constraint: SpectrumConstraint,
) -> Result<Vec<f64>> {
    if !name.is_diagonal() {
        return Err(Error::Usage(format!("{name} is not diagonal")));
    }
    let mut values: Vec<f64> = truncation
        .lattice()
        .into_iter()
        .filter(|md| constraint.admits(*md))
        .filter_map(|md| name.diagonal_value(md.l, md.m))
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    values.dedup();
    Ok(values)
}

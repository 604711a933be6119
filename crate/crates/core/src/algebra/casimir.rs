use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{ModeIndex, Truncation};

use super::operator::{anticommutator, SparseOperator};
use super::GeneratorName;

/// Quadratic Casimirs of the subalgebras and of the full algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Casimir {
    /// `K3^2 - {K+,K-}/2`, eigenvalue `m^2 - 1/4`.
    So21K,
    /// `J3^2 + {J+,J-}/2`, eigenvalue `l(l+1)`.
    So3J,
    /// `(R3^2 - {R+,R-}/2)/4`, eigenvalue `-3/16`.
    So21R,
    /// `(S3^2 - {S+,S-}/2)/4`, eigenvalue `-3/16`.
    So21S,
    /// `J3^2 + K3^2 + {J+,J-}/2 - {K+,K-}/2 - {R+,R-}/4 - {S+,S-}/4`, eigenvalue `-5/4`.
    So32,
}

impl Casimir {
    pub const ALL: [Casimir; 5] = [
        Casimir::So21K,
        Casimir::So3J,
        Casimir::So21R,
        Casimir::So21S,
        Casimir::So32,
    ];

    /// Value on the whole `(l, m)` mode.
    pub fn eigenvalue(self, l: i64, m: i64) -> f64 {
        match self {
            Casimir::So21K => (m * m) as f64 - 0.25,
            Casimir::So3J => (l * (l + 1)) as f64,
            Casimir::So21R | Casimir::So21S => -3.0 / 16.0,
            Casimir::So32 => -1.25,
        }
    }

    pub fn eigenvalue_at(self, mode: ModeIndex) -> f64 {
        self.eigenvalue(mode.l, mode.m)
    }

    pub fn name(self) -> &'static str {
        match self {
            Casimir::So21K => "so21_K",
            Casimir::So3J => "so3_J",
            Casimir::So21R => "so21_R",
            Casimir::So21S => "so21_S",
            Casimir::So32 => "so32",
        }
    }
}

impl fmt::Display for Casimir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Casimir {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Casimir::ALL
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Usage(format!("unknown Casimir '{s}'")))
    }
}

/// The Casimir as a sparse operator assembled from generator products.
pub fn casimir(which: Casimir, truncation: Truncation) -> Result<SparseOperator> {
    use GeneratorName::*;
    let g = |n| SparseOperator::generator(n, truncation);
    let square = |n| -> Result<SparseOperator> { g(n).compose(&g(n)) };
    let anti = |a, b| anticommutator(&g(a), &g(b));
    let op = match which {
        Casimir::So21K => {
            SparseOperator::linear_combination(&[(1.0, &square(K3)?), (-0.5, &anti(Kp, Km)?)])?
        }
        Casimir::So3J => {
            SparseOperator::linear_combination(&[(1.0, &square(J3)?), (0.5, &anti(Jp, Jm)?)])?
        }
        Casimir::So21R => {
            SparseOperator::linear_combination(&[(0.25, &square(R3)?), (-0.125, &anti(Rp, Rm)?)])?
        }
        Casimir::So21S => {
            SparseOperator::linear_combination(&[(0.25, &square(S3)?), (-0.125, &anti(Sp, Sm)?)])?
        }
        Casimir::So32 => SparseOperator::linear_combination(&[
            (1.0, &square(J3)?),
            (1.0, &square(K3)?),
            (0.5, &anti(Jp, Jm)?),
            (-0.5, &anti(Kp, Km)?),
            (-0.25, &anti(Rp, Rm)?),
            (-0.25, &anti(Sp, Sm)?),
        ])?,
    };
    Ok(op.with_label(which.name()))
}

//! The `so(3,2)` generators acting on the `T_l^m` lattice as exact sparse operators.
//!
//! Ladder actions (every coefficient is the square root of an integer product):
//!
//! ```text
//! J+ : sqrt((l-m)(l+m+1))   (l, m+1)      J- : sqrt((l+m)(l-m+1))   (l, m-1)
//! K+ : sqrt((l-m+1)(l+m+1)) (l+1, m)      K- : sqrt((l+m)(l-m))     (l-1, m)
//! R+ : sqrt((l+m+2)(l+m+1)) (l+1, m+1)    R- : sqrt((l+m)(l+m-1))   (l-1, m-1)
//! S+ : sqrt((l-m+2)(l-m+1)) (l+1, m-1)    S- : sqrt((l-m)(l-m-1))   (l-1, m+1)
//! ```
//!
//! and the diagonal Cartan elements `J3 = m`, `K3 = l + 1/2`, `R3 = l + m + 1/2`,
//! `S3 = l - m + 1/2`.

mod casimir;
mod generate;
mod operator;
mod spectrum;
mod table;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::alp::sqrt_int_product;
use crate::error::Error;
use crate::index::ModeIndex;

pub use casimir::{casimir, Casimir};
pub use generate::generate_mode;
pub use operator::{anticommutator, commutator, SparseOperator};
pub use spectrum::{spectrum, Parity, SpectrumConstraint};
pub use table::{identify, lookup, CommutatorIdentity, Identification, COMMUTATOR_TABLE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorName {
    Jp,
    Jm,
    J3,
    Kp,
    Km,
    K3,
    Rp,
    Rm,
    R3,
    Sp,
    Sm,
    S3,
}

impl GeneratorName {
    pub const ALL: [GeneratorName; 12] = [
        GeneratorName::Jp,
        GeneratorName::Jm,
        GeneratorName::J3,
        GeneratorName::Kp,
        GeneratorName::Km,
        GeneratorName::K3,
        GeneratorName::Rp,
        GeneratorName::Rm,
        GeneratorName::R3,
        GeneratorName::Sp,
        GeneratorName::Sm,
        GeneratorName::S3,
    ];

    /// The eight raising/lowering operators.
    pub const LADDERS: [GeneratorName; 8] = [
        GeneratorName::Jp,
        GeneratorName::Jm,
        GeneratorName::Kp,
        GeneratorName::Km,
        GeneratorName::Rp,
        GeneratorName::Rm,
        GeneratorName::Sp,
        GeneratorName::Sm,
    ];

    /// The ten independent generators (`R3`, `S3` are `K3 +/- J3`).
    pub const INDEPENDENT: [GeneratorName; 10] = [
        GeneratorName::Jp,
        GeneratorName::Jm,
        GeneratorName::J3,
        GeneratorName::Kp,
        GeneratorName::Km,
        GeneratorName::K3,
        GeneratorName::Rp,
        GeneratorName::Rm,
        GeneratorName::Sp,
        GeneratorName::Sm,
    ];

    pub fn is_diagonal(self) -> bool {
        matches!(
            self,
            GeneratorName::J3 | GeneratorName::K3 | GeneratorName::R3 | GeneratorName::S3
        )
    }

    /// Lattice displacement `(dl, dm)`; `(0, 0)` for the diagonal generators.
    pub fn shift(self) -> (i64, i64) {
        use GeneratorName::*;
        match self {
            Jp => (0, 1),
            Jm => (0, -1),
            Kp => (1, 0),
            Km => (-1, 0),
            Rp => (1, 1),
            Rm => (-1, -1),
            Sp => (1, -1),
            Sm => (-1, 1),
            J3 | K3 | R3 | S3 => (0, 0),
        }
    }

    /// Hermitian conjugate under the orthonormal `|l,m>` inner product.
    pub fn adjoint(self) -> GeneratorName {
        use GeneratorName::*;
        match self {
            Jp => Jm,
            Jm => Jp,
            Kp => Km,
            Km => Kp,
            Rp => Rm,
            Rm => Rp,
            Sp => Sm,
            Sm => Sp,
            d => d,
        }
    }

    /// The two integer factors under the square root of the ladder coefficient.
    pub fn ladder_factors(self, l: i64, m: i64) -> (i64, i64) {
        use GeneratorName::*;
        match self {
            Jp => (l - m, l + m + 1),
            Jm => (l + m, l - m + 1),
            Kp => (l - m + 1, l + m + 1),
            Km => (l + m, l - m),
            Rp => (l + m + 2, l + m + 1),
            Rm => (l + m, l + m - 1),
            Sp => (l - m + 2, l - m + 1),
            Sm => (l - m, l - m - 1),
            J3 | K3 | R3 | S3 => (1, 1),
        }
    }

    /// Eigenvalue of a diagonal generator on `(l, m)`.
    pub fn diagonal_value(self, l: i64, m: i64) -> Option<f64> {
        use GeneratorName::*;
        let (l, m) = (l as f64, m as f64);
        match self {
            J3 => Some(m),
            K3 => Some(l + 0.5),
            R3 => Some(l + m + 0.5),
            S3 => Some(l - m + 0.5),
            _ => None,
        }
    }

    /// Image mode and coefficient of the action on `T_l^m`.
    ///
    /// `None` when the coefficient vanishes, which for admissible input is
    /// exactly when the image would leave the cone `|m| <= l`.
    pub fn action(self, mode: ModeIndex) -> Option<(ModeIndex, f64)> {
        if let Some(v) = self.diagonal_value(mode.l, mode.m) {
            return Some((mode, v));
        }
        let (a, b) = self.ladder_factors(mode.l, mode.m);
        let coeff = sqrt_int_product(a, b);
        if coeff == 0.0 {
            return None;
        }
        let (dl, dm) = self.shift();
        mode.shifted(dl, dm).map(|image| (image, coeff))
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for GeneratorName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GeneratorName::ALL
            .iter()
            .copied()
            .find(|g| g.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Usage(format!("unknown generator '{s}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(l: i64, m: i64) -> ModeIndex {
        ModeIndex::new(l, m).unwrap()
    }

    #[test]
    fn named_matrix_elements() {
        use GeneratorName::*;
        assert_eq!(Kp.action(mi(0, 0)), Some((mi(1, 0), 1.0)));
        assert_eq!(Jp.action(mi(1, 0)), Some((mi(1, 1), 2f64.sqrt())));
        assert_eq!(Rp.action(mi(0, 0)), Some((mi(1, 1), 2f64.sqrt())));
        assert_eq!(Sm.action(mi(2, 0)), Some((mi(1, 1), 2f64.sqrt())));
        for l in 0..8 {
            assert_eq!(Jp.action(mi(l, l)), None);
            assert_eq!(Rm.action(mi(l, -l)), None);
        }
    }

    #[test]
    fn vanishing_coefficient_iff_image_leaves_cone() {
        for g in GeneratorName::LADDERS {
            let (dl, dm) = g.shift();
            for l in 0..15 {
                for m in -l..=l {
                    let (a, b) = g.ladder_factors(l, m);
                    let zero = a * b == 0;
                    let outside = mi(l, m).shifted(dl, dm).is_none();
                    assert_eq!(zero, outside, "{g} at ({l},{m})");
                    assert!(a * b >= 0);
                }
            }
        }
    }

    #[test]
    fn parse_names() {
        for g in GeneratorName::ALL {
            assert_eq!(g.to_string().parse::<GeneratorName>().unwrap(), g);
        }
        assert_eq!("kp".parse::<GeneratorName>().unwrap(), GeneratorName::Kp);
        assert!("Xp".parse::<GeneratorName>().is_err());
    }

    #[test]
    fn adjoints_reverse_shifts() {
        for g in GeneratorName::ALL {
            let (dl, dm) = g.shift();
            assert_eq!(g.adjoint().shift(), (-dl, -dm));
            assert_eq!(g.adjoint().adjoint(), g);
        }
    }
}

//! Mode indices, truncation windows and sparse coefficient vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `true` iff `(l, m)` is a point of the weight lattice, i.e. `l >= 0` and `|m| <= l`.
pub fn is_admissible(l: i64, m: i64) -> bool {
    l >= 0 && m.abs() <= l
}

/// A lattice point `(l, m)` with `|m| <= l`.
///
/// The derived ordering is lexicographic in `(l, m)`, which is the canonical
/// order used for every serialized coefficient list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeIndex {
    pub l: i64,
    pub m: i64,
}

impl ModeIndex {
    pub fn new(l: i64, m: i64) -> Result<Self> {
        if is_admissible(l, m) {
            Ok(ModeIndex { l, m })
        } else {
            Err(Error::Domain(format!("inadmissible (l,m) = ({l},{m})")))
        }
    }

    /// Displaces the index, returning `None` when the image leaves the cone.
    pub fn shifted(self, dl: i64, dm: i64) -> Option<ModeIndex> {
        ModeIndex::new(self.l + dl, self.m + dm).ok()
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l, self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Truncation {
    pub l_max: i64,
}

impl Truncation {
    pub fn new(l_max: i64) -> Result<Self> {
        if l_max < 0 {
            return Err(Error::Domain(format!("l_max must be non-negative, got {l_max}")));
        }
        Ok(Truncation { l_max })
    }

    pub fn contains(&self, mode: ModeIndex) -> bool {
        mode.l <= self.l_max
    }

    /// Number of lattice points in the window, `(l_max + 1)^2`.
    pub fn size(&self) -> usize {
        let n = (self.l_max + 1) as usize;
        n * n
    }

    pub fn lattice(&self) -> Vec<ModeIndex> {
        lattice(*self)
    }
}

/// All admissible modes with `l <= l_max`, ordered by `l` then `m` ascending.
pub fn lattice(trunc: Truncation) -> Vec<ModeIndex> {
    (0..=trunc.l_max)
        .flat_map(|l| (-l..=l).map(move |m| ModeIndex { l, m }))
        .collect()
}

/// Field of amplitudes a [`CoeffVector`] can carry: `f64` for Legendre work,
/// `Complex64` on the sphere.
pub trait Scalar:
    Copy
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + Mul<f64, Output = Self>
    + Send
    + Sync
    + 'static
{
    fn zero() -> Self;
    fn from_real(x: f64) -> Self;
    fn modulus(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
}

/// Finite-support vector in the span of `{|l,m>}` inside a truncation window.
///
/// `overflow` is raised when an operator pushed amplitude outside the window;
/// that amplitude is not representable and has been discarded.
#[derive(Clone, Debug)]
pub struct CoeffVector<S: Scalar = f64> {
    truncation: Truncation,
    entries: BTreeMap<ModeIndex, S>,
    overflow: bool,
}

impl<S: Scalar> CoeffVector<S> {
    pub fn zeros(truncation: Truncation) -> Self {
        CoeffVector {
            truncation,
            entries: BTreeMap::new(),
            overflow: false,
        }
    }

    pub fn unit(truncation: Truncation, l: i64, m: i64) -> Result<Self> {
        let mut v = Self::zeros(truncation);
        v.set(ModeIndex::new(l, m)?, S::from_real(1.0))?;
        Ok(v)
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn overflowed(&self) -> bool {
        self.overflow
    }

    pub(crate) fn mark_overflow(&mut self) {
        self.overflow = true;
    }

    pub fn set(&mut self, mode: ModeIndex, value: S) -> Result<()> {
        self.check_mode(mode)?;
        if value == S::zero() {
            self.entries.remove(&mode);
        } else {
            self.entries.insert(mode, value);
        }
        Ok(())
    }

    /// Adds `value` at `mode`; the mode must be inside the window.
    pub fn accumulate(&mut self, mode: ModeIndex, value: S) -> Result<()> {
        self.check_mode(mode)?;
        *self.entries.entry(mode).or_insert_with(S::zero) += value;
        Ok(())
    }

    fn check_mode(&self, mode: ModeIndex) -> Result<()> {
        if !is_admissible(mode.l, mode.m) {
            return Err(Error::Domain(format!("inadmissible (l,m) = {mode}")));
        }
        if !self.truncation.contains(mode) {
            return Err(Error::Usage(format!(
                "mode {mode} outside truncation l_max = {}",
                self.truncation.l_max
            )));
        }
        Ok(())
    }

    pub fn get(&self, mode: ModeIndex) -> S {
        self.entries.get(&mode).copied().unwrap_or_else(S::zero)
    }

    /// Stored entries in canonical `(l, m)` order.
    pub fn iter(&self) -> impl Iterator<Item = (ModeIndex, S)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Drops entries with modulus `<= tol`.
    pub fn pruned(mut self, tol: f64) -> Self {
        self.entries.retain(|_, v| v.modulus() > tol);
        self
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.entries.values().all(|v| v.modulus() <= tol)
    }

    /// Euclidean norm in the orthonormal basis of unit vectors.
    pub fn norm(&self) -> f64 {
        self.entries
            .values()
            .map(|v| v.modulus().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|v| v.modulus()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        CoeffVector {
            truncation: self.truncation,
            entries: self.entries.iter().map(|(k, v)| (*k, *v * factor)).collect(),
            overflow: self.overflow,
        }
    }

    /// `self + factor * other`; truncations must agree.
    pub fn add_scaled(&self, other: &Self, factor: f64) -> Result<Self> {
        if self.truncation != other.truncation {
            return Err(Error::Usage("truncation mismatch".into()));
        }
        let mut out = self.clone();
        for (k, v) in other.iter() {
            *out.entries.entry(k).or_insert_with(S::zero) += v * factor;
        }
        out.overflow |= other.overflow;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, -1.0)
    }
}

impl CoeffVector<f64> {
    pub fn to_complex(&self) -> CoeffVector<Complex64> {
        CoeffVector {
            truncation: self.truncation,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (*k, Complex64::new(*v, 0.0)))
                .collect(),
            overflow: self.overflow,
        }
    }
}

/// Equality up to pruning of exact zeros; the overflow flag is ignored.
impl<S: Scalar> PartialEq for CoeffVector<S> {
    fn eq(&self, other: &Self) -> bool {
        if self.truncation != other.truncation {
            return false;
        }
        let nz = |v: &S| *v != S::zero();
        let a: Vec<_> = self.entries.iter().filter(|(_, v)| nz(v)).collect();
        let b: Vec<_> = other.entries.iter().filter(|(_, v)| nz(v)).collect();
        a == b
    }
}

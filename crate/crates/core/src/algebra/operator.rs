use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::index::{lattice, CoeffVector, ModeIndex, Scalar, Truncation};

use super::GeneratorName;

#[derive(Clone, Debug, Default, PartialEq)]
struct Column {
    entries: Vec<(ModeIndex, f64)>,
    /// Some amplitude of this column left the truncation window.
    spilled: bool,
}

/// A linear operator on the truncated lattice, stored column by column.
///
/// Columns whose source mode has `l <= valid_l_max` are exact restrictions of
/// the operator on the infinite representation; above that, intermediate or
/// final images left the window and the column is only a truncation artifact.
/// `raise` bounds how far any column can move upward in `l`.
#[derive(Clone, Debug)]
pub struct SparseOperator {
    truncation: Truncation,
    columns: BTreeMap<ModeIndex, Column>,
    shift: Option<(i64, i64)>,
    raise: i64,
    valid_l_max: i64,
    label: String,
}

impl SparseOperator {
    pub fn generator(name: GeneratorName, truncation: Truncation) -> Self {
        let (dl, dm) = name.shift();
        let mut columns = BTreeMap::new();
        for mode in lattice(truncation) {
            let mut col = Column::default();
            if let Some((image, c)) = name.action(mode) {
                if truncation.contains(image) {
                    col.entries.push((image, c));
                } else {
                    col.spilled = true;
                }
            }
            columns.insert(mode, col);
        }
        let raise = dl.max(0);
        SparseOperator {
            truncation,
            columns,
            shift: Some((dl, dm)),
            raise,
            valid_l_max: truncation.l_max - raise,
            label: name.to_string(),
        }
    }

    pub fn identity(truncation: Truncation) -> Self {
        Self::diagonal(truncation, "I", |_| 1.0)
    }

    pub fn zero(truncation: Truncation) -> Self {
        Self::diagonal(truncation, "0", |_| 0.0)
    }

    /// Diagonal operator with eigenvalue `f(mode)`.
    pub fn diagonal<F: Fn(ModeIndex) -> f64>(truncation: Truncation, label: &str, f: F) -> Self {
        let columns = lattice(truncation)
            .into_iter()
            .map(|mode| {
                let v = f(mode);
                let entries = if v == 0.0 { vec![] } else { vec![(mode, v)] };
                (
                    mode,
                    Column {
                        entries,
                        spilled: false,
                    },
                )
            })
            .collect();
        SparseOperator {
            truncation,
            columns,
            shift: Some((0, 0)),
            raise: 0,
            valid_l_max: truncation.l_max,
            label: label.to_string(),
        }
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Common lattice displacement of every column, if there is one.
    pub fn shift(&self) -> Option<(i64, i64)> {
        self.shift
    }

    pub fn raise(&self) -> i64 {
        self.raise
    }

    /// Largest source degree whose column is exact; negative means none.
    pub fn valid_l_max(&self) -> i64 {
        self.valid_l_max
    }

    pub fn is_valid_at(&self, mode: ModeIndex) -> bool {
        mode.l <= self.valid_l_max
    }

    /// Column of the operator, i.e. its action on the unit vector at `mode`.
    pub fn column(&self, mode: ModeIndex) -> &[(ModeIndex, f64)] {
        self.columns
            .get(&mode)
            .map(|c| c.entries.as_slice())
            .unwrap_or(&[])
    }

    pub fn column_spilled(&self, mode: ModeIndex) -> bool {
        self.columns.get(&mode).map(|c| c.spilled).unwrap_or(false)
    }

    /// Matrix element `<to| op |from>`.
    pub fn element(&self, to: ModeIndex, from: ModeIndex) -> f64 {
        self.column(from)
            .iter()
            .filter(|(t, _)| *t == to)
            .map(|(_, c)| c)
            .sum()
    }

    fn check_truncation(&self, other: Truncation) -> Result<()> {
        if self.truncation != other {
            return Err(Error::Usage(format!(
                "truncation mismatch: operator l_max = {}, operand l_max = {}",
                self.truncation.l_max, other.l_max
            )));
        }
        Ok(())
    }

    /// Linear action on a coefficient vector. Amplitude pushed outside the
    /// window raises the result's overflow flag.
    pub fn apply<S: Scalar>(&self, v: &CoeffVector<S>) -> Result<CoeffVector<S>> {
        self.check_truncation(v.truncation())?;
        let mut out = CoeffVector::zeros(self.truncation);
        if v.overflowed() {
            out.mark_overflow();
        }
        for (mode, amp) in v.iter() {
            if amp == S::zero() {
                continue;
            }
            let col = &self.columns[&mode];
            if col.spilled {
                out.mark_overflow();
            }
            for &(image, c) in &col.entries {
                out.accumulate(image, amp * c)?;
            }
        }
        Ok(out)
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.check_truncation(other.truncation)?;
        let mut columns = BTreeMap::new();
        for (&src, inner) in &other.columns {
            let mut acc: BTreeMap<ModeIndex, f64> = BTreeMap::new();
            let mut spilled = inner.spilled;
            for &(mid, c) in &inner.entries {
                let outer = &self.columns[&mid];
                spilled |= outer.spilled;
                for &(dst, d) in &outer.entries {
                    *acc.entry(dst).or_insert(0.0) += c * d;
                }
            }
            columns.insert(
                src,
                Column {
                    entries: acc.into_iter().collect(),
                    spilled,
                },
            );
        }
        let shift = match (self.shift, other.shift) {
            (Some((a, b)), Some((c, d))) => Some((a + c, b + d)),
            _ => None,
        };
        Ok(SparseOperator {
            truncation: self.truncation,
            columns,
            shift,
            raise: self.raise + other.raise,
            valid_l_max: other.valid_l_max.min(self.valid_l_max - other.raise),
            label: format!("{}*{}", self.label, other.label),
        })
    }

    /// `sum_i c_i op_i` over operators sharing one truncation.
    pub fn linear_combination(terms: &[(f64, &SparseOperator)]) -> Result<SparseOperator> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| Error::Usage("empty linear combination".into()))?;
        let truncation = first.truncation;
        let mut acc: BTreeMap<ModeIndex, (BTreeMap<ModeIndex, f64>, bool)> = lattice(truncation)
            .into_iter()
            .map(|m| (m, (BTreeMap::new(), false)))
            .collect();
        let mut shift = first.shift;
        let mut raise = 0;
        let mut valid = truncation.l_max;
        for (coeff, op) in terms {
            op.check_truncation(truncation)?;
            if shift != op.shift {
                shift = None;
            }
            raise = raise.max(op.raise);
            valid = valid.min(op.valid_l_max);
            for (src, col) in &op.columns {
                let slot = acc.get_mut(src).expect("same lattice");
                slot.1 |= col.spilled;
                for &(dst, c) in &col.entries {
                    *slot.0.entry(dst).or_insert(0.0) += coeff * c;
                }
            }
        }
        let columns = acc
            .into_iter()
            .map(|(src, (entries, spilled))| {
                (
                    src,
                    Column {
                        entries: entries.into_iter().collect(),
                        spilled,
                    },
                )
            })
            .collect();
        let label = terms
            .iter()
            .map(|(c, op)| format!("{c}*{}", op.label))
            .collect::<Vec<_>>()
            .join(" + ");
        Ok(SparseOperator {
            truncation,
            columns,
            shift,
            raise,
            valid_l_max: valid,
            label,
        })
    }

    pub fn scaled(&self, factor: f64) -> SparseOperator {
        let mut out = self.clone();
        for col in out.columns.values_mut() {
            for e in &mut col.entries {
                e.1 *= factor;
            }
        }
        out.label = format!("{factor}*{}", self.label);
        out
    }

    /// Largest entrywise difference over columns with `l <= window`.
    pub fn max_deviation(&self, other: &SparseOperator, window: i64) -> Result<f64> {
        self.check_truncation(other.truncation)?;
        let mut worst: f64 = 0.0;
        for mode in lattice(self.truncation) {
            if mode.l > window {
                continue;
            }
            let mut diff: BTreeMap<ModeIndex, f64> = BTreeMap::new();
            for &(t, c) in self.column(mode) {
                *diff.entry(t).or_insert(0.0) += c;
            }
            for &(t, c) in other.column(mode) {
                *diff.entry(t).or_insert(0.0) -= c;
            }
            worst = diff.values().fold(worst, |w, d| w.max(d.abs()));
        }
        Ok(worst)
    }

    /// Largest entry magnitude over columns with `l <= window`.
    pub fn max_abs(&self, window: i64) -> f64 {
        self.columns
            .iter()
            .filter(|(src, _)| src.l <= window)
            .flat_map(|(_, c)| c.entries.iter().map(|e| e.1.abs()))
            .fold(0.0, f64::max)
    }

    /// Largest off-diagonal magnitude, and largest deviation of the diagonal
    /// from `expected(mode)`, over columns with `l <= window`.
    pub fn diagonal_deviation<F: Fn(ModeIndex) -> f64>(&self, window: i64, expected: F) -> (f64, f64) {
        let mut off: f64 = 0.0;
        let mut diag: f64 = 0.0;
        for (src, col) in &self.columns {
            if src.l > window {
                continue;
            }
            let mut d = 0.0;
            for &(t, c) in &col.entries {
                if t == *src {
                    d += c;
                } else {
                    off = off.max(c.abs());
                }
            }
            diag = diag.max((d - expected(*src)).abs());
        }
        (off, diag)
    }

    /// Nonzero entries as `(from, to, value)` in canonical order of `from`.
    pub fn entries(&self) -> impl Iterator<Item = (ModeIndex, ModeIndex, f64)> + '_ {
        self.columns
            .iter()
            .flat_map(|(src, col)| col.entries.iter().map(move |&(t, c)| (*src, t, c)))
    }
}

/// `[a, b] = a b - b a`.
pub fn commutator(a: &SparseOperator, b: &SparseOperator) -> Result<SparseOperator> {
    let ab = a.compose(b)?;
    let ba = b.compose(a)?;
    Ok(SparseOperator::linear_combination(&[(1.0, &ab), (-1.0, &ba)])?
        .with_label(format!("[{},{}]", a.label, b.label)))
}

/// `{a, b} = a b + b a`.
pub fn anticommutator(a: &SparseOperator, b: &SparseOperator) -> Result<SparseOperator> {
    let ab = a.compose(b)?;
    let ba = b.compose(a)?;
    Ok(SparseOperator::linear_combination(&[(1.0, &ab), (1.0, &ba)])?
        .with_label(format!("{{{},{}}}", a.label, b.label)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use GeneratorName::*;

    fn trunc(n: i64) -> Truncation {
        Truncation::new(n).unwrap()
    }

    fn g(name: GeneratorName, n: i64) -> SparseOperator {
        SparseOperator::generator(name, trunc(n))
    }

    #[test]
    fn apply_examples() {
        let t = trunc(4);
        let v = CoeffVector::<f64>::unit(t, 1, 0).unwrap();
        let w = g(Jp, 4).apply(&v).unwrap();
        let expected = CoeffVector::<f64>::unit(t, 1, 1).unwrap().scaled(2f64.sqrt());
        assert_eq!(w, expected);
        assert!(!w.overflowed());

        for name in GeneratorName::ALL {
            let z = g(name, 4).apply(&CoeffVector::<f64>::zeros(t)).unwrap();
            assert!(z.is_empty());
        }

        let top = CoeffVector::<f64>::unit(t, 4, 0).unwrap();
        let spilled = g(Kp, 4).apply(&top).unwrap();
        assert!(spilled.is_zero(0.0));
        assert!(spilled.overflowed());
    }

    #[test]
    fn truncation_mismatch_is_usage_error() {
        let v = CoeffVector::<f64>::unit(trunc(3), 1, 0).unwrap();
        assert!(matches!(g(Jp, 4).apply(&v), Err(Error::Usage(_))));
        assert!(matches!(g(Jp, 4).compose(&g(Jm, 3)), Err(Error::Usage(_))));
    }

    #[test]
    fn commutator_examples_on_interior() {
        let n = 8;
        let kk = commutator(&g(Kp, n), &g(Km, n)).unwrap();
        let (off, diag) = kk.diagonal_deviation(n - 2, |md| -2.0 * (md.l as f64 + 0.5));
        assert!(off < 1e-12 && diag < 1e-12);

        let jj = commutator(&g(Jp, n), &g(Jm, n)).unwrap();
        let (off, diag) = jj.diagonal_deviation(n - 2, |md| 2.0 * md.m as f64);
        assert!(off < 1e-12 && diag < 1e-12);

        let rs = commutator(&g(Rp, n), &g(Sm, n)).unwrap();
        assert!(rs.max_abs(n - 2) < 1e-12);

        let jk = commutator(&g(Jp, n), &g(Kp, n)).unwrap();
        assert!(jk.max_deviation(&g(Rp, n), n - 2).unwrap() < 1e-12);
    }

    #[test]
    fn validity_windows() {
        let n = 6;
        assert_eq!(g(Kp, n).valid_l_max(), n - 1);
        assert_eq!(g(Km, n).valid_l_max(), n);
        let kk = commutator(&g(Kp, n), &g(Km, n)).unwrap();
        assert_eq!(kk.valid_l_max(), n - 1);
        // the window is never smaller than l_max - |dl_a| - |dl_b|
        for a in GeneratorName::ALL {
            for b in GeneratorName::ALL {
                let c = commutator(&g(a, n), &g(b, n)).unwrap();
                let bound = n - a.shift().0.abs() - b.shift().0.abs();
                assert!(c.valid_l_max() >= bound, "[{a},{b}]");
            }
        }
    }

    #[test]
    fn spilled_columns_are_flagged_in_products() {
        let n = 3;
        let kmkp = g(Km, n).compose(&g(Kp, n)).unwrap();
        let top = ModeIndex::new(3, 1).unwrap();
        assert!(kmkp.column_spilled(top));
        assert!(!kmkp.column_spilled(ModeIndex::new(2, 1).unwrap()));
    }

    #[test]
    fn factorization_identities() {
        let n = 10;
        let w = n - 1;
        let kpkm = g(Kp, n).compose(&g(Km, n)).unwrap();
        let (off, d) = kpkm.diagonal_deviation(w, |md| (md.l * md.l - md.m * md.m) as f64);
        assert!(off < 1e-12 && d < 1e-12);
        let kmkp = g(Km, n).compose(&g(Kp, n)).unwrap();
        let (off, d) = kmkp.diagonal_deviation(w, |md| ((md.l + 1).pow(2) - md.m * md.m) as f64);
        assert!(off < 1e-12 && d < 1e-12);
        let jpjm = g(Jp, n).compose(&g(Jm, n)).unwrap();
        let (off, d) = jpjm.diagonal_deviation(w, |md| ((md.l + md.m) * (md.l - md.m + 1)) as f64);
        assert!(off < 1e-12 && d < 1e-12);
        let jmjp = g(Jm, n).compose(&g(Jp, n)).unwrap();
        let (off, d) = jmjp.diagonal_deviation(w, |md| ((md.l - md.m) * (md.l + md.m + 1)) as f64);
        assert!(off < 1e-12 && d < 1e-12);
    }

    #[test]
    fn ladder_pairs_are_transposes() {
        let n = 9;
        let t = trunc(n);
        for name in [Jp, Kp, Rp, Sp] {
            let up = g(name, n);
            let down = g(name.adjoint(), n);
            for from in lattice(t) {
                for to in lattice(t) {
                    let a = up.element(to, from);
                    let b = down.element(from, to);
                    assert!((a - b).abs() <= 1e-13, "{name} {from}->{to}");
                }
            }
        }
    }
}

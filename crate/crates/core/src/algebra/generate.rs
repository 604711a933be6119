use crate::error::{Error, Result};
use crate::index::{is_admissible, CoeffVector, Truncation};

use super::operator::SparseOperator;
use super::GeneratorName;

fn ln_factorial(n: i64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Builds `|l,m>` from the lowest weight `|0,0>` as
/// `(1/l!) sqrt((l-|m|)!/(l+|m|)!) (J+/-)^{|m|} (K+)^l |0,0>`,
/// with `J+` for `m > 0` and `J-` for `m < 0`. The prefactor is accumulated in
/// log space.
pub fn generate_mode(l: i64, m: i64, truncation: Truncation) -> Result<CoeffVector<f64>> {
    if !is_admissible(l, m) {
        return Err(Error::Domain(format!("inadmissible (l,m) = ({l},{m})")));
    }
    if l > truncation.l_max {
        return Err(Error::Usage(format!(
            "target degree {l} exceeds l_max = {}",
            truncation.l_max
        )));
    }
    let kp = SparseOperator::generator(GeneratorName::Kp, truncation);
    let j = SparseOperator::generator(
        if m >= 0 {
            GeneratorName::Jp
        } else {
            GeneratorName::Jm
        },
        truncation,
    );
    let mut v = CoeffVector::<f64>::unit(truncation, 0, 0)?;
    for _ in 0..l {
        v = kp.apply(&v)?;
    }
    for _ in 0..m.abs() {
        v = j.apply(&v)?;
    }
    let a = m.abs();
    let log_prefactor = -ln_factorial(l) + 0.5 * (ln_factorial(l - a) - ln_factorial(l + a));
    Ok(v.scaled(log_prefactor.exp()))
}

//! Every |l,m> is reached from |0,0> by raising operators.

use so32_legendre::algebra::generate_mode;
use so32_legendre::{CoeffVector, Result, Truncation};

fn main() -> Result<()> {
    let t = Truncation::new(10)?;
    let mut worst: f64 = 0.0;
    for l in 0..=10 {
        let mut row = Vec::new();
        for m in -l..=l {
            let err = generate_mode(l, m, t)?.sub(&CoeffVector::unit(t, l, m)?)?.norm();
            worst = worst.max(err);
            row.push(err);
        }
        let max = row.iter().cloned().fold(0.0, f64::max);
        println!("l = {l:>2}: {} modes, max error {max:.1e}", row.len());
    }
    println!("worst over l <= 10: {worst:.2e}");
    Ok(())
}

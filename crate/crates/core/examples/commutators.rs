//! Computes every generator commutator by operator composition and compares
//! it with the closed table.

use so32_legendre::algebra::{commutator, identify, COMMUTATOR_TABLE};
use so32_legendre::{GeneratorName, Result, SparseOperator, Truncation};

fn main() -> Result<()> {
    let t = Truncation::new(12)?;
    let window = 10;
    let mut worst: f64 = 0.0;
    for id in COMMUTATOR_TABLE {
        let dev = id.deviation(t, window)?;
        worst = worst.max(dev);
        if !id.rhs.is_empty() {
            println!("{:<22} max deviation {dev:.1e}", id.statement());
        }
    }
    let zero = COMMUTATOR_TABLE.iter().filter(|id| id.rhs.is_empty()).count();
    println!("... and {zero} commuting pairs");
    println!("worst deviation over l <= {window}: {worst:.2e}");

    let c = commutator(
        &SparseOperator::generator(GeneratorName::Kp, t),
        &SparseOperator::generator(GeneratorName::Jm, t),
    )?;
    if let Some(found) = identify(&c, c.valid_l_max(), 1e-12)? {
        println!("\n[Kp,Jm] identified as {}", found.describe());
    }
    Ok(())
}

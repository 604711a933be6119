//! The generators acting on coefficient vectors over the weight lattice.

use so32_legendre::algebra::{spectrum, Parity, SpectrumConstraint};
use so32_legendre::{CoeffVector, GeneratorName, Result, SparseOperator, Truncation};

fn show(name: &str, v: &CoeffVector) {
    let terms: Vec<String> = v.iter().map(|(md, c)| format!("{c:+.6}|{},{}>", md.l, md.m)).collect();
    println!("{name:<10} = {}", if terms.is_empty() { "0".into() } else { terms.join(" ") });
}

fn main() -> Result<()> {
    let t = Truncation::new(4)?;
    let v: CoeffVector = CoeffVector::unit(t, 1, 0)?;
    show("|1,0>", &v);
    for g in GeneratorName::ALL {
        let w = SparseOperator::generator(g, t).apply(&v)?;
        show(&format!("{g} |1,0>"), &w);
    }

    // raising past l_max loses weight; the result says so instead of wrapping
    let top: CoeffVector = CoeffVector::unit(t, 4, 4)?;
    let w = SparseOperator::generator(GeneratorName::Rp, t).apply(&top)?;
    println!("\nRp |4,4> with l_max = 4: zero = {}, overflowed = {}", w.is_zero(0.0), w.overflowed());

    let kp = SparseOperator::generator(GeneratorName::Kp, t);
    let km = SparseOperator::generator(GeneratorName::Km, t);
    let prod = kp.compose(&km)?;
    println!("Kp Km valid for l <= {}, element at (3,1): {}", prod.valid_l_max(), {
        let md = so32_legendre::ModeIndex::new(3, 1)?;
        prod.element(md, md)
    });

    println!("\nK3 spectrum, m = 1:      {:?}", spectrum(GeneratorName::K3, t, SpectrumConstraint::FixedM(1))?);
    println!("R3 spectrum, l+m even:   {:?}", spectrum(GeneratorName::R3, t, SpectrumConstraint::LPlusM(Parity::Even))?);
    println!("R3 spectrum, l+m odd:    {:?}", spectrum(GeneratorName::R3, t, SpectrumConstraint::LPlusM(Parity::Odd))?);
    println!("J3 spectrum, l = 2:      {:?}", spectrum(GeneratorName::J3, t, SpectrumConstraint::FixedL(2))?);
    Ok(())
}

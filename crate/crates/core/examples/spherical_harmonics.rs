//! Spherical transforms and the phase-dressed generators on S^2.

use num_complex::Complex64;
use so32_legendre::sphere::{
    eval_y, primed_casimir, sht_analyze, sht_synthesize, y_field, PrimedGenerator, SphereField, SphereGrid,
};
use so32_legendre::{Casimir, CoeffVector, GeneratorName, ModeIndex, Result, Truncation};

fn main() -> Result<()> {
    println!("Y_0^0 = {:.7}", eval_y(0, 0, 1.0, 0.3)?.re);

    let l_max = 6;
    let grid = SphereGrid::new(l_max as usize + 1, 2 * l_max as usize + 1)?;
    let mut c = CoeffVector::<Complex64>::zeros(Truncation::new(l_max)?);
    c.set(ModeIndex::new(2, 1)?, Complex64::new(1.0, -0.5))?;
    c.set(ModeIndex::new(5, -4)?, Complex64::new(0.0, 2.0))?;
    let field = sht_synthesize(&c, &grid)?;
    let back = sht_analyze(&field, l_max)?;
    println!("SHT round trip error: {:.1e}", back.sub(&c)?.max_abs());

    let constant = SphereField::sample(&grid, |_, _| Complex64::new(3.0, 0.0));
    let c0 = sht_analyze(&constant, l_max)?.get(ModeIndex::new(0, 0)?);
    println!("constant 3 has (0,0) coefficient {:.12} (3 sqrt 2 = {:.12})", c0.re, 3.0 * 2f64.sqrt());

    let jp = PrimedGenerator::new(GeneratorName::Jp);
    let got = jp.apply_mode(1, 0, &grid)?;
    let mut want = SphereField::zeros(&grid);
    want.axpy(Complex64::new(2f64.sqrt(), 0.0), &y_field(1, 1, &grid)?);
    println!("Jp' Y_1^0 = sqrt(2) Y_1^1: error {:.1e}", got.max_abs_diff(&want));

    for (l, m) in [(0, 0), (3, 2), (5, -5)] {
        let cas = primed_casimir(Casimir::So32, l, m, &grid)?;
        let mut ref_field = SphereField::zeros(&grid);
        ref_field.axpy(Complex64::new(-1.25, 0.0), &y_field(l, m, &grid)?);
        println!("so(3,2) Casimir on Y_{l}^{m}: -5/4 to {:.1e}", cas.max_abs_diff(&ref_field));
    }
    Ok(())
}

use so32_legendre::algebra::{casimir, commutator};
use so32_legendre::{Casimir, GeneratorName, ModeIndex, Result, SparseOperator, Truncation};

fn main() -> Result<()> {
    let t = Truncation::new(10)?;
    let probe = [(0, 0), (3, -2), (6, 5), (8, 0)];
    for which in Casimir::ALL {
        let c = casimir(which, t)?;
        let values: Vec<String> = probe
            .iter()
            .map(|&(l, m)| {
                let md = ModeIndex { l, m };
                format!("({l},{m}) {:+.4}", c.element(md, md))
            })
            .collect();
        let (off, diag) = c.diagonal_deviation(8, |md| which.eigenvalue(md.l, md.m));
        println!("{:<8} {}  | off-diagonal {off:.0e}, eigenvalue error {diag:.0e}", which.name(), values.join("  "));
    }

    let c = casimir(Casimir::So32, t)?;
    let worst = GeneratorName::INDEPENDENT
        .iter()
        .map(|&g| commutator(&c, &SparseOperator::generator(g, t)).map(|k| k.max_abs(7)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    println!("\nlargest [C_so32, X] entry over the ten generators: {worst:.2e}");
    Ok(())
}

use so32_legendre::{gauss_legendre, GridFunction, Result};

fn main() -> Result<()> {
    let rule = gauss_legendre(5)?;
    for (x, w) in rule.nodes().iter().zip(rule.weights()) {
        println!("x = {x:+.16}  w = {w:.16}");
    }
    println!("sum of weights = {}", rule.weights().iter().sum::<f64>());

    // an n-point rule integrates polynomials through degree 2n - 1 exactly
    for d in [0, 4, 8, 9, 10] {
        let got = rule.integrate(|x| x.powi(d));
        let exact = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
        println!("int x^{d:<2} = {got:+.16}  error {:.1e}", (got - exact).abs());
    }

    let big = gauss_legendre(64)?;
    let f = GridFunction::sample(&big, 0, |x| (2.0 * x).cos());
    let ones = GridFunction::sample(&big, 0, |_| 1.0);
    println!("int cos(2x) = {} (exact {})", f.dot(&ones)?, 2f64.sin());
    Ok(())
}

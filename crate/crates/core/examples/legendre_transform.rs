use so32_legendre::transforms::{analyze, parseval_check, synthesize, ChannelSpectrum};
use so32_legendre::{gauss_legendre, GridFunction, Result};

fn main() -> Result<()> {
    let (m, l_max) = (2, 10);
    let rule = gauss_legendre(l_max as usize + 1)?;

    let spec = ChannelSpectrum::from_coeffs(m, l_max, [(2, 1.0), (5, -0.5), (10, 0.25)])?;
    let grid = synthesize(&spec, &rule)?;
    let back = analyze(&grid, l_max)?;
    println!("band-limited round trip error: {:.1e}", back.max_abs_diff(&spec));
    for (l, c) in back.iter().filter(|(_, c)| c.abs() > 1e-12) {
        println!("  c_{l} = {c:+.12}");
    }

    let rep = parseval_check(&[grid], l_max)?;
    println!("Parseval: sum c^2 = {:.15}, int f^2 = {:.15}", rep.lhs, rep.rhs);

    // a function with content above l_max: accepted, but flagged
    let fine = gauss_legendre(24)?;
    let rough = GridFunction::sample(&fine, 0, |x| (1.0 + x * x).recip());
    let rep = parseval_check(&[rough], l_max)?;
    println!(
        "1/(1+x^2): band-limited = {}, round trip residual {:.2e}, sum c^2 = {:.6}, int f^2 = {:.6}",
        rep.band_limited, rep.round_trip_residual, rep.lhs, rep.rhs
    );
    Ok(())
}

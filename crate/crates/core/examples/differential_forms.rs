//! The generators as differential operators in x, and the Legendre equation
//! recovered from each Casimir.

use so32_legendre::diffops::{apply_diff, ladder_diff_consistency, route_profiles};
use so32_legendre::{eval_t, gauss_legendre, Casimir, GeneratorName, GridFunction, Result};

fn main() -> Result<()> {
    let rule = gauss_legendre(32)?;

    // Jp applied to T_1^0(x) = x gives -sqrt(1 - x^2) = sqrt(2) T_1^1
    let g = GridFunction::sample(&rule, 0, |x| x);
    let out = apply_diff(GeneratorName::Jp, 1, 0, &g)?;
    let want = GridFunction::sample(&rule, 1, |x| 2f64.sqrt() * eval_t(1, 1, x).unwrap());
    println!("Jp on T_1^0: max error {:.1e}", out.max_abs_diff(&want));

    println!("\nladder vs differential action, l <= 10:");
    for name in GeneratorName::ALL {
        let mut worst: f64 = 0.0;
        for l in 0..=10 {
            for m in -l..=l {
                worst = worst.max(ladder_diff_consistency(name, l, m, &rule)?);
            }
        }
        println!("  {name}: {worst:.1e}");
    }

    let routes = [Casimir::So21K, Casimir::So3J, Casimir::So21R, Casimir::So32];
    let prof = route_profiles(7, 3, &rule, &routes)?;
    let direct = prof.direct.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    println!("\nLegendre residual on T_7^3: direct {direct:.1e}, route disagreement {:.1e}", prof.max_disagreement());
    Ok(())
}

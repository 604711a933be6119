use so32_legendre::verify::{run_suite, Suite, VerifyParams};
use so32_legendre::Result;

fn main() -> Result<()> {
    let suite: Suite = std::env::args().nth(1).as_deref().unwrap_or("casimir").parse()?;
    let report = run_suite(suite, &VerifyParams::new(10))?;
    for c in &report.checks {
        println!(
            "{:<4} {:<40} {:>9.2e} <= {:<7.0e} [{}]",
            if c.pass { "ok" } else { "FAIL" },
            c.id,
            c.max_deviation,
            c.tolerance,
            c.validity_window
        );
    }
    println!("{}: {}", report.suite, if report.pass { "all checks passed" } else { "failures" });
    Ok(())
}

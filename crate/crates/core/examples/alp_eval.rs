//! Pointwise evaluation of the normalized associated Legendre functions.

use so32_legendre::alp::{eval_t_jet, phase_relation_check};
use so32_legendre::{eval_t, eval_t_derivative, Result};

fn main() -> Result<()> {
    println!("T_1^1(0)  = {}", eval_t(1, 1, 0.0)?);
    println!("T_2^0(0)  = {}", eval_t(2, 0, 0.0)?);
    println!("T_1^0'(x) = {}", eval_t_derivative(1, 0, 0.3)?);

    let x = 0.4;
    println!("\n  l   m        T         T'        T''");
    for (l, m) in [(3, 2), (3, -2), (10, 5), (40, 17), (200, 150)] {
        let j = eval_t_jet(l, m, x)?;
        println!("{l:>3} {m:>3} {:>+10.6} {:>+10.6} {:>+10.4}", j.value, j.d1, j.d2);
    }

    for (l, m) in [(3, 2), (1, 1), (7, 0)] {
        assert!(phase_relation_check(l, m, x)?);
    }
    println!("\nT_l^-m = (-1)^m T_l^m holds at x = {x}");

    match eval_t(1, 2, 0.0) {
        Err(e) => println!("(1,2): {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

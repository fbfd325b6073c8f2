//! Exponent-driven primitives on Sym(6) and GL(2, 3): pseudo-orders, the
//! involution i(x) of <x>, and square roots of odd-order elements.

use blackbox_groups::{make_backend, BackendKind, Result};

fn main() -> Result<()> {
    let sym6 = make_backend(&BackendKind::Permutation(6))?;
    println!("{}: exponent {}", sym6.name(), sym6.exponent().value());
    for lit in ["(1 2 3 4)(5 6)", "(1 2 3)(4 5)", "(1 2 3)", "(1 2 3 4 5 6)"] {
        let x = sym6.parse(lit)?;
        let i = sym6.involution_from(&x)?;
        println!(
            "  x = {lit:<16} pseudo-order {:>2}  i(x) = {}",
            sym6.pseudo_order(&x)?,
            sym6.format(&i)
        );
    }
    let c = sym6.parse("(1 2 3)(4 5 6)")?;
    let r = sym6.sqrt_odd_order(&c)?;
    println!("  sqrt of (1 2 3)(4 5 6) is {}", sym6.format(&r));

    let gl = make_backend(&BackendKind::Matrix(2, 3))?;
    println!("{}: exponent {}", gl.name(), gl.exponent().value());
    let all = gl.enumerate(100)?;
    let mut by_order = std::collections::BTreeMap::new();
    for x in &all {
        *by_order.entry(gl.pseudo_order(x)?).or_insert(0) += 1;
    }
    println!("  element orders: {by_order:?}");
    println!("  multiplications so far: {}", gl.multiplications());
    Ok(())
}

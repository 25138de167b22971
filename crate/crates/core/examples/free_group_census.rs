//! Irreducible matrix tuples up to conjugacy and the free-group lower bounds.

use pgl::freegrowth::{burnside_class_count, free_bound_check, gl_order, sylow_bound_check, tuple_census};

fn main() -> pgl::Result<()> {
    println!("|GL_2(F_2)| = {}, |GL_3(F_2)| = {}", gl_order(2, 2), gl_order(3, 2));
    for (d, n, p) in [(2, 1, 3), (2, 2, 2), (2, 2, 3)] {
        let census = tuple_census(d, n, p)?;
        let bound = free_bound_check(&census);
        println!(
            "d={d} n={n} p={p}: {} irreducible tuples in {} classes (Burnside count {}); c_p bound {}, parabolic bound {}, holds: {}",
            census.irreducible,
            census.iso_classes(),
            burnside_class_count(d, n, p)?,
            bound.cp_bound,
            bound.parabolic_bound,
            bound.holds()
        );
    }
    let sylow = sylow_bound_check(3, 4, 3)?;
    println!("Sylow bound for GL_3(F_4), p = 3: {} <= {}, holds: {}", sylow.p_part, sylow.bound, sylow.holds());
    Ok(())
}

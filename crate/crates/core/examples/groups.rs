//! Normal subgroups, quotients, generator counts and automorphisms of S4.

use pgl::groups::{automorphism_group, min_generators, normal_subgroups, quotient, symmetric};

fn main() -> pgl::Result<()> {
    let s4 = symmetric(4)?;
    println!("{} has order {}", s4.label(), s4.order());
    for n in normal_subgroups(&s4)? {
        let (q, _) = quotient(&s4, &n)?;
        println!("  normal subgroup of order {:>2}; quotient {} of order {}", n.order(), q.label(), q.order());
    }
    let (d, gens) = min_generators(&s4)?;
    println!("d(S4) = {d}, generated by elements {gens:?}");
    let aut = automorphism_group(&s4)?;
    println!("|Aut(S4)| = {}, |Out(S4)| = {}", aut.order(), aut.out_order());
    Ok(())
}

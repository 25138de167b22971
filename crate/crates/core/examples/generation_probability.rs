//! Probability that random elements normally generate a kernel, exactly and
//! by Monte Carlo, with the stable-subgroup extension map.

use pgl::groups::{normal_subgroups, quotient, symmetric};
use pgl::probgen::{monte_carlo_gen_probability, stable_lattice, stable_to_extension_map};

fn main() -> pgl::Result<()> {
    let s4 = symmetric(4)?;
    let v4 = normal_subgroups(&s4)?.into_iter().find(|n| n.order() == 4).expect("S4 has a normal V4");
    let (_, f) = quotient(&s4, &v4)?;
    let lattice = stable_lattice(&f)?;
    println!("maximal stable subgroups by index: {:?}", lattice.m_counts());
    for k in 1..=3 {
        let exact = lattice.exact_gen_probability(k);
        let mc = monte_carlo_gen_probability(&lattice, k, 20_000, 7)?;
        let pfr = lattice.pfr_sum_bound(k);
        println!(
            "k = {k}: exact {exact}, Monte Carlo {:.4} +- {:.4}, failure {} <= {} ({})",
            mc.estimate(),
            mc.stderr(),
            pfr.failure,
            pfr.bound,
            pfr.holds()
        );
    }
    let map = stable_to_extension_map(&lattice)?;
    println!("extension buckets (size, index): {:?}, multiplicity holds: {}", map.buckets, map.multiplicity_holds());
    Ok(())
}

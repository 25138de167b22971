//! Semidirect products S^{G/H} x| G, their stabilizer classes, and coupling
//! fibers for non-abelian minimal extensions.

use pgl::extensions::{coupling_fiber_bound_check, semidirect_eh, t_map};
use pgl::groups::{all_subgroups, alternating, cyclic, direct_product};

fn main() -> pgl::Result<()> {
    let v4 = direct_product(&cyclic(2)?, &cyclic(2)?)?;
    let s = alternating(5)?;
    for h in all_subgroups(&v4)?.into_iter().filter(|h| h.order() == 2) {
        let rec = semidirect_eh(&h, &s)?;
        let t = t_map(&rec)?;
        println!(
            "H of order 2: extension of order {} with minimal kernel {}; stabilizer key {:?}",
            rec.total.order(),
            rec.verify_minimal(),
            t.key()
        );
    }

    let c2 = cyclic(2)?;
    for k in 1..=2 {
        let fb = coupling_fiber_bound_check(&c2, &s, k)?;
        println!("C2 with A5^{k}: fibers {:?}, bound {}, holds: {}", fb.fibers, fb.bound, fb.holds());
    }
    Ok(())
}

//! Frobenius orbits of absolutely simple modules and their descent to F_p.

use pgl::groups::alternating;
use pgl::modrep::galois_orbits;

fn main() -> pgl::Result<()> {
    let a5 = alternating(5)?;
    let descent = galois_orbits(&a5, 2, 2)?;
    for level in &descent.levels {
        println!("over F_{}:", level.field.order());
        for orbit in &level.orbits {
            println!(
                "  orbit of {} module(s) of dim {} descends to an F_2-simple of dim {}",
                orbit.len(),
                orbit.member_dim,
                orbit.descent_dim
            );
        }
    }
    println!("dimension law holds: {}", descent.dimension_law_holds());
    Ok(())
}

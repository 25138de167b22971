//! Maximal left ideals of group algebras against simple-module counts.

use pgl::groups::{alternating, symmetric};
use pgl::probgen::{ideal_census, regular_generation_bound_check};

fn main() -> pgl::Result<()> {
    for (g, p) in [(symmetric(3)?, 2), (alternating(4)?, 3)] {
        let census = ideal_census(&g, p, 3)?;
        println!("{} over F_{p}:", census.group);
        for row in &census.rows {
            println!("  n = {}: r_n = {}, maximal left ideals of index p^n = {}", row.n, row.r, row.ideals);
        }
        println!("  sandwich holds: {}", census.sandwich_holds());
    }
    let s3 = symmetric(3)?;
    for k in 1..=3 {
        let b = regular_generation_bound_check(&s3, 2, k)?;
        println!("F_2[S3] generated by {k} random elements: {} >= {} ({})", b.probability, b.lower, b.holds());
    }
    Ok(())
}

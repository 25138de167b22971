//! Simple modules and representation growth counts r_n and r*_n.

use pgl::ffalg::FqField;
use pgl::groups::{alternating, symmetric};
use pgl::modrep::{r_counts, simple_modules};

fn main() -> pgl::Result<()> {
    let f2 = FqField::prime(2)?;
    let s3 = symmetric(3)?;
    let table = r_counts(&s3, &f2, 4)?;
    println!("S3 over F_2:");
    for row in &table.rows {
        println!("  n = {}: r = {}, r* = {}", row.n, row.r, row.r_star);
    }

    let a5 = alternating(5)?;
    println!("simple F_2[A5]-modules:");
    for s in simple_modules(&a5, &f2)? {
        println!(
            "  dim {} with endomorphism degree {} (absolutely simple: {})",
            s.module.dim(),
            s.endo_degree,
            s.abs_irred
        );
    }
    println!("2-regular classes of A5: {}", a5.p_regular_class_count(2));
    Ok(())
}

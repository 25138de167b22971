//! Second cohomology and abelian minimal extensions of S3.

use pgl::extensions::{abelian_minimal_extension_classes, h2, minimal_extension_count};
use pgl::ffalg::FqField;
use pgl::groups::{cyclic, symmetric};
use pgl::modrep::GModule;

fn main() -> pgl::Result<()> {
    let s3 = symmetric(3)?;
    let trivial = GModule::trivial(&s3, &FqField::prime(3)?, 1);
    println!("dim H^2(S3, F_3) = {}", h2(&trivial)?.h2_dim());

    for (p, k) in [(2, 1), (2, 2), (3, 1)] {
        let ext = abelian_minimal_extension_classes(&s3, p, k)?;
        println!(
            "S3 by F_{p}^{k}: r_k = {}, classes = {}, sum |H^2| = {}, chain holds: {}",
            ext.r_k(),
            ext.count(),
            ext.h2_sum(),
            ext.chain_holds()
        );
    }

    let c2 = cyclic(2)?;
    for n in 2..=8 {
        let count = minimal_extension_count(&c2, n)?;
        println!("C2, degree {n}: {} abelian, {} total", count.abelian, count.total());
    }
    Ok(())
}

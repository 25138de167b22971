//! Arithmetic in F_9, row reduction, and polynomial factorization over F_3.

use pgl::ffalg::poly::irreducible_factors;
use pgl::ffalg::{FqField, Matrix};

fn main() -> pgl::Result<()> {
    let f9 = FqField::new(3, 2)?;
    let g = f9.generator();
    println!("F_9 modulus (low degree first): {:?}", f9.modulus());
    println!("generator {g} has multiplicative order {}", f9.multiplicative_order(g));
    println!("g * g^-1 = {}", f9.mul(g, f9.inv(g)));
    println!("Frobenius g -> g^3 = {}", f9.frobenius(g, 1));

    let f3 = FqField::prime(3)?;
    let m = Matrix::from_rows(&f3, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]])?;
    let r = m.rref();
    println!("rank {} with pivots {:?}", r.rank, r.pivots);
    println!("nullspace basis {:?}", m.nullspace());

    let x4_minus_1 = vec![2, 0, 0, 0, 1];
    println!("irreducible factors of x^4 - 1 over F_3: {:?}", irreducible_factors(&f3, &x4_minus_1));
    Ok(())
}

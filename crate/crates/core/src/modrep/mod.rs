//! Modules over group algebras of finite groups over finite fields.

mod census;
mod checks;
mod galois;
pub mod meataxe;
mod module;

pub use census::{
    chop, is_irreducible, r_counts, simple_modules, CompositionFactor, GrowthRow, GrowthTable, SimpleRecord,
    CHOP_DIM_LIMIT, REGULAR_ORDER_LIMIT,
};
pub use checks::{
    faithful_irreducible_factor, product_convolution_check, restriction_rank_check, ConvolutionCheck, ConvolutionRow,
    RestrictionCheck,
};
pub use galois::{divisor_sum_check, galois_orbits, DivisorSum, GaloisDescent, GaloisLevel, GaloisOrbit};
pub use module::GModule;

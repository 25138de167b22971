//! Irreducible representations of free groups over prime fields at finite
//! scale: exact `GL_n` and parabolic orders, tuple censuses up to
//! simultaneous conjugation and the lower bounds they must satisfy.

mod bounds;
mod census;
mod orders;

pub use bounds::{c_p, free_bound_check, sylow_bound_check, FreeBound, SylowBound};
pub use census::{burnside_class_count, tuple_census, TupleCensus, TupleClass, GL_SCAN_LIMIT, TUPLE_BUDGET};
pub use orders::{
    decode_matrix, encode_matrix, exhaustive_gl_count, exhaustive_parabolic_count, gl_order, parabolic_order, GlSpec,
    EXHAUSTIVE_LIMIT,
};

#[cfg(test)]
mod tests;

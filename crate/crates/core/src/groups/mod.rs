//! Finite groups on explicit index sets, with subgroup, quotient,
//! homomorphism and automorphism machinery.

mod auto;
mod constructors;
mod group;
mod hom;
mod presentation;
mod subgroup;

pub use auto::{
    are_isomorphic, aut_of_power_structure, automorphism_group, find_isomorphism, AutomorphismGroup,
    PowerAutomorphisms, SimpleGroup, AUT_ORDER_LIMIT,
};
pub use constructors::{
    alternating, check_automorphism, cyclic, dihedral, direct_power, direct_product, power_coordinates, power_index,
    psl27, quaternion, semidirect, symmetric, trivial, wreath_with_sym, SemidirectProduct, Wreath,
};
pub use group::{FiniteGroup, GroupRef, MulFn, SchreierTree, MAX_ORDER, TABLE_LIMIT};
pub use hom::GroupHom;
pub use presentation::{coset_enumeration, free_reduce, Presentation, Word};
pub use subgroup::{
    all_subgroups, center, closure, derived_subgroup, generates, is_minimal_normal, is_simple, min_generators,
    minimal_normal_subgroups, normal_closure, normal_subgroups, quotient, random_generating_tuple, subgroups_of,
    subgroups_of_index, IndexCensus, Subgroup,
};

#[cfg(test)]
mod tests;

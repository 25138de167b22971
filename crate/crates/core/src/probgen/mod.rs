//! Normal generation of kernels of finite surjections: stable-subgroup
//! lattices, exact and sampled generation probabilities, the extensions
//! attached to maximal stable subgroups, and maximal ideals of group
//! algebras.

mod extmap;
mod ideals;
mod lattice;
mod sampling;

pub use extmap::{stable_to_extension_map, ExtensionMap, StableExtension};
pub use ideals::{
    ideal_census, module_gen_probability, regular_generation_bound_check, submodules, IdealCensus, IdealRow,
    RegularGenerationBound, IDEAL_ORDER_LIMIT, MODULE_DIM_LIMIT, MODULE_SIZE_LIMIT, SUBMODULE_LIMIT,
};
pub use lattice::{stable_lattice, PfrSumBound, StableLattice, EXHAUSTIVE_TUPLE_LIMIT, KERNEL_ORDER_LIMIT};
pub use sampling::{monte_carlo_gen_probability, McSummary, MonteCarlo, ProbabilityReport, SurjectionLabel, MC_STREAMS};

#[cfg(test)]
mod tests;

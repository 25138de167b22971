//! Minimal extensions of finite groups: abelian kernels through `H²`,
//! non-abelian kernels `S^k` through couplings and the `E_H` construction.

mod abelian;
mod checks;
mod cohomology;
mod nonabelian;
mod record;

pub use abelian::{
    abelian_minimal_extension_classes, abelian_minimal_extensions, presentation_bound_check, AbelianExtensions,
    ModuleClasses, PresentationBound, CLASS_ENUMERATION_LIMIT,
};
pub use checks::{
    generation_bound_check, minimal_extension_count, semidirect_product_generators_check, CensusRecord,
    ExtensionCensus, GenerationBound, MinimalCount, SemidirectGeneration,
};
pub use cohomology::{h2, is_cocycle, Cocycle, CocycleSpace, H2_DIM_LIMIT, H2_GROUP_LIMIT};
pub use nonabelian::{
    coupling_class_key, coupling_fiber_bound_check, coupling_of, enumerate_couplings, extension_from_coupling,
    kernel_factors, nonabelian_minimal_extension_count, semidirect_eh, t_map, transitive_coupling_classes, Coupling,
    FiberBound, TClass, COUPLING_ENUMERATION_LIMIT, COUPLING_ORDER_LIMIT, EH_ORDER_LIMIT,
};
pub use record::{
    complement_exists, extension_from_cocycle, extensions_isomorphic, ExtensionRecord, IsoVerdict, KernelShape,
    ISO_SEARCH_LIMIT,
};

#[cfg(test)]
mod tests;

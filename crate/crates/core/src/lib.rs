//! Finite Garside structures: germs of simple elements, left normal forms,
//! quasi-central elements, Zappa–Szép decompositions `K = G ⋊⋉ H` and
//! automata recognizing normal-form languages.

pub mod automata;
pub mod builtins;
pub mod checks;
pub mod element;
pub mod germ;
pub mod normal_forms;
pub mod quasicenter;
pub mod zappa_szep;

pub use builtins::{
    braid_germ, direct_product_germ, free_abelian_germ, wreath_example_germ, GermSpec,
};
pub use element::{Element, NormalWord, WordError};
pub use germ::{parse_germ, Germ, GermError, RawGerm, SimpleId, ValidationReport};
pub use quasicenter::AtomClassPartition;
pub use zappa_szep::{Side, ZsError, ZsStructure};

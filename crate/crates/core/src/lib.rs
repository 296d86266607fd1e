//! Quiver mutation core: exchange-matrix quivers, canonical labeling,
//! standard seeds, mutation-class enumeration and the class registry.

pub mod canon;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod graph_rule;
pub mod quiver;
pub mod registry;
pub mod seed;

pub use canon::{are_isomorphic, canonical_form, canonical_key, canonicalize, CanonicalKey};
pub use enumerate::{enumerate_class, EnumLimits, Membership, MutationClass, Truncation};
pub use error::QuiverError;
pub use quiver::Quiver;
pub use registry::{build_registry, ClassRegistry, RegistryConfig, RegistryEntry};
pub use seed::{seed, seed_orientations, Family, SeedSpec};

pub mod derived;
pub mod prop21;
pub mod resolution;

pub use derived::{
    big_support, decompose, derived_tensor_homology, small_support, small_support_module, small_support_with,
    std_module, tor_with_residue, Degrees, SupportReport, SupportVerdict, DEFAULT_RESOLUTION_LENGTH,
};
pub use prop21::{check_prop21_equivalence, check_prop21_inclusion, term_ass, EquivalenceReport, InclusionReport};
pub use resolution::{free_resolution, FreeResolution};

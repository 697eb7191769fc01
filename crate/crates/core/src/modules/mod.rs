//! Modules over `R = Z[x]/(x²)`: finitely presented modules, the standard
//! injective hulls, countable products with formulaic elements, and their
//! annihilators, associated primes and Matlis duals.

pub mod ass;
pub mod desc;
pub mod fg;
pub mod injective;
pub mod product;
pub mod rmatrix;

pub use ass::{ann_element, ass_membership, is_torsion, AssVerdict, TorsionVerdict};
pub use desc::{matlis_dual_homology, DualComplex, DualTarget, ModuleDesc, Summand};
pub use fg::{ass_fg, ass_fg_witnessed, FgComplex, FgModule, Fingerprint, Structure};
pub use injective::{
    prufer_annihilator, unit_action_bijective, unit_action_socle_certificate, EElt, Element, LengthVerdict,
    MModule, MinElt, Socle, StdInjective,
};
pub use product::{
    GeoTail, ProductFactor, ProductModule, SeqElt, SlotConstraint, SubProductConstraint, TailTerm,
};
pub use rmatrix::{free_x_action, RMatrix};

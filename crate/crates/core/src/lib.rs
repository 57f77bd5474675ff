//! Mod-p cohomology of the compact exceptional Lie groups as finite
//! graded-commutative algebras with Steenrod actions, together with the
//! bar/cobar machinery and the category-weight bounds built on top of them.

pub mod algebra;
pub mod catalog;
pub mod coalgebra;
pub mod complex;
pub mod error;
pub mod fp;
pub mod invariants;
pub mod matrix;
pub mod schema;
pub mod spectral;
pub mod steenrod;

pub use algebra::{AlgebraPresentation, Element, GeneratorSpec, Height, Monomial};
pub use catalog::{CatalogEntry, Group};
pub use coalgebra::{CoalgebraPresentation, CofactorKind, CofactorSpec};
pub use complex::{bar_homology, cobar_homology, collapse_check, compare_dims, BigradedDims, HomologyReport};
pub use error::Error;
pub use fp::{FpScalar, Prime};
pub use invariants::{
    cup_length, find_witness_candidates, mwgt_lower, verify_witness, wgt, InvariantReport, MwgtOptions, StrictContext,
    VerifyOptions, WitnessCertificate, ZClass, ZRelation,
};
pub use matrix::FpMatrix;
pub use spectral::{apply_differentials, check_differential, e_infinity_dims, DifferentialSpec};
pub use steenrod::{ActionResult, ActionTable, ActionValue, BasicOp, Slot};

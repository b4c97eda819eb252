//! Wide subcategories, τ-tilting reduction and the category of wide subcategories
//! of a representation-finite quiver algebra, computed with exact arithmetic.

pub mod algebra;
pub mod arquiver;
pub mod cache;
pub mod catalog;
pub mod error;
pub mod exceptional;
pub mod field;
pub mod homological;
pub mod linalg;
pub mod module;
pub mod presentation;
pub mod reduction;
pub mod tau_rigid;
pub mod verify;
pub mod wide_category;

pub use algebra::{Algebra, Path};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use linalg::Matrix;
pub use module::{decompose, hom_basis, is_isomorphic, IsoClassRegistry, Module, Morphism};
pub use presentation::{parse_presentation, Presentation};
pub use arquiver::{almost_split_sequence, ar_quiver, enumerate_indecomposables, AlmostSplitSequence, ArQuiver, DEFAULT_BUDGET};
pub use cache::{Cache, CacheOutcome};
pub use catalog::Catalog;
pub use exceptional::{factorizations, phi, phi_inverse, Factorization};
pub use homological::{ar_translate, ar_translate_inverse, ext1_dim, minimal_projective_presentation, TwoTermComplex};
pub use reduction::{Obj, Reducer, Summand, WideSubcategory};
pub use tau_rigid::CObject;
pub use verify::{run_verify, VerificationReport, SUITES};
pub use wide_category::{WideCategory, WideMorphism};

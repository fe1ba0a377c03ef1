//! Exact computations with A∞-algebras, A∞-bimodules, their morphisms and
//! ∞-inner-products on finite graded modules, plus the complex of
//! inner-product diagrams.

pub mod bar;
pub mod diagram;
pub mod basis;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod linalg;
pub mod multimap;
pub mod random;
pub mod report;
pub mod scalar;
pub mod structures;
pub mod word;

pub use diagram::{Diagram, FaceComplex, Tree};
pub use basis::{GradedBasis, Letter, Vector};
pub use error::{Error, Result};
pub use multimap::{koszul_sign, tensor_apply, Direction, Factor, MultiMap, Signature};
pub use report::{Check, Counterexample, Formulation, Report, Verdict};
pub use scalar::{Field, Scalar};
pub use structures::{
    check_ainfinity, check_bimodule, check_bimodule_map, check_inner_product, AInfinityAlgebra, AInfinityBimodule,
    BimoduleMorphism, InfinityInnerProduct, Pairing,
};
pub use word::{BarSpace, Combination, FormalSum, TensorSum, TripleSum, Word};

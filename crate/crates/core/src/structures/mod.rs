//! A∞-algebras, bimodules, bimodule maps and ∞-inner-products, each checked
//! both through its sign-explicit relation system and on the bar side.

mod algebra;
mod bimodule;
pub mod cache;
mod hochschild;
mod inner_product;
mod morphism;
pub mod relations;

pub use algebra::{check_ainfinity, from_dga, AInfinityAlgebra};
pub use bimodule::{check_bimodule, dual_bimodule, dual_self_bimodule, from_dg_bimodule, self_bimodule, AInfinityBimodule};
pub use hochschild::{hochschild_differential, pushforward, Coefficients};
pub use inner_product::{check_inner_product, InfinityInnerProduct, Pairing};
pub use morphism::{check_bimodule_map, from_dg_bimodule_map, identity_morphism, BimoduleMorphism};

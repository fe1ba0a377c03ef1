use crate::bar::{project_components, CoderivationView, ViewKind};
use crate::error::{Error, Result};
use crate::word::{BarSpace, FormalSum, Word};

use super::algebra::AInfinityAlgebra;
use super::bimodule::AInfinityBimodule;
use super::cache::morphism_is_valid;
use super::morphism::BimoduleMorphism;

/// Where Hochschild cochains take values.
#[derive(Debug, Clone, Copy)]
pub enum Coefficients<'a> {
    /// Coderivations of `TA`.
    Algebra(&'a AInfinityAlgebra),
    /// Coderivations `TA → T^M A`.
    Bimodule(&'a AInfinityBimodule),
}

fn same_space(a: &BarSpace, b: &BarSpace) -> bool {
    a.shift == b.shift && *a.base == *b.base && a.marked.as_deref() == b.marked.as_deref()
}

/// `δ(f) = D∘f − (−1)^{|f|} f∘D` (with `D^M` in front for bimodule
/// coefficients), returned by its components of arity `≤ max_arity`.
pub fn hochschild_differential(
    coefficients: Coefficients<'_>,
    cochain: &CoderivationView,
    max_arity: usize,
) -> Result<CoderivationView> {
    let (kind, d_front, d_back) = match coefficients {
        Coefficients::Algebra(a) => (ViewKind::OnTv, a.bar_differential(), a.bar_differential()),
        Coefficients::Bimodule(b) => (ViewKind::IntoMarked, b.bar_differential(), b.algebra().bar_differential()),
    };
    if cochain.kind() != kind || !same_space(cochain.space(), d_front.space()) {
        return Err(Error::Signature(format!(
            "a {:?} cochain does not take values in these coefficients",
            cochain.kind()
        )));
    }
    let sign = cochain.field().sign(cochain.degree());
    let op = |w: &Word| -> FormalSum {
        let a = cochain.apply(w).map_linear(|u| d_front.apply(u));
        let b = d_back.apply(w).map_linear(|u| cochain.apply(u));
        a.sub(&b.scaled(&sign))
    };
    let template = CoderivationView::new(
        kind,
        cochain.space().clone(),
        None,
        cochain.degree() - 1,
        cochain.field(),
        Vec::new(),
        Vec::new(),
    )?;
    Ok(project_components(&op, &template, max_arity)?.pruned())
}

/// `F^♯(f) = F∘f`: pushes a cochain with values in the source bimodule to
/// one with values in the target. The morphism must pass its checks.
pub fn pushforward(mor: &BimoduleMorphism, cochain: &CoderivationView, max_arity: usize) -> Result<CoderivationView> {
    if cochain.kind() != ViewKind::IntoMarked || !same_space(cochain.space(), &mor.source().bar_space()) {
        return Err(Error::Signature(
            "pushforward needs a cochain with values in the source bimodule".into(),
        ));
    }
    if !morphism_is_valid(mor) {
        return Err(Error::Invalid(format!("{} is not a valid bimodule map", mor.name())));
    }
    let f = mor.bar_map();
    let op = |w: &Word| cochain.apply(w).map_linear(|u| f.apply(u));
    let template = CoderivationView::new(
        ViewKind::IntoMarked,
        mor.target().bar_space(),
        None,
        cochain.degree(),
        cochain.field(),
        Vec::new(),
        Vec::new(),
    )?;
    Ok(project_components(&op, &template, max_arity)?.pruned())
}

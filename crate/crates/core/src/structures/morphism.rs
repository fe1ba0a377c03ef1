use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bar::{check_coderivation_identity, CoderivationView, TruncationPolicy, ViewKind};
use crate::basis::{GradedBasis, Vector};
use crate::error::{Error, Result};
use crate::multimap::{MultiMap, Signature};
use crate::report::Report;
use crate::scalar::Field;
use crate::word::{BarSpace, FormalSum, Word};

use super::bimodule::{suspend_family, validate_marked_family, AInfinityBimodule};
use super::relations::{block_sum, stasheff_exponent, BlockTerm, DualRun, RelationValue};

/// A morphism of A∞-bimodules `M → N` over the same algebra: components
/// `f_{k,l}: A^{⊗k} ⊗ M ⊗ A^{⊗l} → N` of degree `k + l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BimoduleMorphism {
    name: String,
    source: Arc<AInfinityBimodule>,
    target: Arc<AInfinityBimodule>,
    components: BTreeMap<(usize, usize), MultiMap>,
    suspended: BTreeMap<(usize, usize), MultiMap>,
}

impl BimoduleMorphism {
    pub fn new(
        name: impl Into<String>,
        source: Arc<AInfinityBimodule>,
        target: Arc<AInfinityBimodule>,
        components: impl IntoIterator<Item = MultiMap>,
    ) -> Result<Self> {
        let name = name.into();
        if source.algebra() != target.algebra() {
            return Err(Error::Signature(format!(
                "{name}: source and target are bimodules over different algebras"
            )));
        }
        let components = validate_marked_family(
            &name,
            source.algebra(),
            source.basis(),
            target.basis(),
            0,
            components,
        )?;
        let suspended = suspend_family(&components, "F")?;
        Ok(BimoduleMorphism {
            name,
            source,
            target,
            components,
            suspended,
        })
    }

    /// An empty table for `f_{k,l}` with the right grading.
    pub fn empty_component(source: &AInfinityBimodule, target: &GradedBasis, k: usize, l: usize) -> MultiMap {
        MultiMap::new(
            format!("f_{k}_{l}"),
            Signature::marked(k, l),
            (k + l) as i64,
            false,
            source.field(),
            source.algebra().basis().clone(),
            Some(source.basis().clone()),
            Arc::new(target.clone()),
        )
        .expect("marked signature with a module basis")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<AInfinityBimodule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AInfinityBimodule> {
        &self.target
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn component(&self, k: usize, l: usize) -> Option<&MultiMap> {
        self.components.get(&(k, l))
    }

    pub fn components(&self) -> impl Iterator<Item = &MultiMap> + '_ {
        self.components.values()
    }

    pub fn max_arity(&self) -> usize {
        self.components
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(&(k, l), _)| k + l + 1)
            .max()
            .unwrap_or(1)
            .max(self.source.max_arity())
            .max(self.target.max_arity())
    }

    pub fn default_policy(&self) -> TruncationPolicy {
        TruncationPolicy::for_max_arity(self.max_arity())
    }

    /// The lifted comodule map `F: B^M A → B^N A`.
    pub fn bar_map(&self) -> CoderivationView {
        CoderivationView::new(
            ViewKind::ComoduleMorphism,
            self.source.bar_space(),
            Some(self.target.basis().clone()),
            0,
            self.field(),
            Vec::new(),
            self.suspended.values().cloned().collect(),
        )
        .expect("components are validated at construction")
    }

    /// `Σ ± f(…, m or b, …)` and `Σ ± c(…, f(…), …)` on a marked tuple.
    pub fn relation(&self, w: &Word) -> RelationValue {
        let n = w.len();
        let degrees = BarSpace::unsuspended(self.source.algebra().basis().clone(), Some(self.source.basis().clone()))
            .degrees(w);
        let mark = w.mark().expect("marked tuple");
        let mut left = Vec::new();
        let mut right = Vec::new();
        for len in 1..=n {
            for start in 0..=n - len {
                if let Some(inner) = self.source.inner_for(w, start, len) {
                    left.push(BlockTerm {
                        start,
                        inner,
                        exponent: stasheff_exponent(&degrees, start + 1, len),
                    });
                }
                if w.block_has_mark(start, len) {
                    if let Some(inner) = self.components.get(&(mark - start, start + len - 1 - mark)) {
                        let prefix: i64 = degrees[..start].iter().sum();
                        right.push(BlockTerm {
                            start,
                            inner,
                            exponent: (len as i64 + 1) * (start as i64 + 2 + prefix),
                        });
                    }
                }
            }
        }
        let field = self.field();
        let (lhs, a1) = block_sum(field, w, left, |c| c.mark_split().and_then(|kl| self.components.get(&kl)));
        let (rhs, a2) = block_sum(field, w, right, |c| self.target.outer_for(c));
        RelationValue {
            lhs,
            rhs,
            active: a1 || a2,
        }
    }

    pub(crate) fn admissible(&self, w: &Word) -> bool {
        let total: i64 = BarSpace::unsuspended(self.source.algebra().basis().clone(), Some(self.source.basis().clone()))
            .degree(w);
        self.target.basis().has_degree(total + w.len() as i64 - 2)
    }

    /// `F∘D^M − D^N∘F` on a marked word.
    pub fn bar_defect(&self, w: &Word) -> FormalSum {
        let f = self.bar_map();
        let dm = self.source.bar_differential();
        let dn = self.target.bar_differential();
        let a = dm.apply(w).map_linear(|u| f.apply(u));
        let b = f.apply(w).map_linear(|u| dn.apply(u));
        a.sub(&b)
    }
}

/// Checks the morphism relations, `F∘D^M = D^N∘F` on marked words, and the
/// comodule-map square of `F`.
pub fn check_bimodule_map(mor: &BimoduleMorphism, policy: Option<TruncationPolicy>) -> Report {
    let policy = policy.unwrap_or_else(|| mor.default_policy());
    let space = mor.source.bar_space();
    let out_space = mor.target.bar_space();
    let plain = BarSpace::unsuspended(mor.source.algebra().basis().clone(), Some(mor.source.basis().clone()));
    let words = space.words_up_to(policy.max_word_length, true, false);
    let relation = |w: &Word| mor.admissible(w).then(|| mor.relation(w));
    let bar = |w: &Word| mor.bar_defect(w);
    let out = DualRun {
        relation_name: "morphism relations",
        bar_name: "F∘D^M = D^N∘F",
        words: words.clone(),
        input_space: &plain,
        output_space: &out_space,
        relation_target: mor.target.basis(),
        relation: &relation,
        bar: &bar,
    }
    .run();
    let square = check_coderivation_identity(&mor.bar_map(), &words);
    Report::new(
        format!("bimodule map {} (words up to length {})", mor.name, policy.max_word_length),
        vec![out.relations, out.bar, square],
        Some(out.agreement),
    )
}

/// Bundles a map of differential graded bimodules: `f_{0,0} = f`, nothing
/// higher.
pub fn from_dg_bimodule_map(
    name: impl Into<String>,
    source: Arc<AInfinityBimodule>,
    target: Arc<AInfinityBimodule>,
    f: MultiMap,
) -> Result<BimoduleMorphism> {
    if f.signature() != Signature::marked(0, 0) || f.degree() != 0 {
        return Err(Error::Degree {
            context: format!("{}: DG bimodule map", f.name()),
            expected: 0,
            found: f.degree(),
        });
    }
    BimoduleMorphism::new(name, source, target, [f.with_name("f_0_0")])
}

/// The identity morphism `f_{0,0} = id`.
pub fn identity_morphism(bim: &Arc<AInfinityBimodule>) -> BimoduleMorphism {
    let mut f = BimoduleMorphism::empty_component(bim, bim.basis(), 0, 0);
    for x in bim.basis().letters() {
        f.insert(vec![x], Vector::basis_element(x, bim.field()))
            .expect("degree zero");
    }
    BimoduleMorphism::new("id", bim.clone(), bim.clone(), [f]).expect("valid by construction")
}

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bar::{check_coderivation_identity, CoderivationView, TruncationPolicy, ViewKind};
use crate::basis::{GradedBasis, Letter, Vector};
use crate::error::{Error, Result};
use crate::multimap::{Direction, MultiMap, Signature};
use crate::report::Report;
use crate::scalar::Field;
use crate::word::{BarSpace, FormalSum, Word};

use super::algebra::AInfinityAlgebra;
use super::relations::{block_sum, stasheff_exponent, BlockTerm, DualRun, RelationValue};

/// An A∞-bimodule over an A∞-algebra: operations
/// `b_{k,l}: A^{⊗k} ⊗ M ⊗ A^{⊗l} → M` of degree `k + l − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AInfinityBimodule {
    name: String,
    algebra: Arc<AInfinityAlgebra>,
    basis: Arc<GradedBasis>,
    components: BTreeMap<(usize, usize), MultiMap>,
    suspended: BTreeMap<(usize, usize), MultiMap>,
}

pub(crate) fn validate_marked_family(
    what: &str,
    algebra: &AInfinityAlgebra,
    module: &GradedBasis,
    target: &GradedBasis,
    degree_offset: i64,
    components: impl IntoIterator<Item = MultiMap>,
) -> Result<BTreeMap<(usize, usize), MultiMap>> {
    let mut out = BTreeMap::new();
    for c in components {
        let Signature::Marked { k, l } = c.signature() else {
            return Err(Error::Signature(format!("{}: {} is not a (k,l) operation", c.name(), c.signature())));
        };
        if c.is_suspended() {
            return Err(Error::Signature(format!("{}: expected an unsuspended table", c.name())));
        }
        let expected = (k + l) as i64 + degree_offset;
        if c.degree() != expected {
            return Err(Error::Degree {
                context: format!("component {} of {what}", c.name()),
                expected,
                found: c.degree(),
            });
        }
        if **c.source() != **algebra.basis()
            || c.marked_basis().map(|b| &**b) != Some(module)
            || **c.target() != *target
            || c.field() != algebra.field()
        {
            return Err(Error::Signature(format!("{}: wrong basis or field", c.name())));
        }
        if out.insert((k, l), c).is_some() {
            return Err(Error::Invalid(format!("{what}: component ({k},{l}) given twice")));
        }
    }
    Ok(out)
}

pub(crate) fn suspend_family(
    family: &BTreeMap<(usize, usize), MultiMap>,
    prefix: &str,
) -> Result<BTreeMap<(usize, usize), MultiMap>> {
    family
        .iter()
        .map(|(&(k, l), m)| {
            Ok((
                (k, l),
                m.suspend_conjugate(Direction::ToSuspended)?
                    .with_name(format!("{prefix}_{k}_{l}")),
            ))
        })
        .collect()
}

impl AInfinityBimodule {
    pub fn new(
        name: impl Into<String>,
        algebra: Arc<AInfinityAlgebra>,
        basis: Arc<GradedBasis>,
        components: impl IntoIterator<Item = MultiMap>,
    ) -> Result<Self> {
        let name = name.into();
        let components = validate_marked_family(&name, &algebra, &basis, &basis, -1, components)?;
        let suspended = suspend_family(&components, "DM")?;
        Ok(AInfinityBimodule {
            name,
            algebra,
            basis,
            components,
            suspended,
        })
    }

    /// An empty table for `b_{k,l}` with the right grading.
    pub fn empty_operation(algebra: &AInfinityAlgebra, module: &Arc<GradedBasis>, k: usize, l: usize) -> MultiMap {
        MultiMap::new(
            format!("b_{k}_{l}"),
            Signature::marked(k, l),
            (k + l) as i64 - 1,
            false,
            algebra.field(),
            algebra.basis().clone(),
            Some(module.clone()),
            module.clone(),
        )
        .expect("marked signature with a module basis")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<AInfinityAlgebra> {
        &self.algebra
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn operation(&self, k: usize, l: usize) -> Option<&MultiMap> {
        self.components.get(&(k, l))
    }

    pub fn operations(&self) -> impl Iterator<Item = &MultiMap> + '_ {
        self.components.values()
    }

    pub fn max_arity(&self) -> usize {
        self.components
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(&(k, l), _)| k + l + 1)
            .max()
            .unwrap_or(1)
            .max(self.algebra.max_arity())
    }

    pub fn default_policy(&self) -> TruncationPolicy {
        TruncationPolicy::for_max_arity(self.max_arity())
    }

    pub fn bar_space(&self) -> BarSpace {
        BarSpace::suspended(self.algebra.basis().clone(), Some(self.basis.clone()))
    }

    /// `D^M` on the marked bar construction, together with `D` on `TA`.
    pub fn bar_differential(&self) -> CoderivationView {
        CoderivationView::new(
            ViewKind::ModuleDifferential,
            self.bar_space(),
            None,
            -1,
            self.field(),
            self.algebra.bar_components().cloned().collect(),
            self.suspended.values().cloned().collect(),
        )
        .expect("components are validated at construction")
    }

    /// Inner operation for a block of a marked tuple: `b` if the block holds
    /// the mark, `m` otherwise.
    pub(crate) fn inner_for(&self, w: &Word, start: usize, len: usize) -> Option<&MultiMap> {
        let mark = w.mark().expect("marked tuple");
        if w.block_has_mark(start, len) {
            self.components.get(&(mark - start, start + len - 1 - mark))
        } else {
            self.algebra.operation(len)
        }
    }

    pub(crate) fn outer_for(&self, w: &Word) -> Option<&MultiMap> {
        let (k, l) = w.mark_split()?;
        self.components.get(&(k, l))
    }

    /// Unsuspended degrees of the entries of a marked tuple.
    pub(crate) fn degrees(&self, w: &Word) -> Vec<i64> {
        BarSpace::unsuspended(self.algebra.basis().clone(), Some(self.basis.clone())).degrees(w)
    }

    /// `Σ ± b(…, m_i(…), …) + Σ ± b(…, b(…, m, …), …)` on a marked tuple.
    pub fn relation(&self, w: &Word) -> RelationValue {
        let n = w.len();
        let degrees = self.degrees(w);
        let mut terms = Vec::new();
        for len in 1..=n {
            for start in 0..=n - len {
                if let Some(inner) = self.inner_for(w, start, len) {
                    terms.push(BlockTerm {
                        start,
                        inner,
                        exponent: stasheff_exponent(&degrees, start + 1, len),
                    });
                }
            }
        }
        let (lhs, active) = block_sum(self.field(), w, terms, |c| self.outer_for(c));
        RelationValue {
            lhs,
            rhs: Vector::zero(),
            active,
        }
    }

    pub(crate) fn admissible(&self, w: &Word) -> bool {
        let total: i64 = self.degrees(w).iter().sum();
        self.basis.has_degree(total + w.len() as i64 - 3)
    }

    pub fn bar_square(&self, w: &Word) -> FormalSum {
        let d = self.bar_differential();
        d.apply(w).map_linear(|u| d.apply(u))
    }
}

/// Checks the bimodule relations, `(D^M)² = 0` on marked words, and the
/// co-Leibniz square of `D^M` over `D`.
pub fn check_bimodule(bim: &AInfinityBimodule, policy: Option<TruncationPolicy>) -> Report {
    let policy = policy.unwrap_or_else(|| bim.default_policy());
    let space = bim.bar_space();
    let plain = BarSpace::unsuspended(bim.algebra.basis().clone(), Some(bim.basis.clone()));
    let words = space.words_up_to(policy.max_word_length, true, false);
    let relation = |w: &Word| bim.admissible(w).then(|| bim.relation(w));
    let bar = |w: &Word| bim.bar_square(w);
    let out = DualRun {
        relation_name: "bimodule relations",
        bar_name: "(D^M)² = 0",
        words: words.clone(),
        input_space: &plain,
        output_space: &space,
        relation_target: &bim.basis,
        relation: &relation,
        bar: &bar,
    }
    .run();
    let view = bim.bar_differential();
    let square = check_coderivation_identity(&view, &view.test_words(policy.max_word_length));
    Report::new(
        format!("A∞-bimodule {} (words up to length {})", bim.name, policy.max_word_length),
        vec![out.relations, out.bar, square],
        Some(out.agreement),
    )
}

/// Bundles a differential graded bimodule: `b_{0,0} = ∂′`, `b_{1,0} = λ`,
/// `b_{0,1} = ρ`, nothing higher.
pub fn from_dg_bimodule(
    name: impl Into<String>,
    algebra: Arc<AInfinityAlgebra>,
    basis: Arc<GradedBasis>,
    differential: MultiMap,
    left: MultiMap,
    right: MultiMap,
) -> Result<AInfinityBimodule> {
    for (m, k, l) in [(&differential, 0, 0), (&left, 1, 0), (&right, 0, 1)] {
        if m.signature() != Signature::marked(k, l) {
            return Err(Error::Signature(format!(
                "{}: expected shape ({k},{l}), found {}",
                m.name(),
                m.signature()
            )));
        }
    }
    AInfinityBimodule::new(
        name,
        algebra,
        basis,
        [
            differential.with_name("b_0_0"),
            left.with_name("b_1_0"),
            right.with_name("b_0_1"),
        ],
    )
}

/// `A` as a bimodule over itself: `b_{k,l} = m_{k+l+1}`.
pub fn self_bimodule(alg: &Arc<AInfinityAlgebra>) -> AInfinityBimodule {
    let basis = alg.basis().clone();
    let mut comps = Vec::new();
    for m in alg.operations() {
        let n = m.arity();
        for k in 0..n {
            let l = n - 1 - k;
            let mut b = AInfinityBimodule::empty_operation(alg, &basis, k, l);
            for (inputs, v) in m.entries() {
                b.insert(inputs.to_vec(), v.clone()).expect("same grading");
            }
            comps.push(b);
        }
    }
    AInfinityBimodule::new(format!("{}-self", alg.name()), alg.clone(), basis, comps).expect("valid by construction")
}

/// The dual bimodule on `M*` (graded by negation):
/// `b′_{k,l}(a_1..a_k, φ, a_{k+1}..a_{k+l})(m) =
/// (−1)^ε φ(b_{l,k}(a_{k+1}..a_{k+l}, m, a_1..a_k))` with
/// `ε = (Σ_{i≤k}|a_i|)(|φ| + Σ_{i>k}|a_i| + |m|) + |φ|(k+l+1)`.
pub fn dual_bimodule(bim: &AInfinityBimodule) -> AInfinityBimodule {
    let alg = bim.algebra();
    let a = alg.basis();
    let m_basis = bim.basis();
    let dual = m_basis.dual();
    let field = bim.field();
    let mut comps: BTreeMap<(usize, usize), MultiMap> = BTreeMap::new();
    for (&(l, k), b) in &bim.components {
        // b = b_{l,k}: inputs (c_1..c_l, m, d_1..d_k); dual component is (k,l).
        let target = comps
            .entry((k, l))
            .or_insert_with(|| AInfinityBimodule::empty_operation(alg, &dual, k, l));
        for (inputs, value) in b.entries() {
            let c = &inputs[..l];
            let m = inputs[l];
            let d = &inputs[l + 1..];
            let sum_d: i64 = d.iter().map(|&x| a.degree(x)).sum();
            let sum_c: i64 = c.iter().map(|&x| a.degree(x)).sum();
            for (q, coeff) in value.iter() {
                let phi_deg = dual.degree(q);
                let eps = sum_d * (phi_deg + sum_c + m_basis.degree(m)) + phi_deg * (k + l + 1) as i64;
                let mut new_inputs: Vec<Letter> = d.to_vec();
                new_inputs.push(q);
                new_inputs.extend_from_slice(c);
                target
                    .insert(new_inputs, Vector::term(m, coeff * &field.sign(eps)))
                    .expect("dual grading is homogeneous");
            }
        }
    }
    AInfinityBimodule::new(format!("{}*", bim.name()), alg.clone(), dual, comps.into_values())
        .expect("valid by construction")
}

/// `A*` with the dual of the canonical bimodule structure on `A`.
pub fn dual_self_bimodule(alg: &Arc<AInfinityAlgebra>) -> AInfinityBimodule {
    dual_bimodule(&self_bimodule(alg))
}

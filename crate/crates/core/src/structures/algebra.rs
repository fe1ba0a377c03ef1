use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bar::{CoderivationView, TruncationPolicy, ViewKind};
use crate::basis::{GradedBasis, Letter};
use crate::error::{Error, Result};
use crate::multimap::{Direction, MultiMap, Signature};
use crate::report::Report;
use crate::scalar::Field;
use crate::word::{BarSpace, FormalSum, Word};

use super::relations::{block_sum, stasheff_exponent, BlockTerm, DualRun, RelationValue};

/// An A∞-algebra: a graded basis with operations `m_i` of degree `i − 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AInfinityAlgebra {
    name: String,
    field: Field,
    basis: Arc<GradedBasis>,
    components: BTreeMap<usize, MultiMap>,
    suspended: BTreeMap<usize, MultiMap>,
}

impl AInfinityAlgebra {
    pub fn new(
        name: impl Into<String>,
        field: Field,
        basis: Arc<GradedBasis>,
        components: impl IntoIterator<Item = MultiMap>,
    ) -> Result<Self> {
        let name = name.into();
        let mut comps = BTreeMap::new();
        for m in components {
            let i = match m.signature() {
                Signature::Plain {
                    arity,
                    into_marked: false,
                } => arity,
                s => return Err(Error::Signature(format!("{}: {s} is not an algebra operation", m.name()))),
            };
            if m.is_suspended() {
                return Err(Error::Signature(format!("{}: expected an unsuspended table", m.name())));
            }
            if m.degree() != i as i64 - 2 {
                return Err(Error::Degree {
                    context: format!("operation {} of {name}", m.name()),
                    expected: i as i64 - 2,
                    found: m.degree(),
                });
            }
            if **m.source() != *basis || **m.target() != *basis || m.field() != field {
                return Err(Error::Signature(format!("{}: wrong basis or field", m.name())));
            }
            if comps.insert(i, m).is_some() {
                return Err(Error::Invalid(format!("{name}: operation m{i} given twice")));
            }
        }
        let suspended = comps
            .iter()
            .map(|(&i, m)| Ok((i, m.suspend_conjugate(Direction::ToSuspended)?.with_name(format!("D{i}")))))
            .collect::<Result<_>>()?;
        Ok(AInfinityAlgebra {
            name,
            field,
            basis,
            components: comps,
            suspended,
        })
    }

    /// An empty table for `m_i` with the right grading.
    pub fn empty_operation(field: Field, basis: &Arc<GradedBasis>, i: usize) -> MultiMap {
        MultiMap::new(
            format!("m{i}"),
            Signature::plain(i),
            i as i64 - 2,
            false,
            field,
            basis.clone(),
            None,
            basis.clone(),
        )
        .expect("arity is positive")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn operation(&self, i: usize) -> Option<&MultiMap> {
        self.components.get(&i)
    }

    pub fn operations(&self) -> impl Iterator<Item = &MultiMap> + '_ {
        self.components.values()
    }

    /// The suspended components `D_i`.
    pub fn bar_components(&self) -> impl Iterator<Item = &MultiMap> + '_ {
        self.suspended.values()
    }

    pub fn max_arity(&self) -> usize {
        self.components
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(&i, _)| i)
            .max()
            .unwrap_or(1)
    }

    pub fn bar_space(&self) -> BarSpace {
        BarSpace::suspended(self.basis.clone(), None)
    }

    /// The bar differential `D` as a coderivation view.
    pub fn bar_differential(&self) -> CoderivationView {
        CoderivationView::new(
            ViewKind::OnTv,
            self.bar_space(),
            None,
            -1,
            self.field,
            self.suspended.values().cloned().collect(),
            Vec::new(),
        )
        .expect("components are validated at construction")
    }

    pub fn default_policy(&self) -> TruncationPolicy {
        TruncationPolicy::for_max_arity(self.max_arity())
    }

    /// `Σ ± m_{n−i+1}(a_1, …, m_i(a_j, …), …, a_n)` on a tuple.
    pub fn relation(&self, x: &[Letter]) -> RelationValue {
        let n = x.len();
        let w = Word::plain(x.to_vec());
        let degrees: Vec<i64> = x.iter().map(|&a| self.basis.degree(a)).collect();
        let terms = (1..=n).flat_map(|len| {
            let inner = self.components.get(&len);
            let degrees = &degrees;
            (0..=n - len).filter_map(move |start| {
                inner.map(|m| BlockTerm {
                    start,
                    inner: m,
                    exponent: stasheff_exponent(degrees, start + 1, len),
                })
            })
        });
        let (value, active) = block_sum(self.field, &w, terms, |c| self.components.get(&c.len()));
        RelationValue {
            lhs: value,
            rhs: Default::default(),
            active,
        }
    }

    /// Whether the relation on a tuple of this total degree can be nonzero.
    pub(crate) fn admissible(&self, x: &[Letter]) -> bool {
        let total: i64 = x.iter().map(|&a| self.basis.degree(a)).sum();
        self.basis.has_degree(total + x.len() as i64 - 3)
    }

    pub fn bar_square(&self, w: &Word) -> FormalSum {
        let d = self.bar_differential();
        d.apply(w).map_linear(|u| d.apply(u))
    }
}

/// Checks the Stasheff relations on all admissible tuples of arity `≤ L`
/// and `D² = 0` on all bar words of length `≤ L`, and compares the two word
/// by word.
pub fn check_ainfinity(alg: &AInfinityAlgebra, policy: Option<TruncationPolicy>) -> Report {
    let policy = policy.unwrap_or_else(|| alg.default_policy());
    let space = alg.bar_space();
    let plain = BarSpace::unsuspended(alg.basis.clone(), None);
    let words = space.words_up_to(policy.max_word_length, false, false);
    let relation = |w: &Word| alg.admissible(w.letters()).then(|| alg.relation(w.letters()));
    let bar = |w: &Word| alg.bar_square(w);
    let out = DualRun {
        relation_name: "Stasheff relations",
        bar_name: "D² = 0",
        words,
        input_space: &plain,
        output_space: &space,
        relation_target: &alg.basis,
        relation: &relation,
        bar: &bar,
    }
    .run();
    Report::new(
        format!("A∞-algebra {} (words up to length {})", alg.name, policy.max_word_length),
        vec![out.relations, out.bar],
        Some(out.agreement),
    )
}

/// Bundles a differential graded algebra: `m_1 = ∂`, `m_2 = μ`, nothing
/// higher.
pub fn from_dga(
    name: impl Into<String>,
    basis: Arc<GradedBasis>,
    differential: MultiMap,
    product: MultiMap,
) -> Result<AInfinityAlgebra> {
    let field = product.field();
    let d = differential.with_name("m1");
    let p = product.with_name("m2");
    if d.arity() != 1 || d.degree() != -1 {
        return Err(Error::Degree {
            context: "DGA differential".into(),
            expected: -1,
            found: d.degree(),
        });
    }
    if p.arity() != 2 || p.degree() != 0 {
        return Err(Error::Degree {
            context: "DGA product".into(),
            expected: 0,
            found: p.degree(),
        });
    }
    AInfinityAlgebra::new(name, field, basis, [d, p])
}

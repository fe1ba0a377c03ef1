use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::bar::TruncationPolicy;
use crate::basis::{GradedBasis, Letter, Vector};
use crate::error::{Error, Result};
use crate::report::{Check, Counterexample, Formulation, Report};
use crate::scalar::{Field, Scalar};
use crate::word::{BarSpace, Word};

use super::algebra::AInfinityAlgebra;
use super::bimodule::{dual_self_bimodule, self_bimodule, AInfinityBimodule};
use super::morphism::{check_bimodule_map, BimoduleMorphism};
use super::relations::{agree_up_to_sign, stasheff_exponent};

/// One pairing `⟨x_1, …, x_{k+l+2}⟩_{k,l}`: `x_{k+1}` is the left special
/// input and the last entry the right special input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pairing {
    k: usize,
    l: usize,
    table: BTreeMap<Vec<Letter>, Scalar>,
}

impl Pairing {
    pub fn new(k: usize, l: usize) -> Self {
        Pairing {
            k,
            l,
            table: BTreeMap::new(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    pub fn arity(&self) -> usize {
        self.k + self.l + 2
    }

    pub fn name(&self) -> String {
        format!("p_{}_{}", self.k, self.l)
    }

    pub fn value(&self, x: &[Letter]) -> Option<&Scalar> {
        self.table.get(x)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[Letter], &Scalar)> + '_ {
        self.table.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Adds `value` on a tuple, which must have total degree `−(k+l)`.
    pub fn insert(&mut self, basis: &GradedBasis, inputs: Vec<Letter>, value: Scalar) -> Result<()> {
        if inputs.len() != self.arity() {
            return Err(Error::Arity(format!(
                "{}: expected {} inputs, got {}",
                self.name(),
                self.arity(),
                inputs.len()
            )));
        }
        if inputs.iter().any(|&x| x as usize >= basis.len()) {
            return Err(Error::Basis(format!("{}: input letter out of range", self.name())));
        }
        let total: i64 = inputs.iter().map(|&x| basis.degree(x)).sum();
        let expected = -((self.k + self.l) as i64);
        if !value.is_zero() && total != expected {
            let labels: Vec<&str> = inputs.iter().map(|&x| basis.label(x)).collect();
            return Err(Error::Degree {
                context: format!("{}({}) total input degree", self.name(), labels.join(", ")),
                expected,
                found: total,
            });
        }
        let entry = self.table.entry(inputs.clone()).or_insert_with(|| value.field().zero());
        *entry += &value;
        if entry.is_zero() {
            self.table.remove(&inputs);
        }
        Ok(())
    }
}

/// An ∞-inner-product on an A∞-algebra: a family of pairings
/// `⟨…⟩_{k,l}` on `A^{⊗k+l+2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InfinityInnerProduct {
    name: String,
    algebra: Arc<AInfinityAlgebra>,
    pairings: BTreeMap<(usize, usize), Pairing>,
}

impl InfinityInnerProduct {
    pub fn new(
        name: impl Into<String>,
        algebra: Arc<AInfinityAlgebra>,
        pairings: impl IntoIterator<Item = Pairing>,
    ) -> Result<Self> {
        let name = name.into();
        let mut map = BTreeMap::new();
        for p in pairings {
            for (x, v) in p.entries() {
                if v.field() != algebra.field() {
                    return Err(Error::Invalid(format!("{name}: {} has coefficients over the wrong field", p.name())));
                }
                if x.iter().any(|&a| a as usize >= algebra.basis().len()) {
                    return Err(Error::Basis(format!("{name}: {} input out of range", p.name())));
                }
            }
            if map.insert(p.shape(), p).is_some() {
                return Err(Error::Invalid(format!("{name}: a pairing shape is given twice")));
            }
        }
        Ok(InfinityInnerProduct {
            name,
            algebra,
            pairings: map,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<AInfinityAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn pairing(&self, k: usize, l: usize) -> Option<&Pairing> {
        self.pairings.get(&(k, l))
    }

    pub fn pairings(&self) -> impl Iterator<Item = &Pairing> + '_ {
        self.pairings.values()
    }

    /// `⟨x⟩_{k,l}`, zero when absent.
    pub fn value(&self, k: usize, l: usize, x: &[Letter]) -> Scalar {
        self.pairings
            .get(&(k, l))
            .and_then(|p| p.value(x))
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    /// Largest arity among the corresponding morphism components and the
    /// algebra operations.
    pub fn max_arity(&self) -> usize {
        self.pairings
            .values()
            .filter(|p| !p.is_zero())
            .map(|p| p.arity() - 1)
            .max()
            .unwrap_or(1)
            .max(self.algebra.max_arity())
    }

    pub fn default_policy(&self) -> TruncationPolicy {
        TruncationPolicy::for_max_arity(self.max_arity())
    }

    /// The relation on `(x_1, …, x_N)` with left special input `x_{k+1}` and
    /// right special input `x_N`: every way of applying one `m_i` to a
    /// cyclically consecutive block that does not contain both special
    /// inputs, then pairing. Returns the signed sum and whether any single
    /// term was nonzero.
    pub fn relation(&self, k: usize, x: &[Letter]) -> (Scalar, bool) {
        let n = x.len();
        let basis = self.algebra.basis();
        let field = self.field();
        let deg: Vec<i64> = x.iter().map(|&a| basis.degree(a)).collect();
        let mut total = field.zero();
        let mut active = false;
        let mut add = |value: Scalar, exponent: i64| {
            if !value.is_zero() {
                active = true;
                total += &(&value * &field.sign(exponent));
            }
        };
        // Blocks among x_1..x_{N-1}.
        for len in 1..n {
            let Some(m) = self.algebra.operation(len) else {
                continue;
            };
            for j in 1..=n - len {
                let end = j + len - 1;
                let Some(out) = m.apply(&x[j - 1..end]) else {
                    continue;
                };
                let left = if j <= k + 1 && k < end {
                    j - 1
                } else if end < k + 1 {
                    k + 1 - len
                } else {
                    k
                };
                let new_n = n - len + 1;
                let new_l = new_n - 2 - left;
                let mut value = field.zero();
                for (y, c) in out.iter() {
                    let mut t = x[..j - 1].to_vec();
                    t.push(y);
                    t.extend_from_slice(&x[end..]);
                    value += &(c * &self.value(left, new_l, &t));
                }
                add(value, stasheff_exponent(&deg, j, len));
            }
        }
        // Blocks through x_N, wrapping around to the front, not reaching x_{k+1}.
        let sum = |r: std::ops::Range<usize>| -> i64 { deg[r].iter().sum() };
        for j in 1..=k + 1 {
            for i in (k + 2 - j)..=(n - j) {
                let zlen = n - i;
                let Some(m) = self.algebra.operation(zlen) else {
                    continue;
                };
                let mut z = x[j + i - 1..].to_vec();
                z.extend_from_slice(&x[..j - 1]);
                let Some(out) = m.apply(&z) else {
                    continue;
                };
                let left = k + 1 - j;
                let new_l = i + 1 - 2 - left;
                let mut value = field.zero();
                for (y, c) in out.iter() {
                    let mut t = x[j - 1..j + i - 1].to_vec();
                    t.push(y);
                    value += &(c * &self.value(left, new_l, &t));
                }
                let p = (j - 1) as i64;
                let (a, mm, b, xn) = (
                    sum(0..j - 1),
                    sum(j - 1..j + i - 1),
                    sum(j + i - 1..n - 1),
                    deg[n - 1],
                );
                let (il, nl) = (i as i64, n as i64);
                let rotated = (nl - il) * mm + il * (nl - il + 1) + il;
                add(value, rotated + a * (mm + b + xn) + a + b + p * (1 + il));
            }
        }
        (total, active)
    }

    /// The corresponding morphism `A → A*` into the dual of the canonical
    /// bimodule: `f_{k,l}(a_1..a_{k+l+1}) = Σ_{a′} (−1)^{|a′|}⟨a_1..a_{k+l+1}, a′⟩_{k,l} a′*`.
    pub fn to_morphism(&self) -> BimoduleMorphism {
        let source = Arc::new(self_bimodule(&self.algebra));
        let target = Arc::new(dual_self_bimodule(&self.algebra));
        to_morphism_between(self, source, target)
    }

    /// Inverse of [`to_morphism`](Self::to_morphism).
    pub fn from_morphism(name: impl Into<String>, mor: &BimoduleMorphism) -> Result<Self> {
        let alg = mor.source().algebra().clone();
        let basis = alg.basis();
        if **mor.source().basis() != **basis || **mor.target().basis() != *basis.dual() {
            return Err(Error::Signature(
                "pairings correspond only to morphisms from A to A*".into(),
            ));
        }
        let mut pairings = Vec::new();
        for f in mor.components() {
            let crate::multimap::Signature::Marked { k, l } = f.signature() else {
                unreachable!("validated at construction")
            };
            let mut p = Pairing::new(k, l);
            for (inputs, v) in f.entries() {
                for (q, c) in v.iter() {
                    let mut t = inputs.to_vec();
                    t.push(q);
                    p.insert(basis, t, c * &alg.field().sign(basis.degree(q)))?;
                }
            }
            pairings.push(p);
        }
        InfinityInnerProduct::new(name, alg, pairings)
    }

    /// Whether `⟨x, y⟩_{0,0} = ± ⟨y, x⟩_{0,0}` with the Koszul sign; reported,
    /// not required.
    pub fn is_graded_symmetric(&self) -> bool {
        let b = self.algebra.basis();
        b.letters().all(|x| {
            b.letters().all(|y| {
                let s = self.field().sign(b.degree(x) * b.degree(y));
                self.value(0, 0, &[x, y]) == &s * &self.value(0, 0, &[y, x])
            })
        })
    }

    /// Whether the pairing `⟨…⟩_{0,0}` has full rank; reported, not required.
    pub fn is_nondegenerate(&self) -> bool {
        let b = self.algebra.basis();
        let rows: Vec<Vec<Scalar>> = b
            .letters()
            .map(|x| b.letters().map(|y| self.value(0, 0, &[x, y])).collect())
            .collect();
        crate::linalg::rank(rows, self.field()) == b.len()
    }
}

fn to_morphism_between(
    ip: &InfinityInnerProduct,
    source: Arc<AInfinityBimodule>,
    target: Arc<AInfinityBimodule>,
) -> BimoduleMorphism {
    let basis = ip.algebra.basis();
    let field = ip.field();
    let mut comps = Vec::new();
    for p in ip.pairings.values() {
        let (k, l) = p.shape();
        let mut f = BimoduleMorphism::empty_component(&source, target.basis(), k, l);
        for (x, c) in p.entries() {
            let (inputs, last) = x.split_at(x.len() - 1);
            let q = last[0];
            f.insert(inputs.to_vec(), Vector::term(q, c * &field.sign(basis.degree(q))))
                .expect("pairing support has the right total degree");
        }
        comps.push(f);
    }
    BimoduleMorphism::new(format!("{}-map", ip.name), source, target, comps).expect("valid by construction")
}

/// Checks the pairing relations directly, and independently converts to a
/// bimodule map `A → A*` and checks that; compares both tuple by tuple.
pub fn check_inner_product(ip: &InfinityInnerProduct, policy: Option<TruncationPolicy>) -> Report {
    let policy = policy.unwrap_or_else(|| ip.default_policy());
    let basis = ip.algebra.basis().clone();
    let mor = ip.to_morphism();
    let mor_report = check_bimodule_map(&mor, Some(policy));
    let space = BarSpace::unsuspended(basis.clone(), None);
    // Relations on N = n + 1 inputs, for morphism arities n ≤ L.
    let mut tuples: Vec<(usize, Vec<Letter>)> = Vec::new();
    for n in 2..=policy.max_word_length + 1 {
        for w in space.words_of_length(n, false) {
            let total: i64 = w.letters().iter().map(|&a| basis.degree(a)).sum();
            if total != 3 - n as i64 {
                continue;
            }
            for k in 0..=n - 2 {
                tuples.push((k, w.letters().to_vec()));
            }
        }
    }
    let rows: Vec<((Scalar, bool), Scalar)> = tuples
        .par_iter()
        .map(|(k, x)| {
            let direct = ip.relation(*k, x);
            let (inputs, last) = x.split_at(x.len() - 1);
            let w = Word::marked(inputs.to_vec(), *k);
            let via = mor.relation(&w).difference();
            let coeff = via.coefficient(last[0]).cloned().unwrap_or_else(|| ip.field().zero());
            (direct, coeff)
        })
        .collect();
    let mut check = Check::new("pairing relations", Formulation::UnsuspendedRelations);
    let mut per_tuple = true;
    for ((k, x), ((value, active), via)) in tuples.iter().zip(&rows) {
        check.evaluated += 1;
        // Indexed like the corresponding morphism relation.
        let arity = x.len() - 1;
        if *active {
            check.mark_active(arity);
        }
        if !value.is_zero() {
            check.mark_failing(arity);
            let labels: Vec<String> = x.iter().map(|&a| basis.label(a).to_string()).collect();
            check.fail(Counterexample {
                tuple: labels,
                lhs: format!("{value} (left special input at {})", k + 1),
                rhs: "0".into(),
            });
        }
        if !agree_up_to_sign(&Vector::term(0, value.clone()), &Vector::term(0, via.clone())) {
            per_tuple = false;
        }
    }
    let agreement = per_tuple && check.passed == mor_report.passed();
    let mut checks = vec![check];
    for mut c in mor_report.checks {
        c.name = format!("{} (as map A → A*)", c.name);
        checks.push(c);
    }
    Report::new(
        format!(
            "∞-inner-product {} (morphism words up to length {})",
            ip.name, policy.max_word_length
        ),
        checks,
        Some(agreement),
    )
}

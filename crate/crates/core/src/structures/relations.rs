//! Shared machinery for evaluating sign-explicit relation systems and
//! comparing them with bar-side identities.

use rayon::prelude::*;

use crate::basis::{GradedBasis, Vector};
use crate::multimap::MultiMap;
use crate::report::{Check, Counterexample, Formulation};
use crate::scalar::Field;
use crate::word::{BarSpace, FormalSum, Word};

/// The sign exponent of the general term of the Stasheff-type relations:
/// an inner operation of arity `len` applied at 1-based position `j` of a
/// tuple of length `n`.
pub fn stasheff_exponent(degrees: &[i64], j: usize, len: usize) -> i64 {
    let n = degrees.len() as i64;
    let (j, len) = (j as i64, len as i64);
    let prefix: i64 = degrees[..(j - 1) as usize].iter().sum();
    len * prefix + (j - 1) * (len + 1) + n - len
}

/// Applies `outer` to `word` (which must match its mark position).
pub fn apply_outer<'a>(outer: &'a MultiMap, word: &Word) -> Option<&'a Vector> {
    if outer.signature().mark_position() != word.mark() || outer.arity() != word.len() {
        return None;
    }
    outer.apply(word.letters())
}

/// One summand `± outer(x_1, …, inner(x_j, …), …)`.
pub struct BlockTerm<'a> {
    pub start: usize,
    pub inner: &'a MultiMap,
    pub exponent: i64,
}

/// Sums the block terms; `outer` picks the outer operation from the shape of
/// the contracted word. Also reports whether any single term was nonzero.
pub fn block_sum<'a>(
    field: Field,
    x: &Word,
    terms: impl IntoIterator<Item = BlockTerm<'a>>,
    outer: impl Fn(&Word) -> Option<&'a MultiMap>,
) -> (Vector, bool) {
    let mut total = Vector::zero();
    let mut active = false;
    for t in terms {
        let n = t.inner.arity();
        let Some(inner) = t.inner.apply(&x.letters()[t.start..t.start + n]) else {
            continue;
        };
        let marked = t.inner.signature().output_marked();
        let mut term = Vector::zero();
        for (y, c) in inner.iter() {
            let w = x.splice(t.start, n, y, marked);
            if let Some(o) = outer(&w) {
                if let Some(v) = apply_outer(o, &w) {
                    term.add_scaled(v, c);
                }
            }
        }
        if !term.is_zero() {
            active = true;
            total.add_scaled(&term, &field.sign(t.exponent));
        }
    }
    (total, active)
}

/// Value of a relation on one tuple: the relation holds iff `lhs == rhs`.
pub struct RelationValue {
    pub lhs: Vector,
    pub rhs: Vector,
    pub active: bool,
}

impl RelationValue {
    pub fn difference(&self) -> Vector {
        self.lhs.sub(&self.rhs)
    }
}

pub fn agree_up_to_sign(a: &Vector, b: &Vector) -> bool {
    if a == b {
        return true;
    }
    let Some((_, c)) = a.iter().next() else {
        return false;
    };
    let minus = -c.field().one();
    *a == b.scaled(&minus)
}

/// Length-one part of a bar-side value, as a vector.
pub fn project_length_one(sum: &FormalSum) -> Vector {
    let mut v = Vector::zero();
    for (w, c) in sum.iter() {
        if w.len() == 1 {
            v.add_term(w.letters()[0], c);
        }
    }
    v
}

/// Runs a relation system and a bar-side identity over the same words and
/// compares them word by word: the length-one projection of the bar value on
/// `(sx_1, …, sx_n)` must equal the relation on `(x_1, …, x_n)` up to sign.
pub struct DualRun<'a> {
    pub relation_name: &'a str,
    pub bar_name: &'a str,
    pub words: Vec<Word>,
    /// Labels of input tuples.
    pub input_space: &'a BarSpace,
    /// Rendering of bar-side outputs.
    pub output_space: &'a BarSpace,
    /// Basis the relation values live in.
    pub relation_target: &'a GradedBasis,
    /// `None` when the tuple is not degree-admissible (the relation is
    /// identically zero there).
    pub relation: &'a (dyn Fn(&Word) -> Option<RelationValue> + Sync),
    pub bar: &'a (dyn Fn(&Word) -> FormalSum + Sync),
}

pub struct DualOutcome {
    pub relations: Check,
    pub bar: Check,
    pub agreement: bool,
}

impl DualRun<'_> {
    pub fn run(self) -> DualOutcome {
        let rows: Vec<(Option<RelationValue>, FormalSum)> = self
            .words
            .par_iter()
            .map(|w| ((self.relation)(w), (self.bar)(w)))
            .collect();
        let mut rel = Check::new(self.relation_name, Formulation::UnsuspendedRelations);
        let mut bar = Check::new(self.bar_name, Formulation::SuspendedBar);
        let mut per_word = true;
        for (w, (r, b)) in self.words.iter().zip(&rows) {
            let tuple = crate::bar::word_labels(self.input_space, w);
            bar.evaluated += 1;
            if !b.is_zero() {
                bar.mark_failing(w.len());
                bar.fail(Counterexample {
                    tuple: tuple.clone(),
                    lhs: b.render(self.output_space),
                    rhs: "0".into(),
                });
            }
            let diff = match r {
                Some(r) => {
                    rel.evaluated += 1;
                    if r.active {
                        rel.mark_active(w.len());
                    }
                    let d = r.difference();
                    if !d.is_zero() {
                        rel.mark_failing(w.len());
                        rel.fail(Counterexample {
                            tuple,
                            lhs: r.lhs.render(self.relation_target),
                            rhs: r.rhs.render(self.relation_target),
                        });
                    }
                    d
                }
                None => Vector::zero(),
            };
            if !agree_up_to_sign(&diff, &project_length_one(b)) {
                per_word = false;
            }
        }
        let agreement = per_word && rel.passed == bar.passed;
        DualOutcome {
            relations: rel,
            bar,
            agreement,
        }
    }
}

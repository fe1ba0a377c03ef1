//! The truncated tensor coalgebra `TV`, its marked bi-comodule `T^W V`, and
//! the lifts of component families to coderivations and comodule maps.

use std::sync::Arc;

use rayon::prelude::*;

use crate::basis::{render_terms, GradedBasis, Vector};
use crate::error::{Error, Result};
use crate::multimap::{MultiMap, Signature};
use crate::report::{Check, Counterexample, Formulation};
use crate::scalar::Field;
use crate::word::{BarSpace, Combination, FormalSum, TensorSum, TripleSum, Word};

/// Bound on word length for every bar-side computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationPolicy {
    pub max_word_length: usize,
}

impl TruncationPolicy {
    pub fn new(max_word_length: usize) -> Self {
        assert!(max_word_length >= 1, "truncation bound must be positive");
        TruncationPolicy { max_word_length }
    }

    /// `2·max_arity − 1`: the longest word on which a relation can couple two
    /// components of arity at most `max_arity`.
    pub fn for_max_arity(max_arity: usize) -> Self {
        TruncationPolicy::new((2 * max_arity).saturating_sub(1).max(1))
    }

    pub fn admit(&self, word: &Word) -> Result<()> {
        if word.len() > self.max_word_length {
            Err(Error::Truncation {
                length: word.len(),
                bound: self.max_word_length,
            })
        } else {
            Ok(())
        }
    }
}

/// `Δ(v_1..v_n) = Σ_i (v_1..v_i) ⊗ (v_{i+1}..v_n)`, all `n+1` cuts.
pub fn comultiply(word: &Word) -> Result<TensorSum> {
    if word.is_marked() {
        return Err(Error::Signature("comultiply expects an unmarked word".into()));
    }
    Ok(cuts(word, 0..=word.len()))
}

/// `Δ^W` on a marked word with `k` entries left and `l` right of the mark:
/// the `k+1` cuts left of the mark and the `l+1` cuts right of it.
pub fn comultiply_marked(word: &Word) -> Result<TensorSum> {
    let m = word
        .mark()
        .ok_or_else(|| Error::Signature("comultiply_marked expects a marked word".into()))?;
    let mut out = cuts(word, 0..=m);
    out.add_assign(&cuts(word, m + 1..=word.len()));
    Ok(out)
}

/// Whichever comultiplication applies to the word.
pub fn coproduct(word: &Word) -> TensorSum {
    if word.is_marked() {
        comultiply_marked(word).expect("marked")
    } else {
        comultiply(word).expect("unmarked")
    }
}

fn cuts(word: &Word, range: std::ops::RangeInclusive<usize>) -> TensorSum {
    let one = Field::Rational.one();
    let mut out = TensorSum::zero();
    for i in range {
        out.add_term(word.split_at(i), &one);
    }
    out
}

fn retarget<K: Ord + Clone>(sum: &Combination<K>, field: Field) -> Combination<K> {
    match field {
        Field::Rational => sum.clone(),
        Field::ModTwo => {
            let mut out = Combination::zero();
            for (k, c) in sum.iter() {
                out.add_term(k.clone(), &c.to_mod_two().expect("integer coefficients"));
            }
            out
        }
    }
}

/// Coproduct with coefficients in `field`.
pub fn coproduct_in(word: &Word, field: Field) -> TensorSum {
    retarget(&coproduct(word), field)
}

/// Compares `(Δ⊗id)∘Δ` with `(id⊗Δ)∘Δ` on a word, using `Δ^W` on marked
/// factors. Returns both sides.
pub fn coassociativity_sides(word: &Word) -> (TripleSum, TripleSum) {
    let first = coproduct(word);
    let mut left = TripleSum::zero();
    let mut right = TripleSum::zero();
    for ((a, b), c) in first.iter() {
        for ((a1, a2), c1) in coproduct(a).iter() {
            left.add_term((a1.clone(), a2.clone(), b.clone()), &(c * c1));
        }
        for ((b1, b2), c2) in coproduct(b).iter() {
            right.add_term((a.clone(), b1.clone(), b2.clone()), &(c * c2));
        }
    }
    (left, right)
}

/// Applies `map` to the block of `word` starting at `start`, with the sign
/// `(-1)^{|map|·(degrees of the entries before the block)}`. Zero when the
/// block does not fit or its mark position does not match the signature.
pub fn apply_block(map: &MultiMap, space: &BarSpace, word: &Word, start: usize) -> FormalSum {
    let n = map.arity();
    if start + n > word.len() {
        return FormalSum::zero();
    }
    let block_mark = word.mark().filter(|&m| m >= start && m < start + n).map(|m| m - start);
    if block_mark != map.signature().mark_position() {
        return FormalSum::zero();
    }
    let Some(value) = map.apply(&word.letters()[start..start + n]) else {
        return FormalSum::zero();
    };
    let sign = map.field().sign(map.degree() * space.prefix_degree(word, start));
    let marked = map.signature().output_marked();
    let mut out = FormalSum::zero();
    for (y, c) in value.iter() {
        out.add_term(word.splice(start, n, y, marked), &(c * &sign));
    }
    out
}

/// The coderivation of `TV` extending a single component `V^{⊗n} → V`:
/// the component applied at every position, other entries passed through.
pub fn lift_coderivation(component: &MultiMap, space: &BarSpace, word: &Word) -> FormalSum {
    let mut out = FormalSum::zero();
    if word.is_marked() {
        return out;
    }
    for start in 0..=word.len().saturating_sub(component.arity()) {
        out.add_assign(&apply_block(component, space, word, start));
    }
    out
}

/// The coderivation `TV → T^W V` extending `V^{⊗n} → W`; the output entry
/// becomes the mark.
pub fn lift_marked_coderivation(component: &MultiMap, space: &BarSpace, word: &Word) -> FormalSum {
    lift_coderivation(component, space, word)
}

/// The coderivation of `T^W V` over `ψ`: `ψ` components at blocks left or
/// right of the mark, `ρ_{i,j}` components at blocks containing it with `i`
/// entries left and `j` right of the mark. On unmarked words it is the lift
/// of `ψ` alone.
pub fn lift_module_differential(psi: &[MultiMap], rho: &[MultiMap], space: &BarSpace, word: &Word) -> FormalSum {
    let mut out = FormalSum::zero();
    let Some(m) = word.mark() else {
        for p in psi {
            out.add_assign(&lift_coderivation(p, space, word));
        }
        return out;
    };
    for p in psi {
        let n = p.arity();
        for start in 0..=word.len().saturating_sub(n) {
            if !word.block_has_mark(start, n) {
                out.add_assign(&apply_block(p, space, word, start));
            }
        }
    }
    for r in rho {
        if let Signature::Marked { k, .. } = r.signature() {
            if m >= k {
                out.add_assign(&apply_block(r, space, word, m - k));
            }
        }
    }
    out
}

/// The comodule map `T^W V → T^Z V` extending components `ϱ_{k,l}`: each
/// component applied to the unique block with `k` entries left and `l`
/// right of the mark.
pub fn lift_comodule_morphism(components: &[MultiMap], space: &BarSpace, word: &Word) -> FormalSum {
    let mut out = FormalSum::zero();
    let Some(m) = word.mark() else {
        return out;
    };
    for r in components {
        if let Signature::Marked { k, .. } = r.signature() {
            if m >= k {
                out.add_assign(&apply_block(r, space, word, m - k));
            }
        }
    }
    out
}

/// Anything that acts linearly on words.
pub trait BarOperator: Sync {
    fn apply_word(&self, word: &Word) -> FormalSum;

    fn apply_sum(&self, sum: &FormalSum) -> FormalSum {
        sum.map_linear(|w| self.apply_word(w))
    }
}

impl<F: Fn(&Word) -> FormalSum + Sync> BarOperator for F {
    fn apply_word(&self, word: &Word) -> FormalSum {
        self(word)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViewKind {
    /// Coderivation of `TV`.
    OnTv,
    /// Coderivation `TV → T^W V`.
    IntoMarked,
    /// Coderivation of `T^W V` over a coderivation of `TV`.
    ModuleDifferential,
    /// Comodule map `T^W V → T^Z V`.
    ComoduleMorphism,
}

/// A coderivation or comodule map presented by its components.
///
/// `plain` holds maps out of `V^{⊗n}` (into `V` or `W`), `marked` holds the
/// `(k,l)` family. `space` is the grading of input words; for comodule maps
/// `target` is the module of the output mark.
#[derive(Debug, Clone)]
pub struct CoderivationView {
    kind: ViewKind,
    space: BarSpace,
    target: Option<Arc<GradedBasis>>,
    degree: i64,
    field: Field,
    plain: Vec<MultiMap>,
    marked: Vec<MultiMap>,
}

impl CoderivationView {
    pub fn new(
        kind: ViewKind,
        space: BarSpace,
        target: Option<Arc<GradedBasis>>,
        degree: i64,
        field: Field,
        plain: Vec<MultiMap>,
        marked: Vec<MultiMap>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::Signature(msg));
        for p in &plain {
            let ok = match (kind, p.signature()) {
                (ViewKind::OnTv | ViewKind::ModuleDifferential, Signature::Plain { into_marked, .. }) => !into_marked,
                (ViewKind::IntoMarked, Signature::Plain { into_marked, .. }) => into_marked,
                _ => false,
            };
            if !ok {
                return bad(format!("{} ({}) does not fit a {kind:?} view", p.name(), p.signature()));
            }
        }
        for r in &marked {
            let ok = matches!(kind, ViewKind::ModuleDifferential | ViewKind::ComoduleMorphism)
                && matches!(r.signature(), Signature::Marked { .. });
            if !ok {
                return bad(format!("{} ({}) does not fit a {kind:?} view", r.name(), r.signature()));
            }
        }
        for c in plain.iter().chain(&marked) {
            if c.degree() != degree {
                return Err(Error::Degree {
                    context: format!("component {} of a {kind:?} view", c.name()),
                    expected: degree,
                    found: c.degree(),
                });
            }
            if c.field() != field {
                return bad(format!("{} is over {}, view over {field}", c.name(), c.field()));
            }
            if c.is_suspended() != (space.shift == 1) {
                return bad(format!("{} grading does not match the view's", c.name()));
            }
        }
        if kind == ViewKind::ComoduleMorphism && target.is_none() {
            return bad("comodule maps need a target module".into());
        }
        if matches!(kind, ViewKind::IntoMarked | ViewKind::ModuleDifferential | ViewKind::ComoduleMorphism)
            && space.marked.is_none()
        {
            return bad(format!("a {kind:?} view needs a module basis"));
        }
        Ok(CoderivationView {
            kind,
            space,
            target,
            degree,
            field,
            plain,
            marked,
        })
    }

    pub fn kind(&self) -> ViewKind {
        self.kind
    }

    pub fn space(&self) -> &BarSpace {
        &self.space
    }

    pub fn target(&self) -> Option<&Arc<GradedBasis>> {
        self.target.as_ref()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn plain_components(&self) -> &[MultiMap] {
        &self.plain
    }

    pub fn marked_components(&self) -> &[MultiMap] {
        &self.marked
    }

    pub fn components(&self) -> impl Iterator<Item = &MultiMap> + '_ {
        self.plain.iter().chain(&self.marked)
    }

    /// Largest component arity (0 for the zero view).
    pub fn max_arity(&self) -> usize {
        self.components().map(MultiMap::arity).max().unwrap_or(0)
    }

    /// Whether every component table is empty.
    pub fn is_zero(&self) -> bool {
        self.components().all(MultiMap::is_zero)
    }

    /// Same view with all-zero components dropped.
    pub fn pruned(mut self) -> Self {
        self.plain.retain(|m| !m.is_zero());
        self.marked.retain(|m| !m.is_zero());
        self
    }

    /// Space of output words.
    pub fn output_space(&self) -> BarSpace {
        match self.kind {
            ViewKind::ComoduleMorphism => {
                BarSpace::new(self.space.base.clone(), self.target.clone(), self.space.shift)
            }
            _ => self.space.clone(),
        }
    }

    /// The lifted map on a single word.
    pub fn apply(&self, word: &Word) -> FormalSum {
        match self.kind {
            ViewKind::OnTv | ViewKind::IntoMarked => {
                let mut out = FormalSum::zero();
                for p in &self.plain {
                    out.add_assign(&lift_coderivation(p, &self.space, word));
                }
                out
            }
            ViewKind::ModuleDifferential => lift_module_differential(&self.plain, &self.marked, &self.space, word),
            ViewKind::ComoduleMorphism => lift_comodule_morphism(&self.marked, &self.space, word),
        }
    }

    /// Whether the view acts on words of this kind (marked or not).
    pub fn accepts(&self, word: &Word) -> bool {
        match self.kind {
            ViewKind::OnTv | ViewKind::IntoMarked => !word.is_marked(),
            ViewKind::ModuleDifferential => true,
            ViewKind::ComoduleMorphism => word.is_marked(),
        }
    }

    /// Input words of length `1..=max_len` this view is defined on.
    pub fn test_words(&self, max_len: usize) -> Vec<Word> {
        match self.kind {
            ViewKind::OnTv | ViewKind::IntoMarked => self.space.words_up_to(max_len, false, true),
            ViewKind::ModuleDifferential => {
                let mut w = self.space.words_up_to(max_len, false, true);
                w.extend(self.space.words_up_to(max_len, true, false));
                w
            }
            ViewKind::ComoduleMorphism => self.space.words_up_to(max_len, true, false),
        }
    }

    /// Both sides of the co-Leibniz (or comodule-map) square on one word:
    /// `Δ∘σ` and `(σ⊗id + id⊗σ)∘Δ` (only the factor carrying the mark is
    /// hit for comodule maps).
    pub fn coderivation_sides(&self, word: &Word) -> (TensorSum, TensorSum) {
        self.sides_for(self, word)
    }

    /// [`coderivation_sides`](Self::coderivation_sides) with `op` standing in
    /// for the lifted map; kind, degree and grading come from `self`.
    pub fn sides_for(&self, op: &dyn BarOperator, word: &Word) -> (TensorSum, TensorSum) {
        let lhs = op.apply_word(word).map_linear(|w| coproduct_in(w, self.field));
        let mut rhs = TensorSum::zero();
        for ((u, v), c) in coproduct_in(word, self.field).iter() {
            let hit_left = self.kind != ViewKind::ComoduleMorphism || u.is_marked();
            let hit_right = self.kind != ViewKind::ComoduleMorphism || v.is_marked();
            if hit_left && self.accepts(u) {
                for (x, a) in op.apply_word(u).iter() {
                    rhs.add_term((x.clone(), v.clone()), &(c * a));
                }
            }
            if hit_right && self.accepts(v) {
                let sign = self.field.sign(self.degree * self.space.degree(u));
                for (y, b) in op.apply_word(v).iter() {
                    rhs.add_term((u.clone(), y.clone()), &(&(c * b) * &sign));
                }
            }
        }
        (lhs, rhs)
    }
}

impl BarOperator for CoderivationView {
    fn apply_word(&self, word: &Word) -> FormalSum {
        self.apply(word)
    }
}

/// Recovers the component family of a bar-side operator by restricting to
/// basis words of each length `≤ max_arity` and projecting onto words of
/// length one. `template` supplies kind, grading, degree and target.
pub fn project_components(
    op: &dyn BarOperator,
    template: &CoderivationView,
    max_arity: usize,
) -> Result<CoderivationView> {
    let space = &template.space;
    let field = template.field;
    let suspended = space.shift == 1;
    let degree = template.degree;
    let mut plain = Vec::new();
    let mut marked = Vec::new();
    let take_plain = matches!(template.kind, ViewKind::OnTv | ViewKind::IntoMarked | ViewKind::ModuleDifferential);
    if take_plain {
        let into_marked = template.kind == ViewKind::IntoMarked;
        let target = if into_marked {
            space.marked.clone().expect("checked at construction")
        } else {
            space.base.clone()
        };
        for n in 1..=max_arity {
            let sig = if into_marked {
                Signature::into_marked(n)
            } else {
                Signature::plain(n)
            };
            let mut comp = MultiMap::new(
                component_name(template.kind, sig),
                sig,
                degree,
                suspended,
                field,
                space.base.clone(),
                space.marked.clone(),
                target.clone(),
            )?;
            for w in space.words_of_length(n, false) {
                let out = op.apply_word(&w);
                let v = length_one_part(&out, into_marked);
                if !v.is_zero() {
                    comp.insert(w.letters().to_vec(), v)?;
                }
            }
            if !comp.is_zero() {
                plain.push(comp);
            }
        }
    }
    if matches!(template.kind, ViewKind::ModuleDifferential | ViewKind::ComoduleMorphism) {
        let module = space.marked.clone().expect("checked at construction");
        let target = match template.kind {
            ViewKind::ComoduleMorphism => template.target.clone().expect("checked at construction"),
            _ => module.clone(),
        };
        for n in 1..=max_arity {
            for k in 0..n {
                let l = n - 1 - k;
                let sig = Signature::marked(k, l);
                let mut comp = MultiMap::new(
                    component_name(template.kind, sig),
                    sig,
                    degree,
                    suspended,
                    field,
                    space.base.clone(),
                    Some(module.clone()),
                    target.clone(),
                )?;
                for w in space.words_of_length(n, true).into_iter().filter(|w| w.mark() == Some(k)) {
                    let v = length_one_part(&op.apply_word(&w), true);
                    if !v.is_zero() {
                        comp.insert(w.letters().to_vec(), v)?;
                    }
                }
                if !comp.is_zero() {
                    marked.push(comp);
                }
            }
        }
    }
    CoderivationView::new(
        template.kind,
        space.clone(),
        template.target.clone(),
        degree,
        field,
        plain,
        marked,
    )
}

fn component_name(kind: ViewKind, sig: Signature) -> String {
    let base = match kind {
        ViewKind::OnTv | ViewKind::IntoMarked => "sigma",
        ViewKind::ModuleDifferential => "rho",
        ViewKind::ComoduleMorphism => "phi",
    };
    match sig {
        Signature::Plain { arity, .. } if kind == ViewKind::ModuleDifferential => format!("psi{arity}"),
        Signature::Plain { arity, .. } => format!("{base}{arity}"),
        Signature::Marked { k, l } => format!("{base}_{k}_{l}"),
    }
}

fn length_one_part(sum: &FormalSum, marked: bool) -> Vector {
    let mut v = Vector::zero();
    for (w, c) in sum.iter() {
        if w.len() == 1 && w.is_marked() == marked {
            v.add_term(w.letters()[0], c);
        }
    }
    v
}

/// Whether two operators agree on every word in `words`; returns the first
/// word where they differ.
pub fn first_disagreement(a: &dyn BarOperator, b: &dyn BarOperator, words: &[Word]) -> Option<Word> {
    words
        .par_iter()
        .find_first(|w| a.apply_word(w) != b.apply_word(w))
        .cloned()
}

/// Checks the co-Leibniz square (or comodule-map square) on every word.
pub fn check_coderivation_identity(view: &CoderivationView, words: &[Word]) -> Check {
    check_operator_identity(view, view, words)
}

/// Checks the square of `view`'s kind and degree for an arbitrary operator,
/// e.g. a hand-modified lift.
pub fn check_operator_identity(op: &dyn BarOperator, view: &CoderivationView, words: &[Word]) -> Check {
    let mut check = Check::new(
        match view.kind {
            ViewKind::ComoduleMorphism => "comodule map square",
            _ => "coderivation square",
        },
        Formulation::SuspendedBar,
    );
    let results: Vec<Option<(Word, TensorSum, TensorSum)>> = words
        .par_iter()
        .filter(|w| view.accepts(w))
        .map(|w| {
            let (l, r) = view.sides_for(op, w);
            (l != r).then(|| (w.clone(), l, r))
        })
        .collect();
    check.evaluated = results.len();
    let out_space = view.output_space();
    for (w, l, r) in results.into_iter().flatten() {
        check.mark_failing(w.len());
        check.fail(Counterexample {
            tuple: word_labels(&view.space, &w),
            lhs: l.render(&out_space, &out_space),
            rhs: r.render(&out_space, &out_space),
        });
    }
    check
}

/// Coassociativity of `Δ` and `Δ^W` on the given words.
pub fn check_coassociativity(space: &BarSpace, words: &[Word]) -> Check {
    let mut check = Check::new("coassociativity", Formulation::SuspendedBar);
    check.evaluated = words.len();
    for w in words {
        let (l, r) = coassociativity_sides(w);
        if l != r {
            let render = |s: &TripleSum| {
                render_terms(s.iter().map(|((a, b, c), x)| {
                    (format!("{}⊗{}⊗{}", space.render(a), space.render(b), space.render(c)), x)
                }))
            };
            check.fail(Counterexample {
                tuple: word_labels(space, w),
                lhs: render(&l),
                rhs: render(&r),
            });
        }
    }
    check
}

pub(crate) fn word_labels(space: &BarSpace, w: &Word) -> Vec<String> {
    (0..w.len())
        .map(|p| space.basis_at(w, p).label(w.letters()[p]).to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn space() -> BarSpace {
        let v = GradedBasis::from_pairs("V", &[("a", 0), ("b", 1)]).unwrap();
        let w = GradedBasis::from_pairs("W", &[("w", 0), ("z", -1)]).unwrap();
        BarSpace::suspended(v, Some(w))
    }

    #[test]
    fn comultiply_counts() {
        assert_eq!(comultiply(&Word::unit()).unwrap().len(), 1);
        assert_eq!(comultiply(&Word::plain(vec![0, 1])).unwrap().len(), 3);
        assert_eq!(comultiply(&Word::plain(vec![0, 1, 0])).unwrap().len(), 4);
        assert!(comultiply(&Word::marked(vec![0], 0)).is_err());
    }

    #[test]
    fn comultiply_marked_examples() {
        let w = Word::marked(vec![0], 0);
        let d = comultiply_marked(&w).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.coefficient(&(Word::unit(), w.clone())).is_some());
        assert!(d.coefficient(&(w.clone(), Word::unit())).is_some());
        let vw = Word::marked(vec![1, 0], 1);
        let d = comultiply_marked(&vw).unwrap();
        assert_eq!(d.len(), 3);
        assert!(d
            .coefficient(&(Word::plain(vec![1]), Word::marked(vec![0], 0)))
            .is_some());
        assert!(comultiply_marked(&Word::plain(vec![0])).is_err());
    }

    #[test]
    fn coassociative_on_all_short_words() {
        let s = space();
        let mut words = s.words_up_to(4, false, true);
        words.extend(s.words_up_to(4, true, false));
        assert!(check_coassociativity(&s, &words).passed);
    }

    #[test]
    fn lift_of_binary_component_signs() {
        // |μ| = -1 on the bar side, |v1| = 1: second position picks up a minus.
        let q = Field::Rational;
        let s = space();
        let mut mu = MultiMap::new("mu", Signature::plain(2), -1, true, q, s.base.clone(), None, s.base.clone()).unwrap();
        // bar degrees: a ↦ 1, b ↦ 2
        mu.set(&["a", "a"], &[("a", q.one())]).unwrap();
        let w = Word::plain(vec![0, 0, 0]);
        let out = lift_coderivation(&mu, &s, &w);
        let mut expected = FormalSum::single(Word::plain(vec![0, 0]), q.one());
        expected.add_term(Word::plain(vec![0, 0]), &q.from_int(-1));
        assert_eq!(out, expected);
        assert!(out.is_zero());
        let out = lift_coderivation(&mu, &s, &Word::plain(vec![0, 0]));
        assert_eq!(out, FormalSum::single(Word::plain(vec![0]), q.one()));
        assert!(lift_coderivation(&mu, &s, &Word::plain(vec![0])).is_zero());
    }
}

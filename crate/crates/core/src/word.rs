//! Tensor words, the graded spaces they live in, and formal linear
//! combinations of words.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::basis::{render_terms, GradedBasis, Letter};
use crate::scalar::Scalar;

/// A tuple of basis letters. At most one entry may be *marked*, meaning it is
/// drawn from the second (module) basis rather than the base basis. The empty
/// unmarked word is the unit of the tensor coalgebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
    mark: Option<usize>,
}

impl Word {
    pub fn unit() -> Self {
        Word::default()
    }

    pub fn plain(letters: Vec<Letter>) -> Self {
        Word {
            letters,
            mark: None,
        }
    }

    pub fn marked(letters: Vec<Letter>, mark: usize) -> Self {
        assert!(mark < letters.len(), "mark {mark} outside a word of length {}", letters.len());
        Word {
            letters,
            mark: Some(mark),
        }
    }

    pub fn from_parts(letters: Vec<Letter>, mark: Option<usize>) -> Self {
        match mark {
            Some(m) => Word::marked(letters, m),
            None => Word::plain(letters),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn mark(&self) -> Option<usize> {
        self.mark
    }

    pub fn is_marked(&self) -> bool {
        self.mark.is_some()
    }

    /// Number of plain entries left and right of the mark.
    pub fn mark_split(&self) -> Option<(usize, usize)> {
        self.mark.map(|m| (m, self.len() - m - 1))
    }

    /// Cuts after the first `i` entries; the mark follows its entry.
    pub fn split_at(&self, i: usize) -> (Word, Word) {
        let (a, b) = self.letters.split_at(i);
        let (ma, mb) = match self.mark {
            Some(m) if m < i => (Some(m), None),
            Some(m) => (None, Some(m - i)),
            None => (None, None),
        };
        (
            Word::from_parts(a.to_vec(), ma),
            Word::from_parts(b.to_vec(), mb),
        )
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mark = match (self.mark, other.mark) {
            (Some(_), Some(_)) => panic!("concatenating two marked words"),
            (Some(m), None) => Some(m),
            (None, Some(m)) => Some(m + self.len()),
            (None, None) => None,
        };
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::from_parts(letters, mark)
    }

    /// Replaces the block `start..start+len` by a single letter, which becomes
    /// the mark when `marked` is set. A mark outside the block is kept; a mark
    /// inside the block is consumed.
    pub fn splice(&self, start: usize, len: usize, letter: Letter, marked: bool) -> Word {
        let mut letters = Vec::with_capacity(self.len() + 1 - len);
        letters.extend_from_slice(&self.letters[..start]);
        letters.push(letter);
        letters.extend_from_slice(&self.letters[start + len..]);
        let mark = if marked {
            Some(start)
        } else {
            match self.mark {
                Some(m) if m < start => Some(m),
                Some(m) if m >= start + len => Some(m + 1 - len),
                _ => None,
            }
        };
        Word::from_parts(letters, mark)
    }

    /// Whether the block `start..start+len` contains the mark.
    pub fn block_has_mark(&self, start: usize, len: usize) -> bool {
        matches!(self.mark, Some(m) if m >= start && m < start + len)
    }
}

/// The graded module a word is read in: a base basis, an optional module
/// basis for the marked entry, and a uniform degree shift (1 on the bar side).
#[derive(Debug, Clone)]
pub struct BarSpace {
    pub base: Arc<GradedBasis>,
    pub marked: Option<Arc<GradedBasis>>,
    pub shift: i64,
}

impl BarSpace {
    pub fn new(base: Arc<GradedBasis>, marked: Option<Arc<GradedBasis>>, shift: i64) -> Self {
        BarSpace {
            base,
            marked,
            shift,
        }
    }

    pub fn suspended(base: Arc<GradedBasis>, marked: Option<Arc<GradedBasis>>) -> Self {
        BarSpace::new(base, marked, 1)
    }

    pub fn unsuspended(base: Arc<GradedBasis>, marked: Option<Arc<GradedBasis>>) -> Self {
        BarSpace::new(base, marked, 0)
    }

    pub fn basis_at(&self, word: &Word, pos: usize) -> &GradedBasis {
        if word.mark == Some(pos) {
            self.marked
                .as_deref()
                .expect("marked word read in a space without a module basis")
        } else {
            &self.base
        }
    }

    pub fn degree_at(&self, word: &Word, pos: usize) -> i64 {
        self.basis_at(word, pos).degree(word.letters[pos]) + self.shift
    }

    /// Sum of the degrees of the first `upto` entries.
    pub fn prefix_degree(&self, word: &Word, upto: usize) -> i64 {
        (0..upto).map(|p| self.degree_at(word, p)).sum()
    }

    pub fn degree(&self, word: &Word) -> i64 {
        self.prefix_degree(word, word.len())
    }

    pub fn degrees(&self, word: &Word) -> Vec<i64> {
        (0..word.len()).map(|p| self.degree_at(word, p)).collect()
    }

    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = (0..word.len())
            .map(|p| self.basis_at(word, p).label(word.letters[p]).to_string())
            .collect();
        format!("({})", parts.join(", "))
    }

    /// Every word of length `len` (marked words when `marked`), in
    /// lexicographic order.
    pub fn words_of_length(&self, len: usize, marked: bool) -> Vec<Word> {
        let mut out = Vec::new();
        if !marked {
            for_each_tuple(&vec![self.base.len(); len], |t| {
                out.push(Word::plain(t.to_vec()))
            });
            return out;
        }
        if len == 0 {
            return out;
        }
        let module = self
            .marked
            .as_ref()
            .expect("marked words requested without a module basis");
        for m in 0..len {
            let mut sizes = vec![self.base.len(); len];
            sizes[m] = module.len();
            for_each_tuple(&sizes, |t| out.push(Word::marked(t.to_vec(), m)));
        }
        out
    }

    /// All words of length `1..=max_len` (and the unit when `with_unit`).
    pub fn words_up_to(&self, max_len: usize, marked: bool, with_unit: bool) -> Vec<Word> {
        let mut out = Vec::new();
        if with_unit && !marked {
            out.push(Word::unit());
        }
        for len in 1..=max_len {
            out.extend(self.words_of_length(len, marked));
        }
        out
    }
}

/// Calls `f` on every tuple `t` with `t[i] < sizes[i]`, lexicographically.
pub fn for_each_tuple(sizes: &[usize], mut f: impl FnMut(&[Letter])) {
    if sizes.contains(&0) {
        return;
    }
    let mut t = vec![0 as Letter; sizes.len()];
    loop {
        f(&t);
        let mut i = sizes.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if (t[i] as usize) < sizes[i] {
                break;
            }
            t[i] = 0;
        }
    }
}

/// A finite formal linear combination of keys with exact coefficients. Zero
/// coefficients are never stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Combination<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for Combination<K> {
    fn default() -> Self {
        Combination {
            terms: BTreeMap::new(),
        }
    }
}

/// An element of the tensor coalgebra (or its marked variant).
pub type FormalSum = Combination<Word>;
/// An element of a tensor square of tensor coalgebras.
pub type TensorSum = Combination<(Word, Word)>;
/// An element of a triple tensor product.
pub type TripleSum = Combination<(Word, Word, Word)>;

impl<K: Ord + Clone> Combination<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(key: K, c: Scalar) -> Self {
        let mut s = Self::zero();
        s.add_term(key, &c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &K) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> + '_ {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, a) in other.iter() {
            self.add_term(k.clone(), &(a * c));
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, a) in other.iter() {
            self.add_term(k.clone(), a);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, a) in other.iter() {
            out.add_term(k.clone(), &-a);
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&K) -> bool) {
        self.terms.retain(|k, _| keep(k));
    }

    /// Applies a linear map given on keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Combination<L>) -> Combination<L> {
        let mut out = Combination::zero();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }
}

impl FormalSum {
    pub fn render(&self, space: &BarSpace) -> String {
        render_terms(self.iter().map(|(w, c)| (space.render(w), c)))
    }
}

impl TensorSum {
    pub fn render(&self, left: &BarSpace, right: &BarSpace) -> String {
        render_terms(
            self.iter()
                .map(|((a, b), c)| (format!("{}⊗{}", left.render(a), right.render(b)), c)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn split_and_concat_round_trip() {
        let w = Word::marked(vec![0, 1, 2, 0], 2);
        for i in 0..=w.len() {
            let (a, b) = w.split_at(i);
            assert_eq!(a.concat(&b), w);
        }
        assert_eq!(w.split_at(2).1.mark(), Some(0));
        assert_eq!(w.split_at(3).0.mark(), Some(2));
    }

    #[test]
    fn splice_tracks_mark() {
        let w = Word::marked(vec![0, 1, 2, 0], 2);
        assert_eq!(w.splice(0, 2, 5, false), Word::marked(vec![5, 2, 0], 1));
        assert_eq!(w.splice(1, 2, 5, true), Word::marked(vec![0, 5, 0], 1));
        assert_eq!(w.splice(3, 1, 5, false), Word::marked(vec![0, 1, 2, 5], 2));
    }

    #[test]
    fn enumerates_words() {
        let a = GradedBasis::from_pairs("A", &[("1", 0), ("t", -1)]).unwrap();
        let m = GradedBasis::from_pairs("M", &[("u", 0), ("v", 1), ("w", 2)]).unwrap();
        let s = BarSpace::suspended(a, Some(m));
        assert_eq!(s.words_of_length(3, false).len(), 8);
        assert_eq!(s.words_of_length(2, true).len(), 12);
        assert_eq!(s.words_up_to(2, false, true).len(), 7);
        let w = Word::marked(vec![1, 2], 1);
        assert_eq!(s.degrees(&w), vec![0, 3]);
        assert_eq!(s.render(&w), "(t, w)");
    }

    #[test]
    fn exact_cancellation() {
        let f = Field::Rational;
        let mut x = FormalSum::single(Word::plain(vec![0]), f.from_int(2));
        x.add_term(Word::plain(vec![1, 1]), &f.parse("1/3").unwrap());
        let y = FormalSum::single(Word::plain(vec![1, 1]), f.from_int(-7));
        assert_eq!(x.add(&y).sub(&y), x);
    }
}

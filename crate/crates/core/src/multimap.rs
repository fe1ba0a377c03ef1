//! Sparse multilinear maps given by tables on basis tuples, the Koszul sign
//! rule, graded tensor products of maps, and conjugation by the suspension.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::basis::{GradedBasis, Letter, Vector};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::word::{BarSpace, FormalSum, Word};

/// Input/output shape of a multilinear map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signature {
    /// `V^{⊗arity} → V`, or `→ W` when `into_marked` is set.
    Plain { arity: usize, into_marked: bool },
    /// `V^{⊗k} ⊗ W ⊗ V^{⊗l} → Z`.
    Marked { k: usize, l: usize },
}

impl Signature {
    pub fn plain(arity: usize) -> Self {
        Signature::Plain {
            arity,
            into_marked: false,
        }
    }

    pub fn into_marked(arity: usize) -> Self {
        Signature::Plain {
            arity,
            into_marked: true,
        }
    }

    pub fn marked(k: usize, l: usize) -> Self {
        Signature::Marked { k, l }
    }

    pub fn arity(self) -> usize {
        match self {
            Signature::Plain { arity, .. } => arity,
            Signature::Marked { k, l } => k + l + 1,
        }
    }

    pub fn mark_position(self) -> Option<usize> {
        match self {
            Signature::Plain { .. } => None,
            Signature::Marked { k, .. } => Some(k),
        }
    }

    /// Whether outputs land in the marked slot of a word.
    pub fn output_marked(self) -> bool {
        match self {
            Signature::Plain { into_marked, .. } => into_marked,
            Signature::Marked { .. } => true,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signature::Plain {
                arity,
                into_marked: false,
            } => write!(f, "V^{arity} -> V"),
            Signature::Plain { arity, .. } => write!(f, "V^{arity} -> W"),
            Signature::Marked { k, l } => write!(f, "V^{k} W V^{l} -> Z"),
        }
    }
}

/// A multilinear map stored as a table from basis tuples to vectors.
///
/// The `suspended` flag says whether degrees (of inputs, outputs and the map
/// itself) are read on the suspended side, where every basis element is
/// shifted up by one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiMap {
    name: String,
    signature: Signature,
    degree: i64,
    suspended: bool,
    field: Field,
    source: Arc<GradedBasis>,
    marked: Option<Arc<GradedBasis>>,
    target: Arc<GradedBasis>,
    table: BTreeMap<Vec<Letter>, Vector>,
}

impl MultiMap {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        signature: Signature,
        degree: i64,
        suspended: bool,
        field: Field,
        source: Arc<GradedBasis>,
        marked: Option<Arc<GradedBasis>>,
        target: Arc<GradedBasis>,
    ) -> Result<Self> {
        let name = name.into();
        if signature.arity() == 0 {
            return Err(Error::Arity(format!("{name}: maps of arity 0 are not supported")));
        }
        if matches!(signature, Signature::Marked { .. }) && marked.is_none() {
            return Err(Error::Signature(format!(
                "{name}: a marked signature needs a module basis"
            )));
        }
        Ok(MultiMap {
            name,
            signature,
            degree,
            suspended,
            field,
            source,
            marked,
            target,
            table: BTreeMap::new(),
        })
    }

    /// An empty map with the same shape, name and grading.
    pub fn empty_like(&self) -> Self {
        MultiMap {
            table: BTreeMap::new(),
            ..self.clone()
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn arity(&self) -> usize {
        self.signature.arity()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_suspended(&self) -> bool {
        self.suspended
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn source(&self) -> &Arc<GradedBasis> {
        &self.source
    }

    pub fn marked_basis(&self) -> Option<&Arc<GradedBasis>> {
        self.marked.as_ref()
    }

    pub fn target(&self) -> &Arc<GradedBasis> {
        &self.target
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[Letter], &Vector)> + '_ {
        self.table.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    fn shift(&self) -> i64 {
        i64::from(self.suspended)
    }

    /// The basis the input at `pos` is drawn from.
    pub fn input_basis(&self, pos: usize) -> &GradedBasis {
        if self.signature.mark_position() == Some(pos) {
            self.marked.as_deref().expect("checked at construction")
        } else {
            &self.source
        }
    }

    /// Degree of an input tuple in this map's grading.
    pub fn input_degree(&self, inputs: &[Letter]) -> i64 {
        inputs
            .iter()
            .enumerate()
            .map(|(p, &x)| self.input_basis(p).degree(x) + self.shift())
            .sum()
    }

    pub fn output_degree(&self, letter: Letter) -> i64 {
        self.target.degree(letter) + self.shift()
    }

    pub fn render_inputs(&self, inputs: &[Letter]) -> Vec<String> {
        inputs
            .iter()
            .enumerate()
            .map(|(p, &x)| self.input_basis(p).label(x).to_string())
            .collect()
    }

    fn check_inputs(&self, inputs: &[Letter]) -> Result<()> {
        if inputs.len() != self.arity() {
            return Err(Error::Arity(format!(
                "{}: expected {} inputs, got {}",
                self.name,
                self.arity(),
                inputs.len()
            )));
        }
        for (p, &x) in inputs.iter().enumerate() {
            if x as usize >= self.input_basis(p).len() {
                return Err(Error::Basis(format!(
                    "{}: input {p} is letter {x}, outside basis {:?}",
                    self.name,
                    self.input_basis(p).name()
                )));
            }
        }
        Ok(())
    }

    /// Adds `output` to the value on `inputs`, checking degree homogeneity.
    pub fn insert(&mut self, inputs: Vec<Letter>, output: Vector) -> Result<()> {
        self.check_inputs(&inputs)?;
        for (y, c) in output.iter() {
            if y as usize >= self.target.len() {
                return Err(Error::Basis(format!("{}: output letter {y} out of range", self.name)));
            }
            if c.field() != self.field {
                return Err(Error::Invalid(format!("{}: coefficient over the wrong field", self.name)));
            }
        }
        let expected = self.input_degree(&inputs) + self.degree;
        for (y, _) in output.iter() {
            let found = self.output_degree(y);
            if found != expected {
                return Err(Error::Degree {
                    context: format!(
                        "{}({}) -> {}",
                        self.name,
                        self.render_inputs(&inputs).join(", "),
                        self.target.label(y)
                    ),
                    expected,
                    found,
                });
            }
        }
        let entry = self.table.entry(inputs).or_default();
        *entry = entry.add(&output);
        if entry.is_zero() {
            self.table.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    /// Builder form of [`insert`](Self::insert) with labels.
    pub fn set(&mut self, inputs: &[&str], output: &[(&str, Scalar)]) -> Result<()> {
        let letters = inputs
            .iter()
            .enumerate()
            .map(|(p, l)| {
                let b = if p < self.arity() {
                    self.input_basis(p)
                } else {
                    &self.source
                };
                b.index_of(l)
                    .ok_or_else(|| Error::Basis(format!("{}: unknown label {l:?}", self.name)))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut v = Vector::zero();
        for (l, c) in output {
            let y = self
                .target
                .index_of(l)
                .ok_or_else(|| Error::Basis(format!("{}: unknown output label {l:?}", self.name)))?;
            v.add_term(y, c);
        }
        self.insert(letters, v)
    }

    pub fn apply(&self, inputs: &[Letter]) -> Option<&Vector> {
        self.table.get(inputs)
    }

    /// Re-checks every entry against the declared degree.
    pub fn audit_degrees(&self) -> Result<()> {
        for (inputs, out) in &self.table {
            let expected = self.input_degree(inputs) + self.degree;
            for (y, _) in out.iter() {
                if self.output_degree(y) != expected {
                    return Err(Error::Degree {
                        context: format!("{}({})", self.name, self.render_inputs(inputs).join(", ")),
                        expected,
                        found: self.output_degree(y),
                    });
                }
            }
        }
        Ok(())
    }

    /// Conjugates by the suspension in the given direction. The table keys
    /// are unchanged; each value picks up the sign of moving the desuspensions
    /// past the preceding inputs, which is the same in both directions.
    pub fn suspend_conjugate(&self, direction: Direction) -> Result<MultiMap> {
        let want_suspended = matches!(direction, Direction::ToSuspended);
        if self.suspended == want_suspended {
            return Err(Error::Signature(format!(
                "{} is already {}",
                self.name,
                if self.suspended { "suspended" } else { "unsuspended" }
            )));
        }
        let n = self.arity() as i64;
        let degree = if want_suspended {
            self.degree + 1 - n
        } else {
            self.degree - 1 + n
        };
        let mut out = MultiMap {
            degree,
            suspended: want_suspended,
            table: BTreeMap::new(),
            ..self.clone()
        };
        for (inputs, v) in &self.table {
            let exponent: i64 = inputs
                .iter()
                .enumerate()
                .map(|(p, &x)| (n - 1 - p as i64) * (self.input_basis(p).degree(x) + 1))
                .sum();
            out.table
                .insert(inputs.clone(), v.scaled(&self.field.sign(exponent)));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    ToSuspended,
    ToUnsuspended,
}

/// `(-1)^{map_degree · Σ passed}`: the sign of moving a map past elements.
pub fn koszul_sign(field: Field, map_degree: i64, passed: &[i64]) -> Scalar {
    field.sign(map_degree * passed.iter().sum::<i64>())
}

/// One tensor factor of a graded tensor product of maps.
#[derive(Debug, Clone, Copy)]
pub enum Factor<'a> {
    Id,
    Map(&'a MultiMap),
}

impl Factor<'_> {
    fn arity(&self) -> usize {
        match self {
            Factor::Id => 1,
            Factor::Map(m) => m.arity(),
        }
    }
}

/// Evaluates `φ_1 ⊗ ... ⊗ φ_r` on a word. Each factor consumes consecutive
/// entries and contributes the Koszul sign of moving past all earlier
/// entries of the input word.
pub fn tensor_apply(field: Field, factors: &[Factor<'_>], space: &BarSpace, word: &Word) -> Result<FormalSum> {
    let total: usize = factors.iter().map(Factor::arity).sum();
    if total != word.len() {
        return Err(Error::Arity(format!(
            "tensor product of total arity {total} applied to a word of length {}",
            word.len()
        )));
    }
    // Partial outputs: (letters, mark, coefficient).
    let mut partial: Vec<(Vec<Letter>, Option<usize>, Scalar)> = vec![(Vec::new(), None, field.one())];
    let mut pos = 0;
    for factor in factors {
        let n = factor.arity();
        let block = Word::from_parts(word.letters()[pos..pos + n].to_vec(), None);
        let block_mark = word.mark().filter(|&m| m >= pos && m < pos + n).map(|m| m - pos);
        match factor {
            Factor::Id => {
                for (letters, mark, _) in partial.iter_mut() {
                    if block_mark.is_some() {
                        if mark.is_some() {
                            return Err(Error::Signature("two marked entries".into()));
                        }
                        *mark = Some(letters.len());
                    }
                    letters.push(block.letters()[0]);
                }
            }
            Factor::Map(m) => {
                if m.signature().mark_position() != block_mark {
                    return Err(Error::Signature(format!(
                        "{} expects its marked input at {:?}, word has it at {:?}",
                        m.name(),
                        m.signature().mark_position(),
                        block_mark
                    )));
                }
                let sign = field.sign(m.degree() * space.prefix_degree(word, pos));
                let value = match m.apply(block.letters()) {
                    Some(v) => v,
                    None => return Ok(FormalSum::zero()),
                };
                let mut next = Vec::new();
                for (letters, mark, c) in &partial {
                    for (y, a) in value.iter() {
                        let mut l = letters.clone();
                        let mut mk = *mark;
                        if m.signature().output_marked() {
                            if mk.is_some() {
                                return Err(Error::Signature("two marked entries".into()));
                            }
                            mk = Some(l.len());
                        }
                        l.push(y);
                        next.push((l, mk, &(c * a) * &sign));
                    }
                }
                partial = next;
            }
        }
        pos += n;
    }
    let mut out = FormalSum::zero();
    for (letters, mark, c) in partial {
        out.add_term(Word::from_parts(letters, mark), &c);
    }
    Ok(out)
}

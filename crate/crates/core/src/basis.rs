//! Finite graded bases and sparse vectors over them.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Index of a basis element.
pub type Letter = u32;

/// A finite, named, ordered basis where every element carries an integer
/// degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedBasis {
    name: String,
    labels: Vec<String>,
    degrees: Vec<i64>,
}

impl GradedBasis {
    pub fn new<S: Into<String>>(
        name: S,
        elements: impl IntoIterator<Item = (String, i64)>,
    ) -> Result<Arc<Self>> {
        let name = name.into();
        let (labels, degrees): (Vec<_>, Vec<_>) = elements.into_iter().unzip();
        if labels.is_empty() {
            return Err(Error::Basis(format!("basis {name:?} is empty")));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::Basis(format!("basis {name:?} has an empty label")));
            }
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(Error::Basis(format!(
                    "basis {name:?} repeats label {l:?} (positions {j} and {i})"
                )));
            }
        }
        Ok(Arc::new(GradedBasis {
            name,
            labels,
            degrees,
        }))
    }

    /// Convenience constructor for tests and fixtures.
    pub fn from_pairs(name: &str, elements: &[(&str, i64)]) -> Result<Arc<Self>> {
        Self::new(name, elements.iter().map(|(l, d)| (l.to_string(), *d)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn degree(&self, i: Letter) -> i64 {
        self.degrees[i as usize]
    }

    pub fn label(&self, i: Letter) -> &str {
        &self.labels[i as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<Letter> {
        self.labels.iter().position(|l| l == label).map(|i| i as Letter)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        0..self.labels.len() as Letter
    }

    pub fn elements(&self) -> impl Iterator<Item = (&str, i64)> + '_ {
        self.labels
            .iter()
            .map(String::as_str)
            .zip(self.degrees.iter().copied())
    }

    pub fn has_degree(&self, d: i64) -> bool {
        self.degrees.contains(&d)
    }

    pub fn of_degree(&self, d: i64) -> impl Iterator<Item = Letter> + '_ {
        self.letters().filter(move |&i| self.degree(i) == d)
    }

    /// The dual basis: element `e*` has degree `-|e|`, so evaluation is a
    /// degree-zero pairing. A trailing `*` is toggled, which identifies the
    /// double dual with the original labels.
    pub fn dual(&self) -> Arc<GradedBasis> {
        let toggle = |s: &str| match s.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{s}*"),
        };
        Arc::new(GradedBasis {
            name: toggle(&self.name),
            labels: self.labels.iter().map(|l| toggle(l)).collect(),
            degrees: self.degrees.iter().map(|d| -d).collect(),
        })
    }
}

/// A sparse linear combination of basis elements. Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    terms: BTreeMap<Letter, Scalar>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis_element(i: Letter, field: Field) -> Self {
        Vector::term(i, field.one())
    }

    pub fn term(i: Letter, c: Scalar) -> Self {
        let mut v = Vector::zero();
        v.add_term(i, &c);
        v
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

    pub fn coefficient(&self, i: Letter) -> Option<&Scalar> {
        self.terms.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Letter, &Scalar)> + '_ {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn add_term(&mut self, i: Letter, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&i) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&i);
                }
            }
            None => {
                self.terms.insert(i, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, a) in other.iter() {
            self.add_term(i, &(a * c));
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        for (i, a) in other.iter() {
            out.add_term(i, a);
        }
        out
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        for (i, a) in other.iter() {
            out.add_term(i, &-a);
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        let mut out = Vector::zero();
        out.add_scaled(self, c);
        out
    }

    /// The common degree of all terms, or `None` for zero or mixed vectors.
    pub fn homogeneous_degree(&self, basis: &GradedBasis) -> Option<i64> {
        let mut degs = self.terms.keys().map(|&i| basis.degree(i));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn render(&self, basis: &GradedBasis) -> String {
        render_terms(self.iter().map(|(i, c)| (basis.label(i).to_string(), c)))
    }
}

/// Renders `c1*x1 + c2*x2 - ...` with unit coefficients elided.
pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        let (neg, abs) = if c.is_negative() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if abs.is_one() {
            out.push_str(&label);
        } else {
            let _ = write!(out, "{abs}*{label}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(GradedBasis::from_pairs("A", &[]).is_err());
        assert!(GradedBasis::from_pairs("A", &[("x", 0), ("x", 1)]).is_err());
    }

    #[test]
    fn dual_negates_and_round_trips() {
        let a = GradedBasis::from_pairs("A", &[("1", 0), ("t", -1)]).unwrap();
        let d = a.dual();
        assert_eq!(d.name(), "A*");
        assert_eq!(d.label(1), "t*");
        assert_eq!(d.degree(1), 1);
        assert_eq!(*d.dual(), *a);
    }

    #[test]
    fn vector_cancels_to_zero() {
        let f = Field::Rational;
        let mut v = Vector::basis_element(0, f);
        v.add_term(1, &f.from_int(3));
        let w = v.sub(&v);
        assert!(w.is_zero());
        let b = GradedBasis::from_pairs("A", &[("1", 0), ("t", -1)]).unwrap();
        assert_eq!(v.render(&b), "1 + 3*t");
        assert_eq!(v.homogeneous_degree(&b), None);
        assert_eq!(Vector::basis_element(1, f).homogeneous_degree(&b), Some(-1));
    }
}

//! Inner-product diagrams: one open circle carrying the pairing, with planar
//! trees of multiplications planted in its slots.
//!
//! Slots are stored in argument order: the `r` top slots, then the left
//! special slot, then the `s` bottom slots, then the right special slot. This
//! is also the counterclockwise order in which leaves are read off.

mod eval;
mod faces;
mod poset;

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::word::Combination;

pub use eval::{evaluate, evaluate_vectors, naturality_check};
pub use faces::{check_d_squared, enumerate_faces, CancellationCase, DSquaredReport, ExportFormat, FaceComplex};
pub use poset::{associahedron_oracle, poset_isomorphic, GradedPoset};

/// Default bound on `k + l` for face enumeration.
pub const DEFAULT_BOUND: usize = 6;

/// A planted planar tree: a leaf (an external input, by id) or a
/// multiplication vertex with at least two children.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Leaf(u32),
    Node(Vec<Tree>),
}

impl Tree {
    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(c) => c.iter().map(Tree::leaf_count).sum(),
        }
    }

    /// `Σ (arity − 2)` over internal vertices.
    pub fn excess(&self) -> i64 {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(c) => c.len() as i64 - 2 + c.iter().map(Tree::excess).sum::<i64>(),
        }
    }

    pub fn leaves(&self, out: &mut Vec<u32>) {
        match self {
            Tree::Leaf(i) => out.push(*i),
            Tree::Node(c) => c.iter().for_each(|t| t.leaves(out)),
        }
    }

    /// Leaf sets of all internal vertices, with the leaf set of each
    /// vertex's parent (`None` at the root).
    fn vertices(&self, parent: Option<&[u32]>, out: &mut Vec<(Vec<u32>, Option<Vec<u32>>)>) {
        if let Tree::Node(children) = self {
            let mut mine = Vec::new();
            self.leaves(&mut mine);
            mine.sort_unstable();
            for c in children {
                c.vertices(Some(&mine), out);
            }
            out.push((mine, parent.map(<[u32]>::to_vec)));
        }
    }

    /// Every way of grouping `n` adjacent children of one internal vertex
    /// under a new vertex, `2 ≤ n ≤ arity − 1`.
    fn insertions(&self, out: &mut Vec<Tree>) {
        let Tree::Node(children) = self else {
            return;
        };
        let p = children.len();
        for n in 2..p {
            for start in 0..=p - n {
                let mut c = children[..start].to_vec();
                c.push(Tree::Node(children[start..start + n].to_vec()));
                c.extend_from_slice(&children[start + n..]);
                out.push(Tree::Node(c));
            }
        }
        for (i, child) in children.iter().enumerate() {
            let mut sub = Vec::new();
            child.insertions(&mut sub);
            for t in sub {
                let mut c = children.clone();
                c[i] = t;
                out.push(Tree::Node(c));
            }
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(i) => f.write_str(&leaf_name(*i)),
            Tree::Node(c) => {
                write!(f, "m_{}(", c.len())?;
                for (i, t) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    t.write(f)?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Leaf ids print as `a, b, …, z`, then `x26, x27, …`.
pub fn leaf_name(i: u32) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("x{i}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    top: usize,
    slots: Vec<Tree>,
}

/// Formal sums of diagrams over the two-element field.
pub type DiagramSum = Combination<Diagram>;

impl Diagram {
    /// `slots` in argument order; the left special slot sits at index `top`.
    pub fn new(top: usize, slots: Vec<Tree>) -> Result<Self> {
        if slots.len() < top + 2 {
            return Err(Error::Invalid(format!(
                "a circle with {top} top slots needs at least {} slots",
                top + 2
            )));
        }
        fn check(t: &Tree) -> bool {
            match t {
                Tree::Leaf(_) => true,
                Tree::Node(c) => c.len() >= 2 && c.iter().all(check),
            }
        }
        if !slots.iter().all(check) {
            return Err(Error::Invalid("internal vertices need at least two children".into()));
        }
        let d = Diagram { top, slots };
        let mut leaves = d.leaves();
        leaves.sort_unstable();
        leaves.dedup();
        if leaves.len() != d.leaf_count() {
            return Err(Error::Invalid("leaf ids must be distinct".into()));
        }
        Ok(d)
    }

    /// The bare pairing `⟨x_1, …, x_{k+l+2}⟩_{k,l}` with leaves `0..k+l+2`.
    pub fn bare(k: usize, l: usize) -> Self {
        Diagram {
            top: k,
            slots: (0..(k + l + 2) as u32).map(Tree::Leaf).collect(),
        }
    }

    /// `(r, s)`: numbers of top and bottom slots.
    pub fn shape(&self) -> (usize, usize) {
        (self.top, self.slots.len() - self.top - 2)
    }

    pub fn slots(&self) -> &[Tree] {
        &self.slots
    }

    pub fn left_index(&self) -> usize {
        self.top
    }

    pub fn right_index(&self) -> usize {
        self.slots.len() - 1
    }

    pub fn leaf_count(&self) -> usize {
        self.slots.iter().map(Tree::leaf_count).sum()
    }

    /// Leaf ids in counterclockwise order.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.slots.iter().for_each(|t| t.leaves(&mut out));
        out
    }

    /// Non-special circle slots plus `Σ (arity − 2)` over multiplication
    /// vertices.
    pub fn degree(&self) -> i64 {
        let (r, s) = self.shape();
        (r + s) as i64 + self.slots.iter().map(Tree::excess).sum::<i64>()
    }

    /// Leaf sets of all multiplication vertices, each with its parent's
    /// leaf set (`None` when it sits directly on the circle).
    pub fn vertices(&self) -> Vec<(Vec<u32>, Option<Vec<u32>>)> {
        let mut out = Vec::new();
        self.slots.iter().for_each(|t| t.vertices(None, &mut out));
        out
    }

    /// All diagrams obtained by inserting one new multiplication vertex,
    /// with multiplicity. Circle insertions group cyclically adjacent slots
    /// but never both special slots; a group containing a special slot takes
    /// its place.
    pub fn boundary_terms(&self) -> Vec<Diagram> {
        let mut out = Vec::new();
        let ns = self.slots.len();
        let (left, right) = (self.left_index(), self.right_index());
        for n in 2..ns {
            for p in 0..ns {
                let block: Vec<usize> = (p..p + n).map(|i| i % ns).collect();
                let has_left = block.contains(&left);
                let has_right = block.contains(&right);
                if has_left && has_right {
                    continue;
                }
                let node = Tree::Node(block.iter().map(|&i| self.slots[i].clone()).collect());
                let d = if has_right {
                    let after = (p + n) % ns;
                    let mut slots: Vec<Tree> = (after..p).map(|i| self.slots[i].clone()).collect();
                    slots.push(node);
                    Diagram {
                        top: left - after,
                        slots,
                    }
                } else {
                    let mut slots = self.slots[..p].to_vec();
                    slots.push(node);
                    slots.extend_from_slice(&self.slots[p + n..]);
                    let top = if has_left {
                        p
                    } else if p + n <= left {
                        left - (n - 1)
                    } else {
                        left
                    };
                    Diagram { top, slots }
                };
                out.push(d);
            }
        }
        for (i, t) in self.slots.iter().enumerate() {
            let mut sub = Vec::new();
            t.insertions(&mut sub);
            for t in sub {
                let mut slots = self.slots.clone();
                slots[i] = t;
                out.push(Diagram { top: self.top, slots });
            }
        }
        out
    }

    /// The differential over the two-element field.
    pub fn differential(&self) -> DiagramSum {
        let mut sum = DiagramSum::zero();
        let one = Field::ModTwo.one();
        for d in self.boundary_terms() {
            sum.add_term(d, &one);
        }
        sum
    }

    /// Parses `<a,b,m_2(c,d)>_{k,l}` (also accepts `⟨ ⟩`). Leaves get ids by
    /// sorted label order; labels must be distinct.
    pub fn parse(input: &str) -> Result<(Diagram, Vec<String>)> {
        parse::diagram(input)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, t) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            t.write(f)?;
        }
        let (r, s) = self.shape();
        write!(f, ">_{{{r},{s}}}")
    }
}

/// Renders a sum of diagrams as `D1 + D2 + …` in sorted order.
pub fn render_sum(sum: &DiagramSum) -> String {
    if sum.is_zero() {
        return "0".into();
    }
    sum.keys().map(ToString::to_string).collect::<Vec<_>>().join(" + ")
}

mod parse {
    use super::*;

    enum Raw {
        Leaf(String),
        Node(Vec<Raw>),
    }

    struct Parser<'a> {
        chars: Vec<char>,
        pos: usize,
        src: &'a str,
    }

    impl Parser<'_> {
        fn err(&self, msg: &str) -> Error {
            Error::Parse(format!("{msg} at position {} in {:?}", self.pos, self.src))
        }

        fn skip_ws(&mut self) {
            while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<char> {
            self.skip_ws();
            self.chars.get(self.pos).copied()
        }

        fn expect(&mut self, c: char) -> Result<()> {
            if self.peek() == Some(c) {
                self.pos += 1;
                Ok(())
            } else {
                Err(self.err(&format!("expected {c:?}")))
            }
        }

        fn ident(&mut self) -> Result<String> {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
            {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected a label"));
            }
            Ok(self.chars[start..self.pos].iter().collect())
        }

        fn number(&mut self) -> Result<usize> {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            s.parse().map_err(|_| self.err("expected a number"))
        }

        fn list(&mut self, close: char) -> Result<Vec<Raw>> {
            let mut items = vec![self.item()?];
            while self.peek() == Some(',') {
                self.pos += 1;
                items.push(self.item()?);
            }
            self.expect(close)?;
            Ok(items)
        }

        fn item(&mut self) -> Result<Raw> {
            let name = self.ident()?;
            if self.peek() != Some('(') {
                return Ok(Raw::Leaf(name));
            }
            let arity = match name.strip_prefix("m_").or_else(|| name.strip_prefix('m')) {
                Some(n) if !n.is_empty() => Some(n.parse::<usize>().map_err(|_| self.err("bad operation name"))?),
                _ if name == "m" => None,
                _ => return Err(self.err(&format!("unknown operation {name:?}"))),
            };
            self.pos += 1;
            let children = self.list(')')?;
            if children.len() < 2 {
                return Err(self.err("multiplications need at least two inputs"));
            }
            if arity.is_some_and(|a| a != children.len()) {
                return Err(self.err(&format!("{name} applied to {} inputs", children.len())));
            }
            Ok(Raw::Node(children))
        }
    }

    fn collect<'a>(raw: &'a Raw, out: &mut Vec<&'a str>) {
        match raw {
            Raw::Leaf(s) => out.push(s),
            Raw::Node(c) => c.iter().for_each(|r| collect(r, out)),
        }
    }

    fn build(raw: &Raw, labels: &[&str]) -> Tree {
        match raw {
            Raw::Leaf(s) => Tree::Leaf(labels.binary_search(&s.as_str()).expect("collected") as u32),
            Raw::Node(c) => Tree::Node(c.iter().map(|r| build(r, labels)).collect()),
        }
    }

    pub(super) fn diagram(src: &str) -> Result<(Diagram, Vec<String>)> {
        let mut p = Parser {
            chars: src.chars().collect(),
            pos: 0,
            src,
        };
        let close = match p.peek() {
            Some('<') => '>',
            Some('⟨') => '⟩',
            _ => return Err(p.err("expected '<'")),
        };
        p.pos += 1;
        let slots = p.list(close)?;
        p.expect('_')?;
        let braced = p.peek() == Some('{');
        if braced {
            p.pos += 1;
        }
        let k = p.number()?;
        p.expect(',')?;
        let l = p.number()?;
        if braced {
            p.expect('}')?;
        }
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        if slots.len() != k + l + 2 {
            return Err(Error::Parse(format!(
                "shape ({k},{l}) needs {} circle slots, found {} in {src:?}",
                k + l + 2,
                slots.len()
            )));
        }
        let mut labels = Vec::new();
        slots.iter().for_each(|r| collect(r, &mut labels));
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!("repeated leaf label in {src:?}")));
        }
        let trees = slots.iter().map(|r| build(r, &labels)).collect();
        let d = Diagram::new(k, trees)?;
        Ok((d, labels.into_iter().map(String::from).collect()))
    }
}

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

use super::poset::GradedPoset;
use super::Diagram;

/// The cells reachable from the bare diagram of one shape, graded by degree,
/// with incidence given by the support of the differential.
#[derive(Debug, Clone)]
pub struct FaceComplex {
    shape: (usize, usize),
    /// Sorted by `(degree, serialization)`.
    cells: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
    faces: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::Parse(format!("unknown export format {other:?} (expected dot or json)"))),
        }
    }
}

/// Closes the bare `(k,l)` diagram under single insertions.
pub fn enumerate_faces(k: usize, l: usize, bound: usize) -> Result<FaceComplex> {
    if k + l > bound {
        return Err(Error::Bound {
            requested: k + l,
            bound,
        });
    }
    let top = Diagram::bare(k, l);
    let mut seen: BTreeMap<Diagram, BTreeSet<Diagram>> = BTreeMap::new();
    let mut frontier = vec![top];
    while let Some(d) = frontier.pop() {
        if seen.contains_key(&d) {
            continue;
        }
        let support: BTreeSet<Diagram> = d.differential().keys().cloned().collect();
        frontier.extend(support.iter().filter(|f| !seen.contains_key(*f)).cloned());
        seen.insert(d, support);
    }
    let mut cells: Vec<Diagram> = seen.keys().cloned().collect();
    cells.sort_by_cached_key(|d| (d.degree(), d.to_string()));
    let index: HashMap<Diagram, usize> = cells.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
    let mut faces = vec![Vec::new(); cells.len()];
    let mut cofaces = vec![Vec::new(); cells.len()];
    for (i, d) in cells.iter().enumerate() {
        for f in &seen[d] {
            let j = index[f];
            faces[i].push(j);
            cofaces[j].push(i);
        }
        faces[i].sort_unstable();
    }
    cofaces.iter_mut().for_each(|c| c.sort_unstable());
    Ok(FaceComplex {
        shape: (k, l),
        cells,
        index,
        faces,
        cofaces,
    })
}

impl FaceComplex {
    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn cells(&self) -> &[Diagram] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// Codimension-one faces of cell `i`.
    pub fn faces(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    pub fn cofaces(&self, i: usize) -> &[usize] {
        &self.cofaces[i]
    }

    pub fn top_dimension(&self) -> usize {
        self.shape.0 + self.shape.1
    }

    /// Cell counts by degree `0..=k+l`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.top_dimension() + 1];
        for d in &self.cells {
            f[d.degree() as usize] += 1;
        }
        f
    }

    pub fn euler(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn poset(&self) -> GradedPoset {
        GradedPoset::new(
            self.cells.iter().map(|d| d.degree() as usize).collect(),
            self.faces.clone(),
            self.cells.iter().map(ToString::to_string).collect(),
        )
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => self.to_dot(),
            ExportFormat::Json => self.to_json(),
        }
    }

    fn to_dot(&self) -> String {
        let (k, l) = self.shape;
        let mut out = format!("digraph faces_{k}_{l} {{\n  rankdir=TB;\n");
        for (i, d) in self.cells.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{d}\", degree={}];\n", d.degree()));
        }
        for (i, fs) in self.faces.iter().enumerate() {
            for j in fs {
                out.push_str(&format!("  n{i} -> n{j};\n"));
            }
        }
        out.push_str("}\n");
        out
    }

    fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Cell {
            id: usize,
            diagram: String,
            degree: i64,
            faces: Vec<usize>,
        }
        #[derive(Serialize)]
        struct Doc {
            shape: [usize; 2],
            f_vector: Vec<usize>,
            cells: Vec<Cell>,
        }
        let doc = Doc {
            shape: [self.shape.0, self.shape.1],
            f_vector: self.f_vector(),
            cells: self
                .cells
                .iter()
                .enumerate()
                .map(|(i, d)| Cell {
                    id: i,
                    diagram: d.to_string(),
                    degree: d.degree(),
                    faces: self.faces[i].clone(),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}

/// How the two ways of producing a term of `d²` relate: the two new
/// vertices sit on different outputs, or one feeds directly into the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CancellationCase {
    DifferentOutputs,
    SameOutput,
}

#[derive(Debug, Clone, Serialize)]
pub struct DSquaredReport {
    pub shape: [usize; 2],
    pub cells: usize,
    /// Terms of `d∘d` before cancellation, over all cells.
    pub expanded_terms: usize,
    pub different_outputs: usize,
    pub same_output: usize,
    /// Cells on which some term does not occur exactly twice.
    pub failures: Vec<String>,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Classifies the pair of new vertices of `target` relative to `source`.
pub(crate) fn classify(source: &Diagram, target: &Diagram) -> Option<CancellationCase> {
    let old: BTreeSet<Vec<u32>> = source.vertices().into_iter().map(|(v, _)| v).collect();
    let new: Vec<(Vec<u32>, Option<Vec<u32>>)> =
        target.vertices().into_iter().filter(|(v, _)| !old.contains(v)).collect();
    if new.len() != 2 {
        return None;
    }
    let nested = new[0].1.as_ref() == Some(&new[1].0) || new[1].1.as_ref() == Some(&new[0].0);
    Some(if nested {
        CancellationCase::SameOutput
    } else {
        CancellationCase::DifferentOutputs
    })
}

/// Expands `d∘d` on every cell of the `(k,l)` complex, checks that each term
/// occurs exactly twice and sorts the pairs into the two cancellation cases.
pub fn check_d_squared(k: usize, l: usize, bound: usize) -> Result<DSquaredReport> {
    let fc = enumerate_faces(k, l, bound)?;
    let mut report = DSquaredReport {
        shape: [k, l],
        cells: fc.len(),
        expanded_terms: 0,
        different_outputs: 0,
        same_output: 0,
        failures: Vec::new(),
    };
    for cell in fc.cells() {
        let mut counts: BTreeMap<Diagram, usize> = BTreeMap::new();
        for mid in cell.boundary_terms() {
            for t in mid.boundary_terms() {
                report.expanded_terms += 1;
                *counts.entry(t).or_default() += 1;
            }
        }
        let mut ok = true;
        for (t, n) in counts {
            if n != 2 {
                ok = false;
                continue;
            }
            match classify(cell, &t) {
                Some(CancellationCase::DifferentOutputs) => report.different_outputs += 1,
                Some(CancellationCase::SameOutput) => report.same_output += 1,
                None => ok = false,
            }
        }
        if !ok {
            report.failures.push(cell.to_string());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_f_vectors() {
        let f = |k, l| enumerate_faces(k, l, 6).unwrap().f_vector();
        assert_eq!(f(0, 0), vec![1]);
        assert_eq!(f(1, 0), vec![2, 1]);
        assert_eq!(f(2, 0), vec![5, 5, 1]);
        assert_eq!(f(0, 2), vec![5, 5, 1]);
        assert_eq!(f(1, 1), vec![6, 6, 1]);
        assert_eq!(f(3, 0), vec![14, 21, 9, 1]);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(enumerate_faces(4, 3, 6), Err(Error::Bound { requested: 7, bound: 6 })));
    }

    #[test]
    fn incidence_is_symmetric() {
        let fc = enumerate_faces(2, 1, 6).unwrap();
        for i in 0..fc.len() {
            for &j in fc.faces(i) {
                assert!(fc.cofaces(j).contains(&i));
                assert_eq!(fc.cells()[j].degree() + 1, fc.cells()[i].degree());
            }
        }
    }

    #[test]
    fn d_squared_on_top_cell_of_pentagon() {
        let r = check_d_squared(2, 0, 6).unwrap();
        assert!(r.passed());
        // The top cell alone contributes ten terms pairing into five vertices.
        let top = Diagram::bare(2, 0);
        let n: usize = top.boundary_terms().iter().map(|m| m.boundary_terms().len()).sum();
        assert_eq!(n, 10);
    }

    #[test]
    fn exports_are_stable() {
        let fc = enumerate_faces(1, 0, 6).unwrap();
        let dot = fc.export(ExportFormat::Dot);
        assert_eq!(dot.matches("label=").count(), 3);
        assert_eq!(dot.matches("->").count(), 2);
        assert_eq!(dot, enumerate_faces(1, 0, 6).unwrap().export(ExportFormat::Dot));
        let json: serde_json::Value =
            serde_json::from_str(&enumerate_faces(2, 0, 6).unwrap().export(ExportFormat::Json)).unwrap();
        assert_eq!(json["cells"].as_array().unwrap().len(), 11);
        let single = enumerate_faces(0, 0, 6).unwrap().export(ExportFormat::Dot);
        assert_eq!(single.matches("->").count(), 0);
    }
}

use std::collections::{BTreeMap, BTreeSet};

/// A finite graded poset given by its covering relation: `faces[i]` lists
/// the elements directly below `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoset {
    ranks: Vec<usize>,
    faces: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
    names: Vec<String>,
}

impl GradedPoset {
    pub fn new(ranks: Vec<usize>, faces: Vec<Vec<usize>>, names: Vec<String>) -> Self {
        assert_eq!(ranks.len(), faces.len());
        assert_eq!(ranks.len(), names.len());
        let mut cofaces = vec![Vec::new(); ranks.len()];
        for (i, fs) in faces.iter().enumerate() {
            for &j in fs {
                cofaces[j].push(i);
            }
        }
        GradedPoset {
            ranks,
            faces,
            cofaces,
            names,
        }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn faces(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Element counts by rank.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.ranks.iter().copied().max().map_or(0, |r| r + 1);
        let mut f = vec![0; top];
        self.ranks.iter().for_each(|&r| f[r] += 1);
        f
    }

    /// Whether `map` (indexed by elements of `self`) is a rank-preserving
    /// bijection onto `other` carrying covering relations exactly.
    pub fn is_isomorphism(&self, other: &GradedPoset, map: &[usize]) -> bool {
        if map.len() != self.len() || other.len() != self.len() {
            return false;
        }
        let mut hit = vec![false; other.len()];
        for &j in map {
            if j >= other.len() || std::mem::replace(&mut hit[j], true) {
                return false;
            }
        }
        (0..self.len()).all(|i| {
            let mine: BTreeSet<usize> = self.faces[i].iter().map(|&f| map[f]).collect();
            let theirs: BTreeSet<usize> = other.faces[map[i]].iter().copied().collect();
            self.ranks[i] == other.ranks[map[i]] && mine == theirs
        })
    }
}

/// The face poset of the associahedron on `n + 2` leaves, built from
/// partial bracketings: a face is a set of pairwise nested-or-disjoint
/// intervals of length between 2 and `n + 1`, of dimension `n − #intervals`.
pub fn associahedron_oracle(n: usize) -> GradedPoset {
    assert!(n >= 1);
    let m = n + 2;
    let intervals: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 2..=m).map(move |j| (i, j)))
        .filter(|&(i, j)| j - i < m)
        .collect();
    let compatible = |a: (usize, usize), b: (usize, usize)| {
        a.1 <= b.0 || b.1 <= a.0 || (a.0 <= b.0 && b.1 <= a.1) || (b.0 <= a.0 && a.1 <= b.1)
    };
    // Grow sets of compatible intervals in increasing index order.
    let mut faces: Vec<Vec<usize>> = vec![Vec::new()];
    let mut stack = vec![Vec::<usize>::new()];
    while let Some(set) = stack.pop() {
        let from = set.last().map_or(0, |&i| i + 1);
        for i in from..intervals.len() {
            if set.iter().all(|&j| compatible(intervals[i], intervals[j])) {
                let mut next = set.clone();
                next.push(i);
                faces.push(next.clone());
                stack.push(next);
            }
        }
    }
    faces.sort();
    let index: BTreeMap<Vec<usize>, usize> = faces.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let ranks = faces.iter().map(|f| n - f.len()).collect();
    let covers = faces
        .iter()
        .map(|f| {
            (0..intervals.len())
                .filter(|i| !f.contains(i))
                .filter_map(|i| {
                    let mut g = f.clone();
                    g.push(i);
                    g.sort_unstable();
                    index.get(&g).copied()
                })
                .collect()
        })
        .collect();
    let names = faces
        .iter()
        .map(|f| {
            let parts: Vec<String> = f.iter().map(|&i| format!("[{},{})", intervals[i].0, intervals[i].1)).collect();
            format!("{{{}}}", parts.join(" "))
        })
        .collect();
    GradedPoset::new(ranks, covers, names)
}

/// Refines a joint coloring of two posets until stable; colors are
/// comparable across the two.
fn refine(a: &GradedPoset, b: &GradedPoset, ca: &mut [u32], cb: &mut [u32]) {
    let mut classes = 0;
    loop {
        let sig = |p: &GradedPoset, c: &[u32], i: usize| {
            let mut down: Vec<u32> = p.faces[i].iter().map(|&j| c[j]).collect();
            let mut up: Vec<u32> = p.cofaces[i].iter().map(|&j| c[j]).collect();
            down.sort_unstable();
            up.sort_unstable();
            (c[i], down, up)
        };
        let sa: Vec<_> = (0..a.len()).map(|i| sig(a, ca, i)).collect();
        let sb: Vec<_> = (0..b.len()).map(|i| sig(b, cb, i)).collect();
        let palette: BTreeMap<_, u32> = sa
            .iter()
            .chain(&sb)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        for (c, s) in ca.iter_mut().zip(&sa) {
            *c = palette[s];
        }
        for (c, s) in cb.iter_mut().zip(&sb) {
            *c = palette[s];
        }
        if palette.len() == classes {
            return;
        }
        classes = palette.len();
    }
}

fn histogram(c: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    c.iter().for_each(|&x| *h.entry(x).or_default() += 1);
    h
}

fn search(a: &GradedPoset, b: &GradedPoset, mut ca: Vec<u32>, mut cb: Vec<u32>) -> Option<Vec<usize>> {
    refine(a, b, &mut ca, &mut cb);
    let h = histogram(&ca);
    if h != histogram(&cb) {
        return None;
    }
    let Some((&color, _)) = h.iter().filter(|(_, &n)| n > 1).min_by_key(|(_, &n)| n) else {
        let by_color: BTreeMap<u32, usize> = cb.iter().enumerate().map(|(j, &c)| (c, j)).collect();
        let map: Vec<usize> = ca.iter().map(|c| by_color[c]).collect();
        return a.is_isomorphism(b, &map).then_some(map);
    };
    let fresh = ca.iter().chain(&cb).max().copied().unwrap_or(0) + 1;
    let v = ca.iter().position(|&c| c == color).expect("class is nonempty");
    for w in (0..b.len()).filter(|&w| cb[w] == color) {
        let mut na = ca.clone();
        let mut nb = cb.clone();
        na[v] = fresh;
        nb[w] = fresh;
        if let Some(map) = search(a, b, na, nb) {
            return Some(map);
        }
    }
    None
}

/// Decides isomorphism of graded posets by color refinement with
/// individualization; a returned map is checked before it is handed out.
pub fn poset_isomorphic(a: &GradedPoset, b: &GradedPoset) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.f_vector() != b.f_vector() {
        return None;
    }
    let ca: Vec<u32> = a.ranks.iter().map(|&r| r as u32).collect();
    let cb: Vec<u32> = b.ranks.iter().map(|&r| r as u32).collect();
    search(a, b, ca, cb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_f_vectors() {
        assert_eq!(associahedron_oracle(1).f_vector(), vec![2, 1]);
        assert_eq!(associahedron_oracle(2).f_vector(), vec![5, 5, 1]);
        assert_eq!(associahedron_oracle(3).f_vector(), vec![14, 21, 9, 1]);
        assert_eq!(associahedron_oracle(4).f_vector(), vec![42, 84, 56, 14, 1]);
    }

    #[test]
    fn equal_f_vectors_are_not_enough() {
        // A 4-cycle against two doubled edges.
        let cycle = |pairs: &[(usize, usize)]| {
            let mut faces = vec![vec![]; 4];
            for &(u, v) in pairs {
                faces.push(vec![u, v]);
            }
            let n = faces.len();
            GradedPoset::new(
                (0..n).map(|i| usize::from(i >= 4)).collect(),
                faces,
                (0..n).map(|i| i.to_string()).collect(),
            )
        };
        let square = cycle(&[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let digons = cycle(&[(0, 1), (1, 0), (2, 3), (3, 2)]);
        assert!(poset_isomorphic(&square, &digons).is_none());
        let relabeled = cycle(&[(2, 0), (0, 3), (3, 1), (1, 2)]);
        let map = poset_isomorphic(&square, &relabeled).unwrap();
        assert!(square.is_isomorphism(&relabeled, &map));
    }
}

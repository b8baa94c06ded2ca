//! Finite abstract simplicial complexes.
//!
//! Vertices are labelled `1..=n` at the public boundary (constructors and the
//! text format) and stored zero-based internally. Every simplex is a strictly
//! increasing vertex tuple; the complex is always downward closed and holds all
//! `n` singletons.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest simplex (in vertices) accepted by the closure routine.
pub const MAX_CLOSURE_SIZE: usize = 24;

#[derive(Clone)]
pub struct SimplicialComplex {
    n: usize,
    /// `levels[d]` holds the d-simplices in lexicographic order.
    levels: Vec<Vec<Vec<usize>>>,
    index: Vec<HashSet<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Builds the downward closure of `simplices` on nodes `1..=n`.
    pub fn new<I, S>(n: usize, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut zero_based = Vec::new();
        for s in simplices {
            let s = s.as_ref();
            if s.is_empty() {
                return Err(Error::EmptySimplex);
            }
            let mut t = Vec::with_capacity(s.len());
            for &v in s {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                t.push(v - 1);
            }
            zero_based.push(t);
        }
        Self::from_zero_based(n, zero_based)
    }

    /// Same as [`SimplicialComplex::new`] but with vertices labelled `0..n`.
    pub fn from_zero_based<I, S>(n: usize, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        if n == 0 {
            return Err(Error::NoNodes);
        }
        let mut builder = Builder::new(n);
        for s in simplices {
            let s = s.as_ref();
            if s.is_empty() {
                return Err(Error::EmptySimplex);
            }
            let mut t = s.to_vec();
            t.sort_unstable();
            t.dedup();
            if let Some(&v) = t.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v + 1, n });
            }
            builder.close(t)?;
        }
        Ok(builder.finish())
    }

    /// `n` isolated vertices.
    pub fn nodes_only(n: usize) -> Result<Self> {
        Self::from_zero_based(n, std::iter::empty::<Vec<usize>>())
    }

    /// Every subset of at most `d + 1` of the `n` nodes.
    pub fn full_skeleton(n: usize, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoNodes);
        }
        let mut levels = vec![Vec::new(); d.min(n - 1) + 1];
        for (k, level) in levels.iter_mut().enumerate() {
            *level = Combinations::new(n, k + 1).collect();
        }
        Ok(Self::from_levels(n, levels))
    }

    /// Trusted constructor: `levels` must already be closed and sorted.
    pub(crate) fn from_levels(n: usize, mut levels: Vec<Vec<Vec<usize>>>) -> Self {
        while levels.len() > 1 && levels.last().is_some_and(|l| l.is_empty()) {
            levels.pop();
        }
        let index = levels
            .iter()
            .map(|l| l.iter().cloned().collect::<HashSet<_>>())
            .collect();
        Self { n, levels, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Highest populated dimension.
    pub fn dim(&self) -> usize {
        self.levels.len() - 1
    }

    /// The d-simplices (zero-based vertices) in lexicographic order.
    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.levels.get(d).map_or(&[], |l| l.as_slice())
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    /// Total number of simplices over all dimensions.
    pub fn num_simplices(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// Membership of a strictly increasing zero-based tuple.
    pub fn contains(&self, simplex: &[usize]) -> bool {
        match simplex.len() {
            0 => false,
            k => self.index.get(k - 1).is_some_and(|s| s.contains(simplex)),
        }
    }

    /// All simplices of dimension at most `d`.
    pub fn skeleton(&self, d: usize) -> Self {
        if d >= self.dim() {
            return self.clone();
        }
        Self {
            n: self.n,
            levels: self.levels[..=d].to_vec(),
            index: self.index[..=d].to_vec(),
        }
    }

    /// Simplices of dimension ≥ 1 that are not a face of a larger simplex,
    /// ordered by dimension and then lexicographically.
    pub fn facets(&self) -> Vec<&[usize]> {
        let mut out = Vec::new();
        for d in 1..=self.dim() {
            for s in &self.levels[d] {
                if !self.has_coface(s) {
                    out.push(s.as_slice());
                }
            }
        }
        out
    }

    fn has_coface(&self, s: &[usize]) -> bool {
        let Some(up) = self.index.get(s.len()) else {
            return false;
        };
        let mut buf = Vec::with_capacity(s.len() + 1);
        (0..self.n).filter(|v| !s.contains(v)).any(|v| {
            buf.clear();
            buf.extend_from_slice(s);
            buf.push(v);
            buf.sort_unstable();
            up.contains(&buf)
        })
    }

    /// Applies the vertex relabelling `v -> perm[v]` (zero-based).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let levels = self
            .levels
            .iter()
            .map(|level| {
                let mut l: Vec<Vec<usize>> = level
                    .iter()
                    .map(|s| {
                        let mut t: Vec<usize> = s.iter().map(|&v| perm[v]).collect();
                        t.sort_unstable();
                        t
                    })
                    .collect();
                l.sort();
                l
            })
            .collect();
        Self::from_levels(self.n, levels)
    }

    /// Serializes to the text format: a `n <count>` header, then one facet
    /// per line with one-based vertex indices.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for f in self.facets() {
            let line: Vec<String> = f.iter().map(|v| (v + 1).to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text format and closes the listed simplices. Blank lines
    /// and `#` comments are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut n = None;
        let mut simplices = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some(n) = n else {
                let mut parts = line.split_whitespace();
                if parts.next() != Some("n") {
                    return Err(parse_err(line_no, "expected header `n <count>`"));
                }
                let count = parts
                    .next()
                    .and_then(|c| c.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(line_no, "bad node count"))?;
                if parts.next().is_some() {
                    return Err(parse_err(line_no, "trailing tokens after node count"));
                }
                n = Some(count);
                continue;
            };
            let mut s = Vec::new();
            for tok in line.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| parse_err(line_no, &format!("bad vertex `{tok}`")))?;
                if v == 0 || v > n {
                    return Err(parse_err(line_no, &format!("vertex {v} outside 1..={n}")));
                }
                s.push(v);
            }
            simplices.push(s);
        }
        let n = n.ok_or_else(|| parse_err(0, "missing `n <count>` header"))?;
        Self::new(n, simplices)
    }
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.levels == other.levels
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<usize> = self.levels.iter().map(Vec::len).collect();
        f.debug_struct("SimplicialComplex")
            .field("n", &self.n)
            .field("counts", &counts)
            .field("facets", &self.facets())
            .finish()
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

struct Builder {
    n: usize,
    levels: Vec<HashSet<Vec<usize>>>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Self {
            n,
            levels: vec![(0..n).map(|v| vec![v]).collect()],
        }
    }

    fn close(&mut self, s: Vec<usize>) -> Result<()> {
        let k = s.len();
        if k > MAX_CLOSURE_SIZE {
            return Err(Error::SimplexTooLarge {
                size: k,
                limit: MAX_CLOSURE_SIZE,
            });
        }
        while self.levels.len() < k {
            self.levels.push(HashSet::new());
        }
        if self.levels[k - 1].contains(&s) {
            return Ok(());
        }
        for mask in 1u32..(1u32 << k) {
            let face: Vec<usize> = (0..k)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| s[b])
                .collect();
            self.levels[face.len() - 1].insert(face);
        }
        Ok(())
    }

    fn finish(self) -> SimplicialComplex {
        let levels = self
            .levels
            .into_iter()
            .map(|set| {
                let mut l: Vec<Vec<usize>> = set.into_iter().collect();
                l.sort();
                l
            })
            .collect();
        SimplicialComplex::from_levels(self.n, levels)
    }
}

/// Lexicographic k-subsets of `0..n`.
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Self { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let k = cur.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn filled_triangle() -> SimplicialComplex {
        SimplicialComplex::new(3, [[1, 2, 3]]).unwrap()
    }

    #[test]
    fn closes_a_single_triangle() {
        let k = filled_triangle();
        assert_eq!(k.count(0), 3);
        assert_eq!(k.count(1), 3);
        assert_eq!(k.count(2), 1);
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn hollow_triangle_has_no_two_simplex() {
        let k = SimplicialComplex::new(3, [[1, 2], [2, 3], [1, 3]]).unwrap();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.count(1), 3);
        assert_eq!(k.count(2), 0);
    }

    #[test]
    fn triangle_plus_pendant_edge() {
        let k = SimplicialComplex::new(4, vec![vec![1, 2, 3], vec![3, 4]]).unwrap();
        assert_eq!(k.dim(), 2);
        assert_eq!(k.simplices(0), &[vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(
            k.simplices(1),
            &[vec![0, 1], vec![0, 2], vec![1, 2], vec![2, 3]]
        );
        assert_eq!(k.simplices(2), &[vec![0, 1, 2]]);
        assert_eq!(k.facets(), vec![&[2usize, 3][..], &[0, 1, 2][..]]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            SimplicialComplex::new(3, [[1, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        );
        assert_eq!(
            SimplicialComplex::new(3, [[0, 1]]),
            Err(Error::VertexOutOfRange { vertex: 0, n: 3 })
        );
        assert_eq!(
            SimplicialComplex::new(3, [Vec::<usize>::new()]),
            Err(Error::EmptySimplex)
        );
        assert_eq!(SimplicialComplex::nodes_only(0), Err(Error::NoNodes));
    }

    #[test]
    fn repeated_vertices_are_collapsed() {
        let k = SimplicialComplex::new(3, [[2, 1, 2]]).unwrap();
        assert_eq!(k, SimplicialComplex::new(3, [[1, 2]]).unwrap());
    }

    #[test]
    fn skeleton_examples() {
        let k = filled_triangle();
        let hollow = SimplicialComplex::new(3, [[1, 2], [2, 3], [1, 3]]).unwrap();
        assert_eq!(k.skeleton(1), hollow);
        assert_eq!(k.skeleton(0), SimplicialComplex::nodes_only(3).unwrap());
        assert_eq!(k.skeleton(7), k);

        let tet = SimplicialComplex::new(4, [[1, 2, 3, 4]]).unwrap();
        let s = tet.skeleton(2);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.count(2), 4);
        assert_eq!(s.count(1), 6);
        assert_eq!(s.count(0), 4);
    }

    #[test]
    fn full_skeleton_matches_closure() {
        let k = SimplicialComplex::full_skeleton(5, 2).unwrap();
        let tris: Vec<Vec<usize>> = Combinations::new(5, 3).collect();
        assert_eq!(k, SimplicialComplex::from_zero_based(5, &tris).unwrap());
        assert_eq!(k.count(2), 10);
        assert_eq!(SimplicialComplex::full_skeleton(2, 4).unwrap().dim(), 1);
    }

    #[test]
    fn combinations_are_lexicographic() {
        let c: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(
            c,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn text_round_trip() {
        let k = SimplicialComplex::new(5, vec![vec![1, 2, 3], vec![3, 4]]).unwrap();
        let text = k.to_text();
        assert_eq!(text, "n 5\n3 4\n1 2 3\n");
        assert_eq!(SimplicialComplex::from_text(&text).unwrap(), k);
    }

    #[test]
    fn text_parse_errors() {
        assert!(matches!(
            SimplicialComplex::from_text("1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            SimplicialComplex::from_text("n 3\n1 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            SimplicialComplex::from_text("n 3\n1 4\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            SimplicialComplex::from_text("# nothing\n"),
            Err(Error::Parse { .. })
        ));
        let k = SimplicialComplex::from_text("# c\nn 3 # three nodes\n\n1 2 3\n").unwrap();
        assert_eq!(k, filled_triangle());
    }
}

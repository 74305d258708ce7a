//! Pairwise-overlap digraph construction and superstring assembly along a path.

use crate::instance::Instance;
use crate::weight::Weight;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("not a simple path")]
    NotSimple,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
}

/// Largest `z` such that the length-`z` suffix of `a` equals the length-`z`
/// prefix of `b`; `z` may reach `min(|a|, |b|)`.
pub fn max_overlap(a: &str, b: &str) -> usize {
    let (a, b) = (a.as_bytes(), b.as_bytes());
    let max = a.len().min(b.len());
    (0..=max).rev().find(|&z| a[a.len() - z..] == b[..z]).unwrap_or(0)
}

/// Complete directed graph over the instance's strings; the edge i -> j is
/// weighted by the maximal suffix/prefix overlap of string i onto string j.
/// Diagonal entries are invalid and never read.
#[derive(Debug, Clone)]
pub struct OverlapGraph {
    n: usize,
    w: Vec<i32>,
}

impl OverlapGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Overlap length for the edge `i -> j`, `i != j`.
    pub fn overlap(&self, i: usize, j: usize) -> usize {
        debug_assert_ne!(i, j, "diagonal is invalid");
        self.w[i * self.n + j] as usize
    }

    pub fn edge_weight(&self, i: usize, j: usize) -> Weight {
        Weight::finite(self.overlap(i, j) as i64)
    }
}

/// Build the overlap graph by direct descending-z scans per ordered pair.
pub fn build_graph(inst: &Instance) -> OverlapGraph {
    let n = inst.n();
    let mut w = vec![-1i32; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let z = max_overlap(inst.string(i), inst.string(j));
                w[i * n + j] = i32::try_from(z).expect("overlap fits i32");
            }
        }
    }
    OverlapGraph { n, w }
}

/// An ordered sequence of distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<usize>,
}

impl Path {
    pub fn new(vertices: Vec<usize>) -> Result<Path, PathError> {
        let mut seen = 0u64;
        for &v in &vertices {
            if v >= 64 {
                return Err(PathError::VertexOutOfRange(v));
            }
            if seen >> v & 1 == 1 {
                return Err(PathError::NotSimple);
            }
            seen |= 1 << v;
        }
        Ok(Path { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Sum of edge weights along consecutive pairs; 0 for a single vertex.
    pub fn weight(&self, g: &OverlapGraph) -> Weight {
        let mut total = Weight::ZERO;
        for pair in self.vertices.windows(2) {
            total = total + g.edge_weight(pair[0], pair[1]);
        }
        total
    }

    /// Join with `next`, which must start at this path's last vertex; the
    /// shared vertex appears once in the result.
    pub fn join(&self, next: &Path) -> Result<Path, PathError> {
        match (self.vertices.last(), next.vertices.first()) {
            (Some(a), Some(b)) if a == b => {
                let mut vs = self.vertices.clone();
                vs.extend_from_slice(&next.vertices[1..]);
                Path::new(vs)
            }
            _ => Err(PathError::NotSimple),
        }
    }
}

/// Assemble the superstring read off a path: each step appends the part of
/// the next string that extends past the overlap. The result has length
/// `sum of string lengths - path weight` and contains every visited string.
pub fn superstring_from_path(
    path: &Path,
    g: &OverlapGraph,
    inst: &Instance,
) -> Result<String, PathError> {
    if path.vertices.iter().any(|&v| v >= inst.n()) {
        return Err(PathError::VertexOutOfRange(path.vertices.iter().copied().max().unwrap()));
    }
    let mut vs = path.vertices.iter();
    let first = match vs.next() {
        Some(&v) => v,
        None => return Ok(String::new()),
    };
    let mut t = inst.string(first).to_string();
    let mut prev = first;
    for &v in vs {
        let z = g.overlap(prev, v);
        t.push_str(&inst.string(v)[z..]);
        prev = v;
    }
    Ok(t)
}

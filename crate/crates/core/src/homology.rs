//! First homology from the cellular chain complex of a triangulation.

use std::fmt;

use crate::error::{Error, Result};
use crate::skeleton::Skeleton;
use crate::triangulation::{edge_index, face_vertices, Triangulation, EDGE_VERTICES};

/// Invariant factors of a finitely generated abelian group, in divisibility
/// order. `0` stands for a copy of `Z`; the empty list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HomologyProfile {
    pub h1_invariant_factors: Vec<u64>,
}

impl HomologyProfile {
    pub fn is_trivial(&self) -> bool {
        self.h1_invariant_factors.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.h1_invariant_factors
            .iter()
            .filter(|&&d| d == 0)
            .count()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.h1_invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .h1_invariant_factors
            .iter()
            .map(|&d| {
                if d == 0 {
                    "Z".to_string()
                } else {
                    format!("Z_{d}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }
}

/// Nonzero diagonal entries of the Smith normal form, each dividing the next.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<u64> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<i128>> = (0..rows)
        .map(|r| (0..cols).map(|c| i128::from(m.get(r, c))).collect())
        .collect();
    let mut diag = Vec::new();
    let mut top = 0;
    while top < rows.min(cols) {
        // Pivot on the smallest nonzero magnitude in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for r in top..rows {
            for c in top..cols {
                if a[r][c] != 0 && best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(top, pr);
        for row in a.iter_mut() {
            row.swap(top, pc);
        }
        loop {
            let pivot = a[top][top];
            let mut dirty = false;
            for r in top + 1..rows {
                let q = a[r][top] / pivot;
                if q != 0 {
                    for c in top..cols {
                        a[r][c] -= q * a[top][c];
                    }
                }
                dirty |= a[r][top] != 0;
            }
            for c in top + 1..cols {
                let q = a[top][c] / pivot;
                if q != 0 {
                    for r in top..rows {
                        a[r][c] -= q * a[r][top];
                    }
                }
                dirty |= a[top][c] != 0;
            }
            if !dirty {
                // Enforce divisibility against the rest of the block.
                let mut fix = None;
                'scan: for r in top + 1..rows {
                    for c in top + 1..cols {
                        if a[r][c] % pivot != 0 {
                            fix = Some(r);
                            break 'scan;
                        }
                    }
                }
                match fix {
                    None => break,
                    Some(r) => {
                        for c in top..cols {
                            a[top][c] += a[r][c];
                        }
                    }
                }
            }
            // Move the smallest remaining entry of the pivot row/column up.
            let mut best = (top, top);
            for r in top..rows {
                if a[r][top] != 0 && a[r][top].abs() < a[best.0][best.1].abs() {
                    best = (r, top);
                }
            }
            for c in top..cols {
                if a[top][c] != 0 && a[top][c].abs() < a[best.0][best.1].abs() {
                    best = (top, c);
                }
            }
            a.swap(top, best.0);
            for row in a.iter_mut() {
                row.swap(top, best.1);
            }
        }
        diag.push(a[top][top].unsigned_abs() as u64);
        top += 1;
    }
    diag
}

/// Cellular boundary maps `∂1 : C1 -> C0` and `∂2 : C2 -> C1`, with chains
/// as columns.
pub fn boundary_matrices(t: &Triangulation, s: &Skeleton) -> (IntMatrix, IntMatrix) {
    let mut d1 = IntMatrix::zeros(s.num_vertices, s.num_edges);
    let mut edge_done = vec![false; s.num_edges];
    for x in 0..6 * t.size() {
        let c = s.edge_class[x];
        if edge_done[c] || s.edge_reversed[x] {
            continue;
        }
        edge_done[c] = true;
        let (tet, e) = (x / 6, x % 6);
        let [a, b] = EDGE_VERTICES[e];
        d1.add(s.vertex_of(tet, b), c, 1);
        d1.add(s.vertex_of(tet, a), c, -1);
    }

    let mut d2 = IntMatrix::zeros(s.num_edges, s.num_faces);
    let mut face_done = vec![false; s.num_faces];
    for tet in 0..t.size() {
        for f in 0..4 {
            let c = s.face_class[4 * tet + f];
            if face_done[c] {
                continue;
            }
            face_done[c] = true;
            let [a, b, v] = face_vertices(f);
            for (x, y, sign) in [(b, v, 1), (a, v, -1), (a, b, 1)] {
                let idx = 6 * tet + edge_index(x, y);
                let ec = s.edge_class[idx];
                let orient = if s.edge_reversed[idx] { -1 } else { 1 };
                d2.add(ec, c, sign * orient);
            }
        }
    }
    (d1, d2)
}

fn rank_of(diag: &[u64]) -> usize {
    diag.iter().filter(|&&d| d != 0).count()
}

impl Triangulation {
    /// First homology group (over the integers).
    pub fn homology_h1(&self) -> Result<HomologyProfile> {
        let s = self.skeleton();
        if !s.is_closed_3manifold() {
            return Err(Error::NotAManifold);
        }
        let (d1, d2) = boundary_matrices(self, &s);
        let r1 = rank_of(&smith_diagonal(&d1));
        let diag2 = smith_diagonal(&d2);
        let r2 = rank_of(&diag2);
        let free = s.num_edges - r1 - r2;
        let mut factors: Vec<u64> = diag2.into_iter().filter(|&d| d > 1).collect();
        factors.sort_unstable();
        factors.extend(std::iter::repeat_n(0, free));
        Ok(HomologyProfile {
            h1_invariant_factors: factors,
        })
    }
}

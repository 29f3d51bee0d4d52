//! Closed triangulations stored as face-gluing tables.
//!
//! Face `f` of a tetrahedron is the face opposite vertex `f`. The gluing
//! stored at `(t, f)` names the adjacent tetrahedron and the permutation
//! sending vertex labels of `t` to vertex labels of the adjacent tetrahedron,
//! so face `f` of `t` meets face `perm(f)` of `adj`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::Perm4;

/// Vertex pairs of the six edges of a tetrahedron, in edge-index order.
pub const EDGE_VERTICES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Index of the edge joining vertices `a` and `b` (in either order).
#[inline]
pub fn edge_index(a: usize, b: usize) -> usize {
    const TABLE: [[u8; 4]; 4] = [[9, 0, 1, 2], [0, 9, 3, 4], [1, 3, 9, 5], [2, 4, 5, 9]];
    debug_assert!(a != b && a < 4 && b < 4);
    TABLE[a][b] as usize
}

/// The three vertices of face `f`, increasing.
#[inline]
pub fn face_vertices(f: usize) -> [usize; 3] {
    const TABLE: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
    TABLE[f]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

/// A connected closed triangulation of `n >= 1` tetrahedra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    gluings: Vec<[Gluing; 4]>,
}

impl Triangulation {
    /// Builds a triangulation from a list of `((tet, face), (adj, perm))`
    /// entries covering all `4n` faces.
    pub fn from_entries<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), (usize, Perm4))>,
    {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut table: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; n];
        for ((tet, face), (adj, perm)) in entries {
            if tet >= n || face >= 4 || adj >= n {
                return Err(Error::OutOfRange(format!("({tet}, {face}) -> {adj}")));
            }
            if table[tet][face].is_some() {
                return Err(Error::OutOfRange(format!(
                    "duplicate entry for ({tet}, {face})"
                )));
            }
            table[tet][face] = Some(Gluing { tet: adj, perm });
        }
        let mut gluings = Vec::with_capacity(n);
        for (tet, row) in table.iter().enumerate() {
            let mut out = [Gluing {
                tet: 0,
                perm: Perm4::IDENTITY,
            }; 4];
            for face in 0..4 {
                out[face] = row[face].ok_or(Error::NotClosed { tet, face })?;
            }
            gluings.push(out);
        }
        Self::from_table(gluings)
    }

    /// Validates a complete gluing table.
    pub fn from_table(gluings: Vec<[Gluing; 4]>) -> Result<Self> {
        let t = Triangulation { gluings };
        t.validate()?;
        Ok(t)
    }

    /// Wraps a table the caller has already validated.
    pub(crate) fn from_table_unchecked(gluings: Vec<[Gluing; 4]>) -> Self {
        let t = Triangulation { gluings };
        debug_assert!(t.validate().is_ok());
        t
    }

    fn validate(&self) -> Result<()> {
        let n = self.gluings.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for (tet, row) in self.gluings.iter().enumerate() {
            for (face, g) in row.iter().enumerate() {
                if g.tet >= n {
                    return Err(Error::OutOfRange(format!("({tet}, {face}) -> {}", g.tet)));
                }
                let back_face = g.perm.apply(face);
                if g.tet == tet && back_face == face {
                    return Err(Error::InvolutionViolation { tet, face });
                }
                let back = self.gluings[g.tet][back_face];
                if back.tet != tet || back.perm != g.perm.inverse() {
                    return Err(Error::InvolutionViolation { tet, face });
                }
            }
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let n = self.gluings.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(t) = stack.pop() {
            for g in &self.gluings[t] {
                if !seen[g.tet] {
                    seen[g.tet] = true;
                    count += 1;
                    stack.push(g.tet);
                }
            }
        }
        count == n
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.gluings.len()
    }

    #[inline]
    pub fn gluing(&self, tet: usize, face: usize) -> Gluing {
        self.gluings[tet][face]
    }

    pub fn gluings(&self) -> &[[Gluing; 4]] {
        &self.gluings
    }

    /// Applies an isomorphism: tetrahedron `t` becomes `tet_map[t]` and its
    /// vertex `v` becomes vertex `vertex_perms[t](v)`.
    pub fn relabel(&self, tet_map: &[usize], vertex_perms: &[Perm4]) -> Triangulation {
        let n = self.size();
        assert_eq!(tet_map.len(), n);
        assert_eq!(vertex_perms.len(), n);
        let mut out = vec![
            [Gluing {
                tet: 0,
                perm: Perm4::IDENTITY
            }; 4];
            n
        ];
        for (t, row) in self.gluings.iter().enumerate() {
            let sigma = vertex_perms[t];
            for (f, g) in row.iter().enumerate() {
                let perm = vertex_perms[g.tet].compose(g.perm).compose(sigma.inverse());
                out[tet_map[t]][sigma.apply(f)] = Gluing {
                    tet: tet_map[g.tet],
                    perm,
                };
            }
        }
        Triangulation::from_table_unchecked(out)
    }

    /// Canonical 3-spheres: the one-vertex single tetrahedron (n = 1), or
    /// the boundaries of two tetrahedra identified directly (n = 2).
    pub fn canonical_sphere(n: usize) -> Result<Triangulation> {
        match n {
            1 => {
                // Faces 0 and 1 folded together across edge 23; faces 2 and 3
                // glued by the 4-cycle 0 -> 1 -> 2 -> 3 -> 0.
                let fold = Perm4::from_images([1, 0, 2, 3]).unwrap();
                let cycle = Perm4::from_images([1, 2, 3, 0]).unwrap();
                Triangulation::from_entries(
                    1,
                    [
                        ((0, 0), (0, fold)),
                        ((0, 1), (0, fold)),
                        ((0, 2), (0, cycle)),
                        ((0, 3), (0, cycle.inverse())),
                    ],
                )
            }
            2 => {
                let id = Perm4::IDENTITY;
                Triangulation::from_entries(
                    2,
                    (0..4).flat_map(|f| [((0, f), (1, id)), ((1, f), (0, id))]),
                )
            }
            _ => Err(Error::UnsupportedSize(n)),
        }
    }

    /// Serialises to the plain-text gluing table: a line with `n`, then one
    /// `t f adj perm-index` line per face in row-major order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.size()).unwrap();
        for (t, row) in self.gluings.iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                writeln!(s, "{t} {f} {} {}", g.tet, g.perm.index()).unwrap();
            }
        }
        s
    }

    /// Parses the plain-text gluing table; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Triangulation> {
        let mut size: Option<usize> = None;
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: &str| Error::Parse {
                line: lineno + 1,
                msg: msg.to_string(),
            };
            let fields: Vec<usize> = line
                .split_whitespace()
                .map(|w| w.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| parse_err("expected non-negative integers"))?;
            match (size, fields.as_slice()) {
                (None, [n]) => size = Some(*n),
                (None, _) => return Err(parse_err("expected the tetrahedron count")),
                (Some(_), [t, f, adj, p]) => {
                    let perm = Perm4::from_index(*p).ok_or_else(|| parse_err("bad perm index"))?;
                    entries.push(((*t, *f), (*adj, perm)));
                }
                (Some(_), _) => return Err(parse_err("expected `tet face adj perm`")),
            }
        }
        let n = size.ok_or(Error::Parse {
            line: 0,
            msg: "empty input".into(),
        })?;
        Triangulation::from_entries(n, entries)
    }
}

//! Vertex, edge and face classes of a triangulation, together with edge
//! validity and the Euler characteristic of every vertex link.

use crate::perm::Perm4;
use crate::triangulation::{edge_index, face_vertices, Triangulation, EDGE_VERTICES};

/// Union-find where each element carries a parity relative to its root.
/// Used for tetrahedron edges, the parity recording whether an edge is
/// traversed in the same direction as its class representative.
#[derive(Clone, Debug)]
pub(crate) struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<u8>,
    rank: Vec<u8>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            parity: vec![0; n],
            rank: vec![0; n],
        }
    }

    /// Returns `(root, parity of x relative to root)`.
    pub fn find(&mut self, x: usize) -> (usize, u8) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (root, par) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= par;
        (root, self.parity[x])
    }

    /// Records that `a` and `b` agree up to `parity`. Returns `false` when
    /// this contradicts an earlier identification.
    pub fn union(&mut self, a: usize, b: usize, parity: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == parity;
        }
        let rel = pa ^ pb ^ parity;
        let (child, root) = if self.rank[ra] < self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[child] = root;
        self.parity[child] = rel;
        if self.rank[ra] == self.rank[rb] {
            self.rank[root] += 1;
        }
        true
    }
}

fn find_plain(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn union_plain(parent: &mut [usize], a: usize, b: usize) {
    let ra = find_plain(parent, a);
    let rb = find_plain(parent, b);
    if ra != rb {
        // Smaller index stays the root so class numbering is deterministic.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

/// Turns a root-per-element array into dense class ids numbered by first
/// occurrence.
fn densify(roots: &[usize]) -> (Vec<usize>, usize) {
    let mut id = vec![usize::MAX; roots.len()];
    let mut out = Vec::with_capacity(roots.len());
    let mut next = 0;
    for &r in roots {
        if id[r] == usize::MAX {
            id[r] = next;
            next += 1;
        }
        out.push(id[r]);
    }
    (out, next)
}

/// The cell structure induced by a gluing table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    n: usize,
    /// Class of tetrahedron vertex `4t + v`.
    pub vertex_class: Vec<usize>,
    /// Class of tetrahedron edge `6t + e`.
    pub edge_class: Vec<usize>,
    /// Whether tetrahedron edge `6t + e` runs against its class representative.
    pub edge_reversed: Vec<bool>,
    /// Class of tetrahedron face `4t + f`.
    pub face_class: Vec<usize>,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub num_faces: usize,
    pub edge_degrees: Vec<usize>,
    pub edge_valid: Vec<bool>,
    pub vertex_degrees: Vec<usize>,
    pub link_euler: Vec<i64>,
}

impl Skeleton {
    pub fn new(t: &Triangulation) -> Skeleton {
        let n = t.size();
        let mut vparent: Vec<usize> = (0..4 * n).collect();
        let mut fparent: Vec<usize> = (0..4 * n).collect();
        let mut edges = ParityUnionFind::new(6 * n);
        let mut edge_bad = vec![false; 6 * n];

        for tet in 0..n {
            for face in 0..4 {
                let g = t.gluing(tet, face);
                union_plain(&mut fparent, 4 * tet + face, 4 * g.tet + g.perm.apply(face));
                let fv = face_vertices(face);
                for &v in &fv {
                    union_plain(&mut vparent, 4 * tet + v, 4 * g.tet + g.perm.apply(v));
                }
                for (i, &a) in fv.iter().enumerate() {
                    for &b in &fv[i + 1..] {
                        // a < b here, so the source edge runs low to high.
                        let (ia, ib) = (g.perm.apply(a), g.perm.apply(b));
                        let flipped = u8::from(ia > ib);
                        let ok = edges.union(
                            6 * tet + edge_index(a, b),
                            6 * g.tet + edge_index(ia, ib),
                            flipped,
                        );
                        if !ok {
                            edge_bad[6 * tet + edge_index(a, b)] = true;
                        }
                    }
                }
            }
        }

        let vroots: Vec<usize> = (0..4 * n).map(|x| find_plain(&mut vparent, x)).collect();
        let froots: Vec<usize> = (0..4 * n).map(|x| find_plain(&mut fparent, x)).collect();
        let eparts: Vec<(usize, u8)> = (0..6 * n).map(|x| edges.find(x)).collect();
        let eroots: Vec<usize> = eparts.iter().map(|&(r, _)| r).collect();

        let (vertex_class, num_vertices) = densify(&vroots);
        let (face_class, num_faces) = densify(&froots);
        let (edge_class, num_edges) = densify(&eroots);

        // Orient each edge class along its first tetrahedron edge.
        let mut rep_parity = vec![None; num_edges];
        let mut edge_reversed = vec![false; 6 * n];
        for x in 0..6 * n {
            let c = edge_class[x];
            let par = eparts[x].1;
            let base = *rep_parity[c].get_or_insert(par);
            edge_reversed[x] = par != base;
        }

        let mut edge_degrees = vec![0; num_edges];
        let mut edge_valid = vec![true; num_edges];
        for x in 0..6 * n {
            edge_degrees[edge_class[x]] += 1;
            if edge_bad[x] {
                edge_valid[edge_class[x]] = false;
            }
        }

        let mut vertex_degrees = vec![0; num_vertices];
        for &c in &vertex_class {
            vertex_degrees[c] += 1;
        }

        // Vertex links: one corner triangle per tetrahedron vertex, with
        // 3/2 link edges per corner once all faces are glued. Link vertices
        // are the ends of edge classes; an invalid edge has its two ends
        // merged, which we count once.
        let mut link_vertices = vec![0i64; num_vertices];
        let mut seen_end = vec![[false; 2]; num_edges];
        for x in 0..6 * n {
            let (tet, e) = (x / 6, x % 6);
            let c = edge_class[x];
            for (end, &v) in EDGE_VERTICES[e].iter().enumerate() {
                let oriented_end = if edge_valid[c] {
                    end ^ usize::from(edge_reversed[x])
                } else {
                    0
                };
                if !seen_end[c][oriented_end] {
                    seen_end[c][oriented_end] = true;
                    link_vertices[vertex_class[4 * tet + v]] += 1;
                }
            }
        }
        let link_euler = (0..num_vertices)
            .map(|v| {
                let f = vertex_degrees[v] as i64;
                link_vertices[v] - 3 * f / 2 + f
            })
            .collect();

        Skeleton {
            n,
            vertex_class,
            edge_class,
            edge_reversed,
            face_class,
            num_vertices,
            num_edges,
            num_faces,
            edge_degrees,
            edge_valid,
            vertex_degrees,
            link_euler,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices as i64 - self.num_edges as i64 + self.num_faces as i64 - self.n as i64
    }

    pub fn all_edges_valid(&self) -> bool {
        self.edge_valid.iter().all(|&v| v)
    }

    pub fn all_links_spheres(&self) -> bool {
        self.link_euler.iter().all(|&c| c == 2)
    }

    pub fn is_closed_3manifold(&self) -> bool {
        self.all_edges_valid() && self.all_links_spheres()
    }

    pub fn min_edge_degree(&self) -> usize {
        self.edge_degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn sorted_edge_degrees(&self) -> Vec<usize> {
        let mut d = self.edge_degrees.clone();
        d.sort_unstable();
        d
    }

    pub fn sorted_link_euler(&self) -> Vec<i64> {
        let mut d = self.link_euler.clone();
        d.sort_unstable();
        d
    }

    /// Edge class of the edge `a`–`b` of tetrahedron `tet`.
    pub fn edge_of(&self, tet: usize, a: usize, b: usize) -> usize {
        self.edge_class[6 * tet + edge_index(a, b)]
    }

    pub fn vertex_of(&self, tet: usize, v: usize) -> usize {
        self.vertex_class[4 * tet + v]
    }
}

impl Triangulation {
    pub fn skeleton(&self) -> Skeleton {
        Skeleton::new(self)
    }

    pub fn is_closed_3manifold(&self) -> bool {
        self.skeleton().is_closed_3manifold()
    }

    pub fn num_vertices(&self) -> usize {
        self.skeleton().num_vertices
    }
}

/// Applies a vertex map to a sorted vertex pair and reports the reversal
/// bit; exposed for move and homology code that walks edges.
#[inline]
pub(crate) fn map_edge(p: Perm4, a: usize, b: usize) -> (usize, bool) {
    let (ia, ib) = (p.apply(a), p.apply(b));
    (edge_index(ia, ib), (a < b) != (ia < ib))
}

//! Census enumeration of closed 3-manifold triangulations and the
//! reachability-based census of one-vertex 3-spheres.
//!
//! The enumerator builds gluing tables in walk order: faces are glued in
//! row-major order, and a face either opens the next unused tetrahedron
//! (glued by the identity) or meets a free face of a tetrahedron already in
//! use. Every isomorphism class has at least one table of this shape. A
//! partial table is dropped when another walk of the same gluings gives a
//! smaller determined prefix; the survivors are deduplicated by signature.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::isosig::IsoSig;
use crate::moves::{legal_moves, MoveKind};
use crate::perm::Perm4;
use crate::skeleton::map_edge;
use crate::triangulation::{edge_index, face_vertices, Gluing, Triangulation};

pub const DEFAULT_CEILING: usize = 6;

/// Hard limit of the enumerator's fixed-size search state.
pub const MAX_TETS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusSpec {
    pub size: usize,
    pub one_vertex_only: bool,
    pub ceiling: usize,
}

impl CensusSpec {
    pub fn new(size: usize) -> Self {
        Self {
            size,
            one_vertex_only: false,
            ceiling: DEFAULT_CEILING,
        }
    }

    pub fn one_vertex(mut self, flag: bool) -> Self {
        self.one_vertex_only = flag;
        self
    }

    pub fn with_ceiling(mut self, ceiling: usize) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::Empty);
        }
        let ceiling = self.ceiling.min(MAX_TETS);
        if self.size > ceiling {
            return Err(Error::SizeAboveCeiling {
                size: self.size,
                ceiling,
            });
        }
        Ok(())
    }
}

const FREE: u8 = u8::MAX;

/// A partially glued table in walk order.
#[derive(Clone)]
struct Partial {
    n: usize,
    used: usize,
    free: usize,
    cursor: usize,
    adj: [[u8; 4]; MAX_TETS],
    perm: [[Perm4; 4]; MAX_TETS],
    // Oriented edge identifications: parent pointer and parity to parent.
    parent: [u8; 6 * MAX_TETS],
    parity: [u8; 6 * MAX_TETS],
}

impl Partial {
    fn new(n: usize) -> Self {
        let mut parent = [0u8; 6 * MAX_TETS];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        Partial {
            n,
            used: 1,
            free: 4,
            cursor: 0,
            adj: [[FREE; 4]; MAX_TETS],
            perm: [[Perm4::IDENTITY; 4]; MAX_TETS],
            parent,
            parity: [0; 6 * MAX_TETS],
        }
    }

    fn find(&self, mut x: usize) -> (usize, u8) {
        let mut par = 0;
        while self.parent[x] as usize != x {
            par ^= self.parity[x];
            x = self.parent[x] as usize;
        }
        (x, par)
    }

    fn union(&mut self, a: usize, b: usize, parity: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == parity;
        }
        let (child, root) = if ra > rb { (ra, rb) } else { (rb, ra) };
        self.parent[child] = root as u8;
        self.parity[child] = pa ^ pb ^ parity;
        true
    }

    /// Glues `(t, f)` to `(u, p(f))`. Returns `false` if an edge becomes
    /// identified with itself in reverse.
    fn glue(&mut self, t: usize, f: usize, u: usize, p: Perm4) -> bool {
        let g = p.apply(f);
        self.adj[t][f] = u as u8;
        self.perm[t][f] = p;
        self.adj[u][g] = t as u8;
        self.perm[u][g] = p.inverse();
        let [a, b, c] = face_vertices(f);
        for (x, y) in [(a, b), (a, c), (b, c)] {
            let (e, rev) = map_edge(p, x, y);
            if !self.union(6 * t + edge_index(x, y), 6 * u + e, rev as u8) {
                return false;
            }
        }
        true
    }

    fn next_free(&self) -> Option<(usize, usize)> {
        (self.cursor..4 * self.used)
            .map(|x| (x / 4, x % 4))
            .find(|&(t, f)| self.adj[t][f] == FREE)
    }

    fn children(&self, out: &mut Vec<Partial>) {
        let Some((t, f)) = self.next_free() else {
            return;
        };
        let mut base = self.clone();
        base.cursor = 4 * t + f + 1;
        if self.used < self.n {
            let mut c = base.clone();
            let k = c.used;
            c.used += 1;
            c.free += 2;
            if c.glue(t, f, k, Perm4::IDENTITY) {
                out.push(c);
            }
        }
        for u in t..self.used {
            for g in 0..4 {
                if self.adj[u][g] != FREE || (u == t && g == f) {
                    continue;
                }
                for p in Perm4::mapping(f, g) {
                    let mut c = base.clone();
                    c.free -= 2;
                    if c.free == 0 && c.used < c.n {
                        continue;
                    }
                    if c.glue(t, f, u, p) {
                        out.push(c);
                    }
                }
            }
        }
    }

    /// False when some relabelling already yields a smaller encoding on the
    /// glued part, so no completion can be the canonical table of its class.
    /// Our own encoding is the table in row-major order.
    fn is_canonical_prefix(&self) -> bool {
        let mut image = [FREE; MAX_TETS];
        let mut preimage = [0usize; MAX_TETS];
        let mut sigma = [Perm4::IDENTITY; MAX_TETS];
        for start in 0..self.used {
            for pi in Perm4::all() {
                if start == 0 && pi.is_identity() {
                    continue;
                }
                image[..self.n].fill(FREE);
                image[start] = 0;
                preimage[0] = start;
                sigma[start] = pi;
                let mut next = 1;
                'walk: for k in 0..self.n {
                    if k >= next {
                        break;
                    }
                    let o = preimage[k];
                    let inv = sigma[o].inverse();
                    for face in 0..4 {
                        let f = inv.apply(face);
                        let (u, ours) = (self.adj[o][f], self.adj[k][face]);
                        if u == FREE || ours == FREE {
                            break 'walk;
                        }
                        let (u, p) = (u as usize, self.perm[o][f]);
                        if image[u] == FREE {
                            image[u] = next as u8;
                            preimage[next] = u;
                            sigma[u] = sigma[o].compose(p.inverse());
                            next += 1;
                        }
                        let theirs = (image[u], sigma[u].compose(p).compose(inv).index());
                        let mine = (ours, self.perm[k][face].index());
                        if theirs != mine {
                            if theirs < mine {
                                return false;
                            }
                            break 'walk;
                        }
                    }
                }
            }
        }
        true
    }

    fn is_complete(&self) -> bool {
        self.free == 0 && self.used == self.n
    }

    fn to_triangulation(&self) -> Triangulation {
        let table = (0..self.n)
            .map(|t| {
                let mut row = [Gluing {
                    tet: 0,
                    perm: Perm4::IDENTITY,
                }; 4];
                for (f, g) in row.iter_mut().enumerate() {
                    *g = Gluing {
                        tet: self.adj[t][f] as usize,
                        perm: self.perm[t][f],
                    };
                }
                row
            })
            .collect();
        Triangulation::from_table_unchecked(table)
    }
}

fn search(state: Partial, one_vertex_only: bool, sink: &mut BTreeSet<IsoSig>) {
    let mut stack = vec![state];
    let mut kids = Vec::new();
    while let Some(s) = stack.pop() {
        if !s.is_canonical_prefix() {
            continue;
        }
        if s.is_complete() {
            let t = s.to_triangulation();
            let sk = t.skeleton();
            if sk.is_closed_3manifold() && (!one_vertex_only || sk.num_vertices == 1) {
                sink.insert(t.isosig());
            }
            continue;
        }
        kids.clear();
        s.children(&mut kids);
        stack.extend(kids.drain(..).rev());
    }
}

/// Number of face choices expanded serially before the subtrees are
/// handed to the worker pool.
const SHARD_DEPTH: usize = 3;

fn shards(n: usize) -> Vec<Partial> {
    let mut level = vec![Partial::new(n)];
    for _ in 0..SHARD_DEPTH {
        let mut next = Vec::new();
        for s in &level {
            if s.is_complete() {
                next.push(s.clone());
            } else {
                s.children(&mut next);
            }
        }
        level = next;
    }
    level
}

/// Every connected closed 3-manifold triangulation of the given size, once
/// per isomorphism class, sorted by signature. Runs on the current rayon
/// pool; the output does not depend on the number of workers.
pub fn enumerate_closed(spec: &CensusSpec) -> Result<Vec<IsoSig>> {
    spec.validate()?;
    let one_vertex = spec.one_vertex_only;
    let sets: Vec<BTreeSet<IsoSig>> = shards(spec.size)
        .into_par_iter()
        .map(|s| {
            let mut sink = BTreeSet::new();
            search(s, one_vertex, &mut sink);
            sink
        })
        .collect();
    let mut all = BTreeSet::new();
    for set in sets {
        all.extend(set);
    }
    Ok(all.into_iter().collect())
}

/// Number of ways to glue `n` labelled tetrahedra face to face, divided by
/// the `n! 24^n` relabellings: `(4n-1)!! 6^(2n) / (n! 24^n)`.
pub fn raw_gluing_count(n: usize) -> BigRational {
    let mut num = BigUint::one();
    for k in (1..4 * n).step_by(2) {
        num *= k;
    }
    num *= BigUint::from(6u32).pow(2 * n as u32);
    let mut den = BigUint::from(24u32).pow(n as u32);
    for k in 1..=n {
        den *= k;
    }
    BigRational::new(num.into(), den.into())
}

/// One-vertex 3-spheres found by breadth-first search under 2-3 and 3-2
/// moves, grouped by size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SphereClosure {
    pub max_level: usize,
    pub height_allowance: usize,
    pub levels: BTreeMap<usize, BTreeSet<IsoSig>>,
}

impl SphereClosure {
    pub fn level(&self, n: usize) -> Option<&BTreeSet<IsoSig>> {
        self.levels.get(&n)
    }

    pub fn count(&self, n: usize) -> usize {
        self.levels.get(&n).map_or(0, BTreeSet::len)
    }
}

/// Size ceiling of the unrestricted search used to leave level 1.
const SEED_CEILING: usize = 5;

/// A one-vertex 3-sphere of size 2, found by breadth-first search from the
/// one-tetrahedron sphere over all four Pachner moves. Needed because the
/// one-tetrahedron sphere admits no 2-3 or 3-2 move.
pub fn level_two_seed() -> Triangulation {
    let start = Triangulation::canonical_sphere(1).expect("size 1");
    let mut seen = BTreeSet::from([start.isosig()]);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for t in &frontier {
            for kind in MoveKind::ALL {
                for (_, r) in legal_moves(t, kind) {
                    if r.size() > SEED_CEILING || !seen.insert(r.isosig()) {
                        continue;
                    }
                    if r.size() == 2 && r.num_vertices() == 1 {
                        return r;
                    }
                    next.push(r);
                }
            }
        }
        frontier = next;
    }
    unreachable!("the 3-sphere has one-vertex triangulations of size 2")
}

/// Breadth-first closure from the one-vertex 3-spheres of sizes 1 and 2
/// under 2-3 and 3-2 moves, never exceeding size `max_level + h`. Every
/// member is a 3-sphere; completeness for a given `h` is an empirical
/// question. Frontiers are expanded on the current rayon pool and merged
/// serially, so the result is independent of the worker count.
pub fn sphere_closure(max_level: usize, h: usize) -> SphereClosure {
    let mut closure = SphereClosure {
        max_level,
        height_allowance: h,
        levels: BTreeMap::new(),
    };
    let one = Triangulation::canonical_sphere(1).expect("size 1");
    closure.levels.entry(1).or_default().insert(one.isosig());
    if max_level < 2 {
        return closure;
    }
    let top = max_level + h;
    let seed = level_two_seed();
    let mut visited: BTreeSet<IsoSig> = BTreeSet::from([seed.isosig()]);
    let mut frontier = vec![seed];
    while !frontier.is_empty() {
        let found: Vec<Vec<(IsoSig, Triangulation)>> = frontier
            .par_iter()
            .map(|t| {
                let mut out = Vec::new();
                for kind in MoveKind::RESTRICTED {
                    if kind == MoveKind::TwoThree && t.size() >= top {
                        continue;
                    }
                    for (_, r) in legal_moves(t, kind) {
                        out.push((r.isosig(), r));
                    }
                }
                out
            })
            .collect();
        let mut next = Vec::new();
        for (sig, t) in found.into_iter().flatten() {
            if visited.insert(sig) {
                next.push(t);
            }
        }
        frontier = next;
    }
    for sig in visited {
        let n = sig.size().expect("own signature");
        if n <= max_level {
            closure.levels.entry(n).or_default().insert(sig);
        }
    }
    closure
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn size_one_census() {
        let all = enumerate_closed(&CensusSpec::new(1)).unwrap();
        assert_eq!(all.len(), 4);
        let one = enumerate_closed(&CensusSpec::new(1).one_vertex(true)).unwrap();
        assert_eq!(one.len(), 3);
    }

    #[test]
    fn ceiling_enforced() {
        let err = enumerate_closed(&CensusSpec::new(7)).unwrap_err();
        assert_eq!(
            err,
            Error::SizeAboveCeiling {
                size: 7,
                ceiling: 6
            }
        );
        assert!(CensusSpec::new(7).with_ceiling(8).validate().is_ok());
        assert!(CensusSpec::new(0).validate().is_err());
    }

    #[test]
    fn raw_count_size_one() {
        assert_eq!(
            raw_gluing_count(1),
            BigRational::new(BigInt::from(9), BigInt::from(2))
        );
    }

    #[test]
    fn seed_is_one_vertex_sphere() {
        let s = level_two_seed();
        assert_eq!(s.size(), 2);
        assert_eq!(s.num_vertices(), 1);
        assert!(s.homology_h1().unwrap().is_trivial());
    }
}

//! The four Pachner moves, single-move neighbourhoods, jumps, and greedy
//! simplification.
//!
//! Every move removes a small ball of tetrahedra and glues in a different
//! triangulation of the same ball. Both sides are described by assigning an
//! abstract id to each corner of the ball; faces are then matched by their
//! vertex-id sets. Surviving tetrahedra keep their relative order and are
//! compacted to the front; new tetrahedra are appended in this order:
//!
//! * 2-3 on face `f` of `a` (glued to `b`): three tetrahedra `N_k`, where
//!   `k` runs over the face's vertices `u_0 < u_1 < u_2` in `a`. `N_k` has
//!   vertices `(apex of a, apex of b, u_i, u_j)` with `{i, j} = {0,1,2} \ k`,
//!   so the new degree-three edge is edge `0-1` of each `N_k`.
//! * 3-2 on an edge: two tetrahedra `(e_0, l_0, l_1, l_2)` and
//!   `(e_1, l_0, l_1, l_2)`, glued to each other along face 0 by the
//!   identity; `e_0, e_1` are the endpoints of the removed edge and `l_m`
//!   the link vertices in walking order.
//! * 1-4 on `t`: four tetrahedra `Q_k`, a copy of `t` with vertex `k`
//!   replaced by the new interior vertex, which therefore sits at vertex 0
//!   of `Q_0`.
//! * 4-1 on a vertex: one tetrahedron whose vertex `k` is the outer vertex
//!   missing from the `k`-th of the four removed tetrahedra.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::isosig::IsoSig;
use crate::perm::Perm4;
use crate::skeleton::Skeleton;
use crate::triangulation::{face_vertices, Gluing, Triangulation, EDGE_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    TwoThree,
    ThreeTwo,
    OneFour,
    FourOne,
}

impl MoveKind {
    pub const ALL: [MoveKind; 4] = [
        MoveKind::TwoThree,
        MoveKind::ThreeTwo,
        MoveKind::OneFour,
        MoveKind::FourOne,
    ];
    pub const RESTRICTED: [MoveKind; 2] = [MoveKind::TwoThree, MoveKind::ThreeTwo];

    pub fn size_delta(self) -> isize {
        match self {
            MoveKind::TwoThree => 1,
            MoveKind::ThreeTwo => -1,
            MoveKind::OneFour => 3,
            MoveKind::FourOne => -3,
        }
    }

    pub fn vertex_delta(self) -> isize {
        match self {
            MoveKind::TwoThree | MoveKind::ThreeTwo => 0,
            MoveKind::OneFour => 1,
            MoveKind::FourOne => -1,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::TwoThree => "2-3",
            MoveKind::ThreeTwo => "3-2",
            MoveKind::OneFour => "1-4",
            MoveKind::FourOne => "4-1",
        })
    }
}

/// Where a move is applied. `sub` is a face (2-3), an edge index (3-2), a
/// vertex (4-1), or unused (1-4), all relative to tetrahedron `tet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub tet: usize,
    pub sub: usize,
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            MoveKind::TwoThree => write!(f, "2-3 tet {} face {}", self.tet, self.sub),
            MoveKind::ThreeTwo => {
                let [a, b] = EDGE_VERTICES[self.sub];
                write!(f, "3-2 tet {} edge {a}{b}", self.tet)
            }
            MoveKind::OneFour => write!(f, "1-4 tet {}", self.tet),
            MoveKind::FourOne => write!(f, "4-1 tet {} vertex {}", self.tet, self.sub),
        }
    }
}

/// A ball of tetrahedra with an abstract id on every corner.
struct LocalComplex {
    old_tets: Vec<usize>,
    old_labels: Vec<[u8; 4]>,
    new_labels: Vec<[u8; 4]>,
}

fn face_key(labels: &[u8; 4], face: usize) -> u32 {
    let mut bits = 0u32;
    for (v, &id) in labels.iter().enumerate() {
        if v != face {
            bits |= 1 << id;
        }
    }
    bits
}

/// Perm sending positions of `from` to positions of `to`, matching ids on
/// the shared face and the two opposite corners to each other.
fn matching_perm(from: &[u8; 4], from_face: usize, to: &[u8; 4], to_face: usize) -> Perm4 {
    let mut img = [0u8; 4];
    for v in 0..4 {
        img[v] = if v == from_face {
            to_face as u8
        } else {
            to.iter().position(|&x| x == from[v]).expect("shared id") as u8
        };
    }
    Perm4::from_images(img).expect("matching perm")
}

impl LocalComplex {
    /// Checks the removed tetrahedra really are glued as the abstract ids
    /// claim, then builds the retriangulated table.
    fn apply(&self, t: &Triangulation) -> Option<Triangulation> {
        let mut sorted = self.old_tets.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.old_tets.len() {
            return None;
        }
        let local_index = |tet: usize| self.old_tets.iter().position(|&x| x == tet);

        let mut old_count: BTreeMap<u32, usize> = BTreeMap::new();
        for labels in &self.old_labels {
            for f in 0..4 {
                *old_count.entry(face_key(labels, f)).or_default() += 1;
            }
        }
        let mut new_faces: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (j, labels) in self.new_labels.iter().enumerate() {
            for f in 0..4 {
                new_faces
                    .entry(face_key(labels, f))
                    .or_default()
                    .push((j, f));
            }
        }

        // Internal faces on the old side must be glued exactly as labelled.
        // Boundary faces are recorded with their new home.
        type Home = (usize, usize, Perm4);
        let mut boundary: Vec<[Option<Home>; 4]> = vec![[None; 4]; self.old_tets.len()];
        for (i, &tet) in self.old_tets.iter().enumerate() {
            let labels = &self.old_labels[i];
            for f in 0..4 {
                let key = face_key(labels, f);
                match old_count[&key] {
                    1 => {
                        let homes = new_faces.get(&key)?;
                        if homes.len() != 1 {
                            return None;
                        }
                        let (j, nf) = homes[0];
                        let gamma = matching_perm(labels, f, &self.new_labels[j], nf);
                        boundary[i][f] = Some((j, nf, gamma));
                    }
                    2 => {
                        let g = t.gluing(tet, f);
                        let k = local_index(g.tet)?;
                        let gf = g.perm.apply(f);
                        let other = &self.old_labels[k];
                        if face_key(other, gf) != key || (k == i && gf == f) {
                            return None;
                        }
                        if matching_perm(labels, f, other, gf) != g.perm {
                            return None;
                        }
                    }
                    _ => return None,
                }
            }
        }

        let n = t.size();
        let kept: Vec<usize> = (0..n).filter(|x| local_index(*x).is_none()).collect();
        let mut new_index = vec![usize::MAX; n];
        for (idx, &x) in kept.iter().enumerate() {
            new_index[x] = idx;
        }
        let base = kept.len();
        let blank = Gluing {
            tet: usize::MAX,
            perm: Perm4::IDENTITY,
        };
        let mut table = vec![[blank; 4]; base + self.new_labels.len()];

        // Where the far side of an old gluing ends up after the move.
        let target = |g: Gluing, f: usize| -> Option<Gluing> {
            match local_index(g.tet) {
                None => Some(Gluing {
                    tet: new_index[g.tet],
                    perm: g.perm,
                }),
                Some(k) => {
                    let (j, _, gamma) = boundary[k][g.perm.apply(f)]?;
                    Some(Gluing {
                        tet: base + j,
                        perm: gamma.compose(g.perm),
                    })
                }
            }
        };

        for (idx, &x) in kept.iter().enumerate() {
            for f in 0..4 {
                table[idx][f] = target(t.gluing(x, f), f)?;
            }
        }
        for (key, homes) in &new_faces {
            match homes.as_slice() {
                [(j1, f1), (j2, f2)] => {
                    if old_count.contains_key(key) {
                        return None;
                    }
                    let p = matching_perm(&self.new_labels[*j1], *f1, &self.new_labels[*j2], *f2);
                    table[base + j1][*f1] = Gluing {
                        tet: base + j2,
                        perm: p,
                    };
                    table[base + j2][*f2] = Gluing {
                        tet: base + j1,
                        perm: p.inverse(),
                    };
                }
                [_] => {}
                _ => return None,
            }
        }
        for (i, &tet) in self.old_tets.iter().enumerate() {
            for f in 0..4 {
                if let Some((j, nf, gamma)) = boundary[i][f] {
                    let far = target(t.gluing(tet, f), f)?;
                    table[base + j][nf] = Gluing {
                        tet: far.tet,
                        perm: far.perm.compose(gamma.inverse()),
                    };
                }
            }
        }
        if table.iter().flatten().any(|g| g.tet == usize::MAX) {
            return None;
        }
        Triangulation::from_table(table).ok()
    }
}

fn two_three_complex(t: &Triangulation, a: usize, fa: usize) -> Option<LocalComplex> {
    let g = t.gluing(a, fa);
    if g.tet == a {
        return None;
    }
    const A: u8 = 0;
    const B: u8 = 1;
    let u = face_vertices(fa);
    let mut la = [0u8; 4];
    let mut lb = [0u8; 4];
    la[fa] = A;
    lb[g.perm.apply(fa)] = B;
    for (k, &v) in u.iter().enumerate() {
        la[v] = 2 + k as u8;
        lb[g.perm.apply(v)] = 2 + k as u8;
    }
    let new_labels = (0..3)
        .map(|k| {
            let others: Vec<u8> = (0..3).filter(|&m| m != k).map(|m| 2 + m as u8).collect();
            [A, B, others[0], others[1]]
        })
        .collect();
    Some(LocalComplex {
        old_tets: vec![a, g.tet],
        old_labels: vec![la, lb],
        new_labels,
    })
}

fn three_two_complex(t: &Triangulation, tet: usize, edge: usize) -> Option<LocalComplex> {
    const E0: u8 = 0;
    const E1: u8 = 1;
    let [i, j] = EDGE_VERTICES[edge];
    let rest: Vec<usize> = (0..4).filter(|&v| v != i && v != j).collect();
    // Position roles within the current tetrahedron: (e0, e1, x, y), exit
    // through the face opposite x. Corner y carries link id m, x carries m-1.
    let (mut cur, mut e0, mut e1, mut x, mut y) = (tet, i, j, rest[0], rest[1]);
    let mut old_tets = Vec::with_capacity(3);
    let mut old_labels = Vec::with_capacity(3);
    for m in 0..3u8 {
        let mut labels = [0u8; 4];
        labels[e0] = E0;
        labels[e1] = E1;
        labels[x] = 2 + (m + 2) % 3;
        labels[y] = 2 + m;
        old_tets.push(cur);
        old_labels.push(labels);
        let g = t.gluing(cur, x);
        let p = g.perm;
        (cur, e0, e1, x, y) = (g.tet, p.apply(e0), p.apply(e1), p.apply(y), p.apply(x));
    }
    let new_labels = vec![[E0, 2, 3, 4], [E1, 2, 3, 4]];
    Some(LocalComplex {
        old_tets,
        old_labels,
        new_labels,
    })
}

fn one_four_complex(tet: usize) -> LocalComplex {
    const C: u8 = 4;
    let new_labels = (0..4)
        .map(|k| {
            let mut l = [0u8, 1, 2, 3];
            l[k] = C;
            l
        })
        .collect();
    LocalComplex {
        old_tets: vec![tet],
        old_labels: vec![[0, 1, 2, 3]],
        new_labels,
    }
}

fn four_one_complex(t: &Triangulation, tet: usize, vertex: usize) -> Option<LocalComplex> {
    const C: u8 = 4;
    let mut first = [0u8; 4];
    first[vertex] = C;
    let mut next_id = 1;
    for v in 0..4 {
        if v != vertex {
            first[v] = next_id;
            next_id += 1;
        }
    }
    let mut old_tets = vec![tet];
    let mut old_labels = vec![first];
    let mut queue = 0;
    while queue < old_tets.len() {
        let (cur, labels) = (old_tets[queue], old_labels[queue]);
        queue += 1;
        let missing = (0..4u8).find(|id| !labels.contains(id))?;
        let centre = labels.iter().position(|&id| id == C)?;
        for w in 0..4 {
            if w == centre {
                continue;
            }
            let g = t.gluing(cur, w);
            if old_tets.contains(&g.tet) {
                continue;
            }
            if old_tets.len() == 4 {
                return None;
            }
            let mut nl = [0u8; 4];
            for v in 0..4 {
                nl[g.perm.apply(v)] = if v == w { missing } else { labels[v] };
            }
            old_tets.push(g.tet);
            old_labels.push(nl);
        }
    }
    if old_tets.len() != 4 {
        return None;
    }
    let mut new_label = [0u8; 4];
    for labels in &old_labels {
        let missing = (0..4u8).find(|id| !labels.contains(id))?;
        new_label[missing as usize] = missing;
    }
    (new_label == [0, 1, 2, 3]).then(|| LocalComplex {
        old_tets,
        old_labels,
        new_labels: vec![[0, 1, 2, 3]],
    })
}

fn site_complex(t: &Triangulation, site: MoveSite) -> Option<LocalComplex> {
    if site.tet >= t.size()
        || site.sub
            >= if site.kind == MoveKind::ThreeTwo {
                6
            } else {
                4
            }
    {
        return None;
    }
    match site.kind {
        MoveKind::TwoThree => two_three_complex(t, site.tet, site.sub),
        MoveKind::ThreeTwo => three_two_complex(t, site.tet, site.sub),
        MoveKind::OneFour => Some(one_four_complex(site.tet)),
        MoveKind::FourOne => four_one_complex(t, site.tet, site.sub),
    }
}

fn try_apply(t: &Triangulation, site: MoveSite) -> Option<Triangulation> {
    let out = site_complex(t, site)?.apply(t)?;
    out.is_closed_3manifold().then_some(out)
}

/// Candidate sites before the legality check, one per face / edge /
/// tetrahedron / vertex class, at its first occurrence in row-major order.
fn candidate_sites(t: &Triangulation, s: &Skeleton, kind: MoveKind) -> Vec<MoveSite> {
    let n = t.size();
    let mut out = Vec::new();
    match kind {
        MoveKind::TwoThree => {
            for tet in 0..n {
                for f in 0..4 {
                    let g = t.gluing(tet, f);
                    if g.tet > tet {
                        out.push(MoveSite { kind, tet, sub: f });
                    }
                }
            }
        }
        MoveKind::ThreeTwo => {
            let mut seen = vec![false; s.num_edges];
            for x in 0..6 * n {
                let c = s.edge_class[x];
                if !seen[c] {
                    seen[c] = true;
                    if s.edge_degrees[c] == 3 && s.edge_valid[c] {
                        out.push(MoveSite {
                            kind,
                            tet: x / 6,
                            sub: x % 6,
                        });
                    }
                }
            }
        }
        MoveKind::OneFour => {
            out.extend((0..n).map(|tet| MoveSite { kind, tet, sub: 0 }));
        }
        MoveKind::FourOne => {
            let mut seen = vec![false; s.num_vertices];
            for x in 0..4 * n {
                let c = s.vertex_class[x];
                if !seen[c] {
                    seen[c] = true;
                    if s.vertex_degrees[c] == 4 {
                        out.push(MoveSite {
                            kind,
                            tet: x / 4,
                            sub: x % 4,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Every legal move of the given kind together with its result.
pub fn legal_moves(t: &Triangulation, kind: MoveKind) -> Vec<(MoveSite, Triangulation)> {
    let s = t.skeleton();
    candidate_sites(t, &s, kind)
        .into_iter()
        .filter_map(|site| try_apply(t, site).map(|r| (site, r)))
        .collect()
}

/// All legal sites of one kind, in deterministic `(tet, sub-simplex)` order.
pub fn list_moves(t: &Triangulation, kind: MoveKind) -> Vec<MoveSite> {
    legal_moves(t, kind)
        .into_iter()
        .map(|(site, _)| site)
        .collect()
}

pub fn apply_move(t: &Triangulation, site: MoveSite) -> Result<Triangulation> {
    try_apply(t, site).ok_or_else(|| Error::IllegalMove(site.to_string()))
}

/// Whether any 3-2 move is available, without building the results.
pub fn has_three_two(t: &Triangulation) -> bool {
    let s = t.skeleton();
    candidate_sites(t, &s, MoveKind::ThreeTwo)
        .into_iter()
        .any(|site| site_complex(t, site).and_then(|c| c.apply(t)).is_some())
}

/// Signatures of every triangulation one move away.
pub fn neighbors(t: &Triangulation, kinds: &[MoveKind]) -> Vec<IsoSig> {
    let mut out: Vec<IsoSig> = kinds
        .iter()
        .flat_map(|&k| legal_moves(t, k))
        .map(|(_, r)| r.isosig())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Results of single moves of one kind, one representative per class, with
/// the site that produced it. Keyed by signature so iteration is sorted.
fn step_classes(
    sources: &BTreeMap<IsoSig, (Triangulation, Vec<MoveSite>)>,
    kind: MoveKind,
) -> BTreeMap<IsoSig, (Triangulation, Vec<MoveSite>)> {
    let mut out = BTreeMap::new();
    for (tri, path) in sources.values() {
        for (site, r) in legal_moves(tri, kind) {
            out.entry(r.isosig()).or_insert_with(|| {
                let mut p = path.clone();
                p.push(site);
                (r, p)
            });
        }
    }
    out
}

/// Everything reachable by two 2-3 moves followed by two 3-2 moves, with
/// one witnessing move sequence per result.
pub fn jumps_with_paths(t: &Triangulation) -> BTreeMap<IsoSig, (Triangulation, Vec<MoveSite>)> {
    let mut start = BTreeMap::new();
    start.insert(t.isosig(), (t.clone(), Vec::new()));
    let up1 = step_classes(&start, MoveKind::TwoThree);
    let up2 = step_classes(&up1, MoveKind::TwoThree);
    let down1 = step_classes(&up2, MoveKind::ThreeTwo);
    step_classes(&down1, MoveKind::ThreeTwo)
}

pub fn jumps(t: &Triangulation) -> Vec<IsoSig> {
    jumps_with_paths(t).into_keys().collect()
}

/// Signatures reachable by a 2-3 move followed by a 3-2 move.
pub fn up_down(t: &Triangulation) -> Vec<IsoSig> {
    let mut start = BTreeMap::new();
    start.insert(t.isosig(), (t.clone(), Vec::new()));
    let up = step_classes(&start, MoveKind::TwoThree);
    step_classes(&up, MoveKind::ThreeTwo).into_keys().collect()
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub site: MoveSite,
    pub size_after: usize,
}

#[derive(Clone, Debug)]
pub struct Simplification {
    pub result: Triangulation,
    pub trace: Vec<TraceStep>,
}

/// Greedy simplification: take the first 3-2 move, else the first 4-1 move;
/// when neither exists, search up to `max_rounds` rounds of jumps for a
/// triangulation of the same size that admits a 3-2 move.
pub fn greedy_simplify(t: &Triangulation, max_rounds: usize) -> Simplification {
    let mut current = t.clone();
    let mut trace = Vec::new();
    let push = |trace: &mut Vec<TraceStep>, site: MoveSite, r: &Triangulation| {
        trace.push(TraceStep {
            site,
            size_after: r.size(),
        });
    };
    'outer: loop {
        for kind in [MoveKind::ThreeTwo, MoveKind::FourOne] {
            if let Some((site, r)) = legal_moves(&current, kind).into_iter().next() {
                push(&mut trace, site, &r);
                current = r;
                continue 'outer;
            }
        }
        // Breadth-first over jumps; each entry remembers how it was reached.
        let mut visited: BTreeMap<IsoSig, Option<(IsoSig, Vec<MoveSite>)>> = BTreeMap::new();
        let mut reps: BTreeMap<IsoSig, Triangulation> = BTreeMap::new();
        let root = current.isosig();
        visited.insert(root.clone(), None);
        reps.insert(root.clone(), current.clone());
        let mut frontier = vec![root];
        let mut found = None;
        'rounds: for _ in 0..max_rounds {
            let mut next = Vec::new();
            for sig in &frontier {
                for (target, (tri, path)) in jumps_with_paths(&reps[sig]) {
                    if visited.contains_key(&target) {
                        continue;
                    }
                    visited.insert(target.clone(), Some((sig.clone(), path)));
                    let admits = has_three_two(&tri);
                    reps.insert(target.clone(), tri);
                    if admits {
                        found = Some(target);
                        break 'rounds;
                    }
                    next.push(target);
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        let Some(target) = found else { break };
        let mut chain = Vec::new();
        let mut at = target.clone();
        while let Some(Some((parent, path))) = visited.get(&at) {
            chain.push((parent.clone(), path.clone()));
            at = parent.clone();
        }
        chain.reverse();
        for (parent, path) in chain {
            let mut tri = reps[&parent].clone();
            for site in path {
                tri = apply_move(&tri, site).expect("replayed jump move");
                push(&mut trace, site, &tri);
            }
        }
        current = reps.remove(&target).expect("target representative");
    }
    Simplification {
        result: current,
        trace,
    }
}

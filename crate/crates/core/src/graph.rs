//! Level analyses of the restricted Pachner graph of the 3-sphere: the
//! excess-height search (plain and two-phase), the jump-based length search,
//! and the Mijatović reference bound.
//!
//! Node expansion runs in parallel on the current rayon pool. All graph
//! updates happen serially afterwards in node-id order, so reports do not
//! depend on the number of workers.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::isosig::IsoSig;
use crate::moves::{has_three_two, jumps, neighbors, up_down, MoveKind};
use crate::triangulation::Triangulation;

pub const DEFAULT_MAX_HEIGHT: usize = 8;
pub const DEFAULT_MAX_ROUNDS: usize = 64;

/// Disjoint sets with union by rank and path compression.
#[derive(Clone, Debug, Default)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
            components: n,
        }
    }

    pub fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.rank.push(0);
        self.components += 1;
        id
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    /// Returns `true` if the two elements were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (child, root) = if self.rank[ra] < self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[child] = root;
        if self.rank[ra] == self.rank[rb] {
            self.rank[root] += 1;
        }
        self.components -= 1;
        true
    }
}

/// The subgraph built so far. Node ids follow first discovery.
#[derive(Clone, Debug)]
pub struct LevelGraph {
    pub base_level: usize,
    pub max_level: usize,
    sig_to_node: HashMap<IsoSig, usize>,
    sigs: Vec<IsoSig>,
    node_level: Vec<usize>,
    uf: UnionFind,
}

impl LevelGraph {
    /// Seeds the graph with one isolated node per signature, in sorted order.
    pub fn new(n: usize, level_nodes: &BTreeSet<IsoSig>) -> Self {
        let mut g = LevelGraph {
            base_level: n,
            max_level: n,
            sig_to_node: HashMap::new(),
            sigs: Vec::new(),
            node_level: Vec::new(),
            uf: UnionFind::default(),
        };
        for sig in level_nodes {
            g.insert(sig.clone(), n);
        }
        g
    }

    fn insert(&mut self, sig: IsoSig, level: usize) -> usize {
        if let Some(&id) = self.sig_to_node.get(&sig) {
            return id;
        }
        let id = self.uf.push();
        self.sig_to_node.insert(sig.clone(), id);
        self.sigs.push(sig);
        self.node_level.push(level);
        self.max_level = self.max_level.max(level);
        id
    }

    pub fn node(&self, sig: &IsoSig) -> Option<usize> {
        self.sig_to_node.get(sig).copied()
    }

    pub fn sig(&self, id: usize) -> &IsoSig {
        &self.sigs[id]
    }

    pub fn level(&self, id: usize) -> usize {
        self.node_level[id]
    }

    pub fn len(&self) -> usize {
        self.sigs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigs.is_empty()
    }

    pub fn components(&self) -> usize {
        self.uf.components()
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        self.uf.union(a, b)
    }

    /// Node ids at a level, in id order.
    pub fn nodes_at(&self, level: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&id| self.node_level[id] == level)
            .collect()
    }

    /// Adds every 2-3 arc out of the given level, creating nodes one level
    /// up as needed, and unions the endpoints.
    fn grow(&mut self, level: usize) {
        let sources = self.nodes_at(level);
        let arcs: Vec<Vec<IsoSig>> = sources
            .par_iter()
            .map(|&id| neighbors(&decode_own(&self.sigs[id]), &[MoveKind::TwoThree]))
            .collect();
        for (&id, targets) in sources.iter().zip(arcs) {
            for w in targets {
                let wid = self.insert(w, level + 1);
                self.uf.union(id, wid);
            }
        }
    }
}

fn decode_own(sig: &IsoSig) -> Triangulation {
    sig.decode().expect("signature produced by this crate")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightReport {
    pub n: usize,
    /// Component count after building up to level `n`, `n+1`, ...
    pub trace: Vec<usize>,
    /// Nodes of the graph at each of those levels.
    pub level_sizes: Vec<usize>,
    /// The excess height, or `None` when the guard stopped the search.
    pub height: Option<usize>,
}

impl HeightReport {
    pub fn result(&self) -> Result<usize> {
        self.height.ok_or(Error::Inconclusive)
    }
}

fn check_level(n: usize, level_nodes: &BTreeSet<IsoSig>) -> Result<()> {
    if level_nodes.is_empty() {
        return Err(Error::EmptyLevel(n));
    }
    Ok(())
}

/// Builds the graph upward from all of level `n` until it is connected;
/// the number of extra levels used bounds the excess height at level `n`.
pub fn height_bound(
    n: usize,
    level_nodes: &BTreeSet<IsoSig>,
    max_height: usize,
) -> Result<HeightReport> {
    check_level(n, level_nodes)?;
    let mut g = LevelGraph::new(n, level_nodes);
    let mut report = HeightReport {
        n,
        trace: vec![g.components()],
        level_sizes: vec![g.len()],
        height: None,
    };
    let mut level = n;
    while g.components() > 1 {
        if level - n >= max_height {
            return Ok(report);
        }
        g.grow(level);
        level += 1;
        report.trace.push(g.components());
        report.level_sizes.push(g.nodes_at(level).len());
    }
    report.height = Some(level - n);
    Ok(report)
}

/// Two-phase variant: build level `n+1` only, then union pairs of level
/// `n+1` nodes joined by a 2-3 move followed by a 3-2 move, without storing
/// level `n+2`. Can only certify heights up to 2.
pub fn height_bound_two_phase(
    n: usize,
    level_nodes: &BTreeSet<IsoSig>,
    max_height: usize,
) -> Result<HeightReport> {
    check_level(n, level_nodes)?;
    let mut g = LevelGraph::new(n, level_nodes);
    let mut report = HeightReport {
        n,
        trace: vec![g.components()],
        level_sizes: vec![g.len()],
        height: None,
    };
    if g.components() == 1 {
        report.height = Some(0);
        return Ok(report);
    }
    if max_height == 0 {
        return Ok(report);
    }
    g.grow(n);
    report.trace.push(g.components());
    report.level_sizes.push(g.nodes_at(n + 1).len());
    if g.components() == 1 {
        report.height = Some(1);
        return Ok(report);
    }
    if max_height == 1 {
        return Ok(report);
    }
    let sources = g.nodes_at(n + 1);
    let ends: Vec<Vec<IsoSig>> = sources
        .par_iter()
        .map(|&id| up_down(&decode_own(g.sig(id))))
        .collect();
    for (&id, targets) in sources.iter().zip(ends) {
        for w in targets {
            if let Some(wid) = g.node(&w) {
                g.union(id, wid);
            }
        }
    }
    report.trace.push(g.components());
    if g.components() == 1 {
        report.height = Some(2);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthReport {
    pub n: usize,
    /// Nodes with an arc down to level `n-1`.
    pub initial: usize,
    /// Nodes not yet reached after 0, 1, 2, ... rounds of jumps.
    pub remaining: Vec<usize>,
    /// Rounds needed to reach all of level `n`, or `None` if the guard or
    /// an exhausted frontier stopped the search.
    pub rounds: Option<usize>,
}

impl LengthReport {
    /// The bound `4j + 1` on simplification path length.
    pub fn bound(&self) -> Option<usize> {
        self.rounds.map(|j| 4 * j + 1)
    }

    pub fn result(&self) -> Result<usize> {
        self.bound().ok_or(Error::Inconclusive)
    }
}

/// Breadth-first search across level `n` by jumps, starting from the nodes
/// that admit a 3-2 move.
pub fn length_bound(
    n: usize,
    level_nodes: &BTreeSet<IsoSig>,
    max_rounds: usize,
) -> Result<LengthReport> {
    check_level(n, level_nodes)?;
    let nodes: Vec<&IsoSig> = level_nodes.iter().collect();
    let down: Vec<bool> = nodes
        .par_iter()
        .map(|s| has_three_two(&decode_own(s)))
        .collect();
    let mut reached: BTreeSet<IsoSig> = nodes
        .iter()
        .zip(&down)
        .filter(|(_, &d)| d)
        .map(|(s, _)| (*s).clone())
        .collect();
    let mut report = LengthReport {
        n,
        initial: reached.len(),
        remaining: vec![nodes.len() - reached.len()],
        rounds: None,
    };
    let mut frontier: Vec<IsoSig> = reached.iter().cloned().collect();
    let mut rounds = 0;
    while reached.len() < nodes.len() {
        if rounds >= max_rounds || frontier.is_empty() {
            return Ok(report);
        }
        let found: Vec<Vec<IsoSig>> = frontier.par_iter().map(|s| jumps(&decode_own(s))).collect();
        let mut next = BTreeSet::new();
        for sig in found.into_iter().flatten() {
            if level_nodes.contains(&sig) && !reached.contains(&sig) {
                next.insert(sig);
            }
        }
        reached.extend(next.iter().cloned());
        frontier = next.into_iter().collect();
        rounds += 1;
        report.remaining.push(nodes.len() - reached.len());
    }
    report.rounds = Some(rounds);
    Ok(report)
}

/// Mijatović's bound `6·10^6 n^2 2^(2·10^4 n^2)` on the number of moves
/// needed to reach the canonical 3-sphere from a size-`n` triangulation.
pub fn mijatovic_bound(n: usize) -> BigUint {
    let n2 = (n * n) as u64;
    let shift = 20_000 * n2;
    (BigUint::from(6_000_000u64) * n2) << shift
}

/// The corresponding bound on excess height, half the move bound.
pub fn mijatovic_height_bound(n: usize) -> BigUint {
    mijatovic_bound(n) >> 1usize
}

/// `log10` of [`mijatovic_bound`], computed without the big integer.
pub fn mijatovic_log10(n: usize) -> f64 {
    let n2 = (n * n) as f64;
    (6.0e6 * n2).log10() + 2.0e4 * n2 * std::f64::consts::LOG10_2
}

/// `log10(a / b)` for a positive big integer `a`.
pub fn log10_ratio(a: &BigUint, b: u64) -> f64 {
    let bits = a.bits();
    let shift = bits.saturating_sub(53);
    let top = (a >> shift).to_u64_digits().first().copied().unwrap_or(0) as f64;
    top.log10() + shift as f64 * std::f64::consts::LOG10_2 - (b as f64).log10()
}

impl fmt::Display for HeightReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.trace.iter().enumerate() {
            writeln!(f, "c at level {:>2}: {c}", self.n + i)?;
        }
        match self.height {
            Some(h) => write!(f, "H_{} = {h}", self.n),
            None => write!(f, "H_{}: inconclusive", self.n),
        }
    }
}

impl fmt::Display for LengthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "|I|: {}", self.initial)?;
        for (r, left) in self.remaining.iter().enumerate() {
            writeln!(f, "remaining after {r} jumps: {left}")?;
        }
        match self.bound() {
            Some(l) => write!(f, "L_{} = {l}", self.n),
            None => write!(f, "L_{}: inconclusive", self.n),
        }
    }
}

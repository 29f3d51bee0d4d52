//! Test-only oracles, written without reusing the library's relabelling,
//! signature or homology code.

#![allow(dead_code)]

use std::sync::LazyLock;

use pachner::census::{enumerate_closed, CensusSpec};
use pachner::{Gluing, IsoSig, Perm4, Triangulation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn census(n: usize) -> Vec<IsoSig> {
    enumerate_closed(&CensusSpec::new(n)).unwrap()
}

static CENSUS: LazyLock<Vec<Vec<Triangulation>>> = LazyLock::new(|| {
    (1..=4)
        .map(|n| census(n).iter().map(|s| s.decode().unwrap()).collect())
        .collect()
});

/// Census members of sizes `1..=max_n` (at most 4), in size then signature
/// order. Computed once per test binary.
pub fn census_triangulations(max_n: usize) -> Vec<Triangulation> {
    CENSUS[..max_n].iter().flatten().cloned().collect()
}

fn all_images() -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let v = [a, b, c, d];
                    if (0..4).all(|i| (i + 1..4).all(|j| v[i] != v[j])) {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

fn inv(p: [u8; 4]) -> [u8; 4] {
    let mut q = [0u8; 4];
    for (i, &x) in p.iter().enumerate() {
        q[x as usize] = i as u8;
    }
    q
}

fn comp(p: [u8; 4], q: [u8; 4]) -> [u8; 4] {
    [
        p[q[0] as usize],
        p[q[1] as usize],
        p[q[2] as usize],
        p[q[3] as usize],
    ]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

type Key = Vec<(usize, [u8; 4])>;

fn table(t: &Triangulation) -> Vec<[(usize, [u8; 4]); 4]> {
    t.gluings()
        .iter()
        .map(|row| row.map(|g| (g.tet, g.perm.images())))
        .collect()
}

/// The lexicographically least gluing table over every one of the
/// `n! 24^n` relabellings. Two triangulations are isomorphic iff their keys
/// agree.
pub fn brute_force_key(t: &Triangulation) -> Key {
    let n = t.size();
    let tab = table(t);
    let imgs = all_images();
    let mut best: Option<Key> = None;
    let mut sigma = vec![0usize; n];
    for tet_map in permutations(n) {
        loop {
            let mut out = vec![[(0usize, [0u8; 4]); 4]; n];
            for tt in 0..n {
                let st = imgs[sigma[tt]];
                for f in 0..4 {
                    let (u, p) = tab[tt][f];
                    let su = imgs[sigma[u]];
                    out[tet_map[tt]][st[f] as usize] = (tet_map[u], comp(su, comp(p, inv(st))));
                }
            }
            let key: Key = out.into_iter().flatten().collect();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
            // Advance the odometer over vertex relabellings.
            let mut i = 0;
            while i < n {
                sigma[i] += 1;
                if sigma[i] < 24 {
                    break;
                }
                sigma[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    best.unwrap()
}

/// A uniformly random relabelling, built directly from the table.
pub fn random_relabel(t: &Triangulation, rng: &mut ChaCha8Rng) -> Triangulation {
    let n = t.size();
    let mut tet_map: Vec<usize> = (0..n).collect();
    tet_map.shuffle(rng);
    let imgs = all_images();
    let sig: Vec<[u8; 4]> = (0..n).map(|_| imgs[rng.gen_range(0..24)]).collect();
    let tab = table(t);
    let mut out = vec![[(0usize, [0u8; 4]); 4]; n];
    for tt in 0..n {
        for f in 0..4 {
            let (u, p) = tab[tt][f];
            out[tet_map[tt]][sig[tt][f] as usize] =
                (tet_map[u], comp(sig[u], comp(p, inv(sig[tt]))));
        }
    }
    let rows = out
        .into_iter()
        .map(|row| {
            row.map(|(tet, img)| Gluing {
                tet,
                perm: Perm4::from_images(img).unwrap(),
            })
        })
        .collect();
    Triangulation::from_table(rows).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Checks the two defining properties of a canonical labelling directly
/// on a relabelled table: new tetrahedra first appear in increasing order,
/// and each first appearance is an identity gluing of equal faces.
pub fn is_canonically_labelled(t: &Triangulation) -> bool {
    let n = t.size();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut next = 1;
    for tt in 0..n {
        for f in 0..4 {
            let g = t.gluing(tt, f);
            if seen[g.tet] {
                continue;
            }
            if g.tet != next || !g.perm.is_identity() {
                return false;
            }
            seen[g.tet] = true;
            next += 1;
        }
    }
    next == n
}

/// Invariant factors of the abelian group presented by an integer matrix,
/// via determinantal divisors: `d_k` is the gcd of all `k x k` minors and
/// the `k`-th factor is `d_k / d_(k-1)`. Only usable for small matrices.
pub fn invariant_factors_by_minors(rows: &[Vec<i64>]) -> Vec<u64> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let m: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| rows[i][j] as i128).collect())
                    .collect();
                g = gcd(g, det(m));
            }
        }
        if g == 0 {
            break;
        }
        out.push((g / prev) as u64);
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(mut m: Vec<Vec<i128>>) -> i128 {
    // Fraction-free (Bareiss) elimination.
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

//! Permutations of the four vertices of a tetrahedron.
//!
//! Every permutation carries a fixed index in `0..24`: the position of its
//! image tuple `(p(0), p(1), p(2), p(3))` in lexicographic order. Index 0 is
//! the identity and index 23 is `(3, 2, 1, 0)`. Signatures depend on this
//! numbering, so it must never change.

use std::fmt;

/// A permutation of `{0, 1, 2, 3}`, stored by its lexicographic index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Perm4(u8);

const fn build_images() -> [[u8; 4]; 24] {
    let mut out = [[0u8; 4]; 24];
    let mut idx = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                let mut d = 0;
                while d < 4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out[idx] = [a as u8, b as u8, c as u8, d as u8];
                        idx += 1;
                    }
                    d += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
}

const IMAGES: [[u8; 4]; 24] = build_images();

const fn index_of(img: [u8; 4]) -> u8 {
    let mut i = 0;
    while i < 24 {
        let cand = IMAGES[i];
        if cand[0] == img[0] && cand[1] == img[1] && cand[2] == img[2] && cand[3] == img[3] {
            return i as u8;
        }
        i += 1;
    }
    panic!("not a permutation");
}

const fn build_compose() -> [[u8; 24]; 24] {
    let mut out = [[0u8; 24]; 24];
    let mut p = 0;
    while p < 24 {
        let mut q = 0;
        while q < 24 {
            let pi = IMAGES[p];
            let qi = IMAGES[q];
            let img = [
                pi[qi[0] as usize],
                pi[qi[1] as usize],
                pi[qi[2] as usize],
                pi[qi[3] as usize],
            ];
            out[p][q] = index_of(img);
            q += 1;
        }
        p += 1;
    }
    out
}

const fn build_inverse() -> [u8; 24] {
    let mut out = [0u8; 24];
    let mut p = 0;
    while p < 24 {
        let pi = IMAGES[p];
        let mut inv = [0u8; 4];
        let mut i = 0;
        while i < 4 {
            inv[pi[i] as usize] = i as u8;
            i += 1;
        }
        out[p] = index_of(inv);
        p += 1;
    }
    out
}

// MAPPING[f][g] lists the six permutations sending f to g, in index order.
const fn build_mapping() -> [[[u8; 6]; 4]; 4] {
    let mut out = [[[0u8; 6]; 4]; 4];
    let mut f = 0;
    while f < 4 {
        let mut g = 0;
        while g < 4 {
            let mut k = 0;
            let mut p = 0;
            while p < 24 {
                if IMAGES[p][f] as usize == g {
                    out[f][g][k] = p as u8;
                    k += 1;
                }
                p += 1;
            }
            g += 1;
        }
        f += 1;
    }
    out
}

const COMPOSE: [[u8; 24]; 24] = build_compose();
const INVERSE: [u8; 24] = build_inverse();
const MAPPING: [[[u8; 6]; 4]; 4] = build_mapping();

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4(0);
    pub const COUNT: usize = 24;

    /// Returns the permutation with the given index, if it is below 24.
    pub fn from_index(index: usize) -> Option<Perm4> {
        (index < 24).then_some(Perm4(index as u8))
    }

    /// Builds a permutation from its image tuple.
    pub fn from_images(images: [u8; 4]) -> Option<Perm4> {
        IMAGES
            .iter()
            .position(|img| *img == images)
            .map(|i| Perm4(i as u8))
    }

    /// Transposition of `a` and `b`.
    pub fn swap(a: usize, b: usize) -> Perm4 {
        let mut img = [0, 1, 2, 3];
        img.swap(a, b);
        Perm4::from_images(img).expect("transposition")
    }

    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..24u8).map(Perm4)
    }

    /// The six permutations mapping `from` to `to`.
    pub fn mapping(from: usize, to: usize) -> impl Iterator<Item = Perm4> {
        MAPPING[from][to].iter().map(|&i| Perm4(i))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn images(self) -> [u8; 4] {
        IMAGES[self.0 as usize]
    }

    #[inline]
    pub fn apply(self, v: usize) -> usize {
        IMAGES[self.0 as usize][v] as usize
    }

    /// `self ∘ other`: apply `other` first.
    #[inline]
    pub fn compose(self, other: Perm4) -> Perm4 {
        Perm4(COMPOSE[self.0 as usize][other.0 as usize])
    }

    #[inline]
    pub fn inverse(self) -> Perm4 {
        Perm4(INVERSE[self.0 as usize])
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    /// Parity as a sign, +1 for even permutations.
    pub fn sign(self) -> i64 {
        let img = self.images();
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if img[i] > img[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.images();
        write!(f, "Perm4({a}{b}{c}{d})")
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.images();
        write!(f, "{a}{b}{c}{d}")
    }
}

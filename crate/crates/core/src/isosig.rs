//! Canonical labellings and isomorphism signatures.
//!
//! A labelling is canonical when, reading the adjacent tetrahedron of every
//! face in row-major order, new tetrahedra appear in increasing order and
//! each first appearance is glued by the identity map. Choosing the first
//! tetrahedron and its vertex order forces the rest, so a triangulation of
//! size `n` has exactly `24n` canonical labellings.
//!
//! # Signature format (version 1)
//!
//! A signature is a sequence of base-64 digits:
//!
//! * `n` as a variable-length quantity: 5 value bits per digit, most
//!   significant group first, bit `0x20` set on every digit but the last;
//! * then for each tetrahedron `t = 0..n` and face `f = 0..4` of the
//!   labelled triangulation: the adjacent tetrahedron as `w` big-endian
//!   digits, where `w` is the least width with `64^w >= n`, followed by one
//!   digit holding the gluing permutation's index.
//!
//! The signature of a triangulation is the least such digit sequence over
//! all canonical labellings, compared digit by digit, and is written with
//! the alphabet `a-z A-Z 0-9 + -` (digit 0 is `a`, digit 63 is `-`).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Perm4;
use crate::triangulation::{Gluing, Triangulation};

pub const FORMAT_VERSION: u32 = 1;

const ALPHABET: &[u8; 64] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-";

fn digit_of(c: u8) -> Option<u8> {
    match c {
        b'a'..=b'z' => Some(c - b'a'),
        b'A'..=b'Z' => Some(c - b'A' + 26),
        b'0'..=b'9' => Some(c - b'0' + 52),
        b'+' => Some(62),
        b'-' => Some(63),
        _ => None,
    }
}

/// Number of base-64 digits used for a tetrahedron index.
pub fn tet_width(n: usize) -> usize {
    let mut w = 1;
    let mut cap = 64usize;
    while cap < n {
        w += 1;
        cap = cap.saturating_mul(64);
    }
    w
}

fn vlq_len(mut n: usize) -> usize {
    let mut len = 1;
    while n >= 32 {
        n >>= 5;
        len += 1;
    }
    len
}

fn push_vlq(out: &mut Vec<u8>, n: usize) {
    let len = vlq_len(n);
    for i in (0..len).rev() {
        let group = ((n >> (5 * i)) & 0x1f) as u8;
        out.push(if i > 0 { group | 0x20 } else { group });
    }
}

/// Exact digit count of a signature for size `n`.
pub fn signature_length(n: usize) -> usize {
    vlq_len(n) + 4 * n * (tet_width(n) + 1)
}

/// An isomorphism signature.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsoSig(String);

impl IsoSig {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    fn from_digits(digits: &[u8]) -> IsoSig {
        IsoSig(
            digits
                .iter()
                .map(|&d| ALPHABET[d as usize] as char)
                .collect(),
        )
    }

    /// Size encoded in the signature prefix, without a full decode.
    pub fn size(&self) -> Result<usize> {
        let digits = to_digits(&self.0)?;
        Ok(read_vlq(&digits)?.0)
    }

    pub fn decode(&self) -> Result<Triangulation> {
        decode(&self.0)
    }
}

impl fmt::Display for IsoSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for IsoSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IsoSig({})", self.0)
    }
}

impl FromStr for IsoSig {
    type Err = Error;

    /// Checks the alphabet and overall shape; use [`decode`] for full
    /// structural validation.
    fn from_str(s: &str) -> Result<IsoSig> {
        let digits = to_digits(s)?;
        let (n, used) = read_vlq(&digits)?;
        if digits.len() != used + 4 * n * (tet_width(n) + 1) {
            return Err(Error::MalformedSignature(format!(
                "wrong length for size {n}"
            )));
        }
        Ok(IsoSig(s.to_string()))
    }
}

/// One of the `24n` canonical labellings of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalLabelling {
    pub start_tet: usize,
    pub start_perm: Perm4,
    /// New label of each original tetrahedron.
    pub tet_map: Vec<usize>,
    /// Vertex relabelling of each original tetrahedron.
    pub vertex_perms: Vec<Perm4>,
}

impl CanonicalLabelling {
    pub fn apply(&self, t: &Triangulation) -> Triangulation {
        t.relabel(&self.tet_map, &self.vertex_perms)
    }
}

/// Reusable buffers for walking canonical labellings.
struct Walker {
    image: Vec<usize>,
    preimage: Vec<usize>,
    sigma: Vec<Perm4>,
}

impl Walker {
    fn new(n: usize) -> Self {
        Self {
            image: vec![usize::MAX; n],
            preimage: vec![0; n],
            sigma: vec![Perm4::IDENTITY; n],
        }
    }

    /// Walks the labelling forced by `(start, perm)`, feeding each labelled
    /// gluing `(adj, perm)` to `visit` in row-major order. `visit` returns
    /// `false` to stop early.
    fn walk<F>(&mut self, t: &Triangulation, start: usize, perm: Perm4, mut visit: F) -> bool
    where
        F: FnMut(usize, Perm4) -> bool,
    {
        let n = t.size();
        self.image.fill(usize::MAX);
        self.image[start] = 0;
        self.preimage[0] = start;
        self.sigma[start] = perm;
        let mut next = 1;
        for k in 0..n {
            let old = self.preimage[k];
            let sigma_old = self.sigma[old];
            let sigma_inv = sigma_old.inverse();
            for new_face in 0..4 {
                let g = t.gluing(old, sigma_inv.apply(new_face));
                if self.image[g.tet] == usize::MAX {
                    self.image[g.tet] = next;
                    self.preimage[next] = g.tet;
                    self.sigma[g.tet] = sigma_old.compose(g.perm.inverse());
                    next += 1;
                }
                let p = self.sigma[g.tet].compose(g.perm).compose(sigma_inv);
                if !visit(self.image[g.tet], p) {
                    return false;
                }
            }
        }
        true
    }
}

/// All `24n` canonical labellings, ordered by start tetrahedron then start
/// permutation index.
pub fn canonical_labellings(t: &Triangulation) -> Vec<CanonicalLabelling> {
    let n = t.size();
    let mut walker = Walker::new(n);
    let mut out = Vec::with_capacity(24 * n);
    for start_tet in 0..n {
        for start_perm in Perm4::all() {
            walker.walk(t, start_tet, start_perm, |_, _| true);
            out.push(CanonicalLabelling {
                start_tet,
                start_perm,
                tet_map: walker.image.clone(),
                vertex_perms: walker.sigma.clone(),
            });
        }
    }
    out
}

fn push_entry(out: &mut Vec<u8>, width: usize, adj: usize, perm: Perm4) {
    for i in (0..width).rev() {
        out.push(((adj >> (6 * i)) & 0x3f) as u8);
    }
    out.push(perm.index() as u8);
}

/// Digit sequence of the triangulation under the given labelling.
pub fn encode_labelled(t: &Triangulation, lab: &CanonicalLabelling) -> Vec<u8> {
    encode_table(&lab.apply(t))
}

/// Digit sequence of a gluing table exactly as labelled.
pub fn encode_table(t: &Triangulation) -> Vec<u8> {
    let n = t.size();
    let width = tet_width(n);
    let mut out = Vec::with_capacity(signature_length(n));
    push_vlq(&mut out, n);
    for row in t.gluings() {
        for g in row {
            push_entry(&mut out, width, g.tet, g.perm);
        }
    }
    out
}

/// The isomorphism signature: least encoding over all canonical labellings.
pub fn isosig(t: &Triangulation) -> IsoSig {
    let n = t.size();
    let mut walker = Walker::new(n);
    let mut best: Vec<(usize, Perm4)> = Vec::with_capacity(4 * n);
    let mut current: Vec<(usize, Perm4)> = Vec::with_capacity(4 * n);
    for start_tet in 0..n {
        for start_perm in Perm4::all() {
            current.clear();
            // While `tied`, the walk so far equals the prefix of `best`.
            let mut tied = !best.is_empty();
            let finished = walker.walk(t, start_tet, start_perm, |adj, p| {
                let entry = (adj, p);
                if tied {
                    match entry.cmp(&best[current.len()]) {
                        std::cmp::Ordering::Greater => return false,
                        std::cmp::Ordering::Less => tied = false,
                        std::cmp::Ordering::Equal => {}
                    }
                }
                current.push(entry);
                true
            });
            if finished && !tied {
                std::mem::swap(&mut best, &mut current);
            }
        }
    }
    let width = tet_width(n);
    let mut digits = Vec::with_capacity(signature_length(n));
    push_vlq(&mut digits, n);
    for (adj, p) in best {
        push_entry(&mut digits, width, adj, p);
    }
    IsoSig::from_digits(&digits)
}

fn to_digits(s: &str) -> Result<Vec<u8>> {
    s.bytes()
        .map(|c| {
            digit_of(c).ok_or_else(|| {
                Error::MalformedSignature(format!("illegal character {:?}", c as char))
            })
        })
        .collect()
}

fn read_vlq(digits: &[u8]) -> Result<(usize, usize)> {
    let mut n: usize = 0;
    for (i, &d) in digits.iter().enumerate() {
        if i >= 12 {
            break;
        }
        n = (n << 5) | usize::from(d & 0x1f);
        if d & 0x20 == 0 {
            if n == 0 {
                return Err(Error::MalformedSignature("size zero".into()));
            }
            return Ok((n, i + 1));
        }
    }
    Err(Error::MalformedSignature("truncated size prefix".into()))
}

/// Rebuilds a triangulation from its signature.
pub fn decode(sig: &str) -> Result<Triangulation> {
    let digits = to_digits(sig)?;
    let (n, mut pos) = read_vlq(&digits)?;
    let width = tet_width(n);
    if digits.len() != pos + 4 * n * (width + 1) {
        return Err(Error::MalformedSignature(format!(
            "expected {} digits for size {n}, found {}",
            pos + 4 * n * (width + 1),
            digits.len()
        )));
    }
    let mut table = Vec::with_capacity(n);
    for _ in 0..n {
        let mut row = [Gluing {
            tet: 0,
            perm: Perm4::IDENTITY,
        }; 4];
        for slot in row.iter_mut() {
            let mut adj = 0usize;
            for _ in 0..width {
                adj = (adj << 6) | usize::from(digits[pos]);
                pos += 1;
            }
            let perm = Perm4::from_index(usize::from(digits[pos])).ok_or_else(|| {
                Error::MalformedSignature(format!("bad permutation digit {}", digits[pos]))
            })?;
            pos += 1;
            if adj >= n {
                return Err(Error::MalformedSignature(format!(
                    "tetrahedron {adj} out of range"
                )));
            }
            *slot = Gluing { tet: adj, perm };
        }
        table.push(row);
    }
    Triangulation::from_table(table).map_err(|e| Error::MalformedSignature(e.to_string()))
}

pub fn is_isomorphic(a: &Triangulation, b: &Triangulation) -> bool {
    a.size() == b.size() && isosig(a) == isosig(b)
}

impl Triangulation {
    pub fn isosig(&self) -> IsoSig {
        isosig(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths_and_lengths() {
        assert_eq!(tet_width(1), 1);
        assert_eq!(tet_width(64), 1);
        assert_eq!(tet_width(65), 2);
        assert_eq!(vlq_len(31), 1);
        assert_eq!(vlq_len(32), 2);
        assert_eq!(signature_length(1), 9);
        assert_eq!(signature_length(3), 25);
    }

    #[test]
    fn vlq_round_trip() {
        for n in [1usize, 5, 31, 32, 33, 1000, 40000] {
            let mut d = Vec::new();
            push_vlq(&mut d, n);
            assert_eq!(read_vlq(&d).unwrap(), (n, d.len()));
        }
    }

    #[test]
    fn alphabet_is_consistent() {
        for (i, &c) in ALPHABET.iter().enumerate() {
            assert_eq!(digit_of(c), Some(i as u8));
        }
    }

    #[test]
    fn one_tetrahedron_has_24_labellings() {
        let t = Triangulation::canonical_sphere(1).unwrap();
        assert_eq!(canonical_labellings(&t).len(), 24);
    }

    #[test]
    fn decode_rejects_bad_input() {
        assert!(matches!(
            decode("b!aaaaaaa"),
            Err(Error::MalformedSignature(_))
        ));
        assert!(matches!(decode(""), Err(Error::MalformedSignature(_))));
        assert!(matches!(decode("baaaa"), Err(Error::MalformedSignature(_))));
        // n = 1, every face glued to tetrahedron 0 by the identity.
        assert!(matches!(
            decode("baaaaaaaa"),
            Err(Error::MalformedSignature(_))
        ));
        // n = 1 with a permutation digit out of range.
        assert!(matches!(
            decode("baZaaaaaa"),
            Err(Error::MalformedSignature(_))
        ));
    }

    #[test]
    fn sphere_round_trip() {
        for n in [1, 2] {
            let t = Triangulation::canonical_sphere(n).unwrap();
            let sig = isosig(&t);
            let back = sig.decode().unwrap();
            assert!(is_isomorphic(&back, &t));
            assert_eq!(isosig(&back), sig);
        }
    }
}

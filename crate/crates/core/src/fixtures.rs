//! Small named triangulations used by tests, benchmarks and the CLI.

use crate::perm::Perm4;
use crate::triangulation::Triangulation;

fn perm(images: [u8; 4]) -> Perm4 {
    Perm4::from_images(images).expect("fixture permutation")
}

fn build(n: usize, half: &[((usize, usize), (usize, [u8; 4]))]) -> Triangulation {
    let mut entries = Vec::with_capacity(2 * half.len());
    for &((t, f), (u, img)) in half {
        let p = perm(img);
        entries.push(((t, f), (u, p)));
        entries.push(((u, p.apply(f)), (t, p.inverse())));
    }
    Triangulation::from_entries(n, entries).expect("fixture gluing table")
}

/// A one-vertex, three-edge triangulation of real projective space with two
/// tetrahedra: faces 2 and 3 of tetrahedron 0 are glued with a twist, faces
/// 2 and 3 of tetrahedron 1 are folded together, and the remaining faces of
/// tetrahedron 0 meet those of tetrahedron 1.
pub fn rp3_two_tetrahedra() -> Triangulation {
    build(
        2,
        &[
            ((0, 2), (0, [1, 2, 3, 0])),
            ((0, 0), (1, [0, 3, 1, 2])),
            ((0, 1), (1, [2, 1, 3, 0])),
            ((1, 2), (1, [0, 1, 3, 2])),
        ],
    )
}

/// A three-tetrahedron triangulation given in canonical labelling, with the
/// gluings listed face by face (0-based).
pub fn three_tetrahedron_example() -> Triangulation {
    build(
        3,
        &[
            ((0, 0), (0, [3, 1, 2, 0])),
            ((0, 1), (1, [0, 1, 2, 3])),
            ((0, 2), (2, [0, 1, 2, 3])),
            ((1, 0), (2, [1, 2, 3, 0])),
            ((1, 2), (1, [0, 1, 3, 2])),
            ((2, 0), (2, [3, 0, 1, 2])),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_closed_manifolds() {
        for t in [rp3_two_tetrahedra(), three_tetrahedron_example()] {
            assert!(t.is_closed_3manifold());
        }
    }
}

//! Relabelings of a tetrahedron induced by permutations of its vertices.

use serde::{Deserialize, Serialize};

use super::{Edge, TetAngles};
use crate::error::{Error, Result};

/// A vertex permutation: new vertex `i` is old vertex `perm[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relabeling {
    perm: [usize; 4],
}

impl Relabeling {
    pub const IDENTITY: Relabeling = Relabeling { perm: [0, 1, 2, 3] };

    /// Exchanges the roles of the pairs (A, A′) and (B, B′):
    /// (A, B, C, A′, B′, C′) ↦ (B, A, C, B′, A′, C′).
    pub const SWAP_AB: Relabeling = Relabeling { perm: [0, 2, 1, 3] };

    /// Exchanges the roles of the pairs (B, B′) and (C, C′).
    pub const SWAP_BC: Relabeling = Relabeling { perm: [0, 1, 3, 2] };

    /// Exchanges vertices 0 and 2: (A, B, C, A′, B′, C′) ↦ (C′, B, A′, C, B′, A).
    /// Orientation reversing; aligns the default octahedron of R_b(T) with the
    /// permuted octahedron of T.
    pub const MIRROR_B: Relabeling = Relabeling { perm: [2, 1, 0, 3] };

    pub fn new(perm: [usize; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &p in &perm {
            if p > 3 || seen[p] {
                return Err(Error::Domain(format!("{perm:?} is not a permutation of 0..4")));
            }
            seen[p] = true;
        }
        Ok(Self { perm })
    }

    pub fn perm(&self) -> [usize; 4] {
        self.perm
    }

    /// All 24 vertex permutations, identity first.
    pub fn all() -> Vec<Relabeling> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        if let Ok(r) = Relabeling::new([a, b, c, d]) {
                            out.push(r);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Relabeling {
        let mut inv = [0; 4];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Relabeling { perm: inv }
    }

    /// `self.then(other)` relabels by `self` first, then by `other`.
    pub fn then(&self, other: &Relabeling) -> Relabeling {
        let mut perm = [0; 4];
        for (i, slot) in perm.iter_mut().enumerate() {
            *slot = self.perm[other.perm[i]];
        }
        Relabeling { perm }
    }

    pub fn is_orientation_preserving(&self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.perm[i] > self.perm[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// The old edge whose angle lands on `edge` after relabeling.
    pub fn source_edge(&self, edge: Edge) -> Edge {
        let (i, j) = edge.vertices();
        Edge::from_vertices(self.perm[i], self.perm[j]).expect("vertex permutation maps edges to edges")
    }

    /// Finds the vertex permutation inducing the given angle permutation,
    /// where `sources[e]` names the old edge whose angle moves to edge `e`.
    pub fn from_edge_map(sources: [Edge; 6]) -> Result<Relabeling> {
        Relabeling::all()
            .into_iter()
            .find(|r| Edge::ALL.iter().all(|&e| r.source_edge(e) == sources[e.index()]))
            .ok_or_else(|| {
                Error::Domain(format!(
                    "edge map {sources:?} is not induced by a symmetry of the tetrahedron"
                ))
            })
    }
}

pub fn relabel(t: &TetAngles, sigma: &Relabeling) -> TetAngles {
    let mut v = [0.0; 6];
    for e in Edge::ALL {
        v[e.index()] = t.get(sigma.source_edge(e));
    }
    TetAngles::from_array(v)
}

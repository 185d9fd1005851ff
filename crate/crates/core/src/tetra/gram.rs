//! Gram matrices of face normals and the finite / ideal / hyperideal
//! classification.
//!
//! `G[k][l] = −cos θ_kl` where θ_kl is the dihedral angle on the edge shared
//! by faces k and l (face i is opposite vertex i), and `G[k][k] = 1`.
//!
//! With `c_ij` the (i, j) cofactor of G:
//!
//! * a compact tetrahedron exists iff G has signature (3, 1) and every
//!   cofactor `c_ij` is positive; `c_ii > 0` says the three faces through
//!   vertex i meet in a spherical vertex link (a finite vertex);
//! * `c_ii = 0` is an ideal vertex, `c_ii < 0` a hyperideal one;
//! * the edge joining vertices i and j has `cosh ℓ_ij = c_ij / √(c_ii c_jj)`.
//!
//! The inverse Gram matrix is the Gram matrix of the (unnormalised) vertex
//! vectors, which is where the cofactor conditions come from.

use nalgebra::{Matrix3, Matrix4, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::{Edge, TetAngles};
use crate::error::{Error, Result};

/// Eigenvalues within this distance of zero count as neither sign.
pub const SIGNATURE_TOL: f64 = 1e-10;
/// Vertex cofactors below this magnitude mark an ideal vertex.
pub const IDEAL_COFACTOR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramMatrix(pub Matrix4<f64>);

impl GramMatrix {
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    /// The dihedral angle stored for `edge`, recovered by arccos.
    pub fn dihedral(&self, edge: Edge) -> f64 {
        let (k, l) = edge.faces();
        (-self.entry(k, l)).clamp(-1.0, 1.0).acos()
    }

    pub fn angles(&self) -> TetAngles {
        let mut v = [0.0; 6];
        for e in Edge::ALL {
            v[e.index()] = self.dihedral(e);
        }
        TetAngles::from_array(v)
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    /// Signed cofactor matrix; symmetric because G is.
    pub fn cofactors(&self) -> Matrix4<f64> {
        let g = &self.0;
        Matrix4::from_fn(|i, j| {
            let minor = Matrix3::from_fn(|r, c| {
                let rr = if r < i { r } else { r + 1 };
                let cc = if c < j { c } else { c + 1 };
                g[(rr, cc)]
            });
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            sign * minor.determinant()
        })
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let eig = SymmetricEigen::new(self.0);
        let mut v: [f64; 4] = eig.eigenvalues.into();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Counts of (positive, negative) eigenvalues beyond [`SIGNATURE_TOL`].
    pub fn signature(&self) -> (usize, usize) {
        let ev = self.eigenvalues();
        let pos = ev.iter().filter(|&&x| x > SIGNATURE_TOL).count();
        let neg = ev.iter().filter(|&&x| x < -SIGNATURE_TOL).count();
        (pos, neg)
    }
}

pub fn gram_matrix(t: &TetAngles) -> GramMatrix {
    let mut g = Matrix4::identity();
    for e in Edge::ALL {
        let (k, l) = e.faces();
        let v = -t.get(e).cos();
        g[(k, l)] = v;
        g[(l, k)] = v;
    }
    GramMatrix(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TetraKind {
    Finite,
    Ideal,
    Hyperideal,
    Invalid,
}

impl std::fmt::Display for TetraKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TetraKind::Finite => "finite",
            TetraKind::Ideal => "ideal",
            TetraKind::Hyperideal => "hyperideal",
            TetraKind::Invalid => "invalid",
        })
    }
}

/// Classification with the numbers it was decided from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TetraClass {
    pub kind: TetraKind,
    pub determinant: f64,
    pub eigenvalues: [f64; 4],
    /// Diagonal cofactors `c_ii`, one per vertex.
    pub vertex_cofactors: [f64; 4],
    /// Smallest off-diagonal cofactor `c_ij`.
    pub min_edge_cofactor: f64,
}

impl TetraClass {
    pub fn is_finite(&self) -> bool {
        self.kind == TetraKind::Finite
    }
}

pub fn classify(t: &TetAngles) -> TetraClass {
    let g = gram_matrix(t);
    let cof = g.cofactors();
    let vertex_cofactors = [cof[(0, 0)], cof[(1, 1)], cof[(2, 2)], cof[(3, 3)]];
    let mut min_edge_cofactor = f64::INFINITY;
    for e in Edge::ALL {
        let (i, j) = e.vertices();
        min_edge_cofactor = min_edge_cofactor.min(cof[(i, j)]);
    }
    let eigenvalues = g.eigenvalues();
    let determinant = g.determinant();

    let in_range = t.validate().is_ok();
    let (pos, neg) = g.signature();
    let lorentzian = pos == 3 && neg == 1;

    let kind = if !in_range || !lorentzian {
        TetraKind::Invalid
    } else if vertex_cofactors.iter().any(|&c| c < -IDEAL_COFACTOR_TOL) {
        TetraKind::Hyperideal
    } else if min_edge_cofactor <= 0.0 {
        TetraKind::Invalid
    } else if vertex_cofactors.iter().any(|&c| c.abs() <= IDEAL_COFACTOR_TOL) {
        TetraKind::Ideal
    } else {
        TetraKind::Finite
    };

    TetraClass {
        kind,
        determinant,
        eigenvalues,
        vertex_cofactors,
        min_edge_cofactor,
    }
}

/// Hyperbolic edge lengths, indexed like the dihedral angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeLengths(pub [f64; 6]);

impl EdgeLengths {
    pub fn get(&self, edge: Edge) -> f64 {
        self.0[edge.index()]
    }
}

/// Edge lengths of a finite tetrahedron from the Gram cofactors.
///
/// Ideal or hyperideal inputs have infinite (or undefined) edges and are
/// rejected with [`Error::WrongClass`].
pub fn edge_lengths(t: &TetAngles) -> Result<EdgeLengths> {
    let class = classify(t);
    if class.kind != TetraKind::Finite {
        return Err(Error::WrongClass {
            expected: "finite",
            found: Box::new(class),
        });
    }
    let cof = gram_matrix(t).cofactors();
    let mut out = [0.0; 6];
    for e in Edge::ALL {
        let (i, j) = e.vertices();
        let cosh = cof[(i, j)] / (cof[(i, i)] * cof[(j, j)]).sqrt();
        out[e.index()] = cosh.max(1.0).acosh();
    }
    Ok(EdgeLengths(out))
}

//! Dihedral-angle data for hyperbolic tetrahedra.
//!
//! Vertex and edge convention used everywhere in the crate: vertices are
//! numbered 0..4, face `i` is the face opposite vertex `i`, and the six
//! dihedral angles sit on the edges
//!
//! | angle | edge   |   | angle | edge   |
//! |-------|--------|---|-------|--------|
//! | A     | (0, 1) |   | A′    | (2, 3) |
//! | B     | (0, 2) |   | B′    | (1, 3) |
//! | C     | (0, 3) |   | C′    | (1, 2) |
//!
//! so (A, A′), (B, B′), (C, C′) are pairs of opposite edges and the angles
//! meeting at the four vertices are {A, B, C}, {A, B′, C′}, {A′, B, C′} and
//! {A′, B′, C}.

mod gram;
mod symmetry;

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::special::lob;

pub use gram::{
    classify, edge_lengths, gram_matrix, EdgeLengths, GramMatrix, TetraClass, TetraKind, IDEAL_COFACTOR_TOL,
    SIGNATURE_TOL,
};
pub use symmetry::{relabel, Relabeling};

/// Angle-sum tolerance accepted by [`ideal_volume`].
pub const IDEAL_SUM_TOL: f64 = 1e-9;

/// One of the six edges, named by the dihedral angle it carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Edge {
    A,
    B,
    C,
    APrime,
    BPrime,
    CPrime,
}

impl Edge {
    pub const ALL: [Edge; 6] = [
        Edge::A,
        Edge::B,
        Edge::C,
        Edge::APrime,
        Edge::BPrime,
        Edge::CPrime,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The two vertices joined by this edge, smaller index first.
    pub fn vertices(self) -> (usize, usize) {
        match self {
            Edge::A => (0, 1),
            Edge::B => (0, 2),
            Edge::C => (0, 3),
            Edge::APrime => (2, 3),
            Edge::BPrime => (1, 3),
            Edge::CPrime => (1, 2),
        }
    }

    /// The two faces meeting along this edge: the faces opposite the other
    /// two vertices.
    pub fn faces(self) -> (usize, usize) {
        self.opposite().vertices()
    }

    pub fn opposite(self) -> Edge {
        match self {
            Edge::A => Edge::APrime,
            Edge::B => Edge::BPrime,
            Edge::C => Edge::CPrime,
            Edge::APrime => Edge::A,
            Edge::BPrime => Edge::B,
            Edge::CPrime => Edge::C,
        }
    }

    pub fn from_vertices(i: usize, j: usize) -> Option<Edge> {
        let key = if i < j { (i, j) } else { (j, i) };
        Edge::ALL.into_iter().find(|e| e.vertices() == key)
    }

    pub fn name(self) -> &'static str {
        match self {
            Edge::A => "A",
            Edge::B => "B",
            Edge::C => "C",
            Edge::APrime => "A'",
            Edge::BPrime => "B'",
            Edge::CPrime => "C'",
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Six dihedral angles in radians, (A, B, C) at one vertex and (A′, B′, C′)
/// on the respective opposite edges.
///
/// The type is a plain value: Regge transforms may produce tuples outside
/// (0, π), and [`classify`] is the arbiter of validity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TetAngles {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub a_prime: f64,
    pub b_prime: f64,
    pub c_prime: f64,
}

impl TetAngles {
    pub const fn new(a: f64, b: f64, c: f64, a_prime: f64, b_prime: f64, c_prime: f64) -> Self {
        Self {
            a,
            b,
            c,
            a_prime,
            b_prime,
            c_prime,
        }
    }

    pub const fn equiangular(theta: f64) -> Self {
        Self::new(theta, theta, theta, theta, theta, theta)
    }

    /// Builds angles from `[A, B, C, A′, B′, C′]`, requiring each in (0, π).
    pub fn try_from_array(values: [f64; 6]) -> Result<Self> {
        let t = Self::from_array(values);
        t.validate()?;
        Ok(t)
    }

    pub const fn from_array(v: [f64; 6]) -> Self {
        Self::new(v[0], v[1], v[2], v[3], v[4], v[5])
    }

    pub const fn to_array(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.a_prime, self.b_prime, self.c_prime]
    }

    pub fn get(&self, edge: Edge) -> f64 {
        self.to_array()[edge.index()]
    }

    /// Checks every angle is finite and in the open interval (0, π).
    pub fn validate(&self) -> Result<()> {
        for edge in Edge::ALL {
            let v = self.get(edge);
            ensure_finite(edge.name(), v)?;
            if !(v > 0.0 && v < PI) {
                return Err(Error::Domain(format!(
                    "dihedral angle {edge} = {v} is outside (0, π)"
                )));
            }
        }
        Ok(())
    }

    /// Angles of the three edges meeting at `vertex`.
    pub fn vertex_angles(&self, vertex: usize) -> [f64; 3] {
        let mut out = [0.0; 3];
        let mut k = 0;
        for edge in Edge::ALL {
            let (i, j) = edge.vertices();
            if i == vertex || j == vertex {
                out[k] = self.get(edge);
                k += 1;
            }
        }
        out
    }

    /// Largest absolute difference between corresponding angles.
    pub fn max_abs_diff(&self, other: &TetAngles) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

/// Dihedral angles of an ideal tetrahedron; opposite edges carry equal angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdealTetAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl IdealTetAngles {
    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn angle_sum_defect(&self) -> f64 {
        self.alpha + self.beta + self.gamma - PI
    }
}

/// Volume of an ideal tetrahedron, Л(α) + Л(β) + Л(γ).
pub fn ideal_volume(t: IdealTetAngles) -> Result<f64> {
    for (name, v) in [("alpha", t.alpha), ("beta", t.beta), ("gamma", t.gamma)] {
        ensure_finite(name, v)?;
    }
    let defect = t.angle_sum_defect();
    if defect.abs() > IDEAL_SUM_TOL {
        return Err(Error::Domain(format!(
            "ideal tetrahedron angles must sum to π, off by {defect:e}"
        )));
    }
    Ok(lob(t.alpha) + lob(t.beta) + lob(t.gamma))
}

/// The angles opposite A, B, C in the ideal prism (or in the 3/4-ideal
/// tetrahedron with A, B, C at its finite vertex), forced by the angle sum π
/// at each ideal vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrimeAngles {
    pub a_prime: f64,
    pub b_prime: f64,
    pub c_prime: f64,
}

pub fn prime_angles(a: f64, b: f64, c: f64) -> PrimeAngles {
    PrimeAngles {
        a_prime: (PI + a - b - c) / 2.0,
        b_prime: (PI + b - a - c) / 2.0,
        c_prime: (PI + c - a - b) / 2.0,
    }
}

/// The three ideal tetrahedra of the standard triangulation of the prism:
/// T(A′, B′, C), T(A, B′, C′) and T(C′ − C, B, π − B′).
pub fn prism_pieces(a: f64, b: f64, c: f64) -> [IdealTetAngles; 3] {
    let p = prime_angles(a, b, c);
    [
        IdealTetAngles::new(p.a_prime, p.b_prime, c),
        IdealTetAngles::new(a, p.b_prime, p.c_prime),
        IdealTetAngles::new(p.c_prime - c, b, PI - p.b_prime),
    ]
}

/// Volume of the ideal triangular prism determined by the angles A, B, C
/// (convex when A + B + C < π; the same analytic expression covers the
/// non-convex doubled 3/4-ideal tetrahedron when A + B + C > π):
///
/// Л(A) + Л(A′) + Л(B) + Л(B′) + Л(C) + Л(C′) − Л((π + A + B + C)/2).
pub fn prism_volume(a: f64, b: f64, c: f64) -> Result<f64> {
    for (name, v) in [("A", a), ("B", b), ("C", c)] {
        ensure_finite(name, v)?;
    }
    let p = prime_angles(a, b, c);
    Ok(lob(a) + lob(p.a_prime) + lob(b) + lob(p.b_prime) + lob(c) + lob(p.c_prime)
        - lob((PI + a + b + c) / 2.0))
}

/// Volume of the 3/4-ideal tetrahedron with angles A, B, C at its finite
/// vertex: half the prism expression.
pub fn three_quarter_volume(a: f64, b: f64, c: f64) -> Result<f64> {
    let v = prism_volume(a, b, c)?;
    if a + b + c <= PI {
        return Err(Error::Domain(format!(
            "A + B + C = {} must exceed π for a finite apex",
            a + b + c
        )));
    }
    Ok(v / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn edge_tables_are_consistent() {
        for e in Edge::ALL {
            let (i, j) = e.vertices();
            assert_eq!(Edge::from_vertices(j, i), Some(e));
            let (k, l) = e.faces();
            let mut all = [i, j, k, l];
            all.sort();
            assert_eq!(all, [0, 1, 2, 3]);
            assert_eq!(e.opposite().opposite(), e);
        }
        let t = TetAngles::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0);
        let mut v0 = t.vertex_angles(0);
        v0.sort_by(f64::total_cmp);
        assert_eq!(v0, [1.0, 2.0, 3.0]);
        let mut v3 = t.vertex_angles(3);
        v3.sort_by(f64::total_cmp);
        assert_eq!(v3, [3.0, 4.0, 5.0]);
    }

    #[test]
    fn prime_angle_examples() {
        let p = prime_angles(PI / 3.0, PI / 3.0, PI / 3.0);
        assert!(close(p.a_prime, PI / 3.0, 1e-15));
        assert!(close(p.b_prime, PI / 3.0, 1e-15));
        assert!(close(p.c_prime, PI / 3.0, 1e-15));

        let p = prime_angles(PI / 2.0, PI / 4.0, PI / 4.0);
        assert!(close(p.a_prime, PI / 2.0, 1e-15));
        assert!(close(p.b_prime, PI / 4.0, 1e-15));
        assert!(close(p.c_prime, PI / 4.0, 1e-15));

        let p = prime_angles(0.9, 0.8, 0.7);
        assert!(close(p.a_prime, (PI - 0.6) / 2.0, 1e-15));
        assert!(close(p.b_prime, (PI - 0.8) / 2.0, 1e-15));
        assert!(close(p.c_prime, (PI - 1.0) / 2.0, 1e-15));
    }

    #[test]
    fn ideal_volume_examples() {
        let regular = ideal_volume(IdealTetAngles::new(PI / 3.0, PI / 3.0, PI / 3.0)).unwrap();
        assert!(close(regular, 1.014_941_606_409_653_6, 1e-12));

        for x in [0.3, 1.0, 2.5] {
            let v = ideal_volume(IdealTetAngles::new(0.0, x, PI - x)).unwrap();
            assert!(v.abs() < 1e-14);
        }

        let v = ideal_volume(IdealTetAngles::new(PI / 2.0, PI / 4.0, PI / 4.0)).unwrap();
        assert!(close(v, 0.915_965_594_177_219, 1e-12));

        assert!(ideal_volume(IdealTetAngles::new(1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn prism_examples() {
        let regular = ideal_volume(IdealTetAngles::new(PI / 3.0, PI / 3.0, PI / 3.0)).unwrap();
        let p = prism_volume(PI / 3.0, PI / 3.0, PI / 3.0).unwrap();
        assert!(close(p, 2.0 * regular, 1e-12));
        assert!(close(p, 2.029_883_212_819_307, 1e-12));

        // A + B + C = π: two of the three ideal pieces remain.
        let (a, b, c) = (0.9, 1.3, PI - 2.2);
        let pr = prime_angles(a, b, c);
        let two = ideal_volume(IdealTetAngles::new(pr.a_prime, pr.b_prime, c)).unwrap()
            + ideal_volume(IdealTetAngles::new(a, pr.b_prime, pr.c_prime)).unwrap();
        assert!(close(prism_volume(a, b, c).unwrap(), two, 1e-12));
    }

    #[test]
    fn three_quarter_examples() {
        let v = three_quarter_volume(1.2, 1.2, 1.2).unwrap();
        assert_eq!(v, prism_volume(1.2, 1.2, 1.2).unwrap() / 2.0);
        assert!(three_quarter_volume(1.0, 1.0, 1.0).is_err());
        assert!(three_quarter_volume(1.0, 1.0, PI - 2.0).is_err());

        // Continuity at the ideal limit: the third ideal piece vanishes.
        let (a, b) = (0.9, 1.3);
        let c = PI - a - b;
        let pr = prime_angles(a, b, c);
        let limit = (ideal_volume(IdealTetAngles::new(pr.a_prime, pr.b_prime, c)).unwrap()
            + ideal_volume(IdealTetAngles::new(a, pr.b_prime, pr.c_prime)).unwrap())
            / 2.0;
        let near = three_quarter_volume(a, b, c + 1e-9).unwrap();
        assert!(close(near, limit, 1e-7));
    }

    #[test]
    fn validation() {
        assert!(TetAngles::equiangular(1.2).validate().is_ok());
        assert!(TetAngles::new(0.0, 1.0, 1.0, 1.0, 1.0, 1.0).validate().is_err());
        assert!(TetAngles::new(1.0, PI, 1.0, 1.0, 1.0, 1.0).validate().is_err());
        assert!(TetAngles::try_from_array([1.0, 1.0, f64::NAN, 1.0, 1.0, 1.0]).is_err());
    }
}

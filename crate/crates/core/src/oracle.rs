//! Ground truth that uses none of the octahedron formulas: a coordinate
//! realization in the Klein model, direct quadrature of the volume element
//! dx dy dz / (1 − |x|²)², and the Schläfli differential dV = −½ Σ ℓ_i dθ_i.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use nalgebra::{Matrix4, Rotation3, SymmetricEigen, Vector3, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::leibon::volume;
use crate::tetra::{classify, edge_lengths, gram_matrix, Edge, TetAngles, TetraClass, TetraKind};

/// Largest accepted difference between the source angles and the angles
/// recomputed from the coordinates.
pub const ROUND_TRIP_TOL: f64 = 1e-8;
/// Triangle evaluations allowed per face before quadrature gives up.
pub const MAX_TRIANGLES_PER_FACE: usize = 400_000;

/// Minkowski product with signature (+, +, +, −), time last.
fn mink(u: &Vector4<f64>, v: &Vector4<f64>) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2] - u[3] * v[3]
}

fn lift(x: &Vector3<f64>) -> Vector4<f64> {
    Vector4::new(x[0], x[1], x[2], 1.0)
}

/// Four points of the closed Klein ball spanning a tetrahedron.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KleinTetra {
    pub vertices: [[f64; 3]; 4],
    pub source: TetAngles,
    /// Vertices on the sphere at infinity.
    pub ideal: [bool; 4],
}

impl KleinTetra {
    pub fn vertex(&self, i: usize) -> Vector3<f64> {
        Vector3::from(self.vertices[i])
    }

    /// Outward unit spacelike normal of face k (the face opposite vertex k).
    fn face_normal(&self, k: usize) -> Vector4<f64> {
        let pts: Vec<Vector4<f64>> = (0..4).filter(|&i| i != k).map(|i| lift(&self.vertex(i))).collect();
        // Euclidean normal to the three lifted points, via signed 3×3 minors.
        let mut e = Vector4::zeros();
        for c in 0..4 {
            let cols: Vec<usize> = (0..4).filter(|&j| j != c).collect();
            let m = nalgebra::Matrix3::from_fn(|r, s| pts[r][cols[s]]);
            e[c] = if c % 2 == 0 { m.determinant() } else { -m.determinant() };
        }
        // ⟨n, p⟩ = e·p for n = J e.
        let mut n = Vector4::new(e[0], e[1], e[2], -e[3]);
        let norm = mink(&n, &n).sqrt();
        n /= norm;
        if mink(&n, &lift(&self.vertex(k))) > 0.0 {
            n = -n;
        }
        n
    }

    /// Dihedral angles recomputed from the coordinates.
    pub fn angles(&self) -> TetAngles {
        let normals: Vec<Vector4<f64>> = (0..4).map(|k| self.face_normal(k)).collect();
        let mut v = [0.0; 6];
        for e in Edge::ALL {
            let (k, l) = e.faces();
            v[e.index()] = (-mink(&normals[k], &normals[l])).clamp(-1.0, 1.0).acos();
        }
        TetAngles::from_array(v)
    }

    pub fn round_trip_error(&self) -> f64 {
        self.angles().max_abs_diff(&self.source)
    }

    /// Applies a Lorentz transformation (acting on (x, y, z, t)).
    pub fn transformed(&self, m: &Matrix4<f64>) -> KleinTetra {
        let mut out = self.clone();
        for i in 0..4 {
            let v = m * lift(&self.vertex(i));
            out.vertices[i] = [v[0] / v[3], v[1] / v[3], v[2] / v[3]];
        }
        out
    }

    /// Moves the normalized sum of the vertex vectors to the origin.
    pub fn centered(&self) -> Result<KleinTetra> {
        let mut sum = Vector4::zeros();
        for i in 0..4 {
            let u = lift(&self.vertex(i));
            let q = -mink(&u, &u);
            sum += if q > 0.0 { u / q.sqrt() } else { u };
        }
        Ok(self.transformed(&boost_to_origin(&sum)?))
    }

    /// Hyperbolic distance between two finite vertices.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let (u, v) = (lift(&self.vertex(i)), lift(&self.vertex(j)));
        let c = -mink(&u, &v) / (mink(&u, &u) * mink(&v, &v)).sqrt();
        c.max(1.0).acosh()
    }
}

/// Pure boost along `direction` with the given rapidity.
pub fn boost(direction: Vector3<f64>, rapidity: f64) -> Matrix4<f64> {
    let d = direction.normalize();
    let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
    let mut m = Matrix4::identity();
    for r in 0..3 {
        for c in 0..3 {
            m[(r, c)] += (ch - 1.0) * d[r] * d[c];
        }
        m[(r, 3)] = sh * d[r];
        m[(3, r)] = sh * d[r];
    }
    m[(3, 3)] = ch;
    m
}

/// Boost taking the future timelike vector `p` to the time axis.
fn boost_to_origin(p: &Vector4<f64>) -> Result<Matrix4<f64>> {
    let q = -mink(p, p);
    if q.is_nan() || q <= 0.0 || p[3] <= 0.0 {
        return Err(Error::Numerical("cannot boost a non-timelike vector to the origin".into()));
    }
    let unit = p / q.sqrt();
    let spatial = Vector3::new(unit[0], unit[1], unit[2]);
    let r = spatial.norm();
    if r < 1e-300 {
        return Ok(Matrix4::identity());
    }
    Ok(boost(spatial, -r.asinh()))
}

fn rotation4(r: &Rotation3<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(r.matrix());
    m
}

/// Realizes a finite tetrahedron in the Klein model with vertex 0 at the
/// origin, vertex 1 on the +x axis and vertex 2 in the upper xy half-plane.
pub fn klein_vertices(t: &TetAngles) -> Result<KleinTetra> {
    let class = classify(t);
    if class.kind != TetraKind::Finite {
        return Err(Error::WrongClass {
            expected: "finite",
            found: Box::new(class),
        });
    }
    realize(t, &class)
}

/// Like [`klein_vertices`], but also accepts ideal vertices, which land on
/// the unit sphere. The gauge is fixed at the first finite vertex.
pub fn klein_vertices_with_ideal(t: &TetAngles) -> Result<KleinTetra> {
    let class = classify(t);
    match class.kind {
        TetraKind::Finite | TetraKind::Ideal => realize(t, &class),
        _ => Err(Error::WrongClass {
            expected: "finite or ideal",
            found: Box::new(class),
        }),
    }
}

fn realize(t: &TetAngles, class: &TetraClass) -> Result<KleinTetra> {
    let g = gram_matrix(t).0;
    let eig = SymmetricEigen::new(g);
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    if eig.eigenvalues[order[3]] >= 0.0 {
        return Err(Error::Numerical("Gram matrix has no negative eigenvalue".into()));
    }
    // Rows of `normals` are face normals with ⟨n_k, n_l⟩ = G_kl; the negative
    // eigenvalue goes to the time coordinate.
    let normals = Matrix4::from_fn(|k, c| {
        let m = order[c];
        eig.eigenvectors[(k, m)] * eig.eigenvalues[m].abs().sqrt()
    });
    let nj = Matrix4::from_fn(|k, c| if c == 3 { -normals[(k, c)] } else { normals[(k, c)] });
    let inv = nj
        .try_inverse()
        .ok_or_else(|| Error::Numerical("face normals are linearly dependent".into()))?;

    let mut u: Vec<Vector4<f64>> = (0..4)
        .map(|i| {
            let col = inv.column(i).into_owned();
            if col[3] < 0.0 {
                -col
            } else {
                col
            }
        })
        .collect();
    let ideal = class.vertex_cofactors.map(|c| c.abs() <= crate::tetra::IDEAL_COFACTOR_TOL);

    let Some(anchor) = (0..4).find(|&i| !ideal[i]) else {
        return Err(Error::Domain("every vertex is ideal".into()));
    };
    let b = boost_to_origin(&u[anchor])?;
    for v in u.iter_mut() {
        *v = b * *v;
    }
    let spatial = |v: &Vector4<f64>| Vector3::new(v[0], v[1], v[2]) / v[3];
    let next = (0..4).find(|&i| i != anchor).unwrap();
    let x1 = spatial(&u[next]);
    let r1 = Rotation3::rotation_between(&x1, &Vector3::x()).unwrap_or_else(|| {
        // x1 points along −x.
        Rotation3::from_axis_angle(&Vector3::z_axis(), std::f64::consts::PI)
    });
    let third = (0..4).find(|&i| i != anchor && i != next).unwrap();
    let x2 = r1 * spatial(&u[third]);
    let r2 = Rotation3::from_axis_angle(&Vector3::x_axis(), -x2[2].atan2(x2[1]));
    let m = rotation4(&(r2 * r1));
    let mut vertices = [[0.0; 3]; 4];
    for i in 0..4 {
        let p = spatial(&(m * u[i]));
        vertices[i] = [p[0], p[1], p[2]];
    }
    // The gauge conditions hold up to rounding; make them exact.
    vertices[anchor] = [0.0; 3];
    vertices[next][1] = 0.0;
    vertices[next][2] = 0.0;
    vertices[third][2] = 0.0;
    if ideal.iter().any(|&f| f) {
        for i in 0..4 {
            if ideal[i] {
                let p = Vector3::from(vertices[i]).normalize();
                vertices[i] = [p[0], p[1], p[2]];
            }
        }
    }

    let kt = KleinTetra {
        vertices,
        source: *t,
        ideal,
    };
    let err = kt.round_trip_error();
    if err.is_nan() || err >= ROUND_TRIP_TOL {
        return Err(Error::Numerical(format!(
            "realized angles differ from the input by {err:e}"
        )));
    }
    Ok(kt)
}

/// ∫₀¹ λ² / (1 − λ²ρ²)² dλ, the radial part of a cone from the origin.
fn radial(rho: f64) -> f64 {
    if rho < 0.5 {
        let r2 = rho * rho;
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 0..60 {
            let add = (k as f64 + 1.0) * term / (2.0 * k as f64 + 3.0);
            sum += add;
            if add < 1e-17 * sum {
                break;
            }
            term *= r2;
        }
        sum
    } else {
        (rho / (2.0 * (1.0 - rho * rho)) - 0.5 * rho.atanh()) / rho.powi(3)
    }
}

// Degree-5 seven-point rule on a triangle (barycentric points, weights sum to 1).
const RULE_A: f64 = 0.101_286_507_323_456_34;
const RULE_B: f64 = 0.470_142_064_105_115_1;
const RULE_WA: f64 = 0.125_939_180_544_827_15;
const RULE_WB: f64 = 0.132_394_152_788_506_2;
const RULE_W0: f64 = 0.225;

#[derive(Debug, Clone, Copy)]
struct Tri {
    p: [Vector3<f64>; 3],
    area_factor: f64,
    estimate: f64,
    error: f64,
    id: u64,
}

impl PartialEq for Tri {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Tri {}
impl PartialOrd for Tri {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Tri {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then(other.id.cmp(&self.id))
    }
}

fn rule(p: &[Vector3<f64>; 3], area_factor: f64) -> f64 {
    let at = |l0: f64, l1: f64, l2: f64| radial((p[0] * l0 + p[1] * l1 + p[2] * l2).norm());
    let mut s = RULE_W0 * at(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
    let c = 1.0 - 2.0 * RULE_A;
    s += RULE_WA * (at(RULE_A, RULE_A, c) + at(RULE_A, c, RULE_A) + at(c, RULE_A, RULE_A));
    let c = 1.0 - 2.0 * RULE_B;
    s += RULE_WB * (at(RULE_B, RULE_B, c) + at(RULE_B, c, RULE_B) + at(c, RULE_B, RULE_B));
    s * area_factor
}

fn split(p: &[Vector3<f64>; 3]) -> [[Vector3<f64>; 3]; 4] {
    let m01 = (p[0] + p[1]) / 2.0;
    let m12 = (p[1] + p[2]) / 2.0;
    let m20 = (p[2] + p[0]) / 2.0;
    [[p[0], m01, m20], [m01, p[1], m12], [m20, m12, p[2]], [m01, m12, m20]]
}

/// Quadrature result with the evaluation effort spent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericVolume {
    pub value: f64,
    pub error_estimate: f64,
    pub triangles: usize,
}

/// Signed volume of the cone from the origin over triangle p, to within `tol`.
fn cone_volume(p: [Vector3<f64>; 3], tol: f64) -> Result<(f64, f64, usize)> {
    // Points of the cone are λ(p0 + s(p1−p0) + t(p2−p0)); the Jacobian is
    // λ² det(p0, p1−p0, p2−p0) and the (s, t) triangle has area ½.
    let det = p[0].dot(&(p[1] - p[0]).cross(&(p[2] - p[0])));
    if det == 0.0 {
        return Ok((0.0, 0.0, 0));
    }
    let scale = det.abs() * 0.5;
    let mut next_id = 0u64;
    let make = |p: [Vector3<f64>; 3], area_factor: f64, id: u64| {
        let estimate = rule(&p, area_factor);
        let children: f64 = split(&p).iter().map(|c| rule(c, area_factor / 4.0)).sum();
        Tri {
            p,
            area_factor,
            estimate: children,
            error: (children - estimate).abs() * scale,
            id,
        }
    };
    let mut heap = BinaryHeap::new();
    heap.push(make(p, 1.0, next_id));
    let mut total_error = heap.peek().map(|t| t.error).unwrap_or(0.0);
    let mut count = 1;
    while total_error > tol {
        if count > MAX_TRIANGLES_PER_FACE {
            return Err(Error::NoConvergence {
                method: "Klein-model cone quadrature",
                achieved: total_error,
                requested: tol,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        total_error -= worst.error;
        for child in split(&worst.p) {
            next_id += 1;
            let t = make(child, worst.area_factor / 4.0, next_id);
            total_error += t.error;
            heap.push(t);
            count += 1;
        }
    }
    // Deterministic summation order.
    let mut tris = heap.into_vec();
    tris.sort_by_key(|t| t.id);
    let sum: f64 = tris.iter().map(|t| t.estimate).sum();
    let err: f64 = tris.iter().map(|t| t.error).sum();
    Ok((det.signum() * scale * sum, err, count))
}

/// Hyperbolic volume of the Klein tetrahedron as a signed sum of cones from
/// the origin over its four faces.
pub fn volume_numeric(kt: &KleinTetra, tol: f64) -> Result<NumericVolume> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut value = 0.0;
    let mut error_estimate = 0.0;
    let mut triangles = 0;
    let center = (0..4).map(|i| kt.vertex(i)).sum::<Vector3<f64>>() / 4.0;
    for k in 0..4 {
        let mut face: Vec<Vector3<f64>> = (0..4).filter(|&i| i != k).map(|i| kt.vertex(i)).collect();
        // Orient each face outward.
        let n = (face[1] - face[0]).cross(&(face[2] - face[0]));
        if n.dot(&(face[0] - center)) < 0.0 {
            face.swap(1, 2);
        }
        let (v, e, c) = cone_volume([face[0], face[1], face[2]], tol / 4.0)?;
        value += v;
        error_estimate += e;
        triangles += c;
    }
    Ok(NumericVolume {
        value,
        error_estimate,
        triangles,
    })
}

/// Central-difference check of the Schläfli differential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchlafliReport {
    /// Step actually used (shrunk once if the first one left the finite region).
    pub h: f64,
    pub lengths: [f64; 6],
    /// Central differences ∂V/∂θ_i.
    pub derivatives: [f64; 6],
    /// |∂V/∂θ_i + ℓ_i/2|.
    pub residuals: [f64; 6],
    /// residuals_i / (ℓ_i/2).
    pub relative: [f64; 6],
}

impl SchlafliReport {
    pub fn max_relative(&self) -> f64 {
        self.relative.iter().cloned().fold(0.0, f64::max)
    }
}

pub fn schlafli_residual(t: &TetAngles, h: f64) -> Result<SchlafliReport> {
    if !(1e-7..=1e-3).contains(&h) {
        return Err(Error::Domain(format!("step {h} outside [1e-7, 1e-3]")));
    }
    let lengths = edge_lengths(t)?.0;
    let stencil = |h: f64| -> Option<[(TetAngles, TetAngles); 6]> {
        let mut out = [(*t, *t); 6];
        for e in Edge::ALL {
            let mut plus = t.to_array();
            let mut minus = t.to_array();
            plus[e.index()] += h;
            minus[e.index()] -= h;
            let (p, m) = (TetAngles::from_array(plus), TetAngles::from_array(minus));
            if !classify(&p).is_finite() || !classify(&m).is_finite() {
                return None;
            }
            out[e.index()] = (p, m);
        }
        Some(out)
    };
    let (h, points) = match stencil(h) {
        Some(p) => (h, p),
        None => {
            let smaller = h / 10.0;
            match stencil(smaller) {
                Some(p) => (smaller, p),
                None => {
                    return Err(Error::Domain(format!(
                        "perturbations of size {smaller} leave the finite region"
                    )))
                }
            }
        }
    };
    let mut derivatives = [0.0; 6];
    let mut residuals = [0.0; 6];
    let mut relative = [0.0; 6];
    for i in 0..6 {
        let (p, m) = &points[i];
        derivatives[i] = (volume(p)? - volume(m)?) / (2.0 * h);
        residuals[i] = (derivatives[i] + lengths[i] / 2.0).abs();
        relative[i] = residuals[i] / (lengths[i] / 2.0);
    }
    Ok(SchlafliReport {
        h,
        lengths,
        derivatives,
        residuals,
        relative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tetra::three_quarter_volume;

    #[test]
    fn radial_branches_agree() {
        for rho in [0.49999, 0.5, 0.50001] {
            let series = {
                let r2: f64 = rho * rho;
                (0..200).map(|k| (k as f64 + 1.0) * r2.powi(k) / (2.0 * k as f64 + 3.0)).sum::<f64>()
            };
            assert!((radial(rho) - series).abs() < 1e-13, "{rho}");
        }
        assert!((radial(0.0) - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn equiangular_realization() {
        let kt = klein_vertices(&TetAngles::equiangular(1.2)).unwrap();
        assert!(kt.round_trip_error() < 1e-10);
        assert_eq!(kt.vertices[0], [0.0, 0.0, 0.0]);
        assert!(kt.vertices[1][1].abs() < 1e-15 && kt.vertices[1][2].abs() < 1e-15);
        assert!(kt.vertices[1][0] > 0.0);
        let c = kt.centered().unwrap();
        let r: Vec<f64> = (0..4).map(|i| c.vertex(i).norm()).collect();
        for x in &r {
            assert!((x - r[0]).abs() < 1e-12);
        }
        let d01 = kt.distance(0, 1);
        for (i, j) in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            assert!((kt.distance(i, j) - d01).abs() < 1e-10);
        }
    }

    #[test]
    fn lengths_match_gram_cofactors() {
        let t = TetAngles::new(1.15, 1.2, 1.1, 1.18, 1.12, 1.16);
        let kt = klein_vertices(&t).unwrap();
        let l = edge_lengths(&t).unwrap();
        for e in Edge::ALL {
            let (i, j) = e.vertices();
            assert!((kt.distance(i, j) - l.get(e)).abs() < 1e-9, "{e}");
        }
    }

    #[test]
    fn ideal_inputs_rejected() {
        assert!(matches!(
            klein_vertices(&TetAngles::equiangular(std::f64::consts::PI / 3.0)),
            Err(Error::WrongClass { .. })
        ));
    }

    #[test]
    fn regular_volume_matches_formula() {
        let kt = klein_vertices(&TetAngles::equiangular(1.2)).unwrap();
        let v = volume_numeric(&kt, 1e-10).unwrap();
        assert!((v.value - 0.046_712_861_991_968).abs() < 1e-9, "{v:?}");
    }

    #[test]
    fn small_tetrahedron_is_nearly_euclidean() {
        let s = 1e-3;
        let kt = KleinTetra {
            vertices: [[0.0, 0.0, 0.0], [s, 0.0, 0.0], [0.0, s, 0.0], [0.0, 0.0, s]],
            source: TetAngles::equiangular(1.0),
            ideal: [false; 4],
        };
        let v = volume_numeric(&kt, 1e-20).unwrap().value;
        let euclid = s * s * s / 6.0;
        assert!((v / euclid - 1.0).abs() < 1e-5);
    }

    #[test]
    fn isometry_invariance() {
        let t = TetAngles::new(1.15, 1.2, 1.1, 1.18, 1.12, 1.16);
        let kt = klein_vertices(&t).unwrap();
        let moved = kt.transformed(&boost(Vector3::new(0.3, -1.0, 0.5), 0.7));
        assert!(moved.vertices[0] != kt.vertices[0]);
        let a = volume_numeric(&kt, 1e-9).unwrap().value;
        let b = volume_numeric(&moved, 1e-9).unwrap().value;
        assert!((a - b).abs() < 1e-8);
        assert!(moved.round_trip_error() < 1e-9);
    }

    #[test]
    fn three_quarter_ideal_oracle() {
        use crate::tetra::prime_angles;
        let (a, b, c) = (2.0, 0.8, 0.9);
        let p = prime_angles(a, b, c);
        let t = TetAngles::new(a, b, c, p.a_prime, p.b_prime, p.c_prime);
        let kt = klein_vertices_with_ideal(&t).unwrap();
        assert_eq!(kt.ideal, [false, true, true, true]);
        let v = volume_numeric(&kt, 1e-7).unwrap().value;
        assert!((v - three_quarter_volume(a, b, c).unwrap()).abs() < 1e-5, "{v}");
    }

    #[test]
    fn schlafli_equiangular_and_scaling() {
        let r = schlafli_residual(&TetAngles::equiangular(1.2), 1e-4).unwrap();
        for x in r.residuals {
            assert!((x - r.residuals[0]).abs() < 1e-9);
        }
        let t = TetAngles::new(1.15, 1.2, 1.1, 1.18, 1.12, 1.16);
        let coarse = schlafli_residual(&t, 1e-3).unwrap();
        let fine = schlafli_residual(&t, 5e-4).unwrap();
        assert!(coarse.max_relative() < 1e-3);
        let ratio = coarse.residuals.iter().cloned().fold(0.0, f64::max)
            / fine.residuals.iter().cloned().fold(0.0, f64::max);
        assert!((ratio - 4.0).abs() < 0.5, "{ratio}");
        assert!(schlafli_residual(&t, 1e-2).is_err());
    }
}

//! The octahedron of the edge-extended tetrahedron and the volume formulas
//! built on its triangulation.
//!
//! Extending every edge of T to infinity and cutting away six ideal
//! tetrahedra leaves an ideal octahedron O. Seen from its vertex at ∞ it
//! projects to a quadrilateral v_a v_b v_c v_d with interior point v_0; the
//! firepole v_0–∞ splits O into four ideal tetrahedra with unknown angles
//! AB, BA, …, AD (the "slots"). Eight linear constraints leave a one-parameter
//! family `bar ± Z`, and closing the quadrilateral up (the holonomy condition)
//! is a quadratic in w = z², z = e^{iZ}. One root gives O, the other the dual
//! octahedron O′ whose dihedral angles are supplementary to those of O.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::lob;
use crate::tetra::{classify, three_quarter_volume, TetAngles, TetraClass, TetraKind};

/// Largest accepted deviation of |w| from 1 before a root is rejected.
pub const UNIT_CIRCLE_TOL: f64 = 1e-6;
/// Roots of the quadratic closer than this are treated as a double root.
pub const DOUBLE_ROOT_TOL: f64 = 1e-10;
/// Largest accepted linear-constraint residual for a caller-supplied seed.
pub const SEED_RESIDUAL_TOL: f64 = 1e-9;

/// The eight unknown angles of the four ideal tetrahedra around the firepole.
///
/// Slots in the first group (AB, BC, CD, DA) move by +Z along the solution
/// line, the second group (BA, CB, DC, AD) by −Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot {
    AB,
    BA,
    BC,
    CB,
    CD,
    DC,
    DA,
    AD,
}

impl Slot {
    pub const ALL: [Slot; 8] = [
        Slot::AB,
        Slot::BA,
        Slot::BC,
        Slot::CB,
        Slot::CD,
        Slot::DC,
        Slot::DA,
        Slot::AD,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// +1 for the slots that gain Z, −1 for those that lose it.
    pub fn z_sign(self) -> f64 {
        match self {
            Slot::AB | Slot::BC | Slot::CD | Slot::DA => 1.0,
            _ => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Slot::AB => "AB",
            Slot::BA => "BA",
            Slot::BC => "BC",
            Slot::CB => "CB",
            Slot::CD => "CD",
            Slot::DC => "DC",
            Slot::DA => "DA",
            Slot::AD => "AD",
        }
    }
}

impl std::fmt::Display for Slot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which octahedron of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Octahedron {
    #[serde(rename = "O")]
    O,
    #[serde(rename = "O'")]
    Dual,
}

/// Root of the holonomy quadratic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Root {
    Minus,
    Plus,
}

/// Angles a–d of the quadrilateral at v_a…v_d and the known angles e–h of the
/// four tetrahedra at the firepole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaseAngles {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
}

impl BaseAngles {
    /// Base angles of the dual octahedron: each one supplementary.
    pub fn dual(&self) -> BaseAngles {
        BaseAngles {
            a: PI - self.a,
            b: PI - self.b,
            c: PI - self.c,
            d: PI - self.d,
            e: PI - self.e,
            f: PI - self.f,
            g: PI - self.g,
            h: PI - self.h,
        }
    }

    pub fn efgh(&self) -> [f64; 4] {
        [self.e, self.f, self.g, self.h]
    }
}

pub fn base_angles(t: &TetAngles) -> BaseAngles {
    let (a, b, c) = (t.a, t.b, t.c);
    let (ap, bp, cp) = (t.a_prime, t.b_prime, t.c_prime);
    BaseAngles {
        a: (PI - cp + a + bp) / 2.0,
        b: (PI - bp + a + cp) / 2.0,
        c: (PI - a - b - c) / 2.0,
        d: (PI - a + b + c) / 2.0,
        e: (PI - a - bp - cp) / 2.0,
        f: (PI - ap + bp + c) / 2.0,
        g: (PI - c + a + b) / 2.0,
        h: (PI - b + ap + cp) / 2.0,
    }
}

/// Eight slot values, indexed by [`Slot`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlotValues(pub [f64; 8]);

impl SlotValues {
    pub fn get(&self, slot: Slot) -> f64 {
        self.0[slot.index()]
    }

    /// Residuals of the eight linear constraints against `base`, in the order
    /// AB+AD=a, AB+BA+e=π, BC+BA=b, BC+CB+f=π, CD+CB=c, CD+DC+g=π,
    /// DA+DC=d, DA+AD+h=π.
    pub fn linear_residuals(&self, base: &BaseAngles) -> [f64; 8] {
        use Slot::*;
        let v = |s: Slot| self.get(s);
        [
            v(AB) + v(AD) - base.a,
            v(AB) + v(BA) + base.e - PI,
            v(BC) + v(BA) - base.b,
            v(BC) + v(CB) + base.f - PI,
            v(CD) + v(CB) - base.c,
            v(CD) + v(DC) + base.g - PI,
            v(DA) + v(DC) - base.d,
            v(DA) + v(AD) + base.h - PI,
        ]
    }

    pub fn max_linear_residual(&self, base: &BaseAngles) -> f64 {
        self.linear_residuals(base)
            .iter()
            .fold(0.0, |m: f64, r| m.max(r.abs()))
    }

    /// The same point moved along the solution line by `z`.
    pub fn shifted(&self, z: f64) -> SlotValues {
        let mut out = self.0;
        for s in Slot::ALL {
            out[s.index()] += s.z_sign() * z;
        }
        SlotValues(out)
    }
}

/// A particular solution of the linear constraints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarSolution(pub SlotValues);

impl BarSolution {
    pub fn get(&self, slot: Slot) -> f64 {
        self.0.get(slot)
    }

    /// Seed of the dual octahedron: −bar on the first group, π − bar on the second.
    pub fn dual_seed(&self) -> BarSolution {
        let mut v = [0.0; 8];
        for s in Slot::ALL {
            let bar = self.get(s);
            v[s.index()] = if s.z_sign() > 0.0 { -bar } else { PI - bar };
        }
        BarSolution(SlotValues(v))
    }
}

pub fn bar_solution(t: &TetAngles) -> BarSolution {
    let (a, b, c) = (t.a, t.b, t.c);
    let (ap, bp, cp) = (t.a_prime, t.b_prime, t.c_prime);
    let mut v = [0.0; 8];
    v[Slot::AB.index()] = (a + ap + 2.0 * bp) / 4.0;
    v[Slot::BA.index()] = (2.0 * PI + a - ap + 2.0 * cp) / 4.0;
    v[Slot::BC.index()] = (a + ap - 2.0 * bp) / 4.0;
    v[Slot::CB.index()] = (2.0 * PI - a + ap - 2.0 * c) / 4.0;
    v[Slot::CD.index()] = (-a - ap - 2.0 * b) / 4.0;
    v[Slot::DC.index()] = (2.0 * PI - a + ap + 2.0 * c) / 4.0;
    v[Slot::DA.index()] = (-a - ap + 2.0 * b) / 4.0;
    v[Slot::AD.index()] = (2.0 * PI + a - ap - 2.0 * cp) / 4.0;
    BarSolution(SlotValues(v))
}

/// Coefficients of the holonomy polynomial Σ c_k z^{2k}, k = 0..=4, written
/// out term by term. c_0 and c_4 vanish whenever Πα·Πβ = 1.
pub fn holonomy_polynomial(alphas: &[Complex64; 4], betas: &[Complex64; 4]) -> [Complex64; 5] {
    let pa: Complex64 = alphas.iter().product();
    let pb: Complex64 = betas.iter().product();
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let complement = |i: usize, j: usize| -> (usize, usize) {
        let mut rest = (0..4).filter(|&k| k != i && k != j);
        (rest.next().unwrap(), rest.next().unwrap())
    };
    let others = |v: &[Complex64; 4], i: usize| -> Complex64 {
        (0..4).filter(|&k| k != i).map(|k| v[k]).product()
    };

    let c0 = pa.inv() - pb;
    let mut c2 = Complex64::new(0.0, 0.0);
    let mut c6 = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        c2 += -alphas[i] / others(alphas, i) + others(betas, i) / betas[i];
        c6 += betas[i] / others(betas, i) - others(alphas, i) / alphas[i];
    }
    let mut c4 = Complex64::new(0.0, 0.0);
    for &(i, j) in &pairs {
        let (k, l) = complement(i, j);
        c4 += alphas[i] * alphas[j] / (alphas[k] * alphas[l])
            - betas[i] * betas[j] / (betas[k] * betas[l]);
    }
    let c8 = pa - pb.inv();
    [c0, c2, c4, c6, c8]
}

/// The same polynomial obtained by multiplying out
/// Π(α_k w − 1/α_k) − Π(β_k − w/β_k); an independent check on
/// [`holonomy_polynomial`].
pub fn holonomy_polynomial_by_expansion(alphas: &[Complex64; 4], betas: &[Complex64; 4]) -> [Complex64; 5] {
    let mul = |p: &[Complex64], lin: [Complex64; 2]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); p.len() + 1];
        for (k, &c) in p.iter().enumerate() {
            out[k] += c * lin[0];
            out[k + 1] += c * lin[1];
        }
        out
    };
    let one = Complex64::new(1.0, 0.0);
    let mut pa = vec![one];
    let mut pb = vec![one];
    for k in 0..4 {
        pa = mul(&pa, [-alphas[k].inv(), alphas[k]]);
        pb = mul(&pb, [betas[k], -betas[k].inv()]);
    }
    let mut out = [Complex64::new(0.0, 0.0); 5];
    for k in 0..5 {
        out[k] = pa[k] - pb[k];
    }
    out
}

/// Both roots of the holonomy condition and the data they came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HolonomyRoots {
    /// Root reproducing O; yields +V(T) in the volume formula.
    pub z_minus: Complex64,
    /// Root tied to the dual octahedron; yields −V(T).
    pub z_plus: Complex64,
    /// arg z₋ in (−π/2, π/2].
    pub arg_minus: f64,
    /// arg z₊ in (−π/2, π/2].
    pub arg_plus: f64,
    pub alphas: [Complex64; 4],
    pub betas: [Complex64; 4],
    /// Coefficients (z², z⁴, z⁶) of the reduced quadratic in w = z².
    pub quad_coeffs: [Complex64; 3],
    /// The z⁰ and z⁸ coefficients, which cancel identically.
    pub vanishing_coeffs: [Complex64; 2],
    /// max | |w| − 1 | over both roots before projection onto the unit circle.
    pub projection_distance: f64,
    pub seed: BarSolution,
    pub class: TetraClass,
}

impl HolonomyRoots {
    pub fn arg(&self, root: Root) -> f64 {
        match root {
            Root::Minus => self.arg_minus,
            Root::Plus => self.arg_plus,
        }
    }

    /// Π α_i · Π β_i, which equals 1 because the seed's slots sum to 2π.
    pub fn alpha_beta_product(&self) -> Complex64 {
        self.alphas.iter().product::<Complex64>() * self.betas.iter().product::<Complex64>()
    }

    /// |polynomial(z)| for the full octic.
    pub fn residual(&self, z: Complex64) -> f64 {
        let c = holonomy_polynomial(&self.alphas, &self.betas);
        let w = z * z;
        let mut acc = Complex64::new(0.0, 0.0);
        for coeff in c.iter().rev() {
            acc = acc * w + coeff;
        }
        acc.norm()
    }

    /// True when the input was hyperideal; the construction is then experimental.
    pub fn is_experimental(&self) -> bool {
        self.class.kind == TetraKind::Hyperideal
    }
}

/// Solves the holonomy condition for the default seed.
pub fn solve_holonomy(t: &TetAngles) -> Result<HolonomyRoots> {
    solve_holonomy_seeded(t, &bar_solution(t))
}

/// Solves the holonomy condition starting from any solution of the linear
/// constraints. Different seeds differ by a shift along the solution line and
/// give the same octahedron angles modulo π.
pub fn solve_holonomy_seeded(t: &TetAngles, seed: &BarSolution) -> Result<HolonomyRoots> {
    let class = classify(t);
    if class.kind == TetraKind::Invalid {
        return Err(Error::WrongClass {
            expected: "finite, ideal or hyperideal",
            found: Box::new(class),
        });
    }
    let base = base_angles(t);
    let residual = seed.0.max_linear_residual(&base);
    if residual > SEED_RESIDUAL_TOL {
        return Err(Error::Domain(format!(
            "seed violates the linear constraints by {residual:e}"
        )));
    }

    let cis = |x: f64| Complex64::from_polar(1.0, x);
    let alphas = [Slot::AB, Slot::BC, Slot::CD, Slot::DA].map(|s| cis(seed.get(s)));
    let betas = [Slot::BA, Slot::CB, Slot::DC, Slot::AD].map(|s| cis(seed.get(s)));
    let c = holonomy_polynomial(&alphas, &betas);
    let (c2, c4, c6) = (c[1], c[2], c[3]);

    if c6.norm() < f64::EPSILON * (c2.norm() + c4.norm()) {
        return Err(Error::Degenerate("leading coefficient of the quadratic vanishes".into()));
    }
    // c6 w² + c4 w + c2 = 0, with the cancellation-free pairing of roots.
    let mut sq = (c4 * c4 - 4.0 * c6 * c2).sqrt();
    if (c4.conj() * sq).re < 0.0 {
        sq = -sq;
    }
    let q = -0.5 * (c4 + sq);
    if q.norm() == 0.0 {
        return Err(Error::Degenerate("both roots vanish".into()));
    }
    let w1 = q / c6;
    let w2 = c2 / q;
    if (w1 - w2).norm() < DOUBLE_ROOT_TOL {
        return Err(Error::Degenerate(format!(
            "double root: |w₁ − w₂| = {:e}",
            (w1 - w2).norm()
        )));
    }
    let projection_distance = (w1.norm() - 1.0).abs().max((w2.norm() - 1.0).abs());
    if projection_distance > UNIT_CIRCLE_TOL {
        return Err(Error::NonRealAngle {
            deviation: projection_distance,
        });
    }
    let half_arg = |w: Complex64| {
        let z = w.arg() / 2.0;
        if z <= -PI / 2.0 {
            z + PI
        } else {
            z
        }
    };
    let (z1, z2) = (half_arg(w1), half_arg(w2));

    let constant = greg_constant(t);
    let v1 = slot_sum(seed, z1) + constant;
    let v2 = slot_sum(seed, z2) + constant;
    if v1.abs().max(v2.abs()) < 1e-14 {
        return Err(Error::Degenerate("both roots give zero volume".into()));
    }
    let (arg_minus, arg_plus) = if v1 >= v2 { (z1, z2) } else { (z2, z1) };

    Ok(HolonomyRoots {
        z_minus: cis(arg_minus),
        z_plus: cis(arg_plus),
        arg_minus,
        arg_plus,
        alphas,
        betas,
        quad_coeffs: [c2, c4, c6],
        vanishing_coeffs: [c[0], c[4]],
        projection_distance,
        seed: *seed,
        class,
    })
}

/// Σ Л(bar_s ± Z) over the eight slots.
fn slot_sum(seed: &BarSolution, z: f64) -> f64 {
    Slot::ALL
        .iter()
        .map(|&s| lob(seed.get(s) + s.z_sign() * z))
        .sum()
}

/// The Z-independent half-bracket of the tetrahedron volume formula.
fn greg_constant(t: &TetAngles) -> f64 {
    let (a, b, c) = (t.a, t.b, t.c);
    let (ap, bp, cp) = (t.a_prime, t.b_prime, t.c_prime);
    let h = |x: f64| lob(x / 2.0);
    0.5 * (h(PI + a - b - c) - h(PI + b - a - c) - h(PI + c - a - b)
        + h(PI + bp - ap - c)
        + h(PI + a + b + c)
        + h(PI + c - ap - bp)
        + h(PI - ap + bp + c)
        - h(PI + ap + bp + c)
        + h(PI + ap - b - cp)
        - h(PI + a + bp + cp)
        - h(PI + a - bp - cp)
        + h(PI + bp - a - cp)
        - h(PI - ap - b + cp)
        + h(PI + ap - b + cp)
        + h(PI + ap + b + cp)
        + h(PI - a - bp + cp))
}

/// Solved angles of one octahedron of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OctAngles {
    pub which: Octahedron,
    /// Unreduced slot values; they satisfy the linear constraints exactly.
    pub values: SlotValues,
    /// The Z that moved the seed onto the holonomy solution.
    pub z: f64,
}

impl OctAngles {
    pub fn get(&self, slot: Slot) -> f64 {
        self.values.get(slot)
    }

    /// Slot values reduced modulo 2π into (−π, π].
    pub fn normalized(&self) -> [f64; 8] {
        self.values.0.map(|x| {
            let r = x - 2.0 * PI * (x / (2.0 * PI)).round();
            if r <= -PI {
                r + 2.0 * PI
            } else {
                r
            }
        })
    }

    /// The base angles this octahedron's slots are constrained by.
    pub fn base_for(&self, tet_base: &BaseAngles) -> BaseAngles {
        match self.which {
            Octahedron::O => *tet_base,
            Octahedron::Dual => tet_base.dual(),
        }
    }

    /// (sin AB · sin BC · sin CD · sin DA) / (sin BA · sin CB · sin DC · sin AD).
    pub fn holonomy_product(&self) -> f64 {
        use Slot::*;
        let s = |slot: Slot| self.get(slot).sin();
        (s(AB) * s(BC) * s(CD) * s(DA)) / (s(BA) * s(CB) * s(DC) * s(AD))
    }

    /// Dihedral angles at the twelve edges of the octahedron: the vertical
    /// edges over v_a…v_d, the edges v_0–v_a…v_0–v_d, and the quadrilateral
    /// sides v_av_b, v_bv_c, v_cv_d, v_dv_a.
    pub fn edge_dihedrals(&self, tet_base: &BaseAngles) -> [f64; 12] {
        use Slot::*;
        let v = |s: Slot| self.get(s);
        let base = self.base_for(tet_base);
        [
            v(AB) + v(AD),
            v(BC) + v(BA),
            v(CD) + v(CB),
            v(DA) + v(DC),
            v(BA) + v(DA),
            v(CB) + v(AB),
            v(DC) + v(BC),
            v(AD) + v(CD),
            base.e,
            base.f,
            base.g,
            base.h,
        ]
    }
}

/// Slot angles of O (root z₋, default seed) or of the dual O′ (seed
/// (−bar, π − bar), solved by the dual's own root −arg z₊).
pub fn octahedron_angles(t: &TetAngles, which: Octahedron) -> Result<OctAngles> {
    let roots = solve_holonomy(t)?;
    Ok(octahedron_angles_from(&roots, which))
}

pub fn octahedron_angles_from(roots: &HolonomyRoots, which: Octahedron) -> OctAngles {
    match which {
        Octahedron::O => OctAngles {
            which,
            values: roots.seed.0.shifted(roots.arg_minus),
            z: roots.arg_minus,
        },
        Octahedron::Dual => {
            let z = -roots.arg_plus;
            OctAngles {
                which,
                values: roots.seed.dual_seed().0.shifted(z),
                z,
            }
        }
    }
}

/// Volume of the octahedron as four ideal tetrahedra: the eight slot terms
/// plus Л of its four firepole angles. `tet_base` is the base of T; the dual
/// uses the supplementary angles.
pub fn octahedron_volume(oct: &OctAngles, tet_base: &BaseAngles) -> f64 {
    let base = oct.base_for(tet_base);
    oct.values.0.iter().map(|&x| lob(x)).sum::<f64>() + base.efgh().iter().map(|&x| lob(x)).sum::<f64>()
}

/// Volume of U, the convex hull obtained by pushing the vertices of T past
/// the sphere at infinity, evaluated term by term.
pub fn u_volume(t: &TetAngles) -> Result<f64> {
    let roots = solve_holonomy(t)?;
    Ok(u_volume_from(t, &roots))
}

fn u_volume_from(t: &TetAngles, roots: &HolonomyRoots) -> f64 {
    let (a, b, c) = (t.a, t.b, t.c);
    let (ap, bp, cp) = (t.a_prime, t.b_prime, t.c_prime);
    let h = |x: f64| lob(x / 2.0);
    slot_sum(&roots.seed, roots.arg_minus)
        + t.to_array().iter().map(|&x| lob(x)).sum::<f64>()
        + h(PI - a - bp - cp)
        + h(PI + ap - b - cp)
        + h(PI + bp - a - cp)
        + h(PI + cp - a - bp)
        + h(PI + a - b - c)
        + h(PI + c - ap - bp)
        + h(PI + bp - ap - c)
        - h(PI + ap + bp + c)
}

/// The volume formula evaluated with either root: z₋ gives V(T), z₊ gives −V(T).
pub fn tet_volume(t: &TetAngles, root: Root) -> Result<f64> {
    let roots = solve_holonomy(t)?;
    require_not_hyperideal(&roots)?;
    Ok(slot_sum(&roots.seed, roots.arg(root)) + greg_constant(t))
}

/// V(T) for a finite (or ideal) tetrahedron.
pub fn volume(t: &TetAngles) -> Result<f64> {
    tet_volume(t, Root::Minus)
}

fn require_not_hyperideal(roots: &HolonomyRoots) -> Result<()> {
    if roots.class.kind == TetraKind::Hyperideal {
        return Err(Error::WrongClass {
            expected: "finite or ideal",
            found: Box::new(roots.class.clone()),
        });
    }
    Ok(())
}

/// Every volume route for one tetrahedron, from one holonomy solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeRoutes {
    /// Formula with z₋.
    pub greg_minus: f64,
    /// Formula with z₊; equals −V(T).
    pub greg_plus: f64,
    /// Half of the sixteen-term sum over O and O′ slots.
    pub clean_half_sum: f64,
    /// (V(O) + V(O′)) / 2.
    pub octahedra_half_sum: f64,
    /// V(U) minus the four 3/4-ideal corners.
    pub via_u: f64,
    pub octahedron: f64,
    pub dual_octahedron: f64,
    pub u: f64,
}

impl VolumeRoutes {
    /// Largest pairwise gap between the four routes that should equal V(T).
    pub fn max_disagreement(&self) -> f64 {
        let v = [self.greg_minus, self.clean_half_sum, self.octahedra_half_sum, self.via_u];
        let mut gap: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                gap = gap.max((v[i] - v[j]).abs());
            }
        }
        gap
    }
}

pub fn volume_routes(t: &TetAngles) -> Result<VolumeRoutes> {
    let roots = solve_holonomy(t)?;
    require_not_hyperideal(&roots)?;
    let base = base_angles(t);
    let constant = greg_constant(t);
    let o = octahedron_angles_from(&roots, Octahedron::O);
    let od = octahedron_angles_from(&roots, Octahedron::Dual);
    let v_o = octahedron_volume(&o, &base);
    let v_od = octahedron_volume(&od, &base);
    let u = u_volume_from(t, &roots);
    let mut corners = 0.0;
    for vertex in 0..4 {
        let [x, y, z] = t.vertex_angles(vertex);
        corners += three_quarter_volume(x, y, z)?;
    }
    Ok(VolumeRoutes {
        greg_minus: slot_sum(&roots.seed, roots.arg_minus) + constant,
        greg_plus: slot_sum(&roots.seed, roots.arg_plus) + constant,
        clean_half_sum: 0.5 * clean_sum(&roots),
        octahedra_half_sum: 0.5 * (v_o + v_od),
        via_u: u - corners,
        octahedron: v_o,
        dual_octahedron: v_od,
        u,
    })
}

/// The sixteen Л-terms whose sum is 2V(T): the O slots at z₋ and the signed
/// dual slots at the dual root −arg z₊.
pub(crate) fn clean_terms(roots: &HolonomyRoots) -> [(Octahedron, Slot, f64, f64); 16] {
    let zm = roots.arg_minus;
    let zd = -roots.arg_plus;
    let mut out = [(Octahedron::O, Slot::AB, 0.0, 1.0); 16];
    for (i, s) in Slot::ALL.into_iter().enumerate() {
        let bar = roots.seed.get(s);
        out[i] = (Octahedron::O, s, bar + s.z_sign() * zm, 1.0);
        // Л(−bar + Z′) on the first group, −Л(bar + Z′) on the second.
        out[8 + i] = if s.z_sign() > 0.0 {
            (Octahedron::Dual, s, -bar + zd, 1.0)
        } else {
            (Octahedron::Dual, s, bar + zd, -1.0)
        };
    }
    out
}

fn clean_sum(roots: &HolonomyRoots) -> f64 {
    clean_terms(roots).iter().map(|&(_, _, x, sign)| sign * lob(x)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_angles_equiangular() {
        let th = 1.1;
        let b = base_angles(&TetAngles::equiangular(th));
        let plus = (PI + th) / 2.0;
        let minus = (PI - 3.0 * th) / 2.0;
        for (x, y) in [(b.a, plus), (b.b, plus), (b.c, minus), (b.d, plus)] {
            assert!((x - y).abs() < 1e-15);
        }
        for (x, y) in [(b.e, minus), (b.f, plus), (b.g, plus), (b.h, plus)] {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn base_angles_direct_substitution() {
        let t = TetAngles::new(PI / 2.0, PI / 3.0, PI / 4.0, PI / 2.0, PI / 3.0, PI / 4.0);
        let b = base_angles(&t);
        assert!((b.a - (PI - PI / 4.0 + PI / 2.0 + PI / 3.0) / 2.0).abs() < 1e-15);
        // quadrilateral angles sum to 2π, firepole angles sum to 2π
        assert!((b.a + b.b + b.c + b.d - 2.0 * PI).abs() < 1e-14);
        assert!((b.e + b.f + b.g + b.h - 2.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn bar_examples() {
        let th = 1.2;
        let bars = bar_solution(&TetAngles::equiangular(th));
        assert!((bars.get(Slot::AB) - th).abs() < 1e-15);
        assert!(bars.get(Slot::BC).abs() < 1e-15);
        assert!((bars.get(Slot::CD) + th).abs() < 1e-15);
        assert!(bars.get(Slot::DA).abs() < 1e-15);

        let t = TetAngles::new(0.9, 0.8, 0.7, 1.0, 1.1, 1.2);
        let bars = bar_solution(&t);
        assert!((bars.get(Slot::AB) - 1.025).abs() < 1e-15);
        assert!(bars.0.max_linear_residual(&base_angles(&t)) < 1e-14);
        let first: f64 = [Slot::AB, Slot::BC, Slot::CD, Slot::DA].iter().map(|&s| bars.get(s)).sum();
        let second: f64 = [Slot::BA, Slot::CB, Slot::DC, Slot::AD].iter().map(|&s| bars.get(s)).sum();
        assert!(first.abs() < 1e-15);
        assert!((second - 2.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn shifting_preserves_linear_constraints() {
        let t = TetAngles::new(0.9, 0.8, 0.7, 1.0, 1.1, 1.2);
        let base = base_angles(&t);
        let bars = bar_solution(&t);
        for z in [-2.0, 0.3, 5.0] {
            assert!(bars.0.shifted(z).max_linear_residual(&base) < 1e-14);
        }
        assert!(bars.dual_seed().0.max_linear_residual(&base.dual()) < 1e-14);
    }

    #[test]
    fn regular_finite_volume() {
        // Frozen from the independent Klein-model quadrature of this tetrahedron.
        let v = volume(&TetAngles::equiangular(1.2)).unwrap();
        assert!((v - 0.046_712_861_991_968).abs() < 1e-12, "{v}");
    }

    #[test]
    fn regular_ideal_limit() {
        let v = volume(&TetAngles::equiangular(PI / 3.0)).unwrap();
        assert!((v - 1.014_941_606_409_653_6).abs() < 1e-9, "{v}");
    }

    #[test]
    fn hyperideal_is_experimental() {
        let t = TetAngles::equiangular(1.0);
        if let Ok(roots) = solve_holonomy(&t) {
            assert!(roots.is_experimental());
        }
        assert!(matches!(volume(&t), Err(Error::WrongClass { .. }) | Err(Error::NonRealAngle { .. })));
    }

    #[test]
    fn invalid_input_rejected() {
        assert!(matches!(
            solve_holonomy(&TetAngles::equiangular(1.4)),
            Err(Error::WrongClass { .. })
        ));
    }

    #[test]
    fn bad_seed_rejected() {
        let t = TetAngles::equiangular(1.2);
        let mut seed = bar_solution(&t);
        seed.0 .0[0] += 0.1;
        assert!(matches!(solve_holonomy_seeded(&t, &seed), Err(Error::Domain(_))));
    }

    #[test]
    fn equiangular_symmetry_of_slots() {
        let t = TetAngles::equiangular(1.15);
        let o = octahedron_angles(&t, Octahedron::O).unwrap();
        let od = octahedron_angles(&t, Octahedron::Dual).unwrap();
        let same = |x: f64, y: f64| {
            let d = (x - y) / PI;
            (d - d.round()).abs() < 1e-12
        };
        assert!(same(o.get(Slot::BC), o.get(Slot::DA)));
        assert!(same(o.get(Slot::BA), o.get(Slot::DC)));
        assert!(same(o.get(Slot::CB), o.get(Slot::AD)));
        // O and O′ are exchanged by AB ↔ CD
        assert!(same(o.get(Slot::AB), od.get(Slot::CD)));
        assert!(same(o.get(Slot::CD), od.get(Slot::AB)));
    }

    #[test]
    fn octahedron_volume_regroups_into_ideal_tetrahedra() {
        use crate::tetra::{ideal_volume, IdealTetAngles};
        let t = TetAngles::new(1.15, 1.2, 1.1, 1.18, 1.12, 1.16);
        let base = base_angles(&t);
        let o = octahedron_angles(&t, Octahedron::O).unwrap();
        let groups = [
            (Slot::AB, Slot::BA, base.e),
            (Slot::BC, Slot::CB, base.f),
            (Slot::CD, Slot::DC, base.g),
            (Slot::DA, Slot::AD, base.h),
        ];
        let sum: f64 = groups
            .iter()
            .map(|&(x, y, z)| ideal_volume(IdealTetAngles::new(o.get(x), o.get(y), z)).unwrap())
            .sum();
        assert!((sum - octahedron_volume(&o, &base)).abs() < 1e-13);
    }

    #[test]
    fn printed_coefficients_match_expansion() {
        for t in [
            TetAngles::equiangular(1.2),
            TetAngles::new(0.9, 0.8, 0.7, 1.0, 1.1, 1.2),
            TetAngles::new(1.15, 1.2, 1.1, 1.18, 1.12, 1.16),
        ] {
            let r = solve_holonomy(&t).unwrap();
            let printed = holonomy_polynomial(&r.alphas, &r.betas);
            let oracle = holonomy_polynomial_by_expansion(&r.alphas, &r.betas);
            for k in 0..5 {
                assert!((printed[k] - oracle[k]).norm() < 1e-12, "{k}: {} vs {}", printed[k], oracle[k]);
            }
            assert!((r.alpha_beta_product() - 1.0).norm() < 1e-12);
            assert!(r.vanishing_coeffs.iter().all(|c| c.norm() < 1e-12));
            assert!(r.residual(r.z_minus) < 1e-10 && r.residual(r.z_plus) < 1e-10);
        }
    }

    #[test]
    fn solved_angles_satisfy_all_equations() {
        let t = TetAngles::new(1.15, 1.2, 1.1, 1.18, 1.12, 1.16);
        let base = base_angles(&t);
        for which in [Octahedron::O, Octahedron::Dual] {
            let o = octahedron_angles(&t, which).unwrap();
            assert!(o.values.max_linear_residual(&o.base_for(&base)) < 1e-12);
            assert!((o.holonomy_product() - 1.0).abs() < 1e-10);
            assert!(o.normalized().iter().all(|&x| x > -PI && x <= PI));
        }
    }

    #[test]
    fn dual_dihedrals_are_supplementary() {
        let t = TetAngles::new(1.15, 1.2, 1.1, 1.18, 1.12, 1.16);
        let base = base_angles(&t);
        let o = octahedron_angles(&t, Octahedron::O).unwrap().edge_dihedrals(&base);
        let od = octahedron_angles(&t, Octahedron::Dual).unwrap().edge_dihedrals(&base);
        for k in 0..12 {
            let s = (o[k] + od[k] - PI) / (2.0 * PI);
            assert!((s - s.round()).abs() < 1e-12, "edge {k}");
        }
    }

    #[test]
    fn volume_routes_agree() {
        for t in [
            TetAngles::equiangular(1.2),
            TetAngles::new(1.15, 1.2, 1.1, 1.18, 1.12, 1.16),
            TetAngles::new(1.25, 1.05, 1.18, 1.1, 1.22, 1.08),
        ] {
            let r = volume_routes(&t).unwrap();
            assert!(r.max_disagreement() < 1e-12, "{r:?}");
            assert!((r.greg_plus + r.greg_minus).abs() < 1e-12);
            assert!(r.greg_minus > 0.0);
            assert!(r.octahedron < 0.0);
        }
    }

    #[test]
    fn seed_shift_gives_same_octahedron() {
        let t = TetAngles::new(1.15, 1.2, 1.1, 1.18, 1.12, 1.16);
        let default = octahedron_angles(&t, Octahedron::O).unwrap();
        for delta in [-0.7, 0.25, 1.9] {
            let seed = BarSolution(bar_solution(&t).0.shifted(delta));
            let roots = solve_holonomy_seeded(&t, &seed).unwrap();
            let o = octahedron_angles_from(&roots, Octahedron::O);
            for s in Slot::ALL {
                let d = (o.get(s) - default.get(s)) / PI;
                assert!((d - d.round()).abs() < 1e-12);
            }
        }
    }
}

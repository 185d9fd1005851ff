//! Regge symmetries and the scissors-congruence certificate 2T ~ 2R(T).
//!
//! [`decompose`] cuts 2T = O + O′ into sixteen signed pieces L(θ), one per
//! slot of each octahedron, with signed volume Л(θ). Exchanging the BA and DC
//! tetrahedra around the firepole turns the pieces of 2T into those of
//! 2R_b(T); the mirror image needed to close the argument only relabels R_b(T)
//! and never changes an angle or a volume.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::leibon::{clean_terms, solve_holonomy, volume, HolonomyRoots, Octahedron, Slot};
use crate::special::{lob, reduce_mod_pi};
use crate::tetra::{classify, relabel, Relabeling, TetAngles, TetraClass, TetraKind};

/// Canonical angles this close to zero are stored as exact null pieces.
pub const NULL_PIECE_TOL: f64 = 1e-12;
/// Default pass threshold of [`verify_scissors`].
pub const SCISSORS_TOL: f64 = 1e-9;
/// Angle tolerance for identifying orbit members.
pub const ORBIT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReggeTransform {
    A,
    B,
    C,
}

impl ReggeTransform {
    pub const ALL: [ReggeTransform; 3] = [ReggeTransform::A, ReggeTransform::B, ReggeTransform::C];

    /// The half-sum that the four moved angles are reflected through.
    pub fn s_value(self, t: &TetAngles) -> f64 {
        match self {
            ReggeTransform::A => (t.b + t.c + t.b_prime + t.c_prime) / 2.0,
            ReggeTransform::B => (t.a + t.c + t.a_prime + t.c_prime) / 2.0,
            ReggeTransform::C => (t.a + t.b + t.a_prime + t.b_prime) / 2.0,
        }
    }

    /// Relabeling that conjugates this transform into R_b.
    pub fn conjugator(self) -> Relabeling {
        match self {
            ReggeTransform::A => Relabeling::SWAP_AB,
            ReggeTransform::B => Relabeling::IDENTITY,
            ReggeTransform::C => Relabeling::SWAP_BC,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ReggeTransform::A => "a",
            ReggeTransform::B => "b",
            ReggeTransform::C => "c",
        }
    }
}

impl std::fmt::Display for ReggeTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ReggeTransform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(ReggeTransform::A),
            "b" | "B" => Ok(ReggeTransform::B),
            "c" | "C" => Ok(ReggeTransform::C),
            other => Err(Error::Domain(format!("unknown Regge transform {other:?}"))),
        }
    }
}

/// R_x keeps the pair (X, X′) and sends each other angle Y to s_x − Y.
pub fn regge(t: &TetAngles, which: ReggeTransform) -> TetAngles {
    let s = which.s_value(t);
    let mut out = *t;
    match which {
        ReggeTransform::A => {
            out.b = s - t.b;
            out.c = s - t.c;
            out.b_prime = s - t.b_prime;
            out.c_prime = s - t.c_prime;
        }
        ReggeTransform::B => {
            out.a = s - t.a;
            out.c = s - t.c;
            out.a_prime = s - t.a_prime;
            out.c_prime = s - t.c_prime;
        }
        ReggeTransform::C => {
            out.a = s - t.a;
            out.b = s - t.b;
            out.a_prime = s - t.a_prime;
            out.b_prime = s - t.b_prime;
        }
    }
    out
}

/// The diagonal of the octahedron used to triangulate it, named by the pair
/// of opposite edges of T it runs between.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Firepole {
    #[serde(rename = "AA'")]
    AA,
    #[serde(rename = "BB'")]
    BB,
    #[serde(rename = "CC'")]
    CC,
}

impl Firepole {
    /// Relabeling that moves this pair into the A role.
    pub fn relabeling(self) -> Relabeling {
        match self {
            Firepole::AA => Relabeling::IDENTITY,
            Firepole::BB => Relabeling::SWAP_AB,
            Firepole::CC => Relabeling::new([0, 3, 2, 1]).expect("valid permutation"),
        }
    }
}

/// Reduces an Л-argument into (−π/2, π/2], snapping near-zero values to 0.
pub fn canonical_angle(theta: f64) -> f64 {
    let r = reduce_mod_pi(theta);
    if r.abs() < NULL_PIECE_TOL {
        0.0
    } else {
        r
    }
}

/// Distance between two angles as points of R/πZ.
pub fn angle_distance_mod_pi(x: f64, y: f64) -> f64 {
    reduce_mod_pi(x - y).abs()
}

/// One signed piece L(θ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LPiece {
    pub slot: Slot,
    pub side: Octahedron,
    /// The argument with the sign of its term folded in: the piece is Л(raw_angle).
    pub raw_angle: f64,
    pub canonical_angle: f64,
    pub signed_volume: f64,
}

impl LPiece {
    fn new(slot: Slot, side: Octahedron, raw_angle: f64) -> Self {
        let canonical_angle = canonical_angle(raw_angle);
        LPiece {
            slot,
            side,
            raw_angle,
            canonical_angle,
            signed_volume: lob(canonical_angle),
        }
    }

    pub fn is_null(&self) -> bool {
        self.canonical_angle == 0.0
    }
}

/// Sixteen pieces whose signed volumes add up to 2V(source): the O pieces
/// first, then the O′ pieces, each in [`Slot::ALL`] order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub pieces: [LPiece; 16],
    pub source: TetAngles,
    pub firepole: Firepole,
    /// Relabeling applied to `source` before the octahedra were built.
    pub relabeling: Relabeling,
    /// Set by [`permute_for_regge_b`]: the pieces now assemble 2R_b(source),
    /// up to the recorded mirror image.
    pub permuted: bool,
    pub mirrored: bool,
    pub class: TetraKind,
    /// max | |w| − 1 | of the holonomy roots.
    pub projection_distance: f64,
}

impl Decomposition {
    pub fn total_volume(&self) -> f64 {
        self.pieces.iter().map(|p| p.signed_volume).sum()
    }

    pub fn canonical_angles(&self) -> [f64; 16] {
        self.pieces.map(|p| p.canonical_angle)
    }

    pub fn sorted_canonical_angles(&self) -> Vec<f64> {
        let mut v = self.canonical_angles().to_vec();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn piece(&self, side: Octahedron, slot: Slot) -> &LPiece {
        let offset = match side {
            Octahedron::O => 0,
            Octahedron::Dual => 8,
        };
        &self.pieces[offset + slot.index()]
    }

    /// Number of pieces that vanish (only happens at degenerate inputs).
    pub fn null_pieces(&self) -> usize {
        self.pieces.iter().filter(|p| p.is_null()).count()
    }
}

/// Decomposes 2T along the default firepole AA′.
pub fn decompose(t: &TetAngles) -> Result<Decomposition> {
    decompose_along(t, Firepole::AA)
}

pub fn decompose_along(t: &TetAngles, firepole: Firepole) -> Result<Decomposition> {
    let relabeling = firepole.relabeling();
    let mut d = decompose_relabeled(t, &relabeling)?;
    d.firepole = firepole;
    Ok(d)
}

/// Decomposes `relabel(t, sigma)` and records `t` as the source.
pub fn decompose_relabeled(t: &TetAngles, sigma: &Relabeling) -> Result<Decomposition> {
    let u = relabel(t, sigma);
    let roots = solve_holonomy(&u)?;
    require_finite_or_ideal(&roots.class)?;
    Ok(decomposition_from(t, *sigma, &roots))
}

fn require_finite_or_ideal(class: &TetraClass) -> Result<()> {
    match class.kind {
        TetraKind::Finite | TetraKind::Ideal => Ok(()),
        _ => Err(Error::WrongClass {
            expected: "finite or ideal",
            found: Box::new(class.clone()),
        }),
    }
}

fn decomposition_from(source: &TetAngles, relabeling: Relabeling, roots: &HolonomyRoots) -> Decomposition {
    let terms = clean_terms(roots);
    let pieces = terms.map(|(side, slot, arg, sign)| LPiece::new(slot, side, sign * arg));
    Decomposition {
        pieces,
        source: *source,
        firepole: Firepole::AA,
        relabeling,
        permuted: false,
        mirrored: false,
        class: roots.class.kind,
        projection_distance: roots.projection_distance,
    }
}

/// Exchanges the BA and DC tetrahedra on both octahedra.
///
/// The result carries the pieces of 2R_b(source) labeled like
/// `decompose(relabel(regge(source, b), MIRROR_B))`; the mirror image is
/// volume neutral and is only recorded in `mirrored`.
pub fn permute_for_regge_b(d: &Decomposition) -> Result<Decomposition> {
    if d.firepole != Firepole::AA {
        return Err(Error::Domain(format!(
            "the b-move needs the firepole AA', got {:?}",
            d.firepole
        )));
    }
    if d.permuted {
        return Err(Error::Domain("decomposition was already permuted".into()));
    }
    let mut out = d.clone();
    for offset in [0, 8] {
        let ba = offset + Slot::BA.index();
        let dc = offset + Slot::DC.index();
        let (x, y) = (d.pieces[ba], d.pieces[dc]);
        out.pieces[ba] = LPiece { slot: Slot::BA, ..y };
        out.pieces[dc] = LPiece { slot: Slot::DC, ..x };
    }
    out.permuted = true;
    out.mirrored = true;
    Ok(out)
}

/// One of the two congruent halves of a piece L(θ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPiece {
    pub slot: Slot,
    pub side: Octahedron,
    pub half: u8,
    pub canonical_angle: f64,
    pub signed_volume: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfDecomposition {
    pub pieces: Vec<HalfPiece>,
    pub source: TetAngles,
    pub permuted: bool,
}

impl HalfDecomposition {
    /// Sum over all 32 half-pieces, which is 2V(source) again.
    pub fn total_volume(&self) -> f64 {
        self.pieces.iter().map(|p| p.signed_volume).sum()
    }

    /// Sum over the sixteen halves labeled `half`: one copy of T, volume V(source).
    pub fn copy_volume(&self, half: u8) -> f64 {
        self.pieces
            .iter()
            .filter(|p| p.half == half)
            .map(|p| p.signed_volume)
            .sum()
    }

    pub fn sorted_canonical_angles(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.pieces.iter().map(|p| p.canonical_angle).collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

/// Splits every piece into its two mirror-image halves. The halves labeled 0
/// and those labeled 1 form two congruent sets of sixteen, each adding up to
/// V(source).
pub fn halve(d: &Decomposition) -> HalfDecomposition {
    let mut pieces = Vec::with_capacity(32);
    for p in &d.pieces {
        for half in 0..2 {
            pieces.push(HalfPiece {
                slot: p.slot,
                side: p.side,
                half,
                canonical_angle: p.canonical_angle,
                signed_volume: p.signed_volume / 2.0,
            });
        }
    }
    HalfDecomposition {
        pieces,
        source: d.source,
        permuted: d.permuted,
    }
}

/// Largest gap after pairing two equally long angle lists in sorted order.
pub fn sorted_matching_gap(x: &[f64], y: &[f64]) -> f64 {
    if x.len() != y.len() {
        return f64::INFINITY;
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    xs.iter()
        .zip(&ys)
        .fold(0.0, |m: f64, (a, b)| m.max(angle_distance_mod_pi(*a, *b)))
}

/// Where one piece of 2T went in 2R(T).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlotMove {
    pub from_side: Octahedron,
    pub from: Slot,
    pub to_side: Octahedron,
    pub to: Slot,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScissorsReport {
    pub which: ReggeTransform,
    pub source: TetAngles,
    pub image: TetAngles,
    pub source_class: TetraKind,
    pub image_class: TetraKind,
    /// Relabeling conjugating R_which into R_b.
    pub conjugator: Relabeling,
    /// |R_b(σT) − σR(T)|, zero when the conjugation identity holds.
    pub conjugation_gap: f64,
    pub volume_source: Option<f64>,
    pub volume_image: Option<f64>,
    pub volume_gap: f64,
    /// Sorted pairing distance between the canonical angles of the two
    /// decompositions.
    pub multiset_gap: f64,
    /// The same distance when R(T) keeps its own labeling instead of the
    /// mirrored one. Diagnostic only; it is not expected to vanish.
    pub unaligned_multiset_gap: f64,
    /// Slot-by-slot distance between the permuted decomposition of T and the
    /// decomposition of the mirrored image.
    pub slot_gap: f64,
    /// The BA↔DC exchange reproduces the image slot by slot.
    pub matches_ba_dc_swap: bool,
    /// Greedy matching of the pieces of 2T onto those of 2R(T).
    pub slot_permutation: Vec<SlotMove>,
    pub tolerance: f64,
    pub pass: bool,
    pub failure: Option<String>,
}

/// Certifies 2T ~ 2R(T) for one of the three Regge symmetries.
///
/// R_a and R_c go through relabeling conjugation around the b-move. An image
/// that is not a finite tetrahedron produces a failing report, not an error.
pub fn verify_scissors(t: &TetAngles, which: ReggeTransform) -> Result<ScissorsReport> {
    let source_class = classify(t);
    if source_class.kind != TetraKind::Finite {
        return Err(Error::WrongClass {
            expected: "finite",
            found: Box::new(source_class),
        });
    }
    let image = regge(t, which);
    let image_class = classify(&image);
    let sigma = which.conjugator();
    let conjugated = regge(&relabel(t, &sigma), ReggeTransform::B);
    let conjugation_gap = conjugated.max_abs_diff(&relabel(&image, &sigma));

    let mut report = ScissorsReport {
        which,
        source: *t,
        image,
        source_class: source_class.kind,
        image_class: image_class.kind,
        conjugator: sigma,
        conjugation_gap,
        volume_source: None,
        volume_image: None,
        volume_gap: f64::INFINITY,
        multiset_gap: f64::INFINITY,
        unaligned_multiset_gap: f64::INFINITY,
        slot_gap: f64::INFINITY,
        matches_ba_dc_swap: false,
        slot_permutation: Vec::new(),
        tolerance: SCISSORS_TOL,
        pass: false,
        failure: None,
    };
    if image_class.kind != TetraKind::Finite {
        report.failure = Some(format!("R_{which}(T) is {}, not finite", image_class.kind));
        return Ok(report);
    }

    let v_source = volume(t)?;
    let v_image = volume(&image)?;
    report.volume_source = Some(v_source);
    report.volume_image = Some(v_image);
    report.volume_gap = (v_source - v_image).abs();

    let d = decompose_relabeled(t, &sigma)?;
    let moved = permute_for_regge_b(&d)?;
    let d_image = decompose_relabeled(&image, &sigma.then(&Relabeling::MIRROR_B))?;

    report.multiset_gap = sorted_matching_gap(&d.canonical_angles(), &d_image.canonical_angles());
    let d_unaligned = decompose_relabeled(&image, &sigma)?;
    report.unaligned_multiset_gap =
        sorted_matching_gap(&d.canonical_angles(), &d_unaligned.canonical_angles());
    report.slot_gap = moved
        .pieces
        .iter()
        .zip(&d_image.pieces)
        .fold(0.0, |m: f64, (p, q)| m.max(angle_distance_mod_pi(p.canonical_angle, q.canonical_angle)));
    report.matches_ba_dc_swap = report.slot_gap < SCISSORS_TOL;
    report.slot_permutation = match_pieces(&d, &d_image);

    report.pass = report.volume_gap < SCISSORS_TOL
        && report.multiset_gap < SCISSORS_TOL
        && report.matches_ba_dc_swap
        && conjugation_gap < 1e-12;
    if !report.pass {
        report.failure = Some("tolerance exceeded".into());
    }
    Ok(report)
}

/// Assigns each piece of `from` to the unused piece of `to` with the closest
/// canonical angle, preferring the BA↔DC target on ties.
fn match_pieces(from: &Decomposition, to: &Decomposition) -> Vec<SlotMove> {
    let swapped = |s: Slot| match s {
        Slot::BA => Slot::DC,
        Slot::DC => Slot::BA,
        other => other,
    };
    let mut used = [false; 16];
    let mut out = Vec::with_capacity(16);
    for p in &from.pieces {
        let preferred = to
            .pieces
            .iter()
            .position(|q| q.side == p.side && q.slot == swapped(p.slot))
            .expect("every slot is present");
        let mut best = None;
        let mut best_gap = f64::INFINITY;
        let order = std::iter::once(preferred).chain(0..16);
        for j in order {
            if used[j] {
                continue;
            }
            let gap = angle_distance_mod_pi(p.canonical_angle, to.pieces[j].canonical_angle);
            if gap < best_gap - NULL_PIECE_TOL {
                best_gap = gap;
                best = Some(j);
            }
        }
        let j = best.expect("sixteen targets for sixteen pieces");
        used[j] = true;
        out.push(SlotMove {
            from_side: p.side,
            from: p.slot,
            to_side: to.pieces[j].side,
            to: to.pieces[j].slot,
            gap: best_gap,
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitMember {
    pub angles: TetAngles,
    /// Regge moves applied to the seed, e.g. "ba".
    pub word: String,
    pub class: TetraKind,
    pub volume: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub members: Vec<OrbitMember>,
    pub truncated: bool,
}

impl Orbit {
    /// Largest volume difference among the finite members.
    pub fn volume_spread(&self) -> f64 {
        let vols: Vec<f64> = self.members.iter().filter_map(|m| m.volume).collect();
        if vols.is_empty() {
            return 0.0;
        }
        let max = vols.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = vols.iter().cloned().fold(f64::INFINITY, f64::min);
        max - min
    }
}

fn same_up_to_relabeling(x: &TetAngles, y: &TetAngles) -> bool {
    Relabeling::all()
        .iter()
        .any(|r| relabel(x, r).max_abs_diff(y) <= ORBIT_TOL)
}

/// Breadth-first closure of {t} under R_a, R_b, R_c, identifying tetrahedra
/// that differ by a relabeling.
pub fn regge_orbit(t: &TetAngles, max_size: usize) -> Result<Orbit> {
    if max_size == 0 {
        return Err(Error::Domain("max_size must be at least 1".into()));
    }
    let member = |angles: TetAngles, word: String| {
        let class = classify(&angles).kind;
        let volume = if class == TetraKind::Finite || class == TetraKind::Ideal {
            volume(&angles).ok()
        } else {
            None
        };
        OrbitMember {
            angles,
            word,
            class,
            volume,
        }
    };
    let mut members = vec![member(*t, String::new())];
    let mut truncated = false;
    let mut next = 0;
    'search: while next < members.len() {
        let current = members[next].clone();
        next += 1;
        for which in ReggeTransform::ALL {
            let image = regge(&current.angles, which);
            if members.iter().any(|m| same_up_to_relabeling(&m.angles, &image)) {
                continue;
            }
            if members.len() == max_size {
                truncated = true;
                break 'search;
            }
            members.push(member(image, format!("{}{}", which.name(), current.word)));
        }
    }
    Ok(Orbit { members, truncated })
}

/// Л(θ) realized geometrically: half of the isosceles ideal tetrahedron with
/// apex 2θ, i.e. ideal_volume(2θ, π/2 − θ, π/2 − θ) / 2.
pub fn half_isosceles_volume(theta: f64) -> Result<f64> {
    use crate::tetra::{ideal_volume, IdealTetAngles};
    Ok(ideal_volume(IdealTetAngles::new(2.0 * theta, PI / 2.0 - theta, PI / 2.0 - theta))? / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leibon::volume;

    const GENERIC: TetAngles = TetAngles::new(1.15, 1.2, 1.1, 1.18, 1.12, 1.16);

    #[test]
    fn regge_is_involutive_and_fixes_symmetric_input() {
        for which in ReggeTransform::ALL {
            let twice = regge(&regge(&GENERIC, which), which);
            assert!(twice.max_abs_diff(&GENERIC) < 1e-15);
        }
        let fixed = TetAngles::new(1.0, 1.2, 1.2, 0.9, 1.2, 1.2);
        assert_eq!(regge(&fixed, ReggeTransform::A), fixed);
    }

    #[test]
    fn conjugation_identities() {
        for which in ReggeTransform::ALL {
            let sigma = which.conjugator();
            let lhs = relabel(&regge(&relabel(&GENERIC, &sigma), ReggeTransform::B), &sigma);
            assert!(lhs.max_abs_diff(&regge(&GENERIC, which)) < 1e-15, "{which}");
        }
    }

    #[test]
    fn decomposition_sums_to_twice_volume() {
        let d = decompose(&GENERIC).unwrap();
        assert_eq!(d.pieces.len(), 16);
        let v = volume(&GENERIC).unwrap();
        assert!((d.total_volume() - 2.0 * v).abs() < 1e-12);
        let h = halve(&d);
        assert!((h.copy_volume(0) - v).abs() < 1e-12);
        assert!((h.copy_volume(1) - v).abs() < 1e-12);
        assert!((h.total_volume() - 2.0 * v).abs() < 1e-12);
        assert_eq!(halve(&d).pieces.len(), 32);
        for p in &d.pieces {
            assert!(p.canonical_angle > -PI / 2.0 && p.canonical_angle <= PI / 2.0);
            assert!((p.signed_volume - lob(p.raw_angle)).abs() < 1e-14);
        }
    }

    #[test]
    fn permutation_preserves_multiset_and_volume() {
        let d = decompose(&GENERIC).unwrap();
        let p = permute_for_regge_b(&d).unwrap();
        assert_eq!(d.sorted_canonical_angles(), p.sorted_canonical_angles());
        assert_eq!(d.total_volume(), {
            let mut s = 0.0;
            for q in &d.pieces {
                s += q.signed_volume;
            }
            s
        });
        assert!((p.total_volume() - d.total_volume()).abs() < 1e-15);
        assert!(p.mirrored);
        assert_eq!(halve(&p).sorted_canonical_angles(), halve(&d).sorted_canonical_angles());
        assert!(permute_for_regge_b(&p).is_err());
        let other = decompose_along(&GENERIC, Firepole::BB).unwrap();
        assert!(matches!(permute_for_regge_b(&other), Err(Error::Domain(_))));
    }

    #[test]
    fn central_scissors_check() {
        for which in ReggeTransform::ALL {
            let r = verify_scissors(&GENERIC, which).unwrap();
            assert!(r.pass, "{which}: {r:#?}");
            assert!(r.slot_gap < 1e-12);
        }
    }

    #[test]
    fn fixed_point_has_zero_distances() {
        let fixed = TetAngles::new(1.0, 1.2, 1.2, 0.9, 1.2, 1.2);
        assert_eq!(classify(&fixed).kind, TetraKind::Finite);
        let r = verify_scissors(&fixed, ReggeTransform::A).unwrap();
        assert!(r.pass);
        assert_eq!(r.image, fixed);
        assert_eq!(r.volume_gap, 0.0);
        assert_eq!(r.multiset_gap, 0.0);
    }

    #[test]
    fn orbit_shares_volume() {
        let orbit = regge_orbit(&GENERIC, 64).unwrap();
        assert!(!orbit.truncated);
        assert!(orbit.members.len() > 1);
        assert!(orbit.volume_spread() < 1e-9);
        let fixed = TetAngles::equiangular(1.2);
        assert_eq!(regge_orbit(&fixed, 64).unwrap().members.len(), 1);
        let small = regge_orbit(&GENERIC, 1).unwrap();
        assert!(small.truncated && small.members.len() == 1);
        assert!(regge_orbit(&GENERIC, 0).is_err());
    }

    #[test]
    fn half_isosceles_is_lobachevsky() {
        for k in 1..40 {
            let theta = k as f64 * (PI / 2.0) / 40.0;
            assert!((half_isosceles_volume(theta).unwrap() - lob(theta)).abs() < 1e-12);
        }
    }
}

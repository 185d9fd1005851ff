//! Seeded random finite tetrahedra by rejection sampling.
//!
//! Six angles are drawn uniformly from a box around an equiangular point and
//! kept when [`classify`] says the tetrahedron is finite. The ChaCha stream
//! makes a seed reproduce the same tetrahedra on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tetra::{classify, TetAngles, TetraKind};

/// Draws allowed per accepted tetrahedron before the sampler gives up.
pub const MAX_DRAWS_PER_SAMPLE: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub center: f64,
    pub half_width: f64,
}

impl Default for SampleBox {
    /// Regular finite tetrahedra have angles in (π/3, arccos(1/3)); the box
    /// straddles that window.
    fn default() -> Self {
        SampleBox {
            center: 1.15,
            half_width: 0.2,
        }
    }
}

impl SampleBox {
    pub fn validate(&self) -> Result<()> {
        let lo = self.center - self.half_width;
        let hi = self.center + self.half_width;
        if self.half_width.is_nan() || self.half_width <= 0.0 || lo <= 0.0 || hi >= std::f64::consts::PI {
            return Err(Error::Domain(format!(
                "sampling box [{lo}, {hi}] must be a nonempty subset of (0, π)"
            )));
        }
        Ok(())
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
    bounds: SampleBox,
    draws: usize,
    accepted: usize,
}

impl Sampler {
    pub fn new(seed: u64, bounds: SampleBox) -> Result<Self> {
        bounds.validate()?;
        Ok(Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bounds,
            draws: 0,
            accepted: 0,
        })
    }

    fn draw(&mut self) -> TetAngles {
        let lo = self.bounds.center - self.bounds.half_width;
        let hi = self.bounds.center + self.bounds.half_width;
        let mut v = [0.0; 6];
        for x in v.iter_mut() {
            *x = self.rng.gen_range(lo..hi);
        }
        self.draws += 1;
        TetAngles::from_array(v)
    }

    /// Next finite tetrahedron satisfying `keep`.
    pub fn next_where(&mut self, keep: impl Fn(&TetAngles) -> bool) -> Result<TetAngles> {
        for _ in 0..MAX_DRAWS_PER_SAMPLE {
            let t = self.draw();
            if classify(&t).kind == TetraKind::Finite && keep(&t) {
                self.accepted += 1;
                return Ok(t);
            }
        }
        Err(Error::Numerical(format!(
            "no acceptable tetrahedron in {MAX_DRAWS_PER_SAMPLE} draws"
        )))
    }

    pub fn next_finite(&mut self) -> Result<TetAngles> {
        self.next_where(|_| true)
    }

    pub fn draws(&self) -> usize {
        self.draws
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.draws == 0 {
            0.0
        } else {
            self.accepted as f64 / self.draws as f64
        }
    }
}

/// A batch of samples with its rejection statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub seed: u64,
    pub bounds: SampleBox,
    pub tetrahedra: Vec<TetAngles>,
    pub draws: usize,
    pub acceptance_rate: f64,
}

pub fn sample_finite(seed: u64, count: usize, bounds: SampleBox) -> Result<SampleSet> {
    sample_finite_where(seed, count, bounds, |_| true)
}

pub fn sample_finite_where(
    seed: u64,
    count: usize,
    bounds: SampleBox,
    keep: impl Fn(&TetAngles) -> bool,
) -> Result<SampleSet> {
    let mut sampler = Sampler::new(seed, bounds)?;
    let mut tetrahedra = Vec::with_capacity(count);
    for _ in 0..count {
        tetrahedra.push(sampler.next_where(&keep)?);
    }
    Ok(SampleSet {
        seed,
        bounds,
        tetrahedra,
        draws: sampler.draws(),
        acceptance_rate: sampler.acceptance_rate(),
    })
}

/// Angle triples (A, B, C) with every angle positive and A + B + C < π,
/// uniform on that simplex.
pub fn sample_prism_angles(seed: u64, count: usize) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: [f64; 3] = [0; 3].map(|_| rng.gen_range(0.0..std::f64::consts::PI));
        if v.iter().sum::<f64>() < std::f64::consts::PI {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_finite() {
        let a = sample_finite(7, 20, SampleBox::default()).unwrap();
        let b = sample_finite(7, 20, SampleBox::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.tetrahedra.iter().all(|t| classify(t).is_finite()));
        assert!(a.acceptance_rate > 0.0 && a.acceptance_rate <= 1.0);
        let c = sample_finite(8, 20, SampleBox::default()).unwrap();
        assert_ne!(a.tetrahedra, c.tetrahedra);
    }

    #[test]
    fn prism_angles_in_simplex() {
        let v = sample_prism_angles(3, 50);
        assert_eq!(v.len(), 50);
        assert!(v.iter().all(|x| x.iter().all(|&a| a > 0.0) && x.iter().sum::<f64>() < std::f64::consts::PI));
        assert_eq!(v, sample_prism_angles(3, 50));
    }

    #[test]
    fn rejects_bad_box() {
        let bad = SampleBox {
            center: 0.1,
            half_width: 0.2,
        };
        assert!(Sampler::new(1, bad).is_err());
    }
}

//! Seeded generators for the randomized checks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{int, rat, FeasibleSet, Point2, PointSet, Rational, ScalarSet};

/// `k/d` with `d <= 4` and `|k/d| <= 10`.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.gen_range(1..=4i64);
    rat(rng.gen_range(-10 * d..=10 * d), d)
}

/// Up to 5 sets of up to 8 points in `[-10, 10]`.
pub fn random_scalar_sets(rng: &mut ChaCha8Rng) -> Vec<ScalarSet> {
    let k = rng.gen_range(1..=5);
    (0..k)
        .map(|_| {
            let m = rng.gen_range(1..=8);
            ScalarSet::new((0..m).map(|_| small_rational(rng)).collect()).expect("non-empty")
        })
        .collect()
}

/// A random planar collection together with the similarity that produced
/// it from its lattice base.
#[derive(Clone, Debug)]
pub struct PlanarSample {
    /// Subsets of the `{-1, 0, 1}²` lattice.
    pub base: Vec<PointSet>,
    pub scale: Rational,
    /// Per-set translation, applied after scaling.
    pub shifts: Vec<Point2>,
}

impl PlanarSample {
    pub fn sets(&self) -> Vec<FeasibleSet> {
        self.base
            .iter()
            .zip(&self.shifts)
            .map(|(s, t)| {
                let pts = s
                    .points()
                    .iter()
                    .map(|p| &p.scale(&self.scale) + t)
                    .collect();
                PointSet::new(pts).expect("non-empty").into()
            })
            .collect()
    }

    pub fn base_sets(&self) -> Vec<FeasibleSet> {
        self.base.iter().cloned().map(Into::into).collect()
    }
}

/// Up to 3 sets of up to 6 lattice points, each set shifted by an integer
/// vector and the whole collection scaled by 1/2, 1 or 2.
pub fn random_planar(rng: &mut ChaCha8Rng) -> PlanarSample {
    let mut lattice: Vec<Point2> = (-1..=1)
        .flat_map(|x| (-1..=1).map(move |y| Point2::int(x, y)))
        .collect();
    let k = rng.gen_range(1..=3);
    let base: Vec<PointSet> = (0..k)
        .map(|_| {
            lattice.shuffle(rng);
            let m = rng.gen_range(1..=6);
            PointSet::new(lattice[..m].to_vec()).expect("non-empty")
        })
        .collect();
    let scale = [rat(1, 2), int(1), int(2)][rng.gen_range(0..3)].clone();
    let shifts = (0..k)
        .map(|_| Point2::int(rng.gen_range(-3..=3), rng.gen_range(-3..=3)))
        .collect();
    PlanarSample {
        base,
        scale,
        shifts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generators_respect_their_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let sets = random_scalar_sets(&mut rng);
            assert!((1..=5).contains(&sets.len()));
            for s in &sets {
                assert!(s.len() <= 8);
                assert!(s.values().iter().all(|v| *v >= int(-10) && *v <= int(10)));
            }
            let p = random_planar(&mut rng);
            assert!((1..=3).contains(&p.base.len()));
            assert!(p.base.iter().all(|s| s.len() <= 6));
            assert_eq!(p.sets().len(), p.base.len());
        }
    }
}

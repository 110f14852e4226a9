use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{int, ConvexPolygon, Point2, Rational};

/// Source of requests `x_n`; implementations must stay inside `advert`.
pub trait RequestPolicy {
    fn request(&mut self, n: u64, advert: &ConvexPolygon, e: &Point2) -> Point2;
}

impl<F> RequestPolicy for F
where
    F: FnMut(u64, &ConvexPolygon, &Point2) -> Point2,
{
    fn request(&mut self, n: u64, advert: &ConvexPolygon, e: &Point2) -> Point2 {
        self(n, advert, e)
    }
}

/// Always asks for the advertised point closest to a fixed target.
#[derive(Clone, Debug)]
pub struct ConstantTarget(pub Point2);

impl RequestPolicy for ConstantTarget {
    fn request(&mut self, _n: u64, advert: &ConvexPolygon, _e: &Point2) -> Point2 {
        advert.project(&self.0)
    }
}

/// Random convex combinations of the advertised vertices with weights on a
/// `1/resolution` grid, biased towards the vertices themselves.
#[derive(Clone, Debug)]
pub struct UniformRandom {
    rng: ChaCha8Rng,
    resolution: u32,
}

impl UniformRandom {
    pub fn new(seed: u64) -> Self {
        Self::with_resolution(seed, 64)
    }

    pub fn with_resolution(seed: u64, resolution: u32) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            resolution: resolution.max(1),
        }
    }

    pub fn sample(&mut self, advert: &ConvexPolygon) -> Point2 {
        let vs = advert.vertices();
        if vs.len() <= 1 || self.rng.gen_ratio(1, 4) {
            return vs[self.rng.gen_range(0..vs.len().max(1))].clone();
        }
        // Weights are gaps between sorted cut points, so they always sum to
        // `resolution` and denominators stay bounded along a trace.
        let mut cuts: Vec<u32> = (1..vs.len())
            .map(|_| self.rng.gen_range(0..=self.resolution))
            .collect();
        cuts.push(0);
        cuts.push(self.resolution);
        cuts.sort_unstable();
        let total = int(self.resolution as i64);
        let mut p = Point2::origin();
        for (v, w) in vs.iter().zip(cuts.windows(2).map(|c| c[1] - c[0])) {
            if w > 0 {
                p = &p + &v.scale(&(int(w as i64) / &total));
            }
        }
        p
    }

    /// Uniform value in `[lo, hi]` on a grid of `resolution` steps.
    pub fn scalar(&mut self, lo: &Rational, hi: &Rational) -> Rational {
        let k = self.rng.gen_range(0..=self.resolution);
        lo + (hi - lo) * int(k as i64) / int(self.resolution as i64)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

impl RequestPolicy for UniformRandom {
    fn request(&mut self, _n: u64, advert: &ConvexPolygon, _e: &Point2) -> Point2 {
        self.sample(advert)
    }
}

/// The advertised vertex farthest from `-e`, i.e. maximizing `‖e + x‖`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Adversarial;

impl RequestPolicy for Adversarial {
    fn request(&mut self, _n: u64, advert: &ConvexPolygon, e: &Point2) -> Point2 {
        advert
            .farthest_vertex(&-e)
            .cloned()
            .unwrap_or_else(Point2::origin)
    }
}

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{LemmaParams, WindowSet};
use crate::padic::{units_mod, PositiveRational, Prime, QpCell};

/// The generator behind every seeded run; same seed, same stream on every
/// platform.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone)]
pub struct LemmaInstance {
    pub params: LemmaParams,
    pub set: WindowSet,
}

/// Draws random finite sets together with lemma parameters that satisfy the
/// precondition `m > t/(2c - 1)`.
#[derive(Debug, Clone)]
pub struct LemmaSampler {
    pub max_element: u64,
    pub primes: Vec<u64>,
    pub precisions: Vec<u32>,
    pub ts: Vec<u32>,
}

impl Default for LemmaSampler {
    fn default() -> Self {
        LemmaSampler {
            max_element: 10_000,
            primes: vec![2, 3, 5],
            precisions: vec![1, 2],
            ts: vec![1, 2],
        }
    }
}

impl LemmaSampler {
    pub fn sample_params<R: Rng>(&self, rng: &mut R) -> LemmaParams {
        let p = self.primes[rng.gen_range(0..self.primes.len())];
        let w = self.precisions[rng.gen_range(0..self.precisions.len())];
        let t = self.ts[rng.gen_range(0..self.ts.len())];
        // c = cn/1000 ∈ (1/2, 1]
        let cn: u64 = rng.gen_range(501..=1000);
        let c = PositiveRational::new(cn, 1000).expect("positive");
        let (cn, cd) = (c.numer(), c.denom());
        let m_min = t as u64 * cd / (2 * cn - cd) + 1;
        let m = (m_min + rng.gen_range(0..=2)) as u32;
        LemmaParams { p, w, t, c, m }
    }

    /// A Bernoulli subset of `[1, L]` for a random `L ≤ max_element`, with the
    /// inclusion probability drawn from a dense, sparse or uniform regime.
    pub fn sample_set<R: Rng>(&self, rng: &mut R) -> WindowSet {
        let upper = rng.gen_range(1..=self.max_element);
        let q: f64 = match rng.gen_range(0..3) {
            0 => rng.gen_range(0.5..=1.0),
            1 => rng.gen_range(0.0005..0.05),
            _ => rng.gen_range(0.0..=1.0),
        };
        let elements: Vec<u64> = (1..=upper).filter(|_| rng.gen_bool(q)).collect();
        WindowSet::from_elements(self.max_element, elements).expect("elements within bound")
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> LemmaInstance {
        let params = self.sample_params(rng);
        let set = self.sample_set(rng);
        LemmaInstance { params, set }
    }
}

/// A small random set inside `[1, max_element]` and a random cell with
/// `p ∈ {2, 3, 5}`, `w ∈ {1, 2}`, `s ∈ [-3, 3]`.
pub fn sample_ratio_instance<R: Rng>(rng: &mut R, max_element: u64) -> (WindowSet, QpCell) {
    let upper = rng.gen_range(1..=max_element);
    let size = rng.gen_range(0..=48);
    let elements: Vec<u64> = (0..size).map(|_| rng.gen_range(1..=upper)).collect();
    let set = WindowSet::from_elements(max_element, elements).expect("elements within bound");

    let p = [2u64, 3, 5][rng.gen_range(0..3)];
    let w = rng.gen_range(1..=2);
    let prime = Prime::new(p).expect("prime");
    let units: Vec<u64> = units_mod(prime, p.pow(w)).collect();
    let a = units[rng.gen_range(0..units.len())];
    let s = rng.gen_range(-3..=3);
    (set, QpCell::new(p, w, a, s).expect("valid cell"))
}

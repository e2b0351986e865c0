//! Product-replacement random walk on generating tuples, used for
//! near-uniform random group elements. 10 slots, 50 burn-in steps, seeded.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SLOTS: usize = 10;
const BURN_IN: usize = 50;

pub(crate) struct ProductReplacer {
    slots: Vec<Vec<u32>>,
    degree: usize,
    rng: ChaCha8Rng,
    scratch: Vec<u32>,
}

impl ProductReplacer {
    /// `gens` must be nonempty permutations of a common degree.
    pub fn new(gens: &[Vec<u32>], rng: &mut ChaCha8Rng) -> ProductReplacer {
        assert!(!gens.is_empty());
        let degree = gens[0].len();
        let slots: Vec<Vec<u32>> = (0..SLOTS).map(|i| gens[i % gens.len()].clone()).collect();
        let mut pr = ProductReplacer {
            slots,
            degree,
            rng: ChaCha8Rng::from_rng(rng).expect("chacha reseed"),
            scratch: vec![0u32; degree],
        };
        for _ in 0..BURN_IN {
            pr.step();
        }
        pr
    }

    /// One replacement step: slot_i := slot_i * slot_j^(±1) on a random side.
    fn step(&mut self) -> usize {
        let i = self.rng.gen_range(0..SLOTS);
        let mut j = self.rng.gen_range(0..SLOTS - 1);
        if j >= i {
            j += 1;
        }
        let invert_j = self.rng.gen::<bool>();
        let left = self.rng.gen::<bool>();
        let other: Vec<u32> = if invert_j {
            let mut inv = vec![0u32; self.degree];
            for (x, &y) in self.slots[j].iter().enumerate() {
                inv[y as usize] = x as u32;
            }
            inv
        } else {
            self.slots[j].clone()
        };
        {
            let (a, b) = if left {
                (&other, &self.slots[i])
            } else {
                (&self.slots[i], &other)
            };
            for (o, &x) in self.scratch.iter_mut().zip(b.iter()) {
                *o = a[x as usize];
            }
        }
        std::mem::swap(&mut self.slots[i], &mut self.scratch);
        i
    }

    pub fn next_element(&mut self) -> Vec<u32> {
        let i = self.step();
        self.slots[i].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;

    #[test]
    fn deterministic_for_fixed_seed() {
        let gens = vec![vec![1u32, 0, 2], vec![1u32, 2, 0]];
        let run = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pr = ProductReplacer::new(&gens, &mut rng);
            (0..20).map(|_| pr.next_element()).collect::<Vec<_>>()
        };
        assert_eq!(run(7), run(7));
        assert_ne!(run(7), run(8));
    }

    #[test]
    fn stays_inside_the_group() {
        // S3 on 3 points: all products remain permutations of {0,1,2}
        let gens = vec![vec![1u32, 0, 2], vec![1u32, 2, 0]];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut pr = ProductReplacer::new(&gens, &mut rng);
        for _ in 0..100 {
            let e = pr.next_element();
            let mut sorted = e.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, vec![0, 1, 2]);
        }
    }
}

//! Seeded random inputs for the property runs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fgroup::{share_root, Letter, Word};
use crate::graphcalc::GarlandGraph;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A cyclically reduced word of length `1..=max_len` in generators `1..=rank`.
    pub fn cyclic_word(&mut self, rank: u32, max_len: usize) -> Word {
        loop {
            let n = self.rng.gen_range(1..=max_len.max(1));
            let mut letters: Vec<Letter> = Vec::with_capacity(n);
            while letters.len() < n {
                let x = Letter::new(self.rng.gen_range(1..=rank), self.rng.gen_bool(0.5));
                if letters.last() == Some(&x.inverse()) {
                    continue;
                }
                letters.push(x);
            }
            if n > 1 && letters[0] == letters[n - 1].inverse() {
                continue;
            }
            return Word::normalize(letters);
        }
    }

    /// A reduced word of length `0..=max_len`.
    pub fn word(&mut self, rank: u32, max_len: usize) -> Word {
        let n = self.rng.gen_range(0..=max_len);
        let raw: Vec<Letter> = (0..n)
            .map(|_| Letter::new(self.rng.gen_range(1..=rank), self.rng.gen_bool(0.5)))
            .collect();
        Word::normalize(raw)
    }

    /// `count` cyclic words whose primitive roots are pairwise neither
    /// conjugate nor inverse-conjugate.
    pub fn admissible(&mut self, count: usize, rank: u32, max_len: usize) -> Vec<Word> {
        'retry: loop {
            let mut out: Vec<Word> = Vec::with_capacity(count);
            for _ in 0..count {
                let w = self.cyclic_word(rank, max_len);
                for u in &out {
                    if share_root(u, &w).expect("nontrivial") {
                        continue 'retry;
                    }
                }
                out.push(w);
            }
            return out;
        }
    }

    pub fn admissible_pair(&mut self, rank: u32, max_len: usize) -> (Word, Word) {
        let v = self.admissible(2, rank, max_len);
        (v[0].clone(), v[1].clone())
    }

    /// A valid graph with `1..=max_nu` circles and chords of arity at most 3.
    pub fn graph(&mut self, max_nu: usize) -> GarlandGraph {
        loop {
            let nu = self.rng.gen_range(1..=max_nu);
            let n_chords = self.rng.gen_range(0..=nu);
            let circles: Vec<usize> = (1..=nu).collect();
            let chords = (0..n_chords)
                .map(|_| {
                    let k = self.rng.gen_range(1..=nu.min(3));
                    let mut c: Vec<usize> =
                        circles.choose_multiple(&mut self.rng, k).copied().collect();
                    c.sort_unstable();
                    c
                })
                .collect();
            let g = GarlandGraph::with_chords(nu, chords);
            if g.validate().is_ok() {
                return g;
            }
        }
    }
}

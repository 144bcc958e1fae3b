//! Seeded random signatures and index pairs.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::forest::IndexPair;
use crate::polygon::{Sign, Signature};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_signature<R: Rng>(rng: &mut R, n: usize) -> Signature {
    let signs = (0..n)
        .map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus })
        .collect();
    Signature::new(signs).expect("n ≥ 1")
}

fn subset<R: Rng>(rng: &mut R, from: &[usize]) -> Vec<usize> {
    from.iter().copied().filter(|_| rng.gen_bool(0.5)).collect()
}

/// A uniformly random valid pair on `⟦n•] × [n∘⟧`, by rejection.
pub fn random_pair<R: Rng>(rng: &mut R, n: usize) -> IndexPair {
    let blacks: Vec<usize> = (0..=n).collect();
    let whites: Vec<usize> = (1..=n + 1).collect();
    loop {
        if let Ok(p) = IndexPair::new(subset(rng, &blacks), subset(rng, &whites)) {
            return p;
        }
    }
}

/// Random signature of length in `1..=max_n` with a random pair.
pub fn random_instance<R: Rng>(rng: &mut R, max_n: usize) -> (Signature, IndexPair) {
    let n = rng.gen_range(1..=max_n);
    let sig = random_signature(rng, n);
    let pair = random_pair(rng, n);
    (sig, pair)
}

/// A random signature with pairs `inner ⊆ outer`.
pub fn random_nested<R: Rng>(rng: &mut R, n: usize) -> (Signature, IndexPair, IndexPair) {
    let sig = random_signature(rng, n);
    let outer = random_pair(rng, n);
    loop {
        let black = subset(rng, outer.black());
        let white = subset(rng, outer.white());
        if let Ok(inner) = IndexPair::new(black, white) {
            return (sig, inner, outer);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_nested() {
        let a: Vec<_> = (0..5).map(|_| random_instance(&mut rng(3), 6)).collect();
        let b: Vec<_> = (0..5).map(|_| random_instance(&mut rng(3), 6)).collect();
        assert_eq!(a, b);
        let mut r = rng(9);
        for _ in 0..50 {
            let (sig, inner, outer) = random_nested(&mut r, 4);
            assert_eq!(sig.len(), 4);
            assert!(outer.contains(&inner));
        }
    }
}

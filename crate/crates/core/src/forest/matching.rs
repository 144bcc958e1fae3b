use std::collections::VecDeque;

use serde::Serialize;

use super::{IndexPair, Instance};
use crate::error::{Error, Result};
use crate::polygon::{Edge, Sign};

/// A perfect matching of `G^ε_{I•,J∘}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

/// Checks `|I•| = |J∘|` and `|I• ∩ {0..k}| ≥ |J∘ ∩ {1..k+1}|` for every `k`.
fn check_hall(pair: &IndexPair, n: usize) -> Result<()> {
    if pair.black().len() != pair.white().len() {
        return Err(Error::Domain(format!(
            "perfect matching needs |I•| = |J∘|, got {} and {}",
            pair.black().len(),
            pair.white().len()
        )));
    }
    for k in 0..=n {
        let blacks = pair.black().iter().filter(|&&i| i <= k).count();
        let whites = pair.white().iter().filter(|&&j| j <= k + 1).count();
        if blacks < whites {
            return Err(Error::NoMatching { k });
        }
    }
    Ok(())
}

impl Instance {
    /// The unique non-crossing perfect matching, built by the pile algorithm:
    /// vertices are read left to right (`k∘` before `k•`); a black vertex goes
    /// on top of the pile when `ε_k = +` and at the bottom otherwise, and a
    /// white vertex takes its partner from the same end.
    pub fn noncrossing_perfect_matching(&self) -> Result<Matching> {
        let n = self.n();
        let pair = self.pair();
        check_hall(pair, n)?;
        let sign = |k: usize| {
            if (1..=n).contains(&k) {
                self.signature().sign(k)
            } else {
                // 0• arrives on an empty pile and (n+1)∘ leaves a single element
                Sign::Plus
            }
        };
        let mut pile: VecDeque<usize> = VecDeque::new();
        let mut edges = Vec::with_capacity(pair.black().len());
        for k in 0..=n + 1 {
            if pair.white().contains(&k) {
                let partner = match sign(k) {
                    Sign::Plus => pile.pop_back(),
                    Sign::Minus => pile.pop_front(),
                }
                .ok_or(Error::NoMatching { k: k - 1 })?;
                edges.push(Edge::new(partner, k));
            }
            if pair.black().contains(&k) {
                match sign(k) {
                    Sign::Plus => pile.push_back(k),
                    Sign::Minus => pile.push_front(k),
                }
            }
        }
        edges.sort_unstable();
        Ok(Matching { edges })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::Signature;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn pile_examples() {
        let inst = Instance::new(&sig("-"), IndexPair::new(vec![0], vec![1]).unwrap()).unwrap();
        assert_eq!(
            inst.noncrossing_perfect_matching().unwrap().edges(),
            &[Edge::new(0, 1)]
        );
        let inst =
            Instance::new(&sig("-++"), IndexPair::new(vec![0, 1], vec![2, 3]).unwrap()).unwrap();
        assert_eq!(
            inst.noncrossing_perfect_matching().unwrap().edges(),
            &[Edge::new(0, 2), Edge::new(1, 3)]
        );
    }

    fn brute_force(inst: &Instance) -> Vec<Vec<Edge>> {
        fn go(inst: &Instance, whites: &[usize], used: &mut Vec<usize>, acc: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
            let Some((&w, rest)) = whites.split_first() else {
                let p = inst.polygon();
                if acc.iter().all(|&a| acc.iter().all(|&b| !p.edges_cross(a, b))) {
                    let mut m = acc.clone();
                    m.sort_unstable();
                    out.push(m);
                }
                return;
            };
            for &b in inst.pair().black() {
                if b < w && !used.contains(&b) {
                    used.push(b);
                    acc.push(Edge::new(b, w));
                    go(inst, rest, used, acc, out);
                    acc.pop();
                    used.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(inst, inst.pair().white(), &mut Vec::new(), &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn pile_agrees_with_brute_force() {
        for n in 1..=5 {
            for s in Signature::all(n) {
                for bmask in 1u32..1 << (n + 1) {
                    for wmask in 1u32..1 << (n + 1) {
                        let black: Vec<usize> = (0..=n).filter(|i| bmask >> i & 1 == 1).collect();
                        let white: Vec<usize> = (1..=n + 1).filter(|j| wmask >> (j - 1) & 1 == 1).collect();
                        if black.len() != white.len() {
                            continue;
                        }
                        let Ok(pair) = IndexPair::new(black, white) else { continue };
                        let inst = Instance::new(&s, pair).unwrap();
                        let oracle = brute_force(&inst);
                        match inst.noncrossing_perfect_matching() {
                            Ok(m) => assert_eq!(oracle, vec![m.edges().to_vec()], "{s}"),
                            Err(Error::NoMatching { .. }) => assert!(oracle.is_empty()),
                            Err(e) => panic!("{e}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn infeasible_inputs_are_reported() {
        let pair = IndexPair::new(vec![0, 2], vec![1, 2, 3]).unwrap();
        let unequal = Instance::new(&sig("---"), pair).unwrap();
        assert!(matches!(
            unequal.noncrossing_perfect_matching(),
            Err(Error::Domain(_))
        ));
        // 1∘ and 2∘ both need a black to their left, only 0• is there
        let pair = IndexPair::new(vec![0, 3, 4], vec![1, 2, 5]).unwrap();
        let inst = Instance::new(&sig("----"), pair).unwrap();
        assert_eq!(
            inst.noncrossing_perfect_matching(),
            Err(Error::NoMatching { k: 1 })
        );
    }
}

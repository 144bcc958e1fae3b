//! Increasing flip graphs and the finite posets they generate.
//!
//! Elements of a [`FinitePoset`] are `0..len`; up- and down-sets are stored as
//! bit sets so that joins, meets and intervals are a few word operations.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::forest::{Direction, Forest, IndexPair, Instance, Tree};
use crate::par;
use crate::polygon::{Edge, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    rank: Vec<usize>,
    hasse: Vec<(usize, usize)>,
}

impl FinitePoset {
    /// Reflexive-transitive closure of `arcs` on `0..len`.
    pub fn from_relations(len: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut succ = vec![Vec::new(); len];
        let mut indeg = vec![0usize; len];
        for &(a, b) in arcs {
            if a >= len || b >= len {
                return Err(Error::Domain(format!("arc ({a}, {b}) outside 0..{len}")));
            }
            succ[a].push(b);
            indeg[b] += 1;
        }
        let mut queue: VecDeque<usize> = (0..len).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(len);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if order.len() < len {
            return Err(Error::Structural("relation has a directed cycle".into()));
        }
        let mut up = vec![FixedBitSet::with_capacity(len); len];
        for &v in order.iter().rev() {
            let mut set = FixedBitSet::with_capacity(len);
            set.insert(v);
            for &w in &succ[v] {
                set.union_with(&up[w]);
            }
            up[v] = set;
        }
        let mut down = vec![FixedBitSet::with_capacity(len); len];
        for (a, set) in up.iter().enumerate() {
            for b in set.ones() {
                down[b].insert(a);
            }
        }
        let mut rank = vec![0; len];
        for (k, &v) in order.iter().enumerate() {
            rank[v] = k;
        }
        let mut hasse = Vec::new();
        for a in 0..len {
            for b in up[a].ones().filter(|&b| b != a) {
                if up[a].intersection(&down[b]).count() == 2 {
                    hasse.push((a, b));
                }
            }
        }
        Ok(FinitePoset {
            up,
            down,
            rank,
            hasse,
        })
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    /// Cover relations `(a, b)`, `a ⋖ b`, sorted.
    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.down[a].count_ones(..) == 1).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.up[a].count_ones(..) == 1).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        match self.minimal()[..] {
            [b] => Some(b),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maximal()[..] {
            [t] => Some(t),
            _ => None,
        }
    }

    pub fn dual(&self) -> FinitePoset {
        let mut hasse: Vec<_> = self.hasse.iter().map(|&(a, b)| (b, a)).collect();
        hasse.sort_unstable();
        let rank = self.rank.iter().map(|&r| self.len() - 1 - r).collect();
        FinitePoset {
            up: self.down.clone(),
            down: self.up.clone(),
            rank,
            hasse,
        }
    }

    /// Elements of `[a, b]`, in increasing label order.
    pub fn interval(&self, a: usize, b: usize) -> Vec<usize> {
        self.up[a].intersection(&self.down[b]).collect()
    }

    /// Subposet induced on `elements`, relabelled `0..elements.len()`.
    pub fn induced(&self, elements: &[usize]) -> FinitePoset {
        let mut arcs = Vec::new();
        for (x, &a) in elements.iter().enumerate() {
            for (y, &b) in elements.iter().enumerate() {
                if x != y && self.leq(a, b) {
                    arcs.push((x, y));
                }
            }
        }
        FinitePoset::from_relations(elements.len(), &arcs).expect("restriction of a poset")
    }

    fn profile(&self, a: usize) -> (usize, usize, usize, usize) {
        let lower = self.hasse.iter().filter(|&&(_, b)| b == a).count();
        let upper = self.hasse.iter().filter(|&&(x, _)| x == a).count();
        (self.down[a].count_ones(..), self.up[a].count_ones(..), lower, upper)
    }

    fn profiles(&self) -> Vec<(usize, usize, usize, usize)> {
        (0..self.len()).map(|a| self.profile(a)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Join,
    Meet,
}

/// A pair without a least upper (or greatest lower) bound, and its minimal
/// upper (maximal lower) bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeWitness {
    pub a: usize,
    pub b: usize,
    pub bound: Bound,
    pub extremal_bounds: Vec<usize>,
}

fn least_in(p: &FinitePoset, set: &FixedBitSet) -> Option<usize> {
    // a least element precedes every other member in any linear extension
    let first = set.ones().min_by_key(|&u| p.rank[u])?;
    set.is_subset(&p.up[first]).then_some(first)
}

fn minimal_in(p: &FinitePoset, set: &FixedBitSet) -> Vec<usize> {
    set.ones()
        .filter(|&u| p.down[u].intersection(set).count() == 1)
        .collect()
}

pub fn join(p: &FinitePoset, a: usize, b: usize) -> Option<usize> {
    let mut u = p.up[a].clone();
    u.intersect_with(&p.up[b]);
    least_in(p, &u)
}

pub fn meet(p: &FinitePoset, a: usize, b: usize) -> Option<usize> {
    join(&p.dual(), a, b)
}

/// Checks that every pair has a join and a meet.
pub fn check_lattice(p: &FinitePoset) -> std::result::Result<(), LatticeWitness> {
    let dual = p.dual();
    for (q, bound) in [(p, Bound::Join), (&dual, Bound::Meet)] {
        for a in 0..q.len() {
            for b in a + 1..q.len() {
                let mut u = q.up[a].clone();
                u.intersect_with(&q.up[b]);
                if least_in(q, &u).is_none() {
                    return Err(LatticeWitness {
                        a,
                        b,
                        bound,
                        extremal_bounds: minimal_in(q, &u),
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn is_lattice(p: &FinitePoset) -> bool {
    !p.is_empty() && check_lattice(p).is_ok()
}

/// An order isomorphism `a → b` as the image of each element of `a`.
pub fn isomorphism(a: &FinitePoset, b: &FinitePoset) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.hasse.len() != b.hasse.len() {
        return None;
    }
    let (pa, pb) = (a.profiles(), b.profiles());
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by_key(|&x| a.rank[x]);
    let mut image = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];

    fn extend(
        depth: usize,
        order: &[usize],
        a: &FinitePoset,
        b: &FinitePoset,
        pa: &[(usize, usize, usize, usize)],
        pb: &[(usize, usize, usize, usize)],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(depth) else {
            return true;
        };
        for y in 0..b.len() {
            if used[y] || pa[x] != pb[y] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&z| {
                let w = image[z];
                a.leq(z, x) == b.leq(w, y) && a.leq(x, z) == b.leq(y, w)
            });
            if !consistent {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if extend(depth + 1, order, a, b, pa, pb, image, used) {
                return true;
            }
            used[y] = false;
        }
        image[x] = usize::MAX;
        false
    }

    extend(0, &order, a, b, &pa, &pb, &mut image, &mut used).then_some(image)
}

/// The first interval `[lo, hi]` of `big` (in label order) isomorphic to `small`.
pub fn find_isomorphic_interval(small: &FinitePoset, big: &FinitePoset) -> Option<(usize, usize)> {
    small.bottom()?;
    small.top()?;
    let size = small.len();
    let mut target = small.profiles();
    target.sort_unstable();
    let heights: Vec<usize> = target.iter().map(|p| p.0).collect();
    for lo in 0..big.len() {
        if big.up[lo].count_ones(..) < size {
            continue;
        }
        for hi in big.up[lo].ones() {
            if big.down[hi].count_ones(..) < size {
                continue;
            }
            let members = big.interval(lo, hi);
            if members.len() != size {
                continue;
            }
            // cheap filter: down-set sizes within the interval
            let mut within: Vec<usize> = members
                .iter()
                .map(|&m| big.down[m].intersection(&big.up[lo]).count())
                .collect();
            within.sort_unstable();
            if within != heights {
                continue;
            }
            let sub = big.induced(&members);
            if isomorphism(small, &sub).is_some() {
                return Some((lo, hi));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipArc {
    pub from: usize,
    pub to: usize,
    pub leaving: Edge,
    pub entering: Edge,
}

/// Trees of an instance with an arc for every increasing flip.
#[derive(Clone, Debug)]
pub struct FlipDigraph {
    instance: Instance,
    masks: Vec<EdgeSet>,
    trees: Vec<Tree>,
    index: HashMap<EdgeSet, usize>,
    arcs: Vec<FlipArc>,
    poset: FinitePoset,
    source: usize,
    sink: usize,
}

impl FlipDigraph {
    pub fn new(instance: Instance) -> Result<Self> {
        let masks = instance.tree_masks();
        let index: HashMap<EdgeSet, usize> =
            masks.iter().enumerate().map(|(k, &m)| (m, k)).collect();
        let mut arcs = Vec::new();
        for (from, &t) in masks.iter().enumerate() {
            for k in instance.flippable_mask(t).iter() {
                let (t2, k2) = instance.flip_mask(t, k)?;
                let (leaving, entering) = (instance.edge(k), instance.edge(k2));
                if instance.polygon().compare_slopes(leaving, entering).is_lt() {
                    arcs.push(FlipArc {
                        from,
                        to: index[&t2],
                        leaving,
                        entering,
                    });
                }
            }
        }
        let pairs: Vec<(usize, usize)> = arcs.iter().map(|a| (a.from, a.to)).collect();
        let poset = poset_from_arcs(masks.len(), &pairs)?;
        let ends = |dir: Direction, found: Vec<usize>| -> Result<usize> {
            let expected = index.get(&instance.extremal_mask(dir)).copied();
            match (&found[..], expected) {
                (&[only], Some(e)) if only == e => Ok(only),
                _ => Err(Error::Structural(format!(
                    "{dir:?} elements {found:?} do not match the extremal tree"
                ))),
            }
        };
        let source = ends(Direction::Min, poset.minimal())?;
        let sink = ends(Direction::Max, poset.maximal())?;
        let trees = masks.iter().map(|&m| instance.tree(m)).collect();
        Ok(FlipDigraph {
            instance,
            masks,
            trees,
            index,
            arcs,
            poset,
            source,
            sink,
        })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn masks(&self) -> &[EdgeSet] {
        &self.masks
    }

    pub fn arcs(&self) -> &[FlipArc] {
        &self.arcs
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn index_of_mask(&self, m: EdgeSet) -> Option<usize> {
        self.index.get(&m).copied()
    }

    pub fn index_of(&self, t: &Tree) -> Option<usize> {
        self.instance
            .tree_mask(t)
            .ok()
            .and_then(|m| self.index_of_mask(m))
    }
}

fn poset_from_arcs(len: usize, arcs: &[(usize, usize)]) -> Result<FinitePoset> {
    let poset = FinitePoset::from_relations(len, arcs)?;
    let mut sorted = arcs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if poset.hasse() != sorted {
        return Err(Error::Structural(
            "flip arcs are not the cover relations of their closure".into(),
        ));
    }
    Ok(poset)
}

pub fn increasing_flip_graph(sig: &Signature, pair: IndexPair) -> Result<FlipDigraph> {
    FlipDigraph::new(Instance::new(sig, pair)?)
}

/// Transitive closure of the arcs; fails unless the arcs are exactly its covers.
pub fn poset_from_digraph(g: &FlipDigraph) -> Result<FinitePoset> {
    let pairs: Vec<(usize, usize)> = g.arcs.iter().map(|a| (a.from, a.to)).collect();
    poset_from_arcs(g.len(), &pairs)
}

pub fn cambrian_lattice(sig: &Signature) -> Result<FinitePoset> {
    Ok(FlipDigraph::new(Instance::full(sig)?)?.poset)
}

/// The least and greatest trees containing `forest`, after checking that the
/// trees containing it form exactly that interval.
pub fn facial_interval(g: &FlipDigraph, forest: &Forest) -> Result<(Tree, Tree)> {
    let f = g.instance.forest_mask(forest)?;
    let mut containing = FixedBitSet::with_capacity(g.len());
    for (k, m) in g.masks.iter().enumerate() {
        if f.is_subset(*m) {
            containing.insert(k);
        }
    }
    let lo = least_in(&g.poset, &containing);
    let hi = least_in(&g.poset.dual(), &containing);
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Err(Error::Structural(format!(
            "trees containing {forest:?} have no least or no greatest element"
        )));
    };
    let mut interval = g.poset.up_set(lo).clone();
    interval.intersect_with(g.poset.down_set(hi));
    if interval != containing {
        return Err(Error::Structural(format!(
            "trees containing {forest:?} are not an interval"
        )));
    }
    Ok((g.trees[lo].clone(), g.trees[hi].clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeInstance {
    pub signature: String,
    pub inner: IndexPair,
    pub outer: IndexPair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeResult {
    Interval,
    Counterexample,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub instance: ProbeInstance,
    pub result: ProbeResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_interval: Option<[Tree; 2]>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.result == ProbeResult::Interval
    }
}

/// Searches the outer lattice for an interval isomorphic to the inner one.
pub fn conjecture_probe(sig: &Signature, inner: IndexPair, outer: IndexPair) -> Result<ConjectureReport> {
    if !outer.contains(&inner) {
        return Err(Error::Domain(format!("{inner} is not contained in {outer}")));
    }
    let small = FlipDigraph::new(Instance::new(sig, inner.clone())?)?;
    let big = FlipDigraph::new(Instance::new(sig, outer.clone())?)?;
    let found = find_isomorphic_interval(&small.poset, &big.poset);
    Ok(ConjectureReport {
        instance: ProbeInstance {
            signature: sig.to_string(),
            inner,
            outer,
        },
        result: if found.is_some() {
            ProbeResult::Interval
        } else {
            ProbeResult::Counterexample
        },
        witness_interval: found.map(|(lo, hi)| [big.trees[lo].clone(), big.trees[hi].clone()]),
    })
}

/// Runs [`conjecture_probe`] on many nested instances in parallel.
pub fn conjecture_sweep(cases: &[(Signature, IndexPair, IndexPair)]) -> Result<Vec<ConjectureReport>> {
    par::map(cases, |(s, i, o)| conjecture_probe(s, i.clone(), o.clone()))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::Reflection;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    fn chain(n: usize) -> FinitePoset {
        let arcs: Vec<_> = (1..n).map(|k| (k - 1, k)).collect();
        FinitePoset::from_relations(n, &arcs).unwrap()
    }

    fn boolean_square() -> FinitePoset {
        FinitePoset::from_relations(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn small_posets() {
        assert!(is_lattice(&chain(3)));
        assert!(is_lattice(&boolean_square()));
        let no_top = FinitePoset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        let w = check_lattice(&no_top).unwrap_err();
        assert_eq!((w.a, w.b, w.bound), (1, 2, Bound::Join));
        assert!(w.extremal_bounds.is_empty());
        let bowtie =
            FinitePoset::from_relations(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let w = check_lattice(&bowtie).unwrap_err();
        assert_eq!(w.extremal_bounds, vec![2, 3]);
        assert!(FinitePoset::from_relations(2, &[(0, 1), (1, 0)]).is_err());
        assert_eq!(chain(4).hasse().len(), 3);
        let closed = FinitePoset::from_relations(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(closed.hasse(), chain(3).hasse());
    }

    #[test]
    fn interval_search_basics() {
        let antichain = FinitePoset::from_relations(2, &[]).unwrap();
        assert_eq!(find_isomorphic_interval(&antichain, &chain(3)), None);
        let sq = boolean_square();
        assert_eq!(find_isomorphic_interval(&sq, &sq), Some((0, 3)));
        assert_eq!(find_isomorphic_interval(&chain(2), &sq), Some((0, 1)));
        assert!(isomorphism(&chain(3), &chain(3).dual()).is_some());
    }

    #[test]
    fn singleton_instance() {
        let g = increasing_flip_graph(&sig("-"), IndexPair::new(vec![0], vec![1]).unwrap()).unwrap();
        assert_eq!((g.len(), g.arcs().len()), (1, 0));
        assert_eq!(poset_from_digraph(&g).unwrap().len(), 1);
        assert_eq!(cambrian_lattice(&sig("+")).unwrap().len(), 1);
    }

    /// Binary trees with `n` internal nodes as nested options, ordered by right rotation.
    #[derive(Clone, PartialEq, Eq, Hash, Debug)]
    enum Bin {
        Leaf,
        Node(Box<Bin>, Box<Bin>),
    }

    fn binary_trees(n: usize) -> Vec<Bin> {
        if n == 0 {
            return vec![Bin::Leaf];
        }
        let mut out = Vec::new();
        for k in 0..n {
            for l in binary_trees(k) {
                for r in binary_trees(n - 1 - k) {
                    out.push(Bin::Node(Box::new(l.clone()), Box::new(r)));
                }
            }
        }
        out
    }

    fn rotations(t: &Bin) -> Vec<Bin> {
        let Bin::Node(l, r) = t else { return vec![] };
        let mut out = Vec::new();
        if let Bin::Node(a, b) = l.as_ref() {
            out.push(Bin::Node(a.clone(), Box::new(Bin::Node(b.clone(), r.clone()))));
        }
        for l2 in rotations(l) {
            out.push(Bin::Node(Box::new(l2), r.clone()));
        }
        for r2 in rotations(r) {
            out.push(Bin::Node(l.clone(), Box::new(r2)));
        }
        out
    }

    fn tamari(n: usize) -> FinitePoset {
        let all = binary_trees(n);
        let index: HashMap<Bin, usize> = all.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
        let arcs: Vec<_> = all
            .iter()
            .enumerate()
            .flat_map(|(k, t)| rotations(t).into_iter().map(|u| (k, index[&u])).collect::<Vec<_>>())
            .collect();
        FinitePoset::from_relations(all.len(), &arcs).unwrap()
    }

    #[test]
    fn minus_signature_is_tamari() {
        for n in 1..=5 {
            let p = cambrian_lattice(&Signature::uniform(n, crate::polygon::Sign::Minus)).unwrap();
            let t = tamari(n);
            assert!(is_lattice(&t));
            assert!(isomorphism(&p, &t).is_some(), "n = {n}");
        }
        let pentagon = cambrian_lattice(&sig("---")).unwrap();
        assert_eq!((pentagon.len(), pentagon.hasse().len()), (5, 5));
    }

    #[test]
    fn cambrian_lattices_small() {
        for n in 1..=4 {
            for s in Signature::all(n) {
                let p = cambrian_lattice(&s).unwrap();
                assert_eq!(p.len(), [1, 1, 2, 5, 14][n]);
                assert!(is_lattice(&p));
            }
        }
    }

    #[test]
    fn flips_increase_slope_sums() {
        use num_rational::Rational64;
        for s in Signature::all(4) {
            let g = FlipDigraph::new(Instance::full(&s).unwrap()).unwrap();
            let p = g.instance().polygon();
            let total = |t: &Tree| {
                t.edges()
                    .iter()
                    .map(|&e| {
                        let (a, b) = p.slope(e);
                        Rational64::new(a, b)
                    })
                    .sum::<Rational64>()
            };
            for a in g.arcs() {
                assert!(total(&g.trees()[a.from]) < total(&g.trees()[a.to]));
            }
        }
    }

    #[test]
    fn all_small_instances_are_lattices() {
        for n in 1..=4 {
            for s in Signature::all(n) {
                for pair in IndexPair::all(n) {
                    let g = increasing_flip_graph(&s, pair).unwrap();
                    assert!(is_lattice(g.poset()));
                }
            }
        }
    }

    #[test]
    fn reflections_reverse_the_order() {
        for n in 1..=4 {
            for s in Signature::all(n) {
                for pair in IndexPair::all(n) {
                    let p = increasing_flip_graph(&s, pair.clone()).unwrap();
                    let h = increasing_flip_graph(&s.reflect(Reflection::Horizontal), pair.clone())
                        .unwrap();
                    let v = increasing_flip_graph(&s.reflect(Reflection::Vertical), pair.mirror(n))
                        .unwrap();
                    let opposite = p.poset().dual();
                    assert!(isomorphism(h.poset(), &opposite).is_some());
                    assert!(isomorphism(v.poset(), &opposite).is_some());
                }
            }
        }
    }

    #[test]
    fn facial_intervals() {
        let g = FlipDigraph::new(Instance::full(&sig("-+-+")).unwrap()).unwrap();
        let (lo, hi) = facial_interval(&g, &Forest::default()).unwrap();
        assert_eq!(lo, g.trees()[g.source()]);
        assert_eq!(hi, g.trees()[g.sink()]);
        let inst = g.instance();
        for (k, t) in g.trees().iter().enumerate() {
            assert_eq!(facial_interval(&g, &t.as_forest()).unwrap(), (t.clone(), t.clone()));
            for sub in g.masks()[k].subsets() {
                facial_interval(&g, &inst.forest(sub)).unwrap();
            }
        }
    }

    #[test]
    fn conjecture_identity_and_nesting() {
        let s = sig("-+-");
        let pair = IndexPair::new(vec![0, 1, 2], vec![2, 3, 4]).unwrap();
        let r = conjecture_probe(&s, pair.clone(), pair.clone()).unwrap();
        assert!(r.holds());
        let bad = IndexPair::new(vec![0, 3], vec![4]).unwrap();
        assert!(matches!(conjecture_probe(&s, bad, pair), Err(Error::Domain(_))));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["result"], "interval");
    }
}

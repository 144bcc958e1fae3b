//! Non-crossing forests and trees of the bipartite graph `G^ε_{I•,J∘}`.
//!
//! An [`Instance`] fixes a signature and an [`IndexPair`], lists the admissible
//! edges `(i•, j∘)` with `i < j` in canonical order, and precomputes the
//! crossing relation as bit masks. Trees are the maximal cliques of the
//! non-crossing relation; everything downstream works on [`EdgeSet`]s relative
//! to that edge list and converts to [`Tree`]/[`Forest`] at the API boundary.

mod bijection;
mod matching;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use bijection::{
    canopy, dual_cambrian_tree, phi, phi_inverse, phi_triangulation, triangles,
    DualCambrianTree,
};
pub use matching::Matching;

use crate::edgeset::{EdgeSet, CAPACITY};
use crate::error::{Error, Result};
use crate::polygon::{Edge, Polygon, Signature};

/// Chosen black labels `I•` and white labels `J∘`, both strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexPair {
    black: Vec<usize>,
    white: Vec<usize>,
}

impl IndexPair {
    /// Sorts and checks the standing assumption `min I < min J`, `max I < max J`.
    pub fn new(mut black: Vec<usize>, mut white: Vec<usize>) -> Result<Self> {
        black.sort_unstable();
        white.sort_unstable();
        if black.windows(2).any(|w| w[0] == w[1]) || white.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::IndexPair("repeated label".into()));
        }
        let (Some(&bmin), Some(&wmin)) = (black.first(), white.first()) else {
            return Err(Error::IndexPair("both label sets must be nonempty".into()));
        };
        if bmin >= wmin {
            return Err(Error::IndexPair(format!(
                "need min(I•) < min(J∘), got {bmin}• and {wmin}∘"
            )));
        }
        let (bmax, wmax) = (*black.last().unwrap(), *white.last().unwrap());
        if bmax >= wmax {
            return Err(Error::IndexPair(format!(
                "need max(I•) < max(J∘), got {bmax}• and {wmax}∘"
            )));
        }
        if wmin == 0 {
            return Err(Error::IndexPair("white labels start at 1".into()));
        }
        Ok(IndexPair { black, white })
    }

    pub fn full(n: usize) -> Self {
        IndexPair {
            black: (0..=n).collect(),
            white: (1..=n + 1).collect(),
        }
    }

    /// Every valid pair on `⟦n•] × [n∘⟧`, ordered by bit masks.
    pub fn all(n: usize) -> Vec<IndexPair> {
        let mut out = Vec::new();
        for bmask in 1u64..1 << (n + 1) {
            for wmask in 1u64..1 << (n + 1) {
                let black = (0..=n).filter(|i| bmask >> i & 1 == 1).collect();
                let white = (1..=n + 1).filter(|j| wmask >> (j - 1) & 1 == 1).collect();
                if let Ok(p) = IndexPair::new(black, white) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn black(&self) -> &[usize] {
        &self.black
    }

    pub fn white(&self) -> &[usize] {
        &self.white
    }

    pub fn is_full(&self, n: usize) -> bool {
        *self == IndexPair::full(n)
    }

    /// Image under the vertical reflection: `I⃡ = {(n+1−i)∘}` becomes the white
    /// set and `J⃡ = {(n+1−j)•}` the black set.
    pub fn mirror(&self, n: usize) -> IndexPair {
        IndexPair {
            black: self.white.iter().rev().map(|j| n + 1 - j).collect(),
            white: self.black.iter().rev().map(|i| n + 1 - i).collect(),
        }
    }

    pub fn contains(&self, other: &IndexPair) -> bool {
        other.black.iter().all(|i| self.black.contains(i))
            && other.white.iter().all(|j| self.white.contains(j))
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I={:?} J={:?}", self.black, self.white)
    }
}

/// Image of an edge under the vertical reflection.
pub fn mirror_edge(e: Edge, n: usize) -> Edge {
    Edge::new(n + 1 - e.white(), n + 1 - e.black())
}

/// A non-crossing edge set, sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Forest {
    edges: Vec<Edge>,
}

impl Forest {
    pub fn new(mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Forest { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

/// A maximal forest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Tree {
    edges: Vec<Edge>,
}

impl Tree {
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn as_forest(&self) -> Forest {
        Forest {
            edges: self.edges.clone(),
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Min,
    Max,
}

#[derive(Clone, Debug)]
pub struct Instance {
    polygon: Polygon,
    pair: IndexPair,
    edges: Vec<Edge>,
    index: HashMap<Edge, usize>,
    crossing: Vec<EdgeSet>,
}

impl Instance {
    pub fn new(sig: &Signature, pair: IndexPair) -> Result<Self> {
        let n = sig.len();
        if let Some(&b) = pair.black.last().filter(|&&b| b > n) {
            return Err(Error::IndexPair(format!("black label {b}• exceeds n = {n}")));
        }
        if let Some(&w) = pair.white.last().filter(|&&w| w > n + 1) {
            return Err(Error::IndexPair(format!(
                "white label {w}∘ exceeds n+1 = {}",
                n + 1
            )));
        }
        let edges: Vec<Edge> = pair
            .black
            .iter()
            .flat_map(|&i| pair.white.iter().filter_map(move |&j| Edge::try_new(i, j)))
            .collect();
        if edges.len() > CAPACITY {
            return Err(Error::TooLarge(format!(
                "{} edges exceed the supported {CAPACITY}",
                edges.len()
            )));
        }
        let polygon = Polygon::new(sig);
        let crossing = edges
            .iter()
            .map(|&a| {
                let mut m = EdgeSet::EMPTY;
                for (k, &b) in edges.iter().enumerate() {
                    if polygon.edges_cross(a, b) {
                        m.insert(k);
                    }
                }
                m
            })
            .collect();
        let index = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        Ok(Instance {
            polygon,
            pair,
            edges,
            index,
            crossing,
        })
    }

    pub fn full(sig: &Signature) -> Result<Self> {
        Instance::new(sig, IndexPair::full(sig.len()))
    }

    pub fn signature(&self) -> &Signature {
        self.polygon.signature()
    }

    pub fn n(&self) -> usize {
        self.polygon.n()
    }

    pub fn pair(&self) -> &IndexPair {
        &self.pair
    }

    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    /// All admissible edges, in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> Edge {
        self.edges[k]
    }

    pub fn index_of(&self, e: Edge) -> Option<usize> {
        self.index.get(&e).copied()
    }

    pub fn crossing(&self, k: usize) -> EdgeSet {
        self.crossing[k]
    }

    /// Expected number of edges of every tree.
    pub fn tree_size(&self) -> usize {
        self.pair.black.len() + self.pair.white.len() - 1
    }

    pub fn mask(&self, edges: &[Edge]) -> Result<EdgeSet> {
        edges.iter().try_fold(EdgeSet::EMPTY, |m, &e| {
            self.index_of(e)
                .map(|k| m.with(k))
                .ok_or(Error::UnknownEdge(e))
        })
    }

    pub fn edges_of(&self, set: EdgeSet) -> Vec<Edge> {
        set.iter().map(|k| self.edges[k]).collect()
    }

    pub fn forest(&self, set: EdgeSet) -> Forest {
        Forest {
            edges: self.edges_of(set),
        }
    }

    pub fn tree(&self, set: EdgeSet) -> Tree {
        Tree {
            edges: self.edges_of(set),
        }
    }

    pub fn is_noncrossing(&self, set: EdgeSet) -> bool {
        set.iter().all(|k| !self.crossing[k].intersects(set))
    }

    /// Edges outside `set` that cross no edge of `set`.
    pub fn addable(&self, set: EdgeSet) -> EdgeSet {
        let mut out = EdgeSet::full(self.edges.len()) - set;
        for k in set.iter() {
            out = out - self.crossing[k];
        }
        out
    }

    pub fn is_tree_mask(&self, set: EdgeSet) -> bool {
        self.is_noncrossing(set) && self.addable(set).is_empty()
    }

    /// Validates that `forest` uses admissible edges and is non-crossing.
    pub fn forest_mask(&self, forest: &Forest) -> Result<EdgeSet> {
        let m = self.mask(forest.edges())?;
        if !self.is_noncrossing(m) {
            return Err(Error::NotForest("edges cross".into()));
        }
        Ok(m)
    }

    pub fn tree_mask(&self, tree: &Tree) -> Result<EdgeSet> {
        let m = self.mask(tree.edges())?;
        if !self.is_tree_mask(m) {
            return Err(Error::NotForest(format!("{tree} is not a maximal forest")));
        }
        Ok(m)
    }

    /// Maximal non-crossing subgraph test.
    pub fn is_tree(&self, forest: &Forest) -> bool {
        self.mask(forest.edges())
            .map(|m| self.is_tree_mask(m))
            .unwrap_or(false)
    }

    /// Spanning and acyclic on `I• ∪ J∘`, by union-find.
    pub fn is_spanning_tree(&self, set: EdgeSet) -> bool {
        let nb = self.pair.black.len();
        let nw = self.pair.white.len();
        if set.len() + 1 != nb + nw {
            return false;
        }
        let mut parent: Vec<usize> = (0..nb + nw).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.edges_of(set) {
            let a = self.pair.black.binary_search(&e.black()).unwrap();
            let b = nb + self.pair.white.binary_search(&e.white()).unwrap();
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    /// All trees, as edge sets sorted by canonical edge list.
    pub fn tree_masks(&self) -> Vec<EdgeSet> {
        let all = EdgeSet::full(self.edges.len());
        let compat: Vec<EdgeSet> = (0..self.edges.len())
            .map(|k| (all - self.crossing[k]).without(k))
            .collect();
        let mut out = Vec::new();
        maximal_cliques(&compat, EdgeSet::EMPTY, all, EdgeSet::EMPTY, &mut out);
        sort_canonically(&mut out);
        out
    }

    pub fn enumerate_trees(&self) -> Vec<Tree> {
        self.tree_masks().into_iter().map(|m| self.tree(m)).collect()
    }

    pub fn irrelevant_mask(&self) -> EdgeSet {
        (0..self.edges.len())
            .filter(|&k| self.crossing[k].is_empty())
            .fold(EdgeSet::EMPTY, |m, k| m.with(k))
    }

    /// Edges crossed by no other edge.
    pub fn irrelevant_edges(&self) -> Vec<Edge> {
        self.edges_of(self.irrelevant_mask())
    }

    /// Flippable edges of a tree, by the neighbour criterion: `(i, j)` flips iff
    /// some `(i, j′)` and `(i′, j)` of the tree satisfy `i′ < j′`.
    pub fn flippable_mask(&self, tree: EdgeSet) -> EdgeSet {
        let edges = self.edges_of(tree);
        let mut out = EdgeSet::EMPTY;
        for (k, &e) in tree.iter().zip(&edges) {
            let max_white = edges
                .iter()
                .filter(|f| f.black() == e.black() && f.white() != e.white())
                .map(|f| f.white())
                .max();
            let min_black = edges
                .iter()
                .filter(|f| f.white() == e.white() && f.black() != e.black())
                .map(|f| f.black())
                .min();
            if let (Some(j2), Some(i2)) = (max_white, min_black) {
                if i2 < j2 {
                    out.insert(k);
                }
            }
        }
        out
    }

    pub fn flippable_edges(&self, tree: &Tree) -> Result<Vec<Edge>> {
        let t = self.tree_mask(tree)?;
        Ok(self.edges_of(self.flippable_mask(t)))
    }

    /// Exchanges edge `k` of `tree` for the unique other edge completing `tree ∖ {k}`.
    pub fn flip_mask(&self, tree: EdgeSet, k: usize) -> Result<(EdgeSet, usize)> {
        let e = self.edges[k];
        if !tree.contains(k) || !self.flippable_mask(tree).contains(k) {
            return Err(Error::NotFlippable(e));
        }
        let rest = tree.without(k);
        let candidates = self.addable(rest).without(k);
        match candidates.len() {
            1 => {
                let k2 = candidates.first().unwrap();
                Ok((rest.with(k2), k2))
            }
            0 => Err(Error::Structural(format!(
                "flippable edge {e} has no replacement"
            ))),
            c => Err(Error::Structural(format!(
                "removing {e} leaves {c} completions, expected one"
            ))),
        }
    }

    /// Returns the flipped tree and the entering edge.
    pub fn flip(&self, tree: &Tree, e: Edge) -> Result<(Tree, Edge)> {
        let t = self.tree_mask(tree)?;
        let k = self.index_of(e).ok_or(Error::UnknownEdge(e))?;
        let (t2, k2) = self.flip_mask(t, k)?;
        Ok((self.tree(t2), self.edges[k2]))
    }

    /// Edges crossed by no edge of smaller (`Min`) or bigger (`Max`) slope.
    pub fn extremal_mask(&self, dir: Direction) -> EdgeSet {
        use std::cmp::Ordering;
        let worse = match dir {
            Direction::Min => Ordering::Less,
            Direction::Max => Ordering::Greater,
        };
        (0..self.edges.len())
            .filter(|&k| {
                self.crossing[k].iter().all(|c| {
                    self.polygon.compare_slopes(self.edges[c], self.edges[k]) != worse
                })
            })
            .fold(EdgeSet::EMPTY, |m, k| m.with(k))
    }

    pub fn extremal_tree(&self, dir: Direction) -> Result<Tree> {
        let m = self.extremal_mask(dir);
        if !self.is_tree_mask(m) {
            return Err(Error::Structural(format!(
                "extremal {dir:?} edge set is not a tree"
            )));
        }
        Ok(self.tree(m))
    }
}

fn sort_canonically(sets: &mut [EdgeSet]) {
    sets.sort_by_cached_key(|s| s.iter().collect::<Vec<_>>());
}

/// Bron–Kerbosch with pivoting over the compatibility graph.
fn maximal_cliques(
    compat: &[EdgeSet],
    r: EdgeSet,
    mut p: EdgeSet,
    mut x: EdgeSet,
    out: &mut Vec<EdgeSet>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = (p | x)
        .iter()
        .max_by_key(|&u| (p & compat[u]).len())
        .expect("p is nonempty");
    for v in (p - compat[pivot]).iter() {
        maximal_cliques(compat, r.with(v), p & compat[v], x & compat[v], out);
        p.remove(v);
        x.insert(v);
    }
}

pub fn build_edge_set(sig: &Signature, pair: &IndexPair) -> Result<Vec<Edge>> {
    Ok(Instance::new(sig, pair.clone())?.edges().to_vec())
}

pub fn enumerate_trees(sig: &Signature, pair: &IndexPair) -> Result<Vec<Tree>> {
    Ok(Instance::new(sig, pair.clone())?.enumerate_trees())
}

//! The bijection `φ(i□, j□) = (i•, j∘)` between diagonals of the square polygon
//! and edges of the full graph, and the dual Cambrian tree of a triangulation.

use std::collections::BTreeSet;

use super::{Instance, Tree};
use crate::error::{Error, Result};
use crate::polygon::{DecoratedVertex, Edge, Polygon, Sign, Signature, SquareDiagonal};

pub fn phi(d: SquareDiagonal) -> Edge {
    Edge::new(d.low, d.high)
}

pub fn phi_inverse(e: Edge) -> SquareDiagonal {
    SquareDiagonal::new(e.black(), e.white())
}

fn check_triangulation(polygon: &Polygon, diagonals: &[SquareDiagonal]) -> Result<BTreeSet<SquareDiagonal>> {
    let n = polygon.n();
    let set: BTreeSet<SquareDiagonal> = diagonals.iter().copied().collect();
    if set.len() != diagonals.len() {
        return Err(Error::NotTriangulation("repeated diagonal".into()));
    }
    if let Some(d) = set.iter().find(|d| d.high > n + 1) {
        return Err(Error::NotTriangulation(format!("{d} uses a label above {}", n + 1)));
    }
    if set.len() != 2 * n + 1 {
        return Err(Error::NotTriangulation(format!(
            "{} diagonals, expected {}",
            set.len(),
            2 * n + 1
        )));
    }
    for a in &set {
        for b in &set {
            if polygon.squares_cross(*a, *b) {
                return Err(Error::NotTriangulation(format!("{a} crosses {b}")));
            }
        }
    }
    Ok(set)
}

/// Image of a triangulation of the square polygon (boundary edges included).
pub fn phi_triangulation(sig: &Signature, diagonals: &[SquareDiagonal]) -> Result<Tree> {
    let inst = Instance::full(sig)?;
    check_triangulation(inst.polygon(), diagonals)?;
    let edges: Vec<Edge> = diagonals.iter().map(|&d| phi(d)).collect();
    let m = inst.mask(&edges)?;
    if !inst.is_tree_mask(m) {
        return Err(Error::Structural("image of a triangulation is not a tree".into()));
    }
    Ok(inst.tree(m))
}

/// Triangles `i□ j□ k□` (`i < j < k`) of a triangulation.
pub fn triangles(sig: &Signature, diagonals: &[SquareDiagonal]) -> Result<Vec<[usize; 3]>> {
    let polygon = Polygon::new(sig);
    let set = check_triangulation(&polygon, diagonals)?;
    Ok(triangles_of(&set, sig.len()))
}

fn triangles_of(set: &BTreeSet<SquareDiagonal>, n: usize) -> Vec<[usize; 3]> {
    let has = |a, b| set.contains(&SquareDiagonal::new(a, b));
    let mut out = Vec::with_capacity(n);
    for i in 0..=n + 1 {
        for j in i + 1..=n + 1 {
            if !has(i, j) {
                continue;
            }
            for k in j + 1..=n + 1 {
                if has(i, k) && has(j, k) {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// Nodes are labelled `1..=n` (the middle label of each triangle); each arc
/// goes from the triangle below a shared diagonal to the one above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCambrianTree {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl DualCambrianTree {
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Whether a directed path leads from node `a` to node `b`.
    pub fn is_below(&self, a: usize, b: usize) -> bool {
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            if x == b {
                return true;
            }
            if std::mem::replace(&mut seen[x], true) {
                continue;
            }
            stack.extend(self.arcs.iter().filter(|(s, _)| *s == x).map(|(_, t)| *t));
        }
        false
    }
}

pub fn dual_cambrian_tree(sig: &Signature, diagonals: &[SquareDiagonal]) -> Result<DualCambrianTree> {
    let polygon = Polygon::new(sig);
    let set = check_triangulation(&polygon, diagonals)?;
    let tris = triangles_of(&set, sig.len());
    let mut arcs = Vec::with_capacity(tris.len().saturating_sub(1));
    for d in set.iter().filter(|d| polygon.ell(**d) > 0) {
        let mut below = None;
        let mut above = None;
        for t in tris.iter().filter(|t| t.contains(&d.low) && t.contains(&d.high)) {
            let apex = *t.iter().find(|&&v| v != d.low && v != d.high).unwrap();
            let side = polygon.orientation(
                DecoratedVertex::Square(d.low),
                DecoratedVertex::Square(d.high),
                DecoratedVertex::Square(apex),
            );
            if side < 0 {
                below = Some(t[1]);
            } else {
                above = Some(t[1]);
            }
        }
        match (below, above) {
            (Some(b), Some(a)) => arcs.push((b, a)),
            _ => {
                return Err(Error::Structural(format!(
                    "diagonal {d} is not shared by a triangle on each side"
                )))
            }
        }
    }
    arcs.sort_unstable();
    Ok(DualCambrianTree { n: sig.len(), arcs })
}

/// `canopy_i = −` iff node `i` lies below node `i+1` in the dual Cambrian tree.
pub fn canopy(tree: &Tree, sig: &Signature) -> Result<Vec<Sign>> {
    let n = sig.len();
    if n < 2 {
        return Err(Error::Domain("canopy needs n ≥ 2".into()));
    }
    let diagonals: Vec<SquareDiagonal> = tree.edges().iter().map(|&e| phi_inverse(e)).collect();
    let dual = dual_cambrian_tree(sig, &diagonals)?;
    Ok((1..n)
        .map(|i| {
            if dual.is_below(i, i + 1) {
                Sign::Minus
            } else {
                Sign::Plus
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    /// Triangulations of a convex polygon given by its boundary cycle, by the
    /// classical apex recursion on the edge `(v_0, v_last)`.
    fn triangulate(cycle: &[usize]) -> Vec<Vec<SquareDiagonal>> {
        if cycle.len() < 3 {
            return vec![vec![]];
        }
        let (first, last) = (cycle[0], cycle[cycle.len() - 1]);
        let mut out = Vec::new();
        for k in 1..cycle.len() - 1 {
            let left = triangulate(&cycle[..=k]);
            let right = triangulate(&cycle[k..]);
            for l in &left {
                for r in &right {
                    let mut t = l.clone();
                    t.extend(r.iter().copied());
                    if k > 1 {
                        t.push(SquareDiagonal::new(first, cycle[k]));
                    }
                    if k < cycle.len() - 2 {
                        t.push(SquareDiagonal::new(cycle[k], last));
                    }
                    out.push(t);
                }
            }
        }
        out
    }

    pub(crate) fn all_triangulations(s: &Signature) -> Vec<Vec<SquareDiagonal>> {
        let cycle: Vec<usize> = crate::polygon::square_boundary_order(s)
            .into_iter()
            .map(|v| match v {
                DecoratedVertex::Square(i) => i,
                _ => unreachable!(),
            })
            .collect();
        let m = cycle.len();
        let boundary: Vec<SquareDiagonal> = (0..m)
            .map(|k| SquareDiagonal::new(cycle[k], cycle[(k + 1) % m]))
            .collect();
        triangulate(&cycle)
            .into_iter()
            .map(|mut t| {
                t.extend(boundary.iter().copied());
                t.sort();
                t
            })
            .collect()
    }

    #[test]
    fn phi_rule() {
        assert_eq!(phi(SquareDiagonal::new(0, 3)), Edge::new(0, 3));
        assert_eq!(phi_inverse(Edge::new(0, 3)), SquareDiagonal::new(3, 0));
    }

    #[test]
    fn triangulations_map_to_trees() {
        let catalan = [1, 1, 2, 5, 14, 42];
        for n in 1..=5 {
            for s in Signature::all(n) {
                let tris = all_triangulations(&s);
                assert_eq!(tris.len(), catalan[n]);
                let inst = Instance::full(&s).unwrap();
                let mut images: Vec<Tree> = tris
                    .iter()
                    .map(|t| phi_triangulation(&s, t).unwrap())
                    .collect();
                assert!(images.iter().all(|t| t.len() == 2 * n + 1));
                images.sort();
                assert_eq!(images, inst.enumerate_trees());
            }
        }
    }

    #[test]
    fn non_triangulation_rejected() {
        let s = sig("--");
        let bad = vec![SquareDiagonal::new(0, 1)];
        assert!(matches!(
            phi_triangulation(&s, &bad),
            Err(Error::NotTriangulation(_))
        ));
        let crossing = vec![
            SquareDiagonal::new(0, 1),
            SquareDiagonal::new(1, 2),
            SquareDiagonal::new(2, 3),
            SquareDiagonal::new(0, 2),
            SquareDiagonal::new(1, 3),
        ];
        assert!(phi_triangulation(&s, &crossing).is_err());
    }

    #[test]
    fn canopy_single_sign() {
        let s = sig("--");
        let inst = Instance::full(&s).unwrap();
        for t in inst.enumerate_trees() {
            assert_eq!(canopy(&t, &s).unwrap().len(), 1);
        }
        assert!(canopy(&Instance::full(&sig("-")).unwrap().enumerate_trees()[0], &sig("-")).is_err());
    }

    #[test]
    fn dual_tree_has_n_minus_one_arcs() {
        for n in 1..=5 {
            for s in Signature::all(n) {
                for t in all_triangulations(&s) {
                    let dual = dual_cambrian_tree(&s, &t).unwrap();
                    assert_eq!(dual.arcs().len(), n - 1);
                    assert_eq!(triangles(&s, &t).unwrap().len(), n);
                }
            }
        }
    }

    #[test]
    fn leaves_fix_canopy_signs() {
        for n in 2..=5 {
            for s in Signature::all(n) {
                let inst = Instance::full(&s).unwrap();
                for t in inst.enumerate_trees() {
                    let c = canopy(&t, &s).unwrap();
                    let degree_black = |i| t.edges().iter().filter(|e| e.black() == i).count();
                    let degree_white = |j| t.edges().iter().filter(|e| e.white() == j).count();
                    for i in 1..n {
                        if degree_black(i) == 1 {
                            assert_eq!(c[i - 1] * s.sign(i), Sign::Plus, "{s} {t} black {i}");
                        }
                    }
                    for j in 2..=n {
                        if degree_white(j) == 1 {
                            assert_eq!(c[j - 2] * s.sign(j), Sign::Minus, "{s} {t} white {j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn canopy_sign_without_leaf_exists() {
        let s = sig("-++-+--+");
        let inst = Instance::full(&s).unwrap();
        let found = inst.enumerate_trees().into_iter().any(|t| {
            let c = canopy(&t, &s).unwrap();
            let leaf = t.edges().iter().filter(|e| e.black() == 5).count() == 1;
            c[4] * s.sign(5) == Sign::Plus && !leaf
        });
        assert!(found);
    }
}

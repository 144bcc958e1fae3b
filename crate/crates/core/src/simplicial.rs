//! The subpolytope `U_{I•,J∘}` of `Δ_{I•} × Δ_{J∘}`, its triangulation by
//! tree simplices, regularity under concave lifts, and the mixed subdivision
//! obtained through the Cayley trick.
//!
//! Regularity is certified wall by wall. Two adjacent tree simplices exchanging
//! `(i,j)` for `(i′,j′)` span a circuit with the single dependence
//! `(e_i, e_j) + (e_i′, e_j′) = (e_i, e_j′) + (e_i′, e_j)`, so the lifted
//! triangulation is the lower hull exactly when
//! `h(i,j) + h(i′,j′) > h(i,j′) + h(i′,j)` on every interior wall.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use num_rational::{BigRational, Rational64};
use serde::{Deserialize, Serialize};

use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::forest::{IndexPair, Instance, Tree};
use crate::par;
use crate::poset::FlipDigraph;
use crate::polygon::{DecoratedVertex, Edge, Sign, Signature, SquareDiagonal};
use crate::surd::Surd;

/// Names of the ten vertices of `U` for `n = 3`, in canonical edge order.
pub const GREEK_N3: [char; 10] = ['α', 'β', 'γ', 'δ', 'ε', 'η', 'κ', 'λ', 'μ', 'ν'];

/// The staircase triangulation of `U` for `n = 3`, hard-coded.
pub const STAIRCASE_N3: [&str; 5] = ["αβγδκμν", "αβγηκμν", "αβγηλμν", "αβεηκμν", "αβεηλμν"];

/// The vertex `(e_{i•}, e_{j∘})` of `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Edge);

impl LatticePoint {
    /// 0/1 coordinates indexed by `I• ⊎ J∘`.
    pub fn coordinates(&self, pair: &IndexPair) -> Vec<i64> {
        let nb = pair.black().len();
        let mut v = vec![0; nb + pair.white().len()];
        if let Ok(a) = pair.black().binary_search(&self.0.black()) {
            v[a] = 1;
        }
        if let Ok(b) = pair.white().binary_search(&self.0.white()) {
            v[nb + b] = 1;
        }
        v
    }
}

pub fn u_polytope_vertices(inst: &Instance) -> Vec<LatticePoint> {
    inst.edges().iter().map(|&e| LatticePoint(e)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeSimplex {
    tree: Tree,
    vertices: Vec<LatticePoint>,
}

impl TreeSimplex {
    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }
}

/// Rank of an integer matrix by fraction-free elimination.
fn rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&p| m[p][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for k in c + 1..cols {
                m[i][k] = (m[r][c] * m[i][k] - m[i][c] * m[r][k]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Determinant of a square integer matrix (Bareiss).
fn determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for c in 0..n {
        let Some(p) = (c..n).find(|&p| m[p][c] != 0) else {
            return 0;
        };
        if p != c {
            m.swap(c, p);
            sign = -sign;
        }
        for i in c + 1..n {
            for k in c + 1..n {
                m[i][k] = (m[c][c] * m[i][k] - m[i][c] * m[c][k]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[c][c];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

pub fn simplex_of_tree(inst: &Instance, tree: &Tree) -> Result<TreeSimplex> {
    inst.tree_mask(tree)?;
    let vertices: Vec<LatticePoint> = tree.edges().iter().map(|&e| LatticePoint(e)).collect();
    let coords: Vec<Vec<i64>> = vertices.iter().map(|v| v.coordinates(inst.pair())).collect();
    let diffs: Vec<Vec<i128>> = coords[1..]
        .iter()
        .map(|c| c.iter().zip(&coords[0]).map(|(a, b)| (a - b) as i128).collect())
        .collect();
    if rank(diffs) != vertices.len() - 1 {
        return Err(Error::Structural(format!("tree simplex of {tree} is degenerate")));
    }
    Ok(TreeSimplex {
        tree: tree.clone(),
        vertices,
    })
}

/// Normalized volume of `conv{(e_i, e_j)}` inside the affine lattice of
/// `Δ_{I•} × Δ_{J∘}`; the edge count must be `|I•| + |J∘| − 1`.
pub fn normalized_volume(pair: &IndexPair, edges: &[Edge]) -> Result<u64> {
    let (nb, nw) = (pair.black().len(), pair.white().len());
    let d = nb + nw - 2;
    if edges.len() != d + 1 {
        return Err(Error::Domain(format!("{} points do not span a {d}-simplex", edges.len())));
    }
    // dropping the first coordinate of each block is a lattice isomorphism of the affine hull
    let project = |e: &Edge| -> Vec<i128> {
        let c = LatticePoint(*e).coordinates(pair);
        c[1..nb].iter().chain(&c[nb + 1..]).map(|&x| x as i128).collect()
    };
    let base = project(&edges[0]);
    let m: Vec<Vec<i128>> = edges[1..]
        .iter()
        .map(|e| project(e).iter().zip(&base).map(|(a, b)| a - b).collect())
        .collect();
    Ok(determinant(m).unsigned_abs() as u64)
}

/// Looks for a simple cycle alternating between edges of `a` (traversed black
/// to white) and edges of `b` (white to black). Shared edges may play either
/// role. Such a cycle is a circuit whose two halves lie in the two simplices.
pub fn alternating_cycle(inst: &Instance, a: EdgeSet, b: EdgeSet) -> Option<Vec<DecoratedVertex>> {
    let pair = inst.pair();
    let nb = pair.black().len();
    let node = |v: DecoratedVertex| match v {
        DecoratedVertex::Black(i) => pair.black().binary_search(&i).unwrap(),
        DecoratedVertex::White(j) => nb + pair.white().binary_search(&j).unwrap(),
        DecoratedVertex::Square(_) => unreachable!(),
    };
    let label = |k: usize| {
        if k < nb {
            DecoratedVertex::Black(pair.black()[k])
        } else {
            DecoratedVertex::White(pair.white()[k - nb])
        }
    };
    let total = nb + pair.white().len();
    let mut out = vec![Vec::new(); total];
    for e in inst.edges_of(a) {
        out[node(DecoratedVertex::Black(e.black()))].push(node(DecoratedVertex::White(e.white())));
    }
    for e in inst.edges_of(b) {
        out[node(DecoratedVertex::White(e.white()))].push(node(DecoratedVertex::Black(e.black())));
    }

    fn search(s: usize, v: usize, out: &[Vec<usize>], path: &mut Vec<usize>, on: &mut [bool]) -> bool {
        for &w in &out[v] {
            if w == s && path.len() >= 4 {
                return true;
            }
            if w > s && !on[w] {
                path.push(w);
                on[w] = true;
                if search(s, w, out, path, on) {
                    return true;
                }
                on[w] = false;
                path.pop();
            }
        }
        false
    }

    for s in 0..total {
        let mut path = vec![s];
        let mut on = vec![false; total];
        on[s] = true;
        if search(s, s, &out, &mut path, &mut on) {
            return Some(path.into_iter().map(label).collect());
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct ImproperPair {
    pub first: Tree,
    pub second: Tree,
    pub cycle: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangulationReport {
    pub signature: String,
    pub pair: IndexPair,
    pub simplices: usize,
    pub total_volume: u64,
    pub oracle_count: usize,
    pub improper: Option<ImproperPair>,
    pub dual_graph_matches_flip_graph: bool,
}

impl TriangulationReport {
    pub fn passes(&self) -> bool {
        self.improper.is_none()
            && self.total_volume == self.simplices as u64
            && self.simplices == self.oracle_count
            && self.dual_graph_matches_flip_graph
    }
}

/// Undirected pairs of trees sharing all but one edge.
fn dual_graph(masks: &[EdgeSet]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for a in 0..masks.len() {
        for b in a + 1..masks.len() {
            if (masks[a] & masks[b]).len() + 1 == masks[a].len() {
                out.insert((a, b));
            }
        }
    }
    out
}

fn undirected_flips(g: &FlipDigraph) -> BTreeSet<(usize, usize)> {
    g.arcs().iter().map(|a| (a.from.min(a.to), a.from.max(a.to))).collect()
}

pub fn verify_triangulation(sig: &Signature, pair: IndexPair) -> Result<TriangulationReport> {
    let g = FlipDigraph::new(Instance::new(sig, pair.clone())?)?;
    verify_with_simplices(&g, g.masks())
}

/// Runs the three checks on an arbitrary family of edge sets standing in for
/// the simplices of `g`'s instance.
pub fn verify_with_simplices(g: &FlipDigraph, masks: &[EdgeSet]) -> Result<TriangulationReport> {
    let inst = g.instance();
    let mut total_volume = 0;
    for &m in masks {
        total_volume += normalized_volume(inst.pair(), &inst.edges_of(m)).unwrap_or(0);
    }
    let indices: Vec<usize> = (0..masks.len()).collect();
    let improper = par::find_map_first(&indices, |&x| {
        (x + 1..masks.len()).find_map(|y| {
            alternating_cycle(inst, masks[x], masks[y]).map(|cycle| ImproperPair {
                first: inst.tree(masks[x]),
                second: inst.tree(masks[y]),
                cycle: cycle.iter().map(|v| v.to_string()).collect(),
            })
        })
    });
    let minus = Signature::uniform(inst.n(), Sign::Minus);
    let oracle_count = Instance::new(&minus, inst.pair().clone())?.tree_masks().len();
    Ok(TriangulationReport {
        signature: inst.signature().to_string(),
        pair: inst.pair().clone(),
        simplices: masks.len(),
        total_volume,
        oracle_count,
        improper,
        dual_graph_matches_flip_graph: dual_graph(masks) == undirected_flips(g),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftKind {
    /// `h = √ℓ`.
    Sqrt,
    /// `h = f(ℓ)` with `f(x) = x − x²/(2(n+2))`.
    Rational,
    /// `h = f(j − i)` with the same rational `f`; regular only for some signatures.
    LabelGap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    kind: LiftKind,
    values: HashMap<Edge, Surd>,
}

impl Lift {
    pub fn kind(&self) -> LiftKind {
        self.kind
    }

    /// `h(i•, j∘)`, absent for inadmissible pairs.
    pub fn get(&self, black: usize, white: usize) -> Option<&Surd> {
        Edge::try_new(black, white).and_then(|e| self.values.get(&e))
    }

    pub fn value(&self, e: Edge) -> Option<&Surd> {
        self.values.get(&e)
    }
}

fn concave(x: usize, n: usize) -> Surd {
    let x = x as i64;
    Surd::rational(BigRational::new(
        (2 * (n as i64 + 2) * x - x * x).into(),
        (2 * (n as i64 + 2)).into(),
    ))
}

/// Crossing pair whose exchange inequality fails, if any.
fn submodularity_violation(inst: &Instance, values: &HashMap<Edge, Surd>) -> Option<(Edge, Edge)> {
    for (k, &e) in inst.edges().iter().enumerate() {
        for c in inst.crossing(k).iter().filter(|&c| c > k) {
            let f = inst.edge(c);
            let (Some(x), Some(y)) = (
                Edge::try_new(e.black(), f.white()).and_then(|s| values.get(&s)),
                Edge::try_new(f.black(), e.white()).and_then(|s| values.get(&s)),
            ) else {
                continue;
            };
            if &values[&e] + &values[&f] <= x + y {
                return Some((e, f));
            }
        }
    }
    None
}

/// The lift `f ∘ ℓ ∘ φ⁻¹` (or `f(j − i)` for [`LiftKind::LabelGap`]). The two
/// concave kinds are checked for strict submodularity on crossing pairs.
pub fn build_lift(inst: &Instance, kind: LiftKind) -> Result<Lift> {
    let n = inst.n();
    let p = inst.polygon();
    let values: HashMap<Edge, Surd> = inst
        .edges()
        .iter()
        .map(|&e| {
            let ell = p.ell(SquareDiagonal::new(e.black(), e.white()));
            let h = match kind {
                LiftKind::Sqrt => Surd::sqrt(ell as u64),
                LiftKind::Rational => concave(ell, n),
                LiftKind::LabelGap => concave(e.white() - e.black(), n),
            };
            (e, h)
        })
        .collect();
    if kind != LiftKind::LabelGap {
        if let Some((e, f)) = submodularity_violation(inst, &values) {
            return Err(Error::Structural(format!(
                "{kind:?} lift is not strictly submodular on {e} × {f}"
            )));
        }
    }
    Ok(Lift { kind, values })
}

#[derive(Clone, Debug, Serialize)]
pub struct WallViolation {
    pub leaving: Edge,
    pub entering: Edge,
    pub folded: String,
    pub unfolded: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub lift: LiftKind,
    pub walls: usize,
    pub violations: Vec<WallViolation>,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the fold inequality on every interior wall. A tie is reported as
/// [`Error::DegenerateLift`].
pub fn regularity_check(g: &FlipDigraph, lift: &Lift) -> Result<RegularityReport> {
    let mut violations = Vec::new();
    for arc in g.arcs() {
        let (e, f) = (arc.leaving, arc.entering);
        let h = |b: usize, w: usize| {
            lift.get(b, w)
                .ok_or_else(|| Error::Structural(format!("lift undefined at ({b}•,{w}∘)")))
        };
        let lhs = h(e.black(), e.white())? + h(f.black(), f.white())?;
        let rhs = h(e.black(), f.white())? + h(f.black(), e.white())?;
        match lhs.cmp(&rhs) {
            Ordering::Greater => {}
            Ordering::Equal => {
                return Err(Error::DegenerateLift(format!(
                    "wall {e} ↔ {f} is flat: both sides equal {lhs}"
                )))
            }
            Ordering::Less => violations.push(WallViolation {
                leaving: e,
                entering: f,
                folded: lhs.to_string(),
                unfolded: rhs.to_string(),
            }),
        }
    }
    Ok(RegularityReport {
        lift: lift.kind(),
        walls: g.arcs().len(),
        violations,
    })
}

/// Number of distinct triangulations `{Δ_T}` of the full `U` over all `2^n`
/// signatures. `n = 0` is the one-point polytope.
pub fn distinct_epsilon_triangulations(n: usize) -> Result<usize> {
    if n == 0 {
        return Ok(1);
    }
    if n > 6 {
        return Err(Error::TooLarge(format!("dedupe over 2^{n} signatures")));
    }
    let sigs: Vec<Signature> = Signature::all(n).collect();
    let families = par::map(&sigs, |s| Instance::full(s).map(|i| i.tree_masks()));
    let mut seen = HashSet::new();
    for f in families {
        seen.insert(f?);
    }
    Ok(seen.len())
}

/// Greek name of a simplex of the full `n = 3` instance, such as `αβγδελν`.
pub fn greek_name(tree: &Tree) -> Option<String> {
    let full = IndexPair::full(3);
    let edges: Vec<Edge> = full
        .black()
        .iter()
        .flat_map(|&i| full.white().iter().filter_map(move |&j| Edge::try_new(i, j)))
        .collect();
    tree.edges()
        .iter()
        .map(|e| edges.iter().position(|f| f == e).map(|k| GREEK_N3[k]))
        .collect()
}

pub type Point2 = (i64, i64);

/// A cell `Σ_i Δ_{N(i)}` of the mixed subdivision, as the set of all lattice
/// points `Σ_i e_{j(i)}` with `j(i) ∈ N(i)`, in `Z^{J∘}`.
#[derive(Clone, Debug, Serialize)]
pub struct MixedCell {
    pub tree: Tree,
    pub summands: Vec<(usize, Vec<usize>)>,
    pub points: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MixedSubdivision {
    pub white: Vec<usize>,
    pub cells: Vec<MixedCell>,
    pub ambient: MixedCell,
}

fn minkowski(pair: &IndexPair, summands: &[(usize, Vec<usize>)]) -> Vec<Vec<i64>> {
    let width = pair.white().len();
    let mut current: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; width]]);
    for (_, js) in summands {
        let mut next = BTreeSet::new();
        for p in &current {
            for j in js {
                let mut q = p.clone();
                q[pair.white().binary_search(j).unwrap()] += 1;
                next.insert(q);
            }
        }
        current = next;
    }
    current.into_iter().collect()
}

fn cell(pair: &IndexPair, tree: Tree, neighbours: impl Fn(usize) -> Vec<usize>) -> MixedCell {
    let summands: Vec<(usize, Vec<usize>)> =
        pair.black().iter().map(|&i| (i, neighbours(i))).collect();
    let points = minkowski(pair, &summands);
    MixedCell {
        tree,
        summands,
        points,
    }
}

pub fn mixed_subdivision(g: &FlipDigraph) -> MixedSubdivision {
    let inst = g.instance();
    let pair = inst.pair();
    let cells = g
        .trees()
        .iter()
        .map(|t| {
            cell(pair, t.clone(), |i| {
                t.edges().iter().filter(|e| e.black() == i).map(|e| e.white()).collect()
            })
        })
        .collect();
    let all = inst.tree(EdgeSet::full(inst.edges().len()));
    let ambient = cell(pair, all, |i| pair.white().iter().copied().filter(|&j| j > i).collect());
    MixedSubdivision {
        white: pair.white().to_vec(),
        cells,
        ambient,
    }
}

fn cross(o: Point2, a: Point2, b: Point2) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counterclockwise hull without collinear points (monotone chain).
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

pub fn doubled_area(poly: &[Point2]) -> i64 {
    (0..poly.len())
        .map(|k| {
            let (a, b) = (poly[k], poly[(k + 1) % poly.len()]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Contact {
    Disjoint,
    Vertex,
    Edge,
    Improper,
}

/// How two convex polygons with counterclockwise vertices meet.
pub fn contact(a: &[Point2], b: &[Point2]) -> Contact {
    for (p, q) in [(a, b), (b, a)] {
        for k in 0..p.len() {
            let (s, t) = (p[k], p[(k + 1) % p.len()]);
            if q.iter().any(|&v| cross(s, t, v) > 0) {
                continue;
            }
            let d = (t.0 - s.0, t.1 - s.1);
            let along = |v: Point2| (v.0 - s.0) * d.0 + (v.1 - s.1) * d.1;
            let on_line = |poly: &[Point2]| -> Vec<i64> {
                let mut ts: Vec<i64> = poly
                    .iter()
                    .filter(|&&v| cross(s, t, v) == 0)
                    .map(|&v| along(v))
                    .collect();
                ts.sort_unstable();
                ts
            };
            let (sp, sq) = (on_line(p), on_line(q));
            let (Some(&q_lo), Some(&q_hi)) = (sq.first(), sq.last()) else {
                return Contact::Disjoint;
            };
            let (p_lo, p_hi) = (sp[0], sp[sp.len() - 1]);
            let (lo, hi) = (p_lo.max(q_lo), p_hi.min(q_hi));
            return match lo.cmp(&hi) {
                Ordering::Greater => Contact::Disjoint,
                Ordering::Equal => {
                    let vertex_of = |lo_, hi_| lo == lo_ || lo == hi_;
                    if vertex_of(p_lo, p_hi) && vertex_of(q_lo, q_hi) {
                        Contact::Vertex
                    } else {
                        Contact::Improper
                    }
                }
                Ordering::Less => {
                    if (p_lo, p_hi) == (q_lo, q_hi) {
                        Contact::Edge
                    } else {
                        Contact::Improper
                    }
                }
            };
        }
    }
    Contact::Improper
}

/// The `|J∘| = 3` case drawn in the plane `x_{j₁} + x_{j₂} + x_{j₃} = |I•|`
/// through the coordinates `(x_{j₁}, x_{j₂})`.
#[derive(Clone, Debug, Serialize)]
pub struct PlanarSubdivision {
    pub cells: Vec<Vec<Point2>>,
    pub ambient: Vec<Point2>,
}

impl MixedSubdivision {
    pub fn planar(&self) -> Result<PlanarSubdivision> {
        if self.white.len() != 3 {
            return Err(Error::Domain(format!(
                "planar view needs |J∘| = 3, got {}",
                self.white.len()
            )));
        }
        let hull = |c: &MixedCell| -> Result<Vec<Point2>> {
            let pts: Vec<Point2> = c.points.iter().map(|p| (p[0], p[1])).collect();
            let h = convex_hull(&pts);
            if h.len() < 3 {
                return Err(Error::Structural(format!("cell of {} is not 2-dimensional", c.tree)));
            }
            Ok(h)
        };
        Ok(PlanarSubdivision {
            cells: self.cells.iter().map(hull).collect::<Result<_>>()?,
            ambient: hull(&self.ambient)?,
        })
    }
}

impl PlanarSubdivision {
    pub fn cell_areas(&self) -> Vec<Rational64> {
        self.cells.iter().map(|c| Rational64::new(doubled_area(c), 2)).collect()
    }

    pub fn ambient_area(&self) -> Rational64 {
        Rational64::new(doubled_area(&self.ambient), 2)
    }

    /// Pairs of cells and how they meet, skipping disjoint pairs.
    pub fn contacts(&self) -> Vec<(usize, usize, Contact)> {
        let mut out = Vec::new();
        for a in 0..self.cells.len() {
            for b in a + 1..self.cells.len() {
                let c = contact(&self.cells[a], &self.cells[b]);
                if c != Contact::Disjoint {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    pub fn adjacency(&self) -> BTreeSet<(usize, usize)> {
        self.contacts()
            .into_iter()
            .filter(|c| c.2 == Contact::Edge)
            .map(|(a, b, _)| (a, b))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MixedReport {
    pub cells: usize,
    pub cell_area_sum: String,
    pub ambient_area: String,
    pub improper_pairs: Vec<(usize, usize)>,
    pub adjacency_matches_flip_graph: bool,
}

impl MixedReport {
    pub fn passes(&self) -> bool {
        self.cell_area_sum == self.ambient_area
            && self.improper_pairs.is_empty()
            && self.adjacency_matches_flip_graph
    }
}

pub fn verify_mixed_subdivision(g: &FlipDigraph) -> Result<MixedReport> {
    let planar = mixed_subdivision(g).planar()?;
    let sum: Rational64 = planar.cell_areas().into_iter().sum();
    let improper_pairs = planar
        .contacts()
        .into_iter()
        .filter(|c| c.2 == Contact::Improper)
        .map(|(a, b, _)| (a, b))
        .collect();
    Ok(MixedReport {
        cells: planar.cells.len(),
        cell_area_sum: sum.to_string(),
        ambient_area: planar.ambient_area().to_string(),
        improper_pairs,
        adjacency_matches_flip_graph: planar.adjacency() == undirected_flips(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn linear_algebra() {
        assert_eq!(determinant(vec![vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(determinant(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(vec![vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(rank(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]), 2);
        assert_eq!(rank(vec![vec![0, 0], vec![0, 0]]), 0);
    }

    #[test]
    fn u_vertices_n3() {
        let inst = Instance::full(&sig("---")).unwrap();
        assert_eq!(u_polytope_vertices(&inst).len(), 10);
        let single = Instance::new(&sig("-"), IndexPair::new(vec![0], vec![1]).unwrap()).unwrap();
        let t = &single.enumerate_trees()[0];
        assert_eq!(simplex_of_tree(&single, t).unwrap().vertices().len(), 1);
    }

    #[test]
    fn simplices_are_unimodular() {
        for n in 1..=5 {
            for s in Signature::all(n) {
                let inst = Instance::full(&s).unwrap();
                for t in inst.enumerate_trees() {
                    simplex_of_tree(&inst, &t).unwrap();
                    assert_eq!(normalized_volume(inst.pair(), t.edges()).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn negative_control_fails_intersection() {
        let g = FlipDigraph::new(Instance::full(&sig("-+-")).unwrap()).unwrap();
        let arc = &g.arcs()[0];
        let inst = g.instance();
        let mut masks = g.masks().to_vec();
        let bloated = masks[arc.from].with(inst.index_of(arc.entering).unwrap());
        masks[arc.from] = bloated;
        let report = verify_with_simplices(&g, &masks).unwrap();
        assert!(report.improper.is_some());
        assert!(!report.passes());
    }

    #[test]
    fn triangulations_verify() {
        for n in 1..=4 {
            for s in Signature::all(n) {
                let r = verify_triangulation(&s, IndexPair::full(n)).unwrap();
                assert!(r.passes(), "{r:?}");
            }
        }
    }

    #[test]
    fn lift_values() {
        let inst = Instance::new(
            &sig("-++-+--+"),
            IndexPair::new(vec![0, 1, 2, 4, 5, 7, 8], vec![3, 6, 9]).unwrap(),
        )
        .unwrap();
        let h = build_lift(&inst, LiftKind::Sqrt).unwrap();
        assert_eq!(h.get(1, 3), Some(&Surd::sqrt(2)));
        assert_eq!(h.get(2, 6), Some(&Surd::sqrt(3)));
        assert_eq!(h.get(0, 9), Some(&Surd::integer(2)));
        assert_eq!(h.get(7, 6), None);
        let r = build_lift(&Instance::full(&sig("-+")).unwrap(), LiftKind::Rational).unwrap();
        assert!(r.get(0, 1).unwrap().is_zero());
    }

    #[test]
    fn label_gap_depends_on_signature() {
        let minus = FlipDigraph::new(Instance::full(&sig("----")).unwrap()).unwrap();
        let lift = build_lift(minus.instance(), LiftKind::LabelGap).unwrap();
        assert!(regularity_check(&minus, &lift).unwrap().is_regular());
        let failing = Signature::all(4).find(|s| {
            let g = FlipDigraph::new(Instance::full(s).unwrap()).unwrap();
            let lift = build_lift(g.instance(), LiftKind::LabelGap).unwrap();
            !regularity_check(&g, &lift).unwrap().is_regular()
        });
        assert!(failing.is_some());
    }

    #[test]
    fn dedupe_small() {
        let counts: Vec<usize> = (0..=4).map(|n| distinct_epsilon_triangulations(n).unwrap()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 8]);
        assert!(distinct_epsilon_triangulations(7).is_err());
    }

    #[test]
    fn hull_and_contacts() {
        let sq = convex_hull(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 0), (1, 1)]);
        assert_eq!(sq, vec![(0, 0), (2, 0), (2, 2), (0, 2)]);
        assert_eq!(doubled_area(&sq), 8);
        let right = vec![(2, 0), (4, 0), (4, 2), (2, 2)];
        let corner = vec![(2, 2), (4, 2), (4, 4), (2, 4)];
        let shifted = vec![(2, 1), (4, 1), (4, 3), (2, 3)];
        let overlap = vec![(1, 1), (3, 1), (3, 3), (1, 3)];
        let far = vec![(5, 5), (6, 5), (6, 6)];
        assert_eq!(contact(&sq, &right), Contact::Edge);
        assert_eq!(contact(&sq, &corner), Contact::Vertex);
        assert_eq!(contact(&sq, &shifted), Contact::Improper);
        assert_eq!(contact(&sq, &overlap), Contact::Improper);
        assert_eq!(contact(&sq, &far), Contact::Disjoint);
    }

    #[test]
    fn planar_subdivisions_tile() {
        for s in Signature::all(3) {
            for pair in IndexPair::all(3).into_iter().filter(|p| p.white().len() == 3) {
                let g = FlipDigraph::new(Instance::new(&s, pair).unwrap()).unwrap();
                let r = verify_mixed_subdivision(&g).unwrap();
                assert!(r.passes(), "{s} {r:?}");
            }
        }
        let g = FlipDigraph::new(Instance::full(&sig("---")).unwrap()).unwrap();
        assert!(mixed_subdivision(&g).planar().is_err());
        let single = FlipDigraph::new(
            Instance::new(&sig("-"), IndexPair::new(vec![0], vec![1]).unwrap()).unwrap(),
        )
        .unwrap();
        assert_eq!(mixed_subdivision(&single).cells[0].points, vec![vec![1]]);
    }
}

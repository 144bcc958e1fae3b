//! Tropical realization: hyperplanes `H_{i•}`, cells `g(F)` and tree points
//! `g(T)` in `R^{J∘}` normalized by `x_{max J∘} = 0`.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::forest::{Forest, IndexPair, Instance, Tree};
use crate::par;
use crate::poset::FlipDigraph;
use crate::polygon::Sign;
use crate::simplicial::Lift;
use crate::surd::Surd;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalPoint {
    white: Vec<usize>,
    coords: Vec<Surd>,
}

impl TropicalPoint {
    pub fn new(white: Vec<usize>, coords: Vec<Surd>) -> Result<Self> {
        if white.len() != coords.len() || white.is_empty() {
            return Err(Error::Domain("coordinates must match J∘".into()));
        }
        if !coords.last().unwrap().is_zero() {
            return Err(Error::Domain("the coordinate of max J∘ must be 0".into()));
        }
        Ok(TropicalPoint { white, coords })
    }

    pub fn white(&self) -> &[usize] {
        &self.white
    }

    pub fn coords(&self) -> &[Surd] {
        &self.coords
    }

    /// Coordinate at `j∘`.
    pub fn get(&self, j: usize) -> Option<&Surd> {
        self.white.binary_search(&j).ok().map(|k| &self.coords[k])
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(Surd::to_f64).collect()
    }
}

/// `g(T)`: signed sums of `h` along tree paths to `max J∘`, with `−h` when an
/// edge is walked from its black end to its white end.
pub fn tropical_point(inst: &Instance, tree: &Tree, lift: &Lift) -> Result<TropicalPoint> {
    let pair = inst.pair();
    let nb = pair.black().len();
    let total = nb + pair.white().len();
    let node_of_black = |i: usize| pair.black().binary_search(&i).ok();
    let node_of_white = |j: usize| pair.white().binary_search(&j).ok().map(|k| nb + k);
    let mut adj: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); total];
    for &e in tree.edges() {
        let (Some(b), Some(w)) = (node_of_black(e.black()), node_of_white(e.white())) else {
            return Err(Error::UnknownEdge(e));
        };
        adj[b].push((w, e.black(), e.white()));
        adj[w].push((b, e.black(), e.white()));
    }
    let mut value: Vec<Option<Surd>> = vec![None; total];
    let root = total - 1;
    value[root] = Some(Surd::zero());
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        let here = value[v].clone().unwrap();
        for &(u, i, j) in &adj[v] {
            if value[u].is_some() {
                continue;
            }
            let h = lift
                .get(i, j)
                .ok_or_else(|| Error::Domain(format!("lift undefined at ({i}•,{j}∘)")))?;
            // walking u → v: from the black end when u is black
            value[u] = Some(if u < nb { &here - h } else { &here + h });
            stack.push(u);
        }
    }
    let coords = value[nb..]
        .iter()
        .map(|v| v.clone().ok_or_else(|| Error::Domain(format!("{tree} is disconnected"))))
        .collect::<Result<Vec<_>>>()?;
    if value[..nb].iter().any(Option::is_none) {
        return Err(Error::Domain(format!("{tree} is disconnected")));
    }
    TropicalPoint::new(pair.white().to_vec(), coords)
}

pub fn tropical_points(g: &FlipDigraph, lift: &Lift) -> Result<Vec<TropicalPoint>> {
    par::map(g.trees(), |t| tropical_point(g.instance(), t, lift))
        .into_iter()
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HyperplaneKind {
    /// Every `h(i•, j∘)` is finite.
    Full,
    /// Some but at least two entries are finite.
    Degenerate,
    /// At most one finite entry: the maximum is never attained twice.
    AtInfinity,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hyperplane {
    pub black: usize,
    pub kind: HyperplaneKind,
    pub apex: Vec<Option<String>>,
}

pub fn hyperplanes(pair: &IndexPair, lift: &Lift) -> Vec<Hyperplane> {
    pair.black()
        .iter()
        .map(|&i| {
            let apex: Vec<Option<&Surd>> = pair.white().iter().map(|&j| lift.get(i, j)).collect();
            let finite = apex.iter().flatten().count();
            let kind = if finite == apex.len() {
                HyperplaneKind::Full
            } else if finite >= 2 {
                HyperplaneKind::Degenerate
            } else {
                HyperplaneKind::AtInfinity
            };
            Hyperplane {
                black: i,
                kind,
                apex: apex.iter().map(|h| h.map(Surd::to_string)).collect(),
            }
        })
        .collect()
}

/// Whether `max_j (p_j − h(i•, j∘))` is attained at least twice.
pub fn hyperplane_contains(black: usize, p: &TropicalPoint, lift: &Lift) -> bool {
    let shifted: Vec<Surd> = p
        .white()
        .iter()
        .zip(p.coords())
        .filter_map(|(&j, x)| lift.get(black, j).map(|h| x - h))
        .collect();
    let Some(best) = shifted.iter().max() else {
        return false;
    };
    shifted.iter().filter(|&s| s == best).count() >= 2
}

/// `x_{upper} − x_{lower} ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub upper: usize,
    pub lower: usize,
    pub bound: Surd,
}

#[derive(Clone, Debug)]
pub struct FacePolyhedron {
    white: Vec<usize>,
    constraints: Vec<Constraint>,
}

pub fn face_polyhedron(pair: &IndexPair, forest: &Forest, lift: &Lift) -> Result<FacePolyhedron> {
    let mut constraints = Vec::new();
    for &e in forest.edges() {
        let hij = lift.value(e).ok_or(Error::UnknownEdge(e))?;
        for &k in pair.white() {
            if k == e.white() {
                continue;
            }
            if let Some(hik) = lift.get(e.black(), k) {
                constraints.push(Constraint {
                    upper: k,
                    lower: e.white(),
                    bound: hik - hij,
                });
            }
        }
    }
    Ok(FacePolyhedron {
        white: pair.white().to_vec(),
        constraints,
    })
}

impl FacePolyhedron {
    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn contains(&self, p: &TropicalPoint) -> bool {
        self.constraints.iter().all(|c| match (p.get(c.upper), p.get(c.lower)) {
            (Some(a), Some(b)) => (a - b) <= c.bound,
            _ => false,
        })
    }

    /// Vertices of the planar polyhedron (`|J∘| = 3`), as `(x_{j₁}, x_{j₂})`.
    pub fn planar_vertices(&self) -> Result<Vec<[Surd; 2]>> {
        if self.white.len() != 3 {
            return Err(Error::Domain(format!(
                "planar vertices need |J∘| = 3, got {}",
                self.white.len()
            )));
        }
        // α u + β v ≤ c over (u, v) = (x_{j₁}, x_{j₂})
        let lines: Vec<(i64, i64, &Surd)> = self
            .constraints
            .iter()
            .map(|c| {
                let mut coef = [0i64; 3];
                coef[self.white.binary_search(&c.upper).unwrap()] += 1;
                coef[self.white.binary_search(&c.lower).unwrap()] -= 1;
                (coef[0], coef[1], &c.bound)
            })
            .collect();
        let mut out: Vec<[Surd; 2]> = Vec::new();
        for a in 0..lines.len() {
            for b in a + 1..lines.len() {
                let (a1, b1, c1) = lines[a];
                let (a2, b2, c2) = lines[b];
                let det = a1 * b2 - a2 * b1;
                if det == 0 {
                    continue;
                }
                let inv = Surd::integer(det);
                let u = &(&(c1 * &Surd::integer(b2)) - &(c2 * &Surd::integer(b1))) * &inv;
                let v = &(&(c2 * &Surd::integer(a1)) - &(c1 * &Surd::integer(a2))) * &inv;
                // det is ±1, so multiplying by it divides by it
                let feasible = lines.iter().all(|&(al, be, c)| {
                    &(&(&Surd::integer(al) * &u) + &(&Surd::integer(be) * &v)) <= c
                });
                let p = [u, v];
                if feasible && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        Ok(out)
    }
}

fn affine_dimension(points: &[[Surd; 2]]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let Some(second) = rest.iter().find(|p| *p != first) else {
        return 0;
    };
    let d1 = [&second[0] - &first[0], &second[1] - &first[1]];
    let collinear = rest.iter().all(|p| {
        let d = [&p[0] - &first[0], &p[1] - &first[1]];
        (&(&d1[0] * &d[1]) - &(&d1[1] * &d[0])).is_zero()
    });
    if collinear {
        1
    } else {
        2
    }
}

fn covers_all_nodes(inst: &Instance, set: EdgeSet) -> bool {
    let edges = inst.edges_of(set);
    inst.pair().black().iter().all(|&i| edges.iter().any(|e| e.black() == i))
        && inst.pair().white().iter().all(|&j| edges.iter().any(|e| e.white() == j))
}

/// Masks of internal forests, sorted by size then canonically: every tree
/// containing the forest can flip each of its remaining edges, and every node
/// is covered.
pub fn internal_forest_masks(inst: &Instance, trees: &[EdgeSet]) -> Vec<EdgeSet> {
    let flippable: Vec<EdgeSet> = trees.iter().map(|&t| inst.flippable_mask(t)).collect();
    let mut candidates = HashSet::new();
    for (&t, &fl) in trees.iter().zip(&flippable) {
        let fixed = t - fl;
        for s in fl.subsets() {
            candidates.insert(fixed | s);
        }
    }
    let mut out: Vec<EdgeSet> = candidates
        .into_iter()
        .filter(|&f| covers_all_nodes(inst, f))
        .filter(|&f| {
            trees
                .iter()
                .zip(&flippable)
                .all(|(&t, &fl)| !f.is_subset(t) || (t - f).is_subset(fl))
        })
        .collect();
    out.sort_by_key(|f| (f.len(), inst.forest(*f)));
    out
}

pub fn internal_forests(inst: &Instance) -> Vec<Forest> {
    let trees = inst.tree_masks();
    internal_forest_masks(inst, &trees)
        .into_iter()
        .map(|f| inst.forest(f))
        .collect()
}

/// `Σ_{j∘ ≠ max J∘} ε_j x_{j∘}`.
pub fn orientation_functional(inst: &Instance, p: &TropicalPoint) -> Surd {
    let mut total = Surd::zero();
    for (&j, x) in p.white().iter().zip(p.coords()).take(p.white().len() - 1) {
        match inst.signature().sign(j) {
            Sign::Plus => total += x,
            Sign::Minus => total += &-x,
        }
    }
    total
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexReport {
    pub hyperplanes: Vec<Hyperplane>,
    pub vertices: usize,
    pub edges: usize,
    pub flips: usize,
    /// Internal forest counts keyed by the cell dimension `tree size − |F|`.
    pub cells_by_dimension: BTreeMap<usize, usize>,
    pub points_distinct: bool,
    pub vertex_sets_match: bool,
    pub edges_are_flips: bool,
    pub anti_isomorphic: bool,
    /// Arcs along which the orientation functional stays constant.
    pub flat_arcs: Vec<[usize; 2]>,
    pub decreasing_arcs: Vec<[usize; 2]>,
    /// Exact planar check of vertices and dimensions, when `|J∘| = 3`.
    pub planar_geometry: Option<bool>,
}

impl ComplexReport {
    pub fn strictly_monotone(&self) -> bool {
        self.flat_arcs.is_empty() && self.decreasing_arcs.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.points_distinct
            && self.vertex_sets_match
            && self.edges_are_flips
            && self.anti_isomorphic
            && self.vertices == self.cells_by_dimension.get(&0).copied().unwrap_or(0)
            && self.edges == self.flips
            && self.planar_geometry != Some(false)
    }
}

pub fn associahedron_complex(g: &FlipDigraph, lift: &Lift) -> Result<ComplexReport> {
    let inst = g.instance();
    let pair = inst.pair();
    let points = tropical_points(g, lift)?;
    let masks = g.masks();
    let internal = internal_forest_masks(inst, masks);
    let size = inst.tree_size();

    let mut cells_by_dimension = BTreeMap::new();
    for f in &internal {
        *cells_by_dimension.entry(size - f.len()).or_insert(0) += 1;
    }
    let containing: Vec<Vec<usize>> = internal
        .iter()
        .map(|&f| (0..masks.len()).filter(|&t| f.is_subset(masks[t])).collect())
        .collect();

    let checks = par::map(&internal, |&f| -> Result<(bool, Option<bool>)> {
        let poly = face_polyhedron(pair, &inst.forest(f), lift)?;
        let members: Vec<usize> = (0..points.len()).filter(|&t| poly.contains(&points[t])).collect();
        let expected: Vec<usize> = (0..masks.len()).filter(|&t| f.is_subset(masks[t])).collect();
        let planar = if pair.white().len() == 3 {
            let mut vertices = poly.planar_vertices()?;
            let mut tree_points: Vec<[Surd; 2]> = expected
                .iter()
                .map(|&t| [points[t].coords()[0].clone(), points[t].coords()[1].clone()])
                .collect();
            tree_points.dedup();
            let key = |p: &[Surd; 2]| (p[0].to_f64().to_bits(), p[1].to_f64().to_bits());
            vertices.sort_by_key(key);
            tree_points.sort_by_key(key);
            Some(vertices == tree_points && affine_dimension(&vertices) == size - f.len())
        } else {
            None
        };
        Ok((members == expected, planar))
    });
    let mut vertex_sets_match = true;
    let mut planar_geometry = (pair.white().len() == 3).then_some(true);
    for c in checks {
        let (members, planar) = c?;
        vertex_sets_match &= members;
        if let (Some(acc), Some(p)) = (planar_geometry.as_mut(), planar) {
            *acc &= p;
        }
    }

    let flip_pairs: HashSet<(usize, usize)> =
        g.arcs().iter().map(|a| (a.from.min(a.to), a.from.max(a.to))).collect();
    let edge_cells: Vec<&Vec<usize>> = internal
        .iter()
        .zip(&containing)
        .filter(|(f, _)| f.len() + 1 == size)
        .map(|(_, c)| c)
        .collect();
    let edges_are_flips = edge_cells.len() == flip_pairs.len()
        && edge_cells
            .iter()
            .all(|c| c.len() == 2 && flip_pairs.contains(&(c[0], c[1])));

    let mut anti_isomorphic = true;
    for a in 0..internal.len() {
        for b in 0..internal.len() {
            let cells = containing[a].iter().all(|t| containing[b].contains(t));
            anti_isomorphic &= cells == internal[b].is_subset(internal[a]);
        }
    }

    let distinct: HashSet<&TropicalPoint> = points.iter().collect();
    let values: Vec<Surd> = points.iter().map(|p| orientation_functional(inst, p)).collect();
    let mut flat_arcs = Vec::new();
    let mut decreasing_arcs = Vec::new();
    for a in g.arcs() {
        match values[a.from].cmp(&values[a.to]) {
            std::cmp::Ordering::Less => {}
            std::cmp::Ordering::Equal => flat_arcs.push([a.from, a.to]),
            std::cmp::Ordering::Greater => decreasing_arcs.push([a.from, a.to]),
        }
    }

    Ok(ComplexReport {
        hyperplanes: hyperplanes(pair, lift),
        vertices: points.len(),
        edges: edge_cells.len(),
        flips: g.arcs().len(),
        cells_by_dimension,
        points_distinct: distinct.len() == points.len(),
        vertex_sets_match,
        edges_are_flips,
        anti_isomorphic,
        flat_arcs,
        decreasing_arcs,
        planar_geometry,
    })
}

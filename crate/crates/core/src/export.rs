//! JSON, DOT and SVG renderings. Every writer is deterministic: fixed key
//! order, fixed float formatting, canonical tree order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forest::{Forest, IndexPair, Instance, Tree};
use crate::poset::FlipDigraph;
use crate::polygon::{Edge, Signature};
use crate::simplicial::{mixed_subdivision, Lift};
use crate::tropical::{
    face_polyhedron, hyperplanes, internal_forest_masks, tropical_points, HyperplaneKind,
};

/// `{"signature", "black", "white", "edges"}` with edges sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestRecord {
    pub signature: String,
    pub black: Vec<usize>,
    pub white: Vec<usize>,
    pub edges: Forest,
}

impl ForestRecord {
    pub fn new(inst: &Instance, forest: Forest) -> Self {
        ForestRecord {
            signature: inst.signature().to_string(),
            black: inst.pair().black().to_vec(),
            white: inst.pair().white().to_vec(),
            edges: forest,
        }
    }

    /// Rebuilds the instance and checks the edges form a forest of it.
    pub fn instance(&self) -> Result<(Instance, Forest)> {
        let sig = Signature::parse(&self.signature)?;
        let inst = Instance::new(&sig, IndexPair::new(self.black.clone(), self.white.clone())?)?;
        inst.forest_mask(&self.edges)?;
        Ok((inst, self.edges.clone()))
    }
}

/// All trees of an instance, as printed by `enumerate`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeListing {
    pub signature: String,
    pub black: Vec<usize>,
    pub white: Vec<usize>,
    pub count: usize,
    pub trees: Vec<Forest>,
}

impl TreeListing {
    pub fn new(inst: &Instance, trees: Vec<Tree>) -> Self {
        TreeListing {
            signature: inst.signature().to_string(),
            black: inst.pair().black().to_vec(),
            white: inst.pair().white().to_vec(),
            count: trees.len(),
            trees: trees.iter().map(Tree::as_forest).collect(),
        }
    }

    /// Rebuilds the instance and checks every entry is one of its trees.
    pub fn instance(&self) -> Result<(Instance, Vec<Tree>)> {
        let sig = Signature::parse(&self.signature)?;
        let inst = Instance::new(&sig, IndexPair::new(self.black.clone(), self.white.clone())?)?;
        let trees = self
            .trees
            .iter()
            .map(|f| {
                let m = inst.forest_mask(f)?;
                if inst.is_tree_mask(m) {
                    Ok(inst.tree(m))
                } else {
                    Err(Error::NotForest(format!("{} entries do not form a tree", f.len())))
                }
            })
            .collect::<Result<_>>()?;
        Ok((inst, trees))
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Simplices of the triangulation as sorted indices into the vertex list of `U`.
#[derive(Clone, Debug, Serialize)]
pub struct SimplexListing {
    pub vertices: Vec<Edge>,
    pub simplices: Vec<Vec<usize>>,
}

pub fn simplex_listing(g: &FlipDigraph) -> SimplexListing {
    let inst = g.instance();
    SimplexListing {
        vertices: inst.edges().to_vec(),
        simplices: g.masks().iter().map(|m| m.iter().collect()).collect(),
    }
}

/// `{tree id → coordinates}` as decimal strings.
pub fn tropical_json(g: &FlipDigraph, lift: &Lift, digits: u32) -> Result<String> {
    let points = tropical_points(g, lift)?;
    let map: BTreeMap<usize, Vec<String>> = points
        .iter()
        .enumerate()
        .map(|(k, p)| (k, p.coords().iter().map(|x| x.to_decimal(digits)).collect()))
        .collect();
    Ok(to_json(&map))
}

fn edge_list(edges: &[Edge]) -> String {
    edges.iter().map(Edge::to_string).collect::<Vec<_>>().join(" ")
}

pub fn to_dot(g: &FlipDigraph) -> String {
    let mut out = String::from("digraph flips {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n");
    for (k, t) in g.trees().iter().enumerate() {
        let _ = writeln!(out, "  t{k} [label=\"{}\"];", edge_list(t.edges()));
    }
    for a in g.arcs() {
        let _ = writeln!(
            out,
            "  t{} -> t{} [leaving=\"{}\", entering=\"{}\"];",
            a.from, a.to, a.leaving, a.entering
        );
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn svg_open(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

/// Hasse diagram with trees layered by longest increasing path from the source.
pub fn svg_lattice(g: &FlipDigraph) -> String {
    let mut level = vec![0usize; g.len()];
    loop {
        let mut changed = false;
        for a in g.arcs() {
            if level[a.to] < level[a.from] + 1 {
                level[a.to] = level[a.from] + 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let depth = level.iter().copied().max().unwrap_or(0);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); depth + 1];
    for (k, &l) in level.iter().enumerate() {
        rows[l].push(k);
    }
    let widest = rows.iter().map(Vec::len).max().unwrap_or(1);
    let (dx, dy, margin) = (60.0, 60.0, 30.0);
    let width = 2.0 * margin + dx * widest.saturating_sub(1) as f64;
    let height = 2.0 * margin + dy * depth as f64;
    let mut pos = vec![(0.0, 0.0); g.len()];
    for (l, row) in rows.iter().enumerate() {
        let offset = (widest - row.len()) as f64 * dx / 2.0;
        for (c, &k) in row.iter().enumerate() {
            pos[k] = (margin + offset + dx * c as f64, height - margin - dy * l as f64);
        }
    }
    let mut out = svg_open(width, height);
    for a in g.arcs() {
        let (p, q) = (pos[a.from], pos[a.to]);
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"><title>{} → {}</title></line>",
            p.0, p.1, q.0, q.1, a.leaving, a.entering
        );
    }
    for (k, t) in g.trees().iter().enumerate() {
        let (x, y) = pos[k];
        let _ = writeln!(
            out,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"6\" fill=\"steelblue\"><title>t{k}: {}</title></circle>",
            escape(&edge_list(t.edges()))
        );
    }
    out.push_str("</svg>\n");
    out
}

fn need_planar(inst: &Instance) -> Result<()> {
    if inst.pair().white().len() != 3 {
        return Err(Error::Domain(format!(
            "planar export needs |J∘| = 3, got {}",
            inst.pair().white().len()
        )));
    }
    Ok(())
}

/// Barycentric picture of the plane `x₁ + x₂ + x₃ = |I•|`.
fn triangle_point(u: f64, v: f64, scale: f64, origin: (f64, f64)) -> (f64, f64) {
    let x = origin.0 + scale * (u + v / 2.0);
    let y = origin.1 - scale * v * 3f64.sqrt() / 2.0;
    (x, y)
}

fn polygon_points(points: &[(f64, f64)]) -> String {
    points
        .iter()
        .map(|(x, y)| format!("{x:.2},{y:.2}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn svg_mixed(g: &FlipDigraph) -> Result<String> {
    need_planar(g.instance())?;
    let planar = mixed_subdivision(g).planar()?;
    let size = g.instance().pair().black().len() as f64;
    let scale = 360.0 / size.max(1.0);
    let margin = 20.0;
    let width = 2.0 * margin + scale * size;
    let height = 2.0 * margin + scale * size * 3f64.sqrt() / 2.0;
    let origin = (margin, height - margin);
    let draw = |poly: &[(i64, i64)]| -> String {
        let pts: Vec<(f64, f64)> = poly
            .iter()
            .map(|&(u, v)| triangle_point(u as f64, v as f64, scale, origin))
            .collect();
        polygon_points(&pts)
    };
    let mut out = svg_open(width, height);
    let _ = writeln!(
        out,
        "<polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>",
        draw(&planar.ambient)
    );
    for (k, cell) in planar.cells.iter().enumerate() {
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"lightyellow\" stroke=\"gray\"><title>t{k}: {}</title></polygon>",
            draw(cell),
            escape(&edge_list(g.trees()[k].edges()))
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn svg_tropical(g: &FlipDigraph, lift: &Lift) -> Result<String> {
    let inst = g.instance();
    need_planar(inst)?;
    let pair = inst.pair();
    let points: Vec<(f64, f64)> = tropical_points(g, lift)?
        .iter()
        .map(|p| {
            let c = p.to_f64();
            (c[0], c[1])
        })
        .collect();
    let hyper = hyperplanes(pair, lift);
    let apexes: Vec<Vec<Option<f64>>> = pair
        .black()
        .iter()
        .map(|&i| pair.white().iter().map(|&j| lift.get(i, j).map(|h| h.to_f64())).collect())
        .collect();

    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    let mut grow = |p: (f64, f64)| {
        lo = (lo.0.min(p.0), lo.1.min(p.1));
        hi = (hi.0.max(p.0), hi.1.max(p.1));
    };
    points.iter().for_each(|&p| grow(p));
    for a in &apexes {
        if let [Some(h1), Some(h2), Some(h3)] = a[..] {
            grow((h1 - h3, h2 - h3));
        }
    }
    let pad = 1.0 + 0.25 * (hi.0 - lo.0).max(hi.1 - lo.1);
    let (lo, hi) = ((lo.0 - pad, lo.1 - pad), (hi.0 + pad, hi.1 + pad));
    let scale = 400.0 / (hi.0 - lo.0).max(hi.1 - lo.1);
    let margin = 20.0;
    let width = 2.0 * margin + scale * (hi.0 - lo.0);
    let height = 2.0 * margin + scale * (hi.1 - lo.1) + 20.0 * hyper.len() as f64;
    let map = |p: (f64, f64)| (margin + scale * (p.0 - lo.0), margin + scale * (hi.1 - p.1));
    // a ray from `p` along `d`, cut at the bounding box
    let ray = |p: (f64, f64), d: (f64, f64)| -> (f64, f64) {
        let mut t = f64::MAX;
        for (pc, dc, l, h) in [(p.0, d.0, lo.0, hi.0), (p.1, d.1, lo.1, hi.1)] {
            if dc > 0.0 {
                t = t.min((h - pc) / dc);
            } else if dc < 0.0 {
                t = t.min((l - pc) / dc);
            }
        }
        (p.0 + t.max(0.0) * d.0, p.1 + t.max(0.0) * d.1)
    };

    let mut out = svg_open(width, height);
    let line = |out: &mut String, a: (f64, f64), b: (f64, f64), class: &str, black: usize| {
        let (p, q) = (map(a), map(b));
        let _ = writeln!(
            out,
            "<line class=\"{class}\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"darkred\"><title>H{black}•</title></line>",
            p.0, p.1, q.0, q.1
        );
    };
    for (hp, a) in hyper.iter().zip(&apexes) {
        let _ = writeln!(out, "<g class=\"hyperplane {:?}\" data-black=\"{}\">", hp.kind, hp.black);
        match (hp.kind, &a[..]) {
            (HyperplaneKind::Full, &[Some(h1), Some(h2), Some(h3)]) => {
                let apex = (h1 - h3, h2 - h3);
                for d in [(1.0, 1.0), (0.0, -1.0), (-1.0, 0.0)] {
                    line(&mut out, apex, ray(apex, d), "ray", hp.black);
                }
            }
            (HyperplaneKind::Degenerate, coords) => {
                // the two finite entries tie along a full line
                let finite: Vec<(usize, f64)> =
                    coords.iter().enumerate().filter_map(|(k, h)| h.map(|h| (k, h))).collect();
                let (anchor, dir) = match (finite[0], finite[1]) {
                    ((0, h1), (1, h2)) => ((h1 - h2, 0.0), (1.0, 1.0)),
                    ((0, h1), (2, h3)) => ((h1 - h3, 0.0), (0.0, 1.0)),
                    (_, (_, h3)) => ((0.0, finite[0].1 - h3), (1.0, 0.0)),
                };
                let back = (-dir.0, -dir.1);
                line(&mut out, ray(anchor, back), ray(anchor, dir), "degenerate", hp.black);
            }
            _ => {}
        }
        out.push_str("</g>\n");
    }
    let internal = internal_forest_masks(inst, g.masks());
    for f in internal.iter().filter(|f| f.len() + 2 == inst.tree_size()) {
        let poly = face_polyhedron(pair, &inst.forest(*f), lift)?;
        let mut vs: Vec<(f64, f64)> = poly
            .planar_vertices()?
            .iter()
            .map(|p| (p[0].to_f64(), p[1].to_f64()))
            .collect();
        let c = vs.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        let c = (c.0 / vs.len() as f64, c.1 / vs.len() as f64);
        vs.sort_by(|p, q| {
            let a = (p.1 - c.1).atan2(p.0 - c.0);
            let b = (q.1 - c.1).atan2(q.0 - c.0);
            a.total_cmp(&b)
        });
        let pts: Vec<(f64, f64)> = vs.into_iter().map(map).collect();
        let _ = writeln!(
            out,
            "<polygon class=\"cell\" points=\"{}\" fill=\"lightblue\" fill-opacity=\"0.5\" stroke=\"navy\"/>",
            polygon_points(&pts)
        );
    }
    for (k, &p) in points.iter().enumerate() {
        let (x, y) = map(p);
        let _ = writeln!(
            out,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"black\"><title>t{k}</title></circle>\n<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\">t{k}</text>",
            x + 5.0,
            y - 5.0
        );
    }
    let mut y = margin + scale * (hi.1 - lo.1) + 15.0;
    for hp in &hyper {
        let note = match hp.kind {
            HyperplaneKind::Full => continue,
            HyperplaneKind::Degenerate => "degenerate",
            HyperplaneKind::AtInfinity => "at infinity",
        };
        let _ = writeln!(
            out,
            "<text class=\"note\" x=\"{margin:.2}\" y=\"{y:.2}\" font-size=\"12\">H{}• is {note}</text>",
            hp.black
        );
        y += 20.0;
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{build_lift, LiftKind};

    fn fig9() -> FlipDigraph {
        let pair = IndexPair::new(vec![0, 1, 2, 4, 5, 7, 8], vec![3, 6, 9]).unwrap();
        FlipDigraph::new(Instance::new(&"-++-+--+".parse().unwrap(), pair).unwrap()).unwrap()
    }

    #[test]
    fn forest_record_round_trip() {
        let g = fig9();
        let t = g.trees()[3].clone();
        let rec = ForestRecord::new(g.instance(), t.as_forest());
        let text = to_json(&rec);
        assert!(text.contains("\"signature\": \"-++-+--+\""));
        let back: ForestRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.instance().unwrap().1, t.as_forest());
        let listing = TreeListing::new(g.instance(), g.trees().to_vec());
        let parsed: TreeListing = serde_json::from_str(&to_json(&listing)).unwrap();
        assert_eq!(parsed, listing);
        assert_eq!(parsed.instance().unwrap().1, g.trees());
    }

    #[test]
    fn dot_counts() {
        let g = fig9();
        let dot = to_dot(&g);
        assert_eq!(dot.matches(" [label=").count(), g.len());
        assert_eq!(dot.matches("leaving=").count(), g.arcs().len());
    }

    #[test]
    fn svgs_are_stable() {
        let g = fig9();
        let lift = build_lift(g.instance(), LiftKind::Sqrt).unwrap();
        let a = svg_tropical(&g, &lift).unwrap();
        assert_eq!(a, svg_tropical(&g, &lift).unwrap());
        assert_eq!(a.matches("<g class=\"hyperplane Full\"").count(), 3);
        assert_eq!(a.matches("class=\"degenerate\"").count(), 2);
        assert_eq!(a.matches("is at infinity").count(), 2);
        assert_eq!(a.matches("class=\"cell\"").count(), 5);
        let m = svg_mixed(&g).unwrap();
        assert_eq!(m.matches("<title>t").count(), g.len());
        assert_eq!(svg_lattice(&g).matches("<circle").count(), g.len());
        let wide = FlipDigraph::new(Instance::full(&"---".parse().unwrap()).unwrap()).unwrap();
        assert!(svg_mixed(&wide).is_err());
    }

    #[test]
    fn tropical_dump() {
        let g = fig9();
        let lift = build_lift(g.instance(), LiftKind::Sqrt).unwrap();
        let text = tropical_json(&g, &lift, 12).unwrap();
        let map: BTreeMap<usize, Vec<String>> = serde_json::from_str(&text).unwrap();
        assert_eq!(map.len(), g.len());
        assert!(map.values().any(|v| v == &["-1.000000000000", "0.732050807569", "0.000000000000"]));
    }
}

//! Signatures and the two polygons they shape.
//!
//! A signature `ε ∈ {±}^n` places the square vertices `1□ … n□` above (`+`)
//! or below (`−`) the segment joining `0□` and `(n+1)□`. The black/white
//! polygon splits every inner square vertex `i□` into the pair `i∘, i•`.
//!
//! Coordinates are fixed once and for all: square vertex `i□` sits at
//! `(i, ε_i · i · (n+1−i))`, and the pair `i∘, i•` sits on the same parabola
//! at abscissae `i − 1/4` and `i + 1/4`. Every predicate below runs on the
//! coordinates scaled by `(4, 16)`, which are integers, so all geometry is
//! exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("empty signature")]
    Empty,
    #[error("invalid character {found:?} at position {position} (expected '-' or '+')")]
    InvalidChar { position: usize, found: char },
}

/// A word `ε ∈ {±}^n` with `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<Sign>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reflection {
    /// `ε̄_k = −ε_k`
    Horizontal,
    /// `ε⃡_k = ε_{n+1−k}`
    Vertical,
}

impl Signature {
    pub fn new(signs: Vec<Sign>) -> Result<Self, SignatureError> {
        if signs.is_empty() {
            return Err(SignatureError::Empty);
        }
        Ok(Signature(signs))
    }

    /// Parses `'-'`/`'+'` text. Positions in errors are 1-based.
    pub fn parse(text: &str) -> Result<Self, SignatureError> {
        let signs = text
            .chars()
            .enumerate()
            .map(|(k, c)| match c {
                '-' | '\u{2212}' => Ok(Sign::Minus),
                '+' => Ok(Sign::Plus),
                found => Err(SignatureError::InvalidChar {
                    position: k + 1,
                    found,
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Signature::new(signs)
    }

    pub fn uniform(n: usize, sign: Sign) -> Self {
        assert!(n >= 1, "signature length must be positive");
        Signature(vec![sign; n])
    }

    /// All `2^n` signatures of length `n`, in lexicographic order (`−` < `+`).
    pub fn all(n: usize) -> impl Iterator<Item = Signature> {
        assert!((1..63).contains(&n), "signature length out of range");
        (0u64..1 << n).map(move |bits| {
            Signature(
                (0..n)
                    .map(|k| {
                        if bits >> (n - 1 - k) & 1 == 1 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect(),
            )
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `ε_i` for `1 ≤ i ≤ n`.
    pub fn sign(&self, i: usize) -> Sign {
        assert!(
            (1..=self.len()).contains(&i),
            "sign index {i} outside 1..={}",
            self.len()
        );
        self.0[i - 1]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn reflect(&self, mode: Reflection) -> Signature {
        match mode {
            Reflection::Horizontal => Signature(self.0.iter().map(|s| s.negate()).collect()),
            Reflection::Vertical => Signature(self.0.iter().rev().copied().collect()),
        }
    }
}

impl FromStr for Signature {
    type Err = SignatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Signature::parse(s)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.as_char()))
    }
}

pub fn parse_signature(text: &str) -> Result<Signature, SignatureError> {
    Signature::parse(text)
}

pub fn reflect(sig: &Signature, mode: Reflection) -> Signature {
    sig.reflect(mode)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecoratedVertex {
    /// `i•`, `0 ≤ i ≤ n`
    Black(usize),
    /// `j∘`, `1 ≤ j ≤ n+1`
    White(usize),
    /// `i□`, `0 ≤ i ≤ n+1`
    Square(usize),
}

impl fmt::Display for DecoratedVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoratedVertex::Black(i) => write!(f, "{i}•"),
            DecoratedVertex::White(j) => write!(f, "{j}∘"),
            DecoratedVertex::Square(i) => write!(f, "{i}□"),
        }
    }
}

/// An edge `(i•, j∘)` with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Edge {
    black: usize,
    white: usize,
}

impl Edge {
    /// Panics unless `black < white`.
    pub fn new(black: usize, white: usize) -> Self {
        Self::try_new(black, white)
            .unwrap_or_else(|| panic!("edge ({black}•, {white}∘) requires black < white"))
    }

    pub fn try_new(black: usize, white: usize) -> Option<Self> {
        (black < white).then_some(Edge { black, white })
    }

    pub fn black(self) -> usize {
        self.black
    }

    pub fn white(self) -> usize {
        self.white
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.black, e.white]
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = String;

    fn try_from([b, w]: [usize; 2]) -> Result<Self, Self::Error> {
        Edge::try_new(b, w).ok_or_else(|| format!("edge [{b}, {w}] requires black < white"))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}•,{}∘)", self.black, self.white)
    }
}

/// A diagonal or boundary edge `(i□, j□)` of the square polygon, `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareDiagonal {
    pub low: usize,
    pub high: usize,
}

impl SquareDiagonal {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "degenerate square diagonal ({a}□, {b}□)");
        SquareDiagonal {
            low: a.min(b),
            high: a.max(b),
        }
    }
}

impl fmt::Display for SquareDiagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}□,{}□)", self.low, self.high)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Point {
    pub x: Rational64,
    pub y: Rational64,
}

/// Exact coordinates of all decorated vertices of both polygons.
#[derive(Clone, Debug)]
pub struct PolygonEmbedding {
    n: usize,
    square: Vec<Point>,
    black: Vec<Point>,
    white: Vec<Point>,
}

impl PolygonEmbedding {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn point(&self, v: DecoratedVertex) -> Point {
        match v {
            DecoratedVertex::Black(i) => self.black[i],
            DecoratedVertex::White(j) => self.white[j - 1],
            DecoratedVertex::Square(i) => self.square[i],
        }
    }
}

/// Integer point in the `(4x, 16y)` scaled frame.
type IPoint = (i64, i64);

fn orient(a: IPoint, b: IPoint, c: IPoint) -> i64 {
    let v = (b.0 - a.0) as i128 * (c.1 - a.1) as i128 - (b.1 - a.1) as i128 * (c.0 - a.0) as i128;
    v.signum() as i64
}

/// Precomputed predicate context for one signature.
#[derive(Clone, Debug)]
pub struct Polygon {
    sig: Signature,
    black_pos: Vec<usize>,
    white_pos: Vec<usize>,
    square_pos: Vec<usize>,
    black_xy: Vec<IPoint>,
    white_xy: Vec<IPoint>,
    square_xy: Vec<IPoint>,
}

impl Polygon {
    pub fn new(sig: &Signature) -> Self {
        let n = sig.len();
        let m = n as i64 + 1;
        let lift = |x4: i64, s: Sign| s.as_i64() * x4 * (4 * m - x4);

        let mut black_xy = vec![(0, 0)];
        let mut white_xy = Vec::with_capacity(n + 1);
        let mut square_xy = vec![(0, 0)];
        for i in 1..=n {
            let s = sig.sign(i);
            let i = i as i64;
            black_xy.push((4 * i + 1, lift(4 * i + 1, s)));
            white_xy.push((4 * i - 1, lift(4 * i - 1, s)));
            square_xy.push((4 * i, lift(4 * i, s)));
        }
        white_xy.push((4 * m, 0));
        square_xy.push((4 * m, 0));

        let mut black_pos = vec![0; n + 1];
        let mut white_pos = vec![0; n + 1];
        for (k, v) in circle_order(sig).into_iter().enumerate() {
            match v {
                DecoratedVertex::Black(i) => black_pos[i] = k,
                DecoratedVertex::White(j) => white_pos[j - 1] = k,
                DecoratedVertex::Square(_) => unreachable!(),
            }
        }
        let mut square_pos = vec![0; n + 2];
        for (k, i) in square_order(sig).into_iter().enumerate() {
            square_pos[i] = k;
        }

        Polygon {
            sig: sig.clone(),
            black_pos,
            white_pos,
            square_pos,
            black_xy,
            white_xy,
            square_xy,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn n(&self) -> usize {
        self.sig.len()
    }

    fn ends(&self, e: Edge) -> (usize, usize) {
        (self.black_pos[e.black], self.white_pos[e.white - 1])
    }

    fn xy(&self, v: DecoratedVertex) -> IPoint {
        match v {
            DecoratedVertex::Black(i) => self.black_xy[i],
            DecoratedVertex::White(j) => self.white_xy[j - 1],
            DecoratedVertex::Square(i) => self.square_xy[i],
        }
    }

    /// Position of a black or white vertex along the boundary cycle.
    pub fn cyclic_position(&self, v: DecoratedVertex) -> usize {
        match v {
            DecoratedVertex::Black(i) => self.black_pos[i],
            DecoratedVertex::White(j) => self.white_pos[j - 1],
            DecoratedVertex::Square(i) => self.square_pos[i],
        }
    }

    /// Interior crossing, decided by strict interleaving along the boundary.
    pub fn edges_cross(&self, e1: Edge, e2: Edge) -> bool {
        if e1.black == e2.black || e1.white == e2.white {
            return false;
        }
        interleave(self.ends(e1), self.ends(e2))
    }

    /// Interior crossing, decided by exact segment intersection.
    pub fn segments_cross(&self, e1: Edge, e2: Edge) -> bool {
        let (a, b) = (self.black_xy[e1.black], self.white_xy[e1.white - 1]);
        let (c, d) = (self.black_xy[e2.black], self.white_xy[e2.white - 1]);
        orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0
    }

    pub fn squares_cross(&self, d1: SquareDiagonal, d2: SquareDiagonal) -> bool {
        let shared = [d1.low, d1.high].iter().any(|v| *v == d2.low || *v == d2.high);
        if shared {
            return false;
        }
        let p = |d: SquareDiagonal| (self.square_pos[d.low], self.square_pos[d.high]);
        interleave(p(d1), p(d2))
    }

    /// Exact slope comparison of the straight edges.
    pub fn compare_slopes(&self, e1: Edge, e2: Edge) -> Ordering {
        let (a, b) = (self.black_xy[e1.black], self.white_xy[e1.white - 1]);
        let (c, d) = (self.black_xy[e2.black], self.white_xy[e2.white - 1]);
        let (dx1, dy1) = ((b.0 - a.0) as i128, (b.1 - a.1) as i128);
        let (dx2, dy2) = ((d.0 - c.0) as i128, (d.1 - c.1) as i128);
        // black abscissae never meet white ones, and i < j puts the white end right
        debug_assert!(dx1 > 0 && dx2 > 0);
        (dy1 * dx2).cmp(&(dy2 * dx1))
    }

    /// Slope of an edge in the unscaled frame, as an exact fraction `(num, den)`.
    pub fn slope(&self, e: Edge) -> (i64, i64) {
        let (a, b) = (self.black_xy[e.black], self.white_xy[e.white - 1]);
        // scaled slope is 4 times the true slope
        (b.1 - a.1, 4 * (b.0 - a.0))
    }

    /// Sign of the orientation of `(a, b, c)`: `1` counterclockwise, `-1` clockwise.
    pub fn orientation(&self, a: DecoratedVertex, b: DecoratedVertex, c: DecoratedVertex) -> i64 {
        orient(self.xy(a), self.xy(b), self.xy(c))
    }

    /// Minimum number of square vertices strictly inside either boundary arc cut by `(a□, b□)`.
    pub fn ell(&self, d: SquareDiagonal) -> usize {
        let (p, q) = (self.square_pos[d.low], self.square_pos[d.high]);
        let inside = p.abs_diff(q) - 1;
        inside.min(self.n() - inside)
    }

    pub fn embedding(&self) -> PolygonEmbedding {
        let to_point = |(x, y): IPoint| Point {
            x: Rational64::new(x, 4),
            y: Rational64::new(y, 16),
        };
        PolygonEmbedding {
            n: self.n(),
            square: self.square_xy.iter().copied().map(to_point).collect(),
            black: self.black_xy.iter().copied().map(to_point).collect(),
            white: self.white_xy.iter().copied().map(to_point).collect(),
        }
    }
}

fn interleave((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    let inside = |x: usize| lo < x && x < hi;
    inside(c) != inside(d)
}

fn circle_order(sig: &Signature) -> Vec<DecoratedVertex> {
    let n = sig.len();
    let mut out = vec![DecoratedVertex::Black(0)];
    for i in (1..=n).filter(|&i| sig.sign(i) == Sign::Minus) {
        out.push(DecoratedVertex::White(i));
        out.push(DecoratedVertex::Black(i));
    }
    out.push(DecoratedVertex::White(n + 1));
    for i in (1..=n).rev().filter(|&i| sig.sign(i) == Sign::Plus) {
        out.push(DecoratedVertex::Black(i));
        out.push(DecoratedVertex::White(i));
    }
    out
}

fn square_order(sig: &Signature) -> Vec<usize> {
    let n = sig.len();
    let mut out = vec![0];
    out.extend((1..=n).filter(|&i| sig.sign(i) == Sign::Minus));
    out.push(n + 1);
    out.extend((1..=n).rev().filter(|&i| sig.sign(i) == Sign::Plus));
    out
}

/// Counterclockwise boundary cycle of the black/white polygon, starting at `0•`.
pub fn cyclic_boundary_order(sig: &Signature) -> Vec<DecoratedVertex> {
    circle_order(sig)
}

/// Counterclockwise boundary cycle of the square polygon, starting at `0□`.
pub fn square_boundary_order(sig: &Signature) -> Vec<DecoratedVertex> {
    square_order(sig)
        .into_iter()
        .map(DecoratedVertex::Square)
        .collect()
}

pub fn embed(sig: &Signature) -> PolygonEmbedding {
    Polygon::new(sig).embedding()
}

pub fn edges_cross(e1: Edge, e2: Edge, sig: &Signature) -> bool {
    Polygon::new(sig).edges_cross(e1, e2)
}

pub fn compare_slopes(e1: Edge, e2: Edge, sig: &Signature) -> Ordering {
    Polygon::new(sig).compare_slopes(e1, e2)
}

pub fn ell(d: SquareDiagonal, sig: &Signature) -> usize {
    Polygon::new(sig).ell(d)
}

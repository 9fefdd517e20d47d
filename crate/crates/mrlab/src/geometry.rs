//! Exact lattice geometry over the positive integer quadrant.
//!
//! Index sets live on the lattice `{(i,j) : i >= 1, j >= 1}`. Shapes carry
//! rational parameters and every membership predicate is decided in exact
//! rational arithmetic after clearing denominators; no floating point enters
//! this module. Closed shapes use weak inequalities; half-open boundary
//! conventions appear only inside decompositions so that piece lattice sets
//! partition their parent exactly.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub type Rat = Rational64;

/// Hard cap on `n` for line-cut enumeration of right-triangle families.
pub const DEFAULT_LINE_CUT_CAP: i64 = 64;

/// Parses an integer, a `p/q` fraction, or a plain decimal into a rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: i64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
        let den: i64 = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
        if den == 0 {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int_part: i64 = if int.is_empty() {
            0
        } else {
            int.parse()
                .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?
        };
        if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        let num: i64 = frac.parse().unwrap();
        let den = 10i64.pow(frac.len() as u32);
        let sign = if int.starts_with('-') { -1 } else { 1 };
        return Ok(Rat::from_integer(int_part) + Rat::new(sign * num, den));
    }
    let v: i64 = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(Rat::from_integer(v))
}

/// A point of the positive integer lattice. Axis points (`i = 0` or `j = 0`)
/// carry no coefficients and are not representable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GridPoint {
    pub i: i64,
    pub j: i64,
}

impl GridPoint {
    pub fn new(i: i64, j: i64) -> Result<Self> {
        if i < 1 || j < 1 {
            return Err(Error::InvalidShape(format!(
                "lattice point ({i},{j}) must have coordinates >= 1"
            )));
        }
        Ok(GridPoint { i, j })
    }

    /// Reflection across the diagonal `y = x`.
    pub fn reflected(self) -> Self {
        GridPoint {
            i: self.j,
            j: self.i,
        }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.i, self.j)
    }
}

/// Parses the `i:j` form produced by `Display`.
pub fn parse_point(s: &str) -> Result<GridPoint> {
    let (i, j) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("bad lattice point {s:?}, expected i:j")))?;
    let i: i64 = i
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad lattice point {s:?}")))?;
    let j: i64 = j
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad lattice point {s:?}")))?;
    GridPoint::new(i, j)
}

/// The closed triangle with vertices `(a,0)`, `(b,0)`, `(a,c)`:
/// vertical leg on `x = a`, horizontal leg on the axis, hypotenuse from
/// `(a,c)` down to `(b,0)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TriangleShape {
    a: Rat,
    b: Rat,
    c: Rat,
}

impl TriangleShape {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self> {
        if a.is_negative() || b < a || c.is_negative() {
            return Err(Error::InvalidShape(format!(
                "triangle needs 0 <= a <= b and c >= 0, got a={a}, b={b}, c={c}"
            )));
        }
        Ok(TriangleShape { a, b, c })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(
            Rat::from_integer(a),
            Rat::from_integer(b),
            Rat::from_integer(c),
        )
    }

    /// `Tri_{0,a,b}`: right triangle anchored at the origin with horizontal
    /// extent `a` and vertical extent `b`.
    pub fn anchored(a: Rat, b: Rat) -> Result<Self> {
        Self::new(Rat::zero(), a, b)
    }

    pub fn a(&self) -> Rat {
        self.a
    }
    pub fn b(&self) -> Rat {
        self.b
    }
    pub fn c(&self) -> Rat {
        self.c
    }

    /// Closed membership of a rational point, exact.
    pub fn contains_xy(&self, x: Rat, y: Rat) -> bool {
        if x < self.a || x > self.b || y.is_negative() || y > self.c {
            return false;
        }
        // (x - a) * c + y * (b - a) <= c * (b - a)
        (x - self.a) * self.c + y * (self.b - self.a) <= self.c * (self.b - self.a)
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        self.contains_xy(Rat::from_integer(p.i), Rat::from_integer(p.j))
    }

    /// All lattice points of the closed triangle in row-major order
    /// (by `i`, then by `j`).
    pub fn lattice_points(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        let i_lo = std::cmp::max(1, self.a.ceil().to_integer());
        let i_hi = self.b.floor().to_integer();
        let j_hi = self.c.floor().to_integer();
        for i in i_lo..=i_hi {
            for j in 1..=j_hi {
                let p = GridPoint { i, j };
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Continuous containment in another triangle, via convexity: the closed
    /// triangle is contained iff all three vertices are.
    pub fn contained_in(&self, outer: &TriangleShape) -> bool {
        outer.contains_xy(self.a, Rat::zero())
            && outer.contains_xy(self.b, Rat::zero())
            && outer.contains_xy(self.a, self.c)
    }
}

impl fmt::Display for TriangleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tri({},{},{})", self.a, self.b, self.c)
    }
}

/// Closed axis-aligned rectangle `[x0,x1] x [y0,y1]` with rational corners.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RectShape {
    x0: Rat,
    x1: Rat,
    y0: Rat,
    y1: Rat,
}

impl RectShape {
    pub fn new(x0: Rat, x1: Rat, y0: Rat, y1: Rat) -> Result<Self> {
        if x0.is_negative() || y0.is_negative() || x1 < x0 || y1 < y0 {
            return Err(Error::InvalidShape(format!(
                "rectangle needs 0 <= x0 <= x1 and 0 <= y0 <= y1, got [{x0},{x1}]x[{y0},{y1}]"
            )));
        }
        Ok(RectShape { x0, x1, y0, y1 })
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        let x = Rat::from_integer(p.i);
        let y = Rat::from_integer(p.j);
        x >= self.x0 && x <= self.x1 && y >= self.y0 && y <= self.y1
    }

    pub fn lattice_points(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        let i_lo = std::cmp::max(1, self.x0.ceil().to_integer());
        let i_hi = self.x1.floor().to_integer();
        let j_lo = std::cmp::max(1, self.y0.ceil().to_integer());
        let j_hi = self.y1.floor().to_integer();
        for i in i_lo..=i_hi {
            for j in j_lo..=j_hi {
                out.push(GridPoint { i, j });
            }
        }
        out
    }
}

impl fmt::Display for RectShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rect([{},{}]x[{},{}])", self.x0, self.x1, self.y0, self.y1)
    }
}

/// A describable piece geometry. `SquareMinusTriangle` is the square
/// `[0,half]^2` minus the point reflection of `cut` at `(half,half)`;
/// `TriRemainder` is `{(x,y) : x <= half, y <= half, x + y > half}`.
#[derive(Clone, Debug)]
pub enum Shape {
    Triangle(TriangleShape),
    Rect(RectShape),
    SquareMinusTriangle { half: Rat, cut: TriangleShape },
    TriRemainder { half: Rat },
}

impl Shape {
    pub fn contains(&self, p: GridPoint) -> bool {
        let x = Rat::from_integer(p.i);
        let y = Rat::from_integer(p.j);
        match self {
            Shape::Triangle(t) => t.contains(p),
            Shape::Rect(r) => r.contains(p),
            Shape::SquareMinusTriangle { half, cut } => {
                if x > *half || y > *half {
                    return false;
                }
                // The reflected hypotenuse line: rx/alpha + ry/beta = 1 with
                // rx = half - x, ry = half - y. Points weakly outside the cut
                // (on the parent's side of the line) stay in the piece.
                let alpha = cut.b();
                let beta = cut.c();
                let rx = *half - x;
                let ry = *half - y;
                rx * beta + ry * alpha >= alpha * beta
            }
            Shape::TriRemainder { half } => x <= *half && y <= *half && x + y > *half,
        }
    }

    pub fn lattice_points(&self) -> Vec<GridPoint> {
        match self {
            Shape::Triangle(t) => t.lattice_points(),
            Shape::Rect(r) => r.lattice_points(),
            Shape::SquareMinusTriangle { half, .. } | Shape::TriRemainder { half } => {
                let hi = half.floor().to_integer();
                let mut out = Vec::new();
                for i in 1..=hi {
                    for j in 1..=hi {
                        let p = GridPoint { i, j };
                        if self.contains(p) {
                            out.push(p);
                        }
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Triangle(t) => write!(f, "{t}"),
            Shape::Rect(r) => write!(f, "{r}"),
            Shape::SquareMinusTriangle { half, cut } => {
                write!(f, "square({half})-minus-{cut}")
            }
            Shape::TriRemainder { half } => write!(f, "remainder({half})"),
        }
    }
}

/// Role of a piece inside a decomposition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PieceRole {
    TriangleT1,
    TriangleT2,
    TriangleT3,
    RemainderT4,
    HtriTop,
    Rectangle,
    HtriBottom,
    SquareMinusTriangle,
}

impl PieceRole {
    pub fn as_str(&self) -> &'static str {
        match self {
            PieceRole::TriangleT1 => "triangle-T1",
            PieceRole::TriangleT2 => "triangle-T2",
            PieceRole::TriangleT3 => "triangle-T3",
            PieceRole::RemainderT4 => "remainder-T4",
            PieceRole::HtriTop => "htri-top",
            PieceRole::Rectangle => "rectangle",
            PieceRole::HtriBottom => "htri-bottom",
            PieceRole::SquareMinusTriangle => "square-minus-triangle",
        }
    }
}

/// One piece of a decomposition: descriptive geometry plus the exact lattice
/// set assigned to it by the half-open boundary convention.
#[derive(Clone, Debug)]
pub struct Piece {
    pub shape: Shape,
    pub translation: (Rat, Rat),
    pub role: PieceRole,
    pub reflected: bool,
    pub points: Vec<GridPoint>,
}

/// Which of the four member forms a `Tri_{0,a,b} <= Tri_{0,n,n}` takes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TriCase {
    Case1,
    Case2,
    Case3,
    Case4,
}

impl TriCase {
    pub fn id(&self) -> u8 {
        match self {
            TriCase::Case1 => 1,
            TriCase::Case2 => 2,
            TriCase::Case3 => 3,
            TriCase::Case4 => 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub parent: Shape,
    pub case: Option<TriCase>,
    pub pieces: Vec<Piece>,
}

impl Decomposition {
    /// Exhaustive partition oracle: the pieces' lattice sets are pairwise
    /// disjoint and union exactly to the parent's lattice set.
    pub fn is_exact_partition(&self) -> bool {
        let parent: BTreeSet<GridPoint> = self.parent.lattice_points().into_iter().collect();
        let mut seen: BTreeSet<GridPoint> = BTreeSet::new();
        for piece in &self.pieces {
            for &p in &piece.points {
                if !seen.insert(p) {
                    return false; // overlap
                }
            }
        }
        seen == parent
    }
}

fn sorted(mut pts: Vec<GridPoint>) -> Vec<GridPoint> {
    pts.sort();
    pts
}

/// Splits `Tri_{a,b,n}` at height `n/2` into a top triangle, a rectangle and
/// a bottom triangle. Lattice points with `j <= n/2` go to the lower pieces;
/// within the lower strip, points with `i <= (a+b)/2` go to the rectangle.
pub fn split_htri(shape: &TriangleShape, m: i64) -> Result<Decomposition> {
    let a = shape.a();
    let b = shape.b();
    let n = shape.c();
    if b > Rat::from_integer(m) {
        return Err(Error::InvalidShape(format!(
            "split_htri needs b <= m, got b={b}, m={m}"
        )));
    }
    let half_n = n / Rat::from_integer(2);
    let mid = (a + b) / Rat::from_integer(2);

    let parent_points = shape.lattice_points();
    let mut top = Vec::new();
    let mut rect = Vec::new();
    let mut bottom = Vec::new();
    for &p in &parent_points {
        let x = Rat::from_integer(p.i);
        let y = Rat::from_integer(p.j);
        if y > half_n {
            top.push(p);
        } else if x <= mid {
            rect.push(p);
        } else {
            bottom.push(p);
        }
    }

    let pieces = vec![
        Piece {
            shape: Shape::Triangle(TriangleShape::new(a, mid, half_n)?),
            translation: (Rat::zero(), half_n),
            role: PieceRole::HtriTop,
            reflected: false,
            points: sorted(top),
        },
        Piece {
            shape: Shape::Rect(RectShape::new(a, mid, Rat::zero(), half_n)?),
            translation: (Rat::zero(), Rat::zero()),
            role: PieceRole::Rectangle,
            reflected: false,
            points: sorted(rect),
        },
        Piece {
            shape: Shape::Triangle(TriangleShape::new(mid, b, half_n)?),
            translation: (Rat::zero(), Rat::zero()),
            role: PieceRole::HtriBottom,
            reflected: false,
            points: sorted(bottom),
        },
    ];
    Ok(Decomposition {
        parent: Shape::Triangle(*shape),
        case: None,
        pieces,
    })
}

fn translate_points(pts: Vec<GridPoint>, di: i64, dj: i64) -> Vec<GridPoint> {
    sorted(
        pts.into_iter()
            .map(|p| GridPoint {
                i: p.i + di,
                j: p.j + dj,
            })
            .collect(),
    )
}

/// Splits `Tri_{0,n,n}` (n even) into three translated copies of
/// `Tri_{0,n/2,n/2}` and the central remainder. Each piece's lattice set is
/// computed from its own shape; the partition property is a theorem checked
/// by `Decomposition::is_exact_partition`.
pub fn split_tri(n: i64) -> Result<Decomposition> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidShape(format!(
            "split_tri needs even n >= 2, got {n}"
        )));
    }
    let h = n / 2;
    let half = Rat::from_integer(h);
    let small = TriangleShape::from_ints(0, h, h)?;
    let base_pts = small.lattice_points();

    let pieces = vec![
        Piece {
            shape: Shape::Triangle(small),
            translation: (Rat::zero(), half),
            role: PieceRole::TriangleT1,
            reflected: false,
            points: translate_points(base_pts.clone(), 0, h),
        },
        Piece {
            shape: Shape::Triangle(small),
            translation: (half, Rat::zero()),
            role: PieceRole::TriangleT2,
            reflected: false,
            points: translate_points(base_pts.clone(), h, 0),
        },
        Piece {
            shape: Shape::Triangle(small),
            translation: (Rat::zero(), Rat::zero()),
            role: PieceRole::TriangleT3,
            reflected: false,
            points: sorted(base_pts),
        },
        Piece {
            shape: Shape::TriRemainder { half },
            translation: (Rat::zero(), Rat::zero()),
            role: PieceRole::RemainderT4,
            reflected: false,
            points: Shape::TriRemainder { half }.lattice_points(),
        },
    ];
    Ok(Decomposition {
        parent: Shape::Triangle(TriangleShape::from_ints(0, n, n)?),
        case: Some(TriCase::Case4),
        pieces,
    })
}

/// Classifies the member `Tri_{0,a,b}` of the right-triangle family over
/// `Tri_{0,n,n}` into one of four forms, returning the decomposition whose
/// piece lattice sets partition the member's lattice set exactly.
pub fn classify_tri_member(a: Rat, b: Rat, n: i64) -> Result<Decomposition> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidShape(format!(
            "classify_tri_member needs even n >= 2, got {n}"
        )));
    }
    let big_n = Rat::from_integer(n);
    if a.is_negative() || b.is_negative() || a > big_n || b > big_n {
        return Err(Error::InvalidShape(format!(
            "classify_tri_member needs 0 <= a,b <= n, got a={a}, b={b}, n={n}"
        )));
    }
    let half = big_n / Rat::from_integer(2);
    let member = TriangleShape::anchored(a, b)?;
    let member_points = member.lattice_points();

    if a <= half && b <= half {
        // Case 1: already inside T3.
        return Ok(Decomposition {
            parent: Shape::Triangle(member),
            case: Some(TriCase::Case1),
            pieces: vec![Piece {
                shape: Shape::Triangle(member),
                translation: (Rat::zero(), Rat::zero()),
                role: PieceRole::TriangleT3,
                reflected: false,
                points: sorted(member_points),
            }],
        });
    }

    if a <= half && b > half {
        // Case 2: tall and narrow. The hypotenuse meets y = n/2 at x*.
        let x_star = a * (b - half) / b;
        let mut top = Vec::new();
        let mut rect = Vec::new();
        let mut htri = Vec::new();
        for &p in &member_points {
            let x = Rat::from_integer(p.i);
            let y = Rat::from_integer(p.j);
            if y > half {
                top.push(p);
            } else if x <= x_star {
                rect.push(p);
            } else {
                htri.push(p);
            }
        }
        let pieces = vec![
            Piece {
                shape: Shape::Triangle(TriangleShape::new(Rat::zero(), x_star, b - half)?),
                translation: (Rat::zero(), half),
                role: PieceRole::TriangleT1,
                reflected: false,
                points: sorted(top),
            },
            Piece {
                shape: Shape::Rect(RectShape::new(Rat::zero(), x_star, Rat::zero(), half)?),
                translation: (Rat::zero(), Rat::zero()),
                role: PieceRole::Rectangle,
                reflected: false,
                points: sorted(rect),
            },
            Piece {
                shape: Shape::Triangle(TriangleShape::new(x_star, a, half)?),
                translation: (Rat::zero(), Rat::zero()),
                role: PieceRole::HtriBottom,
                reflected: false,
                points: sorted(htri),
            },
        ];
        return Ok(Decomposition {
            parent: Shape::Triangle(member),
            case: Some(TriCase::Case2),
            pieces,
        });
    }

    if a > half && b <= half {
        // Case 3: mirror of case 2 across y = x. Classify the reflected
        // member and reflect the resulting lattice sets back.
        let mirrored = classify_tri_member(b, a, n)?;
        let pieces = mirrored
            .pieces
            .into_iter()
            .map(|piece| Piece {
                shape: piece.shape,
                translation: piece.translation,
                role: piece.role,
                reflected: true,
                points: sorted(piece.points.into_iter().map(GridPoint::reflected).collect()),
            })
            .collect();
        return Ok(Decomposition {
            parent: Shape::Triangle(member),
            case: Some(TriCase::Case3),
            pieces,
        });
    }

    // Case 4: a > n/2 and b > n/2. The hypotenuse crosses the central square
    // from (x*, n/2) to (n/2, y*).
    let x_star = a * (b - half) / b;
    let y_star = b * (a - half) / a;
    let mut top = Vec::new();
    let mut right = Vec::new();
    let mut square = Vec::new();
    for &p in &member_points {
        let x = Rat::from_integer(p.i);
        let y = Rat::from_integer(p.j);
        if y > half {
            top.push(p);
        } else if x > half {
            right.push(p);
        } else {
            square.push(p);
        }
    }
    let cut = TriangleShape::new(Rat::zero(), half - x_star, half - y_star)?;
    let pieces = vec![
        Piece {
            shape: Shape::Triangle(TriangleShape::new(Rat::zero(), x_star, b - half)?),
            translation: (Rat::zero(), half),
            role: PieceRole::TriangleT1,
            reflected: false,
            points: sorted(top),
        },
        Piece {
            shape: Shape::Triangle(TriangleShape::new(Rat::zero(), a - half, y_star)?),
            translation: (half, Rat::zero()),
            role: PieceRole::TriangleT2,
            reflected: false,
            points: sorted(right),
        },
        Piece {
            shape: Shape::SquareMinusTriangle { half, cut },
            translation: (Rat::zero(), Rat::zero()),
            role: PieceRole::SquareMinusTriangle,
            reflected: false,
            points: sorted(square),
        },
    ];
    Ok(Decomposition {
        parent: Shape::Triangle(member),
        case: Some(TriCase::Case4),
        pieces,
    })
}

/// Family kinds over the positive lattice. One-dimensional interval families
/// are embedded at `j = 1` so the same operator core serves all of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// All intervals `[i,j]` with `1 <= i <= j <= m`, embedded at `j = 1`.
    Intervals { m: i64 },
    /// Full-height rectangles `[x,y] x [0,n]` with `0 <= x <= y <= m`.
    Rectangles { m: i64, n: i64 },
    /// Fixed-height triangles `Tri_{a,b,n}` with `0 <= a <= b <= m`.
    HypTriangles { m: i64, n: i64 },
    /// Origin-anchored right triangles `Tri_{0,a,b}` inside `Tri_{0,n,n}`.
    RightTriangles { n: i64 },
    /// An explicit list of index sets.
    Explicit {
        members: Vec<Vec<GridPoint>>,
        ground: Vec<GridPoint>,
    },
}

impl FamilyKind {
    pub fn label(&self) -> &'static str {
        match self {
            FamilyKind::Intervals { .. } => "intervals",
            FamilyKind::Rectangles { .. } => "rectangles",
            FamilyKind::HypTriangles { .. } => "htri",
            FamilyKind::RightTriangles { .. } => "tri",
            FamilyKind::Explicit { .. } => "explicit",
        }
    }

    /// The size parameter reported in CSV output (`m` for intervals,
    /// `n` otherwise, member count for explicit families).
    pub fn size_param(&self) -> i64 {
        match self {
            FamilyKind::Intervals { m } => *m,
            FamilyKind::Rectangles { n, .. } => *n,
            FamilyKind::HypTriangles { n, .. } => *n,
            FamilyKind::RightTriangles { n } => *n,
            FamilyKind::Explicit { members, .. } => members.len() as i64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    IntegerGrid,
    LineCut,
}

impl EnumMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            EnumMode::IntegerGrid => "integer-grid",
            EnumMode::LineCut => "line-cut",
        }
    }
}

impl std::str::FromStr for EnumMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "integer-grid" => Ok(EnumMode::IntegerGrid),
            "line-cut" => Ok(EnumMode::LineCut),
            other => Err(Error::Parse(format!(
                "unknown enumeration mode {other:?} (expected integer-grid or line-cut)"
            ))),
        }
    }
}

/// A family descriptor: kind, parameters and enumeration mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub mode: EnumMode,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, mode: EnumMode) -> Result<Self> {
        if mode == EnumMode::LineCut && !matches!(kind, FamilyKind::RightTriangles { .. }) {
            return Err(Error::InvalidFamily(
                "line-cut mode applies to right-triangle families only".into(),
            ));
        }
        match &kind {
            FamilyKind::Intervals { m } if *m < 0 => {
                return Err(Error::InvalidFamily("intervals need m >= 0".into()))
            }
            FamilyKind::Rectangles { m, n } | FamilyKind::HypTriangles { m, n }
                if *m < 0 || *n < 0 =>
            {
                return Err(Error::InvalidFamily("family needs m, n >= 0".into()))
            }
            FamilyKind::RightTriangles { n } if *n < 0 => {
                return Err(Error::InvalidFamily("right triangles need n >= 0".into()))
            }
            _ => {}
        }
        Ok(FamilySpec { kind, mode })
    }

    /// Structured-text descriptor, e.g. `tri n=8 mode=integer-grid`.
    pub fn descriptor(&self) -> String {
        match &self.kind {
            FamilyKind::Intervals { m } => format!("intervals m={m}"),
            FamilyKind::Rectangles { m, n } => format!("rectangles m={m} n={n}"),
            FamilyKind::HypTriangles { m, n } => format!("htri m={m} n={n}"),
            FamilyKind::RightTriangles { n } => {
                format!("tri n={n} mode={}", self.mode.as_str())
            }
            FamilyKind::Explicit { members, .. } => format!("explicit k={}", members.len()),
        }
    }

    /// Parses the descriptor form emitted by `descriptor` (explicit families
    /// are carried by instance files, not by descriptors).
    pub fn parse_descriptor(s: &str) -> Result<Self> {
        let mut it = s.split_whitespace();
        let kind = it
            .next()
            .ok_or_else(|| Error::Parse("empty family descriptor".into()))?;
        let mut params: BTreeMap<&str, &str> = BTreeMap::new();
        for tok in it {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad descriptor token {tok:?}")))?;
            params.insert(k, v);
        }
        let get_int = |key: &str| -> Result<i64> {
            params
                .get(key)
                .ok_or_else(|| Error::Parse(format!("family {kind:?} needs {key}=<int>")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer for {key}")))
        };
        let mode = match params.get("mode") {
            Some(m) => m.parse::<EnumMode>()?,
            None => EnumMode::IntegerGrid,
        };
        let kind = match kind {
            "intervals" => FamilyKind::Intervals { m: get_int("m")? },
            "rectangles" => FamilyKind::Rectangles {
                m: get_int("m")?,
                n: get_int("n")?,
            },
            "htri" => FamilyKind::HypTriangles {
                m: get_int("m")?,
                n: get_int("n")?,
            },
            "tri" => FamilyKind::RightTriangles { n: get_int("n")? },
            other => {
                return Err(Error::Parse(format!(
                    "unknown family kind {other:?} (expected intervals, rectangles, htri or tri)"
                )))
            }
        };
        FamilySpec::new(kind, mode)
    }

    /// The ground set: all lattice points of the bounding shape.
    pub fn ground_set(&self) -> Vec<GridPoint> {
        match &self.kind {
            FamilyKind::Intervals { m } => (1..=*m).map(|i| GridPoint { i, j: 1 }).collect(),
            FamilyKind::Rectangles { m, n } | FamilyKind::HypTriangles { m, n } => {
                let mut out = Vec::new();
                for i in 1..=*m {
                    for j in 1..=*n {
                        out.push(GridPoint { i, j });
                    }
                }
                out
            }
            FamilyKind::RightTriangles { n } => TriangleShape::from_ints(0, *n, *n)
                .expect("valid by construction")
                .lattice_points(),
            FamilyKind::Explicit { ground, .. } => sorted(ground.clone()),
        }
    }

    pub fn enumerate(&self) -> Result<EnumeratedFamily> {
        self.enumerate_with_cap(DEFAULT_LINE_CUT_CAP)
    }

    /// Enumerates the family as a duplicate-free list of lattice subsets,
    /// together with nesting chains used by the incremental evaluator.
    pub fn enumerate_with_cap(&self, line_cut_cap: i64) -> Result<EnumeratedFamily> {
        let ground = self.ground_set();
        let mut builder = FamilyBuilder::new();
        match (&self.kind, self.mode) {
            (FamilyKind::Intervals { m }, _) => {
                for lo in 1..=*m {
                    builder.start_chain();
                    for hi in lo..=*m {
                        let pts: Vec<GridPoint> =
                            (lo..=hi).map(|i| GridPoint { i, j: 1 }).collect();
                        builder.push(pts, format!("i={lo} j={hi}"));
                    }
                }
            }
            (FamilyKind::Rectangles { m, n }, _) => {
                for x in 0..=*m {
                    builder.start_chain();
                    for y in x..=*m {
                        let mut pts = Vec::new();
                        for i in std::cmp::max(1, x)..=y {
                            for j in 1..=*n {
                                pts.push(GridPoint { i, j });
                            }
                        }
                        builder.push(pts, format!("x={x} y={y}"));
                    }
                }
            }
            (FamilyKind::HypTriangles { m, n }, _) => {
                for a in 0..=*m {
                    builder.start_chain();
                    for b in a..=*m {
                        let shape = TriangleShape::from_ints(a, b, *n)?;
                        builder.push(shape.lattice_points(), format!("a={a} b={b}"));
                    }
                }
            }
            (FamilyKind::RightTriangles { n }, EnumMode::IntegerGrid) => {
                for a in 0..=*n {
                    builder.start_chain();
                    for b in 0..=*n {
                        let shape = TriangleShape::anchored(
                            Rat::from_integer(a),
                            Rat::from_integer(b),
                        )?;
                        builder.push(shape.lattice_points(), format!("a={a} b={b}"));
                    }
                }
            }
            (FamilyKind::RightTriangles { n }, EnumMode::LineCut) => {
                if *n > line_cut_cap {
                    return Err(Error::CapExceeded(format!(
                        "line-cut enumeration capped at n <= {line_cut_cap}, got n = {n}"
                    )));
                }
                for subset in line_cut_subsets(*n) {
                    builder.start_chain();
                    builder.push(subset, String::new());
                }
            }
            (FamilyKind::Explicit { members, .. }, _) => {
                for member in members {
                    for p in member {
                        if !ground.contains(p) {
                            return Err(Error::InvalidFamily(format!(
                                "explicit member point {p} outside the ground set"
                            )));
                        }
                    }
                    builder.start_chain();
                    builder.push(sorted(member.clone()), String::new());
                }
            }
        }
        let (members, labels, chains) = builder.finish();
        if members.is_empty() {
            return Err(Error::InvalidFamily("family enumerates to no members".into()));
        }
        Ok(EnumeratedFamily {
            spec: self.clone(),
            ground,
            members,
            labels,
            chains,
        })
    }
}

/// One step of a nesting chain: the member reached and the lattice points
/// newly added relative to the previous step in the same chain.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub member: usize,
    pub added: Vec<GridPoint>,
}

/// A finite, duplicate-free enumeration of an index-set family.
#[derive(Clone, Debug)]
pub struct EnumeratedFamily {
    pub spec: FamilySpec,
    pub ground: Vec<GridPoint>,
    pub members: Vec<Vec<GridPoint>>,
    pub labels: Vec<String>,
    /// Chains of nested members; every member appears in at least one chain.
    pub chains: Vec<Vec<ChainStep>>,
}

impl EnumeratedFamily {
    pub fn descriptor(&self) -> String {
        self.spec.descriptor()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn has_nonempty_member(&self) -> bool {
        self.members.iter().any(|m| !m.is_empty())
    }
}

struct FamilyBuilder {
    dedup: BTreeMap<Vec<GridPoint>, usize>,
    members: Vec<Vec<GridPoint>>,
    labels: Vec<String>,
    chains: Vec<Vec<ChainStep>>,
    current: Option<(Vec<GridPoint>, Vec<ChainStep>, Option<usize>)>,
}

impl FamilyBuilder {
    fn new() -> Self {
        FamilyBuilder {
            dedup: BTreeMap::new(),
            members: Vec::new(),
            labels: Vec::new(),
            chains: Vec::new(),
            current: None,
        }
    }

    fn start_chain(&mut self) {
        self.seal_chain();
        self.current = Some((Vec::new(), Vec::new(), None));
    }

    fn seal_chain(&mut self) {
        if let Some((_, steps, _)) = self.current.take() {
            if !steps.is_empty() {
                self.chains.push(steps);
            }
        }
    }

    fn push(&mut self, points: Vec<GridPoint>, label: String) {
        let points = sorted(points);
        let id = match self.dedup.get(&points) {
            Some(&id) => id,
            None => {
                let id = self.members.len();
                self.dedup.insert(points.clone(), id);
                self.members.push(points.clone());
                self.labels.push(label);
                id
            }
        };
        let (prev_points, steps, prev_id) = self
            .current
            .as_mut()
            .expect("push called outside a chain");
        if *prev_id == Some(id) {
            return; // duplicate parameter step, set unchanged
        }
        debug_assert!(
            prev_points.iter().all(|p| points.binary_search(p).is_ok()),
            "chain steps must be nested"
        );
        let added: Vec<GridPoint> = points
            .iter()
            .copied()
            .filter(|p| prev_points.binary_search(p).is_err())
            .collect();
        steps.push(ChainStep { member: id, added });
        *prev_points = points;
        *prev_id = Some(id);
    }

    fn finish(mut self) -> (Vec<Vec<GridPoint>>, Vec<String>, Vec<Vec<ChainStep>>) {
        self.seal_chain();
        (self.members, self.labels, self.chains)
    }
}

/// Enumerates every distinct lattice subset of `Tri_{0,n,n}` realizable as
/// the lattice trace of `Tri_{0,a,b}` with real `0 <= a, b <= n`.
///
/// In the intercept parameters `u = 1/a`, `v = 1/b` the realizable region is
/// `[1/n, oo)^2` and each lattice point `(i,j)` contributes the constraint
/// line `i*u + j*v = 1`. Distinct subsets correspond to faces of that line
/// arrangement, so sampling every critical coordinate, every midpoint of
/// consecutive criticals, and one point beyond the last critical in both
/// axes visits every face. Arbitrary-precision rationals keep the sweep
/// exact.
fn line_cut_subsets(n: i64) -> Vec<Vec<GridPoint>> {
    let mut out: BTreeSet<Vec<GridPoint>> = BTreeSet::new();
    out.insert(Vec::new()); // degenerate a = 0 or b = 0

    if n < 2 {
        return out.into_iter().collect();
    }
    let points = TriangleShape::from_ints(0, n, n)
        .expect("valid")
        .lattice_points();
    if points.is_empty() {
        return out.into_iter().collect();
    }

    let big = |v: i64| BigRational::from_integer(BigInt::from(v));
    let lo = BigRational::new(BigInt::one(), BigInt::from(n));

    let mut crit_u: BTreeSet<BigRational> = BTreeSet::new();
    crit_u.insert(lo.clone());
    for (idx, p) in points.iter().enumerate() {
        // Intersection of line p with the boundary v = 1/n.
        let u = (BigRational::one() - big(p.j) * lo.clone()) / big(p.i);
        if u >= lo {
            crit_u.insert(u);
        }
        for q in points.iter().skip(idx + 1) {
            let det = big(p.i) * big(q.j) - big(q.i) * big(p.j);
            if det.is_zero() {
                continue;
            }
            let u = (big(q.j) - big(p.j)) / det.clone();
            let v = (big(p.i) - big(q.i)) / det;
            if u >= lo && v >= lo {
                crit_u.insert(u);
            }
        }
    }
    let samples_u = with_midpoints_and_beyond(&crit_u);

    for su in &samples_u {
        let mut crit_v: BTreeSet<BigRational> = BTreeSet::new();
        crit_v.insert(lo.clone());
        for p in &points {
            let num = BigRational::one() - big(p.i) * su.clone();
            let v = num / big(p.j);
            if v >= lo {
                crit_v.insert(v);
            }
        }
        let samples_v = with_midpoints_and_beyond(&crit_v);
        for sv in &samples_v {
            let subset: Vec<GridPoint> = points
                .iter()
                .copied()
                .filter(|p| big(p.i) * su.clone() + big(p.j) * sv.clone() <= BigRational::one())
                .collect();
            out.insert(subset);
        }
    }
    out.into_iter().collect()
}

fn with_midpoints_and_beyond(crit: &BTreeSet<BigRational>) -> Vec<BigRational> {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut samples: Vec<BigRational> = Vec::with_capacity(crit.len() * 2 + 1);
    let mut prev: Option<&BigRational> = None;
    for c in crit {
        if let Some(p) = prev {
            samples.push((p + c) / two.clone());
        }
        samples.push(c.clone());
        prev = Some(c);
    }
    if let Some(last) = crit.iter().next_back() {
        samples.push(last + BigRational::one());
    }
    samples
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[(i64, i64)]) -> Vec<GridPoint> {
        raw.iter().map(|&(i, j)| GridPoint { i, j }).collect()
    }

    #[test]
    fn tri_0_4_4_lattice() {
        let t = TriangleShape::from_ints(0, 4, 4).unwrap();
        assert_eq!(
            t.lattice_points(),
            pts(&[(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)])
        );
        // n(n-1)/2 points for Tri_{0,n,n}
        assert_eq!(t.lattice_points().len(), 6);
    }

    #[test]
    fn degenerate_triangles_are_empty() {
        let t = TriangleShape::from_ints(0, 0, 7).unwrap();
        assert!(t.lattice_points().is_empty());
        let t = TriangleShape::from_ints(0, 0, 0).unwrap();
        assert!(t.lattice_points().is_empty());
        let t = TriangleShape::from_ints(3, 5, 0).unwrap();
        assert!(t.lattice_points().is_empty());
    }

    #[test]
    fn degenerate_vertical_segment_keeps_box_bound() {
        // Tri_{2,2,5} degenerates to the segment x = 2, 0 <= y <= 5.
        let t = TriangleShape::from_ints(2, 2, 5).unwrap();
        assert_eq!(
            t.lattice_points(),
            pts(&[(2, 1), (2, 2), (2, 3), (2, 4), (2, 5)])
        );
    }

    #[test]
    fn rational_triangle_matches_exhaustive_scan() {
        // Tri_{0,3/2,6}: membership is 4i + j <= 6 after clearing denominators.
        let t = TriangleShape::new(Rat::zero(), Rat::new(3, 2), Rat::from_integer(6)).unwrap();
        let mut expected = Vec::new();
        for i in 1..=2 {
            for j in 1..=6 {
                if 4 * i + j <= 6 {
                    expected.push(GridPoint { i, j });
                }
            }
        }
        assert_eq!(t.lattice_points(), expected);
        assert_eq!(t.lattice_points(), pts(&[(1, 1), (1, 2)]));
    }

    #[test]
    fn triangle_rejects_bad_parameters() {
        assert!(TriangleShape::from_ints(3, 2, 4).is_err());
        assert!(TriangleShape::from_ints(0, 2, -1).is_err());
        assert!(TriangleShape::from_ints(-1, 2, 1).is_err());
    }

    #[test]
    fn containment_characterization() {
        // Tri_{0,a,b} in Tri_{0,n,n} iff a <= n and b <= n, checked on a
        // rational grid with denominators up to 4.
        for n in [2i64, 5, 16] {
            let outer = TriangleShape::from_ints(0, n, n).unwrap();
            for num_a in 0..=(4 * n + 6) {
                for den in 1..=4i64 {
                    let a = Rat::new(num_a, den);
                    let b = Rat::new((num_a * 3) % (4 * n + 5) + 1, den);
                    let inner = TriangleShape::anchored(a, b).unwrap();
                    let expect = a <= Rat::from_integer(n) && b <= Rat::from_integer(n);
                    assert_eq!(inner.contained_in(&outer), expect, "a={a} b={b} n={n}");
                    if expect {
                        for p in inner.lattice_points() {
                            assert!(outer.contains(p));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_nesting_in_b() {
        for a in 0..=6i64 {
            let mut prev: Vec<GridPoint> = Vec::new();
            for b in 0..=6i64 {
                let t = TriangleShape::anchored(Rat::from_integer(a), Rat::from_integer(b))
                    .unwrap();
                let cur = t.lattice_points();
                for p in &prev {
                    assert!(cur.contains(p), "nesting broken at a={a}, b={b}");
                }
                prev = cur;
            }
        }
    }

    #[test]
    fn split_htri_frozen_example() {
        let t = TriangleShape::from_ints(0, 4, 4).unwrap();
        let d = split_htri(&t, 4).unwrap();
        assert_eq!(d.pieces[0].points, pts(&[(1, 3)]));
        assert_eq!(d.pieces[1].points, pts(&[(1, 1), (1, 2), (2, 1), (2, 2)]));
        assert_eq!(d.pieces[2].points, pts(&[(3, 1)]));
        assert!(d.is_exact_partition());
    }

    #[test]
    fn split_htri_degenerate() {
        let t = TriangleShape::from_ints(0, 0, 8).unwrap();
        let d = split_htri(&t, 4).unwrap();
        assert!(d.pieces.iter().all(|p| p.points.is_empty()));
        assert!(d.is_exact_partition());
    }

    #[test]
    fn split_htri_shifted_example() {
        // Tri_{2,4,2}: lattice {(2,1),(2,2),(3,1)}; split at height 1 with
        // midline (a+b)/2 = 3. Exhaustive check fixes the piece contents.
        let t = TriangleShape::from_ints(2, 4, 2).unwrap();
        assert_eq!(t.lattice_points(), pts(&[(2, 1), (2, 2), (3, 1)]));
        let d = split_htri(&t, 4).unwrap();
        assert_eq!(d.pieces[0].points, pts(&[(2, 2)]));
        assert_eq!(d.pieces[1].points, pts(&[(2, 1), (3, 1)]));
        assert!(d.pieces[2].points.is_empty());
        assert!(d.is_exact_partition());
    }

    #[test]
    fn split_htri_rejects_bad_input() {
        let t = TriangleShape::from_ints(1, 6, 4).unwrap();
        assert!(split_htri(&t, 5).is_err()); // b > m
    }

    #[test]
    fn split_htri_pieces_match_closed_shapes_for_even_height() {
        // With integral n/2 the assigned sets coincide with the closed piece
        // shapes, up to the shared boundary column that the convention gives
        // to the rectangle.
        for a in 0..=4i64 {
            for b in a..=4i64 {
                for n in [2i64, 4, 6] {
                    let t = TriangleShape::from_ints(a, b, n).unwrap();
                    let d = split_htri(&t, 4).unwrap();
                    assert!(d.is_exact_partition(), "a={a} b={b} n={n}");
                    let top_shape: Vec<GridPoint> = match &d.pieces[0].shape {
                        Shape::Triangle(s) => s
                            .lattice_points()
                            .into_iter()
                            .map(|p| GridPoint {
                                i: p.i,
                                j: p.j + n / 2,
                            })
                            .collect(),
                        _ => unreachable!(),
                    };
                    assert_eq!(d.pieces[0].points, top_shape, "top a={a} b={b} n={n}");
                    let rect_shape = match &d.pieces[1].shape {
                        Shape::Rect(r) => r.lattice_points(),
                        _ => unreachable!(),
                    };
                    assert_eq!(d.pieces[1].points, rect_shape, "rect a={a} b={b} n={n}");
                    let bottom_closed = match &d.pieces[2].shape {
                        Shape::Triangle(s) => s.lattice_points(),
                        _ => unreachable!(),
                    };
                    let bottom_expected: Vec<GridPoint> = bottom_closed
                        .into_iter()
                        .filter(|p| !rect_shape.contains(p))
                        .collect();
                    assert_eq!(d.pieces[2].points, bottom_expected, "a={a} b={b} n={n}");
                }
            }
        }
    }

    #[test]
    fn split_tri_small_cases() {
        let d = split_tri(4).unwrap();
        assert!(d.is_exact_partition());
        assert_eq!(d.pieces[0].points, pts(&[(1, 3)])); // T1
        assert_eq!(d.pieces[1].points, pts(&[(3, 1)])); // T2
        assert_eq!(d.pieces[2].points, pts(&[(1, 1)])); // T3
        assert_eq!(d.pieces[3].points, pts(&[(1, 2), (2, 1), (2, 2)])); // T4

        let d = split_tri(2).unwrap();
        assert!(d.pieces[0].points.is_empty());
        assert!(d.pieces[1].points.is_empty());
        assert!(d.pieces[2].points.is_empty());
        assert_eq!(d.pieces[3].points, pts(&[(1, 1)]));
        assert!(d.is_exact_partition());
    }

    #[test]
    fn split_tri_partition_n8() {
        let d = split_tri(8).unwrap();
        assert!(d.is_exact_partition());
    }

    #[test]
    fn split_tri_rejects_odd_n() {
        assert!(split_tri(5).is_err());
        assert!(split_tri(0).is_err());
    }

    #[test]
    fn classify_case_boundaries() {
        let d = classify_tri_member(Rat::from_integer(4), Rat::from_integer(4), 8).unwrap();
        assert_eq!(d.case, Some(TriCase::Case1));
        assert_eq!(d.pieces.len(), 1);
        assert!(d.is_exact_partition());

        // (a,b) = (n,n): the cut triangle is empty, square piece is full.
        let d = classify_tri_member(Rat::from_integer(8), Rat::from_integer(8), 8).unwrap();
        assert_eq!(d.case, Some(TriCase::Case4));
        assert!(d.is_exact_partition());
        let square = &d.pieces[2];
        let full: Vec<GridPoint> = (1..=4)
            .flat_map(|i| (1..=4).map(move |j| GridPoint { i, j }))
            .collect();
        assert_eq!(square.points, sorted(full));
        match &square.shape {
            Shape::SquareMinusTriangle { cut, .. } => {
                assert!(cut.lattice_points().is_empty());
                assert_eq!(cut.b(), Rat::zero());
            }
            other => panic!("unexpected shape {other:?}"),
        }
    }

    #[test]
    fn classify_case2_partitions() {
        let d = classify_tri_member(Rat::from_integer(3), Rat::from_integer(7), 8).unwrap();
        assert_eq!(d.case, Some(TriCase::Case2));
        assert!(d.is_exact_partition());
        // Pieces land in their advertised containers.
        let half = 4i64;
        for p in &d.pieces[0].points {
            assert!(p.j > half);
        }
        for p in &d.pieces[1].points {
            assert!(p.j <= half);
        }
    }

    #[test]
    fn classify_case3_mirrors_case2() {
        let d2 = classify_tri_member(Rat::from_integer(3), Rat::from_integer(7), 8).unwrap();
        let d3 = classify_tri_member(Rat::from_integer(7), Rat::from_integer(3), 8).unwrap();
        assert_eq!(d3.case, Some(TriCase::Case3));
        assert!(d3.is_exact_partition());
        for (p2, p3) in d2.pieces.iter().zip(&d3.pieces) {
            assert!(p3.reflected);
            let mirrored: Vec<GridPoint> =
                sorted(p2.points.iter().map(|p| p.reflected()).collect());
            assert_eq!(p3.points, mirrored);
        }
    }

    #[test]
    fn classify_case2_pieces_match_closed_shapes() {
        // Even n, rational (a,b): the top piece equals its translated closed
        // shape and the rectangle equals its closed shape.
        let a = Rat::new(7, 2);
        let b = Rat::new(13, 2);
        let d = classify_tri_member(a, b, 8).unwrap();
        assert_eq!(d.case, Some(TriCase::Case2));
        assert!(d.is_exact_partition());
        match (&d.pieces[0].shape, &d.pieces[1].shape) {
            (Shape::Triangle(top), Shape::Rect(rect)) => {
                let translated: Vec<GridPoint> = top
                    .lattice_points()
                    .into_iter()
                    .map(|p| GridPoint { i: p.i, j: p.j + 4 })
                    .collect();
                assert_eq!(d.pieces[0].points, sorted(translated));
                assert_eq!(d.pieces[1].points, rect.lattice_points());
            }
            other => panic!("unexpected shapes {other:?}"),
        }
    }

    #[test]
    fn classify_rejects_out_of_range() {
        assert!(classify_tri_member(Rat::from_integer(9), Rat::from_integer(1), 8).is_err());
        assert!(classify_tri_member(Rat::from_integer(-1), Rat::from_integer(1), 8).is_err());
        assert!(classify_tri_member(Rat::from_integer(1), Rat::from_integer(1), 7).is_err());
    }

    #[test]
    fn intervals_enumeration() {
        let spec = FamilySpec::new(FamilyKind::Intervals { m: 2 }, EnumMode::IntegerGrid).unwrap();
        let fam = spec.enumerate().unwrap();
        assert_eq!(fam.members.len(), 3);
        assert_eq!(fam.members[0], pts(&[(1, 1)]));
        assert_eq!(fam.members[1], pts(&[(1, 1), (2, 1)]));
        assert_eq!(fam.members[2], pts(&[(2, 1)]));
        assert_eq!(fam.ground, pts(&[(1, 1), (2, 1)]));
    }

    #[test]
    fn right_triangles_integer_grid_n2() {
        let spec =
            FamilySpec::new(FamilyKind::RightTriangles { n: 2 }, EnumMode::IntegerGrid).unwrap();
        let fam = spec.enumerate().unwrap();
        let sets: BTreeSet<Vec<GridPoint>> = fam.members.iter().cloned().collect();
        let expected: BTreeSet<Vec<GridPoint>> =
            [Vec::new(), pts(&[(1, 1)])].into_iter().collect();
        assert_eq!(sets, expected);
    }

    #[test]
    fn right_triangles_line_cut_n3() {
        let spec =
            FamilySpec::new(FamilyKind::RightTriangles { n: 3 }, EnumMode::LineCut).unwrap();
        let fam = spec.enumerate().unwrap();
        let sets: BTreeSet<Vec<GridPoint>> = fam.members.iter().cloned().collect();
        let expected: BTreeSet<Vec<GridPoint>> = [
            Vec::new(),
            pts(&[(1, 1)]),
            pts(&[(1, 1), (1, 2), (2, 1)]),
        ]
        .into_iter()
        .collect();
        // {(1,1),(1,2)} is not realizable: forcing (1,2) inside pushes the
        // hypotenuse through (2,1) as well once a,b <= 3.
        assert_eq!(sets, expected);
    }

    #[test]
    fn line_cut_is_superset_of_integer_grid() {
        for n in [2i64, 4, 5, 6] {
            let grid = FamilySpec::new(FamilyKind::RightTriangles { n }, EnumMode::IntegerGrid)
                .unwrap()
                .enumerate()
                .unwrap();
            let cut = FamilySpec::new(FamilyKind::RightTriangles { n }, EnumMode::LineCut)
                .unwrap()
                .enumerate()
                .unwrap();
            let cut_sets: BTreeSet<Vec<GridPoint>> = cut.members.iter().cloned().collect();
            for member in &grid.members {
                assert!(cut_sets.contains(member), "n={n}, member {member:?}");
            }
        }
    }

    #[test]
    fn line_cut_cap_is_enforced() {
        let spec =
            FamilySpec::new(FamilyKind::RightTriangles { n: 100 }, EnumMode::LineCut).unwrap();
        match spec.enumerate() {
            Err(Error::CapExceeded(_)) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn enumerations_are_duplicate_free() {
        let specs = vec![
            FamilySpec::new(FamilyKind::Intervals { m: 5 }, EnumMode::IntegerGrid).unwrap(),
            FamilySpec::new(FamilyKind::Rectangles { m: 4, n: 3 }, EnumMode::IntegerGrid)
                .unwrap(),
            FamilySpec::new(FamilyKind::HypTriangles { m: 4, n: 4 }, EnumMode::IntegerGrid)
                .unwrap(),
            FamilySpec::new(FamilyKind::RightTriangles { n: 6 }, EnumMode::IntegerGrid).unwrap(),
            FamilySpec::new(FamilyKind::RightTriangles { n: 6 }, EnumMode::LineCut).unwrap(),
        ];
        for spec in specs {
            let fam = spec.enumerate().unwrap();
            let sets: BTreeSet<&Vec<GridPoint>> = fam.members.iter().collect();
            assert_eq!(sets.len(), fam.members.len(), "{}", spec.descriptor());
            let empties = fam.members.iter().filter(|m| m.is_empty()).count();
            assert!(empties <= 1, "{}", spec.descriptor());
            for member in &fam.members {
                for p in member {
                    assert!(fam.ground.contains(p));
                }
            }
        }
    }

    #[test]
    fn chains_cover_all_members_and_nest() {
        let spec =
            FamilySpec::new(FamilyKind::RightTriangles { n: 6 }, EnumMode::IntegerGrid).unwrap();
        let fam = spec.enumerate().unwrap();
        let mut covered = vec![false; fam.members.len()];
        for chain in &fam.chains {
            let mut acc: BTreeSet<GridPoint> = BTreeSet::new();
            for step in chain {
                for &p in &step.added {
                    assert!(acc.insert(p), "chain re-adds a point");
                }
                let member: BTreeSet<GridPoint> =
                    fam.members[step.member].iter().copied().collect();
                assert_eq!(acc, member, "chain prefix must equal the member");
                covered[step.member] = true;
            }
        }
        assert!(covered.iter().all(|&c| c), "every member reachable by chains");
    }

    #[test]
    fn descriptor_round_trip() {
        let specs = vec![
            FamilySpec::new(FamilyKind::Intervals { m: 5 }, EnumMode::IntegerGrid).unwrap(),
            FamilySpec::new(FamilyKind::Rectangles { m: 4, n: 3 }, EnumMode::IntegerGrid)
                .unwrap(),
            FamilySpec::new(FamilyKind::HypTriangles { m: 2, n: 8 }, EnumMode::IntegerGrid)
                .unwrap(),
            FamilySpec::new(FamilyKind::RightTriangles { n: 6 }, EnumMode::LineCut).unwrap(),
        ];
        for spec in specs {
            let parsed = FamilySpec::parse_descriptor(&spec.descriptor()).unwrap();
            assert_eq!(parsed, spec);
        }
        assert!(FamilySpec::parse_descriptor("pentagon n=3").is_err());
    }

    #[test]
    fn line_cut_rejected_for_non_tri() {
        assert!(FamilySpec::new(FamilyKind::Intervals { m: 3 }, EnumMode::LineCut).is_err());
    }

    #[test]
    fn parse_rat_forms() {
        assert_eq!(parse_rat("3").unwrap(), Rat::from_integer(3));
        assert_eq!(parse_rat("3/2").unwrap(), Rat::new(3, 2));
        assert_eq!(parse_rat("1.5").unwrap(), Rat::new(3, 2));
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/0").is_err());
    }
}

//! The plane picture of a quotient semigroup.
//!
//! For pairwise coprime `a`, `b`, `d` the map `psi(x, y) = (a x + b y) / d`
//! sends the lattice `L = {(x, y) : a x + b y = 0 mod d}` onto the integers.
//! Minimal generators, gaps and pseudo-Frobenius numbers of `<a,b>/d` are
//! images of minimal points, triangle points and maximal points of `L` in
//! suitable rectangles. This module computes those point sets, both by
//! row arithmetic and by plain cell scans used as a reference.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactmath::{ceil_cfe, mod_inverse, Expansion, Int, Rat};

/// Largest number of cells or rows a scan agrees to visit.
pub const MAX_CELLS: u64 = 10_000_000;

/// Errors raised by the lattice layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    /// An argument violates a precondition.
    #[error("DomainError: {0}")]
    Domain(String),
    /// The three parameters are not pairwise coprime.
    #[error("NotCoprime: {0}")]
    NotCoprime(String),
    /// A scan would visit more than [`MAX_CELLS`] cells.
    #[error("TooLarge: {0} cells requested")]
    TooLarge(u64),
}

/// Validated parameters `(a, b, d)` of a quotient `<a,b>/d`: pairwise
/// coprime, `2 <= a < b`, `d >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientSpec {
    /// Smaller generator.
    pub a: Int,
    /// Larger generator.
    pub b: Int,
    /// Divisor.
    pub d: Int,
}

impl QuotientSpec {
    /// Checks the parameters and swaps `a` and `b` when `a > b`.
    pub fn new(a: Int, b: Int, d: Int) -> Result<Self, LatticeError> {
        let two = Int::from(2);
        if a < two || b < two || d < Int::one() {
            return Err(LatticeError::Domain(format!(
                "need a, b >= 2 and d >= 1, got ({a}, {b}, {d})"
            )));
        }
        for (u, v) in [(&a, &b), (&a, &d), (&b, &d)] {
            let g = u.gcd(v);
            if !g.is_one() {
                return Err(LatticeError::NotCoprime(format!("gcd({u}, {v}) = {g}")));
            }
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Ok(QuotientSpec { a, b, d })
    }

    /// Shorthand for small parameters.
    pub fn from_u64(a: u64, b: u64, d: u64) -> Result<Self, LatticeError> {
        Self::new(Int::from(a), Int::from(b), Int::from(d))
    }

    /// The period vector `w = (b, -a)`.
    pub fn w(&self) -> Pt {
        Pt::new(self.b.clone(), -&self.a)
    }

    /// `(-b / a) mod d`: every lattice point on row `y` has
    /// `x = y * row_slope mod d`.
    pub fn row_slope(&self) -> Int {
        let inv = mod_inverse(&self.a, &self.d).expect("a and d are coprime");
        (-(&self.b) * inv).mod_floor(&self.d)
    }
}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>/{}", self.a, self.b, self.d)
    }
}

/// A point of the integer plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pt {
    /// First coordinate.
    pub x: Int,
    /// Second coordinate.
    pub y: Int,
}

impl Pt {
    /// Builds a point.
    pub fn new(x: impl Into<Int>, y: impl Into<Int>) -> Self {
        Pt {
            x: x.into(),
            y: y.into(),
        }
    }

    /// Product order: both coordinates `<=`.
    pub fn le(&self, other: &Pt) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    /// Coordinate-wise sum.
    pub fn add(&self, other: &Pt) -> Pt {
        Pt::new(&self.x + &other.x, &self.y + &other.y)
    }
}

impl fmt::Display for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A closed integer rectangle `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    /// Least `x`.
    pub x0: i64,
    /// Greatest `x`.
    pub x1: i64,
    /// Least `y`.
    pub y0: i64,
    /// Greatest `y`.
    pub y1: i64,
}

impl Rect {
    /// Builds `[x0, x1] x [y0, y1]`.
    pub fn new(x0: i64, x1: i64, y0: i64, y1: i64) -> Self {
        Rect { x0, x1, y0, y1 }
    }

    fn cells(&self) -> u64 {
        let w = (self.x1 - self.x0 + 1).max(0) as u64;
        let h = (self.y1 - self.y0 + 1).max(0) as u64;
        w.saturating_mul(h)
    }
}

/// A two-dimensional lattice of full rank, given by a membership rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lattice {
    /// `{(x, y) : a x + b y = 0 mod d}`.
    Quotient(QuotientSpec),
    /// The span of `(d, 0)` and `(m, 1)`, that is `{(x, y) : x = m y mod d}`.
    Span {
        /// Period along the `x` axis.
        d: Int,
        /// Shift per row.
        m: Int,
    },
}

impl Lattice {
    /// Membership test.
    pub fn contains(&self, p: &Pt) -> bool {
        match self {
            Lattice::Quotient(s) => in_lattice(s, p),
            Lattice::Span { d, m } => (&p.x - m * &p.y).mod_floor(d).is_zero(),
        }
    }
}

/// `psi(p) = (a x + b y) / d`.
pub fn psi_map(spec: &QuotientSpec, p: &Pt) -> Rat {
    Rat::new(&spec.a * &p.x + &spec.b * &p.y, spec.d.clone())
}

/// Whether `a x + b y = 0 mod d`.
pub fn in_lattice(spec: &QuotientSpec, p: &Pt) -> bool {
    (&spec.a * &p.x + &spec.b * &p.y)
        .mod_floor(&spec.d)
        .is_zero()
}

/// Integer image `psi(p)` of a lattice point.
fn psi_int(spec: &QuotientSpec, p: &Pt) -> Int {
    (&spec.a * &p.x + &spec.b * &p.y) / &spec.d
}

/// Images of lattice points, sorted increasingly.
pub fn psi_values(spec: &QuotientSpec, pts: &[Pt]) -> Vec<Int> {
    let mut v: Vec<Int> = pts.iter().map(|p| psi_int(spec, p)).collect();
    v.sort();
    v
}

/// Minimal points of `L` in the closed positive quadrant without the origin,
/// for `L` the span of `(d, 0)` and `(m, 1)`.
///
/// The chain starts at `(d, 0)`, `(m, 1)` and continues with
/// `u_{i+1} = d_i u_i - u_{i-1}`, where `d_i` runs over the ceiling
/// expansion of `d/m`; it ends at `(0, d)`.
pub fn min_points_quadrant(d: &Int, m: &Int) -> Result<Vec<Pt>, LatticeError> {
    if !m.is_positive() || m >= d {
        return Err(LatticeError::Domain(format!("need 0 < m < d, got m = {m}, d = {d}")));
    }
    if !m.gcd(d).is_one() {
        return Err(LatticeError::Domain(format!("gcd({m}, {d}) != 1")));
    }
    let cfe = ceil_cfe(&Rat::new(d.clone(), m.clone()), usize::MAX)
        .map_err(|e| LatticeError::Domain(e.to_string()))?;
    let mut chain = vec![Pt::new(d.clone(), 0), Pt::new(m.clone(), 1)];
    for di in cfe.terms() {
        let n = chain.len();
        let next = Pt::new(
            di * &chain[n - 1].x - &chain[n - 2].x,
            di * &chain[n - 1].y - &chain[n - 2].y,
        );
        chain.push(next);
    }
    Ok(chain)
}

fn to_i128(x: &Int) -> Result<i128, LatticeError> {
    x.to_i128()
        .ok_or_else(|| LatticeError::Domain(format!("{x} does not fit a machine word")))
}

/// Pareto-minimal lattice points of a rectangle by scanning every cell.
///
/// With `exclude_origin`, the origin is left out even when it lies in the
/// rectangle. Points come sorted by decreasing `x`.
pub fn min_points_rect_bf(
    lat: &Lattice,
    rect: Rect,
    exclude_origin: bool,
) -> Result<Vec<Pt>, LatticeError> {
    let pts = scan(lat, rect, exclude_origin)?;
    let mut out: Vec<Pt> = Vec::new();
    // Rows bottom-up; a point is minimal when its x beats every lower row.
    let mut best: Option<i64> = None;
    for (x, y) in pts {
        if best.is_none_or(|b| x < b) {
            best = Some(x);
            out.push(Pt::new(x, y));
        }
    }
    Ok(out)
}

/// Pareto-maximal lattice points of a rectangle by scanning every cell,
/// sorted by decreasing `x`.
pub fn max_points_rect_bf(lat: &Lattice, rect: Rect) -> Result<Vec<Pt>, LatticeError> {
    let rows = scan_rows_max(lat, rect)?;
    let mut out: Vec<Pt> = Vec::new();
    let mut best: Option<i64> = None;
    // Rows top-down; a point is maximal when its x beats every higher row.
    for (x, y) in rows.into_iter().rev() {
        if best.is_none_or(|b| x > b) {
            best = Some(x);
            out.push(Pt::new(x, y));
        }
    }
    out.reverse();
    Ok(out)
}

/// Smallest `x` of each row, rows bottom-up.
fn scan(lat: &Lattice, rect: Rect, exclude_origin: bool) -> Result<Vec<(i64, i64)>, LatticeError> {
    if rect.cells() > MAX_CELLS {
        return Err(LatticeError::TooLarge(rect.cells()));
    }
    let mut rows = Vec::new();
    for y in rect.y0..=rect.y1 {
        let hit = (rect.x0..=rect.x1)
            .filter(|&x| !(exclude_origin && x == 0 && y == 0))
            .find(|&x| lat.contains(&Pt::new(x, y)));
        if let Some(x) = hit {
            rows.push((x, y));
        }
    }
    Ok(rows)
}

/// Largest `x` of each row, rows bottom-up.
fn scan_rows_max(lat: &Lattice, rect: Rect) -> Result<Vec<(i64, i64)>, LatticeError> {
    if rect.cells() > MAX_CELLS {
        return Err(LatticeError::TooLarge(rect.cells()));
    }
    let mut rows = Vec::new();
    for y in rect.y0..=rect.y1 {
        let hit = (rect.x0..=rect.x1)
            .rev()
            .find(|&x| lat.contains(&Pt::new(x, y)));
        if let Some(x) = hit {
            rows.push((x, y));
        }
    }
    Ok(rows)
}

/// Row arithmetic shared by the fast point-set routines.
struct Rows {
    d: i128,
    slope: i128,
}

impl Rows {
    fn new(spec: &QuotientSpec) -> Result<Self, LatticeError> {
        Ok(Rows {
            d: to_i128(&spec.d)?,
            slope: to_i128(&spec.row_slope())?,
        })
    }

    /// Residue of `x` on row `y`.
    fn residue(&self, y: i128) -> i128 {
        (self.slope * y.rem_euclid(self.d)).rem_euclid(self.d)
    }

    /// Least lattice `x >= lo` on row `y`.
    fn first_at_least(&self, y: i128, lo: i128) -> i128 {
        lo + (self.residue(y) - lo).rem_euclid(self.d)
    }

    /// Greatest lattice `x <= hi` on row `y`.
    fn last_at_most(&self, y: i128, hi: i128) -> i128 {
        hi - (hi - self.residue(y)).rem_euclid(self.d)
    }
}

fn check_rows(n: i128) -> Result<(), LatticeError> {
    if n > MAX_CELLS as i128 {
        return Err(LatticeError::TooLarge(n as u64));
    }
    Ok(())
}

fn require_nontrivial(spec: &QuotientSpec) -> Result<(), LatticeError> {
    if crate::oracle::member_big(&spec.d, &spec.a, &spec.b) {
        return Err(LatticeError::Domain(format!(
            "{} lies in <{},{}>, the quotient is N",
            spec.d, spec.a, spec.b
        )));
    }
    Ok(())
}

/// Minimal points of `L` in `[x0, x1] x [y0, y1]` (origin excluded), by one
/// modular step per row. Sorted by decreasing `x`.
fn min_points_rows(spec: &QuotientSpec, x0: i128, x1: i128, y0: i128, y1: i128) -> Vec<Pt> {
    let rows = Rows::new(spec).expect("checked by caller");
    let mut out = Vec::new();
    let mut best: Option<i128> = None;
    for y in y0..=y1 {
        let mut x = rows.first_at_least(y, x0);
        if x == 0 && y == 0 {
            x += rows.d;
        }
        if x > x1 {
            continue;
        }
        if best.is_none_or(|b| x < b) {
            best = Some(x);
            out.push(Pt::new(x, y));
        }
    }
    out
}

/// Lattice points that represent the gaps of the quotient: `L` inside the
/// triangle `{1 <= x <= b-1, -(a-1) <= y <= -1, a x + b y > 0}`.
pub fn gaps_points(spec: &QuotientSpec) -> Result<Vec<Pt>, LatticeError> {
    require_nontrivial(spec)?;
    let (a, b) = (to_i128(&spec.a)?, to_i128(&spec.b)?);
    let rows = Rows::new(spec)?;
    let mut out = Vec::new();
    for y in -(a - 1)..=-1 {
        let mut x = rows.first_at_least(y, 1);
        while x <= b - 1 {
            if a * x + b * y > 0 {
                out.push(Pt::new(x, y));
                check_rows(out.len() as i128)?;
            }
            x += rows.d;
        }
    }
    Ok(out)
}

/// Half the number of lattice points in `[1, b-1] x [-(a-1), -1]`, which is
/// the genus of the quotient. Counts one row at a time.
pub fn genus_by_rectangle(spec: &QuotientSpec) -> Result<Int, LatticeError> {
    require_nontrivial(spec)?;
    let total = rectangle_count(spec)?;
    debug_assert!(total.is_even());
    Ok(total / 2)
}

/// `#(L ∩ [1, b-1] x [-(a-1), -1])`.
pub fn rectangle_count(spec: &QuotientSpec) -> Result<Int, LatticeError> {
    let (a, b) = (to_i128(&spec.a)?, to_i128(&spec.b)?);
    check_rows(a)?;
    let rows = Rows::new(spec)?;
    let mut total = Int::zero();
    for y in -(a - 1)..=-1 {
        let x = rows.first_at_least(y, 1);
        if x <= b - 1 {
            total += Int::from((b - 1 - x) / rows.d + 1);
        }
    }
    Ok(total)
}

/// `x_0`: the least `x >= 0` of a lattice point with `1 <= y <= a-1`.
pub fn x0_bf(spec: &QuotientSpec) -> Result<Int, LatticeError> {
    let a = to_i128(&spec.a)?;
    check_rows(a)?;
    let rows = Rows::new(spec)?;
    let best = (1..a).map(|y| rows.first_at_least(y, 0)).min().expect("a >= 2");
    Ok(Int::from(best))
}

/// Lattice points whose images are the minimal generators of the quotient.
///
/// The rectangle depends on the position of `d`: `[1, d-1]^2` plus `(d, 0)`
/// and `(0, d)` when `d < a`; `[1, d-1] x [1, a-1]` plus `(d, 0)` when
/// `a < d < b`; `[1, x_1] x [0, a-1]` with `x_1 = min(d, x_0 + b - 1)` when
/// `d > b`.
pub fn irr_points(spec: &QuotientSpec) -> Result<Vec<Pt>, LatticeError> {
    require_nontrivial(spec)?;
    let (a, b, d) = (to_i128(&spec.a)?, to_i128(&spec.b)?, to_i128(&spec.d)?);
    let mut pts;
    if d < a {
        check_rows(d)?;
        pts = vec![Pt::new(d, 0)];
        pts.extend(min_points_rows(spec, 1, d - 1, 1, d - 1));
        pts.push(Pt::new(0, d));
    } else if d < b {
        check_rows(a)?;
        pts = vec![Pt::new(d, 0)];
        pts.extend(min_points_rows(spec, 1, d - 1, 1, a - 1));
    } else {
        check_rows(a)?;
        let x0 = to_i128(&x0_bf(spec)?)?;
        let x1 = d.min(x0 + b - 1);
        pts = min_points_rows(spec, 1, x1, 0, a - 1);
    }
    Ok(pts)
}

/// Lattice points whose images are the pseudo-Frobenius numbers: maximal
/// points of `L` in `[b - δ, b - 1] x [-δ', -1]` with `δ = min(d, b-1)` and
/// `δ' = min(d, a-1)`. Sorted by decreasing `x`.
pub fn pf_points(spec: &QuotientSpec) -> Result<Vec<Pt>, LatticeError> {
    require_nontrivial(spec)?;
    let (a, b, d) = (to_i128(&spec.a)?, to_i128(&spec.b)?, to_i128(&spec.d)?);
    let delta = d.min(b - 1);
    let delta_p = d.min(a - 1);
    check_rows(delta_p)?;
    let rows = Rows::new(spec)?;
    let mut out = Vec::new();
    let mut best: Option<i128> = None;
    // Top row first; a point is maximal when its x beats every higher row.
    for y in (-delta_p..=-1).rev() {
        let x = rows.last_at_most(y, b - 1);
        if x < b - delta {
            continue;
        }
        if best.is_none_or(|bx| x > bx) {
            best = Some(x);
            out.push(Pt::new(x, y));
        }
    }
    out.reverse();
    Ok(out)
}

/// The window `sigma..=s` of the quadrant chain `u_0..u_r` (for the span of
/// `(d, 0)` and `(m, 1)`, `a m + b = 0 mod d`) whose points represent the
/// minimal generators: `s` is the last index with `y(u_s) < a`, and `sigma`
/// the first index with `x(u_sigma) < b + x(u_s)`.
pub fn chain_window(spec: &QuotientSpec) -> Result<(Vec<Pt>, usize, usize), LatticeError> {
    require_nontrivial(spec)?;
    if spec.d.is_one() {
        return Err(LatticeError::Domain("d must be at least 2".into()));
    }
    let m = (-&spec.b * mod_inverse(&spec.a, &spec.d).expect("coprime")).mod_floor(&spec.d);
    let chain = min_points_quadrant(&spec.d, &m)?;
    let s = chain.iter().rposition(|u| u.y < spec.a).expect("u_0 has y = 0");
    let bound = &spec.b + &chain[s].x;
    let sigma = chain.iter().position(|u| u.x < bound).expect("u_s qualifies");
    Ok((chain, sigma, s))
}

//! Exact rational arithmetic and continued fraction expansions.
//!
//! Two expansions are supported for a rational `x`:
//!
//! * the floor expansion `[a0, a1, ..., ar, 1]` with `a0 + 1/(a1 + 1/(...))`,
//!   always stored in the form that ends with the term `1`;
//! * the ceiling expansion `⌈d0, d1, ..., dρ⌉` with `d0 - 1/(d1 - 1/(...))`
//!   and `di >= 2` for `i >= 1`.
//!
//! Both expansions are computed with integer Euclidean steps, so no rounding
//! happens anywhere.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision integer used throughout the crate.
pub type Int = BigInt;

/// Exact reduced fraction with positive denominator.
pub type Rat = BigRational;

/// Errors raised by the continued fraction layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfeError {
    /// The ceiling expansion needs more terms than the caller allowed.
    #[error("LengthExceeded: ceiling expansion needs more than {max_len} terms")]
    LengthExceeded {
        /// The limit that was exceeded.
        max_len: usize,
    },
    /// A term sequence violates the shape rules of its expansion kind.
    #[error("Malformed: {0}")]
    Malformed(String),
    /// A string could not be read as a rational.
    #[error("ParseError: cannot read {0:?} as p/q")]
    Parse(String),
}

/// Builds a rational from two machine integers.
///
/// # Panics
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Builds an integral rational.
pub fn rat_int(n: impl Into<Int>) -> Rat {
    Rat::from_integer(n.into())
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat, CfeError> {
    let err = || CfeError::Parse(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: Int = num.parse().map_err(|_| err())?;
    let den: Int = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rat::new(num, den))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Largest integer `<= x`.
pub fn floor(x: &Rat) -> Int {
    x.numer().div_floor(x.denom())
}

/// Smallest integer `>= x`.
pub fn ceil(x: &Rat) -> Int {
    -((-x.numer()).div_floor(x.denom()))
}

/// Fractional part `x - floor(x)`, in `[0, 1)`.
pub fn frac(x: &Rat) -> Rat {
    Rat::new(x.numer().mod_floor(x.denom()), x.denom().clone())
}

/// Which of the two continued fraction conventions a table belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CfeKind {
    /// `[a0, a1, ...]` with `+` signs.
    Floor,
    /// `⌈d0, d1, ...⌉` with `-` signs.
    Ceiling,
}

/// Convergent numerators and denominators of an expansion.
///
/// Entry `i` holds the value of the expansion truncated after term `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentTable {
    /// Numerators `p_0, p_1, ...`.
    pub ps: Vec<Int>,
    /// Denominators `q_0, q_1, ...`.
    pub qs: Vec<Int>,
    /// Convention of the source expansion.
    pub kind: CfeKind,
}

impl ConvergentTable {
    /// Value of convergent `i` as a rational.
    pub fn value(&self, i: usize) -> Rat {
        Rat::new(self.ps[i].clone(), self.qs[i].clone())
    }

    /// Number of convergents.
    pub fn len(&self) -> usize {
        self.ps.len()
    }

    /// True when the table has no entries.
    pub fn is_empty(&self) -> bool {
        self.ps.is_empty()
    }
}

/// Common interface of the two expansion kinds.
pub trait Expansion {
    /// The partial quotients.
    fn terms(&self) -> &[Int];
    /// The convention of this expansion.
    fn kind(&self) -> CfeKind;

    /// Convergent table of the expansion.
    ///
    /// Floor convergents use the seeds `p(-1) = 1, p(-2) = 0, q(-1) = 0,
    /// q(-2) = 1` and `p_i = a_i p_{i-1} + p_{i-2}`. Ceiling convergents use
    /// `p(-1) = 1, p(-2) = 0, q(-1) = 0, q(-2) = -1` and
    /// `p_i = d_i p_{i-1} - p_{i-2}`, so that `p_i / q_i = ⌈d0, ..., di⌉`.
    fn convergents(&self) -> ConvergentTable {
        let (sign, q_seed): (Int, Int) = match self.kind() {
            CfeKind::Floor => (Int::one(), Int::one()),
            CfeKind::Ceiling => (-Int::one(), -Int::one()),
        };
        let (mut p2, mut p1) = (Int::zero(), Int::one());
        let (mut q2, mut q1) = (q_seed, Int::zero());
        let mut ps = Vec::with_capacity(self.terms().len());
        let mut qs = Vec::with_capacity(self.terms().len());
        for t in self.terms() {
            let p = t * &p1 + &sign * &p2;
            let q = t * &q1 + &sign * &q2;
            p2 = std::mem::replace(&mut p1, p.clone());
            q2 = std::mem::replace(&mut q1, q.clone());
            ps.push(p);
            qs.push(q);
        }
        ConvergentTable {
            ps,
            qs,
            kind: self.kind(),
        }
    }

    /// Exact value of the expansion.
    fn value(&self) -> Rat {
        let t = self.convergents();
        let last = t.len() - 1;
        t.value(last)
    }
}

/// Convergent table of either expansion kind.
pub fn convergent_table<E: Expansion + ?Sized>(c: &E) -> ConvergentTable {
    c.convergents()
}

/// Floor continued fraction `[t0, t1, ..., ts, 1]` ending with the term 1.
///
/// An integer `x` is stored as `[x - 1, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FloorCfe {
    terms: Vec<Int>,
}

impl FloorCfe {
    /// Checks the shape rules and wraps the terms.
    pub fn new(terms: Vec<Int>) -> Result<Self, CfeError> {
        if terms.len() < 2 {
            return Err(CfeError::Malformed(
                "a floor expansion has at least two terms".into(),
            ));
        }
        if !terms.last().is_some_and(One::is_one) {
            return Err(CfeError::Malformed(
                "a floor expansion ends with the term 1".into(),
            ));
        }
        if terms[1..].iter().any(|t| !t.is_positive()) {
            return Err(CfeError::Malformed(
                "floor partial quotients after the first are >= 1".into(),
            ));
        }
        Ok(FloorCfe { terms })
    }

    /// CFE depth: the number of partial quotients strictly between the
    /// integer part and the final 1.
    pub fn depth(&self) -> usize {
        self.terms.len() - 2
    }

    /// Consumes the expansion and returns its terms.
    pub fn into_terms(self) -> Vec<Int> {
        self.terms
    }
}

impl Expansion for FloorCfe {
    fn terms(&self) -> &[Int] {
        &self.terms
    }
    fn kind(&self) -> CfeKind {
        CfeKind::Floor
    }
}

impl fmt::Display for FloorCfe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join(&self.terms))
    }
}

/// Ceiling continued fraction `⌈d0, d1, ..., dρ⌉` with `di >= 2` for `i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CeilCfe {
    terms: Vec<Int>,
}

impl CeilCfe {
    /// Checks the shape rules and wraps the terms.
    pub fn new(terms: Vec<Int>) -> Result<Self, CfeError> {
        if terms.is_empty() {
            return Err(CfeError::Malformed(
                "a ceiling expansion has at least one term".into(),
            ));
        }
        let two = Int::from(2);
        if terms[1..].iter().any(|t| *t < two) {
            return Err(CfeError::Malformed(
                "ceiling partial quotients after the first are >= 2".into(),
            ));
        }
        Ok(CeilCfe { terms })
    }

    /// Index of the last term.
    pub fn rho(&self) -> usize {
        self.terms.len() - 1
    }

    /// Consumes the expansion and returns its terms.
    pub fn into_terms(self) -> Vec<Int> {
        self.terms
    }

    /// ASCII rendering `c[d0,d1,...]`.
    pub fn ascii(&self) -> String {
        format!("c[{}]", join(&self.terms))
    }
}

impl Expansion for CeilCfe {
    fn terms(&self) -> &[Int] {
        &self.terms
    }
    fn kind(&self) -> CfeKind {
        CfeKind::Ceiling
    }
}

impl fmt::Display for CeilCfe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⌈{}⌉", join(&self.terms))
    }
}

fn join(terms: &[Int]) -> String {
    terms
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Standard floor expansion `[a0, ..., an]` with `an >= 2` unless `n = 0`.
fn euclid_terms(x: &Rat) -> Vec<Int> {
    let (mut p, mut q) = (x.numer().clone(), x.denom().clone());
    let mut terms = Vec::new();
    loop {
        let (a, r) = p.div_mod_floor(&q);
        terms.push(a);
        if r.is_zero() {
            return terms;
        }
        p = std::mem::replace(&mut q, r);
    }
}

/// Floor expansion of `x` in the form ending with 1.
pub fn floor_cfe(x: &Rat) -> FloorCfe {
    let mut terms = euclid_terms(x);
    if let Some(last) = terms.last_mut() {
        *last -= 1;
    }
    terms.push(Int::one());
    FloorCfe { terms }
}

/// Ceiling expansion of `x`, failing if it needs more than `max_len` terms.
pub fn ceil_cfe(x: &Rat, max_len: usize) -> Result<CeilCfe, CfeError> {
    let (mut p, mut q) = (x.numer().clone(), x.denom().clone());
    let mut terms = Vec::new();
    loop {
        if terms.len() == max_len {
            return Err(CfeError::LengthExceeded { max_len });
        }
        let d = -((-&p).div_floor(&q));
        let t = &d * &q - &p;
        terms.push(d);
        if t.is_zero() {
            return Ok(CeilCfe { terms });
        }
        p = std::mem::replace(&mut q, t);
    }
}

/// Evaluates a floor expansion.
pub fn eval_floor(c: &FloorCfe) -> Rat {
    c.value()
}

/// Evaluates a ceiling expansion.
pub fn eval_ceil(c: &CeilCfe) -> Rat {
    c.value()
}

/// Rewrites a floor expansion as the ceiling expansion of the same value.
///
/// With `[a0, a1, ..., ar, 1]`, the result starts with `a0 + 1` and each
/// pair `(a(2i-1), a(2i))` becomes `a(2i-1) - 1` twos followed by
/// `a(2i) + 2`. When `r` is odd the missing `a(r+1)` is taken as 0.
pub fn floor_to_ceil(c: &FloorCfe) -> CeilCfe {
    let t = &c.terms;
    let body = &t[1..t.len() - 1];
    let mut out = vec![&t[0] + 1];
    let zero = Int::zero();
    for pair in body.chunks(2) {
        let odd = &pair[0];
        let even = pair.get(1).unwrap_or(&zero);
        let mut k = Int::one();
        while k < *odd {
            out.push(Int::from(2));
            k += 1;
        }
        out.push(even + 2);
    }
    CeilCfe { terms: out }
}

/// Rewrites a ceiling expansion as the floor expansion of the same value.
///
/// Runs of `k` twos closed by a term `c >= 3` give the pair `(k + 1, c - 2)`;
/// a final run of `k` twos gives a single odd-position term `k`.
pub fn ceil_to_floor(c: &CeilCfe) -> FloorCfe {
    let t = &c.terms;
    let two = Int::from(2);
    let mut out = vec![&t[0] - 1];
    let mut run: u64 = 0;
    for d in &t[1..] {
        if *d == two {
            run += 1;
        } else {
            out.push(Int::from(run + 1));
            out.push(d - 2);
            run = 0;
        }
    }
    if run > 0 {
        out.push(Int::from(run));
    }
    out.push(Int::one());
    FloorCfe { terms: out }
}

/// All semiconvergents of `x`, deduplicated and sorted by denominator
/// (ties by value).
///
/// With the standard expansion `[a0, ..., an]` and its convergents, these
/// are `p0/q0` together with `(p(k-1) + j p(k)) / (q(k-1) + j q(k))` for
/// `0 <= k < n` and `1 <= j <= a(k+1)`.
pub fn semiconvergents(x: &Rat) -> Vec<Rat> {
    let a = euclid_terms(x);
    let (mut p1, mut p0) = (Int::one(), a[0].clone());
    let (mut q1, mut q0) = (Int::zero(), Int::one());
    let mut out = vec![Rat::from_integer(p0.clone())];
    for ak in &a[1..] {
        let mut j = Int::one();
        while j <= *ak {
            out.push(Rat::new(&p1 + &j * &p0, &q1 + &j * &q0));
            j += 1;
        }
        let p = ak * &p0 + &p1;
        let q = ak * &q0 + &q1;
        p1 = std::mem::replace(&mut p0, p);
        q1 = std::mem::replace(&mut q0, q);
    }
    out.sort_by(|u, v| u.denom().cmp(v.denom()).then_with(|| u.cmp(v)));
    out.dedup();
    out
}

/// The rational of least denominator in the closed interval between `lo`
/// and `hi` (in either order).
///
/// When the interval holds integers, the integer nearest to `lo` is
/// returned; otherwise the answer is unique.
pub fn best_rational(lo: &Rat, hi: &Rat) -> Rat {
    if lo <= hi {
        simplest_between(lo, true, Some(hi), true)
    } else {
        let r = simplest_between(hi, true, Some(lo), true);
        if r.is_integer() {
            Rat::from_integer(floor(lo))
        } else {
            r
        }
    }
}

/// The rational of least denominator in `]lo, hi]`, with `lo < hi`.
pub fn best_rational_half_open(lo: &Rat, hi: &Rat) -> Rat {
    simplest_between(lo, false, Some(hi), true)
}

/// Least-denominator rational in the interval from `lo` to `hi` (`None`
/// meaning `+inf`, always open), with the given end closures and `lo < hi`.
/// Among integers, the smallest one is returned.
pub fn simplest_between(lo: &Rat, lo_closed: bool, hi: Option<&Rat>, hi_closed: bool) -> Rat {
    let fl = floor(lo);
    let lo_is_int = lo.is_integer();
    let first_int = if lo_is_int && lo_closed { fl.clone() } else { &fl + 1 };
    let fits = match hi {
        None => true,
        Some(h) => {
            let n = Rat::from_integer(first_int.clone());
            n < *h || (hi_closed && n == *h)
        }
    };
    if fits {
        return Rat::from_integer(first_int);
    }
    // No integer inside: both ends lie in [fl, fl + 1].
    let h = hi.expect("an unbounded interval always holds an integer");
    let flr = Rat::from_integer(fl.clone());
    let lo_off = lo - &flr;
    let hi_off = h - &flr;
    let new_lo = hi_off.recip();
    let new_hi = if lo_off.is_zero() {
        None
    } else {
        Some(lo_off.recip())
    };
    let inner = simplest_between(&new_lo, hi_closed, new_hi.as_ref(), lo_closed);
    flr + inner.recip()
}

/// Compares digit strings in the alternate lexicographic order.
///
/// The first differing position `j` (1-based) decides: for odd `j` the
/// larger digit is larger, for even `j` the order is reversed. Shorter
/// strings are padded with zeros.
pub fn alo_cmp<T: Ord + Zero>(u: &[T], v: &[T]) -> Ordering {
    let zero = T::zero();
    let n = u.len().max(v.len());
    for j in 0..n {
        let x = u.get(j).unwrap_or(&zero);
        let y = v.get(j).unwrap_or(&zero);
        match x.cmp(y) {
            Ordering::Equal => continue,
            o if j % 2 == 0 => return o,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// Compares digit strings in the reversed lexicographic order: the last
/// differing position decides. Shorter strings are padded with zeros.
pub fn rlo_cmp<T: Ord + Zero>(u: &[T], v: &[T]) -> Ordering {
    let zero = T::zero();
    let n = u.len().max(v.len());
    for j in (0..n).rev() {
        let x = u.get(j).unwrap_or(&zero);
        let y = v.get(j).unwrap_or(&zero);
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// A rational or `+inf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ext {
    /// A finite value.
    Finite(Rat),
    /// Positive infinity.
    Infinite,
}

/// `F(x) = 1/{x}`, with `F(x) = +inf` for integers and for `+inf`.
pub fn map_f(x: &Ext) -> Ext {
    match x {
        Ext::Finite(v) if !v.is_integer() => Ext::Finite(frac(v).recip()),
        _ => Ext::Infinite,
    }
}

/// `C(x) = 1/(1 - {x})`, with `C(x) = +inf` for integers and for `+inf`.
pub fn map_c(x: &Ext) -> Ext {
    match x {
        Ext::Finite(v) if !v.is_integer() => Ext::Finite((Rat::one() - frac(v)).recip()),
        _ => Ext::Infinite,
    }
}

/// Modular inverse of `a` modulo `m` (`m >= 1`), when it exists.
pub fn mod_inverse(a: &Int, m: &Int) -> Option<Int> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    /// Right fold of a floor expansion, written independently of the
    /// convergent recurrence.
    fn fold_floor(t: &[i64]) -> Rat {
        let mut v = rat_int(*t.last().unwrap());
        for &a in t[..t.len() - 1].iter().rev() {
            v = rat_int(a) + v.recip();
        }
        v
    }

    fn fold_ceil(t: &[i64]) -> Rat {
        let mut v = rat_int(*t.last().unwrap());
        for &d in t[..t.len() - 1].iter().rev() {
            v = rat_int(d) - v.recip();
        }
        v
    }

    #[test]
    fn floor_examples() {
        assert_eq!(floor_cfe(&rat(5, 7)).terms(), ints(&[0, 1, 2, 1, 1]));
        assert_eq!(floor_cfe(&rat(3, 1)).terms(), ints(&[2, 1]));
        let x = rat(347, 6);
        let c = floor_cfe(&x);
        assert_eq!(fold_floor(&c.terms().iter().map(|t| t.try_into().unwrap()).collect::<Vec<i64>>()), x);
        assert_eq!(eval_floor(&c), x);
        assert_eq!(floor_cfe(&rat(-7, 3)).value(), rat(-7, 3));
    }

    #[test]
    fn ceil_examples() {
        assert_eq!(ceil_cfe(&rat(5, 4), 10).unwrap().terms(), ints(&[2, 2, 2, 2]));
        assert_eq!(fold_ceil(&[1, 4, 2]), rat(5, 7));
        assert_eq!(ceil_cfe(&rat(5, 7), 10).unwrap().terms(), ints(&[1, 4, 2]));
        assert_eq!(ceil_cfe(&rat(6, 1), 10).unwrap().terms(), ints(&[6]));
        assert_eq!(
            ceil_cfe(&rat(1, 6), 3),
            Err(CfeError::LengthExceeded { max_len: 3 })
        );
        assert_eq!(fold_ceil(&[2, 3, 3]), rat(13, 8));
        assert_eq!(eval_ceil(&CeilCfe::new(ints(&[2, 3, 3])).unwrap()), rat(13, 8));
        assert_eq!(eval_floor(&FloorCfe::new(ints(&[5, 1])).unwrap()), rat(6, 1));
    }

    #[test]
    fn all_twos_is_n_over_n_minus_one() {
        for n in 2..30i64 {
            let c = CeilCfe::new(vec![Int::from(2); (n - 1) as usize]).unwrap();
            assert_eq!(c.value(), rat(n, n - 1));
            assert_eq!(fold_ceil(&vec![2; (n - 1) as usize]), rat(n, n - 1));
        }
    }

    #[test]
    fn convergent_examples() {
        let t = floor_cfe(&rat(5, 7)).convergents();
        assert_eq!(t.qs, ints(&[1, 1, 3, 4, 7]));
        assert_eq!(t.ps, ints(&[0, 1, 2, 3, 5]));
        let c = ceil_cfe(&rat(5, 7), 10).unwrap();
        let t = convergent_table(&c);
        assert_eq!(t.qs, ints(&[1, 4, 7]));
        assert_eq!(t.ps, ints(&[1, 3, 5]));
        for i in 0..t.len() {
            assert_eq!(t.value(i), fold_ceil(&[1, 4, 2][..=i]));
        }
        let t = FloorCfe::new(ints(&[2, 1])).unwrap().convergents();
        assert_eq!((t.ps.clone(), t.qs.clone()), (ints(&[2, 3]), ints(&[1, 1])));
    }

    #[test]
    fn pattern_substitution_examples() {
        let f = floor_cfe(&rat(5, 7));
        assert_eq!(floor_to_ceil(&f), ceil_cfe(&rat(5, 7), 100).unwrap());
        let f = FloorCfe::new(ints(&[0, 5, 1])).unwrap();
        assert_eq!(f.value(), rat(1, 6));
        assert_eq!(ceil_to_floor(&floor_to_ceil(&f)), f);
        assert_eq!(floor_to_ceil(&floor_cfe(&rat(4, 1))).terms(), ints(&[4]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(floor_cfe(&rat(5, 7)).to_string(), "[0,1,2,1,1]");
        let c = ceil_cfe(&rat(5, 7), 10).unwrap();
        assert_eq!(c.to_string(), "⌈1,4,2⌉");
        assert_eq!(c.ascii(), "c[1,4,2]");
        assert_eq!(fmt_rat(&rat(6, 3)), "2");
        assert_eq!(fmt_rat(&parse_rat("10/-4").unwrap()), "-5/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn semiconvergent_examples() {
        let s = semiconvergents(&rat(5, 7));
        let want = vec![rat(0, 1), rat(1, 1), rat(1, 2), rat(2, 3), rat(3, 4), rat(5, 7)];
        assert_eq!(s, want);
    }

    /// Least denominator in the closed interval by direct scan.
    fn scan_best(lo: &Rat, hi: &Rat) -> Rat {
        let (l, h) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let mut q = Int::one();
        loop {
            let p = ceil(&(l * Rat::from_integer(q.clone())));
            let r = Rat::new(p, q.clone());
            if r <= *h {
                return r;
            }
            q += 1;
        }
    }

    #[test]
    fn best_rational_examples() {
        assert_eq!(best_rational(&rat(5, 7), &rat(3, 4)), rat(3, 4));
        assert_eq!(scan_best(&rat(5, 7), &rat(3, 4)), rat(3, 4));
        assert_eq!(best_rational(&rat(1, 3), &rat(2, 3)), rat(1, 2));
        assert_eq!(best_rational(&rat(2, 1), &rat(3, 1)), rat(2, 1));
        assert_eq!(best_rational(&rat(3, 1), &rat(2, 1)), rat(3, 1));
        assert_eq!(best_rational(&rat(7, 2), &rat(1, 2)), rat(3, 1));
        assert_eq!(best_rational_half_open(&rat(2, 3), &rat(3, 4)), rat(3, 4));
        assert_eq!(best_rational_half_open(&rat(1, 2), &rat(2, 3)), rat(2, 3));
    }

    #[test]
    fn order_examples() {
        assert_eq!(alo_cmp(&[1, 0, 1], &[1, 0, 0]), Ordering::Greater);
        assert_eq!(alo_cmp(&[1, 1, 0], &[1, 0, 0]), Ordering::Less);
        assert_eq!(rlo_cmp(&[1, 2, 0], &[1, 0, 1]), Ordering::Less);
        assert_eq!(rlo_cmp(&[1, 2], &[1, 2, 0]), Ordering::Equal);
        assert_eq!(alo_cmp(&[3, 1], &[3, 1]), Ordering::Equal);
    }

    #[test]
    fn ceiling_map_iterates_match_floor_map_squared() {
        let x = Ext::Finite(rat(5, 7));
        let fx = map_f(&x);
        let a = match &fx {
            Ext::Finite(v) => floor(v),
            Ext::Infinite => unreachable!(),
        };
        let mut c = x.clone();
        let mut i = Int::zero();
        while i < a {
            c = map_c(&c);
            i += 1;
        }
        let ffx = map_f(&fx);
        let want = match ffx {
            Ext::Finite(v) => Ext::Finite(v + Rat::one()),
            Ext::Infinite => Ext::Infinite,
        };
        assert_eq!(c, want);
        assert_eq!(map_f(&Ext::Finite(rat(3, 1))), Ext::Infinite);
        assert_eq!(map_c(&Ext::Infinite), Ext::Infinite);
    }

    #[test]
    fn inverse_mod() {
        assert_eq!(mod_inverse(&Int::from(7), &Int::from(6)), Some(Int::one()));
        assert_eq!(mod_inverse(&Int::from(-3), &Int::from(7)), Some(Int::from(2)));
        assert_eq!(mod_inverse(&Int::from(4), &Int::from(6)), None);
    }
}

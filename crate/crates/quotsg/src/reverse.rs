//! The reverse problem: given a finite set `I`, find every pairwise coprime
//! `(a, b, d)` with `Irr(<a,b>/d) = I`.
//!
//! A set can be a generator set of such a quotient only if it can be listed
//! as a modular-convex sequence `n_0, ..., n_r`, meaning
//! `n_{i-1} + n_{i+1} = d_i n_i` with integers `d_i >= 2`. The solutions
//! split by the position of `d`:
//!
//! * `d < a < b`: one triple per admissible ordering ([`solve_case1`]);
//! * `a < d < b`: a one-parameter family per ordering, obtained by
//!   extending the sequence by one term on the right ([`solve_case2`]);
//! * `a < b < d`: a two-parameter family per ordering, obtained by
//!   extending on both sides ([`solve_case3`]).
//!
//! Every emitted triple is re-checked against the closed-form generator set
//! of [`crate::invariants`] before it is returned.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactmath::{ceil_cfe, mod_inverse, CfeError, Expansion, Int, Rat};
use crate::invariants::{irr_of, InvariantsError};
use crate::lattice::{LatticeError, Pt, QuotientSpec};

/// Longest chain [`complete_chain`] agrees to build.
pub const MAX_CHAIN: usize = 1_000_000;

/// Largest set whose orderings are searched exhaustively. Larger sets only
/// try the order given by the caller and its reverse.
pub const MAX_SEARCH: usize = 10;

/// Errors raised by the reverse solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReverseError {
    /// The sequence has an interior term whose neighbours do not sum to a
    /// multiple `d_i >= 2` of it.
    #[error("NotModularConvex: {0}")]
    NotModularConvex(String),
    /// The endpoints do not satisfy `w = -p u0 + q u1` with `0 < p < q`
    /// coprime.
    #[error("NoChain: {0}")]
    NoChain(String),
    /// Input outside the domain of the operation.
    #[error("DomainError: {0}")]
    Domain(String),
    /// A produced triple failed the final generator check.
    #[error("InternalInconsistency: {0}")]
    InternalInconsistency(String),
    /// Failure in the ceiling expansion.
    #[error(transparent)]
    Cfe(#[from] CfeError),
    /// Failure while building a quotient.
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    /// Failure while computing a generator set.
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
}

/// Coefficients `d_i` of a modular-convex sequence, or `None`.
///
/// Sequences of length 2 are modular-convex with no coefficients.
pub fn is_modular_convex(seq: &[Int]) -> Option<Vec<Int>> {
    if seq.len() < 2 {
        return None;
    }
    let two = Int::from(2);
    let mut ds = Vec::with_capacity(seq.len() - 2);
    for w in seq.windows(3) {
        if w[1].is_zero() {
            return None;
        }
        let (k, rem) = (&w[0] + &w[2]).div_rem(&w[1]);
        if !rem.is_zero() || k < two {
            return None;
        }
        ds.push(k);
    }
    Some(ds)
}

/// Ceiling convergents `Q_i / P_i = ⌈d_1, ..., d_i⌉` with the seeds
/// `Q_{-1} = 0, Q_0 = 1, P_{-1} = -1, P_0 = 0`.
#[derive(Debug, Clone)]
struct Convergents {
    q: Vec<Int>,
    p: Vec<Int>,
}

impl Convergents {
    fn new(ds: &[Int]) -> Self {
        let mut q = vec![Int::zero(), Int::one()];
        let mut p = vec![-Int::one(), Int::zero()];
        for d in ds {
            let n = q.len();
            q.push(d * &q[n - 1] - &q[n - 2]);
            p.push(d * &p[n - 1] - &p[n - 2]);
        }
        Convergents { q, p }
    }

    /// `Q_i` for `i >= -1`.
    fn q(&self, i: isize) -> &Int {
        &self.q[(i + 1) as usize]
    }

    /// `P_i` for `i >= -1`.
    fn p(&self, i: isize) -> &Int {
        &self.p[(i + 1) as usize]
    }
}

/// A modular-convex sequence of positive integers with its coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenSeq {
    n: Vec<Int>,
    d: Vec<Int>,
}

impl GenSeq {
    /// Checks positivity and modular convexity.
    pub fn new(n: Vec<Int>) -> Result<Self, ReverseError> {
        if n.len() < 2 {
            return Err(ReverseError::Domain(
                "a generator sequence has at least two terms".into(),
            ));
        }
        if n.iter().any(|x| !x.is_positive()) {
            return Err(ReverseError::Domain(format!(
                "terms must be positive, got {}",
                fmt_seq(&n)
            )));
        }
        match is_modular_convex(&n) {
            Some(d) => Ok(GenSeq { n, d }),
            None => Err(ReverseError::NotModularConvex(fmt_seq(&n))),
        }
    }

    /// Builds a sequence from machine integers.
    pub fn from_u64(n: &[u64]) -> Result<Self, ReverseError> {
        Self::new(n.iter().map(|&x| Int::from(x)).collect())
    }

    /// The terms `n_0, ..., n_r`.
    pub fn terms(&self) -> &[Int] {
        &self.n
    }

    /// The coefficients `d_1, ..., d_{r-1}`.
    pub fn coeffs(&self) -> &[Int] {
        &self.d
    }

    /// Index of the last term.
    pub fn r(&self) -> usize {
        self.n.len() - 1
    }

    fn first(&self) -> &Int {
        &self.n[0]
    }

    fn last(&self) -> &Int {
        &self.n[self.r()]
    }

    fn require_coprime_start(&self) -> Result<(), ReverseError> {
        let g = self.n[0].gcd(&self.n[1]);
        if g.is_one() {
            Ok(())
        } else {
            Err(ReverseError::Domain(format!(
                "gcd(n_0, n_1) = {g} for {}, expected 1",
                fmt_seq(&self.n)
            )))
        }
    }

    /// No term lies in the monoid spanned by the others.
    ///
    /// Decided by `Q_{r-1} < min(n_0, n_r)`, which needs
    /// `gcd(n_0, n_1) = 1`.
    pub fn n_independent(&self) -> Result<bool, ReverseError> {
        self.require_coprime_start()?;
        let c = Convergents::new(&self.d);
        let q = c.q(self.r() as isize - 1);
        Ok(q < self.first() && q < self.last())
    }

    /// Indices `(sigma, s)` such that the minimal generators of the monoid
    /// spanned by the sequence are `n_sigma, ..., n_s`.
    ///
    /// With `y_i = Q_{i-1}` and `x_i = P_{r-1} Q_{i-1} - Q_{r-1} P_{i-1}`,
    /// `s` is fixed by `y_s < n_0 <= y_{s+1}` and `sigma` by
    /// `x_sigma < x_s + n_r <= x_{sigma-1}`, where `y_{r+1}` and `x_{-1}` are
    /// infinite.
    pub fn irr_window(&self) -> Result<(usize, usize), ReverseError> {
        self.require_coprime_start()?;
        let r = self.r() as isize;
        let c = Convergents::new(&self.d);
        let y = |i: isize| c.q(i - 1).clone();
        let x = |i: isize| c.p(r - 1) * c.q(i - 1) - c.q(r - 1) * c.p(i - 1);
        let s = (0..=r).rev().find(|&i| &y(i) < self.first()).unwrap_or(0);
        let bound = x(s) + self.last();
        let sigma = (0..=s).find(|&i| x(i) < bound).unwrap_or(s);
        Ok((sigma as usize, s as usize))
    }

    /// Minimal generators of the monoid spanned by the sequence, in
    /// sequence order.
    pub fn irr_of_span(&self) -> Result<Vec<Int>, ReverseError> {
        let (sigma, s) = self.irr_window()?;
        Ok(self.n[sigma..=s].to_vec())
    }
}

impl fmt::Display for GenSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_seq(&self.n))
    }
}

fn fmt_seq(n: &[Int]) -> String {
    let parts: Vec<String> = n.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// [`GenSeq::n_independent`] on a raw sequence.
pub fn n_independent(seq: &[Int]) -> Result<bool, ReverseError> {
    GenSeq::new(seq.to_vec())?.n_independent()
}

/// [`GenSeq::irr_of_span`] on a raw sequence.
pub fn irr_of_span(seq: &[Int]) -> Result<Vec<Int>, ReverseError> {
    GenSeq::new(seq.to_vec())?.irr_of_span()
}

/// The unique modular-convex chain `u_0 = u0, u_1 = u1, ..., u_r = w` in
/// `Z^2`, with its coefficients `d_1, ..., d_{r-1}`.
///
/// The chain exists exactly when `w = -p u0 + q u1` for coprime integers
/// `0 < p < q`; the coefficients are then the ceiling expansion of `q/p`.
pub fn complete_chain(u0: &Pt, u1: &Pt, w: &Pt) -> Result<(Vec<Pt>, Vec<Int>), ReverseError> {
    let det = |u: &Pt, v: &Pt| &u.x * &v.y - &u.y * &v.x;
    let base = det(u0, u1);
    if base.is_zero() {
        return Err(ReverseError::NoChain(format!("{u0} and {u1} are dependent")));
    }
    let (neg_p, rp) = det(w, u1).div_rem(&base);
    let (q, rq) = det(u0, w).div_rem(&base);
    if !rp.is_zero() || !rq.is_zero() {
        return Err(ReverseError::NoChain(format!(
            "{w} is not an integer combination of {u0} and {u1}"
        )));
    }
    let p = -neg_p;
    if !(p.is_positive() && p < q && p.gcd(&q).is_one()) {
        return Err(ReverseError::NoChain(format!(
            "{w} = -{p} u0 + {q} u1 needs coprime 0 < p < q"
        )));
    }
    let ds = ceil_cfe(&Rat::new(q, p), MAX_CHAIN)?.terms().to_vec();
    let mut chain = vec![u0.clone(), u1.clone()];
    for d in &ds {
        let n = chain.len();
        let next = Pt {
            x: d * &chain[n - 1].x - &chain[n - 2].x,
            y: d * &chain[n - 1].y - &chain[n - 2].y,
        };
        chain.push(next);
    }
    if chain.last() != Some(w) {
        return Err(ReverseError::InternalInconsistency(format!(
            "chain from {u0}, {u1} ends at {} instead of {w}",
            chain[chain.len() - 1]
        )));
    }
    Ok((chain, ds))
}

/// Prime factors of `|n|`, by trial division.
fn prime_factors(n: &Int) -> Vec<Int> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = Int::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += 1u32;
    }
    if n > Int::one() {
        out.push(n);
    }
    out
}

/// Residues `(p, r_p)` such that `gcd(a, k c - b) = 1` exactly when
/// `k != r_p mod p` for every listed prime `p`.
///
/// Primes of `a` that divide `c` never divide `k c - b` (as `gcd(b, c) = 1`)
/// and are left out.
pub fn coprime_exclusions(a: &Int, b: &Int, c: &Int) -> Vec<(Int, Int)> {
    prime_factors(a)
        .into_iter()
        .filter_map(|p| {
            let inv = mod_inverse(c, &p)?;
            Some(((b * inv).mod_floor(&p), p))
        })
        .map(|(r, p)| (p, r))
        .collect()
}

/// Least `k >= from` with `gcd(a, k c - b) = 1`.
///
/// Needs `gcd(b, c) = 1` and nonzero `a, b, c`; such `k` then exist in every
/// window of `rad(a)` consecutive integers.
pub fn find_coprime_shift(a: &Int, b: &Int, c: &Int, from: &Int) -> Result<Int, ReverseError> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(ReverseError::Domain("a, b, c must be nonzero".into()));
    }
    if !b.gcd(c).is_one() {
        return Err(ReverseError::Domain(format!("gcd({b}, {c}) must be 1")));
    }
    let mut k = from.clone();
    while !a.gcd(&(&k * c - b)).is_one() {
        k += 1u32;
    }
    Ok(k)
}

/// All orderings of `set` that form a modular-convex sequence.
///
/// Sets of at most [`MAX_SEARCH`] elements are searched exhaustively by
/// extending prefixes: once `n_{i-1}, n_i` are fixed, `n_{i+1}` must be
/// `-n_{i-1} mod n_i` and at least `2 n_i - n_{i-1}`. Larger sets only try
/// the given order and its reverse. Results are sorted.
pub fn modular_convex_orderings(set: &[Int]) -> Vec<Vec<Int>> {
    let mut items: Vec<Int> = Vec::new();
    for x in set {
        if !items.contains(x) {
            items.push(x.clone());
        }
    }
    let mut out = Vec::new();
    if items.len() < 2 {
        return out;
    }
    if items.len() > MAX_SEARCH {
        let rev: Vec<Int> = items.iter().rev().cloned().collect();
        for cand in [items, rev] {
            if is_modular_convex(&cand).is_some() {
                out.push(cand);
            }
        }
        return out;
    }
    let n = items.len();
    let mut used = vec![false; n];
    let mut prefix: Vec<usize> = Vec::with_capacity(n);
    fn extend(
        items: &[Int],
        used: &mut [bool],
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<Int>>,
    ) {
        let n = items.len();
        if prefix.len() == n {
            out.push(prefix.iter().map(|&i| items[i].clone()).collect());
            return;
        }
        for i in 0..n {
            if used[i] {
                continue;
            }
            if prefix.len() >= 2 {
                let prev2 = &items[prefix[prefix.len() - 2]];
                let prev = &items[prefix[prefix.len() - 1]];
                if is_modular_convex(&[prev2.clone(), prev.clone(), items[i].clone()]).is_none() {
                    continue;
                }
            }
            used[i] = true;
            prefix.push(i);
            extend(items, used, prefix, out);
            prefix.pop();
            used[i] = false;
        }
    }
    extend(&items, &mut used, &mut prefix, &mut out);
    out.sort();
    out
}

fn check_set(set: &[Int]) -> Result<(), ReverseError> {
    if let Some(x) = set.iter().find(|x| *x < &Int::from(2)) {
        return Err(ReverseError::Domain(format!(
            "set elements must be at least 2, got {x}"
        )));
    }
    Ok(())
}

/// Orderings of `set` usable by all three solution cases: modular-convex,
/// `gcd(n_0, n_1) = 1`, and N-independent.
pub fn admissible_orderings(set: &[Int]) -> Result<Vec<GenSeq>, ReverseError> {
    check_set(set)?;
    let mut out = Vec::new();
    for n in modular_convex_orderings(set) {
        let seq = GenSeq::new(n)?;
        if seq.n[0].gcd(&seq.n[1]).is_one() && seq.n_independent()? {
            out.push(seq);
        }
    }
    Ok(out)
}

/// Which side of `a` and `b` the divisor `d` falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// `d < a < b`.
    One,
    /// `a < d < b`.
    Two,
    /// `a < b < d`.
    Three,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::One => "case1",
            Case::Two => "case2",
            Case::Three => "case3",
        })
    }
}

/// One concrete answer to the reverse problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// The triple, with `a < b`.
    pub spec: QuotientSpec,
    /// The modular-convex ordering it comes from.
    pub ordering: Vec<Int>,
    /// Values of the family parameters `j` and `k`, where used.
    pub j: Option<Int>,
    /// See [`Solution::j`].
    pub k: Option<Int>,
}

/// Free parameter of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    /// The coefficient `d_0` added on the left (case 3).
    J,
    /// The coefficient `d_r` added on the right (cases 2 and 3).
    K,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Param::J => "j",
            Param::K => "k",
        })
    }
}

/// `c + cj j + ck k + cjk j k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Form {
    /// Constant term.
    pub c: Int,
    /// Coefficient of `j`.
    pub cj: Int,
    /// Coefficient of `k`.
    pub ck: Int,
    /// Coefficient of `j k`.
    pub cjk: Int,
}

impl Form {
    /// The constant form.
    pub fn constant(c: Int) -> Self {
        Form {
            c,
            ..Form::default()
        }
    }

    /// `ck k + c`.
    pub fn in_k(ck: Int, c: Int) -> Self {
        Form {
            c,
            ck,
            ..Form::default()
        }
    }

    /// `cj j + c`.
    pub fn in_j(cj: Int, c: Int) -> Self {
        Form {
            c,
            cj,
            ..Form::default()
        }
    }

    /// Value at `(j, k)`.
    pub fn eval(&self, j: &Int, k: &Int) -> Int {
        &self.c + &self.cj * j + &self.ck * k + &self.cjk * j * k
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [
            (&self.cjk, "jk"),
            (&self.cj, "j"),
            (&self.ck, "k"),
            (&self.c, ""),
        ];
        let mut out = String::new();
        for (coef, var) in terms {
            if coef.is_zero() {
                continue;
            }
            let mag = coef.abs();
            let body = if var.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                var.to_string()
            } else {
                format!("{mag}{var}")
            };
            if out.is_empty() {
                if coef.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if coef.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// A predicate on the parameters of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    /// `gcd(lhs, rhs) = 1`.
    Coprime(Form, Form),
    /// `lhs < rhs`.
    Less(Form, Form),
    /// `lhs <= rhs`.
    LessEq(Form, Form),
    /// `param != residue mod modulus`.
    NotCongruent {
        /// The constrained parameter.
        param: Param,
        /// A prime.
        modulus: Int,
        /// The excluded class.
        residue: Int,
    },
}

impl Constraint {
    /// Whether the predicate holds at `(j, k)`.
    pub fn holds(&self, j: &Int, k: &Int) -> bool {
        match self {
            Constraint::Coprime(x, y) => x.eval(j, k).gcd(&y.eval(j, k)).is_one(),
            Constraint::Less(x, y) => x.eval(j, k) < y.eval(j, k),
            Constraint::LessEq(x, y) => x.eval(j, k) <= y.eval(j, k),
            Constraint::NotCongruent {
                param,
                modulus,
                residue,
            } => {
                let v = match param {
                    Param::J => j,
                    Param::K => k,
                };
                &v.mod_floor(modulus) != residue
            }
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Coprime(x, y) => write!(f, "gcd({x}, {y}) = 1"),
            Constraint::Less(x, y) => write!(f, "{x} < {y}"),
            Constraint::LessEq(x, y) => write!(f, "{x} <= {y}"),
            Constraint::NotCongruent {
                param,
                modulus,
                residue,
            } => write!(f, "{param} != {residue} mod {modulus}"),
        }
    }
}

/// An infinite family of solutions, described by parameter bounds and
/// predicates.
///
/// Every `(j, k)` that meets the bounds and all constraints gives a pairwise
/// coprime triple with the target generator set. Case 2 families only use
/// `k`; their forms do not depend on `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFamily {
    /// Case 2 or case 3.
    pub case: Case,
    /// The ordering that is extended.
    pub ordering: Vec<Int>,
    /// Formula for `a`.
    pub a: Form,
    /// Formula for `b`.
    pub b: Form,
    /// Formula for `d`.
    pub d: Form,
    /// Formula for the numerator `m` of the full ceiling expansion `d/m`.
    pub m: Form,
    /// Lower bounds of the free parameters.
    pub bounds: Vec<(Param, Int)>,
    /// Predicates the parameters must satisfy.
    pub constraints: Vec<Constraint>,
}

impl SolutionFamily {
    /// Whether `(j, k)` meets the bounds and every constraint.
    pub fn admits(&self, j: &Int, k: &Int) -> bool {
        self.bounds.iter().all(|(p, lo)| match p {
            Param::J => j >= lo,
            Param::K => k >= lo,
        }) && self.constraints.iter().all(|c| c.holds(j, k))
    }

    /// The triple at `(j, k)`, when admitted. `j` is ignored by case 2.
    pub fn instance(&self, j: &Int, k: &Int) -> Option<QuotientSpec> {
        if !self.admits(j, k) {
            return None;
        }
        QuotientSpec::new(self.a.eval(j, k), self.b.eval(j, k), self.d.eval(j, k)).ok()
    }

    /// Lower bound of a parameter.
    pub fn min(&self, p: Param) -> Option<&Int> {
        self.bounds.iter().find(|(q, _)| *q == p).map(|(_, v)| v)
    }
}

impl fmt::Display for SolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>/({})", self.a, self.b, self.d)?;
        for (p, lo) in &self.bounds {
            write!(f, ", {p} >= {lo}")?;
        }
        for c in &self.constraints {
            if matches!(c, Constraint::Coprime(..) | Constraint::NotCongruent { .. }) {
                write!(f, ", {c}")?;
            }
        }
        Ok(())
    }
}

/// Solutions of one ordering under case 2 or 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyResult {
    /// The symbolic family.
    pub family: SolutionFamily,
    /// Its first instances in search order.
    pub instances: Vec<Solution>,
}

fn verify(spec: &QuotientSpec, target: &[Int]) -> Result<(), ReverseError> {
    let irr = irr_of(&spec.a, &spec.b, &spec.d)?;
    let mut want = target.to_vec();
    want.sort();
    want.dedup();
    if irr == want {
        Ok(())
    } else {
        Err(ReverseError::InternalInconsistency(format!(
            "{spec} has generators {irr:?}, expected {want:?}"
        )))
    }
}

/// Solutions with `d < a < b`.
///
/// One triple per ordering with `gcd(n_0, n_r) = 1` and `n_0 < n_r`:
/// `a = n_0`, `b = n_r` and `d` in `[1, a-1]` with `d n_1 = b mod a`.
/// Distinct orderings give distinct triples, and there are no others.
pub fn solve_case1(set: &[Int]) -> Result<Vec<Solution>, ReverseError> {
    let mut out = Vec::new();
    for seq in admissible_orderings(set)? {
        let (a, b) = (seq.first(), seq.last());
        if !(a < b && a.gcd(b).is_one()) {
            continue;
        }
        let inv = mod_inverse(&seq.n[1], a).expect("gcd(n_0, n_1) = 1");
        let d = (b * inv).mod_floor(a);
        let spec = QuotientSpec::new(a.clone(), b.clone(), d)?;
        verify(&spec, set)?;
        out.push(Solution {
            spec,
            ordering: seq.n.clone(),
            j: None,
            k: None,
        });
    }
    Ok(out)
}

/// Least integer `k >= lo` with `slope k + icpt >= 0` (or `> 0` when
/// `strict`), for `slope > 0`.
fn least_root(slope: &Int, icpt: &Int, strict: bool, lo: &Int) -> Int {
    debug_assert!(slope.is_positive());
    // slope k >= -icpt (+1 when strict)
    let target = if strict { -icpt + 1u32 } else { -icpt };
    let k = Integer::div_ceil(&target, slope);
    k.max(lo.clone())
}

/// The case 2 family of one ordering: `a = n_0`, `b = k n_r - n_{r-1}`,
/// `d = k Q_{r-1} - Q_{r-2}`.
pub fn case2_family(seq: &GenSeq) -> SolutionFamily {
    let r = seq.r() as isize;
    let c = Convergents::new(&seq.d);
    let (q1, q2) = (c.q(r - 1).clone(), c.q(r - 2).clone());
    let (nr, nr1) = (seq.last().clone(), seq.n[seq.r() - 1].clone());
    let a = Form::constant(seq.first().clone());
    let b = Form::in_k(nr.clone(), -&nr1);
    let d = Form::in_k(q1.clone(), -&q2);
    // a <= d and d < b, both monotone in k.
    let two = Int::from(2);
    let k1 = least_root(&q1, &(-&q2 - seq.first()), false, &two);
    let k2 = least_root(&(&nr - &q1), &(&q2 - &nr1), true, &two);
    let k_min = k1.max(k2);
    let mut constraints = vec![
        Constraint::LessEq(a.clone(), d.clone()),
        Constraint::Less(d.clone(), b.clone()),
        Constraint::Coprime(a.clone(), b.clone()),
    ];
    for (p, res) in coprime_exclusions(seq.first(), &nr1, &nr) {
        constraints.push(Constraint::NotCongruent {
            param: Param::K,
            modulus: p,
            residue: res,
        });
    }
    SolutionFamily {
        case: Case::Two,
        ordering: seq.n.clone(),
        a,
        b,
        m: d.clone(),
        d,
        bounds: vec![(Param::K, k_min)],
        constraints,
    }
}

/// Solutions with `a < d < b`: for each admissible ordering, the family
/// of [`case2_family`] and its first `limit` instances in increasing `k`.
///
/// Each instance is checked against the exact conditions `gcd(a, b) = 1`,
/// `a <= d < b` and against the generator set.
pub fn solve_case2(set: &[Int], limit: usize) -> Result<Vec<FamilyResult>, ReverseError> {
    let mut out = Vec::new();
    for seq in admissible_orderings(set)? {
        let family = case2_family(&seq);
        let nr1 = &seq.n[seq.r() - 1];
        let mut k = family.min(Param::K).expect("k bound").clone();
        let zero = Int::zero();
        let mut instances = Vec::new();
        while instances.len() < limit {
            k = find_coprime_shift(seq.first(), nr1, seq.last(), &k)?;
            let (a, b, d) = (
                family.a.eval(&zero, &k),
                family.b.eval(&zero, &k),
                family.d.eval(&zero, &k),
            );
            if !(a.gcd(&b).is_one() && a <= d && d < b) {
                return Err(ReverseError::InternalInconsistency(format!(
                    "case 2 bound for {seq} gave ({a}, {b}, {d}) at k = {k}"
                )));
            }
            let spec = QuotientSpec::new(a, b, d)?;
            verify(&spec, set)?;
            instances.push(Solution {
                spec,
                ordering: seq.n.clone(),
                j: None,
                k: Some(k.clone()),
            });
            k += 1u32;
        }
        out.push(FamilyResult { family, instances });
    }
    Ok(out)
}

/// The case 3 family of one ordering, extended by `d_0 = j` on the left and
/// `d_r = k` on the right:
/// `a = j n_0 - n_1`, `b = k n_r - n_{r-1}`, `m = k Q_{r-1} - Q_{r-2}`,
/// `d = j m - (k P_{r-1} - P_{r-2})`.
///
/// The bounds are chosen so that every inequality holds on the whole
/// quadrant `j >= j_min, k >= k_min`; only coprimality remains to check.
pub fn case3_family(seq: &GenSeq) -> SolutionFamily {
    let r = seq.r() as isize;
    let c = Convergents::new(&seq.d);
    let (q1, q2) = (c.q(r - 1).clone(), c.q(r - 2).clone());
    let (p1, p2) = (c.p(r - 1).clone(), c.p(r - 2).clone());
    let (n0, n1) = (seq.first().clone(), seq.n[1].clone());
    let (nr, nr1) = (seq.last().clone(), seq.n[seq.r() - 1].clone());
    let a = Form::in_j(n0.clone(), -&n1);
    let b = Form::in_k(nr.clone(), -&nr1);
    let m = Form::in_k(q1.clone(), -&q2);
    let d = Form {
        c: p2.clone(),
        cj: -&q2,
        ck: -&p1,
        cjk: q1.clone(),
    };
    let two = Int::from(2);
    // k: b > 0, m > n_0, b >= m.
    let k_min = [
        least_root(&nr, &-&nr1, true, &two),
        least_root(&q1, &(-&q2 - &n0), true, &two),
        least_root(&(&nr - &q1), &(&q2 - &nr1), false, &two),
    ]
    .into_iter()
    .max()
    .expect("nonempty");
    let zero = Int::zero();
    let m_k = m.eval(&zero, &k_min);
    let b_k = b.eval(&zero, &k_min);
    // d at k_min as a function of j: m_k j - (k_min P_{r-1} - P_{r-2}).
    let d_shift = &k_min * &p1 - &p2;
    // j: a > 0, d > a, d > b at k_min, and the k-slope of d - b, which is
    // j Q_{r-1} - P_{r-1} - n_r, is non-negative.
    let j_min = [
        least_root(&n0, &-&n1, true, &two),
        least_root(&(&m_k - &n0), &(&n1 - &d_shift), true, &two),
        least_root(&m_k, &(-&d_shift - &b_k), true, &two),
        least_root(&q1, &(-&p1 - &nr), false, &two),
    ]
    .into_iter()
    .max()
    .expect("nonempty");
    let constraints = vec![
        Constraint::Less(Form::default(), a.clone()),
        Constraint::Less(a.clone(), d.clone()),
        Constraint::Less(b.clone(), d.clone()),
        Constraint::LessEq(m.clone(), b.clone()),
        Constraint::Coprime(a.clone(), b.clone()),
    ];
    SolutionFamily {
        case: Case::Three,
        ordering: seq.n.clone(),
        a,
        b,
        d,
        m,
        bounds: vec![(Param::J, j_min), (Param::K, k_min)],
        constraints,
    }
}

/// Exact conditions for a case 3 instance at `(j, k)`: `gcd(a, b) = 1`,
/// `a <= q_r`, `a < b < d` and `x_0 < x_r + b <= x_{-1}`, where `q_i / p_i`
/// are the ceiling convergents of `⌈j, d_1, ..., d_{r-1}, k⌉` and
/// `x_i = m q_{i-1} - d p_{i-1}`.
pub fn case3_conditions(seq: &GenSeq, j: &Int, k: &Int) -> Option<QuotientSpec> {
    let mut ds = vec![j.clone()];
    ds.extend(seq.d.iter().cloned());
    ds.push(k.clone());
    // Shifted tables: index i in -2..=r stored at i + 2.
    let mut q = vec![Int::zero(), Int::one()];
    let mut p = vec![-Int::one(), Int::zero()];
    for t in &ds {
        let n = q.len();
        q.push(t * &q[n - 1] - &q[n - 2]);
        p.push(t * &p[n - 1] - &p[n - 2]);
    }
    let r = seq.r();
    let (d, m) = (q[r + 2].clone(), p[r + 2].clone());
    let a = j * seq.first() - &seq.n[1];
    let b = k * seq.last() - &seq.n[r - 1];
    let x = |i: usize| &m * &q[i] - &d * &p[i];
    // x_{-1}, x_0, x_r read from q_{i-1}, p_{i-1} at offset i + 1.
    let (x_m1, x_0, x_r) = (x(0), x(1), x(r + 1));
    let ok = a.is_positive()
        && a.gcd(&b).is_one()
        && a <= q[r + 2]
        && a < b
        && b < d
        && x_0 < &x_r + &b
        && &x_r + &b <= x_m1;
    if ok {
        QuotientSpec::new(a, b, d).ok()
    } else {
        None
    }
}

/// Solutions with `a < b < d`: for each admissible ordering, the family
/// of [`case3_family`] and its first `limit` instances.
///
/// Parameters are visited along anti-diagonals `j + k = const` from
/// `(j_min, k_min)`, with `k` increasing inside a diagonal. An instance is
/// kept when the exact conditions of [`case3_conditions`] hold and its
/// generator set is the target.
pub fn solve_case3(set: &[Int], limit: usize) -> Result<Vec<FamilyResult>, ReverseError> {
    let mut out = Vec::new();
    for seq in admissible_orderings(set)? {
        let family = case3_family(&seq);
        let j0 = family.min(Param::J).expect("j bound").clone();
        let k0 = family.min(Param::K).expect("k bound").clone();
        let mut instances = Vec::new();
        let mut diag = 0u64;
        // Coprime pairs have positive density, so a bounded number of
        // diagonals always suffices.
        while instances.len() < limit {
            for dk in 0..=diag {
                if instances.len() == limit {
                    break;
                }
                let k = &k0 + dk;
                let j = &j0 + (diag - dk);
                if !family.admits(&j, &k) {
                    continue;
                }
                let Some(spec) = case3_conditions(&seq, &j, &k) else {
                    continue;
                };
                verify(&spec, set)?;
                instances.push(Solution {
                    spec,
                    ordering: seq.n.clone(),
                    j: Some(j),
                    k: Some(k),
                });
            }
            diag += 1;
        }
        out.push(FamilyResult { family, instances });
    }
    Ok(out)
}

/// Both sides of the identity `<a + jk, 0 <= j <= r> = <a, a^2 + dk>/d`
/// with `d = ar + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithmeticIdentity {
    /// The progression `a, a + k, ..., a + rk`.
    pub gens: Vec<Int>,
    /// `<a, a^2 + (ar+1)k> / (ar+1)`.
    pub general: QuotientSpec,
    /// `<a, a + rk> / r`, when `gcd(a, r) = 1`.
    pub simple: Option<QuotientSpec>,
}

/// The semigroup spanned by an arithmetic progression, written as a
/// quotient of a two-generator semigroup.
///
/// Needs `gcd(a, k) = 1`, `a, k >= 2` and `1 <= r <= a - 1`.
pub fn arithmetic_identity(a: &Int, k: &Int, r: &Int) -> Result<ArithmeticIdentity, ReverseError> {
    let two = Int::from(2);
    if a < &two || k < &two || !a.gcd(k).is_one() || r < &Int::one() || r >= a {
        return Err(ReverseError::Domain(format!(
            "need coprime a, k >= 2 and 1 <= r <= a - 1, got a = {a}, k = {k}, r = {r}"
        )));
    }
    let mut gens = Vec::new();
    let mut x = a.clone();
    let mut j = Int::zero();
    while &j <= r {
        gens.push(x.clone());
        x += k;
        j += 1u32;
    }
    let d = a * r + 1u32;
    let general = QuotientSpec::new(a.clone(), a * a + &d * k, d)?;
    let simple = if a.gcd(r).is_one() {
        Some(QuotientSpec::new(a.clone(), a + r * k, r.clone())?)
    } else {
        None
    };
    Ok(ArithmeticIdentity {
        gens,
        general,
        simple,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn triples(sols: &[Solution]) -> Vec<(i64, i64, i64)> {
        use num_traits::ToPrimitive;
        sols.iter()
            .map(|s| {
                (
                    s.spec.a.to_i64().unwrap(),
                    s.spec.b.to_i64().unwrap(),
                    s.spec.d.to_i64().unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn modular_convex_examples() {
        assert_eq!(is_modular_convex(&ints(&[7, 11, 59])), Some(ints(&[6])));
        assert_eq!(is_modular_convex(&ints(&[17, 10, 24])), None);
        assert_eq!(is_modular_convex(&ints(&[4, 9, 14, 19])), Some(ints(&[2, 2])));
        assert_eq!(is_modular_convex(&ints(&[3, 5])), Some(vec![]));
        assert_eq!(is_modular_convex(&ints(&[3])), None);
    }

    #[test]
    fn chain_completion() {
        let (chain, ds) =
            complete_chain(&Pt::new(6, 0), &Pt::new(1, 1), &Pt::new(0, 6)).unwrap();
        assert_eq!(ds, ints(&[6]));
        assert_eq!(chain.len(), 3);
        // w = -(n-1) u + n v gives n - 1 twos.
        let (u, v) = (Pt::new(1, 0), Pt::new(0, 1));
        for n in 2..12i64 {
            let w = Pt::new(-(n - 1), n);
            let (chain, ds) = complete_chain(&u, &v, &w).unwrap();
            assert_eq!(ds, vec![Int::from(2); (n - 1) as usize]);
            assert_eq!(chain.len(), n as usize + 1);
        }
        assert!(matches!(
            complete_chain(&u, &v, &Pt::new(-3, 2)),
            Err(ReverseError::NoChain(_))
        ));
        assert!(matches!(
            complete_chain(&u, &v, &Pt::new(-2, 4)),
            Err(ReverseError::NoChain(_))
        ));
    }

    #[test]
    fn independence_examples() {
        assert!(n_independent(&ints(&[7, 11, 59])).unwrap());
        assert!(n_independent(&ints(&[10, 17, 24])).unwrap());
        assert!(!n_independent(&ints(&[2, 3, 4])).unwrap());
        assert_eq!(irr_of_span(&ints(&[2, 3, 4])).unwrap(), ints(&[2, 3]));
        assert!(matches!(
            n_independent(&ints(&[17, 10, 24])),
            Err(ReverseError::NotModularConvex(_))
        ));
    }

    #[test]
    fn coprime_shift_examples() {
        let k = |a, b, c, from| {
            find_coprime_shift(&Int::from(a), &Int::from(b), &Int::from(c), &Int::from(from))
                .unwrap()
        };
        assert_eq!(k(7, 11, 59, 2), Int::from(2));
        assert_eq!(k(7, 11, 59, 6), Int::from(7));
        assert_eq!(k(5, 17, 24, 3), Int::from(4));
        assert_eq!(k(5, 17, 24, 6), Int::from(6));
        assert_eq!(
            coprime_exclusions(&Int::from(10), &Int::from(17), &Int::from(24)),
            vec![(Int::from(5), Int::from(3))]
        );
    }

    #[test]
    fn case1_examples() {
        assert_eq!(
            triples(&solve_case1(&ints(&[7, 11, 59])).unwrap()),
            vec![(7, 59, 6), (11, 59, 10)]
        );
        assert!(solve_case1(&ints(&[10, 17, 24])).unwrap().is_empty());
        assert!(solve_case1(&ints(&[9])).unwrap().is_empty());
        assert!(matches!(
            solve_case1(&ints(&[1, 5])),
            Err(ReverseError::Domain(_))
        ));
    }

    #[test]
    fn case2_examples() {
        let res = solve_case2(&ints(&[7, 11, 59]), 3).unwrap();
        let first = res.iter().find(|f| f.family.ordering == ints(&[7, 11, 59])).unwrap();
        assert_eq!(triples(&first.instances), vec![(7, 107, 11), (7, 166, 17), (7, 225, 23)]);
        assert_eq!(first.family.to_string(), "<7, 59k - 11>/(6k - 1), k >= 2, gcd(7, 59k - 11) = 1, k != 6 mod 7");
        let res = solve_case2(&ints(&[10, 17, 24]), 1).unwrap();
        let fam = res.iter().find(|f| f.family.ordering == ints(&[10, 17, 24])).unwrap();
        assert_eq!(triples(&fam.instances), vec![(10, 127, 11)]);
        assert_eq!(fam.family.min(Param::K), Some(&Int::from(6)));
    }

    #[test]
    fn case3_bounds_match_worked_examples() {
        for (seq, j, k, text) in [
            (&[7, 11, 59][..], 10, 2, "<7j - 11, 59k - 11>/(6jk - j - k)"),
            (&[11, 7, 59][..], 6, 2, "<11j - 7, 59k - 7>/(10jk - j - k)"),
            (&[10, 17, 24][..], 13, 6, "<10j - 17, 24k - 17>/(2jk - j - k)"),
        ] {
            let fam = case3_family(&GenSeq::new(ints(seq)).unwrap());
            assert_eq!(fam.min(Param::J), Some(&Int::from(j)), "{seq:?}");
            assert_eq!(fam.min(Param::K), Some(&Int::from(k)), "{seq:?}");
            assert!(fam.to_string().starts_with(text), "{fam}");
        }
    }

    #[test]
    fn arithmetic_examples() {
        let id = arithmetic_identity(&Int::from(5), &Int::from(2), &Int::from(3)).unwrap();
        assert_eq!(id.gens, ints(&[5, 7, 9, 11]));
        assert_eq!(id.general.to_string(), "<5,57>/16");
        assert_eq!(id.simple.unwrap().to_string(), "<5,11>/3");
        assert!(arithmetic_identity(&Int::from(4), &Int::from(2), &Int::from(1)).is_err());
        assert!(arithmetic_identity(&Int::from(5), &Int::from(2), &Int::from(5)).is_err());
    }

    #[test]
    fn form_display() {
        let f = Form {
            c: Int::from(0),
            cj: Int::from(-1),
            ck: Int::from(-1),
            cjk: Int::from(6),
        };
        assert_eq!(f.to_string(), "6jk - j - k");
        assert_eq!(f.eval(&Int::from(10), &Int::from(2)), Int::from(108));
        assert_eq!(Form::default().to_string(), "0");
        assert_eq!(Form::in_k(Int::from(-1), Int::from(3)).to_string(), "-k + 3");
    }
}

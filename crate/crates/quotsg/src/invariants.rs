//! Closed-form invariants of quotients `<a,b>/d`.
//!
//! Every routine here works from `alpha = m/d`, where `a m + b = 0 mod d`,
//! its continued fraction and the digit expansions of [`crate::ostrowski`].
//! None of them builds a membership table, so they run in time polynomial
//! in the bit length of the inputs (plus the size of the output lists).
//! [`full_report`] can also run the table-based [`crate::oracle`] and
//! compare the two.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactmath::{best_rational, floor, frac, mod_inverse, Int, Rat};
use crate::lattice::{LatticeError, QuotientSpec};
use crate::oracle::{member_big, wilf_margin, OracleError, SemigroupOracle};
use crate::ostrowski::{AlphaCtx, Digits, OstrowskiError};

/// Errors raised by the closed-form layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    /// `gcd(a, b) > 1`, so `<a,b>` is not a numerical semigroup.
    #[error("NotCoprime: gcd({a}, {b}) = {gcd}")]
    NotCoprime {
        /// First generator.
        a: Int,
        /// Second generator.
        b: Int,
        /// Their common factor.
        gcd: Int,
    },
    /// A precondition does not hold.
    #[error("DomainError: {0}")]
    Domain(String),
    /// Two closed forms that must agree did not.
    #[error("InternalInconsistency: {0}")]
    InternalInconsistency(String),
    /// The closed forms and the table disagree.
    #[error("MismatchError: {0}")]
    Mismatch(String),
    /// The table could not be built.
    #[error(transparent)]
    Oracle(#[from] OracleError),
    /// A digit routine failed.
    #[error(transparent)]
    Digits(#[from] OstrowskiError),
}

impl From<LatticeError> for InvariantsError {
    fn from(e: LatticeError) -> Self {
        InvariantsError::Domain(e.to_string())
    }
}

/// How a report was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Closed forms only.
    Fast,
    /// Membership table only.
    Oracle,
    /// Both, and they agreed.
    Both,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Fast => "fast",
            Method::Oracle => "oracle",
            Method::Both => "both",
        })
    }
}

/// Position of `d` relative to `a < b`, with the range `d > b` split by
/// where `x_0 + b` falls (see [`QuotientCtx::x0`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `d < a`.
    DLtA,
    /// `a < d < b`.
    ALtDLtB,
    /// `d > b` and `x_0 + b > d`.
    DGtBWide,
    /// `d > b` and `m < x_0 + b <= d`.
    DGtBMid,
    /// `d > b` and `x_0 + b <= m`.
    DGtBTight,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::DLtA => "D_LT_A",
            CaseTag::ALtDLtB => "A_LT_D_LT_B",
            CaseTag::DGtBWide => "D_GT_B_WIDE",
            CaseTag::DGtBMid => "D_GT_B_MID",
            CaseTag::DGtBTight => "D_GT_B_TIGHT",
        })
    }
}

/// The classical invariants of one numerical semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    /// Least positive member.
    pub multiplicity: Int,
    /// Largest gap, `-1` for N.
    pub frobenius: Int,
    /// `frobenius + 1`.
    pub conductor: Int,
    /// Number of gaps.
    pub genus: Int,
    /// Embedding dimension `|irr|`.
    pub e: usize,
    /// Type `|pf|`.
    pub t: usize,
    /// Minimal generators, increasing.
    pub irr: Vec<Int>,
    /// Pseudo-Frobenius numbers, increasing.
    pub pf: Vec<Int>,
    /// `2 genus = conductor`.
    pub symmetric: bool,
    /// `genus/conductor - (1 - 1/e)`; Wilf's inequality holds when `<= 0`.
    pub wilf_margin: Rat,
    /// Whether `t < e`.
    pub type_below_embedding: bool,
    /// Producer of the numbers.
    pub method: Method,
    /// Position of `d`, when the closed forms were used on a proper quotient.
    pub case_tag: Option<CaseTag>,
}

impl InvariantReport {
    /// Fills in the derived fields from the primary ones.
    pub fn assemble(
        multiplicity: Int,
        frobenius: Int,
        genus: Int,
        mut irr: Vec<Int>,
        mut pf: Vec<Int>,
        method: Method,
        case_tag: Option<CaseTag>,
    ) -> Self {
        irr.sort();
        pf.sort();
        let conductor = &frobenius + 1;
        let e = irr.len();
        let t = pf.len();
        InvariantReport {
            symmetric: &genus * 2 == conductor,
            wilf_margin: wilf_margin(&genus, &conductor, e),
            type_below_embedding: t < e || conductor.is_zero(),
            multiplicity,
            frobenius,
            conductor,
            genus,
            e,
            t,
            irr,
            pf,
            method,
            case_tag,
        }
    }

    /// The report of N.
    pub fn whole_n(method: Method) -> Self {
        Self::assemble(
            Int::one(),
            -Int::one(),
            Int::zero(),
            vec![Int::one()],
            vec![-Int::one()],
            method,
            None,
        )
    }

    /// Field-by-field differences from `other`, empty when the numbers agree.
    pub fn diff(&self, other: &InvariantReport) -> Vec<String> {
        let mut out = Vec::new();
        let mut cmp = |name: &str, x: String, y: String| {
            if x != y {
                out.push(format!("{name}: {x} vs {y}"));
            }
        };
        cmp("multiplicity", self.multiplicity.to_string(), other.multiplicity.to_string());
        cmp("frobenius", self.frobenius.to_string(), other.frobenius.to_string());
        cmp("genus", self.genus.to_string(), other.genus.to_string());
        cmp("irr", fmt_list(&self.irr), fmt_list(&other.irr));
        cmp("pf", fmt_list(&self.pf), fmt_list(&other.pf));
        out
    }
}

/// `{x1,x2,...}`.
pub fn fmt_list(v: &[Int]) -> String {
    let body: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("{{{}}}", body.join(","))
}

/// Outcome of [`normalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized {
    /// The quotient is N.
    Trivial,
    /// A pairwise coprime spec with the same quotient.
    Spec(QuotientSpec),
}

/// Reduces `(a, b, d)` to a pairwise coprime spec with the same quotient.
///
/// A common factor `g` of `a` and `d` can be cancelled, since
/// `<g a', b>/(g d') = <a', b>/d'`, and likewise for `b`. Each step is
/// recorded in the returned trace. When `d` lies in `<a,b>` the quotient is
/// N and [`Normalized::Trivial`] is returned.
pub fn normalize(a: &Int, b: &Int, d: &Int) -> Result<(Normalized, Vec<String>), InvariantsError> {
    if !a.is_positive() || !b.is_positive() || !d.is_positive() {
        return Err(InvariantsError::Domain(format!(
            "a, b, d must be positive, got ({a}, {b}, {d})"
        )));
    }
    let g = a.gcd(b);
    if !g.is_one() {
        return Err(InvariantsError::NotCoprime {
            a: a.clone(),
            b: b.clone(),
            gcd: g,
        });
    }
    let (mut a, mut b, mut d) = (a.clone(), b.clone(), d.clone());
    let mut trace = Vec::new();
    loop {
        let ga = a.gcd(&d);
        if !ga.is_one() {
            trace.push(format!("<{a},{b}>/{d} = <{},{b}>/{}", &a / &ga, &d / &ga));
            a /= &ga;
            d /= &ga;
            continue;
        }
        let gb = b.gcd(&d);
        if !gb.is_one() {
            trace.push(format!("<{a},{b}>/{d} = <{a},{}>/{}", &b / &gb, &d / &gb));
            b /= &gb;
            d /= &gb;
            continue;
        }
        break;
    }
    if a > b {
        trace.push(format!("<{a},{b}>/{d} = <{b},{a}>/{d}"));
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_one() || member_big(&d, &a, &b) {
        trace.push(format!("{d} lies in <{a},{b}>, the quotient is N"));
        return Ok((Normalized::Trivial, trace));
    }
    Ok((Normalized::Spec(QuotientSpec::new(a, b, d)?), trace))
}

fn require_proper(spec: &QuotientSpec) -> Result<(), InvariantsError> {
    if spec.d < Int::from(2) {
        return Err(InvariantsError::Domain("d must be at least 2".into()));
    }
    if member_big(&spec.d, &spec.a, &spec.b) {
        return Err(InvariantsError::Domain(format!(
            "{} lies in <{},{}>",
            spec.d, spec.a, spec.b
        )));
    }
    Ok(())
}

/// Multiplicity from the best rational in `[y/a, x/b]`, where
/// `d = a x - b y`.
///
/// The integers `k` below the multiplicity are exactly those for which
/// `[k y/a, k x/b]` holds no integer, so the answer is the least
/// denominator of a rational in that interval.
pub fn multiplicity_fast(spec: &QuotientSpec) -> Result<Int, InvariantsError> {
    require_proper(spec)?;
    let (a, b, d) = (&spec.a, &spec.b, &spec.d);
    let x = (d * mod_inverse(a, b).expect("coprime")).mod_floor(b);
    let y = (a * &x - d) / b;
    let lo = Rat::new(y, a.clone());
    let hi = Rat::new(x, b.clone());
    Ok(best_rational(&lo, &hi).denom().clone())
}

/// Every quantity the closed forms share, computed once per spec.
#[derive(Debug, Clone)]
pub struct QuotientCtx {
    /// The quotient `<a,b>/d`.
    pub spec: QuotientSpec,
    /// `m` in `[1, d-1]` with `a m + b = 0 mod d`.
    pub m: Int,
    /// Tables for `alpha = m/d`.
    pub alpha: AlphaCtx,
    /// `(a m + b)/d`.
    pub tau: Int,
    /// `mu_i = tau q_i - a p_i` for `i` in `-1..=r`, stored at `i + 1`.
    mu: Vec<Int>,
    /// Digits of `a - 1`, present when `a < d`.
    pub n_digits: Option<Digits>,
    /// Last nonzero position of `n_digits` (0 when absent).
    pub s: usize,
    /// Least `x >= 0` of a lattice point with `1 <= y <= a-1`, when `a < d`.
    pub x0: Option<Int>,
    /// Last digit of `a - 1` when `s` is even, otherwise 0.
    pub nu: Int,
    /// Position of `d`.
    pub case_tag: CaseTag,
}

impl QuotientCtx {
    /// Builds the context. Requires `d >= 2` and `d` outside `<a,b>`.
    pub fn new(spec: &QuotientSpec) -> Result<Self, InvariantsError> {
        require_proper(spec)?;
        let (a, b, d) = (&spec.a, &spec.b, &spec.d);
        let m = (-b * mod_inverse(a, d).expect("coprime")).mod_floor(d);
        let alpha = AlphaCtx::new(&Rat::new(m.clone(), d.clone()))?;
        let tau = (a * &m + b) / d;
        let r = alpha.r() as isize;
        let mu = (-1..=r)
            .map(|i| &tau * alpha.q(i) - a * alpha.p(i))
            .collect();
        let (n_digits, s, x0, nu) = if a < d {
            let nd = alpha.psi_inv(&(a - 1))?;
            let s = nd.len_nonzero();
            let si = s as isize;
            let (x0, nu) = if s % 2 == 0 {
                let ns = nd.get(s);
                (
                    alpha.delta_num(si - 2) - &ns * alpha.delta_num(si - 1),
                    ns,
                )
            } else {
                (alpha.delta_num(si - 1).clone(), Int::zero())
            };
            (Some(nd), s, Some(x0), nu)
        } else {
            (None, 0, None, Int::zero())
        };
        let case_tag = if d < a {
            CaseTag::DLtA
        } else if d < b {
            CaseTag::ALtDLtB
        } else {
            let reach = x0.as_ref().expect("a < d") + b;
            if &reach > d {
                CaseTag::DGtBWide
            } else if reach > m {
                CaseTag::DGtBMid
            } else {
                CaseTag::DGtBTight
            }
        };
        Ok(QuotientCtx {
            spec: spec.clone(),
            m,
            alpha,
            tau,
            mu,
            n_digits,
            s,
            x0,
            nu,
            case_tag,
        })
    }

    /// `mu_i`, `i` in `-1..=r`.
    pub fn mu(&self, i: isize) -> &Int {
        &self.mu[(i + 1) as usize]
    }

    /// `mu_0, ..., mu_r`.
    pub fn chain(&self) -> Vec<Int> {
        self.mu[1..].to_vec()
    }

    fn a_k(&self, k: usize) -> Int {
        self.alpha.a(k)
    }

    /// Upper bound of `j` in the family of index `k` when `a < d`: `a_{2k}`,
    /// or the last digit of `a - 1` when `2k = s`.
    fn a_prime(&self, k: usize) -> Int {
        if 2 * k == self.s {
            self.nu.clone()
        } else {
            self.a_k(2 * k)
        }
    }

    /// `mu_{2k-2} + j mu_{2k-1}` for `j` in `lo..=hi`.
    fn family(&self, k: usize, lo: Int, hi: &Int, out: &mut Vec<Int>) {
        let base = self.mu(2 * k as isize - 2);
        let step = self.mu(2 * k as isize - 1);
        let mut j = lo;
        while &j <= hi {
            out.push(base + &j * step);
            j += 1;
        }
    }

    /// `sum_{i=1}^{upto} b_i mu_{i-1}`.
    fn digit_mu_sum(&self, b: &Digits, upto: usize) -> Int {
        (1..=upto).map(|i| b.get(i) * self.mu(i as isize - 1)).sum()
    }

    /// Digits of `beta = (x_0 + b - 1)/d`, used when `x_0 + b <= m`.
    fn tight_digits(&self) -> Result<Digits, InvariantsError> {
        let x0 = self.x0.as_ref().expect("a < d");
        let beta = Rat::new(x0 + &self.spec.b - 1, self.spec.d.clone());
        Ok(self.alpha.lam_inv(&beta)?)
    }

    /// Index `t` of the first family when `x_0 + b <= m`: the least `i > 0`
    /// with `b_{2i+1} > 0`, or half the digit length when there is none.
    fn tight_start(bd: &Digits) -> usize {
        let sb = bd.len_nonzero();
        (1..)
            .take_while(|i| 2 * i + 1 <= sb)
            .find(|&i| !bd.get(2 * i + 1).is_zero())
            .unwrap_or(sb / 2)
    }
}

/// Minimal generators and the `mu` chain.
///
/// `d < a`: `{a, b, tau}` plus `mu_{2k-2} + j mu_{2k-1}` for
/// `1 <= j <= a_{2k}`, `1 <= k <= r/2`. `a < d`: the same families cut off
/// at the digit length `s` of `a - 1`, with `a` kept or dropped according to
/// `x_0 + b`, and a shorter start when `x_0 + b <= m`.
pub fn irr_fast(spec: &QuotientSpec) -> Result<(Vec<Int>, Vec<Int>), InvariantsError> {
    let ctx = QuotientCtx::new(spec)?;
    Ok((irr_from_ctx(&ctx)?, ctx.chain()))
}

fn irr_from_ctx(ctx: &QuotientCtx) -> Result<Vec<Int>, InvariantsError> {
    let spec = &ctx.spec;
    let mut out = Vec::new();
    match ctx.case_tag {
        CaseTag::DLtA => {
            out.extend([spec.a.clone(), spec.b.clone(), ctx.tau.clone()]);
            for k in 1..=ctx.alpha.r() / 2 {
                ctx.family(k, Int::one(), &ctx.a_k(2 * k), &mut out);
            }
        }
        CaseTag::ALtDLtB | CaseTag::DGtBWide | CaseTag::DGtBMid => {
            if ctx.case_tag != CaseTag::DGtBMid {
                out.push(spec.a.clone());
            }
            out.push(ctx.tau.clone());
            for k in 1..=ctx.s / 2 {
                ctx.family(k, Int::one(), &ctx.a_prime(k), &mut out);
            }
        }
        CaseTag::DGtBTight => {
            let bd = ctx.tight_digits()?;
            let t = QuotientCtx::tight_start(&bd);
            for k in t.max(1)..=ctx.s / 2 {
                let lo = if k == t { bd.get(2 * k) } else { Int::one() };
                ctx.family(k, lo, &ctx.a_prime(k), &mut out);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Embedding dimension from the partial quotients alone, without listing
/// the generators.
pub fn embedding_dim_closed(spec: &QuotientSpec) -> Result<Int, InvariantsError> {
    let ctx = QuotientCtx::new(spec)?;
    let sum_a = |from: usize, to: usize| -> Int { (from..=to).map(|k| ctx.a_k(2 * k)).sum() };
    let half_s1 = ctx.s.saturating_sub(1) / 2;
    Ok(match ctx.case_tag {
        CaseTag::DLtA => Int::from(3) + sum_a(1, ctx.alpha.r() / 2),
        CaseTag::ALtDLtB | CaseTag::DGtBWide => Int::from(2) + sum_a(1, half_s1) + &ctx.nu,
        CaseTag::DGtBMid => Int::one() + sum_a(1, half_s1) + &ctx.nu,
        CaseTag::DGtBTight => {
            let bd = ctx.tight_digits()?;
            let t = QuotientCtx::tight_start(&bd);
            let last = if 2 * t == ctx.s { Int::zero() } else { ctx.nu.clone() };
            Int::one() + ctx.a_prime(t) - bd.get(2 * t) + sum_a(t + 1, half_s1) + last
        }
    })
}

/// Which extreme an arithmetic-progression generator set realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremalKind {
    /// `d < a`, `d | a + b`: three generators.
    ThreeGenerators,
    /// `d < a`, `d | b - a`: `d + 1` generators.
    DPlusOne,
    /// `a < d`, `a` kept, `alpha < 1/(a-1)`: two generators.
    TwoGenerators,
    /// `a < d`, `a` kept, `alpha > 1 - 1/(a-1)`: `a` generators.
    AGenerators,
    /// `a` dropped, `alpha > 1 - 1/(a-1)`: `a - 1` generators.
    AMinusOne,
    /// `x_0 + b <= m` and the two tight conditions: `a - 2` generators.
    AMinusTwo,
}

/// Extremal embedding dimension with its generator list, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremal {
    /// Which extreme.
    pub kind: ExtremalKind,
    /// Generators, increasing.
    pub irr: Vec<Int>,
}

/// Detects the cases where the generators form an arithmetic progression
/// of extreme length, and returns that progression.
pub fn extremal_e(spec: &QuotientSpec) -> Option<Extremal> {
    let ctx = QuotientCtx::new(spec).ok()?;
    let (a, b, d) = (&spec.a, &spec.b, &spec.d);
    let alpha = ctx.alpha.alpha().clone();
    let progression = |step: &Int, from: i64, to: &Int| -> Vec<Int> {
        let mut v = Vec::new();
        let mut n = Int::from(from);
        while &n <= to {
            v.push(a + &n * step);
            n += 1;
        }
        v.sort();
        v
    };
    let tau_step = &ctx.tau - a;
    let am1: Int = a - 1u32;
    let high = |alpha: &Rat| a > &Int::from(2) && *alpha > Rat::one() - Rat::new(Int::one(), am1.clone());
    let found = |kind, mut irr: Vec<Int>| {
        irr.sort();
        Some(Extremal { kind, irr })
    };
    match ctx.case_tag {
        CaseTag::DLtA => {
            if (a + b).is_multiple_of(d) {
                found(ExtremalKind::ThreeGenerators, vec![a.clone(), b.clone(), (a + b) / d])
            } else if (b - a).is_multiple_of(d) {
                found(ExtremalKind::DPlusOne, progression(&((b - a) / d), 0, d))
            } else {
                None
            }
        }
        CaseTag::ALtDLtB | CaseTag::DGtBWide => {
            if alpha < Rat::new(Int::one(), am1.clone()) {
                found(ExtremalKind::TwoGenerators, vec![a.clone(), ctx.tau.clone()])
            } else if high(&alpha) {
                found(ExtremalKind::AGenerators, progression(&tau_step, 0, &am1))
            } else {
                None
            }
        }
        CaseTag::DGtBMid => {
            if high(&alpha) {
                found(ExtremalKind::AMinusOne, progression(&tau_step, 1, &am1))
            } else {
                None
            }
        }
        CaseTag::DGtBTight => {
            if a <= &Int::from(3) {
                return None;
            }
            let beta = Rat::new(ctx.x0.clone().expect("a < d") + b - 1, d.clone());
            let two_alpha = frac(&(&alpha * Int::from(2)));
            let cond = two_alpha <= beta
                && alpha >= Rat::one() - two_alpha / Rat::from_integer(a - 3);
            if cond {
                found(ExtremalKind::AMinusTwo, progression(&tau_step, 2, &am1))
            } else {
                None
            }
        }
    }
}

fn as_int(x: Rat, what: &str) -> Result<Int, InvariantsError> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(InvariantsError::InternalInconsistency(format!(
            "{what} = {x} is not an integer"
        )))
    }
}

/// Pseudo-Frobenius numbers, increasing.
///
/// Dispatch: `d | f` gives `{f/d}`; `a = 1 mod d` gives
/// `(a-1) b/d - (irr \ {b})`; `b = 1 mod d` gives `(b-1) a/d - (irr \ {a})`;
/// otherwise [`pf_small_d`] when `d < a` and [`pf_large_d`] when `d > a`.
pub fn pf_fast(spec: &QuotientSpec) -> Result<Vec<Int>, InvariantsError> {
    let ctx = QuotientCtx::new(spec)?;
    let (a, b, d) = (&spec.a, &spec.b, &spec.d);
    let f = a * b - a - b;
    let mut out = if f.is_multiple_of(d) {
        vec![&f / d]
    } else if (a - 1u32).is_multiple_of(d) || (b - 1u32).is_multiple_of(d) {
        let (keep, drop) = if (a - 1u32).is_multiple_of(d) { (b, a) } else { (a, b) };
        let top = (drop - 1) * keep / d;
        irr_from_ctx(&ctx)?
            .into_iter()
            .filter(|x| x != keep)
            .map(|x| &top - x)
            .collect()
    } else if d < a {
        pf_small_d_ctx(&ctx)?
    } else {
        pf_large_d_ctx(&ctx)?
    };
    out.sort();
    Ok(out)
}

/// Pseudo-Frobenius numbers when `d < a` and `d` does not divide
/// `f = ab - a - b`.
///
/// With `beta = 1 - {(b - 1 + m)/d}` and its digits `b_i`:
/// `f/d - a(1 - beta)`, `f/d - (b/d) sum b_i q_{i-1}`, and
/// `f/d + a beta - j mu_{2k-1} - sum_{i<2k} b_i mu_{i-1}` for
/// `0 <= j < b_{2k}`.
pub fn pf_small_d(spec: &QuotientSpec) -> Result<Vec<Int>, InvariantsError> {
    let mut v = pf_small_d_ctx(&QuotientCtx::new(spec)?)?;
    v.sort();
    Ok(v)
}

struct SmallD {
    fd: Rat,
    beta: Rat,
    bd: Digits,
}

fn small_d_setup(ctx: &QuotientCtx) -> Result<SmallD, InvariantsError> {
    let (a, b, d) = (&ctx.spec.a, &ctx.spec.b, &ctx.spec.d);
    if d > a {
        return Err(InvariantsError::Domain("requires d < min(a, b)".into()));
    }
    let f = a * b - a - b;
    if f.is_multiple_of(d) {
        return Err(InvariantsError::Domain("requires d not dividing ab - a - b".into()));
    }
    let beta = Rat::one() - frac(&Rat::new(b - 1 + &ctx.m, d.clone()));
    let bd = ctx.alpha.lam_inv(&beta)?;
    Ok(SmallD {
        fd: Rat::new(f, d.clone()),
        beta,
        bd,
    })
}

fn pf_small_d_ctx(ctx: &QuotientCtx) -> Result<Vec<Int>, InvariantsError> {
    let SmallD { fd, beta, bd } = small_d_setup(ctx)?;
    let (a, b, d) = (&ctx.spec.a, &ctx.spec.b, &ctx.spec.d);
    let ra = Rat::from_integer(a.clone());
    let r = ctx.alpha.r();
    let mut out = vec![as_int(&fd - &ra * (Rat::one() - &beta), "f1")?];
    let n: Int = (1..=r).map(|i| bd.get(i) * ctx.alpha.q(i as isize - 1)).sum();
    out.push(as_int(&fd - Rat::new(b * n, d.clone()), "f2")?);
    let top = as_int(&fd + &ra * &beta, "f/d + a beta")?;
    for k in 1..=r / 2 {
        let bk = bd.get(2 * k);
        let prefix = ctx.digit_mu_sum(&bd, 2 * k - 1);
        let step = ctx.mu(2 * k as isize - 1);
        let mut j = Int::zero();
        while j < bk {
            out.push(&top - &j * step - &prefix);
            j += 1;
        }
    }
    Ok(out)
}

/// Pseudo-Frobenius numbers when `d > a` and `d` does not divide
/// `f = ab - a - b`.
///
/// With `beta = 1 - {b/d}`, its digits `b_i` (length `s`), `B` the set of
/// `k` with `b_{2k} != 0` and `k_0 = min B` (or `(s+1)/2` when `B` is
/// empty), the candidates are
/// `F0 = {a floor(b/d) - tau}` when `alpha < beta`,
/// `F1 = {a floor(b/d) - mu_{2k-2} - j mu_{2k-1} : 1 <= j <= a_{2k}, k < k_0}`
/// and `F2 = {a floor(b/d) + a - j mu_{2k-1} - sum_{i<2k} b_i mu_{i-1} : 0 <= j < b_{2k}, k in B}`.
/// All three appear when `d < b`; only `F2` when `d > b`.
pub fn pf_large_d(spec: &QuotientSpec) -> Result<Vec<Int>, InvariantsError> {
    let mut v = pf_large_d_ctx(&QuotientCtx::new(spec)?)?;
    v.sort();
    Ok(v)
}

struct LargeD {
    base: Int,
    beta: Rat,
    bd: Digits,
    big_b: Vec<usize>,
    k0: usize,
}

fn large_d_setup(ctx: &QuotientCtx) -> Result<LargeD, InvariantsError> {
    let (a, b, d) = (&ctx.spec.a, &ctx.spec.b, &ctx.spec.d);
    if d < a {
        return Err(InvariantsError::Domain("requires d > min(a, b)".into()));
    }
    if (a * b - a - b).is_multiple_of(d) {
        return Err(InvariantsError::Domain("requires d not dividing ab - a - b".into()));
    }
    let beta = Rat::one() - frac(&Rat::new(b.clone(), d.clone()));
    let bd = ctx.alpha.lam_inv(&beta)?;
    let s = bd.len_nonzero();
    let big_b: Vec<usize> = (1..=s / 2).filter(|&k| !bd.get(2 * k).is_zero()).collect();
    let k0 = big_b.first().copied().unwrap_or(s.div_ceil(2));
    Ok(LargeD {
        base: a * b.div_floor(d),
        beta,
        bd,
        big_b,
        k0,
    })
}

fn pf_large_d_ctx(ctx: &QuotientCtx) -> Result<Vec<Int>, InvariantsError> {
    let LargeD {
        base,
        beta,
        bd,
        big_b,
        k0,
    } = large_d_setup(ctx)?;
    let a = &ctx.spec.a;
    let mut out = Vec::new();
    if ctx.case_tag == CaseTag::ALtDLtB {
        if ctx.alpha.alpha() < &beta {
            out.push(&base - &ctx.tau);
        }
        for k in 1..k0 {
            let fam_base = &base - ctx.mu(2 * k as isize - 2);
            let step = ctx.mu(2 * k as isize - 1);
            let mut j = Int::one();
            while j <= ctx.a_k(2 * k) {
                out.push(&fam_base - &j * step);
                j += 1;
            }
        }
    }
    for &k in &big_b {
        let top = &base + a - ctx.digit_mu_sum(&bd, 2 * k - 1);
        let step = ctx.mu(2 * k as isize - 1);
        let mut j = Int::zero();
        while j < bd.get(2 * k) {
            out.push(&top - &j * step);
            j += 1;
        }
    }
    Ok(out)
}

/// Type from the digit sums alone, without listing the numbers.
pub fn type_closed(spec: &QuotientSpec) -> Result<Int, InvariantsError> {
    let ctx = QuotientCtx::new(spec)?;
    let (a, b, d) = (&spec.a, &spec.b, &spec.d);
    if (a * b - a - b).is_multiple_of(d) {
        return Ok(Int::one());
    }
    if (a - 1u32).is_multiple_of(d) || (b - 1u32).is_multiple_of(d) {
        return Ok(embedding_dim_closed(spec)? - 1);
    }
    if d < a {
        let sd = small_d_setup(&ctx)?;
        let sum: Int = (1..=ctx.alpha.r() / 2).map(|k| sd.bd.get(2 * k)).sum();
        return Ok(Int::from(2) + sum);
    }
    let ld = large_d_setup(&ctx)?;
    let tail: Int = ld.big_b.iter().map(|&k| ld.bd.get(2 * k)).sum();
    if ctx.case_tag != CaseTag::ALtDLtB {
        return Ok(tail);
    }
    let head: Int = (1..ld.k0).map(|k| ctx.a_k(2 * k)).sum();
    let f0 = if ctx.alpha.alpha() < &ld.beta { 1 } else { 0 };
    Ok(head + tail + f0)
}

/// Frobenius number from the sign pattern of the `mu` chain, without listing
/// the pseudo-Frobenius numbers.
///
/// Along the pseudo-Frobenius list the increments decrease, so the maximum
/// sits where the slope `-mu_{2k-1}` changes sign. `k_1` is the last family
/// index with a negative slope term and `k_2` the first with a positive one.
pub fn frobenius_closed(spec: &QuotientSpec) -> Result<Int, InvariantsError> {
    let ctx = QuotientCtx::new(spec)?;
    let (a, b, d) = (&spec.a, &spec.b, &spec.d);
    let f = a * b - a - b;
    if f.is_multiple_of(d) {
        return Ok(f / d);
    }
    // Best value of the `F2`-style families over B: family k contributes
    // `top - j mu_{2k-1} - sum_{i<2k} b_i mu_{i-1}` for `0 <= j < b_{2k}`.
    let family_best = |bd: &Digits, big_b: &[usize], top: &Int| -> Option<Int> {
        let neg: Vec<usize> = big_b
            .iter()
            .copied()
            .filter(|&k| ctx.mu(2 * k as isize - 1).is_negative())
            .collect();
        let pos: Vec<usize> = big_b
            .iter()
            .copied()
            .filter(|&k| !ctx.mu(2 * k as isize - 1).is_negative())
            .collect();
        let mut cands = Vec::new();
        if let Some(&k1) = neg.last() {
            let step = ctx.mu(2 * k1 as isize - 1);
            cands.push(-step + ctx.digit_mu_sum(bd, 2 * k1));
        }
        if let Some(&k2) = pos.first() {
            cands.push(ctx.digit_mu_sum(bd, 2 * k2 - 1));
        }
        cands.into_iter().min().map(|c| top - c)
    };
    if d < a {
        // The list runs f1, then the families in order of k, then f2. The
        // maximum is either an end of the list or a place where the slope
        // changes sign, so f1 and f2 stay candidates even when one sign
        // class is empty.
        let sd = small_d_setup(&ctx)?;
        let r = ctx.alpha.r();
        let big_b: Vec<usize> = (1..=r / 2).filter(|&k| !sd.bd.get(2 * k).is_zero()).collect();
        let ra = Rat::from_integer(a.clone());
        let f1 = as_int(&sd.fd + &ra * &sd.beta - &ra, "f1")?;
        let n: Int = (1..=r).map(|i| sd.bd.get(i) * ctx.alpha.q(i as isize - 1)).sum();
        let f2 = as_int(&sd.fd - Rat::new(b * n, d.clone()), "f2")?;
        let top = as_int(&sd.fd + &ra * &sd.beta, "f/d + a beta")?;
        let best = f1.max(f2);
        return Ok(match family_best(&sd.bd, &big_b, &top) {
            Some(x) => best.max(x),
            None => best,
        });
    }
    let ld = large_d_setup(&ctx)?;
    let top = &ld.base + a;
    if ctx.case_tag != CaseTag::ALtDLtB {
        return family_best(&ld.bd, &ld.big_b, &top).ok_or_else(|| {
            InvariantsError::InternalInconsistency("no pseudo-Frobenius family".into())
        });
    }
    // a < d < b. gamma: first k with mu_{2k-1} > 0.
    let r = ctx.alpha.r();
    let gamma = (1..=r.div_ceil(2) + 1)
        .find(|&k| (2 * k - 1) <= r + 1 && ctx.mu(2 * k as isize - 1).is_positive());
    let k0 = ld.k0;
    match gamma {
        Some(g) if g < k0 => Ok(&ld.base - ctx.mu(2 * g as isize - 2)),
        Some(g) if g == k0 => {
            let left = &ld.base - ctx.mu(2 * k0 as isize - 2);
            if ld.big_b.is_empty() {
                return Ok(left);
            }
            let right = &top - ctx.digit_mu_sum(&ld.bd, 2 * k0 - 1);
            Ok(left.max(right))
        }
        _ => family_best(&ld.bd, &ld.big_b, &top).ok_or_else(|| {
            InvariantsError::InternalInconsistency("no pseudo-Frobenius family".into())
        }),
    }
}

/// Frobenius number: the maximum of [`pf_fast`], checked against
/// [`frobenius_closed`].
pub fn frobenius_fast(spec: &QuotientSpec) -> Result<Int, InvariantsError> {
    let pf = pf_fast(spec)?;
    let top = pf.last().cloned().ok_or_else(|| {
        InvariantsError::InternalInconsistency("empty pseudo-Frobenius list".into())
    })?;
    let closed = frobenius_closed(spec)?;
    if closed != top {
        return Err(InvariantsError::InternalInconsistency(format!(
            "{spec}: max(PF) = {top} but the sign analysis gives {closed}"
        )));
    }
    Ok(top)
}

/// Genus as `(a-1)(b-1)/(2d) + (C - 1 - beta nu)/2` with
/// `beta = {(b-1)/d}`, `nu = (a-1) mod d`, and
/// `C = #{k in [0, nu] : {k m'/d} <= beta}` where `b = a m' mod d`.
pub fn genus_fast(spec: &QuotientSpec) -> Result<Int, InvariantsError> {
    let (a, b, d) = (&spec.a, &spec.b, &spec.d);
    if d.is_one() {
        return Ok((a - 1) * (b - 1) / 2);
    }
    require_proper(spec)?;
    let nu: Int = (a - 1u32).mod_floor(d);
    let beta = Rat::new((b - 1u32).mod_floor(d), d.clone());
    let c = if nu.is_zero() || beta.is_zero() {
        Int::one()
    } else {
        let m2 = (b * mod_inverse(a, d).expect("coprime")).mod_floor(d);
        AlphaCtx::new(&Rat::new(m2, d.clone()))?.count_c(&beta, &nu)?
    };
    let two = Rat::from_integer(Int::from(2));
    let g = Rat::new((a - 1) * (b - 1), d * 2)
        + (Rat::from_integer(c - 1) - &beta * Rat::from_integer(nu)) / two;
    as_int(g, "genus")
}

/// Which computation [`full_report`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Closed forms.
    Fast,
    /// Membership table.
    Oracle,
    /// Both, compared field by field.
    Both,
}

/// Normalizes `(a, b, d)` and computes every invariant.
pub fn full_report(a: &Int, b: &Int, d: &Int, mode: Mode) -> Result<InvariantReport, InvariantsError> {
    let (norm, _) = normalize(a, b, d)?;
    let spec = match norm {
        Normalized::Trivial => {
            return Ok(InvariantReport::whole_n(match mode {
                Mode::Fast => Method::Fast,
                Mode::Oracle => Method::Oracle,
                Mode::Both => Method::Both,
            }))
        }
        Normalized::Spec(s) => s,
    };
    match mode {
        Mode::Fast => fast_report(&spec),
        Mode::Oracle => oracle_report(&spec),
        Mode::Both => {
            let fast = fast_report(&spec)?;
            let slow = oracle_report(&spec)?;
            let diff = fast.diff(&slow);
            if !diff.is_empty() {
                return Err(InvariantsError::Mismatch(format!(
                    "{spec}: fast vs oracle: {}",
                    diff.join("; ")
                )));
            }
            Ok(InvariantReport {
                method: Method::Both,
                ..fast
            })
        }
    }
}

/// Closed-form report of a pairwise coprime spec (any `d >= 1`).
pub fn fast_report(spec: &QuotientSpec) -> Result<InvariantReport, InvariantsError> {
    let (a, b) = (&spec.a, &spec.b);
    if spec.d.is_one() {
        let f = a * b - a - b;
        return Ok(InvariantReport::assemble(
            a.clone(),
            f.clone(),
            (a - 1) * (b - 1) / 2,
            vec![a.clone(), b.clone()],
            vec![f],
            Method::Fast,
            None,
        ));
    }
    let ctx = QuotientCtx::new(spec)?;
    let irr = irr_from_ctx(&ctx)?;
    let pf = pf_fast(spec)?;
    let frob = frobenius_fast(spec)?;
    let report = InvariantReport::assemble(
        multiplicity_fast(spec)?,
        frob,
        genus_fast(spec)?,
        irr,
        pf,
        Method::Fast,
        Some(ctx.case_tag),
    );
    if report.irr.first() != Some(&report.multiplicity) {
        return Err(InvariantsError::InternalInconsistency(format!(
            "{spec}: multiplicity {} but least generator {:?}",
            report.multiplicity,
            report.irr.first()
        )));
    }
    Ok(report)
}

/// Table-based report of a pairwise coprime spec.
pub fn oracle_report(spec: &QuotientSpec) -> Result<InvariantReport, InvariantsError> {
    let small = |x: &Int| {
        x.to_u64()
            .ok_or_else(|| InvariantsError::Oracle(OracleError::TooLarge(u64::MAX)))
    };
    let o = SemigroupOracle::quotient_ab(small(&spec.a)?, small(&spec.b)?, small(&spec.d)?)?;
    Ok(o.invariants())
}

/// Minimal generators of a spec, or `{1}` when the quotient is N.
pub fn irr_of(a: &Int, b: &Int, d: &Int) -> Result<Vec<Int>, InvariantsError> {
    match normalize(a, b, d)?.0 {
        Normalized::Trivial => Ok(vec![Int::one()]),
        Normalized::Spec(s) if s.d.is_one() => Ok(vec![s.a, s.b]),
        Normalized::Spec(s) => Ok(irr_fast(&s)?.0),
    }
}

/// Exact `floor` of `x / d` as used by the pseudo-Frobenius families.
pub fn floor_div(x: &Int, d: &Int) -> Int {
    floor(&Rat::new(x.clone(), d.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: u64, b: u64, d: u64) -> QuotientSpec {
        QuotientSpec::from_u64(a, b, d).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn seven_fifty_nine_six() {
        let s = spec(7, 59, 6);
        assert_eq!(multiplicity_fast(&s).unwrap(), Int::from(7));
        assert_eq!(irr_fast(&s).unwrap().0, ints(&[7, 11, 59]));
        assert_eq!(pf_fast(&s).unwrap(), ints(&[48, 52]));
        assert_eq!(frobenius_fast(&s).unwrap(), Int::from(52));
        assert_eq!(genus_fast(&s).unwrap(), Int::from(29));
        let r = full_report(&Int::from(7), &Int::from(59), &Int::from(6), Mode::Both).unwrap();
        assert_eq!((r.e, r.t), (3, 2));
        assert_eq!(r.method, Method::Both);
    }

    #[test]
    fn normalize_examples() {
        let (n, trace) = normalize(&Int::from(14), &Int::from(59), &Int::from(12)).unwrap();
        assert_eq!(n, Normalized::Spec(spec(7, 59, 6)));
        assert_eq!(trace.len(), 1);
        let (n, trace) = normalize(&Int::from(7), &Int::from(59), &Int::from(6)).unwrap();
        assert_eq!(n, Normalized::Spec(spec(7, 59, 6)));
        assert!(trace.is_empty());
        assert_eq!(
            normalize(&Int::from(5), &Int::from(7), &Int::from(10)).unwrap().0,
            Normalized::Trivial
        );
        assert!(matches!(
            normalize(&Int::from(4), &Int::from(6), &Int::from(5)),
            Err(InvariantsError::NotCoprime { .. })
        ));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity_fast(&spec(151, 503, 218)).unwrap(), Int::from(3));
    }

    #[test]
    fn irr_examples() {
        assert_eq!(irr_fast(&spec(10, 79, 7)).unwrap().0, ints(&[10, 17, 24, 79]));
        let want: Vec<Int> = (0..=150).map(|n| Int::from(151 + 2 * n)).collect();
        assert_eq!(irr_fast(&spec(151, 503, 176)).unwrap().0, want);
    }

    #[test]
    fn extremal_examples() {
        let x = extremal_e(&spec(151, 503, 6)).unwrap();
        assert_eq!(x.kind, ExtremalKind::ThreeGenerators);
        assert_eq!(x.irr, ints(&[109, 151, 503]));
        let x = extremal_e(&spec(151, 503, 32)).unwrap();
        assert_eq!(x.kind, ExtremalKind::DPlusOne);
        assert_eq!(x.irr.len(), 33);
        assert_eq!(&x.irr[1] - &x.irr[0], Int::from(11));
        let x = extremal_e(&spec(151, 503, 218)).unwrap();
        assert_eq!(x.kind, ExtremalKind::TwoGenerators);
        assert_eq!(x.irr, ints(&[3, 151]));
    }

    #[test]
    fn frobenius_examples() {
        // 23 divides f(<5,7>) = 23.
        assert_eq!(frobenius_fast(&spec(5, 7, 23)).unwrap(), Int::one());
        let r = full_report(&Int::from(5), &Int::from(7), &Int::from(23), Mode::Both).unwrap();
        assert_eq!((r.genus.clone(), r.symmetric), (Int::one(), true));
    }

    #[test]
    fn whole_n_and_sylvester() {
        let r = full_report(&Int::from(5), &Int::from(7), &Int::from(10), Mode::Fast).unwrap();
        assert_eq!(r, InvariantReport::whole_n(Method::Fast));
        let r = full_report(&Int::from(5), &Int::from(7), &Int::from(1), Mode::Both).unwrap();
        assert_eq!(r.frobenius, Int::from(23));
        assert_eq!(r.genus, Int::from(12));
    }

    #[test]
    fn eleven_eighty_nine_twenty() {
        let r = full_report(&Int::from(11), &Int::from(89), &Int::from(20), Mode::Fast).unwrap();
        let five_eleven = SemigroupOracle::from_generators(&[5, 11]).unwrap().invariants();
        assert!(r.diff(&five_eleven).is_empty());
        assert_eq!(r.pf, ints(&[39]));
    }
}

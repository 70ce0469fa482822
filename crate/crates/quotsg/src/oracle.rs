//! Brute-force numerical semigroups.
//!
//! A [`SemigroupOracle`] stores the membership of every integer up to a
//! bound past the conductor, and reads each invariant off that table by
//! definition. It is slow and simple, and serves as ground truth for the
//! closed forms in [`crate::invariants`].

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactmath::{Int, Rat};
use crate::invariants::{InvariantReport, Method};

/// Largest table the oracle agrees to build.
pub const MAX_TABLE: u64 = 200_000_000;

/// Errors raised while building an oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// The generators have a common factor, so the monoid is not cofinite.
    #[error("NotCoprime: generators {0:?} have gcd {1}")]
    NotCoprime(Vec<u64>, u64),
    /// The membership table would exceed [`MAX_TABLE`] entries.
    #[error("TooLarge: table of {0} entries requested")]
    TooLarge(u64),
}

/// Explicit membership table of a numerical semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupOracle {
    /// `member[x]` for `x` in `0..member.len()`; every larger integer is a
    /// member.
    member: Vec<bool>,
    conductor: u64,
    gens: Option<Vec<u64>>,
}

impl SemigroupOracle {
    /// Sieve of all non-negative combinations of `gens`.
    ///
    /// The sieve stops once a run of `min(gens)` consecutive members is seen:
    /// adding the smallest generator then covers every later integer.
    pub fn from_generators(gens: &[u64]) -> Result<Self, OracleError> {
        let mut g: Vec<u64> = gens.iter().copied().filter(|&x| x > 0).collect();
        g.sort_unstable();
        g.dedup();
        let common = g.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if common != 1 {
            return Err(OracleError::NotCoprime(gens.to_vec(), common));
        }
        let m = g[0] as usize;
        let mut member = vec![true];
        let mut run = 1usize;
        while run < m {
            let n = member.len();
            if n as u64 > MAX_TABLE {
                return Err(OracleError::TooLarge(n as u64));
            }
            let hit = g
                .iter()
                .take_while(|&&x| x as usize <= n)
                .any(|&x| member[n - x as usize]);
            member.push(hit);
            run = if hit { run + 1 } else { 0 };
        }
        let mut s = Self::from_table(member);
        s.gens = Some(gens.to_vec());
        Ok(s)
    }

    /// The semigroup generated by `a` and `b`, divided by `d`, built with
    /// the constant-time membership test of [`member_ab`].
    pub fn quotient_ab(a: u64, b: u64, d: u64) -> Result<Self, OracleError> {
        if a.gcd(&b) != 1 {
            return Err(OracleError::NotCoprime(vec![a, b], a.gcd(&b)));
        }
        if a == 1 || b == 1 {
            return Ok(Self::from_table(vec![true]));
        }
        let f = a * b - a - b;
        let bound = f / d + 2;
        if bound > MAX_TABLE {
            return Err(OracleError::TooLarge(bound));
        }
        let member = (0..bound).map(|x| member_ab(d * x, a, b)).collect();
        Ok(Self::from_table(member))
    }

    /// `S/d = {x : d*x in S}`.
    pub fn quotient(&self, d: u64) -> SemigroupOracle {
        let bound = self.conductor.div_ceil(d) + 1;
        let member = (0..bound).map(|x| self.contains(d * x)).collect();
        Self::from_table(member)
    }

    fn from_table(mut member: Vec<bool>) -> Self {
        let last_gap = member.iter().rposition(|&x| !x);
        let conductor = last_gap.map_or(0, |i| i as u64 + 1);
        member.truncate(conductor as usize + 1);
        SemigroupOracle {
            member,
            conductor,
            gens: None,
        }
    }

    /// Membership of a non-negative integer.
    pub fn contains(&self, x: u64) -> bool {
        self.member.get(x as usize).copied().unwrap_or(true)
    }

    /// Membership of any integer; negatives are never members.
    pub fn contains_i(&self, x: i64) -> bool {
        x >= 0 && self.contains(x as u64)
    }

    /// Least `c` such that every integer `>= c` is a member.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Largest gap, or -1 for the whole of N.
    pub fn frobenius(&self) -> i64 {
        self.conductor as i64 - 1
    }

    /// Generators the oracle was built from, if any.
    pub fn gens(&self) -> Option<&[u64]> {
        self.gens.as_deref()
    }

    /// Smallest positive member.
    pub fn multiplicity(&self) -> u64 {
        (1..).find(|&x| self.contains(x)).expect("cofinite")
    }

    /// All gaps in increasing order.
    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor).filter(|&x| !self.contains(x)).collect()
    }

    /// Number of gaps.
    pub fn genus(&self) -> u64 {
        self.member.iter().filter(|&&x| !x).count() as u64
    }

    /// Minimal generators: positive members that are not a sum of two
    /// positive members. Only members up to `c + m` can qualify.
    pub fn irr(&self) -> Vec<u64> {
        let m = self.multiplicity();
        let mut irr: Vec<u64> = Vec::new();
        for s in 1..=self.conductor + m {
            if !self.contains(s) {
                continue;
            }
            if !irr.iter().any(|&g| g < s && self.contains(s - g)) {
                irr.push(s);
            }
        }
        irr
    }

    /// Pseudo-Frobenius numbers: gaps `g` with `g + s` a member for every
    /// positive member `s`, and `{-1}` for N.
    pub fn pf(&self) -> Vec<i64> {
        if self.conductor == 0 {
            return vec![-1];
        }
        let irr = self.irr();
        self.gaps()
            .into_iter()
            .filter(|&g| irr.iter().all(|&s| self.contains(g + s)))
            .map(|g| g as i64)
            .collect()
    }

    /// Full invariant bundle read off the table.
    pub fn invariants(&self) -> InvariantReport {
        let irr: Vec<Int> = self.irr().into_iter().map(Int::from).collect();
        let pf: Vec<Int> = self.pf().into_iter().map(Int::from).collect();
        InvariantReport::assemble(
            Int::from(self.multiplicity()),
            Int::from(self.frobenius()),
            Int::from(self.genus()),
            irr,
            pf,
            Method::Oracle,
            None,
        )
    }

    /// Wilf's inequality `g/c <= 1 - 1/e`, with the margin
    /// `g/c - (1 - 1/e)`.
    pub fn wilf_check(&self) -> (bool, Rat) {
        let margin = wilf_margin(
            &Int::from(self.genus()),
            &Int::from(self.conductor),
            self.irr().len(),
        );
        (margin <= Rat::zero(), margin)
    }
}

/// `g/c - (1 - 1/e)`, taken as 0 for N (where `c = 0` and `e = 1`).
pub fn wilf_margin(genus: &Int, conductor: &Int, e: usize) -> Rat {
    if conductor.is_zero() {
        return Rat::zero();
    }
    let e = Int::from(e);
    Rat::new(genus.clone(), conductor.clone()) - Rat::new(&e - 1, e)
}

/// Membership of `n` in the semigroup generated by coprime `a` and `b`,
/// without a table.
///
/// Write `n = x a - y b`. Then `n` is a member exactly when `n` lies in
/// `a * [0, b-1]` or `floor(x/b) != floor(y/a)`.
pub fn member_ab(n: u64, a: u64, b: u64) -> bool {
    if n % a == 0 && n / a < b {
        return true;
    }
    let (a, b, n) = (a as i128, b as i128, n as i128);
    let e = a.extended_gcd(&b);
    debug_assert_eq!(e.gcd, 1);
    // e.x * a + e.y * b = 1, so n = (n e.x) a - (-n e.y) b.
    let x = n * e.x;
    let y = -n * e.y;
    Integer::div_floor(&x, &b) != Integer::div_floor(&y, &a)
}

/// [`member_ab`] for integers of any size.
pub fn member_big(n: &Int, a: &Int, b: &Int) -> bool {
    if n.is_negative() {
        return false;
    }
    let (q, r) = n.div_rem(a);
    if r.is_zero() && &q < b {
        return true;
    }
    let e = a.extended_gcd(b);
    debug_assert!(e.gcd.is_one());
    let x = n * &e.x;
    let y = -(n * &e.y);
    x.div_floor(b) != y.div_floor(a)
}

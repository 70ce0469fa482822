//! Digit expansions attached to a rational `alpha = p/q` in `[0, 1)`.
//!
//! With `alpha = [0, a1, ..., ar, 1]`, every integer `n` in `[0, q-1]` has a
//! unique admissible digit string `(d1, ..., dr)` with
//! `n = sum d_j q_{j-1}`, and the same string gives
//! `{n alpha} = sum (-1)^(j-1) d_j delta_{j-1}`. The map to `n` is increasing
//! for the reversed lexicographic order and the map to `{n alpha}` is
//! increasing for the alternate lexicographic order. On top of this the
//! module lists the minimal points of the sequences `({n alpha}, n)` and
//! `({n alpha - beta}, n)` and counts `k <= nu` with `{k alpha} <= beta`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactmath::{alo_cmp, floor_cfe, frac, rlo_cmp, Int, Rat};

/// Errors raised by the digit layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OstrowskiError {
    /// A rational lies outside the allowed set.
    #[error("DomainError: {0}")]
    Domain(String),
    /// An integer argument lies outside its allowed range.
    #[error("RangeError: {0}")]
    Range(String),
}

/// An admissible digit string of fixed length `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digits(pub Vec<Int>);

impl Digits {
    /// Digit `j`, 1-based; zero beyond the stored length.
    pub fn get(&self, j: usize) -> Int {
        if j == 0 {
            return Int::zero();
        }
        self.0.get(j - 1).cloned().unwrap_or_default()
    }

    /// Index of the last nonzero digit, 0 for the all-zero string.
    pub fn len_nonzero(&self) -> usize {
        self.0.iter().rposition(|d| !d.is_zero()).map_or(0, |i| i + 1)
    }

    /// True when every digit is zero.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Digits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

/// A point `(frac, n)` of one of the sequences studied here, with the
/// digit string of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinPoint {
    /// The index `n`.
    pub n: Int,
    /// `{n alpha}` or `{n alpha - beta}`, depending on the sequence.
    pub frac: Rat,
    /// Digits of `n`.
    pub digits: Digits,
}

/// Convergent and `delta` tables for a rational `alpha` in `[0, 1)`.
///
/// Index conventions: `q(i)` and `p(i)` are defined for `i` in
/// `-2..=r+1` with `a_{r+1} = 1`, and `delta(i)` for `i` in `-2..=r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaCtx {
    alpha: Rat,
    a: Vec<Int>,
    q: Vec<Int>,
    p: Vec<Int>,
    /// `delta(i) * den`, an integer, for `i` in `-2..=r`.
    dnum: Vec<Int>,
}

impl AlphaCtx {
    /// Builds the tables for `alpha`.
    pub fn new(alpha: &Rat) -> Result<Self, OstrowskiError> {
        if alpha.is_negative() || *alpha >= Rat::one() {
            return Err(OstrowskiError::Domain(format!(
                "alpha = {alpha} is outside [0, 1)"
            )));
        }
        let a: Vec<Int> = if alpha.is_zero() {
            Vec::new()
        } else {
            let t = floor_cfe(alpha).into_terms();
            t[1..t.len() - 1].to_vec()
        };
        let r = a.len();
        let mut q = vec![Int::one(), Int::zero()];
        let mut p = vec![Int::zero(), Int::one()];
        // a0 = 0, then a1..ar, then a_{r+1} = 1.
        let terms = std::iter::once(Int::zero())
            .chain(a.iter().cloned())
            .chain(std::iter::once(Int::one()));
        for t in terms {
            let n = q.len();
            q.push(&t * &q[n - 1] + &q[n - 2]);
            p.push(&t * &p[n - 1] + &p[n - 2]);
        }
        let den = alpha.denom().clone();
        let num = alpha.numer().clone();
        let mut dnum = Vec::with_capacity(r + 3);
        for idx in 0..r + 3 {
            let i = idx as isize - 2;
            let v = &q[idx] * &num - &p[idx] * &den;
            dnum.push(if i.rem_euclid(2) == 0 { v } else { -v });
        }
        if alpha.is_zero() {
            // delta(-1) = 1 and delta(-2) = 0 are the only entries used.
            dnum.truncate(2);
        }
        Ok(AlphaCtx {
            alpha: alpha.clone(),
            a,
            q,
            p,
            dnum,
        })
    }

    /// The rational `alpha`.
    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    /// CFE depth `r`: the number of digits.
    pub fn r(&self) -> usize {
        self.a.len()
    }

    /// Denominator `q_{r+1}` of `alpha`.
    pub fn den(&self) -> &Int {
        self.alpha.denom()
    }

    /// Partial quotient `a_j` for `j` in `1..=r+1`; zero outside.
    pub fn a(&self, j: usize) -> Int {
        if j == self.r() + 1 {
            Int::one()
        } else if j == 0 || j > self.r() {
            Int::zero()
        } else {
            self.a[j - 1].clone()
        }
    }

    /// Partial quotients `a_1..a_r`.
    pub fn partial_quotients(&self) -> &[Int] {
        &self.a
    }

    /// Convergent denominator `q_i`, `i` in `-2..=r+1`.
    pub fn q(&self, i: isize) -> &Int {
        &self.q[(i + 2) as usize]
    }

    /// Convergent numerator `p_i`, `i` in `-2..=r+1`.
    pub fn p(&self, i: isize) -> &Int {
        &self.p[(i + 2) as usize]
    }

    /// `delta_i = (-1)^i (q_i alpha - p_i)`, `i` in `-2..=r`.
    pub fn delta(&self, i: isize) -> Rat {
        Rat::new(self.delta_num(i).clone(), self.den().clone())
    }

    /// `delta_i * q_{r+1}`, an integer.
    pub fn delta_num(&self, i: isize) -> &Int {
        &self.dnum[(i + 2) as usize]
    }

    /// `{n alpha}` for an integer `n`.
    pub fn frac_of(&self, n: &Int) -> Rat {
        Rat::new(
            (n * self.alpha.numer()).mod_floor(self.den()),
            self.den().clone(),
        )
    }

    /// Checks that a raw string (padded with zeros to length `r`) is
    /// admissible: `0 <= d_j <= a_j`, and `d_j = 0` forces either a zero
    /// tail or `d_{j-1} = a_{j-1}`.
    pub fn is_admissible(&self, d: &[Int]) -> bool {
        let r = self.r();
        if d.len() > r {
            return false;
        }
        let get = |j: usize| d.get(j - 1).cloned().unwrap_or_default();
        for j in 1..=r {
            let dj = get(j);
            if dj.is_negative() || dj > self.a(j) {
                return false;
            }
            if dj.is_zero() {
                let tail_zero = (j + 1..=r).all(|i| get(i).is_zero());
                let prev_full = j >= 2 && get(j - 1) == self.a(j - 1);
                if !tail_zero && !prev_full {
                    return false;
                }
            }
        }
        true
    }

    /// `n = sum d_j q_{j-1}`.
    pub fn psi(&self, d: &Digits) -> Int {
        d.0.iter()
            .enumerate()
            .map(|(i, dj)| dj * self.q(i as isize))
            .sum()
    }

    /// Digits of `n` by greedy descent from the last position.
    pub fn psi_inv(&self, n: &Int) -> Result<Digits, OstrowskiError> {
        if n.is_negative() || n >= self.den() {
            return Err(OstrowskiError::Range(format!(
                "n = {n} is outside [0, {}]",
                self.den() - 1
            )));
        }
        let r = self.r();
        let mut rest = n.clone();
        let mut d = vec![Int::zero(); r];
        for k in (1..=r).rev() {
            let k = k as isize;
            let t = (&rest - self.q(k - 2)).div_floor(self.q(k - 1));
            let dk = if t.is_negative() { Int::zero() } else { t };
            rest -= &dk * self.q(k - 1);
            d[(k - 1) as usize] = dk;
        }
        debug_assert!(rest.is_zero());
        Ok(Digits(d))
    }

    /// `sum (-1)^(j-1) d_j delta_{j-1}` times `q_{r+1}`.
    fn lam_num(&self, d: &[Int]) -> Int {
        let mut acc = Int::zero();
        for (i, dj) in d.iter().enumerate() {
            let t = dj * self.delta_num(i as isize);
            if i % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        acc
    }

    /// `sum (-1)^(j-1) d_j delta_{j-1}`, which equals `{psi(d) alpha}`.
    pub fn lam(&self, d: &Digits) -> Rat {
        Rat::new(self.lam_num(&d.0), self.den().clone())
    }

    /// Digits of `beta` for the map [`lam`](Self::lam).
    ///
    /// `beta` must be `n / q_{r+1}` with `0 <= n < q_{r+1}`.
    pub fn lam_inv(&self, beta: &Rat) -> Result<Digits, OstrowskiError> {
        let scaled = beta * Rat::from_integer(self.den().clone());
        if !scaled.is_integer() || beta.is_negative() || *beta >= Rat::one() {
            return Err(OstrowskiError::Domain(format!(
                "beta = {beta} is not of the form n/{} with 0 <= n < {}",
                self.den(),
                self.den()
            )));
        }
        Ok(self.lam_inv_num(scaled.to_integer()))
    }

    fn lam_inv_num(&self, beta_num: Int) -> Digits {
        let r = self.r();
        let mut b = Vec::with_capacity(r);
        let mut cur = beta_num;
        for k in 1..=r {
            let dl = self.delta_num(k as isize - 1);
            let c = -((-&cur).div_floor(dl));
            let bk = c.min(self.a(k));
            cur = &bk * dl - &cur;
            b.push(bk);
        }
        Digits(b)
    }

    /// All `q_{r+1}` admissible strings, in increasing order of `psi`.
    pub fn enumerate(&self) -> Vec<Digits> {
        let mut out = Vec::new();
        let mut cur = vec![Int::zero(); self.r()];
        self.enumerate_rec(0, &mut cur, &mut out);
        out.sort_by(|u, v| rlo_cmp(&u.0, &v.0));
        out
    }

    fn enumerate_rec(&self, pos: usize, cur: &mut Vec<Int>, out: &mut Vec<Digits>) {
        let r = self.r();
        if pos == r {
            out.push(Digits(cur.clone()));
            return;
        }
        let j = pos + 1;
        // A zero at position j is allowed mid-string only after a full digit.
        let zero_mid = j >= 2 && cur[pos - 1] == self.a(j - 1);
        let mut v = Int::zero();
        while v <= self.a(j) {
            cur[pos] = v.clone();
            if v.is_zero() && !zero_mid {
                // Forced zero tail.
                for c in cur[pos..].iter_mut() {
                    *c = Int::zero();
                }
                out.push(Digits(cur.clone()));
            } else {
                self.enumerate_rec(pos + 1, cur, out);
            }
            v += 1;
        }
        cur[pos] = Int::zero();
    }

    fn point(&self, n: Int, shift: &Rat) -> MinPoint {
        let digits = self.psi_inv(&n).expect("point index in range");
        let f = frac(&(self.frac_of(&n) - shift));
        MinPoint { n, frac: f, digits }
    }

    fn check_n(&self, big_n: &Int) -> Result<Digits, OstrowskiError> {
        if *big_n < Int::one() || *big_n >= *self.den() {
            return Err(OstrowskiError::Range(format!(
                "N = {big_n} is outside [1, {}]",
                self.den() - 1
            )));
        }
        self.psi_inv(big_n)
    }

    /// Indices `n` of the minimal points of `{({n alpha}, n) : 1 <= n <= N}`
    /// for the product order, as `q_0` and `q_{2k-2} + j q_{2k-1}`.
    fn min_indices(&self, nd: &Digits) -> Vec<(usize, Int)> {
        let s = nd.len_nonzero();
        let mut out = vec![(0, self.q(0).clone())];
        for k in 1..=s / 2 {
            let jmax = if 2 * k < s { self.a(2 * k) } else { nd.get(s) };
            let base = self.q(2 * k as isize - 2);
            let step = self.q(2 * k as isize - 1);
            let mut j = Int::one();
            while j <= jmax {
                out.push((k, base + &j * step));
                j += 1;
            }
        }
        out
    }

    /// Minimal points of `{({n alpha}, n) : 1 <= n <= N}` for the product
    /// order, sorted by `n`.
    pub fn min_points(&self, big_n: &Int) -> Result<Vec<MinPoint>, OstrowskiError> {
        let nd = self.check_n(big_n)?;
        let zero = Rat::zero();
        Ok(self
            .min_indices(&nd)
            .into_iter()
            .map(|(_, n)| self.point(n, &zero))
            .collect())
    }

    /// Minimal points of `{({n alpha}, n) : 1 <= n <= N, {n alpha} <= beta}`.
    ///
    /// `beta` must be a nonzero value `{n alpha}`. An empty result means no
    /// `n <= N` satisfies the cap.
    pub fn min_points_capped(
        &self,
        big_n: &Int,
        beta: &Rat,
    ) -> Result<Vec<MinPoint>, OstrowskiError> {
        let nd = self.check_n(big_n)?;
        if beta.is_zero() {
            return Err(OstrowskiError::Domain("beta must be nonzero".into()));
        }
        let b = self.lam_inv(beta)?;
        let zero = Rat::zero();
        let two = Int::from(2);
        if b.get(1) >= two || b.get(2).is_zero() {
            return self.min_points(big_n);
        }
        let sb = b.len_nonzero();
        let t = (1..)
            .take_while(|i| 2 * i + 1 <= sb)
            .find(|&i| !b.get(2 * i + 1).is_zero())
            .unwrap_or(sb / 2);
        let s = nd.len_nonzero();
        let mut out = Vec::new();
        for k in t..=s / 2 {
            if k == 0 {
                continue;
            }
            let jmin = if k == t { b.get(2 * t) } else { Int::one() };
            let jmax = if 2 * k < s { self.a(2 * k) } else { nd.get(s) };
            let base = self.q(2 * k as isize - 2);
            let step = self.q(2 * k as isize - 1);
            let mut j = jmin;
            while j <= jmax {
                out.push(self.point(base + &j * step, &zero));
                j += 1;
            }
        }
        Ok(out)
    }

    /// Minimal points of `({n alpha - beta}, n)` for `n` in `[1, q-1]`, or in
    /// `[0, q-1]` when `include_zero` is set, sorted by `n`.
    ///
    /// `beta` must be `p'/q` with `p'` in `[1, q-1]`.
    pub fn min_points_shifted(
        &self,
        beta: &Rat,
        include_zero: bool,
    ) -> Result<Vec<MinPoint>, OstrowskiError> {
        if beta.is_zero() {
            return Err(OstrowskiError::Domain("beta must be nonzero".into()));
        }
        let b = self.lam_inv(beta)?;
        let s = b.len_nonzero();
        let t = (1..=s / 2)
            .find(|&i| !b.get(2 * i).is_zero())
            .unwrap_or(s.div_ceil(2).max(1));
        let mut ns: Vec<Int> = Vec::new();
        if !include_zero {
            ns.push(Int::one());
            for k in 1..t {
                let base = self.q(2 * k as isize - 2);
                let step = self.q(2 * k as isize - 1);
                let mut j = Int::one();
                while j <= self.a(2 * k) {
                    ns.push(base + &j * step);
                    j += 1;
                }
            }
        }
        for k in t..=s / 2 {
            let prefix: Int = (1..2 * k)
                .map(|i| b.get(i) * self.q(i as isize - 1))
                .sum();
            let step = self.q(2 * k as isize - 1);
            let mut j = Int::zero();
            while j < b.get(2 * k) {
                ns.push(&prefix + &j * step);
                j += 1;
            }
        }
        ns.push(self.psi(&b));
        ns.retain(|n| !n.is_zero());
        ns.sort();
        ns.dedup();
        let mut out: Vec<MinPoint> = ns.into_iter().map(|n| self.point(n, beta)).collect();
        if include_zero {
            out.insert(
                0,
                MinPoint {
                    n: Int::zero(),
                    frac: Rat::one() - beta,
                    digits: Digits(vec![Int::zero(); self.r()]),
                },
            );
        }
        Ok(out)
    }

    /// `#{k in [0, nu] : {k alpha} <= beta}` by the digit formula.
    ///
    /// Requires `0 < nu < q` and `beta = m/q` with `0 < m < q`.
    pub fn count_c(&self, beta: &Rat, nu: &Int) -> Result<Int, OstrowskiError> {
        if !nu.is_positive() || nu >= self.den() {
            return Err(OstrowskiError::Range(format!(
                "nu = {nu} is outside [1, {}]",
                self.den() - 1
            )));
        }
        if beta.is_zero() {
            return Err(OstrowskiError::Domain("beta must be nonzero".into()));
        }
        let b = self.lam_inv(beta)?;
        let n = self.psi_inv(nu)?;
        Ok(self.count_from_digits(&n, &b, nu))
    }

    fn count_from_digits(&self, n: &Digits, b: &Digits, nu: &Int) -> Int {
        let s = n.len_nonzero().min(b.len_nonzero());
        let one = Int::one;
        let ind = |c: bool| if c { one() } else { Int::zero() };

        let mut total = ind(alo_cmp(&n.0, &b.0) != Ordering::Greater)
            + ind(rlo_cmp(&b.0, &n.0) != Ordering::Greater)
            - ind(n == b);

        // nu_k and alpha_k as exact fractions num/den.
        let (mut an, mut ad) = (self.alpha.numer().clone(), self.den().clone());
        let mut nu_k = nu.clone();
        for i in 1..=s {
            let base = (&nu_k * &an).div_floor(&ad);
            // The shifted string sigma^i(n) is read in the system of
            // alpha_i; a leading zero followed by a nonzero digit is not
            // admissible there and costs one unit.
            let bump = n.get(i + 1).is_zero() && !n.get(i + 2).is_zero();
            nu_k = base + ind(bump);
            // alpha_i = {1 / alpha_{i-1}}.
            let rem = ad.mod_floor(&an);
            ad = std::mem::replace(&mut an, rem);

            let shifted_n = &n.0[i.min(n.0.len())..];
            let shifted_b = &b.0[i.min(b.0.len())..];
            let tail_nonzero = shifted_n.iter().any(|x| !x.is_zero());
            let tau = if (n.get(i).is_zero() || n.get(i + 1).is_zero()) && tail_nonzero {
                one()
            } else {
                b.get(i).min(n.get(i))
            };
            let eps_r = ind(rlo_cmp(shifted_b, shifted_n) == Ordering::Less);
            let eps = ind(b.get(i) < n.get(i) && alo_cmp(shifted_b, shifted_n) == Ordering::Less);
            let term = b.get(i) * &nu_k + tau + eps - eps_r;
            if i % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
}

/// `#{k in [0, nu] : {k alpha} <= beta}` by direct enumeration.
pub fn count_c_naive(alpha: &Rat, beta: &Rat, nu: &Int) -> Int {
    let (p, q) = (alpha.numer(), alpha.denom());
    let (bn, bd) = (beta.numer(), beta.denom());
    let mut count = Int::zero();
    let mut k = Int::zero();
    while k <= *nu {
        let r = (&k * p).mod_floor(q);
        if r * bd <= bn * q {
            count += 1;
        }
        k += 1;
    }
    count
}

/// Reference minimal points of `(frac(n), n)` for `n` in `range`: an index
/// is minimal exactly when its value is a strict record low.
pub fn pareto_record_lows(
    range: impl Iterator<Item = Int>,
    value: impl Fn(&Int) -> Rat,
) -> Vec<Int> {
    let mut best: Option<Rat> = None;
    let mut out = Vec::new();
    for n in range {
        let v = value(&n);
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
            out.push(n);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn digits(v: &[i64]) -> Digits {
        Digits(ints(v))
    }

    #[test]
    fn ctx_five_sevenths() {
        let c = AlphaCtx::new(&rat(5, 7)).unwrap();
        assert_eq!(c.partial_quotients(), ints(&[1, 2, 1]));
        let qs: Vec<Int> = (0..=4).map(|i| c.q(i).clone()).collect();
        assert_eq!(qs, ints(&[1, 1, 3, 4, 7]));
        let ds: Vec<Rat> = (0..=3).map(|i| c.delta(i)).collect();
        assert_eq!(ds, vec![rat(5, 7), rat(2, 7), rat(1, 7), rat(1, 7)]);
        assert_eq!(c.delta(-1), rat(1, 1));
        assert_eq!(c.delta(-2), rat(5, 7));
    }

    #[test]
    fn ctx_edge_cases() {
        let z = AlphaCtx::new(&rat(0, 1)).unwrap();
        assert_eq!(z.r(), 0);
        assert_eq!(z.enumerate(), vec![Digits(vec![])]);
        assert_eq!(z.psi(&Digits(vec![])), Int::zero());
        let c = AlphaCtx::new(&rat(1, 6)).unwrap();
        assert_eq!(c.partial_quotients(), ints(&[5]));
        assert_eq!(*c.q(2), Int::from(6));
        assert!(AlphaCtx::new(&rat(1, 1)).is_err());
        assert!(AlphaCtx::new(&rat(-1, 3)).is_err());
    }

    #[test]
    fn admissibility_examples() {
        let c = AlphaCtx::new(&rat(5, 7)).unwrap();
        assert!(c.is_admissible(&ints(&[1, 0, 1])));
        assert!(!c.is_admissible(&ints(&[0, 1, 0])));
        assert!(!c.is_admissible(&ints(&[1, 3, 0])));
        assert!(c.is_admissible(&ints(&[])));
        assert_eq!(c.enumerate().len(), 7);
    }

    #[test]
    fn psi_lam_examples() {
        let c = AlphaCtx::new(&rat(5, 7)).unwrap();
        assert_eq!(c.psi(&digits(&[1, 0, 1])), Int::from(4));
        assert_eq!(c.psi(&digits(&[0, 0, 0])), Int::zero());
        assert_eq!(c.psi_inv(&Int::from(6)).unwrap(), digits(&[1, 2, 1]));
        assert_eq!(c.frac_of(&Int::from(4)), rat(6, 7));
        assert_eq!(c.lam(&digits(&[1, 0, 1])), rat(6, 7));
        assert_eq!(c.lam(&digits(&[0, 0, 0])), rat(0, 1));
        assert_eq!(c.lam_inv(&rat(6, 7)).unwrap(), digits(&[1, 0, 1]));
        assert_eq!(c.lam_inv(&rat(3, 7)).unwrap(), digits(&[1, 1, 0]));
        assert!(c.psi_inv(&Int::from(7)).is_err());
        assert!(c.lam_inv(&rat(1, 2)).is_err());
        assert_eq!(digits(&[1, 2, 1]).to_string(), "(1,2,1)");
    }

    fn record_lows(c: &AlphaCtx, lo: i64, hi: i64, shift: &Rat) -> Vec<Int> {
        pareto_record_lows((lo..=hi).map(Int::from), |n| {
            frac(&(c.frac_of(n) - shift))
        })
    }

    fn ns(v: &[MinPoint]) -> Vec<Int> {
        v.iter().map(|p| p.n.clone()).collect()
    }

    #[test]
    fn min_points_examples() {
        let c = AlphaCtx::new(&rat(5, 7)).unwrap();
        let zero = rat(0, 1);
        let got = c.min_points(&Int::from(6)).unwrap();
        assert_eq!(record_lows(&c, 1, 6, &zero), ints(&[1, 2, 3]));
        assert_eq!(ns(&got), ints(&[1, 2, 3]));
        assert_eq!(ns(&c.min_points(&Int::one()).unwrap()), ints(&[1]));
        let c6 = AlphaCtx::new(&rat(1, 6)).unwrap();
        assert_eq!(ns(&c6.min_points(&Int::from(5)).unwrap()), ints(&[1]));
        assert!(c.min_points(&Int::zero()).is_err());
    }

    #[test]
    fn capped_examples() {
        let c = AlphaCtx::new(&rat(5, 7)).unwrap();
        let n6 = Int::from(6);
        let want: Vec<Int> = record_lows(&c, 1, 6, &rat(0, 1))
            .into_iter()
            .filter(|n| c.frac_of(n) <= rat(1, 7))
            .collect();
        assert_eq!(ns(&c.min_points_capped(&n6, &rat(1, 7)).unwrap()), want);
        assert_eq!(
            c.min_points_capped(&n6, &rat(6, 7)).unwrap(),
            c.min_points(&n6).unwrap()
        );
        assert!(c.min_points_capped(&Int::from(2), &rat(1, 7)).unwrap().is_empty());
    }

    #[test]
    fn shifted_examples() {
        let c = AlphaCtx::new(&rat(5, 7)).unwrap();
        let beta = rat(3, 7);
        let got = c.min_points_shifted(&beta, false).unwrap();
        assert_eq!(ns(&got), record_lows(&c, 1, 6, &beta));
        assert_eq!(got[0].n, Int::one());
        assert_eq!(got.last().unwrap().digits, c.lam_inv(&beta).unwrap());
        let got0 = c.min_points_shifted(&beta, true).unwrap();
        assert_eq!(ns(&got0), record_lows(&c, 0, 6, &beta));
        assert_eq!(got0[0].frac, rat(4, 7));
        assert!(got0[1..].iter().all(|p| c.frac_of(&p.n) >= beta));
    }

    #[test]
    fn count_examples() {
        let c = AlphaCtx::new(&rat(5, 7)).unwrap();
        let beta = rat(3, 7);
        let six = Int::from(6);
        let naive = count_c_naive(&rat(5, 7), &beta, &six);
        // k = 0, 2, 3, 6 have {5k/7} <= 3/7.
        assert_eq!(naive, Int::from(4));
        assert_eq!(c.count_c(&beta, &six).unwrap(), naive);
        let c2 = AlphaCtx::new(&rat(2, 7)).unwrap();
        assert_eq!(c2.count_c(&rat(3, 7), &Int::one()).unwrap(), Int::from(2));
        assert!(c.count_c(&beta, &Int::zero()).is_err());
    }
}

//! Interval-certified evaluation of the analytic bounds.
//!
//! Every real quantity is an [`Interval`] with outward rounding. A check
//! passes only when the inequality holds with at least [`MARGIN`] to spare
//! at the unfavorable endpoints; when the endpoints straddle the margin the
//! result is [`Check::Inconclusive`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{factorize, is_prime, omega_table, primes};
use crate::error::{Error, Result};

/// Required slack for an inequality to count as verified.
pub const MARGIN: f64 = 1e-9;

/// Extra ulps allowed on each side of `ln`/`exp`/`sqrt` results.
const LIBM_ULPS: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn down(x: f64, n: u32) -> f64 {
    (0..n).fold(x, |v, _| v.next_down())
}

fn up(x: f64, n: u32) -> f64 {
    (0..n).fold(x, |v, _| v.next_up())
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// A value known exactly in `f64`.
    pub fn exact(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn from_u64(n: u64) -> Self {
        let x = n as f64;
        if x as u64 == n && n < (1 << 53) {
            Self::exact(x)
        } else {
            Self::new(x.next_down(), x.next_up())
        }
    }

    /// `num / den` enclosed.
    pub fn ratio(num: i64, den: u64) -> Self {
        Self::from_u64(num.unsigned_abs()).div(Self::from_u64(den)) * if num < 0 { -1.0 } else { 1.0 }
    }

    pub fn pi() -> Self {
        Self::new(std::f64::consts::PI.next_down(), std::f64::consts::PI.next_up())
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    fn widen(lo: f64, hi: f64, n: u32) -> Self {
        Interval {
            lo: down(lo, n),
            hi: up(hi, n),
        }
    }

    pub fn ln(self) -> Result<Self> {
        if self.lo <= 0.0 {
            return Err(Error::OutOfRange(format!("log of [{}, {}]", self.lo, self.hi)));
        }
        Ok(Self::widen(self.lo.ln(), self.hi.ln(), LIBM_ULPS))
    }

    pub fn exp(self) -> Self {
        let lo = down(self.lo.exp(), LIBM_ULPS).max(0.0);
        Interval {
            lo,
            hi: up(self.hi.exp(), LIBM_ULPS),
        }
    }

    pub fn sqrt(self) -> Result<Self> {
        if self.lo < 0.0 {
            return Err(Error::OutOfRange("sqrt of a negative interval".into()));
        }
        Ok(Self::widen(self.lo.sqrt(), self.hi.sqrt(), 1).max_zero())
    }

    fn max_zero(self) -> Self {
        Interval {
            lo: self.lo.max(0.0),
            hi: self.hi,
        }
    }

    pub fn recip(self) -> Result<Self> {
        if self.lo <= 0.0 && self.hi >= 0.0 {
            return Err(Error::OutOfRange("reciprocal of an interval containing 0".into()));
        }
        Ok(Self::widen(1.0 / self.hi, 1.0 / self.lo, 1))
    }

    pub fn div(self, other: Self) -> Self {
        self * other.recip().expect("divisor interval excludes 0")
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval::widen(self.lo + o.lo, self.hi + o.hi, 1)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval::widen(self.lo - o.hi, self.hi - o.lo, 1)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::widen(lo, hi, 1)
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    fn mul(self, k: f64) -> Interval {
        self * Interval::exact(k)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12e}, {:.12e}]", self.lo, self.hi)
    }
}

/// `ln n` for an exact integer.
pub fn ln_u64(n: u64) -> Result<Interval> {
    Interval::from_u64(n).ln()
}

/// `ln n` for a big integer, from its leading 53 bits.
pub fn ln_big(n: &BigUint) -> Result<Interval> {
    let bits = n.bits();
    if bits <= 53 {
        return ln_u64(n.to_u64().expect("fits"));
    }
    let shift = bits - 53;
    let top = (n >> shift).to_u64().expect("53 bits");
    let mantissa = Interval::new(top as f64, (top + 1) as f64).ln()?;
    let ln2 = Interval::new(std::f64::consts::LN_2.next_down(), std::f64::consts::LN_2.next_up());
    Ok(mantissa + ln2 * shift as f64)
}

/// `x (ln x − 1)`, with the value 0 at `x = 0`.
fn xlogx_over_e(x: u64) -> Result<Interval> {
    if x == 0 {
        return Ok(Interval::exact(0.0));
    }
    Ok(Interval::from_u64(x) * (ln_u64(x)? - Interval::exact(1.0)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Pass,
    Fail,
    Inconclusive,
}

impl Check {
    pub fn as_str(self) -> &'static str {
        match self {
            Check::Pass => "pass",
            Check::Fail => "fail",
            Check::Inconclusive => "inconclusive",
        }
    }

    pub fn is_pass(self) -> bool {
        self == Check::Pass
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `lhs ≤ rhs` (or `<`) with [`MARGIN`] to spare.
pub fn check_le(lhs: Interval, rhs: Interval) -> Check {
    let slack = rhs - lhs;
    if slack.lo() >= MARGIN {
        Check::Pass
    } else if slack.hi() < 0.0 {
        Check::Fail
    } else {
        Check::Inconclusive
    }
}

/// Running tally for a sweep of checks.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Sweep {
    pub checked: u64,
    pub passed: u64,
    pub failed: Vec<String>,
    pub inconclusive: Vec<String>,
    /// Least lower endpoint of the slack over all checks.
    pub worst_slack: Option<f64>,
}

impl Sweep {
    fn record(&mut self, label: impl FnOnce() -> String, lhs: Interval, rhs: Interval) -> Check {
        let c = check_le(lhs, rhs);
        self.checked += 1;
        let slack = (rhs - lhs).lo();
        self.worst_slack = Some(self.worst_slack.map_or(slack, |w| w.min(slack)));
        match c {
            Check::Pass => self.passed += 1,
            Check::Fail => self.failed.push(label()),
            Check::Inconclusive => self.inconclusive.push(label()),
        }
        c
    }

    pub fn all_pass(&self) -> bool {
        self.passed == self.checked
    }
}

fn robin_denominator() -> Interval {
    Interval::ratio(11714, 10000)
}

/// `log n / (log log n − 1.1714)`, for `n ≥ 26`.
pub fn robin_bound(n: u64) -> Result<Interval> {
    if n < 26 {
        return Err(Error::OutOfRange(format!("bound on distinct prime factors needs n >= 26, got {n}")));
    }
    robin_at_log(ln_u64(n)?)
}

fn robin_at_log(log_n: Interval) -> Result<Interval> {
    let den = log_n.ln()? - robin_denominator();
    if den.lo() <= 0.0 {
        return Err(Error::OutOfRange("log log n below 1.1714".into()));
    }
    Ok(log_n.div(den))
}

pub fn robin_check(n: u64) -> Result<Check> {
    let omega = factorize(n)?.omega() as u64;
    Ok(check_le(Interval::from_u64(omega), robin_bound(n)?))
}

/// `ω(n)` against the bound for every `n` in `[lo, hi]`, with a sieve.
pub fn robin_sweep(lo: u64, hi: u64) -> Result<Sweep> {
    let omega = omega_table(hi as usize + 1);
    let mut sweep = Sweep::default();
    for n in lo.max(26)..=hi {
        let bound = robin_bound(n)?;
        sweep.record(|| format!("n={n}"), Interval::from_u64(omega[n as usize] as u64), bound);
    }
    Ok(sweep)
}

/// Largest order of an element of `Sym(m)`.
pub fn landau_exact(m: u64) -> Result<u128> {
    if m == 0 || m > 200 {
        return Err(Error::OutOfRange(format!("Landau value supported for 1 <= m <= 200, got {m}")));
    }
    let m = m as usize;
    let mut best = vec![1u128; m + 1];
    for &p in primes().iter().take_while(|&&p| p as usize <= m) {
        let prev = best.clone();
        let mut q = p as usize;
        while q <= m {
            for j in q..=m {
                best[j] = best[j].max(prev[j - q] * q as u128);
            }
            q *= p as usize;
        }
    }
    Ok(best[m])
}

/// `√(m log m)(1 + (log log m − 0.975)/(2 log m))`, a bound on the log of
/// the largest element order in `Sym(m)`.
pub fn massias_bound(m: u64) -> Result<Interval> {
    if m < 3 {
        return Err(Error::OutOfRange(format!("element-order bound needs m >= 3, got {m}")));
    }
    let lm = ln_u64(m)?;
    let root = (Interval::from_u64(m) * lm).sqrt()?;
    let corr = (lm.ln()? - Interval::ratio(39, 40)).div(lm * 2.0);
    Ok(root * (Interval::exact(1.0) + corr))
}

pub fn massias_check(m: u64) -> Result<Check> {
    let log_a = ln_big(&BigUint::from(landau_exact(m)?))?;
    Ok(check_le(log_a, massias_bound(m)?))
}

/// Brackets for `ln n!` from the refined Stirling formula.
#[derive(Clone, Debug, PartialEq)]
pub struct StirlingReport {
    pub n: u64,
    pub log_factorial: Interval,
    pub lower_bracket: Interval,
    pub upper_bracket: Interval,
    pub lower: Check,
    pub upper: Check,
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `√(2πn) e^{1/(12n+1)} (n/e)^n ≤ n! ≤ √(2πn) e^{1/(12n)} (n/e)^n`, in logs,
/// with `n!` exact.
pub fn stirling_check(n: u64) -> Result<StirlingReport> {
    if n == 0 || n > 1000 {
        return Err(Error::OutOfRange(format!("Stirling brackets checked for 1 <= n <= 1000, got {n}")));
    }
    let log_factorial = ln_big(&factorial(n))?;
    let main = (Interval::pi() * (2 * n) as f64).ln()? * 0.5 + xlogx_over_e(n)?;
    let lower_bracket = main + Interval::ratio(1, 12 * n + 1);
    let upper_bracket = main + Interval::ratio(1, 12 * n);
    Ok(StirlingReport {
        n,
        log_factorial,
        lower_bracket,
        upper_bracket,
        lower: check_le(lower_bracket, log_factorial),
        upper: check_le(log_factorial, upper_bracket),
    })
}

pub fn stirling_sweep(hi: u64) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for n in 1..=hi {
        let r = stirling_check(n)?;
        sweep.record(|| format!("n={n} lower"), r.lower_bracket, r.log_factorial);
        sweep.record(|| format!("n={n} upper"), r.log_factorial, r.upper_bracket);
    }
    Ok(sweep)
}

/// Both sides, in logs, of `p^k (r/e)^r (k/e)^k (m/e)^{−m} ≤ (m/e)^{((α−1)/2) m}`
/// with `r = m − kp`.
pub fn technical_sides(m: u64, k: u64, p: u64, alpha: Ratio<u64>) -> Result<(Interval, Interval)> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if m == 0 || k == 0 {
        return Err(Error::Precondition("m and k must be positive".into()));
    }
    if alpha <= Ratio::from_integer(0) || alpha >= Ratio::from_integer(1) {
        return Err(Error::Precondition(format!("alpha = {alpha} outside (0,1)")));
    }
    let kp = k.checked_mul(p).filter(|&kp| kp <= m).ok_or_else(|| Error::Precondition(format!("r = m - kp < 0 for m={m}, k={k}, p={p}")))?;
    let r = m - kp;
    if Ratio::from_integer(r) > alpha * m {
        return Err(Error::Precondition(format!("r = {r} exceeds alpha*m")));
    }
    let lhs = Interval::from_u64(k) * ln_u64(p)? + xlogx_over_e(r)? + xlogx_over_e(k)? - xlogx_over_e(m)?;
    let a = Interval::ratio(*alpha.numer() as i64, *alpha.denom());
    let rhs = (a - Interval::exact(1.0)) * 0.5 * xlogx_over_e(m)?;
    Ok((lhs, rhs))
}

pub fn technical_inequality(m: u64, k: u64, p: u64, alpha: Ratio<u64>) -> Result<Check> {
    let (lhs, rhs) = technical_sides(m, k, p, alpha)?;
    Ok(check_le(lhs, rhs))
}

/// The `α` values used with the technical inequality: `4/7` and `1 − 2/c`.
pub fn technical_alphas(max_c: u64) -> Vec<Ratio<u64>> {
    let mut out = vec![Ratio::new(4, 7)];
    out.extend((3..=max_c).map(|c| Ratio::new(c - 2, c)));
    out
}

/// Every admissible `(m, p, k, α)` with `m ≤ max_m`, `p ≤ max_p`.
pub fn technical_sweep(max_m: u64, max_p: u64, alphas: &[Ratio<u64>]) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    let ps: Vec<u64> = primes().iter().copied().take_while(|&p| p <= max_p).collect();
    for m in 1..=max_m {
        for &p in &ps {
            for k in 1..=m / p {
                let r = m - k * p;
                for &a in alphas {
                    if Ratio::from_integer(r) > a * m {
                        continue;
                    }
                    let (lhs, rhs) = technical_sides(m, k, p, a)?;
                    sweep.record(|| format!("m={m} p={p} k={k} alpha={a}"), lhs, rhs);
                }
            }
        }
    }
    Ok(sweep)
}

/// `m ∏_{i<⌊log₂ m⌋} (m − 2^i)`.
pub fn n_m(m: u64) -> BigUint {
    let steps = 63 - m.leading_zeros() as u64;
    (0..steps).fold(BigUint::from(m), |acc, i| acc * (m - (1u64 << i)))
}

/// `α_m`: the distinct-prime bound evaluated at the element-order bound.
pub fn alpha_m(m: u64) -> Result<Interval> {
    robin_at_log(massias_bound(m)?)
}

/// `ln β_m` with the constant `1.2`.
pub fn log_beta_rounded(m: u64) -> Result<Interval> {
    Ok(Interval::ratio(6, 5).ln()? + log_beta_core(m)?)
}

/// `ln β_m` with the exact factor `C_1² / c_m`.
pub fn log_beta_exact(m: u64) -> Result<Interval> {
    let corr = Interval::ratio(2, 12) - Interval::ratio(1, 12 * m + 1);
    Ok(corr + log_beta_core(m)?)
}

/// `ln(√(16πm/7) N_m (m/e)^{−3m/14})`.
fn log_beta_core(m: u64) -> Result<Interval> {
    let root = (Interval::pi() * (16 * m) as f64).div(Interval::exact(7.0)).ln()? * 0.5;
    let power = xlogx_over_e(m)? * Interval::ratio(-3, 14);
    Ok(root + ln_big(&n_m(m))? + power)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlphaBetaRow {
    pub m: u64,
    pub n_m: BigUint,
    pub alpha: Interval,
    pub log_beta_rounded: Interval,
    pub log_beta_exact: Interval,
    pub log_product_rounded: Interval,
    pub log_product_exact: Interval,
    pub rounded: Check,
    pub exact: Check,
}

pub fn alpha_beta(m: u64) -> Result<AlphaBetaRow> {
    if !(47..=100_000).contains(&m) {
        return Err(Error::OutOfRange(format!("alpha/beta scan covers 47..=100000, got {m}")));
    }
    let alpha = alpha_m(m)?;
    let la = alpha.ln()?;
    let lbp = log_beta_rounded(m)?;
    let lbe = log_beta_exact(m)?;
    let zero = Interval::exact(0.0);
    Ok(AlphaBetaRow {
        m,
        n_m: n_m(m),
        alpha,
        log_beta_rounded: lbp,
        log_beta_exact: lbe,
        log_product_rounded: la + lbp,
        log_product_exact: la + lbe,
        rounded: check_le(la + lbp, zero),
        exact: check_le(la + lbe, zero),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlphaBetaScan {
    pub rows: Vec<AlphaBetaRow>,
    /// `m ≥ 100` where the exact log product failed to decrease; expected
    /// only at powers of two.
    pub non_decreasing_at: Vec<u64>,
}

impl AlphaBetaScan {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.exact.is_pass())
    }
}

pub fn alpha_beta_scan(lo: u64, hi: u64) -> Result<AlphaBetaScan> {
    let rows = (lo..=hi).map(alpha_beta).collect::<Result<Vec<_>>>()?;
    let non_decreasing_at = rows
        .windows(2)
        .filter(|w| w[0].m >= 100 && w[1].log_product_exact.mid() >= w[0].log_product_exact.mid())
        .map(|w| w[1].m)
        .collect();
    Ok(AlphaBetaScan { rows, non_decreasing_at })
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq)]
pub struct WreathCaseRow {
    pub c: u64,
    pub ell: u64,
    pub d: u64,
    pub m: BigUint,
    /// `ln(2.4 √(2πm) c!^ℓ ℓ! (m/e)^{−m/c} · α_m)`.
    pub log_value: Interval,
    pub check: Check,
    /// `(ℓ, d) = (2, 1)` with `c ≤ 12`, where the product may exceed 1.
    pub excepted: bool,
}

/// The product-action case bound times `α_m`, with `m = C(c,d)^ℓ`.
pub fn wreath_case_bound(c: u64, ell: u64, d: u64) -> Result<WreathCaseRow> {
    if c < 3 || ell == 0 || d == 0 || 2 * d >= c {
        return Err(Error::Precondition(format!("need c >= 3, l >= 1, 1 <= d < c/2; got ({c},{ell},{d})")));
    }
    let m_big = num_traits::pow(binomial(c, d), ell as usize);
    if m_big <= BigUint::from(144u32) {
        return Err(Error::Precondition(format!("m = {m_big} <= 144")));
    }
    let m = m_big
        .to_u64()
        .filter(|&m| m <= 100_000_000)
        .ok_or_else(|| Error::OutOfRange(format!("m = {m_big} too large")))?;
    let lm = ln_u64(m)?;
    let two_pi_m = Interval::pi() * (2 * m) as f64;
    let log_value = Interval::ratio(12, 5).ln()?
        + two_pi_m.ln()? * 0.5
        + ln_big(&factorial(c))? * ell as f64
        + ln_big(&factorial(ell))?
        - (lm - Interval::exact(1.0)) * Interval::ratio(m as i64, c)
        + alpha_m(m)?.ln()?;
    Ok(WreathCaseRow {
        c,
        ell,
        d,
        m: m_big,
        log_value,
        check: check_le(log_value, Interval::exact(0.0)),
        excepted: ell == 2 && d == 1 && c <= 12,
    })
}

/// `ω(|Aut T|)/m(T)^ℓ + 4/15 + 1/59`, exactly.
pub fn diagonal_crude_bound(m_t: u64, omega_aut: u64, ell: u32) -> Result<BigRational> {
    if m_t < 5 || ell == 0 {
        return Err(Error::Precondition(format!("need m(T) >= 5 and l >= 1, got ({m_t},{ell})")));
    }
    let r = |n: u64, d: u64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let denom = num_traits::pow(BigInt::from(m_t), ell as usize);
    Ok(BigRational::new(BigInt::from(omega_aut), denom) + r(4, 15) + r(1, 59))
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// `58 log₂ q / (q^8 (q^4 − 1)) < 1`.
pub fn e8_demo(q: u64) -> Result<(Interval, Check)> {
    let f = factorize(q)?;
    if q < 2 || f.omega() != 1 {
        return Err(Error::Precondition(format!("{q} is not a prime power")));
    }
    let den = num_traits::pow(BigUint::from(q), 8) * (num_traits::pow(BigUint::from(q), 4) - 1u32);
    let log2q = ln_u64(q)?.div(Interval::new(std::f64::consts::LN_2.next_down(), std::f64::consts::LN_2.next_up()));
    let log_value = (log2q * 58.0).ln()? - ln_big(&den)?;
    let value = log_value.exp();
    Ok((value, check_le(value, Interval::exact(1.0))))
}

/// One row of the minimal-degree table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MtEntry {
    pub family: String,
    pub parameter: u64,
    pub m_t: u64,
    pub omega_aut: u64,
}

/// Minimal faithful permutation degrees `m(T)` and `ω(|Aut T|)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MtTable {
    entries: Vec<MtEntry>,
}

fn prime_power_parts(q: u64) -> Option<(u64, u32)> {
    let f = factorize(q).ok()?;
    (f.omega() == 1).then(|| (f.factors[0].0, f.factors[0].1 as u32))
}

impl MtTable {
    /// `Alt(n)` for `5 ≤ n ≤ 40` and `PSL₂(q)` for prime powers `4 ≤ q ≤ 125`.
    pub fn builtin() -> Self {
        let mut entries = Vec::new();
        for n in 5..=40u64 {
            let omega_aut = if n == 6 {
                factorize(1440).expect("nonzero").omega() as u64
            } else {
                primes().iter().take_while(|&&p| p <= n).count() as u64
            };
            entries.push(MtEntry {
                family: "alt".into(),
                parameter: n,
                m_t: n,
                omega_aut,
            });
        }
        for q in 4..=125u64 {
            let Some((_, e)) = prime_power_parts(q) else { continue };
            let m_t = match q {
                5 => 5,
                7 => 7,
                9 => 6,
                11 => 11,
                _ => q + 1,
            };
            let aut = e as u64 * q * (q * q - 1);
            entries.push(MtEntry {
                family: "psl2".into(),
                parameter: q,
                m_t,
                omega_aut: factorize(aut).expect("nonzero").omega() as u64,
            });
        }
        MtTable { entries }
    }

    /// Tab-separated `family parameter m(T) omega_aut`; `#` starts a comment.
    pub fn parse_tsv(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            if cols.len() != 4 {
                return Err(Error::Parse(format!("line {}: expected 4 tab-separated columns", lineno + 1)));
            }
            let num = |s: &str| {
                s.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("line {}: bad integer {s:?}", lineno + 1)))
            };
            entries.push(MtEntry {
                family: cols[0].to_ascii_lowercase(),
                parameter: num(cols[1])?,
                m_t: num(cols[2])?,
                omega_aut: num(cols[3])?,
            });
        }
        Ok(MtTable { entries })
    }

    /// Entries of `other` replace entries with the same key.
    pub fn merged(mut self, other: MtTable) -> Self {
        for e in other.entries {
            match self.entries.iter_mut().find(|x| x.family == e.family && x.parameter == e.parameter) {
                Some(slot) => *slot = e,
                None => self.entries.push(e),
            }
        }
        self
    }

    pub fn entries(&self) -> &[MtEntry] {
        &self.entries
    }

    pub fn lookup(&self, family: &str, parameter: u64) -> Result<&MtEntry> {
        self.entries
            .iter()
            .find(|e| e.family == family && e.parameter == parameter)
            .ok_or_else(|| Error::MissingEntry(format!("no m(T) entry for {family}:{parameter}")))
    }
}

/// `true` when every prime power up to `hi` passes the E8 inequality.
pub fn e8_sweep(hi: u64) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for q in 2..=hi {
        if prime_power_parts(q).is_none() {
            continue;
        }
        let (value, _) = e8_demo(q)?;
        sweep.record(|| format!("q={q}"), value, Interval::exact(1.0));
    }
    Ok(sweep)
}

/// `true` iff `x < 1`.
pub fn below_one(x: &BigRational) -> bool {
    x < &BigRational::one()
}

pub fn is_zero(x: &Interval) -> bool {
    x.lo().is_zero() && x.hi().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_landau(m: u64) -> u128 {
        crate::perm::partitions(m)
            .map(|p| p.iter().fold(1u128, |a, &b| num_integer::lcm(a, b as u128)))
            .max()
            .unwrap()
    }

    #[test]
    fn interval_arithmetic_encloses() {
        let x = Interval::ratio(1, 3);
        assert!(x.lo() <= 1.0 / 3.0 && 1.0 / 3.0 <= x.hi());
        let y = (x * 3.0) - Interval::exact(1.0);
        assert!(y.lo() <= 0.0 && 0.0 <= y.hi());
        let e = Interval::exact(1.0).exp();
        assert!(e.lo() < std::f64::consts::E && std::f64::consts::E < e.hi());
        assert!(Interval::exact(0.0).ln().is_err());
    }

    #[test]
    fn ln_big_matches_small() {
        let n = BigUint::from(1u64 << 60) * 3u32;
        let l = ln_big(&n).unwrap();
        let want = 60.0 * std::f64::consts::LN_2 + 3f64.ln();
        assert!(l.lo() <= want && want <= l.hi());
        assert!(l.width() < 1e-12);
    }

    #[test]
    fn robin_examples() {
        let b = robin_bound(30).unwrap();
        assert!((b.mid() - 64.6).abs() < 0.1, "{b}");
        assert_eq!(robin_check(30).unwrap(), Check::Pass);
        assert_eq!(robin_check(26).unwrap(), Check::Pass);
        assert!(robin_bound(25).is_err());
        let s = robin_sweep(26, 20_000).unwrap();
        assert!(s.all_pass());
    }

    #[test]
    fn landau_examples() {
        assert_eq!(landau_exact(5).unwrap(), 6);
        assert_eq!(landau_exact(10).unwrap(), 30);
        assert_eq!(landau_exact(3).unwrap(), 3);
        for m in 1..=30 {
            assert_eq!(landau_exact(m).unwrap(), brute_landau(m), "m={m}");
        }
        assert!(landau_exact(201).is_err());
        let mut prev = 0;
        for m in 1..=200 {
            let v = landau_exact(m).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn massias_examples() {
        let b = massias_bound(10).unwrap();
        assert!((b.mid() - 4.652).abs() < 1e-3, "{b}");
        assert_eq!(massias_check(10).unwrap(), Check::Pass);
        assert_eq!(massias_check(4).unwrap(), Check::Pass);
        // the bound dips below log 3 at m = 3
        assert!((massias_bound(3).unwrap().mid() - 1.0876).abs() < 1e-4);
        assert_eq!(massias_check(3).unwrap(), Check::Fail);
        assert!(massias_bound(2).is_err());
    }

    #[test]
    fn stirling_examples() {
        let r = stirling_check(1).unwrap();
        assert!(r.lower.is_pass() && r.upper.is_pass());
        let r = stirling_check(10).unwrap();
        let exact = 3628800f64.ln();
        assert!(r.log_factorial.lo() <= exact && exact <= r.log_factorial.hi());
        assert!(r.lower.is_pass() && r.upper.is_pass());
        // the upper gap is about 1/(360 n^3), under the margin for large n
        let r = stirling_check(1000).unwrap();
        assert!(r.lower.is_pass());
        assert_eq!(r.upper, Check::Inconclusive);
        assert!(r.log_factorial.mid() < r.upper_bracket.mid());
    }

    #[test]
    fn stirling_summed_logs_agree() {
        for n in [5u64, 50, 500] {
            let summed: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
            let r = stirling_check(n).unwrap();
            assert!((r.log_factorial.mid() - summed).abs() < 1e-9 * summed.max(1.0));
        }
    }

    #[test]
    fn technical_examples() {
        assert_eq!(technical_inequality(14, 4, 2, Ratio::new(4, 7)).unwrap(), Check::Pass);
        assert_eq!(technical_inequality(8, 4, 2, Ratio::new(4, 7)).unwrap(), Check::Pass);
        assert!(technical_inequality(14, 1, 2, Ratio::new(4, 7)).is_err());
        assert!(technical_inequality(14, 8, 2, Ratio::new(4, 7)).is_err());
        // log m < 1 at m = 2 flips the last step
        assert_eq!(technical_inequality(2, 1, 2, Ratio::new(4, 7)).unwrap(), Check::Fail);
    }

    #[test]
    fn n_m_values() {
        assert_eq!(n_m(2), BigUint::from(2u32));
        assert_eq!(n_m(5), BigUint::from(5u32 * 4 * 3));
        assert_eq!(n_m(8), BigUint::from(8u32 * 7 * 6 * 4));
    }

    #[test]
    fn alpha_beta_examples() {
        for m in [47, 144] {
            let r = alpha_beta(m).unwrap();
            assert!(r.exact.is_pass() && r.rounded.is_pass(), "m={m}");
            assert!(r.log_beta_exact.hi() < r.log_beta_rounded.lo());
        }
        assert!((alpha_beta(47).unwrap().log_product_exact.mid().exp() - 0.3579).abs() < 1e-3);
        let scan = alpha_beta_scan(47, 400).unwrap();
        assert!(scan.all_pass());
        // N_m gains a factor each time m reaches a power of two
        assert_eq!(scan.non_decreasing_at, vec![128, 256]);
        assert!(alpha_beta(46).is_err());
    }

    #[test]
    fn wreath_case_examples() {
        assert!(wreath_case_bound(13, 2, 1).unwrap().check.is_pass());
        assert!(wreath_case_bound(6, 2, 2).unwrap().check.is_pass());
        assert!(wreath_case_bound(12, 2, 1).is_err());
        let r = wreath_case_bound(18, 1, 2).unwrap();
        assert_eq!(r.check, Check::Fail);
        assert!(!r.excepted);
    }

    #[test]
    fn crude_examples() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let v = diagonal_crude_bound(5, 3, 1).unwrap();
        assert_eq!(v, r(3, 5) + r(4, 15) + r(1, 59));
        assert!((rational_to_f64(&v) - 0.8836).abs() < 1e-4);
        assert!(below_one(&diagonal_crude_bound(7, 4, 1).unwrap()));
        let big = diagonal_crude_bound(1_000_000, 10, 3).unwrap();
        assert!((rational_to_f64(&big) - (4.0 / 15.0 + 1.0 / 59.0)).abs() < 1e-12);
        assert!(diagonal_crude_bound(4, 3, 1).is_err());
    }

    #[test]
    fn e8_examples() {
        let (v, c) = e8_demo(2).unwrap();
        let want = 58.0 / 3840.0;
        assert!(v.lo() <= want && want <= v.hi());
        assert!(c.is_pass());
        assert!(e8_demo(3).unwrap().1.is_pass());
        assert!(e8_demo(6).is_err());
        assert!(e8_sweep(1024).unwrap().all_pass());
    }

    #[test]
    fn mt_table() {
        let t = MtTable::builtin();
        assert_eq!(t.lookup("alt", 5).unwrap().m_t, 5);
        assert_eq!(t.lookup("alt", 5).unwrap().omega_aut, 3);
        assert_eq!(t.lookup("alt", 6).unwrap().omega_aut, 3);
        assert_eq!(t.lookup("alt", 7).unwrap().omega_aut, 4);
        assert_eq!(t.lookup("psl2", 9).unwrap().m_t, 6);
        assert_eq!(t.lookup("psl2", 8).unwrap().m_t, 9);
        // |PGammaL2(8)| = 1512
        assert_eq!(t.lookup("psl2", 8).unwrap().omega_aut, 3);
        assert!(matches!(t.lookup("psl2", 6), Err(Error::MissingEntry(_))));
        let user = MtTable::parse_tsv("# custom\npsl2\t9\t7\t3\nsz\t8\t65\t3\n").unwrap();
        let t = t.merged(user);
        assert_eq!(t.lookup("psl2", 9).unwrap().m_t, 7);
        assert_eq!(t.lookup("sz", 8).unwrap().m_t, 65);
        assert!(MtTable::parse_tsv("alt 5 5").is_err());
    }
}

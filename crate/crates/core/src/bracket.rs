//! Deformed numbers ("brackets") and their factorials.
//!
//! | oscillator | bracket of `X`                 |
//! |------------|--------------------------------|
//! | BM, q=e^iθ | `sin(Xθ) / sin θ`              |
//! | TD         | `X q^(X-1)`                    |
//! | q,p        | `(q^X - p^X) / (q - p)`        |
//!
//! The TD bracket is the `p → q` limit of the q,p bracket.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Below this `|q - p|` the q,p quotient is replaced by its diagonal limit.
pub const DIAGONAL_SWITCH: f64 = 1e-8;

/// Below this `|θ|` the phase bracket is replaced by its `q → 1` limit `X`.
pub const PHASE_LIMIT: f64 = 1e-12;

/// Integer arguments up to this size use the exact homogeneous-sum
/// recurrence instead of the closed-form quotient.
const INTEGER_FAST_PATH: f64 = 65_536.0;

/// A `(q, p)` pair in the closed unit square with the origin removed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealDeformation {
    q: f64,
    p: f64,
}

impl RealDeformation {
    pub fn new(q: f64, p: f64) -> Result<Self> {
        let in_unit = |x: f64| (0.0..=1.0).contains(&x);
        if !in_unit(q) || !in_unit(p) {
            return Err(Error::Domain(format!(
                "(q, p) = ({q}, {p}) lies outside the unit square"
            )));
        }
        if q == 0.0 && p == 0.0 {
            return Err(Error::Domain("(q, p) = (0, 0) is excluded".into()));
        }
        Ok(RealDeformation { q, p })
    }

    /// The Tamm–Dancoff point `p = q`.
    pub fn diagonal(q: f64) -> Result<Self> {
        RealDeformation::new(q, q)
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn swapped(&self) -> Self {
        RealDeformation {
            q: self.p,
            p: self.q,
        }
    }
}

/// BM phase deformation `q = e^{iθ}` stored by its angle, normalised to
/// `(-π, π]`.
///
/// Angles built with [`PhaseDeformation::from_pi_fraction`] remember the
/// exact fraction of π, so integer brackets are evaluated with exact
/// argument reduction and hit their zeros exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseDeformation {
    theta: f64,
    pi_fraction: Option<(i64, i64)>,
}

impl PhaseDeformation {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::Domain(format!("angle {theta} is not finite")));
        }
        let mut t = theta.rem_euclid(2.0 * PI);
        if t > PI {
            t -= 2.0 * PI;
        }
        Ok(PhaseDeformation {
            theta: t,
            pi_fraction: None,
        })
    }

    /// `θ = π · num / den`.
    pub fn from_pi_fraction(num: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::Domain(format!(
                "angle denominator must be positive (got {den})"
            )));
        }
        let g = gcd(num.unsigned_abs(), den as u64) as i64;
        let (num, den) = if g > 1 {
            (num / g, den / g)
        } else {
            (num, den)
        };
        let two_den = 2 * den as i128;
        let mut r = (num as i128).rem_euclid(two_den);
        if r > den as i128 {
            r -= two_den;
        }
        let r = r as i64;
        Ok(PhaseDeformation {
            theta: PI * r as f64 / den as f64,
            pi_fraction: Some((r, den)),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `(num, den)` with `θ = π num / den`, when known exactly.
    pub fn pi_fraction(&self) -> Option<(i64, i64)> {
        self.pi_fraction
    }

    fn is_undeformed(&self) -> bool {
        self.theta.abs() < PHASE_LIMIT
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `sin(π j / den)` with exact reduction of `j` modulo `2 den`.
pub(crate) fn sin_pi_frac(j: i128, den: i128) -> f64 {
    let mut j = j.rem_euclid(2 * den);
    if j == 0 || j == den {
        return 0.0;
    }
    let mut sign = 1.0;
    if j > den {
        j -= den;
        sign = -1.0;
    }
    if 2 * j > den {
        j = den - j;
    }
    sign * (PI * j as f64 / den as f64).sin()
}

/// `cos(π j / den)`, via `sin(π (den + 2j) / 2den)`.
pub(crate) fn cos_pi_frac(j: i128, den: i128) -> f64 {
    sin_pi_frac(den + 2 * j, 2 * den)
}

fn as_integer(x: f64) -> Option<i64> {
    (x.fract() == 0.0 && x.abs() < 9.0e15).then_some(x as i64)
}

/// `⟦n⟧_{q,p} = Σ_{r<n} q^r p^{n-1-r}`, by `⟦n+1⟧ = q⟦n⟧ + p^n`.
///
/// All terms are non-negative on the unit square, so there is no
/// cancellation anywhere, including the diagonal and the axes. Inputs are
/// not validated; the origin gives `⟦1⟧ = 1`, `⟦n⟧ = 0` for `n ≥ 2`.
pub(crate) fn homogeneous_sum(n: u32, q: f64, p: f64) -> f64 {
    let mut value = 0.0;
    let mut p_pow = 1.0;
    for _ in 0..n {
        value = q * value + p_pow;
        p_pow *= p;
    }
    value
}

/// The q,p bracket `⟦x⟧ = (q^x − p^x)/(q − p)`.
pub fn qp_bracket(x: f64, d: RealDeformation) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "bracket argument must be finite and non-negative (got {x})"
        )));
    }
    if x <= INTEGER_FAST_PATH {
        if let Some(n) = as_integer(x) {
            return Ok(homogeneous_sum(n as u32, d.q, d.p));
        }
    }
    let (q, p) = (d.q, d.p);
    if (q - p).abs() < DIAGONAL_SWITCH {
        // limit at the midpoint keeps q <-> p symmetry and is second order
        let mid = 0.5 * (q + p);
        return Ok(diagonal_limit(x, mid));
    }
    Ok((q.powf(x) - p.powf(x)) / (q - p))
}

fn diagonal_limit(x: f64, q: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * q.powf(x - 1.0)
    }
}

/// The Tamm–Dancoff bracket `{x}_q = x q^(x-1)`.
pub fn td_bracket(x: f64, q: f64) -> Result<f64> {
    check_td(q)?;
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "bracket argument must be finite and non-negative (got {x})"
        )));
    }
    Ok(diagonal_limit(x, q))
}

pub(crate) fn check_td(q: f64) -> Result<()> {
    if q > 0.0 && q <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "TD parameter q = {q} must lie in (0, 1]"
        )))
    }
}

/// The BM bracket for phase `q`: `[x] = sin(xθ) / sin θ`.
///
/// At `θ = π` (`q = -1`) the quotient is `0/0`; integer `x` take the limit
/// `x (-1)^(x+1)`, other `x` are rejected.
pub fn bm_bracket_phase(x: f64, d: PhaseDeformation) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("bracket argument {x} is not finite")));
    }
    if d.is_undeformed() {
        return Ok(x);
    }
    if let (Some(n), Some((num, den))) = (as_integer(x), d.pi_fraction) {
        return Ok(bm_bracket_rational(n, num, den));
    }
    let s = d.theta.sin();
    if s.abs() < PHASE_LIMIT {
        return match as_integer(x) {
            Some(n) => Ok(alternating_limit(n)),
            None => Err(Error::Domain(format!(
                "phase bracket of non-integer {x} is undefined at θ = π"
            ))),
        };
    }
    Ok((x * d.theta).sin() / s)
}

fn alternating_limit(n: i64) -> f64 {
    if n % 2 == 0 {
        -(n as f64)
    } else {
        n as f64
    }
}

fn bm_bracket_rational(n: i64, num: i64, den: i64) -> f64 {
    let den = den as i128;
    let s = sin_pi_frac(num as i128, den);
    if s == 0.0 {
        return alternating_limit(n);
    }
    sin_pi_frac(n as i128 * num as i128, den) / s
}

/// Infallible integer BM bracket.
pub(crate) fn bm_bracket_int(n: u32, d: PhaseDeformation) -> f64 {
    bm_bracket_phase(n as f64, d).expect("integer BM brackets are always defined")
}

/// An oscillator kind together with its deformation parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Oscillator {
    /// Biedenharn–Macfarlane with `q = e^{iθ}`.
    Bm(PhaseDeformation),
    /// Tamm–Dancoff with real `q ∈ (0, 1]`.
    Td(f64),
    Qp(RealDeformation),
}

impl Oscillator {
    pub fn td(q: f64) -> Result<Self> {
        check_td(q)?;
        Ok(Oscillator::Td(q))
    }

    pub fn qp(q: f64, p: f64) -> Result<Self> {
        Ok(Oscillator::Qp(RealDeformation::new(q, p)?))
    }

    pub fn bm(theta: f64) -> Result<Self> {
        Ok(Oscillator::Bm(PhaseDeformation::new(theta)?))
    }

    pub fn bracket(&self, x: f64) -> Result<f64> {
        match *self {
            Oscillator::Bm(d) => bm_bracket_phase(x, d),
            Oscillator::Td(q) => td_bracket(x, q),
            Oscillator::Qp(d) => qp_bracket(x, d),
        }
    }
}

/// `[n]! = [n][n-1]…[1]`, with `[0]! = 1`.
pub fn bracket_factorial(n: u32, osc: &Oscillator) -> Result<f64> {
    (1..=n).try_fold(1.0, |acc, k| Ok(acc * osc.bracket(k as f64)?))
}

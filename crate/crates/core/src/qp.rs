//! Degeneracy curves of the q,p oscillator in the unit square.
//!
//! For a level pair `(l, h)` the degeneracy `E_l = E_h` holds on the zero
//! set of the homogeneous-sum polynomial
//!
//! ```text
//! F(q, p) = 2(E_h − E_l) = ⟦h+1⟧ + ⟦h⟧ − ⟦l+1⟧ − ⟦l⟧
//! ```
//!
//! which is `Σ_{r≤m} p^{m−r} q^r + Σ_{s<m} p^{m−1−s} q^s − 1` for `(0, m)`
//! and `⟦m+2⟧ − ⟦m⟧` for `(m, m+1)`. Both families are known to give a
//! single decreasing curve `p = f(q)`; other pairs are handled numerically
//! without that guarantee.
//!
//! `F` is symmetric under `q ↔ p`, so every curve is mirror-symmetric
//! about the diagonal, where its slope is `−1`.

use crate::bracket::RealDeformation;
use crate::error::{Error, Result};
use crate::numerics::{
    bisect, scan_brackets, BisectTol, Bracket, Polynomial, RootResult, DEFAULT_CELLS,
};
use crate::spectrum::energy_qp;

/// Default residual tolerance for curve points.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Default number of samples per traced curve.
pub const DEFAULT_SAMPLES: usize = 256;

/// Below this `|∂F/∂p|` the slope is treated as infinite (or undefined).
pub const SLOPE_SINGULAR: f64 = 1e-14;

/// Rounding level of `F` near unit scale; a caller tolerance below this
/// is treated as this.
const RESIDUAL_FLOOR: f64 = 1e-14;

/// Energy mismatch allowed when confirming a constraint crossing.
pub const ENERGY_CHECK: f64 = 1e-10;

/// The level pair `(m_low, m_high)` of a degeneracy curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveSpec {
    low: u32,
    high: u32,
}

impl CurveSpec {
    pub fn new(m_low: u32, m_high: u32) -> Result<Self> {
        if m_high <= m_low {
            return Err(Error::Domain(format!(
                "need m_high > m_low (got {m_low}, {m_high})"
            )));
        }
        if m_low == 0 && m_high < 2 {
            return Err(Error::Domain(
                "E_0 = E_1 needs (q, p) = (0, 0), which is excluded; use m_high >= 2".into(),
            ));
        }
        Ok(CurveSpec {
            low: m_low,
            high: m_high,
        })
    }

    pub fn m_low(&self) -> u32 {
        self.low
    }

    pub fn m_high(&self) -> u32 {
        self.high
    }

    /// `E_0 = E_m` or `E_m = E_{m+1}`: the two families whose curves are
    /// known to be single-valued and decreasing. Other pairs are traced
    /// numerically only.
    pub fn is_established_family(&self) -> bool {
        self.low == 0 || self.high == self.low + 1
    }
}

/// `⟦n⟧` and its partial derivatives for `n = 0..=n_max`, via
/// `⟦n+1⟧ = q⟦n⟧ + p^n`.
fn sums_with_grad(n_max: u32, q: f64, p: f64) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let (mut v, mut dq, mut dp) = (0.0, 0.0, 0.0);
    // p^n and d(p^n)/dp
    let (mut p_pow, mut dp_pow) = (1.0, 0.0);
    out.push([v, dq, dp]);
    for n in 0..n_max {
        dq = v + q * dq;
        dp = q * dp + dp_pow;
        v = q * v + p_pow;
        dp_pow = (n + 1) as f64 * p_pow;
        p_pow *= p;
        out.push([v, dq, dp]);
    }
    out
}

/// `(F, ∂F/∂q, ∂F/∂p)` without domain checks.
fn eval_with_grad(spec: CurveSpec, q: f64, p: f64) -> [f64; 3] {
    let (l, h) = (spec.low as usize, spec.high as usize);
    if h == l + 1 {
        // ⟦m+2⟧ − ⟦m⟧ = q^m (q + p) − (1 − p²)⟦m⟧, which stays accurate
        // where the two sums nearly cancel (small q, p near 1)
        let m = l as i32;
        let [b, bq, bp] = sums_with_grad(spec.low, q, p)[l];
        let lead = q.powi(m) * (q + p);
        let lead_q = (m + 1) as f64 * q.powi(m)
            + if m > 0 {
                m as f64 * p * q.powi(m - 1)
            } else {
                0.0
            };
        let one_minus_p2 = (1.0 - p) * (1.0 + p);
        return [
            lead - one_minus_p2 * b,
            lead_q - one_minus_p2 * bq,
            q.powi(m) + 2.0 * p * b - one_minus_p2 * bp,
        ];
    }
    let s = sums_with_grad(spec.high + 1, q, p);
    let mut out = [0.0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = s[h + 1][i] + s[h][i] - s[l + 1][i] - s[l][i];
    }
    out
}

fn eval_raw(spec: CurveSpec, q: f64, p: f64) -> f64 {
    eval_with_grad(spec, q, p)[0]
}

/// `F(q, p)` for the pair; zero exactly where `E_low = E_high`.
pub fn degeneracy_function(spec: CurveSpec, q: f64, p: f64) -> Result<f64> {
    RealDeformation::new(q, p)?;
    Ok(eval_raw(spec, q, p))
}

/// `dp/dq = −(∂F/∂q) / (∂F/∂p)` along the curve.
///
/// Where `∂F/∂p` vanishes but `∂F/∂q` does not (the `(1, 0)` end of the
/// `E_m = E_{m+1}` curves for `m ≥ 2`) the slope is returned as an
/// infinity signed as if `∂F/∂p → 0⁺`.
pub fn curve_slope(spec: CurveSpec, q: f64, p: f64) -> Result<f64> {
    RealDeformation::new(q, p)?;
    slope_raw(spec, q, p)
}

fn slope_raw(spec: CurveSpec, q: f64, p: f64) -> Result<f64> {
    let [_, fq, fp] = eval_with_grad(spec, q, p);
    if fp.abs() < SLOPE_SINGULAR {
        if fq.abs() < SLOPE_SINGULAR {
            return Err(Error::SingularSlope { q, p });
        }
        return Ok(if fq > 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
    }
    Ok(-fq / fp)
}

/// Root in `(0, 1)` of `q^m + q^(m−1) − 1`, i.e. of `q + 1 = q^(1−m)`: where
/// the `E_0 = E_m` curve meets each axis.
pub fn endpoint_qm(m: u32, tol: f64) -> Result<RootResult> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "axis endpoint needs m >= 2 (got {m})"
        )));
    }
    let mut c = vec![0.0; m as usize + 1];
    c[0] = -1.0;
    c[m as usize - 1] += 1.0;
    c[m as usize] += 1.0;
    let poly = Polynomial::new(c);
    let brackets = scan_brackets(|q| poly.eval(q), 0.0, 1.0, DEFAULT_CELLS)?;
    let b = brackets
        .first()
        .ok_or_else(|| Error::NotFound(format!("no sign change of q^{m} + q^{} - 1", m - 1)))?;
    bisect(|q| poly.eval(q), b, BisectTol::with_residual(tol))
}

/// The `q` range over which the curve exists: `[0, q_m]` for `E_0 = E_m`,
/// `[0, 1]` otherwise.
pub fn admissible_interval(spec: CurveSpec) -> Result<(f64, f64)> {
    if spec.low == 0 {
        Ok((0.0, endpoint_qm(spec.high, 0.0)?.value))
    } else {
        Ok((0.0, 1.0))
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol >= 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "tolerance must be finite and non-negative (got {tol})"
        )))
    }
}

fn fixed_point(value: f64, residual: f64) -> RootResult {
    RootResult {
        value,
        residual,
        bracket: (value, value),
        iterations: 0,
    }
}

/// The `p ∈ [0, 1]` with `F(q, p) = 0`, by bisection in `p`.
pub fn solve_p_for_q(spec: CurveSpec, q: f64, tol: f64) -> Result<RootResult> {
    check_tol(tol)?;
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Domain(format!("q = {q} lies outside [0, 1]")));
    }
    let f = |p: f64| eval_raw(spec, q, p);
    let (f0, f1) = (f(0.0), f(1.0));
    if f0 * f1 < 0.0 {
        let b = Bracket::new(0.0, 1.0, f0, f1)?;
        return bisect(f, &b, BisectTol::with_residual(tol));
    }
    if f1.abs() <= tol {
        return Ok(fixed_point(1.0, f1));
    }
    if f0.abs() <= tol && q > 0.0 {
        return Ok(fixed_point(0.0, f0));
    }
    if !spec.is_established_family() {
        let brackets = scan_brackets(f, 0.0, 1.0, DEFAULT_CELLS)?;
        if let Some(b) = brackets.iter().find(|b| !b.is_degenerate() || b.lo > 0.0) {
            return bisect(f, b, BisectTol::with_residual(tol));
        }
    }
    let (lo, hi) = admissible_interval(spec)?;
    Err(Error::NotFound(format!(
        "no p in [0, 1] solves F_({},{}) at q = {q}; admissible q range is [{lo}, {hi}]",
        spec.high, spec.low
    )))
}

/// Solves on the line `q − p = s` (with `s ≥ 0`), parameterised by
/// `u = q + p`. Along it `F` runs from `≤ 0` on the axis to `> 0` on the
/// edge `q = 1`.
fn solve_on_line(spec: CurveSpec, s: f64, tol: f64) -> Result<(f64, f64, RootResult)> {
    debug_assert!(s >= 0.0);
    let point = |u: f64| {
        (
            (0.5 * (u + s)).clamp(0.0, 1.0),
            (0.5 * (u - s)).clamp(0.0, 1.0),
        )
    };
    let g = |u: f64| {
        let (q, p) = point(u);
        eval_raw(spec, q, p)
    };
    let hi = 2.0 - s;
    // s = 0 starts at the excluded origin; step off it along the diagonal
    let lo = if s == 0.0 { 2e-3 } else { s };
    if lo >= hi {
        let (q, p) = point(hi);
        let r = g(hi);
        if r.abs() > tol.max(RESIDUAL_FLOOR) {
            return Err(Error::NotFound(format!(
                "corner ({q}, {p}) is not on the curve"
            )));
        }
        return Ok((q, p, fixed_point(hi, r)));
    }
    let (g_lo, g_hi) = (g(lo), g(hi));
    // near the origin F is tiny for m_low >= 2, so a small |F| on the axis
    // does not mean the axis point is on the curve; prefer a sign change
    let root = if g_lo * g_hi <= 0.0 && !(s == 0.0 && g_lo == 0.0) {
        // slopes near the steep ends are sensitive to ulp-level offsets,
        // so bisect to the end and use tol only as the acceptance bound
        let root = bisect(
            g,
            &Bracket::new(lo, hi, g_lo, g_hi)?,
            BisectTol::full_precision(),
        )?;
        if root.residual.abs() > tol.max(RESIDUAL_FLOOR) {
            return Err(Error::Convergence {
                best: root.value,
                iterations: root.iterations,
            });
        }
        root
    } else if g_lo.abs() <= tol && s > 0.0 {
        fixed_point(lo, g_lo)
    } else if g_hi.abs() <= tol {
        // near the (1, 0) corner of E_m = E_m+1 the curve lies within an
        // ulp of q = 1 and F(1, p) = (1+p) p^m is below rounding noise
        fixed_point(hi, g_hi)
    } else {
        return Err(Error::NotFound(format!(
            "F_({},{}) keeps one sign on the line q - p = {s}",
            spec.high, spec.low
        )));
    };
    let (q, p) = point(root.value);
    Ok((q, p, root))
}

/// Where the curve meets the diagonal `p = q`.
pub fn diagonal_point(spec: CurveSpec, tol: f64) -> Result<RootResult> {
    check_tol(tol)?;
    let (q, _, root) = solve_on_line(spec, 0.0, tol)?;
    Ok(RootResult {
        value: q,
        residual: root.residual,
        bracket: (0.5 * root.bracket.0, 0.5 * root.bracket.1),
        iterations: root.iterations,
    })
}

/// A point of a degeneracy curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub q: f64,
    pub p: f64,
    /// `F(q, p)`.
    pub residual: f64,
    pub dpdq: f64,
}

/// Samples the curve from its `q = 0` end to its `p = 0` end.
///
/// Samples are evenly spaced in `q − p`, running from `−e` to `e` where `e`
/// is the axis intercept (`q_m` for `E_0 = E_m`, else 1). This spacing is
/// symmetric under `q ↔ p`: an odd sample count puts the middle sample on
/// the diagonal, and the second half is the mirror image of the first.
/// Since the curve decreases, `q` increases and `p` decreases along the list.
///
/// Each point is bisected to full precision; `tol` bounds the accepted
/// `|F|`. Near the steep ends of `E_m = E_{m+1}` for larger `m` several
/// points round to `q = 1` (or `p = 1`), so there the ordering is only
/// weak in that coordinate.
pub fn trace_curve(spec: CurveSpec, samples: usize, tol: f64) -> Result<Vec<CurveSample>> {
    check_tol(tol)?;
    if samples < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 samples (got {samples})"
        )));
    }
    let extent = admissible_interval(spec)?.1;
    let last = (samples - 1) as f64;
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let s = extent * ((2 * i) as f64 - last) / last;
        let (q0, p0) = if i == 0 || i == samples - 1 {
            // the axis intercept itself
            (extent, 0.0)
        } else {
            let (q0, p0, _) = solve_on_line(spec, s.abs(), tol)?;
            (q0, p0)
        };
        let (q, p) = if s < 0.0 { (p0, q0) } else { (q0, p0) };
        out.push(CurveSample {
            q,
            p,
            residual: eval_raw(spec, q, p),
            dpdq: slope_raw(spec, q, p)?,
        });
    }
    Ok(out)
}

/// First crossing in `(0, 1)` of the curve with the constraint `p = q^a`.
///
/// The crossing is confirmed by comparing `E_low` and `E_high` of the
/// oscillator at `(q*, q*^a)`.
pub fn intersect_constraint(spec: CurveSpec, exponent: f64, tol: f64) -> Result<RootResult> {
    check_tol(tol)?;
    if !exponent.is_finite() || exponent <= 0.0 {
        return Err(Error::Domain(format!(
            "exponent must be positive (got {exponent})"
        )));
    }
    let g = |q: f64| eval_raw(spec, q, q.powf(exponent));
    let (lo, hi) = (1e-9, 1.0);
    let brackets = scan_brackets(g, lo, hi, DEFAULT_CELLS)?;
    let b = brackets
        .iter()
        .find(|b| !b.is_degenerate())
        .or_else(|| brackets.first())
        .ok_or_else(|| {
            let sign = |x: f64| if g(x) < 0.0 { '-' } else { '+' };
            Error::NotFound(format!(
                "p = q^{exponent} never crosses F_({},{}) = 0 in (0, 1): sign {} at q = {lo}, {} at q = {hi}, {} cells scanned",
                spec.high, spec.low, sign(lo), sign(hi), DEFAULT_CELLS
            ))
        })?;
    let root = bisect(g, b, BisectTol::with_residual(tol))?;
    let q = root.value;
    let d = RealDeformation::new(q, q.powf(exponent))?;
    let gap = energy_qp(spec.high, d) - energy_qp(spec.low, d);
    if gap.abs() >= ENERGY_CHECK {
        return Err(Error::Convergence {
            best: q,
            iterations: root.iterations,
        });
    }
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn spec(l: u32, h: u32) -> CurveSpec {
        CurveSpec::new(l, h).unwrap()
    }

    /// Explicit `E_0 = E_2` curve.
    fn f20(q: f64) -> f64 {
        (-1.0 - q + ((1.0 + q) * (1.0 - 3.0 * q) + 4.0).sqrt()) / 2.0
    }

    const GOLDEN: f64 = 0.6180339887498949;

    #[test]
    fn spec_validation() {
        assert!(CurveSpec::new(0, 1).is_err());
        assert!(CurveSpec::new(3, 3).is_err());
        assert!(CurveSpec::new(4, 2).is_err());
        assert!(spec(0, 2).is_established_family());
        assert!(spec(4, 5).is_established_family());
        assert!(!spec(1, 3).is_established_family());
    }

    #[test]
    fn function_examples() {
        let f = |q: f64, p: f64| p * p + p * q + q * q + p + q - 1.0;
        for &(q, p) in &[(0.1, 0.7), (0.5, 0.2), (1.0, 1.0)] {
            assert_abs_diff_eq!(
                degeneracy_function(spec(0, 2), q, p).unwrap(),
                f(q, p),
                epsilon = 1e-15
            );
        }
        assert!(
            degeneracy_function(spec(0, 2), 1.0 / 3.0, 1.0 / 3.0)
                .unwrap()
                .abs()
                < 1e-15
        );
        assert_eq!(degeneracy_function(spec(1, 2), 0.0, 1.0).unwrap(), 0.0);
        assert_eq!(degeneracy_function(spec(2, 3), 1.0, 1.0).unwrap(), 2.0);
        let f32_ = |q: f64, p: f64| p.powi(3) + p * p * q + p * q * q + q.powi(3) - p - q;
        assert_abs_diff_eq!(
            degeneracy_function(spec(2, 3), 0.4, 0.9).unwrap(),
            f32_(0.4, 0.9),
            epsilon = 1e-15
        );
        assert!(degeneracy_function(spec(0, 2), 0.0, 0.0).is_err());
        assert!(degeneracy_function(spec(0, 2), 1.2, 0.0).is_err());
    }

    #[test]
    fn explicit_partials() {
        // F_{4,3} slope numerator and denominator as polynomials
        let (q, p) = (0.37, 0.61);
        let [_, fq, fp] = eval_with_grad(spec(3, 4), q, p);
        let num = p.powi(3) + 2.0 * q * p * p + 3.0 * q * q * p + 4.0 * q.powi(3) - p - 2.0 * q;
        let den = q.powi(3) + 2.0 * p * q * q + 3.0 * p * p * q + 4.0 * p.powi(3) - q - 2.0 * p;
        assert_abs_diff_eq!(fq, num, epsilon = 1e-14);
        assert_abs_diff_eq!(fp, den, epsilon = 1e-14);
    }

    #[test]
    fn solve_examples() {
        let r = solve_p_for_q(spec(0, 2), 0.0, DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(r.value, GOLDEN, epsilon = 1e-12);
        let r = solve_p_for_q(spec(0, 2), 0.2, DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(
            r.value,
            (-1.2 + (1.2f64 * 0.4 + 4.0).sqrt()) / 2.0,
            epsilon = 1e-12
        );
        let r = solve_p_for_q(spec(1, 2), 1.0, DEFAULT_TOL).unwrap();
        assert_eq!(r.value, 0.0);
        // origin excluded: the E_2 = E_3 curve starts at (0, 1)
        let r = solve_p_for_q(spec(2, 3), 0.0, DEFAULT_TOL).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn solve_outside_admissible_range() {
        match solve_p_for_q(spec(0, 2), 0.7, DEFAULT_TOL) {
            Err(Error::NotFound(msg)) => assert!(msg.contains("0.618")),
            other => panic!("expected not-found, got {other:?}"),
        }
        assert!(matches!(
            solve_p_for_q(spec(0, 2), 1.5, DEFAULT_TOL),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn endpoints() {
        assert_abs_diff_eq!(
            endpoint_qm(2, 1e-15).unwrap().value,
            GOLDEN,
            epsilon = 1e-12
        );
        // bisection oracle on the cubic (mpmath): 0.75487766624669276
        assert_abs_diff_eq!(
            endpoint_qm(3, 1e-15).unwrap().value,
            0.7548776662466928,
            epsilon = 1e-12
        );
        let chain: Vec<f64> = (2..=60)
            .map(|m| endpoint_qm(m, 0.0).unwrap().value)
            .collect();
        assert!(chain.windows(2).all(|w| w[0] < w[1]));
        assert!(*chain.last().unwrap() < 1.0);
        assert!(endpoint_qm(1, DEFAULT_TOL).is_err());
    }

    #[test]
    fn slope_examples() {
        // on the diagonal of F_{2,1}: q = p = 1/√3
        let d = 1.0 / 3f64.sqrt();
        assert_abs_diff_eq!(
            curve_slope(spec(1, 2), d, d).unwrap(),
            -1.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            curve_slope(spec(1, 2), 0.0, 1.0).unwrap(),
            -0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            curve_slope(spec(1, 2), 1.0, 0.0).unwrap(),
            -2.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            curve_slope(spec(0, 2), GOLDEN, 0.0).unwrap(),
            -1.381966011250105,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            curve_slope(spec(0, 2), 0.0, GOLDEN).unwrap(),
            -0.723606797749979,
            epsilon = 1e-12
        );
        assert_eq!(
            curve_slope(spec(4, 5), 1.0, 0.0).unwrap(),
            f64::NEG_INFINITY
        );
        assert_abs_diff_eq!(
            curve_slope(spec(4, 5), 0.0, 1.0).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn trace_examples() {
        let t = trace_curve(spec(0, 2), 3, DEFAULT_TOL).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].q, 0.0);
        assert_abs_diff_eq!(t[0].p, GOLDEN, epsilon = 1e-12);
        assert_abs_diff_eq!(t[1].q, 1.0 / 3.0, epsilon = 1e-12);
        assert_eq!(t[1].q, t[1].p);
        assert_abs_diff_eq!(t[2].q, GOLDEN, epsilon = 1e-12);
        assert_eq!(t[2].p, 0.0);

        let t = trace_curve(spec(4, 5), 5, DEFAULT_TOL).unwrap();
        for (a, b) in t.iter().zip(t.iter().rev()) {
            assert_eq!((a.q, a.p), (b.p, b.q));
        }

        let t = trace_curve(spec(1, 2), 2, DEFAULT_TOL).unwrap();
        assert_eq!((t[0].q, t[0].p), (0.0, 1.0));
        assert_eq!((t[1].q, t[1].p), (1.0, 0.0));

        assert!(trace_curve(spec(1, 2), 1, DEFAULT_TOL).is_err());
    }

    #[test]
    fn traced_e0_e2_matches_explicit_curve() {
        for s in trace_curve(spec(0, 2), 256, DEFAULT_TOL).unwrap() {
            assert!((s.p - f20(s.q)).abs() < 1e-10, "q = {}", s.q);
            assert!(s.residual.abs() < DEFAULT_TOL);
        }
    }

    #[test]
    fn traced_curves_decrease() {
        for sp in [
            spec(0, 2),
            spec(0, 4),
            spec(0, 7),
            spec(1, 2),
            spec(4, 5),
            spec(9, 10),
        ] {
            let t = trace_curve(sp, 64, DEFAULT_TOL).unwrap();
            for w in t.windows(2) {
                assert!(w[0].q < w[1].q && w[0].p > w[1].p, "{sp:?}");
            }
            for s in &t[1..t.len() - 1] {
                assert!(
                    s.dpdq < 0.0,
                    "{sp:?} at ({}, {}) slope {}",
                    s.q,
                    s.p,
                    s.dpdq
                );
                assert!(s.residual.abs() < DEFAULT_TOL);
            }
        }
    }

    #[test]
    fn steep_corner_rounds_to_q_one() {
        // E_10 = E_11 at 256 samples: the last few points before (1, 0)
        // sit closer to q = 1 than an ulp, and mirror images near (0, 1)
        let t = trace_curve(spec(10, 11), 256, DEFAULT_TOL).unwrap();
        assert!(t.iter().filter(|s| s.q == 1.0).count() > 1);
        assert!(t.iter().filter(|s| s.p == 1.0).count() > 1);
        for w in t.windows(2) {
            assert!(w[0].q <= w[1].q && w[0].p >= w[1].p);
            assert!(w[0].q < w[1].q || w[0].p > w[1].p);
        }
        for s in &t[1..255] {
            assert!(
                s.dpdq <= 0.0 && s.residual.abs() < DEFAULT_TOL,
                "({}, {}) {}",
                s.q,
                s.p,
                s.dpdq
            );
        }
    }

    #[test]
    fn general_pairs_trace() {
        // E_1 = E_3 and E_2 = E_5 lie outside the two established families
        for sp in [spec(1, 3), spec(2, 5)] {
            let t = trace_curve(sp, 33, DEFAULT_TOL).unwrap();
            for s in &t {
                let d = RealDeformation::new(s.q, s.p).unwrap();
                let gap = energy_qp(sp.m_high(), d) - energy_qp(sp.m_low(), d);
                assert!(gap.abs() < 1e-11);
            }
        }
    }

    #[test]
    fn diagonal_points() {
        let d = diagonal_point(spec(4, 5), DEFAULT_TOL).unwrap();
        assert!((d.value - (4.0f64 / 6.0).sqrt()).abs() < 1e-10);
        let d = diagonal_point(spec(0, 2), DEFAULT_TOL).unwrap();
        assert!((d.value - 1.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn constraint_crossings() {
        // frozen from a 40-digit bisection oracle
        let a = intersect_constraint(spec(0, 3), 5.0, DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(a.value, 0.6837156201921213, epsilon = 1e-10);
        let b = intersect_constraint(spec(4, 5), 5.0, DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(b.value, 0.9214538846262114, epsilon = 1e-10);
        let c = intersect_constraint(spec(4, 5), 1.0, DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(c.value, (4.0f64 / 6.0).sqrt(), epsilon = 1e-10);
        assert!(intersect_constraint(spec(4, 5), 0.0, DEFAULT_TOL).is_err());
    }

    #[test]
    fn no_degeneracy_on_ac_edge() {
        for m in 1..=10 {
            let sp = spec(m, m + 1);
            let b = scan_brackets(|q| eval_raw(sp, q, 1.0), 1e-9, 1.0, DEFAULT_CELLS).unwrap();
            assert!(b.is_empty());
        }
    }

    proptest! {
        #[test]
        fn symmetric_in_q_and_p(l in 0u32..8, gap in 1u32..8, q in 0.0f64..=1.0, p in 0.0f64..=1.0) {
            prop_assume!(q > 0.0 || p > 0.0);
            prop_assume!(l > 0 || gap > 1);
            let sp = spec(l, l + gap);
            let a = degeneracy_function(sp, q, p).unwrap();
            let b = degeneracy_function(sp, p, q).unwrap();
            prop_assert!((a - b).abs() < 1e-13);
        }
    }
}

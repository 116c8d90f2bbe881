//! Numeric kernel shared by the degeneracy solvers: polynomial evaluation,
//! uniform sign-scan bracketing, bisection and central differences.

use crate::error::{Error, Result};

/// Default number of uniform cells used when scanning for sign changes.
pub const DEFAULT_CELLS: usize = 1024;

/// Real polynomial stored with ascending-degree coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial, trimming trailing (highest-degree) zeros.
    /// The zero polynomial is stored as `[0.0]`.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Polynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn eval(&self, x: f64) -> f64 {
        horner_eval(self, x)
    }

    /// Divides out every factor of `x` (roots at the origin). Returns the
    /// quotient and the number of factors removed.
    pub fn deflate_zero_roots(&self) -> (Polynomial, usize) {
        let zeros = self.coeffs.iter().take_while(|&&c| c == 0.0).count();
        if zeros == self.coeffs.len() {
            return (self.clone(), 0);
        }
        (Polynomial::new(self.coeffs[zeros..].to_vec()), zeros)
    }

    /// Synthetic division by `(x - root)`. Returns `(quotient, remainder)`.
    pub fn divide_by_linear(&self, root: f64) -> (Polynomial, f64) {
        let n = self.coeffs.len();
        if n == 1 {
            return (Polynomial::new(vec![0.0]), self.coeffs[0]);
        }
        let mut quotient = vec![0.0; n - 1];
        let mut carry = 0.0;
        for i in (1..n).rev() {
            carry = self.coeffs[i] + carry * root;
            quotient[i - 1] = carry;
        }
        let remainder = self.coeffs[0] + carry * root;
        (Polynomial::new(quotient), remainder)
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        let lead = self.leading();
        Polynomial::new(self.coeffs.iter().map(|c| c / lead).collect())
    }
}

/// Horner evaluation of an ascending-degree polynomial.
pub fn horner_eval(poly: &Polynomial, x: f64) -> f64 {
    poly.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// A sign-change interval `[lo, hi]` with `f_lo · f_hi ≤ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Checks the bracket invariants; `lo == hi` is allowed when `f_lo == 0`.
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let degenerate = lo == hi && f_lo == 0.0;
        if !(lo < hi || degenerate) {
            return Err(Error::Usage(format!("bracket [{lo}, {hi}] is empty")));
        }
        if f_lo * f_hi > 0.0 {
            return Err(Error::Usage(format!(
                "no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}"
            )));
        }
        Ok(Bracket { lo, hi, f_lo, f_hi })
    }

    /// Evaluates `f` at both ends and builds the bracket.
    pub fn from_fn<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Self> {
        let f_lo = finite(&f, lo)?;
        let f_hi = finite(&f, hi)?;
        Bracket::new(lo, hi, f_lo, f_hi)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// A located root together with how it was found.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub value: f64,
    /// Function value at `value`.
    pub residual: f64,
    /// Final enclosing interval.
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// Stopping rules for [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectTol {
    pub residual: f64,
    pub width: f64,
    pub max_iter: usize,
}

impl Default for BisectTol {
    fn default() -> Self {
        BisectTol {
            residual: 1e-13,
            width: 1e-15,
            max_iter: 200,
        }
    }
}

impl BisectTol {
    pub fn with_residual(residual: f64) -> Self {
        BisectTol {
            residual,
            ..Default::default()
        }
    }

    /// Run until the bracket cannot be split any further.
    pub fn full_precision() -> Self {
        BisectTol {
            residual: 0.0,
            width: 0.0,
            ..Default::default()
        }
    }
}

fn finite<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::Evaluation { x })
    }
}

/// Returns every sign-change cell of a uniform grid on `[lo, hi]`, in
/// increasing order. A grid node where `f` is exactly zero is reported as
/// the degenerate bracket `[x, x]`.
pub fn scan_brackets<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    cells: usize,
) -> Result<Vec<Bracket>> {
    if lo.is_nan() || hi.is_nan() || lo >= hi || cells == 0 {
        return Err(Error::Usage(format!(
            "scan needs lo < hi and at least one cell (got [{lo}, {hi}], {cells} cells)"
        )));
    }
    let node = |i: usize| {
        if i == cells {
            hi
        } else {
            lo + (hi - lo) * (i as f64 / cells as f64)
        }
    };
    let mut out = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = finite(&f, lo)?;
    if f_prev == 0.0 {
        out.push(Bracket {
            lo,
            hi: lo,
            f_lo: 0.0,
            f_hi: 0.0,
        });
    }
    for i in 1..=cells {
        let x = node(i);
        let fx = finite(&f, x)?;
        if fx == 0.0 {
            out.push(Bracket {
                lo: x,
                hi: x,
                f_lo: 0.0,
                f_hi: 0.0,
            });
        } else if f_prev * fx < 0.0 {
            out.push(Bracket {
                lo: x_prev,
                hi: x,
                f_lo: f_prev,
                f_hi: fx,
            });
        }
        x_prev = x;
        f_prev = fx;
    }
    Ok(out)
}

/// Bisection on a sign-change bracket.
///
/// Stops as soon as `|f(mid)| < tol.residual`, the half-width drops below
/// `tol.width`, or the midpoint can no longer be split in floating point.
pub fn bisect<F: Fn(f64) -> f64>(f: F, b: &Bracket, tol: BisectTol) -> Result<RootResult> {
    let done = |value: f64, residual: f64, lo: f64, hi: f64, iterations: usize| RootResult {
        value,
        residual,
        bracket: (lo, hi),
        iterations,
    };
    if b.is_degenerate() || b.f_lo == 0.0 {
        return Ok(done(b.lo, b.f_lo, b.lo, b.hi, 0));
    }
    if b.f_hi == 0.0 {
        return Ok(done(b.hi, b.f_hi, b.lo, b.hi, 0));
    }
    let (mut lo, mut hi, mut f_lo) = (b.lo, b.hi, b.f_lo);
    for it in 1..=tol.max_iter {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            let r = finite(&f, mid)?;
            return Ok(done(mid, r, lo, hi, it));
        }
        let fm = finite(&f, mid)?;
        if fm == 0.0 || fm.abs() < tol.residual || 0.5 * (hi - lo) < tol.width {
            return Ok(done(mid, fm, lo, hi, it));
        }
        if (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence {
        best: lo + 0.5 * (hi - lo),
        iterations: tol.max_iter,
    })
}

/// Scan `[lo, hi]` and bisect the first (leftmost) sign change. Also returns
/// how many sign-change cells were seen.
pub fn first_root<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    cells: usize,
    tol: BisectTol,
) -> Result<(RootResult, usize)> {
    let brackets = scan_brackets(&f, lo, hi, cells)?;
    let first = brackets.first().ok_or_else(|| {
        Error::NotFound(format!("no sign change on [{lo}, {hi}] over {cells} cells"))
    })?;
    Ok((bisect(&f, first, tol)?, brackets.len()))
}

/// Central difference `(f(x + h) - f(x - h)) / 2h`.
pub fn central_diff<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn horner_examples() {
        let p = Polynomial::new(vec![-1.0, 0.0, 3.0]);
        assert!(p.eval((1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(Polynomial::new(vec![2.5]).eval(17.0), 2.5);
        assert_eq!(Polynomial::new(vec![0.0, 1.0]).eval(0.7), 0.7);
    }

    #[test]
    fn trims_and_deflates() {
        let p = Polynomial::new(vec![0.0, 0.0, -1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 3);
        let (d, zeros) = p.deflate_zero_roots();
        assert_eq!(zeros, 2);
        assert_eq!(d.coefficients(), &[-1.0, 2.0]);
        assert_eq!(Polynomial::new(vec![]).coefficients(), &[0.0]);
    }

    #[test]
    fn synthetic_division() {
        // (x + 1)(x - 2) = x^2 - x - 2
        let (q, r) = Polynomial::new(vec![-2.0, -1.0, 1.0]).divide_by_linear(-1.0);
        assert_eq!(q.coefficients(), &[-2.0, 1.0]);
        assert_eq!(r, 0.0);
        let (_, r) = Polynomial::new(vec![1.0, 0.0, 1.0]).divide_by_linear(-1.0);
        assert_eq!(r, 2.0);
    }

    #[test]
    fn scan_examples() {
        let b = scan_brackets(|q| 3.0 * q * q - 1.0, 0.0, 1.0, 1024).unwrap();
        assert_eq!(b.len(), 1);
        let root = (1.0f64 / 3.0).sqrt();
        assert!(b[0].lo <= root && root <= b[0].hi);

        assert!(scan_brackets(|q| q - 2.0, 0.0, 1.0, 1024)
            .unwrap()
            .is_empty());

        let golden = (5.0f64.sqrt() - 1.0) / 2.0;
        let b = scan_brackets(|q| q * q + q - 1.0, 0.0, 1.0, 1024).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].lo <= golden && golden <= b[0].hi);
    }

    #[test]
    fn scan_reports_node_zero_once() {
        // zero exactly at the node 0.5 of a 4-cell grid
        let b = scan_brackets(|x| x - 0.5, 0.0, 1.0, 4).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].is_degenerate());
        assert_eq!(b[0].lo, 0.5);
    }

    #[test]
    fn scan_rejects_non_finite() {
        let err = scan_brackets(|x| 1.0 / (x - 0.5), 0.0, 1.0, 4).unwrap_err();
        assert_eq!(err, Error::Evaluation { x: 0.5 });
        assert!(matches!(
            scan_brackets(|x| x, 1.0, 0.0, 4),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn bisect_examples() {
        let f = |q: f64| q * q + q - 1.0;
        let b = Bracket::from_fn(f, 0.0, 1.0).unwrap();
        let r = bisect(f, &b, BisectTol::with_residual(1e-14)).unwrap();
        assert!((r.value - 0.6180339887498949).abs() < 1e-12);

        let f = |q: f64| 5.0 * q.powi(4) + 4.0 * q.powi(3) - 1.0;
        let b = Bracket::from_fn(f, 0.0, 1.0).unwrap();
        let r = bisect(f, &b, BisectTol::default()).unwrap();
        assert!((r.value - 0.5315645).abs() < 5e-7);

        let b = Bracket::new(0.25, 0.25, 0.0, 0.0).unwrap();
        let r = bisect(|x| x - 0.25, &b, BisectTol::default()).unwrap();
        assert_eq!((r.value, r.iterations), (0.25, 0));
    }

    #[test]
    fn bisect_reports_non_convergence() {
        let f = |x: f64| x - 0.3;
        let b = Bracket::from_fn(f, 0.0, 1.0).unwrap();
        let tol = BisectTol {
            residual: 0.0,
            width: 0.0,
            max_iter: 5,
        };
        match bisect(f, &b, tol) {
            Err(Error::Convergence { best, iterations }) => {
                assert_eq!(iterations, 5);
                assert!((best - 0.3).abs() < 1.0 / 32.0);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn bracket_validation() {
        assert!(Bracket::new(0.0, 1.0, 1.0, 2.0).is_err());
        assert!(Bracket::new(1.0, 0.0, -1.0, 2.0).is_err());
        assert!(Bracket::new(1.0, 1.0, 0.0, 0.0).is_ok());
    }

    #[test]
    fn central_diff_examples() {
        assert!((central_diff(|q| q * q, 1.0, 1e-6) - 2.0).abs() < 1e-8);
        assert_eq!(central_diff(|_| 4.2, 0.3, 1e-3), 0.0);
    }

    proptest! {
        #[test]
        fn horner_matches_power_sum(
            coeffs in prop::collection::vec(-10.0f64..10.0, 1..=17),
            x in -1.0f64..=1.0,
        ) {
            let p = Polynomial::new(coeffs.clone());
            let naive: f64 = coeffs.iter().enumerate().map(|(i, c)| c * x.powi(i as i32)).sum();
            let scale: f64 = coeffs.iter().enumerate().map(|(i, c)| (c * x.powi(i as i32)).abs()).sum();
            prop_assert!((p.eval(x) - naive).abs() <= 1e-13 * scale.max(1e-300));
        }

        #[test]
        fn bisection_stays_inside_bracket(root in 0.01f64..0.99, scale in 0.1f64..10.0) {
            let f = |x: f64| scale * (x - root) * (1.0 + x * x);
            let b = Bracket::from_fn(f, 0.0, 1.0).unwrap();
            let r = bisect(f, &b, BisectTol::default()).unwrap();
            prop_assert!(r.value > b.lo && r.value < b.hi);
            prop_assert!(r.residual.abs() < 1e-13 || r.bracket.1 - r.bracket.0 < 2e-15);
            // same input, same bits
            let again = bisect(f, &b, BisectTol::default()).unwrap();
            prop_assert_eq!(r.value.to_bits(), again.value.to_bits());
        }
    }
}

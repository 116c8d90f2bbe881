//! Tamm–Dancoff degeneracies `E_m = E_{m+k}` at real `q ∈ (0, 1)`.
//!
//! Equating the TD energies and dividing by `q^(m-1)` gives
//!
//! ```text
//! (m+k+1) q^(k+1) + (m+k) q^k − (m+1) q − m = 0
//! ```
//!
//! which is `−m` at `q = 0` and `2k` at `q = 1`, so a root in `(0, 1)`
//! always exists. `k = 1` and `k = 2` have closed forms.

use crate::error::{Error, Result};
use crate::numerics::{first_root, BisectTol, Polynomial, RootResult, DEFAULT_CELLS};

/// Default residual tolerance for TD roots.
pub const DEFAULT_TOL: f64 = 1e-13;

const SCAN_LO: f64 = 1e-9;
const SCAN_HI: f64 = 1.0 - 1e-9;

/// The target degeneracy `E_m = E_{m+k}`.
///
/// `E_0 = E_1` would need `q = 0`, so `m = 0` requires `k ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegeneracyPair {
    m: u32,
    k: u32,
}

impl DegeneracyPair {
    pub fn new(m: u32, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("level gap k must be at least 1".into()));
        }
        if m == 0 && k == 1 {
            return Err(Error::Domain(
                "E_0 = E_1 would require the excluded value q = 0; use k >= 2 for m = 0".into(),
            ));
        }
        Ok(DegeneracyPair { m, k })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

/// A TD degeneracy root. `sign_changes` counts the sign-change cells seen in
/// `(0, 1)`; the smallest root is returned when there are several.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TdRoot {
    pub pair: DegeneracyPair,
    pub root: RootResult,
    pub sign_changes: usize,
}

/// `q = √(m/(m+2))`, where `E_m = E_{m+1}`.
pub fn closed_form_k1(m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain(
            "m = 0 is excluded: E_0 = E_1 would require q = 0".into(),
        ));
    }
    let m = m as f64;
    Ok((m / (m + 2.0)).sqrt())
}

/// `q = (1 + √(4m² + 12m + 1)) / (2(m+3))`, where `E_m = E_{m+2}`.
pub fn closed_form_k2(m: u32) -> f64 {
    let m = m as f64;
    (1.0 + (4.0 * m * m + 12.0 * m + 1.0).sqrt()) / (2.0 * (m + 3.0))
}

/// Coefficients of `(m+k+1) q^(k+1) + (m+k) q^k − (m+1) q − m`.
pub fn degeneracy_polynomial(pair: DegeneracyPair) -> Polynomial {
    let (m, k) = (pair.m as f64, pair.k as usize);
    let mut c = vec![0.0; k + 2];
    c[0] -= m;
    c[1] -= m + 1.0;
    c[k] += m + k as f64;
    c[k + 1] += m + k as f64 + 1.0;
    Polynomial::new(c)
}

/// Smallest root of the degeneracy polynomial in `(0, 1)`: uniform sign
/// scan over `[1e-9, 1 − 1e-9]` followed by bisection.
///
/// For `m = 0` the factor `q` is divided out first so the scan works on
/// `(k+1) q^k + k q^(k-1) − 1`.
pub fn solve_degeneracy(pair: DegeneracyPair, tol: f64) -> Result<TdRoot> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!(
            "tolerance must be positive (got {tol})"
        )));
    }
    let (poly, _) = degeneracy_polynomial(pair).deflate_zero_roots();
    let (root, sign_changes) = first_root(
        |q| poly.eval(q),
        SCAN_LO,
        SCAN_HI,
        DEFAULT_CELLS,
        BisectTol::with_residual(tol),
    )
    .map_err(|e| match e {
        Error::NotFound(msg) => Error::NotFound(format!(
            "no TD root for E_{} = E_{}: {msg}",
            pair.m,
            pair.m + pair.k
        )),
        other => other,
    })?;
    Ok(TdRoot {
        pair,
        root,
        sign_changes,
    })
}

/// Roots `q_m` making `E_0 = E_m` for each requested `m ≥ 2`, in input order.
pub fn table_e0_em(ms: &[u32], tol: f64) -> Result<Vec<(u32, TdRoot)>> {
    ms.iter()
        .map(|&m| {
            if m < 2 {
                return Err(Error::Domain(format!("E_0 = E_m needs m >= 2 (got {m})")));
            }
            Ok((m, solve_degeneracy(DegeneracyPair::new(0, m)?, tol)?))
        })
        .collect()
}

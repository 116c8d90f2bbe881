//! Root-of-unity degeneracies of the BM oscillator.
//!
//! For `q = e^{iθ}` with `θ = π(2k+1)/(2n+r+1)` the levels `n` and `n + r`
//! coincide, because
//!
//! ```text
//! E_{n+r} − E_n = 2 sin(rθ/2)/sin θ · cos((2n+1+r)θ/2) · cos(θ/2)
//! ```
//!
//! and the middle factor vanishes.

use crate::bracket::{cos_pi_frac, sin_pi_frac, PhaseDeformation, PHASE_LIMIT};
use crate::error::{Error, Result};
use crate::spectrum::energy_bm;

/// The family of angles making `E_{n+r} = E_n`, indexed by branch `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngleFamily {
    n: u32,
    r: u32,
    k: i64,
}

impl AngleFamily {
    pub fn new(n: u32, r: u32, k: i64) -> Result<Self> {
        if r < 1 {
            return Err(Error::Domain("level gap r must be at least 1".into()));
        }
        Ok(AngleFamily { n, r, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    fn fraction(&self) -> (i64, i64) {
        (2 * self.k + 1, 2 * self.n as i64 + self.r as i64 + 1)
    }
}

/// `θ = π(2k+1)/(2n+r+1)`, kept as an exact fraction of π.
pub fn degeneracy_angle(fam: AngleFamily) -> PhaseDeformation {
    let (num, den) = fam.fraction();
    PhaseDeformation::from_pi_fraction(num, den).expect("denominator is positive")
}

/// Closed-form `E_{n+r} − E_n`. Undefined where `sin θ = 0` away from the
/// undeformed point `θ = 0`, where it equals `r`.
pub fn level_difference_closed(n: u32, r: u32, d: PhaseDeformation) -> Result<f64> {
    let theta = d.theta();
    if theta.abs() < PHASE_LIMIT {
        return Ok(r as f64);
    }
    let (n, r) = (n as i128, r as i128);
    let (sin_half_r, sin_t, cos_mid, cos_half) = match d.pi_fraction() {
        Some((num, den)) => {
            let (num, den) = (num as i128, den as i128);
            (
                sin_pi_frac(r * num, 2 * den),
                sin_pi_frac(num, den),
                cos_pi_frac((2 * n + 1 + r) * num, 2 * den),
                cos_pi_frac(num, 2 * den),
            )
        }
        None => (
            (r as f64 * theta / 2.0).sin(),
            theta.sin(),
            ((2 * n + 1 + r) as f64 * theta / 2.0).cos(),
            (theta / 2.0).cos(),
        ),
    };
    if sin_t.abs() < PHASE_LIMIT {
        return Err(Error::Domain(format!(
            "closed-form level difference undefined at θ = {theta} (sin θ = 0)"
        )));
    }
    Ok(2.0 * sin_half_r / sin_t * cos_mid * cos_half)
}

/// `|E_{n+r} − E_n|` at the family's angle.
pub fn verify_degeneracy(fam: AngleFamily) -> f64 {
    let d = degeneracy_angle(fam);
    (energy_bm(fam.n + fam.r, d) - energy_bm(fam.n, d)).abs()
}

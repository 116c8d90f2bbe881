//! Energy spectra `E_n = ½([n+1] + [n])` and truncated Fock-space
//! representations of the ladder operators.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::bracket::{
    bm_bracket_int, check_td, homogeneous_sum, Oscillator, PhaseDeformation, RealDeformation,
};
use crate::error::{Error, Result};

/// One level of a spectrum, in units of `ħω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub n: u32,
    pub energy: f64,
}

/// `E_n = ½(⟦n+1⟧ + ⟦n⟧)` for the q,p oscillator.
pub fn energy_qp(n: u32, d: RealDeformation) -> f64 {
    0.5 * (homogeneous_sum(n + 1, d.q(), d.p()) + homogeneous_sum(n, d.q(), d.p()))
}

/// `E_n = ½((n+1) q^n + n q^(n-1))` for the Tamm–Dancoff oscillator.
pub fn energy_td(n: u32, q: f64) -> Result<f64> {
    check_td(q)?;
    let n_f = n as f64;
    let lower = if n == 0 {
        0.0
    } else {
        n_f * q.powi(n as i32 - 1)
    };
    Ok(0.5 * ((n_f + 1.0) * q.powi(n as i32) + lower))
}

/// `E_n = ½([n+1] + [n])` with `[x] = sin(xθ)/sin θ`.
pub fn energy_bm(n: u32, d: PhaseDeformation) -> f64 {
    0.5 * (bm_bracket_int(n + 1, d) + bm_bracket_int(n, d))
}

impl Oscillator {
    pub fn energy(&self, n: u32) -> Result<f64> {
        match *self {
            Oscillator::Bm(d) => Ok(energy_bm(n, d)),
            Oscillator::Td(q) => energy_td(n, q),
            Oscillator::Qp(d) => Ok(energy_qp(n, d)),
        }
    }
}

/// Levels `0..=n_max` in index order.
pub fn spectrum_table(n_max: u32, osc: &Oscillator) -> Result<Vec<EnergyLevel>> {
    (0..=n_max)
        .map(|n| {
            Ok(EnergyLevel {
                n,
                energy: osc.energy(n)?,
            })
        })
        .collect()
}

/// Ladder and number operators on the Fock states `|0⟩ … |n_max⟩`.
///
/// `a` is non-zero only on the first superdiagonal, `a[n-1, n] = √[n]`;
/// `adag` is its transpose and `number = diag(0, 1, …, n_max)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedRep {
    a: DMatrix<f64>,
    adag: DMatrix<f64>,
    number: DMatrix<f64>,
}

impl TruncatedRep {
    /// Builds the representation for an oscillator. Fails when a bracket
    /// below the cutoff is negative (possible for BM phases beyond
    /// `|θ| = π / n_max`).
    pub fn build(n_max: u32, osc: &Oscillator) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::Domain("Fock cutoff n_max must be at least 1".into()));
        }
        let dim = n_max as usize + 1;
        let mut a = DMatrix::zeros(dim, dim);
        for n in 1..dim {
            let b = osc.bracket(n as f64)?;
            if b < -1e-14 {
                return Err(Error::Domain(format!(
                    "bracket [{n}] = {b} is negative; no real ladder representation"
                )));
            }
            a[(n - 1, n)] = b.max(0.0).sqrt();
        }
        let adag = a.transpose();
        let number = DMatrix::from_diagonal(&nalgebra::DVector::from_fn(dim, |i, _| i as f64));
        Ok(TruncatedRep { a, adag, number })
    }

    /// Assembles a representation from explicit matrices, checking the
    /// structural invariants.
    pub fn from_parts(a: DMatrix<f64>, adag: DMatrix<f64>, number: DMatrix<f64>) -> Result<Self> {
        let dim = a.nrows();
        for (name, m) in [("a", &a), ("adag", &adag), ("number", &number)] {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::Usage(format!(
                    "{name} is {}x{}, expected {dim}x{dim}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        if dim < 2 {
            return Err(Error::Usage(
                "representation needs at least two states".into(),
            ));
        }
        for i in 0..dim {
            for j in 0..dim {
                if j != i + 1 && a[(i, j)] != 0.0 {
                    return Err(Error::Usage(format!(
                        "a has an entry off the superdiagonal at ({i}, {j})"
                    )));
                }
                if number[(i, j)] != if i == j { i as f64 } else { 0.0 } {
                    return Err(Error::Usage(format!(
                        "number operator is wrong at ({i}, {j})"
                    )));
                }
            }
        }
        if adag != a.transpose() {
            return Err(Error::Usage("adag is not the transpose of a".into()));
        }
        Ok(TruncatedRep { a, adag, number })
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn n_max(&self) -> u32 {
        (self.dim() - 1) as u32
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn adag(&self) -> &DMatrix<f64> {
        &self.adag
    }

    pub fn number(&self) -> &DMatrix<f64> {
        &self.number
    }

    /// `H = ½(a a† + a† a)`.
    pub fn hamiltonian(&self) -> DMatrix<f64> {
        0.5 * (&self.a * &self.adag + &self.adag * &self.a)
    }

    fn products(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        (&self.a * &self.adag, &self.adag * &self.a)
    }

    fn is_corner(&self, i: usize, j: usize) -> bool {
        let last = self.dim() - 1;
        i == last && j == last
    }
}

/// Largest entry of `A A† − q A†A − p^N` and `A A† − p A†A − q^N`, skipping
/// the top diagonal entry where the cutoff breaks the relation.
///
/// With `p = q` this is the TD relation `b b† − q b†b = q^N`.
pub fn defining_relation_residual(rep: &TruncatedRep, d: RealDeformation) -> f64 {
    let (q, p) = (d.q(), d.p());
    let (aad, ada) = rep.products();
    let mut worst: f64 = 0.0;
    for i in 0..rep.dim() {
        for j in 0..rep.dim() {
            if rep.is_corner(i, j) {
                continue;
            }
            let (p_n, q_n) = if i == j {
                (p.powi(i as i32), q.powi(i as i32))
            } else {
                (0.0, 0.0)
            };
            let r1 = aad[(i, j)] - q * ada[(i, j)] - p_n;
            let r2 = aad[(i, j)] - p * ada[(i, j)] - q_n;
            worst = worst.max(r1.abs()).max(r2.abs());
        }
    }
    worst
}

/// Residual of the BM relations `a a† − q a†a = q^{-N}` and
/// `a a† − q^{-1} a†a = q^N` for `q = e^{iθ}`, evaluated in complex
/// arithmetic, corner excluded.
pub fn bm_relation_residual(rep: &TruncatedRep, d: PhaseDeformation) -> f64 {
    let q = Complex64::from_polar(1.0, d.theta());
    let (aad, ada) = rep.products();
    let mut worst: f64 = 0.0;
    for i in 0..rep.dim() {
        for j in 0..rep.dim() {
            if rep.is_corner(i, j) {
                continue;
            }
            let (q_pos, q_neg) = if i == j {
                (q.powi(i as i32), q.powi(-(i as i32)))
            } else {
                (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
            };
            let r1 = aad[(i, j)] - q * ada[(i, j)] - q_neg;
            let r2 = aad[(i, j)] - q.inv() * ada[(i, j)] - q_pos;
            worst = worst.max(r1.norm()).max(r2.norm());
        }
    }
    worst
}

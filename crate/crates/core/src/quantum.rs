//! Density matrices, spectra and quantum scalar information quantities.
//!
//! Every matrix function (`ln`, powers, `exp`) goes through a Hermitian
//! eigendecomposition; dimensions here are small enough that this is both
//! exact to rounding and cheap.

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::classical::{alpha_entropy_of, shannon_of, xlogx, Alpha};
use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Asymmetry below this is symmetrized away; above it the input is rejected.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Trace drift below this is accepted as-is.
pub const TRACE_TOL: f64 = 1e-10;
/// Trace drift above this is an error (between the two it is renormalized).
pub const TRACE_REJECT_TOL: f64 = 1e-9;
/// Eigenvalues below `-PSD_REJECT_TOL` mean the matrix is genuinely not PSD.
pub const PSD_REJECT_TOL: f64 = 1e-8;
/// Eigenvalues at or below this count as zero when deciding supports.
pub const SUPPORT_TOL: f64 = 1e-10;
/// A state is pure when its largest eigenvalue is at least `1 - PURITY_TOL`.
pub const PURITY_TOL: f64 = 1e-9;

/// A validated state: Hermitian, unit trace, positive semidefinite.
///
/// The clipped, descending spectrum is computed once at validation.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
    eigenvalues: Vec<f64>,
}

/// Eigenvalues in descending order, optionally with matching orthonormal
/// eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<CMatrix>,
}

/// Descending eigenpairs of a Hermitian matrix.
pub(crate) fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = m.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub(crate) fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Checks a raw complex matrix and turns it into a [`DensityMatrix`].
pub fn validate_density(raw: CMatrix) -> Result<DensityMatrix> {
    let (rows, cols) = raw.shape();
    if rows != cols || rows == 0 {
        return Err(Error::NotSquare { rows, cols });
    }
    if let Some(index) = raw
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NonFinite { index });
    }
    let adjoint = raw.adjoint();
    let asym = raw
        .iter()
        .zip(adjoint.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    if asym > HERMITIAN_TOL {
        return Err(Error::NotHermitian(asym));
    }
    let mut m = (raw + adjoint).scale(0.5);
    let trace = m.trace().re;
    let drift = (trace - 1.0).abs();
    if drift > TRACE_REJECT_TOL {
        return Err(Error::TraceDeviation(trace));
    }
    if drift > TRACE_TOL {
        m /= C64::new(trace, 0.0);
    }
    let mut eigenvalues = hermitian_eigenvalues(&m);
    let min = eigenvalues.last().copied().unwrap_or(0.0);
    if min < -PSD_REJECT_TOL {
        return Err(Error::NotPsd(min));
    }
    eigenvalues.iter_mut().for_each(|x| *x = x.max(0.0));
    Ok(DensityMatrix {
        entries: m,
        eigenvalues,
    })
}

impl DensityMatrix {
    /// Builds a state from row-major real and imaginary parts.
    pub fn from_parts(dim: usize, re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != dim * dim || im.len() != dim * dim {
            return Err(Error::LengthMismatch {
                left: dim * dim,
                right: re.len().max(im.len()),
            });
        }
        validate_density(CMatrix::from_fn(dim, dim, |r, c| {
            C64::new(re[r * dim + c], im[r * dim + c])
        }))
    }

    /// Diagonal state with the given eigenvalues.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let n = probs.len();
        validate_density(CMatrix::from_fn(n, n, |r, c| {
            if r == c {
                C64::new(probs[r], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        }))
    }

    /// The projector onto the (normalized) vector `psi`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let v = DVector::from_column_slice(psi);
        let norm = v.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::OutOfRange {
                name: "state vector norm",
                value: norm,
                range: "(0, inf)",
            });
        }
        let v = v.unscale(norm);
        validate_density(&v * v.adjoint())
    }

    /// The maximally mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        DensityMatrix::diagonal(&vec![1.0 / dim as f64; dim])
    }

    /// `Σ w_i ρ_i`, revalidated.
    pub fn mixture(weights: &[f64], members: &[DensityMatrix]) -> Result<Self> {
        let dim = members
            .first()
            .map(DensityMatrix::dim)
            .ok_or_else(|| Error::InvalidFamily("no members".into()))?;
        let mut acc = CMatrix::zeros(dim, dim);
        for (w, m) in weights.iter().zip(members) {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: m.dim(),
                });
            }
            acc += m.entries.scale(*w);
        }
        validate_density(acc)
    }

    /// `U ρ U†`.
    pub fn conjugated(&self, u: &CMatrix) -> Result<Self> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: u.nrows(),
            });
        }
        validate_density(u * &self.entries * u.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// Clipped eigenvalues, descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_pure(&self) -> bool {
        self.eigenvalues[0] >= 1.0 - PURITY_TOL
    }

    /// True when `ρσ = σρ` up to `tol` elementwise.
    pub fn commutes_with(&self, other: &DensityMatrix, tol: f64) -> bool {
        let a = &self.entries * &other.entries;
        let b = &other.entries * &self.entries;
        a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() <= tol)
    }
}

fn same_dim(a: &DensityMatrix, b: &DensityMatrix) -> Result<()> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        })
    }
}

/// Spectrum of a state; eigenvectors are computed only on request.
pub fn spectrum(rho: &DensityMatrix, with_vectors: bool) -> Spectrum {
    if with_vectors {
        let (mut values, vectors) = hermitian_eigen(&rho.entries);
        values.iter_mut().for_each(|x| *x = x.max(0.0));
        Spectrum {
            eigenvalues: values,
            eigenvectors: Some(vectors),
        }
    } else {
        Spectrum {
            eigenvalues: rho.eigenvalues.clone(),
            eigenvectors: None,
        }
    }
}

/// `S(ρ) = −Tr ρ ln ρ`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    shannon_of(&rho.eigenvalues)
}

/// `S_α(ρ) = (1 − Tr ρ^α)/(α − 1)`; von Neumann at `α = 1`.
pub fn alpha_entropy_q(rho: &DensityMatrix, a: Alpha) -> f64 {
    alpha_entropy_of(&rho.eigenvalues, a)
}

/// Umegaki relative entropy `S(ρ‖σ) = Tr ρ ln ρ − Tr ρ ln σ`.
///
/// Returns `+∞` when an eigenvector of ρ with eigenvalue above
/// [`SUPPORT_TOL`] has more than `SUPPORT_TOL` squared weight on the
/// null space of σ.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    let (lr, ur) = hermitian_eigen(&rho.entries);
    let (ls, us) = hermitian_eigen(&sigma.entries);
    // overlaps[(i, j)] = |<u_i | v_j>|²
    let overlaps = (ur.adjoint() * &us).map(|z| z.norm_sqr());
    let mut tr_rho_ln_rho = 0.0;
    let mut tr_rho_ln_sigma = 0.0;
    for (i, &l) in lr.iter().enumerate() {
        let l = l.max(0.0);
        if l <= SUPPORT_TOL {
            continue;
        }
        tr_rho_ln_rho += xlogx(l);
        let mut null_weight = 0.0;
        for (j, &m) in ls.iter().enumerate() {
            let w = overlaps[(i, j)];
            if m <= SUPPORT_TOL {
                null_weight += w;
            } else {
                tr_rho_ln_sigma += l * w * m.ln();
            }
        }
        if null_weight > SUPPORT_TOL {
            return Ok(f64::INFINITY);
        }
    }
    Ok((tr_rho_ln_rho - tr_rho_ln_sigma).max(0.0))
}

fn difference_eigenvalues(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Vec<f64>> {
    same_dim(rho, sigma)?;
    Ok(hermitian_eigenvalues(&(&rho.entries - &sigma.entries)))
}

/// Trace norm `‖ρ − σ‖₁ = Σ|μ_i|` over the eigenvalues of the difference; in `[0, 2]`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(difference_eigenvalues(rho, sigma)?
        .iter()
        .map(|m| m.abs())
        .sum())
}

/// Squared Hilbert–Schmidt distance `Tr (ρ − σ)²`.
pub fn hs_distance_sq(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    Ok((&rho.entries - &sigma.entries)
        .iter()
        .map(|z| z.norm_sqr())
        .sum())
}

fn require_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() == 2 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: 2,
            right: rho.dim(),
        })
    }
}

/// Closed-form qubit spectrum `λ± = 1/2 ± √(2 Tr ρ² − 1)/2`.
pub fn qubit_mixture_eigenvalues(rho: &DensityMatrix) -> Result<(f64, f64)> {
    require_qubit(rho)?;
    let r = (2.0 * rho.purity() - 1.0).max(0.0).sqrt();
    Ok((0.5 + 0.5 * r, 0.5 - 0.5 * r))
}

/// The two nonzero eigenvalues of `(ρ₁ + ρ₂)/2` for pure `ρ₁, ρ₂`:
/// `λ± = 1/2 ± √(Tr ρ₁ρ₂)/2`.
pub fn pure_overlap_eigenvalues(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<(f64, f64)> {
    same_dim(rho1, rho2)?;
    for r in [rho1, rho2] {
        if !r.is_pure() {
            return Err(Error::NotPure(r.eigenvalues[0]));
        }
    }
    let overlap = hs_inner(rho1, rho2).clamp(0.0, 1.0);
    let r = overlap.sqrt();
    Ok((0.5 + 0.5 * r, 0.5 - 0.5 * r))
}

/// `Tr(ρσ)` for Hermitian ρ, σ.
pub fn hs_inner(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    rho.entries
        .iter()
        .zip(sigma.entries.transpose().iter())
        .map(|(a, b)| (a * b).re)
        .sum()
}

/// `Tr e^{−tρ} = 2e^{−t/2} cosh((t/2)√(2 Tr ρ² − 1))` for a qubit.
pub fn trace_exp_qubit(rho: &DensityMatrix, t: f64) -> Result<f64> {
    require_qubit(rho)?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            range: "[0, inf)",
        });
    }
    let r = (2.0 * rho.purity() - 1.0).max(0.0).sqrt();
    Ok(2.0 * (-t / 2.0).exp() * (t / 2.0 * r).cosh())
}

/// `Tr e^{−tρ}` in any dimension, via the spectrum.
pub fn trace_exp(rho: &DensityMatrix, t: f64) -> f64 {
    rho.eigenvalues.iter().map(|l| (-t * l).exp()).sum()
}

#[derive(Serialize, Deserialize)]
struct DensityRepr {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for DensityMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let d = self.dim();
        DensityRepr {
            dim: d,
            entries: (0..d)
                .map(|r| {
                    (0..d)
                        .map(|c| [self.entries[(r, c)].re, self.entries[(r, c)].im])
                        .collect()
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = DensityRepr::deserialize(d)?;
        let n = repr.dim;
        if repr.entries.len() != n || repr.entries.iter().any(|row| row.len() != n) {
            return Err(D::Error::custom(format!("entries must be {n}x{n}")));
        }
        validate_density(CMatrix::from_fn(n, n, |r, c| {
            let [re, im] = repr.entries[r][c];
            C64::new(re, im)
        }))
        .map_err(D::Error::custom)
    }
}

//! Positive-definiteness of midpoint kernels `K_ij = φ((x_i + x_j)/2)`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::min_eigenpair;
use crate::error::{Error, Result};
use crate::quantum::{self, DensityMatrix};

/// Which coefficient vectors `c` the form `cᵀKc ≥ 0` must hold for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelDomain {
    /// Every `c`.
    Full,
    /// Only `c` with `Σc = 0`.
    SumZero,
}

/// Scalar functions on the real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScalarFn {
    /// `φ(x) = x`.
    Linear,
    /// `φ(x) = e^{−tx}`.
    ExpNeg { t: f64 },
}

impl ScalarFn {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            ScalarFn::Linear => x,
            ScalarFn::ExpNeg { t } => (-t * x).exp(),
        }
    }
}

/// Functions on density matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateFn {
    /// `φ(ρ) = Tr e^{−tρ}`.
    TraceExpNeg { t: f64 },
}

impl StateFn {
    pub fn eval(&self, rho: &DensityMatrix) -> f64 {
        match *self {
            StateFn::TraceExpNeg { t } => quantum::trace_exp(rho, t),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsdReport {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    /// Unit `c` (sum-zero on [`KernelDomain::SumZero`]) with `cᵀKc < 0`, on failure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_vector: Option<Vec<f64>>,
    pub tolerance: f64,
}

/// PSD test of a symmetric kernel matrix; default tolerance `1e−9·n·max|K|`.
pub fn psd_check(k: &DMatrix<f64>, domain: KernelDomain, tol: Option<f64>) -> Result<PsdReport> {
    let (rows, cols) = k.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    if rows == 0 {
        return Err(Error::InvalidInput("empty kernel".into()));
    }
    let n = rows;
    let scale = k.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tol = tol.unwrap_or(1e-9 * n as f64 * scale);
    let sym = (k + k.transpose()) * 0.5;
    let (lambda, c) = match domain {
        KernelDomain::Full => {
            let (l, u) = min_eigenpair(sym);
            (l, u)
        }
        KernelDomain::SumZero => {
            if n < 2 {
                return Ok(PsdReport {
                    is_psd: true,
                    min_eigenvalue: 0.0,
                    witness_vector: None,
                    tolerance: tol,
                });
            }
            let q = super::sum_zero_basis(n);
            let (l, u) = min_eigenpair(q.transpose() * sym * &q);
            (l, q * u)
        }
    };
    let ok = lambda >= -tol;
    Ok(PsdReport {
        is_psd: ok,
        min_eigenvalue: lambda,
        witness_vector: (!ok).then(|| {
            let c = &c / c.norm();
            c.iter().copied().collect()
        }),
        tolerance: tol,
    })
}

fn midpoint_kernel(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> DMatrix<f64> {
    let mut k = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = f(i, j);
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    k
}

/// Builds `K_ij = φ((x_i + x_j)/2)` and tests it for positive semidefiniteness.
pub fn exp_convexity_check(
    phi: &ScalarFn,
    samples: &[f64],
    domain: KernelDomain,
    tol: Option<f64>,
) -> Result<PsdReport> {
    if samples.len() < 2 {
        return Err(Error::InvalidInput("need at least two samples".into()));
    }
    if let Some(i) = samples.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite { index: i });
    }
    let k = midpoint_kernel(samples.len(), |i, j| {
        phi.eval(0.5 * (samples[i] + samples[j]))
    });
    psd_check(&k, domain, tol)
}

/// State version of [`exp_convexity_check`], with `K_ij = φ((ρ_i + ρ_j)/2)`.
pub fn state_exp_convexity_check(
    phi: &StateFn,
    samples: &[DensityMatrix],
    domain: KernelDomain,
    tol: Option<f64>,
) -> Result<PsdReport> {
    if samples.len() < 2 {
        return Err(Error::InvalidInput("need at least two samples".into()));
    }
    let mut err = None;
    let k = midpoint_kernel(samples.len(), |i, j| {
        match DensityMatrix::mixture(&[0.5, 0.5], &[samples[i].clone(), samples[j].clone()]) {
            Ok(mid) => phi.eval(&mid),
            Err(e) => {
                err.get_or_insert(e);
                f64::NAN
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    psd_check(&k, domain, tol)
}

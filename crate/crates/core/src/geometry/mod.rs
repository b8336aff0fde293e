//! Squared-distance matrices: negative-type certification, Cayley–Menger
//! determinants, spectral embedding into Euclidean space and triangle gaps.

mod counterexample;
mod integral;
mod kernel;

pub use counterexample::{
    cm_leading_coefficient, cm_leading_sign, counterexample_energy, counterexample_numerator,
    counterexample_points, quadruple_cm_determinant, quadruple_divergence_matrix, quadruple_points,
    s_alpha_even_derivative, two_point_jd,
};
pub use integral::power_integral;
pub use kernel::{
    exp_convexity_check, psd_check, state_exp_convexity_check, KernelDomain, PsdReport, ScalarFn,
    StateFn,
};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::classical::Alpha;
use crate::error::{Error, Result};
use crate::jensen::{jensen_pair, JensenMember};

/// Entries this far from symmetric, zero-diagonal or nonnegative are noise.
pub const ENTRY_TOL: f64 = 1e-12;
/// Largest point count accepted by [`menger_embeddability`].
pub const MENGER_MAX_POINTS: usize = 12;
/// Centered eigenvalues at or below `EMBED_RANK_TOL · scale` are dropped.
pub const EMBED_RANK_TOL: f64 = 1e-10;
/// Largest pairwise reconstruction error [`embed`] accepts.
pub const RECONSTRUCTION_TOL: f64 = 1e-8;

/// Symmetric, zero-diagonal matrix of squared distances (divergence values).
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    d: DMatrix<f64>,
    labels: Option<Vec<String>>,
}

impl DistanceMatrix {
    pub fn new(d: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = d.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::InvalidDistanceMatrix("no points".into()));
        }
        if let Some(i) = d.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        let n = rows;
        let mut out = DMatrix::zeros(n, n);
        for i in 0..n {
            if d[(i, i)].abs() > ENTRY_TOL {
                return Err(Error::InvalidDistanceMatrix(format!(
                    "diagonal entry {i} is {}",
                    d[(i, i)]
                )));
            }
            for j in (i + 1)..n {
                let (a, b) = (d[(i, j)], d[(j, i)]);
                if (a - b).abs() > ENTRY_TOL {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "asymmetric at ({i}, {j}): {a} vs {b}"
                    )));
                }
                let m = 0.5 * (a + b);
                if m < -ENTRY_TOL {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "negative entry {m} at ({i}, {j})"
                    )));
                }
                out[(i, j)] = m.max(0.0);
                out[(j, i)] = m.max(0.0);
            }
        }
        Ok(DistanceMatrix {
            d: out,
            labels: None,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: r.len(),
            });
        }
        DistanceMatrix::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::LabelMismatch {
                labels: labels.len(),
                probs: self.n(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.d.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.d
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// `max |D_ij|`.
    pub fn scale(&self) -> f64 {
        self.d.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// The principal submatrix on `idx`.
    pub fn subset(&self, idx: &[usize]) -> Result<Self> {
        for &i in idx {
            if i >= self.n() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: self.n(),
                });
            }
        }
        let k = idx.len();
        DistanceMatrix::new(DMatrix::from_fn(k, k, |a, b| self.d[(idx[a], idx[b])]))
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.d
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct DistanceRepr {
    n: usize,
    d: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Serialize for DistanceMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DistanceRepr {
            n: self.n(),
            d: self.rows(),
            labels: self.labels.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DistanceMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = DistanceRepr::deserialize(de)?;
        if r.d.len() != r.n {
            return Err(D::Error::custom(format!(
                "n = {} but {} rows",
                r.n,
                r.d.len()
            )));
        }
        let m = DistanceMatrix::from_rows(&r.d).map_err(D::Error::custom)?;
        match r.labels {
            Some(l) => m.with_labels(l).map_err(D::Error::custom),
            None => Ok(m),
        }
    }
}

/// Pairwise `JD_α` (or `QJD_α`) matrix of a homogeneous point set.
pub fn divergence_matrix<M: JensenMember>(points: &[M], a: Alpha) -> Result<DistanceMatrix> {
    if points.len() < 2 {
        return Err(Error::InvalidInput("need at least two points".into()));
    }
    let n = points.len();
    let mut d = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = jensen_pair(&points[i], &points[j], a)?.value;
            d[(i, j)] = v;
            d[(j, i)] = v;
        }
    }
    DistanceMatrix::new(d)
}

/// Result of testing `cᵀDc ≤ 0` over sum-zero `c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativeTypeReport {
    pub is_negative_type: bool,
    /// Smallest eigenvalue of `−½JDJ` on the sum-zero subspace.
    pub witness_min_eigenvalue: f64,
    /// Unit sum-zero `c` with `cᵀDc = −2·witness_min_eigenvalue`, on failure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_vector: Option<Vec<f64>>,
    pub tolerance: f64,
}

/// Orthonormal basis of `{c : Σc = 0}` as the columns of an `n × (n−1)`
/// Helmert matrix.
fn sum_zero_basis(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n.saturating_sub(1), |i, k| {
        let k1 = (k + 1) as f64;
        let norm = (k1 * (k1 + 1.0)).sqrt();
        if i <= k {
            1.0 / norm
        } else if i == k + 1 {
            -k1 / norm
        } else {
            0.0
        }
    })
}

/// Default tolerance `1e−9 · n · max|D|`.
pub fn default_tolerance(d: &DistanceMatrix) -> f64 {
    1e-9 * d.n() as f64 * d.scale()
}

/// Smallest eigenpair of a symmetric matrix.
pub(crate) fn min_eigenpair(m: DMatrix<f64>) -> (f64, DVector<f64>) {
    let eig = m.symmetric_eigen();
    let (i, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    (lambda, eig.eigenvectors.column(i).into_owned())
}

/// Certifies negative type by checking that `G = −½JDJ` is PSD on the
/// sum-zero subspace (the all-ones direction deflated).
pub fn negative_type_check(d: &DistanceMatrix, tol: Option<f64>) -> NegativeTypeReport {
    let n = d.n();
    let tol = tol.unwrap_or_else(|| default_tolerance(d));
    if n < 2 {
        return NegativeTypeReport {
            is_negative_type: true,
            witness_min_eigenvalue: 0.0,
            witness_vector: None,
            tolerance: tol,
        };
    }
    let q = sum_zero_basis(n);
    let g = q.transpose() * (d.matrix() * -0.5) * &q;
    let (lambda, u) = min_eigenpair(g);
    let ok = lambda >= -tol;
    let witness_vector = (!ok).then(|| {
        let c = &q * u;
        let c = &c / c.norm();
        c.iter().copied().collect()
    });
    NegativeTypeReport {
        is_negative_type: ok,
        witness_min_eigenvalue: lambda,
        witness_vector,
        tolerance: tol,
    }
}

/// `cᵀDc`.
pub fn quadratic_form(d: &DistanceMatrix, c: &[f64]) -> Result<f64> {
    if c.len() != d.n() {
        return Err(Error::LengthMismatch {
            left: d.n(),
            right: c.len(),
        });
    }
    let v = DVector::from_column_slice(c);
    Ok(v.dot(&(d.matrix() * &v)))
}

fn bordered(d: &DMatrix<f64>) -> DMatrix<f64> {
    let n = d.nrows();
    DMatrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
        (true, true) => d[(i, j)],
        (false, false) => 0.0,
        _ => 1.0,
    })
}

/// Determinant of the bordered matrix `[[D, e], [eᵀ, 0]]`.
pub fn cayley_menger_det(d: &DistanceMatrix) -> f64 {
    bordered(d.matrix()).lu().determinant()
}

/// Menger's criterion: `(−1)^|Y| det CM(Y) ≥ −tol` for every subset of two or
/// more points. The tolerance for `|Y| = k` is `2^{k−1}·1e−9·(n·max|D|)^{k−1}`.
pub fn menger_embeddability(d: &DistanceMatrix) -> Result<bool> {
    menger_embeddability_scaled(d, 1.0)
}

/// [`menger_embeddability`] with every tolerance multiplied by `tol_scale`.
pub fn menger_embeddability_scaled(d: &DistanceMatrix, tol_scale: f64) -> Result<bool> {
    let n = d.n();
    if n > MENGER_MAX_POINTS {
        return Err(Error::TooManyPoints {
            n,
            max: MENGER_MAX_POINTS,
        });
    }
    let unit = n as f64 * d.scale();
    for mask in 1u32..(1 << n) {
        let k = mask.count_ones() as usize;
        if k < 2 {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub = DMatrix::from_fn(k, k, |a, b| d.matrix()[(idx[a], idx[b])]);
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        let det = bordered(&sub).lu().determinant();
        let tol = tol_scale * 2f64.powi(k as i32 - 1) * 1e-9 * unit.powi(k as i32 - 1);
        if sign * det < -tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Euclidean coordinates whose squared pairwise distances reproduce `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub coords: DMatrix<f64>,
    pub reconstruction_error: f64,
}

impl Embedding {
    pub fn dim(&self) -> usize {
        self.coords.ncols()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.coords
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct EmbeddingRepr {
    coords: Vec<Vec<f64>>,
    reconstruction_error: f64,
}

impl Serialize for Embedding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EmbeddingRepr {
            coords: self.rows(),
            reconstruction_error: self.reconstruction_error,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Embedding {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = EmbeddingRepr::deserialize(de)?;
        let n = r.coords.len();
        let m = r.coords.first().map_or(0, Vec::len);
        if r.coords.iter().any(|row| row.len() != m) {
            return Err(D::Error::custom("ragged coords"));
        }
        Ok(Embedding {
            coords: DMatrix::from_fn(n, m, |i, j| r.coords[i][j]),
            reconstruction_error: r.reconstruction_error,
        })
    }
}

/// `max_{i<j} |‖x_i − x_j‖² − D_ij|`.
pub fn reconstruction_error(coords: &DMatrix<f64>, d: &DistanceMatrix) -> f64 {
    let n = d.n();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let dist2 = (coords.row(i) - coords.row(j)).norm_squared();
            worst = worst.max((dist2 - d.get(i, j)).abs());
        }
    }
    worst
}

/// Classical multidimensional scaling: eigendecompose `G = −½JDJ` and take
/// `V√Λ` over eigenvalues above `1e−10·max|D|`.
pub fn embed(d: &DistanceMatrix) -> Result<Embedding> {
    embed_scaled(d, 1.0)
}

/// [`embed`] with the negative-type and reconstruction tolerances multiplied
/// by `tol_scale`.
pub fn embed_scaled(d: &DistanceMatrix, tol_scale: f64) -> Result<Embedding> {
    let report = negative_type_check(d, Some(tol_scale * default_tolerance(d)));
    if !report.is_negative_type {
        return Err(Error::NotNegativeType(Box::new(report)));
    }
    let n = d.n();
    let j = DMatrix::from_fn(n, n, |a, b| if a == b { 1.0 } else { 0.0 } - 1.0 / n as f64);
    let g = &j * (d.matrix() * -0.5) * &j;
    let g = (&g + g.transpose()) * 0.5;
    let eig = g.symmetric_eigen();
    let cutoff = EMBED_RANK_TOL * d.scale();
    let mut keep: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] > cutoff).collect();
    keep.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let coords = DMatrix::from_fn(n, keep.len(), |i, c| {
        let k = keep[c];
        eig.eigenvectors[(i, k)] * eig.eigenvalues[k].sqrt()
    });
    let err = reconstruction_error(&coords, d);
    if err > tol_scale * RECONSTRUCTION_TOL {
        return Err(Error::Reconstruction(err));
    }
    Ok(Embedding {
        coords,
        reconstruction_error: err,
    })
}

/// `√D_ij + √D_jk − √D_ik`; negative when the root-distances break the
/// triangle inequality on this triple.
pub fn triangle_gap(d: &DistanceMatrix, i: usize, j: usize, k: usize) -> Result<f64> {
    let n = d.n();
    for idx in [i, j, k] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, n });
        }
    }
    if i == j || j == k || i == k {
        return Err(Error::RepeatedIndex);
    }
    let r = |a: usize, b: usize| d.get(a, b).max(0.0).sqrt();
    Ok(r(i, j) + r(j, k) - r(i, k))
}

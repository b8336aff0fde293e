//! Reproducible random inputs: Dirichlet(1) distributions, Ginibre mixed
//! states, Haar-ish pure states and unitaries. Callers own the RNG so a
//! single seed drives a whole run.

use rand::Rng;
use rand_distr::{Distribution as _, Exp1, StandardNormal};

use crate::classical::Distribution;
use crate::quantum::{validate_density, CMatrix, DensityMatrix, C64};

/// Uniform draw from the probability simplex on `n` letters.
pub fn distribution<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Distribution {
    loop {
        let w: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
        let s: f64 = w.iter().sum();
        if s > 0.0 {
            if let Ok(d) = Distribution::new(w.iter().map(|x| x / s).collect()) {
                return d;
            }
        }
    }
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| complex_gaussian(rng))
}

/// `G G† / Tr(G G†)` with i.i.d. standard complex Gaussian `G`.
pub fn ginibre_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DensityMatrix {
    loop {
        let g = ginibre(rng, d);
        let w = &g * g.adjoint();
        let tr = w.trace().re;
        if let Ok(rho) = validate_density(w / C64::new(tr, 0.0)) {
            return rho;
        }
    }
}

/// Projector onto a normalized complex Gaussian vector.
pub fn pure_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DensityMatrix {
    loop {
        let psi: Vec<C64> = (0..d).map(|_| complex_gaussian(rng)).collect();
        if let Ok(rho) = DensityMatrix::pure(&psi) {
            return rho;
        }
    }
}

/// Unitary from the QR factorization of a Ginibre matrix, with the phases
/// of `R`'s diagonal folded back into `Q`.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let qr = ginibre(rng, d).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..d {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 0.0 {
            diag / diag.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

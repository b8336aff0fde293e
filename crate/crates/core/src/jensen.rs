//! Jensen divergences of order α for weighted families of distributions or
//! states, the redundancy of coding for a fixed distribution, and the
//! compensation / Donald identities around the barycenter.

use serde::{Deserialize, Serialize};

use crate::classical::{self, Alpha, Distribution};
use crate::error::{Error, Result};
use crate::quantum::{self, DensityMatrix};

/// What a Jensen divergence can be taken over: anything with an order-α
/// entropy, a mixture operation and a relative entropy.
pub trait JensenMember: Sized + Clone {
    /// Agreement required between the entropy-difference and the
    /// averaged-divergence forms at α = 1.
    const CROSS_CHECK_TOL: f64;

    /// Alphabet size or Hilbert-space dimension.
    fn size(&self) -> usize;
    fn alpha_entropy(&self, a: Alpha) -> f64;
    fn mix(weights: &[f64], members: &[Self]) -> Result<Self>;
    /// `D(self‖other)` or `S(self‖other)`; may be `+∞`.
    fn divergence_to(&self, other: &Self) -> Result<f64>;
}

impl JensenMember for Distribution {
    const CROSS_CHECK_TOL: f64 = 1e-10;

    fn size(&self) -> usize {
        self.len()
    }

    fn alpha_entropy(&self, a: Alpha) -> f64 {
        classical::alpha_entropy(self, a)
    }

    fn mix(weights: &[f64], members: &[Self]) -> Result<Self> {
        Distribution::mixture(weights, members)
    }

    fn divergence_to(&self, other: &Self) -> Result<f64> {
        classical::kl_divergence(self, other)
    }
}

impl JensenMember for DensityMatrix {
    const CROSS_CHECK_TOL: f64 = 1e-9;

    fn size(&self) -> usize {
        self.dim()
    }

    fn alpha_entropy(&self, a: Alpha) -> f64 {
        quantum::alpha_entropy_q(self, a)
    }

    fn mix(weights: &[f64], members: &[Self]) -> Result<Self> {
        DensityMatrix::mixture(weights, members)
    }

    fn divergence_to(&self, other: &Self) -> Result<f64> {
        quantum::relative_entropy(self, other)
    }
}

/// `k` members of one kind and size, with mixing weights `π`.
#[derive(Debug, Clone)]
pub struct Family<M> {
    weights: Distribution,
    members: Vec<M>,
}

pub type ClassicalFamily = Family<Distribution>;
pub type QuantumFamily = Family<DensityMatrix>;

impl<M: JensenMember> Family<M> {
    pub fn new(weights: Distribution, members: Vec<M>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidFamily("no members".into()));
        }
        if weights.len() != members.len() {
            return Err(Error::InvalidFamily(format!(
                "{} weights for {} members",
                weights.len(),
                members.len()
            )));
        }
        let size = members[0].size();
        if let Some(bad) = members.iter().find(|m| m.size() != size) {
            return Err(Error::InvalidFamily(format!(
                "members have sizes {size} and {}",
                bad.size()
            )));
        }
        Ok(Family { weights, members })
    }

    /// The even mixture of two members.
    pub fn pair(p: M, q: M) -> Result<Self> {
        Family::new(Distribution::new(vec![0.5, 0.5])?, vec![p, q])
    }

    pub fn weights(&self) -> &[f64] {
        self.weights.probs()
    }

    pub fn members(&self) -> &[M] {
        &self.members
    }

    /// Member size (alphabet size or dimension).
    pub fn size(&self) -> usize {
        self.members[0].size()
    }

    /// Barycenter `Σ π_i M_i`.
    pub fn barycenter(&self) -> Result<M> {
        M::mix(self.weights(), &self.members)
    }

    fn terms(&self) -> impl Iterator<Item = (f64, &M)> {
        self.weights
            .probs()
            .iter()
            .copied()
            .zip(&self.members)
            .filter(|(w, _)| *w > 0.0)
    }

    fn weighted_divergence_to(&self, target: &M) -> Result<f64> {
        let mut acc = 0.0;
        for (w, m) in self.terms() {
            acc += w * m.divergence_to(target)?;
        }
        Ok(acc)
    }
}

/// Which formula produced [`DivergenceResult::value`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Via {
    EntropyDifference,
    KlAverage,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceResult {
    pub value: f64,
    pub alpha: f64,
    pub via: Via,
    /// The averaged-divergence value, when it was computed as a cross-check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<f64>,
}

fn clamp_noise(v: f64) -> f64 {
    if v < 0.0 && v > -1e-12 {
        0.0
    } else {
        v
    }
}

/// `S_α(Σ π_i M_i) − Σ π_i S_α(M_i)`. At α = 1 the averaged relative
/// entropy `Σ π_i D(M_i‖M̄)` is computed as well and must agree.
pub fn jensen_general<M: JensenMember>(fam: &Family<M>, a: Alpha) -> Result<DivergenceResult> {
    let bar = fam.barycenter()?;
    let mut mean_entropy = 0.0;
    for (w, m) in fam.terms() {
        mean_entropy += w * m.alpha_entropy(a);
    }
    let value = clamp_noise(bar.alpha_entropy(a) - mean_entropy);
    let cross_check = if a.is_shannon() {
        let kl = fam.weighted_divergence_to(&bar)?;
        let gap = (value - kl).abs();
        if gap.is_nan() || gap > M::CROSS_CHECK_TOL {
            return Err(Error::FormulaMismatch {
                entropy_difference: value,
                kl_average: kl,
            });
        }
        Some(kl)
    } else {
        None
    };
    Ok(DivergenceResult {
        value,
        alpha: a.value(),
        via: Via::EntropyDifference,
        cross_check,
    })
}

/// Even-mixture Jensen divergence of order α between two members.
pub fn jensen_pair<M: JensenMember>(p: &M, q: &M, a: Alpha) -> Result<DivergenceResult> {
    if p.size() != q.size() {
        return Err(Error::LengthMismatch {
            left: p.size(),
            right: q.size(),
        });
    }
    let mix = M::mix(&[0.5, 0.5], &[p.clone(), q.clone()])?;
    let value = clamp_noise(mix.alpha_entropy(a) - 0.5 * (p.alpha_entropy(a) + q.alpha_entropy(a)));
    Ok(DivergenceResult {
        value,
        alpha: a.value(),
        via: Via::EntropyDifference,
        cross_check: None,
    })
}

/// Jensen–Shannon divergence `JD^π`, cross-checked against `Σ π_i D(P_i‖P̄)`.
pub fn jd_general(fam: &ClassicalFamily) -> Result<DivergenceResult> {
    jensen_general(fam, Alpha::SHANNON)
}

pub fn jd_alpha_general(fam: &ClassicalFamily, a: Alpha) -> Result<DivergenceResult> {
    jensen_general(fam, a)
}

pub fn jd_alpha(p: &Distribution, q: &Distribution, a: Alpha) -> Result<DivergenceResult> {
    jensen_pair(p, q, a)
}

/// Quantum Jensen–Shannon divergence `QJD^π`, cross-checked against
/// `Σ π_i S(ρ_i‖ρ̄)`.
pub fn qjd_general(fam: &QuantumFamily) -> Result<DivergenceResult> {
    jensen_general(fam, Alpha::SHANNON)
}

pub fn qjd_alpha_general(fam: &QuantumFamily, a: Alpha) -> Result<DivergenceResult> {
    jensen_general(fam, a)
}

pub fn qjd_alpha(rho: &DensityMatrix, sigma: &DensityMatrix, a: Alpha) -> Result<DivergenceResult> {
    jensen_pair(rho, sigma, a)
}

fn check_target<M: JensenMember>(fam: &Family<M>, target: &M) -> Result<()> {
    if target.size() == fam.size() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            left: fam.size(),
            right: target.size(),
        })
    }
}

/// Mean redundancy `R(Q) = Σ π_i D(P_i‖Q)` of coding for `Q`; `+∞` propagates.
pub fn redundancy(fam: &ClassicalFamily, q: &Distribution) -> Result<f64> {
    check_target(fam, q)?;
    fam.weighted_divergence_to(q)
}

/// Quantum mean redundancy `R(σ) = Σ π_i S(ρ_i‖σ)`.
pub fn q_redundancy(fam: &QuantumFamily, sigma: &DensityMatrix) -> Result<f64> {
    check_target(fam, sigma)?;
    fam.weighted_divergence_to(sigma)
}

fn barycentric_residual<M: JensenMember>(fam: &Family<M>, target: &M) -> Result<f64> {
    check_target(fam, target)?;
    let bar = fam.barycenter()?;
    let total = fam.weighted_divergence_to(target)?;
    let inner = fam.weighted_divergence_to(&bar)?;
    let outer = bar.divergence_to(target)?;
    if !(total.is_finite() && inner.is_finite() && outer.is_finite()) {
        return Err(Error::InfiniteDivergence);
    }
    Ok((total - inner - outer).abs())
}

/// `|Σπ_i D(P_i‖Q) − Σπ_i D(P_i‖P̄) − D(P̄‖Q)|`, zero up to rounding.
pub fn compensation_residual(fam: &ClassicalFamily, q: &Distribution) -> Result<f64> {
    barycentric_residual(fam, q)
}

/// `|R(σ) − Σπ_i S(ρ_i‖ρ̄) − S(ρ̄‖σ)|`, zero up to rounding.
pub fn donald_residual(fam: &QuantumFamily, sigma: &DensityMatrix) -> Result<f64> {
    barycentric_residual(fam, sigma)
}

/// The Holevo quantity `χ = QJD^π(ρ_1, …, ρ_k)` of an ensemble.
pub fn holevo_bound(fam: &QuantumFamily) -> Result<f64> {
    Ok(qjd_general(fam)?.value)
}

/// A family as read from JSON, tagged by `kind`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeightedFamily {
    Classical {
        weights: Distribution,
        members: Vec<Distribution>,
    },
    Quantum {
        weights: Distribution,
        members: Vec<DensityMatrix>,
    },
}

impl WeightedFamily {
    pub fn into_classical(self) -> Result<ClassicalFamily> {
        match self {
            WeightedFamily::Classical { weights, members } => Family::new(weights, members),
            WeightedFamily::Quantum { .. } => {
                Err(Error::InvalidFamily("expected a classical family".into()))
            }
        }
    }

    pub fn into_quantum(self) -> Result<QuantumFamily> {
        match self {
            WeightedFamily::Quantum { weights, members } => Family::new(weights, members),
            WeightedFamily::Classical { .. } => {
                Err(Error::InvalidFamily("expected a quantum family".into()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::C64;
    use crate::random;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::LN_2;

    fn d(v: &[f64]) -> Distribution {
        Distribution::new(v.to_vec()).unwrap()
    }

    fn a(x: f64) -> Alpha {
        Alpha::new(x).unwrap()
    }

    fn fam(w: &[f64], m: &[&[f64]]) -> ClassicalFamily {
        Family::new(d(w), m.iter().map(|x| d(x)).collect()).unwrap()
    }

    fn ket(v: &[(f64, f64)]) -> DensityMatrix {
        DensityMatrix::pure(&v.iter().map(|&(r, i)| C64::new(r, i)).collect::<Vec<_>>()).unwrap()
    }

    /// S_α on a slice, written out directly as an independent oracle.
    fn s_alpha(p: &[f64], alpha: f64) -> f64 {
        (1.0 - p.iter().map(|x| x.powf(alpha)).sum::<f64>()) / (alpha - 1.0)
    }

    #[test]
    fn family_validation() {
        assert!(Family::new(d(&[1.0]), Vec::<Distribution>::new()).is_err());
        assert!(Family::new(d(&[0.5, 0.5]), vec![d(&[1.0])]).is_err());
        assert!(Family::new(d(&[0.5, 0.5]), vec![d(&[1.0]), d(&[0.5, 0.5])]).is_err());
    }

    #[test]
    fn jd_general_examples() {
        let same = fam(&[0.2, 0.8], &[&[0.3, 0.7], &[0.3, 0.7]]);
        assert_eq!(jd_general(&same).unwrap().value, 0.0);

        let disjoint = fam(&[0.5, 0.5], &[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!((jd_general(&disjoint).unwrap().value - LN_2).abs() < 1e-15);

        let r = jd_general(&fam(&[1.0 / 3.0, 2.0 / 3.0], &[&[0.5, 0.5], &[0.25, 0.75]])).unwrap();
        assert!((r.value - r.cross_check.unwrap()).abs() < 1e-12);
        assert_eq!(r.via, Via::EntropyDifference);
    }

    #[test]
    fn jd_alpha_general_examples() {
        let same = fam(&[0.5, 0.5], &[&[0.1, 0.9], &[0.1, 0.9]]);
        assert_eq!(jd_alpha_general(&same, a(2.5)).unwrap().value, 0.0);

        let f = fam(&[0.3, 0.7], &[&[0.2, 0.5, 0.3], &[0.6, 0.1, 0.3]]);
        assert_eq!(
            jd_alpha_general(&f, Alpha::SHANNON).unwrap().value,
            jd_general(&f).unwrap().value
        );

        let pr = fam(&[0.5, 0.5], &[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!((jd_alpha_general(&pr, a(2.0)).unwrap().value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn jd_alpha_examples() {
        let p = d(&[0.0, 1.0]);
        let q = d(&[0.5, 0.5]);
        let r = d(&[1.0, 0.0]);
        assert_eq!(jd_alpha(&q, &q, a(1.7)).unwrap().value, 0.0);
        for alpha in [0.3, 1.0, 1.5, 2.0, 2.5, 4.0] {
            let expect = crate::classical::alpha_entropy(&q, a(alpha));
            assert!((jd_alpha(&p, &r, a(alpha)).unwrap().value - expect).abs() < 1e-15);
        }
        // 40-digit evaluation of S_2.5(1/4,3/4) − S_2.5(1/2,1/2)/2
        let v = jd_alpha(&p, &q, a(2.5)).unwrap().value;
        assert!((v - 0.105_591_603_778_593_43).abs() < 1e-15);
        assert!(matches!(
            jd_alpha(&p, &d(&[1.0]), a(1.0)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn qjd_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = random::ginibre_state(&mut rng, 3);
        assert_eq!(qjd_alpha(&rho, &rho, a(1.5)).unwrap().value, 0.0);
        let same = Family::pair(rho.clone(), rho.clone()).unwrap();
        assert_eq!(qjd_general(&same).unwrap().value, 0.0);

        let zero = ket(&[(1.0, 0.0), (0.0, 0.0)]);
        let one = ket(&[(0.0, 0.0), (1.0, 0.0)]);
        let orth = Family::pair(zero.clone(), one.clone()).unwrap();
        assert!((qjd_general(&orth).unwrap().value - LN_2).abs() < 1e-14);
        assert!((qjd_alpha(&zero, &one, a(2.0)).unwrap().value - 0.5).abs() < 1e-14);

        // commuting diagonal family reduces to the classical one
        let ps = [
            d(&[0.2, 0.3, 0.5]),
            d(&[0.6, 0.3, 0.1]),
            d(&[0.1, 0.1, 0.8]),
        ];
        let w = d(&[0.2, 0.5, 0.3]);
        let cf = Family::new(w.clone(), ps.to_vec()).unwrap();
        let qf = Family::new(
            w,
            ps.iter()
                .map(|p| DensityMatrix::diagonal(p.probs()).unwrap())
                .collect(),
        )
        .unwrap();
        assert!((qjd_general(&qf).unwrap().value - jd_general(&cf).unwrap().value).abs() < 1e-14);
        for alpha in [0.5, 1.5, 2.0] {
            let q = qjd_alpha_general(&qf, a(alpha)).unwrap().value;
            let c = jd_alpha_general(&cf, a(alpha)).unwrap().value;
            assert!((q - c).abs() < 1e-14);
        }
    }

    #[test]
    fn qjd_alpha_matches_spectral_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let al = a(1.5);
        for _ in 0..50 {
            let r = random::ginibre_state(&mut rng, 2);
            let s = random::ginibre_state(&mut rng, 2);
            let mix = DensityMatrix::mixture(&[0.5, 0.5], &[r.clone(), s.clone()]).unwrap();
            let expect = s_alpha(mix.eigenvalues(), 1.5)
                - 0.5 * s_alpha(r.eigenvalues(), 1.5)
                - 0.5 * s_alpha(s.eigenvalues(), 1.5);
            assert!((qjd_alpha(&r, &s, al).unwrap().value - expect).abs() < 1e-13);
            if !r.commutes_with(&s, 1e-8) {
                // the classical JD of the spectra is a different number
                let cr = d(r.eigenvalues());
                let cs = d(s.eigenvalues());
                let classical = jd_alpha(&cr, &cs, al).unwrap().value;
                assert!((classical - expect).abs() > 1e-12);
            }
        }
    }

    #[test]
    fn redundancy_examples() {
        let f = fam(&[0.4, 0.6], &[&[0.2, 0.8], &[0.7, 0.3]]);
        let bar = f.barycenter().unwrap();
        let at_bar = redundancy(&f, &bar).unwrap();
        assert!((at_bar - jd_general(&f).unwrap().value).abs() < 1e-14);

        let single = fam(&[1.0], &[&[0.2, 0.8]]);
        let q = d(&[0.5, 0.5]);
        let kl = crate::classical::kl_divergence(&d(&[0.2, 0.8]), &q).unwrap();
        assert_eq!(redundancy(&single, &q).unwrap(), kl);

        assert_eq!(redundancy(&f, &d(&[1.0, 0.0])).unwrap(), f64::INFINITY);
        assert!(redundancy(&f, &d(&[1.0])).is_err());
    }

    /// Deterministic 1/200 simplex grid over n ≤ 3 letters.
    fn simplex_grid(n: usize) -> Vec<Distribution> {
        let steps = 200;
        let mut out = Vec::new();
        match n {
            2 => {
                for i in 1..steps {
                    let x = i as f64 / steps as f64;
                    out.push(d(&[x, 1.0 - x]));
                }
            }
            3 => {
                for i in 1..steps {
                    for j in 1..(steps - i) {
                        let x = i as f64 / steps as f64;
                        let y = j as f64 / steps as f64;
                        out.push(Distribution::new(vec![x, y, 1.0 - x - y]).unwrap());
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }

    #[test]
    fn barycenter_minimizes_redundancy_on_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2, 3] {
            for _ in 0..3 {
                let k = rng.random_range(2..5);
                let members: Vec<_> = (0..k).map(|_| random::distribution(&mut rng, n)).collect();
                let f = Family::new(random::distribution(&mut rng, k), members).unwrap();
                let jd = jd_general(&f).unwrap().value;
                let best = simplex_grid(n)
                    .iter()
                    .map(|q| redundancy(&f, q).unwrap())
                    .fold(f64::INFINITY, f64::min);
                assert!(best >= jd - 1e-12);
                // the grid gets within its resolution of the minimum
                assert!(best - jd < 1e-2);
            }
        }
    }

    #[test]
    fn compensation_examples() {
        let f = fam(&[0.5, 0.5], &[&[0.9, 0.1], &[0.3, 0.7]]);
        let bar = f.barycenter().unwrap();
        assert!(compensation_residual(&f, &bar).unwrap() < 1e-15);
        assert!(compensation_residual(&f, &d(&[0.5, 0.5])).unwrap() <= 1e-12);
        assert!(matches!(
            compensation_residual(&f, &d(&[1.0, 0.0])),
            Err(Error::InfiniteDivergence)
        ));

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let n = rng.random_range(2..6);
            let k = rng.random_range(2..5);
            let members: Vec<_> = (0..k).map(|_| random::distribution(&mut rng, n)).collect();
            let f = Family::new(random::distribution(&mut rng, k), members).unwrap();
            let q = random::distribution(&mut rng, n);
            assert!(compensation_residual(&f, &q).unwrap() <= 1e-10);
        }
    }

    #[test]
    fn donald_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let members: Vec<_> = (0..3).map(|_| random::ginibre_state(&mut rng, 2)).collect();
        let f = Family::new(d(&[0.2, 0.3, 0.5]), members).unwrap();
        let bar = f.barycenter().unwrap();
        assert!(donald_residual(&f, &bar).unwrap() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(donald_residual(&f, &mixed).unwrap() <= 1e-9);
        let r = q_redundancy(&f, &mixed).unwrap();
        assert!(r >= qjd_general(&f).unwrap().value);

        let pure = ket(&[(1.0, 0.0), (0.0, 0.0)]);
        assert!(matches!(
            donald_residual(&f, &pure),
            Err(Error::InfiniteDivergence)
        ));

        // commuting family: Donald residual terms equal the classical ones
        let ps = [d(&[0.2, 0.8]), d(&[0.6, 0.4])];
        let w = d(&[0.5, 0.5]);
        let q = d(&[0.3, 0.7]);
        let cf = Family::new(w.clone(), ps.to_vec()).unwrap();
        let qf = Family::new(
            w,
            ps.iter()
                .map(|p| DensityMatrix::diagonal(p.probs()).unwrap())
                .collect(),
        )
        .unwrap();
        let sigma = DensityMatrix::diagonal(q.probs()).unwrap();
        let cr = redundancy(&cf, &q).unwrap();
        let qr = q_redundancy(&qf, &sigma).unwrap();
        assert!((cr - qr).abs() < 1e-14);
    }

    #[test]
    fn holevo_examples() {
        let zero = ket(&[(1.0, 0.0), (0.0, 0.0)]);
        let one = ket(&[(0.0, 0.0), (1.0, 0.0)]);
        let orth = Family::pair(zero.clone(), one).unwrap();
        assert!((holevo_bound(&orth).unwrap() - LN_2).abs() < 1e-14);
        let same = Family::pair(zero.clone(), zero.clone()).unwrap();
        assert!(holevo_bound(&same).unwrap().abs() < 1e-12);

        let theta: f64 = 0.4;
        let tilted = ket(&[(theta.cos(), 0.0), (theta.sin(), 0.0)]);
        let (lp, lm) = quantum::pure_overlap_eigenvalues(&zero, &tilted).unwrap();
        let expect = crate::classical::shannon_of(&[lp, lm]);
        let chi = holevo_bound(&Family::pair(zero, tilted).unwrap()).unwrap();
        assert!((chi - expect).abs() < 1e-12);
    }

    #[test]
    fn family_json() {
        let text = r#"{"kind":"classical","weights":[0.5,0.5],"members":[[1,0],[0,1]]}"#;
        let f: WeightedFamily = serde_json::from_str(text).unwrap();
        let f = f.into_classical().unwrap();
        assert!((jd_general(&f).unwrap().value - LN_2).abs() < 1e-15);

        let text = r#"{"kind":"quantum","weights":[1],
            "members":[{"dim":2,"entries":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}]}"#;
        let f: WeightedFamily = serde_json::from_str(text).unwrap();
        assert!(f.clone().into_classical().is_err());
        assert_eq!(f.into_quantum().unwrap().size(), 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn dist(n: usize) -> impl Strategy<Value = Distribution> {
            prop::collection::vec(0.001f64..1.0, n).prop_map(|w| {
                let s: f64 = w.iter().sum();
                Distribution::new(w.iter().map(|x| x / s).collect()).unwrap()
            })
        }

        fn pair() -> impl Strategy<Value = (Distribution, Distribution)> {
            (2usize..7).prop_flat_map(|n| (dist(n), dist(n)))
        }

        fn quad() -> impl Strategy<Value = [Distribution; 4]> {
            (2usize..6).prop_flat_map(|n| [dist(n), dist(n), dist(n), dist(n)])
        }

        proptest! {
            #[test]
            fn symmetric_exactly((p, q) in pair(), alpha in 0.1f64..3.5) {
                let al = Alpha::new(alpha).unwrap();
                prop_assert_eq!(jd_alpha(&p, &q, al).unwrap().value, jd_alpha(&q, &p, al).unwrap().value);
            }

            #[test]
            fn nonnegative_and_identity((p, q) in pair(), alpha in 0.1f64..2.0) {
                let al = Alpha::new(alpha).unwrap();
                let v = jd_alpha(&p, &q, al).unwrap().value;
                prop_assert!(v >= -1e-12);
                prop_assert!(jd_alpha(&p, &p, al).unwrap().value <= 1e-12);
                let far = p.probs().iter().zip(q.probs()).any(|(x, y)| (x - y).abs() > 1e-6);
                if far {
                    prop_assert!(v > 1e-12);
                }
            }

            #[test]
            fn dual_formula_consistency((p, q) in pair(), w in 0.05f64..0.95) {
                let f = Family::new(Distribution::new(vec![w, 1.0 - w]).unwrap(), vec![p, q]).unwrap();
                let r = jd_general(&f).unwrap();
                prop_assert!((r.value - r.cross_check.unwrap()).abs() <= 1e-10);
            }

            #[test]
            fn permutation_covariant((p, q) in (4usize..5).prop_flat_map(|n| (dist(n), dist(n))),
                                     alpha in 0.2f64..3.0) {
                let al = Alpha::new(alpha).unwrap();
                let perm = [2, 0, 3, 1];
                let pp = p.permuted(&perm).unwrap();
                let qp = q.permuted(&perm).unwrap();
                let lhs = jd_alpha(&pp, &qp, al).unwrap().value;
                let rhs = jd_alpha(&p, &q, al).unwrap().value;
                prop_assert!((lhs - rhs).abs() < 1e-13);
            }

            #[test]
            fn jointly_convex_for_alpha_in_one_two([p1, q1, p2, q2] in quad(),
                                                   alpha in 1.0f64..=2.0, lambda in 0.0f64..=1.0) {
                let al = Alpha::new(alpha).unwrap();
                let mix = |x: &Distribution, y: &Distribution| {
                    Distribution::mixture(&[lambda, 1.0 - lambda], &[x.clone(), y.clone()]).unwrap()
                };
                let lhs = jd_alpha(&mix(&p1, &p2), &mix(&q1, &q2), al).unwrap().value;
                let rhs = lambda * jd_alpha(&p1, &q1, al).unwrap().value
                    + (1.0 - lambda) * jd_alpha(&p2, &q2, al).unwrap().value;
                prop_assert!(lhs <= rhs + 1e-12);
            }

            #[test]
            fn unitarily_invariant(seed in any::<u64>(), dim in 2usize..5, alpha in 0.2f64..2.5) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let r = random::ginibre_state(&mut rng, dim);
                let s = random::ginibre_state(&mut rng, dim);
                let u = random::unitary(&mut rng, dim);
                let al = Alpha::new(alpha).unwrap();
                let before = qjd_alpha(&r, &s, al).unwrap().value;
                let after = qjd_alpha(&r.conjugated(&u).unwrap(), &s.conjugated(&u).unwrap(), al)
                    .unwrap()
                    .value;
                prop_assert!((before - after).abs() <= 1e-9);
                prop_assert_eq!(before, qjd_alpha(&s, &r, al).unwrap().value);
            }

            #[test]
            fn quantum_dual_formula(seed in any::<u64>(), dim in 2usize..4) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let members: Vec<_> = (0..3).map(|_| random::ginibre_state(&mut rng, dim)).collect();
                let f = Family::new(random::distribution(&mut rng, 3), members).unwrap();
                let r = qjd_general(&f).unwrap();
                prop_assert!((r.value - r.cross_check.unwrap()).abs() <= 1e-9);
            }
        }
    }
}

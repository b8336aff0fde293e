//! Finite probability distributions and the scalar information quantities
//! built on them. All logarithms are natural; entropies are in nats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sum tolerance for a distribution to count as normalized.
pub const SUM_TOL: f64 = 1e-12;
/// Largest sum deviation that is silently repaired by renormalizing.
pub const RENORMALIZE_TOL: f64 = 1e-9;
/// Negative entries above `-CLIP_TOL` are float noise and are clipped to zero.
pub const CLIP_TOL: f64 = 1e-12;

/// Order of an entropy or divergence. Always finite and strictly positive.
///
/// `alpha == 1` is an exact branch selecting the Shannon / von Neumann forms.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Alpha(f64);

impl Alpha {
    pub const SHANNON: Alpha = Alpha(1.0);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 {
            Ok(Alpha(alpha))
        } else {
            Err(Error::InvalidAlpha(alpha))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_shannon(self) -> bool {
        self.0 == 1.0
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Alpha::new(value)
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        Alpha::new(v).map_err(serde::de::Error::custom)
    }
}

/// A probability vector over a finite, optionally labeled, alphabet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistributionRepr", into = "DistributionRepr")]
pub struct Distribution {
    probs: Vec<f64>,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DistributionRepr {
    Plain(Vec<f64>),
    Labeled {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        probs: Vec<f64>,
    },
}

impl TryFrom<DistributionRepr> for Distribution {
    type Error = Error;

    fn try_from(repr: DistributionRepr) -> Result<Self> {
        match repr {
            DistributionRepr::Plain(probs) => Distribution::new(probs),
            DistributionRepr::Labeled { labels, probs } => match labels {
                Some(labels) => Distribution::with_labels(probs, labels),
                None => Distribution::new(probs),
            },
        }
    }
}

impl From<Distribution> for DistributionRepr {
    fn from(d: Distribution) -> Self {
        match d.labels {
            None => DistributionRepr::Plain(d.probs),
            Some(labels) => DistributionRepr::Labeled {
                labels: Some(labels),
                probs: d.probs,
            },
        }
    }
}

impl Distribution {
    /// Validates `probs`: tiny negatives are clipped, small sum drift is
    /// renormalized, anything larger is an error.
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        for (index, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if *p < 0.0 {
                if *p > -CLIP_TOL {
                    *p = 0.0;
                } else {
                    return Err(Error::NegativeProbability { index, value: *p });
                }
            }
        }
        let sum: f64 = probs.iter().sum();
        let dev = (sum - 1.0).abs();
        if dev > RENORMALIZE_TOL {
            return Err(Error::NotNormalized { sum });
        }
        if dev > f64::EPSILON * probs.len() as f64 {
            probs.iter_mut().for_each(|p| *p /= sum);
        }
        Ok(Distribution {
            probs,
            labels: None,
        })
    }

    pub fn with_labels(probs: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != probs.len() {
            return Err(Error::LabelMismatch {
                labels: labels.len(),
                probs: probs.len(),
            });
        }
        let mut d = Distribution::new(probs)?;
        d.labels = Some(labels);
        Ok(d)
    }

    /// Uniform distribution on `n >= 1` letters.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDistribution);
        }
        Distribution::new(vec![1.0 / n as f64; n])
    }

    /// Point mass on letter `index` of an `n`-letter alphabet.
    pub fn point_mass(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        let mut probs = vec![0.0; n];
        probs[index] = 1.0;
        Distribution::new(probs)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Applies an alphabet permutation: entry `i` of the result is `self[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.len() {
            return Err(Error::LengthMismatch {
                left: perm.len(),
                right: self.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &j in perm {
            if j >= perm.len() || std::mem::replace(&mut seen[j], true) {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    n: perm.len(),
                });
            }
        }
        Distribution::new(perm.iter().map(|&j| self.probs[j]).collect())
    }

    /// Weighted mixture `Σ w_i P_i`. Weights and members must already be validated.
    pub fn mixture(weights: &[f64], members: &[Distribution]) -> Result<Self> {
        let n = check_same_len(members)?;
        let mut mix = vec![0.0; n];
        for (w, m) in weights.iter().zip(members) {
            for (acc, p) in mix.iter_mut().zip(&m.probs) {
                *acc += w * p;
            }
        }
        Distribution::new(mix)
    }
}

fn check_same_len(members: &[Distribution]) -> Result<usize> {
    let n = members
        .first()
        .map(Distribution::len)
        .ok_or(Error::InvalidFamily("no members".into()))?;
    for m in members {
        if m.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: m.len(),
            });
        }
    }
    Ok(n)
}

pub(crate) fn same_len(p: &Distribution, q: &Distribution) -> Result<()> {
    if p.len() == q.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        })
    }
}

/// `x ln x` with the convention `0 ln 0 = 0`.
#[inline]
pub(crate) fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// Shannon entropy of a nonnegative weight vector (not necessarily validated).
pub fn shannon_of(weights: &[f64]) -> f64 {
    -weights.iter().map(|&p| xlogx(p)).sum::<f64>()
}

/// Order-α entropy `(1 − Σ w^α)/(α − 1)` of a nonnegative weight vector,
/// dispatching to Shannon at `α = 1`. Entries `<= 0` contribute nothing.
pub fn alpha_entropy_of(weights: &[f64], a: Alpha) -> f64 {
    if a.is_shannon() {
        return shannon_of(weights);
    }
    let alpha = a.value();
    let power_sum: f64 = weights
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p.powf(alpha))
        .sum();
    (1.0 - power_sum) / (alpha - 1.0)
}

/// `H(P) = −Σ p ln p`, in nats.
pub fn shannon_entropy(p: &Distribution) -> f64 {
    shannon_of(&p.probs)
}

/// `S_α(P)`; equals [`shannon_entropy`] at `α = 1`.
pub fn alpha_entropy(p: &Distribution, a: Alpha) -> f64 {
    alpha_entropy_of(&p.probs, a)
}

/// Kullback–Leibler divergence `D(P‖Q)`; `+∞` when `P` puts mass where `Q` has none.
pub fn kl_divergence(p: &Distribution, q: &Distribution) -> Result<f64> {
    same_len(p, q)?;
    let mut acc = 0.0;
    for (&pi, &qi) in p.probs.iter().zip(&q.probs) {
        if pi > 0.0 {
            if qi <= 0.0 {
                return Ok(f64::INFINITY);
            }
            acc += pi * (pi / qi).ln();
        }
    }
    Ok(acc.max(0.0))
}

/// Total variation `V(P,Q) = Σ|p_i − q_i|`, in `[0, 2]` (no ½ factor).
pub fn total_variation(p: &Distribution, q: &Distribution) -> Result<f64> {
    same_len(p, q)?;
    Ok(p.probs
        .iter()
        .zip(&q.probs)
        .map(|(a, b)| (a - b).abs())
        .sum())
}

/// `Σ|p_i − q_i|^α`, the α-th power of the ℓ_α distance.
pub fn alpha_norm_power(p: &Distribution, q: &Distribution, a: Alpha) -> Result<f64> {
    same_len(p, q)?;
    Ok(p.probs
        .iter()
        .zip(&q.probs)
        .map(|(x, y)| (x - y).abs())
        .filter(|&d| d > 0.0)
        .map(|d| d.powf(a.value()))
        .sum())
}

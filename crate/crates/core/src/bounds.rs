//! Bounds of `JD_α` in terms of total variation (and of `QJD_α` in terms of
//! trace distance), the chain of elementary inequalities between them and
//! the `V`/`JD_α` joint-range diagram.

use std::f64::consts::LN_2;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::classical::{self, alpha_entropy_of, Alpha, Distribution};
use crate::error::{Error, Result};
use crate::jensen::{jd_alpha, qjd_alpha};
use crate::quantum::{self, DensityMatrix};

/// Slack allowed when a computed `v` lands just outside `[0, 2]`.
const V_SLACK: f64 = 1e-12;

/// `s_α(x) = S_α(x, 1 − x)` for `x ∈ [0, 1]`.
pub fn binary_entropy(x: f64, a: Alpha) -> f64 {
    let x = x.clamp(0.0, 1.0);
    alpha_entropy_of(&[x, 1.0 - x], a)
}

fn check_v(v: f64) -> Result<f64> {
    if (-V_SLACK..=2.0 + V_SLACK).contains(&v) {
        Ok(v.clamp(0.0, 2.0))
    } else {
        Err(Error::OutOfRange {
            name: "v",
            value: v,
            range: "[0, 2]",
        })
    }
}

/// `L(v) = s_α(1/2) − s_α(1/2 + v/4)`.
pub fn lower_l(v: f64, a: Alpha) -> Result<f64> {
    let v = check_v(v)?;
    Ok(binary_entropy(0.5, a) - binary_entropy(0.5 + v / 4.0, a))
}

/// `(1/(α−1))(1/2 − 2^{−α})`, and its limit `ln 2 / 2` at `α = 1`.
pub fn upper_coefficient(a: Alpha) -> f64 {
    if a.is_shannon() {
        LN_2 / 2.0
    } else {
        let al = a.value();
        (0.5 - 2f64.powf(-al)) / (al - 1.0)
    }
}

/// `U_n(P,Q) = (1/(α−1))(1/2 − 2^{−α}) Σ|p_i − q_i|^α`; `(ln 2/2)·V` at `α = 1`.
pub fn upper_un(p: &Distribution, q: &Distribution, a: Alpha) -> Result<f64> {
    let power = if a.is_shannon() {
        classical::total_variation(p, q)?
    } else {
        classical::alpha_norm_power(p, q, a)?
    };
    Ok(upper_coefficient(a) * power)
}

/// `U_2(v) = s_α(v/4) − s_α(v/2)/2`.
pub fn upper_u2(v: f64, a: Alpha) -> Result<f64> {
    let v = check_v(v)?;
    Ok(binary_entropy(v / 4.0, a) - 0.5 * binary_entropy(v / 2.0, a))
}

/// `U_n` evaluated on its attaining pair at total variation `v`:
/// `(1/(α−1))(1/2 − 2^{−α})·2^{1−α}·v^α`.
pub fn upper_un_curve(v: f64, a: Alpha) -> Result<f64> {
    let v = check_v(v)?;
    if v == 0.0 {
        return Ok(0.0);
    }
    let al = a.value();
    Ok(upper_coefficient(a) * 2.0 * (v / 2.0).powf(al))
}

fn pair(p: Vec<f64>, q: Vec<f64>) -> (Distribution, Distribution) {
    (
        Distribution::new(p).expect("witness is a distribution"),
        Distribution::new(q).expect("witness is a distribution"),
    )
}

/// `((1/2 + v/4, 1/2 − v/4), (1/2 − v/4, 1/2 + v/4))`, which attains `L(v)`.
pub fn lower_witness(v: f64) -> Result<(Distribution, Distribution)> {
    let v = check_v(v)?;
    let h = v / 4.0;
    Ok(pair(vec![0.5 + h, 0.5 - h], vec![0.5 - h, 0.5 + h]))
}

/// `P = (1 − v/2, v/2, 0)`, `Q = (1 − v/2, 0, v/2)`, which attains `U_n`.
pub fn upper_un_witness(v: f64) -> Result<(Distribution, Distribution)> {
    let v = check_v(v)?;
    let h = v / 2.0;
    Ok(pair(vec![1.0 - h, h, 0.0], vec![1.0 - h, 0.0, h]))
}

/// `P = (v/2, 1 − v/2)`, `Q = (0, 1)`, which attains `U_2`.
pub fn upper_u2_witness(v: f64) -> Result<(Distribution, Distribution)> {
    let v = check_v(v)?;
    let h = v / 2.0;
    Ok(pair(vec![h, 1.0 - h], vec![0.0, 1.0]))
}

/// Which upper bound a report used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperKind {
    /// `U_n`, for alphabets of three or more letters.
    Un,
    /// `U_2`, for two-letter alphabets.
    U2,
    /// `(ln 2/2)·‖ρ₁ − ρ₂‖₁`, for states.
    TraceNorm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    /// Total variation `Σ|p_i − q_i|`, or trace norm `‖ρ₁ − ρ₂‖₁`.
    pub v: f64,
    pub alpha: f64,
    pub upper_kind: UpperKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tight_lower_witness: Option<(Vec<f64>, Vec<f64>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tight_upper_witness: Option<(Vec<f64>, Vec<f64>)>,
}

impl BoundReport {
    /// `lower − tol ≤ value ≤ upper + tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.lower - tol <= self.value && self.value <= self.upper + tol
    }
}

fn probs(w: (Distribution, Distribution)) -> (Vec<f64>, Vec<f64>) {
    (w.0.probs().to_vec(), w.1.probs().to_vec())
}

/// `L(V) ≤ JD_α(P,Q) ≤ U`, with `U = U_2(V)` on two letters and `U_n(P,Q)`
/// otherwise. Witnesses attaining each bound at the same `V` are attached.
pub fn bound_report(p: &Distribution, q: &Distribution, a: Alpha) -> Result<BoundReport> {
    let v = check_v(classical::total_variation(p, q)?)?;
    let value = jd_alpha(p, q, a)?.value;
    let (upper, upper_kind, upper_witness) = if p.len() == 2 {
        (upper_u2(v, a)?, UpperKind::U2, upper_u2_witness(v)?)
    } else {
        (upper_un(p, q, a)?, UpperKind::Un, upper_un_witness(v)?)
    };
    Ok(BoundReport {
        lower: lower_l(v, a)?,
        value,
        upper,
        v,
        alpha: a.value(),
        upper_kind,
        tight_lower_witness: Some(probs(lower_witness(v)?)),
        tight_upper_witness: Some(probs(upper_witness)),
    })
}

/// `L(T) ≤ QJD_α(ρ₁,ρ₂) ≤ (ln 2/2)·T` with `T = ‖ρ₁ − ρ₂‖₁`.
pub fn q_bound_report(rho1: &DensityMatrix, rho2: &DensityMatrix, a: Alpha) -> Result<BoundReport> {
    let t = check_v(quantum::trace_distance(rho1, rho2)?)?;
    Ok(BoundReport {
        lower: lower_l(t, a)?,
        value: qjd_alpha(rho1, rho2, a)?.value,
        upper: LN_2 / 2.0 * t,
        v: t,
        alpha: a.value(),
        upper_kind: UpperKind::TraceNorm,
        tight_lower_witness: None,
        tight_upper_witness: None,
    })
}

/// The chain `V²/8 ≤ αV²/8 ≤ JD_α ≤ U_n ≤ (ln 2/2)·V`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub v: f64,
    pub alpha: f64,
    pub v_sq_over_8: f64,
    pub alpha_v_sq_over_8: f64,
    pub jd: f64,
    pub un: f64,
    pub ln2_half_v: f64,
    /// Whether every link holds within `1e−10`.
    pub monotone: bool,
}

impl ChainReport {
    pub fn values(&self) -> [f64; 5] {
        [
            self.v_sq_over_8,
            self.alpha_v_sq_over_8,
            self.jd,
            self.un,
            self.ln2_half_v,
        ]
    }
}

pub fn chain_check(p: &Distribution, q: &Distribution, a: Alpha) -> Result<ChainReport> {
    let al = a.value();
    if !(1.0..=2.0).contains(&al) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: al,
            range: "[1, 2]",
        });
    }
    let v = classical::total_variation(p, q)?;
    let mut r = ChainReport {
        v,
        alpha: al,
        v_sq_over_8: v * v / 8.0,
        alpha_v_sq_over_8: al * v * v / 8.0,
        jd: jd_alpha(p, q, a)?.value,
        un: upper_un(p, q, a)?,
        ln2_half_v: LN_2 / 2.0 * v,
        monotone: false,
    };
    r.monotone = r.values().windows(2).all(|w| w[0] <= w[1] + 1e-10);
    Ok(r)
}

/// One point of the deformation between the lower and the upper witness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomotopySample {
    pub t: f64,
    /// The witnesses' common total variation.
    pub v_param: f64,
    /// `V(P_t, Q_t)`.
    pub v: f64,
    pub jd: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Sampled boundary of the joint range of `(V, JD_α)` plus a deformation
/// of the lower witnesses into the upper ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramPoints {
    pub alpha: f64,
    pub n: usize,
    pub curve_lower: Vec<(f64, f64)>,
    pub curve_upper: Vec<(f64, f64)>,
    pub homotopy_samples: Vec<HomotopySample>,
}

impl DiagramPoints {
    /// Largest amount by which a homotopy sample leaves the band between
    /// the two curves (evaluated at the sample's own `V`).
    pub fn max_band_violation(&self) -> f64 {
        self.homotopy_samples
            .iter()
            .map(|s| (s.lower - s.jd).max(s.jd - s.upper).max(0.0))
            .fold(0.0, f64::max)
    }

    /// Largest distance between the `t = 0` / `t = 1` rows and the lower /
    /// upper curves.
    pub fn max_endpoint_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for s in &self.homotopy_samples {
            let curve = if s.t == 0.0 {
                &self.curve_lower
            } else if s.t == 1.0 {
                &self.curve_upper
            } else {
                continue;
            };
            let nearest = curve
                .iter()
                .find(|(v, _)| (v - s.v_param).abs() < 1e-12)
                .map(|&(v, jd)| (v - s.v).abs().max((jd - s.jd).abs()));
            worst = worst.max(nearest.unwrap_or(f64::INFINITY));
        }
        worst
    }

    /// CSV with header `curve,t,v,jd`; curve rows leave `t` empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::InvalidInput(e.to_string());
        w.write_record(["curve", "t", "v", "jd"]).map_err(io)?;
        for (name, curve) in [("lower", &self.curve_lower), ("upper", &self.curve_upper)] {
            for &(v, jd) in curve {
                w.write_record([name, "", &v.to_string(), &jd.to_string()])
                    .map_err(io)?;
            }
        }
        for s in &self.homotopy_samples {
            w.write_record([
                "homotopy",
                &s.t.to_string(),
                &s.v.to_string(),
                &s.jd.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::InvalidInput(e.to_string()))?;
        Ok(())
    }
}

fn pad(d: &Distribution, n: usize) -> Vec<f64> {
    let mut p = d.probs().to_vec();
    p.resize(n, 0.0);
    p
}

fn upper_curve(n: usize, v: f64, a: Alpha) -> Result<f64> {
    if n == 2 {
        upper_u2(v, a)
    } else {
        upper_un_curve(v, a)
    }
}

/// The lower curve `L(v)`, the upper curve (`U_2` for `n = 2`, `U_n` on its
/// attaining family otherwise) on `grid` points of `[0, 2]`, and a
/// `grid × grid` sweep of `P_t = (1−t)P₀ + tP₁`, `Q_t = (1−t)Q₀ + tQ₁` from
/// the lower witness `(P₀, Q₀)` to the upper witness `(P₁, Q₁)`.
pub fn diagram(a: Alpha, n: usize, grid: usize) -> Result<DiagramPoints> {
    if n < 2 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            range: "[2, inf)",
        });
    }
    if grid < 2 {
        return Err(Error::OutOfRange {
            name: "grid",
            value: grid as f64,
            range: "[2, inf)",
        });
    }
    let letters = if n == 2 { 2 } else { 3 };
    let vs: Vec<f64> = (0..grid)
        .map(|k| 2.0 * k as f64 / (grid - 1) as f64)
        .collect();
    let ts: Vec<f64> = (0..grid).map(|k| k as f64 / (grid - 1) as f64).collect();
    let mut curve_lower = Vec::with_capacity(grid);
    let mut curve_upper = Vec::with_capacity(grid);
    let mut homotopy_samples = Vec::with_capacity(grid * grid);
    for &v in &vs {
        curve_lower.push((v, lower_l(v, a)?));
        curve_upper.push((v, upper_curve(n, v, a)?));
        let (p0, q0) = lower_witness(v)?;
        let (p1, q1) = if n == 2 {
            upper_u2_witness(v)?
        } else {
            upper_un_witness(v)?
        };
        let (p0, q0, p1, q1) = (
            pad(&p0, letters),
            pad(&q0, letters),
            pad(&p1, letters),
            pad(&q1, letters),
        );
        for &t in &ts {
            let mix = |x: &[f64], y: &[f64]| {
                Distribution::new(
                    x.iter()
                        .zip(y)
                        .map(|(a, b)| (1.0 - t) * a + t * b)
                        .collect(),
                )
            };
            let pt = mix(&p0, &p1)?;
            let qt = mix(&q0, &q1)?;
            let vt = check_v(classical::total_variation(&pt, &qt)?)?;
            homotopy_samples.push(HomotopySample {
                t,
                v_param: v,
                v: vt,
                jd: jd_alpha(&pt, &qt, a)?.value,
                lower: lower_l(vt, a)?,
                upper: upper_curve(n, vt, a)?,
            });
        }
    }
    Ok(DiagramPoints {
        alpha: a.value(),
        n,
        curve_lower,
        curve_upper,
        homotopy_samples,
    })
}

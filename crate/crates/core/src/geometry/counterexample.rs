//! The two constructions showing where `√JD_α` stops being a Hilbert-space
//! metric: a three-point triangle violation and a four-point Cayley–Menger
//! sign change.

use nalgebra::DMatrix;

use super::{cayley_menger_det, DistanceMatrix};
use crate::classical::{xlogx, Alpha, Distribution};
use crate::error::{Error, Result};
use crate::jensen::jd_alpha;

/// `P = (0,1)`, `Q = (1/2,1/2)`, `R = (1,0)`.
pub fn counterexample_points() -> [Distribution; 3] {
    [
        Distribution::new(vec![0.0, 1.0]).expect("valid"),
        Distribution::new(vec![0.5, 0.5]).expect("valid"),
        Distribution::new(vec![1.0, 0.0]).expect("valid"),
    ]
}

/// `4(1/4)^α + 4(3/4)^α − 6(1/2)^α − 1`.
pub fn counterexample_numerator(a: Alpha) -> f64 {
    let al = a.value();
    4.0 * 0.25f64.powf(al) + 4.0 * 0.75f64.powf(al) - 6.0 * 0.5f64.powf(al) - 1.0
}

/// `E(α) = JD_α(P,R) − 2JD_α(P,Q) − 2JD_α(Q,R)` on [`counterexample_points`].
/// Positive values mean `√JD_α(P,R) > √JD_α(P,Q) + √JD_α(Q,R)`.
pub fn counterexample_energy(a: Alpha) -> f64 {
    if a.is_shannon() {
        let [p, q, r] = counterexample_points();
        let jd = |x: &Distribution, y: &Distribution| jd_alpha(x, y, a).expect("same length").value;
        return jd(&p, &r) - 2.0 * jd(&p, &q) - 2.0 * jd(&q, &r);
    }
    counterexample_numerator(a) / (a.value() - 1.0)
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 / 6.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "eps",
            value: eps,
            range: "(0, 1/6)",
        })
    }
}

/// `(1/2 + kε, 1/2 − kε)` for `k = −3, −1, 1, 3`.
pub fn quadruple_points(eps: f64) -> Result<[Distribution; 4]> {
    check_eps(eps)?;
    let pt = |k: f64| Distribution::new(vec![0.5 + k * eps, 0.5 - k * eps]);
    Ok([pt(-3.0)?, pt(-1.0)?, pt(1.0)?, pt(3.0)?])
}

/// Contribution of one letter with mean mass `m` and half-difference `h` to
/// a two-point Jensen divergence: `[(m+h)^α + (m−h)^α − 2m^α] / (2(α−1))`.
///
/// For `|h/m| ≤ 1/2` the even Taylor series `m^α Σ_{j≥1} g_j (h/m)^{2j}` is
/// summed instead, which avoids the cancellation for nearby points.
fn letter_term(m: f64, h: f64, a: Alpha) -> f64 {
    if m <= 0.0 || h == 0.0 {
        return 0.0;
    }
    let al = a.value();
    let u = h / m;
    if u.abs() > 0.5 {
        return if a.is_shannon() {
            0.5 * (xlogx(m + h) + xlogx(m - h)) - xlogx(m)
        } else {
            ((m + h).powf(al) + (m - h).powf(al) - 2.0 * m.powf(al)) / (2.0 * (al - 1.0))
        };
    }
    let u2 = u * u;
    // g_1 = α/2; g_{j+1} = g_j (α−2j)(α−2j−1) / ((2j+1)(2j+2))
    let mut g = al / 2.0;
    let mut pow = u2;
    let mut sum = g * pow;
    for j in 1..400 {
        let jf = j as f64;
        g *= (al - 2.0 * jf) * (al - 2.0 * jf - 1.0) / ((2.0 * jf + 1.0) * (2.0 * jf + 2.0));
        pow *= u2;
        let term = g * pow;
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    m.powf(al) * sum
}

/// `JD_α((x, 1−x), (y, 1−y))`, accurate to relative rounding even when
/// `x ≈ y`.
pub fn two_point_jd(x: f64, y: f64, a: Alpha) -> f64 {
    let m = 0.5 * (x + y);
    let h = 0.5 * (x - y);
    letter_term(m, h, a) + letter_term(1.0 - m, -h, a)
}

/// Pairwise `JD_α` matrix of [`quadruple_points`].
pub fn quadruple_divergence_matrix(a: Alpha, eps: f64) -> Result<DistanceMatrix> {
    check_eps(eps)?;
    let xs = [-3.0, -1.0, 1.0, 3.0].map(|k| 0.5 + k * eps);
    DistanceMatrix::new(DMatrix::from_fn(4, 4, |i, j| {
        if i == j {
            0.0
        } else {
            two_point_jd(xs[i], xs[j], a)
        }
    }))
}

/// Cayley–Menger determinant of the four-point `JD_α` matrix. The matrix
/// is divided by `ε²` before factorization and the determinant scaled back
/// by `ε⁶`, which keeps entries of order one.
pub fn quadruple_cm_determinant(a: Alpha, eps: f64) -> Result<f64> {
    let d = quadruple_divergence_matrix(a, eps)?;
    let scaled = DistanceMatrix::new(d.matrix() / (eps * eps))?;
    Ok(cayley_menger_det(&scaled) * eps.powi(6))
}

/// `4α(α−1)(α−2)(α−3)(α−7/2)`.
pub fn cm_leading_sign(a: Alpha) -> f64 {
    let al = a.value();
    4.0 * al * (al - 1.0) * (al - 2.0) * (al - 3.0) * (al - 3.5)
}

/// `s_α^{(2n)}(1/2) = −α(α−2)(α−3)⋯(α−2n+1) · 2^{2n+1−α}`, the even
/// derivatives of `s_α(x) = S_α(x, 1−x)` at the midpoint. `n = 0` gives
/// `s_α(1/2)` itself.
pub fn s_alpha_even_derivative(n: u32, a: Alpha) -> f64 {
    let al = a.value();
    if n == 0 {
        return crate::classical::alpha_entropy_of(&[0.5, 0.5], a);
    }
    let falling: f64 = (2..2 * n).map(|k| al - k as f64).product();
    -al * falling * 2f64.powf(2.0 * n as f64 + 1.0 - al)
}

/// Coefficient `c` in `det CM ≈ c·ε¹²` for the quadruple, as `ε → 0`:
/// `s⁽⁴⁾ (s⁽⁴⁾² − s⁽²⁾s⁽⁶⁾)` at `1/2`.
pub fn cm_leading_coefficient(a: Alpha) -> f64 {
    let s2 = s_alpha_even_derivative(1, a);
    let s4 = s_alpha_even_derivative(2, a);
    let s6 = s_alpha_even_derivative(3, a);
    s4 * (s4 * s4 - s2 * s6)
}

//! `x^α` through its Lévy–Khintchine-type integral representation.

use statrs::function::gamma::gamma;

use crate::classical::Alpha;
use crate::error::{Error, Result};

// Gauss–Kronrod 7/15 nodes and weights on [−1, 1].
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One 15-point Kronrod estimate and its difference from the embedded
/// 7-point Gauss rule.
fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let pair = f(c - x) + f(c + x);
        kron += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kron * h, (kron - gauss).abs() * h)
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (value, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        return value;
    }
    let m = 0.5 * (a + b);
    adaptive(f, a, m, 0.5 * tol, depth - 1) + adaptive(f, m, b, 0.5 * tol, depth - 1)
}

/// Evaluates `(1/Γ(−α)) ∫₀^∞ (e^{−xt} − 1) t^{−α−1} dt` for `α ∈ (0,1)`, or
/// `(1/Γ(−α)) ∫₀^∞ (e^{−xt} − 1 + xt) t^{−α−1} dt` for `α ∈ (1,2)`; both
/// equal `x^α`.
///
/// `[0, 1/x]` is integrated term by term from the exponential series,
/// `[1/x, 50/x]` by adaptive Gauss–Kronrod on doubling panels, and on
/// `[50/x, ∞)` only the algebraic part is kept (the exponential part is
/// below `e^{−50}`).
pub fn power_integral(x: f64, a: Alpha) -> Result<f64> {
    let al = a.value();
    let second_order = if al > 0.0 && al < 1.0 {
        false
    } else if al > 1.0 && al < 2.0 {
        true
    } else {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: al,
            range: "(0,1) or (1,2)",
        });
    };
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::OutOfRange {
            name: "x",
            value: x,
            range: "[0, inf)",
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }

    let delta = 1.0 / x;
    let cut = 50.0 / x;

    let first = if second_order { 2 } else { 1 };
    let mut head = 0.0;
    let mut coef = 1.0;
    for m in 1..200 {
        coef *= -x / m as f64;
        if m < first {
            continue;
        }
        let term = coef * delta.powf(m as f64 - al) / (m as f64 - al);
        head += term;
        if term.abs() <= 1e-17 * head.abs() {
            break;
        }
    }

    let f = |t: f64| {
        let e = (-x * t).exp_m1();
        let num = if second_order { e + x * t } else { e };
        num * t.powf(-al - 1.0)
    };
    let mut middle = 0.0;
    let mut lo = delta;
    while lo < cut {
        let hi = (2.0 * lo).min(cut);
        middle += adaptive(&f, lo, hi, 1e-14 * x.powf(al).max(1e-300), 30);
        lo = hi;
    }

    let mut tail = -cut.powf(-al) / al;
    if second_order {
        tail += x * cut.powf(1.0 - al) / (al - 1.0);
    }

    Ok((head + middle + tail) / gamma(-al))
}

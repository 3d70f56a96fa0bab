//! Numeric evaluation of exact polynomials at roots of unity, log-magnitude
//! pipelines that stay finite for huge coefficients, the Mahler measure, and
//! growth-series assembly.
//!
//! Everything evaluates with the fixed square-root convention
//! `q = e^(2 pi i alpha / n)`, `v = e^(pi i alpha / n)`,
//! `q^(1/4) = e^(pi i alpha / (2n))`.

use std::io::Write;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::qpoly::LaurentPoly;
use crate::real::{KahanSum, Real};

/// Evaluation point `q = e^(2 pi i alpha / n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalPoint {
    pub alpha: f64,
    pub n: u32,
}

impl EvalPoint {
    pub fn new(alpha: f64, n: u32) -> Result<Self> {
        if n == 0 || !alpha.is_finite() {
            return Err(Error::Domain(format!("bad evaluation point alpha={alpha}, n={n}")));
        }
        Ok(EvalPoint { alpha, n })
    }

    /// Position of `q^(1/4)` on the circle, as a fraction of a full turn.
    fn quarter_turns(&self) -> f64 {
        self.alpha / (4.0 * f64::from(self.n))
    }
}

/// Coefficient as `mantissa * 2^exp2` without overflowing `f64`.
fn big_to_mant_exp(c: &BigInt) -> (f64, i64) {
    let bits = c.bits();
    if bits <= 960 {
        (c.to_f64().expect("fits in f64 range"), 0)
    } else {
        let shift = bits - 64;
        let top = c >> shift;
        (top.to_f64().expect("64-bit head fits"), shift as i64)
    }
}

fn ldexp(x: f64, e: i64) -> f64 {
    if e == 0 || x == 0.0 {
        return x;
    }
    let clamped = e.clamp(-2100, 2100) as i32;
    // Split to stay in range for subnormal-adjacent scales.
    let half = clamped / 2;
    x * 2f64.powi(half) * 2f64.powi(clamped - half)
}

/// `f(e^(2 pi i t))` with `t` in turns, substituted for `q^(1/4)`, returned
/// as `z * 2^exp2`. Coefficient magnitudes far beyond `f64` range are folded
/// in through their top 64 bits (extended-exponent accumulation).
pub fn eval_unit_circle_extended(f: &LaurentPoly, t: f64) -> (Complex64, i64) {
    if f.is_zero() {
        return (Complex64::new(0.0, 0.0), 0);
    }
    let mut scaled: Vec<(f64, i64, i64)> = Vec::with_capacity(f.num_terms());
    let mut emax = i64::MIN;
    for (e, c) in f.iter() {
        let (m, ex) = big_to_mant_exp(c);
        // Normalize so every mantissa is in [1, 2); keeps emax meaningful.
        let (frac, fexp) = frexp(m);
        let total = ex + i64::from(fexp);
        emax = emax.max(total);
        scaled.push((frac, total, e));
    }
    let mut re = KahanSum::<f64>::new();
    let mut im = KahanSum::<f64>::new();
    for (m, ex, e) in scaled {
        let w = ldexp(m, ex - emax);
        let turns = t * e as f64;
        let angle = std::f64::consts::TAU * (turns - turns.round());
        re.add(w * angle.cos());
        im.add(w * angle.sin());
    }
    (Complex64::new(re.value(), im.value()), emax)
}

fn frexp(x: f64) -> (f64, i32) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let e = x.abs().log2().floor() as i32;
    let m = x / 2f64.powi(e);
    // Guard against boundary rounding.
    if m.abs() >= 2.0 {
        (m / 2.0, e + 1)
    } else if m.abs() < 1.0 {
        (m * 2.0, e - 1)
    } else {
        (m, e)
    }
}

/// `ev_{alpha,n}(f)` as a complex number. Values beyond `f64` range come back
/// as infinities; use [`ev_log_abs`] for magnitude work at scale.
pub fn ev(f: &LaurentPoly, p: &EvalPoint) -> Complex64 {
    let (z, e) = eval_unit_circle_extended(f, p.quarter_turns());
    Complex64::new(ldexp(z.re, e), ldexp(z.im, e))
}

/// `log |ev_{alpha,n}(f)|`, or `None` when the value is exactly zero.
pub fn ev_log_abs(f: &LaurentPoly, p: &EvalPoint) -> Option<f64> {
    let (z, e) = eval_unit_circle_extended(f, p.quarter_turns());
    if z.is_zero() {
        return None;
    }
    Some(z.norm().ln() + e as f64 * std::f64::consts::LN_2)
}

/// `sum_{j=1}^{m} log |2 sin(j pi alpha / n)|`, the log magnitude of
/// `ev_{alpha,n}({m}!)`, computed entirely in log space.
///
/// Signals [`Error::ExactZero`] when some factor vanishes (i.e. `j alpha / n`
/// is an integer for some `j <= m`).
pub fn log_abs_ev_qfactorial<R: Real>(n: u64, m: u64, alpha: R) -> Result<R> {
    let nn = R::from_u64(n).ok_or_else(|| Error::Domain("n out of range".into()))?;
    let mut acc = KahanSum::<R>::new();
    let two = R::of(2.0);
    for j in 1..=m {
        let t = R::from_u64(j).unwrap() * alpha / nn;
        let frac = t - t.round();
        if frac.abs() < R::of(1e-13) {
            return Err(Error::ExactZero);
        }
        acc.add((two * (R::PI() * frac).sin().abs()).ln());
    }
    Ok(acc.value())
}

/// Prefix sums `S[m] = sum_{j<=m} log(2 sin(j pi / n))` for `0 <= m <= n-1`;
/// the building block of every discrete growth scan at `alpha = 1`.
pub fn sin_log_prefix(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut acc = KahanSum::<f64>::new();
    out.push(0.0);
    for j in 1..n {
        acc.add((2.0 * (std::f64::consts::PI * j as f64 / n as f64).sin()).ln());
        out.push(acc.value());
    }
    out
}

/// `log M(f)`: mean of `log |f|` over the unit circle by adaptive Simpson
/// quadrature, absolute error at most `tol` for nonzero polynomials.
pub fn mahler_measure_log(f: &LaurentPoly, tol: f64) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::Domain("Mahler measure of the zero polynomial".into()));
    }
    let g = |t: f64| -> f64 {
        let (z, e) = eval_unit_circle_extended(f, t);
        if z.is_zero() {
            // Quadrature node hit a root on the circle; the integrable log
            // singularity contributes nothing at the final subdivision width.
            return -50.0 + e as f64 * std::f64::consts::LN_2;
        }
        z.norm().ln() + e as f64 * std::f64::consts::LN_2
    };
    // Eight panels up front so symmetric root patterns cannot alias Simpson.
    const PANELS: usize = 8;
    let mut total = 0.0;
    for i in 0..PANELS {
        let a = i as f64 / PANELS as f64;
        let b = (i + 1) as f64 / PANELS as f64;
        let m = 0.5 * (a + b);
        total += adaptive_simpson(&g, a, b, g(a), g(m), g(b), tol / PANELS as f64, 48);
    }
    Ok(total)
}

fn adaptive_simpson(
    g: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    ga: f64,
    gm: f64,
    gb: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let glm = g(lm);
    let grm = g(rm);
    let whole = (b - a) / 6.0 * (ga + 4.0 * gm + gb);
    let left = (m - a) / 6.0 * (ga + 4.0 * glm + gm);
    let right = (b - m) / 6.0 * (gm + 4.0 * grm + gb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        left + right + delta / 15.0
    } else {
        adaptive_simpson(g, a, m, ga, glm, gm, eps / 2.0, depth - 1)
            + adaptive_simpson(g, m, b, gm, grm, gb, eps / 2.0, depth - 1)
    }
}

/// Mahler measure `M(f) = exp(mean log |f|)`.
pub fn mahler_measure(f: &LaurentPoly, tol: f64) -> Result<f64> {
    Ok(mahler_measure_log(f, tol)?.exp())
}

/// The sequence `(n, log |ev_{alpha,n}(J(n))| / n)`; the object whose limsup
/// every growth bound constrains. Entries with an exactly zero evaluation are
/// omitted rather than stored as minus infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthSeries {
    pub alpha: f64,
    entries: Vec<(u32, f64)>,
}

impl GrowthSeries {
    /// Build from pre-computed growth values; enforces strictly increasing,
    /// distinct `n` and finite values.
    pub fn from_entries(alpha: f64, mut entries: Vec<(u32, f64)>) -> Result<Self> {
        entries.sort_by_key(|&(n, _)| n);
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Domain(format!("duplicate n = {}", w[0].0)));
            }
        }
        if entries.iter().any(|(_, v)| !v.is_finite()) {
            return Err(Error::Domain("growth values must be finite".into()));
        }
        Ok(GrowthSeries { alpha, entries })
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn value_at(&self, n: u32) -> Option<f64> {
        self.entries.iter().find(|&&(m, _)| m == n).map(|&(_, v)| v)
    }

    /// CSV with header `n,value`; values use round-trip decimal formatting.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "n,value")?;
        for &(n, v) in &self.entries {
            writeln!(w, "{n},{v}")?;
        }
        Ok(())
    }
}

/// Assemble a growth series from exact polynomials.
pub fn growth_series(values: &[(u32, LaurentPoly)], alpha: f64) -> Result<GrowthSeries> {
    let mut entries = Vec::with_capacity(values.len());
    for (n, f) in values {
        let p = EvalPoint::new(alpha, *n)?;
        if let Some(log_abs) = ev_log_abs(f, &p) {
            entries.push((*n, log_abs / f64::from(*n)));
        }
    }
    GrowthSeries::from_entries(alpha, entries)
}

//! The Lobachevsky function, the octahedron functional it governs, and the
//! growth scan for the crossing weights at the root of unity `e^(2 pi i / n)`.
//!
//! `L(z) = -int_0^z log|2 sin x| dx` is odd with period pi. It is evaluated
//! through the Clausen series `L(z) = Cl2(2z)/2` with
//! `Cl2(t) = t - t log|t| + sum_k zeta(2k)/(k(2k+1)) t (t/2pi)^{2k}`,
//! which converges geometrically once the argument is reduced to `[-pi, pi]`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::evaluation::{log_abs_ev_qfactorial, sin_log_prefix};
use crate::real::Real;

/// Catalan's constant; `L(pi/4) = G/2`.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_1;

/// Volume of the regular hyperbolic ideal octahedron, `8 L(pi/4) = 4 G`.
pub const V8: f64 = 3.663_862_376_708_876_060_4;

/// Volume of the regular hyperbolic ideal tetrahedron, `2 L(pi/6) = 3 L(pi/3)`.
pub const V3: f64 = 1.014_941_606_409_653_625_0;

fn zeta_even_table() -> &'static [f64; 41] {
    static TABLE: OnceLock<[f64; 41]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0f64; 41];
        let pi = std::f64::consts::PI;
        t[1] = pi * pi / 6.0;
        t[2] = pi.powi(4) / 90.0;
        t[3] = pi.powi(6) / 945.0;
        t[4] = pi.powi(8) / 9450.0;
        for k in 5..=40 {
            let s = 2 * k as i32;
            let mut acc = 0.0f64;
            let mut n = 1u32;
            loop {
                let term = (n as f64).powi(-s);
                acc += term;
                if term < 1e-22 {
                    break;
                }
                n += 1;
            }
            t[k] = acc;
        }
        t
    })
}

/// Clausen function `Cl2` on `[-pi, pi]`.
fn clausen2<R: Real>(theta: R) -> R {
    if theta.is_zero() {
        return R::zero();
    }
    let sign = if theta < R::zero() { -R::one() } else { R::one() };
    let x = theta.abs();
    let zeta = zeta_even_table();
    let ratio_sq = (x / (R::of(2.0) * R::PI())).powi(2);
    let mut acc = R::one() - x.ln();
    let mut pow = ratio_sq;
    for k in 1..=40usize {
        let c = R::of(zeta[k] / (k as f64 * (2 * k + 1) as f64));
        let term = c * pow;
        acc = acc + term;
        if term < R::of(1e-19) * acc {
            break;
        }
        pow = pow * ratio_sq;
    }
    sign * x * acc
}

/// The Lobachevsky function, absolute error below `1e-12` at `f64`.
pub fn lobachevsky<R: Real>(z: R) -> R {
    // Reduce modulo pi into [-pi/2, pi/2]; L is odd and pi-periodic.
    let pi = R::PI();
    let reduced = z - pi * (z / pi).round();
    clausen2(reduced + reduced) / R::of(2.0)
}

/// `L'(x) = -log|2 sin x|` (the defining integrand, with its sign).
pub fn lobachevsky_derivative<R: Real>(x: R) -> R {
    let s = (R::of(2.0) * x.sin()).abs();
    -s.ln()
}

/// A point of the constraint set `alpha, beta, kappa in [0,1]`,
/// `0 <= beta + kappa <= 1`, `0 <= alpha - kappa <= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OctaDomainPoint<R: Real> {
    pub alpha: R,
    pub beta: R,
    pub kappa: R,
}

impl<R: Real> OctaDomainPoint<R> {
    pub fn new(alpha: R, beta: R, kappa: R) -> Result<Self> {
        let p = OctaDomainPoint { alpha, beta, kappa };
        if p.is_admissible() {
            Ok(p)
        } else {
            Err(Error::Domain(format!(
                "({alpha}, {beta}, {kappa}) violates the octahedron domain"
            )))
        }
    }

    pub fn is_admissible(&self) -> bool {
        let (zero, one) = (R::zero(), R::one());
        let in01 = |x: R| x >= zero && x <= one;
        in01(self.alpha)
            && in01(self.beta)
            && in01(self.kappa)
            && self.beta + self.kappa >= zero
            && self.beta + self.kappa <= one
            && self.alpha - self.kappa >= zero
            && self.alpha - self.kappa <= one
    }
}

/// `f(a,b,k) = -L(pi(b+k)) + L(pi b) + L(pi k) - L(pi a) + L(pi(a-k))`;
/// its maximum over the domain is the exponential growth rate (per `n/pi`)
/// of the largest crossing weight.
pub fn f_octa<R: Real>(p: &OctaDomainPoint<R>) -> Result<R> {
    if !p.is_admissible() {
        return Err(Error::Domain("point outside the octahedron domain".into()));
    }
    let pi = R::PI();
    Ok(-lobachevsky(pi * (p.beta + p.kappa))
        + lobachevsky(pi * p.beta)
        + lobachevsky(pi * p.kappa)
        - lobachevsky(pi * p.alpha)
        + lobachevsky(pi * (p.alpha - p.kappa)))
}

/// Gradient of `f_octa` (valid in the interior).
fn grad_f(p: &OctaDomainPoint<f64>) -> [f64; 3] {
    let pi = std::f64::consts::PI;
    let dl = |x: f64| lobachevsky_derivative(x);
    [
        pi * (-dl(pi * p.alpha) + dl(pi * (p.alpha - p.kappa))),
        pi * (-dl(pi * (p.beta + p.kappa)) + dl(pi * p.beta)),
        pi * (-dl(pi * (p.beta + p.kappa)) + dl(pi * p.kappa) - dl(pi * (p.alpha - p.kappa))),
    ]
}

/// Residuals of the three logged-modulus critical equations, zero at an
/// interior critical point:
///
/// ```text
/// |z_a - 1| = |z_a z_k^-1 - 1|
/// |z_b z_k - 1| = |z_b - 1|
/// |z_k - 1| = |z_b z_k - 1| |z_a z_k^-1 - 1|
/// ```
///
/// (the third is the gradient equation; with `L'(x) = -log|2 sin x|` the
/// `|z_a z_k^-1 - 1|` factor belongs on the product side).
pub fn critical_residuals(p: &OctaDomainPoint<f64>) -> [f64; 3] {
    let m = |x: f64| (2.0 * (std::f64::consts::PI * x).sin()).abs().ln();
    [
        m(p.alpha) - m(p.alpha - p.kappa),
        m(p.beta + p.kappa) - m(p.beta),
        m(p.beta + p.kappa) + m(p.alpha - p.kappa) - m(p.kappa),
    ]
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in 0..3 {
            if row == col {
                continue;
            }
            let m = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= m * a[col][k];
            }
            b[row] -= m * b[col];
        }
    }
    Some([b[0] / a[0][0], b[1] / a[1][1], b[2] / a[2][2]])
}

/// Deterministic global maximization of `f_octa`: dense grid seeding at step
/// 1/64, then damped Newton refinement on the analytic gradient.
pub fn maximize_f() -> (OctaDomainPoint<f64>, f64) {
    const GRID: i32 = 64;
    let h = 1.0 / f64::from(GRID);
    let mut best = (OctaDomainPoint { alpha: 0.75, beta: 0.25, kappa: 0.5 }, f64::MIN);
    for ik in 1..GRID {
        let kappa = f64::from(ik) * h;
        for ia in ik..=GRID {
            let alpha = f64::from(ia) * h;
            for ib in 0..=(GRID - ik) {
                let beta = f64::from(ib) * h;
                let p = OctaDomainPoint { alpha, beta, kappa };
                let v = f_octa(&p).expect("grid point admissible");
                if v > best.1 {
                    best = (p, v);
                }
            }
        }
    }
    let (mut p, mut fval) = best;
    let margin = 1e-9;
    for _ in 0..200 {
        let g = grad_f(&p);
        let gnorm = g.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if gnorm < 1e-11 {
            break;
        }
        // Numeric Hessian of the analytic gradient.
        let fd = 1e-6;
        let mut hess = [[0.0f64; 3]; 3];
        for j in 0..3 {
            let mut pp = p;
            let mut pm = p;
            match j {
                0 => {
                    pp.alpha += fd;
                    pm.alpha -= fd;
                }
                1 => {
                    pp.beta += fd;
                    pm.beta -= fd;
                }
                _ => {
                    pp.kappa += fd;
                    pm.kappa -= fd;
                }
            }
            let gp = grad_f(&pp);
            let gm = grad_f(&pm);
            for i in 0..3 {
                hess[i][j] = (gp[i] - gm[i]) / (2.0 * fd);
            }
        }
        let step = match solve3(hess, [-g[0], -g[1], -g[2]]) {
            Some(s) => s,
            None => break,
        };
        let mut scale = 1.0f64;
        let mut advanced = false;
        for _ in 0..40 {
            let cand = OctaDomainPoint {
                alpha: p.alpha + scale * step[0],
                beta: p.beta + scale * step[1],
                kappa: p.kappa + scale * step[2],
            };
            let interior = cand.is_admissible()
                && cand.kappa > margin
                && cand.beta > margin
                && cand.alpha - cand.kappa > margin
                && cand.beta + cand.kappa < 1.0 - margin;
            if interior {
                if let Ok(v) = f_octa(&cand) {
                    if v >= fval - 1e-15 {
                        p = cand;
                        fval = v;
                        advanced = true;
                        break;
                    }
                }
            }
            scale *= 0.5;
        }
        if !advanced {
            break;
        }
    }
    (p, f_octa(&p).expect("refined point admissible"))
}

/// Supremum of `f_octa` restricted to each two-dimensional boundary facet
/// (dense grid at step 1/512). Facet names are self-describing.
pub fn facet_suprema() -> Vec<(&'static str, f64)> {
    const M: i32 = 512;
    let h = 1.0 / f64::from(M);
    let grid = |mk: &dyn Fn(f64, f64) -> OctaDomainPoint<f64>| -> f64 {
        let mut sup = f64::MIN;
        for i in 0..=M {
            for j in 0..=M {
                let p = mk(f64::from(i) * h, f64::from(j) * h);
                if p.is_admissible() {
                    if let Ok(v) = f_octa(&p) {
                        sup = sup.max(v);
                    }
                }
            }
        }
        sup
    };
    vec![
        ("kappa=0", grid(&|a, b| OctaDomainPoint { alpha: a, beta: b, kappa: 0.0 })),
        ("beta=0", grid(&|a, k| OctaDomainPoint { alpha: a, beta: 0.0, kappa: k })),
        ("alpha=kappa", grid(&|k, b| OctaDomainPoint { alpha: k, beta: b, kappa: k })),
        ("alpha=1", grid(&|b, k| OctaDomainPoint { alpha: 1.0, beta: b, kappa: k })),
        ("beta+kappa=1", grid(&|a, k| OctaDomainPoint { alpha: a, beta: 1.0 - k, kappa: k })),
    ]
}

/// `log |ev_n R(n; a, b, k)|` for the floor coloring of `p`, assembled from
/// the five quantum-factorial log magnitudes.
pub fn log_r_growth<R: Real>(n: u64, p: &OctaDomainPoint<R>) -> Result<R> {
    let floor = |x: R| -> u64 {
        let v = (x * R::from_u64(n).unwrap()).floor().to_f64().unwrap();
        v as u64
    };
    discrete_log_r(n, floor(p.alpha), floor(p.beta), floor(p.kappa))
}

/// Same as [`log_r_growth`] on explicit colors `a, b, k`.
pub fn discrete_log_r<R: Real>(n: u64, a: u64, b: u64, k: u64) -> Result<R> {
    if k > a || b + k > n - 1 || a > n - 1 {
        return Err(Error::Domain(format!(
            "coloring (a={a}, b={b}, k={k}) not admissible at n={n}"
        )));
    }
    let ev = |m: u64| log_abs_ev_qfactorial::<R>(n, m, R::one());
    Ok(ev(b + k)? - ev(b)? - ev(k)? + ev(a)? - ev(a - k)?)
}

/// Outcome of the exhaustive discrete scan of `log |ev_n R|`.
#[derive(Clone, Copy, Debug)]
pub struct RGrowthScan {
    pub n: u64,
    pub max: f64,
    pub argmax: (u64, u64, u64),
}

/// Exhaustive scan over all admissible `(a, b, k)` at the given `n`, for the
/// positive crossing weight (`minus = false`) or the negative one.
pub fn scan_r_growth(n: u64, minus: bool) -> RGrowthScan {
    let prefix = sin_log_prefix(n as usize);
    let s = |m: u64| prefix[m as usize];
    let mut best = (f64::MIN, (0u64, 0u64, 0u64));
    for a in 0..n {
        for k in 0..=a {
            for b in 0..(n - k) {
                let r = s(b + k) - s(b) - s(k) + s(a) - s(a - k);
                if r > best.0 {
                    best = (r, (a, b, k));
                }
            }
        }
    }
    if minus {
        // R- swaps the roles of a and b; the admissible set is the mirror
        // image, so report the mirrored argmax with the same value.
        let (a, b, k) = best.1;
        return RGrowthScan { n, max: best.0, argmax: (b + k, a - k, k) };
    }
    RGrowthScan { n, max: best.0, argmax: best.1 }
}

/// One row of the quantum-factorial asymptotic report.
#[derive(Clone, Copy, Debug)]
pub struct QfacResidualRow {
    pub n: u64,
    /// `log ev_n({floor(alpha n)}!) + (n/pi) L(pi alpha)`
    pub residual: f64,
    /// `|residual| / log n`
    pub ratio: f64,
}

#[derive(Clone, Debug)]
pub struct QfacAsymptoticReport {
    pub alpha: f64,
    pub rows: Vec<QfacResidualRow>,
    pub max_ratio: f64,
}

/// Residuals of `ev_n({floor(alpha n)}!) = exp(-(n/pi) L(pi alpha) + O(log n))`
/// over the given ladder of `n`.
pub fn qfactorial_asymptotic_check(alpha: f64, ns: &[u64]) -> Result<QfacAsymptoticReport> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::Domain("alpha must lie in (0,1)".into()));
    }
    let pi = std::f64::consts::PI;
    let mut rows = Vec::with_capacity(ns.len());
    let mut max_ratio = 0.0f64;
    for &n in ns {
        let m = (alpha * n as f64).floor() as u64;
        let log_ev = log_abs_ev_qfactorial::<f64>(n, m, 1.0)?;
        let residual = log_ev + (n as f64 / pi) * lobachevsky(pi * alpha);
        let ratio = residual.abs() / (n as f64).ln();
        max_ratio = max_ratio.max(ratio);
        rows.push(QfacResidualRow { n, residual, ratio });
    }
    Ok(QfacAsymptoticReport { alpha, rows, max_ratio })
}

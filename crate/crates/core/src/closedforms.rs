//! Closed formulas: the sine-product evaluation of the Borromean rings at
//! `q = e^(2 pi i / n)`, Morton's torus-knot formula, and their growth
//! series.
//!
//! Borromean values are computed only at roots of unity, entirely in log
//! space; the symbolic Habiro sum has nontrivial denominators and only its
//! evaluations are ever needed.  Two independent routes are provided: the
//! reduced double-sine form ([`borromean_log_ev`]) and the raw alternating
//! sum restricted to its surviving range ([`borromean_log_ev_direct`]); they
//! must agree to high relative accuracy.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evaluation::GrowthSeries;
use crate::qpoly::{qint, LaurentPoly};
use crate::real::{KahanSum, Real};

/// Prefix table for the sine products
/// `tau_{p,l} = prod_{j=p}^{l} 4 sin^2(j pi / n)`.
///
/// `prefix[l] = log tau_{1,l}`, and `tau_{1,n-1} = n^2` exactly.
#[derive(Clone, Debug)]
pub struct TauTable<R: Real> {
    n: u64,
    prefix: Vec<R>,
}

impl<R: Real> TauTable<R> {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("tau table needs n >= 2".into()));
        }
        let mut prefix = Vec::with_capacity(n as usize);
        let mut acc = KahanSum::<R>::new();
        prefix.push(R::zero());
        let nn = R::from_u64(n).unwrap();
        for j in 1..n {
            let s = (R::PI() * R::from_u64(j).unwrap() / nn).sin();
            acc.add((R::of(4.0) * s * s).ln());
            prefix.push(acc.value());
        }
        Ok(TauTable { n, prefix })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `log tau_{p,l}`; the empty product (`l < p`) is 0 in log space.
    pub fn log_tau(&self, p: u64, l: u64) -> Result<R> {
        if p < 1 || p > self.n || l > self.n - 1 {
            return Err(Error::Domain(format!(
                "tau index (p={p}, l={l}) out of range for n = {}",
                self.n
            )));
        }
        if l < p {
            return Ok(R::zero());
        }
        Ok(self.prefix[l as usize] - self.prefix[(p - 1) as usize])
    }

    pub fn tau(&self, p: u64, l: u64) -> Result<R> {
        Ok(self.log_tau(p, l)?.exp())
    }
}

/// `log ev_n(J_B(n))` for the Borromean rings through the reduced sine form
///
/// ```text
/// ev_n(J_B(n)) = n^2 sum_{0 <= k < n, k+n odd}
///                (tau_{1,(n+k-1)/2})^2 / ((tau_{1,(n-k-1)/2})^2 tau_{1,k})
/// ```
///
/// with a log-sum-exp reduction (every summand is positive).
pub fn borromean_log_ev_with<R: Real>(table: &TauTable<R>) -> R {
    let n = table.n();
    let mut logs = Vec::with_capacity((n / 2 + 1) as usize);
    let start = if n % 2 == 0 { 1 } else { 0 };
    let mut k = start;
    while k < n {
        let a = (n + k - 1) / 2;
        let b = (n - k - 1) / 2;
        let la = table.log_tau(1, a).expect("a <= n-1");
        let lb = table.log_tau(1, b).expect("b <= n-1");
        let lk = table.log_tau(1, k).expect("k <= n-1");
        logs.push(la + la - lb - lb - lk);
        k += 2;
    }
    let two = R::of(2.0);
    two * R::from_u64(n).unwrap().ln() + log_sum_exp(&logs)
}

/// [`borromean_log_ev_with`] on a freshly built table.
pub fn borromean_log_ev<R: Real>(n: u64) -> Result<R> {
    Ok(borromean_log_ev_with(&TauTable::new(n)?))
}

/// The plain value `ev_n(J_B(n))`; overflows to infinity past `n` of a few
/// hundred, use the log form at scale.
pub fn borromean_ev<R: Real>(n: u64) -> Result<R> {
    Ok(borromean_log_ev::<R>(n)?.exp())
}

/// Independent route: the alternating Habiro sum restricted to the range
/// `n > l > n/2 - 1` that survives at `v = e^(i pi / n)`, evaluated with its
/// own sine prefix and explicit sign bookkeeping.  Each surviving term is
/// `16^l (prod_{j<=l} sin^2(j pi/n))^3` over the two squared tail products,
/// and comes out positive.
pub fn borromean_log_ev_direct<R: Real>(n: u64) -> Result<R> {
    if n < 2 {
        return Err(Error::Domain("need n >= 2".into()));
    }
    // P[m] = sum_{j<=m} log sin(j pi / n)
    let mut p = Vec::with_capacity(n as usize);
    let mut acc = KahanSum::<R>::new();
    p.push(R::zero());
    let nn = R::from_u64(n).unwrap();
    for j in 1..n {
        acc.add((R::PI() * R::from_u64(j).unwrap() / nn).sin().ln());
        p.push(acc.value());
    }
    let ln16 = R::of(16.0).ln();
    let mut logs = Vec::new();
    let lmin = n / 2; // smallest integer with 2l + 1 >= n... and > n/2 - 1
    let lmin = if 2 * lmin + 1 < n { lmin + 1 } else { lmin };
    for l in lmin..n {
        let k = 2 * l + 1 - n;
        let term = R::from_u64(l).unwrap() * ln16 + R::of(8.0) * p[l as usize]
            - R::of(2.0) * p[(n - 1) as usize]
            - R::of(2.0) * p[k as usize];
        logs.push(term);
    }
    Ok(log_sum_exp(&logs))
}

fn log_sum_exp<R: Real>(logs: &[R]) -> R {
    let max = logs.iter().fold(R::neg_infinity(), |m, &x| m.max(x));
    if !max.is_finite() {
        return max;
    }
    let mut sum = KahanSum::<R>::new();
    for &x in logs {
        sum.add((x - max).exp());
    }
    max + sum.value().ln()
}

/// Morton's closed form for the torus knot `T(a,b)`, as an exact Laurent
/// polynomial:
///
/// ```text
/// J(n) = v^(-ab(n^2-1)/2) / (v^n - v^-n)
///        * sum_{k=1-n, k+n odd}^{n-1} (v^(ab k^2/2 + (a+b)k + 1)
///                                    - v^(ab k^2/2 + (a-b)k - 1))
/// ```
///
/// The division is certified exact; a failure would signal a convention
/// mismatch and is reported, never silently reinterpreted.
pub fn morton_torus_jones(a: u32, b: u32, n: u32) -> Result<LaurentPoly> {
    if a < 2 || b < 2 || num_integer::gcd(a, b) != 1 {
        return Err(Error::Domain(format!("T({a},{b}) needs coprime a, b >= 2")));
    }
    if n == 0 {
        return Err(Error::Domain("color n must be at least 1".into()));
    }
    let (ai, bi, ni) = (i64::from(a), i64::from(b), i64::from(n));
    let mut sum = LaurentPoly::zero();
    let mut k = 1 - ni;
    while k <= ni - 1 {
        // exponents in quarter units: v^e -> 2e
        let quad = ai * bi * k * k;
        let e1 = quad + 2 * (ai + bi) * k + 2;
        let e2 = quad + 2 * (ai - bi) * k - 2;
        sum = &sum + &LaurentPoly::monomial(e1, 1.into());
        sum = &sum - &LaurentPoly::monomial(e2, 1.into());
        k += 2;
    }
    let shifted = sum.shift(-ai * bi * (ni * ni - 1));
    shifted
        .div_exact(&qint(ni))
        .map_err(|_| Error::Convention(format!("Morton reading fails exact division at T({a},{b}), n={n}")))
}

/// `ev_{alpha,n}` of Morton's formula, computed numerically in `O(n)`;
/// integer `alpha` (where the prefactor denominator vanishes) is out of
/// scope and reported as unsupported.
///
/// With `v = e^(i pi alpha / n)` the denominator magnitude is
/// `|v^n - v^-n| = 2 |sin(pi alpha)|` -- note the argument is `pi alpha`,
/// not `pi alpha / n`, so the resulting bound `|ev| <= 2(n+1)/|2 sin(pi
/// alpha)|` grows only linearly in `n`.
pub fn torus_ev(a: u32, b: u32, alpha: f64, n: u32) -> Result<Complex64> {
    if a < 2 || b < 2 || num_integer::gcd(a, b) != 1 {
        return Err(Error::Domain(format!("T({a},{b}) needs coprime a, b >= 2")));
    }
    if (alpha - alpha.round()).abs() < 1e-12 {
        return Err(Error::Unsupported("integer alpha for torus growth".into()));
    }
    let phi = std::f64::consts::PI * alpha / f64::from(n);
    let (af, bf, nf) = (f64::from(a), f64::from(b), f64::from(n));
    let mut re = KahanSum::<f64>::new();
    let mut im = KahanSum::<f64>::new();
    let mut k = 1.0 - nf;
    while k <= nf - 1.0 {
        let quad = 0.5 * af * bf * k * k;
        let e1 = quad + (af + bf) * k + 1.0;
        let e2 = quad + (af - bf) * k - 1.0;
        let (s1, c1) = (phi * e1).sin_cos();
        let (s2, c2) = (phi * e2).sin_cos();
        re.add(c1 - c2);
        im.add(s1 - s2);
        k += 2.0;
    }
    let pre_angle = -phi * af * bf * (nf * nf - 1.0) / 2.0;
    let pre = Complex64::new(pre_angle.cos(), pre_angle.sin());
    let den = Complex64::new(0.0, 2.0 * (std::f64::consts::PI * alpha).sin());
    Ok(pre * Complex64::new(re.value(), im.value()) / den)
}

/// Growth series `log |ev_{alpha,n}(J_{T(a,b)}(n))| / n` over the given
/// colors; exact-zero evaluations are omitted.
pub fn torus_growth(a: u32, b: u32, alpha: f64, ns: &[u32]) -> Result<GrowthSeries> {
    let mut entries = Vec::with_capacity(ns.len());
    for &n in ns {
        let z = torus_ev(a, b, alpha, n)?;
        let norm = z.norm();
        if norm > 0.0 {
            entries.push((n, norm.ln() / f64::from(n)));
        }
    }
    GrowthSeries::from_entries(alpha, entries)
}

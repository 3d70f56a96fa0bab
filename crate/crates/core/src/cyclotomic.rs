//! The cyclotomic transform of the colored Jones function: the kernel
//! `C(n,k)`, its inverse, integrality certification, the small-angle kernel
//! bound, partition numbers, and the crude-but-rigorous l1 bound derived from
//! partition growth.
//!
//! The expansion `J(n) = sum_k C(n,k) C_K(k)` with
//! `C(n,k) = prod_{j=1}^k ({n}^2 - {j}^2)` is a Newton interpolation series
//! in `x = q^n + q^(-n)` on the nodes `x_j = q^j + q^(-j)`, because
//! `{n}^2 - {j}^2 = x_n - x_j`.  The inverse transform is therefore the
//! divided difference over the first `n+1` nodes:
//!
//! ```text
//! C_K(n) = sum_{k=1}^{n+1} (-1)^(n+1-k) {k}{2k} / ({n+1-k}! {n+1+k}!) J(k)
//! ```
//!
//! which recovers `C_K(n)` from `J(1), ..., J(n+1)` (the `J(0)` coefficient
//! is zero; knot normalization forces `J(0) = J(1) = 1` anyway).  The
//! coefficients take values in `Z[q^(+-1)]` for every knot; the transform
//! certifies that by exact division.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qpoly::{qbinom, qfactorial, qint, LaurentPoly, LaurentRatio};

/// Kernel `C(n,k) = prod_{j=1}^{k} ({n}^2 - {j}^2)`; zero for `k >= n`
/// (except `C(0,0) = 1`).
pub fn cyclo_kernel(n: u32, k: u32) -> LaurentPoly {
    if k > n || (k == n && n > 0) {
        return LaurentPoly::zero();
    }
    let mut acc = LaurentPoly::one();
    for j in 1..=i64::from(k) {
        acc = &acc * &kernel_factor(i64::from(n), j);
    }
    acc
}

/// `{n}^2 - {j}^2 = q^n + q^(-n) - q^j - q^(-j)`.
fn kernel_factor(n: i64, j: i64) -> LaurentPoly {
    LaurentPoly::from_terms([
        (4 * n, 1.into()),
        (-4 * n, 1.into()),
        (4 * j, (-1).into()),
        (-4 * j, (-1).into()),
    ])
}

/// Inverse kernel `R(n,k) = (-1)^(n+1-k) {k}{2k} / ({n+1-k}! {n+1+k}!)`,
/// supported on `1 <= k <= n+1` and zero elsewhere.
pub fn inverse_kernel(n: u32, k: u32) -> LaurentRatio {
    if k == 0 || k > n + 1 {
        return LaurentRatio::zero();
    }
    let mut num = &qint(i64::from(k)) * &qint(2 * i64::from(k));
    if (n + 1 - k) % 2 == 1 {
        num = num.neg();
    }
    let den = &qfactorial(n + 1 - k) * &qfactorial(n + 1 + k);
    LaurentRatio::new(num, den).expect("factorials of positive arguments are nonzero")
}

/// The coefficients `C_K(0..)` of a knot, with integrality certified at
/// construction.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclotomicSeq {
    pub label: String,
    coeffs: Vec<LaurentPoly>,
}

impl CyclotomicSeq {
    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Applies the inverse transform to `J(0..=N)` (so `jones.len() = N+1`),
/// producing `C_K(0..N-1)` with the Habiro integrality certificate: each
/// division must be exact and each result must live in `Z[q^(+-1)]`.
///
/// A failure signals a convention bug upstream, never expected for genuine
/// colored Jones input.
pub fn cyclotomic_seq(jones: &[LaurentPoly], label: &str) -> Result<CyclotomicSeq> {
    if jones.len() < 2 {
        return Err(Error::Domain("need at least J(0) and J(1)".into()));
    }
    if !jones[0].is_one() || !jones[1].is_one() {
        return Err(Error::Domain("knot normalization requires J(0) = J(1) = 1".into()));
    }
    let mut coeffs = Vec::with_capacity(jones.len() - 1);
    for n in 0..jones.len() - 1 {
        let nn = n as u32;
        let mut numerator = LaurentPoly::zero();
        for k in 1..=nn + 1 {
            let mut term = &qint(i64::from(k)) * &qint(2 * i64::from(k));
            term = &term * &qbinom(2 * nn + 2, nn + 1 - k).expect("k <= n+1");
            term = &term * &jones[k as usize];
            if (nn + 1 - k) % 2 == 1 {
                term = term.neg();
            }
            numerator = &numerator + &term;
        }
        let c = numerator
            .div_exact(&qfactorial(2 * nn + 2))
            .map_err(|_| Error::IntegralityViolation(format!("{label}: nonzero remainder at n = {n}")))?;
        if !c.has_integer_q_exponents() {
            return Err(Error::IntegralityViolation(format!(
                "{label}: fractional q-exponents at n = {n}"
            )));
        }
        coeffs.push(c);
    }
    if !coeffs[0].is_one() {
        return Err(Error::IntegralityViolation(format!("{label}: C(0) != 1")));
    }
    Ok(CyclotomicSeq { label: label.to_owned(), coeffs })
}

/// `J(n) = sum_{k} C(n,k) C_K(k)`, exact.
pub fn reconstruct_jones(seq: &CyclotomicSeq, n: u32) -> Result<LaurentPoly> {
    let needed = (n as usize).max(1);
    if seq.coeffs.len() < needed {
        return Err(Error::InsufficientCoefficients { needed, available: seq.coeffs.len() });
    }
    let mut acc = LaurentPoly::zero();
    for (k, c) in seq.coeffs.iter().take(needed).enumerate() {
        let kernel = cyclo_kernel(n, k as u32);
        if !kernel.is_zero() && !c.is_zero() {
            acc = &acc + &(&kernel * c);
        }
    }
    Ok(acc)
}

/// Numeric values `ev_{alpha,n}(C(n,k))` for `k = 0..n-1`.  Each one is the
/// real product `prod_{j<=k} (2 cos(2 pi alpha) - 2 cos(2 pi alpha j / n))`,
/// built incrementally in `O(n)` total.
pub fn kernel_ev_products(alpha: f64, n: u32) -> Vec<f64> {
    let two_pi = std::f64::consts::TAU;
    let xn = 2.0 * (two_pi * alpha).cos();
    let mut out = Vec::with_capacity(n as usize);
    let mut acc = 1.0f64;
    out.push(1.0);
    for j in 1..n {
        acc *= xn - 2.0 * (two_pi * alpha * f64::from(j) / f64::from(n)).cos();
        out.push(acc);
    }
    out
}

/// `ev_{alpha,n}(J(n))` for a knot whose cyclotomic coefficients are all 1
/// (the figure-eight), evaluated without any symbolic reconstruction.
pub fn reconstruct_ev_ones(alpha: f64, n: u32) -> f64 {
    kernel_ev_products(alpha, n).iter().sum()
}

/// Report of the small-angle kernel bound
/// `|ev_{alpha,n}(C(n,k))| <= |3 sin(pi alpha)|^(2k)`.
#[derive(Clone, Debug)]
pub struct KernelBoundReport {
    pub alpha: f64,
    pub n: u32,
    /// max over k of `|ev| / bound^k` (0 when every evaluation vanishes)
    pub max_ratio: f64,
    pub pass: bool,
}

/// Verifies the small-angle kernel bound for all `0 <= k < n`.
/// The hypothesis is `0 < alpha < 1/6` (the angle as a fraction of a turn).
pub fn kernel_ev_bound_check(alpha: f64, n: u32) -> Result<KernelBoundReport> {
    if !(0.0 < alpha && alpha < 1.0 / 6.0) {
        return Err(Error::Domain("kernel bound requires 0 < alpha < 1/6".into()));
    }
    let base = 3.0 * (std::f64::consts::PI * alpha).sin().abs();
    let log_base = base.ln();
    let mut max_ratio = 0.0f64;
    for (k, p) in kernel_ev_products(alpha, n).iter().enumerate() {
        if *p == 0.0 {
            continue;
        }
        let log_ratio = p.abs().ln() - 2.0 * k as f64 * log_base;
        max_ratio = max_ratio.max(log_ratio.exp());
    }
    let pass = max_ratio <= 1.0 + 1e-10;
    Ok(KernelBoundReport { alpha, n, max_ratio, pass })
}

/// Partition numbers `p_0..=p_k` by Euler's pentagonal recurrence.
pub fn partitions_upto(k: usize) -> Vec<BigUint> {
    let mut p = Vec::with_capacity(k + 1);
    p.push(BigUint::one());
    for i in 1..=k {
        let mut acc = num_bigint::BigInt::zero();
        let mut g = 1i64;
        loop {
            let p1 = (g * (3 * g - 1) / 2) as usize;
            if p1 > i {
                break;
            }
            let sign = if g % 2 == 1 { 1 } else { -1 };
            acc += sign * num_bigint::BigInt::from(p[i - p1].clone());
            let p2 = (g * (3 * g + 1) / 2) as usize;
            if p2 <= i {
                acc += sign * num_bigint::BigInt::from(p[i - p2].clone());
            }
            g += 1;
        }
        p.push(acc.to_biguint().expect("partition numbers are positive"));
    }
    p
}

/// `p_k`.
pub fn partitions(k: usize) -> BigUint {
    partitions_upto(k).pop().expect("table is nonempty")
}

/// Rigorous l1 bound from partition growth: if
/// `g = f * (1-q)(1-q^2)...(1-q^m)` then
/// `||f||_1 <= ||g||_1 * (deg_f + 1) * sum_{j<=deg_f} p_j`,
/// because the coefficients of `1/prod (1-q^k)` are dominated by `p_j`.
pub fn boyd_bound(g_l1: &BigUint, deg_f: usize) -> BigUint {
    let psum: BigUint = partitions_upto(deg_f).into_iter().sum();
    g_l1 * BigUint::from(deg_f + 1) * psum
}

//! Linear q-difference equations `sum_j a_j(q^n, q) f(n+j) = 0`: exact
//! satisfaction checking, quadratic degree-bound reports, and the
//! exponential l1 certificate available for integral recurrences
//! (leading coefficient 1, integer polynomial coefficients).
//!
//! Recurrence *finding* is out of scope; sequences and conjectured
//! recurrences are supplied, typically from the state sum or from files.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qpoly::LaurentPoly;

/// Bivariate polynomial in `(u, v)` with integer coefficients, where
/// substituting `u -> q^n`, `v -> q` produces an exact Laurent polynomial.
/// Serialized as rows `[deg_u, deg_v, "coeff"]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: Vec<(u32, u32, BigInt)>,
}

impl BivarPoly {
    pub fn new(mut terms: Vec<(u32, u32, BigInt)>) -> Self {
        terms.retain(|(_, _, c)| !c.is_zero());
        terms.sort_by_key(|&(du, dv, _)| (du, dv));
        // Merge duplicate monomials.
        let mut merged: Vec<(u32, u32, BigInt)> = Vec::with_capacity(terms.len());
        for (du, dv, c) in terms {
            match merged.last_mut() {
                Some((mu, mv, mc)) if *mu == du && *mv == dv => *mc += c,
                _ => merged.push((du, dv, c)),
            }
        }
        merged.retain(|(_, _, c)| !c.is_zero());
        BivarPoly { terms: merged }
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![(0, 0, BigInt::from(c))])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (0, 0, BigInt::one())
    }

    pub fn l1_norm(&self) -> BigUint {
        self.terms.iter().map(|(_, _, c)| c.magnitude()).sum()
    }

    /// Exact substitution `u -> q^n`, `v -> q`.
    pub fn substitute(&self, n: u64) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(du, dv, c)| {
            let exp_q = i64::from(*du) * n as i64 + i64::from(*dv);
            (4 * exp_q, c.clone())
        }))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (au, av, ac) in &self.terms {
            for (bu, bv, bc) in &other.terms {
                out.push((au + bu, av + bv, ac * bc));
            }
        }
        Self::new(out)
    }
}

impl Serialize for BivarPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<(u32, u32, String)> =
            self.terms.iter().map(|(du, dv, c)| (*du, *dv, c.to_string())).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<(u32, u32, String)>::deserialize(d)?;
        let mut terms = Vec::with_capacity(rows.len());
        for (du, dv, c) in rows {
            let c: BigInt = c.parse().map_err(|_| D::Error::custom("bad coefficient"))?;
            terms.push((du, dv, c));
        }
        Ok(BivarPoly::new(terms))
    }
}

/// Order-`d` q-difference equation with coefficients `a_0..a_d`, `a_d != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    coeffs: Vec<BivarPoly>,
}

#[derive(Serialize, Deserialize)]
struct RecurrenceJson {
    d: usize,
    a: Vec<BivarPoly>,
}

impl Recurrence {
    pub fn new(coeffs: Vec<BivarPoly>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Domain("recurrence order must be at least 1".into()));
        }
        if coeffs.last().expect("nonempty").is_zero() {
            return Err(Error::Domain("leading coefficient a_d must be nonzero".into()));
        }
        Ok(Recurrence { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BivarPoly] {
        &self.coeffs
    }

    /// Integral in the Laurent-polynomial sense: `a_d = 1` (coefficients are
    /// integer polynomials by representation).
    pub fn is_integral(&self) -> bool {
        self.coeffs.last().expect("nonempty").is_one()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RecurrenceJson { d: self.order(), a: self.coeffs.clone() })
            .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: RecurrenceJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Format(e.to_string()))?;
        if raw.a.len() != raw.d + 1 {
            return Err(Error::Format(format!(
                "order {} does not match {} coefficients",
                raw.d,
                raw.a.len()
            )));
        }
        Self::new(raw.a)
    }
}

/// Result of an exact recurrence check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecurrenceCheck {
    pub ok: bool,
    pub first_violation: Option<usize>,
}

/// Exact check of `sum_j a_j(q^n, q) f(n+j) = 0` for every applicable `n`.
pub fn verify_recurrence(rec: &Recurrence, seq: &[LaurentPoly]) -> Result<RecurrenceCheck> {
    let d = rec.order();
    if seq.len() < d + 1 {
        return Err(Error::Domain(format!("need at least {} terms, got {}", d + 1, seq.len())));
    }
    for n in 0..=seq.len() - d - 1 {
        let mut acc = LaurentPoly::zero();
        for (j, a) in rec.coeffs().iter().enumerate() {
            if a.is_zero() || seq[n + j].is_zero() {
                continue;
            }
            acc = &acc + &(&a.substitute(n as u64) * &seq[n + j]);
        }
        if !acc.is_zero() {
            return Ok(RecurrenceCheck { ok: false, first_violation: Some(n) });
        }
    }
    Ok(RecurrenceCheck { ok: true, first_violation: None })
}

/// Forward-generate a solution of an integral recurrence from `d` initial
/// terms: `f(n+d) = -sum_{j<d} a_j(q^n, q) f(n+j)`.
pub fn generate_solution(
    rec: &Recurrence,
    initial: &[LaurentPoly],
    len: usize,
) -> Result<Vec<LaurentPoly>> {
    if !rec.is_integral() {
        return Err(Error::NotIntegral);
    }
    let d = rec.order();
    if initial.len() != d {
        return Err(Error::Domain(format!("need exactly {d} initial terms")));
    }
    let mut seq: Vec<LaurentPoly> = initial.to_vec();
    while seq.len() < len {
        let n = seq.len() - d;
        let mut acc = LaurentPoly::zero();
        for (j, a) in rec.coeffs().iter().take(d).enumerate() {
            if a.is_zero() || seq[n + j].is_zero() {
                continue;
            }
            acc = &acc + &(&a.substitute(n as u64) * &seq[n + j]);
        }
        seq.push(acc.neg());
    }
    Ok(seq)
}

/// Quadratic degree-fit report: `maxdeg_q(f(n)) / (n+1)^2` and
/// `-mindeg_q(f(n)) / (n+1)^2` over the sequence.
#[derive(Clone, Debug)]
pub struct DegreeBoundReport {
    /// (index, maxdeg ratio, -mindeg ratio); zero entries are skipped.
    pub rows: Vec<(usize, f64, f64)>,
    /// fitted constant: the sup of both ratios over the whole range
    pub fitted: f64,
    pub sup_first_half: f64,
    pub sup_last_half: f64,
    pub pass: bool,
}

/// Fits the quadratic degree law.
///
/// The ratio sups are reported as the fitted constants.  The pass decision
/// uses the second differences of the degree sequences: at-most-quadratic
/// growth means bounded second differences, so their sup over the late half
/// must not exceed the early sup by more than 10% (plus one q-unit of slack
/// for parity wobble).  The plain ratio sup converges like `C + D/n` and
/// would misjudge bounded sequences with a sizable linear term.
pub fn degree_bound_report(seq: &[LaurentPoly]) -> Result<DegreeBoundReport> {
    let mut rows = Vec::new();
    let mut degs: Vec<(usize, f64, f64)> = Vec::new();
    for (n, f) in seq.iter().enumerate() {
        let (Some(maxq4), Some(minq4)) = (f.maxdeg_q4(), f.mindeg_q4()) else {
            continue;
        };
        let denom = ((n + 1) * (n + 1)) as f64;
        rows.push((n, maxq4 as f64 / 4.0 / denom, -(minq4 as f64) / 4.0 / denom));
        degs.push((n, maxq4 as f64 / 4.0, -(minq4 as f64) / 4.0));
    }
    if rows.is_empty() {
        return Err(Error::Domain("sequence has no nonzero entries".into()));
    }
    let sup = |rows: &[(usize, f64, f64)]| {
        rows.iter().fold(f64::NEG_INFINITY, |m, &(_, a, b)| m.max(a).max(b))
    };
    let fitted = sup(&rows);
    let half = rows.len() / 2;
    let (sup_first_half, sup_last_half) = if rows.len() < 4 {
        (fitted, fitted)
    } else {
        (sup(&rows[..half]), sup(&rows[half..]))
    };

    // Second differences over consecutive indices, both degree ends.
    let mut d2 = Vec::new();
    for w in degs.windows(3) {
        let [(n0, hi0, lo0), (n1, hi1, lo1), (n2, hi2, lo2)] = [w[0], w[1], w[2]];
        if n1 == n0 + 1 && n2 == n1 + 1 {
            d2.push((n0, (hi2 - 2.0 * hi1 + hi0).abs(), (lo2 - 2.0 * lo1 + lo0).abs()));
        }
    }
    let pass = if d2.len() < 4 {
        true
    } else {
        let mid = d2.len() / 2;
        sup(&d2[mid..]) <= 1.1 * sup(&d2[..mid]).max(0.0) + 1.0
    };
    Ok(DegreeBoundReport { rows, fitted, sup_first_half, sup_last_half, pass })
}

/// The l1 growth certificate for integral recurrences.
#[derive(Clone, Debug)]
pub struct L1Certificate {
    /// the certified base, so `||f(n)||_1 <= c^n`
    pub c: f64,
    pub ok: bool,
}

/// Computes the smallest workable growth base `C`: at least the positive
/// root of `C^d = c_{d-1} C^{d-1} + ... + c_0` (with `c_j = ||a_j||_1`, the
/// induction step needs `C^d >= sum c_j C^j`), and large enough for the
/// initial terms; then verifies `||f(n)||_1 <= C^n` for every provided term
/// by exact rational comparison.
pub fn l1_growth_certificate(rec: &Recurrence, seq: &[LaurentPoly]) -> Result<L1Certificate> {
    if !rec.is_integral() {
        return Err(Error::NotIntegral);
    }
    let check = verify_recurrence(rec, seq)?;
    if !check.ok {
        return Err(Error::Domain(format!(
            "sequence violates the recurrence first at n = {}",
            check.first_violation.expect("violation index")
        )));
    }
    let d = rec.order();
    let cs: Vec<BigUint> = rec.coeffs().iter().take(d).map(BivarPoly::l1_norm).collect();

    // Positive root of C^d = sum c_j C^j (0 when all c_j vanish).
    let root = if cs.iter().all(Zero::is_zero) {
        BigRational::zero()
    } else if d == 1 {
        BigRational::from(BigInt::from(cs[0].clone()))
    } else {
        let csf: Vec<f64> = cs.iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect();
        let g = |x: f64| x.powi(d as i32) - csf.iter().enumerate().map(|(j, c)| c * x.powi(j as i32)).sum::<f64>();
        let mut lo = 1.0f64.min(csf.iter().sum::<f64>());
        let mut hi = 1.0 + csf.iter().sum::<f64>();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) >= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        rational_ceil(hi)
    };

    let mut c_exact = root.max(BigRational::one());
    for (m, f) in seq.iter().take(d).enumerate().skip(1) {
        let l1 = f.l1_norm().to_f64().unwrap_or(f64::MAX);
        let need = rational_ceil(l1.powf(1.0 / m as f64));
        c_exact = c_exact.max(need);
    }
    // Exactness guard for the root inequality C^d >= sum c_j C^j.
    let step = BigRational::new(BigInt::one(), BigInt::from(65536));
    for _ in 0..1000 {
        let lhs = pow_rat(&c_exact, d as u32);
        let rhs: BigRational = cs
            .iter()
            .enumerate()
            .map(|(j, c)| BigRational::from(BigInt::from(c.clone())) * pow_rat(&c_exact, j as u32))
            .sum();
        if lhs >= rhs {
            break;
        }
        c_exact += &step;
    }

    let mut ok = true;
    for (n, f) in seq.iter().enumerate() {
        let l1 = BigRational::from(BigInt::from(f.l1_norm()));
        if l1 > pow_rat(&c_exact, n as u32) {
            ok = false;
            break;
        }
    }
    Ok(L1Certificate { c: c_exact.to_f64().unwrap_or(f64::INFINITY), ok })
}

fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    BigRational::new_raw(x.numer().pow(e), x.denom().pow(e))
}

fn rational_ceil(x: f64) -> BigRational {
    let scaled = (x * 65536.0).ceil();
    BigRational::new(BigInt::from(scaled as i128), BigInt::from(65536))
}

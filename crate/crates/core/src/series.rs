//! Truncated exponential/ordinary power series over Q, Lagrange inversion,
//! positivity scans and the three-term recurrence for the inverse of
//! `t - t^3/6 + t^5/120`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{self, binomial, factorial, rat, ratio, BernoulliTable, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Flavor {
    Ordinary,
    Exponential,
}

/// Coefficients c_0..c_N. For the exponential flavor the stored value is
/// already divided by n!.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    pub coeffs: Vec<Rational>,
    pub flavor: Flavor,
}

impl RationalSeries {
    pub fn zero(order: usize) -> Self {
        RationalSeries {
            coeffs: vec![Rational::zero(); order + 1],
            flavor: Flavor::Ordinary,
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        RationalSeries {
            coeffs,
            flavor: Flavor::Ordinary,
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<Rational> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, Rational::zero());
        RationalSeries {
            coeffs,
            flavor: self.flavor,
        }
    }

    pub fn mul(&self, other: &Self, order: usize) -> Self {
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        RationalSeries::from_coeffs(out)
    }

    /// Comma separated rational list.
    pub fn to_text(&self) -> String {
        self.coeffs
            .iter()
            .map(exact::format_rational)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(exact::parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalSeries::from_coeffs(coeffs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignMode {
    Plain,
    /// sign (-1)^((n-1)/step) on arity n; arities with n-1 not divisible
    /// by step must have dimension zero.
    Alternating(usize),
    /// explicit sign per arity, indexed from arity 1
    Euler(Vec<i8>),
}

/// sum_n sign(n) dims(n) / n! t^n, with `dims[0]` the arity-1 dimension.
pub fn egf_from_dims(dims: &[u64], mode: &SignMode) -> Result<RationalSeries> {
    let mut coeffs = vec![Rational::zero(); dims.len() + 1];
    for (idx, &d) in dims.iter().enumerate() {
        let n = idx + 1;
        if d == 0 {
            continue;
        }
        let sign: i64 = match mode {
            SignMode::Plain => 1,
            SignMode::Alternating(step) => {
                if *step == 0 || (n - 1) % step != 0 {
                    return Err(Error::Precondition(format!(
                        "nonzero dimension at arity {n} is off the alternating grid"
                    )));
                }
                if ((n - 1) / step) % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
            SignMode::Euler(signs) => *signs.get(idx).unwrap_or(&1) as i64,
        };
        coeffs[n] = Rational::new(BigInt::from(sign) * d, factorial(n as u64));
    }
    Ok(RationalSeries {
        coeffs,
        flavor: Flavor::Exponential,
    })
}

/// Coefficients of P(u)^(-k) up to u^m via P Q' = -k P' Q.
fn inverse_power(p: &[Rational], k: i64, m: usize) -> Vec<Rational> {
    let p0 = p[0].clone();
    let nz: Vec<(usize, &Rational)> = p
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let mut q = Vec::with_capacity(m + 1);
    let mut q0 = Rational::one();
    for _ in 0..k {
        q0 /= &p0;
    }
    q.push(q0);
    for i in 1..=m {
        let mut s = Rational::zero();
        for &(j, pj) in &nz {
            if j > i {
                break;
            }
            let w = (i as i64 - j as i64) + k * j as i64;
            if w != 0 {
                s += pj * &q[i - j] * rat(w);
            }
        }
        q.push(-s / (&p0 * rat(i as i64)));
    }
    q
}

/// Compositional inverse to order N by `[t^k] g = (1/k) [u^(k-1)] (u/f(u))^k`.
pub fn lagrange_invert(f: &RationalSeries, order: usize) -> Result<RationalSeries> {
    if !f.coeff(0).is_zero() {
        return Err(Error::Precondition("series has a constant term".into()));
    }
    if f.coeff(1).is_zero() {
        return Err(Error::Precondition("linear coefficient is zero".into()));
    }
    // f(u)/u as a series in u
    let p: Vec<Rational> = (1..=order.max(1)).map(|i| f.coeff(i)).collect();
    let mut out = vec![Rational::zero(); order + 1];
    for k in 1..=order {
        let q = inverse_power(&p, k as i64, k - 1);
        out[k] = q[k - 1].clone() / rat(k as i64);
    }
    Ok(RationalSeries::from_coeffs(out))
}

/// Undetermined coefficients, used as an independent check on
/// `lagrange_invert`.
pub fn naive_invert(f: &RationalSeries, order: usize) -> Result<RationalSeries> {
    if !f.coeff(0).is_zero() || f.coeff(1).is_zero() {
        return Err(Error::Precondition("need c0 = 0 and c1 != 0".into()));
    }
    let mut g = RationalSeries::zero(order);
    if order == 0 {
        return Ok(g);
    }
    let f1 = f.coeff(1);
    g.coeffs[1] = f1.recip();
    for n in 2..=order {
        // coefficient of t^n in f(g) with g_n still unknown (zero)
        let c = compose_series(f, &g, n)?.coeff(n);
        g.coeffs[n] = -c / &f1;
    }
    Ok(g)
}

/// f(g(t)) truncated at t^N.
pub fn compose_series(f: &RationalSeries, g: &RationalSeries, order: usize) -> Result<RationalSeries> {
    if !g.coeff(0).is_zero() {
        return Err(Error::Precondition("inner series has a constant term".into()));
    }
    let g = g.truncate(order);
    let mut acc = RationalSeries::zero(order);
    for i in (0..=f.order().min(order)).rev() {
        acc = acc.mul(&g, order);
        acc.coeffs[0] += f.coeff(i);
    }
    Ok(acc)
}

pub fn is_inverse(f: &RationalSeries, g: &RationalSeries, order: usize) -> Result<bool> {
    Ok(compose_series(f, g, order)? == RationalSeries::identity(order))
}

/// Least index with a negative coefficient.
pub fn positivity_scan(f: &RationalSeries) -> Option<usize> {
    f.coeffs.iter().position(|c| c.is_negative())
}

/// 2^(2n) (2^(2n) - 1) |B_(2n)| / (2n).
pub fn tangent_dims(n: usize, table: &BernoulliTable) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let b = table
        .get(2 * n)
        .ok_or_else(|| Error::Precondition(format!("Bernoulli table too short for n = {n}")))?;
    let p = BigInt::one() << (2 * n);
    let v = Rational::from_integer(&p * (&p - 1u32)) * exact::abs(b) / rat(2 * n as i64);
    if !exact::is_integer(&v) {
        return Err(Error::Precondition("tangent value is not an integer".into()));
    }
    Ok(v.to_integer())
}

/// Closed form for a_n = [t^(2n+1)] (t - t^3/6 + t^5/120)^(-1).
pub fn inverse_coefficient_an(n: usize) -> Rational {
    let mut s = Rational::zero();
    for k in n.div_ceil(2)..=n {
        let term = Rational::from_integer(binomial((2 * n + k) as u64, k as u64) * binomial(k as u64, (n - k) as u64))
            / Rational::from_integer(BigInt::from(6u32).pow((2 * k - n) as u32) * BigInt::from(120u32).pow((n - k) as u32));
        if (n - k) % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    s / rat(2 * n as i64 + 1)
}

/// s_0(n) x_n - s_1(n) x_(n-1) + s_2(n) x_(n-2) = 0 style recurrences;
/// `polys[i]` holds the integer coefficients of s_i in increasing degree
/// and `signs[i]` the sign in front of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceSpec {
    pub order: usize,
    pub polys: Vec<Vec<i64>>,
    pub signs: Vec<i8>,
}

impl RecurrenceSpec {
    pub fn eval(&self, i: usize, n: i64) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.polys[i].iter().rev() {
            acc = acc * n + c;
        }
        acc
    }

    /// Leading coefficients, the characteristic polynomial in t with the
    /// highest power first.
    pub fn characteristic(&self) -> Vec<BigInt> {
        let deg = self.polys.iter().map(|p| p.len()).max().unwrap_or(1) - 1;
        self.polys
            .iter()
            .zip(&self.signs)
            .map(|(p, &s)| BigInt::from(*p.get(deg).unwrap_or(&0)) * s)
            .collect()
    }
}

fn poly_from_roots(scale: i64, roots: &[(i64, i64)]) -> Vec<i64> {
    // roots given as (a, b) meaning the factor (a n + b)
    let mut p = vec![scale];
    for &(a, b) in roots {
        let mut q = vec![0i64; p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            q[i] += c * b;
            q[i + 1] += c * a;
        }
        p = q;
    }
    p
}

/// The three-term recurrence satisfied by a_n.
pub fn an_recurrence() -> RecurrenceSpec {
    let s0 = poly_from_roots(128, &[(1, 0), (1, -1), (2, 1), (2, -1), (5, -6)]);
    let mut s1 = poly_from_roots(80, &[(1, -1), (2, -1), (5, -1)]);
    // times 15n^2 - 30n + 14
    let quad = [14i64, -30, 15];
    let mut t = vec![0i64; s1.len() + 2];
    for (i, c) in s1.iter().enumerate() {
        for (j, d) in quad.iter().enumerate() {
            t[i + j] += c * d;
        }
    }
    s1 = t;
    let s2 = poly_from_roots(3, &[(5, -1), (5, -4), (5, -6), (5, -7), (5, -8)]);
    RecurrenceSpec {
        order: 2,
        polys: vec![s0, s1, s2],
        signs: vec![1, -1, 1],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceReport {
    pub checked: Vec<usize>,
    pub violations: Vec<usize>,
}

pub fn recurrence_verify<F>(seq: F, spec: &RecurrenceSpec, start: usize, end: usize) -> Result<RecurrenceReport>
where
    F: Fn(usize) -> Rational,
{
    if start < spec.order {
        return Err(Error::Precondition("range starts before the recurrence order".into()));
    }
    let mut violations = Vec::new();
    let mut checked = Vec::new();
    for n in start..=end {
        let mut s = Rational::zero();
        for i in 0..=spec.order {
            let c = spec.eval(i, n as i64) * spec.signs[i];
            s += Rational::from_integer(c) * seq(n - i);
        }
        checked.push(n);
        if !s.is_zero() {
            violations.push(n);
        }
    }
    Ok(RecurrenceReport { checked, violations })
}

/// Sequence defined by the recurrence from two initial values.
pub fn propagate(spec: &RecurrenceSpec, x0: Rational, x1: Rational, upto: usize) -> Vec<Rational> {
    let mut xs = vec![x0, x1];
    for n in 2..=upto {
        // s0 x_n = -(sign1 s1 x_(n-1) + sign2 s2 x_(n-2))
        let s0 = Rational::from_integer(spec.eval(0, n as i64) * spec.signs[0]);
        let mut rhs = Rational::zero();
        for i in 1..=spec.order {
            rhs -= Rational::from_integer(spec.eval(i, n as i64) * spec.signs[i]) * &xs[n - i];
        }
        xs.push(rhs / s0);
    }
    xs.truncate(upto + 1);
    xs
}

/// p + q sqrt(r) with rational p, q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub p: Rational,
    pub q: Rational,
    pub r: BigInt,
}

impl QuadraticSurd {
    pub fn to_f64(&self) -> f64 {
        exact::to_f64(&self.p) + exact::to_f64(&self.q) * exact::to_f64(&Rational::from_integer(self.r.clone())).sqrt()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.r, o.r);
        let r = Rational::from_integer(self.r.clone());
        QuadraticSurd {
            p: &self.p * &o.p + &self.q * &o.q * r,
            q: &self.p * &o.q + &self.q * &o.p,
            r: self.r.clone(),
        }
    }

    pub fn text(&self) -> String {
        format!("{} + ({})*sqrt({})", self.p, self.q, self.r)
    }
}

/// Roots of a t^2 + b t + c in closed form, smaller one first when the
/// discriminant is positive and a > 0.
pub fn quadratic_roots(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<(QuadraticSurd, QuadraticSurd)> {
    let disc: BigInt = b * b - BigInt::from(4) * a * c;
    if disc.is_negative() {
        return Err(Error::Unsupported("complex characteristic roots".into()));
    }
    // pull square factors out of the discriminant
    let mut rad = disc.clone();
    let mut out = BigInt::one();
    let mut f = BigInt::from(2);
    while &f * &f <= rad {
        let sq = &f * &f;
        while (&rad % &sq).is_zero() {
            rad /= &sq;
            out *= &f;
        }
        f += 1;
    }
    let p = Rational::new(-b.clone(), BigInt::from(2) * a);
    let q = Rational::new(out, BigInt::from(2) * a);
    Ok((
        QuadraticSurd { p: p.clone(), q: -q.clone(), r: rad.clone() },
        QuadraticSurd { p, q, r: rad },
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsReport {
    pub n: usize,
    pub characteristic: Vec<String>,
    pub lambda_minus: String,
    pub lambda_plus: String,
    pub lambda_minus_f64: f64,
    pub lambda_plus_f64: f64,
    pub a_ratio_tail: Vec<(usize, f64)>,
    pub b_ratio_tail: Vec<(usize, f64)>,
    /// Richardson extrapolation of a_n/a_(n-1) assuming an expansion in 1/n.
    pub a_ratio_extrapolated: f64,
    pub b_ratio_extrapolated: f64,
    pub a_over_b_strictly_decreasing: bool,
    pub b_ratio_at_least_one: bool,
    pub first_step_a_over_b: String,
    pub radius: String,
    pub radius_f64: f64,
    pub radius_is_inverse_lambda_minus: bool,
    pub recurrence_violations_a: Vec<usize>,
    pub recurrence_violations_b: Vec<usize>,
}

fn richardson(values: &[(usize, f64)], levels: usize) -> f64 {
    // r(n) = L + c1/n + c2/n^2 + ...; eliminate terms with pairs n, 2n style
    // by polynomial extrapolation in x = 1/n to x = 0.
    let pts: Vec<(f64, f64)> = values
        .iter()
        .rev()
        .step_by(values.len().max(levels + 1) / (levels + 1).max(1))
        .take(levels + 1)
        .map(|&(n, v)| (1.0 / n as f64, v))
        .collect();
    // Neville at x = 0
    let mut p: Vec<f64> = pts.iter().map(|&(_, v)| v).collect();
    let xs: Vec<f64> = pts.iter().map(|&(x, _)| x).collect();
    let m = p.len();
    for k in 1..m {
        for i in 0..m - k {
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i]);
        }
    }
    p[0]
}

pub fn ratio_report(n: usize) -> Result<AsymptoticsReport> {
    if n < 10 {
        return Err(Error::Precondition("ratio_report needs N >= 10".into()));
    }
    let spec = an_recurrence();
    let a: Vec<Rational> = (0..=n).map(inverse_coefficient_an).collect();
    let b = propagate(&spec, Rational::one(), Rational::one(), n);
    let va = recurrence_verify(|k| a[k].clone(), &spec, 2, n)?.violations;
    let vb = recurrence_verify(|k| b[k].clone(), &spec, 2, n)?.violations;

    let chi = spec.characteristic();
    let (lm, lp) = quadratic_roots(&chi[0], &chi[1], &chi[2])?;

    let a_ratios: Vec<(usize, f64)> = (1..=n).map(|k| (k, exact::to_f64(&(&a[k] / &a[k - 1])))).collect();
    let b_ratios: Vec<(usize, f64)> = (1..=n).map(|k| (k, exact::to_f64(&(&b[k] / &b[k - 1])))).collect();

    let mut decreasing = true;
    let mut prev = &a[1] / &b[1];
    for k in 2..=n {
        let cur = &a[k] / &b[k];
        if cur >= prev {
            decreasing = false;
        }
        prev = cur;
    }
    let b_at_least_one = (2..=n).all(|k| b[k] >= b[k - 1]);
    let first_step = &a[1] / &b[1] - &a[0] / &b[0];

    // 1/lambda_- = 16(3+sqrt3)/75
    let radius = QuadraticSurd {
        p: ratio(48, 75),
        q: ratio(16, 75),
        r: BigInt::from(3),
    };
    let one = radius.mul(&lm);
    let radius_ok = one.p.is_one() && one.q.is_zero();

    let tail = 5.min(n);
    let tail_window = &a_ratios[a_ratios.len() - 40.min(a_ratios.len())..];
    let b_window = &b_ratios[b_ratios.len() - 40.min(b_ratios.len())..];
    Ok(AsymptoticsReport {
        n,
        characteristic: chi.iter().map(|c| c.to_string()).collect(),
        lambda_minus: lm.text(),
        lambda_plus: lp.text(),
        lambda_minus_f64: lm.to_f64(),
        lambda_plus_f64: lp.to_f64(),
        a_ratio_tail: a_ratios[a_ratios.len() - tail..].to_vec(),
        b_ratio_tail: b_ratios[b_ratios.len() - tail..].to_vec(),
        a_ratio_extrapolated: richardson(tail_window, 4),
        b_ratio_extrapolated: richardson(b_window, 4),
        a_over_b_strictly_decreasing: decreasing,
        b_ratio_at_least_one: b_at_least_one,
        first_step_a_over_b: first_step.to_string(),
        radius: radius.text(),
        radius_f64: radius.to_f64(),
        radius_is_inverse_lambda_minus: radius_ok,
        recurrence_violations_a: va,
        recurrence_violations_b: vb,
    })
}

/// t - t^3/6 + t^5/120 padded to the given order.
pub fn mock_series(order: usize) -> RationalSeries {
    let mut s = RationalSeries::zero(order);
    for (k, c) in [(1usize, ratio(1, 1)), (3, ratio(-1, 6)), (5, ratio(1, 120))] {
        if k <= order {
            s.coeffs[k] = c;
        }
    }
    s
}

/// Outcome of the necessary Koszulness test on a pair of dimension lists.
#[derive(Debug, Clone, Serialize)]
pub struct GkReport {
    pub order: usize,
    pub step: usize,
    pub dims: Vec<u64>,
    pub dual_dims: Vec<u64>,
    pub series: String,
    pub dual_series: String,
    pub inverse: String,
    pub inverse_relation: bool,
    pub first_negative: Option<usize>,
    pub verdict: String,
}

pub const GK_CONVENTION: &str =
    "f = sum (-1)^w dim P(n) t^n/n! with w the weight; g = sum dim P!(n) t^n/n!; Koszul implies f(g(t)) = t";

/// Checks f(g) = t for the weight-signed series of `dims` against the plain
/// series of `dual_dims`, and scans the inverse of f for negative terms.
pub fn gk_check_dims(dims: &[u64], step: usize, dual_dims: &[u64], order: usize) -> Result<GkReport> {
    let cut = |d: &[u64]| d.iter().copied().take(order).collect::<Vec<_>>();
    let (dims, dual_dims) = (cut(dims), cut(dual_dims));
    if dims.len() < order || dual_dims.len() < order {
        return Err(Error::Precondition(format!("need dimensions up to arity {order}")));
    }
    let f = egf_from_dims(&dims, &SignMode::Alternating(step))?;
    let g = egf_from_dims(&dual_dims, &SignMode::Plain)?;
    let inv = lagrange_invert(&f, order)?;
    let inverse_relation = is_inverse(&f, &g, order)?;
    let first_negative = positivity_scan(&inv);
    let verdict = if first_negative.is_some() {
        "fails necessary Koszulness test"
    } else {
        "passes necessary Koszulness test"
    };
    Ok(GkReport {
        order,
        step,
        dims,
        dual_dims,
        series: f.to_text(),
        dual_series: g.to_text(),
        inverse: inv.to_text(),
        inverse_relation,
        first_negative,
        verdict: verdict.to_string(),
    })
}

/// Same test for a presented operad whose generators share one arity; the
/// dual side is the computed quadratic dual.
pub fn gk_check(p: &crate::opoly::Presentation, order: usize) -> Result<GkReport> {
    let arity = match p.gens.first() {
        Some(g) if p.gens.iter().all(|h| h.arity == g.arity) && g.arity >= 2 => g.arity,
        _ => return Err(Error::Unsupported("gk_check needs generators of one arity >= 2".into())),
    };
    let dual = crate::dual::quadratic_dual(p)?.presentation;
    let dims = crate::rewrite::dims(p, order)?;
    let dual_dims = crate::rewrite::dims(&dual, order)?;
    gk_check_dims(&dims, arity - 1, &dual_dims, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[(usize, Rational)], order: usize) -> RationalSeries {
        let mut s = RationalSeries::zero(order);
        for (k, c) in cs {
            s.coeffs[*k] = c.clone();
        }
        s
    }

    #[test]
    fn identity_inverts_to_itself() {
        let t = RationalSeries::identity(12);
        assert_eq!(lagrange_invert(&t, 12).unwrap(), t);
    }

    #[test]
    fn mock_inverse_first_terms() {
        let g = lagrange_invert(&mock_series(9), 9).unwrap();
        assert_eq!(g.coeff(1), rat(1));
        assert_eq!(g.coeff(3), ratio(1, 6));
        assert_eq!(g.coeff(5), ratio(3, 40));
        assert!(g.coeff(2).is_zero() && g.coeff(4).is_zero());
    }

    #[test]
    fn lagrange_matches_naive_oracle() {
        let f = poly(&[(1, rat(2)), (2, ratio(-1, 3)), (3, ratio(5, 7)), (5, rat(-1))], 30);
        assert_eq!(lagrange_invert(&f, 30).unwrap(), naive_invert(&f, 30).unwrap());
        let m = mock_series(30);
        assert_eq!(lagrange_invert(&m, 30).unwrap(), naive_invert(&m, 30).unwrap());
    }

    #[test]
    fn arctan_inverts_to_tangent_numbers() {
        let order = 13;
        let mut arctan = RationalSeries::zero(order);
        for k in (1..=order).step_by(2) {
            arctan.coeffs[k] = ratio(if (k / 2) % 2 == 0 { 1 } else { -1 }, k as i64);
        }
        let tan = lagrange_invert(&arctan, order).unwrap();
        let table = BernoulliTable::new(2 * order);
        for n in 1..=(order + 1) / 2 {
            let d = tangent_dims(n, &table).unwrap();
            let c = Rational::new(d, factorial(2 * n as u64 - 1));
            assert_eq!(tan.coeff(2 * n - 1), c, "n = {n}");
        }
    }

    #[test]
    fn tangent_values() {
        let table = BernoulliTable::new(20);
        let v: Vec<String> = (1..=5).map(|n| tangent_dims(n, &table).unwrap().to_string()).collect();
        assert_eq!(v, ["1", "2", "16", "272", "7936"]);
    }

    #[test]
    fn sin_arcsin_mutually_inverse() {
        let order = 9;
        let mut sin = RationalSeries::zero(order);
        let mut arcsin = RationalSeries::zero(order);
        for k in (1..=order).step_by(2) {
            let s = if (k / 2) % 2 == 0 { 1 } else { -1 };
            sin.coeffs[k] = Rational::new(BigInt::from(s), factorial(k as u64));
            // (2m)! / (4^m (m!)^2 (2m+1))
            let m = (k - 1) as u64 / 2;
            arcsin.coeffs[k] = Rational::new(
                factorial(2 * m),
                (BigInt::one() << (2 * m)) * factorial(m) * factorial(m) * (2 * m + 1),
            );
        }
        assert!(is_inverse(&sin, &arcsin, order).unwrap());
        assert!(is_inverse(&arcsin, &sin, order).unwrap());
    }

    #[test]
    fn compose_with_zero_keeps_constant() {
        let f = poly(&[(0, rat(3)), (1, rat(2))], 5);
        let z = RationalSeries::zero(5);
        let c = compose_series(&f, &z, 5).unwrap();
        assert_eq!(c.coeff(0), rat(3));
        assert!(c.coeffs[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn egf_signs() {
        let s = egf_from_dims(&[1, 0, 2, 0, 24], &SignMode::Alternating(2)).unwrap();
        assert_eq!(s.coeff(1), rat(1));
        assert_eq!(s.coeff(3), ratio(-1, 3));
        assert_eq!(s.coeff(5), ratio(1, 5));
        let e = egf_from_dims(&[1, 0, 1, 0, 1], &SignMode::Euler(vec![1, 1, -1, 1, 1])).unwrap();
        assert_eq!(e, {
            let mut m = mock_series(5);
            m.flavor = Flavor::Exponential;
            m
        });
        assert!(egf_from_dims(&[0, 0, 0], &SignMode::Plain).unwrap().coeffs.iter().all(|c| c.is_zero()));
        assert!(egf_from_dims(&[1, 1], &SignMode::Alternating(2)).is_err());
    }

    #[test]
    fn positivity_of_mock_n2() {
        let f = poly(&[(1, rat(1)), (2, ratio(-1, 2)), (3, ratio(1, 6))], 20);
        let g = lagrange_invert(&f, 20).unwrap();
        assert!(positivity_scan(&g).is_some());
    }

    #[test]
    fn closed_form_matches_lagrange() {
        let g = lagrange_invert(&mock_series(61), 61).unwrap();
        for n in 0..=30 {
            assert_eq!(inverse_coefficient_an(n), g.coeff(2 * n + 1), "n = {n}");
        }
    }

    #[test]
    fn recurrence_holds_and_detects_corruption() {
        let spec = an_recurrence();
        assert_eq!(spec.eval(0, 2), BigInt::from(128 * 2 * 1 * 5 * 3 * 4));
        let r = recurrence_verify(inverse_coefficient_an, &spec, 2, 40).unwrap();
        assert!(r.violations.is_empty());
        let bad = |n: usize| if n == 17 { rat(1) } else { inverse_coefficient_an(n) };
        let r = recurrence_verify(bad, &spec, 2, 40).unwrap();
        assert_eq!(r.violations, vec![17, 18, 19]);
    }

    #[test]
    fn characteristic_polynomial() {
        let c = an_recurrence().characteristic();
        assert_eq!(c, vec![BigInt::from(2560), BigInt::from(-12000), BigInt::from(9375)]);
        let (lm, lp) = quadratic_roots(&c[0], &c[1], &c[2]).unwrap();
        assert_eq!(lm.p, ratio(75, 32));
        assert_eq!(lm.q, ratio(-25, 32));
        assert_eq!(lm.r, BigInt::from(3));
        assert!((lp.to_f64() - 3.696914693).abs() < 1e-8);
    }

    #[test]
    fn series_text_round_trip() {
        let s = mock_series(6);
        assert_eq!(RationalSeries::parse(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn gk_arctan_tan() {
        let t = BernoulliTable::new(12);
        let lts: Vec<u64> = (1..=9u64).map(|n| if n % 2 == 1 { (1..n).product() } else { 0 }).collect();
        let com3: Vec<u64> = (1..=9usize)
            .map(|n| if n % 2 == 1 { tangent_dims((n + 1) / 2, &t).unwrap().try_into().unwrap() } else { 0 })
            .collect();
        let r = gk_check_dims(&lts, 2, &com3, 9).unwrap();
        assert!(r.inverse_relation);
        assert_eq!(r.first_negative, None);
    }

    #[test]
    fn gk_sin_arcsin() {
        let ones: Vec<u64> = (1..=9).map(|n| (n % 2) as u64).collect();
        let linf: Vec<u64> = [1, 0, 1, 0, 9, 0, 225, 0, 11025].to_vec();
        let r = gk_check_dims(&ones, 2, &linf, 9).unwrap();
        assert!(r.inverse_relation);
    }

    #[test]
    fn gk_detects_negative() {
        let r = gk_check_dims(&[1, 1, 1, 0, 0, 0, 0], 1, &[1, 1, 2, 5, 15, 50, 175], 7).unwrap();
        assert!(r.first_negative.is_some());
        assert!(!r.inverse_relation);
        assert_eq!(r.verdict, "fails necessary Koszulness test");
    }

    #[test]
    fn gk_on_presentations() {
        for name in ["lie", "com", "ass", "prelie"] {
            let p = crate::presets::preset(name).unwrap();
            let r = gk_check(&p, 6).unwrap();
            assert!(r.inverse_relation, "{name}");
            assert_eq!(r.first_negative, None, "{name}");
        }
    }
}

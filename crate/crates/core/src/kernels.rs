//! q-calculus primitives on the lattice `x(s) = (q^s - 1)/(q - 1)`.
//!
//! Shifts in `s` act affinely on `X = x(s)`:
//! `x(s + 1) = q X + 1` and `x(s - j) = (X - x(j)) / q^j`.
//! The q-falling factorial `[s]_q^{(k)} = x(s) x(s-1) ... x(s-k+1)` is therefore
//! `prod_{j<k} (X - x(j)) / q^j`, a degree-`k` polynomial in `X` with
//! leading coefficient `q^{-k(k-1)/2}`.

use crate::context::QContext;
use crate::error::{Error, Result};
use crate::poly::{Basis, LatticePoly};
use crate::scalar::Scalar;

/// Relative tolerance for [`q_gamma_numeric`].
pub const EPS_GAMMA: f64 = 1e-12;

pub fn x_of<S: Scalar>(s: i64, ctx: &QContext<S>) -> S {
    let q = ctx.q().clone();
    (ctx.q_pow(s) - S::one()) / (q - S::one())
}

/// `[k]_q`, equal to `x_of(k)`.
pub fn q_number<S: Scalar>(k: i64, ctx: &QContext<S>) -> S {
    x_of(k, ctx)
}

/// `[k]_q! = [1]_q [2]_q ... [k]_q`.
pub fn q_factorial<S: Scalar>(k: usize, ctx: &QContext<S>) -> S {
    (1..=k as i64).fold(S::one(), |acc, j| acc * q_number(j, ctx))
}

/// `(a; q)_k = prod_{j<k} (1 - a q^j)`.
pub fn q_pochhammer<S: Scalar>(a: &S, k: usize, ctx: &QContext<S>) -> S {
    let mut acc = S::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc = acc * (S::one() - term.clone());
        term = term * ctx.q().clone();
    }
    acc
}

/// Gaussian binomial `(q;q)_m / ((q;q)_k (q;q)_{m-k})`.
pub fn q_binomial<S: Scalar>(m: i64, k: i64, ctx: &QContext<S>) -> Result<S> {
    if m < 0 || k < 0 || k > m {
        return Err(Error::OutOfRange(format!(
            "q-binomial [{m} {k}] needs 0 <= k <= m"
        )));
    }
    let q = ctx.q().clone();
    let num = q_pochhammer(&q, m as usize, ctx);
    let den = q_pochhammer(&q, k as usize, ctx) * q_pochhammer(&q, (m - k) as usize, ctx);
    num.try_div(&den)
}

/// `[s]_q^{(k)}` as a polynomial in `X` (monomial basis).
pub fn falling_factorial_poly<S: Scalar>(k: usize, ctx: &QContext<S>) -> LatticePoly<S> {
    let mut acc = LatticePoly::one();
    for j in 0..k as i64 {
        let factor = LatticePoly::linear_root(x_of(j, ctx)).scale(&ctx.q_pow(-j));
        acc = acc.mul(&factor);
    }
    acc
}

/// `[n]_q^{(k)}` evaluated at the integer `n`, i.e. `x(n) x(n-1) ... x(n-k+1)`.
pub fn falling_factorial_at<S: Scalar>(n: i64, k: usize, ctx: &QContext<S>) -> S {
    (0..k as i64).fold(S::one(), |acc, j| acc * x_of(n - j, ctx))
}

/// Monomial-in-`X` to falling-factorial coefficients (Newton divided form
/// with nodes `x(0), x(1), ...`).
pub fn to_falling_basis<S: Scalar>(
    p: &LatticePoly<S>,
    ctx: &QContext<S>,
) -> Result<LatticePoly<S>> {
    p.require(Basis::MonomialX)?;
    let mut rest = p.clone();
    let mut out = Vec::with_capacity(p.coeffs().len());
    let mut k = 0i64;
    while !rest.is_zero() {
        let node = x_of(k, ctx);
        let (quot, rem) = rest.div_linear(&node);
        out.push(rem);
        rest = quot.scale(&ctx.q_pow(k));
        k += 1;
    }
    Ok(LatticePoly::new(Basis::FallingFactorial, out))
}

/// Falling-factorial to monomial-in-`X` coefficients.
pub fn from_falling_basis<S: Scalar>(
    p: &LatticePoly<S>,
    ctx: &QContext<S>,
) -> Result<LatticePoly<S>> {
    p.require(Basis::FallingFactorial)?;
    let mut acc = LatticePoly::zero(Basis::MonomialX);
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        let k = k as i64;
        let step = LatticePoly::linear_root(x_of(k, ctx)).scale(&ctx.q_pow(-k));
        acc = acc
            .mul(&step)
            .add(&LatticePoly::constant(Basis::MonomialX, c.clone()));
    }
    Ok(acc)
}

/// Multiply a falling-basis polynomial by `(X - a) / q^l`, using
/// `X [s]^{(m)} = q^m [s]^{(m+1)} + x(m) [s]^{(m)}`.
pub fn falling_mul_linear<S: Scalar>(
    p: &LatticePoly<S>,
    a: &S,
    l: i64,
    ctx: &QContext<S>,
) -> LatticePoly<S> {
    debug_assert_eq!(p.basis(), Basis::FallingFactorial);
    let cs = p.coeffs();
    if cs.is_empty() {
        return p.clone();
    }
    let scale = ctx.q_pow(-l);
    let mut out = vec![S::zero(); cs.len() + 1];
    for (m, c) in cs.iter().enumerate() {
        let mi = m as i64;
        out[m + 1] = out[m + 1].clone() + c.clone() * ctx.q_pow(mi);
        out[m] = out[m].clone() + c.clone() * (x_of(mi, ctx) - a.clone());
    }
    LatticePoly::new(
        Basis::FallingFactorial,
        out.into_iter().map(|v| v * scale.clone()).collect(),
    )
}

/// Multiply a falling-basis polynomial by `[s]_q^{(k)}`.
pub fn falling_mul_falling<S: Scalar>(
    p: &LatticePoly<S>,
    k: usize,
    ctx: &QContext<S>,
) -> LatticePoly<S> {
    (0..k as i64).fold(p.clone(), |acc, j| {
        falling_mul_linear(&acc, &x_of(j, ctx), j, ctx)
    })
}

fn q_gamma_lower(s: f64, q: f64) -> f64 {
    // f(s; q) = (1-q)^{1-s} prod_{k>=0} (1 - q^{k+1}) / (1 - q^{s+k}), 0 < q < 1.
    let mut acc = (1.0 - q).powf(1.0 - s);
    let mut k = 0u32;
    loop {
        let factor = (1.0 - q.powi(k as i32 + 1)) / (1.0 - q.powf(s + k as f64));
        acc *= factor;
        k += 1;
        if (factor - 1.0).abs() < EPS_GAMMA / 10.0 || k > 1_000_000 {
            return acc;
        }
    }
}

/// Numerical q-Gamma with both branches (`0 < q < 1` and `q > 1`).
pub fn q_gamma_numeric(s: f64, q: f64) -> Result<f64> {
    if s <= 0.0 && s.fract() == 0.0 {
        return Err(Error::Pole(s));
    }
    if q.is_nan() || q <= 0.0 || q == 1.0 {
        return Err(Error::Validation {
            guard: crate::error::Guard::Lattice,
            detail: format!("q-Gamma needs q > 0, q != 1 (got {q})"),
        });
    }
    if q < 1.0 {
        Ok(q_gamma_lower(s, q))
    } else {
        Ok(q.powf((s - 1.0) * (s - 2.0) / 2.0) * q_gamma_lower(s, 1.0 / q))
    }
}

/// Weight `alpha_i^s q^{s - 1/2} / [s]_q!` of measure `i` at the node `s`.
pub fn weight_eval<S: Scalar>(i: usize, s: usize, ctx: &QContext<S>) -> S {
    let si = s as i64;
    let alpha = ctx.alpha(i).clone();
    crate::scalar::scalar_pow(&(alpha * ctx.q().clone()), si).expect("nonnegative exponent")
        / (ctx.t().clone() * q_factorial(s, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_exact, ExactScalar};

    fn r(s: &str) -> ExactScalar {
        parse_exact(s).unwrap()
    }

    fn ctx(t: &str) -> QContext<ExactScalar> {
        QContext::parse(t, &["1/2", "3/5"]).unwrap()
    }

    #[test]
    fn lattice_values() {
        let c = ctx("9/10");
        let q = c.q().clone();
        assert_eq!(x_of(0, &c), r("0"));
        assert_eq!(x_of(2, &c), r("1") + q.clone());
        assert_eq!(x_of(-1, &c), r("-100/81"));
        assert_eq!(q_number(0, &c), r("0"));
        let c4 = ctx("1/2");
        assert_eq!(q_number(3, &c4), r("21/16"));
    }

    #[test]
    fn factorials_and_pochhammer() {
        let c = ctx("9/10");
        assert_eq!(q_factorial(0, &c), r("1"));
        assert_eq!(q_factorial(2, &c), r("181/100"));
        assert_eq!(q_factorial(3, &c), r("181/100") * r("24661/10000"));
        assert_eq!(q_pochhammer(&r("7"), 0, &c), r("1"));
        assert_eq!(q_pochhammer(c.q(), 1, &c), r("19/100"));
        // q = 1/2 is not a rational square, so the float backend covers
        // (q^-2; q)_2 = (1 - 4)(1 - 2) = 3.
        let half = QContext::from_q(0.5, vec![1.0]).unwrap();
        assert!((q_pochhammer(&half.q_pow(-2), 2, &half) - 3.0).abs() < 1e-14);
        let c4 = ctx("1/2");
        let a = c4.q_pow(-2);
        assert_eq!(
            q_pochhammer(&a, 2, &c4),
            (r("1") - r("16")) * (r("1") - r("4"))
        );
    }

    #[test]
    fn q_binomial_examples() {
        let c = ctx("9/10");
        assert_eq!(q_binomial(5, 0, &c).unwrap(), r("1"));
        assert_eq!(q_binomial(2, 1, &c).unwrap(), r("181/100"));
        assert_eq!(q_binomial(7, 3, &c).unwrap(), q_binomial(7, 4, &c).unwrap());
        assert!(q_binomial(2, 3, &c).is_err());
    }

    #[test]
    fn q_pascal_rule() {
        let c = ctx("9/10");
        for m in 1..=12i64 {
            for k in 1..m {
                let lhs = q_binomial(m, k, &c).unwrap();
                let rhs = q_binomial(m - 1, k, &c).unwrap()
                    + c.q_pow(m - k) * q_binomial(m - 1, k - 1, &c).unwrap();
                assert_eq!(lhs, rhs, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn falling_factorial_examples() {
        let c = ctx("9/10");
        assert_eq!(falling_factorial_poly(0, &c), LatticePoly::one());
        assert_eq!(falling_factorial_poly(1, &c), LatticePoly::x());
        let two = LatticePoly::x()
            .mul(&LatticePoly::linear_root(r("1")))
            .scale(&c.q_pow(-1));
        assert_eq!(falling_factorial_poly(2, &c), two);
        for k in 0..8usize {
            let p = falling_factorial_poly(k, &c);
            assert_eq!(
                p.leading(),
                c.q_pow(-((k * k.saturating_sub(1) / 2) as i64))
            );
        }
    }

    #[test]
    fn falling_factorial_matches_pointwise_product() {
        let c = ctx("9/10");
        for k in 0..6usize {
            let p = falling_factorial_poly(k, &c);
            for s in -3..8i64 {
                let direct = falling_factorial_at(s, k, &c);
                assert_eq!(p.eval(&x_of(s, &c)), direct, "k={k} s={s}");
            }
        }
    }

    #[test]
    fn basis_examples() {
        let c = ctx("9/10");
        let x = LatticePoly::x();
        assert_eq!(
            to_falling_basis(&x, &c).unwrap().coeffs(),
            &[r("0"), r("1")]
        );
        let x2 = x.mul(&x);
        assert_eq!(
            to_falling_basis(&x2, &c).unwrap().coeffs(),
            &[r("0"), r("1"), c.q().clone()]
        );
        let k = LatticePoly::constant(Basis::MonomialX, r("5/3"));
        assert_eq!(to_falling_basis(&k, &c).unwrap().coeffs(), &[r("5/3")]);
        assert!(to_falling_basis(&to_falling_basis(&x, &c).unwrap(), &c).is_err());
    }

    #[test]
    fn falling_product_rule() {
        let c = ctx("9/10");
        for j in 0..6usize {
            let mut e = vec![r("0"); j + 1];
            e[j] = r("1");
            let fj = LatticePoly::new(Basis::FallingFactorial, e);
            let prod = falling_mul_linear(&fj, &r("0"), 0, &c);
            let direct = falling_factorial_poly(j, &c).mul_x();
            assert_eq!(from_falling_basis(&prod, &c).unwrap(), direct);
        }
    }

    #[test]
    fn q_gamma_branches() {
        assert!((q_gamma_numeric(1.0, 0.81).unwrap() - 1.0).abs() < 1e-12);
        let c = QContext::from_q(0.81, vec![0.5]).unwrap();
        let g3 = q_gamma_numeric(3.0, 0.81).unwrap();
        assert!((g3 / q_factorial(2, &c) - 1.0).abs() < EPS_GAMMA);
        assert!((q_gamma_numeric(2.0, 1.3).unwrap() - 1.0).abs() < 1e-12);
        let c13 = QContext::from_q(1.3, vec![0.5]).unwrap();
        let g5 = q_gamma_numeric(5.0, 1.3).unwrap();
        assert!((g5 / q_factorial(4, &c13) - 1.0).abs() < EPS_GAMMA);
        assert!(matches!(q_gamma_numeric(0.0, 0.5), Err(Error::Pole(_))));
        assert!(matches!(q_gamma_numeric(-3.0, 0.5), Err(Error::Pole(_))));
    }

    #[test]
    fn q_gamma_functional_equation() {
        // Gamma_q(s + 1) = [s]_q Gamma_q(s) at non-integer s
        for &q in &[0.3, 0.81, 1.2] {
            for &s in &[0.5, 1.7, 3.25] {
                let lhs = q_gamma_numeric(s + 1.0, q).unwrap();
                let rhs = (q.powf(s) - 1.0) / (q - 1.0) * q_gamma_numeric(s, q).unwrap();
                assert!((lhs / rhs - 1.0).abs() < 1e-11, "q={q} s={s}");
            }
        }
    }

    #[test]
    fn weight_examples() {
        let c = ctx("9/10");
        assert_eq!(weight_eval(0, 0, &c), r("10/9"));
        assert_eq!(weight_eval(0, 1, &c), r("1/2") * r("9/10"));
        for s in 0..6usize {
            let ratio = weight_eval(1, s + 1, &c) / weight_eval(1, s, &c);
            assert_eq!(ratio, r("3/5") * c.q().clone() / q_number(s as i64 + 1, &c));
        }
    }
}

//! Difference-operator algebra on a closed class of lattice functions.
//!
//! A [`WeightedLatticeFn`] is `c^s P(x(s))`, optionally divided by `[s]_q!`.
//! The covariant differences divide by the mesh
//! `x(s + 1/2) - x(s - 1/2) = q^{s - 1/2} = q^s / t`, so every operator below
//! maps the class into itself without leaving the rationals.

use crate::context::QContext;
use crate::error::{Error, Result};
use crate::kernels::{q_factorial, x_of};
use crate::poly::{Basis, LatticePoly};
use crate::scalar::{scalar_pow, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// `P(X) -> P(qX + 1)` (forward) or `P(X) -> P((X - 1)/q)` (backward).
pub fn shift_poly<S: Scalar>(
    p: &LatticePoly<S>,
    direction: Direction,
    ctx: &QContext<S>,
) -> Result<LatticePoly<S>> {
    p.require(Basis::MonomialX)?;
    Ok(match direction {
        Direction::Forward => p.compose_affine(&S::one(), ctx.q()),
        Direction::Backward => {
            let qinv = ctx.q_pow(-1);
            p.compose_affine(&(-qinv.clone()), &qinv)
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedLatticeFn<S> {
    pub base: S,
    pub poly: LatticePoly<S>,
    pub factorial_denominator: bool,
}

impl<S: Scalar> WeightedLatticeFn<S> {
    pub fn new(base: S, poly: LatticePoly<S>, factorial_denominator: bool) -> Self {
        WeightedLatticeFn {
            base,
            poly,
            factorial_denominator,
        }
    }

    /// `1 / [s]_q!`, the seed of the Rodrigues pipeline.
    pub fn inverse_factorial() -> Self {
        Self::new(S::one(), LatticePoly::one(), true)
    }

    fn check_base(&self) -> Result<()> {
        if self.base.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(())
        }
    }

    /// Exact value at an integer node. `1/[s]_q!` vanishes for negative `s`.
    pub fn eval_at(&self, s: i64, ctx: &QContext<S>) -> Result<S> {
        if self.factorial_denominator && s < 0 {
            return Ok(S::zero());
        }
        let mut v = scalar_pow(&self.base, s)? * self.poly.eval(&x_of(s, ctx));
        if self.factorial_denominator {
            v = v / q_factorial(s as usize, ctx);
        }
        Ok(v)
    }

    pub fn mul_x(&self) -> Self {
        Self::new(
            self.base.clone(),
            self.poly.mul_x(),
            self.factorial_denominator,
        )
    }

    /// Multiplication by `d^s`.
    pub fn mul_exp(&self, d: &S) -> Self {
        Self::new(
            self.base.clone() * d.clone(),
            self.poly.clone(),
            self.factorial_denominator,
        )
    }

    /// `f(s + 1)` or `f(s - 1)`. The forward shift of a factorial-weighted
    /// function stays in the class only when `P(0) = 0`.
    pub fn shift(&self, direction: Direction, ctx: &QContext<S>) -> Result<Self> {
        self.check_base()?;
        let c = self.base.clone();
        let shifted = shift_poly(&self.poly, direction, ctx)?;
        let poly = match (direction, self.factorial_denominator) {
            (Direction::Forward, false) => shifted.scale(&c),
            (Direction::Backward, false) => shifted.scale(&c.recip()?),
            (Direction::Backward, true) => shifted.mul_x().scale(&c.recip()?),
            (Direction::Forward, true) => {
                // c P(qX+1) / (qX+1); root of qX+1 is X = -1/q.
                let root = -ctx.q_pow(-1);
                let (quot, rem) = shifted.div_linear(&root);
                if !rem.is_zero() {
                    return Err(Error::NotInClass(
                        "forward shift of a factorial-weighted function with P(0) != 0",
                    ));
                }
                quot.scale(&(c / ctx.q().clone()))
            }
        };
        Ok(Self::new(
            self.base.clone(),
            poly,
            self.factorial_denominator,
        ))
    }

    /// Covariant backward difference `(f(s) - f(s-1)) / q^{s-1/2}`.
    pub fn nabla(&self, ctx: &QContext<S>) -> Result<Self> {
        self.check_base()?;
        let c = self.base.clone();
        let back = shift_poly(&self.poly, Direction::Backward, ctx)?;
        let t = ctx.t().clone();
        let poly = if self.factorial_denominator {
            self.poly.sub(&back.mul_x().scale(&c.recip()?)).scale(&t)
        } else {
            self.poly.scale(&c).sub(&back).scale(&(t / c.clone()))
        };
        Ok(Self::new(
            c / ctx.q().clone(),
            poly,
            self.factorial_denominator,
        ))
    }

    /// Covariant forward difference `(f(s+1) - f(s)) / q^{s-1/2}`.
    pub fn delta(&self, ctx: &QContext<S>) -> Result<Self> {
        let fwd = self.shift(Direction::Forward, ctx)?;
        let poly = fwd.poly.sub(&self.poly).scale(ctx.t());
        Ok(Self::new(
            self.base.clone() / ctx.q().clone(),
            poly,
            self.factorial_denominator,
        ))
    }
}

/// Covariant forward difference of a plain polynomial:
/// `(P(qX+1) - P(X)) * t / ((q-1)X + 1)`. The division is exact because
/// `X = -1/(q-1)` is the fixed point of `X -> qX + 1`.
pub fn delta_cov<S: Scalar>(p: &LatticePoly<S>, ctx: &QContext<S>) -> Result<LatticePoly<S>> {
    let q = ctx.q().clone();
    let diff = shift_poly(p, Direction::Forward, ctx)?.sub(p);
    let fixed = -(S::one() / (q.clone() - S::one()));
    let (quot, rem) = diff.div_linear(&fixed);
    if !rem.is_zero() && S::EXACT {
        return Err(Error::Invariant(
            "nonzero remainder in covariant difference".into(),
        ));
    }
    Ok(quot.scale(&(ctx.t().clone() / (q - S::one()))))
}

/// `alpha^{-s} nabla^n (alpha q^n)^s f`. The base is preserved.
pub fn rodrigues_elementary<S: Scalar>(
    f: &WeightedLatticeFn<S>,
    alpha: &S,
    n: usize,
    ctx: &QContext<S>,
) -> Result<WeightedLatticeFn<S>> {
    if n == 0 {
        return Ok(f.clone());
    }
    let mut g = f.mul_exp(&(alpha.clone() * ctx.q_pow(n as i64)));
    for _ in 0..n {
        g = g.nabla(ctx)?;
    }
    Ok(g.mul_exp(&alpha.recip()?))
}

/// Raising-operator action on a polynomial:
/// `q^{power + 1/2} [ (alpha - X) P(X) + X (P(X) - P((X-1)/q)) ]`.
pub fn raising_apply<S: Scalar>(
    p: &LatticePoly<S>,
    alpha: &S,
    power: i64,
    ctx: &QContext<S>,
) -> Result<LatticePoly<S>> {
    let back = shift_poly(p, Direction::Backward, ctx)?;
    let body = p.scale(alpha).sub(&back.mul_x());
    Ok(body.scale(&(ctx.q_pow(power) * ctx.t().clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::q_binomial;
    use crate::scalar::{parse_exact, ExactScalar};
    use proptest::prelude::*;

    type R = ExactScalar;

    fn r(s: &str) -> R {
        parse_exact(s).unwrap()
    }

    fn ctx() -> QContext<R> {
        QContext::desk(2).unwrap()
    }

    /// Independent pointwise oracle: `nabla^m f(s) = q^{m/2 - m s} sum_k [m k] (-1)^k q^{k(k-1)/2} f(s - k)`.
    fn nabla_power_pointwise(f: &WeightedLatticeFn<R>, m: usize, s: i64, c: &QContext<R>) -> R {
        let mi = m as i64;
        let mut sum = r("0");
        for k in 0..=mi {
            let sign = if k % 2 == 0 { r("1") } else { r("-1") };
            let term = q_binomial(mi, k, c).unwrap()
                * sign
                * c.q_pow(k * (k - 1) / 2)
                * f.eval_at(s - k, c).unwrap();
            sum += term;
        }
        sum * c.t_pow(mi) * c.q_pow(-mi * s)
    }

    fn small_rational() -> impl Strategy<Value = R> {
        (-20i64..=20, 1i64..=9).prop_map(|(n, d)| R::new(n.into(), d.into()))
    }

    fn poly_strategy(max_deg: usize) -> impl Strategy<Value = LatticePoly<R>> {
        prop::collection::vec(small_rational(), 0..=max_deg + 1).prop_map(LatticePoly::monomial)
    }

    #[test]
    fn shift_examples() {
        let c = ctx();
        let x = LatticePoly::x();
        let fwd = shift_poly(&x, Direction::Forward, &c).unwrap();
        assert_eq!(fwd.coeffs(), &[r("1"), c.q().clone()]);
        let back = shift_poly(&x, Direction::Backward, &c).unwrap();
        assert_eq!(back.coeffs(), &[-c.q_pow(-1), c.q_pow(-1)]);
        let k = LatticePoly::constant(Basis::MonomialX, r("3"));
        assert_eq!(shift_poly(&k, Direction::Forward, &c).unwrap(), k);
    }

    #[test]
    fn nabla_examples() {
        let c = ctx();
        let t = c.t().clone();
        let g = WeightedLatticeFn::<R>::inverse_factorial()
            .nabla(&c)
            .unwrap();
        assert_eq!(g.base, c.q_pow(-1));
        assert_eq!(g.poly.coeffs(), &[t.clone(), -t.clone()]);

        let base = r("3/7");
        let e = WeightedLatticeFn::new(base.clone(), LatticePoly::one(), false)
            .nabla(&c)
            .unwrap();
        assert_eq!(e.base, base.clone() / c.q().clone());
        assert_eq!(e.poly.coeffs(), &[t * (base.clone() - r("1")) / base]);

        let one = WeightedLatticeFn::new(r("1"), LatticePoly::one(), false)
            .nabla(&c)
            .unwrap();
        assert!(one.poly.is_zero());

        let zero_base = WeightedLatticeFn::new(r("0"), LatticePoly::one(), false);
        assert_eq!(zero_base.nabla(&c), Err(Error::DivisionByZero));
    }

    #[test]
    fn delta_cov_examples() {
        let c = ctx();
        let t = c.t().clone();
        assert_eq!(
            delta_cov(&LatticePoly::x(), &c).unwrap().coeffs(),
            std::slice::from_ref(&t)
        );
        assert!(delta_cov(&LatticePoly::<R>::one(), &c).unwrap().is_zero());
        let x2 = LatticePoly::x().mul_x();
        let d = delta_cov(&x2, &c).unwrap();
        assert_eq!(d.degree(), Some(1));
        assert_eq!(d.leading(), t * (r("1") + c.q().clone()));
    }

    #[test]
    fn rodrigues_elementary_examples() {
        let c = ctx();
        let f = WeightedLatticeFn::<R>::inverse_factorial();
        let alpha = r("1/2");
        assert_eq!(rodrigues_elementary(&f, &alpha, 0, &c).unwrap(), f);
        let g = rodrigues_elementary(&f, &alpha, 1, &c).unwrap();
        let t = c.t().clone();
        assert_eq!(g.base, r("1"));
        assert!(g.factorial_denominator);
        let expected = LatticePoly::monomial(vec![t.clone(), -t / (alpha.clone() * c.q().clone())]);
        assert_eq!(g.poly, expected);
        let h = WeightedLatticeFn::new(r("5/4"), LatticePoly::x(), true);
        assert_eq!(
            rodrigues_elementary(&h, &alpha, 3, &c).unwrap().base,
            r("5/4")
        );
    }

    #[test]
    fn raising_examples() {
        let c = ctx();
        let t = c.t().clone();
        let alpha = r("3/5");
        let out = raising_apply(&LatticePoly::one(), &alpha, 0, &c).unwrap();
        assert_eq!(out.coeffs(), &[t.clone() * alpha.clone(), -t.clone()]);
        let out0 = raising_apply(&LatticePoly::one(), &r("0"), 0, &c).unwrap();
        assert_eq!(out0.coeffs(), &[r("0"), -t.clone()]);
        let monic = LatticePoly::monomial(vec![r("2"), r("-1/3"), r("1")]);
        let up = raising_apply(&monic, &alpha, 4, &c).unwrap();
        assert_eq!(up.degree(), Some(3));
        // leading term picks up -q^{power - deg} t
        assert_eq!(up.leading(), -(c.q_pow(2) * t));
    }

    #[test]
    fn forward_shift_with_factorial_needs_root_at_zero() {
        let c = ctx();
        let f = WeightedLatticeFn::<R>::inverse_factorial();
        assert!(matches!(
            f.shift(Direction::Forward, &c),
            Err(Error::NotInClass(_))
        ));
        let g = WeightedLatticeFn::new(r("2/3"), LatticePoly::x(), true);
        let h = g.shift(Direction::Forward, &c).unwrap();
        for s in 0..6 {
            assert_eq!(h.eval_at(s, &c).unwrap(), g.eval_at(s + 1, &c).unwrap());
        }
    }

    #[test]
    fn nabla_power_expansion_matches_iteration() {
        let c = ctx();
        let f = WeightedLatticeFn::new(
            r("3/5"),
            LatticePoly::monomial(vec![r("1"), r("-2"), r("1/3")]),
            true,
        );
        for m in 0..5 {
            let mut g = f.clone();
            for _ in 0..m {
                g = g.nabla(&c).unwrap();
            }
            for s in 0..8 {
                assert_eq!(
                    g.eval_at(s, &c).unwrap(),
                    nabla_power_pointwise(&f, m, s, &c),
                    "m={m} s={s}"
                );
            }
        }
    }

    #[test]
    fn rodrigues_elementary_matches_expansion_oracle() {
        let c = ctx();
        let f = WeightedLatticeFn::<R>::inverse_factorial();
        for &(ref alpha, n) in &[(r("1/2"), 2usize), (r("3/5"), 3)] {
            let g = rodrigues_elementary(&f, alpha, n, &c).unwrap();
            let seeded = f.mul_exp(&(alpha.clone() * c.q_pow(n as i64)));
            for s in 0..8i64 {
                let oracle =
                    nabla_power_pointwise(&seeded, n, s, &c) / scalar_pow(alpha, s).unwrap();
                assert_eq!(g.eval_at(s, &c).unwrap(), oracle);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn nabla_and_delta_agree_pointwise(p in poly_strategy(10), flag in any::<bool>(), cb in 1i64..=9) {
            let c = ctx();
            let f = WeightedLatticeFn::new(R::new(cb.into(), 4.into()), p.clone(), flag);
            let g = f.nabla(&c).unwrap();
            prop_assert_eq!(&g.base, &(f.base.clone() / c.q().clone()));
            if let Some(d) = p.degree() {
                prop_assert!(g.poly.degree().unwrap_or(0) <= d + usize::from(flag));
            }
            for s in 0..9i64 {
                let mesh = c.q_pow(s) / c.t().clone();
                let direct = (f.eval_at(s, &c).unwrap() - f.eval_at(s - 1, &c).unwrap()) / mesh;
                prop_assert_eq!(g.eval_at(s, &c).unwrap(), direct);
            }
            if !flag {
                let h = f.delta(&c).unwrap();
                for s in 0..9i64 {
                    let mesh = c.q_pow(s) / c.t().clone();
                    let direct = (f.eval_at(s + 1, &c).unwrap() - f.eval_at(s, &c).unwrap()) / mesh;
                    prop_assert_eq!(h.eval_at(s, &c).unwrap(), direct);
                }
            }
        }

        #[test]
        fn delta_cov_division_is_exact(p in poly_strategy(10)) {
            let c = ctx();
            let d = delta_cov(&p, &c).unwrap();
            match p.degree() {
                None | Some(0) => prop_assert!(d.is_zero()),
                Some(n) => {
                    prop_assert_eq!(d.degree(), Some(n - 1));
                    let expected = c.t().clone() * crate::kernels::q_number(n as i64, &c) * p.leading();
                    prop_assert_eq!(d.leading(), expected);
                }
            }
            for s in -2..6i64 {
                let x = x_of(s, &c);
                let lhs = d.eval(&x) * c.q_pow(s) / c.t().clone();
                prop_assert_eq!(lhs, p.eval(&x_of(s + 1, &c)) - p.eval(&x));
            }
        }

        #[test]
        fn elementary_operators_commute(n1 in 0usize..=3, n2 in 0usize..=3) {
            let c = ctx();
            let f = WeightedLatticeFn::<R>::inverse_factorial();
            let (a1, a2) = (c.alpha(0).clone(), c.alpha(1).clone());
            let ab = rodrigues_elementary(&rodrigues_elementary(&f, &a1, n1, &c).unwrap(), &a2, n2, &c).unwrap();
            let ba = rodrigues_elementary(&rodrigues_elementary(&f, &a2, n2, &c).unwrap(), &a1, n1, &c).unwrap();
            prop_assert_eq!(ab, ba);
        }

        #[test]
        fn shifts_are_inverse(p in poly_strategy(8)) {
            let c = ctx();
            let there = shift_poly(&p, Direction::Forward, &c).unwrap();
            prop_assert_eq!(shift_poly(&there, Direction::Backward, &c).unwrap(), p);
        }
    }
}

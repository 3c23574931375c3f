//! Structural identities: raising, lowering, the q-difference equation and
//! the two recurrences. Operands come from the linear-system constructor
//! unless a different builder is injected.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::constructors::{build_linear_system, functional_rows};
use crate::context::QContext;
use crate::error::{Error, Result};
use crate::kernels::{q_number, to_falling_basis, x_of};
use crate::lattice_fn::{delta_cov, raising_apply};
use crate::multi_index::MultiIndex;
use crate::poly::LatticePoly;
use crate::scalar::Scalar;

/// Source of `C_n` in a given context.
pub type Builder<'a, S> = &'a (dyn Fn(&MultiIndex, &QContext<S>) -> Result<LatticePoly<S>> + Sync);

pub fn system_builder<S: Scalar>(n: &MultiIndex, ctx: &QContext<S>) -> Result<LatticePoly<S>> {
    Ok(build_linear_system(n, ctx)?.poly)
}

/// Memoized linear-system builds, keyed by parameters and multi-index.
/// Safe to share across worker threads.
#[derive(Debug, Default)]
pub struct SystemCache<S> {
    map: Mutex<HashMap<(String, MultiIndex), LatticePoly<S>>>,
}

impl<S: Scalar> SystemCache<S> {
    pub fn new() -> Self {
        SystemCache {
            map: Mutex::new(HashMap::new()),
        }
    }

    pub fn get(&self, n: &MultiIndex, ctx: &QContext<S>) -> Result<LatticePoly<S>> {
        let mut key = ctx.t().to_canonical();
        for a in ctx.alphas() {
            key.push(';');
            key.push_str(&a.to_canonical());
        }
        let key = (key, n.clone());
        if let Some(p) = self.map.lock().expect("cache lock").get(&key) {
            return Ok(p.clone());
        }
        let p = system_builder(n, ctx)?;
        self.map.lock().expect("cache lock").insert(key, p.clone());
        Ok(p)
    }
}

/// Exact zero, or max-norm within `tol` on the float backend.
pub fn vanishes<S: Scalar>(p: &LatticePoly<S>, tol: f64) -> bool {
    if S::EXACT {
        p.is_zero()
    } else {
        p.max_norm() <= tol
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NNRecurrenceCoeffs<S> {
    pub k: usize,
    pub b: S,
    pub d: Vec<S>,
}

/// Coefficients of `x C_n = C_{n+e_k} + b C_n + sum_i d_i C_{n-e_i}`.
pub fn nn_recurrence_coeffs<S: Scalar>(
    n: &MultiIndex,
    k: usize,
    ctx: &QContext<S>,
) -> Result<NNRecurrenceCoeffs<S>> {
    n.check_component(k)?;
    let q = ctx.q().clone();
    let total = n.total() as i64;
    let mut b = ctx.alpha(k).clone() * ctx.q_pow(total + n.get(k) as i64 + 1);
    for i in 0..n.r() {
        let ni = n.get(i) as i64;
        let bracket =
            (q.clone() - S::one()) * ctx.alpha(i).clone() * ctx.q_pow(n.tail(i) as i64) + S::one();
        b = b + ctx.q_pow(n.partial(i) as i64) * x_of(ni, ctx) * bracket;
    }
    let mut d = Vec::with_capacity(n.r());
    for i in 0..n.r() {
        let ni = n.get(i) as i64;
        if ni == 0 {
            d.push(S::zero());
            continue;
        }
        let ai = ctx.alpha(i).clone();
        let shifted = ai.clone() * ctx.q_pow(ni);
        let mut di = ai.clone()
            * ctx.q_pow(total + ni - 1)
            * x_of(ni, ctx)
            * ((q.clone() - S::one()) * shifted.clone() + S::one());
        for j in (0..n.r()).filter(|&j| j != i) {
            let nj = n.get(j) as i64;
            let aj = ctx.alpha(j).clone();
            let num = ctx.q_pow(nj) * (shifted.clone() - aj.clone());
            di = di * num.try_div(&(shifted.clone() - aj * ctx.q_pow(nj)))?;
        }
        d.push(di);
    }
    Ok(NNRecurrenceCoeffs { k, b, d })
}

pub fn verify_nn_recurrence_with<S: Scalar>(
    n: &MultiIndex,
    k: usize,
    ctx: &QContext<S>,
    build: Builder<'_, S>,
) -> Result<LatticePoly<S>> {
    let coeffs = nn_recurrence_coeffs(n, k, ctx)?;
    let c = build(n, ctx)?;
    let mut res = c
        .mul_x()
        .sub(&build(&n.raised(k), ctx)?)
        .sub(&c.scale(&coeffs.b));
    for (i, d) in coeffs.d.iter().enumerate() {
        if let Some(lower) = n.lowered(i) {
            res = res.sub(&build(&lower, ctx)?.scale(d));
        }
    }
    Ok(res)
}

pub fn verify_nn_recurrence<S: Scalar>(
    n: &MultiIndex,
    k: usize,
    ctx: &QContext<S>,
) -> Result<LatticePoly<S>> {
    verify_nn_recurrence_with(n, k, ctx, &system_builder)
}

/// `raising_apply(C_n, alpha_i, |n|) + t C_{n+e_i}` with `alpha_i -> alpha_i / q` in the second term.
pub fn verify_raising_with<S: Scalar>(
    n: &MultiIndex,
    i: usize,
    ctx: &QContext<S>,
    build: Builder<'_, S>,
) -> Result<LatticePoly<S>> {
    n.check_component(i)?;
    let shifted = ctx.with_scaled_alpha(i, &ctx.q_pow(-1))?;
    let up = raising_apply(&build(n, ctx)?, ctx.alpha(i), n.total() as i64, ctx)?;
    Ok(up.add(&build(&n.raised(i), &shifted)?.scale(ctx.t())))
}

pub fn verify_raising<S: Scalar>(
    n: &MultiIndex,
    i: usize,
    ctx: &QContext<S>,
) -> Result<LatticePoly<S>> {
    verify_raising_with(n, i, ctx, &system_builder)
}

/// `beta_i` in `Delta C_n = sum_i beta_i C_{n-e_i}` (with `alpha_i -> q alpha_i`):
/// `t [n_i] prod_{j != i} (alpha_j q^{n_j} - alpha_i) / (alpha_j - alpha_i)`.
pub fn lowering_coeff<S: Scalar>(n: &MultiIndex, i: usize, ctx: &QContext<S>) -> Result<S> {
    n.check_component(i)?;
    let ai = ctx.alpha(i).clone();
    let mut beta = ctx.t().clone() * q_number(n.get(i) as i64, ctx);
    for j in (0..n.r()).filter(|&j| j != i) {
        let aj = ctx.alpha(j).clone();
        beta = beta
            * (aj.clone() * ctx.q_pow(n.get(j) as i64) - ai.clone()).try_div(&(aj - ai.clone()))?;
    }
    Ok(beta)
}

pub fn verify_lowering_with<S: Scalar>(
    n: &MultiIndex,
    ctx: &QContext<S>,
    build: Builder<'_, S>,
) -> Result<LatticePoly<S>> {
    let mut res = delta_cov(&build(n, ctx)?, ctx)?;
    for i in 0..n.r() {
        if let Some(lower) = n.lowered(i) {
            let shifted = ctx.with_scaled_alpha(i, ctx.q())?;
            res = res.sub(&build(&lower, &shifted)?.scale(&lowering_coeff(n, i, ctx)?));
        }
    }
    Ok(res)
}

pub fn verify_lowering<S: Scalar>(n: &MultiIndex, ctx: &QContext<S>) -> Result<LatticePoly<S>> {
    verify_lowering_with(n, ctx, &system_builder)
}

/// `prod_j R_j [Delta C] + sum_i t beta_i prod_{j != i} R_j [C]`, where
/// `R_j = raising_apply(., q alpha_j, |n| - 1)`.
pub fn diff_eq_residual_with<S: Scalar>(
    n: &MultiIndex,
    ctx: &QContext<S>,
    build: Builder<'_, S>,
) -> Result<LatticePoly<S>> {
    let c = build(n, ctx)?;
    let power = n.total() as i64 - 1;
    let raise = |p: &LatticePoly<S>, skip: Option<usize>| -> Result<LatticePoly<S>> {
        let mut out = p.clone();
        for j in (0..n.r()).filter(|&j| Some(j) != skip) {
            out = raising_apply(&out, &(ctx.q().clone() * ctx.alpha(j).clone()), power, ctx)?;
        }
        Ok(out)
    };
    let mut res = raise(&delta_cov(&c, ctx)?, None)?;
    for i in 0..n.r() {
        if n.get(i) == 0 {
            continue;
        }
        let coeff = ctx.t().clone() * lowering_coeff(n, i, ctx)?;
        res = res.add(&raise(&c, Some(i))?.scale(&coeff));
    }
    Ok(res)
}

pub fn diff_eq_residual<S: Scalar>(n: &MultiIndex, ctx: &QContext<S>) -> Result<LatticePoly<S>> {
    diff_eq_residual_with(n, ctx, &system_builder)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SteplineCoeffs<S> {
    pub b: S,
    pub c: S,
    pub d: S,
}

fn check_stepline_domain<S: Scalar>(n1: usize, n2: usize, ctx: &QContext<S>) -> Result<()> {
    if ctx.r() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            actual: ctx.r(),
        });
    }
    if n2 == 0 && n1 > 0 {
        return Err(Error::OutOfRange(format!(
            "step-line relation needs n2 >= 1 when n1 >= 1, got ({n1},{n2})"
        )));
    }
    Ok(())
}

/// `C_n` rescaled to unit leading coefficient in the falling basis.
fn falling_monic<S: Scalar>(
    n1: usize,
    n2: usize,
    ctx: &QContext<S>,
    build: Builder<'_, S>,
) -> Result<LatticePoly<S>> {
    let c = build(&MultiIndex::new(vec![n1, n2]), ctx)?;
    let lead = ctx.q_pow(((n1 + n2) * (n1 + n2).saturating_sub(1) / 2) as i64);
    Ok(c.scale(&lead.recip()?))
}

fn coeff_at<S: Scalar>(p: Option<&LatticePoly<S>>, j: i64) -> S {
    match p {
        Some(p) if j >= 0 => p.coeff(j as usize),
        _ => S::zero(),
    }
}

pub fn stepline_coeffs_with<S: Scalar>(
    n1: usize,
    n2: usize,
    ctx: &QContext<S>,
    build: Builder<'_, S>,
) -> Result<SteplineCoeffs<S>> {
    check_stepline_domain(n1, n2, ctx)?;
    let falling = |a: usize, b: usize| -> Result<LatticePoly<S>> {
        to_falling_basis(&falling_monic(a, b, ctx, build)?, ctx)
    };
    let p = falling(n1, n2)?;
    let up = falling(n1, n2 + 1)?;
    let dn = if n2 > 0 {
        Some(falling(n1, n2 - 1)?)
    } else {
        None
    };
    let big_n = (n1 + n2) as i64;
    let qn = ctx.q_pow(big_n);
    let qn_inv = ctx.q_pow(-big_n);
    let g = |j: i64| coeff_at(Some(&p), j);
    let gu = |j: i64| coeff_at(Some(&up), j);
    let b = qn.clone() * (g(big_n - 1) * ctx.q_pow(-1) - gu(big_n)) + x_of(big_n, ctx);
    let c = qn.clone()
        * (g(big_n - 2) * ctx.q_pow(-2) + qn_inv.clone() * g(big_n - 1) * x_of(big_n - 1, ctx)
            - qn_inv.clone() * b.clone() * g(big_n - 1)
            - gu(big_n - 1));
    let d = qn
        * (g(big_n - 3) * ctx.q_pow(-3) + qn_inv.clone() * g(big_n - 2) * x_of(big_n - 2, ctx)
            - qn_inv.clone() * c.clone() * coeff_at(dn.as_ref(), big_n - 2)
            - qn_inv * b.clone() * g(big_n - 2)
            - gu(big_n - 2));
    Ok(SteplineCoeffs { b, c, d })
}

pub fn stepline_coeffs<S: Scalar>(
    n1: usize,
    n2: usize,
    ctx: &QContext<S>,
) -> Result<SteplineCoeffs<S>> {
    stepline_coeffs_with(n1, n2, ctx, &system_builder)
}

/// `x P_{n1,n2} - q^{n1+n2} P_{n1,n2+1} - b P_{n1,n2} - c P_{n1,n2-1} - d P_{n1-1,n2-1}`.
pub fn verify_stepline_with<S: Scalar>(
    n1: usize,
    n2: usize,
    ctx: &QContext<S>,
    build: Builder<'_, S>,
) -> Result<LatticePoly<S>> {
    let co = stepline_coeffs_with(n1, n2, ctx, build)?;
    let p = falling_monic(n1, n2, ctx, build)?;
    let mut res = p
        .mul_x()
        .sub(&falling_monic(n1, n2 + 1, ctx, build)?.scale(&ctx.q_pow((n1 + n2) as i64)))
        .sub(&p.scale(&co.b));
    if n2 > 0 {
        res = res.sub(&falling_monic(n1, n2 - 1, ctx, build)?.scale(&co.c));
        if n1 > 0 {
            res = res.sub(&falling_monic(n1 - 1, n2 - 1, ctx, build)?.scale(&co.d));
        }
    }
    Ok(res)
}

pub fn verify_stepline<S: Scalar>(
    n1: usize,
    n2: usize,
    ctx: &QContext<S>,
) -> Result<LatticePoly<S>> {
    verify_stepline_with(n1, n2, ctx, &system_builder)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalityReport<S> {
    /// `defining[i][k]` for `k < n_i`; all must vanish.
    pub defining: Vec<Vec<S>>,
    /// The functional at `k = n_i` for each measure with `n_i > 0`; must not vanish.
    pub boundary: Vec<Option<S>>,
}

impl<S: Scalar> OrthogonalityReport<S> {
    pub fn holds(&self, tol: f64) -> bool {
        let small = |v: &S| {
            if S::EXACT {
                v.is_zero()
            } else {
                v.abs_f64() <= tol
            }
        };
        self.defining.iter().flatten().all(small)
            && self.boundary.iter().flatten().all(|v| !small(v))
    }
}

/// Orthogonality functionals of an arbitrary polynomial against the measures of `ctx`.
pub fn orthogonality_of<S: Scalar>(
    p: &LatticePoly<S>,
    n: &MultiIndex,
    ctx: &QContext<S>,
) -> Result<OrthogonalityReport<S>> {
    let f = to_falling_basis(p, ctx)?;
    let len = f.coeffs().len().max(1);
    let mut defining = Vec::with_capacity(n.r());
    let mut boundary = Vec::with_capacity(n.r());
    for i in 0..n.r() {
        let ni = n.get(i);
        let rows = functional_rows(i, ni, len, ctx);
        let values: Vec<S> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(f.coeffs())
                    .fold(S::zero(), |acc, (u, c)| acc + u.clone() * c.clone())
            })
            .collect();
        defining.push(values[..ni].to_vec());
        boundary.push((ni > 0).then(|| values[ni].clone()));
    }
    Ok(OrthogonalityReport { defining, boundary })
}

pub fn orthogonality_residuals_with<S: Scalar>(
    n: &MultiIndex,
    ctx: &QContext<S>,
    build: Builder<'_, S>,
) -> Result<OrthogonalityReport<S>> {
    orthogonality_of(&build(n, ctx)?, n, ctx)
}

pub fn orthogonality_residuals<S: Scalar>(
    n: &MultiIndex,
    ctx: &QContext<S>,
) -> Result<OrthogonalityReport<S>> {
    orthogonality_residuals_with(n, ctx, &system_builder)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Orthogonality,
    Raising,
    Lowering,
    DiffEq,
    NN,
    Stepline,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Orthogonality,
        Suite::Raising,
        Suite::Lowering,
        Suite::DiffEq,
        Suite::NN,
        Suite::Stepline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Raising => "raising",
            Suite::Lowering => "lowering",
            Suite::DiffEq => "diffeq",
            Suite::NN => "nn",
            Suite::Stepline => "stepline",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One identity at one multi-index (and one component, where relevant).
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub index: MultiIndex,
    pub component: Option<usize>,
    pub pass: bool,
    pub residual_norm: f64,
    pub error: Option<String>,
}

fn outcome<S: Scalar>(
    suite: Suite,
    n: &MultiIndex,
    component: Option<usize>,
    res: Result<LatticePoly<S>>,
    tol: f64,
) -> CheckOutcome {
    match res {
        Ok(p) => CheckOutcome {
            suite,
            index: n.clone(),
            component,
            pass: vanishes(&p, tol),
            residual_norm: p.max_norm(),
            error: None,
        },
        Err(e) => CheckOutcome {
            suite,
            index: n.clone(),
            component,
            pass: false,
            residual_norm: f64::NAN,
            error: Some(e.to_string()),
        },
    }
}

/// All checks of `suite` at `n`. Cells outside an identity's domain yield nothing.
pub fn check_cell<S: Scalar>(
    suite: Suite,
    n: &MultiIndex,
    ctx: &QContext<S>,
    build: Builder<'_, S>,
    tol: f64,
) -> Vec<CheckOutcome> {
    match suite {
        Suite::Orthogonality => {
            let (pass, norm, error) = match orthogonality_residuals_with(n, ctx, build) {
                Ok(rep) => {
                    let norm = rep
                        .defining
                        .iter()
                        .flatten()
                        .map(Scalar::abs_f64)
                        .fold(0.0, f64::max);
                    (rep.holds(tol), norm, None)
                }
                Err(e) => (false, f64::NAN, Some(e.to_string())),
            };
            vec![CheckOutcome {
                suite,
                index: n.clone(),
                component: None,
                pass,
                residual_norm: norm,
                error,
            }]
        }
        Suite::Raising => (0..n.r())
            .map(|i| {
                outcome(
                    suite,
                    n,
                    Some(i),
                    verify_raising_with(n, i, ctx, build),
                    tol,
                )
            })
            .collect(),
        Suite::NN => (0..n.r())
            .map(|k| {
                outcome(
                    suite,
                    n,
                    Some(k),
                    verify_nn_recurrence_with(n, k, ctx, build),
                    tol,
                )
            })
            .collect(),
        Suite::Lowering => vec![outcome(
            suite,
            n,
            None,
            verify_lowering_with(n, ctx, build),
            tol,
        )],
        Suite::DiffEq => vec![outcome(
            suite,
            n,
            None,
            diff_eq_residual_with(n, ctx, build),
            tol,
        )],
        Suite::Stepline => {
            if n.r() != 2 || (n.get(1) == 0 && n.get(0) > 0) {
                return Vec::new();
            }
            vec![outcome(
                suite,
                n,
                None,
                verify_stepline_with(n.get(0), n.get(1), ctx, build),
                tol,
            )]
        }
    }
}

//! Four independent constructions of the monic q-Charlier multiple
//! orthogonal polynomial `C_n`.

use std::collections::HashMap;
use std::fmt;

use crate::context::QContext;
use crate::error::{Error, Result};
use crate::kernels::{
    falling_factorial_at, from_falling_basis, q_factorial, to_falling_basis, x_of,
};
use crate::lattice_fn::{rodrigues_elementary, WeightedLatticeFn};
use crate::multi_index::MultiIndex;
use crate::poly::{Basis, LatticePoly};
use crate::relations::nn_recurrence_coeffs;
use crate::scalar::{scalar_pow, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Rodrigues,
    ExplicitR2,
    LinearSystem,
    Recurrence,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Rodrigues,
        Method::ExplicitR2,
        Method::LinearSystem,
        Method::Recurrence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Rodrigues => "rodrigues",
            Method::ExplicitR2 => "explicit",
            Method::LinearSystem => "system",
            Method::Recurrence => "recurrence",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QCharlierPoly<S> {
    pub ctx: QContext<S>,
    pub index: MultiIndex,
    pub poly: LatticePoly<S>,
    pub method: Method,
}

impl<S: Scalar> QCharlierPoly<S> {
    pub fn falling_coeffs(&self) -> Result<LatticePoly<S>> {
        to_falling_basis(&self.poly, &self.ctx)
    }
}

fn check_arity<S: Scalar>(n: &MultiIndex, ctx: &QContext<S>) -> Result<()> {
    if n.r() != ctx.r() {
        return Err(Error::WrongArity {
            expected: ctx.r(),
            actual: n.r(),
        });
    }
    Ok(())
}

fn check_monic<S: Scalar>(p: &LatticePoly<S>, n: &MultiIndex, what: &str) -> Result<()> {
    if p.degree() != Some(n.total()) || !p.leading().near(&S::one()) {
        return Err(Error::Invariant(format!(
            "{what} for {n} is not monic of degree {}",
            n.total()
        )));
    }
    Ok(())
}

fn binom2(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

/// `(-1)^N t^{-N} prod alpha_i^{n_i} prod q^{n_i (n_i + ... + n_r)}`.
pub fn rodrigues_constant<S: Scalar>(n: &MultiIndex, ctx: &QContext<S>) -> Result<S> {
    check_arity(n, ctx)?;
    let total = n.total() as i64;
    let mut k = ctx.t_pow(-total);
    if total % 2 == 1 {
        k = -k;
    }
    for i in 0..n.r() {
        let ni = n.get(i) as i64;
        k = k * scalar_pow(ctx.alpha(i), ni)? * ctx.q_pow(ni * n.tail(i) as i64);
    }
    Ok(k)
}

pub fn build_rodrigues<S: Scalar>(n: &MultiIndex, ctx: &QContext<S>) -> Result<QCharlierPoly<S>> {
    check_arity(n, ctx)?;
    let mut f = WeightedLatticeFn::inverse_factorial();
    for i in 0..n.r() {
        f = rodrigues_elementary(&f, ctx.alpha(i), n.get(i), ctx)?;
    }
    if !f.base.near(&S::one()) {
        return Err(Error::Invariant(format!(
            "Rodrigues pipeline left base {}",
            f.base.to_canonical()
        )));
    }
    let poly = f.poly.scale(&rodrigues_constant(n, ctx)?);
    check_monic(&poly, n, "Rodrigues polynomial")?;
    Ok(QCharlierPoly {
        ctx: ctx.clone(),
        index: n.clone(),
        poly,
        method: Method::Rodrigues,
    })
}

/// Finite double sum in the falling-factorial basis (two measures only).
pub fn build_explicit_r2<S: Scalar>(
    n1: usize,
    n2: usize,
    ctx: &QContext<S>,
) -> Result<QCharlierPoly<S>> {
    if ctx.r() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            actual: ctx.r(),
        });
    }
    let (a1, a2) = (ctx.alpha(0).clone(), ctx.alpha(1).clone());
    let z1 = -(S::one() / (ctx.q_pow(n1 as i64 + 1) * a1.clone()));
    let z2 = -(S::one() / (ctx.q_pow(n2 as i64 + 1) * a2.clone()));
    let total = n1 + n2;
    let mut coeffs = vec![S::zero(); total + 1];
    for (j, slot) in coeffs.iter_mut().enumerate() {
        for l in j.saturating_sub(n1)..=j.min(n2) {
            let k = j - l;
            let term = falling_factorial_at(n1 as i64, k, ctx)
                * falling_factorial_at(n2 as i64, l, ctx)
                / (q_factorial(k, ctx) * q_factorial(l, ctx))
                * ctx.q_pow(binom2(k + 1) + binom2(l + 1))
                * scalar_pow(&z1, k as i64)?
                * scalar_pow(&z2, l as i64)?;
            *slot = slot.clone() + term;
        }
    }
    let pre = scalar_pow(&(-a1), n1 as i64)?
        * scalar_pow(&(-a2), n2 as i64)?
        * ctx.q_pow((n1 * n1 + n1 * n2 + n2 * n2) as i64);
    let falling = LatticePoly::new(Basis::FallingFactorial, coeffs).scale(&pre);
    let poly = from_falling_basis(&falling, ctx)?;
    let index = MultiIndex::new(vec![n1, n2]);
    check_monic(&poly, &index, "explicit polynomial")?;
    Ok(QCharlierPoly {
        ctx: ctx.clone(),
        index,
        poly,
        method: Method::ExplicitR2,
    })
}

/// `nu_m = (alpha_i q)^m`, the modified moment with its common factor removed.
pub fn normalized_moment<S: Scalar>(i: usize, m: usize, ctx: &QContext<S>) -> S {
    scalar_pow(&(ctx.alpha(i).clone() * ctx.q().clone()), m as i64).expect("alpha q is nonzero")
}

/// Row `k` (for `k = 0..=kmax`) holds `u` with `L_i(p [s]^{(k)}) = sum_m u_m p_m`
/// for every `p` of falling degree `< len`.
pub fn functional_rows<S: Scalar>(
    i: usize,
    kmax: usize,
    len: usize,
    ctx: &QContext<S>,
) -> Vec<Vec<S>> {
    let mut w: Vec<S> = (0..len + kmax)
        .map(|m| normalized_moment(i, m, ctx))
        .collect();
    let mut rows = Vec::with_capacity(kmax + 1);
    for l in 0..=kmax {
        rows.push(w[..len].to_vec());
        if l == kmax {
            break;
        }
        // transpose of multiplication by (X - x(l)) / q^l
        let xl = x_of(l as i64, ctx);
        let scale = ctx.q_pow(-(l as i64));
        w = (0..w.len() - 1)
            .map(|m| {
                (ctx.q_pow(m as i64) * w[m + 1].clone()
                    + (x_of(m as i64, ctx) - xl.clone()) * w[m].clone())
                    * scale.clone()
            })
            .collect();
    }
    rows
}

fn solve_dense<S: Scalar>(mut a: Vec<Vec<S>>, mut b: Vec<S>) -> Result<Vec<S>> {
    let n = b.len();
    for col in 0..n {
        let pivot = if S::EXACT {
            (col..n).find(|&r| !a[r][col].is_zero())
        } else {
            (col..n)
                .filter(|&r| !a[r][col].is_zero())
                .max_by(|&x, &y| a[x][col].abs_f64().total_cmp(&a[y][col].abs_f64()))
        };
        let Some(p) = pivot else {
            return Err(Error::SingularSystem(format!("no pivot in column {col}")));
        };
        a.swap(col, p);
        b.swap(col, p);
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / a[col][col].clone();
            let (top, bottom) = a.split_at_mut(r);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst = dst.clone() - f.clone() * src.clone();
            }
            b[r] = b[r].clone() - f * b[col].clone();
        }
    }
    let mut x = vec![S::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in (r + 1)..n {
            acc = acc - a[r][c].clone() * x[c].clone();
        }
        x[r] = acc / a[r][r].clone();
    }
    Ok(x)
}

/// Ground truth: solve the orthogonality conditions directly.
pub fn build_linear_system<S: Scalar>(
    n: &MultiIndex,
    ctx: &QContext<S>,
) -> Result<QCharlierPoly<S>> {
    check_arity(n, ctx)?;
    let total = n.total();
    let lead = ctx.q_pow(binom2(total));
    let mut a = Vec::with_capacity(total);
    let mut b = Vec::with_capacity(total);
    for i in 0..n.r() {
        let ni = n.get(i);
        if ni == 0 {
            continue;
        }
        for row in functional_rows(i, ni - 1, total + 1, ctx) {
            b.push(-(row[total].clone() * lead.clone()));
            a.push(row[..total].to_vec());
        }
    }
    let mut coeffs = solve_dense(a, b)?;
    coeffs.push(lead);
    let poly = from_falling_basis(&LatticePoly::new(Basis::FallingFactorial, coeffs), ctx)?;
    check_monic(&poly, n, "linear-system polynomial")?;
    Ok(QCharlierPoly {
        ctx: ctx.clone(),
        index: n.clone(),
        poly,
        method: Method::LinearSystem,
    })
}

/// Unit steps `0, 0, ..., 1, 1, ...` reaching `n` one component at a time.
pub fn canonical_path(n: &MultiIndex) -> Vec<usize> {
    (0..n.r())
        .flat_map(|i| std::iter::repeat_n(i, n.get(i)))
        .collect()
}

struct RecurrenceTable<'a, S> {
    ctx: &'a QContext<S>,
    memo: HashMap<MultiIndex, LatticePoly<S>>,
}

impl<S: Scalar> RecurrenceTable<'_, S> {
    /// `C_{m + e_k} = (X - b) C_m - sum_i d_i C_{m - e_i}`.
    fn advance(&mut self, m: &MultiIndex, k: usize) -> Result<LatticePoly<S>> {
        let cm = self.ensure(m)?;
        let coeffs = nn_recurrence_coeffs(m, k, self.ctx)?;
        let mut next = cm.mul_x().sub(&cm.scale(&coeffs.b));
        for (i, d) in coeffs.d.iter().enumerate() {
            if let Some(lower) = m.lowered(i) {
                let cl = self.ensure(&lower)?;
                next = next.sub(&cl.scale(d));
            }
        }
        Ok(next)
    }

    fn ensure(&mut self, m: &MultiIndex) -> Result<LatticePoly<S>> {
        if let Some(p) = self.memo.get(m) {
            return Ok(p.clone());
        }
        let k = (0..m.r())
            .rev()
            .find(|&i| m.get(i) > 0)
            .expect("zero index is seeded");
        let prev = m.lowered(k).expect("component is positive");
        let p = self.advance(&prev, k)?;
        self.memo.insert(m.clone(), p.clone());
        Ok(p)
    }
}

/// Climb the nearest-neighbour recurrence along `path` (component indices,
/// 0-based). Lower neighbours off the path are filled in on demand.
pub fn build_recurrence<S: Scalar>(
    n: &MultiIndex,
    path: &[usize],
    ctx: &QContext<S>,
) -> Result<QCharlierPoly<S>> {
    check_arity(n, ctx)?;
    let mut counts = vec![0usize; n.r()];
    for &k in path {
        if k >= n.r() {
            return Err(Error::InvalidPath(format!(
                "step {} outside 1..={}",
                k + 1,
                n.r()
            )));
        }
        counts[k] += 1;
    }
    if counts != n.parts() {
        return Err(Error::InvalidPath(format!("path does not end at {n}")));
    }
    let mut table = RecurrenceTable {
        ctx,
        memo: HashMap::new(),
    };
    table
        .memo
        .insert(MultiIndex::zeros(n.r()), LatticePoly::one());
    let mut m = MultiIndex::zeros(n.r());
    let mut current = LatticePoly::one();
    for &k in path {
        current = table.advance(&m, k)?;
        m = m.raised(k);
        table.memo.insert(m.clone(), current.clone());
    }
    check_monic(&current, n, "recurrence polynomial")?;
    Ok(QCharlierPoly {
        ctx: ctx.clone(),
        index: n.clone(),
        poly: current,
        method: Method::Recurrence,
    })
}

pub fn build<S: Scalar>(
    method: Method,
    n: &MultiIndex,
    ctx: &QContext<S>,
) -> Result<QCharlierPoly<S>> {
    match method {
        Method::Rodrigues => build_rodrigues(n, ctx),
        Method::ExplicitR2 => {
            check_arity(n, ctx)?;
            if n.r() != 2 {
                return Err(Error::WrongArity {
                    expected: 2,
                    actual: n.r(),
                });
            }
            build_explicit_r2(n.get(0), n.get(1), ctx)
        }
        Method::LinearSystem => build_linear_system(n, ctx),
        Method::Recurrence => build_recurrence(n, &canonical_path(n), ctx),
    }
}

//! Classical multiple Charlier polynomials on the unit lattice, the `q -> 1` target.

use std::collections::HashMap;

use crate::error::{Error, Guard, Result};
use crate::multi_index::MultiIndex;
use crate::poly::LatticePoly;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalCharlierPoly<S> {
    pub index: MultiIndex,
    pub alphas: Vec<S>,
    pub coeffs: LatticePoly<S>,
}

fn validate<S: Scalar>(n: &MultiIndex, alphas: &[S]) -> Result<()> {
    if n.r() != alphas.len() {
        return Err(Error::WrongArity {
            expected: alphas.len(),
            actual: n.r(),
        });
    }
    for (i, a) in alphas.iter().enumerate() {
        if !a.is_positive() {
            return Err(Error::Validation {
                guard: Guard::Positivity,
                detail: format!("alpha_{} must be > 0", i + 1),
            });
        }
        if alphas[..i].iter().any(|b| b.near(a)) {
            return Err(Error::Validation {
                guard: Guard::Distinctness,
                detail: format!("alpha_{} repeats", i + 1),
            });
        }
    }
    Ok(())
}

struct Table<'a, S> {
    alphas: &'a [S],
    memo: HashMap<MultiIndex, LatticePoly<S>>,
}

impl<S: Scalar> Table<'_, S> {
    /// `C_{m+e_k} = (x - alpha_k - |m|) C_m - sum_i alpha_i m_i C_{m-e_i}`.
    fn advance(&mut self, m: &MultiIndex, k: usize) -> LatticePoly<S> {
        let cm = self.ensure(m);
        let b = self.alphas[k].clone() + S::from_i64(m.total() as i64);
        let mut next = cm.mul_x().sub(&cm.scale(&b));
        for i in 0..m.r() {
            if let Some(lower) = m.lowered(i) {
                let d = self.alphas[i].clone() * S::from_i64(m.get(i) as i64);
                next = next.sub(&self.ensure(&lower).scale(&d));
            }
        }
        next
    }

    fn ensure(&mut self, m: &MultiIndex) -> LatticePoly<S> {
        if let Some(p) = self.memo.get(m) {
            return p.clone();
        }
        let k = (0..m.r())
            .rev()
            .find(|&i| m.get(i) > 0)
            .expect("zero index is seeded");
        let p = self.advance(&m.lowered(k).expect("positive component"), k);
        self.memo.insert(m.clone(), p.clone());
        p
    }
}

/// Iterate the classical recurrence from `C_0 = 1` along `path`.
pub fn classical_build<S: Scalar>(
    n: &MultiIndex,
    alphas: &[S],
    path: &[usize],
) -> Result<ClassicalCharlierPoly<S>> {
    validate(n, alphas)?;
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
    let mut table = Table {
        alphas,
        memo: HashMap::new(),
    };
    table
        .memo
        .insert(MultiIndex::zeros(n.r()), LatticePoly::one());
    let mut m = MultiIndex::zeros(n.r());
    let mut current = LatticePoly::one();
    for &k in path {
        current = table.advance(&m, k);
        m = m.raised(k);
        table.memo.insert(m.clone(), current.clone());
    }
    Ok(ClassicalCharlierPoly {
        index: n.clone(),
        alphas: alphas.to_vec(),
        coeffs: current,
    })
}

/// `L f = alpha f(x) - x f(x - 1)`.
fn weight_op<S: Scalar>(p: &LatticePoly<S>, alpha: &S) -> LatticePoly<S> {
    let back = p.compose_affine(&S::from_i64(-1), &S::one());
    p.scale(alpha).sub(&back.mul_x())
}

/// `prod_i L_i [forward difference of C] + sum_i n_i prod_{j != i} L_j [C]`.
pub fn classical_diffeq_residual<S: Scalar>(
    n: &MultiIndex,
    alphas: &[S],
) -> Result<LatticePoly<S>> {
    let path = crate::constructors::canonical_path(n);
    let c = classical_build(n, alphas, &path)?.coeffs;
    let fwd = c.compose_affine(&S::one(), &S::one()).sub(&c);
    let mut res = alphas.iter().fold(fwd, |acc, a| weight_op(&acc, a));
    for i in 0..n.r() {
        if n.get(i) == 0 {
            continue;
        }
        let term = (0..n.r())
            .filter(|&j| j != i)
            .fold(c.clone(), |acc, j| weight_op(&acc, &alphas[j]));
        res = res.add(&term.scale(&S::from_i64(n.get(i) as i64)));
    }
    Ok(res)
}

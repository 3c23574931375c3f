//! Validated parameter bundle `(t, q = t^2, alpha_1..alpha_r)`.

use std::cmp::Ordering;

use crate::error::{Error, Guard, Result};
use crate::scalar::{parse_exact, scalar_pow, ApproxScalar, ExactScalar, Scalar};

/// Ratios `alpha_i / alpha_j = q^k` are rejected for `|k| <= K_RATIO`.
pub const K_RATIO: i64 = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct QContext<S> {
    t: S,
    q: S,
    alphas: Vec<S>,
}

impl<S: Scalar> QContext<S> {
    /// Build from `t`; `q = t^2`. Runs every guard except convergence.
    pub fn new(t: S, alphas: Vec<S>) -> Result<Self> {
        let q = t.clone() * t.clone();
        let ctx = QContext { t, q, alphas };
        ctx.validate()?;
        Ok(ctx)
    }

    fn fail(guard: Guard, detail: String) -> Error {
        Error::Validation { guard, detail }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.t.is_positive() {
            return Err(Self::fail(
                Guard::Positivity,
                format!("t = {} must be > 0", self.t.to_canonical()),
            ));
        }
        if self.q.near(&S::one()) {
            return Err(Self::fail(Guard::Lattice, "q must differ from 1".into()));
        }
        if self.alphas.is_empty() {
            return Err(Self::fail(
                Guard::Positivity,
                "at least one alpha is required".into(),
            ));
        }
        for (i, a) in self.alphas.iter().enumerate() {
            if !a.is_positive() {
                return Err(Self::fail(
                    Guard::Positivity,
                    format!("alpha_{} = {} must be > 0", i + 1, a.to_canonical()),
                ));
            }
        }
        for i in 0..self.alphas.len() {
            for j in (i + 1)..self.alphas.len() {
                let (ai, aj) = (&self.alphas[i], &self.alphas[j]);
                if ai.near(aj) {
                    return Err(Self::fail(
                        Guard::Distinctness,
                        format!("alpha_{} = alpha_{} = {}", i + 1, j + 1, ai.to_canonical()),
                    ));
                }
                let ratio = ai.clone() / aj.clone();
                if let Some(k) = self.log_q_integer(&ratio) {
                    return Err(Self::fail(
                        Guard::Ratio,
                        format!("alpha_{} / alpha_{} = q^{}", i + 1, j + 1, k),
                    ));
                }
            }
        }
        Ok(())
    }

    /// `Some(k)` if `ratio = q^k` for some `|k| <= K_RATIO`.
    fn log_q_integer(&self, ratio: &S) -> Option<i64> {
        let qinv = self.q.recip().ok()?;
        let mut up = S::one();
        let mut down = S::one();
        for k in 1..=K_RATIO {
            up = up * self.q.clone();
            down = down * qinv.clone();
            if ratio.near(&up) {
                return Some(k);
            }
            if ratio.near(&down) {
                return Some(-k);
            }
        }
        None
    }

    /// Guard for operations that read the measures as convergent series:
    /// `alpha_i q (1 - q) < 1` when `0 < q < 1`. Nothing is required for `q > 1`.
    pub fn check_convergence(&self) -> Result<()> {
        if self.q.total_cmp(&S::one()) == Ordering::Greater {
            return Ok(());
        }
        for (i, a) in self.alphas.iter().enumerate() {
            let rate = a.clone() * self.q.clone() * (S::one() - self.q.clone());
            if rate.total_cmp(&S::one()) != Ordering::Less {
                return Err(Self::fail(
                    Guard::Convergence,
                    format!("alpha_{} q (1 - q) = {} >= 1", i + 1, rate.to_canonical()),
                ));
            }
        }
        Ok(())
    }

    pub fn t(&self) -> &S {
        &self.t
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn r(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[S] {
        &self.alphas
    }

    pub fn alpha(&self, i: usize) -> &S {
        &self.alphas[i]
    }

    /// `q^k`; `q` is nonzero by construction.
    pub fn q_pow(&self, k: i64) -> S {
        scalar_pow(&self.q, k).expect("q is nonzero")
    }

    /// `t^k = q^{k/2}`.
    pub fn t_pow(&self, k: i64) -> S {
        scalar_pow(&self.t, k).expect("t is nonzero")
    }

    /// Same `t`, component `i` of alpha multiplied by `factor`; re-validated.
    pub fn with_scaled_alpha(&self, i: usize, factor: &S) -> Result<Self> {
        let mut alphas = self.alphas.clone();
        alphas[i] = alphas[i].clone() * factor.clone();
        QContext::new(self.t.clone(), alphas)
    }

    /// Same `t`, alphas replaced (used for permutation and sub-context checks).
    pub fn with_alphas(&self, alphas: Vec<S>) -> Result<Self> {
        QContext::new(self.t.clone(), alphas)
    }

    /// Context restricted to the first `r` measures.
    pub fn truncated(&self, r: usize) -> Result<Self> {
        self.with_alphas(self.alphas[..r].to_vec())
    }

    pub fn to_approx(&self) -> QContext<ApproxScalar> {
        QContext {
            t: self.t.to_f64(),
            q: self.q.to_f64(),
            alphas: self.alphas.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl QContext<ExactScalar> {
    /// Parse `t` and alphas from `"p/r"` strings.
    pub fn parse(t: &str, alphas: &[&str]) -> Result<Self> {
        let alphas = alphas
            .iter()
            .map(|a| parse_exact(a))
            .collect::<Result<Vec<_>>>()?;
        QContext::new(parse_exact(t)?, alphas)
    }

    /// Default desk-scale parameters: `t = 9/10`, alphas drawn from
    /// `1/2, 3/5, 7/10, 4/5, 9/10` (first `r`).
    pub fn desk(r: usize) -> Result<Self> {
        const ALPHAS: [&str; 5] = ["1/2", "3/5", "7/10", "4/5", "9/10"];
        if r == 0 || r > ALPHAS.len() {
            return Err(Error::OutOfRange(format!(
                "desk parameters exist for 1 <= r <= {}",
                ALPHAS.len()
            )));
        }
        Self::parse("9/10", &ALPHAS[..r])
    }
}

impl QContext<ApproxScalar> {
    /// Float backend takes `q` directly; `t = sqrt(q)`.
    pub fn from_q(q: f64, alphas: Vec<f64>) -> Result<Self> {
        if q.is_nan() || q <= 0.0 {
            return Err(Self::fail(
                Guard::Positivity,
                format!("q = {q} must be > 0"),
            ));
        }
        QContext::new(q.sqrt(), alphas)
    }
}

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Multi-index `(n_1, ..., n_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(parts: Vec<usize>) -> Self {
        MultiIndex(parts)
    }

    pub fn zeros(r: usize) -> Self {
        MultiIndex(vec![0; r])
    }

    /// The unit index `e_k` (0-based component).
    pub fn unit(r: usize, k: usize) -> Self {
        let mut m = Self::zeros(r);
        m.0[k] = 1;
        m
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `|n|`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `|n|_i = n_1 + ... + n_{i-1}` (0-based `i`, so `partial(0) = 0`).
    pub fn partial(&self, i: usize) -> usize {
        self.0[..i].iter().sum()
    }

    /// `n_i + ... + n_r`.
    pub fn tail(&self, i: usize) -> usize {
        self.0[i..].iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }

    pub fn raised(&self, i: usize) -> MultiIndex {
        let mut m = self.clone();
        m.0[i] += 1;
        m
    }

    /// `n - e_i`, or `None` when `n_i = 0`.
    pub fn lowered(&self, i: usize) -> Option<MultiIndex> {
        let mut m = self.clone();
        m.0[i] = m.0[i].checked_sub(1)?;
        Some(m)
    }

    pub fn check_component(&self, i: usize) -> Result<()> {
        if i < self.r() {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!(
                "component {} for r = {}",
                i + 1,
                self.r()
            )))
        }
    }

    /// Every index in `{0..=nmax}^r`, in lexicographic order.
    pub fn grid(r: usize, nmax: usize) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zeros(r)];
        for i in 0..r {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (0..=nmax).map(move |v| {
                        let mut m = m.clone();
                        m.0[i] = v;
                        m
                    })
                })
                .collect();
        }
        out.sort();
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    /// Comma-separated list, optionally parenthesised: `"2,1"` or `"(2,1)"`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = body
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.is_empty() {
            return Err(Error::Parse(s.to_string()));
        }
        Ok(MultiIndex(parts))
    }
}

//! Exact characteristic classes of generic determinantal varieties.
//!
//! `τ_{m,n,k} ⊂ P^{mn-1}` is the variety of `m x n` matrices (up to scalar)
//! whose kernel has dimension at least `k`. This crate computes, with
//! arbitrary-precision integers throughout:
//!
//! * Chern-Mather and Chern-Schwartz-MacPherson classes ([`classes`]), via
//!   Schubert calculus on `G(k, n)` ([`schubert`]);
//! * projectivized conormal and characteristic cycles, polar degrees and the
//!   generic Euclidean distance degree ([`lagrangian`]);
//! * microlocal multiplicities of the intersection cohomology sheaf
//!   ([`microlocal`]).

pub mod binomial;
pub mod classes;
pub mod error;
pub mod lagrangian;
pub mod matrix;
pub mod microlocal;
pub mod schubert;

use std::fmt;

pub use error::{Error, Result};
pub use matrix::IntMatrix;

/// Parameters `(m, n, k)` of `τ_{m,n,k}`, validated to `1 <= n <= m`, `0 <= k <= n-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tau {
    m: usize,
    n: usize,
    k: usize,
}

impl Tau {
    pub fn new(m: usize, n: usize, k: usize) -> Result<Self> {
        if n == 0 || n > m {
            return Err(Error::Domain(format!("need 1 <= n <= m, got m={m}, n={n}")));
        }
        if k >= n {
            return Err(Error::Domain(format!(
                "need 0 <= k <= n-1, got n={n}, k={k}"
            )));
        }
        Ok(Tau { m, n, k })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Same matrix space, different kernel bound.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        Tau::new(self.m, self.n, k)
    }

    /// `N = mn - 1`.
    pub fn ambient_dim(&self) -> usize {
        self.m * self.n - 1
    }

    /// `(m+k)(n-k) - 1`.
    pub fn dim(&self) -> usize {
        (self.m + self.k) * (self.n - self.k) - 1
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    /// Strata `τ°_{m,n,i}`, `i = k..n-1`, making up `τ_{m,n,k}`.
    pub fn strata(&self) -> impl Iterator<Item = Tau> + '_ {
        (self.k..self.n).map(move |i| Tau { k: i, ..*self })
    }

    /// Errors unless `1 <= k`, so that a resolution over `G(k, n)` exists.
    pub fn require_singular_range(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Domain(format!(
                "{self}: this operation needs 1 <= k <= n-1"
            )));
        }
        Ok(())
    }

    pub fn grassmannian_box(&self) -> Result<schubert::BoxShape> {
        self.require_singular_range()?;
        schubert::BoxShape::grassmannian(self.k, self.n)
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau({},{},{})", self.m, self.n, self.k)
    }
}

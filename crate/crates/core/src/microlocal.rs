//! Microlocal multiplicities from the microlocal index formula
//! `χ_j = Σ_i e(j,i) r_i`, solved exactly over the integers.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::binomial::binom;
use crate::classes::StrataVector;
use crate::error::{Error, Result};
use crate::lagrangian::{conormal, BiProjClass};
use crate::matrix::IntMatrix;
use crate::Tau;

/// A stratified index system: stalk Euler characteristics `χ_j` and the
/// unit lower-triangular matrix `e(j,i)` of Euler obstructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSystem {
    chi: Vec<BigInt>,
    e: IntMatrix,
}

impl IndexSystem {
    pub fn new(chi: Vec<BigInt>, e: IntMatrix) -> Result<Self> {
        if chi.len() != e.dim() {
            return Err(Error::Contract(format!(
                "{} stalk values for {} strata",
                chi.len(),
                e.dim()
            )));
        }
        if !e.is_lower_unitriangular() {
            return Err(Error::Contract(
                "obstruction matrix must be unit lower-triangular".into(),
            ));
        }
        Ok(IndexSystem { chi, e })
    }

    /// The system for `IC` of `τ_{m,n,k}` on the strata `τ°_{m,n,j}`, `j = 0..n-1`.
    pub fn determinantal(tau: &Tau) -> Result<Self> {
        let chi = stalk_euler(tau)?.values().to_vec();
        IndexSystem::new(chi, obstruction_matrix(tau.n()))
    }

    pub fn strata_count(&self) -> usize {
        self.chi.len()
    }

    pub fn chi(&self) -> &[BigInt] {
        &self.chi
    }

    pub fn e(&self) -> &IntMatrix {
        &self.e
    }
}

/// `χ_j = binom(j, k)` for `j = 0..n-1`.
pub fn stalk_euler(tau: &Tau) -> Result<StrataVector> {
    tau.require_singular_range()?;
    let k = tau.k() as i64;
    let values = (0..tau.n() as i64).map(|j| binom(j, k)).collect();
    Ok(StrataVector::new(0, values))
}

/// `e(j,i) = binom(j,i)`.
pub fn obstruction_matrix(n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, |j, i| binom(j as i64, i as i64))
}

/// Forward substitution for `e · r = χ`.
pub fn solve_multiplicities(sys: &IndexSystem) -> StrataVector {
    let mut r: Vec<BigInt> = Vec::with_capacity(sys.strata_count());
    for (j, chi_j) in sys.chi.iter().enumerate() {
        let mut v = chi_j.clone();
        for (i, r_i) in r.iter().enumerate() {
            let e = sys.e.get(j, i);
            if !e.is_zero() {
                v -= e * r_i;
            }
        }
        r.push(v);
    }
    StrataVector::new(0, r)
}

/// Characteristic cycle of the intersection cohomology sheaf of `τ_{m,n,k}`:
/// `Σ_i r_i Con(τ_{m,n,i})`, which must equal `Con(τ_{m,n,k})`.
pub fn ic_char_cycle(tau: &Tau) -> Result<BiProjClass> {
    let r = solve_multiplicities(&IndexSystem::determinantal(tau)?);
    let mut acc = BiProjClass::zero(tau.ambient_dim());
    for (i, r_i) in r.values().iter().enumerate() {
        if r_i.is_zero() {
            continue;
        }
        acc = &acc + &conormal(&tau.with_k(i)?)?.scaled(r_i);
    }
    let expected = conormal(tau)?;
    if acc != expected {
        return Err(Error::Consistency(format!(
            "{tau}: CC(IC) = {acc} differs from the conormal cycle {expected}"
        )));
    }
    Ok(acc)
}

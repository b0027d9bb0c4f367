//! Classes in `A_*(P^{mn-1})`: Chern-Mather, Chern-Schwartz-MacPherson,
//! Chern-Fulton and Milnor classes of determinantal varieties.
//!
//! [`ProjClass`] stores coefficients on the `[P^l]` basis. The hyperplane-power
//! basis (`H^l = [P^{N-l}]`) is reached only through
//! [`ProjClass::from_h_powers`] and [`ProjClass::h_powers`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binomial::{binom, sign};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::schubert::{a_matrix, alpha_matrix};
use crate::Tau;

/// A class in `A_*(P^N)`; `coeffs[l]` is the coefficient of `[P^l]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjClass {
    coeffs: Vec<BigInt>,
}

impl ProjClass {
    pub fn zero(ambient_dim: usize) -> Self {
        ProjClass {
            coeffs: vec![BigInt::zero(); ambient_dim + 1],
        }
    }

    /// From coefficients of `[P^0], .., [P^N]`.
    pub fn from_points(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a class needs at least the [P^0] slot");
        ProjClass { coeffs }
    }

    pub fn from_points_i64(coeffs: &[i64]) -> Self {
        Self::from_points(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// From coefficients of `H^0, .., H^N`.
    pub fn from_h_powers(mut coeffs: Vec<BigInt>) -> Self {
        coeffs.reverse();
        Self::from_points(coeffs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients on `[P^0], .., [P^N]`.
    pub fn points(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients on `H^0, .., H^N`.
    pub fn h_powers(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Coefficient of `[P^l]`.
    pub fn point(&self, l: usize) -> BigInt {
        self.coeffs.get(l).cloned().unwrap_or_default()
    }

    /// Coefficient of `H^l`.
    pub fn h_power(&self, l: usize) -> BigInt {
        if l > self.ambient_dim() {
            return BigInt::zero();
        }
        self.coeffs[self.ambient_dim() - l].clone()
    }

    /// Largest `l` with a nonzero `[P^l]` coefficient.
    pub fn dimension(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Degree of the class: the `[P^0]` coefficient.
    pub fn degree(&self) -> BigInt {
        self.coeffs[0].clone()
    }

    pub fn scaled(&self, c: &BigInt) -> ProjClass {
        ProjClass {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Cap with `H^e`: `[P^l] ↦ [P^{l-e}]`, dropping what falls below `[P^0]`.
    pub fn mul_h_power(&self, e: usize) -> ProjClass {
        let mut out = ProjClass::zero(self.ambient_dim());
        for l in e..self.coeffs.len() {
            out.coeffs[l - e] = self.coeffs[l].clone();
        }
        out
    }

    fn zip_with(&self, other: &ProjClass, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> ProjClass {
        assert_eq!(
            self.ambient_dim(),
            other.ambient_dim(),
            "classes live in different projective spaces"
        );
        ProjClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl Add<&ProjClass> for &ProjClass {
    type Output = ProjClass;
    fn add(self, rhs: &ProjClass) -> ProjClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&ProjClass> for &ProjClass {
    type Output = ProjClass;
    fn sub(self, rhs: &ProjClass) -> ProjClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &ProjClass {
    type Output = ProjClass;
    fn neg(self) -> ProjClass {
        ProjClass {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for ProjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", c.join(","))
    }
}

impl fmt::Display for ProjClass {
    /// Renders in hyperplane powers, e.g. `3H + 18H^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (l, c) in self.h_powers().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = if c < &BigInt::zero() { -c } else { c.clone() };
            if out.is_empty() {
                if c < &BigInt::zero() {
                    out.push('-');
                }
            } else {
                out.push_str(if c < &BigInt::zero() { " - " } else { " + " });
            }
            let mono = match l {
                0 => String::new(),
                1 => "H".to_string(),
                _ => format!("H^{l}"),
            };
            if mag.is_one() && l > 0 {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}{mono}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Integers attached to strata `lo..=hi` (with `hi = n - 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataVector {
    lo: usize,
    values: Vec<BigInt>,
}

impl StrataVector {
    pub fn new(lo: usize, values: Vec<BigInt>) -> Self {
        StrataVector { lo, values }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.lo + self.values.len() - 1
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Value on stratum `i`; zero outside `lo..=hi`.
    pub fn get(&self, i: usize) -> BigInt {
        i.checked_sub(self.lo)
            .and_then(|j| self.values.get(j))
            .cloned()
            .unwrap_or_default()
    }
}

/// `B_{i,p} = binom(m(n-k) - p, i - p)`.
pub fn b_matrix(tau: &Tau) -> Result<IntMatrix> {
    tau.require_singular_range()?;
    let r = (tau.m() * (tau.n() - tau.k())) as i64;
    Ok(IntMatrix::from_fn(r as usize + 1, |i, p| {
        binom(r - p as i64, i as i64 - p as i64)
    }))
}

fn cm_cache() -> &'static Mutex<HashMap<Tau, Arc<ProjClass>>> {
    static CACHE: OnceLock<Mutex<HashMap<Tau, Arc<ProjClass>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cached Chern-Mather classes, sorted by parameters.
pub fn cm_cache_snapshot() -> Vec<(Tau, ProjClass)> {
    let mut v: Vec<_> = cm_cache()
        .lock()
        .unwrap()
        .iter()
        .map(|(t, c)| (*t, (**c).clone()))
        .collect();
    v.sort_by_key(|(t, _)| *t);
    v
}

/// Pre-populates the Chern-Mather cache. Entries already present win.
pub fn cm_cache_seed(entries: impl IntoIterator<Item = (Tau, ProjClass)>) {
    let mut c = cm_cache().lock().unwrap();
    for (t, class) in entries {
        if class.ambient_dim() == t.ambient_dim() {
            c.entry(t).or_insert_with(|| Arc::new(class));
        }
    }
}

/// Chern-Mather class `c_M(τ_{m,n,k})`.
///
/// For `k >= 1`, the coefficient of `H^l` is `γ_l = Σ_i Σ_{mk+j-p=l} A_{i,p} B_{j,i}`.
/// For `k = 0` the variety is `P^{mn-1}` and the class is `(1+H)^{mn}`.
pub fn cm_class(tau: &Tau) -> Result<ProjClass> {
    if let Some(hit) = cm_cache().lock().unwrap().get(tau) {
        return Ok((**hit).clone());
    }
    let class = if tau.k() == 0 {
        let mn = (tau.m() * tau.n()) as i64;
        ProjClass::from_points((0..mn).map(|l| binom(mn, l + 1)).collect())
    } else {
        cm_closed_sum(tau)?
    };
    cm_cache()
        .lock()
        .unwrap()
        .insert(*tau, Arc::new(class.clone()));
    Ok(class)
}

fn cm_closed_sum(tau: &Tau) -> Result<ProjClass> {
    let a = a_matrix(tau)?;
    let b = b_matrix(tau)?;
    let size = a.dim();
    let n_amb = tau.ambient_dim() as i64;
    let mk = (tau.m() * tau.k()) as i64;
    let mut gamma = vec![BigInt::zero(); tau.ambient_dim() + 1];
    let mut negative = BigInt::zero();
    for i in 0..size {
        for p in 0..size {
            let a_ip = a.get(i, p);
            if a_ip.is_zero() {
                continue;
            }
            // B_{j,i} vanishes for j < i
            for j in i..size {
                let b_ji = b.get(j, i);
                if b_ji.is_zero() {
                    continue;
                }
                let l = mk + j as i64 - p as i64;
                let term = a_ip * b_ji;
                if l < 0 {
                    negative += term;
                } else if l <= n_amb {
                    gamma[l as usize] += term;
                }
            }
        }
    }
    if !negative.is_zero() {
        return Err(Error::Consistency(format!(
            "{tau}: negative hyperplane powers carry total {negative}"
        )));
    }
    Ok(ProjClass::from_h_powers(gamma))
}

/// `c_M` by literally forming `trace(A · H(k) · B)` with `H(k)_{ij} = H^{mk+j-i}`
/// as Laurent polynomials in `H`, then reducing modulo `H^{mn}`.
pub fn cm_class_via_trace(tau: &Tau) -> Result<ProjClass> {
    tau.require_singular_range()?;
    let a = a_matrix(tau)?;
    let b = b_matrix(tau)?;
    let size = a.dim();
    let mk = (tau.m() * tau.k()) as i64;
    type Laurent = BTreeMap<i64, BigInt>;

    // (A · H)_{i,j} = Σ_p A_{i,p} H^{mk+j-p}
    let ah: Vec<Vec<Laurent>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let mut e = Laurent::new();
                    for p in 0..size {
                        let v = a.get(i, p);
                        if !v.is_zero() {
                            *e.entry(mk + j as i64 - p as i64).or_default() += v;
                        }
                    }
                    e
                })
                .collect()
        })
        .collect();

    let mut trace = Laurent::new();
    for (i, row) in ah.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            let bji = b.get(j, i);
            if bji.is_zero() {
                continue;
            }
            for (e, c) in entry {
                *trace.entry(*e).or_default() += c * bji;
            }
        }
    }
    if let Some((e, c)) = trace.iter().find(|(e, c)| **e < 0 && !c.is_zero()) {
        return Err(Error::Consistency(format!(
            "{tau}: trace has H^{e} with coefficient {c}"
        )));
    }
    let n_amb = tau.ambient_dim();
    let mut gamma = vec![BigInt::zero(); n_amb + 1];
    for (e, c) in trace {
        if (0..=n_amb as i64).contains(&e) {
            gamma[e as usize] = c;
        }
    }
    Ok(ProjClass::from_h_powers(gamma))
}

/// `c_M` with `γ_l = trace(α^l · B)` evaluated separately for every `l`.
pub fn cm_class_via_alpha(tau: &Tau) -> Result<ProjClass> {
    let b = b_matrix(tau)?;
    let mut gamma = Vec::with_capacity(tau.ambient_dim() + 1);
    for l in 0..=tau.ambient_dim() {
        let alpha = alpha_matrix(tau, l as i64)?;
        let prod = alpha.mul(&b)?;
        gamma.push((0..prod.dim()).map(|i| prod.get(i, i).clone()).sum());
    }
    Ok(ProjClass::from_h_powers(gamma))
}

fn binomial_combination(tau: &Tau, weight: impl Fn(i64) -> BigInt) -> Result<ProjClass> {
    let mut acc = ProjClass::zero(tau.ambient_dim());
    for (i, stratum) in tau.strata().enumerate() {
        let w = weight(i as i64) * sign(i as i64);
        if w.is_zero() {
            continue;
        }
        acc = &acc + &cm_class(&stratum)?.scaled(&w);
    }
    Ok(acc)
}

/// `c_SM(τ_{m,n,k}) = Σ_i (-1)^i binom(k+i-1, k-1) c_M(τ_{m,n,k+i})`.
pub fn csm_class(tau: &Tau) -> Result<ProjClass> {
    if tau.k() == 0 {
        return cm_class(tau);
    }
    let k = tau.k() as i64;
    binomial_combination(tau, |i| binom(k + i - 1, k - 1))
}

/// `c_SM(τ°_{m,n,k}) = Σ_i (-1)^i binom(k+i, k) c_M(τ_{m,n,k+i})`.
pub fn csm_open(tau: &Tau) -> Result<ProjClass> {
    let k = tau.k() as i64;
    binomial_combination(tau, |i| binom(k + i, k))
}

/// Local Euler obstruction of `τ_{m,n,k}` on the strata `τ°_{m,n,k+i}`: `binom(k+i, i)`.
pub fn euler_obstruction(tau: &Tau) -> Result<StrataVector> {
    tau.require_singular_range()?;
    let k = tau.k() as i64;
    let values = (0..(tau.n() - tau.k()) as i64)
        .map(|i| binom(k + i, i))
        .collect();
    Ok(StrataVector::new(tau.k(), values))
}

/// The two triangular matrices relating `c_M(τ_{m,n,i})` and `c_SM(τ°_{m,n,i})`,
/// `i = k..n-1`: `U_{ab} = binom(k+b, k+a)` and `V_{ab} = (-1)^{b-a} binom(k+b, k+a)`.
pub fn binomial_transfer_matrices(n: usize, k: usize) -> (IntMatrix, IntMatrix) {
    let size = n.saturating_sub(k);
    let k = k as i64;
    let u = IntMatrix::from_fn(size, |a, b| binom(k + b as i64, k + a as i64));
    let v = IntMatrix::from_fn(size, |a, b| {
        binom(k + b as i64, k + a as i64) * sign(b as i64 - a as i64)
    });
    (u, v)
}

fn truncated_mul(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Chern-Fulton class of the determinantal hypersurface `τ_{n,n,1}`:
/// `nH (1+H)^{n²} Σ_i (-nH)^i`, reduced modulo `H^{n²}`.
pub fn chern_fulton_hypersurface(n: usize) -> Result<ProjClass> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2, got {n}")));
    }
    let len = n * n;
    let nn = BigInt::from(n);
    let binomials: Vec<BigInt> = (0..len).map(|i| binom(len as i64, i as i64)).collect();
    let mut geometric = Vec::with_capacity(len);
    let mut term = BigInt::one();
    for _ in 0..len {
        geometric.push(term.clone());
        term *= -&nn;
    }
    let mut hyper = vec![BigInt::zero(); len];
    hyper[1] = nn.clone();
    let prod = truncated_mul(&truncated_mul(&hyper, &binomials, len), &geometric, len);
    Ok(ProjClass::from_h_powers(prod))
}

/// Milnor class `(-1)^{dim}(c_F - c_SM)` of `τ_{n,n,1}`, `dim = n² - 2`.
pub fn milnor_class(n: usize) -> Result<ProjClass> {
    let cf = chern_fulton_hypersurface(n)?;
    let tau = Tau::new(n, n, 1)?;
    let diff = &cf - &csm_class(&tau)?;
    Ok(diff.scaled(&BigInt::from(sign(tau.dim() as i64))))
}

//! Chow ring of the Grassmannian `G(k, n)` in the Schubert basis.
//!
//! Classes are indexed by partitions in the `k x (n-k)` box. With `S` the
//! tautological subbundle and `Q` the quotient, `c_i(Q) = σ_(i)` and
//! `c_i(S^∨) = σ_(1^i)`.

mod lr;
mod partition;
mod symmetric;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use lr::{cache_seed as lr_cache_seed, cache_snapshot as lr_cache_snapshot};
pub use lr::{lr_coefficient, lr_product, LrExpansion};
pub use partition::{BoxShape, Partition};
pub use symmetric::{tensor_chern_universal, UniversalTerm};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::Tau;

/// Default cap on `k(n-k)`.
pub const DEFAULT_MAX_BOX_CELLS: usize = 36;

static MAX_BOX_CELLS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_BOX_CELLS);

/// Raises or lowers the Grassmannian size guardrail for this process.
pub fn set_max_box_cells(cells: usize) {
    MAX_BOX_CELLS.store(cells, Ordering::Relaxed);
}

pub fn max_box_cells() -> usize {
    MAX_BOX_CELLS.load(Ordering::Relaxed)
}

pub fn check_box(shape: BoxShape) -> Result<()> {
    let limit = max_box_cells();
    if shape.cells() > limit {
        return Err(Error::Size {
            rows: shape.rows(),
            cols: shape.cols(),
            cells: shape.cells(),
            limit,
        });
    }
    Ok(())
}

/// Integer combination of Schubert classes in a fixed box.
#[derive(Clone, PartialEq, Eq)]
pub struct ChowClass {
    shape: BoxShape,
    terms: BTreeMap<Partition, BigInt>,
}

impl ChowClass {
    pub fn zero(shape: BoxShape) -> Self {
        ChowClass {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(shape: BoxShape) -> Self {
        Self::schubert_unchecked(shape, Partition::empty())
    }

    /// `σ_λ`; fails if `λ` does not fit in the box.
    pub fn schubert(shape: BoxShape, lambda: Partition) -> Result<Self> {
        if !shape.fits(&lambda) {
            return Err(Error::Contract(format!(
                "{lambda} does not fit in box {shape}"
            )));
        }
        Ok(Self::schubert_unchecked(shape, lambda))
    }

    /// `σ_λ`, or zero if `λ` falls outside the box.
    pub fn schubert_or_zero(shape: BoxShape, lambda: Partition) -> Self {
        if shape.fits(&lambda) {
            Self::schubert_unchecked(shape, lambda)
        } else {
            Self::zero(shape)
        }
    }

    fn schubert_unchecked(shape: BoxShape, lambda: Partition) -> Self {
        ChowClass {
            shape,
            terms: BTreeMap::from([(lambda, BigInt::one())]),
        }
    }

    pub fn shape(&self) -> BoxShape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, lambda: &Partition) -> BigInt {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, lambda: Partition, c: BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same_box(&self, other: &ChowClass) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::Contract(format!(
                "Chow classes live in different boxes: {} vs {}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    /// `self + scale · other`.
    pub fn add_scaled(&mut self, other: &ChowClass, scale: &BigInt) -> Result<()> {
        self.check_same_box(other)?;
        if scale.is_zero() {
            return Ok(());
        }
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c * scale);
        }
        Ok(())
    }

    pub fn scaled(&self, scale: &BigInt) -> ChowClass {
        let mut out = ChowClass::zero(self.shape);
        if !scale.is_zero() {
            for (p, c) in &self.terms {
                out.terms.insert(p.clone(), c * scale);
            }
        }
        out
    }

    /// Ring product; partitions leaving the box are discarded.
    pub fn multiply(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check_same_box(other)?;
        let cells = self.shape.cells();
        let mut out = ChowClass::zero(self.shape);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.weight() + b.weight() > cells {
                    continue;
                }
                let coeff = ca * cb;
                for (nu, c) in lr_product(a, b).iter() {
                    if self.shape.fits(nu) {
                        out.add_term(nu.clone(), &coeff * c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Result<ChowClass> {
        let mut acc = ChowClass::one(self.shape);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base)?;
            }
        }
        Ok(acc)
    }

    /// Homogeneous piece of codimension `d`.
    pub fn graded_part(&self, d: usize) -> ChowClass {
        ChowClass {
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.weight() == d)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// All homogeneous pieces, codimension `0..=cells`.
    pub fn graded_parts(&self) -> Vec<ChowClass> {
        let mut parts = vec![ChowClass::zero(self.shape); self.shape.cells() + 1];
        for (p, c) in &self.terms {
            parts[p.weight()].terms.insert(p.clone(), c.clone());
        }
        parts
    }
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("{c}*s{p}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Degree map `∫_{G(k,n)}`: the coefficient of the point class.
pub fn integrate(x: &ChowClass) -> BigInt {
    x.coefficient(&x.shape().full())
}

/// `∫ x·y` via Poincaré duality, without forming the product.
pub fn pairing(x: &ChowClass, y: &ChowClass) -> Result<BigInt> {
    x.check_same_box(y)?;
    let shape = x.shape();
    let cells = shape.cells();
    Ok(x.terms
        .iter()
        .filter(|(p, _)| p.weight() <= cells)
        .map(|(p, c)| c * y.coefficient(&shape.complement(p)))
        .sum())
}

/// `[c_0(Q), .., c_{n-k}(Q)]` with `c_i(Q) = σ_(i)`.
pub fn chern_q(shape: BoxShape) -> Vec<ChowClass> {
    (0..=shape.cols())
        .map(|i| ChowClass::schubert_or_zero(shape, Partition::row(i)))
        .collect()
}

/// `[c_0(S^∨), .., c_k(S^∨)]` with `c_i(S^∨) = σ_(1^i)`.
pub fn chern_s_dual(shape: BoxShape) -> Vec<ChowClass> {
    (0..=shape.rows())
        .map(|i| ChowClass::schubert_or_zero(shape, Partition::column(i)))
        .collect()
}

/// `[c_0(S), .., c_k(S)]`, i.e. `(-1)^i σ_(1^i)`.
pub fn chern_s(shape: BoxShape) -> Vec<ChowClass> {
    chern_s_dual(shape)
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            if i % 2 == 1 {
                c.scaled(&-BigInt::one())
            } else {
                c
            }
        })
        .collect()
}

fn total(pieces: &[ChowClass], shape: BoxShape) -> Result<ChowClass> {
    let mut acc = ChowClass::zero(shape);
    for p in pieces {
        acc.add_scaled(p, &BigInt::one())?;
    }
    Ok(acc)
}

/// Chern classes of `E^{⊕m}` (or of `(E^∨)^{⊕m}` when `dualize`), given `c_i(E)`.
///
/// The result has `min(m·rank E, dim G) + 1` entries.
pub fn bundle_power_chern(chern: &[ChowClass], m: usize, dualize: bool) -> Result<Vec<ChowClass>> {
    let shape = match chern.first() {
        Some(c) => c.shape(),
        None => return Err(Error::Contract("empty Chern class sequence".into())),
    };
    let signed: Vec<ChowClass> = chern
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if dualize && i % 2 == 1 {
                c.scaled(&-BigInt::one())
            } else {
                c.clone()
            }
        })
        .collect();
    let power = total(&signed, shape)?.pow(m)?;
    let rank = chern.len() - 1;
    let len = (m * rank).min(shape.cells()) + 1;
    let mut parts = power.graded_parts();
    parts.truncate(len);
    Ok(parts)
}

fn tangent_cache() -> &'static Mutex<HashMap<BoxShape, Arc<ChowClass>>> {
    static CACHE: OnceLock<Mutex<HashMap<BoxShape, Arc<ChowClass>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Total Chern class of the tangent bundle `S^∨ ⊗ Q` of `G(k, n)`.
pub fn tangent_chern(shape: BoxShape) -> Result<ChowClass> {
    if let Some(hit) = tangent_cache().lock().unwrap().get(&shape) {
        return Ok((**hit).clone());
    }
    let (k, q) = (shape.rows(), shape.cols());
    // Expand the smaller bundle in Chern roots.
    let (roots_are_q, a, b) = if q <= k { (true, q, k) } else { (false, k, q) };
    let terms = tensor_chern_universal(a, b, shape.cells() as u32);
    type Gen = fn(usize) -> Partition;
    let (formal_gen, root_gen): (Gen, Gen) = if roots_are_q {
        (Partition::column, Partition::row)
    } else {
        (Partition::row, Partition::column)
    };

    let mut powers: HashMap<(bool, usize, u32), ChowClass> = HashMap::new();
    let mut power = |formal: bool, idx: usize, e: u32| -> Result<ChowClass> {
        if let Some(hit) = powers.get(&(formal, idx, e)) {
            return Ok(hit.clone());
        }
        let gen = if formal {
            formal_gen(idx)
        } else {
            root_gen(idx)
        };
        let v = ChowClass::schubert_or_zero(shape, gen).pow(e as usize)?;
        powers.insert((formal, idx, e), v.clone());
        Ok(v)
    };

    let mut acc = ChowClass::zero(shape);
    for term in &terms {
        let mut mono = ChowClass::one(shape);
        for (i, &e) in term.e.iter().enumerate() {
            if e > 0 {
                mono = mono.multiply(&power(true, i + 1, e)?)?;
            }
        }
        for (i, &f) in term.f.iter().enumerate() {
            if f > 0 {
                mono = mono.multiply(&power(false, i + 1, f)?)?;
            }
        }
        acc.add_scaled(&mono, &term.coeff)?;
    }
    tangent_cache()
        .lock()
        .unwrap()
        .insert(shape, Arc::new(acc.clone()));
    Ok(acc)
}

/// The graded ingredients shared by the `A` and `α` matrices.
struct Integrands {
    shape: BoxShape,
    /// `c(T G)` split by codimension
    tangent: Vec<ChowClass>,
    /// `c_i(Q^{∨m})`
    q_dual: Vec<ChowClass>,
    /// `c_j(S^{∨m})`
    s_dual: Vec<ChowClass>,
}

impl Integrands {
    fn new(tau: &Tau) -> Result<Self> {
        let shape = tau.grassmannian_box()?;
        check_box(shape)?;
        Ok(Integrands {
            shape,
            tangent: tangent_chern(shape)?.graded_parts(),
            q_dual: bundle_power_chern(&chern_q(shape), tau.m(), true)?,
            s_dual: bundle_power_chern(&chern_s_dual(shape), tau.m(), false)?,
        })
    }

    /// `∫ c(T G) c_i(Q^{∨m}) c_j(S^{∨m})`, zero when `j` is out of range.
    fn integral(&self, i: usize, j: i64) -> Result<BigInt> {
        let cells = self.shape.cells();
        if j < 0 {
            return Ok(BigInt::zero());
        }
        let j = j as usize;
        if i + j > cells || i >= self.q_dual.len() || j >= self.s_dual.len() {
            return Ok(BigInt::zero());
        }
        let prod = self.q_dual[i].multiply(&self.s_dual[j])?;
        pairing(&self.tangent[cells - i - j], &prod)
    }
}

/// `A_{i,p} = ∫ c(S^∨⊗Q) c_i(Q^{∨m}) c_{p-i}(S^{∨m})`, an `(m(n-k)+1)`-square matrix.
pub fn a_matrix(tau: &Tau) -> Result<IntMatrix> {
    tau.require_singular_range()?;
    let ing = Integrands::new(tau)?;
    let size = tau.m() * (tau.n() - tau.k()) + 1;
    let mut out = IntMatrix::zeros(size);
    for i in 0..size {
        for p in i..size {
            let v = ing.integral(i, p as i64 - i as i64)?;
            out.set(i, p, v);
        }
    }
    Ok(out)
}

/// `α^l_{i,p} = ∫ c(S^∨⊗Q) c_i(Q^{∨m}) c_{mk-l+p-i}(S^{∨m})`; `α^{mk}` is the `A` matrix.
pub fn alpha_matrix(tau: &Tau, l: i64) -> Result<IntMatrix> {
    tau.require_singular_range()?;
    let ing = Integrands::new(tau)?;
    let size = tau.m() * (tau.n() - tau.k()) + 1;
    let mk = (tau.m() * tau.k()) as i64;
    let mut out = IntMatrix::zeros(size);
    for i in 0..size {
        for p in 0..size {
            let v = ing.integral(i, mk - l + p as i64 - i as i64)?;
            out.set(i, p, v);
        }
    }
    Ok(out)
}

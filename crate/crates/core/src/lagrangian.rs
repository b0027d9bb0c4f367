//! Lagrangian cycles in `P^N x P^N`: characteristic cycles, projectivized
//! conormal cycles, polar degrees, generic ED degree and projective duality.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::binomial::{binom, sign};
use crate::classes::{cm_class, csm_class, csm_open, ProjClass};
use crate::error::{Error, Result};
use crate::Tau;

/// A class of dimension `N` in `P^N x P^N`: `coeffs[b]` is the coefficient
/// of `h1^{N+1-b} h2^b`, `b = 0..=N+1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiProjClass {
    coeffs: Vec<BigInt>,
}

impl BiProjClass {
    pub fn zero(ambient_dim: usize) -> Self {
        BiProjClass {
            coeffs: vec![BigInt::zero(); ambient_dim + 2],
        }
    }

    /// From coefficients indexed by the `h2` exponent `0..=N+1`.
    pub fn from_h2_exponents(coeffs: Vec<BigInt>) -> Self {
        assert!(coeffs.len() >= 2, "need at least the monomials h1 and h2");
        BiProjClass { coeffs }
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len() - 2
    }

    /// Coefficient of `h1^a h2^b`; zero unless `a + b = N + 1`.
    pub fn coefficient(&self, a: usize, b: usize) -> BigInt {
        if a + b != self.ambient_dim() + 1 {
            return BigInt::zero();
        }
        self.coeffs[b].clone()
    }

    /// Coefficients indexed by the `h2` exponent.
    pub fn by_h2_exponent(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients of `h1^N h2, h1^{N-1} h2^2, .., h1 h2^N`.
    pub fn mixed_terms(&self) -> &[BigInt] {
        &self.coeffs[1..=self.ambient_dim()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: &BigInt) -> BiProjClass {
        BiProjClass {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn zip_with(&self, other: &BiProjClass, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> BiProjClass {
        assert_eq!(
            self.ambient_dim(),
            other.ambient_dim(),
            "classes live in different products"
        );
        BiProjClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl Add<&BiProjClass> for &BiProjClass {
    type Output = BiProjClass;
    fn add(self, rhs: &BiProjClass) -> BiProjClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&BiProjClass> for &BiProjClass {
    type Output = BiProjClass;
    fn sub(self, rhs: &BiProjClass) -> BiProjClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &BiProjClass {
    type Output = BiProjClass;
    fn neg(self) -> BiProjClass {
        BiProjClass {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for BiProjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", c.join(","))
    }
}

impl fmt::Display for BiProjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.ambient_dim() + 1;
        let mut parts = Vec::new();
        for (b, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{c}*h1^{}*h2^{b}", top - b));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// The characteristic-cycle shadow of a class on `P^N`:
/// `Σ_j Σ_{l=j-1}^{N-1} (-1)^l β_l binom(l+1, j) h1^{N+1-j} h2^j`, where
/// `β_l` is the `[P^l]` coefficient.
pub fn ch_from_class(c: &ProjClass) -> BiProjClass {
    let n = c.ambient_dim();
    let beta = c.points();
    let mut out = BiProjClass::zero(n);
    for j in 1..=n {
        let mut acc = BigInt::zero();
        for (l, b) in beta.iter().enumerate().take(n).skip(j - 1) {
            if b.is_zero() {
                continue;
            }
            acc += b * binom(l as i64 + 1, j as i64) * sign(l as i64);
        }
        out.coeffs[j] = acc;
    }
    out
}

/// Projectivized conormal cycle `Con(τ_{m,n,k})`, normalized so every
/// coefficient is a polar degree. The ambient space (`k = 0`) has empty
/// projectivized conormal and gives zero.
pub fn conormal(tau: &Tau) -> Result<BiProjClass> {
    if tau.k() == 0 {
        return Ok(BiProjClass::zero(tau.ambient_dim()));
    }
    let ch = ch_from_class(&cm_class(tau)?);
    Ok(ch.scaled(&BigInt::from(sign(tau.dim() as i64))))
}

/// Characteristic cycle of the closed variety `τ_{m,n,k}`.
pub fn charcycle(tau: &Tau) -> Result<BiProjClass> {
    tau.require_singular_range()?;
    Ok(ch_from_class(&csm_class(tau)?))
}

/// Characteristic cycle of the open stratum `τ°_{m,n,k}`.
pub fn charcycle_open(tau: &Tau) -> Result<BiProjClass> {
    tau.require_singular_range()?;
    Ok(ch_from_class(&csm_open(tau)?))
}

/// Degrees `δ_0..δ_d` of the polar classes of a `d`-dimensional variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarDegrees {
    values: Vec<BigInt>,
}

impl PolarDegrees {
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// `δ_0`, the degree of the variety.
    pub fn degree(&self) -> &BigInt {
        &self.values[0]
    }

    pub fn sum(&self) -> BigInt {
        self.values.iter().sum()
    }
}

/// `deg [M_l] = Σ_{i=0}^{l} (-1)^i binom(d-i+1, d-l+1) β_{d-i}`, `l = 0..=d`.
fn polar_class_degrees(cm: &ProjClass, d: usize) -> Vec<BigInt> {
    let d = d as i64;
    (0..=d)
        .map(|l| {
            (0..=l)
                .map(|i| binom(d - i + 1, d - l + 1) * cm.point((d - i) as usize) * sign(i))
                .sum()
        })
        .collect()
}

/// Polar degrees of `τ_{m,n,k}`, read off the conormal cycle and checked
/// against the polar-class formula in terms of `c_M`.
pub fn polar_degrees(tau: &Tau) -> Result<PolarDegrees> {
    tau.require_singular_range()?;
    let con = conormal(tau)?;
    let codim = tau.codim();
    let top = tau.ambient_dim() + 1;
    let d = tau.dim();
    let from_cycle: Vec<BigInt> = (0..=d)
        .map(|l| con.coefficient(codim + l, top - codim - l))
        .collect();
    let from_classes = polar_class_degrees(&cm_class(tau)?, d);
    if from_cycle != from_classes {
        return Err(Error::Consistency(format!(
            "{tau}: polar degrees {from_cycle:?} from Con disagree with {from_classes:?} from c_M"
        )));
    }
    Ok(PolarDegrees { values: from_cycle })
}

/// Generic Euclidean distance degree of `τ_{m,n,k}`: the sum of its polar
/// degrees, cross-checked against the closed double sum over `β`.
pub fn ged(tau: &Tau) -> Result<BigInt> {
    let total = polar_degrees(tau)?.sum();
    let cm = cm_class(tau)?;
    let big_d = (tau.dim() + 1) as i64;
    let mut closed = BigInt::zero();
    for l in 0..big_d {
        for i in 0..=l {
            closed += binom(big_d - i, big_d - l) * cm.point((big_d - 1 - i) as usize) * sign(i);
        }
    }
    if closed != total {
        return Err(Error::Consistency(format!(
            "{tau}: gED {total} from polar degrees, {closed} from the closed sum"
        )));
    }
    Ok(total)
}

/// Swaps the exponents of `h1` and `h2`.
pub fn dagger(x: &BiProjClass) -> BiProjClass {
    let mut coeffs = x.coeffs.clone();
    coeffs.reverse();
    BiProjClass { coeffs }
}

/// `J_N(p)(t) = p(-1-t) - p(-1)((1+t)^{N+1} - t^{N+1})` on polynomials of
/// degree at most `N`, given by coefficient vectors of length `N + 1`.
pub fn j_involution(p: &[BigInt]) -> Vec<BigInt> {
    let len = p.len();
    let n_plus_1 = len as i64;
    let mut out = vec![BigInt::zero(); len];
    let mut at_minus_one = BigInt::zero();
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let signed = c * sign(i as i64);
        for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
            *slot += &signed * binom(i as i64, j as i64);
        }
        at_minus_one += signed;
    }
    for (j, slot) in out.iter_mut().enumerate() {
        *slot -= &at_minus_one * binom(n_plus_1, j as i64);
    }
    out
}

/// Chern-Mather class of the projective dual of `X`, from `c_M(X)` and `dim X`.
pub fn dual_cm(c: &ProjClass, dim_x: usize) -> Result<ProjClass> {
    let n = c.ambient_dim();
    if !c.point(n).is_zero() {
        return Err(Error::Contract(
            "class has a [P^N] term; expected a proper subvariety".into(),
        ));
    }
    let q: Vec<BigInt> = c
        .h_powers()
        .into_iter()
        .map(|x| x * sign(dim_x as i64))
        .collect();
    let r = ProjClass::from_h_powers(j_involution(&q));
    let Some(dual_dim) = r.dimension() else {
        return Ok(r);
    };
    Ok(r.scaled(&BigInt::from(sign(dual_dim as i64))))
}

/// Outcome of one identity checked by [`symmetry_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryCheck {
    pub name: String,
    pub passed: bool,
}

/// Checks the dagger (anti)symmetry of `Ch(τ_{m,n,1})` and, for every
/// `k = 1..n-1`, the identity
/// `Σ_{i>=k} binom(i,k) Ch(τ°_i) = (-1)^{mn} Σ_{i>=n-k} binom(i,n-k) Ch(τ°_i)^†`.
///
/// Both sides are `±Con(τ_k)`; their signs `(-1)^{dim τ_k}` and
/// `(-1)^{dim τ_{n-k}}` differ exactly when `mn` is odd.
pub fn symmetry_check(m: usize, n: usize) -> Result<Vec<SymmetryCheck>> {
    if n < 2 || n > m {
        return Err(Error::Domain(format!("need 2 <= n <= m, got m={m}, n={n}")));
    }
    let open: Vec<BiProjClass> = (1..n)
        .map(|i| charcycle_open(&Tau::new(m, n, i)?))
        .collect::<Result<_>>()?;
    let open_at = |i: usize| &open[i - 1];
    let mut checks = Vec::new();

    let ch1 = charcycle(&Tau::new(m, n, 1)?)?;
    let anti = m.is_multiple_of(2) && !n.is_multiple_of(2);
    let flipped = dagger(&ch1);
    let (name, passed) = if anti {
        (format!("Ch(tau({m},{n},1)) = -Ch^dagger"), ch1 == -&flipped)
    } else {
        (format!("Ch(tau({m},{n},1)) = Ch^dagger"), ch1 == flipped)
    };
    checks.push(SymmetryCheck { name, passed });

    let zero = BiProjClass::zero(m * n - 1);
    for k in 1..n {
        let mut lhs = zero.clone();
        for i in k..n {
            lhs = &lhs + &open_at(i).scaled(&binom(i as i64, k as i64));
        }
        let mut rhs = zero.clone();
        for i in (n - k)..n {
            rhs = &rhs + &dagger(open_at(i)).scaled(&binom(i as i64, (n - k) as i64));
        }
        if (m * n) % 2 == 1 {
            rhs = -&rhs;
        }
        checks.push(SymmetryCheck {
            name: format!("binomial flip k={k} on ({m},{n})"),
            passed: lhs == rhs,
        });
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn tau(m: usize, n: usize, k: usize) -> Tau {
        Tau::new(m, n, k).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn zero_maps_to_zero() {
        assert!(ch_from_class(&ProjClass::zero(5)).is_zero());
        assert!(dagger(&BiProjClass::zero(5)).is_zero());
    }

    #[test]
    fn ambient_class_has_no_shadow_term() {
        let mut v = vec![BigInt::zero(); 6];
        v[5] = BigInt::one();
        assert!(ch_from_class(&ProjClass::from_points(v)).is_zero());
    }

    #[test]
    fn conormal_of_smallest_stratum() {
        let con = conormal(&tau(4, 4, 3)).unwrap();
        assert_eq!(
            con.mixed_terms()[..7],
            ints(&[4, 12, 36, 68, 84, 60, 20])[..]
        );
        assert!(con.mixed_terms()[7..].iter().all(Zero::is_zero));
    }

    #[test]
    fn polar_degrees_of_hypersurface() {
        let pd = polar_degrees(&tau(4, 4, 1)).unwrap();
        assert_eq!(pd.degree(), &BigInt::from(4));
        assert_eq!(pd.values()[..7], ints(&[4, 12, 36, 68, 84, 60, 20])[..]);
        assert_eq!(pd.values().len(), 15);
    }

    #[test]
    fn small_ged_values() {
        assert_eq!(ged(&tau(2, 2, 1)).unwrap(), BigInt::from(6));
        assert_eq!(ged(&tau(3, 3, 1)).unwrap(), BigInt::from(39));
        assert_eq!(ged(&tau(4, 3, 1)).unwrap(), BigInt::from(83));
    }

    #[test]
    fn j_fixes_polynomials_vanishing_at_zero_twice() {
        let q = ints(&[0, 3, -1, 4, 0, 2]);
        assert_eq!(j_involution(&j_involution(&q)), q);
    }

    #[test]
    fn dual_of_hypersurface_is_smallest_stratum() {
        let c = cm_class(&tau(4, 4, 1)).unwrap();
        assert_eq!(dual_cm(&c, 14).unwrap(), cm_class(&tau(4, 4, 3)).unwrap());
    }

    #[test]
    fn dual_rejects_ambient_term() {
        let c = ProjClass::from_points_i64(&[1, 0, 1]);
        assert!(dual_cm(&c, 2).is_err());
    }

    #[test]
    fn symmetry_on_small_spaces() {
        for (m, n) in [(3, 3), (4, 3), (4, 4)] {
            for check in symmetry_check(m, n).unwrap() {
                assert!(check.passed, "{}", check.name);
            }
        }
    }
}

//! Checks effectivity and low-dimensional vanishing of `c_SM(τ°_{m,n,k})`
//! over a range of parameters.

use detchern_core::classes::csm_open;
use detchern_core::{Error, Result, Tau};
use num_bigint::{BigInt, Sign};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    /// The `[P^l]` coefficient of `c_SM(τ°_{m,n,k})`, verbatim.
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub m_max: usize,
    pub n_max: usize,
    pub instances_checked: usize,
    pub effectivity_violations: Vec<Violation>,
    pub vanishing_violations: Vec<Violation>,
}

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.effectivity_violations.is_empty() && self.vanishing_violations.is_empty()
    }
}

/// `τ_{m,n,k}` for `m <= m_max`, `2 <= n <= min(m, n_max)`, `1 <= k <= n-1`, sorted.
pub fn scan_instances(m_max: usize, n_max: usize) -> Vec<Tau> {
    let mut out = Vec::new();
    for m in 2..=m_max {
        for n in 2..=m.min(n_max) {
            for k in 1..n {
                out.push(Tau::new(m, n, k).expect("enumerated in range"));
            }
        }
    }
    out
}

pub fn scan_conjectures(m_max: usize, n_max: usize) -> Result<ScanReport> {
    if n_max < 2 || n_max > m_max {
        return Err(Error::Domain(format!(
            "need 2 <= n_max <= m_max, got m_max={m_max}, n_max={n_max}"
        )));
    }
    let instances = scan_instances(m_max, n_max);
    let per_instance: Vec<(Vec<Violation>, Vec<Violation>)> = instances
        .par_iter()
        .map(check_instance)
        .collect::<Result<_>>()?;
    let mut report = ScanReport {
        m_max,
        n_max,
        instances_checked: instances.len(),
        effectivity_violations: Vec::new(),
        vanishing_violations: Vec::new(),
    };
    for (eff, van) in per_instance {
        report.effectivity_violations.extend(eff);
        report.vanishing_violations.extend(van);
    }
    Ok(report)
}

fn check_instance(t: &Tau) -> Result<(Vec<Violation>, Vec<Violation>)> {
    let c = csm_open(t)?;
    let violation = |l: usize, v: &BigInt| Violation {
        m: t.m(),
        n: t.n(),
        k: t.k(),
        l,
        coefficient: v.to_string(),
    };
    let mut eff = Vec::new();
    let mut van = Vec::new();
    // coefficients at [P^l] must vanish for l <= n-k-2
    let vanishing_below = t.n() - t.k() - 1;
    for (l, v) in c.points().iter().enumerate() {
        if v.sign() == Sign::Minus {
            eff.push(violation(l, v));
        }
        if l < vanishing_below && v.sign() != Sign::NoSign {
            van.push(violation(l, v));
        }
    }
    Ok((eff, van))
}

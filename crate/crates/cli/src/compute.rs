//! Maps a request onto the core library and packages the result.

use detchern_core::binomial::{binom, sign};
use detchern_core::classes::{
    chern_fulton_hypersurface, cm_class, cm_class_via_alpha, cm_class_via_trace, csm_class,
    csm_open, euler_obstruction, milnor_class, ProjClass,
};
use detchern_core::lagrangian::{
    charcycle, charcycle_open, conormal, dagger, dual_cm, ged, polar_degrees, symmetry_check,
    BiProjClass,
};
use detchern_core::microlocal::{ic_char_cycle, solve_multiplicities, IndexSystem};
use detchern_core::schubert::a_matrix;
use detchern_core::Tau;
use num_bigint::BigInt;

use crate::document::{bidegree_labels, point_labels, Basis, Check, Kind, OutputDocument};
use crate::scan::scan_conjectures;
use crate::CliError;

/// Parameters as given on the command line.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Request {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    /// Run the cross-route checks too.
    pub check: bool,
}

impl Request {
    pub fn new(m: usize, n: usize, k: usize) -> Self {
        Request {
            m: Some(m),
            n: Some(n),
            k: Some(k),
            check: false,
        }
    }

    fn need(v: Option<usize>, flag: &str, kind: Kind) -> Result<usize, CliError> {
        v.ok_or_else(|| CliError::Usage(format!("{kind} needs {flag}")))
    }

    fn tau(&self, kind: Kind) -> Result<Tau, CliError> {
        let m = Self::need(self.m, "-m", kind)?;
        let n = Self::need(self.n, "-n", kind)?;
        let k = Self::need(self.k, "-k", kind)?;
        Ok(Tau::new(m, n, k)?)
    }

    fn pair(&self, kind: Kind) -> Result<(usize, usize), CliError> {
        Ok((
            Self::need(self.m, "-m", kind)?,
            Self::need(self.n, "-n", kind)?,
        ))
    }

    /// `n`, with `m` defaulting to `n` and required to equal it.
    fn square(&self, kind: Kind) -> Result<usize, CliError> {
        let n = Self::need(self.n, "-n", kind)?;
        match self.m {
            Some(m) if m != n => Err(CliError::Usage(format!(
                "{kind} is defined for square matrices; got m={m}, n={n}"
            ))),
            _ => Ok(n),
        }
    }
}

fn params(t: &Tau) -> String {
    format!("({},{},{})", t.m(), t.n(), t.k())
}

fn class_doc(kind: Kind, title: String, t: &Tau, c: &ProjClass) -> OutputDocument {
    OutputDocument::new(kind, title, t.m(), t.n(), Some(t.k()), Basis::Points)
        .with_values(point_labels(c.ambient_dim()), c.points())
}

fn cycle_doc(kind: Kind, title: String, t: &Tau, c: &BiProjClass) -> OutputDocument {
    OutputDocument::new(kind, title, t.m(), t.n(), Some(t.k()), Basis::Bidegree)
        .with_values(bidegree_labels(c.ambient_dim()), c.mixed_terms())
}

fn check(name: impl Into<String>, passed: bool) -> Check {
    Check {
        name: name.into(),
        passed,
    }
}

/// `Σ_i (-1)^i w(i) (-1)^{dim τ_{k+i}} Con(τ_{k+i})`.
fn signed_conormal_sum(t: &Tau, w: impl Fn(i64) -> BigInt) -> Result<BiProjClass, CliError> {
    let mut acc = BiProjClass::zero(t.ambient_dim());
    for (i, s) in t.strata().enumerate() {
        let coeff = w(i as i64) * sign(i as i64) * sign(s.dim() as i64);
        acc = &acc + &conormal(&s)?.scaled(&coeff);
    }
    Ok(acc)
}

/// Failed checks are recorded in the document, not raised.
pub fn compute(kind: Kind, req: &Request) -> Result<OutputDocument, CliError> {
    let mut checks = Vec::new();
    let mut doc = match kind {
        Kind::Cm => {
            let t = req.tau(kind)?;
            let c = cm_class(&t)?;
            if req.check && t.k() > 0 {
                checks.push(check(
                    "closed sum = trace formula",
                    cm_class_via_trace(&t)? == c,
                ));
                checks.push(check(
                    "closed sum = alpha matrices",
                    cm_class_via_alpha(&t)? == c,
                ));
            }
            class_doc(kind, format!("c_M(tau{})", params(&t)), &t, &c)
        }
        Kind::Csm => {
            let t = req.tau(kind)?;
            let c = csm_class(&t)?;
            if req.check {
                let mut sum = ProjClass::zero(t.ambient_dim());
                for s in t.strata() {
                    sum = &sum + &csm_open(&s)?;
                }
                checks.push(check("closed = sum of open strata", sum == c));
            }
            class_doc(kind, format!("c_SM(tau{})", params(&t)), &t, &c)
        }
        Kind::CsmOpen => {
            let t = req.tau(kind)?;
            let c = csm_open(&t)?;
            class_doc(kind, format!("c_SM(tau°{})", params(&t)), &t, &c)
        }
        Kind::Eu => {
            let t = req.tau(kind)?;
            let eu = euler_obstruction(&t)?;
            let labels = (eu.lo()..=eu.hi()).map(|i| format!("tau°_{i}")).collect();
            OutputDocument::new(
                kind,
                format!("Eu(tau{})", params(&t)),
                t.m(),
                t.n(),
                Some(t.k()),
                Basis::Sequence,
            )
            .with_values(labels, eu.values())
        }
        Kind::Fulton | Kind::Milnor => {
            let n = req.square(kind)?;
            let (c, title) = if kind == Kind::Fulton {
                (
                    chern_fulton_hypersurface(n)?,
                    format!("c_F(tau({n},{n},1))"),
                )
            } else {
                (milnor_class(n)?, format!("M(tau({n},{n},1))"))
            };
            OutputDocument::new(kind, title, n, n, Some(1), Basis::Points)
                .with_values(point_labels(c.ambient_dim()), c.points())
        }
        Kind::Conormal => {
            let t = req.tau(kind)?;
            t.require_singular_range()?;
            let c = conormal(&t)?;
            if req.check {
                let dual = conormal(&t.with_k(t.n() - t.k())?)?;
                checks.push(check(
                    "Con(tau_k)^dagger = Con(tau_{n-k})",
                    dagger(&c) == dual,
                ));
            }
            cycle_doc(kind, format!("Con(tau{})", params(&t)), &t, &c)
        }
        Kind::Charcycle => {
            let t = req.tau(kind)?;
            let c = charcycle(&t)?;
            if req.check {
                let k = t.k() as i64;
                let alt = signed_conormal_sum(&t, |i| binom(k + i - 1, k - 1))?;
                checks.push(check("Ch = signed conormal sum", alt == c));
            }
            cycle_doc(kind, format!("Ch(tau{})", params(&t)), &t, &c)
        }
        Kind::CharcycleOpen => {
            let t = req.tau(kind)?;
            let c = charcycle_open(&t)?;
            if req.check {
                let k = t.k() as i64;
                let alt = signed_conormal_sum(&t, |i| binom(k + i, k))?;
                checks.push(check("Ch = signed conormal sum", alt == c));
            }
            cycle_doc(kind, format!("Ch(tau°{})", params(&t)), &t, &c)
        }
        Kind::Polar => {
            let t = req.tau(kind)?;
            let pd = polar_degrees(&t)?;
            let labels = (0..pd.values().len())
                .map(|l| format!("delta_{l}"))
                .collect();
            OutputDocument::new(
                kind,
                format!("delta(tau{})", params(&t)),
                t.m(),
                t.n(),
                Some(t.k()),
                Basis::Sequence,
            )
            .with_values(labels, pd.values())
        }
        Kind::Ged => {
            let t = req.tau(kind)?;
            let g = ged(&t)?;
            if req.check {
                let dual = ged(&t.with_k(t.n() - t.k())?)?;
                checks.push(check("gED(tau_k) = gED(tau_{n-k})", dual == g));
            }
            OutputDocument::new(
                kind,
                format!("gED(tau{})", params(&t)),
                t.m(),
                t.n(),
                Some(t.k()),
                Basis::Scalar,
            )
            .with_values(vec!["gED".into()], &[g])
        }
        Kind::Microlocal => {
            let t = req.tau(kind)?;
            let r = solve_multiplicities(&IndexSystem::determinantal(&t)?);
            // errors out unless CC(IC) equals the conormal cycle
            ic_char_cycle(&t)?;
            checks.push(check("CC(IC) = Con", true));
            let labels = (0..r.values().len()).map(|i| format!("r_{i}")).collect();
            OutputDocument::new(
                kind,
                format!("r(tau{})", params(&t)),
                t.m(),
                t.n(),
                Some(t.k()),
                Basis::Sequence,
            )
            .with_values(labels, r.values())
        }
        Kind::Amatrix => {
            let t = req.tau(kind)?;
            let a = a_matrix(&t)?;
            let mut doc = OutputDocument::new(
                kind,
                format!("A{}", params(&t)),
                t.m(),
                t.n(),
                Some(t.k()),
                Basis::Matrix,
            );
            doc.labels = (0..a.dim()).map(|p| p.to_string()).collect();
            doc.rows = Some(
                a.rows()
                    .map(|r| r.iter().map(BigInt::to_string).collect())
                    .collect(),
            );
            doc
        }
        Kind::DualCheck => {
            let t = req.tau(kind)?;
            t.require_singular_range()?;
            let dual = t.with_k(t.n() - t.k())?;
            let cm_dual = dual_cm(&cm_class(&t)?, t.dim())?;
            checks.push(check(
                format!("J(c_M(tau{})) = c_M(tau{})", params(&t), params(&dual)),
                cm_dual == cm_class(&dual)?,
            ));
            checks.push(check(
                format!("Con(tau{})^dagger = Con(tau{})", params(&t), params(&dual)),
                dagger(&conormal(&t)?) == conormal(&dual)?,
            ));
            OutputDocument::new(
                kind,
                format!("duality(tau{})", params(&t)),
                t.m(),
                t.n(),
                Some(t.k()),
                Basis::Checks,
            )
        }
        Kind::Symmetry => {
            let (m, n) = req.pair(kind)?;
            for c in symmetry_check(m, n)? {
                checks.push(check(c.name, c.passed));
            }
            OutputDocument::new(
                kind,
                format!("symmetry({m},{n})"),
                m,
                n,
                None,
                Basis::Checks,
            )
        }
        Kind::Scan => {
            let (m, n) = req.pair(kind)?;
            let report = scan_conjectures(m, n)?;
            checks.push(check(
                "effectivity",
                report.effectivity_violations.is_empty(),
            ));
            checks.push(check("vanishing", report.vanishing_violations.is_empty()));
            let mut doc =
                OutputDocument::new(kind, format!("scan({m},{n})"), m, n, None, Basis::Scan);
            doc.scan = Some(report);
            doc
        }
    };
    doc.checks = checks;
    Ok(doc)
}

use detchern_core::binomial::{binom, sign};
use detchern_core::classes::{
    binomial_transfer_matrices, cm_class, cm_class_via_alpha, cm_class_via_trace, csm_class,
    csm_open, ProjClass,
};
use detchern_core::lagrangian::{
    charcycle_open, conormal, dagger, dual_cm, ged, j_involution, polar_degrees, BiProjClass,
};
use detchern_core::microlocal::{obstruction_matrix, solve_multiplicities, IndexSystem};
use detchern_core::schubert::{a_matrix, alpha_matrix};
use detchern_core::{IntMatrix, Tau};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Every `τ_{m,n,k}` with `1 <= k < n <= m` and `mn <= limit`.
fn instances(limit: usize) -> Vec<Tau> {
    let mut out = Vec::new();
    for m in 2..=limit {
        for n in 2..=m {
            if m * n > limit {
                continue;
            }
            for k in 1..n {
                out.push(Tau::new(m, n, k).unwrap());
            }
        }
    }
    out
}

/// Giambelli-Thom-Porteous: the degree of `m x n` matrices of rank `<= r`.
fn porteous_degree(m: usize, n: usize, r: usize) -> BigInt {
    let fact = |x: usize| -> BigInt { (1..=x).map(BigInt::from).product() };
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n - r {
        num *= fact(m + i) * fact(i);
        den *= fact(r + i) * fact(m - r + i);
    }
    assert!((&num % &den).is_zero());
    num / den
}

#[test]
fn three_evaluations_of_chern_mather_agree() {
    for t in instances(16) {
        let closed = cm_class(&t).unwrap();
        assert_eq!(cm_class_via_trace(&t).unwrap(), closed, "{t} trace");
        assert_eq!(cm_class_via_alpha(&t).unwrap(), closed, "{t} alpha");
    }
}

#[test]
fn polar_degree_routes_agree() {
    for t in instances(16) {
        let pd = polar_degrees(&t).unwrap();
        assert_eq!(pd.values().len(), t.dim() + 1);
        assert!(pd.values().iter().all(|d| d >= &BigInt::zero()), "{t}");
    }
}

#[test]
fn alpha_at_mk_is_a() {
    for t in instances(12) {
        let mk = (t.m() * t.k()) as i64;
        assert_eq!(alpha_matrix(&t, mk).unwrap(), a_matrix(&t).unwrap(), "{t}");
    }
}

#[test]
fn a_matrix_support() {
    for t in instances(16) {
        let a = a_matrix(&t).unwrap();
        let top = t.k() * (t.n() - t.k());
        for i in 0..a.dim() {
            for p in 0..a.dim() {
                if p < i || p > top {
                    assert!(a.get(i, p).is_zero(), "{t} A[{i}][{p}]");
                }
            }
        }
    }
}

#[test]
fn top_row_of_a_is_euler_characteristic_of_grassmannian() {
    // A_{0,0} = ∫ c(T G)
    for t in instances(16) {
        let a = a_matrix(&t).unwrap();
        assert_eq!(a.get(0, 0), &binom(t.n() as i64, t.k() as i64), "{t}");
    }
}

#[test]
fn binomial_transfer_matrices_are_inverse() {
    for n in 1..=12 {
        for k in 0..n {
            let (u, v) = binomial_transfer_matrices(n, k);
            assert_eq!(
                u.mul(&v).unwrap(),
                IntMatrix::identity(n - k),
                "n={n}, k={k}"
            );
            assert_eq!(
                v.mul(&u).unwrap(),
                IntMatrix::identity(n - k),
                "n={n}, k={k}"
            );
        }
    }
}

#[test]
fn open_strata_add_up_to_closed_variety() {
    for t in instances(20) {
        let mut acc = ProjClass::zero(t.ambient_dim());
        for s in t.strata() {
            acc = &acc + &csm_open(&s).unwrap();
        }
        assert_eq!(acc, csm_class(&t).unwrap(), "{t}");
    }
}

#[test]
fn open_strata_have_vanishing_low_terms() {
    for t in instances(20) {
        let c = csm_open(&t).unwrap();
        for l in 0..t.n() - t.k() - 1 {
            assert!(c.point(l).is_zero(), "{t} [P^{l}]");
        }
    }
}

#[test]
fn conormal_positive_with_degree_in_first_slot() {
    for t in instances(25) {
        let con = conormal(&t).unwrap();
        assert!(
            con.by_h2_exponent().iter().all(|c| c >= &BigInt::zero()),
            "{t}"
        );
        let top = t.ambient_dim() + 1;
        let deg = porteous_degree(t.m(), t.n(), t.n() - t.k());
        assert_eq!(con.coefficient(t.codim(), top - t.codim()), deg, "{t}");
        assert_eq!(cm_class(&t).unwrap().point(t.dim()), deg, "{t}");
    }
}

#[test]
fn conormal_cycles_flip_under_duality() {
    for t in instances(25) {
        let dual = t.with_k(t.n() - t.k()).unwrap();
        assert_eq!(
            dagger(&conormal(&t).unwrap()),
            conormal(&dual).unwrap(),
            "{t}"
        );
        assert_eq!(ged(&t).unwrap(), ged(&dual).unwrap(), "{t}");
    }
}

#[test]
fn dual_chern_mather_matches_dual_variety() {
    for t in instances(20) {
        let dual = t.with_k(t.n() - t.k()).unwrap();
        let got = dual_cm(&cm_class(&t).unwrap(), t.dim()).unwrap();
        assert_eq!(got, cm_class(&dual).unwrap(), "{t}");
    }
}

#[test]
fn open_characteristic_cycles_rebuild_conormal() {
    for t in instances(20) {
        let mut acc = BiProjClass::zero(t.ambient_dim());
        for i in t.k()..t.n() {
            let ch = charcycle_open(&t.with_k(i).unwrap()).unwrap();
            acc = &acc + &ch.scaled(&binom(i as i64, t.k() as i64));
        }
        let con = conormal(&t)
            .unwrap()
            .scaled(&BigInt::from(sign(t.dim() as i64)));
        assert_eq!(acc, con, "{t}");
    }
}

#[test]
fn obstruction_matrix_inverse_is_signed_pascal() {
    for n in 1..=10 {
        let inv = IntMatrix::from_fn(n, |j, i| {
            binom(j as i64, i as i64) * sign(j as i64 - i as i64)
        });
        assert_eq!(
            obstruction_matrix(n).mul(&inv).unwrap(),
            IntMatrix::identity(n)
        );
    }
}

#[test]
fn ic_multiplicities_are_unit_vectors() {
    for n in 2..=8 {
        for m in n..=n + 2 {
            for k in 1..n {
                let t = Tau::new(m, n, k).unwrap();
                let r = solve_multiplicities(&IndexSystem::determinantal(&t).unwrap());
                for (i, v) in r.values().iter().enumerate() {
                    let expected = if i == k {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(v, &expected, "{t} r_{i}");
                }
            }
        }
    }
}

fn big_vec(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<BigInt>> {
    proptest::collection::vec(-1000i64..=1000, len)
        .prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

proptest! {
    #[test]
    fn j_is_an_involution_on_classes_without_constant_term(mut q in big_vec(2..20)) {
        q[0] = BigInt::zero();
        prop_assert_eq!(j_involution(&j_involution(&q)), q);
    }

    #[test]
    fn dagger_is_an_involution(v in big_vec(2..30)) {
        let x = BiProjClass::from_h2_exponents(v);
        prop_assert_eq!(dagger(&dagger(&x)), x);
    }

    #[test]
    fn dagger_is_additive(v in big_vec(10..11), w in big_vec(10..11)) {
        let x = BiProjClass::from_h2_exponents(v);
        let y = BiProjClass::from_h2_exponents(w);
        prop_assert_eq!(dagger(&(&x + &y)), &dagger(&x) + &dagger(&y));
    }

    #[test]
    fn forward_substitution_recovers_multiplicities(
        r in big_vec(1..12),
        lower in proptest::collection::vec(-50i64..=50, 144),
    ) {
        let n = r.len();
        let e = IntMatrix::from_fn(n, |j, i| match j.cmp(&i) {
            std::cmp::Ordering::Greater => BigInt::from(lower[j * 12 + i]),
            std::cmp::Ordering::Equal => BigInt::one(),
            std::cmp::Ordering::Less => BigInt::zero(),
        });
        let chi = e.mul_vec(&r).unwrap();
        let sys = IndexSystem::new(chi.clone(), e.clone()).unwrap();
        let solved = solve_multiplicities(&sys);
        prop_assert_eq!(solved.values(), &r[..]);
        prop_assert_eq!(e.mul_vec(solved.values()).unwrap(), chi);
    }
}

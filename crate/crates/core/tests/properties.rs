use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use qres::exactalg::{charpoly_exact, charpoly_from_traces, smith_normal_form, CycloProduct, Matrix};
use qres::monodromy::perm_charpoly;
use qres::qspace::QuotientType;
use qres::semistable::{build_dual_complex, riemann_hurwitz_check};
use qres::steenbrink::column_exact_solver;
use qres::strata::{from_json_str, gen_two_branch, to_json_string, validate};
use qres::{IntMatrix, RatMatrix};

fn int_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |xs| Matrix::from_fn(r, c, |i, j| BigInt::from(xs[i * c + j])))
    })
}

fn cyclo() -> impl Strategy<Value = CycloProduct> {
    prop::collection::btree_map(1u64..=24, -3i64..=3, 0..5).prop_map(CycloProduct::from_phi_exponents)
}

fn permutation() -> impl Strategy<Value = Vec<usize>> {
    (1usize..=7).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

fn quotient_type() -> impl Strategy<Value = QuotientType> {
    (2usize..=3, prop::collection::vec(1i64..=10, 1..=2)).prop_flat_map(|(n, d)| {
        let rows: Vec<_> = d.iter().map(|&di| prop::collection::vec(0..di, n)).collect();
        (Just(d), rows).prop_map(move |(d, a)| QuotientType::new(d, a, n).unwrap())
    })
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_is_a_unimodular_diagonalization(m in int_matrix()) {
        let f = smith_normal_form(&m);
        prop_assert_eq!(&(&f.u * &m) * &f.v, f.d.clone());
        prop_assert!(f.u.det_bareiss().abs().is_one());
        prop_assert!(f.v.det_bareiss().abs().is_one());
        let inv = f.invariants();
        for w in inv.windows(2) {
            prop_assert!(w[1].is_zero() || (&w[1] % &w[0]).is_zero());
        }
        prop_assert!(inv.iter().all(|x| !x.is_negative()));
    }

    #[test]
    fn cyclo_products_form_a_group(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).degree(), a.degree() + b.degree());
        prop_assert!((&a / &a).is_one());
        prop_assert_eq!(CycloProduct::from_exponents(a.exponents()), a.clone());
        prop_assert_eq!(&a.unipotent_part() * &a.non_unipotent_part(), a);
    }

    #[test]
    fn cyclo_polynomials_multiply(a in cyclo(), b in cyclo()) {
        let (a, b) = (CycloProduct::from_phi_exponents(a.canonical().into_iter().map(|(d, e)| (d, e.abs()))),
                      CycloProduct::from_phi_exponents(b.canonical().into_iter().map(|(d, e)| (d, e.abs()))));
        let pa = a.to_poly().unwrap();
        let pb = b.to_poly().unwrap();
        prop_assert_eq!((&a * &b).to_poly().unwrap(), &pa * &pb);
        prop_assert_eq!(CycloProduct::from_poly(&(&pa * &pb)).unwrap(), &a * &b);
    }

    #[test]
    fn traces_recover_charpoly(perm in permutation(), ops in prop::collection::vec((0usize..7, 0usize..7, -2i64..=2), 0..12)) {
        let n = perm.len();
        let mut m: RatMatrix = Matrix::from_fn(n, n, |i, j| if perm[j] == i { rat(1) } else { rat(0) });
        for (i, j, c) in ops {
            let (i, j) = (i % n, j % n);
            if i == j {
                continue;
            }
            let mut e: RatMatrix = Matrix::identity(n);
            e[(i, j)] = rat(c);
            let mut ei: RatMatrix = Matrix::identity(n);
            ei[(i, j)] = rat(-c);
            m = &(&e * &m) * &ei;
        }
        let mut traces = Vec::new();
        let mut p: RatMatrix = Matrix::identity(n);
        for _ in 0..n {
            p = &p * &m;
            traces.push(p.trace());
        }
        let exact = charpoly_exact(&m);
        prop_assert_eq!(charpoly_from_traces(&traces, n, true).unwrap(), exact.clone());
        let want = perm_charpoly(&perm).to_poly().unwrap();
        prop_assert_eq!(exact.map(|x| x.to_integer()), want);
    }

    #[test]
    fn permutation_charpoly_vanishes_at_one(perm in permutation()) {
        prop_assert!(perm_charpoly(&perm).phi_exponent(1) >= 1);
        prop_assert_eq!(perm_charpoly(&perm).degree(), perm.len() as i64);
    }

    #[test]
    fn normalize_is_idempotent(t in quotient_type()) {
        let (nt, k) = t.normalize();
        prop_assert!(nt.is_normalized());
        let (again, k2) = nt.normalize();
        prop_assert_eq!(&again, &nt);
        prop_assert!(k2.iter().all(|&x| x == 1));
        prop_assert_eq!(nt.order() * k.iter().product::<i64>() as u64, t.order());
    }

    #[test]
    fn multiplicity_matches_enumeration(t in quotient_type(), m in prop::collection::vec(0i64..=12, 3)) {
        let m: Vec<i64> = m[..t.ncoords()].to_vec();
        prop_assume!(m.iter().any(|&x| x > 0) && t.is_invariant(&m));
        prop_assert_eq!(t.multiplicity(&m).unwrap(), t.multiplicity_by_enumeration(&m, 10_000));
    }

    #[test]
    fn exact_sequence_solution_balances(xs in prop::collection::vec(0i64..=20, 2..=6), hole in 0usize..6) {
        let hole = hole % xs.len();
        let mut seq: Vec<Option<i64>> = xs.iter().map(|&x| Some(x)).collect();
        seq[hole] = None;
        if let Ok(x) = column_exact_solver(&seq) {
            let mut full = xs.clone();
            full[hole] = x;
            let alt: i64 = full.iter().enumerate().map(|(i, v)| if i % 2 == 0 { *v } else { -v }).sum();
            prop_assert_eq!(alt, 0);
            prop_assert!(x >= 0);
        }
    }

    #[test]
    fn two_branch_invariants(p in 1i64..=9, q in 1i64..=9, r in 1i64..=9, s in 1i64..=9) {
        prop_assume!(p.gcd(&q) == 1 && r.gcd(&s) == 1 && p * s < q * r);
        let sd = gen_two_branch(p, q, r, s).unwrap();
        let json = to_json_string(&sd);
        let back = from_json_str(&json, true).unwrap();
        prop_assert_eq!(to_json_string(&back), json);
        let v = validate(sd).unwrap();
        for id in [0, 1] {
            prop_assert!(riemann_hurwitz_check(&v, id).unwrap().holds());
        }
        let k = build_dual_complex(&v).unwrap();
        k.check().unwrap();
        prop_assert_eq!(k.graph_cycles() as i64, p.gcd(&s) - 1);
    }
}

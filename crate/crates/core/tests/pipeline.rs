use std::collections::BTreeMap;
use std::path::PathBuf;

use num_integer::Integer;
use num_rational::BigRational;

use qres::exactalg::{CycloProduct, Matrix};
use qres::monodromy::{acampo_charpoly, complex_cohomology_action, jordan_blocks_matrix, CohomologyMode, Restrict};
use qres::semistable::{build_dual_complex, component_count, multibranch_gap, LevelB, SemistableComplex};
use qres::steenbrink::{mhs_curve, mhs_surface_partial, SurfaceAux};
use qres::strata::{load, validate, ValidatedDivisor};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn divisor(name: &str) -> ValidatedDivisor {
    validate(load(&data(name), true).unwrap()).unwrap()
}

fn u(m: i64, e: i64) -> CycloProduct {
    CycloProduct::t_minus_one_pow(m as u64, e)
}

const DIVISORS: [&str; 4] = ["one_branch.json", "two_branch.json", "yls_cusp.json", "yls_two_branch.json"];

fn exact_matches_vanishing(k: &SemistableComplex) {
    for restrict in [Restrict::All, Restrict::Exceptional] {
        let exact = complex_cohomology_action(k, restrict, CohomologyMode::Exact).unwrap();
        if exact.dims[1..k.n].iter().all(|&d| d == 0) {
            let vanishing = complex_cohomology_action(k, restrict, CohomologyMode::Vanishing).unwrap();
            assert_eq!(exact, vanishing);
        }
    }
}

#[test]
fn shipped_divisors_validate_and_build() {
    for name in DIVISORS {
        let v = divisor(name);
        let k = build_dual_complex(&v).unwrap();
        k.check().unwrap();
        exact_matches_vanishing(&k);
    }
}

#[test]
fn curve_vertices_and_edge_orbits() {
    for name in ["one_branch.json", "two_branch.json"] {
        let v = divisor(name);
        let k = build_dual_complex(&v).unwrap();
        let want: i64 = v.exceptional_ids().into_iter().map(|id| component_count(&v, id).unwrap()).sum();
        assert_eq!(k.cells[0].iter().filter(|c| c.exceptional).count() as i64, want, "{name}");
        for cell in &k.cells[1] {
            let s = cell.stratum.unwrap();
            assert_eq!(cell.family_size as i64, v.m[s], "{name}: {}", cell.name);
        }
    }
}

#[test]
fn curve_reports_add_up() {
    for name in ["one_branch.json", "two_branch.json"] {
        let v = divisor(name);
        let delta = acampo_charpoly(&v).unwrap();
        let r = mhs_curve(&v).unwrap();
        assert_eq!(r.delta, delta);
        let dims: usize = r.dims().into_iter().map(Option::unwrap).sum();
        assert_eq!(dims as i64, delta.degree(), "{name}");
        let product: CycloProduct = (0..=2).map(|w| r.delta_of(w).unwrap().known.clone()).product();
        assert_eq!(product, delta, "{name}");
    }
}

#[test]
fn surface_reports() {
    let aux: SurfaceAux = serde_json::from_str(&std::fs::read_to_string(data("extra/yls_aux.json")).unwrap()).unwrap();
    let r = mhs_surface_partial(&divisor("yls_cusp.json"), &aux).unwrap();
    assert_eq!(r.dims()[4], Some(0));
    assert!(!r.delta_of(1).unwrap().is_concrete());

    let r = mhs_surface_partial(&divisor("yls_two_branch.json"), &aux).unwrap();
    let (p, s, k, m) = (2i64, 1i64, 2i64, 12i64);
    let kk = k.gcd(&p).gcd(&s);
    let gr4 = &(&u(m.gcd(&p).gcd(&s), 1) / &u(1, 1)) * &u(1, kk);
    assert_eq!(r.delta_of(4).unwrap().known, gr4);
    assert!(r.delta.is_polynomial());
}

#[test]
fn multibranch_chain_file() {
    let lb: LevelB = serde_json::from_str(&std::fs::read_to_string(data("multibranch.json")).unwrap()).unwrap();
    let k = lb.build().unwrap();
    k.check().unwrap();
    exact_matches_vanishing(&k);
    let params = [(2, 3), (4, 5), (6, 7)];
    let h = complex_cohomology_action(&k, Restrict::Exceptional, CohomologyMode::Exact).unwrap();
    let want: CycloProduct = (1..3).map(|i| &u(multibranch_gap(&params, i), 1) / &u(1, 1)).product();
    assert_eq!(h.h[1], want);
}

#[test]
fn jordan_matrix_file() {
    #[derive(serde::Deserialize)]
    struct Input {
        matrix: Vec<Vec<i64>>,
        e: u64,
    }
    let input: Input = serde_json::from_str(&std::fs::read_to_string(data("extra/jordan_matrix.json")).unwrap()).unwrap();
    let n = input.matrix.len();
    let m: Matrix<BigRational> = Matrix::from_fn(n, n, |i, j| BigRational::from_integer(input.matrix[i][j].into()));
    let spec = jordan_blocks_matrix(&m, input.e).unwrap();
    assert_eq!(spec.0, BTreeMap::from([((1, 2), 1), ((6, 1), 1)]));
}

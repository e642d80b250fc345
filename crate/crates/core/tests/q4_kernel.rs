use num_bigint::BigInt;
use num_rational::Ratio;
use sumgraph::exactla::{enumerate_primitive_labellings, labelling_kernel, span_coordinates};
use sumgraph::fixtures::{fixture_by_id, Q4_U_BASIS, Q4_U_COORDINATES};
use sumgraph::{build_family, verify, Graph};

fn q4() -> Graph {
    build_family(&"Q4".parse().unwrap()).unwrap()
}

fn u_basis() -> Vec<Vec<BigInt>> {
    Q4_U_BASIS.iter().map(|u| u.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn labels(id: &str) -> Vec<BigInt> {
    let f = fixture_by_id(id).unwrap();
    f.labelling.labels().iter().map(|e| e.as_int().unwrap().clone()).collect()
}

#[test]
fn kernel_of_the_first_three_solutions() {
    let g = q4();
    let printed_basis = u_basis();
    for (id, coords) in Q4_U_COORDINATES {
        let k = labelling_kernel(&g, &fixture_by_id(id).unwrap().labelling).unwrap();
        assert_eq!(k.system.rows.len(), 32);
        assert_eq!(k.basis.len(), 3, "{id}");
        for u in &printed_basis {
            assert!(span_coordinates(&k.basis, u).is_some());
        }
        let want: Vec<Ratio<BigInt>> = coords.iter().map(|&c| Ratio::from_integer(BigInt::from(c))).collect();
        assert_eq!(span_coordinates(&printed_basis, &labels(id)).unwrap(), want, "{id}");
    }
}

#[test]
fn radius_24_labelling_has_a_smaller_kernel() {
    let g = q4();
    let k = labelling_kernel(&g, &fixture_by_id("FIX-9.3-Q4-r24").unwrap().labelling).unwrap();
    assert_eq!(k.basis.len(), 1);
    assert!(span_coordinates(&u_basis(), &labels("FIX-9.3-Q4-r24")).is_none());
}

#[test]
fn primitive_labellings_at_box_50() {
    let g = q4();
    let prims = enumerate_primitive_labellings(&g, &u_basis(), 50).unwrap();
    assert!(prims.len() >= 5);
    for p in prims.iter().take(200) {
        assert!(verify(&p.labelling(), &g).unwrap().ok);
    }
    // Non-proportional: primitive with positive leading entry, so distinct.
    let mut seen: Vec<&Vec<i64>> = prims.iter().map(|p| &p.labels).collect();
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), prims.len());
    // sol1 is itself primitive (up to sign) with coefficients (-6, 19, -40).
    let sol1: Vec<i64> = labels("FIX-9.3-Q4-sol1").iter().map(|x| i64::try_from(x).unwrap()).collect();
    let neg: Vec<i64> = sol1.iter().map(|x| -x).collect();
    assert!(prims.iter().any(|p| p.labels == sol1 || p.labels == neg));
}

mod common;

use common::{fixture, gamma_rank_oracle};
use mamlab::fan::{
    certificate_from_offsets, is_complete, normal_fan, validate_fan, weak_normal_certificate, FanData, PolytopeH,
    WeakNormalOutcome,
};
use mamlab::foliation::{all_leaves, detect_seifert, gamma_rank};
use mamlab::scalar::{Scalar, SymbolTable};
use mamlab::simplicial::SimplicialComplex;
use mamlab::Error;
use proptest::prelude::*;

const GOOD: [&str; 7] = [
    "torus-1",
    "hopf-rational",
    "hopf-generic",
    "hopf-irr",
    "square",
    "simplex-1",
    "simplex-3",
];

#[test]
fn good_fixtures_are_complete_fans() {
    for name in GOOD {
        let p = fixture(name);
        assert!(validate_fan(&p.fan).unwrap().ok(), "{name}");
        assert!(is_complete(&p.fan).unwrap().complete(), "{name}");
    }
}

#[test]
fn overlap_and_quadrant_are_flagged() {
    let overlap = fixture("overlap");
    let report = validate_fan(&overlap.fan).unwrap();
    assert!(!report.ok());
    assert!(!report.overlap_pairs().is_empty());
    assert!(!is_complete(&overlap.fan).unwrap().complete());

    let quadrant = fixture("quadrant");
    assert!(validate_fan(&quadrant.fan).unwrap().ok());
    let c = is_complete(&quadrant.fan).unwrap();
    assert!(!c.complete());
    assert!(!c.diagnostics().is_empty());
}

#[test]
fn weak_normal_certificates_verify() {
    for name in GOOD.iter().filter(|n| **n != "torus-1") {
        let p = fixture(name);
        match weak_normal_certificate(&p.fan).unwrap() {
            WeakNormalOutcome::Found(c) => assert!(c.verify(&p.fan).unwrap(), "{name}"),
            WeakNormalOutcome::NotFound { reason, .. } => panic!("{name}: {reason}"),
        }
    }
}

#[test]
fn square_betas_are_frozen() {
    let p = fixture("square");
    let c = certificate_from_offsets(&p.fan, p.offsets.as_ref().unwrap())
        .unwrap()
        .unwrap();
    let ints = |v: &[Scalar]| {
        v.iter()
            .map(|x| x.as_rational().unwrap().to_integer().try_into().unwrap())
            .collect::<Vec<i64>>()
    };
    let betas: Vec<Vec<i64>> = c.betas.iter().map(|b| ints(b)).collect();
    assert_eq!(
        betas,
        vec![vec![0, 0, 2, 2], vec![0, 2, 2, 0], vec![2, 0, 0, 2], vec![2, 2, 0, 0]]
    );
}

#[test]
fn gamma_rank_matches_lattice_search() {
    for name in [
        "torus-1",
        "hopf-rational",
        "hopf-generic",
        "hopf-irr",
        "square",
        "simplex-1",
    ] {
        let p = fixture(name);
        for face in p.fan.complex().faces() {
            assert_eq!(
                gamma_rank(&p.fan, &face).unwrap(),
                gamma_rank_oracle(&p.fan, &face, 5),
                "{name} {face:?}"
            );
        }
    }
}

#[test]
fn frozen_leaf_ranks() {
    let ranks = |name: &str| {
        all_leaves(&fixture(name).fan)
            .unwrap()
            .iter()
            .map(|l| l.rank)
            .collect::<Vec<_>>()
    };
    // ∅, three singletons, three edges
    assert_eq!(ranks("hopf-generic"), vec![0, 0, 0, 0, 2, 2, 2]);
    assert_eq!(ranks("hopf-rational"), vec![2, 2, 2, 2, 2, 2, 2]);
    assert_eq!(ranks("torus-1"), vec![2]);
}

#[test]
fn seifert_detection() {
    let r = detect_seifert(&fixture("hopf-rational").fan).unwrap();
    assert!(r.rational);
    assert!(!detect_seifert(&fixture("hopf-generic").fan).unwrap().rational);
}

#[test]
fn non_face_is_rejected() {
    let p = fixture("hopf-rational");
    assert!(matches!(gamma_rank(&p.fan, &[1, 2, 3]), Err(Error::NotAFace(_))));
}

fn polygon(rays: &[(i64, i64)], offsets: &[i64]) -> PolytopeH {
    PolytopeH::new(
        2,
        rays.iter()
            .map(|&(x, y)| vec![Scalar::from_int(x), Scalar::from_int(y)])
            .collect(),
        offsets.iter().map(|&b| Scalar::from_int(b)).collect(),
        SymbolTable::new(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_fans_of_polygons_are_weakly_normal(
        rays in prop::collection::vec((-4i64..=4, -4i64..=4), 3..7),
        offsets in prop::collection::vec(1i64..6, 7),
    ) {
        let b = &offsets[..rays.len()];
        let p = polygon(&rays, b);
        match normal_fan(&p) {
            Ok(nf) => {
                let f: &FanData = &nf.fan;
                prop_assert!(validate_fan(f).unwrap().ok());
                prop_assert!(is_complete(f).unwrap().complete());
                let offs: Vec<Scalar> = b.iter().map(|&x| Scalar::from_int(x)).collect();
                let cert = certificate_from_offsets(f, &offs).unwrap();
                prop_assert!(cert.is_some_and(|c| c.verify(f).unwrap()));
            }
            Err(Error::DegeneratePolytope(_)) | Err(Error::NotSimple { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn gamma_rank_oracle_on_random_polygons(
        rays in prop::collection::vec((-2i64..=2, -2i64..=2), 4..5),
    ) {
        let p = polygon(&rays, &[1, 1, 1, 1]);
        if let Ok(nf) = normal_fan(&p) {
            for face in nf.fan.complex().faces() {
                prop_assert_eq!(gamma_rank(&nf.fan, &face).unwrap(), gamma_rank_oracle(&nf.fan, &face, 8));
            }
        }
    }

    #[test]
    fn removing_a_cone_breaks_completeness(k in 3usize..7, drop in 0usize..6) {
        // regular k-gon normals approximated on the integer grid
        let rays: Vec<Vec<Scalar>> = (0..k)
            .map(|j| {
                let a = std::f64::consts::TAU * j as f64 / k as f64;
                vec![Scalar::from_int((10.0 * a.cos()).round() as i64), Scalar::from_int((10.0 * a.sin()).round() as i64)]
            })
            .collect();
        let mut faces: Vec<Vec<usize>> = (1..=k).map(|i| { let mut f = vec![i, i % k + 1]; f.sort(); f }).collect();
        let full = FanData::new(SimplicialComplex::new(k, faces.clone()).unwrap(), 2, rays.clone(), SymbolTable::new()).unwrap();
        prop_assert!(is_complete(&full).unwrap().complete());
        faces.remove(drop % k);
        let holed = FanData::new(SimplicialComplex::new(k, faces).unwrap(), 2, rays, SymbolTable::new()).unwrap();
        prop_assert!(!is_complete(&holed).unwrap().complete());
    }
}

//! End-to-end workflows through the public API only: construct, serialize,
//! analyze, and cross-check the results the way a downstream consumer would.

use fpnmod::admissibility::{
    has_crystalline_filtration, is_strongly_irreducible_over_unramified, is_weakly_admissible,
    stable_subspaces, weakly_admissible_submodules, Completeness, CrystallineFiltration,
    SearchParams, StrongIrreducibility, Verdict,
};
use fpnmod::corpus::{tate_type_module, type01_corpus, CorpusParams};
use fpnmod::dichotomy::{
    batch_crystalline_dichotomy, batch_crystalline_dichotomy_seq, crystalline_dichotomy,
    slope_decomposition, DichotomyWitness,
};
use fpnmod::doc::ModuleDocument;
use fpnmod::endo::{endomorphism_ring, scalar_image_certificate, semilinear_endomorphism_dimension};
use fpnmod::exact::rational::rat;
use fpnmod::module::fm_example;
use fpnmod::Error;

#[test]
fn example_module_full_pipeline() {
    let params = SearchParams::default();
    let m = fm_example(5, 3, &rat(5)).unwrap();
    assert!(m.is_valid());
    assert_eq!((m.hodge_number(), m.newton_number()), (3, 3));

    // One proper stable line; weakly admissible with nothing inside.
    let enumeration = stable_subspaces(&m, &params);
    assert_eq!(enumeration.completeness, Completeness::Exact);
    assert_eq!(enumeration.subspaces.len(), 3);
    assert_eq!(
        is_weakly_admissible(&m, &params).verdict,
        Verdict::WeaklyAdmissible
    );
    assert!(weakly_admissible_submodules(&m, &params)
        .submodules
        .is_empty());
    assert_eq!(
        is_strongly_irreducible_over_unramified(&m, &params).verdict,
        StrongIrreducibility::True
    );
    assert_eq!(
        has_crystalline_filtration(&m, &params),
        CrystallineFiltration::Absent
    );

    // Slopes {1, 2}; the dichotomy refuses the (0,3) type.
    let d = slope_decomposition(&m, 50).unwrap();
    assert_eq!(d.parts.len(), 2);
    assert!(matches!(
        crystalline_dichotomy(&m, &params, 50),
        Err(Error::PreconditionBreach(_))
    ));

    // Scalar endomorphisms in every sense.
    assert_eq!(endomorphism_ring(&m, true).dimension, 1);
    assert_eq!(
        semilinear_endomorphism_dimension(&m).unwrap().qp_dimension,
        Some(1)
    );
    assert!(scalar_image_certificate(&m, &params).unwrap());
}

#[test]
fn symmetric_power_inherits_the_story() {
    let params = SearchParams::default();
    let m = fm_example(5, 3, &rat(5)).unwrap();
    let s2 = m.sym_power(2).unwrap();
    assert!(s2.is_valid());
    assert_eq!(s2.hodge_number(), s2.newton_number());
    assert!(weakly_admissible_submodules(&s2, &params)
        .submodules
        .is_empty());
    assert!(scalar_image_certificate(&s2, &params).unwrap());
    // Iterated symmetric powers stay valid and balanced.
    let s2s2 = s2.sym_power(2).unwrap();
    assert!(s2s2.is_valid());
    assert_eq!(s2s2.hodge_number(), s2s2.newton_number());
}

#[test]
fn serialize_analyze_round_trip() {
    let params = SearchParams::default();
    let m = tate_type_module(5, true).unwrap();
    let doc = ModuleDocument::from_module(&m);
    let text = doc.canonical_json();
    let back = ModuleDocument::parse(&text).unwrap().to_module().unwrap();
    assert_eq!(back, m);

    // The reparsed module analyzes identically.
    let a = is_weakly_admissible(&m, &params);
    let b = is_weakly_admissible(&back, &params);
    assert_eq!(a, b);
    let wa = crystalline_dichotomy(&back, &params, 50).unwrap();
    match wa {
        DichotomyWitness::ProperCrystallineSub { sub, quot, .. } => {
            assert_eq!(sub.hodge_number(), 0);
            assert!(quot.is_crystalline());
        }
        DichotomyWitness::Crystalline => panic!("N != 0 here"),
    }
}

#[test]
fn batch_helpers_agree_across_execution_modes() {
    let corpus = type01_corpus(&CorpusParams {
        seed: 99,
        count: 12,
        max_dim: 3,
    });
    let params = SearchParams::default();
    let par = batch_crystalline_dichotomy(&corpus, &params, 50);
    let seq = batch_crystalline_dichotomy_seq(&corpus, &params, 50);
    assert_eq!(par, seq);
    assert!(par.iter().all(|r| r.is_ok()));
}

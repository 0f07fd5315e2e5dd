mod common;

use common::*;
use ga_core::corpus;
use ga_core::harness::Harness;
use ga_core::reflection::*;
use ga_core::term::*;
use proptest::prelude::*;

#[test]
fn pairing_prefix_is_bijective() {
    pairing_bijective(3_000).unwrap();
}

#[test]
fn random_round_trips() {
    round_trips(1_000, 5).unwrap();
}

#[test]
fn checker_matches_kernel_on_corpus_and_mutants() {
    let d = corpus::arith();
    let rep = c_agreement(&d, 150, 3);
    assert!(rep.disagreements.is_empty(), "{:#?}", rep.disagreements);
    assert!(rep.valid > 30);
    assert!(rep.mutants_accepted < rep.mutants / 2, "mutants too weak: {}", rep.mutants_accepted);
}

#[test]
fn eplus_laws_on_the_corpus() {
    let h = Harness::new();
    let points: Vec<u64> = (0..40).chain([100, 500, 1023, 1024, 5_000, 1 << 20]).collect();
    let n = eplus_laws(&h.reflection, &h.names, &points, 200_000).unwrap();
    assert!(n > 500);
}

#[test]
fn planted_certificates_decide_e() {
    let (one, zero) = planted_e(200_000).unwrap();
    assert_eq!(value(&one), Some(1), "{one}");
    assert_eq!(value(&zero), Some(0), "{zero}");
}

#[test]
fn non_codes_are_rejected() {
    // Tag 0 (zero) with a non-zero payload is not a term code.
    assert!(!wf_term_code(&pair(&Code::new(), &Code::from(1u32))));
    assert!(wf_term_code(&encode_term(&numeral(3))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn pair_unpair(x in any::<u32>(), y in any::<u32>()) {
        let (x, y) = (Code::from(x), Code::from(y));
        let n = pair(&x, &y);
        let direct = (x.clone() + &y) * (x.clone() + &y + 1u32) / 2u32 + &y;
        prop_assert_eq!(&n, &direct);
        prop_assert_eq!(unpair(&n), (x, y));
    }

    #[test]
    fn codes_are_canonical(n in 0u64..1_000_000) {
        let c = Code::from(n);
        if let Ok(t) = decode_term(&c) {
            prop_assert_eq!(encode_term(&t), c.clone());
        }
        if let Ok(j) = decode_judgment(&c) {
            prop_assert_eq!(encode_judgment(&j), c.clone());
        }
        if let Ok(p) = decode_proof(&c) {
            prop_assert_eq!(encode_proof(&p), c);
        }
    }

    #[test]
    fn syntax_round_trips(seed in any::<u64>()) {
        round_trips(1, seed).map_err(TestCaseError::fail)?;
    }
}

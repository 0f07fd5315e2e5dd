use super::gen::{Candidate, Gen};
use super::search::search;
use super::*;
use crate::kernel::RULE_NAMES;

fn small() -> Config {
    Config { cases: 20, domain: 3, fuel: 300, seed: 7, semantics: Semantics::Standard }
}

#[test]
fn every_rule_has_a_generator() {
    let h = Harness::new();
    let cfg = small();
    for id in 0..RULE_NAMES.len() {
        let inst = h.instance(&cfg, Subject::Rule(id), 0);
        match inst.rule {
            Candidate::Primitive(r) => assert_eq!(r.id(), id),
            other => panic!("rule {id} produced {other:?}"),
        }
    }
}

#[test]
fn generators_mostly_apply() {
    let h = Harness::new();
    let cfg = small();
    for (id, name) in RULE_NAMES.iter().enumerate() {
        let ok = (0..40).filter(|&k| h.conclusion(&h.instance(&cfg, Subject::Rule(id), k)).is_some()).count();
        assert!(ok >= 20, "{}: only {ok}/40 instances accepted", name);
    }
}

#[test]
fn instances_are_reproducible() {
    let h = Harness::new();
    let cfg = small();
    let a = h.instance(&cfg, Subject::Rule(10), 5);
    let b = h.instance(&cfg, Subject::Rule(10), 5);
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
}

#[test]
fn sound_rules_survive_a_short_run() {
    let h = Harness::new();
    let cfg = small();
    for id in [2, 6, 10, 22, 24] {
        let r = h.run(Subject::Rule(id), &cfg);
        assert_eq!(r.counterexamples, 0, "{r}\n{:?}", r.examples);
        assert!(r.premises_true > 0, "{r}");
    }
}

#[test]
fn canaries_fire_on_their_first_case() {
    let h = Harness::new();
    let cfg = Config { cases: 1, ..small() };
    for s in [Subject::ClassicalImp, Subject::LiteralFold] {
        let r = h.run(s, &cfg);
        assert!(r.counterexamples >= 1, "{r}");
        assert!(r.passed());
    }
}

#[test]
fn report_line_shape() {
    let h = Harness::new();
    let r = h.run(Subject::Rule(13), &Config { cases: 3, ..small() });
    let line = r.to_string();
    assert!(line.starts_with("rule:0I id:13 attempted:"), "{line}");
    assert!(line.ends_with("verdict:pass"), "{line}");
}

#[test]
fn search_finds_simple_typing_but_not_the_liar() {
    let h = Harness::new();
    let d = &h.reflection.defs;
    let (th, _) = search(d, &Judgment::closed(crate::term::boolean(crate::term::truth())), 3, &[]);
    assert!(th.is_some());
    let liar = apply(d.index_of("liar").unwrap(), vec![]);
    let (th, n) = search(d, &Judgment::closed(crate::term::boolean(liar)), 2, &[]);
    assert!(th.is_none());
    assert!(n > 0);
}

#[test]
fn conformance_small_batch() {
    let h = Harness::new();
    let r = conformance::check(&h.reflection.defs, h.names, 200, 3);
    assert!(r.passed(), "{:?}", r.violations);
    assert!(r.values > 50);
}

#[test]
fn gen_terms_are_pure() {
    let h = Harness::new();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut g = Gen { rng: &mut rng, n: h.names };
    for _ in 0..100 {
        assert!(g.formula(3, &[0, 1]).is_pure());
    }
}


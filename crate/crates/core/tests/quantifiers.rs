mod common;

use common::*;
use ga_core::harness::gen::Truth;
use ga_core::harness::Harness;

#[test]
fn kernel_verdicts_match_reflection() {
    let h = Harness::new();
    let (rows, duals) = correspondence(&h.reflection, &h.names, 200_000);
    for r in &rows {
        assert!(r.agrees(), "{}: kernel ∃ {:?} ∀ {:?}, reflection ∃ {:?} ∀ {:?}", r.name, r.kernel_exists, r.kernel_forall, r.reflect_exists, r.reflect_forall);
        let want_exists = r.truth != Truth::Empty;
        assert_eq!(r.kernel_exists, Some(want_exists), "{}", r.name);
        let want_forall = match r.truth {
            Truth::Universal => Some(true),
            _ => Some(false),
        };
        assert_eq!(r.kernel_forall, want_forall, "{}", r.name);
    }
    for d in &duals {
        assert!(d.failures.is_empty(), "{}: {:?}", d.name, d.failures);
        assert_eq!(d.derived.len(), 4, "{}: {:?}", d.name, d.derived);
    }
    let used: std::collections::BTreeSet<_> = duals.iter().flat_map(|d| d.derived.iter().copied()).collect();
    assert_eq!(used.len(), 8, "every dual direction is exercised: {used:?}");
}

//! The bundled definition files and proof scripts.

use crate::defs::DefinitionList;
use crate::syntax::load_definitions;

pub const ARITH: &str = include_str!("../corpus/arith.gad");
pub const PARADOX: &str = include_str!("../corpus/paradox.gad");

/// The appendix termination theorems as `(definition, script)` pairs.
pub const TERMINATION_SCRIPTS: [(&str, &str); 4] = [
    ("add", include_str!("../corpus/add_total.gap")),
    ("sub", include_str!("../corpus/sub_total.gap")),
    ("even", include_str!("../corpus/even_total.gap")),
    ("mult", include_str!("../corpus/mult_total.gap")),
];

pub fn arith() -> DefinitionList {
    let mut d = DefinitionList::new();
    load_definitions(ARITH, &mut d).expect("bundled arith.gad parses");
    d
}

pub fn paradox() -> DefinitionList {
    let mut d = DefinitionList::new();
    load_definitions(PARADOX, &mut d).expect("bundled paradox.gad parses");
    d
}

/// Both files, arithmetic first.
pub fn combined() -> DefinitionList {
    let mut d = arith();
    load_definitions(PARADOX, &mut d).expect("bundled paradox.gad parses");
    d
}

//! Arithmetization: pairing, Gödel codes, the proof checker C, and the
//! reflective quantifiers.

pub mod coding;
pub mod oracle;
pub mod pairing;

#[cfg(test)]
mod tests;

pub use coding::{
    decode_judgment, decode_proof, decode_term, encode_judgment, encode_proof, encode_term,
    wf_judgment_code, wf_proof_code, wf_term_code, Code, NotWellFormed,
};
pub use oracle::{proof_check_c, search_exists, Oracle, OracleConfig, Reflection, ReflectError, Witness};
pub use pairing::{pair, unpair};

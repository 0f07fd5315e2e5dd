//! Definition lists.

use crate::nat::Nat;
use crate::term::Term;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Result of a native (oracle) call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NativeOutcome {
    /// `cost` is the fuel the call used internally, excluding its own rule unit.
    Value { value: Nat, cost: u64 },
    OutOfFuel,
    Failure(String),
}

/// A definition implemented outside the term language. Implementations must
/// be deterministic, and a `Value` at budget `b` must be returned with the same
/// value and cost at every budget `>= b`.
pub trait NativeFn: Send + Sync {
    fn call(&self, defs: &DefinitionList, args: &[Nat], budget: u64) -> NativeOutcome;
}

#[derive(Clone)]
pub enum Body {
    Term(Term),
    Native(Arc<dyn NativeFn>),
}

impl fmt::Debug for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Body::Term(t) => f.debug_tuple("Term").field(t).finish(),
            Body::Native(_) => f.write_str("Native"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Definition {
    pub name: String,
    pub body: Body,
    arity: usize,
}

impl Definition {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn term(&self) -> Option<&Term> {
        match &self.body {
            Body::Term(t) => Some(t),
            Body::Native(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefError {
    #[error("definition index {0} out of range")]
    OutOfRange(usize),
    #[error("duplicate definition name `{0}`")]
    Duplicate(String),
}

#[derive(Clone, Debug, Default)]
pub struct DefinitionList {
    defs: Vec<Definition>,
}

/// Least natural above every free variable index.
pub fn arity_of(body: &Term) -> usize {
    body.free_vars().iter().next_back().map_or(0, |m| *m as usize + 1)
}

impl DefinitionList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    pub fn push_term(&mut self, name: impl Into<String>, body: Term) -> Result<usize, DefError> {
        let name = name.into();
        self.check_name(&name)?;
        let arity = arity_of(&body);
        self.defs.push(Definition { name, body: Body::Term(body), arity });
        Ok(self.defs.len() - 1)
    }

    pub fn push_native(
        &mut self,
        name: impl Into<String>,
        arity: usize,
        func: Arc<dyn NativeFn>,
    ) -> Result<usize, DefError> {
        let name = name.into();
        self.check_name(&name)?;
        self.defs.push(Definition { name, body: Body::Native(func), arity });
        Ok(self.defs.len() - 1)
    }

    fn check_name(&self, name: &str) -> Result<(), DefError> {
        if self.index_of(name).is_some() {
            return Err(DefError::Duplicate(name.to_string()));
        }
        Ok(())
    }

    /// Replace the body of an existing term definition, recomputing its arity.
    pub fn set_body(&mut self, i: usize, body: Term) -> Result<(), DefError> {
        let d = self.defs.get_mut(i).ok_or(DefError::OutOfRange(i))?;
        d.arity = arity_of(&body);
        d.body = Body::Term(body);
        Ok(())
    }

    pub fn get(&self, i: usize) -> Option<&Definition> {
        self.defs.get(i)
    }

    pub fn arity(&self, i: usize) -> Result<usize, DefError> {
        self.defs.get(i).map(|d| d.arity).ok_or(DefError::OutOfRange(i))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.defs.iter().position(|d| d.name == name)
    }

    pub fn name(&self, i: usize) -> Option<&str> {
        self.defs.get(i).map(|d| d.name.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Definition> {
        self.defs.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::*;

    #[test]
    fn arity_is_one_past_largest_free_index() {
        let mut d = DefinitionList::new();
        let i = d.push_term("f", eq(var(0), var(2))).unwrap();
        let j = d.push_term("z", Term::Zero).unwrap();
        let k = d.push_term("q", exists(4, eq(var(4), var(1)))).unwrap();
        assert_eq!(d.arity(i), Ok(3));
        assert_eq!(d.arity(j), Ok(0));
        assert_eq!(d.arity(k), Ok(2));
        assert_eq!(d.arity(9), Err(DefError::OutOfRange(9)));
    }

    #[test]
    fn names_are_unique() {
        let mut d = DefinitionList::new();
        d.push_term("f", Term::Zero).unwrap();
        assert!(d.push_term("f", Term::Zero).is_err());
    }
}

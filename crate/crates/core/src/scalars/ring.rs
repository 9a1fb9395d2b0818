use crate::error::{Error, Result};

/// Ordered list of parameter names. Position in the list is the variable
/// index used by [`Poly`](super::Poly) monomials and fixes the monomial order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ParamRing {
    names: Vec<String>,
}

fn valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ParamRing {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut out = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !valid_ident(n) {
                return Err(Error::InvalidParam(format!("`{n}` is not an identifier")));
            }
            if out.iter().any(|m: &String| m == n) {
                return Err(Error::InvalidParam(format!("`{n}` declared twice")));
            }
            out.push(n.to_string());
        }
        Ok(Self { names: out })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

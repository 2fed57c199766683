use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered set of distinct symbol names. Symbols are interned to dense
/// indices `0..size`; all scanning code works on indices and only maps back
/// to names at the boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Invalid("alphabet must be nonempty".into()));
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Invalid("empty symbol name".into()));
            }
            if index.insert(name.clone(), i as u32).is_some() {
                return Err(Error::Invalid(format!("duplicate symbol '{name}'")));
            }
        }
        Ok(Arc::new(Alphabet { names, index }))
    }

    /// One single-character symbol per char, in order.
    pub fn from_chars(chars: &str) -> Arc<Self> {
        Self::new(chars.chars().map(String::from).collect()).expect("distinct chars")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, symbol: u32) -> &str {
        &self.names[symbol as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<u32> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// True when every symbol name is a single character, so words can be
    /// rendered without separators.
    pub fn is_compact(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    pub fn symbols(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.size() as u32).into_iter()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(" "))
    }
}

/// Equality of the underlying alphabets (by content, not pointer).
pub fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

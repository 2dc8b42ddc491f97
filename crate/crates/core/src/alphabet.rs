use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug)]
struct Inner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered basis of a finitely generated free group.
///
/// Cheap to clone; two alphabets are equal when they list the same
/// generator names in the same order.
#[derive(Clone, Debug)]
pub struct Alphabet(Arc<Inner>);

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidGraph("alphabet must have rank >= 1".into()));
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::InvalidGraph("empty generator name".into()));
            }
            if !n
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
            {
                return Err(Error::InvalidGraph(format!("bad generator name `{n}`")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate generator `{n}`")));
            }
        }
        Ok(Alphabet(Arc::new(Inner { names, index })))
    }

    pub fn rank(&self) -> usize {
        self.0.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.names.iter().map(|s| s.as_str())
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    pub(crate) fn check_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}
impl Eq for Alphabet {}

impl std::hash::Hash for Alphabet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.names.hash(state);
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({})", self.0.names.join(","))
    }
}

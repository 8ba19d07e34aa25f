use std::collections::HashSet;
use std::sync::Arc;

use super::field::Field;
use super::monomial::{MonomialOrder, MAX_VARS};
use crate::error::{Error, Result};

/// A polynomial ring over `F` with named variables and a monomial order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    names: Vec<String>,
    order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(field: F, names: &[S], order: MonomialOrder) -> Result<Arc<Self>> {
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables(names.len()));
        }
        let mut seen = HashSet::new();
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(Error::InvalidInput(format!("`{n}` is not a valid variable name")));
            }
            if !seen.insert(n) {
                return Err(Error::DuplicateVariable(n.to_string()));
            }
        }
        if let MonomialOrder::Block(k) = order {
            if k > names.len() {
                return Err(Error::InvalidBlock(k, names.len()));
            }
        }
        Ok(Arc::new(Self { field, names: names.iter().map(|s| s.as_ref().to_string()).collect(), order }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::new(self.field.clone(), &self.names, order)
    }

    pub fn same_ring(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub label: String,
    pub dim: usize,
}

/// An ordered, labelled basis of a graded Chow group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Basis {
    name: String,
    elements: Vec<BasisElement>,
    ambient_dim: usize,
    projective: bool,
}

impl Basis {
    pub fn new(
        name: impl Into<String>,
        elements: Vec<BasisElement>,
        ambient_dim: usize,
    ) -> Result<Arc<Basis>> {
        let mut seen = HashSet::new();
        for el in &elements {
            if !seen.insert(el.label.as_str()) {
                return Err(Error::InvalidCenter(format!("duplicate basis label {}", el.label)));
            }
            if el.dim > ambient_dim {
                return Err(Error::InvalidCenter(format!(
                    "basis element {} has dimension {} > {}",
                    el.label, el.dim, ambient_dim
                )));
            }
        }
        Ok(Arc::new(Basis { name: name.into(), elements, ambient_dim, projective: false }))
    }

    /// The basis `[P^0], ..., [P^n]` of `A_*(P^n)`; element `k` has dimension `k`.
    pub fn projective(n: usize) -> Arc<Basis> {
        let elements =
            (0..=n).map(|k| BasisElement { label: format!("[P^{k}]"), dim: k }).collect();
        Arc::new(Basis { name: format!("P^{n}"), elements, ambient_dim: n, projective: true })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn dim(&self, idx: usize) -> usize {
        self.elements[idx].dim
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.label == label)
    }
}

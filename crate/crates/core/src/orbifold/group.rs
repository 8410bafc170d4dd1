use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{AffineIsometry, TorusLattice};

pub const DEFAULT_GROUP_BOUND: usize = 100_000;

/// A finite group of affine isometries of the torus, listed in breadth-first
/// generation order starting from the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsometryGroup {
    pub lattice: TorusLattice,
    pub elements: Vec<AffineIsometry>,
    pub generator_labels: Vec<String>,
    #[serde(skip)]
    index: HashMap<AffineIsometry, usize>,
}

impl IsometryGroup {
    fn from_elements(lattice: TorusLattice, elements: Vec<AffineIsometry>, generator_labels: Vec<String>) -> Self {
        let index = elements.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        Self { lattice, elements, generator_labels, index }
    }

    /// Rebuilds the lookup table after deserialization.
    pub fn reindex(mut self) -> Self {
        self.index = self.elements.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        self
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn position(&self, g: &AffineIsometry) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &AffineIsometry) -> bool {
        self.index.contains_key(g)
    }

    pub fn inverse_of(&self, g: &AffineIsometry) -> Option<&AffineIsometry> {
        self.elements.iter().find(|h| h.compose(g, &self.lattice).is_identity())
    }

    /// The trivial group.
    pub fn trivial(lattice: TorusLattice) -> Self {
        let id = AffineIsometry::identity(&lattice);
        Self::from_elements(lattice, vec![id], Vec::new())
    }
}

/// Breadth-first closure of `generators` under composition.
pub fn closure(lattice: &TorusLattice, generators: &[AffineIsometry], bound: usize) -> Result<IsometryGroup> {
    let identity = AffineIsometry::identity(lattice);
    let mut elements = vec![identity.clone()];
    let mut seen: HashMap<AffineIsometry, usize> = HashMap::from([(identity, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for gen in generators {
            let next = elements[i].compose(gen, lattice);
            if seen.contains_key(&next) {
                continue;
            }
            if elements.len() >= bound {
                return Err(Error::GroupExceedsBound(bound));
            }
            seen.insert(next.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(next);
        }
    }
    Ok(IsometryGroup::from_elements(
        lattice.clone(),
        elements,
        generators.iter().map(|g| g.word.clone()).collect(),
    ))
}

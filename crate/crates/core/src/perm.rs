//! Vertex permutations and breadth-first group closure.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `0..len`, acting on vertices by `v ↦ image[v]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexMap {
    image: Vec<usize>,
}

impl VertexMap {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &v in &image {
            if v >= image.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotPermutation(format!(
                    "{v} repeated or out of range in a map of length {}",
                    image.len()
                )));
            }
        }
        Ok(VertexMap { image })
    }

    pub(crate) fn from_vec_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(VertexMap::new(image.clone()).is_ok());
        VertexMap { image }
    }

    pub fn identity(len: usize) -> Self {
        VertexMap {
            image: (0..len).collect(),
        }
    }

    /// Swaps `a` and `b`, fixing everything else.
    pub fn transposition(len: usize, a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..len).collect();
        image.swap(a, b);
        VertexMap { image }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.image
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &VertexMap) -> VertexMap {
        VertexMap {
            image: other.image.iter().map(|&v| self.image[v]).collect(),
        }
    }

    pub fn inverse(&self) -> VertexMap {
        let mut image = vec![0; self.image.len()];
        for (v, &w) in self.image.iter().enumerate() {
            image[w] = v;
        }
        VertexMap { image }
    }
}

impl fmt::Debug for VertexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexMap{:?}", self.image)
    }
}

/// Outcome of a capped closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Closure {
    /// Every element of the generated group.
    Complete(Vec<VertexMap>),
    /// The group has more than `cap` elements.
    Exceeded { cap: usize },
}

impl Closure {
    pub fn order(&self) -> Option<usize> {
        match self {
            Closure::Complete(elems) => Some(elems.len()),
            Closure::Exceeded { .. } => None,
        }
    }
}

/// Breadth-first closure of `generators` under composition, starting at the
/// identity. Elements are returned in discovery order.
pub fn closure(generators: &[VertexMap], len: usize, cap: usize) -> Closure {
    let id = VertexMap::identity(len);
    let mut seen: HashSet<VertexMap> = HashSet::new();
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id.clone()]);
    seen.insert(id);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = s.compose(&g);
            if !seen.contains(&h) {
                if seen.len() == cap {
                    return Closure::Exceeded { cap };
                }
                seen.insert(h.clone());
                order.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Closure::Complete(order)
}

/// Orbit of `v` under the group generated by `generators`, as a membership vector.
pub fn orbit(generators: &[VertexMap], len: usize, v: usize) -> Vec<bool> {
    let mut inside = vec![false; len];
    inside[v] = true;
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        for g in generators {
            let w = g.apply(u);
            if !inside[w] {
                inside[w] = true;
                stack.push(w);
            }
        }
    }
    inside
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(VertexMap::new(vec![0, 0]).is_err());
        assert!(VertexMap::new(vec![0, 2]).is_err());
        assert!(VertexMap::new(vec![1, 0]).is_ok());
    }

    #[test]
    fn composition_applies_right_first() {
        let a = VertexMap::new(vec![1, 2, 0]).unwrap();
        let b = VertexMap::transposition(3, 0, 1);
        assert_eq!(a.compose(&b).as_slice(), &[2, 1, 0]);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn symmetric_group_closure() {
        let gens: Vec<VertexMap> = (0..4).map(|i| VertexMap::transposition(5, i, i + 1)).collect();
        assert_eq!(closure(&gens, 5, 1000).order(), Some(120));
        assert_eq!(closure(&gens, 5, 100), Closure::Exceeded { cap: 100 });
        assert_eq!(closure(&[], 5, 10).order(), Some(1));
    }

    #[test]
    fn orbits() {
        let gens = [VertexMap::transposition(4, 0, 2)];
        assert_eq!(orbit(&gens, 4, 2), vec![true, false, true, false]);
    }
}

//! Square matrices over a finite semiring and the enumeration of `M_n(S)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::semiring::{Elem, FiniteSemiring};
use crate::zdg::{Digraph, TwinPartition};

/// Default bound on `|M_n(S)|`.
pub const DEFAULT_VERTEX_CAP: usize = 200_000;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Arc<FiniteSemiring>,
    n: usize,
    entries: Vec<Elem>,
}

impl Matrix {
    /// Row-major entries.
    pub fn new(ring: Arc<FiniteSemiring>, n: usize, entries: Vec<Elem>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::Dimension(entries.len(), n * n));
        }
        if let Some(&bad) = entries.iter().find(|&&x| x >= ring.size()) {
            return Err(Error::OutOfRange {
                index: bad,
                bound: ring.size(),
            });
        }
        Ok(Matrix { ring, n, entries })
    }

    pub fn zero(ring: Arc<FiniteSemiring>, n: usize) -> Self {
        let z = ring.zero();
        Matrix {
            ring,
            n,
            entries: vec![z; n * n],
        }
    }

    /// `x·E_ij` with zero-based `i`, `j`.
    pub fn scaled_unit(ring: Arc<FiniteSemiring>, x: Elem, i: usize, j: usize, n: usize) -> Result<Self> {
        for idx in [i, j] {
            if idx >= n {
                return Err(Error::OutOfRange { index: idx, bound: n });
            }
        }
        if x >= ring.size() {
            return Err(Error::OutOfRange {
                index: x,
                bound: ring.size(),
            });
        }
        let mut m = Matrix::zero(ring, n);
        m.entries[i * n + j] = x;
        Ok(m)
    }

    /// Parses `1 0; 0 0` style literals (rows split by `;`, entries are element names).
    pub fn parse(ring: Arc<FiniteSemiring>, literal: &str) -> Result<Self> {
        let literal = literal.trim().trim_start_matches('[').trim_end_matches(']');
        let rows: Vec<Vec<&str>> = literal
            .split(';')
            .map(|r| r.split_whitespace().collect())
            .collect();
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("row {} has {} entries, expected {n}", r + 1, row.len()),
                });
            }
            for name in row {
                let x = ring.element(name).ok_or_else(|| Error::Parse {
                    line: 1,
                    message: format!("unknown element `{name}`"),
                })?;
                entries.push(x);
            }
        }
        Matrix::new(ring, n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Arc<FiniteSemiring> {
        &self.ring
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.n + j]
    }

    fn check_compatible(&self, other: &Matrix) -> Result<()> {
        if !Arc::ptr_eq(&self.ring, &other.ring) {
            return Err(Error::AmbientMismatch);
        }
        if self.n != other.n {
            return Err(Error::Dimension(self.n, other.n));
        }
        Ok(())
    }

    pub fn mat_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        let mut out = vec![0; self.n * self.n];
        mul_into(&self.ring, self.n, &self.entries, &other.entries, &mut out);
        Ok(Matrix {
            ring: self.ring.clone(),
            n: self.n,
            entries: out,
        })
    }

    pub fn mat_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.ring.add(a, b))
            .collect();
        Ok(Matrix {
            ring: self.ring.clone(),
            n: self.n,
            entries,
        })
    }

    /// `x·A`, entrywise.
    pub fn scale(&self, x: Elem) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            n: self.n,
            entries: self.entries.iter().map(|&a| self.ring.mul(x, a)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&a| self.ring.is_zero(a))
    }

    pub fn ann_vectors(&self) -> AnnVectors {
        ann_vectors(&self.ring, self.n, &self.entries)
    }

    /// Twin test through annihilator vectors; valid for commutative antirings.
    pub fn twins_by_ann(&self, other: &Matrix) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.ann_vectors() == other.ann_vectors())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_entries(&self.ring, self.n, &self.entries))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{self}]")
    }
}

pub(crate) fn format_entries(ring: &FiniteSemiring, n: usize, entries: &[Elem]) -> String {
    entries
        .chunks(n)
        .map(|row| {
            row.iter()
                .map(|&x| ring.name_of(x))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// `(AB)_ij = Σ_k a_ik·b_kj`, summed left to right.
pub(crate) fn mul_into(ring: &FiniteSemiring, n: usize, a: &[Elem], b: &[Elem], out: &mut [Elem]) {
    for i in 0..n {
        for j in 0..n {
            let mut acc = ring.zero();
            for k in 0..n {
                acc = ring.add(acc, ring.mul(a[i * n + k], b[k * n + j]));
            }
            out[i * n + j] = acc;
        }
    }
}

fn product_is_zero(ring: &FiniteSemiring, n: usize, a: &[Elem], b: &[Elem]) -> bool {
    (0..n).all(|i| {
        (0..n).all(|j| {
            let mut acc = ring.zero();
            for k in 0..n {
                acc = ring.add(acc, ring.mul(a[i * n + k], b[k * n + j]));
            }
            ring.is_zero(acc)
        })
    })
}

/// `right[i] = C_i(A) = ⋂_k an(a_ki)` (column `i`), `left[j] = R_j(A) = ⋂_k an(a_jk)` (row `j`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnnVectors {
    pub right: Vec<FixedBitSet>,
    pub left: Vec<FixedBitSet>,
}

fn ann_vectors(ring: &FiniteSemiring, n: usize, entries: &[Elem]) -> AnnVectors {
    let full = {
        let mut s = FixedBitSet::with_capacity(ring.size());
        s.insert_range(..);
        s
    };
    let ann: HashMap<Elem, FixedBitSet> = entries
        .iter()
        .map(|&x| (x, ring.annihilator(x)))
        .collect();
    let mut right = vec![full.clone(); n];
    let mut left = vec![full; n];
    for r in 0..n {
        for c in 0..n {
            let a = &ann[&entries[r * n + c]];
            right[c].intersect_with(a);
            left[r].intersect_with(a);
        }
    }
    AnnVectors { right, left }
}

/// `M_n(S)` enumerated in row-major lexicographic order of entry indices.
///
/// A matrix's position is its entry sequence read as a base-`m` numeral,
/// first entry most significant.
#[derive(Debug, Clone)]
pub struct MatrixSpace {
    ring: Arc<FiniteSemiring>,
    n: usize,
    len: usize,
}

impl MatrixSpace {
    pub fn new(ring: Arc<FiniteSemiring>, n: usize, vertex_cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension(0, 1));
        }
        let count = BigUint::from(ring.size()).pow((n * n) as u32);
        match count.to_usize() {
            Some(len) if len <= vertex_cap => Ok(MatrixSpace { ring, n, len }),
            _ => Err(Error::VertexCap {
                count: format!("{}^{} = {count}", ring.size(), n * n),
                cap: vertex_cap,
            }),
        }
    }

    pub fn ring(&self) -> &Arc<FiniteSemiring> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn decode(&self, index: usize) -> Vec<Elem> {
        let m = self.ring.size();
        let mut entries = vec![0; self.n * self.n];
        let mut rest = index;
        for slot in entries.iter_mut().rev() {
            *slot = rest % m;
            rest /= m;
        }
        entries
    }

    pub fn encode(&self, entries: &[Elem]) -> usize {
        let m = self.ring.size();
        entries.iter().fold(0, |acc, &x| acc * m + x)
    }

    pub fn matrix(&self, index: usize) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            n: self.n,
            entries: self.decode(index),
        }
    }

    pub fn index_of(&self, a: &Matrix) -> Result<usize> {
        if !Arc::ptr_eq(&self.ring, &a.ring) {
            return Err(Error::AmbientMismatch);
        }
        if a.n != self.n {
            return Err(Error::Dimension(a.n, self.n));
        }
        Ok(self.encode(&a.entries))
    }

    /// Index of `x·E_ij` (zero-based `i`, `j`).
    pub fn scaled_unit_index(&self, x: Elem, i: usize, j: usize) -> usize {
        let mut entries = vec![self.ring.zero(); self.n * self.n];
        entries[i * self.n + j] = x;
        self.encode(&entries)
    }

    pub fn iter(&self) -> impl Iterator<Item = Matrix> + '_ {
        (0..self.len).map(|i| self.matrix(i))
    }

    pub fn enumerate(&self) -> Vec<Matrix> {
        self.iter().collect()
    }

    /// Entry lists for every matrix, in enumeration order.
    pub(crate) fn all_entries(&self) -> Vec<Vec<Elem>> {
        (0..self.len).map(|i| self.decode(i)).collect()
    }

    pub fn label(&self, index: usize) -> String {
        let text = format_entries(&self.ring, self.n, &self.decode(index));
        if self.n == 1 {
            text
        } else {
            format!("[{text}]")
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len).map(|i| self.label(i)).collect()
    }

    /// `Γ(M_n(S))` with vertices in enumeration order.
    pub fn zero_divisor_digraph(&self) -> Digraph {
        let all = self.all_entries();
        let ring = &*self.ring;
        Digraph::from_relation(self.len, |u, v| product_is_zero(ring, self.n, &all[u], &all[v]))
    }

    pub fn add_indices(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let sum: Vec<Elem> = x.iter().zip(&y).map(|(&p, &q)| self.ring.add(p, q)).collect();
        self.encode(&sum)
    }

    pub fn scale_index(&self, x: Elem, a: usize) -> usize {
        let scaled: Vec<Elem> = self.decode(a).iter().map(|&y| self.ring.mul(x, y)).collect();
        self.encode(&scaled)
    }

    /// Classes of equal `(anl, anr)`, ordered by least member.
    pub fn partition_by_ann(&self) -> TwinPartition {
        let mut ids: HashMap<AnnVectors, usize> = HashMap::new();
        let class_of: Vec<usize> = (0..self.len)
            .map(|i| {
                let key = ann_vectors(&self.ring, self.n, &self.decode(i));
                let next = ids.len();
                *ids.entry(key).or_insert(next)
            })
            .collect();
        TwinPartition::from_class_ids(class_of)
    }
}

/// All of `M_n(S)` in canonical order.
pub fn enumerate_matrices(ring: Arc<FiniteSemiring>, n: usize, vertex_cap: usize) -> Result<Vec<Matrix>> {
    Ok(MatrixSpace::new(ring, n, vertex_cap)?.enumerate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Builtin;

    fn ring(desc: &str) -> Arc<FiniteSemiring> {
        Arc::new(desc.parse::<Builtin>().unwrap().build().unwrap())
    }

    fn lit(r: &Arc<FiniteSemiring>, s: &str) -> Matrix {
        Matrix::parse(r.clone(), s).unwrap()
    }

    fn set(r: &FiniteSemiring, xs: &[Elem]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(r.size());
        xs.iter().for_each(|&x| s.insert(x));
        s
    }

    #[test]
    fn unit_products() {
        let b = ring("bool");
        let e11 = Matrix::scaled_unit(b.clone(), 1, 0, 0, 2).unwrap();
        let e12 = Matrix::scaled_unit(b.clone(), 1, 0, 1, 2).unwrap();
        let e22 = Matrix::scaled_unit(b.clone(), 1, 1, 1, 2).unwrap();
        assert_eq!(e11.mat_mul(&e12).unwrap(), e12);
        assert!(e11.mat_mul(&e22).unwrap().is_zero());
        let j = lit(&b, "1 1; 1 1");
        assert_eq!(j.mat_mul(&j).unwrap(), j);
    }

    #[test]
    fn addition() {
        let b = ring("bool");
        let e11 = lit(&b, "1 0; 0 0");
        assert_eq!(e11.mat_add(&Matrix::zero(b.clone(), 2)).unwrap(), e11);
        assert_eq!(e11.mat_add(&e11).unwrap(), e11);
        let c = ring("chain3");
        let a11 = lit(&c, "a 0; 0 0");
        let one11 = lit(&c, "1 0; 0 0");
        assert_eq!(a11.mat_add(&one11).unwrap(), one11);
    }

    #[test]
    fn scaled_units() {
        let b = ring("bool");
        assert_eq!(Matrix::scaled_unit(b.clone(), 1, 0, 0, 2).unwrap(), lit(&b, "1 0; 0 0"));
        assert!(Matrix::scaled_unit(b.clone(), 0, 0, 1, 2).unwrap().is_zero());
        let c = ring("chain3");
        assert_eq!(Matrix::scaled_unit(c.clone(), 1, 1, 0, 2).unwrap(), lit(&c, "0 0; a 0"));
        assert!(matches!(
            Matrix::scaled_unit(b, 1, 2, 0, 2),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn mismatches_are_reported() {
        let b = ring("bool");
        let other = ring("bool");
        let a = Matrix::zero(b.clone(), 2);
        assert_eq!(a.mat_mul(&Matrix::zero(other, 2)), Err(Error::AmbientMismatch));
        assert_eq!(a.mat_add(&Matrix::zero(b, 1)), Err(Error::Dimension(2, 1)));
    }

    #[test]
    fn enumeration_order_and_length() {
        let b = ring("bool");
        let one = enumerate_matrices(b.clone(), 1, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(one.iter().map(|m| m.to_string()).collect::<Vec<_>>(), ["0", "1"]);
        let two = MatrixSpace::new(b.clone(), 2, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(two.len(), 16);
        assert!(two.matrix(0).is_zero());
        assert_eq!(two.matrix(1).to_string(), "0 0; 0 1");
        for (i, m) in two.iter().enumerate() {
            assert_eq!(two.index_of(&m).unwrap(), i);
        }
        assert_eq!(MatrixSpace::new(ring("chain3"), 2, DEFAULT_VERTEX_CAP).unwrap().len(), 81);
        assert!(matches!(MatrixSpace::new(b, 3, 100), Err(Error::VertexCap { .. })));
    }

    #[test]
    fn annihilator_vectors() {
        let b = ring("bool");
        let full = set(&b, &[0, 1]);
        let zero_only = set(&b, &[0]);
        let z = Matrix::zero(b.clone(), 2).ann_vectors();
        assert_eq!(z.right, vec![full.clone(), full.clone()]);
        assert_eq!(z.left, vec![full.clone(), full.clone()]);
        let e = lit(&b, "1 0; 0 0").ann_vectors();
        assert_eq!(e.right, vec![zero_only.clone(), full.clone()]);
        assert_eq!(e.left, vec![zero_only.clone(), full]);
        let j = lit(&b, "1 1; 1 1").ann_vectors();
        assert_eq!(j.right, vec![zero_only.clone(), zero_only.clone()]);
        assert_eq!(j.left, vec![zero_only.clone(), zero_only]);
    }

    #[test]
    fn twins_by_annihilators() {
        let b = ring("bool");
        let j = lit(&b, "1 1; 1 1");
        assert!(j.twins_by_ann(&lit(&b, "1 1; 1 0")).unwrap());
        assert!(!lit(&b, "1 0; 0 0").twins_by_ann(&lit(&b, "0 0; 0 1")).unwrap());
        assert!(j.twins_by_ann(&j).unwrap());
    }

    #[test]
    fn literal_round_trip() {
        let p = ring("bool x bool");
        let m = lit(&p, "(1,0) (0,0); (0,1) (1,1)");
        assert_eq!(Matrix::parse(p.clone(), &m.to_string()).unwrap(), m);
        assert!(Matrix::parse(p, "(1,0) (0,0); (0,1)").is_err());
    }
}

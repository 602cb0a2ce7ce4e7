//! Zero-divisor digraphs, twin partitions and labelled quotients.

mod dot;
mod search;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::VertexMap;
use crate::semiring::FiniteSemiring;

pub use dot::export_dot;
pub use search::{
    brute_force_aut, brute_force_aut_labelled, is_digraph_automorphism, labelled_isomorphism,
    factorial, search_automorphisms, AutGroup, SearchBudget, FACTORIZE_ABOVE,
};

/// Directed graph on `0..vcount` with loops allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out_adj: Vec<FixedBitSet>,
    in_adj: Vec<FixedBitSet>,
}

impl Digraph {
    pub fn from_relation(vcount: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut out_adj = vec![FixedBitSet::with_capacity(vcount); vcount];
        let mut in_adj = vec![FixedBitSet::with_capacity(vcount); vcount];
        for (u, out) in out_adj.iter_mut().enumerate() {
            for (v, inn) in in_adj.iter_mut().enumerate() {
                if edge(u, v) {
                    out.insert(v);
                    inn.insert(u);
                }
            }
        }
        Digraph { out_adj, in_adj }
    }

    pub fn from_edges(vcount: usize, edges: &[(usize, usize)]) -> Self {
        let mut out_adj = vec![FixedBitSet::with_capacity(vcount); vcount];
        let mut in_adj = vec![FixedBitSet::with_capacity(vcount); vcount];
        for &(u, v) in edges {
            out_adj[u].insert(v);
            in_adj[v].insert(u);
        }
        Digraph { out_adj, in_adj }
    }

    /// `Γ(S)`: vertex set `S`, `u → v` iff `uv = 0`.
    pub fn of_semiring(s: &FiniteSemiring) -> Self {
        Digraph::from_relation(s.size(), |u, v| s.is_zero(s.mul(u, v)))
    }

    pub fn vcount(&self) -> usize {
        self.out_adj.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].contains(v)
    }

    pub fn out_neighbors(&self, u: usize) -> &FixedBitSet {
        &self.out_adj[u]
    }

    pub fn in_neighbors(&self, v: usize) -> &FixedBitSet {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_adj[u].count_ones(..)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.out_adj.iter().map(|s| s.count_ones(..)).sum()
    }

    /// Edges in lexicographic `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.ones().map(move |v| (u, v)))
    }
}

/// Zero-divisor digraph of an arbitrary finite magma with a zero: vertex `u`
/// points to `v` iff `mul(u, v) == zero`. Vertex order is input order.
pub fn build_zdg<T: PartialEq>(
    elements: &[T],
    zero: &T,
    mul: impl Fn(&T, &T) -> T,
    vertex_cap: usize,
) -> Result<Digraph> {
    if elements.len() > vertex_cap {
        return Err(Error::VertexCap {
            count: elements.len().to_string(),
            cap: vertex_cap,
        });
    }
    Ok(Digraph::from_relation(elements.len(), |u, v| {
        mul(&elements[u], &elements[v]) == *zero
    }))
}

/// The twin relation's classes, ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl TwinPartition {
    /// Normalizes arbitrary class ids so classes are numbered by least member.
    pub fn from_class_ids(ids: Vec<usize>) -> Self {
        let mut renumber: HashMap<usize, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let class_of = ids
            .iter()
            .enumerate()
            .map(|(v, id)| {
                let c = *renumber.entry(*id).or_insert_with(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
                classes[c].push(v);
                c
            })
            .collect();
        TwinPartition { class_of, classes }
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn vcount(&self) -> usize {
        self.class_of.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn same_class(&self, u: usize, v: usize) -> bool {
        self.class_of[u] == self.class_of[v]
    }

    /// Size multiset as ascending `(size, multiplicity)` pairs.
    pub fn size_census(&self) -> Vec<(usize, usize)> {
        let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
        for c in &self.classes {
            *counts.entry(c.len()).or_default() += 1;
        }
        counts.into_iter().collect()
    }
}

/// Groups vertices with identical out- and in-neighbourhoods.
pub fn twin_partition(g: &Digraph) -> TwinPartition {
    twin_partition_with_labels(g, None)
}

fn twin_partition_with_labels(g: &Digraph, labels: Option<&[usize]>) -> TwinPartition {
    let mut ids: HashMap<(&FixedBitSet, &FixedBitSet, usize), usize> = HashMap::new();
    let class_of = (0..g.vcount())
        .map(|v| {
            let key = (&g.out_adj[v], &g.in_adj[v], labels.map_or(0, |l| l[v]));
            let next = ids.len();
            *ids.entry(key).or_insert(next)
        })
        .collect();
    TwinPartition::from_class_ids(class_of)
}

/// A digraph whose vertices carry positive integer labels (twin-class sizes
/// for a quotient). `members[q]` lists the original vertices that quotient
/// vertex `q` stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledDigraph {
    pub digraph: Digraph,
    pub labels: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl LabelledDigraph {
    /// Every vertex labelled 1, standing for itself.
    pub fn unlabelled(digraph: Digraph) -> Self {
        let n = digraph.vcount();
        LabelledDigraph {
            digraph,
            labels: vec![1; n],
            members: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn vcount(&self) -> usize {
        self.digraph.vcount()
    }

    /// Merges twin vertices, summing their labels. A quotient has no twins,
    /// so taking the quotient again returns it unchanged.
    pub fn quotient(&self) -> LabelledDigraph {
        let p = twin_partition(&self.digraph);
        let reps: Vec<usize> = p.classes().iter().map(|c| c[0]).collect();
        let digraph = Digraph::from_relation(reps.len(), |a, b| self.digraph.has_edge(reps[a], reps[b]));
        let labels = p
            .classes()
            .iter()
            .map(|c| c.iter().map(|&v| self.labels[v]).sum())
            .collect();
        let members = p
            .classes()
            .iter()
            .map(|c| {
                let mut m: Vec<usize> = c.iter().flat_map(|&v| self.members[v].iter().copied()).collect();
                m.sort_unstable();
                m
            })
            .collect();
        LabelledDigraph {
            digraph,
            labels,
            members,
        }
    }
}

/// `Γ_t`: one vertex per class of `p`, labelled by class size.
pub fn quotient_labelled(g: &Digraph, p: &TwinPartition) -> Result<LabelledDigraph> {
    if p.vcount() != g.vcount() {
        return Err(Error::InconsistentPartition(format!(
            "partition covers {} vertices, digraph has {}",
            p.vcount(),
            g.vcount()
        )));
    }
    for class in p.classes() {
        let rep = class[0];
        if let Some(&v) = class
            .iter()
            .find(|&&v| g.out_adj[v] != g.out_adj[rep] || g.in_adj[v] != g.in_adj[rep])
        {
            return Err(Error::InconsistentPartition(format!(
                "vertices {rep} and {v} share a class but are not twins"
            )));
        }
    }
    let reps: Vec<usize> = p.classes().iter().map(|c| c[0]).collect();
    for (a, &ra) in reps.iter().enumerate() {
        if let Some(b) = (a + 1..reps.len())
            .find(|&b| g.out_adj[ra] == g.out_adj[reps[b]] && g.in_adj[ra] == g.in_adj[reps[b]])
        {
            return Err(Error::InconsistentPartition(format!(
                "classes {a} and {b} are twins of each other"
            )));
        }
    }
    let digraph = Digraph::from_relation(reps.len(), |a, b| g.has_edge(reps[a], reps[b]));
    Ok(LabelledDigraph {
        digraph,
        labels: p.sizes(),
        members: p.classes().to_vec(),
    })
}

/// One transposition per consecutive pair inside each class, in ascending
/// vertex order. Together they generate the regular automorphisms.
pub fn twin_transpositions(p: &TwinPartition) -> Vec<VertexMap> {
    let n = p.vcount();
    p.classes()
        .iter()
        .flat_map(|c| c.windows(2).map(move |w| VertexMap::transposition(n, w[0], w[1])))
        .collect()
}

/// Realizes a quotient map (class `q` to class `image[q]`) on the original
/// vertices by pairing members in ascending order.
pub fn lift_quotient_map(
    source: &LabelledDigraph,
    target: &LabelledDigraph,
    quotient_map: &VertexMap,
    vcount: usize,
) -> Result<Vec<usize>> {
    let mut image = vec![usize::MAX; vcount];
    for (q, from) in source.members.iter().enumerate() {
        let to = &target.members[quotient_map.apply(q)];
        if from.len() != to.len() {
            return Err(Error::NotPermutation(format!(
                "class {q} of size {} mapped to a class of size {}",
                from.len(),
                to.len()
            )));
        }
        for (&a, &b) in from.iter().zip(to) {
            image[a] = b;
        }
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Builtin;

    fn semiring(desc: &str) -> FiniteSemiring {
        desc.parse::<Builtin>().unwrap().build().unwrap()
    }

    #[test]
    fn boolean_digraph() {
        let g = Digraph::of_semiring(&semiring("bool"));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 0), (0, 1), (1, 0)]);
    }

    #[test]
    fn product_digraph() {
        let s = semiring("bool x bool");
        let g = Digraph::of_semiring(&s);
        let [z, e01, e10, one] = [0, 1, 2, 3];
        assert_eq!(g.out_degree(z), 4);
        assert_eq!(g.in_degree(z), 4);
        assert!(g.has_edge(z, z));
        assert!(g.has_edge(e10, e01) && g.has_edge(e01, e10));
        assert!(!g.has_edge(e10, e10));
        assert_eq!(g.out_neighbors(one).ones().collect::<Vec<_>>(), vec![z]);
        assert_eq!(g.in_neighbors(one).ones().collect::<Vec<_>>(), vec![z]);
    }

    #[test]
    fn generic_builder_matches_semiring_builder() {
        let s = semiring("chain3");
        let elems: Vec<usize> = s.elements().collect();
        let g = build_zdg(&elems, &0, |a, b| s.mul(*a, *b), 10).unwrap();
        assert_eq!(g, Digraph::of_semiring(&s));
        assert!(build_zdg(&elems, &0, |a, b| s.mul(*a, *b), 2).is_err());
    }

    #[test]
    fn twin_partitions() {
        let p = twin_partition(&Digraph::of_semiring(&semiring("bool")));
        assert_eq!(p.classes(), &[vec![0], vec![1]]);
        let p = twin_partition(&Digraph::of_semiring(&semiring("chain3")));
        assert_eq!(p.classes(), &[vec![0], vec![1, 2]]);
        assert_eq!(p.sizes(), vec![1, 2]);
    }

    #[test]
    fn chain_quotient() {
        let g = Digraph::of_semiring(&semiring("chain3"));
        let q = quotient_labelled(&g, &twin_partition(&g)).unwrap();
        assert_eq!(q.labels, vec![1, 2]);
        assert_eq!(q.digraph.edges().collect::<Vec<_>>(), vec![(0, 0), (0, 1), (1, 0)]);
        assert_eq!(q.quotient(), q);
    }

    #[test]
    fn singleton_partition_quotient_is_identity() {
        let g = Digraph::of_semiring(&semiring("bool x bool"));
        let p = TwinPartition::from_class_ids((0..4).collect());
        let q = quotient_labelled(&g, &p).unwrap();
        assert_eq!(q.digraph, g);
        assert_eq!(q.labels, vec![1; 4]);
    }

    #[test]
    fn inconsistent_partitions_are_rejected() {
        let g = Digraph::of_semiring(&semiring("bool"));
        let merged = TwinPartition::from_class_ids(vec![0, 0]);
        assert!(quotient_labelled(&g, &merged).is_err());
        let c = Digraph::of_semiring(&semiring("chain3"));
        let split = TwinPartition::from_class_ids(vec![0, 1, 2]);
        assert!(quotient_labelled(&c, &split).is_err());
    }

    #[test]
    fn transpositions_within_classes() {
        let b = twin_partition(&Digraph::of_semiring(&semiring("bool")));
        assert!(twin_transpositions(&b).is_empty());
        let c = twin_partition(&Digraph::of_semiring(&semiring("chain3")));
        let t = twin_transpositions(&c);
        assert_eq!(t, vec![VertexMap::transposition(3, 1, 2)]);
    }
}

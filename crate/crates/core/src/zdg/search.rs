//! Backtracking automorphism and isomorphism search with colour refinement.
//!
//! Colourings are refined by iterating the signature
//! `(colour, multiset of out-neighbour colours, multiset of in-neighbour colours)`
//! from an initial colouring by `(label, out-degree, in-degree, loop)`.
//! Colours are ranks of sorted signatures, so two colourings refined together
//! stay comparable colour by colour.

use num_bigint::BigUint;
use num_traits::One;

use super::{lift_quotient_map, quotient_labelled, twin_partition, twin_transpositions, Digraph, LabelledDigraph};
use crate::error::{Error, Result};
use crate::perm::{orbit, VertexMap};

/// Digraphs with more vertices than this are searched through their twin
/// quotient: `|Aut(Γ)| = ∏ c_i! · |Aut(Γ_t)|`.
pub const FACTORIZE_ABOVE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_vertices: usize,
    /// Refinement calls allowed before the search gives up.
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_vertices: 512,
            max_nodes: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroup {
    pub order: BigUint,
    pub generators: Vec<VertexMap>,
    /// Refinement nodes spent.
    pub nodes: u64,
}

struct Graph<'a> {
    g: &'a Digraph,
    labels: &'a [usize],
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl<'a> Graph<'a> {
    fn new(g: &'a Digraph, labels: &'a [usize]) -> Self {
        let n = g.vcount();
        Graph {
            g,
            labels,
            out: (0..n).map(|v| g.out_neighbors(v).ones().collect()).collect(),
            inn: (0..n).map(|v| g.in_neighbors(v).ones().collect()).collect(),
        }
    }

    fn n(&self) -> usize {
        self.out.len()
    }

    fn initial_key(&self, v: usize) -> (usize, usize, usize, bool) {
        (self.labels[v], self.out[v].len(), self.inn[v].len(), self.g.has_edge(v, v))
    }

    /// Current colour plus an order-free hash of the out- and in-neighbour
    /// colour multisets. The hash is an isomorphism invariant, so a collision
    /// only coarsens the colouring; leaves are checked exactly.
    fn signature(&self, colors: &[u32], v: usize) -> Signature {
        let out = self.out[v].iter().fold(0u64, |h, &w| h.wrapping_add(mix(colors[w] as u64)));
        let inn = self.inn[v].iter().fold(0u64, |h, &w| h.wrapping_add(mix(!(colors[w] as u64))));
        (colors[v], out ^ inn.rotate_left(29))
    }
}

type Signature = (u32, u64);

/// SplitMix64 finalizer.
fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn rank_jointly<K: Ord + Clone>(a: &[K], b: Option<&[K]>) -> (Vec<u32>, Option<Vec<u32>>, bool) {
    let mut all: Vec<K> = a.to_vec();
    if let Some(b) = b {
        all.extend_from_slice(b);
    }
    all.sort();
    all.dedup();
    let rank = |k: &K| all.binary_search(k).expect("present") as u32;
    let ca: Vec<u32> = a.iter().map(rank).collect();
    let cb: Option<Vec<u32>> = b.map(|b| b.iter().map(rank).collect());
    let compatible = match &cb {
        None => true,
        Some(cb) => histogram(&ca, all.len()) == histogram(cb, all.len()),
    };
    (ca, cb, compatible)
}

fn histogram(colors: &[u32], k: usize) -> Vec<u32> {
    let mut h = vec![0; k];
    for &c in colors {
        h[c as usize] += 1;
    }
    h
}

fn color_count(colors: &[u32]) -> usize {
    colors.iter().max().map_or(0, |&c| c as usize + 1)
}

/// Smallest cell with more than one vertex, ties to the lower colour.
fn target_cell(colors: &[u32]) -> Option<u32> {
    let h = histogram(colors, color_count(colors));
    h.iter()
        .enumerate()
        .filter(|(_, &k)| k > 1)
        .min_by_key(|(c, &k)| (k, *c))
        .map(|(c, _)| c as u32)
}

fn individualize(colors: &mut [u32], v: usize) {
    colors[v] = color_count(colors) as u32;
}

struct Searcher<'a> {
    a: Graph<'a>,
    b: Graph<'a>,
    nodes: u64,
    max_nodes: u64,
}

impl<'a> Searcher<'a> {
    fn new(a: Graph<'a>, b: Graph<'a>, max_nodes: u64) -> Self {
        Searcher {
            a,
            b,
            nodes: 0,
            max_nodes,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::Budget(format!(
                "more than {} search nodes",
                self.max_nodes
            )));
        }
        Ok(())
    }

    /// Initial colourings of both sides; `None` when they are incompatible.
    fn initial(&mut self) -> Result<Option<(Vec<u32>, Vec<u32>)>> {
        let ka: Vec<_> = (0..self.a.n()).map(|v| self.a.initial_key(v)).collect();
        let kb: Vec<_> = (0..self.b.n()).map(|v| self.b.initial_key(v)).collect();
        let (mut ca, cb, ok) = rank_jointly(&ka, Some(&kb));
        let mut cb = cb.expect("two sides");
        if !ok || !self.refine(&mut ca, Some(&mut cb))? {
            return Ok(None);
        }
        Ok(Some((ca, cb)))
    }

    /// Refines to the coarsest equitable colouring. With two sides, returns
    /// `false` as soon as their colour histograms diverge.
    fn refine(&mut self, ca: &mut Vec<u32>, mut cb: Option<&mut Vec<u32>>) -> Result<bool> {
        self.tick()?;
        loop {
            let before = color_count(ca);
            let sa: Vec<Signature> = (0..self.a.n()).map(|v| self.a.signature(ca, v)).collect();
            let sb: Option<Vec<Signature>> = cb
                .as_deref()
                .map(|cb| (0..self.b.n()).map(|v| self.b.signature(cb, v)).collect());
            let (na, nb, ok) = rank_jointly(&sa, sb.as_deref());
            if !ok {
                return Ok(false);
            }
            *ca = na;
            if let (Some(cb), Some(nb)) = (cb.as_deref_mut(), nb) {
                *cb = nb;
            }
            if color_count(ca) == before {
                return Ok(true);
            }
        }
    }

    /// Completes compatible colourings to an isomorphism `a → b`, trying
    /// images in ascending order.
    fn extend(&mut self, ca: &[u32], cb: &[u32]) -> Result<Option<Vec<usize>>> {
        let Some(cell) = target_cell(ca) else {
            return Ok(self.leaf(ca, cb));
        };
        let v = ca.iter().position(|&c| c == cell).expect("cell is nonempty");
        let candidates: Vec<usize> = (0..cb.len()).filter(|&w| cb[w] == cell).collect();
        for w in candidates {
            let mut na = ca.to_vec();
            let mut nb = cb.to_vec();
            individualize(&mut na, v);
            individualize(&mut nb, w);
            if self.refine(&mut na, Some(&mut nb))? {
                if let Some(map) = self.extend(&na, &nb)? {
                    return Ok(Some(map));
                }
            }
        }
        Ok(None)
    }

    fn leaf(&self, ca: &[u32], cb: &[u32]) -> Option<Vec<usize>> {
        let mut by_color = vec![0; cb.len()];
        for (w, &c) in cb.iter().enumerate() {
            by_color[c as usize] = w;
        }
        let map: Vec<usize> = ca.iter().map(|&c| by_color[c as usize]).collect();
        let preserves = (0..map.len()).all(|u| {
            self.a.labels[u] == self.b.labels[map[u]]
                && self.a.out[u].len() == self.b.out[map[u]].len()
                && self.a.out[u].iter().all(|&v| self.b.g.has_edge(map[u], map[v]))
        });
        preserves.then_some(map)
    }
}

/// Exact automorphism group by direct search, never using the twin
/// factorization. `labels` must be preserved when given.
pub fn search_automorphisms(g: &Digraph, labels: Option<&[usize]>, budget: SearchBudget) -> Result<AutGroup> {
    let n = g.vcount();
    if n > budget.max_vertices {
        return Err(Error::Budget(format!(
            "{n} vertices exceed the search limit of {}",
            budget.max_vertices
        )));
    }
    let ones = vec![1; n];
    let labels = labels.unwrap_or(&ones);
    let mut s = Searcher::new(Graph::new(g, labels), Graph::new(g, labels), budget.max_nodes);

    let keys: Vec<_> = (0..n).map(|v| s.a.initial_key(v)).collect();
    let (mut colors, _, _) = rank_jointly(&keys, None);
    s.refine(&mut colors, None)?;

    // Base points b_1, b_2, … with the colouring in force before each was fixed.
    let mut levels: Vec<(Vec<u32>, usize)> = Vec::new();
    while let Some(cell) = target_cell(&colors) {
        let b = colors.iter().position(|&c| c == cell).expect("cell is nonempty");
        let mut next = colors.clone();
        individualize(&mut next, b);
        s.refine(&mut next, None)?;
        levels.push((std::mem::replace(&mut colors, next), b));
    }

    // Deepest level first: generators found so far fix every earlier base
    // point, so they generate the current stabilizer.
    let mut generators: Vec<VertexMap> = Vec::new();
    let mut order = BigUint::one();
    for (coloring, b) in levels.iter().rev() {
        let cell = coloring[*b];
        let mut in_orbit = orbit(&generators, n, *b);
        for c in 0..n {
            if coloring[c] != cell || in_orbit[c] {
                continue;
            }
            let mut left = coloring.clone();
            let mut right = coloring.clone();
            individualize(&mut left, *b);
            individualize(&mut right, c);
            if !s.refine(&mut left, Some(&mut right))? {
                continue;
            }
            if let Some(map) = s.extend(&left, &right)? {
                generators.push(VertexMap::from_vec_unchecked(map));
                in_orbit = orbit(&generators, n, *b);
            }
        }
        order *= in_orbit.iter().filter(|&&x| x).count();
    }
    Ok(AutGroup {
        order,
        generators,
        nodes: s.nodes,
    })
}

/// The automorphism oracle for plain digraphs. Above [`FACTORIZE_ABOVE`]
/// vertices the search runs on the labelled twin quotient and the regular
/// part is added as `∏ c_i!` with within-class transpositions.
pub fn brute_force_aut(g: &Digraph, budget: SearchBudget) -> Result<AutGroup> {
    let n = g.vcount();
    if n > budget.max_vertices {
        return Err(Error::Budget(format!(
            "{n} vertices exceed the search limit of {}",
            budget.max_vertices
        )));
    }
    if n <= FACTORIZE_ABOVE {
        return search_automorphisms(g, None, budget);
    }
    let p = twin_partition(g);
    let q = quotient_labelled(g, &p)?;
    let quotient = search_automorphisms(&q.digraph, Some(&q.labels), budget)?;
    let mut order = quotient.order;
    for c in p.sizes() {
        order *= factorial(c);
    }
    let mut generators = twin_transpositions(&p);
    for gen in &quotient.generators {
        generators.push(VertexMap::new(lift_quotient_map(&q, &q, gen, n)?)?);
    }
    Ok(AutGroup {
        order,
        generators,
        nodes: quotient.nodes,
    })
}

/// Label-preserving automorphisms of a labelled digraph, by direct search.
pub fn brute_force_aut_labelled(g: &LabelledDigraph, budget: SearchBudget) -> Result<AutGroup> {
    search_automorphisms(&g.digraph, Some(&g.labels), budget)
}

/// A label- and edge-preserving bijection `g1 → g2`, if any.
pub fn labelled_isomorphism(g1: &LabelledDigraph, g2: &LabelledDigraph) -> Option<VertexMap> {
    if g1.vcount() != g2.vcount() {
        return None;
    }
    let mut s = Searcher::new(
        Graph::new(&g1.digraph, &g1.labels),
        Graph::new(&g2.digraph, &g2.labels),
        u64::MAX,
    );
    let (ca, cb) = s.initial().ok()??;
    s.extend(&ca, &cb).ok()?.map(VertexMap::from_vec_unchecked)
}

/// `u → v ⇔ σ(u) → σ(v)` for all vertex pairs.
pub fn is_digraph_automorphism(sigma: &VertexMap, g: &Digraph) -> bool {
    let n = g.vcount();
    sigma.len() == n
        && (0..n).all(|u| {
            let su = sigma.apply(u);
            (0..n).all(|v| g.has_edge(u, v) == g.has_edge(su, sigma.apply(v)))
        })
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

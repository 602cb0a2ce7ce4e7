//! The automorphism group of `Γ(M_n(S))` from the component structure of `S`.
//!
//! For a maximal-length decomposition `α = e_1 + … + e_s`, components `e_iS`
//! with isomorphic zero-divisor digraphs are grouped; with `x_i` the class
//! multiplicities, `a_i = |Aut(Γ_t(e_iS))|` and `c_j` the twin-class sizes of
//! `Γ(M_n(S))`,
//!
//! ```text
//! |Aut Γ(M_n(S))| = ∏_j c_j! · ∏_i (n!·a_i)^{x_i} · x_i!
//! ```

mod verify;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::decomposition::{max_length_decomposition, max_length_decompositions, Decomposition};
use crate::error::{Error, Result};
use crate::matrix::{MatrixSpace, DEFAULT_VERTEX_CAP};
use crate::perm::VertexMap;
use crate::semiring::{Elem, FiniteSemiring, Subsemiring};
use crate::zdg::{
    brute_force_aut_labelled, is_digraph_automorphism, labelled_isomorphism, lift_quotient_map,
    quotient_labelled, twin_partition, twin_transpositions, AutGroup, Digraph, LabelledDigraph,
    SearchBudget, TwinPartition,
};

pub use verify::{lemma_battery, verify, Check, LemmaContext, Status, VerificationReport};

use crate::zdg::factorial;

/// Resource limits shared by the analyses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub vertex_cap: usize,
    pub budget: SearchBudget,
    pub closure_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            vertex_cap: DEFAULT_VERTEX_CAP,
            budget: SearchBudget::default(),
            closure_cap: 20_000,
        }
    }
}

/// An element bijection between two subsemirings, on parent indices.
pub type ElementMap = BTreeMap<Elem, Elem>;

#[derive(Debug, Clone)]
pub struct Component {
    pub part: Elem,
    pub sub: Subsemiring,
    /// `Γ(e_iS)` on local indices of `sub`.
    pub digraph: Digraph,
    pub quotient: LabelledDigraph,
}

impl Component {
    fn new(s: &FiniteSemiring, part: Elem) -> Result<Self> {
        let sub = s.scale_subsemiring(part)?;
        let digraph = Digraph::of_semiring(&sub.semiring);
        let quotient = quotient_labelled(&digraph, &twin_partition(&digraph))?;
        Ok(Component {
            part,
            sub,
            digraph,
            quotient,
        })
    }

    /// The identity of `e_iS` as an element map.
    pub fn identity_map(&self) -> ElementMap {
        self.sub.carrier.iter().map(|&x| (x, x)).collect()
    }

    /// Lifts a map of labelled quotients `Γ_t(self) → Γ_t(other)` to an
    /// element bijection, pairing twin-class members in ascending order.
    fn lift(&self, other: &Component, quotient_map: &VertexMap) -> Result<ElementMap> {
        let local = lift_quotient_map(&self.quotient, &other.quotient, quotient_map, self.sub.carrier.len())?;
        Ok(local
            .iter()
            .enumerate()
            .map(|(x, &y)| (self.sub.carrier[x], other.sub.carrier[y]))
            .collect())
    }
}

/// Components grouped by isomorphism of their labelled quotients.
#[derive(Debug, Clone)]
pub struct ComponentClass {
    /// Indices into the decomposition's parts; the first is the representative.
    pub members: Vec<usize>,
    /// `Aut(Γ_t(e_rS))` for the representative `r`.
    pub quotient_aut: AutGroup,
    /// `isos[k]`: digraph isomorphism `Γ(e_rS) → Γ(e_{members[k]}S)`.
    pub isos: Vec<ElementMap>,
}

#[derive(Debug, Clone)]
pub struct ComponentAnalysis {
    pub decomposition: Decomposition,
    pub components: Vec<Component>,
    pub classes: Vec<ComponentClass>,
}

impl ComponentAnalysis {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.members.len()).collect()
    }

    pub fn quotient_aut_orders(&self) -> Vec<BigUint> {
        self.classes.iter().map(|c| c.quotient_aut.order.clone()).collect()
    }

    /// `∏_i (n!·a_i)^{x_i} · x_i!`.
    pub fn complement_order(&self, n: usize) -> BigUint {
        let nf = factorial(n);
        self.classes.iter().fold(BigUint::one(), |acc, c| {
            let x = c.members.len();
            acc * (&nf * &c.quotient_aut.order).pow(x as u32) * factorial(x)
        })
    }
}

/// The decomposition the structure formula is evaluated on: the least
/// decomposition of `1` when `1` attains the maximal length, otherwise
/// [`max_length_decomposition`].
///
/// With `α = 1` the parts are orthogonal idempotents summing to `1`, so `S`
/// is the direct product of the `e_iS` and twin classes of `M_n(S)` are
/// products of twin classes of the `M_n(e_iS)`. For other `α` two components
/// with isomorphic digraphs can meet twin classes of different sizes (in
/// `bool x chain3` with `α = (1,a)`), and swapping them is not an automorphism.
pub fn formula_decomposition(s: &FiniteSemiring) -> Result<Decomposition> {
    let one = s.one();
    let all = max_length_decompositions(s);
    match all.iter().find(|d| Some(d.alpha) == one) {
        Some(d) => Ok(d.clone()),
        None => max_length_decomposition(s),
    }
}

/// Analysis of [`formula_decomposition`].
pub fn component_analysis(s: &FiniteSemiring, budget: SearchBudget) -> Result<ComponentAnalysis> {
    s.require_commutative_antiring_with_identity()?;
    let d = formula_decomposition(s)?;
    analyse_decomposition(s, d, budget)
}

/// Groups the parts of `d` by labelled-quotient isomorphism and computes the
/// quotient automorphism group of each representative.
pub fn analyse_decomposition(s: &FiniteSemiring, d: Decomposition, budget: SearchBudget) -> Result<ComponentAnalysis> {
    let components: Vec<Component> = d
        .parts
        .iter()
        .map(|&e| Component::new(s, e))
        .collect::<Result<_>>()?;
    let mut classes: Vec<ComponentClass> = Vec::new();
    'parts: for (i, comp) in components.iter().enumerate() {
        for class in classes.iter_mut() {
            let rep = &components[class.members[0]];
            if let Some(qmap) = labelled_isomorphism(&rep.quotient, &comp.quotient) {
                class.isos.push(rep.lift(comp, &qmap)?);
                class.members.push(i);
                continue 'parts;
            }
        }
        classes.push(ComponentClass {
            members: vec![i],
            quotient_aut: brute_force_aut_labelled(&comp.quotient, budget)?,
            isos: vec![comp.identity_map()],
        });
    }
    Ok(ComponentAnalysis {
        decomposition: d,
        components,
        classes,
    })
}

/// `∏ c_j!` over twin-class sizes.
pub fn regular_order(twin_sizes: &[usize]) -> BigUint {
    twin_sizes.iter().fold(BigUint::one(), |acc, &c| acc * factorial(c))
}

/// `|Aut(Γ(M_n(S)))|` from the structure formula. Twin classes come from
/// annihilator vectors, so the digraph itself is never built.
pub fn aut_order(s: &Arc<FiniteSemiring>, n: usize, limits: &Limits) -> Result<BigUint> {
    let analysis = component_analysis(s, limits.budget)?;
    let space = MatrixSpace::new(s.clone(), n, limits.vertex_cap)?;
    let twins = space.partition_by_ann();
    Ok(regular_order(&twins.sizes()) * analysis.complement_order(n))
}

/// `Γ(M_n(S))` with its twin partition.
#[derive(Debug, Clone)]
pub struct MatrixDigraph {
    pub space: MatrixSpace,
    pub digraph: Digraph,
    pub twins: TwinPartition,
}

impl MatrixDigraph {
    pub fn new(s: Arc<FiniteSemiring>, n: usize, vertex_cap: usize) -> Result<Self> {
        let space = MatrixSpace::new(s, n, vertex_cap)?;
        let digraph = space.zero_divisor_digraph();
        let twins = twin_partition(&digraph);
        Ok(MatrixDigraph {
            space,
            digraph,
            twins,
        })
    }

    pub fn vcount(&self) -> usize {
        self.digraph.vcount()
    }
}

/// `θ_π`: `θ_π(A)_{π(i)π(j)} = A_ij`, as a permutation of matrix indices.
pub fn theta_permutation(pi: &[usize], space: &MatrixSpace) -> Result<VertexMap> {
    let n = space.n();
    check_permutation(pi, n, "π")?;
    let image = (0..space.len())
        .map(|idx| {
            let a = space.decode(idx);
            let mut b = vec![0; n * n];
            for r in 0..n {
                for c in 0..n {
                    b[pi[r] * n + pi[c]] = a[r * n + c];
                }
            }
            space.encode(&b)
        })
        .collect();
    VertexMap::new(image)
}

fn check_permutation(p: &[usize], n: usize, what: &str) -> Result<()> {
    let mut seen = vec![false; n];
    if p.len() != n || p.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
        return Err(Error::InvalidComponentMap(format!("{what} = {p:?} is not a permutation of 0..{n}")));
    }
    Ok(())
}

/// Data of `σ(A) = Σ_i θ_{π_i}(τ_i(e_i·A))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentMapSpec {
    /// Permutation of the parts.
    pub omega: Vec<usize>,
    /// One row/column permutation per part.
    pub pi: Vec<Vec<usize>>,
    /// `tau[i]`: digraph isomorphism `Γ(e_iS) → Γ(e_{ω(i)}S)`.
    pub tau: Vec<ElementMap>,
}

impl ComponentMapSpec {
    pub fn identity(analysis: &ComponentAnalysis, n: usize) -> Self {
        let s = analysis.components.len();
        ComponentMapSpec {
            omega: (0..s).collect(),
            pi: vec![(0..n).collect(); s],
            tau: analysis.components.iter().map(Component::identity_map).collect(),
        }
    }

    fn validate(&self, s: &FiniteSemiring, analysis: &ComponentAnalysis, n: usize) -> Result<()> {
        let parts = analysis.components.len();
        check_permutation(&self.omega, parts, "ω")?;
        if self.pi.len() != parts || self.tau.len() != parts {
            return Err(Error::InvalidComponentMap(format!(
                "expected {parts} permutations and {parts} element maps"
            )));
        }
        for p in &self.pi {
            check_permutation(p, n, "π")?;
        }
        for (i, tau) in self.tau.iter().enumerate() {
            let from = &analysis.components[i].sub;
            let to = &analysis.components[self.omega[i]].sub;
            let domain: Vec<Elem> = tau.keys().copied().collect();
            if domain != from.carrier {
                return Err(Error::InvalidComponentMap(format!("τ_{i} is not defined on e_{i}S")));
            }
            let mut image: Vec<Elem> = tau.values().copied().collect();
            image.sort_unstable();
            if image != to.carrier {
                return Err(Error::InvalidComponentMap(format!(
                    "τ_{i} is not a bijection onto e_{}S",
                    self.omega[i]
                )));
            }
            if tau[&s.zero()] != s.zero() {
                return Err(Error::InvalidComponentMap(format!("τ_{i} moves 0")));
            }
            for (&x, &tx) in tau {
                for (&y, &ty) in tau {
                    if s.is_zero(s.mul(x, y)) != s.is_zero(s.mul(tx, ty)) {
                        return Err(Error::InvalidComponentMap(format!(
                            "τ_{i} does not preserve the edge relation at ({},{})",
                            s.name_of(x),
                            s.name_of(y)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Realizes a [`ComponentMapSpec`] as an automorphism of `Γ(M_n(S))`.
///
/// When the formula is a bijection it is returned as is. When `α ≠ 1` it can
/// merge twins (e.g. `a·A = a·(1·A)` in a chain); it is then realized on
/// twin classes, pairing members in ascending order.
pub fn lift_component_map(spec: &ComponentMapSpec, analysis: &ComponentAnalysis, mz: &MatrixDigraph) -> Result<VertexMap> {
    let s = mz.space.ring().clone();
    let n = mz.space.n();
    spec.validate(&s, analysis, n)?;

    let raw: Vec<usize> = (0..mz.vcount())
        .map(|idx| {
            let a = mz.space.decode(idx);
            let mut out = vec![s.zero(); n * n];
            for (i, comp) in analysis.components.iter().enumerate() {
                let (pi, tau) = (&spec.pi[i], &spec.tau[i]);
                for r in 0..n {
                    for c in 0..n {
                        let y = tau[&s.mul(comp.part, a[r * n + c])];
                        let slot = &mut out[pi[r] * n + pi[c]];
                        *slot = s.add(*slot, y);
                    }
                }
            }
            mz.space.encode(&out)
        })
        .collect();

    let sigma = match VertexMap::new(raw.clone()) {
        Ok(sigma) => sigma,
        Err(_) => realize_on_classes(&raw, &mz.twins)?,
    };
    if !is_digraph_automorphism(&sigma, &mz.digraph) {
        return Err(Error::InvalidComponentMap("the induced map is not an automorphism".into()));
    }
    Ok(sigma)
}

fn realize_on_classes(raw: &[usize], twins: &TwinPartition) -> Result<VertexMap> {
    let mut image = vec![0; raw.len()];
    let mut hit = vec![false; twins.len()];
    for (c, class) in twins.classes().iter().enumerate() {
        let target = twins.class_of(raw[class[0]]);
        if let Some(&v) = class.iter().find(|&&v| twins.class_of(raw[v]) != target) {
            return Err(Error::InvalidComponentMap(format!(
                "twins {} and {v} land in different classes",
                class[0]
            )));
        }
        let to = twins.class(target);
        if to.len() != class.len() || std::mem::replace(&mut hit[target], true) {
            return Err(Error::InvalidComponentMap(format!(
                "class {c} is not mapped bijectively onto a class of equal size"
            )));
        }
        for (&a, &b) in class.iter().zip(to) {
            image[a] = b;
        }
    }
    VertexMap::new(image)
}

/// Generators of `Aut(Γ(M_n(S)))`: regular transpositions, `θ` maps for
/// adjacent transpositions and lifted quotient automorphisms in each
/// representative component, and swaps of adjacent equivalent components.
/// Identity maps are dropped.
pub fn synthesize_generators(analysis: &ComponentAnalysis, mz: &MatrixDigraph) -> Result<Vec<VertexMap>> {
    let n = mz.space.n();
    let mut gens = twin_transpositions(&mz.twins);
    let base = ComponentMapSpec::identity(analysis, n);
    let push = |spec: &ComponentMapSpec, gens: &mut Vec<VertexMap>| -> Result<()> {
        let sigma = lift_component_map(spec, analysis, mz)?;
        if !sigma.is_identity() {
            gens.push(sigma);
        }
        Ok(())
    };

    for class in &analysis.classes {
        let r = class.members[0];
        let rep = &analysis.components[r];
        for t in 0..n.saturating_sub(1) {
            let mut spec = base.clone();
            spec.pi[r].swap(t, t + 1);
            push(&spec, &mut gens)?;
        }
        for qgen in &class.quotient_aut.generators {
            let mut spec = base.clone();
            spec.tau[r] = rep.lift(rep, qgen)?;
            push(&spec, &mut gens)?;
        }
        for k in 0..class.members.len().saturating_sub(1) {
            let (u, v) = (class.members[k], class.members[k + 1]);
            // isos[k+1] ∘ isos[k]⁻¹ : e_uS → e_vS
            let forward: ElementMap = class.isos[k]
                .iter()
                .map(|(&x, &ux)| (ux, class.isos[k + 1][&x]))
                .collect();
            let backward: ElementMap = forward.iter().map(|(&a, &b)| (b, a)).collect();
            let mut spec = base.clone();
            spec.omega.swap(u, v);
            spec.tau[u] = forward;
            spec.tau[v] = backward;
            push(&spec, &mut gens)?;
        }
    }
    Ok(gens)
}

/// Everything the structure formula yields for `Γ(M_n(S))`.
#[derive(Debug, Clone)]
pub struct AutDescription {
    pub n: usize,
    pub analysis: ComponentAnalysis,
    pub twin_sizes: Vec<usize>,
    pub regular_order: BigUint,
    pub total_order: BigUint,
    pub generators: Vec<VertexMap>,
}

impl AutDescription {
    pub fn alpha_decomp(&self) -> &Decomposition {
        &self.analysis.decomposition
    }

    pub fn omega_classes(&self) -> Vec<Vec<usize>> {
        self.analysis.classes.iter().map(|c| c.members.clone()).collect()
    }
}

/// The structure formula plus synthesized generators, each checked to be an
/// automorphism of the materialized digraph.
pub fn describe(s: &Arc<FiniteSemiring>, n: usize, limits: &Limits) -> Result<(AutDescription, MatrixDigraph)> {
    let analysis = component_analysis(s, limits.budget)?;
    let mz = MatrixDigraph::new(s.clone(), n, limits.vertex_cap)?;
    let twin_sizes = mz.twins.sizes();
    let regular = regular_order(&twin_sizes);
    let total_order = &regular * analysis.complement_order(n);
    let generators = synthesize_generators(&analysis, &mz)?;
    Ok((
        AutDescription {
            n,
            analysis,
            twin_sizes,
            regular_order: regular,
            total_order,
            generators,
        },
        mz,
    ))
}

//! Cross-checks between the structure formula, the search oracle, and the
//! structural lemmas on concrete automorphisms.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use super::{
    analyse_decomposition, describe, regular_order, ComponentAnalysis, Limits, MatrixDigraph,
};
use crate::decomposition::{is_indecomposable, max_length_decompositions};
use crate::error::{Error, Result};
use crate::perm::{closure, Closure, VertexMap};
use crate::semiring::{Elem, FiniteSemiring};
use crate::zdg::{
    brute_force_aut, brute_force_aut_labelled, quotient_labelled, search_automorphisms,
    FACTORIZE_ABOVE,
};

/// Closure elements sampled for the lemma battery.
const CLOSURE_SAMPLE: usize = 100;
const SAMPLE_SEED: u64 = 0x5eed_2a7e;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass(String),
    Fail(String),
    /// Tag (`budget`, `closure-cap`) and reason.
    Skipped(&'static str, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (word, detail) = match &self.status {
            Status::Pass(d) => ("PASS".to_string(), d),
            Status::Fail(d) => ("FAIL".to_string(), d),
            Status::Skipped(tag, d) => (format!("SKIPPED({tag})"), d),
        };
        if detail.is_empty() {
            write!(f, "{} {word}", self.name)
        } else {
            write!(f, "{} {word} {detail}", self.name)
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub formula_order: BigUint,
    pub oracle_order: Option<BigUint>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| matches!(c.status, Status::Fail(_)))
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }
}

/// Precomputed data for checking the structural lemmas on one automorphism.
pub struct LemmaContext<'a> {
    s: &'a FiniteSemiring,
    mz: &'a MatrixDigraph,
    analysis: &'a ComponentAnalysis,
    entries: Vec<Vec<Elem>>,
    /// Union of the twin classes meeting `e_r·M_n(S)`, per part.
    saturated: Vec<FixedBitSet>,
    /// `Z(e_rS)` on parent indices, per part.
    sub_zero_divisors: Vec<FixedBitSet>,
}

impl<'a> LemmaContext<'a> {
    pub fn new(mz: &'a MatrixDigraph, analysis: &'a ComponentAnalysis) -> Self {
        let s: &FiniteSemiring = mz.space.ring();
        let entries = mz.space.all_entries();
        let v = mz.vcount();
        let saturated = analysis
            .components
            .iter()
            .map(|comp| {
                let mut set = FixedBitSet::with_capacity(v);
                for a in 0..v {
                    let class = mz.twins.class_of(mz.space.scale_index(comp.part, a));
                    set.extend(mz.twins.class(class).iter().copied());
                }
                set
            })
            .collect();
        let sub_zero_divisors = analysis
            .components
            .iter()
            .map(|comp| {
                let mut set = FixedBitSet::with_capacity(s.size());
                for x in comp.sub.semiring.zero_divisor_set().ones() {
                    set.insert(comp.sub.carrier[x]);
                }
                set
            })
            .collect();
        LemmaContext {
            s,
            mz,
            analysis,
            entries,
            saturated,
            sub_zero_divisors,
        }
    }

    fn label(&self, v: usize) -> String {
        self.mz.space.label(v)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let sum: Vec<Elem> = self.entries[a]
            .iter()
            .zip(&self.entries[b])
            .map(|(&x, &y)| self.s.add(x, y))
            .collect();
        self.mz.space.encode(&sum)
    }

    /// `σ(N⁻(A)) = N⁻(σ(A))` and `σ(N⁺(A)) = N⁺(σ(A))`.
    pub fn annihilators(&self, sigma: &VertexMap) -> Option<String> {
        let g = &self.mz.digraph;
        for a in 0..self.mz.vcount() {
            let sa = sigma.apply(a);
            let sides = [
                (g.in_neighbors(a), g.in_neighbors(sa), "left"),
                (g.out_neighbors(a), g.out_neighbors(sa), "right"),
            ];
            for (before, after, side) in sides {
                let moved: FixedBitSet = before.ones().map(|x| sigma.apply(x)).collect::<Vec<_>>().into_iter().fold(
                    FixedBitSet::with_capacity(self.mz.vcount()),
                    |mut set, x| {
                        set.insert(x);
                        set
                    },
                );
                if &moved != after {
                    return Some(format!("{side} annihilator of {}", self.label(a)));
                }
            }
        }
        None
    }

    /// `σ(A+B)` and `σ(A)+σ(B)` are twins.
    pub fn additive(&self, sigma: &VertexMap) -> Option<String> {
        let v = self.mz.vcount();
        for a in 0..v {
            for b in a..v {
                let lhs = sigma.apply(self.add(a, b));
                let rhs = self.add(sigma.apply(a), sigma.apply(b));
                if !self.mz.twins.same_class(lhs, rhs) {
                    return Some(format!("A={} B={}", self.label(a), self.label(b)));
                }
            }
        }
        None
    }

    /// A permutation `ω` of the parts with `σ(e_r·M_n(S)) = e_{ω(r)}·M_n(S)`,
    /// compared up to twins.
    pub fn componentwise(&self, sigma: &VertexMap) -> std::result::Result<Vec<usize>, String> {
        let parts = self.saturated.len();
        let candidates: Vec<Vec<usize>> = self
            .saturated
            .iter()
            .map(|set| {
                let image: FixedBitSet = {
                    let mut s = FixedBitSet::with_capacity(self.mz.vcount());
                    s.extend(set.ones().map(|x| sigma.apply(x)));
                    s
                };
                (0..parts).filter(|&t| self.saturated[t] == image).collect()
            })
            .collect();
        let mut omega = vec![usize::MAX; parts];
        let mut used = vec![false; parts];
        if assign(&candidates, 0, &mut omega, &mut used) {
            Ok(omega)
        } else {
            let r = candidates.iter().position(Vec::is_empty).unwrap_or(0);
            Err(format!(
                "no component matches the image of {}·M_n(S)",
                self.s.name_of(self.analysis.components[r].part)
            ))
        }
    }

    /// Images of `x·E_ij` (`x ∈ e_uS`, nonzero) are twins of scaled units
    /// `y·E_kl` with `y ∈ e_{ω(u)}S`, and `x ∈ Z(e_uS) ⇔ y ∈ Z(e_{ω(u)}S)`.
    pub fn elementary_divisors(&self, sigma: &VertexMap, omega: &[usize]) -> Option<String> {
        let n = self.mz.space.n();
        for (u, comp) in self.analysis.components.iter().enumerate() {
            let v = omega[u];
            let target = &self.analysis.components[v].sub;
            for &x in comp.sub.carrier.iter().filter(|&&x| !self.s.is_zero(x)) {
                for i in 0..n {
                    for j in 0..n {
                        let img = sigma.apply(self.mz.space.scaled_unit_index(x, i, j));
                        let class = self.mz.twins.class(self.mz.twins.class_of(img));
                        let unit = class.iter().find_map(|&w| {
                            self.scaled_unit(w).filter(|&(y, _, _)| target.contains(y))
                        });
                        let witness = || format!("x={} i={} j={}", self.s.name_of(x), i + 1, j + 1);
                        match unit {
                            None => return Some(format!("{} is not a scaled unit", witness())),
                            Some((y, _, _)) => {
                                if self.sub_zero_divisors[u].contains(x) != self.sub_zero_divisors[v].contains(y) {
                                    return Some(format!("{} maps to y={}", witness(), self.s.name_of(y)));
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// On twin classes, `e_u·E_ij ↦ e_{ω(u)}·E_{π(i)π(j)}` for one `π` per part.
    pub fn permutations(&self, sigma: &VertexMap, omega: &[usize]) -> Option<String> {
        let n = self.mz.space.n();
        for (u, comp) in self.analysis.components.iter().enumerate() {
            let ev = self.analysis.components[omega[u]].part;
            let mut positions = vec![(usize::MAX, usize::MAX); n * n];
            for i in 0..n {
                for j in 0..n {
                    let img = sigma.apply(self.mz.space.scaled_unit_index(comp.part, i, j));
                    let hit = (0..n * n).find(|&kl| {
                        let unit = self.mz.space.scaled_unit_index(ev, kl / n, kl % n);
                        self.mz.twins.same_class(img, unit)
                    });
                    match hit {
                        Some(kl) => positions[i * n + j] = (kl / n, kl % n),
                        None => {
                            return Some(format!(
                                "e={} E_{}{} leaves the unit matrices",
                                self.s.name_of(comp.part),
                                i + 1,
                                j + 1
                            ))
                        }
                    }
                }
            }
            let pi: Vec<usize> = (0..n).map(|i| positions[i * n + i].0).collect();
            let consistent = (0..n).all(|i| (0..n).all(|j| positions[i * n + j] == (pi[i], pi[j])));
            let mut sorted = pi.clone();
            sorted.sort_unstable();
            if !consistent || sorted != (0..n).collect::<Vec<_>>() {
                return Some(format!(
                    "e={}: unit positions {:?} are not of the form (π(i),π(j))",
                    self.s.name_of(comp.part),
                    positions
                ));
            }
        }
        None
    }

    /// `(y, k, l)` when vertex `w` is `y·E_kl` with `y ≠ 0`.
    fn scaled_unit(&self, w: usize) -> Option<(Elem, usize, usize)> {
        let n = self.mz.space.n();
        let mut nonzero = self.entries[w]
            .iter()
            .enumerate()
            .filter(|(_, &x)| !self.s.is_zero(x));
        let (pos, &y) = nonzero.next()?;
        nonzero.next().is_none().then_some((y, pos / n, pos % n))
    }
}

fn assign(candidates: &[Vec<usize>], r: usize, omega: &mut [usize], used: &mut [bool]) -> bool {
    if r == candidates.len() {
        return true;
    }
    for &t in &candidates[r] {
        if !used[t] {
            used[t] = true;
            omega[r] = t;
            if assign(candidates, r + 1, omega, used) {
                return true;
            }
            used[t] = false;
        }
    }
    false
}

/// Lemma names in battery order.
pub const LEMMAS: [&str; 5] = [
    "lemma_annihilators",
    "lemma_additive",
    "lemma_componentwise",
    "lemma_elementary_divisors",
    "lemma_permutations",
];

/// Runs every lemma on `sigma`; returns `(lemma, witness)` for each failure.
pub fn lemma_battery(ctx: &LemmaContext<'_>, sigma: &VertexMap) -> Vec<(&'static str, String)> {
    let mut failures = Vec::new();
    if let Some(w) = ctx.annihilators(sigma) {
        failures.push((LEMMAS[0], w));
    }
    if let Some(w) = ctx.additive(sigma) {
        failures.push((LEMMAS[1], w));
    }
    match ctx.componentwise(sigma) {
        Ok(omega) => {
            if let Some(w) = ctx.elementary_divisors(sigma, &omega) {
                failures.push((LEMMAS[3], w));
            }
            if let Some(w) = ctx.permutations(sigma, &omega) {
                failures.push((LEMMAS[4], w));
            }
        }
        Err(w) => {
            failures.push((LEMMAS[2], w));
            failures.push((LEMMAS[3], "needs a component permutation".into()));
            failures.push((LEMMAS[4], "needs a component permutation".into()));
        }
    }
    failures
}

fn budget_skip(e: &Error) -> Option<Status> {
    match e {
        Error::Budget(reason) => Some(Status::Skipped("budget", reason.clone())),
        _ => None,
    }
}

/// Cross-validates the structure formula for `Γ(M_n(S))` against the search
/// oracle, the synthesized generators, and the structural lemmas.
///
/// Checks, in order: the twin theorem (digraph twins vs. annihilator
/// vectors), formula vs. oracle order, the twin factorization of the oracle
/// order, the synthesized generators, their closure order, the lemma battery
/// over oracle generators and sampled closure elements, indecomposability of
/// the components, and invariance of the order under the choice of `α`.
pub fn verify(s: &Arc<FiniteSemiring>, n: usize, limits: &Limits) -> Result<VerificationReport> {
    let (desc, mz) = describe(s, n, limits)?;
    let formula = desc.total_order.clone();
    let mut checks = Vec::new();
    let mut push = |name: &'static str, status: Status| checks.push(Check { name, status });

    let by_ann = mz.space.partition_by_ann();
    push(
        "twin_theorem",
        if by_ann == mz.twins {
            Status::Pass(format!("{} classes", mz.twins.len()))
        } else {
            let v = (0..mz.vcount())
                .find(|&v| by_ann.class(by_ann.class_of(v)) != mz.twins.class(mz.twins.class_of(v)))
                .unwrap_or(0);
            Status::Fail(format!("classes differ at {}", mz.space.label(v)))
        },
    );

    let oracle = brute_force_aut(&mz.digraph, limits.budget);
    let oracle_order = oracle.as_ref().ok().map(|o| o.order.clone());
    push(
        "oracle_order",
        match &oracle {
            Ok(o) if o.order == formula => Status::Pass(format!("{formula}")),
            Ok(o) => Status::Fail(format!("formula {formula} oracle {}", o.order)),
            Err(e) => budget_skip(e).ok_or_else(|| e.clone())?,
        },
    );

    push("twin_factorization", {
        if mz.vcount() > FACTORIZE_ABOVE {
            Status::Skipped(
                "budget",
                format!("{} vertices exceed the direct-search size {FACTORIZE_ABOVE}", mz.vcount()),
            )
        } else {
            let quotient = quotient_labelled(&mz.digraph, &mz.twins)?;
            let direct = search_automorphisms(&mz.digraph, None, limits.budget);
            let on_quotient = brute_force_aut_labelled(&quotient, limits.budget);
            match (direct, on_quotient) {
                (Ok(d), Ok(q)) => {
                    let factored = regular_order(&mz.twins.sizes()) * &q.order;
                    if d.order == factored {
                        Status::Pass(format!("{} = {} * {}", d.order, regular_order(&mz.twins.sizes()), q.order))
                    } else {
                        Status::Fail(format!("direct {} factored {factored}", d.order))
                    }
                }
                (Err(e), _) | (_, Err(e)) => budget_skip(&e).ok_or(e)?,
            }
        }
    });

    let bad_gen = desc
        .generators
        .iter()
        .position(|g| !crate::zdg::is_digraph_automorphism(g, &mz.digraph));
    push(
        "generators_are_automorphisms",
        match bad_gen {
            None => Status::Pass(format!("{} generators", desc.generators.len())),
            Some(i) => Status::Fail(format!("generator {i}")),
        },
    );

    let closure_elems = if formula > BigUint::from(limits.closure_cap) {
        push(
            "closure_order",
            Status::Skipped("closure-cap", format!("order {formula} exceeds {}", limits.closure_cap)),
        );
        None
    } else {
        match closure(&desc.generators, mz.vcount(), limits.closure_cap) {
            Closure::Complete(elems) => {
                let status = if BigUint::from(elems.len()) == formula {
                    Status::Pass(format!("{}", elems.len()))
                } else {
                    Status::Fail(format!("closure {} formula {formula}", elems.len()))
                };
                push("closure_order", status);
                Some(elems)
            }
            Closure::Exceeded { cap } => {
                push("closure_order", Status::Fail(format!("closure exceeds {cap}, formula {formula}")));
                None
            }
        }
    };

    let ctx = LemmaContext::new(&mz, &desc.analysis);
    match &oracle {
        Ok(o) => {
            let mut subjects: Vec<&VertexMap> = o.generators.iter().collect();
            let mut rng = StdRng::seed_from_u64(SAMPLE_SEED);
            if let Some(elems) = &closure_elems {
                subjects.extend(elems.choose_multiple(&mut rng, CLOSURE_SAMPLE));
            }
            let mut first_failure: [Option<String>; 5] = Default::default();
            for (k, sigma) in subjects.iter().enumerate() {
                for (lemma, witness) in lemma_battery(&ctx, sigma) {
                    let slot = LEMMAS.iter().position(|&l| l == lemma).expect("known lemma");
                    first_failure[slot].get_or_insert_with(|| format!("automorphism {k}: {witness}"));
                }
            }
            for (lemma, failure) in LEMMAS.iter().zip(first_failure) {
                push(
                    lemma,
                    match failure {
                        None => Status::Pass(format!("{} automorphisms", subjects.len())),
                        Some(w) => Status::Fail(w),
                    },
                );
            }
        }
        Err(_) => {
            for lemma in LEMMAS {
                push(lemma, Status::Skipped("budget", "no oracle generators".into()));
            }
        }
    }

    let decomposable = desc
        .analysis
        .components
        .iter()
        .find(|c| !is_indecomposable(&c.sub.semiring));
    push(
        "lemma_max",
        match decomposable {
            None => Status::Pass(format!("{} components", desc.analysis.components.len())),
            Some(c) => Status::Fail(format!("{}·S is decomposable", s.name_of(c.part))),
        },
    );

    let regular = regular_order(&desc.twin_sizes);
    let mut alpha_status = None;
    let choices = max_length_decompositions(s);
    for d in &choices {
        let rendered = d.render(s);
        let analysis = analyse_decomposition(s, d.clone(), limits.budget)?;
        let order = &regular * analysis.complement_order(n);
        if order != formula {
            alpha_status = Some(Status::Fail(format!("{rendered} gives {order}")));
            break;
        }
    }
    push(
        "alpha_invariance",
        alpha_status.unwrap_or_else(|| Status::Pass(format!("{} decompositions", choices.len()))),
    );

    Ok(VerificationReport {
        formula_order: formula,
        oracle_order,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Builtin;

    fn ring(desc: &str) -> Arc<FiniteSemiring> {
        Arc::new(desc.parse::<Builtin>().unwrap().build().unwrap())
    }

    #[test]
    fn chain_passes_everything() {
        let report = verify(&ring("chain3"), 1, &Limits::default()).unwrap();
        assert!(report.passed(), "{}", report.render());
        assert_eq!(report.formula_order, BigUint::from(2u32));
        assert_eq!(report.oracle_order, Some(BigUint::from(2u32)));
        assert!(matches!(report.check("alpha_invariance").unwrap().status, Status::Pass(_)));
    }

    #[test]
    fn non_automorphisms_fail_the_battery() {
        let s = ring("bool x bool");
        let (desc, mz) = describe(&s, 1, &Limits::default()).unwrap();
        let ctx = LemmaContext::new(&mz, &desc.analysis);
        // Swapping 0 with (1,1) breaks every adjacency-based lemma.
        let bad = VertexMap::transposition(4, 0, 3);
        let failed: Vec<&str> = lemma_battery(&ctx, &bad).into_iter().map(|(l, _)| l).collect();
        assert!(failed.contains(&"lemma_annihilators"));
        assert!(!lemma_battery(&ctx, &VertexMap::identity(4)).iter().any(|_| true));
    }

    #[test]
    fn report_lines() {
        let check = Check {
            name: "oracle_order",
            status: Status::Skipped("budget", "too big".into()),
        };
        assert_eq!(check.to_string(), "oracle_order SKIPPED(budget) too big");
    }
}

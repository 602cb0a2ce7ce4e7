//! Naive oracles shared by the integration tests. They use nothing from the
//! library beyond the semiring tables and the digraph adjacency.

#![allow(dead_code)]

use std::sync::Arc;

use zdaut::zdg::Digraph;
use zdaut::{Builtin, FiniteSemiring};

pub fn ring(desc: &str) -> Arc<FiniteSemiring> {
    Arc::new(desc.parse::<Builtin>().unwrap().build().unwrap())
}

/// Adjacency matrix as nested `Vec<bool>`.
pub fn adjacency(g: &Digraph) -> Vec<Vec<bool>> {
    let v = g.vcount();
    (0..v).map(|a| (0..v).map(|b| g.has_edge(a, b)).collect()).collect()
}

/// Counts automorphisms by plain backtracking over vertex images.
pub fn count_automorphisms(adj: &[Vec<bool>]) -> u64 {
    let v = adj.len();
    let deg: Vec<(usize, usize)> = (0..v)
        .map(|a| {
            let out = adj[a].iter().filter(|&&e| e).count();
            let inn = (0..v).filter(|&b| adj[b][a]).count();
            (out, inn)
        })
        .collect();
    let mut image = vec![usize::MAX; v];
    let mut used = vec![false; v];
    let mut count = 0;
    backtrack(adj, &deg, 0, &mut image, &mut used, &mut count);
    count
}

fn backtrack(
    adj: &[Vec<bool>],
    deg: &[(usize, usize)],
    a: usize,
    image: &mut [usize],
    used: &mut [bool],
    count: &mut u64,
) {
    if a == adj.len() {
        *count += 1;
        return;
    }
    for t in 0..adj.len() {
        if used[t] || deg[t] != deg[a] || adj[a][a] != adj[t][t] {
            continue;
        }
        let fits = (0..a).all(|b| adj[a][b] == adj[t][image[b]] && adj[b][a] == adj[image[b]][t]);
        if fits {
            used[t] = true;
            image[a] = t;
            backtrack(adj, deg, a + 1, image, used, count);
            used[t] = false;
        }
    }
}

/// Every sequence over `0..m` of length `len`, lexicographically.
pub fn tuples(m: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..m).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// `n×n` matrix product over `s`, row-major.
pub fn mat_mul(s: &FiniteSemiring, n: usize, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut c = vec![s.zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = s.zero();
            for k in 0..n {
                acc = s.add(acc, s.mul(a[i * n + k], b[k * n + j]));
            }
            c[i * n + j] = acc;
        }
    }
    c
}

/// Largest `k` such that `alpha` is a sum of `k` nonzero elements (repeats
/// allowed) that pairwise multiply to zero; searches multisets up to size `m`.
pub fn multiset_length(s: &FiniteSemiring, alpha: usize) -> usize {
    let nonzero: Vec<usize> = s.elements().filter(|&x| !s.is_zero(x)).collect();
    let mut best = 0;
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
    while let Some((parts, from)) = stack.pop() {
        let sum = parts.iter().fold(s.zero(), |acc, &e| s.add(acc, e));
        if !parts.is_empty() && sum == alpha {
            best = best.max(parts.len());
        }
        if parts.len() == s.size() {
            continue;
        }
        for (k, &e) in nonzero.iter().enumerate().skip(from) {
            if parts.iter().all(|&f| s.is_zero(s.mul(e, f))) {
                let mut next = parts.clone();
                next.push(e);
                stack.push((next, k));
            }
        }
    }
    best
}

/// `Σ_i (−1)^i C(n,i) (2^{n−i} − 1)^n`: boolean `n×n` matrices with no zero
/// row and no zero column.
pub fn no_zero_line_count(n: u32) -> i64 {
    let binom = |n: u32, k: u32| (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64);
    (0..=n)
        .map(|i| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * binom(n, i) * ((1i64 << (n - i)) - 1).pow(n)
        })
        .sum()
}

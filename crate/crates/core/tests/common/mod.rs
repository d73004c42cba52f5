//! Reference implementations used as test oracles. Each one is written
//! directly from the defining formula, with no shared code from the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

// ---------------------------------------------------------------------------
// Local layer similarity

fn is_edge(m: &[Vec<f64>], theta: f64, x: usize, y: usize) -> bool {
    x != y && m[x][y] > theta
}

/// Nested-loop transcription of the neighborhood-aware local similarity.
pub fn local_similarity(m: &[Vec<f64>], theta: f64, a: usize, b: usize) -> f64 {
    let n = m.len();
    let mut weighted = 0.0;
    let mut weight = 0.0;
    for u in 0..n {
        if u == b || !is_edge(m, theta, a, u) {
            continue;
        }
        for v in 0..n {
            if v == a || v == u || !is_edge(m, theta, b, v) {
                continue;
            }
            let w = m[a][u] * m[b][v];
            weight += w;
            weighted += m[u][v] * w;
        }
    }
    (m[a][b] + weighted) / (1.0 + weight)
}

/// Symmetric metric matrix realizing `edges` at `theta`: edge cells are
/// drawn from `(theta, 1]`, the rest from `[0, theta]`.
pub fn weights_for(
    rng: &mut impl Rng,
    n: usize,
    edges: &[(usize, usize)],
    theta: f64,
) -> Vec<Vec<f64>> {
    let set: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = if set.contains(&(i, j)) {
                theta + (1.0 - theta) * (1.0 - rng.gen::<f64>())
            } else if rng.gen_bool(0.1) {
                theta
            } else {
                theta * rng.gen::<f64>()
            };
            m[i][j] = w;
            m[j][i] = w;
        }
    }
    m
}

/// Graph on `n` vertices as a bitmask over the pairs `i < j` in
/// lexicographic order.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn relabel(n: usize, mask: u32, perm: &[usize]) -> u32 {
    let mut out = 0u32;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> pair_index(n, i, j) & 1 == 1 {
                let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                out |= 1 << pair_index(n, a, b);
            }
        }
    }
    out
}

fn for_each_permutation(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_permutation(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Minimum relabeled mask over permutations that list vertices by
/// ascending degree. Degree order is preserved by isomorphism, so this is a
/// canonical form.
fn canonical(n: usize, mask: u32) -> u32 {
    let mut degree = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> pair_index(n, i, j) & 1 == 1 {
                degree[i] += 1;
                degree[j] += 1;
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &d) in degree.iter().enumerate() {
        classes.entry(d).or_default().push(v);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    let mut best = u32::MAX;
    let mut order = Vec::with_capacity(n);
    canonical_rec(n, mask, &classes, 0, &mut order, &mut best);
    best
}

fn canonical_rec(
    n: usize,
    mask: u32,
    classes: &[Vec<usize>],
    c: usize,
    order: &mut Vec<usize>,
    best: &mut u32,
) {
    if c == classes.len() {
        // order[k] is the old vertex placed at new position k.
        let mut perm = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        *best = (*best).min(relabel(n, mask, &perm));
        return;
    }
    let mut class = classes[c].clone();
    for_each_permutation(&mut class, 0, &mut |p| {
        let len = order.len();
        order.extend_from_slice(p);
        canonical_rec(n, mask, classes, c + 1, order, best);
        order.truncate(len);
    });
}

/// One representative edge list per isomorphism class of simple graphs on
/// `n` vertices.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut reps: BTreeSet<u32> = BTreeSet::new();
    if n <= 1 {
        reps.insert(0);
    } else {
        // Extend each class on n - 1 vertices by a new vertex joined to any
        // subset of the old ones; every graph on n vertices arises this way.
        for small in nonisomorphic_graphs(n - 1) {
            for subset in 0u32..(1 << (n - 1)) {
                let mut mask = 0u32;
                for &(i, j) in &small {
                    mask |= 1 << pair_index(n, i, j);
                }
                for i in 0..(n - 1) {
                    if subset >> i & 1 == 1 {
                        mask |= 1 << pair_index(n, i, n - 1);
                    }
                }
                reps.insert(canonical(n, mask));
            }
        }
    }
    reps.into_iter()
        .map(|mask| {
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if mask >> pair_index(n, i, j) & 1 == 1 {
                        edges.push((i, j));
                    }
                }
            }
            edges
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Transportation problem

fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

/// Solves the square system `a x = b` by Gaussian elimination with partial
/// pivoting. `None` if singular.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = ((row + 1)..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Minimum transport cost by enumerating every basic feasible solution.
///
/// Constraints: row sums equal `supply`, column sums equal `demand`. One
/// column constraint is redundant and dropped, leaving `m + n - 1` equations.
/// Each choice of `m + n - 1` cells with a nonsingular system and a
/// non-negative solution is a vertex of the polytope.
pub fn transport_min_cost(supply: &[f64], demand: &[f64], cost: &[Vec<f64>]) -> f64 {
    let (m, n) = (supply.len(), demand.len());
    let k = m + n - 1;
    let mut rhs: Vec<f64> = supply.to_vec();
    rhs.extend_from_slice(&demand[..n - 1]);
    let mut best = f64::INFINITY;
    combinations(m * n, k, &mut |cells| {
        let mut a = vec![vec![0.0; k]; k];
        for (col, &cell) in cells.iter().enumerate() {
            let (i, j) = (cell / n, cell % n);
            a[i][col] = 1.0;
            if j < n - 1 {
                a[m + j][col] = 1.0;
            }
        }
        if let Some(x) = solve_linear(a, rhs.clone()) {
            if x.iter().all(|&v| v >= -1e-12) {
                let c: f64 = cells
                    .iter()
                    .zip(&x)
                    .map(|(&cell, &v)| cost[cell / n][cell % n] * v)
                    .sum();
                best = best.min(c);
            }
        }
    });
    best
}

/// Random probability vector; with `zeros`, some entries may be exactly 0.
pub fn random_simplex(rng: &mut impl Rng, len: usize, zeros: bool) -> Vec<f64> {
    loop {
        let raw: Vec<f64> = (0..len)
            .map(|_| {
                if zeros && rng.gen_bool(0.2) {
                    0.0
                } else {
                    rng.gen::<f64>()
                }
            })
            .collect();
        let total: f64 = raw.iter().sum();
        if total > 1e-3 {
            return raw.into_iter().map(|x| x / total).collect();
        }
    }
}

// ---------------------------------------------------------------------------
// Baseline graph similarity

/// `(1/N) Σ_i (1/L_i) Σ_k w(e_ik)`, with vertices lacking out-edges adding 0.
pub fn graph_similarity(node_count: usize, edges: &[(usize, usize, f64)]) -> f64 {
    let mut total = 0.0;
    for i in 0..node_count {
        let mut count = 0;
        let mut sum = 0.0;
        for &(from, _, w) in edges {
            if from == i {
                count += 1;
                sum += w;
            }
        }
        if count > 0 {
            total += sum / count as f64;
        }
    }
    total / node_count as f64
}

// ---------------------------------------------------------------------------
// Metrics and the full multi-layer pipeline

pub fn cosine(x: &[f64], y: &[f64]) -> f64 {
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let nx: f64 = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    let ny: f64 = y.iter().map(|a| a * a).sum::<f64>().sqrt();
    dot / (nx * ny)
}

pub fn euclidean(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

pub fn jaccard(s1: &[&str], s2: &[&str]) -> f64 {
    let a: BTreeSet<&str> = s1.iter().copied().collect();
    let b: BTreeSet<&str> = s2.iter().copied().collect();
    let union = a.union(&b).count();
    if union == 0 {
        return 0.0;
    }
    a.intersection(&b).count() as f64 / union as f64
}

pub fn overlap(s1: &[&str], s2: &[&str]) -> f64 {
    let len = s1.len() + s2.len();
    if len == 0 {
        return 0.0;
    }
    let mut raw = 0.0;
    for n in 1..=s1.len().min(s2.len()) {
        let a: BTreeSet<&[&str]> = s1.windows(n).collect();
        let b: BTreeSet<&[&str]> = s2.windows(n).collect();
        raw += (a.intersection(&b).count() * n * n) as f64;
    }
    (raw / len as f64).tanh()
}

pub fn mean_vector(words: &HashMap<&str, Vec<f64>>, tokens: &[&str]) -> Vec<f64> {
    let known: Vec<&Vec<f64>> = tokens.iter().filter_map(|t| words.get(t)).collect();
    let dim = known[0].len();
    let mut out = vec![0.0; dim];
    for v in &known {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o += x;
        }
    }
    out.iter().map(|x| x / known.len() as f64).collect()
}

pub fn wmd(words: &HashMap<&str, Vec<f64>>, s1: &[&str], s2: &[&str]) -> f64 {
    fn bow<'a>(words: &HashMap<&str, Vec<f64>>, s: &[&'a str]) -> Vec<(&'a str, f64)> {
        let mut counts: BTreeMap<&'a str, f64> = BTreeMap::new();
        for t in s.iter().filter(|t| words.contains_key(*t)) {
            *counts.entry(t).or_default() += 1.0;
        }
        let total: f64 = counts.values().sum();
        counts.into_iter().map(|(t, c)| (t, c / total)).collect()
    }
    let (a, b) = (bow(words, s1), bow(words, s2));
    let supply: Vec<f64> = a.iter().map(|x| x.1).collect();
    let demand: Vec<f64> = b.iter().map(|x| x.1).collect();
    let cost: Vec<Vec<f64>> = a
        .iter()
        .map(|(ta, _)| {
            b.iter()
                .map(|(tb, _)| euclidean(&words[ta], &words[tb]))
                .collect()
        })
        .collect();
    transport_min_cost(&supply, &demand, &cost)
}

pub fn jsd(p: &[f64], q: &[f64]) -> f64 {
    let kl = |x: &[f64], m: &[f64]| -> f64 {
        x.iter()
            .zip(m)
            .filter(|(a, _)| **a > 0.0)
            .map(|(a, b)| a * (a / b).ln())
            .sum()
    };
    let m: Vec<f64> = p.iter().zip(q).map(|(a, b)| (a + b) / 2.0).collect();
    (0.5 * kl(p, &m) + 0.5 * kl(q, &m)) / std::f64::consts::LN_2
}

/// Layer codes in the order the pipeline oracle produces matrices.
pub const PIPELINE_KINDS: [&str; 5] = ["cs", "po", "ed", "ja", "wmd"];

/// Metric matrices for every kind, over pre-tokenized sentences.
pub fn metric_matrices(
    words: &HashMap<&str, Vec<f64>>,
    sentences: &[Vec<&str>],
) -> Vec<Vec<Vec<f64>>> {
    let n = sentences.len();
    let vecs: Vec<Vec<f64>> = sentences.iter().map(|s| mean_vector(words, s)).collect();
    PIPELINE_KINDS
        .iter()
        .map(|kind| {
            let mut m = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let (s, t) = (&sentences[i], &sentences[j]);
                    m[i][j] = match *kind {
                        "cs" => cosine(&vecs[i], &vecs[j]),
                        "po" => overlap(s, t),
                        "ed" => 1.0 / (1.0 + euclidean(&vecs[i], &vecs[j])),
                        "ja" => jaccard(s, t),
                        _ => 1.0 / (1.0 + wmd(words, s, t)),
                    };
                }
            }
            m
        })
        .collect()
}

/// Mean pairwise JSD of the smoothed edge-weight distributions.
pub fn inter_layer_weight(matrices: &[&Vec<Vec<f64>>], theta: f64) -> f64 {
    let n = matrices[0].len();
    let mut support = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if matrices.iter().any(|m| m[i][j] > theta) {
                support.push((i, j));
            }
        }
    }
    if support.is_empty() {
        return 0.0;
    }
    let dists: Vec<Vec<f64>> = matrices
        .iter()
        .map(|m| {
            let mass: Vec<f64> = support
                .iter()
                .map(|&(i, j)| if m[i][j] > theta { m[i][j] } else { 0.0 } + 1e-12)
                .collect();
            let total: f64 = mass.iter().sum();
            mass.into_iter().map(|x| x / total).collect()
        })
        .collect();
    let mut sum = 0.0;
    let mut count = 0;
    for i in 0..dists.len() {
        for j in (i + 1)..dists.len() {
            sum += jsd(&dists[i], &dists[j]);
            count += 1;
        }
    }
    sum / count as f64
}

/// `Π sims / (max(v, 1e-6) · Σ sims)`, 0 when the sum is 0.
pub fn overall_eq20(sims: &[f64], v: f64) -> f64 {
    let sum: f64 = sims.iter().sum();
    if sum == 0.0 {
        return 0.0;
    }
    sims.iter().product::<f64>() / (v.max(1e-6) * sum)
}

// ---------------------------------------------------------------------------
// Statistics

/// Rank of each value counting smaller values, with ties sharing the mean
/// of the positions they span.
pub fn tied_ranks(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&a| {
            let below = x.iter().filter(|&&b| b < a).count() as f64;
            let equal = x.iter().filter(|&&b| b == a).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect()
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let syy: f64 = y.iter().map(|b| (b - my) * (b - my)).sum();
    sxy / (sxx * syy).sqrt()
}

// ---------------------------------------------------------------------------
// Fixtures

/// Rows of the lower Cholesky factor of a positive definite Gram matrix.
/// Row `i` is a vector whose dot product with row `j` is `gram[i][j]`.
pub fn cholesky(gram: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = gram.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = gram[i][i] - s;
                assert!(d > 0.0, "Gram matrix is not positive definite");
                l[i][j] = d.sqrt();
            } else {
                l[i][j] = (gram[i][j] - s) / l[j][j];
            }
        }
    }
    l
}

/// Unit-diagonal Gram matrix on 5 nodes (A..E) with `edge` on A-B, A-C,
/// B-D, B-E, `cd` on C-D and C-E, and `rest` elsewhere.
pub fn five_node_gram(edge: f64, cd: f64, rest: f64) -> Vec<Vec<f64>> {
    let mut g = vec![vec![rest; 5]; 5];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for (i, j, w) in [
        (0, 1, edge),
        (0, 2, edge),
        (1, 3, edge),
        (1, 4, edge),
        (2, 3, cd),
        (2, 4, cd),
    ] {
        g[i][j] = w;
        g[j][i] = w;
    }
    g
}

/// Six short sentences over a small vocabulary, with 4-dim word vectors.
pub fn pipeline_fixture() -> (HashMap<&'static str, Vec<f64>>, Vec<Vec<&'static str>>) {
    let words: HashMap<&str, Vec<f64>> = [
        ("cat", vec![1.0, 0.2, 0.0, 0.1]),
        ("kitten", vec![0.9, 0.3, 0.1, 0.0]),
        ("dog", vec![0.7, 0.6, 0.0, 0.2]),
        ("sleeps", vec![0.1, 1.0, 0.3, 0.0]),
        ("naps", vec![0.2, 0.9, 0.4, 0.1]),
        ("runs", vec![0.0, 0.3, 1.0, 0.2]),
        ("the", vec![0.3, 0.3, 0.3, 0.3]),
        ("market", vec![0.0, 0.0, 0.2, 1.0]),
        ("falls", vec![0.1, 0.2, 0.6, 0.9]),
    ]
    .into_iter()
    .collect();
    let sentences = vec![
        vec!["the", "cat", "sleeps"],
        vec!["the", "kitten", "naps"],
        vec!["the", "cat", "naps"],
        vec!["the", "dog", "runs"],
        vec!["dog", "runs"],
        vec!["the", "market", "falls"],
    ];
    (words, sentences)
}

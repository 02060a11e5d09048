use serde::{Deserialize, Serialize};

use super::pointset::PointSet;
use crate::error::{Error, Result};
use crate::scalar::{Exponent, Real};

/// Minimum pairwise ℓ^p distance `Δ_p(X)`.
pub fn min_separation<T: Real>(x: &PointSet<T>, p: Exponent) -> Result<T> {
    if x.len() < 2 {
        return Err(Error::InvalidPointSet(
            "minimum separation needs at least two nodes".into(),
        ));
    }
    let mut best = T::infinity();
    for j in 0..x.len() {
        for k in 0..j {
            best = best.min(x.distance(j, k, p));
        }
    }
    Ok(best)
}

/// Indices of nodes within closed ℓ^p distance `tau` of node `k` (including `k`).
pub fn neighborhood<T: Real>(x: &PointSet<T>, k: usize, tau: T, p: Exponent) -> Vec<usize> {
    (0..x.len()).filter(|&j| j == k || x.distance(j, k, p) <= tau).collect()
}

/// `ν_p(τ, X)`: the largest neighborhood cardinality; 0 for the empty set.
pub fn local_sparsity<T: Real>(x: &PointSet<T>, tau: T, p: Exponent) -> usize {
    (0..x.len())
        .map(|k| neighborhood(x, k, tau, p).len())
        .max()
        .unwrap_or(0)
}

/// Same as [`local_sparsity`] restricted to the given node indices.
pub fn local_sparsity_of<T: Real>(x: &PointSet<T>, idx: &[usize], tau: T, p: Exponent) -> usize {
    idx.iter()
        .map(|&k| idx.iter().filter(|&&j| j == k || x.distance(j, k, p) <= tau).count())
        .max()
        .unwrap_or(0)
}

/// Greedy first-fit split of `idx` into parts with pairwise distance `> tau`.
///
/// First-fit never needs more than `ν` parts (a node conflicts with at most
/// `ν - 1` others). When it needs fewer, trailing members of the largest parts
/// are split off as singletons until there are exactly `ν` parts.
pub fn separated_partition_of<T: Real>(
    x: &PointSet<T>,
    idx: &[usize],
    tau: T,
    p: Exponent,
) -> Vec<Vec<usize>> {
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for &i in idx {
        match parts
            .iter_mut()
            .find(|part| part.iter().all(|&j| x.distance(i, j, p) > tau))
        {
            Some(part) => part.push(i),
            None => parts.push(vec![i]),
        }
    }
    let nu = local_sparsity_of(x, idx, tau, p);
    while parts.len() < nu {
        let (big, _) = parts
            .iter()
            .enumerate()
            .max_by_key(|(i, part)| (part.len(), std::cmp::Reverse(*i)))
            .expect("non-empty");
        let last = parts[big].pop().expect("part with two or more nodes");
        parts.push(vec![last]);
    }
    parts
}

/// [`separated_partition_of`] over the whole node set.
pub fn separated_partition<T: Real>(x: &PointSet<T>, tau: T, p: Exponent) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (0..x.len()).collect();
    separated_partition_of(x, &idx, tau, p)
}

/// A partition of the nodes into equal-size clumps of diameter `≤ tau`
/// separated by more than `tau`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClumpStructure {
    pub clumps: Vec<Vec<usize>>,
    pub tau: f64,
    pub lambda: usize,
}

pub fn detect_clumps<T: Real>(x: &PointSet<T>, tau: T, p: Exponent) -> Result<ClumpStructure> {
    let s = x.len();
    if s == 0 {
        return Err(Error::InvalidPointSet("empty node set".into()));
    }
    let mut label = vec![usize::MAX; s];
    let mut clumps: Vec<Vec<usize>> = Vec::new();
    for start in 0..s {
        if label[start] != usize::MAX {
            continue;
        }
        let id = clumps.len();
        let mut comp = vec![start];
        label[start] = id;
        let mut head = 0;
        while head < comp.len() {
            let i = comp[head];
            head += 1;
            for j in 0..s {
                if label[j] == usize::MAX && x.distance(i, j, p) <= tau {
                    label[j] = id;
                    comp.push(j);
                }
            }
        }
        comp.sort_unstable();
        clumps.push(comp);
    }
    for comp in &clumps {
        for (a, &i) in comp.iter().enumerate() {
            for &j in &comp[..a] {
                if x.distance(i, j, p) > tau {
                    return Err(Error::NotClumps {
                        reason: "intra-clump diameter exceeds tau".into(),
                        component: comp.clone(),
                    });
                }
            }
        }
    }
    let lambda = clumps[0].len();
    if let Some(bad) = clumps.iter().find(|c| c.len() != lambda) {
        return Err(Error::NotClumps {
            reason: format!("clump sizes differ ({} vs {lambda})", bad.len()),
            component: bad.clone(),
        });
    }
    Ok(ClumpStructure { clumps, tau: tau.as_f64(), lambda })
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `(γ(λ,d), r(λ,d))`: the smallest `γ` with `C(γ+d, d) ≥ λ`, and `⌈(λ-1)/d⌉`.
pub fn generic_exponents(lambda: usize, d: usize) -> Result<(usize, usize)> {
    if lambda == 0 || d == 0 {
        return Err(Error::InvalidArgument("lambda and d must be positive".into()));
    }
    let mut gamma = 0usize;
    while binomial((gamma + d) as u64, d as u64) < lambda as u128 {
        gamma += 1;
    }
    Ok((gamma, (lambda - 1).div_ceil(d)))
}

use itertools::Itertools;

use super::{Instance, Tour};
use crate::error::{Error, Result};

pub const DEFAULT_EXACT_LIMIT: usize = 18;
pub const BRUTE_FORCE_LIMIT: usize = 9;

/// Relative slack under which two tour lengths count as tied.
const TIE_TOLERANCE: f64 = 1e-9;

fn check_size(inst: &Instance, limit: usize) -> Result<usize> {
    let n = inst.len();
    if n < 3 {
        return Err(Error::InvalidInstance(format!(
            "need at least 3 points, got {n}"
        )));
    }
    if n > limit {
        return Err(Error::InstanceTooLarge { n, limit });
    }
    Ok(n)
}

/// Minimum-length tour by Held–Karp dynamic programming over subsets.
///
/// Among tours within a relative `1e-9` of the optimum, the lexicographically
/// smallest vertex sequence starting at vertex 0 is returned; that sequence is
/// already in canonical orientation.
pub fn exact_optimum(inst: &Instance, limit: usize) -> Result<Tour> {
    let n = check_size(inst, limit)?;
    let m = n - 1;
    let full: usize = (1 << m) - 1;
    // Vertex v >= 1 maps to bit v - 1. suffix[mask * n + j] is the shortest
    // path that starts at j, visits every vertex in mask and ends at 0.
    let mut suffix = vec![f64::INFINITY; (1usize << m) * n];
    for j in 1..n {
        suffix[j] = inst.dist(j, 0);
    }
    for mask in 1..=full {
        for j in 1..n {
            if mask & (1 << (j - 1)) != 0 {
                continue;
            }
            let mut best = f64::INFINITY;
            let mut rest = mask;
            while rest != 0 {
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let k = bit + 1;
                let cand = inst.dist(j, k) + suffix[(mask & !(1 << bit)) * n + k];
                if cand < best {
                    best = cand;
                }
            }
            suffix[mask * n + j] = best;
        }
    }
    let optimum = (1..n)
        .map(|k| inst.dist(0, k) + suffix[(full & !(1 << (k - 1))) * n + k])
        .fold(f64::INFINITY, f64::min);
    let budget = optimum * (1.0 + TIE_TOLERANCE);

    let mut order = Vec::with_capacity(n);
    order.push(0);
    let (mut cur, mut remaining, mut acc) = (0usize, full, 0.0f64);
    while remaining != 0 {
        let k = (1..n)
            .filter(|&k| remaining & (1 << (k - 1)) != 0)
            .find(|&k| {
                let rest = remaining & !(1 << (k - 1));
                acc + inst.dist(cur, k) + suffix[rest * n + k] <= budget
            })
            .expect("some continuation attains the optimum");
        acc += inst.dist(cur, k);
        remaining &= !(1 << (k - 1));
        order.push(k);
        cur = k;
    }
    Ok(Tour::from_vec_unchecked(order))
}

/// Exhaustive search over all orders of vertices `1..n`. Same tie rule as
/// [`exact_optimum`]. Serves as an independent oracle for small instances.
pub fn brute_force_optimum(inst: &Instance) -> Result<Tour> {
    let n = check_size(inst, BRUTE_FORCE_LIMIT)?;
    let cycle_len = |perm: &[usize]| {
        let mut total = inst.dist(0, perm[0]);
        for w in perm.windows(2) {
            total += inst.dist(w[0], w[1]);
        }
        total + inst.dist(perm[perm.len() - 1], 0)
    };
    let optimum = (1..n)
        .permutations(n - 1)
        .map(|p| cycle_len(&p))
        .fold(f64::INFINITY, f64::min);
    let budget = optimum * (1.0 + TIE_TOLERANCE);
    let best = (1..n)
        .permutations(n - 1)
        .find(|p| cycle_len(p) <= budget)
        .expect("the minimum is attained");
    let mut order = vec![0];
    order.extend(best);
    Ok(Tour::from_vec_unchecked(order))
}

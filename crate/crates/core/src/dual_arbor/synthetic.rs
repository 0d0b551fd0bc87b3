//! Random weighted arborescences that satisfy the combined triangle and
//! combined 2-opt conditions by construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ArborEdge, WeightedArborescence};

#[derive(Clone, Debug)]
pub struct SyntheticConfig {
    pub max_degree: usize,
    /// Maximum number of edges on a root-to-leaf path.
    pub max_depth: usize,
    /// `w` is drawn log-uniformly from this range.
    pub w_range: (f64, f64),
    /// Probability that an edge gets the largest admissible `c`.
    pub tight_probability: f64,
    /// Otherwise `c` is that maximum scaled by a uniform factor in `[min_scale, 1]`.
    pub min_scale: f64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            max_degree: 4,
            max_depth: 6,
            w_range: (1e-2, 1e2),
            tight_probability: 0.5,
            min_scale: 0.2,
        }
    }
}

struct Builder<'a> {
    rng: ChaCha8Rng,
    cfg: &'a SyntheticConfig,
    edges: Vec<ArborEdge>,
    next_vertex: usize,
}

impl Builder<'_> {
    fn scale(&mut self) -> f64 {
        if self.rng.gen_bool(self.cfg.tight_probability) {
            1.0
        } else {
            self.rng.gen_range(self.cfg.min_scale..=1.0)
        }
    }

    fn weight(&mut self) -> f64 {
        let (lo, hi) = self.cfg.w_range;
        (self.rng.gen_range(lo.ln()..=hi.ln())).exp()
    }

    /// Adds the edge `parent -> new vertex` at depth `depth` (1-based) with
    /// its whole subtree. Children get their weights first, then `c` is set
    /// to at most `w + sum(child c) - 2 * max(child c)`, which makes both
    /// conditions hold at this edge for every child.
    fn grow(&mut self, parent: usize, depth: usize, min_children: usize) -> usize {
        let v = self.next_vertex;
        self.next_vertex += 1;
        let idx = self.edges.len();
        let w = self.weight();
        self.edges.push(ArborEdge {
            from: parent,
            to: v,
            c: 0.0,
            w,
        });
        let kids = if depth < self.cfg.max_depth {
            self.rng.gen_range(min_children..=self.cfg.max_degree)
        } else {
            0
        };
        let children: Vec<usize> = (0..kids).map(|_| self.grow(v, depth + 1, 0)).collect();
        let bound = loop {
            let sum: f64 = children.iter().map(|&j| self.edges[j].c).sum();
            let Some(&top) = children
                .iter()
                .max_by(|&&x, &&y| self.edges[x].c.total_cmp(&self.edges[y].c))
            else {
                break w;
            };
            let b = w + sum - 2.0 * self.edges[top].c;
            if b > 0.0 {
                break b;
            }
            self.edges[top].c /= 2.0;
        };
        self.edges[idx].c = self.scale() * bound;
        idx
    }
}

pub fn synthetic_arborescence(seed: u64, cfg: &SyntheticConfig) -> WeightedArborescence {
    let mut b = Builder {
        rng: ChaCha8Rng::seed_from_u64(seed),
        cfg,
        edges: Vec::new(),
        next_vertex: 1,
    };
    let roots = b.rng.gen_range(1..=cfg.max_degree.max(1));
    for _ in 0..roots {
        b.grow(0, 1, 0);
    }
    WeightedArborescence::new(0, b.edges).expect("generator builds a valid arborescence")
}

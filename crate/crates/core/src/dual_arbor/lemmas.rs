//! Checks of the length inequalities on a weighted arborescence.
//!
//! Every inequality `lhs <= rhs` passes when
//! `rhs - lhs >= -tolerance * max(1, |lhs|, |rhs|)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::WeightedArborescence;

pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `c(e) <= w(e) + sum of c over the children of e`.
    CombinedTriangle,
    /// `c(e) + c(f) <= w(e) + sum of c over the other children`, for each child `f` of `e`.
    CombinedTwoOpt,
    /// `c(e) <= w(A_e)`.
    WeightBound,
    /// `2 * max child c <= w(e) - c(e) + sum of child c`.
    MaxChildBound,
    /// `c(E') <= (k / 2) * w(A)`.
    EPrime,
    /// `c(E_r) <= 2 * w(A)`.
    ERadius,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::CombinedTriangle,
        Condition::CombinedTwoOpt,
        Condition::WeightBound,
        Condition::MaxChildBound,
        Condition::EPrime,
        Condition::ERadius,
    ];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::CombinedTriangle => "combined-triangle",
            Condition::CombinedTwoOpt => "combined-two-opt",
            Condition::WeightBound => "weight-bound",
            Condition::MaxChildBound => "max-child-bound",
            Condition::EPrime => "e-prime",
            Condition::ERadius => "e-r",
        })
    }
}

/// Where the worst violation was found, as arborescence edge indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    Edge(usize),
    EdgePair(usize, usize),
    Set(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub condition: Condition,
    pub holds: bool,
    /// Minimum of `rhs - lhs` over the checked inequalities.
    pub worst_slack: Option<f64>,
    pub tolerance: f64,
    /// Location of the worst failing inequality.
    pub witness: Option<Witness>,
    pub checked: usize,
    pub k: Option<f64>,
    pub r: Option<f64>,
}

struct Checker {
    report: LemmaReport,
    worst_fail: f64,
}

impl Checker {
    fn new(condition: Condition, tolerance: f64) -> Self {
        Checker {
            report: LemmaReport {
                condition,
                holds: true,
                worst_slack: None,
                tolerance,
                witness: None,
                checked: 0,
                k: None,
                r: None,
            },
            worst_fail: f64::INFINITY,
        }
    }

    fn add(&mut self, lhs: f64, rhs: f64, witness: impl FnOnce() -> Witness) {
        let slack = rhs - lhs;
        let r = &mut self.report;
        r.checked += 1;
        r.worst_slack = Some(r.worst_slack.map_or(slack, |w| w.min(slack)));
        let scale = 1f64.max(lhs.abs()).max(rhs.abs());
        if slack < -r.tolerance * scale || slack.is_nan() {
            r.holds = false;
            if slack < self.worst_fail || r.witness.is_none() {
                self.worst_fail = slack;
                r.witness = Some(witness());
            }
        }
    }

    fn finish(self) -> LemmaReport {
        self.report
    }
}

fn child_sum(a: &WeightedArborescence, i: usize) -> f64 {
    a.children(i).iter().map(|&j| a.edge(j).c).sum()
}

fn child_max(a: &WeightedArborescence, i: usize) -> Option<f64> {
    a.children(i).iter().map(|&j| a.edge(j).c).reduce(f64::max)
}

pub fn check_combined_triangle(a: &WeightedArborescence, tolerance: f64) -> LemmaReport {
    let mut ch = Checker::new(Condition::CombinedTriangle, tolerance);
    for (i, e) in a.edges().iter().enumerate() {
        ch.add(e.c, e.w + child_sum(a, i), || Witness::Edge(i));
    }
    ch.finish()
}

pub fn check_combined_two_opt(a: &WeightedArborescence, tolerance: f64) -> LemmaReport {
    let mut ch = Checker::new(Condition::CombinedTwoOpt, tolerance);
    for (i, e) in a.edges().iter().enumerate() {
        let kids = a.children(i);
        for &f in kids {
            let others: f64 = kids.iter().filter(|&&g| g != f).map(|&g| a.edge(g).c).sum();
            ch.add(e.c + a.edge(f).c, e.w + others, || Witness::EdgePair(i, f));
        }
    }
    ch.finish()
}

pub fn check_weight_bound(a: &WeightedArborescence, tolerance: f64) -> LemmaReport {
    let mut ch = Checker::new(Condition::WeightBound, tolerance);
    for (i, (e, wa)) in a.edges().iter().zip(a.subtree_weights()).enumerate() {
        ch.add(e.c, wa, || Witness::Edge(i));
    }
    ch.finish()
}

/// Edges without children hold vacuously and are not counted.
pub fn check_max_bound(a: &WeightedArborescence, tolerance: f64) -> LemmaReport {
    let mut ch = Checker::new(Condition::MaxChildBound, tolerance);
    for (i, e) in a.edges().iter().enumerate() {
        if let Some(max) = child_max(a, i) {
            ch.add(2.0 * max, e.w - e.c + child_sum(a, i), || Witness::Edge(i));
        }
    }
    ch.finish()
}

/// Edge indices with their total `c`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EdgeSet {
    pub edges: Vec<usize>,
    pub cost: f64,
}

impl EdgeSet {
    pub(crate) fn from_filter(a: &WeightedArborescence, keep: impl Fn(usize) -> bool) -> Self {
        let edges: Vec<usize> = (0..a.len()).filter(|&i| keep(i)).collect();
        let cost = edges.iter().map(|&i| a.edge(i).c).sum();
        EdgeSet { edges, cost }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.edges.binary_search(&i).is_ok()
    }
}

/// Edges having a child longer than `c(e) / k`.
pub fn e_prime_set(a: &WeightedArborescence, k: f64) -> EdgeSet {
    EdgeSet::from_filter(a, |i| child_max(a, i).is_some_and(|m| m > a.edge(i).c / k))
}

/// Edges with `r < c(e) <= (k / 4) r` whose children all have `c <= c(e) / k`.
pub fn e_r_set(a: &WeightedArborescence, k: f64, r: f64) -> EdgeSet {
    EdgeSet::from_filter(a, |i| {
        let c = a.edge(i).c;
        r < c && c <= k / 4.0 * r && child_max(a, i).is_none_or(|m| m <= c / k)
    })
}

pub fn check_e_prime(a: &WeightedArborescence, k: f64, tolerance: f64) -> LemmaReport {
    let set = e_prime_set(a, k);
    let mut ch = Checker::new(Condition::EPrime, tolerance);
    ch.report.k = Some(k);
    ch.add(set.cost, k / 2.0 * a.w_total(), || {
        Witness::Set(set.edges.clone())
    });
    ch.finish()
}

pub fn check_e_r(a: &WeightedArborescence, k: f64, r: f64, tolerance: f64) -> LemmaReport {
    let set = e_r_set(a, k, r);
    let mut ch = Checker::new(Condition::ERadius, tolerance);
    ch.report.k = Some(k);
    ch.report.r = Some(r);
    ch.add(set.cost, 2.0 * a.w_total(), || {
        Witness::Set(set.edges.clone())
    });
    ch.finish()
}

/// `c(A) / w(A)`.
pub fn ratio_k(a: &WeightedArborescence) -> f64 {
    a.c_total() / a.w_total()
}

/// `r_i = (4 / k)^i * w(A)` for `i = 1..=max(1, floor(k / 6))`.
pub fn radii(a: &WeightedArborescence, k: f64) -> Vec<f64> {
    let m = ((k / 6.0).floor() as usize).max(1);
    let w = a.w_total();
    (1..=m).map(|i| (4.0 / k).powi(i as i32) * w).collect()
}

/// Every check: the four per-edge conditions, `E'` at `k = c(A)/w(A)` and
/// `E_r` at each certificate radius.
pub fn check_all(a: &WeightedArborescence, tolerance: f64) -> Vec<LemmaReport> {
    let mut out = vec![
        check_combined_triangle(a, tolerance),
        check_combined_two_opt(a, tolerance),
        check_weight_bound(a, tolerance),
        check_max_bound(a, tolerance),
    ];
    if a.is_empty() {
        return out;
    }
    let k = ratio_k(a);
    out.push(check_e_prime(a, k, tolerance));
    for r in radii(a, k) {
        out.push(check_e_r(a, k, r, tolerance));
    }
    out
}

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A directed edge of an arborescence with its chord length `c` and the
/// boundary weight `w` of its head.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArborEdge {
    pub from: usize,
    pub to: usize,
    pub c: f64,
    pub w: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ArborDoc {
    root: usize,
    edges: Vec<ArborEdge>,
}

/// Rooted out-tree with positive weights `c` and `w` on every edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ArborDoc", into = "ArborDoc")]
pub struct WeightedArborescence {
    root: usize,
    edges: Vec<ArborEdge>,
    /// Outgoing edge indices per vertex.
    out: BTreeMap<usize, Vec<usize>>,
    /// Edge indices, parents before children.
    preorder: Vec<usize>,
}

impl TryFrom<ArborDoc> for WeightedArborescence {
    type Error = Error;

    fn try_from(doc: ArborDoc) -> Result<Self> {
        WeightedArborescence::new(doc.root, doc.edges)
    }
}

impl From<WeightedArborescence> for ArborDoc {
    fn from(a: WeightedArborescence) -> Self {
        ArborDoc {
            root: a.root,
            edges: a.edges,
        }
    }
}

impl WeightedArborescence {
    pub fn new(root: usize, edges: Vec<ArborEdge>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidArborescence(msg));
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut heads = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            if !(e.c.is_finite() && e.c > 0.0 && e.w.is_finite() && e.w > 0.0) {
                return bad(format!("edge {i} needs finite c > 0 and w > 0"));
            }
            if e.to == root {
                return bad(format!("edge {i} enters the root"));
            }
            if heads.insert(e.to, i).is_some() {
                return bad(format!("vertex {} has in-degree above 1", e.to));
            }
            out.entry(e.from).or_default().push(i);
        }
        let mut preorder = Vec::with_capacity(edges.len());
        let mut stack: Vec<usize> = out
            .get(&root)
            .into_iter()
            .flatten()
            .rev()
            .copied()
            .collect();
        while let Some(i) = stack.pop() {
            preorder.push(i);
            if let Some(next) = out.get(&edges[i].to) {
                stack.extend(next.iter().rev());
            }
        }
        if preorder.len() != edges.len() {
            return bad("some edges are not reachable from the root".into());
        }
        Ok(WeightedArborescence {
            root,
            edges,
            out,
            preorder,
        })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn edges(&self) -> &[ArborEdge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &ArborEdge {
        &self.edges[i]
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.edges.len() + 1
    }

    /// Edge indices leaving vertex `v`.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        self.out.get(&v).map_or(&[], Vec::as_slice)
    }

    /// Edge indices leaving the head of edge `i`.
    pub fn children(&self, i: usize) -> &[usize] {
        self.out_edges(self.edges[i].to)
    }

    pub fn preorder(&self) -> &[usize] {
        &self.preorder
    }

    pub fn c_total(&self) -> f64 {
        self.edges.iter().map(|e| e.c).sum()
    }

    pub fn w_total(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// `w(A_e)` for every edge: its own `w` plus that of all descendants.
    pub fn subtree_weights(&self) -> Vec<f64> {
        let mut acc: Vec<f64> = self.edges.iter().map(|e| e.w).collect();
        for &i in self.preorder.iter().rev() {
            let below: f64 = self.children(i).iter().map(|&j| acc[j]).sum();
            acc[i] += below;
        }
        acc
    }

    /// Number of edges on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        let mut depth = vec![0usize; self.edges.len()];
        let mut best = 0;
        for &i in &self.preorder {
            let d = depth[i] + 1;
            best = best.max(d);
            for &j in self.children(i) {
                depth[j] = d;
            }
        }
        best
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ArborDoc = serde_json::from_str(text)?;
        Self::try_from(doc)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(from: usize, to: usize, c: f64, w: f64) -> ArborEdge {
        ArborEdge { from, to, c, w }
    }

    #[test]
    fn subtree_weights_and_height() {
        let a = WeightedArborescence::new(
            0,
            vec![
                e(0, 1, 1.0, 1.0),
                e(1, 2, 1.0, 2.0),
                e(1, 3, 1.0, 3.0),
                e(3, 4, 1.0, 4.0),
            ],
        )
        .unwrap();
        assert_eq!(a.subtree_weights(), vec![10.0, 2.0, 7.0, 4.0]);
        assert_eq!(a.height(), 3);
        assert_eq!(a.children(0), &[1, 2]);
        assert_eq!(a.vertex_count(), 5);
    }

    #[test]
    fn rejects_malformed_trees() {
        assert!(WeightedArborescence::new(0, vec![e(0, 1, 1.0, 0.0)]).is_err());
        assert!(WeightedArborescence::new(0, vec![e(0, 1, 1.0, 1.0), e(2, 1, 1.0, 1.0)]).is_err());
        assert!(WeightedArborescence::new(0, vec![e(1, 0, 1.0, 1.0)]).is_err());
        // A detached cycle.
        assert!(WeightedArborescence::new(
            0,
            vec![e(0, 1, 1.0, 1.0), e(2, 3, 1.0, 1.0), e(3, 2, 1.0, 1.0)]
        )
        .is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"root": 7, "edges": [{"from": 7, "to": 3, "c": 5.0, "w": 3.0}]}"#;
        let a = WeightedArborescence::from_json(text).unwrap();
        assert_eq!(a.root(), 7);
        let back = WeightedArborescence::from_json(&a.to_json().unwrap()).unwrap();
        assert_eq!(back, a);
        assert!(WeightedArborescence::from_json(
            r#"{"root": 0, "edges": [{"from": 0, "to": 0, "c": 1, "w": 1}]}"#
        )
        .is_err());
    }
}

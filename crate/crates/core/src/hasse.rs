//! Covering relations of `≤^ε` and their DOT export.

use std::fmt::Write;

use crate::adherence::Epsilon;
use crate::renner::{RennerElement, RennerError, RennerSystem};
use crate::verify::order_matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hasse {
    pub labels: Vec<String>,
    /// `(i, j)`: `j` covers `i`.
    pub covers: Vec<(usize, usize)>,
}

/// Transitive reduction of a reflexive order matrix.
pub fn covering_relation(order: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = order.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !order[i][j] {
                continue;
            }
            if !(0..n).any(|k| k != i && k != j && order[i][k] && order[k][j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// The diagram of `≤^ε` restricted to `elements`.
pub fn hasse(sys: &RennerSystem, elements: &[RennerElement], eps: Epsilon) -> Result<Hasse, RennerError> {
    let order = order_matrix(sys, elements, eps)?;
    Ok(Hasse { labels: elements.iter().map(|r| sys.format_element(r)).collect(), covers: covering_relation(&order) })
}

impl Hasse {
    /// Edges point upward, from `r` to the elements covering it.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for (i, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for (i, j) in &self.covers {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }

    /// Kahn's algorithm on the cover edges.
    pub fn is_acyclic(&self) -> bool {
        let n = self.labels.len();
        let mut indeg = vec![0usize; n];
        for &(_, j) in &self.covers {
            indeg[j] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = queue.pop() {
            seen += 1;
            for &(a, b) in &self.covers {
                if a == i {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        queue.push(b);
                    }
                }
            }
        }
        seen == n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::renner::rook_system;

    #[test]
    fn chain_reduces_to_successors() {
        let order: Vec<Vec<bool>> = (0..4).map(|i| (0..4).map(|j| i <= j).collect()).collect();
        assert_eq!(covering_relation(&order), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn r2_diagram() {
        let sys = rook_system(2).unwrap();
        let els = sys.enumerate().unwrap();
        let h = hasse(&sys, &els, Epsilon::Plus).unwrap();
        assert_eq!(h.labels.len(), 7);
        assert!(h.is_acyclic());
        let dot = h.to_dot();
        assert!(dot.starts_with("digraph hasse {"));
        assert_eq!(dot.matches("->").count(), h.covers.len());
        // The zero element is the unique minimum.
        let zero = h.labels.iter().position(|l| l == "0,0").unwrap();
        assert!(h.covers.iter().all(|&(_, j)| j != zero));
    }
}

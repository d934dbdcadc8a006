use std::collections::{BTreeSet, HashMap};

use crate::digits::DigitSystem;
use crate::error::{Error, Result};
use crate::quotient::QuotElem;
use crate::rings::CoeffRing;

/// The functional graph `v -> T(v)` on a finite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitGraph<T> {
    /// Sorted by canonical print.
    pub nodes: Vec<QuotElem<T>>,
    pub labels: Vec<String>,
    /// `successor[i]` is the index of `T(nodes[i])`.
    pub successor: Vec<usize>,
}

impl<T> OrbitGraph<T> {
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.successor
            .iter()
            .enumerate()
            .map(|(i, &j)| (self.labels[i].as_str(), self.labels[j].as_str()))
    }

    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        self.edges().any(|(a, b)| a == from && b == to)
    }

    /// Graphviz text, one edge per node in node order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for (a, b) in self.edges() {
            out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the graph on `v` and the `T`-images needed to close it, allowing
/// at most `extra` nodes beyond `v`.
pub fn orbit_graph<R: CoeffRing>(
    sys: &DigitSystem<R>,
    v: &[QuotElem<R::Elem>],
    extra: usize,
) -> Result<OrbitGraph<R::Elem>> {
    let quot = sys.quot();
    let mut set: BTreeSet<QuotElem<R::Elem>> = v.iter().cloned().collect();
    let limit = set.len() + extra;
    let mut next: HashMap<QuotElem<R::Elem>, QuotElem<R::Elem>> = HashMap::new();
    let mut pending: Vec<_> = set.iter().cloned().collect();
    while let Some(a) = pending.pop() {
        let t = sys.step(&a);
        if set.insert(t.clone()) {
            if set.len() > limit {
                return Err(Error::Precondition(format!(
                    "orbit graph does not close within {extra} extra nodes"
                )));
            }
            pending.push(t.clone());
        }
        next.insert(a, t);
    }
    let mut labelled: Vec<(String, QuotElem<R::Elem>)> =
        set.into_iter().map(|a| (quot.format(&a), a)).collect();
    labelled.sort_by(|x, y| x.0.cmp(&y.0));
    let index: HashMap<&QuotElem<R::Elem>, usize> =
        labelled.iter().enumerate().map(|(i, (_, a))| (a, i)).collect();
    let successor = labelled.iter().map(|(_, a)| index[&next[a]]).collect();
    let (labels, nodes) = labelled.into_iter().unzip();
    Ok(OrbitGraph {
        nodes,
        labels,
        successor,
    })
}

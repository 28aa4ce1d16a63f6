use std::collections::{BTreeSet, HashSet};

use super::graph::Digraph;
use crate::error::{invalid, Error, Result};
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Debug)]
pub struct CayleyDigraph {
    pub digraph: Digraph,
    /// `S = S^-1`.
    pub is_graph: bool,
    /// `<S> = R`.
    pub is_connected: bool,
    pub out_valency: usize,
}

/// The element of the regular group `r` taking point 0 to each point.
pub fn regular_labels(r: &PermGroup) -> Result<Vec<Permutation>> {
    let n = r.degree();
    if r.order() != n as u128 || !r.is_transitive() {
        return invalid("group is not regular");
    }
    let mut by_point: Vec<Option<Permutation>> = vec![None; n];
    r.try_for_each_element(n as u128, |x| {
        by_point[x.apply(0)] = Some(x.clone());
        true
    })?;
    Ok(by_point.into_iter().map(|x| x.expect("regular")).collect())
}

/// Connection set given as points: point `p` stands for the element of `r`
/// mapping 0 to `p`.
pub fn connection_set_from_points(r: &PermGroup, points: &[usize]) -> Result<Vec<Permutation>> {
    let labels = regular_labels(r)?;
    points
        .iter()
        .map(|&p| {
            labels
                .get(p)
                .cloned()
                .ok_or_else(|| Error::InvalidInput(format!("point {p} outside the group")))
        })
        .collect()
}

/// `Cay(R, S)` on the points of the regular group `R`, vertex `v` standing
/// for the element mapping 0 to `v`; `(x, y)` is an arc iff `y x^-1 ∈ S`.
pub fn cayley_digraph(r: &PermGroup, s: &[Permutation]) -> Result<CayleyDigraph> {
    let labels = regular_labels(r)?;
    let n = r.degree();
    let mut set = BTreeSet::new();
    for x in s {
        if x.degree() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: x.degree(),
            });
        }
        if x.is_identity() {
            return invalid("connection set contains the identity");
        }
        if !r.has(x) {
            return invalid("connection set element lies outside R");
        }
        set.insert(x.clone());
    }
    let mut arcs = Vec::with_capacity(n * set.len());
    for (v, x) in labels.iter().enumerate() {
        for sx in &set {
            arcs.push((v, x.apply(sx.apply(0))));
        }
    }
    let digraph = Digraph::new(n, arcs)?;
    let inverses: HashSet<Permutation> = set.iter().map(|x| x.inverse()).collect();
    let is_graph = set.iter().all(|x| inverses.contains(x));
    let is_connected = if set.is_empty() {
        n == 1
    } else {
        PermGroup::new(n, set.iter().cloned().collect())?.order() == n as u128
    };
    Ok(CayleyDigraph {
        digraph,
        is_graph,
        is_connected,
        out_valency: set.len(),
    })
}

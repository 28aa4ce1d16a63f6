use std::collections::BTreeMap;

use super::graph::Digraph;
use crate::error::{Error, Result};
use crate::perm::PermGroup;

/// `Δ_N`: the digraph on `N`-orbits with an arc `(B, C)` whenever `B ≠ C`
/// and some arc of `Δ` runs from `B` to `C`.
#[derive(Clone, Debug)]
pub struct QuotientDigraph {
    /// `N`-orbits, sorted, by least vertex.
    pub orbits: Vec<Vec<usize>>,
    /// Orbit index of each vertex.
    pub orbit_of: Vec<usize>,
    pub digraph: Digraph,
}

pub fn quotient_digraph(delta: &Digraph, n: &PermGroup) -> Result<QuotientDigraph> {
    if n.degree() != delta.vertex_count() {
        return Err(Error::DegreeMismatch {
            expected: delta.vertex_count(),
            found: n.degree(),
        });
    }
    for (i, g) in n.generators().iter().enumerate() {
        if let Some(&(a, b)) = delta
            .arcs()
            .iter()
            .find(|&&(a, b)| !delta.has_arc(g.apply(a as usize), g.apply(b as usize)))
        {
            return Err(Error::Precondition(format!(
                "generator {i} of N does not preserve arc ({a}, {b})"
            )));
        }
    }
    let orbits = n.orbits();
    let mut orbit_of = vec![0; delta.vertex_count()];
    for (i, o) in orbits.iter().enumerate() {
        for &v in o {
            orbit_of[v] = i;
        }
    }
    let arcs = delta
        .arcs()
        .iter()
        .map(|&(a, b)| (orbit_of[a as usize], orbit_of[b as usize]))
        .filter(|(b, c)| b != c);
    let digraph = Digraph::new(orbits.len(), arcs)?;
    Ok(QuotientDigraph {
        orbits,
        orbit_of,
        digraph,
    })
}

impl QuotientDigraph {
    /// `|C ∩ Δ(α)|` for every orbit `C` meeting the out-neighbourhood of `α`
    /// (including `α`'s own orbit).
    pub fn neighborhood_split(&self, delta: &Digraph, alpha: usize) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for &b in delta.out_neighbors(alpha) {
            *counts.entry(self.orbit_of[b as usize]).or_default() += 1;
        }
        counts
    }
}

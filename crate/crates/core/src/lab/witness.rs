use serde::Serialize;

use super::action::{orbit_decomposition, CertifiedAction, ObjectKind};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// A 2-element `x ∈ N_G(G_αβ)` with `x² ∈ G_αβ` and `⟨x, G_α⟩ = G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcWitness {
    pub edge: [usize; 2],
    pub x: Vec<u32>,
    pub x_order: u64,
    pub normalizes_arc_stabilizer: bool,
    pub square_in_arc_stabilizer: bool,
    pub generates_with_vertex_stabilizer: bool,
}

/// Finds the least qualifying `x` in lexicographic order of image arrays.
/// Candidates are streamed from the group; generation is decided by
/// transitivity of `⟨x, G_α⟩`, which together with `G_α ≤ ⟨x, G_α⟩` forces
/// equality with the transitive `G`.
pub fn find_arc_witness(act: &CertifiedAction, edge: (usize, usize), cap: u128) -> Result<ArcWitness> {
    let (a, b) = edge;
    let gamma = act.graph();
    let g = act.group();
    if !gamma.has_edge(a, b) {
        return Err(Error::InvalidInput(format!("{{{a}, {b}}} is not an edge")));
    }
    if !gamma.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    if orbit_decomposition(act, ObjectKind::Arc).count() != 1 {
        return Err(Error::Precondition("G is not arc-transitive".into()));
    }
    let g_a = g.point_stabilizer(a)?;
    let g_ab = g.pointwise_stabilizer(&[a, b])?;
    let ab_gens: Vec<&Permutation> = g_ab.generators().iter().filter(|s| !s.is_identity()).collect();
    let mut candidates = Vec::new();
    g.try_for_each_element(cap, |x| {
        if x.is_identity() || !x.order().is_power_of_two() {
            return true;
        }
        if !g_ab.has(&x.then(x)) {
            return true;
        }
        if ab_gens.iter().all(|s| g_ab.has(&s.conjugate_by(x))) {
            candidates.push(x.clone());
        }
        true
    })?;
    candidates.sort();
    for x in candidates {
        let joined = PermGroup::new(g.degree(), {
            let mut v = g_a.generators().to_vec();
            v.push(x.clone());
            v
        })?;
        if joined.is_transitive() {
            return Ok(ArcWitness {
                edge: [a, b],
                x_order: x.order(),
                x: x.images().to_vec(),
                normalizes_arc_stabilizer: true,
                square_in_arc_stabilizer: true,
                generates_with_vertex_stabilizer: true,
            });
        }
    }
    Err(Error::SearchFailed(format!(
        "no 2-element normalizing G_αβ for edge {{{a}, {b}}} generates G with G_α"
    )))
}

/// Independent re-check of the three witness conditions.
pub fn recheck_arc_witness(act: &CertifiedAction, w: &ArcWitness) -> bool {
    let g = act.group();
    let Ok(x) = Permutation::from_images(w.x.clone()) else {
        return false;
    };
    let [a, b] = w.edge;
    let (Ok(g_a), Ok(g_ab)) = (g.point_stabilizer(a), g.pointwise_stabilizer(&[a, b])) else {
        return false;
    };
    let normalizes = g_ab.generators().iter().all(|s| g_ab.has(&s.conjugate_by(&x)));
    let square = g_ab.has(&x.then(&x));
    let generates = g_a.join(&[x.clone()]).map_or(false, |j| j.order() == g.order());
    g.has(&x) && x.order().is_power_of_two() && normalizes && square && generates
}

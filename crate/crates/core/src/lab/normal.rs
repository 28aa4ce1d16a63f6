use serde::Serialize;

use super::action::{certify_action, orbit_decomposition, CertifiedAction, ObjectKind};
use crate::error::{Error, Result};
use crate::forge::{quotient_digraph, Graph};
use crate::perm::primes::{is_prime, p_part};
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseTag {
    Semiregular,
    #[serde(rename = "STABILIZER_2GROUP")]
    Stabilizer2Group,
    CycleQuotient,
    BipartiteHalves,
    NEdgeTransitive,
    PairedEdgePartition,
}

/// `E = E1 ∪ E2` with `E1^g = E2` for some `g ∈ G \ N`; each half is
/// `N`-arc-transitive of valency `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairedPartition {
    pub e1: Vec<[u32; 2]>,
    pub e2: Vec<[u32; 2]>,
    pub swap: Vec<u32>,
    pub half_valency: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalClassification {
    pub tags: Vec<CaseTag>,
    pub normal_order: u128,
    pub stabilizer_order: u128,
    pub vertex_orbits: usize,
    pub edge_orbits: usize,
    pub arc_orbits: usize,
    /// Valency of `Γ_N` when `N` is intransitive.
    pub quotient_valency: Option<usize>,
    /// Whether `Γ_N` has valency `r` or `N` has at most two orbits; only
    /// meaningful alongside `STABILIZER_2GROUP`.
    pub quotient_branch: Option<bool>,
    pub partition: Option<PairedPartition>,
}

/// Tags every case of the normal-subgroup dichotomy for edge-transitive
/// actions that applies to `(G, N, Γ)`. When the graph is connected of valency
/// `2r` (`r` prime), `N ≠ 1` and `G` is not 2-arc-transitive, at least one tag
/// must apply; an empty result there is reported as an inconsistency.
pub fn classify_normal_subgroup(
    act: &CertifiedAction,
    n: &PermGroup,
) -> Result<NormalClassification> {
    let g = act.group();
    let gamma = act.graph();
    if !n.is_normal_in(g) {
        return Err(Error::Precondition("N is not a normal subgroup of G".into()));
    }
    let nact = act.with_group(n)?;
    let g_edges = orbit_decomposition(act, ObjectKind::Edge);
    if gamma.edge_count() == 0 || g_edges.count() != 1 {
        return Err(Error::Precondition("G is not edge-transitive".into()));
    }
    let v_orbits = orbit_decomposition(&nact, ObjectKind::Vertex);
    let e_orbits = orbit_decomposition(&nact, ObjectKind::Edge);
    let a_orbits = orbit_decomposition(&nact, ObjectKind::Arc);
    let normal_order = n.order();
    let stabilizer_order = normal_order / v_orbits.orbits[0].len() as u128;
    let semiregular = v_orbits.orbits.iter().all(|o| o.len() as u128 == normal_order);
    let valency = gamma.valency();
    let r = valency.filter(|d| d % 2 == 0).map(|d| d / 2);

    let mut tags = Vec::new();
    if semiregular {
        tags.push(CaseTag::Semiregular);
    }

    let mut quotient_valency = None;
    let mut quotient_graph: Option<Graph> = None;
    if v_orbits.count() > 1 {
        let q = quotient_digraph(&gamma.to_digraph(), n)?;
        let qg = q.digraph.to_graph()?;
        quotient_valency = qg.valency();
        quotient_graph = Some(qg);
    }

    let mut quotient_branch = None;
    if stabilizer_order > 1 && p_part(stabilizer_order, 2) == stabilizer_order {
        tags.push(CaseTag::Stabilizer2Group);
        quotient_branch = Some(v_orbits.count() <= 2 || (r.is_some() && quotient_valency == r));
    }

    if let Some(qg) = &quotient_graph {
        if v_orbits.count() >= 3 && qg.valency() == Some(2) && qg.is_connected() {
            tags.push(CaseTag::CycleQuotient);
        }
    }

    if v_orbits.count() == 2 {
        let mut side = vec![0; gamma.vertex_count()];
        for &v in &v_orbits.orbits[1] {
            side[v] = 1;
        }
        if gamma.edges().iter().all(|&(u, v)| side[u as usize] != side[v as usize]) {
            tags.push(CaseTag::BipartiteHalves);
        }
    }

    if v_orbits.count() == 1 && e_orbits.count() == 1 {
        tags.push(CaseTag::NEdgeTransitive);
    }

    let partition = paired_partition(act, &nact, &e_orbits.orbits, a_orbits.count());
    if partition.is_some() {
        tags.push(CaseTag::PairedEdgePartition);
    }

    let hypotheses = gamma.is_connected()
        && r.map_or(false, |r| is_prime(r as u128))
        && !g.is_trivial()
        && normal_order > 1
        && !super::action::transitivity_profile(act).two_arc_transitive;
    if hypotheses && tags.is_empty() {
        return Err(Error::Inconsistency(format!(
            "no case of the normal-subgroup dichotomy applies: |N| = {normal_order}, \
             |N_α| = {stabilizer_order}, {} vertex orbits, {} edge orbits",
            v_orbits.count(),
            e_orbits.count()
        )));
    }

    Ok(NormalClassification {
        tags,
        normal_order,
        stabilizer_order,
        vertex_orbits: v_orbits.count(),
        edge_orbits: e_orbits.count(),
        arc_orbits: a_orbits.count(),
        quotient_valency,
        quotient_branch,
        partition,
    })
}

fn paired_partition(
    act: &CertifiedAction,
    nact: &CertifiedAction,
    edge_orbits: &[Vec<usize>],
    n_arc_orbits: usize,
) -> Option<PairedPartition> {
    let gamma = act.graph();
    if edge_orbits.len() != 2 || n_arc_orbits != 2 {
        return None;
    }
    let edges = gamma.edges();
    let half = |o: &[usize]| o.iter().map(|&e| [edges[e].0, edges[e].1]).collect::<Vec<_>>();
    let e1 = half(&edge_orbits[0]);
    let e2 = half(&edge_orbits[1]);
    let swap = act
        .group()
        .generators()
        .iter()
        .find(|x| maps_onto(x, &e1, &e2) && maps_onto(x, &e2, &e1))?;
    let half_valency = gamma.valency()? / 2;
    let w = PairedPartition {
        e1,
        e2,
        swap: swap.images().to_vec(),
        half_valency,
    };
    recheck_paired_partition(&w, act.group(), nact.group(), gamma).then_some(w)
}

fn maps_onto(x: &Permutation, from: &[[u32; 2]], to: &[[u32; 2]]) -> bool {
    from.iter().all(|&[u, v]| {
        let (a, b) = (x.apply(u as usize) as u32, x.apply(v as usize) as u32);
        to.binary_search(&[a.min(b), a.max(b)]).is_ok()
    })
}

/// Re-derives every stated property of a paired partition witness from the
/// raw data: disjoint halves covering `E`, `E1^g = E2` and `E2^g = E1` with
/// `g ∈ G \ N`, and each `(V, E_i)` `N`-arc-transitive of valency `r`.
pub fn recheck_paired_partition(w: &PairedPartition, g: &PermGroup, n: &PermGroup, gamma: &Graph) -> bool {
    let Ok(swap) = Permutation::from_images(w.swap.clone()) else {
        return false;
    };
    if swap.degree() != gamma.vertex_count() || !g.has(&swap) || n.has(&swap) {
        return false;
    }
    let mut all: Vec<[u32; 2]> = w.e1.iter().chain(&w.e2).copied().collect();
    all.sort_unstable();
    let expected: Vec<[u32; 2]> = gamma.edges().iter().map(|&(u, v)| [u, v]).collect();
    if all != expected || w.e1.len() != w.e2.len() {
        return false;
    }
    if !maps_onto(&swap, &w.e1, &w.e2) || !maps_onto(&swap, &w.e2, &w.e1) {
        return false;
    }
    [&w.e1, &w.e2].iter().all(|half| {
        let Ok(h) = Graph::new(
            gamma.vertex_count(),
            half.iter().map(|e| (e[0] as usize, e[1] as usize)),
        ) else {
            return false;
        };
        if h.valency() != Some(w.half_valency) {
            return false;
        }
        match certify_action(n, &h) {
            Ok(a) => orbit_decomposition(&a, ObjectKind::Arc).count() == 1,
            Err(_) => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn rotations_are_semiregular_on_cycles() {
        let n = 7;
        let rot = Permutation::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap();
        let refl = Permutation::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect()).unwrap();
        let d = PermGroup::new(n, vec![rot.clone(), refl.clone()]).unwrap();
        let act = certify_action(&d, &cycle(n)).unwrap();
        let c = classify_normal_subgroup(&act, &PermGroup::new(n, vec![rot]).unwrap()).unwrap();
        assert!(c.tags.contains(&CaseTag::Semiregular));
        assert!(c.tags.contains(&CaseTag::NEdgeTransitive));
        let bad = PermGroup::new(n, vec![refl]).unwrap();
        assert!(classify_normal_subgroup(&act, &bad).is_err());
    }
}

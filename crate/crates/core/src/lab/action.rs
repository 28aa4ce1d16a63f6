use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forge::Graph;
use crate::perm::{is_primitive, PermGroup, Permutation};

/// A group action on a graph whose generators have all been checked to be
/// automorphisms. Every analysis takes one of these.
#[derive(Clone, Debug)]
pub struct CertifiedAction {
    group: PermGroup,
    graph: Graph,
    objects: OnceLock<ObjectIndex>,
}

pub fn certify_action(g: &PermGroup, gamma: &Graph) -> Result<CertifiedAction> {
    if g.degree() != gamma.vertex_count() {
        return Err(Error::DegreeMismatch {
            expected: gamma.vertex_count(),
            found: g.degree(),
        });
    }
    for (i, x) in g.generators().iter().enumerate() {
        if let Err((u, v)) = gamma.check_automorphism(x) {
            return Err(Error::NotAutomorphism {
                generator: i,
                u,
                v,
                iu: x.apply(u),
                iv: x.apply(v),
            });
        }
    }
    Ok(CertifiedAction {
        group: g.clone(),
        graph: gamma.clone(),
        objects: OnceLock::new(),
    })
}

impl CertifiedAction {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub(crate) fn objects(&self) -> &ObjectIndex {
        self.objects.get_or_init(|| ObjectIndex::new(&self.graph))
    }

    /// The same graph under a different group, certified afresh.
    pub fn with_group(&self, g: &PermGroup) -> Result<CertifiedAction> {
        let mut c = certify_action(g, &self.graph)?;
        c.objects = self.objects.clone();
        Ok(c)
    }
}

/// Canonical numbering of arcs and 2-arcs: arcs `(u, v)` in lexicographic
/// order, 2-arcs `(u, v, w)` likewise.
#[derive(Clone, Debug)]
pub(crate) struct ObjectIndex {
    arc_offset: Vec<usize>,
    two_arc_offset: Vec<usize>,
    arcs: Vec<(u32, u32)>,
}

impl ObjectIndex {
    fn new(g: &Graph) -> ObjectIndex {
        let n = g.vertex_count();
        let mut arc_offset = Vec::with_capacity(n + 1);
        let mut arcs = Vec::new();
        arc_offset.push(0);
        for u in 0..n {
            for &v in g.neighbors(u) {
                arcs.push((u as u32, v));
            }
            arc_offset.push(arcs.len());
        }
        let mut two_arc_offset = Vec::with_capacity(arcs.len() + 1);
        two_arc_offset.push(0);
        let mut total = 0;
        for &(_, v) in &arcs {
            total += g.degree(v as usize) - 1;
            two_arc_offset.push(total);
        }
        ObjectIndex {
            arc_offset,
            two_arc_offset,
            arcs,
        }
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn two_arc_count(&self) -> usize {
        *self.two_arc_offset.last().unwrap_or(&0)
    }

    pub fn arc(&self, i: usize) -> (usize, usize) {
        let (u, v) = self.arcs[i];
        (u as usize, v as usize)
    }

    pub fn arc_index(&self, g: &Graph, u: usize, v: usize) -> usize {
        let pos = g.neighbors(u).binary_search(&(v as u32)).expect("arc of the graph");
        self.arc_offset[u] + pos
    }

    pub fn two_arc_index(&self, g: &Graph, u: usize, v: usize, w: usize) -> usize {
        let a = self.arc_index(g, u, v);
        let nb = g.neighbors(v);
        let pu = nb.binary_search(&(u as u32)).expect("arc of the graph");
        let pw = nb.binary_search(&(w as u32)).expect("arc of the graph");
        self.two_arc_offset[a] + if pw > pu { pw - 1 } else { pw }
    }

    pub fn two_arc(&self, g: &Graph, i: usize) -> (usize, usize, usize) {
        let a = self.two_arc_offset.partition_point(|&o| o <= i) - 1;
        let (u, v) = self.arc(a);
        let nb = g.neighbors(v);
        let pu = nb.binary_search(&(u as u32)).expect("arc of the graph");
        let mut pw = i - self.two_arc_offset[a];
        if pw >= pu {
            pw += 1;
        }
        (u, v, nb[pw] as usize)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ObjectKind {
    Vertex,
    Edge,
    Arc,
    TwoArc,
}

/// Orbits on vertices, edges, arcs or 2-arcs, as sorted lists of canonical
/// object indices. Orbits are listed by least index, which is also the
/// representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    pub kind: ObjectKind,
    pub orbits: Vec<Vec<usize>>,
    pub representatives: Vec<usize>,
}

impl OrbitDecomposition {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    /// Orbit index of every object.
    pub fn orbit_of(&self) -> Vec<usize> {
        let total = self.orbits.iter().map(Vec::len).sum();
        let mut out = vec![0; total];
        for (i, o) in self.orbits.iter().enumerate() {
            for &x in o {
                out[x] = i;
            }
        }
        out
    }
}

/// Work-queue closure over object indices under the generators.
fn orbits_by<F>(count: usize, gens: &[Permutation], image: F) -> Vec<Vec<usize>>
where
    F: Fn(&Permutation, usize) -> usize,
{
    let mut seen = vec![false; count];
    let mut orbits = Vec::new();
    for start in 0..count {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in gens {
                let y = image(g, x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

pub fn orbit_decomposition(act: &CertifiedAction, kind: ObjectKind) -> OrbitDecomposition {
    let g = &act.graph;
    let gens = act.group.generators();
    let orbits = match kind {
        ObjectKind::Vertex => orbits_by(g.vertex_count(), gens, |x, v| x.apply(v)),
        ObjectKind::Edge => orbits_by(g.edge_count(), gens, |x, e| {
            let (u, v) = g.edges()[e];
            g.edge_index(x.apply(u as usize), x.apply(v as usize))
                .expect("certified automorphism")
        }),
        ObjectKind::Arc => {
            let idx = act.objects();
            orbits_by(idx.arc_count(), gens, |x, a| {
                let (u, v) = idx.arc(a);
                idx.arc_index(g, x.apply(u), x.apply(v))
            })
        }
        ObjectKind::TwoArc => {
            let idx = act.objects();
            orbits_by(idx.two_arc_count(), gens, |x, t| {
                let (u, v, w) = idx.two_arc(g, t);
                idx.two_arc_index(g, x.apply(u), x.apply(v), x.apply(w))
            })
        }
    };
    let representatives = orbits.iter().map(|o| o[0]).collect();
    OrbitDecomposition {
        kind,
        orbits,
        representatives,
    }
}

/// Arcs of the orbits as `(u, v)` pairs.
pub fn arc_orbit_arcs(act: &CertifiedAction, orbit: &[usize]) -> Vec<(u32, u32)> {
    let idx = act.objects();
    orbit
        .iter()
        .map(|&a| {
            let (u, v) = idx.arc(a);
            (u as u32, v as u32)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityProfile {
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub arc_transitive: bool,
    pub two_arc_transitive: bool,
    pub primitive: bool,
    pub vertex_orbits: usize,
    pub edge_orbits: usize,
    pub arc_orbits: usize,
    /// `None` when the 2-arc orbits were not computed because the action is
    /// not arc-transitive.
    pub two_arc_orbits: Option<usize>,
}

/// Flags from exact orbit counts. Primitivity is only tested for
/// vertex-transitive actions.
pub fn transitivity_profile(act: &CertifiedAction) -> TransitivityProfile {
    let vertex_orbits = orbit_decomposition(act, ObjectKind::Vertex).count();
    let edge_orbits = orbit_decomposition(act, ObjectKind::Edge).count();
    let arc_orbits = orbit_decomposition(act, ObjectKind::Arc).count();
    let has_edges = act.graph.edge_count() > 0;
    let vertex_transitive = vertex_orbits == 1;
    let edge_transitive = has_edges && edge_orbits == 1;
    let arc_transitive = has_edges && arc_orbits == 1;
    let two_arc_orbits = arc_transitive.then(|| orbit_decomposition(act, ObjectKind::TwoArc).count());
    let two_arc_transitive = two_arc_orbits.map_or(false, |c| c <= 1);
    let primitive = vertex_transitive && {
        let all: Vec<usize> = (0..act.graph.vertex_count()).collect();
        is_primitive(&act.group, &all).map_or(false, |p| p.primitive)
    };
    TransitivityProfile {
        vertex_transitive,
        edge_transitive,
        arc_transitive,
        two_arc_transitive,
        primitive,
        vertex_orbits,
        edge_orbits,
        arc_orbits,
        two_arc_orbits,
    }
}

/// `G_α` acting on `Γ(α)`.
#[derive(Clone, Debug)]
pub struct LocalAction {
    pub vertex: usize,
    /// `Γ(α)` in ascending order; the induced group acts on positions.
    pub neighborhood: Vec<usize>,
    pub stabilizer: PermGroup,
    pub induced: PermGroup,
    /// `|G_α^{[1]}|`.
    pub kernel_order: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalActionSummary {
    pub vertex: usize,
    pub valency: usize,
    pub stabilizer_order: u128,
    pub induced_order: u128,
    pub kernel_order: u128,
    pub induced_transitive: bool,
    pub induced_two_transitive: bool,
}

pub fn local_action(act: &CertifiedAction, alpha: usize) -> Result<LocalAction> {
    let n = act.graph.vertex_count();
    if alpha >= n {
        return Err(Error::InvalidInput(format!("vertex {alpha} outside 0..{n}")));
    }
    let neighborhood: Vec<usize> = act.graph.neighbors(alpha).iter().map(|&v| v as usize).collect();
    if neighborhood.is_empty() {
        return Err(Error::Precondition(format!("vertex {alpha} is isolated")));
    }
    let stabilizer = act.group.point_stabilizer(alpha)?;
    let induced = stabilizer.restrict_to(&neighborhood)?;
    let kernel_order = stabilizer.order() / induced.order();
    Ok(LocalAction {
        vertex: alpha,
        neighborhood,
        stabilizer,
        induced,
        kernel_order,
    })
}

impl LocalAction {
    pub fn is_transitive(&self) -> bool {
        self.induced.is_transitive()
    }

    pub fn is_two_transitive(&self) -> bool {
        let d = self.neighborhood.len();
        if !self.is_transitive() {
            return false;
        }
        if d <= 2 {
            return true;
        }
        match self.induced.point_stabilizer(0) {
            Ok(s) => s.orbit(1).len() == d - 1,
            Err(_) => false,
        }
    }

    pub fn summary(&self) -> LocalActionSummary {
        LocalActionSummary {
            vertex: self.vertex,
            valency: self.neighborhood.len(),
            stabilizer_order: self.stabilizer.order(),
            induced_order: self.induced.order(),
            kernel_order: self.kernel_order,
            induced_transitive: self.is_transitive(),
            induced_two_transitive: self.is_two_transitive(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Pairing {
    SelfPaired,
    PairedWith(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcPairing {
    /// Pairing of each arc orbit (indexed as in the ARC decomposition).
    pub pairing: Vec<Pairing>,
    pub self_paired: usize,
    pub mutual_pairs: usize,
}

pub fn arc_pairing(act: &CertifiedAction) -> ArcPairing {
    let dec = orbit_decomposition(act, ObjectKind::Arc);
    let orbit_of = dec.orbit_of();
    let idx = act.objects();
    let pairing: Vec<Pairing> = dec
        .representatives
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let (u, v) = idx.arc(a);
            let j = orbit_of[idx.arc_index(&act.graph, v, u)];
            if i == j {
                Pairing::SelfPaired
            } else {
                Pairing::PairedWith(j)
            }
        })
        .collect();
    let self_paired = pairing.iter().filter(|p| **p == Pairing::SelfPaired).count();
    ArcPairing {
        mutual_pairs: (pairing.len() - self_paired) / 2,
        self_paired,
        pairing,
    }
}

/// Prime divisors of `|X|` as a sorted set.
pub fn pi(order: u128) -> BTreeSet<u128> {
    crate::perm::prime_divisors(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forge::complete_graph;
    use crate::catalog::{catalog_group, GroupRecipe};

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn rotation(n: usize) -> Permutation {
        Permutation::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap()
    }

    fn reflection(n: usize) -> Permutation {
        Permutation::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect()).unwrap()
    }

    #[test]
    fn rotation_certifies_on_c5() {
        let g = PermGroup::new(5, vec![rotation(5)]).unwrap();
        assert!(certify_action(&g, &cycle(5)).is_ok());
    }

    #[test]
    fn transposition_on_path_is_rejected() {
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let t = PermGroup::new(3, vec![Permutation::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        match certify_action(&t, &path) {
            Err(Error::NotAutomorphism { generator: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn two_arc_indexing_round_trips() {
        let k4 = complete_graph(4).unwrap();
        let idx = ObjectIndex::new(&k4);
        assert_eq!(idx.arc_count(), 12);
        assert_eq!(idx.two_arc_count(), 24);
        for i in 0..idx.two_arc_count() {
            let (u, v, w) = idx.two_arc(&k4, i);
            assert!(u != w && k4.has_edge(u, v) && k4.has_edge(v, w));
            assert_eq!(idx.two_arc_index(&k4, u, v, w), i);
        }
    }

    #[test]
    fn s5_on_k5_has_one_edge_orbit() {
        let s5 = catalog_group(&GroupRecipe::sym(5)).unwrap();
        let act = certify_action(&s5, &complete_graph(5).unwrap()).unwrap();
        let e = orbit_decomposition(&act, ObjectKind::Edge);
        assert_eq!(e.sizes(), vec![10]);
        let p = transitivity_profile(&act);
        assert!(p.vertex_transitive && p.edge_transitive && p.arc_transitive && p.two_arc_transitive);
        assert!(p.primitive);
        let la = local_action(&act, 0).unwrap();
        assert_eq!(la.induced.order(), 24);
        assert!(la.is_two_transitive());
    }

    #[test]
    fn dihedral_hexagon_local_action() {
        let d12 = PermGroup::new(6, vec![rotation(6), reflection(6)]).unwrap();
        let act = certify_action(&d12, &cycle(6)).unwrap();
        let la = local_action(&act, 3).unwrap();
        assert_eq!(la.induced.order(), 2);
        assert_eq!(la.kernel_order, 1);
        assert_eq!(la.neighborhood, vec![2, 4]);
    }

    #[test]
    fn pairing_on_c5() {
        let d10 = PermGroup::new(5, vec![rotation(5), reflection(5)]).unwrap();
        let act = certify_action(&d10, &cycle(5)).unwrap();
        let p = arc_pairing(&act);
        assert_eq!(p.pairing, vec![Pairing::SelfPaired]);

        let c5 = PermGroup::new(5, vec![rotation(5)]).unwrap();
        let act = certify_action(&c5, &cycle(5)).unwrap();
        let p = arc_pairing(&act);
        assert_eq!(p.pairing, vec![Pairing::PairedWith(1), Pairing::PairedWith(0)]);
        assert_eq!(p.mutual_pairs, 1);
        let prof = transitivity_profile(&act);
        assert!(prof.edge_transitive && !prof.arc_transitive && !prof.two_arc_transitive);
        assert_eq!(prof.two_arc_orbits, None);
    }
}

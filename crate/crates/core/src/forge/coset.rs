use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::Serialize;

use super::graph::Graph;
use crate::error::{invalid, Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Cap on the number of cosets any enumeration may produce.
pub const DEFAULT_COSET_CAP: usize = 100_000;

/// The right cosets of `H` in `G`, numbered in breadth-first discovery order
/// from the identity coset under `G`'s generators.
///
/// Each coset `Hg` is keyed by the lexicographically least image array in
/// `{h g : h in H}`, costing `O(|H| * degree)` per key.
#[derive(Clone, Debug)]
pub struct CosetGeometry {
    group: PermGroup,
    subgroup: PermGroup,
    subgroup_elements: Vec<Permutation>,
    representatives: Vec<Permutation>,
    key_index: HashMap<Vec<u32>, usize>,
    faithful: OnceLock<bool>,
}

impl CosetGeometry {
    pub fn enumerate(group: &PermGroup, subgroup: &PermGroup, cap: usize) -> Result<CosetGeometry> {
        if subgroup.degree() != group.degree() {
            return Err(Error::DegreeMismatch {
                expected: group.degree(),
                found: subgroup.degree(),
            });
        }
        if let Some(i) = subgroup.generators().iter().position(|h| !group.has(h)) {
            return Err(Error::Precondition(format!(
                "subgroup generator {i} does not lie in the group"
            )));
        }
        let index = group.order() / subgroup.order();
        if index > cap as u128 {
            return Err(Error::ResourceLimit {
                what: "coset count",
                actual: index,
                cap: cap as u128,
            });
        }
        let subgroup_elements = subgroup.elements(crate::perm::DEFAULT_ELEMENT_CAP)?;
        let mut geo = CosetGeometry {
            group: group.clone(),
            subgroup: subgroup.clone(),
            subgroup_elements,
            representatives: Vec::with_capacity(index as usize),
            key_index: HashMap::with_capacity(index as usize),
            faithful: OnceLock::new(),
        };
        let id = Permutation::identity(group.degree());
        geo.key_index.insert(geo.key(&id), 0);
        geo.representatives.push(id);
        let mut head = 0;
        while head < geo.representatives.len() {
            let rep = geo.representatives[head].clone();
            head += 1;
            for s in group.generators() {
                let next = rep.then(s);
                let key = geo.key(&next);
                if !geo.key_index.contains_key(&key) {
                    geo.key_index.insert(key, geo.representatives.len());
                    geo.representatives.push(next);
                }
            }
        }
        if geo.representatives.len() as u128 != index {
            return Err(Error::Inconsistency(format!(
                "enumerated {} cosets but |G:H| = {index}",
                geo.representatives.len()
            )));
        }
        Ok(geo)
    }

    /// Canonical key of the coset `H g`.
    pub fn key(&self, g: &Permutation) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        for h in &self.subgroup_elements {
            let cand: Vec<u32> = h.images().iter().map(|&x| g.images()[x as usize]).collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
        best.expect("subgroup has at least the identity")
    }

    pub fn coset_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    pub fn subgroup_elements(&self) -> &[Permutation] {
        &self.subgroup_elements
    }

    /// Index of the coset `H g`.
    pub fn coset_of(&self, g: &Permutation) -> Result<usize> {
        self.key_index
            .get(&self.key(g))
            .copied()
            .ok_or_else(|| Error::Precondition("element does not lie in the group".into()))
    }

    /// Action of `g` on the cosets: `Hx -> Hxg`.
    pub fn induced(&self, g: &Permutation) -> Result<Permutation> {
        let image = self
            .representatives
            .iter()
            .map(|r| self.coset_of(&r.then(g)).map(|i| i as u32))
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(image)
    }

    /// The permutation group induced on the cosets by `sub`'s generators.
    pub fn induced_group(&self, sub: &PermGroup) -> Result<PermGroup> {
        let gens = sub
            .generators()
            .iter()
            .map(|g| self.induced(g))
            .collect::<Result<Vec<_>>>()?;
        if self.is_faithful() && sub.is_subgroup_of(&self.group) {
            PermGroup::with_known_order(self.coset_count(), gens, sub.order())
        } else {
            PermGroup::new(self.coset_count(), gens)
        }
    }

    /// Whether `H` is core-free. The kernel of the action lies in `H`, so it
    /// suffices to check that no non-identity element of `H` acts trivially.
    pub fn is_faithful(&self) -> bool {
        *self.faithful.get_or_init(|| {
            self.subgroup_elements
                .iter()
                .filter(|h| !h.is_identity())
                .all(|h| self.induced(h).map_or(false, |p| !p.is_identity()))
        })
    }

    pub fn to_document(&self) -> GeometryDocument {
        GeometryDocument {
            degree: self.group.degree(),
            group_order: self.group.order().to_string(),
            group_generators: imgs(self.group.generators()),
            subgroup_order: self.subgroup.order().to_string(),
            subgroup_generators: imgs(self.subgroup.generators()),
            coset_count: self.coset_count(),
            representatives: imgs(&self.representatives),
        }
    }
}

fn imgs(v: &[Permutation]) -> Vec<Vec<u32>> {
    v.iter().map(|p| p.images().to_vec()).collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GeometryDocument {
    pub degree: usize,
    pub group_order: String,
    pub group_generators: Vec<Vec<u32>>,
    pub subgroup_order: String,
    pub subgroup_generators: Vec<Vec<u32>>,
    pub coset_count: usize,
    pub representatives: Vec<Vec<u32>>,
}

/// `Cos(G, H, x)` together with the data it was built from.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    pub geometry: CosetGeometry,
    pub graph: Graph,
    pub x: Permutation,
    /// `|H ∩ H^x|`.
    pub intersection_order: u128,
    /// `|H : H ∩ H^x|`.
    pub expected_valency: usize,
    /// `<H, x> = G`.
    pub generates: bool,
}

impl CosetGraph {
    /// The action of `G`'s generators on the vertices.
    pub fn action(&self) -> Result<PermGroup> {
        self.geometry.induced_group(self.geometry.group())
    }
}

/// Elements of `H ∩ H^x`, where `H^x = x^-1 H x`.
pub fn intersection_with_conjugate(
    h_elements: &[Permutation],
    h: &PermGroup,
    x: &Permutation,
) -> Vec<Permutation> {
    let x_inv = x.inverse();
    h_elements
        .iter()
        .filter(|e| h.has(&e.conjugate_by(&x_inv)))
        .cloned()
        .collect()
}

/// Builds `Cos(G, H, x)`: vertices are right cosets of `H`, and `Hg1 ~ Hg2`
/// iff `g2 g1^-1 ∈ HxH`. The neighbours of `Hg` are `H x t g` for `t` in a
/// right transversal of `H ∩ H^x` in `H`.
pub fn coset_graph(g: &PermGroup, h: &PermGroup, x: &Permutation, cap: usize) -> Result<CosetGraph> {
    if x.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: x.degree(),
        });
    }
    if !g.has(x) {
        return Err(Error::Precondition("x does not lie in G".into()));
    }
    if h.has(x) {
        return Err(Error::Precondition("x lies in H".into()));
    }
    if !h.has(&x.then(x)) {
        return Err(Error::Precondition("x^2 does not lie in H".into()));
    }
    if !x.order().is_power_of_two() {
        return Err(Error::Precondition(format!("x has order {}, not a 2-element", x.order())));
    }
    let geometry = CosetGeometry::enumerate(g, h, cap)?;
    let h_elements = geometry.subgroup_elements().to_vec();
    let k: BTreeSet<Permutation> = intersection_with_conjugate(&h_elements, h, x).into_iter().collect();
    let mut covered: BTreeSet<Permutation> = BTreeSet::new();
    let mut transversal = Vec::new();
    for t in &h_elements {
        if covered.contains(t) {
            continue;
        }
        transversal.push(t.clone());
        for kk in &k {
            covered.insert(kk.then(t));
        }
    }
    let xt: Vec<Permutation> = transversal.iter().map(|t| x.then(t)).collect();
    let mut edges = BTreeSet::new();
    for (i, rep) in geometry.representatives().iter().enumerate() {
        for a in &xt {
            let j = geometry.coset_of(&a.then(rep))?;
            if i == j {
                return Err(Error::Inconsistency("coset graph would have a loop".into()));
            }
            edges.insert((i.min(j), i.max(j)));
        }
    }
    let graph = Graph::new(geometry.coset_count(), edges)?;
    let generates = h.join(std::slice::from_ref(x))?.order() == g.order();
    Ok(CosetGraph {
        geometry,
        graph,
        x: x.clone(),
        intersection_order: k.len() as u128,
        expected_valency: transversal.len(),
        generates,
    })
}

/// Right transversal sanity: every vertex has the degree `|H : H ∩ H^x|`.
pub fn check_valency(cg: &CosetGraph) -> Result<()> {
    for v in 0..cg.graph.vertex_count() {
        if cg.graph.degree(v) != cg.expected_valency {
            return invalid(format!(
                "vertex {v} has degree {} but |H : H ∩ H^x| = {}",
                cg.graph.degree(v),
                cg.expected_valency
            ));
        }
    }
    Ok(())
}

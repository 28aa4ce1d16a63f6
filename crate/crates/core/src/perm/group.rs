use std::collections::{BTreeSet, HashSet};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::chain::StabChain;
use super::permutation::Permutation;
use crate::error::{invalid, Error, Result};

/// Default cap on the number of elements any enumeration may visit.
pub const DEFAULT_ELEMENT_CAP: u128 = 1_000_000;

/// A permutation group given by generators; the stabilizer chain is built
/// on first use and then shared.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    known_order: Option<u128>,
    chain: OnceLock<Arc<StabChain>>,
}

/// Interchange form: `{"degree": n, "generators": [[...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup> {
        if degree == 0 {
            return invalid("group degree must be positive");
        }
        if generators.is_empty() {
            return invalid("a group needs at least one generator");
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            known_order: None,
            chain: OnceLock::new(),
        })
    }

    /// Like [`PermGroup::new`] but with an order already established by other
    /// means; chain construction then uses the faster randomized route and
    /// is still verified exactly against this order.
    pub fn with_known_order(
        degree: usize,
        generators: Vec<Permutation>,
        order: u128,
    ) -> Result<PermGroup> {
        let mut g = PermGroup::new(degree, generators)?;
        g.known_order = Some(order);
        Ok(g)
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            generators: vec![Permutation::identity(degree)],
            known_order: Some(1),
            chain: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            Arc::new(match self.known_order {
                Some(order) => {
                    StabChain::build_with_order(self.degree, &self.generators, &[], order)
                }
                None => StabChain::build(self.degree, &self.generators, &[]),
            })
        })
    }

    /// Builds (if needed) the stabilizer chain and returns its base.
    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn order(&self) -> u128 {
        self.chain()
            .order()
            .expect("group order overflows u128")
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.is_identity())
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(self.chain().contains(g))
    }

    /// Membership for a permutation already known to have the right degree.
    pub fn has(&self, g: &Permutation) -> bool {
        debug_assert_eq!(g.degree(), self.degree);
        self.chain().contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    /// `self` is normalized by every generator of `by`.
    pub fn is_normalized_by(&self, by: &PermGroup) -> bool {
        by.generators
            .iter()
            .all(|x| self.generators.iter().all(|g| self.has(&g.conjugate_by(x))))
    }

    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        self.is_subgroup_of(ambient) && self.is_normalized_by(ambient)
    }

    /// Same elements as `other`.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.is_subgroup_of(other)
    }

    /// Subgroup generated by `self` and extra elements.
    pub fn join(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    /// Normal closure of `elements` in `self`.
    pub fn normal_closure(&self, elements: &[Permutation]) -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = elements.iter().filter(|x| !x.is_identity()).cloned().collect();
        if gens.is_empty() {
            return Ok(PermGroup::trivial(self.degree));
        }
        let mut current = PermGroup::new(self.degree, gens.clone())?;
        let mut head = 0;
        while head < gens.len() {
            let n = gens[head].clone();
            head += 1;
            for g in &self.generators {
                let c = n.conjugate_by(g);
                if !current.has(&c) {
                    gens.push(c);
                    current = PermGroup::new(self.degree, gens.clone())?;
                }
            }
        }
        Ok(current)
    }

    pub fn check_element_cap(&self, cap: u128) -> Result<()> {
        let order = self.order();
        if order > cap {
            return Err(Error::ResourceLimit {
                what: "group order for element enumeration",
                actual: order,
                cap,
            });
        }
        Ok(())
    }

    /// Visits every element once, in transversal product order; the visitor
    /// returns `false` to stop early.
    pub fn try_for_each_element<F>(&self, cap: u128, f: F) -> Result<()>
    where
        F: FnMut(&Permutation) -> bool,
    {
        self.check_element_cap(cap)?;
        self.chain().for_each_element(f);
        Ok(())
    }

    pub fn elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        let mut out = Vec::with_capacity(self.order().min(cap) as usize);
        self.try_for_each_element(cap, |g| {
            out.push(g.clone());
            true
        })?;
        Ok(out)
    }

    /// Orbits on `ground`, each sorted, listed by least element.
    pub fn orbits_on(&self, ground: &[usize]) -> Result<Vec<Vec<usize>>> {
        let mut in_ground = vec![false; self.degree];
        for &p in ground {
            if p >= self.degree {
                return invalid(format!("point {p} outside degree {}", self.degree));
            }
            in_ground[p] = true;
        }
        let mut seen = vec![false; self.degree];
        let mut sorted: Vec<usize> = ground.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut orbits = Vec::new();
        for &start in &sorted {
            if seen[start] {
                continue;
            }
            let orbit = self.orbit_of(start, &mut seen);
            if orbit.iter().any(|&p| !in_ground[p]) {
                return invalid(format!(
                    "ground set is not closed under the group: orbit of {start} leaves it"
                ));
            }
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.degree).collect();
        self.orbits_on(&all).expect("full point set is closed")
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        self.orbit_of(point, &mut seen)
    }

    fn orbit_of(&self, start: usize, seen: &mut [bool]) -> Vec<usize> {
        let mut orbit = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Pointwise stabilizer of `points` (in the given order).
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        for &p in points {
            if p >= self.degree {
                return invalid(format!("point {p} outside degree {}", self.degree));
            }
        }
        let order = self.order();
        let chain = StabChain::build_with_order(self.degree, &self.generators, points, order);
        let depth = points.len();
        let sub_order = chain.order_from(depth);
        let gens = chain.stabilizer_generators(depth);
        let sub = if gens.is_empty() {
            PermGroup::trivial(self.degree)
        } else {
            PermGroup::with_known_order(self.degree, gens, sub_order)?
        };
        Ok(sub)
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.pointwise_stabilizer(&[point])
    }

    /// Subgroup of all enumerated elements satisfying `keep`, which must
    /// describe a subgroup. Generators are chosen greedily in enumeration
    /// order.
    pub fn filter_subgroup<F>(&self, cap: u128, mut keep: F) -> Result<PermGroup>
    where
        F: FnMut(&Permutation) -> bool,
    {
        let mut kept = Vec::new();
        self.try_for_each_element(cap, |g| {
            if keep(g) {
                kept.push(g.clone());
            }
            true
        })?;
        Ok(subgroup_from_elements(self.degree, &kept))
    }

    /// Setwise stabilizer of `set`, by element filtering.
    pub fn setwise_stabilizer(&self, set: &[usize], cap: u128) -> Result<PermGroup> {
        let members: HashSet<usize> = set.iter().copied().collect();
        if members.iter().any(|&p| p >= self.degree) {
            return invalid("set point outside degree");
        }
        self.filter_subgroup(cap, |g| members.iter().all(|&p| members.contains(&g.apply(p))))
    }

    pub fn normalizer_of(&self, sub: &PermGroup, cap: u128) -> Result<PermGroup> {
        if sub.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: sub.degree,
            });
        }
        let sub_gens: Vec<&Permutation> =
            sub.generators.iter().filter(|g| !g.is_identity()).collect();
        self.filter_subgroup(cap, |g| {
            sub_gens.iter().all(|s| sub.has(&s.conjugate_by(g)))
        })
    }

    pub fn centralizer_of_element(&self, x: &Permutation, cap: u128) -> Result<PermGroup> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: x.degree(),
            });
        }
        self.filter_subgroup(cap, |g| g.commutes_with(x))
    }

    pub fn centralizer_of(&self, sub: &PermGroup, cap: u128) -> Result<PermGroup> {
        if sub.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: sub.degree,
            });
        }
        let gens = sub.generators.clone();
        self.filter_subgroup(cap, |g| gens.iter().all(|s| g.commutes_with(s)))
    }

    /// Restriction to an invariant subset, relabelled by position in `set`.
    pub fn restrict_to(&self, set: &[usize]) -> Result<PermGroup> {
        let mut pos = vec![usize::MAX; self.degree];
        for (i, &p) in set.iter().enumerate() {
            pos[p] = i;
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let mut image = Vec::with_capacity(set.len());
            for &p in set {
                let q = pos[g.apply(p)];
                if q == usize::MAX {
                    return invalid("set is not invariant under the group");
                }
                image.push(q as u32);
            }
            gens.push(Permutation::from_images_unchecked(image));
        }
        PermGroup::new(set.len().max(1), gens)
    }

    pub fn to_document(&self, name: Option<String>) -> GroupDocument {
        GroupDocument {
            name,
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.images().to_vec()).collect(),
        }
    }

    pub fn from_document(doc: &GroupDocument) -> Result<PermGroup> {
        let gens = doc
            .generators
            .iter()
            .enumerate()
            .map(|(i, img)| {
                Permutation::from_images(img.clone())
                    .map_err(|e| Error::Parse(format!("generator {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(doc.degree, gens)
    }
}

/// The subgroup generated by an element list that is known to be closed.
pub fn subgroup_from_elements(degree: usize, elements: &[Permutation]) -> PermGroup {
    let target = elements.len() as u128;
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = PermGroup::trivial(degree);
    for e in elements {
        if current.order() == target {
            break;
        }
        if e.is_identity() || current.has(e) {
            continue;
        }
        gens.push(e.clone());
        current = PermGroup::new(degree, gens.clone()).expect("non-empty generators");
    }
    if gens.is_empty() {
        return PermGroup::trivial(degree);
    }
    PermGroup::with_known_order(degree, gens, target).expect("non-empty generators")
}

/// Closure of `gens` under multiplication, aborting once more than `limit`
/// elements appear. Intended for small subgroups.
pub fn closure_elements(gens: &[Permutation], limit: usize) -> Option<BTreeSet<Permutation>> {
    let degree = gens.first()?.degree();
    let mut elements = BTreeSet::new();
    let id = Permutation::identity(degree);
    elements.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.then(g);
            if elements.insert(y.clone()) {
                if elements.len() > limit {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn s3() -> PermGroup {
        PermGroup::new(3, vec![perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])]).unwrap()
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(
            PermGroup::new(0, vec![]),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            PermGroup::new(3, vec![]),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            PermGroup::new(3, vec![Permutation::identity(4)]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn symmetric_three() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.elements(100).unwrap().len(), 6);
        assert_eq!(g.point_stabilizer(0).unwrap().order(), 2);
    }

    #[test]
    fn identity_group_has_order_one() {
        let g = PermGroup::new(5, vec![Permutation::identity(5)]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.has(&Permutation::identity(5)));
    }

    #[test]
    fn alternating_three_rejects_transposition() {
        let a3 = PermGroup::new(3, vec![perm(3, &[&[0, 1, 2]])]).unwrap();
        assert!(!a3.contains(&perm(3, &[&[0, 1]])).unwrap());
        assert!(a3.contains(&Permutation::identity(3)).unwrap());
        assert!(a3.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn orbits_sorted_by_least_point() {
        let g = PermGroup::new(3, vec![perm(3, &[&[0, 1]])]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn centralizer_of_identity_is_everything() {
        let s4 = PermGroup::new(4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])]).unwrap();
        let c = s4
            .centralizer_of_element(&Permutation::identity(4), DEFAULT_ELEMENT_CAP)
            .unwrap();
        assert_eq!(c.order(), 24);
    }

    #[test]
    fn setwise_stabilizer_respects_cap() {
        let s4 = PermGroup::new(4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])]).unwrap();
        let st = s4.setwise_stabilizer(&[0, 1], DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(st.order(), 4);
        let err = s4.setwise_stabilizer(&[0, 1], 10).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { cap: 10, .. }));
    }

    #[test]
    fn base_starts_at_first_moved_point() {
        let g = PermGroup::new(6, vec![perm(6, &[&[2, 3, 4]])]).unwrap();
        assert_eq!(g.base(), vec![2]);
    }
}

//! Subgroup search by structural shape.
//!
//! Shapes are recognised by structural tests (abelian, exponent, dihedral
//! presentation, element-order profile), not by isomorphism search.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::{closure_elements, PermGroup};
use super::permutation::Permutation;
use super::primes::{is_prime, prime_power};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ShapeKind {
    Cyclic,
    KleinFour,
    Dihedral,
    ElemAbelian,
    /// The alternating group of degree 4 (order 12).
    Alternating4,
    AnyOfOrder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubgroupShape {
    pub kind: ShapeKind,
    pub order: u128,
}

impl SubgroupShape {
    pub fn new(kind: ShapeKind, order: u128) -> Result<SubgroupShape> {
        let ok = match kind {
            ShapeKind::Cyclic | ShapeKind::AnyOfOrder => order >= 1,
            ShapeKind::KleinFour => order == 4,
            ShapeKind::Dihedral => order >= 4 && order % 2 == 0,
            ShapeKind::ElemAbelian => prime_power(order).is_some() || order == 1,
            ShapeKind::Alternating4 => order == 12,
        };
        if !ok {
            return invalid(format!("order {order} is inconsistent with shape {kind:?}"));
        }
        Ok(SubgroupShape { kind, order })
    }

    pub fn klein_four() -> SubgroupShape {
        SubgroupShape {
            kind: ShapeKind::KleinFour,
            order: 4,
        }
    }

    pub fn dihedral(order: u128) -> Result<SubgroupShape> {
        SubgroupShape::new(ShapeKind::Dihedral, order)
    }

    /// Structural test on a closed element set.
    pub fn matches(&self, elements: &[Permutation]) -> bool {
        if elements.len() as u128 != self.order {
            return false;
        }
        match self.kind {
            ShapeKind::Cyclic => is_cyclic(elements),
            ShapeKind::KleinFour => is_klein_four(elements),
            ShapeKind::Dihedral => is_dihedral(elements),
            ShapeKind::ElemAbelian => is_elementary_abelian(elements),
            ShapeKind::Alternating4 => is_alternating4(elements),
            ShapeKind::AnyOfOrder => true,
        }
    }
}

impl fmt::Display for SubgroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ShapeKind::Cyclic => write!(f, "Z{}", self.order),
            ShapeKind::KleinFour => write!(f, "Z2^2"),
            ShapeKind::Dihedral => write!(f, "D{}", self.order),
            ShapeKind::ElemAbelian => write!(f, "E{}", self.order),
            ShapeKind::Alternating4 => write!(f, "A4"),
            ShapeKind::AnyOfOrder => write!(f, "[{}]", self.order),
        }
    }
}

fn order_counts(elements: &[Permutation]) -> BTreeMap<u64, usize> {
    let mut counts = BTreeMap::new();
    for e in elements {
        *counts.entry(e.order()).or_insert(0) += 1;
    }
    counts
}

pub fn is_abelian(elements: &[Permutation]) -> bool {
    elements
        .iter()
        .enumerate()
        .all(|(i, a)| elements[i + 1..].iter().all(|b| a.commutes_with(b)))
}

pub fn is_cyclic(elements: &[Permutation]) -> bool {
    elements.iter().any(|e| e.order() as usize == elements.len())
}

pub fn is_klein_four(elements: &[Permutation]) -> bool {
    elements.len() == 4 && elements.iter().all(|e| e.order() <= 2) && is_abelian(elements)
}

pub fn is_elementary_abelian(elements: &[Permutation]) -> bool {
    let Some((p, _)) = prime_power(elements.len() as u128) else {
        return elements.len() == 1;
    };
    is_abelian(elements) && elements.iter().all(|e| e.is_identity() || e.order() as u128 == p)
}

/// Order `2n` with a cyclic subgroup of order `n` inverted by an involution
/// outside it; order 4 means the Klein four-group.
pub fn is_dihedral(elements: &[Permutation]) -> bool {
    let m = elements.len();
    if m < 4 || m % 2 != 0 {
        return false;
    }
    let n = (m / 2) as u64;
    if n == 2 {
        return is_klein_four(elements);
    }
    let Some(r) = elements.iter().find(|e| e.order() == n) else {
        return false;
    };
    let rotations: BTreeSet<Permutation> = (0..n).map(|k| r.pow(k)).collect();
    let r_inv = r.inverse();
    elements.iter().any(|t| {
        !rotations.contains(t) && t.order() == 2 && r.conjugate_by(t) == r_inv
    })
}

/// Element-order profile 1, 3, 8 (identity, involutions, order three).
pub fn is_alternating4(elements: &[Permutation]) -> bool {
    let c = order_counts(elements);
    elements.len() == 12 && c.get(&2) == Some(&3) && c.get(&3) == Some(&8)
}

/// Element-order profile of S4: 9 involutions, 8 of order 3, 6 of order 4.
pub fn is_symmetric4(elements: &[Permutation]) -> bool {
    let c = order_counts(elements);
    elements.len() == 24 && c.get(&2) == Some(&9) && c.get(&3) == Some(&8) && c.get(&4) == Some(&6)
}

/// A subgroup found by shape search: its generators and sorted elements.
#[derive(Clone, Debug)]
pub struct FoundSubgroup {
    pub group: PermGroup,
    pub elements: Vec<Permutation>,
}

/// Options for [`find_subgroups_by_shape`].
#[derive(Clone, Copy, Debug)]
pub struct ShapeSearch {
    /// Return at most this many candidates (in canonical order).
    pub limit: Option<usize>,
    pub element_cap: u128,
}

impl Default for ShapeSearch {
    fn default() -> Self {
        ShapeSearch {
            limit: None,
            element_cap: super::group::DEFAULT_ELEMENT_CAP,
        }
    }
}

/// All subgroups of `g` (or of `within`, which must lie in `g`) of the given
/// shape, ordered by their sorted element lists. `ANY_OF_ORDER` and `A4`
/// consider subgroups generated by at most two elements.
pub fn find_subgroups_by_shape(
    g: &PermGroup,
    shape: SubgroupShape,
    within: Option<&PermGroup>,
    opts: ShapeSearch,
) -> Result<Vec<FoundSubgroup>> {
    let ambient = match within {
        Some(w) => {
            if !w.is_subgroup_of(g) {
                return invalid("search ambient is not a subgroup of the group");
            }
            w
        }
        None => g,
    };
    let elements = ambient.elements(opts.element_cap)?;
    let target = shape.order as usize;
    let ambient_order = elements.len() as u128;
    let mut found: BTreeMap<Vec<Permutation>, Vec<Permutation>> = BTreeMap::new();
    if ambient_order % shape.order != 0 {
        return Ok(Vec::new());
    }

    let record = |gens: Vec<Permutation>, found: &mut BTreeMap<_, _>| {
        if let Some(set) = closure_elements(&gens, target) {
            if set.len() == target {
                let sorted: Vec<Permutation> = set.into_iter().collect();
                if shape.matches(&sorted) {
                    found.entry(sorted).or_insert(gens);
                }
            }
        }
    };

    let orders: Vec<u64> = elements.iter().map(|e| e.order()).collect();
    let with_order = |k: u64| -> Vec<&Permutation> {
        elements
            .iter()
            .zip(&orders)
            .filter(|(_, &o)| o == k)
            .map(|(e, _)| e)
            .collect()
    };

    match shape.kind {
        ShapeKind::Cyclic => {
            for e in with_order(shape.order as u64) {
                record(vec![e.clone()], &mut found);
            }
            if shape.order == 1 {
                record(vec![Permutation::identity(g.degree())], &mut found);
            }
        }
        ShapeKind::KleinFour | ShapeKind::Dihedral => {
            let invs = with_order(2);
            check_pairs(invs.len(), opts.element_cap)?;
            for (i, a) in invs.iter().enumerate() {
                for b in &invs[i + 1..] {
                    let ab = a.then(b).order() as usize;
                    if 2 * ab == target {
                        record(vec![(*a).clone(), (*b).clone()], &mut found);
                    }
                }
            }
        }
        ShapeKind::ElemAbelian => {
            let (p, k) = match prime_power(shape.order) {
                Some(pk) => pk,
                None => {
                    record(vec![Permutation::identity(g.degree())], &mut found);
                    (1, 0)
                }
            };
            if k > 0 {
                debug_assert!(is_prime(p));
                let p_elts = with_order(p as u64);
                let mut layer: BTreeMap<Vec<Permutation>, Vec<Permutation>> = BTreeMap::new();
                for e in &p_elts {
                    if let Some(set) = closure_elements(&[(*e).clone()], p as usize) {
                        layer.entry(set.into_iter().collect()).or_insert(vec![(*e).clone()]);
                    }
                }
                for _ in 1..k {
                    let mut next = BTreeMap::new();
                    for (set, gens) in &layer {
                        for e in &p_elts {
                            if set.binary_search(e).is_ok() || !set.iter().all(|s| s.commutes_with(e)) {
                                continue;
                            }
                            let mut gs = gens.clone();
                            gs.push((*e).clone());
                            if let Some(s) = closure_elements(&gs, ambient_order as usize) {
                                next.entry(s.into_iter().collect::<Vec<_>>()).or_insert(gs);
                            }
                        }
                    }
                    layer = next;
                }
                found = layer;
            }
        }
        ShapeKind::Alternating4 | ShapeKind::AnyOfOrder => {
            let cands: Vec<&Permutation> = elements
                .iter()
                .zip(&orders)
                .filter(|(_, &o)| shape.order % o as u128 == 0)
                .map(|(e, _)| e)
                .collect();
            check_pairs(cands.len(), opts.element_cap)?;
            for a in &cands {
                if a.order() as usize == target {
                    record(vec![(*a).clone()], &mut found);
                }
            }
            for (i, a) in cands.iter().enumerate() {
                if a.is_identity() {
                    continue;
                }
                for b in &cands[i + 1..] {
                    if b.is_identity() {
                        continue;
                    }
                    record(vec![(*a).clone(), (*b).clone()], &mut found);
                }
            }
        }
    }

    let degree = g.degree();
    let mut out = Vec::new();
    for (elements, gens) in found {
        if opts.limit.is_some_and(|l| out.len() >= l) {
            break;
        }
        let order = elements.len() as u128;
        out.push(FoundSubgroup {
            group: PermGroup::with_known_order(degree, gens, order)?,
            elements,
        });
    }
    Ok(out)
}

fn check_pairs(m: usize, cap: u128) -> Result<()> {
    let pairs = (m as u128) * (m as u128).saturating_sub(1) / 2;
    if pairs > cap.saturating_mul(10) {
        return Err(Error::ResourceLimit {
            what: "element pairs in two-generator subgroup search",
            actual: pairs,
            cap: cap.saturating_mul(10),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_order_consistency() {
        assert!(SubgroupShape::new(ShapeKind::KleinFour, 8).is_err());
        assert!(SubgroupShape::new(ShapeKind::Dihedral, 6).is_ok());
        assert!(SubgroupShape::new(ShapeKind::Dihedral, 7).is_err());
        assert!(SubgroupShape::new(ShapeKind::Dihedral, 2).is_err());
        assert!(SubgroupShape::new(ShapeKind::ElemAbelian, 12).is_err());
    }

    #[test]
    fn klein_fours_in_s4() {
        let s4 = PermGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        let found =
            find_subgroups_by_shape(&s4, SubgroupShape::klein_four(), None, ShapeSearch::default())
                .unwrap();
        assert_eq!(found.len(), 4);
        let normal = found.iter().filter(|k| k.group.is_normal_in(&s4)).count();
        assert_eq!(normal, 1);
    }

    #[test]
    fn empty_result_is_not_an_error() {
        let c5 = PermGroup::new(5, vec![Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap()])
            .unwrap();
        let found =
            find_subgroups_by_shape(&c5, SubgroupShape::klein_four(), None, ShapeSearch::default())
                .unwrap();
        assert!(found.is_empty());
    }
}

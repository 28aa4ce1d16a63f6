use serde::Serialize;

use super::group::PermGroup;
use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Primitivity {
    pub primitive: bool,
    /// A nontrivial block system when imprimitive; the first block holds the
    /// least point of the ground set.
    pub blocks: Option<Vec<Vec<usize>>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Finest block system in which `a` and `b` share a block.
pub fn minimal_block_system(g: &PermGroup, ground: &[usize], a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(g.degree());
    let mut queue = Vec::new();
    if uf.union(a, b) {
        queue.push((a, b));
    }
    while let Some((x, y)) = queue.pop() {
        for s in g.generators() {
            let (xs, ys) = (s.apply(x), s.apply(y));
            if uf.union(xs, ys) {
                queue.push((xs, ys));
            }
        }
    }
    let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &p in ground {
        let r = uf.find(p);
        classes.entry(r).or_default().push(p);
    }
    let mut blocks: Vec<Vec<usize>> = classes.into_values().collect();
    for blk in &mut blocks {
        blk.sort_unstable();
    }
    blocks.sort();
    blocks
}

/// Primitivity of a group that is transitive on `ground`.
pub fn is_primitive(g: &PermGroup, ground: &[usize]) -> Result<Primitivity> {
    let mut ground = ground.to_vec();
    ground.sort_unstable();
    ground.dedup();
    let Some(&first) = ground.first() else {
        return invalid("empty ground set");
    };
    if g.orbit(first) != ground {
        return invalid("primitivity is undefined for an intransitive action");
    }
    for &b in ground.iter().skip(1) {
        let blocks = minimal_block_system(g, &ground, first, b);
        if blocks.len() > 1 {
            return Ok(Primitivity {
                primitive: false,
                blocks: Some(blocks),
            });
        }
    }
    Ok(Primitivity {
        primitive: true,
        blocks: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    #[test]
    fn cyclic_four_has_pairs_as_blocks() {
        let c4 = PermGroup::new(4, vec![Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()]).unwrap();
        let r = is_primitive(&c4, &[0, 1, 2, 3]).unwrap();
        assert!(!r.primitive);
        assert_eq!(r.blocks.unwrap(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn symmetric_four_is_primitive() {
        let s4 = PermGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert!(is_primitive(&s4, &[0, 1, 2, 3]).unwrap().primitive);
    }

    #[test]
    fn intransitive_is_an_error() {
        let g = PermGroup::new(3, vec![Permutation::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        assert!(is_primitive(&g, &[0, 1, 2]).is_err());
    }
}

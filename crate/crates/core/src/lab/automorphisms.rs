use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::forge::Graph;
use crate::perm::{PermGroup, Permutation};

pub const DEFAULT_AUT_VERTEX_CAP: usize = 256;

/// Full automorphism group and the data behind it.
#[derive(Clone, Debug)]
pub struct AutomorphismResult {
    pub group: PermGroup,
    /// Product of the fundamental orbit lengths along the search base.
    pub order: u128,
    pub base: Vec<usize>,
}

/// Colour refinement to the coarsest equitable partition: vertices are
/// re-ranked by (own colour, sorted neighbour colours) until the number of
/// classes stops growing. Colours are ranks of the sorted keys, so the
/// result is isomorphism-invariant.
fn refine(g: &Graph, colors: &mut Vec<usize>) {
    let n = g.vertex_count();
    let mut classes = count_classes(colors);
    loop {
        let mut keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w as usize]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<usize>)> = keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        let rank: HashMap<&(usize, Vec<usize>), usize> =
            sorted.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let new: Vec<usize> = keys.iter().map(|k| rank[k]).collect();
        let new_classes = sorted.len();
        keys.clear();
        *colors = new;
        if new_classes == classes {
            return;
        }
        classes = new_classes;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c: Vec<usize> = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Gives `v` its own colour, ranked just before the rest of its cell.
fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
    let cv = colors[v];
    colors
        .iter()
        .enumerate()
        .map(|(w, &c)| {
            if c > cv || (c == cv && w != v) {
                c + 1
            } else {
                c
            }
        })
        .collect()
}

/// Cell sizes indexed by colour; the node invariant compared across branches.
fn cell_sizes(colors: &[usize]) -> Vec<usize> {
    let mut sizes = vec![0; colors.len()];
    for &c in colors {
        sizes[c] += 1;
    }
    sizes
}

/// Colour of the first largest non-singleton cell.
fn target_cell(colors: &[usize]) -> Option<usize> {
    let sizes = cell_sizes(colors);
    let mut best: Option<(usize, usize)> = None;
    for (c, &s) in sizes.iter().enumerate() {
        if s > 1 && best.map_or(true, |(_, bs)| s > bs) {
            best = Some((c, s));
        }
    }
    best.map(|(c, _)| c)
}

fn cell_members(colors: &[usize], c: usize) -> Vec<usize> {
    colors.iter().enumerate().filter(|(_, &x)| x == c).map(|(v, _)| v).collect()
}

struct Level {
    colors: Vec<usize>,
    cell: usize,
    chosen: usize,
}

struct Search<'a> {
    g: &'a Graph,
    levels: Vec<Level>,
    /// Discrete colouring at the end of the first path.
    leaf: Vec<usize>,
}

impl<'a> Search<'a> {
    /// Vertex-by-colour inverse of the first leaf.
    fn leaf_inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.leaf.len()];
        for (v, &c) in self.leaf.iter().enumerate() {
            inv[c] = v;
        }
        inv
    }

    /// Depth-first search below a node at `depth` with colouring `colors`
    /// for a discrete leaf matching the first leaf by an automorphism.
    fn dfs(&self, depth: usize, colors: Vec<usize>, inv0: &[usize]) -> Option<Permutation> {
        if depth == self.levels.len() {
            let mut img = vec![0u32; self.g.vertex_count()];
            for (w, &c) in colors.iter().enumerate() {
                img[inv0[c]] = w as u32;
            }
            let p = Permutation::from_images(img).ok()?;
            return self.g.check_automorphism(&p).is_ok().then_some(p);
        }
        let level = &self.levels[depth];
        if cell_sizes(&colors) != cell_sizes(&level.colors) {
            return None;
        }
        for w in cell_members(&colors, level.cell) {
            let mut next = individualize(&colors, w);
            refine(self.g, &mut next);
            if let Some(p) = self.dfs(depth + 1, next, inv0) {
                return Some(p);
            }
        }
        None
    }
}

fn orbit_under(gens: &[Permutation], start: usize, n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen
}

/// The full automorphism group by individualization-refinement with
/// backtracking. Deterministic: cells are chosen as the first largest, and
/// candidates are tried in ascending vertex order.
pub fn graph_automorphisms(g: &Graph, cap: usize) -> Result<AutomorphismResult> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::ResourceLimit {
            what: "automorphism search vertex count (raise --cap-aut-vertices)",
            actual: n as u128,
            cap: cap as u128,
        });
    }
    if n == 0 {
        return Err(Error::InvalidInput("graph has no vertices".into()));
    }
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    refine(g, &mut colors);
    let mut levels = Vec::new();
    while let Some(cell) = target_cell(&colors) {
        let chosen = cell_members(&colors, cell)[0];
        let mut next = individualize(&colors, chosen);
        refine(g, &mut next);
        levels.push(Level {
            colors: std::mem::replace(&mut colors, next),
            cell,
            chosen,
        });
    }
    let search = Search {
        g,
        levels,
        leaf: colors,
    };
    let inv0 = search.leaf_inverse();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut order: u128 = 1;
    let base: Vec<usize> = search.levels.iter().map(|l| l.chosen).collect();
    for depth in (0..search.levels.len()).rev() {
        let level = &search.levels[depth];
        let fixing: Vec<Permutation> = gens
            .iter()
            .filter(|p| base[..depth].iter().all(|&b| p.apply(b) == b))
            .cloned()
            .collect();
        let mut orbit = orbit_under(&fixing, level.chosen, n);
        let mut stab_gens = fixing;
        for w in cell_members(&level.colors, level.cell) {
            if orbit[w] {
                continue;
            }
            let mut next = individualize(&level.colors, w);
            refine(g, &mut next);
            if let Some(p) = search.dfs(depth + 1, next, &inv0) {
                gens.push(p.clone());
                stab_gens.push(p);
                orbit = orbit_under(&stab_gens, level.chosen, n);
            }
        }
        order *= orbit.iter().filter(|&&b| b).count() as u128;
    }
    let group = if gens.is_empty() {
        PermGroup::trivial(n)
    } else {
        PermGroup::new(n, gens)?
    };
    if group.order() != order {
        return Err(Error::Inconsistency(format!(
            "automorphism search orbit product {order} disagrees with group order {}",
            group.order()
        )));
    }
    Ok(AutomorphismResult { group, order, base })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forge::complete_graph;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn cycles_are_dihedral() {
        for n in [3, 5, 8] {
            assert_eq!(graph_automorphisms(&cycle(n), 256).unwrap().order, 2 * n as u128);
        }
    }

    #[test]
    fn complete_graph_is_symmetric() {
        assert_eq!(graph_automorphisms(&complete_graph(7).unwrap(), 256).unwrap().order, 5040);
    }

    #[test]
    fn petersen_has_order_120() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let p = Graph::new(10, edges).unwrap();
        assert_eq!(graph_automorphisms(&p, 256).unwrap().order, 120);
    }

    #[test]
    fn two_triangles() {
        let g = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(graph_automorphisms(&g, 256).unwrap().order, 72);
    }

    fn brute_force_count(g: &Graph) -> u128 {
        let n = g.vertex_count();
        let mut perm: Vec<u32> = (0..n as u32).collect();
        let mut count = 0;
        loop {
            let p = Permutation::from_images(perm.clone()).unwrap();
            if g.check_automorphism(&p).is_ok() {
                count += 1;
            }
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                return count;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(2..=7);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.45))
                .collect();
            let g = Graph::new(n, edges).unwrap();
            let r = graph_automorphisms(&g, 256).unwrap();
            assert_eq!(r.order, brute_force_count(&g));
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            graph_automorphisms(&cycle(10), 5),
            Err(Error::ResourceLimit { .. })
        ));
    }
}

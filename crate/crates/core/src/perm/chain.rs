//! Base and strong generating set construction (Schreier-Sims).
//!
//! Base points are chosen as a caller-supplied prefix followed by the first
//! moved point (ascending) of any strong generator that fixes every existing
//! base point. Transversals are stored explicitly, so membership and element
//! enumeration never retrace Schreier trees.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::permutation::Permutation;

const RANDOM_SEED: u64 = 0x5eed_c0de;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base_point: usize,
    pub gens: Vec<Permutation>,
    /// Basic orbit in breadth-first discovery order.
    pub orbit: Vec<u32>,
    /// `transversal[β]` maps the base point to `β`.
    pub transversal: Vec<Option<Permutation>>,
    /// `(parent point, generator index)` that discovered each orbit point.
    parent: Vec<Option<(u32, u32)>>,
}

impl Level {
    fn new(degree: usize, base_point: usize, gens: Vec<Permutation>) -> Level {
        let mut level = Level {
            base_point,
            gens,
            orbit: Vec::new(),
            transversal: Vec::new(),
            parent: Vec::new(),
        };
        level.recompute(degree);
        level
    }

    fn recompute(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.parent = vec![None; degree];
        self.orbit.clear();
        self.transversal[self.base_point] = Some(Permutation::identity(degree));
        self.orbit.push(self.base_point as u32);
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head] as usize;
            head += 1;
            for (si, s) in self.gens.iter().enumerate() {
                let gamma = s.apply(beta);
                if self.transversal[gamma].is_none() {
                    let u = self.transversal[beta].as_ref().unwrap().then(s);
                    self.transversal[gamma] = Some(u);
                    self.parent[gamma] = Some((beta as u32, si as u32));
                    self.orbit.push(gamma as u32);
                }
            }
        }
    }

    #[inline]
    fn contains_point(&self, p: usize) -> bool {
        self.transversal[p].is_some()
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

/// Result of sifting: the residue and the level at which sifting stopped
/// (`levels.len()` when every level was passed).
struct Sifted {
    residue: Permutation,
    level: usize,
}

impl StabChain {
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Product of basic orbit lengths, `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    fn sift_from(&self, g: &Permutation, start: usize) -> Sifted {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let beta = h.apply(level.base_point);
            match &level.transversal[beta] {
                None => return Sifted { residue: h, level: i },
                Some(u) => {
                    if beta != level.base_point {
                        h = h.then(&u.inverse());
                    }
                }
            }
        }
        Sifted {
            residue: h,
            level: self.levels.len(),
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let s = self.sift_from(g, 0);
        s.level == self.levels.len() && s.residue.is_identity()
    }

    fn trivial(degree: usize, base_prefix: &[usize]) -> StabChain {
        let id = Permutation::identity(degree);
        StabChain {
            degree,
            levels: base_prefix
                .iter()
                .map(|&b| Level::new(degree, b, vec![id.clone()]))
                .collect(),
        }
    }

    fn fixes_base_prefix(&self, g: &Permutation, upto: usize) -> bool {
        self.levels[..upto]
            .iter()
            .all(|l| g.apply(l.base_point) == l.base_point)
    }

    /// Adds `h` (which fixes the first `from` base points) as a strong
    /// generator on levels `from..=to`, extending the base when `h` fixes
    /// every base point. Returns the deepest level touched.
    fn insert_strong_generator(&mut self, h: Permutation, from: usize, to: usize) -> usize {
        let mut to = to;
        if to == self.levels.len() {
            let b = h
                .first_moved_point()
                .expect("identity residue is never inserted");
            self.levels.push(Level::new(self.degree, b, Vec::new()));
            to = self.levels.len() - 1;
        }
        for l in from..=to {
            self.levels[l].gens.push(h.clone());
            self.levels[l].recompute(self.degree);
        }
        to
    }

    /// Deterministic Schreier-Sims.
    pub fn build(degree: usize, generators: &[Permutation], base_prefix: &[usize]) -> StabChain {
        let mut chain = StabChain::trivial(degree, base_prefix);
        let nontrivial: Vec<&Permutation> =
            generators.iter().filter(|g| !g.is_identity()).collect();
        if nontrivial.is_empty() {
            return chain;
        }
        for g in &nontrivial {
            if chain.fixes_base_prefix(g, chain.levels.len()) {
                let b = g.first_moved_point().unwrap();
                chain.levels.push(Level::new(degree, b, Vec::new()));
            }
        }
        for l in 0..chain.levels.len() {
            let gens: Vec<Permutation> = nontrivial
                .iter()
                .filter(|g| chain.fixes_base_prefix(g, l))
                .map(|g| (*g).clone())
                .collect();
            chain.levels[l].gens = gens;
            chain.levels[l].recompute(degree);
        }

        let mut i = chain.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let li = i as usize;
            let orbit = chain.levels[li].orbit.clone();
            let ngens = chain.levels[li].gens.len();
            for &beta in &orbit {
                for si in 0..ngens {
                    let level = &chain.levels[li];
                    let s = &level.gens[si];
                    let gamma = s.apply(beta as usize);
                    if level.parent[gamma] == Some((beta, si as u32)) {
                        continue;
                    }
                    let u_beta = level.transversal[beta as usize].as_ref().unwrap();
                    let u_gamma = level.transversal[gamma].as_ref().unwrap();
                    let h = u_beta.then(s).then(&u_gamma.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    let sifted = chain.sift_from(&h, li + 1);
                    if sifted.level < chain.levels.len() || !sifted.residue.is_identity() {
                        let j = chain.insert_strong_generator(sifted.residue, li + 1, sifted.level);
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
        chain
    }

    /// Randomized Schreier-Sims that stops once the basic orbit lengths
    /// multiply to `order`. The result is exact because a partial chain whose
    /// orbit product equals the group order is complete.
    pub fn build_with_order(
        degree: usize,
        generators: &[Permutation],
        base_prefix: &[usize],
        order: u128,
    ) -> StabChain {
        let mut chain = StabChain::trivial(degree, base_prefix);
        let nontrivial: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if nontrivial.is_empty() || order == 1 {
            return chain;
        }
        for g in &nontrivial {
            let s = chain.sift_from(g, 0);
            if s.level < chain.levels.len() || !s.residue.is_identity() {
                chain.insert_strong_generator(s.residue, 0, s.level);
            }
        }
        let mut rng = StdRng::seed_from_u64(RANDOM_SEED);
        let mut slots: Vec<Permutation> = (0..10)
            .map(|i| nontrivial[i % nontrivial.len()].clone())
            .collect();
        let mut acc = Permutation::identity(degree);
        let step = |rng: &mut StdRng, slots: &mut Vec<Permutation>, acc: &mut Permutation| {
            let a = rng.gen_range(0..slots.len());
            let mut b = rng.gen_range(0..slots.len() - 1);
            if b >= a {
                b += 1;
            }
            slots[a] = if rng.gen_bool(0.5) {
                slots[a].then(&slots[b])
            } else {
                slots[b].then(&slots[a])
            };
            *acc = acc.then(&slots[a]);
            acc.clone()
        };
        for _ in 0..40 {
            step(&mut rng, &mut slots, &mut acc);
        }
        let mut guard = 0u64;
        while chain.order() != Some(order) {
            let g = step(&mut rng, &mut slots, &mut acc);
            let s = chain.sift_from(&g, 0);
            if s.level < chain.levels.len() || !s.residue.is_identity() {
                chain.insert_strong_generator(s.residue, 0, s.level);
            }
            guard += 1;
            if guard > 200_000 {
                // Supplied order is wrong; fall back to the exact algorithm.
                return StabChain::build(degree, generators, base_prefix);
            }
        }
        chain
    }

    /// Visits every element exactly once, in transversal product order:
    /// `u_{k-1} * ... * u_0` with the level-0 index varying slowest.
    pub fn for_each_element<F>(&self, mut f: F)
    where
        F: FnMut(&Permutation) -> bool,
    {
        let k = self.levels.len();
        if k == 0 {
            f(&Permutation::identity(self.degree));
            return;
        }
        let mut idx = vec![0usize; k];
        // partial[j] = u_j[idx_j] * partial[j-1]
        let mut partial: Vec<Permutation> = Vec::with_capacity(k);
        for j in 0..k {
            let u = self.transversal_at(j, 0);
            let p = if j == 0 { u.clone() } else { u.then(&partial[j - 1]) };
            partial.push(p);
        }
        loop {
            if !f(&partial[k - 1]) {
                return;
            }
            let mut j = k;
            loop {
                if j == 0 {
                    return;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < self.levels[j].orbit.len() {
                    break;
                }
                idx[j] = 0;
            }
            for l in j..k {
                let u = self.transversal_at(l, idx[l]);
                partial[l] = if l == 0 { u.clone() } else { u.then(&partial[l - 1]) };
            }
        }
    }

    fn transversal_at(&self, level: usize, i: usize) -> &Permutation {
        let l = &self.levels[level];
        l.transversal[l.orbit[i] as usize].as_ref().unwrap()
    }

    /// Strong generators of the pointwise stabilizer of the first `depth`
    /// base points.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        if depth < self.levels.len() {
            self.levels[depth].gens.clone()
        } else {
            Vec::new()
        }
    }

    pub fn order_from(&self, depth: usize) -> u128 {
        self.levels[depth.min(self.levels.len())..]
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    #[allow(dead_code)]
    pub fn contains_point_at(&self, level: usize, p: usize) -> bool {
        self.levels[level].contains_point(p)
    }
}

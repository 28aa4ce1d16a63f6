//! Independent oracles: classical order formulas, brute-force Mobius
//! enumeration, exhaustive field checks and naive closure.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use symgraph::catalog::{catalog_group, Family, GroupRecipe, ProjectiveLine};
use symgraph::field::FieldSpec;
use symgraph::perm::{closure_elements, PermGroup, Permutation};

fn factor_prime_power(q: u32) -> (u32, u32) {
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    assert_eq!(r, 1, "{q} is not a prime power");
    (p, k)
}

/// |PGL(2,q)| = q(q^2-1), |PSL(2,q)| = q(q^2-1)/gcd(2,q-1), written out
/// without reference to the library's formula.
fn classical(family: Family, q: u32) -> u128 {
    let q = q as u128;
    let (_, k) = factor_prime_power(q as u32);
    let pgl = q * (q - 1) * (q + 1);
    let d = if q % 2 == 0 { 1 } else { 2 };
    match family {
        Family::Pgl2 => pgl,
        Family::Psl2 => pgl / d,
        Family::PGammaL2 => pgl * k as u128,
        Family::Psl2ExtByFieldAut => pgl / d * k as u128,
        _ => unreachable!(),
    }
}

#[test]
fn projective_orders_match_formulas() {
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 25, 27, 32] {
        for family in [Family::Psl2, Family::Pgl2] {
            let g = catalog_group(&GroupRecipe::Projective { family, q }).unwrap();
            assert_eq!(g.order(), classical(family, q), "{family:?}({q})");
            assert_eq!(g.degree(), q as usize + 1);
        }
    }
    for q in [4, 8, 9, 25, 27] {
        for family in [Family::PGammaL2, Family::Psl2ExtByFieldAut] {
            let g = catalog_group(&GroupRecipe::Projective { family, q }).unwrap();
            assert_eq!(g.order(), classical(family, q), "{family:?}({q})");
        }
    }
}

#[test]
fn degree_family_orders() {
    let mut fact: u128 = 1;
    for n in 1..=9usize {
        fact *= n as u128;
        let order = |family| catalog_group(&GroupRecipe::Degree { family, n }).unwrap().order();
        assert_eq!(order(Family::Sym), fact);
        assert_eq!(order(Family::Alt), if n < 2 { 1 } else { fact / 2 });
        assert_eq!(order(Family::Cyclic), n as u128);
        if n >= 3 {
            assert_eq!(order(Family::Dihedral), 2 * n as u128);
        }
    }
    assert_eq!(catalog_group(&GroupRecipe::ElemAbelian { p: 3, k: 3 }).unwrap().order(), 27);
}

/// Enumerates every nonsingular matrix and collects the induced maps.
#[test]
fn mobius_enumeration_matches_generated_groups() {
    for q in [3, 4, 5, 7, 8, 9] {
        let line = ProjectiveLine::new(q).unwrap();
        let f = line.field().clone();
        let els = f.elements();
        let mut pgl = BTreeSet::new();
        let mut psl = BTreeSet::new();
        for a in &els {
            for b in &els {
                for c in &els {
                    for d in &els {
                        let Ok(m) = line.mobius(a, b, c, d) else {
                            continue;
                        };
                        if line.in_psl(a, b, c, d) {
                            psl.insert(m.clone());
                        }
                        pgl.insert(m);
                    }
                }
            }
        }
        assert_eq!(pgl.len() as u128, classical(Family::Pgl2, q), "PGL(2,{q})");
        assert_eq!(psl.len() as u128, classical(Family::Psl2, q), "PSL(2,{q})");
        let cap = 1_000_000;
        let gen_pgl: BTreeSet<Permutation> = catalog_group(&GroupRecipe::pgl2(q))
            .unwrap()
            .elements(cap)
            .unwrap()
            .into_iter()
            .collect();
        let gen_psl: BTreeSet<Permutation> = catalog_group(&GroupRecipe::psl2(q))
            .unwrap()
            .elements(cap)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(gen_pgl, pgl, "PGL(2,{q}) elements");
        assert_eq!(gen_psl, psl, "PSL(2,{q}) elements");
    }
}

#[test]
fn field_axioms_hold_exhaustively() {
    for q in [2, 4, 8, 9, 16, 25, 27, 49] {
        let (p, k) = factor_prime_power(q);
        let f = FieldSpec::new(p, k).unwrap();
        let els = f.elements();
        assert_eq!(els.len(), q as usize);
        let zero = f.zero();
        let one = f.one();
        for a in &els {
            assert_eq!(f.add(a, &zero), *a);
            assert_eq!(f.mul(a, &one), *a);
            assert_eq!(f.add(a, &f.neg(a)), zero);
            if !a.is_zero() {
                assert_eq!(f.mul(a, &f.inv(a).unwrap()), one);
                assert_eq!(f.pow(a, q as u64 - 1), one);
            }
            for b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                // Frobenius is a ring automorphism.
                assert_eq!(f.frobenius(&f.add(a, b)), f.add(&f.frobenius(a), &f.frobenius(b)));
                assert_eq!(f.frobenius(&f.mul(a, b)), f.mul(&f.frobenius(a), &f.frobenius(b)));
            }
        }
        // Distributivity and associativity on a sample of triples.
        let mut rng = rand::rngs::StdRng::seed_from_u64(q as u64);
        for _ in 0..500 {
            let [a, b, c] = [0; 3].map(|_| &els[rng.gen_range(0..els.len())]);
            assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
            assert_eq!(f.mul(a, &f.mul(b, c)), f.mul(&f.mul(a, b), c));
        }
        // The multiplicative group is cyclic of order q-1.
        let g = f.primitive_element();
        assert_eq!(f.multiplicative_order(&g), Some(q as u64 - 1));
        let powers: BTreeSet<u32> = (0..q - 1).map(|e| f.index_of(&f.pow(&g, e as u64))).collect();
        assert_eq!(powers.len(), q as usize - 1);
        let squares: BTreeSet<u32> = els.iter().filter(|a| !a.is_zero()).map(|a| f.index_of(&f.mul(a, a))).collect();
        for a in els.iter().filter(|a| !a.is_zero()) {
            assert_eq!(f.is_square(a), squares.contains(&f.index_of(a)), "GF({q})");
        }
    }
}

#[test]
fn schreier_sims_matches_naive_closure() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.gen_range(2..=7);
        let gens: Vec<Permutation> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let mut img: Vec<u32> = (0..n as u32).collect();
                for i in (1..n).rev() {
                    img.swap(i, rng.gen_range(0..=i));
                }
                Permutation::from_images(img).unwrap()
            })
            .collect();
        let g = PermGroup::new(n, gens.clone()).unwrap();
        let naive = closure_elements(&gens, 5040).unwrap();
        assert_eq!(g.order(), naive.len() as u128);
        for e in &naive {
            assert!(g.has(e));
        }
        let listed: BTreeSet<Permutation> = g.elements(5040).unwrap().into_iter().collect();
        assert_eq!(listed, naive);
    }
}

use std::collections::BTreeSet;

use serde::Serialize;

use crate::forge::{quotient_digraph, Digraph};
use crate::perm::{prime_divisors, PermGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LemmaId {
    /// `π(N_α) = π(N_α^{Δ(α)})`, `|Δ(α)| ≥ max π(N_α)`, and for symmetric `Δ`,
    /// `|Δ(α)| > max π(N_αβ)`.
    PiLocalAction,
    /// `π(N_αβ^{Δ(β)}) = π(N_αβ)` when `Δ` is a single `G`-orbit.
    PiArcStabilizer,
    /// `|Δ(α)| = |Δ_N(B)| |C ∩ Δ(α)|` for intransitive `N`, and `G` is
    /// arc-transitive on `Δ_N`.
    QuotientValencyProduct,
    /// `|Δ(α)| = |Δ_N(B)|` forces `N_α = 1`.
    SemiregularCriterion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LemmaStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub lemma: LemmaId,
    pub status: LemmaStatus,
    /// Reason for SKIPPED, computed values for PASS, full dump for FAIL.
    pub detail: String,
}

impl LemmaCheck {
    fn skipped(lemma: LemmaId, why: impl Into<String>) -> LemmaCheck {
        LemmaCheck {
            lemma,
            status: LemmaStatus::Skipped,
            detail: why.into(),
        }
    }

    fn verdict(lemma: LemmaId, ok: bool, detail: String) -> LemmaCheck {
        LemmaCheck {
            lemma,
            status: if ok { LemmaStatus::Pass } else { LemmaStatus::Fail },
            detail,
        }
    }
}

fn preserves(g: &PermGroup, delta: &Digraph) -> bool {
    g.generators().iter().all(|x| {
        delta
            .arcs()
            .iter()
            .all(|&(a, b)| delta.has_arc(x.apply(a as usize), x.apply(b as usize)))
    })
}

fn fmt_pi(s: &BTreeSet<u128>) -> String {
    let v: Vec<String> = s.iter().map(u128::to_string).collect();
    format!("{{{}}}", v.join(","))
}

/// Orbit count of `g` on the arcs of `delta`.
fn arc_orbit_count(g: &[Permutation], delta: &Digraph) -> usize {
    let arcs = delta.arcs();
    let index = |a: u32, b: u32| arcs.binary_search(&(a, b)).expect("closed arc set");
    let mut seen = vec![false; arcs.len()];
    let mut count = 0;
    for s in 0..arcs.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            let (a, b) = arcs[i];
            for x in g {
                let j = index(x.apply(a as usize) as u32, x.apply(b as usize) as u32);
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    count
}

/// Checks the structural lemmas on `(G, N, Δ)` with `Δ` a `G`-invariant
/// digraph and `N ⊴ G`. Each lemma's hypotheses are tested first and the
/// lemma is SKIPPED (with the reason) if they fail. Computations use the base
/// vertex `α = 0` and `β` the least out-neighbour of `α`.
pub fn verify_structure_lemmas(g: &PermGroup, n: &PermGroup, delta: &Digraph) -> Vec<LemmaCheck> {
    use LemmaId::*;
    let all = [
        PiLocalAction,
        PiArcStabilizer,
        QuotientValencyProduct,
        SemiregularCriterion,
    ];
    let skip_all = |why: &str| all.iter().map(|&l| LemmaCheck::skipped(l, why)).collect::<Vec<_>>();
    let nv = delta.vertex_count();
    if g.degree() != nv || n.degree() != nv {
        return skip_all("group degree differs from the vertex count");
    }
    if !n.is_normal_in(g) {
        return skip_all("N is not a normal subgroup of G");
    }
    if !preserves(g, delta) {
        return skip_all("G does not preserve the arc set");
    }
    if delta.arcs().is_empty() {
        return skip_all("the digraph has no arcs");
    }
    if !delta.is_weakly_connected() {
        return skip_all("the digraph is not connected");
    }
    let g_transitive = g.is_transitive();
    let single_orbit = arc_orbit_count(g.generators(), delta) == 1;
    let alpha = 0usize;
    let out_a: Vec<usize> = delta.out_neighbors(alpha).iter().map(|&v| v as usize).collect();

    let mut checks = Vec::new();

    // Local action π-equality.
    checks.push(if !g_transitive {
        LemmaCheck::skipped(PiLocalAction, "G is not vertex-transitive")
    } else {
        pi_local(n, delta, alpha, &out_a)
    });

    // Arc stabilizer π-equality.
    checks.push(if !g_transitive {
        LemmaCheck::skipped(PiArcStabilizer, "G is not vertex-transitive")
    } else if !single_orbit {
        LemmaCheck::skipped(PiArcStabilizer, "the arc set is not a single G-orbit")
    } else {
        pi_arc(n, delta, alpha, out_a[0])
    });

    let n_transitive = n.is_transitive();
    let quotient = if n_transitive {
        None
    } else {
        quotient_digraph(delta, n).ok()
    };

    checks.push(match (&quotient, single_orbit) {
        (None, _) => LemmaCheck::skipped(QuotientValencyProduct, "N is transitive on V"),
        (_, false) => LemmaCheck::skipped(QuotientValencyProduct, "the arc set is not a single G-orbit"),
        (Some(q), true) => {
            let b = q.orbit_of[alpha];
            let split = q.neighborhood_split(delta, alpha);
            let out_b = q.digraph.out_neighbors(b).len();
            let d = out_a.len();
            let mut ok = true;
            let mut parts = Vec::new();
            for (&c, &k) in &split {
                if c == b {
                    continue;
                }
                parts.push(format!("C={c}: |C∩Δ(α)|={k}"));
                ok &= d == out_b * k;
            }
            let induced: Vec<Permutation> = g
                .generators()
                .iter()
                .map(|x| {
                    let img: Vec<u32> = q
                        .orbits
                        .iter()
                        .map(|o| q.orbit_of[x.apply(o[0])] as u32)
                        .collect();
                    Permutation::from_images(img).expect("G permutes N-orbits")
                })
                .collect();
            let arc_transitive = q.digraph.arcs().is_empty() || arc_orbit_count(&induced, &q.digraph) == 1;
            ok &= arc_transitive;
            LemmaCheck::verdict(
                QuotientValencyProduct,
                ok,
                format!(
                    "|Δ(α)|={d}, |Δ_N(B)|={out_b}, {}; G arc-transitive on Δ_N: {arc_transitive}",
                    parts.join(", ")
                ),
            )
        }
    });

    checks.push(match &quotient {
        None => LemmaCheck::skipped(SemiregularCriterion, "N is transitive on V"),
        Some(_) if !g_transitive => LemmaCheck::skipped(SemiregularCriterion, "G is not vertex-transitive"),
        Some(q) => {
            let b = q.orbit_of[alpha];
            let out_b = q.digraph.out_neighbors(b).len();
            if out_b != out_a.len() {
                LemmaCheck::skipped(
                    SemiregularCriterion,
                    format!("|Δ(α)|={} differs from |Δ_N(B)|={out_b}", out_a.len()),
                )
            } else {
                let stab = n.order() / q.orbits[b].len() as u128;
                LemmaCheck::verdict(SemiregularCriterion, stab == 1, format!("|N_α|={stab}"))
            }
        }
    });
    checks
}

fn pi_local(n: &PermGroup, delta: &Digraph, alpha: usize, out_a: &[usize]) -> LemmaCheck {
    let n_a = match n.point_stabilizer(alpha) {
        Ok(s) => s,
        Err(e) => return LemmaCheck::skipped(LemmaId::PiLocalAction, e.to_string()),
    };
    let local = n_a.restrict_to(out_a).expect("stabilizer preserves Δ(α)");
    let pi_n = prime_divisors(n_a.order());
    let pi_l = prime_divisors(local.order());
    let d = out_a.len() as u128;
    let max_ok = pi_n.iter().max().map_or(true, |&p| d >= p);
    let symmetric = delta.reverse().arcs() == delta.arcs();
    let mut detail = format!(
        "π(N_α)={}, π(N_α^Δ(α))={}, |Δ(α)|={d}",
        fmt_pi(&pi_n),
        fmt_pi(&pi_l)
    );
    let mut sym_ok = true;
    if symmetric {
        let beta = out_a[0];
        let n_ab = n.pointwise_stabilizer(&[alpha, beta]).expect("points in range");
        let pi_ab = prime_divisors(n_ab.order());
        sym_ok = pi_ab.iter().max().map_or(true, |&p| d > p);
        detail.push_str(&format!(", π(N_αβ)={}", fmt_pi(&pi_ab)));
    }
    let ok = pi_n == pi_l && max_ok && sym_ok;
    if !ok {
        detail.push_str(&format!(
            "; COUNTEREXAMPLE N generators {:?}, arcs {:?}",
            n.generators().iter().map(|x| x.images().to_vec()).collect::<Vec<_>>(),
            delta.arcs()
        ));
    }
    LemmaCheck::verdict(LemmaId::PiLocalAction, ok, detail)
}

fn pi_arc(n: &PermGroup, delta: &Digraph, alpha: usize, beta: usize) -> LemmaCheck {
    let n_ab = n.pointwise_stabilizer(&[alpha, beta]).expect("points in range");
    let out_b: Vec<usize> = delta.out_neighbors(beta).iter().map(|&v| v as usize).collect();
    let local = n_ab.restrict_to(&out_b).expect("arc stabilizer preserves Δ(β)");
    let pi_ab = prime_divisors(n_ab.order());
    let pi_l = prime_divisors(local.order());
    let ok = pi_ab == pi_l;
    let mut detail = format!("π(N_αβ)={}, π(N_αβ^Δ(β))={}", fmt_pi(&pi_ab), fmt_pi(&pi_l));
    if !ok {
        detail.push_str(&format!(
            "; COUNTEREXAMPLE N generators {:?}, arcs {:?}",
            n.generators().iter().map(|x| x.images().to_vec()).collect::<Vec<_>>(),
            delta.arcs()
        ));
    }
    LemmaCheck::verdict(LemmaId::PiArcStabilizer, ok, detail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forge::Graph;

    fn hexagon_setup(k: u32) -> (PermGroup, PermGroup, Digraph) {
        let rot = Permutation::from_images((0..6).map(|i| (i + 1) % 6).collect()).unwrap();
        let refl = Permutation::from_images((0..6).map(|i| (6 - i) % 6).collect()).unwrap();
        let g = PermGroup::new(6, vec![rot.clone(), refl]).unwrap();
        let n = PermGroup::new(6, vec![rot.pow(k as u64)]).unwrap();
        let delta = Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap().to_digraph();
        (g, n, delta)
    }

    fn status(checks: &[LemmaCheck], id: LemmaId) -> LemmaStatus {
        checks.iter().find(|c| c.lemma == id).unwrap().status
    }

    #[test]
    fn rotation_squared_quotient() {
        let (g, n, delta) = hexagon_setup(2);
        let checks = verify_structure_lemmas(&g, &n, &delta);
        assert_eq!(status(&checks, LemmaId::QuotientValencyProduct), LemmaStatus::Pass);
        assert_eq!(status(&checks, LemmaId::SemiregularCriterion), LemmaStatus::Skipped);
        assert_eq!(status(&checks, LemmaId::PiLocalAction), LemmaStatus::Pass);
        assert_eq!(status(&checks, LemmaId::PiArcStabilizer), LemmaStatus::Pass);
    }

    #[test]
    fn rotation_cubed_is_semiregular() {
        let (g, n, delta) = hexagon_setup(3);
        let checks = verify_structure_lemmas(&g, &n, &delta);
        assert_eq!(status(&checks, LemmaId::SemiregularCriterion), LemmaStatus::Pass);
        assert_eq!(status(&checks, LemmaId::QuotientValencyProduct), LemmaStatus::Pass);
    }

    #[test]
    fn non_normal_skips_everything() {
        let (g, _, delta) = hexagon_setup(1);
        let refl = PermGroup::new(6, vec![g.generators()[1].clone()]).unwrap();
        let checks = verify_structure_lemmas(&g, &refl, &delta);
        assert!(checks.iter().all(|c| c.status == LemmaStatus::Skipped));
    }
}

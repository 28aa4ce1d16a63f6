use serde::Serialize;

use super::recipe::{ExampleSpec, Fact, HStep, XConstraint, XSite};
use crate::catalog::catalog_group;
use crate::error::{Error, Result};
use crate::forge::{coset_graph, complete_graph, intersection_with_conjugate, CosetGraph, Graph, DEFAULT_COSET_CAP};
use crate::lab::NamedGroup;
use crate::perm::{
    closure_elements, find_subgroups_by_shape, is_alternating4, is_dihedral, is_klein_four,
    is_symmetric4, PermGroup, Permutation, ShapeSearch, SubgroupShape,
};

#[derive(Clone, Copy, Debug)]
pub struct ConstructOptions {
    pub element_cap: u128,
    pub coset_cap: usize,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            element_cap: crate::perm::DEFAULT_ELEMENT_CAP,
            coset_cap: DEFAULT_COSET_CAP,
        }
    }
}

/// A subgroup with its sorted element list.
#[derive(Clone, Debug)]
pub struct Sub {
    pub group: PermGroup,
    pub elements: Vec<Permutation>,
}

impl Sub {
    fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Sub {
        elements.sort();
        let group = crate::perm::subgroup_from_elements(degree, &elements);
        Sub { group, elements }
    }

    fn contains(&self, x: &Permutation) -> bool {
        self.elements.binary_search(x).is_ok()
    }
}

/// One setting of the choice points preceding `x`.
#[derive(Clone, Debug)]
pub struct Context {
    pub label: String,
    pub h: Sub,
    pub h1: Option<Sub>,
    pub k: Option<Sub>,
    pub o: Option<Permutation>,
}

/// Choices made, in interchange form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChoiceRecord {
    pub context: String,
    pub h_order: u128,
    pub h_generators: Vec<Vec<u32>>,
    pub k_generators: Option<Vec<Vec<u32>>>,
    pub o: Option<Vec<u32>>,
    pub x: Vec<u32>,
    /// Number of `x` in the search site satisfying every constraint for this
    /// context.
    pub qualifying_x: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactResult {
    pub fact: String,
    pub holds: bool,
}

/// The constructed objects of an example.
#[derive(Clone, Debug)]
pub struct Construction {
    pub spec: ExampleSpec,
    /// `G` and `T` in their defining representations.
    pub group: NamedGroup,
    pub normal: Option<NamedGroup>,
    pub choice: Option<ChoiceRecord>,
    pub facts: Vec<FactResult>,
    pub coset: Option<CosetGraph>,
    pub graph: Graph,
    /// `G` and `T` acting on the vertices.
    pub action: NamedGroup,
    pub normal_action: Option<NamedGroup>,
    pub trace: Vec<String>,
}

fn imgs(v: &[Permutation]) -> Vec<Vec<u32>> {
    v.iter().map(|p| p.images().to_vec()).collect()
}

fn involutions_of(elements: &[Permutation]) -> Vec<Permutation> {
    let mut v: Vec<Permutation> = elements.iter().filter(|e| e.order() == 2).cloned().collect();
    v.sort();
    v
}

fn shape_candidates(
    g: &PermGroup,
    shape: SubgroupShape,
    within: Option<&PermGroup>,
    cap: u128,
) -> Result<Vec<Sub>> {
    Ok(find_subgroups_by_shape(
        g,
        shape,
        within,
        ShapeSearch {
            limit: None,
            element_cap: cap,
        },
    )?
    .into_iter()
    .map(|f| Sub {
        group: f.group,
        elements: f.elements,
    })
    .collect())
}

fn meet(h: &Sub, t: &PermGroup) -> Sub {
    let els: Vec<Permutation> = h.elements.iter().filter(|e| t.has(e)).cloned().collect();
    Sub::from_elements(h.group.degree(), els)
}

/// Visits every context in canonical (lexicographic) order until `visit`
/// returns `false`.
fn for_each_context(
    spec: &ExampleSpec,
    g: &PermGroup,
    t: &PermGroup,
    opts: &ConstructOptions,
    trace: &mut Vec<String>,
    visit: &mut dyn FnMut(Context, &mut Vec<String>) -> Result<bool>,
) -> Result<()> {
    let cap = opts.element_cap;
    let needs_o = spec.site == Some(XSite::CentralizerOfO);
    let degree = g.degree();
    // Expands a fixed (H, H1, K) into contexts over o.
    let mut emit = |label: String,
                    h: Sub,
                    h1: Option<Sub>,
                    k: Option<Sub>,
                    trace: &mut Vec<String>|
     -> Result<bool> {
        if !needs_o {
            return visit(
                Context {
                    label,
                    h,
                    h1,
                    k,
                    o: None,
                },
                trace,
            );
        }
        let ht = meet(&h, t);
        for (i, o) in involutions_of(&ht.elements).into_iter().enumerate() {
            let ctx = Context {
                label: format!("{label}, o#{i}"),
                h: h.clone(),
                h1: h1.clone(),
                k: k.clone(),
                o: Some(o),
            };
            if !visit(ctx, trace)? {
                return Ok(false);
            }
        }
        Ok(true)
    };

    match spec.h.as_ref().expect("coset example has an H step") {
        HStep::Shape(shape) => {
            let hs = shape_candidates(g, *shape, None, cap)?;
            trace.push(format!("{} candidates for H of shape {shape}", hs.len()));
            for (i, h) in hs.into_iter().enumerate() {
                if spec.k_in_h {
                    let ht = meet(&h, t);
                    let ks = shape_candidates(g, SubgroupShape::klein_four(), Some(&ht.group), cap)?;
                    if ks.is_empty() {
                        trace.push(format!("H#{i}: no Klein four-group in H ∩ T"));
                    }
                    for (j, k) in ks.into_iter().enumerate() {
                        if !emit(format!("H#{i}, K#{j}"), h.clone(), None, Some(k), trace)? {
                            return Ok(());
                        }
                    }
                } else if !emit(format!("H#{i}"), h, None, None, trace)? {
                    return Ok(());
                }
            }
        }
        HStep::CentralInvolutionTimes(shape) => {
            let h1s = shape_candidates(t, *shape, None, cap)?;
            trace.push(format!("{} candidates for H1 ≤ T of shape {shape}", h1s.len()));
            for (i, h1) in h1s.into_iter().enumerate() {
                let cent = g.centralizer_of(&h1.group, cap)?;
                let cs: Vec<Permutation> = involutions_of(&cent.elements(cap)?)
                    .into_iter()
                    .filter(|c| !t.has(c))
                    .collect();
                if cs.is_empty() {
                    trace.push(format!("H1#{i}: no involution in C_G(H1) \\ T"));
                }
                for (j, c) in cs.into_iter().enumerate() {
                    let mut gens = h1.group.generators().to_vec();
                    gens.push(c);
                    let Some(els) = closure_elements(&gens, 2 * h1.elements.len()) else {
                        continue;
                    };
                    let h = Sub::from_elements(degree, els.into_iter().collect());
                    if !emit(format!("H1#{i}, c#{j}"), h, Some(h1.clone()), None, trace)? {
                        return Ok(());
                    }
                }
            }
        }
        HStep::OverKleinNormalizer(shape) => {
            let ks = shape_candidates(t, SubgroupShape::klein_four(), None, cap)?;
            trace.push(format!("{} Klein four-groups in T", ks.len()));
            for (i, k) in ks.into_iter().enumerate() {
                let norm = g.normalizer_of(&k.group, cap)?;
                let hs: Vec<Sub> = shape_candidates(g, *shape, Some(&norm), cap)?
                    .into_iter()
                    .filter(|h| meet(h, t).elements == k.elements)
                    .collect();
                if hs.is_empty() {
                    trace.push(format!(
                        "K#{i}: no subgroup of shape {shape} in N_G(K) (order {}) meeting T in K",
                        norm.order()
                    ));
                }
                for (j, h) in hs.into_iter().enumerate() {
                    if !emit(format!("K#{i}, H#{j}"), h, None, Some(k.clone()), trace)? {
                        return Ok(());
                    }
                }
            }
        }
    }
    Ok(())
}

/// Site group for `x` in a context.
fn site_group(spec: &ExampleSpec, ctx: &Context, g: &PermGroup, t: &PermGroup, cap: u128) -> Result<PermGroup> {
    match spec.site.expect("coset example has an x site") {
        XSite::NormalizerInT => t.normalizer_of(&ctx.k.as_ref().expect("K chosen").group, cap),
        XSite::NormalizerInG => g.normalizer_of(&ctx.k.as_ref().expect("K chosen").group, cap),
        XSite::CentralizerOfO => t.centralizer_of_element(ctx.o.as_ref().expect("o chosen"), cap),
    }
}

/// Why `x` fails the constraints, or `None` if it satisfies them all.
fn reject_reason(
    spec: &ExampleSpec,
    ctx: &Context,
    g: &PermGroup,
    x: &Permutation,
) -> Result<Option<&'static str>> {
    let meet_h = || intersection_with_conjugate(&ctx.h.elements, &ctx.h.group, x);
    for c in &spec.constraints {
        let ok = match *c {
            XConstraint::IntersectionOrder(n) => meet_h().len() as u128 == n,
            XConstraint::IntersectionIsK => {
                let mut m = meet_h();
                m.sort();
                Some(&m) == ctx.k.as_ref().map(|k| &k.elements)
            }
            XConstraint::Generates => ctx.h.group.join(std::slice::from_ref(x))?.order() == g.order(),
            XConstraint::H1JoinIsSym4 => {
                let h1 = ctx.h1.as_ref().expect("H1 chosen");
                let mut gens = h1.group.generators().to_vec();
                gens.push(x.clone());
                closure_elements(&gens, 24).map_or(false, |s| {
                    s.len() == 24 && is_symmetric4(&s.into_iter().collect::<Vec<_>>())
                })
            }
            XConstraint::HIndex(i) => ctx.h.elements.len() as u128 == i * meet_h().len() as u128,
            XConstraint::H1Index(i) => {
                let h1 = ctx.h1.as_ref().expect("H1 chosen");
                let m = intersection_with_conjugate(&h1.elements, &h1.group, x).len() as u128;
                h1.elements.len() as u128 == i * m
            }
        };
        if !ok {
            return Ok(Some(match c {
                XConstraint::IntersectionOrder(_) => "|H ∩ H^x|",
                XConstraint::IntersectionIsK => "H ∩ H^x ≠ K",
                XConstraint::Generates => "<x, H> ≠ G",
                XConstraint::H1JoinIsSym4 => "<x, H1> not S4",
                XConstraint::HIndex(_) => "|H : H ∩ H^x|",
                XConstraint::H1Index(_) => "|H1 : H1 ∩ H1^x|",
            }));
        }
    }
    Ok(None)
}

/// Qualifying involutions `x` in the site, in lexicographic order.
fn qualifying_x(
    spec: &ExampleSpec,
    ctx: &Context,
    g: &PermGroup,
    t: &PermGroup,
    cap: u128,
    trace: &mut Vec<String>,
) -> Result<Vec<Permutation>> {
    let site = site_group(spec, ctx, g, t, cap)?;
    let cands: Vec<Permutation> = involutions_of(&site.elements(cap)?)
        .into_iter()
        .filter(|x| !ctx.h.contains(x))
        .collect();
    let mut out = Vec::new();
    let mut rejected: std::collections::BTreeMap<&str, usize> = Default::default();
    for x in cands.iter() {
        match reject_reason(spec, ctx, g, x)? {
            None => out.push(x.clone()),
            Some(r) => *rejected.entry(r).or_default() += 1,
        }
    }
    let rej: Vec<String> = rejected.iter().map(|(r, n)| format!("{r}: {n}")).collect();
    trace.push(format!(
        "{}: site order {}, {} involutions outside H, {} qualify{}",
        ctx.label,
        site.order(),
        cands.len(),
        out.len(),
        if rej.is_empty() {
            String::new()
        } else {
            format!(" (rejected {})", rej.join(", "))
        }
    ));
    Ok(out)
}

fn evaluate_fact(fact: Fact, ctx: &Context, g: &PermGroup, t: &PermGroup, cap: u128) -> Result<bool> {
    let k = || ctx.k.as_ref().expect("K chosen");
    let els = |p: &PermGroup| p.elements(cap);
    Ok(match fact {
        Fact::NormalizerInHIsD8 => {
            let n = els(&ctx.h.group.normalizer_of(&k().group, cap)?)?;
            n.len() == 8 && is_dihedral(&n)
        }
        Fact::NormalizerInGEqualsNormalizerInTIsS4 => {
            let ng = g.normalizer_of(&k().group, cap)?;
            let nt = t.normalizer_of(&k().group, cap)?;
            ng.same_group(&nt) && is_symmetric4(&els(&ng)?)
        }
        Fact::NormalizerInGIsS4 => is_symmetric4(&els(&g.normalizer_of(&k().group, cap)?)?),
        Fact::NormalizerInTIsA4 => is_alternating4(&els(&t.normalizer_of(&k().group, cap)?)?),
        Fact::CentralizerOfOIsDihedral(n) => {
            let c = els(&t.centralizer_of_element(ctx.o.as_ref().expect("o chosen"), cap)?)?;
            c.len() as u128 == n && is_dihedral(&c)
        }
        Fact::CentralizerMeetsHInKlein => {
            let c = t.centralizer_of_element(ctx.o.as_ref().expect("o chosen"), cap)?;
            let mut in_both: Vec<Permutation> =
                ctx.h.elements.iter().filter(|e| c.has(e)).cloned().collect();
            in_both.sort();
            let ht = meet(&ctx.h, t);
            in_both == ht.elements && is_klein_four(&in_both)
        }
    })
}

fn load_groups(spec: &ExampleSpec) -> Result<(NamedGroup, Option<NamedGroup>)> {
    let g = NamedGroup::new(spec.group_name.clone(), catalog_group(&spec.group)?);
    let t = match (&spec.normal, &spec.normal_name) {
        (Some(r), Some(name)) => Some(NamedGroup::new(name.clone(), catalog_group(r)?)),
        _ => None,
    };
    Ok((g, t))
}

fn fixed_facts(spec: &ExampleSpec, ctx: &Context, g: &PermGroup, t: &PermGroup, cap: u128) -> Result<Vec<FactResult>> {
    let mut out = Vec::new();
    for c in &spec.claims {
        if let super::recipe::ExpectedClaim::Fact(f) = c {
            out.push(FactResult {
                fact: f.to_string(),
                holds: evaluate_fact(*f, ctx, g, t, cap)?,
            });
        }
    }
    Ok(out)
}

fn build_from_choice(
    spec: &ExampleSpec,
    g: &NamedGroup,
    t: &NamedGroup,
    ctx: &Context,
    x: &Permutation,
    qualifying: usize,
    opts: &ConstructOptions,
    trace: Vec<String>,
) -> Result<Construction> {
    let cg = coset_graph(&g.group, &ctx.h.group, x, opts.coset_cap)?;
    let action = NamedGroup::new(g.name.clone(), cg.action()?);
    let normal_action = NamedGroup::new(t.name.clone(), cg.geometry.induced_group(&t.group)?);
    let facts = fixed_facts(spec, ctx, &g.group, &t.group, opts.element_cap)?;
    let choice = ChoiceRecord {
        context: ctx.label.clone(),
        h_order: ctx.h.elements.len() as u128,
        h_generators: imgs(ctx.h.group.generators()),
        k_generators: ctx.k.as_ref().map(|k| imgs(k.group.generators())),
        o: ctx.o.as_ref().map(|o| o.images().to_vec()),
        x: x.images().to_vec(),
        qualifying_x: qualifying,
    };
    Ok(Construction {
        spec: spec.clone(),
        group: g.clone(),
        normal: Some(t.clone()),
        choice: Some(choice),
        facts,
        graph: cg.graph.clone(),
        coset: Some(cg),
        action,
        normal_action: Some(normal_action),
        trace,
    })
}

/// Runs the recipe, taking the lexicographically least choice at every
/// choice point and backtracking when a later step has no valid option.
pub fn construct_example(spec: &ExampleSpec, opts: &ConstructOptions) -> Result<Construction> {
    let (g, t) = load_groups(spec)?;
    let Some(t) = t else {
        return construct_complete(spec, g);
    };
    let mut trace = Vec::new();
    let mut found: Option<(Context, Permutation, usize)> = None;
    for_each_context(spec, &g.group, &t.group, opts, &mut trace, &mut |ctx, trace| {
        let xs = qualifying_x(spec, &ctx, &g.group, &t.group, opts.element_cap, trace)?;
        if let Some(x) = xs.first() {
            found = Some((ctx, x.clone(), xs.len()));
            return Ok(false);
        }
        Ok(true)
    })?;
    let Some((ctx, x, count)) = found else {
        return Err(Error::SearchFailed(format!(
            "{}: no choice of subgroups and x satisfies the recipe; search trace:\n  {}",
            spec.id,
            trace.join("\n  ")
        )));
    };
    build_from_choice(spec, &g, &t, &ctx, &x, count, opts, trace)
}

fn construct_complete(spec: &ExampleSpec, g: NamedGroup) -> Result<Construction> {
    let graph = complete_graph(g.group.degree())?;
    Ok(Construction {
        spec: spec.clone(),
        action: g.clone(),
        group: g,
        normal: None,
        choice: None,
        facts: Vec::new(),
        coset: None,
        graph,
        normal_action: None,
        trace: Vec::new(),
    })
}

/// Every valid choice tuple (context and `x`), in canonical order, up to
/// `limit` tuples.
pub fn enumerate_constructions(
    spec: &ExampleSpec,
    opts: &ConstructOptions,
    limit: usize,
) -> Result<(Vec<Construction>, bool)> {
    let (g, t) = load_groups(spec)?;
    let Some(t) = t else {
        return Ok((vec![construct_complete(spec, g)?], false));
    };
    let mut picks: Vec<(Context, Permutation, usize)> = Vec::new();
    let mut truncated = false;
    let mut trace = Vec::new();
    for_each_context(spec, &g.group, &t.group, opts, &mut trace, &mut |ctx, trace| {
        let xs = qualifying_x(spec, &ctx, &g.group, &t.group, opts.element_cap, trace)?;
        let n = xs.len();
        for x in xs {
            if picks.len() >= limit {
                truncated = true;
                return Ok(false);
            }
            picks.push((ctx.clone(), x, n));
        }
        Ok(true)
    })?;
    let mut out = Vec::new();
    for (ctx, x, n) in picks {
        out.push(build_from_choice(spec, &g, &t, &ctx, &x, n, opts, Vec::new())?);
    }
    Ok((out, truncated))
}

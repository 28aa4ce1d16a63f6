use std::collections::BTreeSet;

use serde::Serialize;

use super::action::{
    arc_orbit_arcs, arc_pairing, certify_action, local_action, orbit_decomposition,
    transitivity_profile, ArcPairing, LocalActionSummary, ObjectKind, TransitivityProfile,
};
use super::automorphisms::graph_automorphisms;
use super::lemmas::{verify_structure_lemmas, LemmaCheck};
use super::normal::{classify_normal_subgroup, NormalClassification};
use super::witness::{find_arc_witness, ArcWitness};
use crate::error::Result;
use crate::forge::{components_and_shapes, shape_census, Digraph, Graph};
use crate::perm::{prime_divisors, PermGroup, DEFAULT_ELEMENT_CAP};

/// A group together with the label used for it in reports.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: PermGroup,
}

impl NamedGroup {
    pub fn new(name: impl Into<String>, group: PermGroup) -> NamedGroup {
        NamedGroup {
            name: name.into(),
            group,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub element_cap: u128,
    pub aut_vertex_cap: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            element_cap: DEFAULT_ELEMENT_CAP,
            aut_vertex_cap: super::automorphisms::DEFAULT_AUT_VERTEX_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeCount {
    pub shape: String,
    pub count: usize,
}

/// The spanning subgraph formed by one orbit on edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSubgraph {
    pub edges: usize,
    pub valency: Option<usize>,
    pub components: Vec<ShapeCount>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiSets {
    pub vertex_stabilizer: BTreeSet<u128>,
    pub arc_stabilizer: BTreeSet<u128>,
}

/// Lemma checks for one `G`-orbit on arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaLemmas {
    pub arc_orbit: usize,
    pub checks: Vec<LemmaCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalReport {
    pub name: String,
    pub order: u128,
    pub normal: bool,
    pub profile: TransitivityProfile,
    pub edge_orbit_sizes: Vec<usize>,
    pub arc_pairing: ArcPairing,
    pub edge_orbit_subgraphs: Vec<OrbitSubgraph>,
    pub classification: Option<NormalClassification>,
    pub classification_error: Option<String>,
    pub lemmas: Vec<DeltaLemmas>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismSummary {
    pub computed: bool,
    pub order: Option<u128>,
    pub contains_group: Option<bool>,
    pub equals_group: Option<bool>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub claim: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

/// Everything computed about `(Γ, G, N...)`. Field order is the serialized
/// key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub graph: String,
    pub group: String,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub valency: Option<usize>,
    pub connected: bool,
    pub group_order: u128,
    pub profile: TransitivityProfile,
    pub local_action: Option<LocalActionSummary>,
    pub pi: Option<PiSets>,
    pub arc_witness: Option<ArcWitness>,
    pub arc_witness_error: Option<String>,
    pub normal_subgroups: Vec<NormalReport>,
    pub automorphisms: AutomorphismSummary,
    pub claims: Vec<ClaimResult>,
}

impl AnalysisReport {
    pub fn normal(&self, name: &str) -> Option<&NormalReport> {
        self.normal_subgroups.iter().find(|n| n.name == name)
    }

    pub fn all_claims_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn orbit_subgraphs(graph: &Graph, act_edges: &[Vec<usize>]) -> Result<Vec<OrbitSubgraph>> {
    act_edges
        .iter()
        .map(|orbit| {
            let sub = Graph::new(
                graph.vertex_count(),
                orbit.iter().map(|&e| {
                    let (u, v) = graph.edges()[e];
                    (u as usize, v as usize)
                }),
            )?;
            let census = shape_census(&components_and_shapes(&sub));
            Ok(OrbitSubgraph {
                edges: sub.edge_count(),
                valency: sub.valency(),
                components: census
                    .into_iter()
                    .map(|(shape, count)| ShapeCount {
                        shape: shape.to_string(),
                        count,
                    })
                    .collect(),
            })
        })
        .collect()
}

/// Full analysis of a certified action and of each supplied normal subgroup.
/// When no normal subgroup is supplied the lemma checks use `N = G`.
pub fn analyze(
    graph_name: &str,
    graph: &Graph,
    g: &NamedGroup,
    normals: &[NamedGroup],
    opts: &AnalysisOptions,
) -> Result<AnalysisReport> {
    let act = certify_action(&g.group, graph)?;
    let profile = transitivity_profile(&act);
    let has_edges = graph.edge_count() > 0;
    let local = if has_edges && graph.degree(0) > 0 {
        Some(local_action(&act, 0)?.summary())
    } else {
        None
    };
    let pi = if has_edges && graph.degree(0) > 0 {
        let beta = graph.neighbors(0)[0] as usize;
        Some(PiSets {
            vertex_stabilizer: prime_divisors(g.group.point_stabilizer(0)?.order()),
            arc_stabilizer: prime_divisors(g.group.pointwise_stabilizer(&[0, beta])?.order()),
        })
    } else {
        None
    };
    let (arc_witness, arc_witness_error) = if profile.arc_transitive && graph.is_connected() {
        let (u, v) = graph.edges()[0];
        match find_arc_witness(&act, (u as usize, v as usize), opts.element_cap) {
            Ok(w) => (Some(w), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };

    let g_arc_orbits = orbit_decomposition(&act, ObjectKind::Arc);
    let deltas: Vec<Digraph> = g_arc_orbits
        .orbits
        .iter()
        .map(|o| {
            Digraph::new(
                graph.vertex_count(),
                arc_orbit_arcs(&act, o).into_iter().map(|(a, b)| (a as usize, b as usize)),
            )
        })
        .collect::<Result<_>>()?;

    let default_normal = [g.clone()];
    let normal_list: &[NamedGroup] = if normals.is_empty() { &default_normal } else { normals };
    let mut normal_subgroups = Vec::new();
    for n in normal_list {
        let nact = act.with_group(&n.group)?;
        let is_normal = n.group.is_normal_in(&g.group);
        let edge_orbits = orbit_decomposition(&nact, ObjectKind::Edge);
        let (classification, classification_error) = if is_normal && profile.edge_transitive {
            match classify_normal_subgroup(&act, &n.group) {
                Ok(c) => (Some(c), None),
                Err(e) => (None, Some(e.to_string())),
            }
        } else {
            (None, None)
        };
        let lemmas = deltas
            .iter()
            .enumerate()
            .map(|(i, d)| DeltaLemmas {
                arc_orbit: i,
                checks: verify_structure_lemmas(&g.group, &n.group, d),
            })
            .collect();
        normal_subgroups.push(NormalReport {
            name: n.name.clone(),
            order: n.group.order(),
            normal: is_normal,
            profile: transitivity_profile(&nact),
            edge_orbit_sizes: edge_orbits.sizes(),
            arc_pairing: arc_pairing(&nact),
            edge_orbit_subgraphs: orbit_subgraphs(graph, &edge_orbits.orbits)?,
            classification,
            classification_error,
            lemmas,
        });
    }

    let automorphisms = if graph.vertex_count() <= opts.aut_vertex_cap {
        let aut = graph_automorphisms(graph, opts.aut_vertex_cap)?;
        let contains = g.group.is_subgroup_of(&aut.group);
        AutomorphismSummary {
            computed: true,
            order: Some(aut.order),
            contains_group: Some(contains),
            equals_group: Some(contains && aut.order == g.group.order()),
            note: None,
        }
    } else {
        AutomorphismSummary {
            computed: false,
            order: None,
            contains_group: None,
            equals_group: None,
            note: Some(format!(
                "skipped: {} vertices exceed the cap of {}",
                graph.vertex_count(),
                opts.aut_vertex_cap
            )),
        }
    };

    Ok(AnalysisReport {
        graph: graph_name.to_string(),
        group: g.name.clone(),
        vertex_count: graph.vertex_count(),
        edge_count: graph.edge_count(),
        valency: graph.valency(),
        connected: graph.is_connected(),
        group_order: g.group.order(),
        profile,
        local_action: local,
        pi,
        arc_witness,
        arc_witness_error,
        normal_subgroups,
        automorphisms,
        claims: Vec::new(),
    })
}

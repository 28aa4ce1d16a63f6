use super::construct::FactResult;
use super::recipe::{ExampleSpec, ExpectedClaim};
use crate::lab::{AnalysisReport, CaseTag, ClaimResult, NormalReport, ShapeCount};

impl ExpectedClaim {
    pub fn label(&self) -> String {
        use ExpectedClaim::*;
        match self {
            VertexCount(_) => "vertex count".into(),
            EdgeCount(_) => "edge count".into(),
            Valency(_) => "valency".into(),
            Connected => "connected".into(),
            ArcTransitive => "G-arc-transitive".into(),
            NotTwoArcTransitive => "not (G,2)-arc-transitive".into(),
            TwoArcTransitive => "(G,2)-arc-transitive".into(),
            VertexPrimitive => "G vertex-primitive".into(),
            NormalVertexTransitive => "T vertex-transitive".into(),
            NormalEdgeOrbits(_) => "T edge orbits".into(),
            NormalEdgeTransitiveNotArcTransitive => "T edge- but not arc-transitive".into(),
            NormalArcOrbitsReversalPair => "T arc orbits form one reversal pair".into(),
            NormalOrbitComponents { .. } => "T edge-orbit subgraphs".into(),
            PairedEdgePartition => "PAIRED_EDGE_PARTITION for T".into(),
            AutOrder(_) => "|Aut|".into(),
            AutEqualsGroup => "Aut = G".into(),
            Fact(f) => f.to_string(),
        }
    }
}

fn result(claim: &ExpectedClaim, expected: impl ToString, observed: impl ToString, pass: bool) -> ClaimResult {
    ClaimResult {
        claim: claim.label(),
        expected: expected.to_string(),
        observed: observed.to_string(),
        pass,
    }
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or("none".into(), |v| v.to_string())
}

fn components_text(c: &[ShapeCount]) -> String {
    let parts: Vec<String> = c.iter().map(|s| format!("{} x {}", s.count, s.shape)).collect();
    format!("[{}]", parts.join(", "))
}

fn check_normal(claim: &ExpectedClaim, n: &NormalReport) -> ClaimResult {
    use ExpectedClaim::*;
    let p = &n.profile;
    match claim {
        NormalVertexTransitive => result(claim, true, p.vertex_transitive, p.vertex_transitive),
        NormalEdgeOrbits(k) => result(claim, k, p.edge_orbits, p.edge_orbits == *k),
        NormalEdgeTransitiveNotArcTransitive => result(
            claim,
            "edge orbits 1, arc orbits 2",
            format!("edge orbits {}, arc orbits {}", p.edge_orbits, p.arc_orbits),
            p.edge_transitive && !p.arc_transitive,
        ),
        NormalArcOrbitsReversalPair => result(
            claim,
            "arc orbits 2, mutual pairs 1",
            format!("arc orbits {}, mutual pairs {}", p.arc_orbits, n.arc_pairing.mutual_pairs),
            p.arc_orbits == 2 && n.arc_pairing.mutual_pairs == 1,
        ),
        NormalOrbitComponents { valency, shape, count } => {
            let want = [ShapeCount {
                shape: shape.clone(),
                count: *count,
            }];
            let observed: Vec<String> = n
                .edge_orbit_subgraphs
                .iter()
                .map(|s| format!("valency {} {}", opt(s.valency), components_text(&s.components)))
                .collect();
            let pass = !n.edge_orbit_subgraphs.is_empty()
                && n
                    .edge_orbit_subgraphs
                    .iter()
                    .all(|s| s.valency == Some(*valency) && s.components == want);
            result(
                claim,
                format!("each: valency {valency} {}", components_text(&want)),
                observed.join("; "),
                pass,
            )
        }
        PairedEdgePartition => {
            let tags: Vec<CaseTag> = n.classification.as_ref().map(|c| c.tags.clone()).unwrap_or_default();
            let observed = match (&n.classification, &n.classification_error) {
                (_, Some(e)) => format!("error: {e}"),
                (Some(c), None) => serde_json::to_string(&c.tags).expect("tags serialize"),
                (None, None) => "not classified".into(),
            };
            result(claim, "PAIRED_EDGE_PARTITION", observed, tags.contains(&CaseTag::PairedEdgePartition))
        }
        _ => unreachable!("not a normal-subgroup claim"),
    }
}

/// Evaluates every expected claim of `spec` against the report and the
/// recorded construction facts.
pub fn evaluate_claims(spec: &ExampleSpec, report: &AnalysisReport, facts: &[FactResult]) -> Vec<ClaimResult> {
    use ExpectedClaim::*;
    let p = &report.profile;
    let normal = spec.normal_name.as_deref().and_then(|n| report.normal(n));
    let aut = &report.automorphisms;
    spec.claims
        .iter()
        .map(|c| match c {
            VertexCount(n) => result(c, n, report.vertex_count, report.vertex_count == *n),
            EdgeCount(n) => result(c, n, report.edge_count, report.edge_count == *n),
            Valency(k) => result(c, k, opt(report.valency), report.valency == Some(*k)),
            Connected => result(c, true, report.connected, report.connected),
            ArcTransitive => result(c, true, p.arc_transitive, p.arc_transitive),
            NotTwoArcTransitive => result(c, false, p.two_arc_transitive, !p.two_arc_transitive),
            TwoArcTransitive => result(c, true, p.two_arc_transitive, p.two_arc_transitive),
            VertexPrimitive => result(c, true, p.primitive, p.primitive),
            AutOrder(n) => result(c, n, opt(aut.order), aut.order == Some(*n)),
            AutEqualsGroup => result(c, true, opt(aut.equals_group), aut.equals_group == Some(true)),
            Fact(f) => {
                let label = f.to_string();
                let holds = facts.iter().find(|r| r.fact == label).map(|r| r.holds);
                result(c, true, opt(holds), holds == Some(true))
            }
            _ => match normal {
                Some(n) => check_normal(c, n),
                None => result(c, "normal subgroup report", "missing", false),
            },
        })
        .collect()
}

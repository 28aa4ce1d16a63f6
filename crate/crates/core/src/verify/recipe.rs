use serde::Serialize;

use crate::catalog::GroupRecipe;
use crate::error::{invalid, Result};
use crate::perm::{ShapeKind, SubgroupShape};

/// How the subgroup `H` is chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HStep {
    /// A subgroup of `G` of the given shape.
    Shape(SubgroupShape),
    /// `H = <c> x H1` with `H1 ≤ T` of the given shape and `c` an involution
    /// in `C_G(H1) \ T`.
    CentralInvolutionTimes(SubgroupShape),
    /// `K` a Klein four-group in `T`, then `H` of the given shape in `N_G(K)`
    /// with `H ∩ T = K`.
    OverKleinNormalizer(SubgroupShape),
}

/// Where `x` is searched for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum XSite {
    /// `N_T(K)`.
    NormalizerInT,
    /// `N_G(K)`.
    NormalizerInG,
    /// `C_T(o)` for an involution `o ∈ H ∩ T`.
    CentralizerOfO,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum XConstraint {
    /// `|H ∩ H^x|` equals the given order.
    IntersectionOrder(u128),
    /// `H ∩ H^x = K`.
    IntersectionIsK,
    /// `<x, H> = G`.
    Generates,
    /// `<x, H1>` is isomorphic to `S4`.
    H1JoinIsSym4,
    /// `|H : H ∩ H^x|` equals the given index.
    HIndex(u128),
    /// `|H1 : H1 ∩ H1^x|` equals the given index.
    H1Index(u128),
}

/// Checkable consequences of the construction, each mapped to a report field
/// or a recorded construction fact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExpectedClaim {
    VertexCount(usize),
    EdgeCount(usize),
    Valency(usize),
    Connected,
    ArcTransitive,
    NotTwoArcTransitive,
    TwoArcTransitive,
    VertexPrimitive,
    NormalVertexTransitive,
    NormalEdgeOrbits(usize),
    NormalEdgeTransitiveNotArcTransitive,
    /// Exactly two arc orbits under `T`, paired with each other by reversal.
    NormalArcOrbitsReversalPair,
    /// Every `T`-edge-orbit spans a subgraph of the given valency that is a
    /// disjoint union of `count` components of shape `shape`.
    NormalOrbitComponents {
        valency: usize,
        shape: String,
        count: usize,
    },
    /// `PAIRED_EDGE_PARTITION` is among the classification tags for `T`.
    PairedEdgePartition,
    AutOrder(u128),
    AutEqualsGroup,
    /// A structural fact about the chosen subgroups.
    Fact(Fact),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Fact {
    /// `N_H(K) ≅ D8`.
    NormalizerInHIsD8,
    /// `N_G(K) = N_T(K) ≅ S4`.
    NormalizerInGEqualsNormalizerInTIsS4,
    /// `N_G(K) ≅ S4`.
    NormalizerInGIsS4,
    /// `N_T(K) ≅ A4`.
    NormalizerInTIsA4,
    /// `C_T(o)` is dihedral of the given order.
    CentralizerOfOIsDihedral(u128),
    /// `C_T(o) ∩ H = H ∩ T ≅ Z2^2`.
    CentralizerMeetsHInKlein,
}

impl std::fmt::Display for Fact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Fact::NormalizerInHIsD8 => write!(f, "N_H(K) ≅ D8"),
            Fact::NormalizerInGEqualsNormalizerInTIsS4 => write!(f, "N_G(K) = N_T(K) ≅ S4"),
            Fact::NormalizerInGIsS4 => write!(f, "N_G(K) ≅ S4"),
            Fact::NormalizerInTIsA4 => write!(f, "N_T(K) ≅ A4"),
            Fact::CentralizerOfOIsDihedral(n) => write!(f, "C_T(o) ≅ D{n}"),
            Fact::CentralizerMeetsHInKlein => write!(f, "C_T(o) ∩ H = H ∩ T ≅ Z2^2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleSpec {
    pub id: String,
    pub group_name: String,
    #[serde(skip)]
    pub group: GroupRecipe,
    pub normal_name: Option<String>,
    #[serde(skip)]
    pub normal: Option<GroupRecipe>,
    pub h: Option<HStep>,
    /// Whether `K` is chosen as a Klein four-group in `H ∩ T`.
    pub k_in_h: bool,
    pub site: Option<XSite>,
    pub constraints: Vec<XConstraint>,
    pub claims: Vec<ExpectedClaim>,
}

pub const EXAMPLE_IDS: [&str; 6] = [
    "ex-5.1.1",
    "ex-5.1.2",
    "ex-5.1.3",
    "ex-5.2.1",
    "ex-5.2.2",
    "complete-n",
];

fn proj(family: &str, q: u32) -> String {
    format!("{family}(2,{q})")
}

fn shape(kind: ShapeKind, order: u128) -> SubgroupShape {
    SubgroupShape::new(kind, order).expect("valid built-in shape")
}

fn valency_four(q: u32, order: usize, triangles: usize) -> ExampleSpec {
    use ExpectedClaim::*;
    ExampleSpec {
        id: String::new(),
        group_name: proj("PGL", q),
        group: GroupRecipe::pgl2(q),
        normal_name: Some(proj("PSL", q)),
        normal: Some(GroupRecipe::psl2(q)),
        h: Some(HStep::Shape(shape(ShapeKind::Dihedral, 16))),
        k_in_h: true,
        site: Some(XSite::NormalizerInT),
        constraints: vec![],
        claims: vec![
            VertexCount(order),
            EdgeCount(order * 2),
            Valency(4),
            Connected,
            ArcTransitive,
            NotTwoArcTransitive,
            VertexPrimitive,
            NormalEdgeOrbits(2),
            NormalOrbitComponents {
                valency: 2,
                shape: "CYCLE(3)".into(),
                count: triangles,
            },
            PairedEdgePartition,
            Fact(self::Fact::NormalizerInHIsD8),
            Fact(self::Fact::NormalizerInGEqualsNormalizerInTIsS4),
        ],
    }
}

/// The built-in example with the given id. `complete-<n>` is accepted for
/// any `n ≥ 3`.
pub fn example_spec(id: &str) -> Result<ExampleSpec> {
    use ExpectedClaim::*;
    let mut spec = match id {
        "ex-5.2.1" => {
            let mut s = valency_four(7, 21, 7);
            s.claims.push(AutOrder(336));
            s.claims.push(AutEqualsGroup);
            s
        }
        "ex-5.2.2" => valency_four(9, 45, 15),
        "ex-5.1.2" => ExampleSpec {
            id: String::new(),
            group_name: proj("PGL", 11),
            group: GroupRecipe::pgl2(11),
            normal_name: Some(proj("PSL", 11)),
            normal: Some(GroupRecipe::psl2(11)),
            h: Some(HStep::Shape(shape(ShapeKind::Dihedral, 24))),
            k_in_h: true,
            site: Some(XSite::NormalizerInG),
            constraints: vec![XConstraint::IntersectionIsK, XConstraint::Generates],
            claims: vec![
                VertexCount(55),
                EdgeCount(165),
                Valency(6),
                Connected,
                ArcTransitive,
                NormalEdgeTransitiveNotArcTransitive,
                NormalArcOrbitsReversalPair,
                Fact(self::Fact::NormalizerInGIsS4),
                Fact(self::Fact::NormalizerInHIsD8),
                Fact(self::Fact::NormalizerInTIsA4),
            ],
        },
        "ex-5.1.3" => ExampleSpec {
            id: String::new(),
            group_name: proj("PGL", 17),
            group: GroupRecipe::pgl2(17),
            normal_name: Some(proj("PSL", 17)),
            normal: Some(GroupRecipe::psl2(17)),
            h: Some(HStep::CentralInvolutionTimes(shape(ShapeKind::Dihedral, 6))),
            k_in_h: false,
            site: Some(XSite::CentralizerOfO),
            constraints: vec![
                XConstraint::Generates,
                XConstraint::H1JoinIsSym4,
                XConstraint::HIndex(6),
                // `o` is centralized by `x`, so `o ∈ H1 ∩ H1^x` and the index
                // is at most 3; valency 6 forces `H1 ∩ H1^x = <o>`.
                XConstraint::H1Index(3),
            ],
            claims: vec![
                VertexCount(408),
                EdgeCount(1224),
                Valency(6),
                Connected,
                ArcTransitive,
                NormalEdgeOrbits(2),
                NormalOrbitComponents {
                    valency: 3,
                    shape: "COMPLETE(4)".into(),
                    count: 102,
                },
                PairedEdgePartition,
                Fact(self::Fact::CentralizerOfOIsDihedral(16)),
            ],
        },
        "ex-5.1.1" => ExampleSpec {
            id: String::new(),
            group_name: "PSL(2,27):3".into(),
            group: GroupRecipe::psl2_ext(27),
            normal_name: Some(proj("PSL", 27)),
            normal: Some(GroupRecipe::psl2(27)),
            h: Some(HStep::OverKleinNormalizer(shape(ShapeKind::Alternating4, 12))),
            k_in_h: false,
            site: Some(XSite::CentralizerOfO),
            constraints: vec![XConstraint::IntersectionOrder(2), XConstraint::Generates],
            claims: vec![
                VertexCount(2457),
                EdgeCount(7371),
                Valency(6),
                Connected,
                ArcTransitive,
                NormalVertexTransitive,
                NormalEdgeOrbits(3),
                NormalOrbitComponents {
                    valency: 2,
                    shape: "CYCLE(7)".into(),
                    count: 351,
                },
                Fact(self::Fact::CentralizerOfOIsDihedral(28)),
                Fact(self::Fact::CentralizerMeetsHInKlein),
            ],
        },
        other => {
            let Some(n) = other.strip_prefix("complete-") else {
                return invalid(format!(
                    "unknown example '{other}'; known: {}",
                    EXAMPLE_IDS.join(", ")
                ));
            };
            let n: usize = n
                .parse()
                .map_err(|_| crate::Error::InvalidInput(format!("bad complete-graph size in '{other}'")))?;
            if n < 3 {
                return invalid("complete-n needs n >= 3");
            }
            let fact: u128 = (1..=n as u128).product();
            ExampleSpec {
                id: String::new(),
                group_name: format!("S{n}"),
                group: GroupRecipe::sym(n),
                normal_name: None,
                normal: None,
                h: None,
                k_in_h: false,
                site: None,
                constraints: vec![],
                claims: vec![
                    VertexCount(n),
                    EdgeCount(n * (n - 1) / 2),
                    Valency(n - 1),
                    Connected,
                    ArcTransitive,
                    TwoArcTransitive,
                    VertexPrimitive,
                    AutOrder(fact),
                    AutEqualsGroup,
                ],
            }
        }
    };
    spec.id = id.to_string();
    Ok(spec)
}

//! Graph constructions: coset graphs, Cayley digraphs, quotients.

mod cayley;
mod coset;
mod graph;
mod quotient;

pub use cayley::{cayley_digraph, connection_set_from_points, regular_labels, CayleyDigraph};
pub use coset::{
    check_valency, coset_graph, intersection_with_conjugate, CosetGeometry, CosetGraph,
    GeometryDocument, DEFAULT_COSET_CAP,
};
pub use graph::{
    arc_orbit_subgraph, complete_graph, components_and_shapes, shape_census, ActionBlock,
    Component, ComponentShape, Digraph, DigraphDocument, Graph, GraphDocument,
};
pub use quotient::{quotient_digraph, QuotientDigraph};

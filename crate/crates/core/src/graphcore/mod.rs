//! Exact algorithms on small simple graphs: complements, colorings,
//! triangles, components, canonical orientations and directed 2-paths.

mod color;
mod graph;
pub mod io;
mod orient;

pub use color::{
    bipartite_after_one_vertex, connected_components, is_bipartite, is_isomorphic, is_triangle_free,
    k_color, shortest_odd_cycle, Coloring,
};
pub(crate) use color::{components_active, two_color_active};
pub use graph::{Graph, GraphJson, VERTEX_CAP};
pub use orient::{canonical_orientation, directed_two_path_sources, Digraph, Rgb};

pub fn complement(g: &Graph) -> Graph {
    g.complement()
}

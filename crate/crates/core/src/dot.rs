//! Deterministic DOT (graphviz) renderings of the Hasse diagrams and of
//! lattice complexes (dual graph with component facets shaded).

use crate::arrangement::{GammaPoset, IntersectionLattice, LatticeComplex};
use crate::complex::{facet_label, facet_set_label, PolytopalComplex};
use std::fmt::Write;

pub fn lattice_dot(lattice: &IntersectionLattice) -> String {
    let mut out = String::new();
    writeln!(out, "digraph intersection_lattice {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for (i, flat) in lattice.flats.iter().enumerate() {
        let infinity = if flat.at_infinity() { " (at infinity)" } else { "" };
        writeln!(
            out,
            "  W{i} [label=\"W{i}: rank {}{}\\n{}\"];",
            flat.rank(),
            infinity,
            flat.describe()
        )
        .unwrap();
    }
    for &(lo, hi) in &lattice.hasse {
        writeln!(out, "  W{lo} -> W{hi};").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

pub fn gamma_dot(gamma: &GammaPoset) -> String {
    let mut out = String::new();
    writeln!(out, "digraph gamma_poset {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    let labels = gamma.node_labels();
    for (i, node) in gamma.nodes.iter().enumerate() {
        let shape = if gamma.maximal.contains(&i) {
            " [shape=box]"
        } else {
            ""
        };
        let _ = node;
        writeln!(out, "  N{i} [label=\"{}\"]{shape};", labels[i]).unwrap();
    }
    // Same-rank nodes on one level.
    let max_rank = gamma.nodes.iter().map(|n| n.gamma_rank).max().unwrap_or(0);
    for rank in 0..=max_rank {
        let row: Vec<String> = (0..gamma.nodes.len())
            .filter(|&i| gamma.nodes[i].gamma_rank == rank)
            .map(|i| format!("N{i}"))
            .collect();
        if !row.is_empty() {
            writeln!(out, "  {{ rank=same; {}; }}", row.join("; ")).unwrap();
        }
    }
    for &(lo, hi) in &gamma.hasse {
        writeln!(out, "  N{lo} -> N{hi};").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

const COMPONENT_FILLS: &[&str] = &[
    "lightblue",
    "lightpink",
    "lightgreen",
    "lightyellow",
    "lightgray",
    "orange",
];

/// The dual graph of the whole complex, with the facets of each component of
/// the lattice complex shaded (one fill color per component).
pub fn lattice_complex_dot(p: &PolytopalComplex, lc: &LatticeComplex) -> String {
    let mut out = String::new();
    writeln!(out, "graph lattice_complex {{").unwrap();
    writeln!(
        out,
        "  label=\"P_W for W: {}\\ncomponents: {}\";",
        lc.flat.describe(),
        lc.components
            .iter()
            .map(|c| facet_set_label(c.facet_ids()))
            .collect::<Vec<_>>()
            .join(" | ")
    )
    .unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for f in 0..p.num_facets() {
        let fill = lc
            .components
            .iter()
            .position(|c| c.contains_facet(f))
            .map(|ci| COMPONENT_FILLS[ci % COMPONENT_FILLS.len()]);
        match fill {
            Some(color) => writeln!(
                out,
                "  {} [style=filled, fillcolor={}];",
                facet_label(f),
                color
            )
            .unwrap(),
            None => writeln!(out, "  {};", facet_label(f)).unwrap(),
        }
    }
    for (a, b, face) in &p.dual_graph().edges {
        let shared: Vec<String> = p
            .face(*face)
            .vertex_ids
            .iter()
            .map(|v| v.to_string())
            .collect();
        writeln!(
            out,
            "  {} -- {} [label=\"{}\"];",
            facet_label(*a),
            facet_label(*b),
            shared.join(",")
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{gamma_poset, lattice_complex_for_flat, LatticeMode};
    use crate::fixtures;

    #[test]
    fn dot_outputs_are_deterministic_and_well_formed() {
        let q = fixtures::q();
        let lat = IntersectionLattice::build(&q, LatticeMode::Homogenized);
        let d1 = lattice_dot(&lat);
        let d2 = lattice_dot(&IntersectionLattice::build(&q, LatticeMode::Homogenized));
        assert_eq!(d1, d2);
        assert!(d1.starts_with("digraph intersection_lattice {"));
        assert!(d1.trim_end().ends_with('}'));

        let gamma = gamma_poset(&q, 2, LatticeMode::Homogenized);
        let g = gamma_dot(&gamma);
        assert!(g.contains("ABCD"));
        assert!(g.contains("rank=same"));

        let flat = lat.flats.iter().find(|f| f.rank() == 2).unwrap();
        let lc = lattice_complex_for_flat(&q, flat);
        let c = lattice_complex_dot(&q, &lc);
        assert!(c.contains("style=filled"));
    }
}

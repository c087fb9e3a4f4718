//! Graphviz rendering of vector and matrix diagrams.

use std::fmt::Write;

use num_complex::Complex64;

use super::{MatrixEdge, NodeId, Universe, VectorEdge};
use crate::complex::ComplexId;

/// Formats a real number with six significant digits, trailing zeros trimmed.
fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=9).contains(&magnitude) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// Renders a weight as `a+bi` / `a-bi`.
pub(crate) fn format_weight(w: Complex64) -> String {
    let re = sig6(w.re);
    let im = sig6(w.im.abs());
    let sign = if w.im < 0.0 && im != "0" { '-' } else { '+' };
    format!("{re}{sign}{im}i")
}

/// Node id, level and successor (weight, node) pairs.
type DotNode = (NodeId, u32, Vec<(ComplexId, NodeId)>);

impl Universe {
    /// DOT rendering of a vector diagram. Zero stubs are drawn as boxed `0`.
    pub fn vector_to_dot(&self, root: VectorEdge) -> String {
        let nodes: Vec<DotNode> = self
            .reachable_vector_nodes(root)
            .into_iter()
            .map(|id| {
                let n = self.vector_node(id);
                (id, n.level(), n.successors().iter().map(|e| (e.weight, e.node)).collect())
            })
            .collect();
        self.render_dot("vector", (root.weight, root.node), &nodes)
    }

    /// DOT rendering of a matrix diagram; successor edges are labelled with
    /// their quadrant (`00`, `01`, `10`, `11`).
    pub fn matrix_to_dot(&self, root: MatrixEdge) -> String {
        let nodes: Vec<DotNode> = self
            .reachable_matrix_nodes(root)
            .into_iter()
            .map(|id| {
                let n = self.matrix_node(id);
                (id, n.level(), n.successors().iter().map(|e| (e.weight, e.node)).collect())
            })
            .collect();
        self.render_dot("matrix", (root.weight, root.node), &nodes)
    }

    fn render_dot(
        &self,
        name: &str,
        root: (ComplexId, NodeId),
        nodes: &[DotNode],
    ) -> String {
        let mut out = String::new();
        let matrix = name == "matrix";
        writeln!(out, "digraph {name} {{").unwrap();
        writeln!(out, "  root [shape=point];").unwrap();
        writeln!(out, "  t [shape=box, label=\"1\"];").unwrap();
        let id_of = |n: NodeId| {
            if n.is_terminal() {
                "t".to_string()
            } else {
                format!("n{}", n.0)
            }
        };
        for (id, level, _) in nodes {
            writeln!(out, "  {} [shape=circle, label=\"q{level}\"];", id_of(*id)).unwrap();
        }
        let mut zeros = 0;
        let mut edge = |out: &mut String, from: String, w: ComplexId, to: NodeId, port: Option<usize>| {
            let port_label = port
                .map(|p| {
                    if matrix {
                        format!("{}{}: ", p >> 1, p & 1)
                    } else {
                        format!("{p}: ")
                    }
                })
                .unwrap_or_default();
            if w.is_zero() {
                let stub = format!("z{zeros}");
                zeros += 1;
                writeln!(out, "  {stub} [shape=box, label=\"0\"];").unwrap();
                writeln!(out, "  {from} -> {stub} [label=\"{}\"];", port_label.trim_end_matches(": ")).unwrap();
            } else {
                let label = format_weight(self.complex.value(w));
                writeln!(out, "  {from} -> {} [label=\"{port_label}{label}\"];", id_of(to)).unwrap();
            }
        };
        edge(&mut out, "root".to_string(), root.0, root.1, None);
        for (id, _, succ) in nodes {
            for (port, &(w, to)) in succ.iter().enumerate() {
                edge(&mut out, id_of(*id), w, to, Some(port));
            }
        }
        out.push_str("}\n");
        out
    }
}

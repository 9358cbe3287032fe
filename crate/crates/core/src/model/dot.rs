use std::fmt::Write;

use super::{Ball, PieceGraph};
use crate::error::Result;
use crate::limits::Limits;

/// Graphviz rendering of the ball of radius `radius`, one node per piece.
///
/// `highlight` is consulted per vertex; highlighted nodes are filled.
pub fn to_dot(
    g: &PieceGraph,
    radius: u32,
    limits: &Limits,
    highlight: Option<&dyn Fn(&super::Vertex) -> bool>,
) -> Result<String> {
    let ball = g.ball(radius, limits)?;
    Ok(render(g, &ball, highlight))
}

fn render(g: &PieceGraph, ball: &Ball, highlight: Option<&dyn Fn(&super::Vertex) -> bool>) -> String {
    let mut out = String::from("graph pieces {\n  node [shape=box, fontsize=10];\n");
    for i in 0..ball.len() {
        let v = ball.vertex(i);
        let p = g.piece_of(&v);
        let mut attrs = format!(
            "label=\"{}\\ng={} b={} p={}\"",
            g.vertex_label(&v),
            p.genus,
            p.boundary,
            p.punctures
        );
        if highlight.is_some_and(|h| h(&v)) {
            attrs.push_str(", style=filled, fillcolor=lightblue");
        }
        let _ = writeln!(out, "  n{i} [{attrs}];");
        for slot in g.deleted_ray_marks(&v) {
            let _ = writeln!(out, "  d{i}_{slot} [shape=point];\n  n{i} -- d{i}_{slot} [style=dashed];");
        }
    }
    for i in 0..ball.len() {
        let mut loops = 0;
        for &j in ball.adjacent(i) {
            let j = j as usize;
            if j == i {
                loops += 1;
                if loops % 2 == 1 {
                    let _ = writeln!(out, "  n{i} -- n{i};");
                }
            } else if i < j {
                let _ = writeln!(out, "  n{i} -- n{j};");
            }
        }
    }
    out.push_str("}\n");
    out
}

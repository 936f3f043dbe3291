use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Element, Lpa};
use crate::error::{Error, Result};
use crate::graph::{Path, VertexClass, VertexId};

/// A nonzero ghost-only element `x = β*·v·y` of the ideal generated by `y`.
#[derive(Debug, Clone)]
pub struct GhostExtraction {
    pub vertex: VertexId,
    /// Longest real length among the terms of `v·y`.
    pub length: usize,
    pub beta: Path,
    pub x: Element,
}

/// Finds a nonzero polynomial in ghost edges inside the two-sided ideal
/// generated by `y`.
///
/// Requires a row-finite graph without sinks.  Picks the first vertex `v`
/// with `v·y ≠ 0`, lets `n` be the maximal `|α|` over the terms `αβ*` of
/// `v·y`, and returns `β*·v·y` for the first `β ∈ Eⁿ` from `v` (lexicographic)
/// that does not kill it.  Such a `β` exists because `v = Σ ββ*` over `Eⁿ`
/// from `v` in this setting.
pub fn extract_ghost_polynomial(alg: &Arc<Lpa>, y: &Element) -> Result<GhostExtraction> {
    if !Arc::ptr_eq(alg, y.algebra()) && y.algebra().graph() != alg.graph() {
        return Err(Error::AlgebraMismatch);
    }
    let g = alg.graph();
    if g.has_bundles() {
        return Err(Error::Hypothesis("graph is not row-finite".into()));
    }
    if let Some(v) = g.vertex_ids().find(|v| g.classify(*v) == VertexClass::Sink) {
        return Err(Error::Hypothesis(format!("graph has a sink `{}`", g.vertex_name(v))));
    }
    let y = y.normalize();
    if y.is_empty() {
        return Err(Error::ZeroElement);
    }
    let mut left_parts: BTreeMap<VertexId, ()> = BTreeMap::new();
    for (m, _) in y.terms() {
        left_parts.insert(m.left_vertex(), ());
    }
    let (vertex, vy) = left_parts
        .keys()
        .map(|v| (*v, alg.vertex_element(*v).try_mul(&y)))
        .find_map(|(v, r)| match r {
            Ok(x) if !x.is_empty() => Some(Ok((v, x))),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .ok_or_else(|| Error::Internal("no vertex detects a nonzero element".into()))??;
    let length = vy.terms().map(|(m, _)| m.alpha.len()).max().unwrap_or(0);
    for beta in g.paths_of_length(length, Some(vertex)) {
        let x = alg.ghost_path_element(&beta).try_mul(&vy)?;
        if !x.is_empty() {
            debug_assert!(x.is_ghost_polynomial());
            return Ok(GhostExtraction { vertex, length, beta, x });
        }
    }
    Err(Error::Internal("every path of maximal length annihilates v·y".into()))
}

//! Symbolic elements of the Leavitt path algebra `L_K(E)`.
//!
//! Every element is a finite linear combination of monomials `αβ*` with
//! `r(α) = r(β)`.  Products follow the four-case rule for `(αβ*)(γδ*)`;
//! the Cuntz-Krieger relation at a regular vertex `v` is used as the rewrite
//!
//! ```text
//! α e_v e_v* β*  ->  αβ* - Σ_{f ∈ s⁻¹(v), f ≠ e_v} α f f* β*
//! ```
//!
//! where `e_v` is the first out-edge of `v` in canonical order.  Monomials
//! that do not end in a matched pair of special edges are *reduced*; they form
//! a basis of `L_K(E)` (a standard basis theorem for Leavitt path algebras),
//! so two elements are equal exactly when their reduced forms agree.

mod component;
mod expr;
mod ghost;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graph::{EdgeId, Graph, Path, VertexId};

pub use component::{gn_matrix_form, MatrixComponent};
pub use expr::{format_identifier, parse_element};
pub use ghost::{extract_ghost_polynomial, GhostExtraction};

/// The special edge `e_v` chosen at each regular vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialEdgeSelection(BTreeMap<VertexId, EdgeId>);

impl SpecialEdgeSelection {
    pub fn canonical(g: &Graph) -> Self {
        let map = g.vertex_ids().filter(|v| g.is_regular(*v)).map(|v| (v, g.out_edges(v)[0])).collect();
        SpecialEdgeSelection(map)
    }

    pub fn get(&self, v: VertexId) -> Option<EdgeId> {
        self.0.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        self.0.iter().map(|(v, e)| (*v, *e))
    }
}

/// `L_K(E)` for a fixed graph and field.
#[derive(Debug)]
pub struct Lpa {
    graph: Arc<Graph>,
    field: Field,
    special: SpecialEdgeSelection,
}

/// A monomial `αβ*`; both paths end at the same vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub alpha: Path,
    pub beta: Path,
}

impl Monomial {
    pub fn new(g: &Graph, alpha: Path, beta: Path) -> Result<Monomial> {
        let (ra, rb) = (alpha.range(g), beta.range(g));
        if ra != rb {
            return Err(Error::RangeMismatch(g.vertex_name(ra).to_string(), g.vertex_name(rb).to_string()));
        }
        Ok(Monomial { alpha, beta })
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial { alpha: Path::vertex(v), beta: Path::vertex(v) }
    }

    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    pub fn range(&self, g: &Graph) -> VertexId {
        self.alpha.range(g)
    }

    /// The vertex `v` with `v·αβ* = αβ*`.
    pub fn left_vertex(&self) -> VertexId {
        self.alpha.source
    }

    /// The vertex `w` with `αβ*·w = αβ*`.
    pub fn right_vertex(&self) -> VertexId {
        self.beta.source
    }

    pub fn bar(&self) -> Monomial {
        Monomial { alpha: self.beta.clone(), beta: self.alpha.clone() }
    }

    /// `(αβ*)(γδ*)`, or `None` for zero.
    pub fn product(&self, other: &Monomial) -> Option<Monomial> {
        if let Some(rest) = other.alpha.strip_prefix(&self.beta) {
            // γ = βγ'
            let mut alpha = self.alpha.clone();
            alpha.edges.extend(rest);
            Some(Monomial { alpha, beta: other.beta.clone() })
        } else if let Some(rest) = self.beta.strip_prefix(&other.alpha) {
            // β = γβ'
            let mut beta = other.beta.clone();
            beta.edges.extend(rest);
            Some(Monomial { alpha: self.alpha.clone(), beta })
        } else {
            None
        }
    }
}

impl Lpa {
    pub fn new(graph: impl Into<Arc<Graph>>, field: Field) -> Arc<Lpa> {
        let graph = graph.into();
        let special = SpecialEdgeSelection::canonical(&graph);
        Arc::new(Lpa { graph, field, special })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn special_edges(&self) -> &SpecialEdgeSelection {
        &self.special
    }

    fn same_as(&self, other: &Lpa) -> bool {
        std::ptr::eq(self, other) || (self.field == other.field && *self.graph == *other.graph)
    }

    pub fn zero(self: &Arc<Self>) -> Element {
        Element { alg: Arc::clone(self), terms: BTreeMap::new(), normalized: true }
    }

    /// `λ·m` as an (unnormalized) element.
    pub fn term(self: &Arc<Self>, coeff: Scalar, m: Monomial) -> Element {
        let mut x = self.zero();
        if !coeff.is_zero() {
            debug_assert_eq!(coeff.field(), self.field);
            x.terms.insert(m, coeff);
            x.normalized = false;
        }
        x
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial) -> Element {
        self.term(self.field.one(), m)
    }

    pub fn vertex_element(self: &Arc<Self>, v: VertexId) -> Element {
        self.monomial(Monomial::vertex(v))
    }

    pub fn vertex(self: &Arc<Self>, name: &str) -> Result<Element> {
        Ok(self.vertex_element(self.graph.vertex(name)?))
    }

    pub fn edge(self: &Arc<Self>, name: &str) -> Result<Element> {
        Ok(self.edge_element(self.graph.edge(name)?))
    }

    pub fn ghost(self: &Arc<Self>, name: &str) -> Result<Element> {
        Ok(self.ghost_element(self.graph.edge(name)?))
    }

    pub fn edge_element(self: &Arc<Self>, e: EdgeId) -> Element {
        self.path_element(&Path::edge(&self.graph, e))
    }

    pub fn ghost_element(self: &Arc<Self>, e: EdgeId) -> Element {
        self.ghost_path_element(&Path::edge(&self.graph, e))
    }

    /// The real monomial `α = α r(α)*`.
    pub fn path_element(self: &Arc<Self>, p: &Path) -> Element {
        let r = p.range(&self.graph);
        self.monomial(Monomial { alpha: p.clone(), beta: Path::vertex(r) })
    }

    /// The ghost monomial `β*`.
    pub fn ghost_path_element(self: &Arc<Self>, p: &Path) -> Element {
        let r = p.range(&self.graph);
        self.monomial(Monomial { alpha: Path::vertex(r), beta: p.clone() })
    }

    pub fn scalar(self: &Arc<Self>, n: i64) -> Scalar {
        self.field.from_i64(n)
    }

    /// Sum of all vertices: the identity, since vertex lists are finite.
    pub fn one(self: &Arc<Self>) -> Element {
        let mut x = self.zero();
        for v in self.graph.vertex_ids() {
            x.terms.insert(Monomial::vertex(v), self.field.one());
        }
        x
    }

    /// `t_n = v_1 + ... + v_n` over the canonical vertex order.
    pub fn local_unit(self: &Arc<Self>, n: usize) -> Result<Element> {
        let max = self.graph.vertex_count();
        if n == 0 || n > max {
            return Err(Error::OutOfRange { index: n, max });
        }
        let mut x = self.zero();
        for v in self.graph.vertex_ids().take(n) {
            x.terms.insert(Monomial::vertex(v), self.field.one());
        }
        Ok(x)
    }

    /// One product `(αβ*)(γδ*)` as a zero- or one-term element.
    pub fn monomial_product(self: &Arc<Self>, m1: &Monomial, m2: &Monomial) -> Element {
        match m1.product(m2) {
            Some(m) => self.monomial(m),
            None => self.zero(),
        }
    }

    /// One CK2 rewrite step, or `None` when `m` is already reduced.
    fn rewrite(&self, m: &Monomial) -> Option<Vec<(Monomial, bool)>> {
        let (&ea, &eb) = (m.alpha.edges.last()?, m.beta.edges.last()?);
        if ea != eb {
            return None;
        }
        let v = self.graph.source(ea);
        if self.special.get(v) != Some(ea) {
            return None;
        }
        let mut alpha = m.alpha.clone();
        alpha.edges.pop();
        let mut beta = m.beta.clone();
        beta.edges.pop();
        let mut out = Vec::with_capacity(self.graph.out_edges(v).len());
        for &f in self.graph.out_edges(v) {
            if f != ea {
                out.push((Monomial { alpha: alpha.pushed(f), beta: beta.pushed(f) }, false));
            }
        }
        out.push((Monomial { alpha, beta }, true));
        Some(out)
    }

    pub fn is_reduced(&self, m: &Monomial) -> bool {
        self.rewrite(m).is_none()
    }

    pub fn display_monomial<'a>(&'a self, m: &'a Monomial) -> MonomialDisplay<'a> {
        MonomialDisplay { graph: &self.graph, monomial: m }
    }
}

pub struct MonomialDisplay<'a> {
    graph: &'a Graph,
    monomial: &'a Monomial,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.graph;
        let m = self.monomial;
        if m.alpha.is_vertex() && m.beta.is_vertex() {
            return f.write_str(&format_identifier(g.vertex_name(m.alpha.source)));
        }
        let mut parts: Vec<String> = m.alpha.edges.iter().map(|e| format_identifier(g.edge_name(*e))).collect();
        parts.extend(m.beta.edges.iter().rev().map(|e| format!("{}'", format_identifier(g.edge_name(*e)))));
        f.write_str(&parts.join("*"))
    }
}

/// A finite linear combination of monomials over one algebra.  Zero
/// coefficients are never stored.
#[derive(Clone)]
pub struct Element {
    alg: Arc<Lpa>,
    terms: BTreeMap<Monomial, Scalar>,
    normalized: bool,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            let s = slot.get() + &c;
            if s.is_zero() {
                slot.remove();
            } else {
                *slot.get_mut() = s;
            }
        }
    }
}

impl Element {
    pub fn algebra(&self) -> &Arc<Lpa> {
        &self.alg
    }

    pub fn graph(&self) -> &Graph {
        &self.alg.graph
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// True when no term is stored; see [`Element::is_zero`] for the algebra test.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Element) -> Result<()> {
        if self.alg.same_as(&other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn with_terms(&self, terms: BTreeMap<Monomial, Scalar>, normalized: bool) -> Element {
        let normalized = normalized || terms.is_empty();
        Element { alg: Arc::clone(&self.alg), terms, normalized }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(self.with_terms(terms, self.normalized && other.normalized))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        self.with_terms(terms, self.normalized)
    }

    pub fn scale(&self, lambda: &Scalar) -> Result<Element> {
        if lambda.field() != self.alg.field {
            return Err(Error::FieldMismatch(lambda.field().to_string(), self.alg.field.to_string()));
        }
        if lambda.is_zero() {
            return Ok(self.alg.zero());
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * lambda)).collect();
        Ok(self.with_terms(terms, self.normalized))
    }

    /// Product extended bilinearly from the monomial rule, then normalized.
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(m) = m1.product(m2) {
                    accumulate(&mut terms, m, c1 * c2);
                }
            }
        }
        Ok(self.with_terms(terms, false).normalize())
    }

    pub fn pow(&self, n: u32) -> Result<Element> {
        if n == 0 {
            return Ok(self.alg.one());
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Rewrites every monomial into reduced form.
    pub fn normalize(&self) -> Element {
        if self.normalized {
            return self.clone();
        }
        let mut pending = self.terms.clone();
        let mut done: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        while let Some((m, c)) = pending.pop_last() {
            match self.alg.rewrite(&m) {
                None => accumulate(&mut done, m, c),
                Some(replacements) => {
                    for (m2, positive) in replacements {
                        let c2 = if positive { c.clone() } else { -&c };
                        accumulate(&mut pending, m2, c2);
                    }
                }
            }
        }
        Element { alg: Arc::clone(&self.alg), terms: done, normalized: true }
    }

    pub fn is_zero(&self) -> bool {
        self.normalize().terms.is_empty()
    }

    /// Equality in `L_K(E)`: the difference normalizes to zero.
    pub fn equals(&self, other: &Element) -> Result<bool> {
        Ok(self.try_sub(other)?.is_zero())
    }

    /// Homogeneous components keyed by degree `|α| - |β|`.
    pub fn degree_decompose(&self) -> BTreeMap<i64, Element> {
        let n = self.normalize();
        let mut out: BTreeMap<i64, BTreeMap<Monomial, Scalar>> = BTreeMap::new();
        for (m, c) in n.terms {
            out.entry(m.degree()).or_default().insert(m, c);
        }
        out.into_iter().map(|(d, terms)| (d, Element { alg: Arc::clone(&self.alg), terms, normalized: true })).collect()
    }

    /// `Some(d)` when every reduced monomial has degree `d`; the zero element
    /// is homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let parts = self.degree_decompose();
        if parts.len() == 1 {
            parts.keys().next().copied()
        } else {
            None
        }
    }

    /// The linear involution `Σ λ αβ* ↦ Σ λ βα*`.
    pub fn bar(&self) -> Element {
        let terms = self.terms.iter().map(|(m, c)| (m.bar(), c.clone())).collect();
        // Reduced monomials stay reduced under swapping α and β.
        self.with_terms(terms, self.normalized)
    }

    pub fn is_ghost_polynomial(&self) -> bool {
        self.normalize().terms.keys().all(|m| m.alpha.is_vertex())
    }

    pub fn is_real_polynomial(&self) -> bool {
        self.normalize().terms.keys().all(|m| m.beta.is_vertex())
    }

    /// Least `n` with the element in `F_n = span{αβ* : |α| = |β| ≤ n}`.
    pub fn filtration_level(&self) -> Result<usize> {
        let n = self.normalize();
        if n.terms.keys().any(|m| m.degree() != 0) {
            return Err(Error::NotHomogeneous(0));
        }
        Ok(n.terms.keys().map(|m| m.alpha.len()).max().unwrap_or(0))
    }

    /// Vertices `v` with `v·x ≠ 0` or `x·v ≠ 0`, in canonical order.
    pub fn support_vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> =
            self.normalize().terms.keys().flat_map(|m| [m.left_vertex(), m.right_vertex()]).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Rebuilds the element over another algebra with the same identifiers,
    /// e.g. a subgraph.  Unknown identifiers are an error.
    pub fn transport(&self, target: &Arc<Lpa>) -> Result<Element> {
        if target.field != self.alg.field {
            return Err(Error::FieldMismatch(self.alg.field.to_string(), target.field.to_string()));
        }
        let src = self.graph();
        let dst = target.graph();
        let map_path = |p: &Path| -> Result<Path> {
            let source = dst.vertex(src.vertex_name(p.source))?;
            let edges = p.edges.iter().map(|e| dst.edge(src.edge_name(*e))).collect::<Result<Vec<_>>>()?;
            Path::from_edges(dst, source, &edges)
        };
        let mut x = target.zero();
        for (m, c) in &self.terms {
            let alpha = map_path(&m.alpha)?;
            let beta = map_path(&m.beta)?;
            let m = Monomial::new(dst, alpha, beta)?;
            accumulate(&mut x.terms, m, c.clone());
        }
        x.normalized = x.terms.is_empty();
        Ok(x)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let body = self.alg.display_monomial(m).to_string();
            let (negative, magnitude) = match c {
                Scalar::Rational(q) if q.is_negative() => (true, -c),
                _ => (false, c.clone()),
            };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if magnitude.is_one() {
                f.write_str(&body)?;
            } else {
                write!(f, "{magnitude}*{body}")?;
            }
        }
        Ok(())
    }
}

/// Algebra equality, `false` across different algebras.
impl PartialEq for Element {
    fn eq(&self, other: &Element) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

// Operator forms panic when the operands come from different algebras; the
// `try_*` methods report that as an error instead.
macro_rules! binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                self.$imp(rhs).expect("elements from different algebras")
            }
        }
        impl $tr<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$imp(&rhs).expect("elements from different algebras")
            }
        }
        impl $tr<&Element> for Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                (&self).$imp(rhs).expect("elements from different algebras")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(self)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(&self)
    }
}

impl Mul<&Element> for &Scalar {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        rhs.scale(self).expect("scalar from a different field")
    }
}

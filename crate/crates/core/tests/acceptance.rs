//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use common::*;
use leavitt::algebra::extract_ghost_polynomial;
use leavitt::catalogue;
use leavitt::field::{Field, Scalar};
use leavitt::graph::{Graph, Path, VertexClass, VertexId};
use leavitt::io::{load_graph, parse_graph, save_graph};
use leavitt::lattice::{
    breaking_vertices, ideal_generators, in_graded_ideal, is_hereditary, is_saturated, nongraded_ideal_witness,
    pair_leq, vh_element, AdmissiblePair, Lattice, VertexSet,
};
use leavitt::laurent::LaurentMatrix;
use leavitt::props::{condition_k, condition_k_via_quotients, condition_l, is_simple};
use leavitt::transforms::{cycle_iso, cycle_iso_inv, quotient_graph, restriction_graph, QuotientMap};
use leavitt::{parse_element, Element, Lpa, Monomial};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: leavitt::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// Independent Laurent-polynomial and matrix arithmetic used as oracles.

#[derive(Clone, Debug, PartialEq)]
struct Poly {
    field: Field,
    c: BTreeMap<i64, Scalar>,
}

impl Poly {
    fn zero(field: Field) -> Poly {
        Poly { field, c: BTreeMap::new() }
    }

    fn mono(c: Scalar, k: i64) -> Poly {
        let mut p = Poly::zero(c.field());
        p.push(k, c);
        p
    }

    fn push(&mut self, k: i64, c: Scalar) {
        let s = match self.c.remove(&k) {
            Some(old) => &old + &c,
            None => c,
        };
        if !s.is_zero() {
            self.c.insert(k, s);
        }
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (k, c) in &o.c {
            r.push(*k, c.clone());
        }
        r
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.field);
        for (i, a) in &self.c {
            for (j, b) in &o.c {
                r.push(i + j, a * b);
            }
        }
        r
    }

    fn bar(&self) -> Poly {
        Poly { field: self.field, c: self.c.iter().map(|(k, v)| (-k, v.clone())).collect() }
    }

    /// Remainder of the polynomial associates: `self ∈ ⟨m⟩` iff this is zero.
    fn rem(&self, m: &Poly) -> Poly {
        let shift = |p: &Poly| -> BTreeMap<i64, Scalar> {
            let low = p.c.keys().next().copied().unwrap_or(0);
            p.c.iter().map(|(k, v)| (k - low, v.clone())).collect()
        };
        let mut a = shift(self);
        let b = shift(m);
        let (&db, lead) = b.iter().next_back().expect("nonzero modulus");
        let lead_inv = lead.inv().unwrap();
        while let Some((&da, top)) = a.iter().next_back() {
            if da < db {
                break;
            }
            let f = top * &lead_inv;
            for (k, c) in &b {
                let key = k + da - db;
                let v = a.get(&key).cloned().unwrap_or_else(|| self.field.zero());
                let nv = &v - &(c * &f);
                if nv.is_zero() {
                    a.remove(&key);
                } else {
                    a.insert(key, nv);
                }
            }
        }
        Poly { field: self.field, c: a }
    }

    fn from_lib(p: &leavitt::laurent::LaurentPoly) -> Poly {
        let mut r = Poly::zero(p.field());
        for (k, c) in p.terms() {
            r.push(k, c.clone());
        }
        r
    }
}

#[derive(Clone, Debug, PartialEq)]
struct Mat(Vec<Vec<Poly>>);

impl Mat {
    fn zero(field: Field, n: usize) -> Mat {
        Mat(vec![vec![Poly::zero(field); n]; n])
    }

    fn unit(n: usize, i: usize, j: usize, c: Scalar, k: i64) -> Mat {
        let mut m = Mat::zero(c.field(), n);
        m.0[i][j] = Poly::mono(c, k);
        m
    }

    fn add(&self, o: &Mat) -> Mat {
        Mat(self.0.iter().zip(&o.0).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.add(b)).collect()).collect())
    }

    fn mul(&self, o: &Mat) -> Mat {
        let n = self.0.len();
        let field = self.0[0][0].field;
        let mut r = Mat::zero(field, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero(field);
                for k in 0..n {
                    acc = acc.add(&self.0[i][k].mul(&o.0[k][j]));
                }
                r.0[i][j] = acc;
            }
        }
        r
    }

    fn scale(&self, c: &Scalar) -> Mat {
        Mat(self.0.iter().map(|r| r.iter().map(|p| p.mul(&Poly::mono(c.clone(), 0))).collect()).collect())
    }

    fn from_lib(m: &LaurentMatrix) -> Mat {
        let n = m.dim();
        Mat((0..n).map(|i| (0..n).map(|j| Poly::from_lib(m.get(i, j))).collect()).collect())
    }
}

/// Images of generators for a line or cycle graph with vertices in index
/// order: `v_i ↦ E_ii`, `e_i ↦ E_{i,i+1}` and the closing edge of a cycle
/// picks up `x`.  The element image is built by multiplying generator
/// images, independently of the library's own isomorphism.
struct MatrixModel {
    n: usize,
    field: Field,
    closing: Option<leavitt::EdgeId>,
}

impl MatrixModel {
    fn edge(&self, g: &Graph, e: leavitt::EdgeId) -> Mat {
        let k = if Some(e) == self.closing { 1 } else { 0 };
        Mat::unit(self.n, g.source(e).0, g.range(e).0, self.field.one(), k)
    }

    fn ghost(&self, g: &Graph, e: leavitt::EdgeId) -> Mat {
        let k = if Some(e) == self.closing { -1 } else { 0 };
        Mat::unit(self.n, g.range(e).0, g.source(e).0, self.field.one(), k)
    }

    fn monomial(&self, g: &Graph, m: &Monomial) -> Mat {
        let mut acc = Mat::unit(self.n, m.alpha.source.0, m.alpha.source.0, self.field.one(), 0);
        for e in &m.alpha.edges {
            acc = acc.mul(&self.edge(g, *e));
        }
        for e in m.beta.edges.iter().rev() {
            acc = acc.mul(&self.ghost(g, *e));
        }
        acc
    }

    fn element(&self, x: &Element) -> Mat {
        let mut acc = Mat::zero(self.field, self.n);
        for (m, c) in x.terms() {
            acc = acc.add(&self.monomial(x.graph(), m).scale(c));
        }
        acc
    }
}

fn all_monomials(g: &Graph, max_len: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for r in g.vertex_ids() {
        let into: Vec<Path> = (0..=max_len).flat_map(|n| g.paths_of_length_into(n, r)).collect();
        for a in &into {
            for b in &into {
                out.push(Monomial::new(g, a.clone(), b.clone()).unwrap());
            }
        }
    }
    out
}

fn fields() -> [Field; 2] {
    [Field::Rational, Field::prime(5).unwrap()]
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Outcome {
    let mut relations = 0usize;
    let mut triples = 0usize;
    let mut rng = rng(1);
    for (name, g) in catalogue::all() {
        for field in fields() {
            let alg = Lpa::new(g.clone(), field);
            let g = alg.graph();
            let zero = |x: Element, what: &str| ensure(x.is_zero(), || format!("{name}/{field}: {what} is {x}"));
            for v in g.vertex_ids() {
                for w in g.vertex_ids() {
                    let prod = &alg.vertex_element(v) * &alg.vertex_element(w);
                    let expect = if v == w { alg.vertex_element(v) } else { alg.zero() };
                    zero(&prod - &expect, "vertex orthogonality")?;
                    relations += 1;
                }
            }
            for e in g.edge_ids() {
                let (s, r) = (alg.vertex_element(g.source(e)), alg.vertex_element(g.range(e)));
                let (ee, es) = (alg.edge_element(e), alg.ghost_element(e));
                zero(&(&s * &ee) - &ee, "s(e)e - e")?;
                zero(&(&ee * &r) - &ee, "e r(e) - e")?;
                zero(&(&r * &es) - &es, "r(e)e* - e*")?;
                zero(&(&es * &s) - &es, "e* s(e) - e*")?;
                relations += 4;
                for f in g.edge_ids() {
                    let prod = &es * &alg.edge_element(f);
                    let expect = if e == f { r.clone() } else { alg.zero() };
                    zero(&prod - &expect, "e*f - δ r(e)")?;
                    relations += 1;
                }
            }
            for v in g.vertex_ids().filter(|v| g.classify(*v) == VertexClass::Regular) {
                let mut x = alg.vertex_element(v);
                for &e in g.out_edges(v) {
                    x = &x - &(&alg.edge_element(e) * &alg.ghost_element(e));
                }
                zero(x, "v - Σ ee*")?;
                relations += 1;
            }
            let one = alg.one();
            for _ in 0..250 {
                let x = random_element(&mut rng, &alg, 3, 2);
                let y = random_element(&mut rng, &alg, 3, 2);
                let z = random_element(&mut rng, &alg, 3, 2);
                let laws = [
                    ("assoc+", (&(&x + &y) + &z, &x + &(&y + &z))),
                    ("comm+", (&x + &y, &y + &x)),
                    ("assoc*", (&(&x * &y) * &z, &x * &(&y * &z))),
                    ("distl", (&x * &(&y + &z), &(&x * &y) + &(&x * &z))),
                    ("distr", (&(&x + &y) * &z, &(&x * &z) + &(&y * &z))),
                    ("unitl", (&one * &x, x.clone())),
                    ("unitr", (&x * &one, x.clone())),
                    ("neg", (&x + &(-&x), alg.zero())),
                    ("bar", ((&x * &y).bar(), &y.bar() * &x.bar())),
                ];
                for (law, (l, r)) in laws {
                    ensure(lib(l.equals(&r))?, || format!("{name}/{field}: {law} fails on x={x} y={y} z={z}"))?;
                }
                triples += 1;
            }
        }
    }
    Ok(format!("{relations} relations normalize to zero; ring laws hold on {triples} triples"))
}

fn criterion_2() -> Outcome {
    let alg = Lpa::new(catalogue::r1(), Field::Rational);
    let mut rng = rng(2);
    let oracle = |x: &Element| -> Poly {
        let mut p = Poly::zero(Field::Rational);
        for (m, c) in x.terms() {
            p.push(m.alpha.len() as i64 - m.beta.len() as i64, c.clone());
        }
        p
    };
    let image = |x: &Element| -> Result<Poly, String> { Ok(Poly::from_lib(lib(cycle_iso(&alg, x))?.get(0, 0))) };
    let pairs = 1000;
    for _ in 0..pairs {
        let x = random_element(&mut rng, &alg, 4, 3);
        let y = random_element(&mut rng, &alg, 4, 3);
        let (ox, oy) = (oracle(&x), oracle(&y));
        ensure(image(&x)? == ox, || format!("image of {x}"))?;
        ensure(image(&(&x + &y))? == ox.add(&oy), || format!("sum {x} + {y}"))?;
        ensure(image(&(&x * &y))? == ox.mul(&oy), || format!("product {x} * {y}"))?;
        ensure(image(&x.bar())? == ox.bar(), || format!("bar of {x}"))?;
        let back = lib(cycle_iso_inv(&alg, &lib(cycle_iso(&alg, &x))?))?;
        ensure(lib(back.equals(&x))?, || format!("round trip of {x}"))?;
    }
    Ok(format!("{pairs} pairs match Laurent arithmetic for +, *, bar and round trip"))
}

fn criterion_3() -> Outcome {
    let alg = Lpa::new(catalogue::a3(), Field::Rational);
    let g = alg.graph();
    let model = MatrixModel { n: 3, field: Field::Rational, closing: None };
    let monos = all_monomials(g, 2);
    let mut checked = 0;
    for m1 in &monos {
        for m2 in &monos {
            let prod = &alg.monomial(m1.clone()) * &alg.monomial(m2.clone());
            let lhs = model.element(&prod);
            let rhs = model.monomial(g, m1).mul(&model.monomial(g, m2));
            ensure(lhs == rhs, || format!("A3: {} * {}", alg.display_monomial(m1), alg.display_monomial(m2)))?;
            checked += 1;
        }
    }
    let reduced: BTreeSet<Monomial> = monos
        .iter()
        .map(|m| alg.monomial(m.clone()).normalize())
        .flat_map(|x| x.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>())
        .collect();
    ensure(reduced.len() == 9, || format!("A3 has {} reduced monomials, expected 9", reduced.len()))?;
    let images: BTreeSet<String> = reduced.iter().map(|m| format!("{:?}", model.monomial(g, m))).collect();
    ensure(images.len() == 9, || "A3 reduced monomials do not hit 9 distinct matrix units".into())?;

    let c3 = Lpa::new(catalogue::c3(), Field::Rational);
    let cg = c3.graph();
    let cmodel = MatrixModel { n: 3, field: Field::Rational, closing: Some(cg.edge("e3").unwrap()) };
    let mut rng = rng(3);
    let pairs = 500;
    for _ in 0..pairs {
        let x = random_element(&mut rng, &c3, 3, 4);
        let y = random_element(&mut rng, &c3, 3, 4);
        let ix = Mat::from_lib(&lib(cycle_iso(&c3, &x))?);
        ensure(ix == cmodel.element(&x), || format!("C3 image of {x}"))?;
        let ixy = Mat::from_lib(&lib(cycle_iso(&c3, &(&x * &y)))?);
        ensure(ixy == cmodel.element(&x).mul(&cmodel.element(&y)), || format!("C3 product {x} * {y}"))?;
        let back = lib(cycle_iso_inv(&c3, &lib(cycle_iso(&c3, &x))?))?;
        ensure(lib(back.equals(&x))?, || format!("C3 round trip of {x}"))?;
    }
    Ok(format!("A3: {checked} monomial products match M3(K); C3: {pairs} pairs match M3(K[x,x^-1])"))
}

fn criterion_4() -> Outcome {
    let ex = catalogue::example5();
    let set = |names: &[&str]| -> VertexSet { names.iter().map(|n| ex.vertex(n).unwrap()).collect() };
    let h = set(&["y", "z"]);
    ensure(lib(is_hereditary(&ex, &h))? && lib(is_saturated(&ex, &h))?, || {
        "H={y,z} is not saturated hereditary".into()
    })?;
    ensure(lib(breaking_vertices(&ex, &h))? == set(&["v", "w"]), || "B_H differs from {v,w}".into())?;
    let p = lib(AdmissiblePair::parse(&ex, "H={y,z};S={v}"))?;
    let quotient = Graph::builder()
        .vertices(&["u", "v", "w", "w'", "x"])
        .edge("uv", "u", "v")
        .edge("ux", "u", "x")
        .edge("uw", "u", "w")
        .edge("uw'", "u", "w'")
        .edge("vx", "v", "x")
        .edge("wx", "w", "x")
        .edge("wu", "w", "u")
        .build()
        .unwrap();
    let q = lib(quotient_graph(&ex, &p))?;
    ensure(q == quotient, || format!("quotient graph differs:\n{}", save_graph(&q)))?;
    let restriction = Graph::builder()
        .vertices(&["v", "y", "z"])
        .edge("yz", "y", "z")
        .edge("zy", "z", "y")
        .bundle("v", &["y"])
        .build()
        .unwrap();
    let r = lib(restriction_graph(&ex, &p))?;
    ensure(r == restriction, || format!("restriction graph differs:\n{}", save_graph(&r)))?;
    let sinks: Vec<&str> =
        q.vertex_ids().filter(|v| q.classify(*v) == VertexClass::Sink).map(|v| q.vertex_name(v)).collect();
    ensure(sinks == ["w'", "x"], || format!("quotient sinks {sinks:?}"))?;
    Ok("H={y,z} saturated hereditary, B_H={v,w}, quotient and restriction graphs match".into())
}

fn criterion_5() -> Outcome {
    let mut pairs_total = 0;
    let mut triples = 0usize;
    for (name, g) in catalogue::all() {
        let lat = Lattice::new(&g);
        let n = lat.len();
        let meet = |i, j| lib(lat.meet(i, j));
        let join = |i, j| lib(lat.join(i, j));
        for a in 0..n {
            ensure(meet(a, a)? == a && join(a, a)? == a, || format!("{name}: idempotence at {a}"))?;
            for b in 0..n {
                let (m, j) = (meet(a, b)?, join(a, b)?);
                ensure(m == meet(b, a)? && j == join(b, a)?, || format!("{name}: commutativity {a},{b}"))?;
                ensure(join(a, m)? == a && meet(a, j)? == a, || format!("{name}: absorption {a},{b}"))?;
                ensure(lat.leq(m, a) && lat.leq(m, b) && lat.leq(a, j) && lat.leq(b, j), || {
                    format!("{name}: bounds {a},{b}")
                })?;
                ensure(lat.leq(a, b) == (m == a) && lat.leq(a, b) == (j == b), || format!("{name}: order {a},{b}"))?;
                for c in 0..n {
                    ensure(meet(meet(a, b)?, c)? == meet(a, meet(b, c)?)?, || format!("{name}: meet assoc"))?;
                    ensure(join(join(a, b)?, c)? == join(a, join(b, c)?)?, || format!("{name}: join assoc"))?;
                    triples += 1;
                }
            }
        }
        let alg = Lpa::new(g.clone(), Field::Rational);
        for p in lat.pairs() {
            let in_h: VertexSet =
                g.vertex_ids().filter(|v| in_graded_ideal(&alg, p, &alg.vertex_element(*v)).unwrap_or(false)).collect();
            ensure(in_h == p.h, || format!("{name}: vertex recovery fails for {}", p.display(&g)))?;
            let b = lib(breaking_vertices(&g, &p.h))?;
            let mut in_s = VertexSet::new();
            for v in b {
                if lib(in_graded_ideal(&alg, p, &lib(vh_element(&alg, &p.h, v))?))? {
                    in_s.insert(v);
                }
            }
            ensure(in_s == p.s, || format!("{name}: breaking recovery fails for {}", p.display(&g)))?;
            for q in lat.pairs() {
                let mut contained = true;
                for x in lib(ideal_generators(&alg, p))? {
                    contained &= lib(in_graded_ideal(&alg, q, &x))?;
                }
                ensure(contained == pair_leq(p, q), || {
                    format!("{name}: containment of {} in {} disagrees with order", p.display(&g), q.display(&g))
                })?;
            }
            pairs_total += 1;
        }
    }
    Ok(format!("lattice laws on {triples} triples; recovery and containment on {pairs_total} pairs"))
}

/// `Σ λ αβ*` with `r(α) = r(β) ∈ H`, plus `Σ λ α v^H β*` for `v ∈ S`.
fn random_ideal_element(rng: &mut impl Rng, alg: &Arc<Lpa>, p: &AdmissiblePair) -> Element {
    let g = alg.graph();
    let h: Vec<VertexId> = p.h.iter().copied().collect();
    let s: Vec<VertexId> = p.s.iter().copied().collect();
    let mut x = alg.zero();
    if h.is_empty() && s.is_empty() {
        return x;
    }
    for _ in 0..rng.gen_range(1..=3) {
        let c = alg.scalar(rng.gen_range(1..=4));
        let use_s = !s.is_empty() && (h.is_empty() || rng.gen_bool(0.4));
        if use_s {
            let v = s[rng.gen_range(0..s.len())];
            let a = random_path_into(rng, g, v, 2);
            let b = random_path_into(rng, g, v, 2);
            let vh = vh_element(alg, &p.h, v).unwrap();
            let t = &(&alg.path_element(&a) * &vh) * &alg.ghost_path_element(&b);
            x = &x + &(&c * &t);
        } else {
            let r = h[rng.gen_range(0..h.len())];
            x = &x + &alg.term(c, random_monomial_at(rng, g, r, 2));
        }
    }
    x
}

fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    let mut samples = 0usize;
    let mut outside = 0usize;
    for (name, g) in catalogue::all() {
        let alg = Lpa::new(g.clone(), Field::Rational);
        for p in leavitt::lattice::admissible_pairs(&g) {
            let q = lib(QuotientMap::new(&alg, &p))?;
            for v in g.vertex_ids().filter(|v| !p.h.contains(v)) {
                ensure(!lib(q.apply(&alg.vertex_element(v)))?.is_zero(), || {
                    format!("{name} {}: vertex {} dies", p.display(&g), g.vertex_name(v))
                })?;
            }
            let complement: Vec<VertexId> = g.vertex_ids().filter(|v| !p.h.contains(v)).collect();
            for _ in 0..25 {
                let x = random_element(&mut rng, &alg, 3, 3);
                let parts = x.degree_decompose();
                for (d, part) in parts {
                    let img = lib(q.apply(&part))?;
                    ensure(img.is_zero() || img.homogeneous_degree() == Some(d), || {
                        format!("{name} {}: degree {d} part {part} maps to {img}", p.display(&g))
                    })?;
                }
                let y = random_element(&mut rng, &alg, 3, 3);
                let lhs = lib(q.apply(&(&x * &y)))?;
                let rhs = lib(lib(q.apply(&x))?.try_mul(&lib(q.apply(&y))?))?;
                ensure(lhs == rhs, || format!("{name} {}: not multiplicative on {x}, {y}", p.display(&g)))?;

                let mut z = random_ideal_element(&mut rng, &alg, &p);
                let mut degrees = BTreeSet::new();
                let wanted = if complement.is_empty() { 0 } else { rng.gen_range(0..=2) };
                for _ in 0..wanted {
                    for _attempt in 0..10 {
                        let r = complement[rng.gen_range(0..complement.len())];
                        let m = random_monomial_at(&mut rng, &g, r, 2);
                        if degrees.insert(m.degree()) {
                            z = &z + &alg.term(alg.scalar(rng.gen_range(1..=3)), m);
                            break;
                        }
                    }
                }
                let expect = degrees.is_empty();
                let member = lib(in_graded_ideal(&alg, &p, &z))?;
                let killed = lib(q.apply(&z))?.is_zero();
                ensure(member == expect && killed == expect, || {
                    format!("{name} {}: membership of {z} is {member}, expected {expect}", p.display(&g))
                })?;
                outside += usize::from(!expect);
                samples += 1;
            }
        }
    }
    Ok(format!(
        "{samples} ideal/complement samples classified exactly ({outside} outside); grading and vertices preserved"
    ))
}

fn criterion_7() -> Outcome {
    let mut graphs: Vec<(String, Graph)> = catalogue::all().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    let mut rng = rng(7);
    for i in 0..120 {
        graphs.push((format!("random#{i}"), random_graph(&mut rng, 5, true)));
    }
    for (name, g) in &graphs {
        let k = condition_k(g);
        ensure(k == lib(condition_k_via_quotients(g))?, || format!("{name}: Condition (K) disagrees with quotients"))?;
        let alg = Lpa::new(g.clone(), Field::Rational);
        let w = lib(nongraded_ideal_witness(&alg))?;
        ensure(w.is_none() == condition_l(g), || format!("{name}: witness presence disagrees with Condition (L)"))?;
        let mut all_none = true;
        for p in leavitt::lattice::admissible_pairs(g) {
            let qa = Lpa::new(lib(quotient_graph(g, &p))?, Field::Rational);
            all_none &= lib(nongraded_ideal_witness(&qa))?.is_none();
        }
        ensure(all_none == k, || format!("{name}: quotient witnesses disagree with Condition (K)"))?;
    }

    let r1 = Lpa::new(catalogue::r1(), Field::Rational);
    let w = lib(nongraded_ideal_witness(&r1))?.ok_or("R1 has no witness")?;
    let gen = Poly::from_lib(lib(cycle_iso(&r1, &w.generator))?.get(0, 0));
    let comp = Poly::from_lib(lib(cycle_iso(&r1, &w.component))?.get(0, 0));
    ensure(gen.c.len() > 1, || "generator image is a unit".into())?;
    ensure(!comp.rem(&gen).c.is_empty(), || "component lies in the generated ideal".into())?;
    ensure(w.generator.homogeneous_degree().is_none(), || "generator is homogeneous".into())?;

    let p = lib(parse_element(&r1, "v + e + e^3"))?;
    let pi = Poly::from_lib(lib(cycle_iso(&r1, &p))?.get(0, 0));
    let bi = Poly::from_lib(lib(cycle_iso(&r1, &p.bar()))?.get(0, 0));
    ensure(pi.rem(&pi).c.is_empty(), || "p not in its own ideal".into())?;
    ensure(!bi.rem(&pi).c.is_empty(), || "bar(1 + x + x^3) lies in <1 + x + x^3>".into())?;
    Ok(format!(
        "(K) = (K) via quotients and witnesses match (L) on {} graphs; R1 witness certified; bar(1+x+x^3) outside",
        graphs.len()
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = rng(8);
    let mut checked = 0;
    for (name, g) in catalogue::all() {
        lib(is_simple(&g)).map_err(|e| format!("{name}: {e}"))?;
        checked += 1;
    }
    for i in 0..120 {
        let g = random_graph(&mut rng, 5, true);
        lib(is_simple(&g)).map_err(|e| format!("random#{i}: {e}\n{}", save_graph(&g)))?;
        checked += 1;
    }
    let mut known: Vec<(String, Graph, bool)> = Vec::new();
    for n in 2..=5 {
        known.push((format!("rose({n})"), catalogue::rose(n), true));
    }
    for n in 1..=6 {
        known.push((format!("line({n})"), catalogue::line(n), true));
    }
    known.push(("R1".into(), catalogue::r1(), false));
    known.push(("T".into(), catalogue::t(), false));
    known.push(("two_loops".into(), catalogue::two_loops(), false));
    for (name, g, expect) in &known {
        let v = lib(is_simple(g))?;
        ensure(v.simple == *expect, || format!("{name}: simple={} expected {expect}", v.simple))?;
        if v.simple {
            ensure(leavitt::lattice::admissible_pairs(g).len() == 2, || format!("{name}: simple with extra pairs"))?;
        }
    }
    Ok(format!("characterizations agree on {checked} graphs; {} known verdicts match", known.len()))
}

fn criterion_9() -> Outcome {
    let mut rng = rng(9);
    let mut count = 0;
    for g in [catalogue::r1(), catalogue::r2(), catalogue::c3()] {
        for field in fields() {
            let alg = Lpa::new(g.clone(), field);
            for _ in 0..20 {
                let y = random_nonzero_element(&mut rng, &alg, 4, 3);
                let out = lib(extract_ghost_polynomial(&alg, &y))?;
                ensure(!out.x.is_zero(), || format!("zero extraction for {y}"))?;
                ensure(out.x.is_ghost_polynomial(), || format!("{} is not ghost-only", out.x))?;
                let again = &(&alg.ghost_path_element(&out.beta) * &alg.vertex_element(out.vertex)) * &y;
                ensure(lib(again.equals(&out.x))?, || format!("factorization fails for {y}"))?;
                ensure(out.beta.source == out.vertex, || "beta does not start at v".into())?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} extractions are nonzero, ghost-only and factor as beta*.v.y"))
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_leavitt");
    let graphs = concat!(env!("CARGO_MANIFEST_DIR"), "/graphs");
    let ex = format!("{graphs}/example5.graph");
    let commands: Vec<Vec<String>> = [
        vec!["validate", &ex],
        vec!["props", "R1"],
        vec!["props", &ex],
        vec!["saturate", "A3", "--H", "w"],
        vec!["closure", "T", "--X", "v"],
        vec!["breaking", &ex, "--H", "y,z"],
        vec!["pairs", &ex],
        vec!["lattice", &ex],
        vec!["lattice", &ex, "--dot"],
        vec!["lattice", &ex, "--formulas"],
        vec!["quotient", &ex, "--pair", "H={y,z};S={v}"],
        vec!["restrict", &ex, "--pair", "H={y,z};S={v}"],
        vec!["desingularize", &ex, "--depth", "3"],
        vec!["eval", "R2", "--field", "f5", "a*a' + 2*b*a'*a*b'"],
        vec!["member", &ex, "--pair", "H={y,z};S={v}", "u + yz*zy'"],
        vec!["ghost-extract", "R2", "a + 2*b*a'"],
        vec!["simple", "A3"],
        vec!["dot", &ex],
    ]
    .iter()
    .map(|c| c.iter().map(|s| s.to_string()).collect())
    .collect();
    for args in &commands {
        let run = || Command::new(bin).args(args).output().map_err(|e| e.to_string());
        let (a, b) = (run()?, run()?);
        ensure(a.status.success(), || format!("{args:?} failed: {}", String::from_utf8_lossy(&a.stderr)))?;
        ensure(a.stdout == b.stdout && a.stderr == b.stderr && a.status == b.status, || {
            format!("{args:?} is not deterministic")
        })?;
        if matches!(args[0].as_str(), "quotient" | "restrict" | "desingularize") {
            let text = String::from_utf8_lossy(&a.stdout).to_string();
            let again = save_graph(&lib(parse_graph(&text))?);
            ensure(again == text, || format!("{args:?} output is not canonical"))?;
        }
    }
    let mut files = 0;
    for entry in std::fs::read_dir(graphs).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let once = save_graph(&lib(load_graph(&path))?);
        let twice = save_graph(&lib(parse_graph(&once))?);
        ensure(once == twice, || format!("{} is not a save/load fixed point", path.display()))?;
        files += 1;
    }
    for (name, g) in catalogue::all() {
        ensure(lib(parse_graph(&save_graph(&g)))? == g, || format!("{name} does not round trip"))?;
    }
    Ok(format!("{} commands byte-identical across runs; {files} files reach a save/load fixed point", commands.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("relations and ring laws", criterion_1),
        ("Laurent oracle on R1", criterion_2),
        ("matrix oracles on A3 and C3", criterion_3),
        ("Example5 reproduction", criterion_4),
        ("lattice laws and recovery", criterion_5),
        ("quotient map is graded and kills exactly the ideal", criterion_6),
        ("Condition (K) equivalences and non-graded witnesses", criterion_7),
        ("simplicity characterizations", criterion_8),
        ("ghost extraction", criterion_9),
        ("CLI determinism and round trip", criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

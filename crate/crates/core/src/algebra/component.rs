use std::sync::Arc;

use super::{Element, Lpa, Monomial};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::graph::{Path, VertexId};

/// An element of `span{αβ* : α, β ∈ Eⁿ, r(α) = r(β) = v}` written as a
/// coefficient matrix.  Rows and columns are indexed by `paths`, the length-`n`
/// paths into `v` in lexicographic order; entry `(i, j)` is the coefficient of
/// `paths[i] paths[j]*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixComponent {
    pub paths: Vec<Path>,
    pub entries: Vec<Vec<Scalar>>,
}

impl MatrixComponent {
    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &MatrixComponent) -> Result<MatrixComponent> {
        if self.paths != other.paths {
            return Err(Error::NotInComponent);
        }
        let n = self.dim();
        let mut entries = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut acc = self.entries[i][j].field().zero();
                for k in 0..n {
                    acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
                }
                row.push(acc);
            }
            entries.push(row);
        }
        Ok(MatrixComponent { paths: self.paths.clone(), entries })
    }

    pub fn to_element(&self, alg: &Arc<Lpa>) -> Element {
        let mut x = alg.zero();
        for (i, a) in self.paths.iter().enumerate() {
            for (j, b) in self.paths.iter().enumerate() {
                let c = &self.entries[i][j];
                if !c.is_zero() {
                    let m = Monomial { alpha: a.clone(), beta: b.clone() };
                    x = &x + &alg.term(c.clone(), m);
                }
            }
        }
        x
    }
}

/// Coefficient matrix of `x` inside the matrix-unit block for `(n, v)`.
///
/// The entry for `(α, β)` is read off from `α* x β = c·v`, then the whole
/// element is checked against `Σ c αβ*`.
pub fn gn_matrix_form(alg: &Arc<Lpa>, n: usize, v: VertexId, x: &Element) -> Result<MatrixComponent> {
    if !Arc::ptr_eq(alg, x.algebra()) && x.algebra().graph() != alg.graph() {
        return Err(Error::AlgebraMismatch);
    }
    let g = alg.graph();
    if v.0 >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{}", v.0)));
    }
    let paths = g.paths_of_length_into(n, v);
    let mut entries = Vec::with_capacity(paths.len());
    for a in &paths {
        let left = alg.ghost_path_element(a).try_mul(x)?;
        let mut row = Vec::with_capacity(paths.len());
        for b in &paths {
            let c = left.try_mul(&alg.path_element(b))?;
            let coeff = match c.term_count() {
                0 => alg.field().zero(),
                1 => {
                    let (m, s) = c.terms().next().expect("one term");
                    if *m != Monomial::vertex(v) {
                        return Err(Error::NotInComponent);
                    }
                    s.clone()
                }
                _ => return Err(Error::NotInComponent),
            };
            row.push(coeff);
        }
        entries.push(row);
    }
    let form = MatrixComponent { paths, entries };
    if !form.to_element(alg).equals(x)? {
        return Err(Error::NotInComponent);
    }
    Ok(form)
}

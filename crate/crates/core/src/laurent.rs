//! Laurent polynomials `K[x, x⁻¹]` and square matrices over them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A Laurent polynomial with exact coefficients; zero coefficients are never
/// stored, so structural equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    field: Field,
    coeffs: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero(field: Field) -> Self {
        LaurentPoly { field, coeffs: BTreeMap::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::monomial(field.one(), 0)
    }

    /// `c·x^k`.
    pub fn monomial(c: Scalar, k: i64) -> Self {
        let mut p = LaurentPoly::zero(c.field());
        if !c.is_zero() {
            p.coeffs.insert(k, c);
        }
        p
    }

    /// Builds `Σ cᵢ xⁱ` from integer coefficients, starting at exponent `low`.
    pub fn from_ints(field: Field, low: i64, coeffs: &[i64]) -> Self {
        let mut p = LaurentPoly::zero(field);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(low + i as i64, field.from_i64(*c));
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, k: i64) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, k: i64, c: Scalar) {
        assert_eq!(c.field(), self.field, "laurent field mismatch");
        let sum = match self.coeffs.get(&k) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { field: self.field, coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero(self.field);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                out.add_term(i + j, a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = LaurentPoly::zero(self.field);
        for (k, a) in &self.coeffs {
            out.add_term(*k, a * c);
        }
        out
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { field: self.field, coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// The involution `x ↦ x⁻¹`.
    pub fn bar(&self) -> Self {
        LaurentPoly { field: self.field, coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// The unique polynomial associate with nonzero constant term.
    fn normalized_poly(&self) -> Vec<Scalar> {
        match self.min_exponent() {
            None => Vec::new(),
            Some(low) => {
                let high = self.max_exponent().unwrap();
                (low..=high).map(|k| self.coefficient(k)).collect()
            }
        }
    }

    /// Remainder of `self` modulo the ideal `⟨modulus⟩`, as a polynomial of
    /// degree below that of `modulus` after clearing powers of `x`.
    ///
    /// Monomials are units, so `p ∈ ⟨q⟩` iff the polynomial associate of `q`
    /// divides that of `p`.
    pub fn rem(&self, modulus: &Self) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = modulus.normalized_poly();
        let r = poly_rem(self.normalized_poly(), &q)?;
        Ok(from_dense(self.field, &r))
    }

    pub fn is_multiple_of(&self, modulus: &Self) -> Result<bool> {
        Ok(self.rem(modulus)?.is_zero())
    }

    /// Monic generator of `⟨self, other⟩` with nonzero constant term; zero
    /// only if both inputs are.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let mut a = self.normalized_poly();
        let mut b = other.normalized_poly();
        while !b.is_empty() {
            let r = poly_rem(a, &b)?;
            a = b;
            b = r;
        }
        if a.is_empty() {
            return Ok(LaurentPoly::zero(self.field));
        }
        let lead = a.last().unwrap().inv()?;
        let monic: Vec<Scalar> = a.iter().map(|c| c * &lead).collect();
        let p = from_dense(self.field, &monic);
        Ok(p.shift(-p.min_exponent().unwrap_or(0)))
    }
}

fn from_dense(field: Field, coeffs: &[Scalar]) -> LaurentPoly {
    let mut p = LaurentPoly::zero(field);
    for (i, c) in coeffs.iter().enumerate() {
        p.add_term(i as i64, c.clone());
    }
    p
}

fn trim(v: &mut Vec<Scalar>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Dense polynomial remainder, low degree first.
fn poly_rem(mut a: Vec<Scalar>, b: &[Scalar]) -> Result<Vec<Scalar>> {
    trim(&mut a);
    let mut b = b.to_vec();
    trim(&mut b);
    let lead_inv = b.last().ok_or(Error::DivisionByZero)?.inv()?;
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let factor = a.last().unwrap() * &lead_inv;
        for (i, c) in b.iter().enumerate() {
            a[shift + i] = &a[shift + i] - &(c * &factor);
        }
        trim(&mut a);
    }
    Ok(a)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (*k, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}*x")?,
                (k, true) => write!(f, "x^{k}")?,
                (k, false) => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

/// An `n × n` matrix over `K[x, x⁻¹]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    field: Field,
    entries: Vec<Vec<LaurentPoly>>,
}

impl LaurentMatrix {
    pub fn zero(field: Field, n: usize) -> Self {
        LaurentMatrix { field, entries: vec![vec![LaurentPoly::zero(field); n]; n] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.entries[i][i] = LaurentPoly::one(field);
        }
        m
    }

    /// `c·E_ij ⊗ x^k`.
    pub fn unit(n: usize, i: usize, j: usize, c: Scalar, k: i64) -> Self {
        let mut m = Self::zero(c.field(), n);
        m.entries[i][j] = LaurentPoly::monomial(c, k);
        m
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.entries[i][j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(LaurentPoly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (row, orow) in out.entries.iter_mut().zip(&other.entries) {
            for (a, b) in row.iter_mut().zip(orow) {
                *a = a.add(b);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim();
        let mut out = Self::zero(self.field, n);
        for i in 0..n {
            for k in 0..n {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let p = self.entries[i][k].mul(&other.entries[k][j]);
                    out.entries[i][j] = out.entries[i][j].add(&p);
                }
            }
        }
        out
    }

    /// Transpose combined with `x ↦ x⁻¹` on every entry.
    pub fn star(&self) -> Self {
        let n = self.dim();
        let mut out = Self::zero(self.field, n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j][i] = self.entries[i][j].bar();
            }
        }
        out
    }

    /// Generator of the ideal of `K[x, x⁻¹]` generated by all entries; the
    /// two-sided ideal generated by the matrix is all matrices over it.
    pub fn entry_ideal(&self) -> Result<LaurentPoly> {
        let mut g = LaurentPoly::zero(self.field);
        for p in self.entries.iter().flatten() {
            g = g.gcd(p)?;
        }
        Ok(g)
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

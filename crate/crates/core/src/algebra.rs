//! Lie algebras given by rational structure constants on a fixed basis,
//! sparse elements and linear maps between them.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linalg::Matrix;
use crate::scalars::{Rational, Scalar};

/// Sparse vector over a basis; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<S> {
    coeffs: BTreeMap<usize, S>,
}

impl<S: Scalar> Default for Element<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Element<S> {
    pub fn zero() -> Self {
        Element { coeffs: BTreeMap::new() }
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, S::one())
    }

    pub fn term(i: usize, c: S) -> Self {
        let mut e = Self::zero();
        e.add_term(i, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, S)>) -> Self {
        let mut e = Self::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn add_term(&mut self, i: usize, c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&i) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.coeffs.remove(&i);
                } else {
                    *v = s;
                }
            }
            None => {
                self.coeffs.insert(i, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for (&i, v) in &other.coeffs {
            self.add_term(i, v.clone() * c.clone());
        }
    }

    pub fn get(&self, i: usize) -> S {
        self.coeffs.get(&i).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &S)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&i, v)| (i, v.clone() * c.clone())))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut e = self.clone();
        e.add_scaled(other, &S::one());
        e
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut e = self.clone();
        e.add_scaled(other, &-S::one());
        e
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    /// Entrywise Galois conjugation.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&i, v)| (i, v.conj())))
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Element<T> {
        Element::from_terms(self.coeffs.iter().map(|(&i, v)| (i, f(v))))
    }

    pub fn to_dense(&self, dim: usize) -> Vec<S> {
        let mut v = vec![S::zero(); dim];
        for (&i, c) in &self.coeffs {
            v[i] = c.clone();
        }
        v
    }

    pub fn from_dense(v: &[S]) -> Self {
        Self::from_terms(v.iter().cloned().enumerate())
    }
}

pub fn lift<S: Scalar>(e: &Element<Rational>) -> Element<S> {
    e.map_scalars(|q| S::from_rational(q.clone()))
}

/// Structure constants `[b_i, b_j] = sum_k c_ijk b_k` over the rationals.
#[derive(Clone, Debug)]
pub struct LieTable {
    dim: usize,
    table: Vec<Element<Rational>>,
}

impl LieTable {
    /// `bracket(i, j)` must be antisymmetric; the table is filled for all pairs.
    pub fn from_fn(dim: usize, mut bracket: impl FnMut(usize, usize) -> Element<Rational>) -> Self {
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                table.push(bracket(i, j));
            }
        }
        LieTable { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Element<Rational> {
        &self.table[i * self.dim + j]
    }

    pub fn bracket<S: Scalar>(&self, x: &Element<S>, y: &Element<S>) -> Element<S> {
        let mut out = Element::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a.clone() * b.clone();
                for (k, c) in self.bracket_basis(i, j).iter() {
                    out.add_term(k, ab.scale(c));
                }
            }
        }
        out
    }

    /// `ad_x(b_j) = [b_i, b_j]` applied to a general element.
    pub fn ad_basis<S: Scalar>(&self, i: usize, y: &Element<S>) -> Element<S> {
        let mut out = Element::zero();
        for (j, b) in y.iter() {
            for (k, c) in self.bracket_basis(i, j).iter() {
                out.add_term(k, b.scale(c));
            }
        }
        out
    }

    /// First basis pair violating antisymmetry.
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in i..self.dim {
                if self.bracket_basis(i, j) != &self.bracket_basis(j, i).neg() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First basis triple violating the Jacobi identity.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let bi = Element::<Rational>::basis(i);
                    let bj = Element::basis(j);
                    let bk = Element::basis(k);
                    let t1 = self.bracket(&bi, self.bracket_basis(j, k));
                    let t2 = self.bracket(&bj, self.bracket_basis(k, i));
                    let t3 = self.bracket(&bk, self.bracket_basis(i, j));
                    if !t1.plus(&t2).plus(&t3).is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// `trace(ad_x ad_y)` on basis pairs.
    pub fn killing_form(&self) -> Vec<Vec<Rational>> {
        let n = self.dim;
        let mut k = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let mut tr = Rational::zero();
                // sum_l coefficient of b_l in [b_i, [b_j, b_l]]
                for l in 0..n {
                    let inner = self.bracket_basis(j, l);
                    for (m, c) in inner.iter() {
                        let v = self.bracket_basis(i, m).get(l);
                        if !v.is_zero() {
                            tr += c * &v;
                        }
                    }
                }
                k[i][j] = tr.clone();
                k[j][i] = tr;
            }
        }
        k
    }
}

/// Linear map given by the images of the basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMap<S> {
    images: Vec<Element<S>>,
}

impl<S: Scalar> AlgebraMap<S> {
    pub fn identity(dim: usize) -> Self {
        AlgebraMap { images: (0..dim).map(Element::basis).collect() }
    }

    pub fn from_images(images: Vec<Element<S>>) -> Self {
        AlgebraMap { images }
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> &Element<S> {
        &self.images[i]
    }

    pub fn images(&self) -> &[Element<S>] {
        &self.images
    }

    pub fn apply(&self, x: &Element<S>) -> Element<S> {
        let mut out = Element::zero();
        for (i, c) in x.iter() {
            out.add_scaled(&self.images[i], c);
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        AlgebraMap { images: other.images.iter().map(|x| self.apply(x)).collect() }
    }

    /// Entrywise Galois conjugation of the matrix.
    pub fn conj(&self) -> Self {
        AlgebraMap { images: self.images.iter().map(Element::conj).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, e)| e == &Element::basis(i))
    }

    /// Matrix with `m[r][c]` = coefficient of `b_r` in the image of `b_c`.
    pub fn matrix(&self) -> Matrix<S> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (c, img) in self.images.iter().enumerate() {
            for (r, v) in img.iter() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix().rank() == self.dim()
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim();
        let m = self.matrix();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let e = Element::<S>::basis(i).to_dense(n);
            let x = m.solve(&e)?;
            images.push(Element::from_dense(&x));
        }
        let inv = AlgebraMap { images };
        (inv.compose(self).is_identity()).then_some(inv)
    }

    /// First basis pair on which `phi([x, y]) != [phi x, phi y]`.
    pub fn bracket_violation(&self, table: &LieTable) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.apply(&lift(table.bracket_basis(i, j)));
                let rhs = table.bracket(&self.images[i], &self.images[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_automorphism(&self, table: &LieTable) -> bool {
        self.bracket_violation(table).is_none() && self.is_invertible()
    }

    /// Restriction of the coefficients to the rationals, if possible.
    pub fn to_rational(&self) -> Option<AlgebraMap<Rational>> {
        let images = self
            .images
            .iter()
            .map(|e| {
                let terms: Option<Vec<_>> = e.iter().map(|(i, c)| c.as_rational().map(|q| (i, q))).collect();
                terms.map(Element::from_terms)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(AlgebraMap { images })
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> AlgebraMap<T> {
        AlgebraMap { images: self.images.iter().map(|e| e.map_scalars(&f)).collect() }
    }
}

pub fn lift_map<S: Scalar>(m: &AlgebraMap<Rational>) -> AlgebraMap<S> {
    m.map_scalars(|q| S::from_rational(q.clone()))
}

//! Split simple Lie algebras in a Chevalley basis.
//!
//! Basis order: `H_1..H_n`, then `X_a` for the positive roots in the order of
//! [`RootSystem::positive_roots`], then `X_{-a}` in the same order.
//!
//! Structure constants `N_{a,b}` follow the extraspecial-pair construction:
//! every extraspecial pair gets the sign `+`, and the remaining constants are
//! forced by the standard three- and four-term relations between them.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebra::{lift, AlgebraMap, Element, LieTable};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootsys::{self, DiagramAutomorphism, Root, RootSystem};
use crate::scalars::{int, pow_signed, Rational, Scalar};
use crate::tensors::Tensor2;

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    rs: RootSystem,
    table: LieTable,
    killing: Vec<Vec<Rational>>,
    omega: Tensor2<Rational>,
}

struct StructureConstants<'a> {
    rs: &'a RootSystem,
    memo: HashMap<(Root, Root), i64>,
}

impl<'a> StructureConstants<'a> {
    fn norm(&self, r: &[i64]) -> Rational {
        self.rs.inner(r, r)
    }

    fn is_pos(r: &[i64]) -> bool {
        r.iter().all(|&c| c >= 0)
    }

    /// Extraspecial pair of a non-simple positive root.
    fn extraspecial(&self, xi: &[i64]) -> (Root, Root) {
        for a in self.rs.positive_roots() {
            let b = rootsys::sub(xi, a);
            if self.rs.is_positive_root(&b) {
                return (a.clone(), b);
            }
        }
        unreachable!("{xi:?} has no decomposition")
    }

    fn n(&mut self, a: &[i64], b: &[i64]) -> i64 {
        let xi = rootsys::add(a, b);
        if !self.rs.is_root(&xi) {
            return 0;
        }
        let key = (a.to_vec(), b.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = self.compute(a, b, &xi);
        debug_assert_eq!(v.abs(), self.rs.string_down(a, b) + 1, "|N| for {a:?}, {b:?}");
        self.memo.insert(key, v);
        v
    }

    fn compute(&mut self, a: &[i64], b: &[i64], xi: &[i64]) -> i64 {
        let rs = self.rs;
        match (Self::is_pos(a), Self::is_pos(b)) {
            (false, false) => -self.n(&rootsys::negate(a), &rootsys::negate(b)),
            (false, true) => -self.n(b, a),
            (true, false) => {
                // a + b + (-xi) = 0:  N_{a,b} / |xi|^2 = N_{b,-xi} / |a|^2 = N_{-xi,a} / |b|^2
                if Self::is_pos(xi) {
                    let v = -self.n(&rootsys::negate(b), xi);
                    ratio_to_int(&(self.norm(xi) / self.norm(a) * int(v)))
                } else {
                    let v = self.n(&rootsys::negate(xi), a);
                    ratio_to_int(&(self.norm(xi) / self.norm(b) * int(v)))
                }
            }
            (true, true) => {
                let ia = rs.positive_index(a).unwrap();
                let ib = rs.positive_index(b).unwrap();
                if ia > ib {
                    return -self.n(b, a);
                }
                let (a1, b1) = self.extraspecial(xi);
                if a1 == a {
                    return rs.string_down(a, b) + 1;
                }
                // four-term relation with (a, b, -a1, -b1)
                let n1 = self.n(&a1, &b1);
                let na1 = rootsys::negate(&a1);
                let nb1 = rootsys::negate(&b1);
                let mut acc = Rational::zero();
                let d1 = rootsys::sub(b, &a1);
                if rs.is_root(&d1) {
                    let t = self.n(b, &na1) * self.n(a, &nb1);
                    acc += int(t) / self.norm(&d1);
                }
                let d2 = rootsys::sub(a, &a1);
                if rs.is_root(&d2) {
                    let t = self.n(&na1, a) * self.n(b, &nb1);
                    acc += int(t) / self.norm(&d2);
                }
                ratio_to_int(&(self.norm(xi) / int(n1) * acc))
            }
        }
    }
}

fn ratio_to_int(q: &Rational) -> i64 {
    crate::scalars::to_i64(q).unwrap_or_else(|| panic!("structure constant {q} is not an integer"))
}

impl ChevalleyAlgebra {
    pub fn new(rs: RootSystem) -> Self {
        let n = rs.rank();
        let pos = rs.positive_roots().to_vec();
        let np = pos.len();
        let dim = n + 2 * np;
        let mut sc = StructureConstants { rs: &rs, memo: HashMap::new() };

        let root_of = |i: usize| -> Option<Root> {
            if i < n {
                None
            } else if i < n + np {
                Some(pos[i - n].clone())
            } else {
                Some(rootsys::negate(&pos[i - n - np]))
            }
        };
        let index_of = |r: &[i64]| -> usize {
            match rs.positive_index(r) {
                Some(p) => n + p,
                None => n + np + rs.positive_index(&rootsys::negate(r)).expect("not a root"),
            }
        };

        let mut entries: Vec<Element<Rational>> = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let e = match (root_of(i), root_of(j)) {
                    (None, None) => Element::zero(),
                    (None, Some(b)) => Element::term(j, int(rs.pairing(&b, i))),
                    (Some(a), None) => Element::term(i, int(-rs.pairing(&a, j))),
                    (Some(a), Some(b)) => {
                        let s = rootsys::add(&a, &b);
                        if s.iter().all(|&c| c == 0) {
                            // [X_a, X_{-a}] = H_a, the coroot in the H_i basis
                            let na = rs.inner(&a, &a);
                            Element::from_terms((0..n).map(|k| (k, int(a[k]) * rs.simple_inner(k, k) / &na)))
                        } else if rs.is_root(&s) {
                            Element::term(index_of(&s), int(sc.n(&a, &b)))
                        } else {
                            Element::zero()
                        }
                    }
                };
                entries.push(e);
            }
        }
        let mut it = entries.into_iter();
        let table = LieTable::from_fn(dim, |_, _| it.next().unwrap());

        drop(sc);

        let killing = table.killing_form();
        let omega = casimir_from_form(&killing);
        ChevalleyAlgebra { rs, table, killing, omega }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn table(&self) -> &LieTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn killing(&self) -> &[Vec<Rational>] {
        &self.killing
    }

    pub fn killing_value(&self, x: &Element<Rational>, y: &Element<Rational>) -> Rational {
        let mut acc = Rational::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc += a * b * &self.killing[i][j];
            }
        }
        acc
    }

    pub fn h(&self, i: usize) -> usize {
        assert!(i < self.rank());
        i
    }

    /// Basis index of `X_r`.
    pub fn x(&self, r: &[i64]) -> usize {
        let n = self.rank();
        let np = self.rs.positive_roots().len();
        match self.rs.positive_index(r) {
            Some(p) => n + p,
            None => n + np + self.rs.positive_index(&rootsys::negate(r)).expect("not a root"),
        }
    }

    /// Root of a basis vector, `None` for the Cartan part.
    pub fn root_of(&self, i: usize) -> Option<Root> {
        let n = self.rank();
        let np = self.rs.positive_roots().len();
        if i < n {
            None
        } else if i < n + np {
            Some(self.rs.positive_roots()[i - n].clone())
        } else {
            Some(rootsys::negate(&self.rs.positive_roots()[i - n - np]))
        }
    }

    pub fn is_cartan(&self, i: usize) -> bool {
        i < self.rank()
    }

    pub fn structure_constant(&self, a: &[i64], b: &[i64]) -> Rational {
        self.table.bracket_basis(self.x(a), self.x(b)).get(self.x(&rootsys::add(a, b)))
    }

    /// `(Omega, Omega_h)`
    pub fn casimir(&self) -> (Tensor2<Rational>, Tensor2<Rational>) {
        (self.omega.clone(), self.omega.restrict(self.rank()))
    }

    pub fn omega(&self) -> &Tensor2<Rational> {
        &self.omega
    }

    /// `1 / K(X_a, X_{-a})`, the coefficient of `X_a ⊗ X_{-a}` in `Omega`.
    pub fn dual_pairing(&self, a: &[i64]) -> Rational {
        self.killing[self.x(a)][self.x(&rootsys::negate(a))].recip()
    }

    /// Value of the root functional `a_i` on `H_j`.
    pub fn simple_root_on_h(&self, i: usize, j: usize) -> Rational {
        int(self.rs.cartan()[i][j])
    }

    /// `H ↦ −H`, `X_a ↦ −X_{−a}`.
    pub fn chevalley_automorphism(&self) -> AlgebraMap<Rational> {
        let images = (0..self.dim())
            .map(|i| match self.root_of(i) {
                None => Element::term(i, int(-1)),
                Some(r) => Element::term(self.x(&rootsys::negate(&r)), int(-1)),
            })
            .collect();
        AlgebraMap::from_images(images)
    }

    /// Images of all root vectors whose root lies in `±Span(allowed)`, given the
    /// images of `X_{±a_i}` for `i` in `allowed`, extended multiplicatively
    /// through the fixed decomposition of each root.
    pub fn extend_from_generators<S: Scalar>(
        &self,
        allowed: &[usize],
        gen: impl Fn(usize, bool) -> Element<S>,
    ) -> HashMap<Root, Element<S>> {
        let n = self.rank();
        let mut img: HashMap<Root, Element<S>> = HashMap::new();
        for &i in allowed {
            let a = self.rs.simple_root(i);
            img.insert(rootsys::negate(&a), gen(i, false));
            img.insert(a, gen(i, true));
        }
        let supported = |r: &[i64]| (0..n).all(|k| r[k] == 0 || allowed.contains(&k));
        for xi in self.rs.positive_roots() {
            if rootsys::height(xi) == 1 || !supported(xi) {
                continue;
            }
            // decompose through the smallest allowed simple root
            let i = allowed
                .iter()
                .copied()
                .filter(|&i| self.rs.is_positive_root(&rootsys::sub(xi, &self.rs.simple_root(i))))
                .min()
                .expect("decomposition inside the span");
            let a = self.rs.simple_root(i);
            let rest = rootsys::sub(xi, &a);
            let nn = self.structure_constant(&a, &rest);
            let pos = self.table.bracket(&img[&a], &img[&rest]).scale(&S::from_rational(nn.recip()));
            let na = rootsys::negate(&a);
            let nrest = rootsys::negate(&rest);
            let nneg = self.structure_constant(&na, &nrest);
            let neg = self.table.bracket(&img[&na], &img[&nrest]).scale(&S::from_rational(nneg.recip()));
            img.insert(xi.clone(), pos);
            img.insert(rootsys::negate(xi), neg);
        }
        img
    }

    /// The automorphism fixing the pinning that permutes simple generators by `pi`.
    pub fn lift_diagram_automorphism(&self, pi: &DiagramAutomorphism) -> AlgebraMap<Rational> {
        let all: Vec<usize> = (0..self.rank()).collect();
        let img = self.extend_from_generators(&all, |i, positive| {
            let s = self.rs.simple_root(pi.apply(i));
            if positive {
                Element::basis(self.x(&s))
            } else {
                Element::basis(self.x(&rootsys::negate(&s)))
            }
        });
        let images = (0..self.dim())
            .map(|i| match self.root_of(i) {
                None => Element::basis(pi.apply(i)),
                Some(r) => img[&r].clone(),
            })
            .collect();
        AlgebraMap::from_images(images)
    }

    /// `Ad_t`: identity on `h`, `X_a ↦ a(t) X_a`.
    pub fn torus_adjoint<S: Scalar>(&self, t: &TorusElement<S>) -> AlgebraMap<S> {
        let images = (0..self.dim())
            .map(|i| match self.root_of(i) {
                None => Element::basis(i),
                Some(r) => Element::term(i, t.character(&r)),
            })
            .collect();
        AlgebraMap::from_images(images)
    }

    /// First basis triple failing Jacobi, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        self.table.jacobi_violation()
    }

    /// `K([a,x],y) + K(x,[a,y]) = 0` on all basis triples.
    pub fn killing_is_invariant(&self) -> bool {
        let d = self.dim();
        for a in 0..d {
            for x in 0..d {
                let ax = self.table.bracket_basis(a, x);
                for y in 0..d {
                    let lhs = self.killing_value(ax, &Element::basis(y));
                    let rhs = self.killing_value(&Element::basis(x), self.table.bracket_basis(a, y));
                    if lhs + rhs != Rational::zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks `phi` preserves the Killing form: `K(phi x, phi y) = K(x, y)`.
    pub fn preserves_killing(&self, phi: &AlgebraMap<Rational>) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.killing_value(phi.image(i), phi.image(j)) == self.killing[i][j]))
    }

    pub fn basis_label(&self, i: usize) -> String {
        match self.root_of(i) {
            None => format!("H{}", i + 1),
            Some(r) => format!("X{r:?}"),
        }
    }
}

/// `Omega = sum (K^{-1})_{ij} b_i ⊗ b_j` over the Killing-dual basis.
fn casimir_from_form(killing: &[Vec<Rational>]) -> Tensor2<Rational> {
    let n = killing.len();
    let m = Matrix::from_rows(killing.to_vec(), n);
    let mut omega = Tensor2::zero();
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        let col = m.solve(&e).expect("Killing form is nondegenerate");
        for (i, v) in col.into_iter().enumerate() {
            omega.add_term(i, j, v);
        }
    }
    omega
}

/// Element of the adjoint split torus, one coordinate per simple root.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement<S> {
    t: Vec<S>,
}

impl<S: Scalar> TorusElement<S> {
    pub fn new(t: Vec<S>) -> Result<Self> {
        if t.iter().any(|x| x.is_zero()) {
            return Err(Error::Invalid("torus coordinates must be nonzero".into()));
        }
        Ok(TorusElement { t })
    }

    pub fn identity(rank: usize) -> Self {
        TorusElement { t: vec![S::one(); rank] }
    }

    pub fn coords(&self) -> &[S] {
        &self.t
    }

    /// `a(t) = prod t_i^{n_i}` for `a = sum n_i a_i`.
    pub fn character(&self, r: &[i64]) -> S {
        r.iter().zip(&self.t).fold(S::one(), |acc, (&n, x)| acc * pow_signed(x, n))
    }

    pub fn mul(&self, other: &Self) -> Self {
        TorusElement { t: self.t.iter().zip(&other.t).map(|(a, b)| a.clone() * b.clone()).collect() }
    }

    pub fn inverse(&self) -> Self {
        TorusElement { t: self.t.iter().map(|a| a.inverse().unwrap()).collect() }
    }

    /// Diagram automorphisms act by permuting coordinates: `pi·t` with `a(pi·t) = (pi^{-1} a)(t)`.
    pub fn permute(&self, pi: &DiagramAutomorphism) -> Self {
        let mut out = self.t.clone();
        for (i, x) in self.t.iter().enumerate() {
            out[pi.apply(i)] = x.clone();
        }
        TorusElement { t: out }
    }

    pub fn conj(&self) -> Self {
        TorusElement { t: self.t.iter().map(Scalar::conj).collect() }
    }
}

/// `(ad_a ⊗ 1 + 1 ⊗ ad_a)(Omega) = 0` for every basis `a`.
pub fn omega_is_invariant(g: &ChevalleyAlgebra) -> bool {
    (0..g.dim()).all(|a| crate::tensors::ad_basis2(g.table(), a, g.omega()).is_zero())
}

/// Helper for tests and samplers: all rational-lifted basis vectors.
pub fn basis_elements<S: Scalar>(g: &ChevalleyAlgebra) -> Vec<Element<S>> {
    (0..g.dim()).map(|i| lift(&Element::<Rational>::basis(i))).collect()
}

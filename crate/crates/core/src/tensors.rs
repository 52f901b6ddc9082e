//! Sparse exact elements of `g⊗g` and `g⊗g⊗g`.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraMap, Element, LieTable};
use crate::error::{Error, Result};
use crate::scalars::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor2<S> {
    entries: BTreeMap<(usize, usize), S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<S> {
    entries: BTreeMap<(usize, usize, usize), S>,
}

fn insert_sparse<K: Ord + Copy, S: Scalar>(map: &mut BTreeMap<K, S>, k: K, c: S) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&k) {
        Some(v) => {
            let s = v.clone() + c;
            if s.is_zero() {
                map.remove(&k);
            } else {
                *v = s;
            }
        }
        None => {
            map.insert(k, c);
        }
    }
}

impl<S: Scalar> Default for Tensor2<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Tensor2<S> {
    pub fn zero() -> Self {
        Tensor2 { entries: BTreeMap::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), S)>) -> Self {
        let mut t = Self::zero();
        for ((i, j), c) in terms {
            t.add_term(i, j, c);
        }
        t
    }

    /// `x ⊗ y`
    pub fn outer(x: &Element<S>, y: &Element<S>) -> Self {
        let mut t = Self::zero();
        t.add_outer(x, y, &S::one());
        t
    }

    /// `x ∧ y = x⊗y − y⊗x`
    pub fn wedge(x: &Element<S>, y: &Element<S>) -> Self {
        let mut t = Self::outer(x, y);
        t.add_outer(y, x, &-S::one());
        t
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: S) {
        insert_sparse(&mut self.entries, (i, j), c);
    }

    pub fn add_outer(&mut self, x: &Element<S>, y: &Element<S>, c: &S) {
        for (i, a) in x.iter() {
            let ac = a.clone() * c.clone();
            for (j, b) in y.iter() {
                self.add_term(i, j, ac.clone() * b.clone());
            }
        }
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &S)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.iter().map(|(k, v)| (k, v.clone() * c.clone())))
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for ((i, j), v) in other.iter() {
            self.add_term(i, j, v.clone() * c.clone());
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut t = self.clone();
        t.add_scaled(other, &S::one());
        t
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut t = self.clone();
        t.add_scaled(other, &-S::one());
        t
    }

    /// Transposition of the tensor factors.
    pub fn flip(&self) -> Self {
        Tensor2 { entries: self.entries.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect() }
    }

    pub fn conj(&self) -> Self {
        Tensor2 { entries: self.entries.iter().map(|(&k, v)| (k, v.conj())).collect() }
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Tensor2<T> {
        Tensor2::from_terms(self.iter().map(|(k, v)| (k, f(v))))
    }

    /// Component restricted to the index box `[0, n) x [0, n)`.
    pub fn restrict(&self, n: usize) -> Self {
        Tensor2::from_terms(self.iter().filter(|((i, j), _)| *i < n && *j < n).map(|(k, v)| (k, v.clone())))
    }

    /// `c` with `self = c * other`, if it exists. `other` must be nonzero.
    pub fn proportionality(&self, other: &Self) -> Option<S> {
        let ((i, j), pivot) = other.iter().next()?;
        let c = self.get(i, j) * pivot.inverse()?;
        (other.scale(&c) == *self).then_some(c)
    }

    /// First-leg contraction by a linear functional: `sum c_ij f(b_i) b_j`.
    pub fn contract_first(&self, f: impl Fn(usize) -> S) -> Element<S> {
        Element::from_terms(self.iter().map(|((i, j), c)| (j, c.clone() * f(i))))
    }

    pub fn contract_second(&self, f: impl Fn(usize) -> S) -> Element<S> {
        Element::from_terms(self.iter().map(|((i, j), c)| (i, c.clone() * f(j))))
    }
}

pub fn lift2<S: Scalar>(t: &Tensor2<Rational>) -> Tensor2<S> {
    t.map_scalars(|q| S::from_rational(q.clone()))
}

impl<S: Scalar> Default for Tensor3<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Tensor3<S> {
    pub fn zero() -> Self {
        Tensor3 { entries: BTreeMap::new() }
    }

    pub fn add_term(&mut self, i: usize, j: usize, k: usize, c: S) {
        insert_sparse(&mut self.entries, (i, j, k), c);
    }

    pub fn add_outer(&mut self, x: &Element<S>, y: &Element<S>, z: &Element<S>, c: &S) {
        for (i, a) in x.iter() {
            let ac = a.clone() * c.clone();
            for (j, b) in y.iter() {
                let abc = ac.clone() * b.clone();
                for (k, d) in z.iter() {
                    self.add_term(i, j, k, abc.clone() * d.clone());
                }
            }
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> S {
        self.entries.get(&(i, j, k)).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, usize), &S)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut t = Self::zero();
        for ((i, j, k), v) in self.iter() {
            t.add_term(i, j, k, v.clone() * c.clone());
        }
        t
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for ((i, j, k), v) in other.iter() {
            self.add_term(i, j, k, v.clone() * c.clone());
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut t = self.clone();
        t.add_scaled(other, &-S::one());
        t
    }

    /// Swap of the last two factors, `id ⊗ flip`.
    pub fn flip23(&self) -> Self {
        Tensor3 { entries: self.entries.iter().map(|(&(i, j, k), v)| ((i, k, j), v.clone())).collect() }
    }
}

/// `(ad_a ⊗ 1 + 1 ⊗ ad_a)(s)`
pub fn ad_action2<S: Scalar>(table: &LieTable, a: &Element<S>, s: &Tensor2<S>) -> Tensor2<S> {
    let mut out = Tensor2::zero();
    for (p, ap) in a.iter() {
        for ((i, j), c) in s.iter() {
            let w = ap.clone() * c.clone();
            for (k, v) in table.bracket_basis(p, i).iter() {
                out.add_term(k, j, w.scale(v));
            }
            for (k, v) in table.bracket_basis(p, j).iter() {
                out.add_term(i, k, w.scale(v));
            }
        }
    }
    out
}

/// `ad_action2` for a basis vector.
pub fn ad_basis2<S: Scalar>(table: &LieTable, p: usize, s: &Tensor2<S>) -> Tensor2<S> {
    ad_action2(table, &Element::basis(p), s)
}

/// `[r12, r13] + [r12, r23] + [r13, r23]` expanded as the triple sum
/// `sum [s_i, s_j]⊗t_i⊗t_j + s_i⊗[t_i, s_j]⊗t_j + s_i⊗s_j⊗[t_i, t_j]`.
pub fn cyb<S: Scalar>(table: &LieTable, r: &Tensor2<S>) -> Tensor3<S> {
    let terms: Vec<((usize, usize), S)> = r.iter().map(|(k, v)| (k, v.clone())).collect();
    let mut out = Tensor3::zero();
    for ((si, ti), ci) in &terms {
        for ((sj, tj), cj) in &terms {
            let c = ci.clone() * cj.clone();
            for (k, v) in table.bracket_basis(*si, *sj).iter() {
                out.add_term(k, *ti, *tj, c.scale(v));
            }
            for (k, v) in table.bracket_basis(*ti, *sj).iter() {
                out.add_term(*si, k, *tj, c.scale(v));
            }
            for (k, v) in table.bracket_basis(*ti, *tj).iter() {
                out.add_term(*si, *sj, k, c.scale(v));
            }
        }
    }
    out
}

/// `[r12, r13] = sum [s_i, s_j]⊗t_i⊗t_j`.
pub fn bracket_12_13<S: Scalar>(table: &LieTable, r: &Tensor2<S>) -> Tensor3<S> {
    let mut out = Tensor3::zero();
    for ((si, ti), ci) in r.iter() {
        for ((sj, tj), cj) in r.iter() {
            let c = ci.clone() * cj.clone();
            for (k, v) in table.bracket_basis(si, sj).iter() {
                out.add_term(k, ti, tj, c.scale(v));
            }
        }
    }
    out
}

/// `(phi ⊗ psi)(s)`
pub fn apply_map2<S: Scalar>(phi: &AlgebraMap<S>, psi: &AlgebraMap<S>, s: &Tensor2<S>) -> Tensor2<S> {
    let mut out = Tensor2::zero();
    for ((i, j), c) in s.iter() {
        out.add_outer(phi.image(i), psi.image(j), c);
    }
    out
}

/// Checks `cyb(r - mu Omega) = mu (mu - lambda) [Omega12, Omega13]` and returns
/// the left-hand side. Assumes `r` is an r-matrix with `r + flip(r) = lambda Omega`.
pub fn lelim_residual<S: Scalar>(
    table: &LieTable,
    r: &Tensor2<S>,
    omega: &Tensor2<S>,
    mu: &S,
    lambda: &S,
) -> Result<Tensor3<S>> {
    let shifted = r.minus(&omega.scale(mu));
    let lhs = cyb(table, &shifted);
    let rhs = bracket_12_13(table, omega).scale(&(mu.clone() * (mu.clone() - lambda.clone())));
    if lhs != rhs {
        return Err(Error::IdentityViolation(format!(
            "cyb(r - mu Omega) differs from mu(mu - lambda)[Omega12, Omega13] at mu = {mu}"
        )));
    }
    Ok(lhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::ChevalleyAlgebra;
    use crate::linalg::Matrix;
    use crate::rootsys::{RootSystem, TypeLabel};
    use crate::scalars::{int, rat};
    use proptest::prelude::*;

    fn alg(l: TypeLabel, n: usize) -> ChevalleyAlgebra {
        ChevalleyAlgebra::new(RootSystem::new(l, n).unwrap())
    }

    #[test]
    fn flip_basics() {
        let g = alg(TypeLabel::A, 1);
        let (e, f) = (g.x(&[1]), g.x(&[-1]));
        let t = Tensor2::from_terms([((e, f), int(1))]);
        assert_eq!(t.flip(), Tensor2::from_terms([((f, e), int(1))]));
        assert_eq!(t.flip().flip(), t);
    }

    #[test]
    fn casimir_is_ad_invariant() {
        let g = alg(TypeLabel::A, 1);
        let (e, f) = (g.x(&[1]), g.x(&[-1]));
        let ef = Tensor2::from_terms([((e, f), int(1))]);
        assert!(ad_basis2(g.table(), 0, &ef).is_zero());
        assert!(ad_action2(g.table(), &Element::zero(), g.omega()).is_zero());
        for p in 0..g.dim() {
            assert!(ad_basis2(g.table(), p, g.omega()).is_zero());
        }
    }

    #[test]
    fn cyb_scaling_and_omega() {
        let g = alg(TypeLabel::A, 2);
        assert!(cyb(g.table(), &Tensor2::<Rational>::zero()).is_zero());
        let r = g.omega();
        let three = int(3);
        assert_eq!(cyb(g.table(), &r.scale(&three)), cyb(g.table(), r).scale(&int(9)));
        assert!(!bracket_12_13(g.table(), r).is_zero());
    }

    #[test]
    fn identity_map_on_tensors() {
        let g = alg(TypeLabel::B, 2);
        let id = AlgebraMap::<Rational>::identity(g.dim());
        assert_eq!(apply_map2(&id, &id, g.omega()), *g.omega());
    }

    #[test]
    fn lelim_on_dj() {
        let g = alg(TypeLabel::A, 2);
        let r = crate::bd::build_dj_rmatrix(&g);
        for mu in [int(0), int(1), rat(1, 2), rat(-7, 3)] {
            lelim_residual(g.table(), r.r(), g.omega(), &mu, &int(1)).unwrap();
        }
        assert!(lelim_residual(g.table(), r.r(), g.omega(), &rat(1, 2), &int(2)).is_err());
    }

    /// Dimension of the space of `s` in `g⊗g` with `ad_x(s) = 0` for all `x`.
    fn invariant_dimension(g: &ChevalleyAlgebra) -> usize {
        let n = g.dim();
        let mut rows = Vec::new();
        for p in 0..n {
            let cols: Vec<Tensor2<Rational>> =
                (0..n * n).map(|c| ad_basis2(g.table(), p, &Tensor2::from_terms([((c / n, c % n), int(1))]))).collect();
            for out in 0..n * n {
                rows.push(cols.iter().map(|t| t.get(out / n, out % n)).collect());
            }
        }
        Matrix::from_rows(rows, n * n).nullspace().len()
    }

    #[test]
    fn invariants_of_simple_algebras_are_one_dimensional() {
        for (l, n) in [(TypeLabel::A, 1), (TypeLabel::A, 2), (TypeLabel::B, 2)] {
            assert_eq!(invariant_dimension(&alg(l, n)), 1, "{l:?}{n}");
        }
    }

    fn small_tensor(n: usize) -> impl Strategy<Value = Tensor2<Rational>> {
        proptest::collection::vec((0..n, 0..n, -4i64..5), 0..6)
            .prop_map(|v| Tensor2::from_terms(v.into_iter().map(|(i, j, c)| ((i, j), int(c)))))
    }

    proptest! {
        #[test]
        fn ad_action_is_a_lie_action(p in 0usize..8, q in 0usize..8, s in small_tensor(8)) {
            let g = alg(TypeLabel::A, 2);
            let t = g.table();
            let lhs = ad_action2(t, &t.bracket(&Element::basis(p), &Element::basis(q)), &s);
            let rhs = ad_basis2(t, p, &ad_basis2(t, q, &s)).minus(&ad_basis2(t, q, &ad_basis2(t, p, &s)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn flip_is_involution(s in small_tensor(8)) {
            prop_assert_eq!(s.flip().flip(), s);
        }

        #[test]
        fn cyb_is_quadratic(s in small_tensor(3), c in -5i64..6) {
            let g = alg(TypeLabel::A, 1);
            prop_assert_eq!(cyb(g.table(), &s.scale(&int(c))), cyb(g.table(), &s).scale(&int(c * c)));
        }
    }
}

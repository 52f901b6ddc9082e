//! Cobrackets and Lie bialgebra checks.
//!
//! Everything here works over an arbitrary [`LieTable`], so the same checks
//! apply to a split algebra and to a descended real form.

use serde::Serialize;

use crate::algebra::{AlgebraMap, Element, LieTable};
use crate::bd::RMatrix;
use crate::chevalley::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::tensors::{ad_basis2, apply_map2, lift2, Tensor2, Tensor3};

/// A linear map `g → g⊗g`, stored by its values on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Cobracket<S> {
    values: Vec<Tensor2<S>>,
}

/// Outcome of the three axiom checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub antisymmetric: bool,
    pub cojacobi: bool,
    pub cocycle: bool,
}

impl AxiomReport {
    pub fn all(&self) -> bool {
        self.antisymmetric && self.cojacobi && self.cocycle
    }
}

impl<S: Scalar> Cobracket<S> {
    pub fn from_values(values: Vec<Tensor2<S>>) -> Self {
        Cobracket { values }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Tensor2<S>] {
        &self.values
    }

    pub fn on_basis(&self, i: usize) -> &Tensor2<S> {
        &self.values[i]
    }

    pub fn apply(&self, x: &Element<S>) -> Tensor2<S> {
        let mut out = Tensor2::zero();
        for (i, c) in x.iter() {
            out.add_scaled(&self.values[i], c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Tensor2::is_zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        Cobracket { values: self.values.iter().map(|t| t.scale(c)).collect() }
    }

    /// `(δ⊗id)(s)`
    fn left(&self, s: &Tensor2<S>) -> Tensor3<S> {
        let mut out = Tensor3::zero();
        for ((j, k), c) in s.iter() {
            for ((p, q), v) in self.values[j].iter() {
                out.add_term(p, q, k, c.clone() * v.clone());
            }
        }
        out
    }

    /// `(id⊗δ)(s)`
    fn right(&self, s: &Tensor2<S>) -> Tensor3<S> {
        let mut out = Tensor3::zero();
        for ((j, k), c) in s.iter() {
            for ((p, q), v) in self.values[k].iter() {
                out.add_term(j, p, q, c.clone() * v.clone());
            }
        }
        out
    }

    /// First basis element with `flip(δ(b)) != −δ(b)`.
    pub fn antisymmetry_violation(&self) -> Option<usize> {
        self.values.iter().position(|t| !t.plus(&t.flip()).is_zero())
    }

    /// First basis element violating
    /// `(δ⊗id)δ = (id⊗δ)δ + (id⊗flip)(δ⊗id)δ`.
    pub fn cojacobi_violation(&self) -> Option<usize> {
        self.values.iter().position(|d| {
            let a = self.left(d);
            let b = self.right(d);
            let mut rhs = b;
            rhs.add_scaled(&a.flip23(), &S::one());
            a != rhs
        })
    }

    /// First basis pair violating `δ([a,b]) = a·δ(b) − b·δ(a)`.
    pub fn cocycle_violation(&self, table: &LieTable) -> Option<(usize, usize)> {
        let n = self.dim();
        for a in 0..n {
            for b in a + 1..n {
                let lhs = self.apply(&crate::algebra::lift(table.bracket_basis(a, b)));
                let rhs = ad_basis2(table, a, &self.values[b]).minus(&ad_basis2(table, b, &self.values[a]));
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn report(&self, table: &LieTable) -> AxiomReport {
        AxiomReport {
            antisymmetric: self.antisymmetry_violation().is_none(),
            cojacobi: self.cojacobi_violation().is_none(),
            cocycle: self.cocycle_violation(table).is_none(),
        }
    }

    /// All three axioms, failing with the first violated one.
    pub fn verify(&self, table: &LieTable) -> Result<()> {
        if let Some(w) = self.antisymmetry_violation() {
            return Err(Error::AxiomViolation { axiom: "antisymmetry", witness: w });
        }
        if let Some(w) = self.cojacobi_violation() {
            return Err(Error::AxiomViolation { axiom: "co-Jacobi", witness: w });
        }
        if let Some((a, _)) = self.cocycle_violation(table) {
            return Err(Error::AxiomViolation { axiom: "cocycle", witness: a });
        }
        Ok(())
    }
}

/// `δ(a) = (ad_a⊗1 + 1⊗ad_a)(r)` on every basis element.
pub fn cobracket_from_r<S: Scalar>(table: &LieTable, r: &Tensor2<S>) -> Cobracket<S> {
    Cobracket { values: (0..table.dim()).map(|i| ad_basis2(table, i, r)).collect() }
}

/// Coboundary of an r-matrix, with all three axioms verified.
pub fn cobracket_of_rmatrix<S: Scalar>(g: &ChevalleyAlgebra, r: &RMatrix<S>) -> Result<Cobracket<S>> {
    let d = cobracket_from_r(g.table(), r.r());
    d.verify(g.table())?;
    Ok(d)
}

/// Whether `phi: (src, δ) → (dst, δ')` satisfies `(phi⊗phi)∘δ = δ'∘phi`.
pub fn is_bialgebra_morphism<S: Scalar>(
    src: &LieTable,
    dst: &LieTable,
    phi: &AlgebraMap<S>,
    delta: &Cobracket<S>,
    delta_prime: &Cobracket<S>,
) -> Result<bool> {
    for i in 0..src.dim() {
        for j in i + 1..src.dim() {
            let lhs = phi.apply(&crate::algebra::lift(src.bracket_basis(i, j)));
            let rhs = dst.bracket(phi.image(i), phi.image(j));
            if lhs != rhs {
                return Err(Error::NotLieMorphism(i, j));
            }
        }
    }
    Ok((0..src.dim()).all(|i| apply_map2(phi, phi, delta.on_basis(i)) == delta_prime.apply(phi.image(i))))
}

fn in_span_of_omega<S: Scalar>(g: &ChevalleyAlgebra, t: &Tensor2<S>) -> bool {
    t.is_zero() || t.proportionality(&lift2(g.omega())).is_some()
}

/// `(phi⊗phi)(r1) − r2 ∈ K·Omega`, cross-checked against the direct morphism test.
pub fn surjective_morphism_criterion<S: Scalar>(
    g: &ChevalleyAlgebra,
    phi: &AlgebraMap<S>,
    r1: &Tensor2<S>,
    r2: &Tensor2<S>,
) -> bool {
    let verdict = in_span_of_omega(g, &apply_map2(phi, phi, r1).minus(r2));
    let direct = is_bialgebra_morphism(
        g.table(),
        g.table(),
        phi,
        &cobracket_from_r(g.table(), r1),
        &cobracket_from_r(g.table(), r2),
    )
    .expect("surjective Lie algebra morphism");
    assert_eq!(verdict, direct, "tensor criterion disagrees with the direct morphism check");
    verdict
}

/// `(phi⊗phi)(r) = r`, cross-checked against the direct morphism test.
pub fn is_bialgebra_automorphism<S: Scalar>(g: &ChevalleyAlgebra, phi: &AlgebraMap<S>, r: &RMatrix<S>) -> bool {
    let verdict = apply_map2(phi, phi, r.r()) == *r.r();
    let d = cobracket_from_r(g.table(), r.r());
    let direct = is_bialgebra_morphism(g.table(), g.table(), phi, &d, &d).expect("Lie algebra automorphism");
    assert_eq!(verdict, direct, "fixed-tensor criterion disagrees with the direct morphism check");
    verdict
}

/// Whether `phi` is a morphism `∂(alpha r) → ∂(beta r)`.
pub fn scalar_multiple_obstruction<S: Scalar>(
    g: &ChevalleyAlgebra,
    r: &RMatrix<S>,
    alpha: &S,
    beta: &S,
    phi: &AlgebraMap<S>,
) -> bool {
    let d1 = cobracket_from_r(g.table(), &r.r().scale(alpha));
    let d2 = cobracket_from_r(g.table(), &r.r().scale(beta));
    is_bialgebra_morphism(g.table(), g.table(), phi, &d1, &d2).expect("Lie algebra automorphism")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bd::{build_bd_rmatrix, build_dj_rmatrix, AdmissibleQuadruple};
    use crate::chevalley::TorusElement;
    use crate::rootsys::{enumerate_admissible_triples, RootSystem, TypeLabel};
    use crate::scalars::{int, rat, Rational};

    fn alg(l: TypeLabel, n: usize) -> ChevalleyAlgebra {
        ChevalleyAlgebra::new(RootSystem::new(l, n).unwrap())
    }

    #[test]
    fn omega_has_zero_cobracket() {
        let g = alg(TypeLabel::A, 2);
        assert!(cobracket_from_r(g.table(), g.omega()).is_zero());
    }

    #[test]
    fn sl2_dj_cobracket_by_hand() {
        let g = alg(TypeLabel::A, 1);
        let (h, e) = (0, g.x(&[1]));
        let d = cobracket_from_r(g.table(), build_dj_rmatrix(&g).r());
        let expected = Tensor2::from_terms([((e, h), rat(1, 8)), ((h, e), rat(-1, 8))]);
        assert_eq!(d.on_basis(e), &expected);
        assert!(d.report(g.table()).all());
        let shifted = build_dj_rmatrix(&g).r().plus(&g.omega().scale(&rat(5, 3)));
        assert_eq!(cobracket_from_r(g.table(), &shifted), d);
    }

    #[test]
    fn bd_cobrackets_are_bialgebras() {
        for (l, n) in [(TypeLabel::A, 2), (TypeLabel::A, 3), (TypeLabel::B, 2)] {
            let g = alg(l, n);
            for t in enumerate_admissible_triples(g.root_system()) {
                let r = build_bd_rmatrix(&g, &AdmissibleQuadruple::canonical(&g, t).unwrap()).unwrap();
                cobracket_of_rmatrix(&g, &r).unwrap();
            }
        }
    }

    #[test]
    fn axioms_detect_garbage() {
        let g = alg(TypeLabel::A, 1);
        let e = g.x(&[1]);
        let r = Tensor2::from_terms([((e, e), int(1)), ((0, e), int(1))]);
        let d = cobracket_from_r(g.table(), &r);
        assert!(!d.report(g.table()).antisymmetric);
        assert!(d.verify(g.table()).is_err());

        let g = alg(TypeLabel::A, 2);
        let (e1, e2) = (g.x(&[1, 0]), g.x(&[0, 1]));
        let skew = Tensor2::from_terms([((e1, e2), int(1)), ((e2, e1), int(-1))]);
        let rep = cobracket_from_r(g.table(), &skew).report(g.table());
        assert!(rep.antisymmetric && rep.cocycle && !rep.cojacobi);
    }

    #[test]
    fn morphism_examples() {
        let g = alg(TypeLabel::A, 1);
        let r = build_dj_rmatrix(&g);
        let id = AlgebraMap::identity(g.dim());
        let d = cobracket_from_r(g.table(), r.r());
        assert!(is_bialgebra_morphism(g.table(), g.table(), &id, &d, &d).unwrap());
        assert!(surjective_morphism_criterion(&g, &id, r.r(), r.r()));
        assert!(surjective_morphism_criterion(&g, &id, r.r(), &r.r().plus(g.omega())));
        let (e, f) = (g.x(&[1]), g.x(&[-1]));
        let bumped = r.r().plus(&Tensor2::from_terms([((e, f), int(1))]));
        assert!(!surjective_morphism_criterion(&g, &id, r.r(), &bumped));

        let t = TorusElement::new(vec![rat(3, 7)]).unwrap();
        assert!(is_bialgebra_automorphism(&g, &g.torus_adjoint(&t), &r));
        assert!(is_bialgebra_automorphism(&g, &id, &r));

        let squash = AlgebraMap::from_images(vec![Element::zero(); g.dim()]);
        assert!(is_bialgebra_morphism(g.table(), g.table(), &squash, &d, &d).unwrap());
        let bad = AlgebraMap::from_images(vec![Element::basis(e), Element::basis(e), Element::basis(f)]);
        assert!(matches!(is_bialgebra_morphism(g.table(), g.table(), &bad, &d, &d), Err(Error::NotLieMorphism(..))));
    }

    #[test]
    fn chevalley_involution_flips_dj() {
        let g = alg(TypeLabel::A, 2);
        let r = build_dj_rmatrix(&g);
        let chi = g.chevalley_automorphism();
        assert!(!is_bialgebra_automorphism(&g, &chi, &r));
        assert!(scalar_multiple_obstruction(&g, &r, &int(1), &int(-1), &chi));
        assert!(!scalar_multiple_obstruction(&g, &r, &int(1), &int(2), &chi));
        let id = AlgebraMap::<Rational>::identity(g.dim());
        assert!(scalar_multiple_obstruction(&g, &r, &int(3), &int(3), &id));
    }

    #[test]
    fn torus_outside_centralizer_is_not_a_morphism() {
        let g = alg(TypeLabel::A, 2);
        let t = enumerate_admissible_triples(g.root_system())[1].clone();
        let r = build_bd_rmatrix(&g, &AdmissibleQuadruple::canonical(&g, t).unwrap()).unwrap();
        let ad = g.torus_adjoint(&TorusElement::new(vec![int(2), int(1)]).unwrap());
        let d = cobracket_from_r(g.table(), r.r());
        assert!(!is_bialgebra_morphism(g.table(), g.table(), &ad, &d, &d).unwrap());
    }
}

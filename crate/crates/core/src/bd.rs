//! Belavin–Drinfeld and Drinfeld–Jimbo r-matrices.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::Element;
use crate::chevalley::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootsys::{self, AdmissibleTriple, Root};
use crate::scalars::{rat, Rational, Scalar};
use crate::tensors::{cyb, lift2, Tensor2};

/// An element `r` with `cyb(r) = 0` and `r + flip(r) = lambda Omega`, `lambda != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix<S> {
    r: Tensor2<S>,
    lambda: S,
}

impl<S: Scalar> RMatrix<S> {
    /// Verifies both axioms.
    pub fn new(g: &ChevalleyAlgebra, r: Tensor2<S>) -> std::result::Result<Self, Rejection> {
        let lambda = verify_rmatrix(g, &r)?;
        Ok(RMatrix { r, lambda })
    }

    pub fn r(&self) -> &Tensor2<S> {
        &self.r
    }

    pub fn lambda(&self) -> &S {
        &self.lambda
    }

    pub fn scale(&self, c: &S) -> Self {
        RMatrix { r: self.r.scale(c), lambda: self.lambda.clone() * c.clone() }
    }

    /// `r^{21} = lambda Omega − r`, again an r-matrix.
    pub fn flipped(&self) -> Self {
        RMatrix { r: self.r.flip(), lambda: self.lambda.clone() }
    }
}

/// Which r-matrix axiom failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    NotProportional,
    LambdaZero,
    CybNonzero,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rejection::NotProportional => "NotProportional",
            Rejection::LambdaZero => "LambdaZero",
            Rejection::CybNonzero => "CYBNonzero",
        })
    }
}

/// Returns `lambda` with `r + flip(r) = lambda Omega` and `cyb(r) = 0`.
pub fn verify_rmatrix<S: Scalar>(g: &ChevalleyAlgebra, r: &Tensor2<S>) -> std::result::Result<S, Rejection> {
    let omega: Tensor2<S> = lift2(g.omega());
    let sym = r.plus(&r.flip());
    let lambda =
        if sym.is_zero() { S::zero() } else { sym.proportionality(&omega).ok_or(Rejection::NotProportional)? };
    if lambda.is_zero() {
        return Err(Rejection::LambdaZero);
    }
    if !cyb(g.table(), r).is_zero() {
        return Err(Rejection::CybNonzero);
    }
    Ok(lambda)
}

/// Affine solution set of the Cartan-part constraints:
/// `particular + span(kernel)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanSolution {
    pub particular: Tensor2<Rational>,
    pub kernel: Vec<Tensor2<Rational>>,
}

impl CartanSolution {
    /// `particular + sum c_i kernel_i`
    pub fn point(&self, coeffs: &[Rational]) -> Tensor2<Rational> {
        let mut t = self.particular.clone();
        for (k, c) in self.kernel.iter().zip(coeffs) {
            t.add_scaled(k, c);
        }
        t
    }
}

/// `(tau(a) ⊗ 1 + 1 ⊗ a)(t)` for a simple root `a = a_i` in `Gamma_1`, as an element of `h`.
pub fn cartan_constraint(g: &ChevalleyAlgebra, i: usize, tau_i: usize, t: &Tensor2<Rational>) -> Element<Rational> {
    let first = t.contract_first(|j| g.simple_root_on_h(tau_i, j));
    let second = t.contract_second(|k| g.simple_root_on_h(i, k));
    first.plus(&second)
}

fn antisym_basis(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            v.push((p, q));
        }
    }
    v
}

/// Solves for `r_h = ½ Omega_h + s` with `s` antisymmetric.
pub fn solve_cartan_part(g: &ChevalleyAlgebra, triple: &AdmissibleTriple) -> Result<CartanSolution> {
    let n = g.rank();
    let (_, omega_h) = g.casimir();
    let half = omega_h.scale(&rat(1, 2));
    let unknowns = antisym_basis(n);
    let wedge = |p: usize, q: usize| Tensor2::from_terms([((p, q), Rational::one()), ((q, p), -Rational::one())]);

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &(i, ti) in triple.tau_graph() {
        let base = cartan_constraint(g, i, ti, &half);
        let cols: Vec<Element<Rational>> =
            unknowns.iter().map(|&(p, q)| cartan_constraint(g, i, ti, &wedge(p, q))).collect();
        for m in 0..n {
            rows.push(cols.iter().map(|c| c.get(m)).collect::<Vec<_>>());
            rhs.push(-base.get(m));
        }
    }
    let to_tensor = |x: &[Rational]| {
        let mut t = Tensor2::zero();
        for (&(p, q), c) in unknowns.iter().zip(x) {
            t.add_scaled(&wedge(p, q), c);
        }
        t
    };
    if rows.is_empty() {
        let kernel = unknowns.iter().map(|&(p, q)| wedge(p, q)).collect();
        return Ok(CartanSolution { particular: half, kernel });
    }
    let a = Matrix::from_rows(rows, unknowns.len());
    let x = if unknowns.is_empty() {
        if rhs.iter().all(Zero::is_zero) {
            vec![]
        } else {
            return Err(Error::NoSolution);
        }
    } else {
        a.solve(&rhs).ok_or(Error::NoSolution)?
    };
    let kernel = if unknowns.is_empty() { vec![] } else { a.nullspace().iter().map(|v| to_tensor(v)).collect() };
    Ok(CartanSolution { particular: half.plus(&to_tensor(&x)), kernel })
}

/// Admissible triple together with a Cartan part satisfying both constraint families.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleQuadruple {
    triple: AdmissibleTriple,
    r_h: Tensor2<Rational>,
}

impl AdmissibleQuadruple {
    pub fn new(g: &ChevalleyAlgebra, triple: AdmissibleTriple, r_h: Tensor2<Rational>) -> Result<Self> {
        let n = g.rank();
        if r_h.iter().any(|((i, j), _)| i >= n || j >= n) {
            return Err(Error::Invalid("r_h must lie in h⊗h".into()));
        }
        let (_, omega_h) = g.casimir();
        if r_h.plus(&r_h.flip()) != omega_h {
            return Err(Error::Invalid("r_h + flip(r_h) != Omega_h".into()));
        }
        for &(i, ti) in triple.tau_graph() {
            if !cartan_constraint(g, i, ti, &r_h).is_zero() {
                return Err(Error::Invalid(format!("Cartan constraint fails for simple root {}", i + 1)));
            }
        }
        Ok(AdmissibleQuadruple { triple, r_h })
    }

    /// Quadruple with the canonical Cartan part (free coordinates set to zero).
    pub fn canonical(g: &ChevalleyAlgebra, triple: AdmissibleTriple) -> Result<Self> {
        let sol = solve_cartan_part(g, &triple)?;
        Self::new(g, triple, sol.particular)
    }

    /// `(∅, ∅, id, ½ Omega_h)`
    pub fn drinfeld_jimbo(g: &ChevalleyAlgebra) -> Self {
        let (_, omega_h) = g.casimir();
        AdmissibleQuadruple { triple: AdmissibleTriple::trivial(), r_h: omega_h.scale(&rat(1, 2)) }
    }

    pub fn triple(&self) -> &AdmissibleTriple {
        &self.triple
    }

    pub fn r_h(&self) -> &Tensor2<Rational> {
        &self.r_h
    }
}

/// The homomorphism of nilpotent subalgebras extending `X_{±a} ↦ X_{±tau(a)}`
/// for `a` in `Gamma_1`, on every root vector of `±Span(Gamma_1)`.
pub fn tau_homomorphism(g: &ChevalleyAlgebra, triple: &AdmissibleTriple) -> HashMap<Root, Element<Rational>> {
    let rs = g.root_system();
    g.extend_from_generators(triple.gamma1(), |i, positive| {
        let t = rs.simple_root(triple.tau(i).expect("i in Gamma_1"));
        if positive {
            Element::basis(g.x(&t))
        } else {
            Element::basis(g.x(&rootsys::negate(&t)))
        }
    })
}

/// `theta^k(X_r)`, or `None` once an iterate leaves `±Span(Gamma_1)`.
fn iterate_theta(
    g: &ChevalleyAlgebra,
    theta: &HashMap<Root, Element<Rational>>,
    root: &[i64],
    k: usize,
) -> Option<Element<Rational>> {
    let mut cur = Element::basis(g.x(root));
    for _ in 0..k {
        let mut next = Element::zero();
        for (i, c) in cur.iter() {
            let r = g.root_of(i)?;
            next.add_scaled(theta.get(&r)?, c);
        }
        cur = next;
    }
    Some(cur)
}

/// `r_BD` before verification.
pub fn bd_tensor(g: &ChevalleyAlgebra, quad: &AdmissibleQuadruple) -> Tensor2<Rational> {
    let rs = g.root_system();
    let mut r = quad.r_h.clone();
    for a in rs.positive_roots() {
        r.add_term(g.x(a), g.x(&rootsys::negate(a)), g.dual_pairing(a));
    }
    let triple = &quad.triple;
    if triple.is_trivial() {
        return r;
    }
    let theta = tau_homomorphism(g, triple);
    for (alpha, k, _) in triple.tau_strings(rs) {
        let c = g.dual_pairing(&alpha);
        let image = iterate_theta(g, &theta, &rootsys::negate(&alpha), k).expect("tau string inside the span");
        let x = Element::basis(g.x(&alpha));
        r.add_scaled(&Tensor2::wedge(&x, &image), &c);
    }
    r
}

/// Builds `r_BD` and verifies `cyb(r) = 0`, `r + flip(r) = Omega`.
pub fn build_bd_rmatrix(g: &ChevalleyAlgebra, quad: &AdmissibleQuadruple) -> Result<RMatrix<Rational>> {
    let r = bd_tensor(g, quad);
    match verify_rmatrix(g, &r) {
        Ok(l) if l.is_one() => Ok(RMatrix { r, lambda: l }),
        Ok(l) => Err(Error::VerificationFailed(format!("symmetric part is {l} Omega"))),
        Err(e) => Err(Error::VerificationFailed(e.to_string())),
    }
}

/// `½ Omega_h + sum_{a > 0} X_a ⊗ X_{-a}` (dual-pairing normalized).
pub fn build_dj_rmatrix(g: &ChevalleyAlgebra) -> RMatrix<Rational> {
    build_bd_rmatrix(g, &AdmissibleQuadruple::drinfeld_jimbo(g)).expect("Drinfeld-Jimbo r-matrix verifies")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{enumerate_admissible_triples, RootSystem, TypeLabel};
    use crate::scalars::int;
    use std::collections::BTreeMap;

    fn alg(l: TypeLabel, n: usize) -> ChevalleyAlgebra {
        ChevalleyAlgebra::new(RootSystem::new(l, n).unwrap())
    }

    #[test]
    fn sl2_dj() {
        let g = alg(TypeLabel::A, 1);
        let r = build_dj_rmatrix(&g);
        let (e, f) = (g.x(&[1]), g.x(&[-1]));
        let expected = Tensor2::from_terms([((0, 0), rat(1, 16)), ((e, f), rat(1, 4))]);
        assert_eq!(r.r(), &expected);
        assert_eq!(r.lambda(), &int(1));
        assert_eq!(r.r().flip(), g.omega().minus(r.r()));
    }

    #[test]
    fn verify_rejections() {
        let g = alg(TypeLabel::A, 1);
        assert_eq!(verify_rmatrix(&g, g.omega()), Err(Rejection::CybNonzero));
        assert_eq!(verify_rmatrix(&g, &g.omega().scale(&rat(1, 2))), Err(Rejection::CybNonzero));
        let (e, f) = (g.x(&[1]), g.x(&[-1]));
        let skew = Tensor2::from_terms([((e, f), int(1)), ((f, e), int(-1))]);
        assert_eq!(verify_rmatrix(&g, &skew), Err(Rejection::LambdaZero));
        let lopsided = Tensor2::from_terms([((e, f), int(1))]);
        assert_eq!(verify_rmatrix(&g, &lopsided), Err(Rejection::NotProportional));
    }

    #[test]
    fn cartan_solutions() {
        let a1 = alg(TypeLabel::A, 1);
        let sol = solve_cartan_part(&a1, &AdmissibleTriple::trivial()).unwrap();
        assert_eq!(sol.particular, Tensor2::from_terms([((0, 0), rat(1, 16))]));
        assert!(sol.kernel.is_empty());

        let a3 = alg(TypeLabel::A, 3);
        let sol = solve_cartan_part(&a3, &AdmissibleTriple::trivial()).unwrap();
        assert_eq!(sol.kernel.len(), 3);

        let a2 = alg(TypeLabel::A, 2);
        let t = AdmissibleTriple::new(a2.root_system(), BTreeMap::from([(0, 1)])).unwrap();
        let sol = solve_cartan_part(&a2, &t).unwrap();
        assert!(sol.kernel.is_empty());
        assert!(AdmissibleQuadruple::new(&a2, t, sol.particular).is_ok());
    }

    #[test]
    fn bd_a2_cross_term() {
        let g = alg(TypeLabel::A, 2);
        for t in enumerate_admissible_triples(g.root_system()) {
            let q = AdmissibleQuadruple::canonical(&g, t).unwrap();
            let r = build_bd_rmatrix(&g, &q).unwrap();
            assert_eq!(r.lambda(), &int(1));
        }
    }

    #[test]
    fn dj_is_bd_of_trivial_quadruple() {
        let g = alg(TypeLabel::B, 2);
        let q = AdmissibleQuadruple::canonical(&g, AdmissibleTriple::trivial()).unwrap();
        assert_eq!(build_bd_rmatrix(&g, &q).unwrap(), build_dj_rmatrix(&g));
    }
}

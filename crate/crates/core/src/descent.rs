//! Quadratic Galois descent: fixed-point forms and descended cobrackets.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{lift_map, AlgebraMap, Element, LieTable};
use crate::bd::RMatrix;
use crate::bialgebra::{cobracket_from_r, scalar_multiple_obstruction, Cobracket};
use crate::chevalley::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootsys::{self, RootSystem, TypeLabel};
use crate::scalars::{QuadExt, Rational, Scalar};
use crate::tensors::{apply_map2, lift2, Tensor2};
use crate::twist::GaloisCocycle;

/// Dense `n x n` rational matrix, row major.
pub type SquareMatrix = Vec<Rational>;

fn commutator(n: usize, x: &[Rational], y: &[Rational]) -> SquareMatrix {
    let mut out = vec![Rational::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let (xik, yik) = (&x[i * n + k], &y[i * n + k]);
            if xik.is_zero() && yik.is_zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += xik * &y[k * n + j] - yik * &x[k * n + j];
            }
        }
    }
    out
}

fn transpose(n: usize, x: &[Rational]) -> SquareMatrix {
    (0..n * n).map(|p| x[(p % n) * n + p / n].clone()).collect()
}

/// `sl_n` as traceless matrices, with the abstract Chevalley basis of type `A_{n-1}`.
#[derive(Clone, Debug)]
pub struct MatrixRealization {
    n: usize,
    g: ChevalleyAlgebra,
    matrices: Vec<SquareMatrix>,
    offdiag: HashMap<(usize, usize), (usize, Rational)>,
    transpose_map: AlgebraMap<Rational>,
}

impl MatrixRealization {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> &ChevalleyAlgebra {
        &self.g
    }

    pub fn matrix_of_basis(&self, i: usize) -> &SquareMatrix {
        &self.matrices[i]
    }

    pub fn matrix(&self, x: &Element<Rational>) -> SquareMatrix {
        let mut out = vec![Rational::zero(); self.n * self.n];
        for (i, c) in x.iter() {
            for (o, m) in out.iter_mut().zip(&self.matrices[i]) {
                *o += c * m;
            }
        }
        out
    }

    /// Coordinates of a traceless matrix in the Chevalley basis.
    pub fn coords(&self, m: &[Rational]) -> Result<Element<Rational>> {
        let n = self.n;
        let mut x = Element::zero();
        let mut running = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                let v = &m[i * n + j];
                if i != j && !v.is_zero() {
                    let (b, s) = &self.offdiag[&(i, j)];
                    x.add_term(*b, v / s);
                }
            }
            if i + 1 < n {
                running += &m[i * n + i];
                x.add_term(self.g.h(i), running.clone());
            }
        }
        if self.matrix(&x) != m {
            return Err(Error::Invalid("matrix is not traceless".into()));
        }
        Ok(x)
    }

    /// `x ↦ xᵗ` in the Chevalley basis.
    pub fn transpose_map(&self) -> &AlgebraMap<Rational> {
        &self.transpose_map
    }
}

/// Builds the realization with `H_i = E_ii − E_{i+1,i+1}` and `X_{a_i} = E_{i,i+1}`.
pub fn sl_realization(n: usize) -> Result<MatrixRealization> {
    if !(2..=4).contains(&n) {
        return Err(Error::UnsupportedRank(n));
    }
    let g = ChevalleyAlgebra::new(RootSystem::new(TypeLabel::A, n - 1)?);
    let rs = g.root_system().clone();
    let unit = |i: usize, j: usize| {
        let mut m = vec![Rational::zero(); n * n];
        m[i * n + j] = Rational::one();
        m
    };
    let mut matrices = vec![Vec::new(); g.dim()];
    for i in 0..n - 1 {
        let mut h = unit(i, i);
        h[(i + 1) * n + i + 1] = -Rational::one();
        matrices[g.h(i)] = h;
    }
    for a in rs.positive_roots() {
        for sign in [1i64, -1] {
            let root: Vec<i64> = a.iter().map(|c| c * sign).collect();
            let idx = g.x(&root);
            if rootsys::height(a) == 1 {
                let k = a.iter().position(|&c| c == 1).expect("simple root");
                matrices[idx] = if sign == 1 { unit(k, k + 1) } else { unit(k + 1, k) };
                continue;
            }
            let k = (0..rs.rank())
                .find(|&k| rs.is_positive_root(&rootsys::sub(a, &rootsys::unit(rs.rank(), k))))
                .expect("non-simple positive root has a simple summand");
            let ak: Vec<i64> = rootsys::unit(rs.rank(), k).iter().map(|c| c * sign).collect();
            let rest = rootsys::sub(&root, &ak);
            let c = g.structure_constant(&ak, &rest);
            let m = commutator(n, &matrices[g.x(&ak)], &matrices[g.x(&rest)]);
            matrices[idx] = m.into_iter().map(|v| v / &c).collect();
        }
    }
    let mut offdiag = HashMap::new();
    for (b, m) in matrices.iter().enumerate() {
        if g.is_cartan(b) {
            continue;
        }
        let p = m.iter().position(|v| !v.is_zero()).expect("nonzero root vector");
        offdiag.insert((p / n, p % n), (b, m[p].clone()));
    }
    let mut real = MatrixRealization { n, g, matrices, offdiag, transpose_map: AlgebraMap::identity(0) };
    for i in 0..real.g.dim() {
        for j in i + 1..real.g.dim() {
            let lhs = real.matrix(real.g.table().bracket_basis(i, j));
            if lhs != commutator(n, &real.matrices[i], &real.matrices[j]) {
                return Err(Error::VerificationFailed(format!("matrix realization breaks bracket at ({i}, {j})")));
            }
        }
    }
    let images = real.matrices.iter().map(|m| real.coords(&transpose(n, m))).collect::<Result<Vec<_>>>()?;
    real.transpose_map = AlgebraMap::from_images(images);
    Ok(real)
}

/// `x ↦ −xᵗ` as a cocycle for `Q(√d)/Q`.
pub fn unitary_cocycle(real: &MatrixRealization, d: i64) -> Result<GaloisCocycle> {
    let minus_t = AlgebraMap::from_images(real.transpose_map().images().iter().map(Element::neg).collect());
    GaloisCocycle::new(real.algebra(), d, lift_map(&minus_t))
}

/// The fixed points of `x ↦ u(conj x)`, as a Lie algebra over `Q`.
#[derive(Clone, Debug)]
pub struct DescendedForm {
    cocycle: GaloisCocycle,
    basis: Vec<Element<QuadExt>>,
    to_basis: AlgebraMap<QuadExt>,
    table: LieTable,
    delta_prime: Option<Cobracket<Rational>>,
}

impl DescendedForm {
    pub fn cocycle(&self) -> &GaloisCocycle {
        &self.cocycle
    }

    pub fn basis(&self) -> &[Element<QuadExt>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Structure constants in the fixed-point basis.
    pub fn table(&self) -> &LieTable {
        &self.table
    }

    pub fn delta_prime(&self) -> Option<&Cobracket<Rational>> {
        self.delta_prime.as_ref()
    }

    /// Rational coordinates of `y` in the fixed-point basis, if it lies in their span.
    pub fn rational_coords(&self, y: &Element<QuadExt>) -> Option<Element<Rational>> {
        let c = self.to_basis.apply(y);
        let terms = c.iter().map(|(i, v)| v.as_rational().map(|q| (i, q))).collect::<Option<Vec<_>>>()?;
        Some(Element::from_terms(terms))
    }

    fn rational_coords2(&self, t: &Tensor2<QuadExt>) -> Option<Tensor2<Rational>> {
        let c = apply_map2(&self.to_basis, &self.to_basis, t);
        let terms = c.iter().map(|(k, v)| v.as_rational().map(|q| (k, q))).collect::<Option<Vec<_>>>()?;
        Some(Tensor2::from_terms(terms))
    }

    /// Image of a rational combination of the fixed-point basis in `g ⊗ Q(√d)`.
    pub fn embed(&self, x: &Element<Rational>) -> Element<QuadExt> {
        let mut out = Element::zero();
        for (i, c) in x.iter() {
            out.add_scaled(&self.basis[i], &QuadExt::rational(c.clone()));
        }
        out
    }

    pub fn embed2(&self, t: &Tensor2<Rational>) -> Tensor2<QuadExt> {
        let mut out = Tensor2::zero();
        for ((i, j), c) in t.iter() {
            out.add_outer(&self.basis[i], &self.basis[j], &QuadExt::rational(c.clone()));
        }
        out
    }
}

/// Fixed points of `x ↦ u(conj x)` by exact linear algebra over `Q` in doubled dimension.
pub fn fixed_points(g: &ChevalleyAlgebra, cocycle: &GaloisCocycle) -> Result<DescendedForm> {
    let n = g.dim();
    let d = Rational::from_integer(cocycle.d().into());
    let u = cocycle.u().matrix();
    // x = a + b√d, u = U + V√d:  U a − d V b = a,  V a − U b = b.
    let mut rows = Vec::with_capacity(2 * n);
    for r in 0..n {
        let mut top = vec![Rational::zero(); 2 * n];
        let mut bottom = vec![Rational::zero(); 2 * n];
        for c in 0..n {
            let e = u.get(r, c);
            top[c] = e.a().clone();
            top[n + c] = -(&d * e.b());
            bottom[c] = e.b().clone();
            bottom[n + c] = -e.a().clone();
        }
        top[r] -= Rational::one();
        bottom[n + r] -= Rational::one();
        rows.push(top);
        rows.push(bottom);
    }
    let kernel = Matrix::from_rows(rows, 2 * n).nullspace();
    if kernel.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: kernel.len() });
    }
    let basis: Vec<Element<QuadExt>> = kernel
        .iter()
        .map(|v| {
            Element::from_terms((0..n).map(|i| {
                let q = QuadExt::new(v[i].clone(), v[n + i].clone(), cocycle.d()).expect("valid discriminant");
                (i, q)
            }))
        })
        .collect();
    for x in &basis {
        if cocycle.u().apply(&x.conj()) != *x {
            return Err(Error::VerificationFailed("fixed-point basis vector is not fixed".into()));
        }
    }
    let to_basis =
        AlgebraMap::from_images(basis.clone()).inverse().ok_or(Error::DimensionMismatch { expected: n, found: 0 })?;
    let mut form = DescendedForm {
        cocycle: cocycle.clone(),
        basis,
        to_basis,
        table: LieTable::from_fn(0, |_, _| Element::zero()),
        delta_prime: None,
    };
    let mut brackets = Vec::with_capacity(n * n);
    for x in &form.basis {
        for (i, y) in form.basis.iter().enumerate() {
            brackets.push(form.rational_coords(&g.table().bracket(x, y)).ok_or(Error::NotClosed(i))?);
        }
    }
    form.table = LieTable::from_fn(n, |i, j| brackets[i * n + j].clone());
    Ok(form)
}

/// How the scalar `alpha` multiplying `r` sits relative to `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AlphaClass {
    Rational,
    SqrtDMultiple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DescentCase {
    Case1,
    Case2,
    NoDescent,
}

/// Decides which descent condition `(u⊗u)(r)` satisfies.
pub fn pfields_decide(r: &RMatrix<Rational>, cocycle: &GaloisCocycle, alpha: AlphaClass) -> DescentCase {
    let rl: Tensor2<QuadExt> = lift2(r.r());
    let moved = apply_map2(cocycle.u(), cocycle.u(), &rl);
    match alpha {
        AlphaClass::Rational if moved == rl => DescentCase::Case1,
        AlphaClass::SqrtDMultiple if moved == rl.flip() => DescentCase::Case2,
        _ => DescentCase::NoDescent,
    }
}

fn alpha_value(alpha: AlphaClass, d: i64) -> QuadExt {
    match alpha {
        AlphaClass::Rational => QuadExt::rational(Rational::one()),
        AlphaClass::SqrtDMultiple => QuadExt::sqrt(d).expect("valid discriminant"),
    }
}

/// `alpha ∂r` on the fixed-point basis, in rational coordinates. The result is
/// checked against all three bialgebra axioms and stored in the form.
pub fn descend_cobracket(
    g: &ChevalleyAlgebra,
    r: &RMatrix<Rational>,
    form: &mut DescendedForm,
    alpha: AlphaClass,
) -> Result<Cobracket<Rational>> {
    if pfields_decide(r, form.cocycle(), alpha) == DescentCase::NoDescent {
        return Err(Error::Invalid("r does not descend for this cocycle and alpha".into()));
    }
    let ar = lift2::<QuadExt>(r.r()).scale(&alpha_value(alpha, form.cocycle().d()));
    let mut values = Vec::with_capacity(form.dim());
    for (i, x) in form.basis.iter().enumerate() {
        let t = crate::tensors::ad_action2(g.table(), x, &ar);
        values.push(form.rational_coords2(&t).ok_or(Error::NotClosed(i))?);
    }
    let delta = Cobracket::from_values(values);
    delta.verify(form.table())?;
    form.delta_prime = Some(delta.clone());
    Ok(delta)
}

/// Re-extends `δ'` to `Q(√d)` and compares with `alpha ∂r` on the fixed-point basis.
pub fn round_trip_matches(
    g: &ChevalleyAlgebra,
    r: &RMatrix<Rational>,
    form: &DescendedForm,
    alpha: AlphaClass,
) -> bool {
    let Some(delta) = form.delta_prime() else {
        return false;
    };
    let full = cobracket_from_r(g.table(), &lift2::<QuadExt>(r.r()).scale(&alpha_value(alpha, form.cocycle().d())));
    form.basis.iter().enumerate().all(|(i, x)| form.embed2(delta.on_basis(i)) == full.apply(x))
}

/// Sampled check that `(g, alpha ∂r)` admits none of `candidates` as an
/// isomorphism onto `(g, beta ∂r)` for each `beta`. Returns the first
/// `(candidate, beta)` index pair that is an isomorphism.
pub fn sampled_isomorphism(
    g: &ChevalleyAlgebra,
    r: &RMatrix<Rational>,
    d: i64,
    betas: &[Rational],
    candidates: &[AlgebraMap<QuadExt>],
) -> Option<(usize, usize)> {
    let rl = RMatrix::new(g, lift2::<QuadExt>(r.r())).expect("lifted r-matrix verifies");
    let alpha = alpha_value(AlphaClass::SqrtDMultiple, d);
    for (ci, phi) in candidates.iter().enumerate() {
        for (bi, beta) in betas.iter().enumerate() {
            if scalar_multiple_obstruction(g, &rl, &alpha, &QuadExt::rational(beta.clone()), phi) {
                return Some((ci, bi));
            }
        }
    }
    None
}

/// `u = id`, whose fixed points are the split form itself.
pub fn trivial_cocycle(g: &ChevalleyAlgebra, d: i64) -> Result<GaloisCocycle> {
    GaloisCocycle::new(g, d, lift_map(&AlgebraMap::identity(g.dim())))
}

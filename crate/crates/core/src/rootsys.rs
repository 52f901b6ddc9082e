//! Root systems in simple-root coordinates, diagram automorphisms and
//! admissible triples.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{int, rat, Rational};

/// A root as an integer vector over the simple roots.
pub type Root = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    G,
}

impl TypeLabel {
    pub fn letter(self) -> char {
        match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::G => 'G',
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLabel::A),
            "B" => Ok(TypeLabel::B),
            "C" => Ok(TypeLabel::C),
            "D" => Ok(TypeLabel::D),
            "G" => Ok(TypeLabel::G),
            _ => Err(Error::Parse(format!("unknown type label {s:?}"))),
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    label: TypeLabel,
    rank: usize,
    /// `cartan[i][j] = 2 (a_i, a_j) / (a_j, a_j)`
    cartan: Vec<Vec<i64>>,
    /// Gram matrix of the simple roots.
    gram: Vec<Vec<Rational>>,
    /// Positive roots sorted by height, ties broken with simple roots first
    /// in index order (descending lexicographic on coordinates).
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
}

fn gram_matrix(label: TypeLabel, n: usize) -> Vec<Vec<Rational>> {
    let mut g = vec![vec![Rational::zero(); n]; n];
    let chain = |g: &mut Vec<Vec<Rational>>, i: usize, j: usize, v: Rational| {
        g[i][j] = v.clone();
        g[j][i] = v;
    };
    match label {
        TypeLabel::A => {
            for i in 0..n {
                g[i][i] = int(2);
                if i + 1 < n {
                    chain(&mut g, i, i + 1, int(-1));
                }
            }
        }
        TypeLabel::B => {
            // long roots a_1..a_{n-1}, short a_n
            for i in 0..n {
                g[i][i] = if i + 1 == n { int(1) } else { int(2) };
                if i + 1 < n {
                    chain(&mut g, i, i + 1, int(-1));
                }
            }
        }
        TypeLabel::C => {
            // short roots a_1..a_{n-1}, long a_n
            for i in 0..n {
                g[i][i] = if i + 1 == n { int(2) } else { int(1) };
                if i + 2 < n {
                    chain(&mut g, i, i + 1, rat(-1, 2));
                } else if i + 1 < n {
                    chain(&mut g, i, i + 1, int(-1));
                }
            }
        }
        TypeLabel::D => {
            // chain a_1 - ... - a_{n-2}, fork to a_{n-1} and a_n
            for i in 0..n {
                g[i][i] = int(2);
            }
            for i in 0..n - 2 {
                chain(&mut g, i, i + 1, int(-1));
            }
            chain(&mut g, n - 3, n - 1, int(-1));
        }
        TypeLabel::G => {
            // a_1 short, a_2 long
            g[0][0] = int(2);
            g[1][1] = int(6);
            chain(&mut g, 0, 1, int(-3));
        }
    }
    g
}

impl RootSystem {
    /// Builds the root system of the given simple type.
    pub fn new(label: TypeLabel, rank: usize) -> Result<Self> {
        let ok = match label {
            TypeLabel::A => rank >= 1,
            TypeLabel::B => rank >= 2,
            TypeLabel::C => rank >= 2,
            TypeLabel::D => rank >= 4,
            TypeLabel::G => rank == 2,
        };
        if !ok || rank > 8 {
            return Err(Error::UnsupportedType(label.letter(), rank));
        }
        let gram = gram_matrix(label, rank);
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = int(2) * &gram[i][j] / &gram[j][j];
                        assert!(v.is_integer());
                        crate::scalars::to_i64(&v).unwrap()
                    })
                    .collect()
            })
            .collect();

        // closure of the simple roots under the simple reflections
        let simple: Vec<Root> = (0..rank).map(|i| unit(rank, i)).collect();
        let mut all: BTreeSet<Root> = simple.iter().cloned().collect();
        let mut frontier = simple;
        while let Some(beta) = frontier.pop() {
            for i in 0..rank {
                let p = pairing_with(&cartan, &beta, i);
                let mut s = beta.clone();
                s[i] -= p;
                if all.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        let mut positive: Vec<Root> = all.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
        positive.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
        let index = positive.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        Ok(RootSystem { label, rank, cartan, gram, positive, index })
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Positive roots followed by their negatives, in matching order.
    pub fn roots(&self) -> Vec<Root> {
        let mut v = self.positive.clone();
        v.extend(self.positive.iter().map(|r| negate(r)));
        v
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    pub fn simple_root(&self, i: usize) -> Root {
        unit(self.rank, i)
    }

    /// Position in [`Self::positive_roots`].
    pub fn positive_index(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        self.index.contains_key(r) || self.index.contains_key(&negate(r))
    }

    pub fn is_positive_root(&self, r: &[i64]) -> bool {
        self.index.contains_key(r)
    }

    /// Weyl-invariant form on root coordinates.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 {
                    acc += int(a[i] * b[j]) * &self.gram[i][j];
                }
            }
        }
        acc
    }

    pub fn simple_inner(&self, i: usize, j: usize) -> &Rational {
        &self.gram[i][j]
    }

    /// `<beta, a_i^vee>`, i.e. the eigenvalue of `H_i` on `X_beta`.
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        pairing_with(&self.cartan, beta, i)
    }

    /// Largest `p >= 0` with `beta - p alpha` a root.
    pub fn string_down(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let mut p = 0;
        let mut cur = sub(beta, alpha);
        while self.is_root(&cur) {
            p += 1;
            cur = sub(&cur, alpha);
        }
        p
    }
}

fn pairing_with(cartan: &[Vec<i64>], beta: &[i64], i: usize) -> i64 {
    beta.iter().enumerate().map(|(j, &n)| n * cartan[j][i]).sum()
}

pub fn unit(rank: usize, i: usize) -> Root {
    let mut v = vec![0; rank];
    v[i] = 1;
    v
}

pub fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

pub fn negate(r: &[i64]) -> Root {
    r.iter().map(|x| -x).collect()
}

pub fn add(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A permutation of the simple roots preserving the Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(rank: usize) -> Self {
        DiagramAutomorphism { perm: (0..rank).collect() }
    }

    /// Checks the permutation against the Cartan matrix of `rs`.
    pub fn new(rs: &RootSystem, perm: Vec<usize>) -> Result<Self> {
        let n = rs.rank();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Invalid(format!("{perm:?} is not a permutation of {n} simple roots")));
        }
        let a = rs.cartan();
        for i in 0..n {
            for j in 0..n {
                if a[perm[i]][perm[j]] != a[i][j] {
                    return Err(Error::Invalid(format!("{perm:?} does not preserve the Cartan matrix")));
                }
            }
        }
        Ok(DiagramAutomorphism { perm })
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply_root(&self, r: &[i64]) -> Root {
        let mut out = vec![0; r.len()];
        for (i, &c) in r.iter().enumerate() {
            out[self.perm[i]] += c;
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        DiagramAutomorphism { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        DiagramAutomorphism { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.compose(self);
            k += 1;
        }
        k
    }
}

/// All Cartan-matrix-preserving permutations, identity first.
pub fn diagram_automorphisms(rs: &RootSystem) -> Vec<DiagramAutomorphism> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..rs.rank()).collect();
    permutations(&mut perm, 0, &mut |p| {
        if let Ok(a) = DiagramAutomorphism::new(rs, p.to_vec()) {
            out.push(a);
        }
    });
    out.sort();
    out
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// `(Gamma_1, Gamma_2, tau)`; indices are 0-based simple-root positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleTriple {
    gamma1: Vec<usize>,
    gamma2: Vec<usize>,
    /// Graph of tau, sorted by source.
    tau: Vec<(usize, usize)>,
}

impl AdmissibleTriple {
    pub fn trivial() -> Self {
        AdmissibleTriple { gamma1: vec![], gamma2: vec![], tau: vec![] }
    }

    /// Validates bijectivity, the isometry condition and nilpotency.
    pub fn new(rs: &RootSystem, tau: BTreeMap<usize, usize>) -> Result<Self> {
        let n = rs.rank();
        let gamma1: Vec<usize> = tau.keys().copied().collect();
        let gamma2: BTreeSet<usize> = tau.values().copied().collect();
        if gamma1.iter().chain(gamma2.iter()).any(|&i| i >= n) {
            return Err(Error::Invalid("simple root index out of range".into()));
        }
        if gamma2.len() != gamma1.len() {
            return Err(Error::Invalid("tau is not injective".into()));
        }
        let t = AdmissibleTriple { gamma1, gamma2: gamma2.into_iter().collect(), tau: tau.into_iter().collect() };
        if !t.is_isometry(rs) {
            return Err(Error::Invalid("tau is not an isometry".into()));
        }
        if t.nilpotency_witness().is_none() {
            return Err(Error::Invalid("tau is not nilpotent".into()));
        }
        Ok(t)
    }

    pub fn gamma1(&self) -> &[usize] {
        &self.gamma1
    }

    pub fn gamma2(&self) -> &[usize] {
        &self.gamma2
    }

    pub fn tau_graph(&self) -> &[(usize, usize)] {
        &self.tau
    }

    pub fn is_trivial(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn tau(&self, i: usize) -> Option<usize> {
        self.tau.iter().find(|(a, _)| *a == i).map(|&(_, b)| b)
    }

    pub fn in_gamma1(&self, i: usize) -> bool {
        self.gamma1.contains(&i)
    }

    fn is_isometry(&self, rs: &RootSystem) -> bool {
        self.tau.iter().all(|&(a, ta)| self.tau.iter().all(|&(b, tb)| rs.simple_inner(ta, tb) == rs.simple_inner(a, b)))
    }

    /// Largest number of steps any simple root needs to leave `Gamma_1`,
    /// or `None` when some orbit cycles inside `Gamma_1`.
    pub fn nilpotency_witness(&self) -> Option<usize> {
        let mut worst = 0;
        for &a in &self.gamma1 {
            let mut cur = a;
            let mut k = 0;
            loop {
                if !self.in_gamma1(cur) {
                    break;
                }
                cur = self.tau(cur)?;
                k += 1;
                if k > self.gamma1.len() {
                    return None;
                }
            }
            worst = worst.max(k);
        }
        Some(worst)
    }

    /// Additive extension of tau applied `k` times to a root in `Span(Gamma_1)^+`.
    /// `Ok(None)` when an intermediate iterate leaves the span.
    pub fn extend_tau(&self, rs: &RootSystem, alpha: &[i64], k: usize) -> Result<Option<Root>> {
        if !rs.is_positive_root(alpha) || !self.in_span(alpha) {
            return Err(Error::Invalid(format!("{alpha:?} is not a positive root in Span(Gamma_1)")));
        }
        let mut cur = alpha.to_vec();
        for _ in 0..k {
            if !self.in_span(&cur) {
                return Ok(None);
            }
            cur = self.apply_tau(&cur);
        }
        debug_assert!(rs.is_positive_root(&cur));
        Ok(Some(cur))
    }

    /// Support contained in `Gamma_1`.
    pub fn in_span(&self, r: &[i64]) -> bool {
        r.iter().enumerate().all(|(i, &c)| c == 0 || self.in_gamma1(i))
    }

    fn apply_tau(&self, r: &[i64]) -> Root {
        let mut out = vec![0; r.len()];
        for &(a, b) in &self.tau {
            out[b] += r[a];
        }
        out
    }

    /// The pairs `(alpha, k)` with `tau^k(alpha)` defined, `alpha` in
    /// `Span(Gamma_1)^+` and `k > 0`, in deterministic order.
    pub fn tau_strings(&self, rs: &RootSystem) -> Vec<(Root, usize, Root)> {
        let mut out = Vec::new();
        for alpha in rs.positive_roots() {
            if !self.in_span(alpha) {
                continue;
            }
            let mut k = 1;
            while let Ok(Some(img)) = self.extend_tau(rs, alpha, k) {
                out.push((alpha.clone(), k, img));
                k += 1;
            }
        }
        out
    }
}

/// Complete, duplicate-free, canonically ordered list of admissible triples.
///
/// Backtracks over `Gamma_1` (as a bitmask) assigning images root by root with
/// isometry pruning.
pub fn enumerate_admissible_triples(rs: &RootSystem) -> Vec<AdmissibleTriple> {
    let n = rs.rank();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let gamma1: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let mut assign: Vec<usize> = Vec::with_capacity(gamma1.len());
        extend_assignment(rs, &gamma1, &mut assign, &mut out);
    }
    for t in &out {
        let k = t.nilpotency_witness().expect("enumerated triple must be nilpotent");
        assert!(k <= t.gamma1.len().max(1));
    }
    out.sort();
    out
}

fn extend_assignment(rs: &RootSystem, gamma1: &[usize], assign: &mut Vec<usize>, out: &mut Vec<AdmissibleTriple>) {
    let pos = assign.len();
    if pos == gamma1.len() {
        let tau: BTreeMap<usize, usize> = gamma1.iter().copied().zip(assign.iter().copied()).collect();
        if let Ok(t) = AdmissibleTriple::new(rs, tau) {
            out.push(t);
        }
        return;
    }
    let src = gamma1[pos];
    for img in 0..rs.rank() {
        if assign.contains(&img) {
            continue;
        }
        let compatible = (0..=pos).all(|q| {
            let (a, ta) = if q == pos { (src, img) } else { (gamma1[q], assign[q]) };
            rs.simple_inner(ta, img) == rs.simple_inner(a, src)
        });
        if !compatible {
            continue;
        }
        assign.push(img);
        extend_assignment(rs, gamma1, assign, out);
        assign.pop();
    }
}

/// Wire form: 1-based indices, tau values as strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TripleJson {
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
    pub tau: BTreeMap<String, String>,
}

impl AdmissibleTriple {
    pub fn to_json(&self) -> TripleJson {
        TripleJson {
            gamma1: self.gamma1.iter().map(|i| i + 1).collect(),
            gamma2: self.gamma2.iter().map(|i| i + 1).collect(),
            tau: self.tau.iter().map(|(a, b)| ((a + 1).to_string(), (b + 1).to_string())).collect(),
        }
    }

    pub fn from_json(rs: &RootSystem, j: &TripleJson) -> Result<Self> {
        let mut tau = BTreeMap::new();
        for (a, b) in &j.tau {
            let parse = |s: &str| -> Result<usize> {
                let v: usize = s.trim().parse().map_err(|_| Error::Parse(format!("bad index {s:?}")))?;
                v.checked_sub(1).ok_or_else(|| Error::Parse("indices are 1-based".into()))
            };
            tau.insert(parse(a)?, parse(b)?);
        }
        let t = AdmissibleTriple::new(rs, tau)?;
        let g1: Vec<usize> = j.gamma1.iter().map(|i| i.wrapping_sub(1)).collect();
        let mut g2: Vec<usize> = j.gamma2.iter().map(|i| i.wrapping_sub(1)).collect();
        g2.sort();
        let mut g1s = g1.clone();
        g1s.sort();
        if g1s != t.gamma1 || g2 != t.gamma2 {
            return Err(Error::Invalid("gamma1/gamma2 disagree with tau".into()));
        }
        Ok(t)
    }
}

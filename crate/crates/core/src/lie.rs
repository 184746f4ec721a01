//! Lie algebras given by rational structure constants, their subalgebras, and
//! the quotient data `g/h` used by the relative complexes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::LieError;
use crate::linalg::{
    axpy, format_rational, int, is_zero_vector, kernel_basis, rank, unit_vector, zero_vector, Rational,
    RationalMatrix, RationalVector, Subspace,
};
use crate::poly;
use crate::report::ValidationReport;

/// Structure constants: `[X_i, X_j]` for `i < j`, in basis coordinates.
pub type Brackets = BTreeMap<(usize, usize), RationalVector>;

/// `[e_i, e_j] = Σ c e_k` written as `(i, j, [(k, c)])`.
pub type IntBracket<'a> = (usize, usize, &'a [(usize, i64)]);

/// A finite-dimensional Lie algebra over Q. The Jacobi identity is checked
/// on construction, so every value of this type is a genuine Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    names: Vec<String>,
    brackets: Brackets,
    /// `ad[i]` is the matrix of `X -> [X_i, X]`.
    ad: Vec<RationalMatrix>,
}

fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn raw_bracket(dim: usize, brackets: &Brackets, i: usize, j: usize) -> RationalVector {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Equal => zero_vector(dim),
        Less => brackets.get(&(i, j)).cloned().unwrap_or_else(|| zero_vector(dim)),
        Greater => brackets.get(&(j, i)).map(|v| v.iter().map(|x| -x.clone()).collect()).unwrap_or_else(|| zero_vector(dim)),
    }
}

fn raw_bracket_vectors(dim: usize, brackets: &Brackets, x: &[Rational], y: &[Rational]) -> RationalVector {
    let mut out = zero_vector(dim);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() || i == j {
                continue;
            }
            axpy(&mut out, &(xi * yj), &raw_bracket(dim, brackets, i, j));
        }
    }
    out
}

/// Checks the Jacobi identity on every basis triple `i < j < k`.
pub fn verify_jacobi(dim: usize, brackets: &Brackets) -> ValidationReport {
    let mut report = ValidationReport::new("jacobi");
    let e = |i| unit_vector(dim, i);
    let br = |x: &[Rational], y: &[Rational]| raw_bracket_vectors(dim, brackets, x, y);
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let mut s = br(&br(&e(i), &e(j)), &e(k));
                let t = br(&br(&e(j), &e(k)), &e(i));
                let u = br(&br(&e(k), &e(i)), &e(j));
                for (a, (b, c)) in s.iter_mut().zip(t.iter().zip(&u)) {
                    *a += b + c;
                }
                report.record(is_zero_vector(&s), || format!("triple ({i},{j},{k})"), || format_vector(&s));
            }
        }
    }
    report
}

impl LieAlgebra {
    /// Builds an algebra from structure constants, rejecting bad keys and
    /// Jacobi violations. Zero bracket vectors are dropped.
    pub fn new(names: Vec<String>, brackets: Brackets) -> Result<Self, LieError> {
        let dim = names.len();
        let mut clean = Brackets::new();
        for ((i, j), v) in brackets {
            if i >= j || j >= dim {
                return Err(LieError::BadBracketKey(i, j));
            }
            if v.len() != dim {
                return Err(crate::error::LinalgError::DimensionMismatch { expected: dim, found: v.len() }.into());
            }
            if !is_zero_vector(&v) {
                clean.insert((i, j), v);
            }
        }
        let report = verify_jacobi(dim, &clean);
        if !report.passed() {
            return Err(LieError::Jacobi(report));
        }
        let ad = (0..dim)
            .map(|i| {
                let cols: Vec<RationalVector> = (0..dim).map(|j| raw_bracket(dim, &clean, i, j)).collect();
                RationalMatrix::from_columns(&cols, dim)
            })
            .collect();
        Ok(LieAlgebra { names, brackets: clean, ad })
    }

    /// Convenience: names and integer brackets `(i, j, [(k, c)])`.
    pub fn from_int_brackets(names: &[&str], table: &[IntBracket<'_>]) -> Result<Self, LieError> {
        let dim = names.len();
        let mut b = Brackets::new();
        for &(i, j, terms) in table {
            let mut v = zero_vector(dim);
            for &(k, c) in terms {
                v[k] += int(c);
            }
            b.insert((i, j), v);
        }
        Self::new(names.iter().map(|s| s.to_string()).collect(), b)
    }

    pub fn abelian(n: usize) -> Self {
        Self::new((0..n).map(|i| format!("X{i}")).collect(), Brackets::new()).expect("abelian algebra")
    }

    /// Basis X, Y, Z with `[X, Y] = Z`.
    pub fn heisenberg3() -> Self {
        Self::from_int_brackets(&["X", "Y", "Z"], &[(0, 1, &[(2, 1)])]).expect("heisenberg")
    }

    /// Basis H, E, F with `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H`.
    pub fn sl2() -> Self {
        Self::from_int_brackets(&["H", "E", "F"], &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])])
            .expect("sl2")
    }

    /// Basis L1, L2, L3 with `[L1,L2] = L3` and cyclic.
    pub fn so3() -> Self {
        Self::from_int_brackets(&["L1", "L2", "L3"], &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (0, 2, &[(1, -1)])])
            .expect("so3")
    }

    /// sl2 with an extra central element C (basis H, E, F, C).
    pub fn gl2() -> Self {
        Self::from_int_brackets(&["H", "E", "F", "C"], &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])])
            .expect("gl2")
    }

    /// The model filiform algebra: `[e_1, e_i] = e_{i+1}` for `2 <= i < n`.
    pub fn filiform(n: usize) -> Result<Self, LieError> {
        if n < 3 {
            return Err(LieError::UnknownPreset(format!("filiform:{n}")));
        }
        let mut b = Brackets::new();
        for i in 1..n - 1 {
            b.insert((0, i), unit_vector(n, i + 1));
        }
        Self::new((1..=n).map(|i| format!("e{i}")).collect(), b)
    }

    /// Named presets: `abelian:n`, `heisenberg3`, `sl2`, `so3`, `gl2`, `filiform:n`.
    pub fn preset(name: &str) -> Result<Self, LieError> {
        let unknown = || LieError::UnknownPreset(name.to_string());
        if let Some(n) = name.strip_prefix("abelian:") {
            let n: usize = n.parse().map_err(|_| unknown())?;
            return Ok(Self::abelian(n));
        }
        if let Some(n) = name.strip_prefix("filiform:") {
            let n: usize = n.parse().map_err(|_| unknown())?;
            return Self::filiform(n);
        }
        match name {
            "heisenberg3" => Ok(Self::heisenberg3()),
            "sl2" => Ok(Self::sl2()),
            "so3" => Ok(Self::so3()),
            "gl2" => Ok(Self::gl2()),
            _ => Err(unknown()),
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn brackets(&self) -> &Brackets {
        &self.brackets
    }

    /// `[X_i, X_j]` in coordinates, for any basis indices.
    pub fn basis_bracket(&self, i: usize, j: usize) -> RationalVector {
        raw_bracket(self.dim(), &self.brackets, i, j)
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<RationalVector, LieError> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(crate::error::LinalgError::DimensionMismatch { expected: n, found: v.len() }.into());
            }
        }
        Ok(self.ad_of(x).mul_vec(y))
    }

    /// Matrix of `ad_{X_i}`.
    pub fn ad(&self, i: usize) -> &RationalMatrix {
        &self.ad[i]
    }

    /// Matrix of `ad_x` for an arbitrary element.
    pub fn ad_of(&self, x: &[Rational]) -> RationalMatrix {
        let n = self.dim();
        let mut m = RationalMatrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = m.add(&self.ad[i].scale(xi));
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// The same algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &RationalMatrix) -> Result<Self, LieError> {
        let n = self.dim();
        let inv = p.inverse().ok_or(crate::error::LinalgError::Dependent)?;
        let cols: Vec<RationalVector> = (0..n).map(|i| p.column(i)).collect();
        let mut b = Brackets::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = inv.mul_vec(&self.bracket(&cols[i], &cols[j])?);
                b.insert((i, j), v);
            }
        }
        Self::new((0..n).map(|i| format!("b{i}")).collect(), b)
    }

    /// Relabels the basis: new basis element `k` is old element `perm[k]`.
    pub fn permute_basis(&self, perm: &[usize]) -> Result<Self, LieError> {
        let n = self.dim();
        assert_eq!(perm.len(), n);
        let mut inv = vec![0; n];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let mut b = Brackets::new();
        for a in 0..n {
            for c in a + 1..n {
                let old = self.basis_bracket(perm[a], perm[c]);
                let mut v = zero_vector(n);
                for (k, x) in old.into_iter().enumerate() {
                    v[inv[k]] = x;
                }
                b.insert((a, c), v);
            }
        }
        Self::new(perm.iter().map(|&p| self.names[p].clone()).collect(), b)
    }

    /// Killing form `tr(ad_a ad_b)` on the basis.
    pub fn killing_matrix(&self) -> RationalMatrix {
        let n = self.dim();
        let mut k = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                k.set(i, j, self.ad[i].mul(&self.ad[j]).trace());
            }
        }
        k
    }

    /// Center, as a subspace of coordinates.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // x is central iff [x, X_j] = -ad_j x = 0 for all j.
        let mut stacked = RationalMatrix::zeros(0, n);
        for a in &self.ad {
            stacked = stacked.vstack(a);
        }
        Subspace::new(n, kernel_basis(&stacked)).expect("kernel basis is independent")
    }

    /// Derived algebra `[g, g]`.
    pub fn derived(&self) -> Subspace {
        let vecs: Vec<RationalVector> = self.brackets.values().cloned().collect();
        Subspace::span(self.dim(), &vecs)
    }
}

/// A subalgebra `h` of a parent algebra, as an arbitrary (not necessarily
/// coordinate) subspace closed under the bracket.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    parent: Arc<LieAlgebra>,
    basis: Subspace,
    intrinsic: Arc<LieAlgebra>,
}

impl Subalgebra {
    pub fn new(parent: Arc<LieAlgebra>, vectors: Vec<RationalVector>) -> Result<Self, LieError> {
        let basis = Subspace::new(parent.dim(), vectors)?;
        let k = basis.dim();
        let mut report = ValidationReport::new("subalgebra-closure");
        let mut b = Brackets::new();
        for i in 0..k {
            for j in i + 1..k {
                let v = parent.bracket(&basis.basis()[i], &basis.basis()[j])?;
                match basis.coordinates(&v) {
                    Some(c) => {
                        report.record(true, String::new, String::new);
                        b.insert((i, j), c);
                    }
                    None => report.fail(format!("basis pair ({i},{j})"), format_vector(&v)),
                }
            }
        }
        if !report.passed() {
            return Err(LieError::NotClosed(report));
        }
        let names = (0..k).map(|i| format!("Y{i}")).collect();
        let intrinsic = Arc::new(LieAlgebra::new(names, b)?);
        Ok(Subalgebra { parent, basis, intrinsic })
    }

    pub fn zero(parent: Arc<LieAlgebra>) -> Self {
        Self::new(parent, Vec::new()).expect("zero subalgebra")
    }

    pub fn full(parent: Arc<LieAlgebra>) -> Self {
        let n = parent.dim();
        Self::new(parent, (0..n).map(|i| unit_vector(n, i)).collect()).expect("whole algebra")
    }

    /// Span of the given basis indices.
    pub fn from_indices(parent: Arc<LieAlgebra>, indices: &[usize]) -> Result<Self, LieError> {
        let n = parent.dim();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(crate::error::LinalgError::DimensionMismatch { expected: n, found: bad }.into());
        }
        Self::new(parent, indices.iter().map(|&i| unit_vector(n, i)).collect())
    }

    pub fn parent(&self) -> &Arc<LieAlgebra> {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.basis
    }

    pub fn basis(&self) -> &[RationalVector] {
        self.basis.basis()
    }

    /// The subalgebra as a Lie algebra in its own basis `Y_0, Y_1, ...`.
    pub fn as_lie_algebra(&self) -> &Arc<LieAlgebra> {
        &self.intrinsic
    }

    /// Parent coordinates of the element with the given subalgebra coordinates.
    pub fn element(&self, coords: &[Rational]) -> RationalVector {
        self.basis.combine(coords)
    }

    /// Reductivity in the sense "semisimple plus abelian": `h = z(h) + [h,h]`
    /// as a direct sum and the Killing form of `[h,h]` is nondegenerate.
    pub fn is_reductive(&self) -> ReductivityCertificate {
        let h = self.as_lie_algebra();
        let z = h.center();
        let d = h.derived();
        let direct = z.dim() + d.dim() == h.dim() && z.sum(&d).dim() == h.dim();
        let derived_alg = Subalgebra::new(h.clone(), d.basis().to_vec()).expect("derived algebra is an ideal");
        let killing = derived_alg.as_lie_algebra().killing_matrix();
        let killing_rank = rank(&killing);
        let semisimple_part = killing_rank == d.dim();
        ReductivityCertificate {
            reductive: direct && semisimple_part,
            center: z.basis().iter().map(|c| self.element(c)).collect(),
            derived: d.basis().iter().map(|c| self.element(c)).collect(),
            killing_rank,
            derived_dim: d.dim(),
        }
    }

    /// Whether `ad h` acts semisimply on the parent. For reductive `h` this is
    /// the classical "reductive in g" condition; it is reported for
    /// information and never gates a computation.
    pub fn acts_semisimply_on_parent(&self) -> bool {
        let cert = self.is_reductive();
        cert.reductive && cert.center.iter().all(|c| poly::is_semisimple(&self.parent.ad_of(c)))
    }
}

/// Evidence produced by [`Subalgebra::is_reductive`], in parent coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductivityCertificate {
    pub reductive: bool,
    pub center: Vec<RationalVector>,
    pub derived: Vec<RationalVector>,
    pub killing_rank: usize,
    pub derived_dim: usize,
}

/// Concrete realisation of `g/h`: a complement spanned by standard basis
/// vectors, the projection onto it, and the induced action of `h`.
#[derive(Clone, Debug)]
pub struct QuotientData {
    complement: Vec<usize>,
    project: RationalMatrix,
    h_action: Vec<RationalMatrix>,
}

impl QuotientData {
    pub fn new(h: &Subalgebra) -> Self {
        let g = h.parent();
        let n = g.dim();
        let complement = h.subspace().complement_indices();
        let p = h.dim();
        let mut cols: Vec<RationalVector> = h.basis().to_vec();
        cols.extend(complement.iter().map(|&i| unit_vector(n, i)));
        let inv = RationalMatrix::from_columns(&cols, n).inverse().expect("h plus complement spans g");
        let rows: Vec<RationalVector> = (p..n).map(|r| inv.row(r)).collect();
        let project = RationalMatrix::from_rows(rows, n);
        let h_action = h
            .basis()
            .iter()
            .map(|y| {
                let ad = g.ad_of(y);
                let cols: Vec<RationalVector> =
                    complement.iter().map(|&c| project.mul_vec(&ad.column(c))).collect();
                RationalMatrix::from_columns(&cols, n - p)
            })
            .collect();
        QuotientData { complement, project, h_action }
    }

    /// `dim g/h`.
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Indices of the standard basis vectors of `g` spanning the complement.
    pub fn complement_indices(&self) -> &[usize] {
        &self.complement
    }

    /// Matrix of `g -> g/h` in complement coordinates.
    pub fn project(&self) -> &RationalMatrix {
        &self.project
    }

    /// Matrix of `X̄ -> [Y, X]‾` on `g/h`, for the `k`-th basis vector `Y` of `h`.
    pub fn h_action(&self, k: usize) -> &RationalMatrix {
        &self.h_action[k]
    }

    pub fn h_actions(&self) -> &[RationalMatrix] {
        &self.h_action
    }

    /// The standard lift of the `j`-th quotient basis vector.
    pub fn lift(&self, j: usize, g_dim: usize) -> RationalVector {
        unit_vector(g_dim, self.complement[j])
    }
}

/// Shorthand used throughout the tests: `1` at every listed coordinate times the sign.
pub fn signed_sum(n: usize, terms: &[(usize, i64)]) -> RationalVector {
    let mut v = zero_vector(n);
    for &(i, c) in terms {
        v[i] += int(c);
    }
    v
}

impl LieAlgebra {
    /// True when `x` is the zero vector of this algebra.
    pub fn is_zero_element(&self, x: &[Rational]) -> bool {
        x.len() == self.dim() && x.iter().all(Zero::is_zero)
    }

    /// `1` in coordinate `i`.
    pub fn basis_element(&self, i: usize) -> RationalVector {
        let mut v = zero_vector(self.dim());
        v[i] = Rational::one();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_examples() {
        let h = LieAlgebra::heisenberg3();
        assert_eq!(h.bracket(&h.basis_element(0), &h.basis_element(1)).unwrap(), h.basis_element(2));
        let v = signed_sum(3, &[(0, 2), (1, -3), (2, 5)]);
        assert!(h.is_zero_element(&h.bracket(&v, &v).unwrap()));
        let s = LieAlgebra::sl2();
        assert_eq!(s.bracket(&s.basis_element(0), &s.basis_element(1)).unwrap(), signed_sum(3, &[(1, 2)]));
        assert!(s.bracket(&[int(1)], &[int(1)]).is_err());
    }

    #[test]
    fn jacobi_examples() {
        assert!(LieAlgebra::heisenberg3().brackets().len() == 1);
        assert!(verify_jacobi(4, &Brackets::new()).passed());
        let mut b = Brackets::new();
        b.insert((0, 1), signed_sum(3, &[(2, 1)]));
        b.insert((0, 2), signed_sum(3, &[(2, 1)]));
        b.insert((1, 2), signed_sum(3, &[(0, 1)]));
        let report = verify_jacobi(3, &b);
        assert!(!report.passed());
        assert_eq!(report.failures[0].location, "triple (0,1,2)");
        assert_eq!(report.failures[0].residual, "(1, 0, 0)");
        assert!(matches!(LieAlgebra::new(vec!["a".into(), "b".into(), "c".into()], b), Err(LieError::Jacobi(_))));
    }

    #[test]
    fn all_presets_construct() {
        for name in ["abelian:3", "heisenberg3", "sl2", "so3", "gl2", "filiform:4", "filiform:6"] {
            LieAlgebra::preset(name).unwrap();
        }
        assert!(LieAlgebra::preset("e8").is_err());
        assert!(LieAlgebra::preset("filiform:2").is_err());
    }

    #[test]
    fn reductivity_examples() {
        let h3 = Arc::new(LieAlgebra::heisenberg3());
        let abelian = Subalgebra::from_indices(h3.clone(), &[0, 2]).unwrap();
        assert!(abelian.is_reductive().reductive);

        let sl2 = Arc::new(LieAlgebra::sl2());
        let full = Subalgebra::full(sl2.clone());
        let cert = full.is_reductive();
        assert!(cert.reductive);
        assert_eq!(cert.killing_rank, 3);
        // Killing form of sl2 in (H, E, F): diag block [[8,0,0],[0,0,4],[0,4,0]]
        assert_eq!(sl2.killing_matrix(), RationalMatrix::from_i64(&[&[8, 0, 0], &[0, 0, 4], &[0, 4, 0]]));

        let borel = LieAlgebra::from_int_brackets(&["A", "B"], &[(0, 1, &[(1, 1)])]).unwrap();
        let cert = Subalgebra::full(Arc::new(borel)).is_reductive();
        assert!(!cert.reductive);
        assert!(cert.center.is_empty());
        assert_eq!(cert.derived, vec![signed_sum(2, &[(1, 1)])]);
    }

    #[test]
    fn not_closed_rejected() {
        let sl2 = Arc::new(LieAlgebra::sl2());
        assert!(matches!(Subalgebra::from_indices(sl2, &[1, 2]), Err(LieError::NotClosed(_))));
    }

    #[test]
    fn quotient_examples() {
        let h3 = Arc::new(LieAlgebra::heisenberg3());
        let q = QuotientData::new(&Subalgebra::zero(h3.clone()));
        assert_eq!(q.project(), &RationalMatrix::identity(3));
        assert!(q.h_actions().is_empty());

        let q = QuotientData::new(&Subalgebra::from_indices(h3, &[2]).unwrap());
        assert_eq!(q.dim(), 2);
        assert!(q.h_action(0).is_zero());

        let sl2 = Arc::new(LieAlgebra::sl2());
        let compact = Subalgebra::new(sl2, vec![signed_sum(3, &[(1, 1), (2, -1)])]).unwrap();
        let q = QuotientData::new(&compact);
        assert_eq!(q.complement_indices(), &[0, 1]);
        // [E-F, H] = -2E - 2F ≡ -4E and [E-F, E] = H (mod E-F)
        assert_eq!(q.h_action(0), &RationalMatrix::from_i64(&[&[0, 1], &[-4, 0]]));
        assert!(q.h_action(0).inverse().is_some());
    }

    #[test]
    fn reductive_in_parent_is_informational() {
        // span(X) in heisenberg is abelian, hence reductive, but ad X is nilpotent on g.
        let h3 = Arc::new(LieAlgebra::heisenberg3());
        let x = Subalgebra::from_indices(h3, &[0]).unwrap();
        assert!(x.is_reductive().reductive);
        assert!(!x.acts_semisimply_on_parent());
        let sl2 = Arc::new(LieAlgebra::sl2());
        let compact = Subalgebra::new(sl2, vec![signed_sum(3, &[(1, 1), (2, -1)])]).unwrap();
        assert!(compact.acts_semisimply_on_parent());
    }
}

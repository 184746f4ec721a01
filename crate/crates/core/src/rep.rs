//! Finite-dimensional modules over a Lie algebra, given by action matrices.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::LieError;
use crate::lie::{LieAlgebra, Subalgebra};
use crate::linalg::{int, kernel_basis, Rational, RationalMatrix, RationalVector, Subspace};
use crate::report::ValidationReport;

/// A module `E`: one matrix `ρ(X_i)` per basis element of the algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct GModule {
    algebra: Arc<LieAlgebra>,
    dim: usize,
    action: Vec<RationalMatrix>,
}

fn check_shapes(algebra: &LieAlgebra, action: &[RationalMatrix]) -> Result<usize, LieError> {
    if action.len() != algebra.dim() {
        return Err(LieError::ActionCount { expected: algebra.dim(), found: action.len() });
    }
    let dim = action.first().map(|m| m.rows()).unwrap_or(0);
    for (index, m) in action.iter().enumerate() {
        if m.rows() != dim || m.cols() != dim {
            return Err(LieError::ActionShape { index, rows: m.rows(), cols: m.cols(), dim });
        }
    }
    Ok(dim)
}

fn combination(action: &[RationalMatrix], dim: usize, x: &[Rational]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(dim, dim);
    for (xi, a) in x.iter().zip(action) {
        if !xi.is_zero() {
            m = m.add(&a.scale(xi));
        }
    }
    m
}

/// Checks `ρ([X_i,X_j]) = ρ(X_i)ρ(X_j) − ρ(X_j)ρ(X_i)` for every `i < j`.
/// Shapes must already agree with the algebra.
pub fn verify_representation(algebra: &LieAlgebra, action: &[RationalMatrix]) -> ValidationReport {
    let mut report = ValidationReport::new("representation");
    let dim = action.first().map(|m| m.rows()).unwrap_or(0);
    let n = algebra.dim();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = combination(action, dim, &algebra.basis_bracket(i, j));
            let rhs = action[i].mul(&action[j]).sub(&action[j].mul(&action[i]));
            let residual = lhs.sub(&rhs);
            report.record(residual.is_zero(), || format!("pair ({i},{j})"), || format!("{residual:?}"));
        }
    }
    report
}

impl GModule {
    /// Validates shapes and the representation law.
    pub fn new(algebra: Arc<LieAlgebra>, action: Vec<RationalMatrix>) -> Result<Self, LieError> {
        let dim = check_shapes(&algebra, &action)?;
        let report = verify_representation(&algebra, &action);
        if !report.passed() {
            return Err(LieError::Representation(report));
        }
        Ok(GModule { algebra, dim, action })
    }

    /// A module of dimension `dim` over an algebra of dimension 0 needs the
    /// dimension explicitly, since there are no matrices to read it from.
    pub fn with_dim(algebra: Arc<LieAlgebra>, dim: usize, action: Vec<RationalMatrix>) -> Result<Self, LieError> {
        if action.is_empty() && algebra.dim() == 0 {
            return Ok(GModule { algebra, dim, action });
        }
        let m = Self::new(algebra, action)?;
        if m.dim != dim {
            return Err(LieError::ActionShape { index: 0, rows: m.dim, cols: m.dim, dim });
        }
        Ok(m)
    }

    pub fn trivial(algebra: Arc<LieAlgebra>, d: usize) -> Self {
        let action = vec![RationalMatrix::zeros(d, d); algebra.dim()];
        GModule { algebra, dim: d, action }
    }

    pub fn adjoint(algebra: Arc<LieAlgebra>) -> Self {
        let action = (0..algebra.dim()).map(|i| algebra.ad(i).clone()).collect();
        GModule { dim: algebra.dim(), algebra, action }
    }

    /// The defining representation of sl2, so3 (as rotations, equal to the
    /// adjoint) and gl2. Other algebras have no natural preset.
    pub fn natural(algebra: Arc<LieAlgebra>) -> Result<Self, LieError> {
        let names: Vec<&str> = algebra.names().iter().map(String::as_str).collect();
        let h = RationalMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        let e = RationalMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        let f = RationalMatrix::from_i64(&[&[0, 0], &[1, 0]]);
        match names.as_slice() {
            ["H", "E", "F"] => Self::new(algebra, vec![h, e, f]),
            ["H", "E", "F", "C"] => Self::new(algebra, vec![h, e, f, RationalMatrix::identity(2)]),
            ["L1", "L2", "L3"] => Ok(Self::adjoint(algebra)),
            _ => Err(LieError::UnknownPreset("natural".into())),
        }
    }

    /// The irreducible `(k+1)`-dimensional sl2-module `Sym^k` in the weight
    /// basis `v_0, …, v_k`: `H v_i = (k−2i) v_i`, `F v_i = v_{i+1}`,
    /// `E v_i = i(k−i+1) v_{i−1}`. Over gl2 the center acts by `k`.
    pub fn symmetric_power(algebra: Arc<LieAlgebra>, k: usize) -> Result<Self, LieError> {
        let d = k + 1;
        let mut h = RationalMatrix::zeros(d, d);
        let mut e = RationalMatrix::zeros(d, d);
        let mut f = RationalMatrix::zeros(d, d);
        let k = k as i64;
        for i in 0..d {
            let ii = i as i64;
            h.set(i, i, int(k - 2 * ii));
            if i + 1 < d {
                f.set(i + 1, i, int(1));
            }
            if i > 0 {
                e.set(i - 1, i, int(ii * (k - ii + 1)));
            }
        }
        let names: Vec<&str> = algebra.names().iter().map(String::as_str).collect();
        match names.as_slice() {
            ["H", "E", "F"] => Self::new(algebra, vec![h, e, f]),
            ["H", "E", "F", "C"] => {
                let c = RationalMatrix::identity(d).scale(&int(k));
                Self::new(algebra, vec![h, e, f, c])
            }
            _ => Err(LieError::UnknownPreset(format!("sym:{k}"))),
        }
    }

    /// Module presets: `trivial:d`, `adjoint`, `natural`, `sym:k`.
    pub fn preset(algebra: Arc<LieAlgebra>, name: &str) -> Result<Self, LieError> {
        let unknown = || LieError::UnknownPreset(name.to_string());
        if let Some(d) = name.strip_prefix("trivial:") {
            return Ok(Self::trivial(algebra, d.parse().map_err(|_| unknown())?));
        }
        if let Some(k) = name.strip_prefix("sym:") {
            return Self::symmetric_power(algebra, k.parse().map_err(|_| unknown())?);
        }
        match name {
            "trivial" => Ok(Self::trivial(algebra, 1)),
            "adjoint" => Ok(Self::adjoint(algebra)),
            "natural" => Self::natural(algebra),
            _ => Err(unknown()),
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[RationalMatrix] {
        &self.action
    }

    /// `ρ(X_i)`.
    pub fn matrix(&self, i: usize) -> &RationalMatrix {
        &self.action[i]
    }

    /// `ρ(x)` for an arbitrary element.
    pub fn action_of(&self, x: &[Rational]) -> RationalMatrix {
        combination(&self.action, self.dim, x)
    }

    /// `E^S = ∩ ker ρ(Y)` over the given elements (parent coordinates).
    fn common_kernel(&self, elements: &[RationalVector]) -> Subspace {
        let mut stacked = RationalMatrix::zeros(0, self.dim);
        for y in elements {
            stacked = stacked.vstack(&self.action_of(y));
        }
        Subspace::new(self.dim, kernel_basis(&stacked)).expect("kernel basis is independent")
    }

    /// `E^g`.
    pub fn invariants(&self) -> Subspace {
        let n = self.algebra.dim();
        let basis: Vec<RationalVector> = (0..n).map(|i| self.algebra.basis_element(i)).collect();
        self.common_kernel(&basis)
    }

    /// `E^h` for a subalgebra of this module's algebra.
    pub fn invariants_under(&self, h: &Subalgebra) -> Result<Subspace, LieError> {
        if h.parent().as_ref() != self.algebra.as_ref() {
            return Err(LieError::AlgebraMismatch);
        }
        Ok(self.common_kernel(h.basis()))
    }

    /// The same space viewed as a module over `h` (in the basis of
    /// [`Subalgebra::as_lie_algebra`]).
    pub fn restrict(&self, h: &Subalgebra) -> Result<GModule, LieError> {
        if h.parent().as_ref() != self.algebra.as_ref() {
            return Err(LieError::AlgebraMismatch);
        }
        let action = h.basis().iter().map(|y| self.action_of(y)).collect();
        Ok(GModule { algebra: h.as_lie_algebra().clone(), dim: self.dim, action })
    }

    /// Conjugates every action matrix: `ρ' = P^{-1} ρ P`.
    pub fn change_basis(&self, p: &RationalMatrix) -> Result<GModule, LieError> {
        let inv = p.inverse().ok_or(crate::error::LinalgError::Dependent)?;
        let action = self.action.iter().map(|a| inv.mul(a).mul(p)).collect();
        Ok(GModule { algebra: self.algebra.clone(), dim: self.dim, action })
    }

    /// The module over `LieAlgebra::change_basis(p)`: the new `i`-th basis
    /// element acts by `ρ(p e_i)`.
    pub fn transport(&self, algebra: Arc<LieAlgebra>, p: &RationalMatrix) -> Result<GModule, LieError> {
        let action = (0..p.cols()).map(|i| self.action_of(&p.column(i))).collect();
        GModule::with_dim(algebra, self.dim, action)
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule, LieError> {
        if self.algebra.as_ref() != other.algebra.as_ref() {
            return Err(LieError::AlgebraMismatch);
        }
        let d = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut m = RationalMatrix::zeros(d, d);
                for (r, c, x) in a.entries() {
                    m.set(r, c, x.clone());
                }
                for (r, c, x) in b.entries() {
                    m.set(self.dim + r, self.dim + c, x.clone());
                }
                m
            })
            .collect();
        Ok(GModule { algebra: self.algebra.clone(), dim: d, action })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representation_examples() {
        let sl2 = Arc::new(LieAlgebra::sl2());
        let triv = GModule::trivial(sl2.clone(), 2);
        assert!(verify_representation(&sl2, triv.action()).passed());
        let h3 = Arc::new(LieAlgebra::heisenberg3());
        let ad = GModule::adjoint(h3.clone());
        assert!(verify_representation(&h3, ad.action()).passed());
        let nat = GModule::natural(sl2.clone()).unwrap();
        let swapped = vec![nat.matrix(0).clone(), nat.matrix(2).clone(), nat.matrix(1).clone()];
        let report = verify_representation(&sl2, &swapped);
        assert!(!report.passed());
        assert!(matches!(GModule::new(sl2, swapped), Err(LieError::Representation(_))));
    }

    #[test]
    fn adjoint_examples() {
        let h3 = Arc::new(LieAlgebra::heisenberg3());
        let ad = GModule::adjoint(h3);
        assert_eq!(ad.matrix(0).nnz(), 1);
        assert_eq!(ad.matrix(0).get(2, 1), int(1));
        let sl2 = Arc::new(LieAlgebra::sl2());
        let ad = GModule::adjoint(sl2);
        assert_eq!(ad.matrix(0), &RationalMatrix::from_i64(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, -2]]));
        let ab = Arc::new(LieAlgebra::abelian(3));
        assert!(GModule::adjoint(ab).action().iter().all(RationalMatrix::is_zero));
    }

    #[test]
    fn invariants_examples() {
        let h3 = Arc::new(LieAlgebra::heisenberg3());
        assert_eq!(GModule::trivial(h3.clone(), 3).invariants().dim(), 3);
        let inv = GModule::adjoint(h3).invariants();
        assert_eq!(inv.basis(), &[vec![int(0), int(0), int(1)]]);
        let sl2 = Arc::new(LieAlgebra::sl2());
        assert_eq!(GModule::natural(sl2).unwrap().invariants().dim(), 0);
    }

    #[test]
    fn restrict_examples() {
        let sl2 = Arc::new(LieAlgebra::sl2());
        let ad = GModule::adjoint(sl2.clone());
        let cartan = Subalgebra::from_indices(sl2.clone(), &[0]).unwrap();
        let r = ad.restrict(&cartan).unwrap();
        assert_eq!(r.action(), &[RationalMatrix::from_i64(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, -2]])]);
        let zero = ad.restrict(&Subalgebra::zero(sl2.clone())).unwrap();
        assert!(zero.action().is_empty());
        assert_eq!(zero.dim(), 3);
        let t = GModule::trivial(sl2, 2).restrict(&cartan).unwrap();
        assert!(t.action()[0].is_zero());
    }

    #[test]
    fn symmetric_powers_are_modules() {
        let sl2 = Arc::new(LieAlgebra::sl2());
        for k in 0..5 {
            let m = GModule::symmetric_power(sl2.clone(), k).unwrap();
            assert_eq!(m.invariants().dim(), usize::from(k == 0));
        }
        let gl2 = Arc::new(LieAlgebra::gl2());
        GModule::symmetric_power(gl2.clone(), 3).unwrap();
        GModule::natural(gl2).unwrap();
    }

    #[test]
    fn invariants_shrink_under_larger_algebras() {
        let sl2 = Arc::new(LieAlgebra::sl2());
        let ad = GModule::adjoint(sl2.clone());
        let cartan = Subalgebra::from_indices(sl2, &[0]).unwrap();
        let eh = ad.invariants_under(&cartan).unwrap();
        for v in ad.invariants().basis() {
            assert!(eh.contains(v));
        }
        assert_eq!(eh.dim(), 1);
    }
}

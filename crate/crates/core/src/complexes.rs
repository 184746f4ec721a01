//! Finite cochain complexes `0 -> E -> E^0 -> E^1 -> …` and explicit
//! contracting homotopies for the exact ones.
//!
//! `spaces[0]` is the augmented module `E` and `maps[0]` is `ε`; `maps[l]`
//! goes from `spaces[l]` to `spaces[l + 1]`. Maps missing at the end are zero.

use crate::error::ComplexError;
use crate::linalg::{kernel_basis, rank, solve, unit_vector, RationalMatrix, RationalVector, Subspace};
use crate::par::map_indexed;
use crate::report::ValidationReport;

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteComplex {
    spaces: Vec<usize>,
    maps: Vec<RationalMatrix>,
}

/// `maps[l] = s^l : spaces[l + 1] -> spaces[l]`, so `maps[0]` is `s^0 : E^0 -> E`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractingHomotopy {
    pub maps: Vec<RationalMatrix>,
}

/// Slot label: `E` for the augmentation slot, `E^k` afterwards.
fn slot(l: usize) -> String {
    if l == 0 {
        "E".into()
    } else {
        format!("E^{}", l - 1)
    }
}

impl FiniteComplex {
    /// Checks shapes only. Use [`FiniteComplex::new`] for a verified complex.
    pub fn unchecked(spaces: Vec<usize>, maps: Vec<RationalMatrix>) -> Result<Self, ComplexError> {
        if maps.len() > spaces.len().saturating_sub(1) && !(spaces.is_empty() && maps.is_empty()) {
            return Err(ComplexError::Shape(format!("{} maps for {} spaces", maps.len(), spaces.len())));
        }
        for (l, m) in maps.iter().enumerate() {
            if m.cols() != spaces[l] || m.rows() != spaces[l + 1] {
                return Err(ComplexError::Shape(format!(
                    "map {l} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    spaces[l + 1],
                    spaces[l]
                )));
            }
        }
        Ok(FiniteComplex { spaces, maps })
    }

    /// Shape check plus `d∘d = 0` everywhere.
    pub fn new(spaces: Vec<usize>, maps: Vec<RationalMatrix>) -> Result<Self, ComplexError> {
        let c = Self::unchecked(spaces, maps)?;
        let report = c.verify_complex();
        if !report.passed() {
            return Err(ComplexError::NotAComplex(report));
        }
        Ok(c)
    }

    pub fn spaces(&self) -> &[usize] {
        &self.spaces
    }

    pub fn maps(&self) -> &[RationalMatrix] {
        &self.maps
    }

    /// `maps[l]`, or the zero map when it is not stored.
    pub fn map(&self, l: usize) -> RationalMatrix {
        self.maps.get(l).cloned().unwrap_or_else(|| {
            let target = self.spaces.get(l + 1).copied().unwrap_or(0);
            RationalMatrix::zeros(target, self.spaces[l])
        })
    }

    /// Reports every composition `maps[l+1] ∘ maps[l]` that is not zero.
    pub fn verify_complex(&self) -> ValidationReport {
        let mut report = ValidationReport::new("complex");
        for l in 0..self.maps.len().saturating_sub(1) {
            let c = self.maps[l + 1].mul(&self.maps[l]);
            report.record(
                c.is_zero(),
                || format!("{} -> {} -> {}", slot(l), slot(l + 1), slot(l + 2)),
                || format!("{c:?}"),
            );
        }
        report
    }

    /// `dim ker(maps[l]) − rank(maps[l−1])` for every slot, augmentation first.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = map_indexed(self.spaces.len(), |l| rank(&self.map(l)));
        (0..self.spaces.len()).map(|l| self.spaces[l] - ranks[l] - if l > 0 { ranks[l - 1] } else { 0 }).collect()
    }

    /// Contracting homotopy of an exact complex, built from kernel
    /// splittings: with `K_l = ker d^l` and `C_l` its greedy coordinate
    /// complement, `d^l` maps `C_l` isomorphically onto `K_{l+1}`;
    /// `s^l` projects onto `K_{l+1}` along `C_{l+1}` and pulls back into `C_l`.
    pub fn build_contracting_homotopy(&self) -> Result<ContractingHomotopy, ComplexError> {
        let n = self.spaces.len();
        if n == 0 {
            return Ok(ContractingHomotopy { maps: Vec::new() });
        }
        let eps = self.map(0);
        if rank(&eps) != self.spaces[0] {
            return Err(ComplexError::NotInjectiveAugmentation);
        }
        let dims = self.homology_dims();
        if let Some(l) = (1..n).find(|&l| dims[l] != 0) {
            return Err(ComplexError::NotExact { degree: l - 1, dim: dims[l] });
        }
        struct Split {
            kernel: Vec<RationalVector>,
            complement: Vec<RationalVector>,
            projector: RationalMatrix,
        }
        let splits: Vec<Split> = map_indexed(n, |l| {
            let dim = self.spaces[l];
            let kernel = kernel_basis(&self.map(l));
            let sub = Subspace::new(dim, kernel.clone()).expect("kernel basis is independent");
            let complement: Vec<RationalVector> =
                sub.complement_indices().into_iter().map(|i| unit_vector(dim, i)).collect();
            let mut cols = kernel.clone();
            cols.extend(complement.iter().cloned());
            let inv = RationalMatrix::from_columns(&cols, dim).inverse().expect("kernel plus complement is a basis");
            let rows = (0..kernel.len()).map(|r| inv.row(r)).collect();
            Split { projector: RationalMatrix::from_rows(rows, dim), kernel, complement }
        });
        let maps = map_indexed(n - 1, |l| {
            let cb = RationalMatrix::from_columns(&splits[l].complement, self.spaces[l]);
            let dc = self.map(l).mul(&cb);
            let z_cols: Vec<RationalVector> = splits[l + 1]
                .kernel
                .iter()
                .map(|k| solve(&dc, k).expect("exactness puts the kernel inside the image"))
                .collect();
            let z = RationalMatrix::from_columns(&z_cols, cb.cols());
            cb.mul(&z).mul(&splits[l + 1].projector)
        });
        let s = ContractingHomotopy { maps };
        let report = self.verify_homotopy(&s);
        if !report.passed() {
            return Err(ComplexError::HomotopyCheck(report));
        }
        Ok(s)
    }

    /// Checks `s^0∘ε = id_E` and `s^{l+1}∘d^l + d^{l−1}∘s^l = id` in every degree.
    pub fn verify_homotopy(&self, s: &ContractingHomotopy) -> ValidationReport {
        let mut report = ValidationReport::new("contracting-homotopy");
        let n = self.spaces.len();
        for l in 0..n {
            let dim = self.spaces[l];
            let mut total = RationalMatrix::zeros(dim, dim);
            if let Some(up) = s.maps.get(l) {
                if up.rows() != dim || up.cols() != self.spaces.get(l + 1).copied().unwrap_or(0) {
                    report.fail(format!("s^{l} shape"), format!("{}x{}", up.rows(), up.cols()));
                    continue;
                }
                total = total.add(&up.mul(&self.map(l)));
            }
            if l > 0 {
                if let Some(down) = s.maps.get(l - 1) {
                    if down.rows() == self.spaces[l - 1] && down.cols() == dim {
                        total = total.add(&self.map(l - 1).mul(down));
                    }
                }
            }
            let residual = total.sub(&RationalMatrix::identity(dim));
            let location = if l == 0 { "degree 0 (s^0∘ε = id)".to_string() } else { format!("{} (s∘d + d∘s = id)", slot(l)) };
            report.record(residual.is_zero(), || location, || format!("{residual:?}"));
        }
        report
    }
}

/// Homology dimensions of two complexes, slot by slot.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionComparison {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub equal: bool,
}

/// Compares homology dimensions, padding the shorter list with zeros.
pub fn compare_resolutions(a: &FiniteComplex, b: &FiniteComplex) -> ResolutionComparison {
    let left = a.homology_dims();
    let right = b.homology_dims();
    let n = left.len().max(right.len());
    let equal = (0..n).all(|i| left.get(i).copied().unwrap_or(0) == right.get(i).copied().unwrap_or(0));
    ResolutionComparison { left, right, equal }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64(rows)
    }

    #[test]
    fn verify_examples() {
        let zero = FiniteComplex::new(vec![1, 2, 1], vec![RationalMatrix::zeros(2, 1), RationalMatrix::zeros(1, 2)]).unwrap();
        assert!(zero.verify_complex().passed());
        assert_eq!(zero.homology_dims(), vec![1, 2, 1]);
        let bad = FiniteComplex::unchecked(vec![1, 1, 1], vec![m(&[&[1]]), m(&[&[1]])]).unwrap();
        let r = bad.verify_complex();
        assert!(!r.passed());
        assert_eq!(r.failures[0].location, "E -> E^0 -> E^1");
        assert!(matches!(FiniteComplex::new(vec![1, 1, 1], vec![m(&[&[1]]), m(&[&[1]])]), Err(ComplexError::NotAComplex(_))));
        assert!(FiniteComplex::new(vec![1, 2], vec![m(&[&[1]])]).is_err());
    }

    #[test]
    fn identity_complex() {
        let c = FiniteComplex::new(vec![1, 1], vec![m(&[&[1]])]).unwrap();
        assert_eq!(c.homology_dims(), vec![0, 0]);
        let s = c.build_contracting_homotopy().unwrap();
        assert_eq!(s.maps, vec![m(&[&[1]])]);
    }

    #[test]
    fn hand_example() {
        let c = FiniteComplex::new(vec![1, 2, 1], vec![m(&[&[1], &[0]]), m(&[&[0, 1]])]).unwrap();
        let s = c.build_contracting_homotopy().unwrap();
        assert_eq!(s.maps, vec![m(&[&[1, 0]]), m(&[&[0], &[1]])]);
        assert!(c.verify_homotopy(&s).passed());
        let zero = ContractingHomotopy { maps: vec![RationalMatrix::zeros(1, 2), RationalMatrix::zeros(2, 1)] };
        let r = c.verify_homotopy(&zero);
        assert!(!r.passed());
        assert!(r.failures[0].location.starts_with("degree 0"));
    }

    #[test]
    fn non_exact_examples() {
        let zero = FiniteComplex::new(vec![0, 2, 1], vec![RationalMatrix::zeros(2, 0), RationalMatrix::zeros(1, 2)]).unwrap();
        assert_eq!(zero.build_contracting_homotopy(), Err(ComplexError::NotExact { degree: 0, dim: 2 }));
        let eps = FiniteComplex::new(vec![1, 1], vec![RationalMatrix::zeros(1, 1)]).unwrap();
        assert_eq!(eps.build_contracting_homotopy(), Err(ComplexError::NotInjectiveAugmentation));
        let empty = FiniteComplex::new(vec![], vec![]).unwrap();
        assert!(empty.build_contracting_homotopy().unwrap().maps.is_empty());
    }

    #[test]
    fn comparison() {
        let exact = FiniteComplex::new(vec![1, 1], vec![m(&[&[1]])]).unwrap();
        let zero = FiniteComplex::new(vec![1, 1], vec![RationalMatrix::zeros(1, 1)]).unwrap();
        assert!(compare_resolutions(&exact, &exact).equal);
        assert!(!compare_resolutions(&exact, &zero).equal);
    }
}

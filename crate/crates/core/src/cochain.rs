//! The inhomogeneous complex `Hom_h(∧^k g/h, E)` and its cohomology.
//!
//! Ambient coordinates on `Hom(∧^k g/h, E)` are pairs (multi-index, E-index)
//! in lexicographic order: coordinate `pos(I) * dim E + a` holds the `a`-th
//! component of `f(X̄_I)`. Cochain spaces store a basis of the equivariant
//! subspace in these coordinates, and cochains are passed around in the
//! coordinates of that basis.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::CochainError;
use crate::lie::{LieAlgebra, QuotientData, Subalgebra};
use crate::linalg::{
    image_basis, kernel_basis, rank, solve, zero_vector, Rational, RationalMatrix, RationalVector, Subspace,
};
use crate::par::map_indexed;
use crate::rep::GModule;

/// A strictly increasing tuple of positions in the basis of `g/h`.
pub type MultiIndex = Vec<usize>;

/// All `C(m, k)` increasing `k`-tuples below `m`, lexicographically.
pub fn exterior_basis(m: usize, k: usize) -> Vec<MultiIndex> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= m {
        rec(0, m, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Positions of the multi-indices of one degree.
#[derive(Clone, Debug)]
struct WedgeIndex {
    list: Vec<MultiIndex>,
    pos: HashMap<MultiIndex, usize>,
}

impl WedgeIndex {
    fn new(m: usize, k: usize) -> Self {
        let list = exterior_basis(m, k);
        let pos = list.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        WedgeIndex { list, pos }
    }
}

/// Sorts `tuple`, returning the permutation sign, or `None` on a repeat.
pub(crate) fn sort_with_sign(mut tuple: Vec<usize>) -> Option<(Vec<usize>, i64)> {
    let mut sign = 1;
    for i in 1..tuple.len() {
        let mut j = i;
        while j > 0 && tuple[j - 1] > tuple[j] {
            tuple.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && tuple[j - 1] == tuple[j] {
            return None;
        }
    }
    Some((tuple, sign))
}

fn sign(e: i64) -> Rational {
    Rational::from_integer(e.into())
}

/// Basis of `Hom_h(∧^k g/h, E)` inside the ambient coordinates.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub degree: usize,
    pub ambient_dim: usize,
    space: Subspace,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[RationalVector] {
        self.space.basis()
    }

    /// Coordinates of an ambient cochain, if it is equivariant.
    pub fn coordinates(&self, ambient: &[Rational]) -> Option<RationalVector> {
        self.space.coordinates(ambient)
    }

    /// Ambient cochain with the given coordinates.
    pub fn ambient(&self, coords: &[Rational]) -> RationalVector {
        self.space.combine(coords)
    }
}

/// Cohomology in one degree. Representatives are in cochain-space coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyResult {
    pub degree: usize,
    pub dim_cochains: usize,
    pub betti: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub representatives: Vec<RationalVector>,
}

/// Output of [`RelativeComplex::betti_numbers`] and its reduced twin.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyReport {
    pub results: Vec<CohomologyResult>,
    /// Set by the reduced variant: images are closed in finite dimension,
    /// so the reduced groups are the ordinary ones.
    pub reduced: bool,
    pub warnings: Vec<String>,
}

impl CohomologyReport {
    pub fn betti(&self) -> Vec<usize> {
        self.results.iter().map(|r| r.betti).collect()
    }

    /// Plain-text table of the per-degree numbers.
    pub fn table(&self) -> String {
        let mut s = String::new();
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        let _ = writeln!(s, "{:>6} {:>8} {:>8} {:>12} {:>6}", "degree", "cochains", "cocycles", "coboundaries", "betti");
        for r in &self.results {
            let _ = writeln!(
                s,
                "{:>6} {:>8} {:>8} {:>12} {:>6}",
                r.degree, r.dim_cochains, r.cocycle_dim, r.coboundary_dim, r.betti
            );
        }
        if self.reduced {
            let _ = writeln!(s, "reduced cohomology equals unreduced (images are closed in finite dimension)");
        }
        s
    }
}

/// Everything needed to evaluate the relative complex of `(g, h, E)`.
#[derive(Clone, Debug)]
pub struct RelativeComplex {
    h: Subalgebra,
    module: GModule,
    quotient: QuotientData,
    wedges: Vec<WedgeIndex>,
    spaces: Vec<CochainSpace>,
    warnings: Vec<String>,
}

impl RelativeComplex {
    /// Builds all cochain spaces, degree 0 through `dim g/h`.
    pub fn new(h: &Subalgebra, module: &GModule) -> Result<Self, CochainError> {
        if h.parent().as_ref() != module.algebra().as_ref() {
            return Err(crate::error::LieError::AlgebraMismatch.into());
        }
        let quotient = QuotientData::new(h);
        let m = quotient.dim();
        let wedges: Vec<WedgeIndex> = (0..=m).map(|k| WedgeIndex::new(m, k)).collect();
        let mut warnings = Vec::new();
        if !h.is_reductive().reductive {
            warnings.push("subalgebra is not reductive; the complex is still well defined".to_string());
        }
        let mut cx = RelativeComplex { h: h.clone(), module: module.clone(), quotient, wedges, spaces: Vec::new(), warnings };
        cx.spaces = map_indexed(m + 1, |k| cx.build_space(k));
        Ok(cx)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.h.parent()
    }

    pub fn subalgebra(&self) -> &Subalgebra {
        &self.h
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn quotient(&self) -> &QuotientData {
        &self.quotient
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `dim g/h`, the top degree.
    pub fn top_degree(&self) -> usize {
        self.quotient.dim()
    }

    /// Multi-indices of degree `k`, in coordinate order.
    pub fn wedge_basis(&self, k: usize) -> &[MultiIndex] {
        &self.wedges[k].list
    }

    /// Position of a multi-index within its degree.
    pub fn wedge_position(&self, tuple: &[usize]) -> Option<usize> {
        self.wedges.get(tuple.len())?.pos.get(tuple).copied()
    }

    pub fn ambient_dim(&self, k: usize) -> usize {
        self.wedges[k].list.len() * self.module.dim()
    }

    pub fn space(&self, k: usize) -> Result<&CochainSpace, CochainError> {
        self.spaces.get(k).ok_or(CochainError::DegreeTooLarge { degree: k, max: self.top_degree() })
    }

    /// Matrix of `f -> Y.f(…) − Σ_i f(…, [Y,X_i]‾, …)` on ambient degree-`k`
    /// cochains, for the `y`-th basis element of `h`.
    pub fn equivariance_operator(&self, k: usize, y: usize) -> RationalMatrix {
        let d = self.module.dim();
        let rho = self.module.action_of(&self.h.basis()[y]);
        let ad = self.quotient.h_action(y);
        let wedge = &self.wedges[k];
        let n = self.ambient_dim(k);
        let mut t = RationalMatrix::zeros(n, n);
        for (p, tuple) in wedge.list.iter().enumerate() {
            for a in 0..d {
                for (b, x) in rho.row_entries(a) {
                    t.add_to(p * d + a, p * d + b, x);
                }
            }
            for r in 0..tuple.len() {
                for (mm, w) in ad.column(tuple[r]).iter().enumerate() {
                    if w.is_zero() {
                        continue;
                    }
                    let mut replaced = tuple.clone();
                    replaced[r] = mm;
                    if let Some((sorted, s)) = sort_with_sign(replaced) {
                        let q = wedge.pos[&sorted];
                        let c = -(w * sign(s));
                        for a in 0..d {
                            t.add_to(p * d + a, q * d + a, &c);
                        }
                    }
                }
            }
        }
        t
    }

    fn build_space(&self, k: usize) -> CochainSpace {
        let n = self.ambient_dim(k);
        let mut stacked = RationalMatrix::zeros(0, n);
        for y in 0..self.h.dim() {
            stacked = stacked.vstack(&self.equivariance_operator(k, y));
        }
        let space = Subspace::new(n, kernel_basis(&stacked)).expect("kernel basis is independent");
        CochainSpace { degree: k, ambient_dim: n, space }
    }

    /// The standard lifts `X_j = e_{c_j}` of the quotient basis.
    pub fn standard_lifts(&self) -> Vec<RationalVector> {
        let g = self.algebra().dim();
        (0..self.quotient.dim()).map(|j| self.quotient.lift(j, g)).collect()
    }

    /// Ambient coboundary `Hom(∧^k g/h, E) -> Hom(∧^{k+1} g/h, E)` computed
    /// from the given lifts of the quotient basis:
    ///
    /// `d f(X̄_1,…,X̄_{k+1}) = Σ_i (−1)^{i+1} X_i.f(…X̂_i…) + Σ_{i<j} (−1)^{i+j} f([X_i,X_j]‾, …X̂_i…X̂_j…)`.
    pub fn ambient_coboundary_with_lifts(&self, k: usize, lifts: &[RationalVector]) -> RationalMatrix {
        let g = self.algebra();
        let d = self.module.dim();
        let rows = self.ambient_dim(k + 1);
        let cols = self.ambient_dim(k);
        let mut out = RationalMatrix::zeros(rows, cols);
        let rho: Vec<RationalMatrix> = lifts.iter().map(|x| self.module.action_of(x)).collect();
        let target = &self.wedges[k + 1];
        let source = &self.wedges[k];
        for (p, tuple) in target.list.iter().enumerate() {
            for i in 0..tuple.len() {
                let mut rest = tuple.clone();
                rest.remove(i);
                let q = source.pos[&rest];
                let s = sign(if i % 2 == 0 { 1 } else { -1 });
                for a in 0..d {
                    for (b, x) in rho[tuple[i]].row_entries(a) {
                        out.add_to(p * d + a, q * d + b, &(x * &s));
                    }
                }
            }
            for i in 0..tuple.len() {
                for j in i + 1..tuple.len() {
                    let br = g.bracket(&lifts[tuple[i]], &lifts[tuple[j]]).expect("lift lengths match");
                    let w = self.quotient.project().mul_vec(&br);
                    let mut rest = tuple.clone();
                    rest.remove(j);
                    rest.remove(i);
                    let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                    for (mm, c) in w.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut full = vec![mm];
                        full.extend(&rest);
                        if let Some((sorted, s2)) = sort_with_sign(full) {
                            let q = source.pos[&sorted];
                            let coeff = c * sign(s * s2);
                            for a in 0..d {
                                out.add_to(p * d + a, q * d + a, &coeff);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// `d^k` in the stored bases of the equivariant spaces, from given lifts.
    pub fn coboundary_matrix_with_lifts(&self, k: usize, lifts: &[RationalVector]) -> Result<RationalMatrix, CochainError> {
        let src = self.space(k)?;
        let m = self.top_degree();
        if k >= m {
            return Ok(RationalMatrix::zeros(0, src.dim()));
        }
        let dst = self.space(k + 1)?;
        let ambient = self.ambient_coboundary_with_lifts(k, lifts);
        let mut cols = Vec::with_capacity(src.dim());
        for b in src.basis() {
            let image = ambient.mul_vec(b);
            cols.push(dst.coordinates(&image).ok_or(CochainError::ImageNotEquivariant(k))?);
        }
        Ok(RationalMatrix::from_columns(&cols, dst.dim()))
    }

    /// `d^k : C^k -> C^{k+1}` in the stored bases. Past the top degree the
    /// target is zero.
    pub fn coboundary_matrix(&self, k: usize) -> Result<RationalMatrix, CochainError> {
        self.coboundary_matrix_with_lifts(k, &self.standard_lifts())
    }

    /// All coboundary matrices `d^0, …, d^{m−1}`.
    pub fn coboundary_matrices(&self) -> Result<Vec<RationalMatrix>, CochainError> {
        let m = self.top_degree();
        map_indexed(m, |k| self.coboundary_matrix(k)).into_iter().collect()
    }

    /// Betti numbers and representatives in degrees `0..=max_degree`.
    pub fn betti_numbers(&self, max_degree: usize) -> Result<CohomologyReport, CochainError> {
        let m = self.top_degree();
        if max_degree > m {
            return Err(CochainError::DegreeTooLarge { degree: max_degree, max: m });
        }
        let maps = self.coboundary_matrices()?;
        let results = map_indexed(max_degree + 1, |k| {
            let dim = self.spaces[k].dim();
            let cocycles = if k < m { kernel_basis(&maps[k]) } else { crate::linalg::Subspace::full(dim).basis().to_vec() };
            let boundaries = if k > 0 { image_basis(&maps[k - 1]) } else { Vec::new() };
            let image = Subspace::new(dim, boundaries).expect("image basis is independent");
            let mut span = image.clone();
            let mut representatives = Vec::new();
            for z in cocycles.iter() {
                if !span.contains(z) {
                    span = span.sum(&Subspace::new(dim, vec![z.clone()]).expect("nonzero kernel vector"));
                    representatives.push(image.reduce(z));
                }
            }
            CohomologyResult {
                degree: k,
                dim_cochains: dim,
                betti: cocycles.len() - image.dim(),
                cocycle_dim: cocycles.len(),
                coboundary_dim: image.dim(),
                representatives,
            }
        });
        Ok(CohomologyReport { results, reduced: false, warnings: self.warnings.clone() })
    }

    /// Kernel modulo the closure of the image. Images of linear maps between
    /// finite-dimensional spaces are closed, so this agrees with
    /// [`Self::betti_numbers`]; only the flag differs.
    pub fn reduced_betti_numbers(&self, max_degree: usize) -> Result<CohomologyReport, CochainError> {
        let mut r = self.betti_numbers(max_degree)?;
        r.reduced = true;
        Ok(r)
    }

    fn check_deg1(&self, f: &[Rational]) -> Result<(), CochainError> {
        let n = self.ambient_dim(1);
        if f.len() != n {
            return Err(CochainError::WrongLength { expected: n, found: f.len() });
        }
        Ok(())
    }

    /// For an ambient 1-cochain `f`: some `ξ ∈ E^h` with `f(X̄) = X.ξ`, if one exists.
    pub fn coboundary_witness_deg1(&self, f: &[Rational]) -> Result<Option<RationalVector>, CochainError> {
        self.check_deg1(f)?;
        if self.top_degree() == 0 {
            return Ok(Some(zero_vector(self.module.dim())));
        }
        let c1 = self.space(1)?;
        let Some(fc) = c1.coordinates(f) else {
            return Err(CochainError::NotEquivariant);
        };
        let d0 = self.coboundary_matrix(0)?;
        Ok(solve(&d0, &fc).map(|x| self.spaces[0].ambient(&x)))
    }

    /// Direct check of `X.f(Ȳ) − Y.f(X̄) − f([X,Y]‾) = 0` over all pairs of
    /// basis vectors of `g`, with `f` extended to `g` through the projection.
    pub fn is_cocycle_deg1(&self, f: &[Rational]) -> Result<bool, CochainError> {
        self.check_deg1(f)?;
        let g = self.algebra();
        let d = self.module.dim();
        let proj = self.quotient.project();
        let eval = |x: &[Rational]| -> RationalVector {
            let xb = proj.mul_vec(x);
            let mut out = zero_vector(d);
            for (j, c) in xb.iter().enumerate() {
                if !c.is_zero() {
                    crate::linalg::axpy(&mut out, c, &f[j * d..(j + 1) * d]);
                }
            }
            out
        };
        for a in 0..g.dim() {
            for b in a + 1..g.dim() {
                let (x, y) = (g.basis_element(a), g.basis_element(b));
                let mut r = self.module.matrix(a).mul_vec(&eval(&y));
                let t = self.module.matrix(b).mul_vec(&eval(&x));
                let u = eval(&g.basis_bracket(a, b));
                for ((ri, ti), ui) in r.iter_mut().zip(&t).zip(&u) {
                    *ri -= ti + ui;
                }
                if !crate::linalg::is_zero_vector(&r) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Euler characteristic `Σ (−1)^k dim C^k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.spaces.iter().map(|s| if s.degree % 2 == 0 { s.dim() as i64 } else { -(s.dim() as i64) }).sum()
    }

    /// The complex as a [`crate::complexes::FiniteComplex`], shifted down so that
    /// `C^0` occupies the augmentation slot and `d^0` the augmentation map.
    /// Its homology dimensions are then the Betti numbers.
    pub fn to_finite_complex(&self) -> Result<crate::complexes::FiniteComplex, CochainError> {
        let spaces = self.spaces.iter().map(CochainSpace::dim).collect();
        let maps = self.coboundary_matrices()?;
        Ok(crate::complexes::FiniteComplex::new(spaces, maps).expect("inhomogeneous complex squares to zero"))
    }
}

/// Rank of every coboundary matrix, for quick summaries.
pub fn coboundary_ranks(cx: &RelativeComplex) -> Result<Vec<usize>, CochainError> {
    Ok(cx.coboundary_matrices()?.iter().map(rank).collect())
}

/// `Hom_h(∧^k g/h, E)` as a standalone computation.
pub fn equivariant_cochain_space(h: &Subalgebra, module: &GModule, k: usize) -> Result<CochainSpace, CochainError> {
    let cx = RelativeComplex::new(h, module)?;
    Ok(cx.space(k)?.clone())
}

/// `d^k` as a standalone computation.
pub fn coboundary_matrix(h: &Subalgebra, module: &GModule, k: usize) -> Result<RationalMatrix, CochainError> {
    RelativeComplex::new(h, module)?.coboundary_matrix(k)
}

/// Betti numbers of `H^k(g, h, E)` for `k ≤ max_degree`.
pub fn betti_numbers(h: &Subalgebra, module: &GModule, max_degree: usize) -> Result<CohomologyReport, CochainError> {
    RelativeComplex::new(h, module)?.betti_numbers(max_degree)
}

/// Reduced cohomology; identical numbers, flagged.
pub fn reduced_betti_numbers(h: &Subalgebra, module: &GModule, max_degree: usize) -> Result<CohomologyReport, CochainError> {
    RelativeComplex::new(h, module)?.reduced_betti_numbers(max_degree)
}

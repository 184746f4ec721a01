//! Seeded random inputs for the property checks: rationals, invertible
//! matrices, modules, exact complexes and enveloping-algebra elements.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::enveloping::{degree_of, Enveloping, UGElement};
use crate::lie::LieAlgebra;
use crate::linalg::{int, kernel_basis, rat, Rational, RationalMatrix, RationalVector};
use crate::rep::GModule;

/// A small rational `p/q` with `|p| ≤ 3`, `1 ≤ q ≤ 3`.
pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

pub fn vector<R: Rng>(rng: &mut R, n: usize) -> RationalVector {
    (0..n).map(|_| rational(rng)).collect()
}

/// A random combination of the given vectors.
pub fn combination<R: Rng>(rng: &mut R, basis: &[RationalVector], n: usize) -> RationalVector {
    let mut out = vec![Rational::zero(); n];
    for b in basis {
        crate::linalg::axpy(&mut out, &rational(rng), b);
    }
    out
}

/// Lower unipotent times diagonal times upper unipotent, so always invertible.
pub fn invertible<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    let mut lower = RationalMatrix::identity(n);
    let mut upper = RationalMatrix::identity(n);
    let mut diag = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, int(rng.gen_range(-2..=2)));
            upper.set(j, i, int(rng.gen_range(-2..=2)));
        }
        let d = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        diag.set(i, i, int(d));
    }
    lower.mul(&diag).mul(&upper)
}

pub fn permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Modules factoring through `g/[g,g]`: `ρ(x) = Σ_j φ_j(x) A^{j+1}` with
/// `φ_j` vanishing on the derived algebra.
fn abelianized<R: Rng>(rng: &mut R, g: &Arc<LieAlgebra>, dim: usize) -> Option<GModule> {
    let derived = g.derived();
    let rows = RationalMatrix::from_rows(derived.basis().to_vec(), g.dim());
    let functionals = kernel_basis(&rows);
    if functionals.is_empty() {
        return None;
    }
    let a = RationalMatrix::from_rows((0..dim).map(|_| vector(rng, dim)).collect(), dim);
    let powers: Vec<RationalMatrix> = std::iter::successors(Some(a.clone()), |p| Some(p.mul(&a))).take(functionals.len()).collect();
    let action = (0..g.dim())
        .map(|i| {
            functionals.iter().zip(&powers).fold(RationalMatrix::zeros(dim, dim), |m, (phi, p)| m.add(&p.scale(&phi[i])))
        })
        .collect();
    GModule::with_dim(g.clone(), dim, action).ok()
}

fn irreducible_pieces(g: &Arc<LieAlgebra>) -> Vec<GModule> {
    let mut out = vec![GModule::trivial(g.clone(), 1)];
    if g.dim() <= 4 && g.dim() > 0 {
        out.push(GModule::adjoint(g.clone()));
    }
    if let Ok(m) = GModule::natural(g.clone()) {
        out.push(m);
    }
    for k in 2..=3 {
        if let Ok(m) = GModule::symmetric_power(g.clone(), k) {
            out.push(m);
        }
    }
    out
}

/// A random module of dimension `1..=max_dim`: direct sums of preset
/// pieces and abelianized blocks, in a random basis.
pub fn module<R: Rng>(rng: &mut R, g: &Arc<LieAlgebra>, max_dim: usize) -> GModule {
    let pieces = irreducible_pieces(g);
    let target = rng.gen_range(1..=max_dim.max(1));
    let mut acc: Option<GModule> = None;
    let mut dim = 0;
    for _ in 0..8 {
        if dim >= target {
            break;
        }
        let room = target - dim;
        let next = if rng.gen_bool(0.4) {
            let d = rng.gen_range(1..=room);
            abelianized(rng, g, d)
        } else {
            let fits: Vec<&GModule> = pieces.iter().filter(|p| p.dim() <= room).collect();
            fits.choose(rng).map(|p| (*p).clone())
        };
        let Some(next) = next else { continue };
        dim += next.dim();
        acc = Some(match acc {
            None => next,
            Some(a) => a.direct_sum(&next).expect("same algebra"),
        });
    }
    let m = acc.unwrap_or_else(|| GModule::trivial(g.clone(), 1));
    m.change_basis(&invertible(rng, m.dim())).expect("invertible change of basis")
}

/// Exact complex built from identity pieces `Q^a -> Q^a` placed between
/// consecutive slots, then conjugated by random bases. `spaces.len() ≤ len`.
pub fn exact_complex<R: Rng>(rng: &mut R, len: usize, max_piece: usize) -> (Vec<usize>, Vec<RationalMatrix>) {
    let slots = rng.gen_range(2..=len.max(2));
    let pieces: Vec<usize> = (0..slots - 1).map(|_| rng.gen_range(0..=max_piece)).collect();
    let spaces: Vec<usize> =
        (0..slots).map(|l| if l > 0 { pieces[l - 1] } else { 0 } + pieces.get(l).copied().unwrap_or(0)).collect();
    let maps = elementary_maps(&spaces, &pieces);
    conjugate(rng, spaces, maps)
}

/// Identity pieces: piece `l` occupies the tail of slot `l` and the head of
/// slot `l+1`.
fn elementary_maps(spaces: &[usize], pieces: &[usize]) -> Vec<RationalMatrix> {
    (0..pieces.len())
        .map(|l| {
            let mut m = RationalMatrix::zeros(spaces[l + 1], spaces[l]);
            let from = if l > 0 { pieces[l - 1] } else { 0 };
            for k in 0..pieces[l] {
                m.set(k, from + k, Rational::one());
            }
            m
        })
        .collect()
}

fn conjugate<R: Rng>(rng: &mut R, spaces: Vec<usize>, maps: Vec<RationalMatrix>) -> (Vec<usize>, Vec<RationalMatrix>) {
    let bases: Vec<RationalMatrix> = spaces.iter().map(|&d| invertible(rng, d)).collect();
    let maps = maps
        .iter()
        .enumerate()
        .map(|(l, m)| bases[l + 1].mul(m).mul(&bases[l].inverse().expect("invertible")))
        .collect();
    (spaces, maps)
}

/// An exact complex with one extra dimension at a slot `≥ 1` that no map
/// touches, so homology there is one-dimensional. Returns the slot.
pub fn non_exact_complex<R: Rng>(rng: &mut R, len: usize, max_piece: usize) -> (Vec<usize>, Vec<RationalMatrix>, usize) {
    let slots = rng.gen_range(2..=len.max(2));
    let pieces: Vec<usize> = (0..slots - 1).map(|_| rng.gen_range(0..=max_piece)).collect();
    let slot = rng.gen_range(1..slots);
    let mut spaces: Vec<usize> =
        (0..slots).map(|l| if l > 0 { pieces[l - 1] } else { 0 } + pieces.get(l).copied().unwrap_or(0)).collect();
    let base = elementary_maps(&spaces, &pieces);
    spaces[slot] += 1;
    let maps = base
        .into_iter()
        .enumerate()
        .map(|(l, m)| {
            let mut out = RationalMatrix::zeros(spaces[l + 1], spaces[l]);
            for (r, c, x) in m.entries() {
                out.set(r, c, x.clone());
            }
            out
        })
        .collect();
    let (spaces, maps) = conjugate(rng, spaces, maps);
    (spaces, maps, slot)
}

/// A random element with up to `terms` monomials of degree `≤ max_degree`.
pub fn element<R: Rng>(rng: &mut R, env: &Arc<Enveloping>, max_degree: usize, terms: usize) -> UGElement {
    let monomials: Vec<_> = env.monomials(max_degree.min(env.bound()));
    let mut u = env.zero();
    for _ in 0..rng.gen_range(1..=terms.max(1)) {
        let m = monomials.choose(rng).expect("at least the unit").clone();
        debug_assert!(degree_of(&m) <= max_degree);
        let c = rational(rng);
        u = u.add(&env.monomial(m).expect("within bound").scale(&c)).expect("same algebra");
    }
    u
}

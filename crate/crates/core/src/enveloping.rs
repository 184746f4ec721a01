//! The enveloping algebra `U(g)` truncated at a PBW degree bound.
//!
//! Monomials are exponent vectors over an adapted basis of `g`: the
//! complement generators `X_1, …, X_q` of a subalgebra `h` first, then a
//! basis `Y_1, …, Y_p` of `h`. With `h = 0` the adapted basis is the original
//! one. Every element lives in a shared [`Enveloping`] context that carries
//! the structure constants, the bound, and a straightening cache.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::error::EnvelopingError;
use crate::lie::{LieAlgebra, Subalgebra};
use crate::linalg::{format_rational, int, Rational, RationalMatrix, RationalVector};
use crate::rep::GModule;

/// PBW exponents, one per adapted generator.
pub type Monomial = Vec<u32>;

type Terms = BTreeMap<Monomial, Rational>;

fn add_term(terms: &mut Terms, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn degree_of(m: &[u32]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

/// All monomials in `n` generators of degree `≤ bound`, by degree and then
/// lexicographically descending exponents (so `X_1` precedes `X_2`).
pub fn monomials_up_to(n: usize, bound: usize) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    for d in 0..=bound as u32 {
        rec(0, d, &mut vec![0; n], &mut out);
    }
    out
}

/// Truncated `U(g)` with complement-first PBW order relative to `h`.
pub struct Enveloping {
    original: Arc<LieAlgebra>,
    adapted: Arc<LieAlgebra>,
    /// Columns are the adapted generators in original coordinates.
    basis: RationalMatrix,
    basis_inverse: RationalMatrix,
    complement_dim: usize,
    bound: usize,
    h_env: Option<Arc<Enveloping>>,
    right_cache: RwLock<HashMap<(Monomial, usize), Terms>>,
}

impl fmt::Debug for Enveloping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Enveloping")
            .field("generators", &self.adapted.names())
            .field("complement_dim", &self.complement_dim)
            .field("bound", &self.bound)
            .finish()
    }
}

impl Enveloping {
    /// `U(g)` with the original basis order, bound `N`.
    pub fn new(g: Arc<LieAlgebra>, bound: usize) -> Arc<Self> {
        Self::relative(&Subalgebra::zero(g), bound)
    }

    /// `U(g)` in the order (complement of `h` | basis of `h`), together with
    /// the truncated `U(h)` that receives the PBW projections.
    pub fn relative(h: &Subalgebra, bound: usize) -> Arc<Self> {
        let g = h.parent().clone();
        let n = g.dim();
        let complement = h.subspace().complement_indices();
        let mut cols: Vec<RationalVector> = complement.iter().map(|&i| g.basis_element(i)).collect();
        cols.extend(h.basis().iter().cloned());
        let basis = RationalMatrix::from_columns(&cols, n);
        let mut names: Vec<String> = complement.iter().map(|&i| g.names()[i].clone()).collect();
        for y in h.basis() {
            let standard = (0..n).find(|&i| *y == g.basis_element(i));
            names.push(match standard {
                Some(i) => g.names()[i].clone(),
                None => format!("Y{}", names.len() - complement.len()),
            });
        }
        let changed = g.change_basis(&basis).expect("adapted basis is a basis");
        let adapted = Arc::new(LieAlgebra::new(names, changed.brackets().clone()).expect("same brackets"));
        let h_env = if n == 0 {
            None
        } else if h.dim() == 0 {
            Some(Enveloping::new(Arc::new(LieAlgebra::abelian(0)), bound))
        } else {
            Some(Enveloping::new(h.as_lie_algebra().clone(), bound))
        };
        Arc::new(Enveloping {
            basis_inverse: basis.inverse().expect("adapted basis is a basis"),
            original: g,
            adapted,
            basis,
            complement_dim: complement.len(),
            bound,
            h_env,
            right_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn generators(&self) -> usize {
        self.adapted.dim()
    }

    /// Number of complement generators `q`.
    pub fn complement_dim(&self) -> usize {
        self.complement_dim
    }

    pub fn original(&self) -> &Arc<LieAlgebra> {
        &self.original
    }

    /// The algebra in the adapted basis.
    pub fn adapted(&self) -> &Arc<LieAlgebra> {
        &self.adapted
    }

    /// Adapted generators as columns in original coordinates.
    pub fn adapted_basis(&self) -> &RationalMatrix {
        &self.basis
    }

    /// Truncated `U(h)` in the intrinsic basis of `h`. Absent only for the
    /// zero algebra, which is its own `U(h)`.
    pub fn h_env(&self) -> Option<&Arc<Enveloping>> {
        self.h_env.as_ref()
    }

    pub fn one(self: &Arc<Self>) -> UGElement {
        self.monomial_unchecked(vec![0; self.generators()])
    }

    pub fn zero(self: &Arc<Self>) -> UGElement {
        UGElement { env: self.clone(), terms: Terms::new() }
    }

    /// The `i`-th adapted generator.
    pub fn generator(self: &Arc<Self>, i: usize) -> UGElement {
        let mut m = vec![0; self.generators()];
        m[i] = 1;
        self.monomial_unchecked(m)
    }

    /// A Lie algebra element in original coordinates, as a degree-1 element.
    pub fn element_of(self: &Arc<Self>, x: &[Rational]) -> UGElement {
        let c = self.basis_inverse.mul_vec(x);
        let mut terms = Terms::new();
        for (i, ci) in c.into_iter().enumerate() {
            let mut m = vec![0; self.generators()];
            m[i] = 1;
            add_term(&mut terms, m, ci);
        }
        UGElement { env: self.clone(), terms }
    }

    pub fn monomial(self: &Arc<Self>, exponents: Monomial) -> Result<UGElement, EnvelopingError> {
        if exponents.len() != self.generators() {
            return Err(EnvelopingError::WrongArity { expected: self.generators(), found: exponents.len() });
        }
        let d = degree_of(&exponents);
        if d > self.bound {
            return Err(EnvelopingError::DegreeTooLarge { degree: d, bound: self.bound });
        }
        Ok(self.monomial_unchecked(exponents))
    }

    fn monomial_unchecked(self: &Arc<Self>, m: Monomial) -> UGElement {
        let mut terms = Terms::new();
        terms.insert(m, Rational::one());
        UGElement { env: self.clone(), terms }
    }

    /// From raw terms; rejects bad arity and degrees above the bound.
    pub fn from_terms(self: &Arc<Self>, terms: Vec<(Monomial, Rational)>) -> Result<UGElement, EnvelopingError> {
        let mut t = Terms::new();
        for (m, c) in terms {
            self.monomial(m.clone())?;
            add_term(&mut t, m, c);
        }
        Ok(UGElement { env: self.clone(), terms: t })
    }

    /// Monomials of degree `≤ b`, in the canonical order.
    pub fn monomials(&self, b: usize) -> Vec<Monomial> {
        monomials_up_to(self.generators(), b)
    }

    /// Straightened product `X^m · X_x`.
    fn right_generator(&self, m: &Monomial, x: usize) -> Terms {
        if let Some(t) = self.right_cache.read().expect("cache lock").get(&(m.clone(), x)) {
            return t.clone();
        }
        let result = match m.iter().rposition(|&e| e > 0) {
            Some(a) if a > x => {
                // X^{m'} X_a X_x = (X^{m'} X_x) X_a + X^{m'} [X_a, X_x]
                let mut prefix = m.clone();
                prefix[a] -= 1;
                let mut out = Terms::new();
                for (mono, c) in self.right_generator(&prefix, x) {
                    for (mono2, c2) in self.right_generator(&mono, a) {
                        add_term(&mut out, mono2, &c * c2);
                    }
                }
                for (k, ck) in self.adapted.basis_bracket(a, x).into_iter().enumerate() {
                    if ck.is_zero() {
                        continue;
                    }
                    for (mono2, c2) in self.right_generator(&prefix, k) {
                        add_term(&mut out, mono2, &ck * c2);
                    }
                }
                out
            }
            _ => {
                let mut next = m.clone();
                next[x] += 1;
                let mut out = Terms::new();
                out.insert(next, Rational::one());
                out
            }
        };
        self.right_cache.write().expect("cache lock").insert((m.clone(), x), result.clone());
        result
    }

    /// Straightened product of an arbitrary monomial with a word of generators.
    fn times_word(&self, start: Terms, word: impl IntoIterator<Item = usize>) -> Terms {
        let mut cur = start;
        for x in word {
            let mut next = Terms::new();
            for (m, c) in cur {
                for (m2, c2) in self.right_generator(&m, x) {
                    add_term(&mut next, m2, &c * c2);
                }
            }
            cur = next;
        }
        cur
    }

    fn word(m: &[u32]) -> impl Iterator<Item = usize> + '_ {
        m.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
    }

    /// `X^a · X^b`, straightened; the caller guarantees the degree bound.
    pub(crate) fn monomial_product(&self, a: &Monomial, b: &Monomial) -> Terms {
        let mut start = Terms::new();
        start.insert(a.clone(), Rational::one());
        self.times_word(start, Self::word(b).collect::<Vec<_>>())
    }

    /// `S(X^m) = (−1)^{|m|}` times the reversed word, straightened.
    fn antipode_monomial(&self, m: &Monomial) -> Terms {
        let mut start = Terms::new();
        let d = degree_of(m);
        start.insert(vec![0; self.generators()], if d.is_multiple_of(2) { int(1) } else { int(-1) });
        let mut word: Vec<usize> = Self::word(m).collect();
        word.reverse();
        self.times_word(start, word)
    }

    /// `E`'s action matrices in the adapted basis.
    pub fn adapted_action(&self, e: &GModule) -> Result<Vec<RationalMatrix>, EnvelopingError> {
        if e.algebra().as_ref() != self.original.as_ref() {
            return Err(EnvelopingError::AlgebraMismatch);
        }
        Ok((0..self.generators()).map(|i| e.action_of(&self.basis.column(i))).collect())
    }

    /// Matrix of the monomial `X^m` acting on `E`, leftmost generator outermost.
    pub fn monomial_action(rho: &[RationalMatrix], m: &[u32], dim: usize) -> RationalMatrix {
        let mut out = RationalMatrix::identity(dim);
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                out = out.mul(&rho[i]);
            }
        }
        out
    }
}

/// An element of truncated `U(g)`: sparse PBW coefficients, all degrees within the bound.
#[derive(Clone)]
pub struct UGElement {
    env: Arc<Enveloping>,
    terms: Terms,
}

impl PartialEq for UGElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.env, &other.env) && self.terms == other.terms
    }
}

impl fmt::Debug for UGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.env.adapted.names();
        let mut first = true;
        for (m, c) in &self.terms {
            let mut word = String::new();
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => word.push_str(&names[i]),
                    _ => word.push_str(&format!("{}^{}", names[i], e)),
                }
            }
            let coeff = format_rational(c);
            let (neg, abs) = match coeff.strip_prefix('-') {
                Some(a) => (true, a.to_string()),
                None => (false, coeff),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (word.is_empty(), abs == "1") {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{word}")?,
                (false, false) => write!(f, "{abs}{word}")?,
            }
        }
        Ok(())
    }
}

impl UGElement {
    pub fn env(&self) -> &Arc<Enveloping> {
        &self.env
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest PBW degree present; 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| degree_of(m)).max().unwrap_or(0)
    }

    fn same_env(&self, other: &Self) -> Result<(), EnvelopingError> {
        if Arc::ptr_eq(&self.env, &other.env) {
            Ok(())
        } else {
            Err(EnvelopingError::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, EnvelopingError> {
        self.same_env(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(UGElement { env: self.env.clone(), terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, EnvelopingError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            add_term(&mut terms, m.clone(), c * s);
        }
        UGElement { env: self.env.clone(), terms }
    }

    /// Product in `U(g)`. Fails with `TruncationOverflow` when the degrees
    /// add up past the bound; the product is then not representable.
    pub fn multiply(&self, other: &Self) -> Result<Self, EnvelopingError> {
        self.same_env(other)?;
        let (l, r) = (self.degree(), other.degree());
        if !self.is_zero() && !other.is_zero() && l + r > self.env.bound {
            return Err(EnvelopingError::TruncationOverflow { left: l, right: r, bound: self.env.bound });
        }
        let mut terms = Terms::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let cab = ca * cb;
                for (m, c) in self.env.monomial_product(a, b) {
                    add_term(&mut terms, m, &cab * c);
                }
            }
        }
        Ok(UGElement { env: self.env.clone(), terms })
    }

    /// `η(u)`, the constant term.
    pub fn augmentation(&self) -> Rational {
        self.coefficient(&vec![0; self.env.generators()])
    }

    /// `Δ(u)`, multiplying the primitive coproducts of the generators in each word.
    pub fn coproduct(&self) -> TensorElement {
        let n = self.env.generators();
        let mut out = TensorElement::zero(&self.env, 2);
        for (m, c) in &self.terms {
            let mut acc = TensorElement::unit(&self.env, 2);
            for x in Enveloping::word(m) {
                let mut prim = TensorElement::zero(&self.env, 2);
                let mut g = vec![0; n];
                g[x] = 1;
                prim.add_term(vec![g.clone(), vec![0; n]], Rational::one());
                prim.add_term(vec![vec![0; n], g], Rational::one());
                acc = acc.multiply(&prim).expect("leg degrees stay within the word degree");
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// `S(u)`; degree never increases.
    pub fn antipode(&self) -> Self {
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            for (m2, c2) in self.env.antipode_monomial(m) {
                add_term(&mut terms, m2, c * c2);
            }
        }
        UGElement { env: self.env.clone(), terms }
    }

    /// `p_t(u)`: the coefficients of `X^t Y^r` collected as `Σ Y^r`, an element
    /// of truncated `U(h)`. `t` has one exponent per complement generator.
    pub fn pbw_projection(&self, t: &[u32]) -> Result<UGElement, EnvelopingError> {
        let q = self.env.complement_dim;
        if t.len() != q {
            return Err(EnvelopingError::WrongArity { expected: q, found: t.len() });
        }
        let h_env = self.env.h_env.clone().unwrap_or_else(|| self.env.clone());
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            if m[..q] == *t {
                add_term(&mut terms, m[q..].to_vec(), c.clone());
            }
        }
        Ok(UGElement { env: h_env, terms })
    }

    /// The inclusion `U(h) -> U(g)` for an element of [`Enveloping::h_env`]:
    /// `Y^r` goes to the PBW monomial with zero complement exponents.
    pub fn inject_from_h(&self, w: &UGElement) -> Result<UGElement, EnvelopingError> {
        let q = self.env.complement_dim;
        if w.env.generators() != self.env.generators() - q {
            return Err(EnvelopingError::AlgebraMismatch);
        }
        let mut terms = Terms::new();
        for (r, c) in &w.terms {
            let mut m = vec![0; q];
            m.extend(r);
            add_term(&mut terms, m, c.clone());
        }
        Ok(UGElement { env: self.env.clone(), terms })
    }

    /// `u.ξ` on a module over the original algebra.
    pub fn act(&self, e: &GModule, xi: &[Rational]) -> Result<RationalVector, EnvelopingError> {
        let rho = self.env.adapted_action(e)?;
        let mut out = vec![Rational::zero(); e.dim()];
        for (m, c) in &self.terms {
            let mut v = xi.to_vec();
            for (i, &k) in m.iter().enumerate().rev() {
                for _ in 0..k {
                    v = rho[i].mul_vec(&v);
                }
            }
            crate::linalg::axpy(&mut out, c, &v);
        }
        Ok(out)
    }
}

/// An element of `U(g)^{⊗k}`; `k = 2` is the codomain of `Δ`.
#[derive(Clone)]
pub struct TensorElement {
    env: Arc<Enveloping>,
    legs: usize,
    terms: BTreeMap<Vec<Monomial>, Rational>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.env, &other.env) && self.legs == other.legs && self.terms == other.terms
    }
}

/// The codomain of the coproduct.
pub type TensorSquareElement = TensorElement;

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(legs, c)| {
                let l: Vec<String> = legs
                    .iter()
                    .map(|m| self.env.monomial_unchecked(m.clone()).to_string())
                    .collect();
                format!("{}·{}", format_rational(c), l.join("⊗"))
            })
            .collect();
        write!(f, "{}", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })
    }
}

impl TensorElement {
    pub fn zero(env: &Arc<Enveloping>, legs: usize) -> Self {
        TensorElement { env: env.clone(), legs, terms: BTreeMap::new() }
    }

    pub fn unit(env: &Arc<Enveloping>, legs: usize) -> Self {
        let mut t = Self::zero(env, legs);
        t.add_term(vec![vec![0; env.generators()]; legs], Rational::one());
        t
    }

    /// `a ⊗ b` of two elements.
    pub fn tensor(a: &UGElement, b: &UGElement) -> Self {
        let mut t = Self::zero(&a.env, 2);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                t.add_term(vec![ma.clone(), mb.clone()], ca * cb);
            }
        }
        t
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: Vec<Monomial>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(&self.env, self.legs);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    fn leg_degree(&self, i: usize) -> usize {
        self.terms.keys().map(|k| degree_of(&k[i])).max().unwrap_or(0)
    }

    /// Legwise product; overflows when some leg would pass the bound.
    pub fn multiply(&self, other: &Self) -> Result<Self, EnvelopingError> {
        if !Arc::ptr_eq(&self.env, &other.env) || self.legs != other.legs {
            return Err(EnvelopingError::AlgebraMismatch);
        }
        if !self.terms.is_empty() && !other.terms.is_empty() {
            for i in 0..self.legs {
                let (l, r) = (self.leg_degree(i), other.leg_degree(i));
                if l + r > self.env.bound {
                    return Err(EnvelopingError::TruncationOverflow { left: l, right: r, bound: self.env.bound });
                }
            }
        }
        let mut out = Self::zero(&self.env, self.legs);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut partial: BTreeMap<Vec<Monomial>, Rational> = BTreeMap::new();
                partial.insert(Vec::new(), ca * cb);
                for i in 0..self.legs {
                    let prod = self.env.monomial_product(&ka[i], &kb[i]);
                    let mut next = BTreeMap::new();
                    for (prefix, c) in &partial {
                        for (m, c2) in &prod {
                            let mut key = prefix.clone();
                            key.push(m.clone());
                            *next.entry(key).or_insert_with(Rational::zero) += c * c2;
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    out.add_term(k, c);
                }
            }
        }
        Ok(out)
    }

    /// Applies a linear map `U -> U^{⊗j}` on leg `i`, giving `legs − 1 + j` legs.
    pub fn map_leg(&self, i: usize, j: usize, f: impl Fn(&UGElement) -> TensorElement) -> Self {
        let mut out = Self::zero(&self.env, self.legs - 1 + j);
        for (k, c) in &self.terms {
            let image = f(&self.env.monomial_unchecked(k[i].clone()));
            for (legs, c2) in &image.terms {
                let mut key = k[..i].to_vec();
                key.extend(legs.iter().cloned());
                key.extend(k[i + 1..].iter().cloned());
                out.add_term(key, c * c2);
            }
        }
        out
    }

    /// Applies `η` on leg `i`.
    pub fn counit_leg(&self, i: usize) -> Self {
        self.map_leg(i, 0, |u| {
            let mut t = TensorElement::zero(&self.env, 0);
            t.add_term(Vec::new(), u.augmentation());
            t
        })
    }

    /// Applies `S` on leg `i`.
    pub fn antipode_leg(&self, i: usize) -> Self {
        self.map_leg(i, 1, |u| {
            let mut t = TensorElement::zero(&self.env, 1);
            for (m, c) in u.antipode().terms {
                t.add_term(vec![m], c);
            }
            t
        })
    }

    /// Applies `Δ` on leg `i`.
    pub fn coproduct_leg(&self, i: usize) -> Self {
        self.map_leg(i, 2, |u| u.coproduct())
    }

    /// A one-legged tensor as an element.
    pub fn into_element(self) -> UGElement {
        assert_eq!(self.legs, 1, "only one-legged tensors are elements");
        let mut terms = Terms::new();
        for (mut k, c) in self.terms {
            add_term(&mut terms, k.pop().expect("one leg"), c);
        }
        UGElement { env: self.env, terms }
    }

    /// Multiplies the two legs of a tensor square.
    pub fn multiply_legs(&self) -> Result<UGElement, EnvelopingError> {
        assert_eq!(self.legs, 2, "multiplication needs two legs");
        let mut out = self.env.zero();
        for (k, c) in &self.terms {
            let a = self.env.monomial_unchecked(k[0].clone());
            let b = self.env.monomial_unchecked(k[1].clone());
            out = out.add(&a.multiply(&b)?.scale(c))?;
        }
        Ok(out)
    }
}

//! Minimal polynomials of rational matrices.

use num_traits::Zero;

use crate::linalg::{kernel_basis, Rational, RationalMatrix};

/// Coefficients, lowest degree first, no trailing zeros.
pub type Poly = Vec<Rational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        r = trim(r);
    }
    r
}

fn gcd(mut a: Poly, mut b: Poly) -> Poly {
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn derivative(p: &Poly) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect())
}

/// Monic minimal polynomial of a square matrix.
pub fn minimal_polynomial(a: &RationalMatrix) -> Poly {
    let n = a.rows();
    let flatten = |m: &RationalMatrix| -> Vec<Rational> { (0..n).flat_map(|r| m.row(r)).collect() };
    let mut powers = vec![flatten(&RationalMatrix::identity(n))];
    let mut current = RationalMatrix::identity(n);
    loop {
        current = current.mul(a);
        powers.push(flatten(&current));
        let k = powers.len();
        let m = RationalMatrix::from_columns(&powers, n * n);
        if let Some(mut v) = kernel_basis(&m).into_iter().next() {
            // the first dependency involves the newest power
            let lead = v[k - 1].clone();
            for c in v.iter_mut() {
                *c /= &lead;
            }
            return trim(v);
        }
    }
}

/// Diagonalizable over the algebraic closure: the minimal polynomial is squarefree.
pub fn is_semisimple(a: &RationalMatrix) -> bool {
    let p = minimal_polynomial(a);
    gcd(p.clone(), derivative(&p)).len() <= 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use num_traits::One;

    #[test]
    fn minimal_polynomials() {
        assert_eq!(minimal_polynomial(&RationalMatrix::zeros(2, 2)), vec![int(0), int(1)]);
        let j = RationalMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(minimal_polynomial(&j), vec![int(0), int(0), int(1)]);
        assert!(!is_semisimple(&j));
        let rot = RationalMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert_eq!(minimal_polynomial(&rot), vec![int(1), int(0), int(1)]);
        assert!(is_semisimple(&rot));
        assert!(is_semisimple(&RationalMatrix::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]])));
        assert!(Rational::one() == int(1));
    }
}

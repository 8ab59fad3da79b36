//! Exact linear algebra over the rationals.
//!
//! Everything here is deterministic: pivots are chosen as the first nonzero
//! entry in column-major order, so repeated runs produce identical bases.

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Reduced row echelon form in place. Returns the pivot columns in order.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&j| !m[j][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rational::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for j in 0..rows {
            if j != r && !m[j][c].is_zero() {
                let f = m[j][c].clone();
                for k in 0..cols {
                    let t = &m[r][k] * &f;
                    m[j][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    rref(&mut m).len()
}

/// Basis of the right kernel of `m`, one vector per free column.
///
/// The basis is in the standard rref parametrization: the vector for free
/// column f has a 1 in slot f and minus the pivot-row entries elsewhere.
pub fn kernel_basis(mut m: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for f in 0..cols {
        if pivot_set.contains(&f) {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// Sylvester criterion: every leading principal minor positive.
///
/// Uses fraction-free elimination on a copy; intended for the small Gram
/// matrices that arise here (dimension under 100).
pub fn is_positive_definite(g: &[Vec<Rational>]) -> bool {
    let n = g.len();
    let mut m: Vec<Vec<Rational>> = g.to_vec();
    for k in 0..n {
        if !m[k][k].is_positive() {
            return false;
        }
        for j in (k + 1)..n {
            let f = &m[j][k] / &m[k][k];
            for c in k..n {
                let t = &m[k][c] * &f;
                m[j][c] -= t;
            }
        }
    }
    true
}

/// Scale a rational vector so entries are coprime integers and the first
/// nonzero entry is positive. Returns the input unchanged if it is zero.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    use num_integer::Integer;
    let mut denom_lcm = num_bigint::BigInt::one();
    for x in v {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let scaled: Vec<num_bigint::BigInt> =
        v.iter().map(|x| x.numer() * &denom_lcm / x.denom()).collect();
    let mut g = num_bigint::BigInt::zero();
    for x in &scaled {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let sign_fix = match scaled.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => -g,
        _ => g,
    };
    scaled.into_iter().map(|x| Rational::from_integer(x / &sign_fix)).collect()
}

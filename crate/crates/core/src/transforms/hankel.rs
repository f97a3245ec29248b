//! Hankel positivity test for moment sequences.

use crate::incidence::Sequence;
use crate::scalar::Scalar;

/// Determinant by Gaussian elimination with a nonzero pivot search.
fn determinant<T: Scalar>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    let mut det = T::one();
    for col in 0..n {
        let Some(pivot) = (col..n).max_by(|&i, &j| {
            a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap_or(std::cmp::Ordering::Equal)
        }) else {
            return T::zero();
        };
        if a[pivot][col].is_close_to_zero() {
            return T::zero();
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = det * &p;
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone() / p.clone();
            for c in col..n {
                let v = a[col][c].clone() * &factor;
                a[row][c] = a[row][c].clone() - v;
            }
        }
    }
    det
}

/// Leading Hankel minors `det(m_{i+j+shift})_{0 <= i,j <= d}` with `m_0 = 1`, for every size the data allows.
pub fn hankel_determinants<T: Scalar>(m: &Sequence<T>, shift: usize) -> Vec<T> {
    let moment = |i: usize| if i == 0 { T::one() } else { m.get(i).clone() };
    let mut out = Vec::new();
    let mut d = 0;
    while 2 * d + shift <= m.order() {
        let mat = (0..=d).map(|i| (0..=d).map(|j| moment(i + j + shift)).collect()).collect();
        out.push(determinant(mat));
        d += 1;
    }
    out
}

/// Necessary positivity test: all available Hankel minors are `>= 0`; with `stieltjes`
/// the shifted minors `det(m_{i+j+1})` must be `>= 0` as well (support in `[0, inf)`).
pub fn hankel_check<T: Scalar>(m: &Sequence<T>, stieltjes: bool) -> bool {
    let nonneg = |v: Vec<T>| v.iter().all(|d| *d >= T::zero() || d.is_close_to_zero());
    nonneg(hankel_determinants(m, 0)) && (!stieltjes || nonneg(hankel_determinants(m, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpart::catalan;
    use crate::Rational;
    use num_bigint::BigInt;

    fn ints(v: &[i64]) -> Sequence<Rational> {
        Sequence::from_ints(v).unwrap()
    }

    #[test]
    fn examples() {
        let cat = Sequence::from_fn(10, |n| Rational::from_integer(BigInt::from(catalan(n))));
        assert!(hankel_check(&cat, true));
        assert!(hankel_check(&ints(&[0, 1, 0, 1]), false));
        assert!(!hankel_check(&ints(&[0, 1, 0, 0]), false));
        assert!(!hankel_check(&ints(&[0, 1, 0, 1]), true));
        assert!(!hankel_check(&ints(&[-1, 1]), true));
        assert!(!hankel_check(&ints(&[2, 1]), false));
    }

    #[test]
    fn catalan_minors_are_one() {
        let cat = Sequence::from_fn(10, |n| Rational::from_integer(BigInt::from(catalan(n))));
        assert!(hankel_determinants(&cat, 0).iter().all(|d| *d == Rational::from_integer(1.into())));
    }
}

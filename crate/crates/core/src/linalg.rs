//! Dense complex linear algebra over a [`Scalar`] field.

use num_traits::Zero;

use crate::scalar::{conj, cx_real, norm_sqr, Cx, Scalar};

pub type Matrix<T> = Vec<Vec<Cx<T>>>;

/// `M = L D L^H` with `L` unit lower triangular and `D` real.
#[derive(Clone, Debug)]
pub struct Ldl<T: Scalar> {
    pub l: Matrix<T>,
    pub d: Vec<T>,
}

/// Factors a Hermitian matrix. Fails with the first index `k` whose pivot is
/// not positive, or is below `rel_floor * M[k][k]` when a floor is given.
pub fn ldl_hermitian<T: Scalar>(m: &Matrix<T>, rel_floor: Option<&T>) -> Result<Ldl<T>, usize> {
    let n = m.len();
    let mut l: Matrix<T> = vec![vec![Cx::zero(); n]; n];
    let mut d: Vec<T> = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = m[i][j].clone();
            for k in 0..j {
                s = s - l[i][k].clone() * conj(&l[j][k]) * cx_real(d[k].clone());
            }
            if i == j {
                let pivot = s.re;
                let floor_ok = match rel_floor {
                    Some(f) => pivot > f.clone() * m[i][i].re.clone(),
                    None => true,
                };
                if pivot <= T::zero() || !floor_ok {
                    return Err(i);
                }
                d.push(pivot);
                l[i][i] = cx_real(T::one());
            } else {
                l[i][j] = s / cx_real(d[j].clone());
            }
        }
    }
    Ok(Ldl { l, d })
}

/// Inverse of a unit lower triangular matrix.
pub fn unit_lower_inverse<T: Scalar>(l: &Matrix<T>) -> Matrix<T> {
    let n = l.len();
    let mut b: Matrix<T> = vec![vec![Cx::zero(); n]; n];
    for i in 0..n {
        b[i][i] = cx_real(T::one());
        for j in 0..i {
            let mut s = Cx::<T>::zero();
            for k in j..i {
                if l[i][k].is_zero() || b[k][j].is_zero() {
                    continue;
                }
                s = s + l[i][k].clone() * b[k][j].clone();
            }
            b[i][j] = -s;
        }
    }
    b
}

/// Determinant by Gaussian elimination. Exact fields pivot on the first
/// nonzero entry, floating fields on the largest modulus.
pub fn determinant<T: Scalar>(mut a: Matrix<T>) -> Cx<T> {
    let n = a.len();
    let mut det = cx_real(T::one());
    for col in 0..n {
        let pivot_row = if T::EXACT {
            (col..n).find(|&r| !a[r][col].is_zero())
        } else {
            (col..n).filter(|&r| !a[r][col].is_zero()).max_by(|&x, &y| {
                norm_sqr(&a[x][col]).partial_cmp(&norm_sqr(&a[y][col])).unwrap_or(std::cmp::Ordering::Equal)
            })
        };
        let Some(p) = pivot_row else {
            return Cx::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col].clone();
        det = det * piv.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / piv.clone();
            for c in col..n {
                let v = a[col][c].clone() * factor.clone();
                a[r][c] = a[r][c].clone() - v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cx, rat};
    use num_rational::BigRational;

    fn q(n: i64) -> Cx<BigRational> {
        cx_real(rat(n, 1))
    }

    #[test]
    fn determinant_small() {
        let m = vec![vec![q(2), q(1)], vec![q(7), q(4)]];
        assert_eq!(determinant(m), q(1));
        let singular = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(determinant(singular).is_zero());
        let swap = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(determinant(swap), q(-1));
    }

    #[test]
    fn ldl_reconstructs_hermitian() {
        let i1 = cx(rat(1, 1), rat(1, 1));
        let m = vec![vec![q(4), i1.clone(), q(0)], vec![conj(&i1), q(3), q(1)], vec![q(0), q(1), q(2)]];
        let f = ldl_hermitian(&m, None).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Cx::<BigRational>::zero();
                for k in 0..3 {
                    s += f.l[i][k].clone() * cx_real(f.d[k].clone()) * conj(&f.l[j][k]);
                }
                assert_eq!(s, m[i][j]);
            }
        }
        let b = unit_lower_inverse(&f.l);
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Cx::<BigRational>::zero();
                for k in 0..3 {
                    s += b[i][k].clone() * f.l[k][j].clone();
                }
                assert_eq!(s, if i == j { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn ldl_rejects_indefinite() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(1)]];
        assert_eq!(ldl_hermitian(&m, None).unwrap_err(), 1);
    }
}

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `₂F₁(-n, b; c; x)` for a nonnegative integer `n`, as a finite sum.
///
/// `neg_n` must be `<= 0`. Fails when `c` is a nonpositive integer that makes a
/// denominator vanish before the series terminates.
pub fn gauss_2f1_terminating<T: Scalar>(neg_n: i64, b: &T, c: &T, x: &T) -> Result<T> {
    if neg_n > 0 {
        return Err(Error::Domain(format!("first parameter {neg_n} is positive; series does not terminate")));
    }
    let n = -neg_n;
    for i in 0..n {
        if *c == T::from_i64(-i) {
            return Err(Error::Domain(format!("c = {} hits a zero denominator", -i)));
        }
    }
    let mut term = T::one();
    let mut sum = T::one();
    for k in 0..n {
        let kk = T::from_i64(k);
        // ratio of consecutive terms
        term = term * T::from_i64(neg_n + k) * (b.clone() + kk.clone()) * x.clone()
            / ((c.clone() + kk) * T::from_i64(k + 1));
        sum = sum + term.clone();
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn poch(a: &BigRational, k: i64) -> BigRational {
        (0..k).fold(BigRational::one(), |acc, i| acc * (a + BigRational::from_integer(BigInt::from(i))))
    }

    fn fact(k: i64) -> BigRational {
        BigRational::from_integer((1..=k).fold(BigInt::one(), |acc, i| acc * i))
    }

    // independent oracle: Pochhammer products summed term by term
    fn direct(n: i64, b: &BigRational, c: &BigRational, x: &BigRational) -> BigRational {
        let a = BigRational::from_integer(BigInt::from(-n));
        (0..=n).fold(BigRational::zero(), |acc, k| {
            let mut xk = BigRational::one();
            for _ in 0..k {
                xk *= x;
            }
            acc + poch(&a, k) * poch(b, k) / (poch(c, k) * fact(k)) * xk
        })
    }

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(
            gauss_2f1_terminating(-5, &rat(3, 2), &rat(7, 3), &BigRational::zero()).unwrap(),
            BigRational::one()
        );
    }

    #[test]
    fn two_term_series() {
        let (b, c, x) = (rat(3, 2), rat(5, 7), rat(2, 9));
        let expect = BigRational::one() - &b * &x / &c;
        assert_eq!(gauss_2f1_terminating(-1, &b, &c, &x).unwrap(), expect);
    }

    #[test]
    fn matches_direct_sum() {
        let (b, c, x) = (rat(2, 1), rat(4, 1), rat(1, 2));
        assert_eq!(gauss_2f1_terminating(-3, &b, &c, &x).unwrap(), direct(3, &b, &c, &x));
        for n in 0..8 {
            let (b, c, x) = (rat(n + 1, 3), rat(n + 2, 1), rat(-2, 5));
            assert_eq!(gauss_2f1_terminating(-n, &b, &c, &x).unwrap(), direct(n, &b, &c, &x));
        }
    }

    #[test]
    fn rejects_bad_c() {
        assert!(gauss_2f1_terminating(-3, &rat(1, 1), &rat(-1, 1), &rat(1, 2)).is_err());
        // c = -3 is only reached after termination
        assert!(gauss_2f1_terminating(-3, &rat(1, 1), &rat(-3, 1), &rat(1, 2)).is_ok());
    }
}

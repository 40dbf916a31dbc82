//! Small exact combinatorial helpers shared by the star-products and the
//! operator calculus.

use num::{BigInt, BigRational, One};

pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    gen_binomial(n as i64, k)
}

/// Generalized binomial coefficient `C(d, s) = d(d-1)...(d-s+1)/s!` for any
/// integer `d`. Always an integer (a product of `s` consecutive integers is
/// divisible by `s!`).
pub fn gen_binomial(d: i64, s: u32) -> BigInt {
    let mut num = BigInt::one();
    for t in 0..s as i64 {
        num *= BigInt::from(d - t);
    }
    num / factorial(s)
}

/// Pochhammer-style weight `W(m, i, k) = prod_{t=i}^{k-1} (2m - t)`, the
/// polynomial-in-`m` continuation of `(2m-i)!/(2m-k)!`. Empty product is 1.
pub fn pochhammer_weight(m: i64, i: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for t in i as i64..k as i64 {
        acc *= BigInt::from(2 * m - t);
    }
    acc
}

pub fn big_ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(gen_binomial(-1, 1), BigInt::from(-1));
        assert_eq!(gen_binomial(-2, 1), BigInt::from(-2));
        assert_eq!(gen_binomial(-1, 2), BigInt::from(1));
        assert_eq!(gen_binomial(-2, 3), BigInt::from(-4));
        assert_eq!(gen_binomial(4, 2), BigInt::from(6));
    }

    #[test]
    fn pochhammer_matches_factorial_ratio() {
        // W(m,i,k) = (2m-i)!/(2m-k)! whenever 2m >= k.
        assert_eq!(pochhammer_weight(3, 1, 4), BigInt::from(5 * 4 * 3));
        assert_eq!(pochhammer_weight(2, 2, 2), BigInt::from(1));
        // Continuation at weights where the factorial form is undefined.
        assert_eq!(pochhammer_weight(1, 0, 3), BigInt::from(0));
        assert_eq!(pochhammer_weight(-5, 0, 3), BigInt::from(-10 * -11 * -12));
    }
}

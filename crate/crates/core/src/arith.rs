//! Small exact-arithmetic helpers shared by the criteria, oracle and scanner.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `C(x, t)` as a machine integer; zero when `x < t`.
pub fn binom(x: u64, t: u64) -> u64 {
    if t > x {
        return 0;
    }
    let t = t.min(x - t);
    let mut acc: u128 = 1;
    for i in 0..t {
        acc = acc * u128::from(x - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

pub fn big_binom(x: u64, t: u64) -> BigUint {
    if t > x {
        return BigUint::zero();
    }
    let t = t.min(x - t);
    let mut acc = BigUint::one();
    for i in 0..t {
        acc *= x - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Exact quotient `num / den`, or `None` when `den` is zero or does not divide `num`.
pub fn exact_div(num: &BigUint, den: &BigUint) -> Option<BigUint> {
    if den.is_zero() {
        return None;
    }
    let (q, r) = num.div_rem(den);
    r.is_zero().then_some(q)
}

pub fn product<I: IntoIterator<Item = u64>>(factors: I) -> BigUint {
    factors
        .into_iter()
        .fold(BigUint::one(), |acc, f| acc * BigUint::from(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_vanish_below_t() {
        assert_eq!(binom(1, 2), 0);
        assert_eq!(binom(2, 3), 0);
        assert_eq!(binom(0, 0), 1);
        assert_eq!(binom(7, 3), 35);
        assert_eq!(binom(121, 3), 287_980);
        assert_eq!(big_binom(121, 3), BigUint::from(287_980u32));
        assert_eq!(big_binom(2, 5), BigUint::zero());
    }

    #[test]
    fn factorials_and_division() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(10), BigUint::from(3_628_800u32));
        let n = factorial(10);
        assert_eq!(exact_div(&n, &BigUint::from(96u32)), Some(BigUint::from(37_800u32)));
        assert_eq!(exact_div(&n, &BigUint::from(11u32)), None);
        assert_eq!(exact_div(&n, &BigUint::zero()), None);
    }
}

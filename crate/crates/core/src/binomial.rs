use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient with `binom(a, b) = 0` whenever `a < b`, `a < 0` or `b < 0`.
pub fn binom(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || a < b {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `(-1)^e` as a small signed integer.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_convention() {
        assert_eq!(binom(2, 3), BigInt::zero());
        assert_eq!(binom(-1, 0), BigInt::zero());
        assert_eq!(binom(3, -1), BigInt::zero());
        assert_eq!(binom(-1, -1), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
    }

    #[test]
    fn pascal_rule() {
        for a in 1..30 {
            for b in 1..=a {
                assert_eq!(binom(a, b), binom(a - 1, b - 1) + binom(a - 1, b));
            }
        }
    }

    #[test]
    fn large_values() {
        assert_eq!(binom(100, 50).to_string(), "100891344545564193334812497256");
    }
}

//! q-integers, Gaussian binomial coefficients and elementary symmetric
//! functions on geometric alphabets.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::LaurentPoly;

/// `[n]_q = 1 + q + ... + q^(n-1)`; zero for `n <= 0`.
pub fn q_int(n: i64) -> LaurentPoly {
    LaurentPoly::from_terms((0..n.max(0)).map(|e| (e, 1)))
}

/// `[n]!_q = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: i64) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(), |acc, i| &acc * &q_int(i))
}

/// Gaussian binomial `[n]!_q / ([k]!_q [n-k]!_q)` by exact division.
/// Zero unless `0 <= k <= n`.
pub fn q_binomial(n: i64, k: i64) -> LaurentPoly {
    if k < 0 || k > n {
        return LaurentPoly::zero();
    }
    let k = k.min(n - k);
    // [n]!/[n-k]! = [n-k+1]...[n]
    let numerator = (n - k + 1..=n).fold(LaurentPoly::one(), |acc, i| &acc * &q_int(i));
    numerator
        .div_exact(&q_factorial(k))
        .expect("q-binomial division is exact")
}

/// Gaussian binomial by `[n, k] = [n-1, k-1] + q^k [n-1, k]`.
pub fn q_binomial_pascal(n: i64, k: i64) -> LaurentPoly {
    if k < 0 || k > n {
        return LaurentPoly::zero();
    }
    // row[j] = [m, j] for the current m
    let mut row = vec![LaurentPoly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(row.len() + 1);
        for j in 0..=m {
            let mut entry = if j >= 1 {
                row[(j - 1) as usize].clone()
            } else {
                LaurentPoly::zero()
            };
            if j < m {
                entry += &row[j as usize].shift(j);
            }
            next.push(entry);
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

/// `e_k(q^a, q^(a+1), ..., q^b)`.
///
/// The alphabet is empty when `b = a - 1`. Returns zero for `k < 0`, for
/// `k` larger than the alphabet, and when `b < a - 1`.
pub fn e_spec(k: i64, a: i64, b: i64) -> LaurentPoly {
    if k < 0 || b < a - 1 {
        return LaurentPoly::zero();
    }
    let k = k as usize;
    // dp[j] = e_j over the letters seen so far
    let mut dp = vec![LaurentPoly::zero(); k + 1];
    dp[0] = LaurentPoly::one();
    for e in a..=b {
        for j in (1..=k).rev() {
            let add = dp[j - 1].shift(e);
            dp[j] += &add;
        }
    }
    dp.swap_remove(k)
}

/// Ordinary binomial coefficient as a big integer; zero outside `0..=n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Closed form of `[n, k]_q` at `q = -1`: zero when `n` is even and `k`
/// odd, otherwise `C(floor(n/2), floor(k/2))`.
pub fn q_binomial_at_minus_one(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    if n % 2 == 0 && k % 2 == 1 {
        BigInt::zero()
    } else {
        binomial(n / 2, k / 2)
    }
}

/// Catalan number `C_n`.
pub fn catalan(n: i64) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

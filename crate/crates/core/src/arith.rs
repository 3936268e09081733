//! Small exact-arithmetic helpers shared by the modules.

use crate::error::{Error, Result};

pub fn gcd(a: usize, b: usize) -> usize {
    num_integer::gcd(a, b)
}

pub(crate) fn require_coprime(m: usize, n: usize) -> Result<()> {
    if gcd(m, n) == 1 {
        Ok(())
    } else {
        Err(Error::NotCoprime { m, n })
    }
}

/// Binomial coefficient, exact in `u128`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication.
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// The rational Catalan number `C(m+n, n) / (m+n)` for coprime `m, n`.
pub fn rational_catalan(m: usize, n: usize) -> u128 {
    binomial((m + n) as u64, n as u64) / (m + n) as u128
}

/// `C(k+1, 2)`, the balanced coordinate sum for `k` row minima.
pub(crate) fn triangular(k: usize) -> i64 {
    (k as i64) * (k as i64 + 1) / 2
}

/// The multiplier `a` with `a*n = -1 (mod m)`. Requires `gcd(m,n) = 1`.
pub(crate) fn anderson_multiplier(m: usize, n: usize) -> i64 {
    if m == 1 {
        return 0;
    }
    let (m, n) = (m as i64, n as i64);
    (0..m)
        .find(|a| (a * n + 1).rem_euclid(m) == 0)
        .expect("n is invertible modulo m when gcd(m,n)=1")
}

/// For every residue class modulo `modulus`, the least value of
/// `g + t*step` over generators `g` and `t >= 0`.
///
/// Indexed by residue. Classes without representatives cannot occur when
/// `gcd(step, modulus) = 1` and the generators are nonempty, which callers
/// guarantee.
pub(crate) fn class_minima(generators: &[i64], step: i64, modulus: usize) -> Vec<i64> {
    let mut best: Vec<Option<i64>> = vec![None; modulus];
    for &g in generators {
        for t in 0..modulus as i64 {
            let v = g + t * step;
            let slot = &mut best[v.rem_euclid(modulus as i64) as usize];
            if slot.is_none_or(|b| v < b) {
                *slot = Some(v);
            }
        }
    }
    best.into_iter()
        .map(|b| b.expect("every residue class is reached"))
        .collect()
}

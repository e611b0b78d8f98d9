//! Exact integer and modular arithmetic.
//!
//! Everything here works on 64-bit integers with 128-bit intermediates. The
//! supported input ceiling is [`MAX_VALUE`]; factorization is plain trial
//! division, which stays well under a second at that size.

use crate::error::{Error, Result};

/// Largest integer accepted by [`factorize`] and the routines built on it.
pub const MAX_VALUE: u64 = 1_000_000_000_000;

/// Greatest common divisor, always nonnegative. `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> u64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`.
///
/// When `b != 0` the coefficient `s` is normalized to the least nonnegative
/// residue modulo `|b|/g`, so the result is unique.
pub fn ext_gcd(a: i64, b: i64) -> (u64, i64, i64) {
    let (a, b) = (a as i128, b as i128);
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r < 0 {
        old_r = -old_r;
        old_s = -old_s;
    }
    let g = old_r;
    if g == 0 {
        return (0, 1, 0);
    }
    if b == 0 {
        return (g as u64, old_s as i64, 0);
    }
    let s = old_s.rem_euclid(b.abs() / g);
    let t = (g - s * a) / b;
    (g as u64, s as i64, t as i64)
}

/// Least nonnegative residue of `a` modulo `n`.
pub fn reduce(a: i64, n: u64) -> u64 {
    (a as i128).rem_euclid(n as i128) as u64
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Inverse of `a` modulo `n`, in `[1, n-1]`.
pub fn mod_inverse(a: i64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::PreconditionViolated(format!(
            "modulus must be at least 2, got {n}"
        )));
    }
    let n_signed = i64::try_from(n).map_err(|_| Error::RangeExceeded(format!("modulus {n}")))?;
    let (g, s, _) = ext_gcd(reduce(a, n) as i64, n_signed);
    if g != 1 {
        return Err(Error::NotAUnit {
            value: a,
            modulus: n,
        });
    }
    Ok(reduce(s, n))
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut p = 5u64;
    while p * p <= n {
        if n.is_multiple_of(p) || n.is_multiple_of(p + 2) {
            return false;
        }
        p += 6;
    }
    true
}

/// Prime factorization `value = prod prime^exponent`, primes increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// All divisors, sorted ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, k) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..k {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Number of units modulo `value` (Euler's totient).
    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, k)| p.pow(k - 1) * (p - 1))
            .product()
    }
}

/// Factors `n` by trial division over 2, 3 and then `6k ± 1`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 || n > MAX_VALUE {
        return Err(Error::RangeExceeded(format!(
            "factorize expects 1 <= n <= {MAX_VALUE}, got {n}"
        )));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut divide_out = |p: u64, rest: &mut u64| {
        let mut k = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            k += 1;
        }
        if k > 0 {
            factors.push((p, k));
        }
    };
    divide_out(2, &mut rest);
    divide_out(3, &mut rest);
    let mut p = 5u64;
    while p * p <= rest {
        divide_out(p, &mut rest);
        divide_out(p + 2, &mut rest);
        p += 6;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { value: n, factors })
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.divisors())
}

/// Unordered pairs `(d1, d2)`, `d1 <= d2`, of coprime integers whose product
/// divides `n`. Sorted lexicographically.
pub fn coprime_divisor_pairs(n: u64) -> Result<Vec<(u64, u64)>> {
    let fact = factorize(n)?;
    // Each prime power goes wholly to d1, wholly to d2, or is split off.
    let mut pairs = vec![(1u64, 1u64)];
    for &(p, k) in fact.factors() {
        let mut next = Vec::with_capacity(pairs.len() * (2 * k as usize + 1));
        for &(d1, d2) in &pairs {
            next.push((d1, d2));
            let mut pk = 1;
            for _ in 0..k {
                pk *= p;
                next.push((d1 * pk, d2));
                next.push((d1, d2 * pk));
            }
        }
        pairs = next;
    }
    pairs.retain(|&(d1, d2)| d1 <= d2);
    pairs.sort_unstable();
    Ok(pairs)
}

/// Solves the simultaneous congruences `x = r_i (mod m_i)` for pairwise
/// coprime moduli, returning the least nonnegative solution.
pub fn crt(congruences: &[(i64, u64)]) -> Result<u64> {
    let mut x: u128 = 0;
    let mut modulus: u128 = 1;
    for &(r, m) in congruences {
        if m == 0 {
            return Err(Error::PreconditionViolated("modulus 0 in crt".into()));
        }
        let g = gcd_u64((modulus % m as u128) as u64, m);
        if g != 1 && m != 1 {
            return Err(Error::ModuliNotCoprime(modulus as u64, m));
        }
        let r = reduce(r, m) as u128;
        let m = m as u128;
        // x + modulus * t = r (mod m)
        let step = (modulus % m) as i64;
        let t = if m == 1 {
            0
        } else {
            let inv = mod_inverse(step, m as u64)? as u128;
            ((r + m - x % m) % m) * inv % m
        };
        x += modulus * t;
        modulus = modulus
            .checked_mul(m)
            .filter(|&v| v <= u64::MAX as u128)
            .ok_or_else(|| Error::RangeExceeded("product of crt moduli".into()))?;
    }
    Ok(x as u64)
}

/// Bezout coefficients `c1*d1 + c2*d2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutWitness {
    pub c1: i64,
    pub c2: i64,
    pub d1: u64,
    pub d2: u64,
}

impl BezoutWitness {
    pub fn holds(&self) -> bool {
        self.c1 as i128 * self.d1 as i128 + self.c2 as i128 * self.d2 as i128 == 1
    }
}

/// Finds `c1*d1 + c2*d2 = 1` with neither coefficient divisible by any prime
/// in `primes` (zero counts as divisible).
///
/// Starting from the base solution `(s, t)` of [`ext_gcd`], every solution is
/// `(s + k*d2, t - k*d1)`. For each prime `q` at most two residues of `k` are
/// forbidden; the least allowed residue is kept and the residues are combined
/// with [`crt`], giving the smallest nonnegative `k` of that form.
pub fn bezout_avoiding_primes(d1: u64, d2: u64, primes: &[u64]) -> Result<BezoutWitness> {
    if d1 == 0 || d2 == 0 || d1 > MAX_VALUE || d2 > MAX_VALUE {
        return Err(Error::PreconditionViolated(format!(
            "d1 and d2 must lie in [1, {MAX_VALUE}], got ({d1}, {d2})"
        )));
    }
    if gcd_u64(d1, d2) != 1 {
        return Err(Error::PreconditionViolated(format!("gcd({d1}, {d2}) != 1")));
    }
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    if let Some(&q) = primes.iter().find(|&&q| !is_prime(q)) {
        return Err(Error::PreconditionViolated(format!("{q} is not prime")));
    }
    if primes.first() == Some(&2) && d1 % 2 == 1 && d2 % 2 == 1 {
        return Err(Error::PreconditionViolated(
            "2 is in the prime set but d1 and d2 are both odd".into(),
        ));
    }

    let (_, s, t) = ext_gcd(d1 as i64, d2 as i64);
    let mut congruences = Vec::with_capacity(primes.len());
    for &q in &primes {
        let mut forbidden = Vec::with_capacity(2);
        // s + k*d2 = 0 (mod q)
        if !d2.is_multiple_of(q) {
            let inv = mod_inverse(d2 as i64, q)?;
            forbidden.push(mul_mod(reduce(-s, q), inv, q));
        }
        // t - k*d1 = 0 (mod q)
        if !d1.is_multiple_of(q) {
            let inv = mod_inverse(d1 as i64, q)?;
            forbidden.push(mul_mod(reduce(t, q), inv, q));
        }
        let residue = (0..q).find(|r| !forbidden.contains(r)).ok_or_else(|| {
            Error::PreconditionViolated(format!("no admissible residue modulo {q}"))
        })?;
        congruences.push((residue as i64, q));
    }
    let k = crt(&congruences)? as i128;
    let c1 = s as i128 + k * d2 as i128;
    let c2 = t as i128 - k * d1 as i128;
    let narrow =
        |c: i128| i64::try_from(c).map_err(|_| Error::RangeExceeded(format!("coefficient {c}")));
    Ok(BezoutWitness {
        c1: narrow(c1)?,
        c2: narrow(c2)?,
        d1,
        d2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(21, 14), 7);
        assert_eq!(gcd(5, 0), 5);
        assert_eq!(gcd(17, 21), 1);
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(-12, 18), 6);
    }

    #[test]
    fn ext_gcd_examples() {
        assert_eq!(ext_gcd(5, 3), (1, 2, -3));
        assert_eq!(ext_gcd(6, 4), (2, 1, -1));
        assert_eq!(ext_gcd(1, 0), (1, 1, 0));
        assert_eq!(ext_gcd(0, 0).0, 0);
        let (g, s, t) = ext_gcd(-35, 15);
        assert_eq!(g, 5);
        assert_eq!(-35 * s + 15 * t, 5);
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(2, 21), Ok(11));
        assert_eq!(mod_inverse(1, 9), Ok(1));
        assert_eq!(
            mod_inverse(3, 9),
            Err(Error::NotAUnit {
                value: 3,
                modulus: 9
            })
        );
        assert_eq!(mod_inverse(-4, 21), Ok(5));
        assert!(mod_inverse(1, 1).is_err());
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(
            factorize(2001).unwrap().factors(),
            &[(3, 1), (23, 1), (29, 1)]
        );
        assert_eq!(factorize(9).unwrap().factors(), &[(3, 2)]);
        assert_eq!(factorize(54573).unwrap().factors(), &[(3, 1), (18191, 1)]);
        assert!(factorize(1).unwrap().factors().is_empty());
        assert!(factorize(0).is_err());
        assert!(factorize(MAX_VALUE + 1).is_err());
        // 999983 is the largest prime below 10^6.
        let big = factorize(999_983 * 999_983).unwrap();
        assert_eq!(big.factors(), &[(999_983, 2)]);
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(9).unwrap(), vec![1, 3, 9]);
        assert_eq!(divisors(15).unwrap(), vec![1, 3, 5, 15]);
        assert_eq!(divisors(21).unwrap(), vec![1, 3, 7, 21]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
    }

    #[test]
    fn coprime_pair_examples() {
        assert_eq!(
            coprime_divisor_pairs(15).unwrap(),
            vec![(1, 1), (1, 3), (1, 5), (1, 15), (3, 5)]
        );
        assert_eq!(
            coprime_divisor_pairs(9).unwrap(),
            vec![(1, 1), (1, 3), (1, 9)]
        );
        assert_eq!(coprime_divisor_pairs(1).unwrap(), vec![(1, 1)]);
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt(&[(1, 3), (2, 5)]), Ok(7));
        assert_eq!(crt(&[(0, 7)]), Ok(0));
        assert!(matches!(
            crt(&[(1, 2), (1, 4)]),
            Err(Error::ModuliNotCoprime(_, _))
        ));
        assert_eq!(crt(&[]), Ok(0));
        assert_eq!(crt(&[(-1, 4), (0, 1), (4, 9)]), Ok(31));
    }

    #[test]
    fn bezout_avoiding_examples() {
        let w = bezout_avoiding_primes(5, 3, &[3, 5]).unwrap();
        assert!(w.holds());
        for q in [3, 5] {
            assert_ne!(w.c1 % q, 0);
            assert_ne!(w.c2 % q, 0);
        }

        let w = bezout_avoiding_primes(7, 1, &[]).unwrap();
        assert_eq!((w.c1, w.c2), (0, 1));

        assert!(matches!(
            bezout_avoiding_primes(3, 3, &[7]),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            bezout_avoiding_primes(3, 5, &[2]),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            bezout_avoiding_primes(3, 5, &[9]),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn bezout_avoiding_handles_two() {
        let w = bezout_avoiding_primes(4, 9, &[2, 3]).unwrap();
        assert!(w.holds());
        assert!(w.c1 % 2 != 0 && w.c2 % 2 != 0);
        assert!(w.c1 % 3 != 0 && w.c2 % 3 != 0);
    }

    #[test]
    fn bezout_avoiding_is_deterministic() {
        let a = bezout_avoiding_primes(35, 12, &[5, 7, 11]).unwrap();
        let b = bezout_avoiding_primes(35, 12, &[11, 7, 5, 7]).unwrap();
        assert_eq!(a, b);
    }
}

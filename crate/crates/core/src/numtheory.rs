//! Multiplicative functions, divisor machinery, valuations and CRT.
//!
//! Everything here works on `u64`. Inputs in this crate stay at desk scale, so
//! factorization is trial division, with a deterministic Miller-Rabin test used
//! to stop early once the cofactor is prime.

use num_integer::Integer;

use crate::{Error, Result};

/// Prime factorization `n = prod p^e`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// Exponent of `l`, zero when `l` does not occur.
    pub fn exponent(&self, l: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(p, _)| p == l)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while rest > 1 {
        if is_prime(rest) {
            factors.push((rest, 1));
            break;
        }
        if d.checked_mul(d).is_none_or(|sq| sq > rest) {
            factors.push((rest, 1));
            break;
        }
        if rest % d == 0 {
            let mut e = 0;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    Ok(Factorization { factors })
}

fn fact(n: u64) -> Factorization {
    factorize(n).expect("positive argument")
}

/// If `q = p^a` with `p` prime and `a >= 1`, returns `(p, a)`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    match fact(q.max(1)).factors() {
        [(p, a)] => Ok((*p, *a)),
        _ => Err(Error::NotPrimePower(q)),
    }
}

pub fn euler_phi(n: u64) -> u64 {
    fact(n).primes().fold(n, |acc, l| acc / l * (l - 1))
}

pub fn psi(n: u64) -> u64 {
    fact(n).primes().fold(n, |acc, l| acc / l * (l + 1))
}

/// `n * prod_{l | n} (-(l - 1))`, the Dirichlet inverse of `n -> euler_phi(n^2)`.
pub fn phi_tilde(n: u64) -> i64 {
    fact(n)
        .primes()
        .fold(n as i64, |acc, l| acc * -((l - 1) as i64))
}

pub fn sigma(n: u64) -> u64 {
    fact(n)
        .factors()
        .iter()
        .map(|&(p, e)| (p.pow(e + 1) - 1) / (p - 1))
        .product()
}

pub fn omega(n: u64) -> u32 {
    fact(n).factors().len() as u32
}

/// `(-1)^omega(n)`.
pub fn liouville(n: u64) -> i64 {
    if omega(n) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: u64) -> u64 {
    fact(n).primes().product()
}

/// `v_l(n)`; `n` must be nonzero.
pub fn valuation(l: u64, mut n: u64) -> u32 {
    debug_assert!(l >= 2 && n != 0);
    let mut v = 0;
    while n % l == 0 {
        n /= l;
        v += 1;
    }
    v
}

/// `v_l(n)` for a signed argument; `None` for `n = 0`.
pub fn valuation_signed(l: u64, n: i64) -> Option<u32> {
    (n != 0).then(|| valuation(l, n.unsigned_abs()))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in fact(n).factors() {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Divisors `nu` of `n` such that every prime of `nu` occurs in `nu` to its
/// full power in `n`.
pub fn full_divisors(n: u64) -> Vec<u64> {
    let f = fact(n);
    let blocks: Vec<u64> = f.factors().iter().map(|&(p, e)| p.pow(e)).collect();
    let mut out = Vec::with_capacity(1 << blocks.len());
    for mask in 0u32..(1 << blocks.len()) {
        out.push(
            blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, b)| b)
                .product(),
        );
    }
    out.sort_unstable();
    out
}

/// All `mu` with the same prime support as `m` and
/// `1 <= v_l(mu) <= v_l(n1 / n2) - 1` for each prime `l | m`.
pub fn prec_list(m: u64, n1: u64, n2: u64) -> Result<Vec<u64>> {
    if n2 == 0 || n1 == 0 || m == 0 {
        return Err(Error::Zero);
    }
    if n1 % n2 != 0 {
        return Err(Error::NotDivisible {
            divisor: n2,
            dividend: n1,
        });
    }
    let quotient = n1 / n2;
    let mut out = vec![1u64];
    for l in fact(m).primes() {
        let top = valuation(l, quotient);
        if top < 2 {
            return Ok(Vec::new());
        }
        let mut next = Vec::new();
        for &base in &out {
            let mut pk = l;
            for _ in 1..top {
                next.push(base * pk);
                pk *= l;
            }
        }
        out = next;
    }
    if m == 1 {
        // empty support: only mu = 1 has rad(mu) = rad(1)
        return Ok(vec![1]);
    }
    out.sort_unstable();
    Ok(out)
}

/// Inverse of `a` modulo `m`, if it exists. `m = 1` yields `0`.
pub fn mod_inverse(a: i64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let m_i = m as i128;
    let a = (a as i128).rem_euclid(m_i);
    let egcd = a.extended_gcd(&m_i);
    (egcd.gcd == 1).then(|| egcd.x.rem_euclid(m_i) as u64)
}

/// Residue of a signed integer modulo `m`.
pub fn modp(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

/// `a == b (mod c)`.
pub fn congruent(a: i64, b: i64, c: u64) -> bool {
    (a as i128 - b as i128).rem_euclid(c as i128) == 0
}

/// Combine residues with pairwise coprime moduli into one residue modulo the
/// product. Returns `(value, modulus)`.
pub fn crt_combine(residues: &[(i64, u64)]) -> Result<(u64, u64)> {
    let mut value: u64 = 0;
    let mut modulus: u64 = 1;
    for &(r, m) in residues {
        if m == 0 {
            return Err(Error::Zero);
        }
        if modulus.gcd(&m) != 1 {
            return Err(Error::NotCoprime(modulus, m));
        }
        let r = modp(r, m);
        // value + modulus * s == r (mod m)
        let inv = mod_inverse(modulus as i64, m).expect("coprime moduli");
        let diff = (r as i128 - value as i128).rem_euclid(m as i128) as u64;
        let s = mul_mod(diff, inv, m.max(1));
        let new_modulus = modulus * m;
        value = ((value as u128 + modulus as u128 * s as u128) % new_modulus as u128) as u64;
        modulus = new_modulus;
    }
    Ok((value, modulus))
}

/// Solve `x = a (mod m)`, `x = b (mod n)` for arbitrary moduli. Returns the
/// solution modulo `lcm(m, n)`, or `None` when `a != b (mod gcd(m, n))`.
pub fn crt_pair(a: i64, m: u64, b: i64, n: u64) -> Option<(u64, u64)> {
    let g = m.gcd(&n);
    if !congruent(a, b, g) {
        return None;
    }
    let l = m / g * n;
    let (m_r, n_r) = (m / g, n / g);
    // x = a + m k with m k = b - a (mod n)  <=>  m_r k = (b - a)/g (mod n_r)
    let diff = (b as i128 - a as i128) / g as i128;
    let k = if n_r == 1 {
        0
    } else {
        let inv = mod_inverse(m_r as i64, n_r).expect("m / g and n / g are coprime");
        (diff.rem_euclid(n_r as i128) * inv as i128).rem_euclid(n_r as i128)
    };
    let x = (a as i128 + m as i128 * k).rem_euclid(l as i128);
    Some((x as u64, l))
}

/// Largest `s` with `s * s <= n`.
pub fn isqrt(n: u64) -> u64 {
    let mut s = (n as f64).sqrt() as u64;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let s = isqrt(n);
    (s * s == n).then_some(s)
}

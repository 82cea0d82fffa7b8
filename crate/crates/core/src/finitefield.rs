//! Arithmetic in `F_q`, `q = p^n`, as `F_p[x] / (f)` for the lexicographically
//! smallest monic irreducible `f` of degree `n`.
//!
//! Elements are packed as the integer `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`
//! of their coefficient vector, and the context precomputes addition,
//! multiplication and inversion tables. Desk-scale fields only.

use std::fmt;

use crate::numtheory::is_prime;
use crate::{Error, Result};

/// Element of some [`FieldCtx`]; only meaningful together with its context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Position in [`FieldCtx::enumerate`] order.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A polynomial over `F_p`, coefficients ascending by degree.
type Poly = Vec<u32>;

#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    n: u32,
    q: u32,
    modulus: Poly,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .finish()
    }
}

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let mut r: Poly = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let sub = (lead as u64 * mc as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    trim(r)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Monic polynomials of the given degree, low coefficients varying slowest,
/// i.e. in lexicographic order of `(c_0, c_1, ..., c_{deg-1})`.
fn monic_polys(p: u32, deg: u32) -> impl Iterator<Item = Poly> {
    let count = (p as u64).pow(deg);
    (0..count).map(move |mut idx| {
        let mut coeffs = vec![0u32; deg as usize + 1];
        for i in (0..deg as usize).rev() {
            coeffs[i] = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        coeffs[deg as usize] = 1;
        coeffs
    })
}

/// Irreducibility by exhaustive trial division by monic polynomials of degree
/// at most `deg / 2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() as u32 - 1;
    (1..=deg / 2).all(|d| monic_polys(p, d).all(|g| !poly_rem(f, &g, p).is_empty()))
}

impl FieldCtx {
    pub fn new(p: u64, n: u32) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidParams(
                "extension degree must be at least 1".into(),
            ));
        }
        let q64 = p.checked_pow(n).filter(|&q| q <= 1 << 12).ok_or_else(|| {
            Error::InvalidParams(format!("F_{p}^{n} is too large for table arithmetic"))
        })?;
        let p = p as u32;
        let q = q64 as u32;
        let modulus = monic_polys(p, n)
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");

        let mut ctx = FieldCtx {
            p,
            n,
            q,
            modulus,
            add: vec![0; (q * q) as usize],
            mul: vec![0; (q * q) as usize],
            neg: vec![0; q as usize],
            inv: vec![0; q as usize],
        };
        for a in 0..q {
            let pa = ctx.poly_of(a);
            let neg: Poly = pa.iter().map(|&c| (p - c) % p).collect();
            ctx.neg[a as usize] = ctx.pack(&neg);
            for b in 0..q {
                let pb = ctx.poly_of(b);
                let sum: Poly = (0..n as usize)
                    .map(|i| {
                        (pa.get(i).copied().unwrap_or(0) + pb.get(i).copied().unwrap_or(0)) % p
                    })
                    .collect();
                ctx.add[(a * q + b) as usize] = ctx.pack(&sum);
                let prod = poly_rem(&poly_mul(&pa, &pb, p), &ctx.modulus, p);
                ctx.mul[(a * q + b) as usize] = ctx.pack(&prod);
            }
        }
        for a in 1..q {
            let inv = (1..q)
                .find(|&b| ctx.mul[(a * q + b) as usize] == 1)
                .expect("nonzero elements are invertible modulo an irreducible");
            ctx.inv[a as usize] = inv;
        }
        Ok(ctx)
    }

    /// Context for `F_q`, `q` a prime power.
    pub fn for_order(q: u64) -> Result<FieldCtx> {
        let (p, n) = crate::numtheory::prime_power(q)?;
        FieldCtx::new(p, n)
    }

    fn poly_of(&self, mut idx: u32) -> Poly {
        let mut out = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            out.push(idx % self.p);
            idx /= self.p;
        }
        trim(out)
    }

    fn pack(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    /// Defining polynomial, coefficients ascending by degree (monic).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Coefficient vector of length `n`, ascending by degree.
    pub fn coefficients(&self, a: FieldElem) -> Vec<u32> {
        let mut c = self.poly_of(a.0);
        c.resize(self.n as usize, 0);
        c
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> FieldElem {
        let reduced: Poly = coeffs.iter().map(|&c| c % self.p).collect();
        FieldElem(self.pack(&poly_rem(&reduced, &self.modulus, self.p)))
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, k: i64) -> FieldElem {
        FieldElem(k.rem_euclid(self.p as i64) as u32)
    }

    /// The class of `x`.
    pub fn generator(&self) -> FieldElem {
        self.from_coefficients(&[0, 1])
    }

    /// All `q` elements, zero first.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn element(&self, index: usize) -> FieldElem {
        assert!(index < self.q as usize);
        FieldElem(index as u32)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.add[(a.0 * self.q + b.0) as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.mul[(a.0 * self.q + b.0) as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg[a.0 as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            Err(Error::ZeroInverse(self.q as u64))
        } else {
            Ok(FieldElem(self.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `k * a` for an integer `k`.
    pub fn scale(&self, k: i64, a: FieldElem) -> FieldElem {
        self.mul(self.from_int(k), a)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != FieldElem::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }
}

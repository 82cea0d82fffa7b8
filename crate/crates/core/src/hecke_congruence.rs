//! Congruence data behind the elliptic term: the well-defined residue
//! `d q + d^{-1}`, its indicators `D(t; n)` and `D_{nu,mu}(t)`, the root sets
//! `S(N, m, t, q)`, the counts `W_{N,M,m}(d)` and the sums `C_{N,M}(t, q, d)`.

use num_integer::Integer;

use crate::numtheory::{congruent, crt_combine, factorize, mod_inverse, modp, psi, valuation};
use crate::quadforms::h_w;
use crate::{Error, Result, Scalar};

/// `(n1, n2, q, d)` with `n2 | n1`, `d` a unit mod `n1` and `d^2 q = 1 (mod n2)`.
///
/// `n1` is the full level; when it carries a power of the characteristic of
/// `q`, `d` must be a unit modulo that power too.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongParams {
    n1: u64,
    n2: u64,
    q: u64,
    d: u64,
}

impl CongParams {
    pub fn new(n1: u64, n2: u64, q: u64, d: i64) -> Result<Self> {
        if n1 == 0 || n2 == 0 || q == 0 {
            return Err(Error::Zero);
        }
        if n1 % n2 != 0 {
            return Err(Error::NotDivisible {
                divisor: n2,
                dividend: n1,
            });
        }
        let d_res = modp(d, n1);
        if n1 > 1 && d_res.gcd(&n1) != 1 {
            return Err(Error::NotUnit {
                value: d,
                modulus: n1,
            });
        }
        let params = CongParams {
            n1,
            n2,
            q,
            d: d_res,
        };
        if !congruent(params.d_squared_q(), 1, n2) {
            return Err(Error::InvalidParams(format!(
                "d^2 q = 1 (mod {n2}) fails for d = {d}, q = {q}"
            )));
        }
        Ok(params)
    }

    pub fn n1(&self) -> u64 {
        self.n1
    }

    pub fn n2(&self) -> u64 {
        self.n2
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Residue of `d` in `[0, n1)`.
    pub fn d(&self) -> u64 {
        self.d
    }

    /// Same level data with `d` replaced by `-d`.
    pub fn negated(&self) -> Self {
        CongParams {
            d: modp(-(self.d as i64), self.n1),
            ..*self
        }
    }

    /// `d^2 q - 1` reduced modulo `n1^2` (enough for every divisibility test
    /// against divisors of `n1 * gcd(d^2 q - 1, n1)`).
    fn d_squared_q(&self) -> i64 {
        let m = (self.n1 as i128).pow(2).max(1);
        let v = (self.d as i128 * self.d as i128 % m) * (self.q as i128 % m) % m;
        v as i64
    }

    /// `delta_n(d^2 q, 1)` for `n | n1^2`.
    pub fn d_squared_q_is_one(&self, n: u64) -> bool {
        debug_assert!((self.n1 * self.n1) % n == 0);
        congruent(self.d_squared_q(), 1, n)
    }

    /// `n1 * gcd(d^2 q - 1, n1)`: every `n` dividing this has a
    /// lift-independent value of `d q + d^{-1}`.
    pub fn lift_modulus(&self) -> u64 {
        let g = ((self.d_squared_q() as i128 - 1).rem_euclid(self.n1 as i128) as u64).gcd(&self.n1);
        self.n1 * g
    }

    /// Checks that `n` stays inside the range where lifts agree, allowing
    /// primes not dividing `n1` (lifted with residue 1).
    fn check_modulus(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::Zero);
        }
        let bound = self.lift_modulus();
        for &(l, e) in factorize(n)?.factors() {
            if self.n1 % l == 0 && e > valuation(l, bound) {
                return Err(Error::NotDivisible {
                    divisor: n,
                    dividend: bound,
                });
            }
        }
        Ok(())
    }

    /// `d~ q + d~^{-1} (mod n)` for a lift `d~` built by CRT: `d` at primes of
    /// `n1`, `1` at primes new to `n`.
    pub fn lift_value(&self, n: u64) -> Result<u64> {
        self.check_modulus(n)?;
        if n == 1 {
            return Ok(0);
        }
        let (mut old, mut new) = (1u64, 1u64);
        for &(l, e) in factorize(n)?.factors() {
            if self.n1 % l == 0 {
                old *= l.pow(e);
            } else {
                new *= l.pow(e);
            }
        }
        let (lift, _) = crt_combine(&[(self.d as i64, old), (1, new)])?;
        Ok(Self::residue_of(lift, self.q, n))
    }

    fn residue_of(lift: u64, q: u64, n: u64) -> u64 {
        let inv = mod_inverse(lift as i64, n).expect("lift is a unit");
        ((lift as u128 * q as u128 + inv as u128) % n as u128) as u64
    }

    /// `d~ q + d~^{-1} (mod n)` for every unit `d~` modulo `lcm(n1, n)` lying
    /// over `d`; deduplicated and sorted. Exhaustive, for tests.
    pub fn all_lift_values(&self, n: u64) -> Result<Vec<u64>> {
        self.check_modulus(n)?;
        let big = self.n1.lcm(&n);
        let mut out: Vec<u64> = (0..big / self.n1)
            .map(|j| self.d + j * self.n1)
            .filter(|x| x.gcd(&big) == 1 || big == 1)
            .map(|x| Self::residue_of(x, self.q, n))
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `D(t; n)`: whether `d q + d^{-1} = t (mod n)`.
    pub fn indicator(&self, t: i64, n: u64) -> Result<bool> {
        Ok(congruent(self.lift_value(n)? as i64, t, n))
    }

    fn indicator_int(&self, t: i64, n: u64) -> Result<i64> {
        self.indicator(t, n).map(i64::from)
    }

    /// `D_{nu,mu}(t)`: over primes `l | nu`, the factor
    /// `D(t; l^{e-1}) - D(t; l^e)` with `e = v_l(n1 n2 mu)` when `l | mu`, and
    /// `D(t; l^{v_l(n1 n2)})` otherwise.
    pub fn d_nu_mu(&self, nu: u64, mu: u64, t: i64) -> Result<i64> {
        if nu == 0 || mu == 0 {
            return Err(Error::Zero);
        }
        let n12 = self.n1 * self.n2;
        let mut acc = 1i64;
        for l in factorize(nu)?.primes() {
            let factor = if mu % l == 0 {
                let e = valuation(l, n12 * mu);
                self.indicator_int(t, l.pow(e - 1))? - self.indicator_int(t, l.pow(e))?
            } else {
                self.indicator_int(t, l.pow(valuation(l, n12)))?
            };
            acc *= factor;
            if acc == 0 {
                break;
            }
        }
        Ok(acc)
    }
}

/// Units `c` mod `n` admitting a lift `c~` mod `n * gcd(n, m)` with
/// `c~^2 - t c~ + q = 0`. Found by scanning all units mod `n * gcd(n, m)`.
pub fn s_set(n: u64, m: u64, t: i64, q: u64) -> Vec<u64> {
    let big = n * n.gcd(&m);
    let mut out: Vec<u64> = (0..big)
        .filter(|c| big == 1 || c.gcd(&big) == 1)
        .filter(|&c| {
            let c = c as i128;
            (c * c - t as i128 * c + q as i128).rem_euclid(big as i128) == 0
        })
        .map(|c| c % n)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `W_{N,M,m}(d) = #{c in S(MN, m, t, q) : c = d^{-1} (mod N)}`.
pub fn w_count(n: u64, big_m: u64, m: u64, d: i64, t: i64, q: u64) -> Result<u64> {
    let d_inv = mod_inverse(d, n).ok_or(Error::NotUnit {
        value: d,
        modulus: n,
    })?;
    Ok(s_set(big_m * n, m, t, q)
        .into_iter()
        .filter(|&c| congruent(c as i64, d_inv as i64, n))
        .count() as u64)
}

/// Positive `m` with `m^2 | delta`, for `delta != 0`.
pub(crate) fn square_divisors(delta: i64) -> impl Iterator<Item = u64> {
    let a = delta.unsigned_abs();
    (1u64..)
        .take_while(move |m| m * m <= a)
        .filter(move |m| a % (m * m) == 0)
}

/// `C_{N,M}(t, q, d) = sum_{m^2 | t^2 - 4q} h_w((t^2 - 4q)/m^2)
/// psi(MN)/psi(MN/(MN, m)) W_{N,M,m}(d)`.
pub fn c_nm<S: Scalar>(n: u64, big_m: u64, t: i64, q: u64, d: i64) -> Result<S> {
    let delta = t * t - 4 * q as i64;
    if delta >= 0 {
        return Err(Error::OutsideHasse { t, q });
    }
    if n % big_m != 0 {
        return Err(Error::NotDivisible {
            divisor: big_m,
            dividend: n,
        });
    }
    let mn = big_m * n;
    let mut total = S::zero();
    for m in square_divisors(delta) {
        let hw: S = h_w(delta / (m * m) as i64)?;
        if hw == S::zero() {
            continue;
        }
        let w = w_count(n, big_m, m, d, t, q)?;
        if w == 0 {
            continue;
        }
        let ratio = S::ratio(psi(mn) as i64, psi(mn / mn.gcd(&m)) as i64);
        total = total + hw * ratio * S::from_u64_lossless(w);
    }
    Ok(total)
}

/// Units modulo `n`, ascending.
pub fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|x| x.gcd(&n) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{divisors, euler_phi, prime_power};
    use crate::ExactRat;

    #[test]
    fn lift_examples() {
        // level 1 with a new prime 2: residue 1 is used, 1*2 + 1 = 3 = 1 (mod 2)
        let p = CongParams::new(1, 1, 2, 1).unwrap();
        assert_eq!(p.lift_value(2).unwrap(), 1);
        // n1 = 4, n2 = 2, q = 9, d = 1: all lifts mod 8 agree
        let p = CongParams::new(4, 2, 9, 1).unwrap();
        assert_eq!(p.lift_modulus(), 16);
        assert_eq!(p.all_lift_values(8).unwrap(), vec![2]);
        assert_eq!(p.lift_value(8).unwrap(), 2);
        for n in [2, 4, 8, 16] {
            assert_eq!(p.lift_value(n).unwrap(), 10 % n);
        }
        assert!(p.lift_value(32).is_err());
        assert!(CongParams::new(4, 2, 9, 2).is_err());
        assert!(CongParams::new(4, 3, 9, 1).is_err());
        assert!(CongParams::new(5, 5, 2, 1).is_err());
    }

    #[test]
    fn indicator_examples() {
        for q in [2u64, 3, 4, 5, 7, 9] {
            let p = CongParams::new(1, 1, q, 1).unwrap();
            for t in -6i64..=6 {
                assert!(p.indicator(t, 1).unwrap());
            }
        }
        let p = CongParams::new(2, 1, 2, 1).unwrap();
        assert!(p.indicator(1, 2).unwrap());
        // d = 1: D(t; n) = [n | q + 1 - t]
        for n1 in 1..=12u64 {
            for q in [5u64, 7, 11, 13] {
                if n1.gcd(&q) != 1 {
                    continue;
                }
                let p = CongParams::new(n1, 1, q, 1).unwrap();
                for n in divisors(n1) {
                    for t in -7i64..=7 {
                        assert_eq!(
                            p.indicator(t, n).unwrap(),
                            (q as i64 + 1 - t) % n as i64 == 0
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn d_nu_mu_examples() {
        let p = CongParams::new(2, 1, 5, 1).unwrap();
        assert_eq!(p.d_nu_mu(1, 1, 3).unwrap(), 1);
        assert_eq!(p.d_nu_mu(2, 1, 2).unwrap(), 1);
        // d = 1, l | mu: factor is 1 iff v_l(q + 1 - t) = v_l(n1 n2 mu) - 1
        let p = CongParams::new(8, 1, 9, 1).unwrap();
        for t in -5i64..=5 {
            let e = valuation(2, 8 * 2);
            let v = crate::numtheory::valuation_signed(2, 10 - t);
            let expected = i64::from(v == Some(e - 1));
            assert_eq!(p.d_nu_mu(2, 2, t).unwrap(), expected, "t = {t}");
        }
    }

    #[test]
    fn indicator_descends_to_divisors() {
        for n1 in 1..=24u64 {
            for n2 in divisors(n1) {
                for q in [2u64, 3, 4, 5, 7, 8, 9] {
                    if n1.gcd(&q) != 1 {
                        continue;
                    }
                    for d in units(n1) {
                        let Ok(p) = CongParams::new(n1, n2, q, d as i64) else {
                            continue;
                        };
                        for n in divisors(p.lift_modulus()) {
                            for m in divisors(n) {
                                for t in -6i64..=6 {
                                    if p.indicator(t, n).unwrap() {
                                        assert!(p.indicator(t, m).unwrap());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn s_set_examples() {
        assert_eq!(s_set(1, 1, 3, 5), vec![0]);
        // p | t leaves no unit roots modulo a power of p
        for (pr, q) in [(2u64, 2u64), (4, 4), (3, 9), (9, 3), (8, 2)] {
            let (p, _) = prime_power(pr).unwrap();
            for t in (-6i64..=6).filter(|t| t % p as i64 == 0) {
                for m in 1..=4 {
                    assert!(s_set(pr, m, t, q).is_empty());
                }
            }
        }
        assert_eq!(s_set(4, 1, 1, 4), vec![1]);
    }

    #[test]
    fn w_examples() {
        for q in [2u64, 3, 5] {
            for t in -3i64..=3 {
                if t * t < 4 * q as i64 {
                    assert_eq!(w_count(1, 1, 1, 1, t, q).unwrap(), 1);
                }
            }
        }
        assert!(w_count(4, 1, 1, 2, 1, 3).is_err());
    }

    #[test]
    fn c_level_one() {
        let c: ExactRat = c_nm(1, 1, 1, 2, 1).unwrap();
        assert_eq!(c, ExactRat::from_int(1));
        assert!(c_nm::<ExactRat>(1, 1, 3, 2, 1).is_err());
        assert!(c_nm::<ExactRat>(4, 3, 1, 2, 1).is_err());
    }

    #[test]
    fn unit_counts() {
        for n in 1..50 {
            assert_eq!(units(n).len() as u64, euler_phi(n));
        }
    }
}

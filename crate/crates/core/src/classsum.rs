//! Class-number sums `H_{n1,n2}(t, q, d)` weighted by the congruence
//! indicators, and the class-sum route to `C_{N,M}(t, q, d)`.

use num_integer::Integer;

use crate::hecke_congruence::CongParams;
use crate::numtheory::{
    divisors, euler_phi, full_divisors, liouville, prec_list, prime_power, psi,
};
use crate::quadforms::hurwitz_h_quotient;
use crate::{Error, Result, Scalar};

/// `H_{n1,n2}(t, q, d)` at the level data of `params` (its `n1` is the whole
/// level).
///
/// The leading term is `1/2 H((t^2 - 4q)/n2^2) D(t; n1 n2)`. Each full
/// divisor `m >= 2` of `n1` and each `mu` below it adds
/// `lambda(m) 1/2 H((t^2 - 4q)/(n2 mu)^2) delta_{n2 mu}(d^2 q, 1) D_{n1,mu}(t)`.
/// Terms whose congruence factor vanishes are skipped before any indicator
/// is evaluated.
pub fn h_sum<S: Scalar>(params: &CongParams, t: i64) -> Result<S> {
    let q = params.q();
    let delta = t * t - 4 * q as i64;
    if delta >= 0 {
        return Err(Error::OutsideHasse { t, q });
    }
    let (n1, n2) = (params.n1(), params.n2());
    let half = S::ratio(1, 2);
    let mut total = S::zero();

    let n2_sq = (n2 * n2) as i64;
    if params.indicator(t, n1 * n2)? {
        total = total + half.clone() * hurwitz_h_quotient::<S>(delta, n2_sq);
    }

    for m in full_divisors(n1).into_iter().filter(|&m| m >= 2) {
        let sign = liouville(m);
        for mu in prec_list(m, n1, n2)? {
            let modulus = n2 * mu;
            if !params.d_squared_q_is_one(modulus) {
                continue;
            }
            let h: S = hurwitz_h_quotient(delta, (modulus * modulus) as i64);
            if h == S::zero() {
                continue;
            }
            let d = params.d_nu_mu(n1, mu, t)?;
            if d != 0 {
                total = total + half.clone() * S::from_int(sign * d) * h;
            }
        }
    }
    Ok(total)
}

/// `H_{p^r n1, n2}(t, q, d)` evaluated from the definition at the composite
/// level, where `p^r` is a positive power of the characteristic of `q`.
pub fn h_sum_p_level<S: Scalar>(
    p_power: u64,
    n1: u64,
    n2: u64,
    q: u64,
    d: i64,
    t: i64,
) -> Result<S> {
    let (p, _) = prime_power(q)?;
    let (p_r, r) = prime_power(p_power)?;
    if p_r != p || r == 0 {
        return Err(Error::InvalidParams(format!(
            "{p_power} is not a positive power of the characteristic of {q}"
        )));
    }
    if n1.gcd(&q) != 1 {
        return Err(Error::NotCoprime(n1, q));
    }
    let params = CongParams::new(p_power * n1, n2, q, d)?;
    h_sum(&params, t)
}

/// `C_{N,M}(t, q, d)` assembled from class sums:
/// `2 psi(N^2)/psi(N^2/M^2) sum_{Lam | L/M} phi(Lam^2) phi(N/(M Lam))/phi(N/M) H_{N, Lam M}(t, q, d)`
/// with `L = gcd(d^2 q - 1, N)`.
pub fn c_nm_from_class_sums<S: Scalar>(n: u64, big_m: u64, t: i64, q: u64, d: i64) -> Result<S> {
    let base = CongParams::new(n, big_m, q, d)?;
    let l = gcd_d2q_minus_one(&base);
    let mut inner = S::zero();
    for lam in divisors(l / big_m) {
        let params = CongParams::new(n, lam * big_m, q, d)?;
        let weight = S::ratio(
            (euler_phi(lam * lam) * euler_phi(n / (big_m * lam))) as i64,
            euler_phi(n / big_m) as i64,
        );
        inner = inner + weight * h_sum::<S>(&params, t)?;
    }
    let scale = S::ratio(2 * psi(n * n) as i64, psi(n * n / (big_m * big_m)) as i64);
    Ok(scale * inner)
}

/// `gcd(d^2 q - 1, n1)` for the level data.
pub fn gcd_d2q_minus_one(params: &CongParams) -> u64 {
    divisors(params.n1())
        .into_iter()
        .rev()
        .find(|&x| params.d_squared_q_is_one(x))
        .unwrap_or(1)
}

//! Trace of `T_q <d>` on weight-`k` cusp forms for `Gamma(p^r N, M)`, split
//! into identity, elliptic, hyperbolic and dual contributions, together with
//! the elliptic quantity `T_{level,lambda}(q, d)` and the closed form for the
//! moments of `U_{k-2}(t_E, q)` over curves containing a given group.

use num_integer::Integer;

use crate::chebyshev::cheb_u_norm;
use crate::classsum::{gcd_d2q_minus_one, h_sum};
use crate::curves::AbelianSpec;
use crate::hecke_congruence::{c_nm, CongParams};
use crate::numtheory::{
    congruent, crt_pair, divisors, euler_phi, exact_sqrt, isqrt, phi_tilde, prime_power, psi,
    valuation,
};
use crate::{Error, Result, Scalar};

/// Level data `p^r N`, the auxiliary divisor `M | N`, the Hecke index `q`, the
/// diamond index `d` and the weight `k`. `p` is the characteristic of `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceParams {
    n: u64,
    m: u64,
    q: u64,
    d: i64,
    k: u32,
    r: u32,
    p: u64,
}

impl TraceParams {
    pub fn new(n: u64, m: u64, q: u64, d: i64, k: u32, r: u32) -> Result<Self> {
        let (p, _) = prime_power(q)?;
        if n == 0 || m == 0 {
            return Err(Error::Zero);
        }
        if k < 2 {
            return Err(Error::InvalidParams(format!("weight {k} < 2")));
        }
        if n % m != 0 {
            return Err(Error::NotDivisible {
                divisor: m,
                dividend: n,
            });
        }
        if n.gcd(&q) != 1 {
            return Err(Error::NotCoprime(n, q));
        }
        let params = TraceParams {
            n,
            m,
            q,
            d,
            k,
            r,
            p,
        };
        // validates d as a unit mod the level and d^2 q = 1 (mod M)
        params.cong(m)?;
        Ok(params)
    }

    /// Splits `level = p^r N` by the characteristic of `q`.
    pub fn from_level(level: u64, m: u64, q: u64, d: i64, k: u32) -> Result<Self> {
        let (p, _) = prime_power(q)?;
        if level == 0 {
            return Err(Error::Zero);
        }
        let r = valuation(p, level);
        Self::new(level / p.pow(r), m, q, d, k, r)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `p^r N`.
    pub fn level(&self) -> u64 {
        self.p.pow(self.r) * self.n
    }

    fn cong(&self, n2: u64) -> Result<CongParams> {
        CongParams::new(self.level(), n2, self.q, self.d)
    }

    fn sign(&self) -> i64 {
        if self.k % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Traces `t` with `t^2 < 4q`, ascending.
pub fn elliptic_traces(q: u64) -> impl Iterator<Item = i64> {
    let bound = 4 * q as i64;
    let b = isqrt(4 * q) as i64;
    (-b..=b).filter(move |t| t * t < bound)
}

fn pow<S: Scalar>(base: u64, e: u32) -> S {
    (0..e).fold(S::one(), |acc, _| acc * S::from_u64_lossless(base))
}

fn delta_pm(c: u64, x: i64, sign: i64) -> i64 {
    i64::from(congruent(x, 1, c)) + sign * i64::from(congruent(x, -1, c))
}

/// Identity contribution; zero unless `q` is a perfect square.
pub fn t_id<S: Scalar>(params: &TraceParams) -> S {
    let Some(s) = exact_sqrt(params.q) else {
        return S::zero();
    };
    let level = params.level();
    let deltas = delta_pm(level, s as i64 * params.d, params.sign());
    if deltas == 0 {
        return S::zero();
    }
    S::from_u64_lossless(euler_phi(level) * psi(level * params.m))
        * S::ratio(params.k as i64 - 1, 24)
        * pow::<S>(s, params.k - 2)
        * S::from_int(deltas)
}

/// `sum_{t^2 < 4q} U_{k-2}(t, q) H_{level, n2}(t, q, d)`.
fn weighted_class_sum<S: Scalar>(params: &TraceParams, n2: u64) -> Result<S> {
    let cong = params.cong(n2)?;
    let mut total = S::zero();
    for t in elliptic_traces(params.q) {
        let h: S = h_sum(&cong, t)?;
        if h != S::zero() {
            total = total + cheb_u_norm::<S>(t, params.q, params.k - 2) * h;
        }
    }
    Ok(total)
}

/// Elliptic contribution, from the class sums `H_{level, Lam M}`.
pub fn t_ell<S: Scalar>(params: &TraceParams) -> Result<S> {
    let level = params.level();
    let m = params.m;
    let l = gcd_d2q_minus_one(&params.cong(m)?);
    let mut inner = S::zero();
    for lam in divisors(l / m) {
        let weight = S::ratio(
            (euler_phi(lam * lam) * euler_phi(level / (m * lam))) as i64,
            euler_phi(level / m) as i64,
        );
        inner = inner + weight * weighted_class_sum::<S>(params, lam * m)?;
    }
    let scale = S::from_u64_lossless(euler_phi(level))
        * S::ratio(
            psi(level * level) as i64,
            psi(level * level / (m * m)) as i64,
        );
    Ok(scale * inner)
}

/// Elliptic contribution assembled from the root counts `C_{level,M}(t, q, +-d)`.
pub fn t_ell_c_route<S: Scalar>(params: &TraceParams) -> Result<S> {
    let level = params.level();
    let (q, d, m) = (params.q, params.d, params.m);
    let sign = S::from_int(params.sign());
    let mut total = S::zero();
    for t in elliptic_traces(q) {
        let plus: S = c_nm(level, m, t, q, d)?;
        let minus: S = c_nm(level, m, t, q, -d)?;
        let sym = (plus + sign.clone() * minus) * S::ratio(1, 2);
        total = total + cheb_u_norm::<S>(t, q, params.k - 2) * sym;
    }
    Ok(S::from_u64_lossless(euler_phi(level)) * S::ratio(1, 2) * total)
}

/// Hyperbolic contribution.
///
/// For each `b | q` and each `tau | level M` with `g = (tau, level M / tau)`
/// dividing `b - q/b`, `y` is the residue mod `level M / g` with `y = b (mod
/// tau)` and `y = q/b (mod level M / tau)`, and `c = level (M, g) / g`.
pub fn t_hyp<S: Scalar>(params: &TraceParams) -> S {
    let level = params.level();
    let lm = level * params.m;
    let q = params.q;
    let sign = params.sign();
    let mut total = 0i128;
    for b in divisors(q) {
        let b_dual = q / b;
        let weight = (b.min(b_dual) as i128).pow(params.k - 1);
        let gap = b as i64 - b_dual as i64;
        for tau in divisors(lm) {
            let g = tau.gcd(&(lm / tau));
            if gap % g as i64 != 0 {
                continue;
            }
            let (y, _) = crt_pair(b as i64, tau, b_dual as i64, lm / tau)
                .expect("compatible residues once g divides b - q/b");
            let c = level * params.m.gcd(&g) / g;
            let yd = ((y as i128 * params.d as i128).rem_euclid(c as i128)) as i64;
            let deltas = delta_pm(c, yd, sign);
            if deltas != 0 {
                total += weight * (euler_phi(g) * euler_phi(c)) as i128 * deltas as i128;
            }
        }
    }
    S::from_i128(total).expect("hyperbolic sum fits the scalar type") * S::ratio(1, 4)
}

/// Dual contribution: for `k = 2`, the sum of divisors `c | q` whose cofactor
/// `q/c` is prime to the level; zero otherwise.
pub fn t_dual<S: Scalar>(params: &TraceParams) -> S {
    if params.k != 2 {
        return S::zero();
    }
    let lm = params.level() * params.m;
    let total: u64 = divisors(params.q)
        .into_iter()
        .filter(|c| lm.gcd(&(params.q / c)) == 1)
        .sum();
    S::from_u64_lossless(total)
}

/// `Tr(T_q <d>)` on `S_k(Gamma(p^r N, M))`: identity minus elliptic minus
/// hyperbolic plus dual.
pub fn t_trace<S: Scalar>(params: &TraceParams) -> Result<S> {
    Ok(t_id::<S>(params) - t_ell::<S>(params)? - t_hyp::<S>(params) + t_dual::<S>(params))
}

/// `T_{level,lambda}(q, d) = sum_{Lam | L/lambda} phi(Lam^2) phi(level/(lambda Lam))
/// sum_{t^2 < 4q} U_{k-2}(t, q) H_{level, lambda Lam}(t, q, d)`, with
/// `L = gcd(d^2 q - 1, level)`.
pub fn t_n_lambda<S: Scalar>(level: u64, lambda: u64, q: u64, d: i64, k: u32) -> Result<S> {
    let base = TraceParams::from_level(level, 1, q, d, k)?;
    let l = gcd_d2q_minus_one(&base.cong(1)?);
    if lambda == 0 || l % lambda != 0 {
        return Err(Error::NotDivisible {
            divisor: lambda,
            dividend: l,
        });
    }
    let mut total = S::zero();
    for lam in divisors(l / lambda) {
        let weight = (euler_phi(lam * lam) * euler_phi(level / (lambda * lam))) as i64;
        total = total + S::from_int(weight) * weighted_class_sum::<S>(&base, lambda * lam)?;
    }
    Ok(total)
}

/// `T_{level,lambda}(q, d)` obtained by rescaling the elliptic term of
/// `Gamma(level, lambda)`.
pub fn t_n_lambda_scaled<S: Scalar>(level: u64, lambda: u64, q: u64, d: i64, k: u32) -> Result<S> {
    let params = TraceParams::from_level(level, lambda, q, d, k)?;
    let num = psi(level * level / (lambda * lambda)) * euler_phi(level / lambda);
    let den = psi(level * level) * euler_phi(level);
    Ok(S::ratio(num as i64, den as i64) * t_ell::<S>(&params)?)
}

/// Closed form of `E_q(U_{k-2}(t_E, q) Phi_A)` for `A = Z/m1 x Z/m2` whose
/// `m1` is divisible by the characteristic of `q`.
///
/// Writing `m1 = p^r n1`, `n2 = m2` and `level = p^r n1`, the value is zero
/// unless `q = 1 (mod n2)`, in which case it is
/// `1/(q phi(level/n2)) sum_{nu | gcd(q-1, level)/n2} phi~(nu) T_{level, n2 nu}(q, 1)`.
pub fn main_theorem_rhs<S: Scalar>(spec: &AbelianSpec, q: u64, k: u32) -> Result<S> {
    let (p, _) = prime_power(q)?;
    let (r, n1, n2) = spec.p_split(p);
    if r == 0 {
        return Err(Error::InvalidParams(format!(
            "the characteristic {p} must divide m1 = {}",
            spec.m1
        )));
    }
    if n2 % p == 0 {
        return Err(Error::InvalidParams(format!(
            "the characteristic {p} must not divide m2 = {n2}"
        )));
    }
    if n1 % n2 != 0 {
        return Err(Error::NotDivisible {
            divisor: n2,
            dividend: n1,
        });
    }
    if k < 2 {
        return Err(Error::InvalidParams(format!("weight {k} < 2")));
    }
    if (q - 1) % n2 != 0 {
        return Ok(S::zero());
    }
    let level = p.pow(r) * n1;
    let top = (q - 1).gcd(&level) / n2;
    let mut total = S::zero();
    for nu in divisors(top) {
        total = total + S::from_int(phi_tilde(nu)) * t_n_lambda::<S>(level, n2 * nu, q, 1, k)?;
    }
    let den = q * euler_phi(level / n2);
    Ok(total * S::ratio(1, den as i64))
}

/// Both sides of
/// `1/phi(level/n2) sum_{nu | L/n2} phi~(nu) T_{level, n2 nu}(q, d) = sum_t U_{k-2}(t, q) H_{level,n2}(t, q, d)`.
pub fn dirichlet_collapse<S: Scalar>(
    level: u64,
    n2: u64,
    q: u64,
    d: i64,
    k: u32,
) -> Result<(bool, S, S)> {
    let params = TraceParams::from_level(level, 1, q, d, k)?;
    let l = gcd_d2q_minus_one(&params.cong(n2)?);
    let mut lhs = S::zero();
    for nu in divisors(l / n2) {
        lhs = lhs + S::from_int(phi_tilde(nu)) * t_n_lambda::<S>(level, n2 * nu, q, d, k)?;
    }
    lhs = lhs * S::ratio(1, euler_phi(level / n2) as i64);
    let rhs = weighted_class_sum::<S>(&params, n2)?;
    Ok((lhs == rhs, lhs, rhs))
}

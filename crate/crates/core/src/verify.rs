//! Grid checks that compare independently computed sides of the identities
//! exercised by the acceptance suite and the `verify-*` commands.

use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classsum::{c_nm_from_class_sums, h_sum, h_sum_p_level};
use crate::curves::{AbelianSpec, ShapeCensus};
use crate::finitefield::FieldCtx;
use crate::hecke_congruence::{c_nm, units, w_count, CongParams};
use crate::numtheory::{divisors, prime_power, valuation};
use crate::traceformula::{
    dirichlet_collapse, elliptic_traces, main_theorem_rhs, t_trace, TraceParams,
};
use crate::{rat_string, ExactRat, Result, Scalar};

/// One evaluated identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub params: Value,
    pub pass: bool,
    pub lhs: ExactRat,
    pub rhs: ExactRat,
}

#[derive(Serialize)]
struct CheckWire<'a> {
    name: &'a str,
    params: &'a Value,
    pass: bool,
    lhs: String,
    rhs: String,
}

impl Serialize for Check {
    fn serialize<Ser: serde::Serializer>(
        &self,
        s: Ser,
    ) -> std::result::Result<Ser::Ok, Ser::Error> {
        CheckWire {
            name: &self.name,
            params: &self.params,
            pass: self.pass,
            lhs: rat_string(&self.lhs),
            rhs: rat_string(&self.rhs),
        }
        .serialize(s)
    }
}

impl Check {
    pub fn compare(name: &str, params: Value, lhs: ExactRat, rhs: ExactRat) -> Self {
        Check {
            name: name.to_string(),
            params,
            pass: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

/// Running count for one family of identities. Agreeing cases are only
/// counted; disagreeing ones are kept in full.
#[derive(Debug)]
pub struct Tally {
    name: String,
    cases: u64,
    failures: Vec<Check>,
}

impl Tally {
    pub fn new(name: &str) -> Self {
        Tally {
            name: name.to_string(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, params: Value, lhs: ExactRat, rhs: ExactRat) {
        self.cases += 1;
        if lhs != rhs {
            self.failures
                .push(Check::compare(&self.name, params, lhs, rhs));
        }
    }

    pub fn record_bool(&mut self, params: Value, holds: bool) {
        let one = ExactRat::from_int(1);
        let lhs = ExactRat::from_int(i64::from(holds));
        self.record(params, lhs, one);
    }

    /// Failures first, then a summary whose two sides are the number of
    /// agreeing cases and the number of cases.
    pub fn finish(self) -> Vec<Check> {
        let agree = self.cases - self.failures.len() as u64;
        let summary = Check::compare(
            &self.name,
            json!({ "cases": self.cases }),
            ExactRat::from_u64_lossless(agree),
            ExactRat::from_u64_lossless(self.cases),
        );
        let mut out = self.failures;
        out.push(summary);
        out
    }
}

/// Restricts the main-theorem grid; `None` fields keep the default range.
#[derive(Debug, Clone)]
pub struct MainFilter {
    pub q: Option<u64>,
    pub k: Option<u32>,
    pub spec: Option<AbelianSpec>,
    pub workers: usize,
}

impl Default for MainFilter {
    fn default() -> Self {
        MainFilter {
            q: None,
            k: None,
            spec: None,
            workers: 1,
        }
    }
}

pub const MAIN_FIELDS: [u64; 6] = [2, 3, 4, 5, 8, 9];
pub const MAIN_WEIGHTS: [u32; 8] = [2, 4, 6, 8, 10, 12, 14, 16];
pub const MAIN_MAX_M1: u64 = 18;

/// Groups `Z/m1 x Z/m2` with `m1 <= max_m1`, ascending.
pub fn abelian_specs(max_m1: u64) -> Vec<AbelianSpec> {
    (1..=max_m1)
        .flat_map(|m1| {
            divisors(m1)
                .into_iter()
                .map(move |m2| AbelianSpec { m1, m2 })
        })
        .collect()
}

/// Moments from the curve census against the closed form, for every group
/// whose `m1` carries the characteristic and whose `m2` does not. When
/// `q != 1 (mod m2)` the moment itself must vanish.
pub fn verify_main(filter: &MainFilter) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let fields: Vec<u64> = match filter.q {
        Some(q) => vec![q],
        None => MAIN_FIELDS.to_vec(),
    };
    let weights: Vec<u32> = match filter.k {
        Some(k) => vec![k],
        None => MAIN_WEIGHTS.to_vec(),
    };
    for q in fields {
        let (p, _) = prime_power(q)?;
        let specs: Vec<AbelianSpec> = match filter.spec {
            Some(spec) => vec![spec],
            None => abelian_specs(MAIN_MAX_M1)
                .into_iter()
                .filter(|s| s.m1 % p == 0 && s.m2 % p != 0)
                .collect(),
        };
        let ctx = FieldCtx::for_order(q)?;
        let census = ShapeCensus::compute(&ctx, filter.workers)?;
        for spec in specs {
            for &k in &weights {
                let params = json!({ "q": q, "m1": spec.m1, "m2": spec.m2, "k": k });
                let moment = census.moment(&spec, k)?;
                let rhs: ExactRat = main_theorem_rhs(&spec, q, k)?;
                checks.push(Check::compare(
                    "main_theorem",
                    params.clone(),
                    moment.clone(),
                    rhs,
                ));
                if (q - 1) % spec.m2 != 0 {
                    checks.push(Check::compare(
                        "moment_vanishes",
                        params,
                        moment,
                        ExactRat::from_int(0),
                    ));
                }
            }
        }
    }
    Ok(checks)
}

pub const PROB_FIELDS: [u64; 4] = [5, 7, 11, 13];
pub const PROB_MAX_M1: u64 = 16;

/// `q P_q(C(A, t)) = H_{m1,m2}(t, q, 1)` for traces prime to `q` and groups
/// of order prime to `q`; groups with `q != 1 (mod m2)` must have
/// probability zero.
pub fn verify_prob_class(census: &ShapeCensus, max_m1: u64) -> Result<Vec<Check>> {
    let q = census.q();
    let (p, _) = prime_power(q)?;
    let mut tally = Tally::new("prob_class");
    for spec in abelian_specs(max_m1)
        .into_iter()
        .filter(|s| s.order().gcd(&q) == 1)
    {
        let params = CongParams::new(spec.m1, spec.m2, q, 1).ok();
        for t in elliptic_traces(q).filter(|t| t % p as i64 != 0) {
            let lhs = census.prob_class(&spec, t) * ExactRat::from_u64_lossless(q);
            let rhs: ExactRat = match &params {
                Some(params) => h_sum(params, t)?,
                None => ExactRat::from_int(0),
            };
            tally.record(
                json!({ "q": q, "m1": spec.m1, "m2": spec.m2, "t": t }),
                lhs,
                rhs,
            );
        }
    }
    Ok(tally.finish())
}

const LIFT_FIELDS: [u64; 15] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27];
const CONG_FIELDS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];
const P_LEVEL_FIELDS: [u64; 5] = [2, 3, 4, 8, 9];
const COLLAPSE_FIELDS: [u64; 6] = [2, 3, 4, 5, 8, 9];

fn valid_cong(n1: u64, n2: u64, q: u64) -> impl Iterator<Item = CongParams> {
    units(n1)
        .into_iter()
        .filter_map(move |d| CongParams::new(n1, n2, q, d as i64).ok())
}

fn char_of(q: u64) -> u64 {
    prime_power(q).expect("grid fields are prime powers").0
}

/// (a) every lift of `d` gives the same residue `d q + d^{-1}`.
fn lemma_lift_independence() -> Result<Vec<Check>> {
    let mut tally = Tally::new("lift_independence");
    for n1 in 1..=60u64 {
        for n2 in divisors(n1).into_iter().filter(|n2| n1 * n2 <= 60) {
            for q in LIFT_FIELDS {
                for params in valid_cong(n1, n2, q) {
                    for n in divisors(params.lift_modulus()) {
                        let all = params.all_lift_values(n)?;
                        let holds = all == vec![params.lift_value(n)?];
                        let d = params.d();
                        tally.record_bool(
                            json!({ "n1": n1, "n2": n2, "q": q, "d": d, "n": n }),
                            holds,
                        );
                    }
                }
            }
        }
    }
    Ok(tally.finish())
}

/// (b) `H_{p^r n1, n2}(t, q, d) = D(t; p^r) H_{n1,n2}(t, q, d)`.
fn lemma_h_factorization() -> Result<Vec<Check>> {
    let mut tally = Tally::new("h_factorization");
    for q in P_LEVEL_FIELDS {
        let p = char_of(q);
        for r in 1..=2u32 {
            let pr = p.pow(r);
            for n1 in (1..=6u64).filter(|n| n.gcd(&q) == 1) {
                for n2 in divisors(n1) {
                    for big in valid_cong(pr * n1, n2, q) {
                        let d = big.d() as i64;
                        let small = CongParams::new(n1, n2, q, d)?;
                        for t in elliptic_traces(q) {
                            let lhs: ExactRat = h_sum_p_level(pr, n1, n2, q, d, t)?;
                            let dp = ExactRat::from_int(i64::from(big.indicator(t, pr)?));
                            let rhs = dp * h_sum::<ExactRat>(&small, t)?;
                            let params =
                                json!({ "q": q, "r": r, "n1": n1, "n2": n2, "d": d, "t": t });
                            tally.record(params, lhs, rhs);
                        }
                    }
                }
            }
        }
    }
    Ok(tally.finish())
}

fn square_divisors(delta: i64) -> Vec<u64> {
    let a = delta.unsigned_abs();
    (1u64..)
        .take_while(|m| m * m <= a)
        .filter(|m| a % (m * m) == 0)
        .collect()
}

/// (c) `W_{p^r,1,m}(d) = D(t; p^r)`, and
/// `W_{p^r N,M,m}(d) = W_{N,M,n}(d) W_{p^r,1,p^kappa}(d)` for `m = n p^kappa`.
fn lemma_w() -> Result<Vec<Check>> {
    let mut local = Tally::new("w_local");
    let mut split = Tally::new("w_factorization");
    for q in CONG_FIELDS {
        let p = char_of(q);
        for r in 1..=2u32 {
            let pr = p.pow(r);
            for d in units(pr) {
                let d = d as i64;
                let params = CongParams::new(pr, 1, q, d)?;
                for t in elliptic_traces(q) {
                    let expect = i64::from(params.indicator(t, pr)?);
                    for m in square_divisors(t * t - 4 * q as i64) {
                        let w = w_count(pr, 1, m, d, t, q)? as i64;
                        let point = json!({ "q": q, "r": r, "d": d, "t": t, "m": m });
                        local.record(point, ExactRat::from_int(w), ExactRat::from_int(expect));
                    }
                }
            }
            for n in (1..=6u64).filter(|n| n.gcd(&q) == 1) {
                for big_m in divisors(n) {
                    for d in units(pr * n) {
                        let d = d as i64;
                        if CongParams::new(pr * n, big_m, q, d).is_err() {
                            continue;
                        }
                        for t in elliptic_traces(q) {
                            for m in square_divisors(t * t - 4 * q as i64) {
                                let kappa = valuation(p, m);
                                let rest = m / p.pow(kappa);
                                let lhs = w_count(pr * n, big_m, m, d, t, q)? as i64;
                                let rhs = w_count(n, big_m, rest, d, t, q)? as i64
                                    * w_count(pr, 1, p.pow(kappa), d, t, q)? as i64;
                                let point = json!({
                                    "q": q, "r": r, "N": n, "M": big_m, "d": d, "t": t, "m": m
                                });
                                split.record(
                                    point,
                                    ExactRat::from_int(lhs),
                                    ExactRat::from_int(rhs),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out = local.finish();
    out.extend(split.finish());
    Ok(out)
}

/// (d) `C_{p^r N,M}(t, q, d) = D(t; p^r) C_{N,M}(t, q, d)`.
fn lemma_c_factorization() -> Result<Vec<Check>> {
    let mut tally = Tally::new("c_factorization");
    for q in CONG_FIELDS {
        let p = char_of(q);
        for r in 1..=2u32 {
            let pr = p.pow(r);
            for n in (1..=12u64).filter(|n| n.gcd(&q) == 1) {
                for big_m in divisors(n) {
                    for big in valid_cong(pr * n, big_m, q) {
                        let d = big.d() as i64;
                        for t in elliptic_traces(q) {
                            let lhs: ExactRat = c_nm(pr * n, big_m, t, q, d)?;
                            let dp = ExactRat::from_int(i64::from(big.indicator(t, pr)?));
                            let rhs = dp * c_nm::<ExactRat>(n, big_m, t, q, d)?;
                            let point =
                                json!({ "q": q, "r": r, "N": n, "M": big_m, "d": d, "t": t });
                            tally.record(point, lhs, rhs);
                        }
                    }
                }
            }
        }
    }
    Ok(tally.finish())
}

/// (e) `C_{N,M}` from root counts equals its class-sum expression.
fn lemma_c_vs_h() -> Result<Vec<Check>> {
    let mut tally = Tally::new("c_vs_h");
    for q in CONG_FIELDS {
        for n in (1..=12u64).filter(|n| n.gcd(&q) == 1) {
            for big_m in divisors(n) {
                for params in valid_cong(n, big_m, q) {
                    let d = params.d() as i64;
                    for t in elliptic_traces(q) {
                        let lhs: ExactRat = c_nm(n, big_m, t, q, d)?;
                        let rhs: ExactRat = c_nm_from_class_sums(n, big_m, t, q, d)?;
                        tally.record(
                            json!({ "q": q, "N": n, "M": big_m, "d": d, "t": t }),
                            lhs,
                            rhs,
                        );
                    }
                }
            }
        }
    }
    Ok(tally.finish())
}

/// (f) the weighted sum of `T_{level, n2 nu}` collapses to a single class sum.
fn lemma_dirichlet_collapse() -> Result<Vec<Check>> {
    let mut tally = Tally::new("dirichlet_collapse");
    for q in COLLAPSE_FIELDS {
        let p = char_of(q);
        for r in 1..=2u32 {
            for n1 in (1..=6u64).filter(|n| n.gcd(&q) == 1) {
                let level = p.pow(r) * n1;
                for n2 in divisors(n1) {
                    for params in valid_cong(level, n2, q) {
                        let d = params.d() as i64;
                        for k in 2..=16u32 {
                            let (_, lhs, rhs) = dirichlet_collapse::<ExactRat>(level, n2, q, d, k)?;
                            let point =
                                json!({ "q": q, "r": r, "n1": n1, "n2": n2, "d": d, "k": k });
                            tally.record(point, lhs, rhs);
                        }
                    }
                }
            }
        }
    }
    Ok(tally.finish())
}

/// Names of the lemma families, in the order `verify_lemmas` runs them.
pub const LEMMAS: [&str; 6] = [
    "lift_independence",
    "h_factorization",
    "w",
    "c_factorization",
    "c_vs_h",
    "dirichlet_collapse",
];

/// Runs one lemma family by name.
pub fn verify_lemma(name: &str) -> Result<Vec<Check>> {
    match name {
        "lift_independence" => lemma_lift_independence(),
        "h_factorization" => lemma_h_factorization(),
        "w" => lemma_w(),
        "c_factorization" => lemma_c_factorization(),
        "c_vs_h" => lemma_c_vs_h(),
        "dirichlet_collapse" => lemma_dirichlet_collapse(),
        other => Err(crate::Error::InvalidParams(format!(
            "unknown lemma family {other}"
        ))),
    }
}

pub fn verify_lemmas() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for name in LEMMAS {
        out.extend(verify_lemma(name)?);
    }
    Ok(out)
}

/// `T_trace` is an integer for `N <= 10`, `M | N`, `q` prime to `N`, every
/// admissible `d` and `2 <= k <= 16`. Each case compares the value with its
/// integer part.
pub fn verify_integrality() -> Result<Vec<Check>> {
    let mut tally = Tally::new("integrality");
    for n in 1..=10u64 {
        for big_m in divisors(n) {
            for q in CONG_FIELDS.into_iter().filter(|q| q.gcd(&n) == 1) {
                for d in units(n) {
                    for k in 2..=16u32 {
                        let Ok(params) = TraceParams::new(n, big_m, q, d as i64, k, 0) else {
                            continue;
                        };
                        let value: ExactRat = t_trace(&params)?;
                        let point = json!({ "N": n, "M": big_m, "q": q, "d": d, "k": k });
                        tally.record(point, value.clone(), value.trunc());
                    }
                }
            }
        }
    }
    Ok(tally.finish())
}

/// Whether every check passed.
pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

//! Integer q-expansions of level-one cusp forms, used as ground truth for
//! Hecke traces on `SL_2(Z)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numtheory::divisors;
use crate::{Error, Result};

/// Truncated power series `sum_{i <= precision} c_i x^i` with integer
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn new(mut coeffs: Vec<BigInt>, precision: usize) -> Self {
        coeffs.resize(precision + 1, BigInt::zero());
        QSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64], precision: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::from_i64(&[1], precision)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^n`; zero beyond the precision.
    pub fn coefficient(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    fn truncate(&self, precision: usize) -> Self {
        Self::new(
            self.coeffs.iter().take(precision + 1).cloned().collect(),
            precision,
        )
    }
}

/// Product truncated at `x^precision`.
pub fn series_mul(a: &QSeries, b: &QSeries, precision: usize) -> QSeries {
    let mut out = vec![BigInt::zero(); precision + 1];
    for (i, ai) in a.coeffs.iter().enumerate().take(precision + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate().take(precision + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    QSeries { coeffs: out }
}

/// `a^e` truncated at `x^precision`, by repeated squaring.
pub fn series_pow(a: &QSeries, mut e: u32, precision: usize) -> QSeries {
    let mut base = a.truncate(precision);
    let mut acc = QSeries::one(precision);
    while e > 0 {
        if e & 1 == 1 {
            acc = series_mul(&acc, &base, precision);
        }
        e >>= 1;
        if e > 0 {
            base = series_mul(&base, &base, precision);
        }
    }
    acc
}

/// `x prod_{n >= 1} (1 - x^n)^24`, whose coefficients are Ramanujan's `tau(n)`.
pub fn delta_series(precision: usize) -> QSeries {
    let mut eta = QSeries::one(precision);
    for n in 1..=precision {
        let mut factor = vec![BigInt::zero(); n + 1];
        factor[0] = BigInt::one();
        factor[n] = BigInt::from(-1);
        eta = series_mul(&eta, &QSeries::new(factor, precision), precision);
    }
    let eta24 = series_pow(&eta, 24, precision);
    let x = QSeries::from_i64(&[0, 1], precision);
    series_mul(&x, &eta24, precision)
}

/// `E_4 = 1 + 240 sum sigma_3(n) x^n` or `E_6 = 1 - 504 sum sigma_5(n) x^n`.
pub fn eisenstein(weight: u32, precision: usize) -> Result<QSeries> {
    let (scale, power) = match weight {
        4 => (240i64, 3u32),
        6 => (-504, 5),
        _ => {
            return Err(Error::InvalidParams(format!(
                "no Eisenstein oracle at weight {weight}"
            )))
        }
    };
    let mut coeffs = vec![BigInt::one()];
    for n in 1..=precision as u64 {
        let sigma: BigInt = divisors(n)
            .into_iter()
            .map(|d| BigInt::from(d).pow(power))
            .sum();
        coeffs.push(sigma * scale);
    }
    Ok(QSeries::new(coeffs, precision))
}

/// Basis `Delta E_4^a E_6^b` (`4a + 6b = k - 12`) of the level-one cusp forms
/// of weight `k`, for the weights where that space has dimension at most one.
pub fn level1_cusp_basis(k: u32, precision: usize) -> Result<Vec<QSeries>> {
    if k % 2 == 1 || !(2..=26).contains(&k) {
        return Err(Error::InvalidParams(format!(
            "weight {k} outside the oracle range"
        )));
    }
    if k == 24 {
        return Err(Error::InvalidParams(
            "weight 24 has a two-dimensional cusp space".into(),
        ));
    }
    if k < 12 || k == 14 {
        return Ok(Vec::new());
    }
    let rest = k - 12;
    let (a, b) = (0..=rest / 4)
        .find_map(|a| {
            let left = rest - 4 * a;
            (left % 6 == 0).then_some((a, left / 6))
        })
        .expect("k - 12 is a combination of 4 and 6");
    let mut form = delta_series(precision);
    if a > 0 {
        form = series_mul(
            &form,
            &series_pow(&eisenstein(4, precision)?, a, precision),
            precision,
        );
    }
    if b > 0 {
        form = series_mul(
            &form,
            &series_pow(&eisenstein(6, precision)?, b, precision),
            precision,
        );
    }
    Ok(vec![form])
}

/// Trace of `T_n` on level-one cusp forms of weight `k`, read off the
/// normalized eigenform (`0` when the space is empty).
pub fn level1_trace(k: u32, n: usize) -> Result<BigInt> {
    Ok(level1_cusp_basis(k, n)?
        .first()
        .map(|f| f.coefficient(n))
        .unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn polynomial_products() {
        let a = QSeries::from_i64(&[1, 1], 4);
        let b = QSeries::from_i64(&[1, -1], 4);
        assert_eq!(series_mul(&a, &b, 4), QSeries::from_i64(&[1, 0, -1], 4));
        let mut prod = QSeries::one(3);
        for n in 1..=3usize {
            let mut f = vec![0i64; n + 1];
            f[0] = 1;
            f[n] = -1;
            prod = series_mul(&prod, &QSeries::from_i64(&f, 3), 3);
        }
        assert_eq!(prod, QSeries::from_i64(&[1, -1, -1, 0], 3));
        assert_eq!(series_pow(&a, 3, 4), QSeries::from_i64(&[1, 3, 3, 1], 4));
        assert_eq!(series_pow(&a, 0, 2), QSeries::one(2));
    }

    #[test]
    fn ramanujan_tau() {
        let delta = delta_series(12);
        let expected = [
            0i64, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944,
        ];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(delta.coefficient(n), big(e), "tau({n})");
        }
    }

    #[test]
    fn basis_shapes() {
        assert!(level1_cusp_basis(10, 5).unwrap().is_empty());
        assert!(level1_cusp_basis(14, 5).unwrap().is_empty());
        assert_eq!(level1_cusp_basis(12, 5).unwrap(), vec![delta_series(5)]);
        assert_eq!(
            level1_cusp_basis(16, 5).unwrap()[0].coefficient(2),
            big(216)
        );
        assert!(level1_cusp_basis(24, 5).is_err());
        assert!(level1_cusp_basis(13, 5).is_err());
        assert!(eisenstein(8, 5).is_err());
    }

    #[test]
    fn hecke_relations() {
        for k in [12u32, 16, 18, 20, 22, 26] {
            let f = &level1_cusp_basis(k, 30).unwrap()[0];
            assert_eq!(f.coefficient(1), big(1));
            for p in [2usize, 3, 5] {
                let pk = BigInt::from(p).pow(k - 1);
                let ap = f.coefficient(p);
                assert_eq!(f.coefficient(p * p), &ap * &ap - pk, "k={k} p={p}");
            }
            assert_eq!(f.coefficient(6), f.coefficient(2) * f.coefficient(3));
            assert_eq!(f.coefficient(10), f.coefficient(2) * f.coefficient(5));
        }
    }
}

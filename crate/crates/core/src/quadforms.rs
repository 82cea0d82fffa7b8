//! Class numbers of imaginary quadratic orders from reduced binary quadratic
//! forms, with the weighted (`h_w`) and Hurwitz-Kronecker (`H`) variants.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_integer::Integer;
use num_rational::Ratio;

use crate::{Error, Result, Scalar};

/// Positive-definite primitive form `a x^2 + b xy + c y^2` in reduced position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ReducedForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let ReducedForm { a, b, c } = *self;
        a > 0 && b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }
}

fn check_discriminant(d: i64) -> Result<()> {
    if d >= 0 || d.rem_euclid(4) > 1 {
        Err(Error::BadDiscriminant(d))
    } else {
        Ok(())
    }
}

/// All reduced primitive forms of discriminant `d`, sorted.
pub fn reduced_forms(d: i64) -> Result<Vec<ReducedForm>> {
    check_discriminant(d)?;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let form = ReducedForm {
                a,
                b,
                c: num / (4 * a),
            };
            if form.is_reduced() && form.is_primitive() {
                out.push(form);
            }
        }
        a += 1;
    }
    Ok(out)
}

fn class_cache() -> &'static RwLock<HashMap<i64, u64>> {
    static CACHE: OnceLock<RwLock<HashMap<i64, u64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Class number of the order of discriminant `d < 0`, `d = 0, 1 (mod 4)`.
pub fn class_number(d: i64) -> Result<u64> {
    check_discriminant(d)?;
    if let Some(&h) = class_cache().read().expect("class-number cache").get(&d) {
        return Ok(h);
    }
    let h = reduced_forms(d)?.len() as u64;
    class_cache()
        .write()
        .expect("class-number cache")
        .insert(d, h);
    Ok(h)
}

/// `h(d)/3` at `-3`, `h(d)/2` at `-4`, `h(d)` otherwise, and `0` when
/// `d = 2, 3 (mod 4)`.
pub fn h_w<S: Scalar>(d: i64) -> Result<S> {
    if d >= 0 {
        return Err(Error::BadDiscriminant(d));
    }
    if d.rem_euclid(4) > 1 {
        return Ok(S::zero());
    }
    let h = class_number(d)? as i64;
    Ok(match d {
        -3 => S::ratio(h, 3),
        -4 => S::ratio(h, 2),
        _ => S::from_int(h),
    })
}

/// Hurwitz-Kronecker class number at an integer argument; `0` unless the
/// argument is negative and `0, 1 (mod 4)`.
pub fn hurwitz_h_int<S: Scalar>(delta: i64) -> S {
    if delta >= 0 || delta.rem_euclid(4) > 1 {
        return S::zero();
    }
    let mut total = S::zero();
    let mut f = 1i64;
    while f * f <= -delta {
        if delta % (f * f) == 0 {
            total = total + h_w::<S>(delta / (f * f)).expect("negative discriminant");
        }
        f += 1;
    }
    total
}

/// `H(delta) = sum_{f^2 | delta} h_w(delta / f^2)`, extended by `0` to every
/// argument that is not a negative integer congruent to `0` or `1` mod 4.
pub fn hurwitz_h<S: Scalar>(delta: &Ratio<i64>) -> S {
    if !delta.is_integer() {
        return S::zero();
    }
    hurwitz_h_int(delta.to_integer())
}

/// `H(num / den)` without building the ratio first.
pub fn hurwitz_h_quotient<S: Scalar>(num: i64, den: i64) -> S {
    if den == 0 || num % den != 0 {
        return S::zero();
    }
    hurwitz_h_int(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ExactRat;

    fn r(n: i64, d: i64) -> ExactRat {
        ExactRat::ratio(n, d)
    }

    #[test]
    fn class_number_examples() {
        assert_eq!(class_number(-3), Ok(1));
        assert_eq!(class_number(-4), Ok(1));
        assert_eq!(class_number(-23), Ok(3));
        assert_eq!(
            reduced_forms(-23).unwrap(),
            vec![
                ReducedForm { a: 1, b: 1, c: 6 },
                ReducedForm { a: 2, b: -1, c: 3 },
                ReducedForm { a: 2, b: 1, c: 3 },
            ]
        );
        assert_eq!(class_number(-5), Err(Error::BadDiscriminant(-5)));
        assert_eq!(class_number(5), Err(Error::BadDiscriminant(5)));
        // imprimitive 2x^2+2xy+2y^2 is excluded
        assert_eq!(class_number(-12), Ok(1));
    }

    #[test]
    fn weighted_examples() {
        assert_eq!(h_w::<ExactRat>(-3).unwrap(), r(1, 3));
        assert_eq!(h_w::<ExactRat>(-4).unwrap(), r(1, 2));
        assert_eq!(h_w::<ExactRat>(-7).unwrap(), r(1, 1));
        assert_eq!(h_w::<ExactRat>(-6).unwrap(), r(0, 1));
        assert!(h_w::<ExactRat>(0).is_err());
    }

    #[test]
    fn hurwitz_examples() {
        assert_eq!(hurwitz_h::<ExactRat>(&Ratio::from_integer(-3)), r(1, 3));
        assert_eq!(hurwitz_h::<ExactRat>(&Ratio::from_integer(-16)), r(3, 2));
        assert_eq!(hurwitz_h::<ExactRat>(&Ratio::new(-7, 4)), r(0, 1));
        assert_eq!(hurwitz_h::<ExactRat>(&Ratio::from_integer(-8)), r(1, 1));
        assert_eq!(hurwitz_h::<ExactRat>(&Ratio::from_integer(0)), r(0, 1));
        assert_eq!(hurwitz_h::<ExactRat>(&Ratio::from_integer(5)), r(0, 1));
        assert_eq!(hurwitz_h_quotient::<ExactRat>(-28, 4), r(1, 1));
        assert_eq!(hurwitz_h_quotient::<ExactRat>(-28, 16), r(0, 1));
    }

    #[test]
    fn bounds() {
        for n in 3..2000i64 {
            let d = -n;
            if d.rem_euclid(4) > 1 {
                continue;
            }
            assert!(class_number(d).unwrap() >= 1);
            let hw: ExactRat = h_w(d).unwrap();
            assert!(hurwitz_h_int::<ExactRat>(d) >= hw);
        }
    }

    #[test]
    fn generic_scalar_agreement() {
        for n in 3..300i64 {
            let exact: ExactRat = hurwitz_h_int(-n);
            let approx: f64 = hurwitz_h_int(-n);
            let small: crate::Rat128 = hurwitz_h_int(-n);
            let as_f64 = exact.numer().to_string().parse::<f64>().unwrap()
                / exact.denom().to_string().parse::<f64>().unwrap();
            assert!((approx - as_f64).abs() < 1e-12);
            assert_eq!(small.numer().to_string(), exact.numer().to_string());
            assert_eq!(small.denom().to_string(), exact.denom().to_string());
        }
    }
}

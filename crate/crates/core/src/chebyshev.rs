//! Normalized Chebyshev polynomials of the second kind.
//!
//! `U_j(t, q) = q^{j/2} U_j(t / (2 sqrt q))` is evaluated through the integer
//! recurrence `V_0 = 1`, `V_1 = t`, `V_j = t V_{j-1} - q V_{j-2}`, so no
//! irrational intermediate ever appears.

use crate::Scalar;

/// `U_j(t, q)` in the normalization where `U_{k-2}(t_E, q)` is an integer.
pub fn cheb_u_norm<S: Scalar>(t: i64, q: u64, j: u32) -> S {
    let t_s = S::from_int(t);
    let q_s = S::from_u64_lossless(q);
    let mut prev = S::one();
    if j == 0 {
        return prev;
    }
    let mut cur = t_s.clone();
    for _ in 1..j {
        let next = t_s.clone() * cur.clone() - q_s.clone() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Weight-indexed form: `U_{k-2}(t, q)` for `k >= 2`.
pub fn weight_value<S: Scalar>(t: i64, q: u64, k: u32) -> S {
    assert!(k >= 2, "weight must be at least 2");
    cheb_u_norm(t, q, k - 2)
}

//! Elliptic curves over small finite fields: Weierstrass equations, point
//! counts, group structure, and the automorphism-weighted census over all
//! equations that feeds the trace moments.
//!
//! The census never canonicalizes isomorphism classes. The substitution group
//! `(u, r, s, t)`, `u != 0`, has order `q^3 (q - 1)` and acts on the set of
//! nonsingular coefficient tuples; by orbit-stabilizer an isomorphism class
//! `E` covers `q^3 (q - 1) / #Aut(E)` tuples, so giving every tuple the weight
//! `1 / (q^3 (q - 1))` weights every class by `1 / #Aut(E)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::chebyshev::cheb_u_norm;
use crate::finitefield::{FieldCtx, FieldElem};
use crate::numtheory::valuation;
use crate::{rat_string, Error, ExactRat, Result};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over a [`FieldCtx`].
#[derive(Debug, Clone, Copy)]
pub struct WeierstrassCurve<'a> {
    pub ctx: &'a FieldCtx,
    pub a1: FieldElem,
    pub a2: FieldElem,
    pub a3: FieldElem,
    pub a4: FieldElem,
    pub a6: FieldElem,
}

impl PartialEq for WeierstrassCurve<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ctx, other.ctx) && self.coefficients() == other.coefficients()
    }
}

impl Eq for WeierstrassCurve<'_> {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine(FieldElem, FieldElem),
}

impl<'a> WeierstrassCurve<'a> {
    /// Builds the curve, rejecting singular equations.
    pub fn new(ctx: &'a FieldCtx, coeffs: [FieldElem; 5]) -> Result<Self> {
        let curve = Self::new_unchecked(ctx, coeffs);
        if curve.discriminant().is_zero() {
            return Err(Error::InvalidParams("singular Weierstrass equation".into()));
        }
        Ok(curve)
    }

    /// Builds the equation without checking the discriminant.
    pub fn new_unchecked(ctx: &'a FieldCtx, [a1, a2, a3, a4, a6]: [FieldElem; 5]) -> Self {
        WeierstrassCurve {
            ctx,
            a1,
            a2,
            a3,
            a4,
            a6,
        }
    }

    /// Convenience constructor from integer coefficients (reduced into `F_p`).
    pub fn from_ints(ctx: &'a FieldCtx, coeffs: [i64; 5]) -> Self {
        Self::new_unchecked(ctx, coeffs.map(|c| ctx.from_int(c)))
    }

    pub fn coefficients(&self) -> [FieldElem; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    /// `(b2, b4, b6, b8)`.
    pub fn b_invariants(&self) -> [FieldElem; 4] {
        let f = self.ctx;
        let (a1, a2, a3, a4, a6) = (self.a1, self.a2, self.a3, self.a4, self.a6);
        let b2 = f.add(f.mul(a1, a1), f.scale(4, a2));
        let b4 = f.add(f.scale(2, a4), f.mul(a1, a3));
        let b6 = f.add(f.mul(a3, a3), f.scale(4, a6));
        let b8 = {
            let t1 = f.mul(f.mul(a1, a1), a6);
            let t2 = f.scale(4, f.mul(a2, a6));
            let t3 = f.mul(f.mul(a1, a3), a4);
            let t4 = f.mul(a2, f.mul(a3, a3));
            let t5 = f.mul(a4, a4);
            f.sub(f.add(f.sub(f.add(t1, t2), t3), t4), t5)
        };
        [b2, b4, b6, b8]
    }

    /// `-b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6`.
    pub fn discriminant(&self) -> FieldElem {
        let f = self.ctx;
        let [b2, b4, b6, b8] = self.b_invariants();
        let t1 = f.neg(f.mul(f.mul(b2, b2), b8));
        let t2 = f.scale(8, f.mul(b4, f.mul(b4, b4)));
        let t3 = f.scale(27, f.mul(b6, b6));
        let t4 = f.scale(9, f.mul(b2, f.mul(b4, b6)));
        f.add(f.sub(f.sub(t1, t2), t3), t4)
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    pub fn contains(&self, p: Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let f = self.ctx;
                f.mul(y, f.add(y, f.add(f.mul(self.a1, x), self.a3))) == self.rhs(x)
            }
        }
    }

    fn rhs(&self, x: FieldElem) -> FieldElem {
        let f = self.ctx;
        // ((x + a2) x + a4) x + a6
        f.add(
            f.mul(f.add(f.mul(f.add(x, self.a2), x), self.a4), x),
            self.a6,
        )
    }

    /// Affine points by a full `(x, y)` scan.
    pub fn affine_points(&self) -> Vec<Point> {
        let f = self.ctx;
        let mut out = Vec::new();
        for x in f.enumerate() {
            let rhs = self.rhs(x);
            let lin = f.add(f.mul(self.a1, x), self.a3);
            for y in f.enumerate() {
                if f.mul(y, f.add(y, lin)) == rhs {
                    out.push(Point::Affine(x, y));
                }
            }
        }
        out
    }

    /// `#E(F_q)`, including the point at infinity.
    pub fn point_count(&self) -> u64 {
        let f = self.ctx;
        let mut count = 1u64;
        for x in f.enumerate() {
            let rhs = self.rhs(x);
            let lin = f.add(f.mul(self.a1, x), self.a3);
            count += f
                .enumerate()
                .filter(|&y| f.mul(y, f.add(y, lin)) == rhs)
                .count() as u64;
        }
        count
    }

    /// Frobenius trace `q + 1 - #E(F_q)`.
    pub fn trace(&self) -> i64 {
        self.ctx.order() as i64 + 1 - self.point_count() as i64
    }

    pub fn negate(&self, p: Point) -> Point {
        let f = self.ctx;
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let lin = f.add(f.mul(self.a1, x), self.a3);
                Point::Affine(x, f.neg(f.add(y, lin)))
            }
        }
    }

    pub fn add(&self, p: Point, q: Point) -> Point {
        let f = self.ctx;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q,
            (_, Point::Infinity) => return p,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        if x1 == x2 && self.negate(p) == q {
            return Point::Infinity;
        }
        let lambda = if x1 == x2 {
            // tangent: (3x^2 + 2 a2 x + a4 - a1 y) / (2y + a1 x + a3)
            let num = f.sub(
                f.add(
                    f.add(f.scale(3, f.mul(x1, x1)), f.scale(2, f.mul(self.a2, x1))),
                    self.a4,
                ),
                f.mul(self.a1, y1),
            );
            let den = f.add(f.add(f.scale(2, y1), f.mul(self.a1, x1)), self.a3);
            f.div(num, den)
                .expect("non-2-torsion point has nonzero tangent denominator")
        } else {
            f.div(f.sub(y2, y1), f.sub(x2, x1))
                .expect("distinct x-coordinates")
        };
        let nu = f.sub(y1, f.mul(lambda, x1));
        let x3 = f.sub(
            f.sub(
                f.sub(
                    f.add(f.mul(lambda, lambda), f.mul(self.a1, lambda)),
                    self.a2,
                ),
                x1,
            ),
            x2,
        );
        let y3 = f.sub(f.sub(f.neg(f.mul(f.add(lambda, self.a1), x3)), nu), self.a3);
        Point::Affine(x3, y3)
    }

    /// Order of a point by repeated addition.
    pub fn point_order(&self, p: Point) -> u64 {
        let mut acc = p;
        let mut k = 1;
        while acc != Point::Infinity {
            acc = self.add(acc, p);
            k += 1;
        }
        k
    }

    /// `E(F_q) = Z/n1 x Z/n2` with `n1` the group exponent.
    pub fn group_shape(&self) -> GroupShape {
        let points = self.affine_points();
        let order = points.len() as u64 + 1;
        let mut exponent = 1u64;
        for &p in &points {
            if exponent == order {
                break;
            }
            exponent = exponent.lcm(&self.point_order(p));
        }
        GroupShape {
            n1: exponent,
            n2: order / exponent,
        }
    }

    /// Image under `x = u^2 x' + r`, `y = u^3 y' + u^2 s x' + t`.
    pub fn transform(
        &self,
        u: FieldElem,
        r: FieldElem,
        s: FieldElem,
        t: FieldElem,
    ) -> Result<Self> {
        let f = self.ctx;
        let (a1, a2, a3, a4, a6) = (self.a1, self.a2, self.a3, self.a4, self.a6);
        let ui = f.inv(u)?;
        let ui2 = f.mul(ui, ui);
        let ui3 = f.mul(ui2, ui);
        let ui4 = f.mul(ui2, ui2);
        let ui6 = f.mul(ui3, ui3);
        let n1 = f.add(a1, f.scale(2, s));
        let n2 = f.sub(f.add(f.sub(a2, f.mul(s, a1)), f.scale(3, r)), f.mul(s, s));
        let n3 = f.add(f.add(a3, f.mul(r, a1)), f.scale(2, t));
        let n4 = {
            let mut v = f.sub(a4, f.mul(s, a3));
            v = f.add(v, f.scale(2, f.mul(r, a2)));
            v = f.sub(v, f.mul(f.add(t, f.mul(r, s)), a1));
            v = f.add(v, f.scale(3, f.mul(r, r)));
            f.sub(v, f.scale(2, f.mul(s, t)))
        };
        let n6 = {
            let r2 = f.mul(r, r);
            let mut v = f.add(a6, f.mul(r, a4));
            v = f.add(v, f.mul(r2, a2));
            v = f.add(v, f.mul(r2, r));
            v = f.sub(v, f.mul(t, a3));
            v = f.sub(v, f.mul(t, t));
            f.sub(v, f.mul(f.mul(r, t), a1))
        };
        Ok(Self::new_unchecked(
            f,
            [
                f.mul(n1, ui),
                f.mul(n2, ui2),
                f.mul(n3, ui3),
                f.mul(n4, ui4),
                f.mul(n6, ui6),
            ],
        ))
    }

    /// Number of substitutions `(u, r, s, t)` fixing the equation.
    pub fn aut_count(&self) -> u64 {
        let f = self.ctx;
        let mut count = 0;
        for u in f.enumerate().skip(1) {
            for r in f.enumerate() {
                for s in f.enumerate() {
                    for t in f.enumerate() {
                        let image = self.transform(u, r, s, t).expect("u is nonzero");
                        if image.coefficients() == self.coefficients() {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }
}

/// `E(F_q) = Z/n1 x Z/n2` with `n2 | n1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupShape {
    pub n1: u64,
    pub n2: u64,
}

impl GroupShape {
    pub fn order(&self) -> u64 {
        self.n1 * self.n2
    }
}

/// A finite abelian group `Z/m1 x Z/m2` with `m2 | m1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AbelianSpec {
    pub m1: u64,
    pub m2: u64,
}

impl AbelianSpec {
    pub fn new(m1: u64, m2: u64) -> Result<Self> {
        if m1 == 0 || m2 == 0 {
            return Err(Error::Zero);
        }
        if m1 % m2 != 0 {
            return Err(Error::NotDivisible {
                divisor: m2,
                dividend: m1,
            });
        }
        Ok(AbelianSpec { m1, m2 })
    }

    pub fn trivial() -> Self {
        AbelianSpec { m1: 1, m2: 1 }
    }

    pub fn order(&self) -> u64 {
        self.m1 * self.m2
    }

    /// Splits `m1 = p^r n1` with `p` not dividing `n1`; returns `(r, n1, n2)`.
    pub fn p_split(&self, p: u64) -> (u32, u64, u64) {
        let r = valuation(p, self.m1);
        (r, self.m1 / p.pow(r), self.m2)
    }
}

/// Whether `A` injects into a group of the given shape: `m1 | n1` and `m2 | n2`.
pub fn embeds(spec: &AbelianSpec, shape: &GroupShape) -> bool {
    shape.n1 % spec.m1 == 0 && shape.n2 % spec.m2 == 0
}

/// Counts of nonsingular Weierstrass tuples over `F_q`, keyed by trace and
/// group shape. Every per-trace statistic of the census derives from this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeCensus {
    q: u64,
    counts: BTreeMap<(i64, GroupShape), u64>,
}

type Tally = BTreeMap<(i64, GroupShape), u64>;

fn merge(mut a: Tally, b: Tally) -> Tally {
    for (key, n) in b {
        *a.entry(key).or_insert(0) += n;
    }
    a
}

impl ShapeCensus {
    /// Enumerates all `q^5` tuples, split over `workers` threads (`0` = rayon
    /// default). The result does not depend on the worker count.
    pub fn compute(ctx: &FieldCtx, workers: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
        let q = ctx.order();
        let counts = pool.install(|| {
            (0..q * q)
                .into_par_iter()
                .map(|chunk| {
                    let a1 = ctx.element((chunk / q) as usize);
                    let a2 = ctx.element((chunk % q) as usize);
                    let mut tally = Tally::new();
                    for a3 in ctx.enumerate() {
                        for a4 in ctx.enumerate() {
                            for a6 in ctx.enumerate() {
                                let curve =
                                    WeierstrassCurve::new_unchecked(ctx, [a1, a2, a3, a4, a6]);
                                if curve.is_singular() {
                                    continue;
                                }
                                let shape = curve.group_shape();
                                let t = q as i64 + 1 - shape.order() as i64;
                                *tally.entry((t, shape)).or_insert(0) += 1;
                            }
                        }
                    }
                    tally
                })
                .reduce(Tally::new, merge)
        });
        Ok(ShapeCensus { q, counts })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn counts(&self) -> &BTreeMap<(i64, GroupShape), u64> {
        &self.counts
    }

    pub fn nonsingular_count(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `q^3 (q - 1)`, the order of the substitution group.
    pub fn group_order(&self) -> u64 {
        self.q.pow(3) * (self.q - 1)
    }

    fn weight(&self, count: u64) -> ExactRat {
        ExactRat::new(BigInt::from(count), BigInt::from(self.group_order()))
    }

    /// `sum 1/#Aut(E)` over classes with trace `t` and `A` embedded.
    pub fn bucket(&self, spec: &AbelianSpec, t: i64) -> ExactRat {
        let count = self
            .counts
            .iter()
            .filter(|((tt, shape), _)| *tt == t && embeds(spec, shape))
            .map(|(_, n)| n)
            .sum();
        self.weight(count)
    }

    pub fn traces(&self) -> Vec<i64> {
        let mut ts: Vec<i64> = self.counts.keys().map(|&(t, _)| t).collect();
        ts.dedup();
        ts
    }

    pub fn report(&self, spec: &AbelianSpec) -> CensusReport {
        let all = AbelianSpec::trivial();
        let buckets = self
            .traces()
            .into_iter()
            .map(|t| (t, (self.bucket(&all, t), self.bucket(spec, t))))
            .collect::<BTreeMap<_, _>>();
        let total_mass = buckets.values().map(|(m, _)| m.clone()).sum();
        CensusReport {
            q: self.q,
            buckets,
            total_mass,
        }
    }

    /// `P_q(C(A, t))`: the bucket at `t` divided by `q`.
    pub fn prob_class(&self, spec: &AbelianSpec, t: i64) -> ExactRat {
        self.bucket(spec, t) / ExactRat::from_integer(BigInt::from(self.q))
    }

    /// `sum_{t^2 <= 4q} U_{k-2}(t, q) P_q(C(A, t))`.
    pub fn moment(&self, spec: &AbelianSpec, k: u32) -> Result<ExactRat> {
        if k < 2 {
            return Err(Error::InvalidParams(format!("weight {k} < 2")));
        }
        Ok(self
            .traces()
            .into_iter()
            .map(|t| cheb_u_norm::<ExactRat>(t, self.q, k - 2) * self.prob_class(spec, t))
            .sum())
    }
}

/// Per-trace masses for all curves and for curves containing `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub q: u64,
    pub buckets: BTreeMap<i64, (ExactRat, ExactRat)>,
    pub total_mass: ExactRat,
}

#[derive(Serialize)]
struct BucketWire {
    t: i64,
    mass_all: String,
    #[serde(rename = "mass_A")]
    mass_a: String,
}

#[derive(Serialize)]
struct ReportWire {
    q: u64,
    buckets: Vec<BucketWire>,
    total_mass: String,
}

impl CensusReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        let wire = ReportWire {
            q: self.q,
            buckets: self
                .buckets
                .iter()
                .map(|(&t, (all, a))| BucketWire {
                    t,
                    mass_all: rat_string(all),
                    mass_a: rat_string(a),
                })
                .collect(),
            total_mass: rat_string(&self.total_mass),
        };
        serde_json::to_value(wire).expect("census report serializes")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }
}

/// Census of `F_q` restricted to `A`.
pub fn census(ctx: &FieldCtx, spec: &AbelianSpec, workers: usize) -> Result<CensusReport> {
    Ok(ShapeCensus::compute(ctx, workers)?.report(spec))
}

/// `P_q(C(A, t))`; zero outside the Hasse range.
pub fn prob_class(ctx: &FieldCtx, spec: &AbelianSpec, t: i64) -> Result<ExactRat> {
    Ok(ShapeCensus::compute(ctx, 0)?.prob_class(spec, t))
}

/// The weighted moment `E_q(U_{k-2}(t_E, q) Phi_A)`.
pub fn moment(ctx: &FieldCtx, spec: &AbelianSpec, k: u32) -> Result<ExactRat> {
    ShapeCensus::compute(ctx, 0)?.moment(spec, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use std::collections::HashSet;

    fn f(q: u64) -> FieldCtx {
        FieldCtx::for_order(q).unwrap()
    }

    #[test]
    fn discriminant_examples() {
        let f5 = f(5);
        assert_eq!(
            WeierstrassCurve::from_ints(&f5, [0, 0, 0, 1, 0]).discriminant(),
            f5.from_int(-64)
        );
        assert_eq!(f5.from_int(-64), f5.from_int(1));
        assert!(WeierstrassCurve::from_ints(&f5, [0, 0, 0, 0, 0]).is_singular());
        let f2 = f(2);
        assert_eq!(
            WeierstrassCurve::from_ints(&f2, [0, 0, 1, 0, 0]).discriminant(),
            FieldElem::ONE
        );
        assert!(WeierstrassCurve::new(&f5, [FieldElem::ZERO; 5]).is_err());
    }

    #[test]
    fn point_count_examples() {
        let f2 = f(2);
        let e = WeierstrassCurve::from_ints(&f2, [0, 0, 1, 0, 0]);
        assert_eq!(e.point_count(), 3);
        assert_eq!(e.group_shape(), GroupShape { n1: 3, n2: 1 });
        let f5 = f(5);
        assert_eq!(
            WeierstrassCurve::from_ints(&f5, [0, 0, 0, 0, 1]).point_count(),
            6
        );
        let e = WeierstrassCurve::from_ints(&f5, [0, 0, 0, -1, 0]);
        assert_eq!(e.point_count(), 8);
        assert_eq!(e.group_shape(), GroupShape { n1: 4, n2: 2 });
    }

    /// Orders of all points, counted independently of `group_shape`: the
    /// number of elements of order dividing `m` in `Z/n1 x Z/n2` is
    /// `gcd(m, n1) gcd(m, n2)`.
    fn shape_by_torsion_counts(e: &WeierstrassCurve) -> GroupShape {
        let mut pts = e.affine_points();
        pts.push(Point::Infinity);
        let n = pts.len() as u64;
        let orders: Vec<u64> = pts.iter().map(|&p| e.point_order(p)).collect();
        let n2 = (1..=n)
            .filter(|m| n % (m * m) == 0)
            .filter(|&m| orders.iter().filter(|&&o| m % o == 0).count() as u64 == m * m)
            .max()
            .unwrap();
        GroupShape { n1: n / n2, n2 }
    }

    #[test]
    fn shapes_agree_with_torsion_counts_and_hasse() {
        for q in [2u64, 3, 4, 5, 7] {
            let ctx = f(q);
            let mut seen = 0;
            for (i, coeffs) in all_tuples(&ctx).enumerate() {
                if i % 7 != 0 {
                    continue;
                }
                let e = WeierstrassCurve::new_unchecked(&ctx, coeffs);
                if e.is_singular() {
                    continue;
                }
                let shape = e.group_shape();
                assert_eq!(shape, shape_by_torsion_counts(&e));
                assert_eq!(shape.n1 % shape.n2, 0);
                assert_eq!((q - 1) % shape.n2, 0);
                let t = e.trace();
                assert!((t * t) as u64 <= 4 * q);
                for p in e.affine_points() {
                    assert!(e.contains(p));
                    assert!(e.contains(e.negate(p)));
                    assert_eq!(e.add(p, e.negate(p)), Point::Infinity);
                }
                seen += 1;
            }
            assert!(seen > 0);
        }
    }

    fn all_tuples(ctx: &FieldCtx) -> impl Iterator<Item = [FieldElem; 5]> + '_ {
        let q = ctx.order() as usize;
        (0..q.pow(5)).map(move |mut i| {
            let mut c = [FieldElem::ZERO; 5];
            for slot in c.iter_mut() {
                *slot = ctx.element(i % q);
                i /= q;
            }
            c
        })
    }

    /// Exhaustive search for an injective homomorphism Z/m1 x Z/m2 -> Z/n1 x Z/n2.
    fn injects_brute(m1: u64, m2: u64, n1: u64, n2: u64) -> bool {
        let elems: Vec<(u64, u64)> = (0..n1).flat_map(|a| (0..n2).map(move |b| (a, b))).collect();
        let mul = |k: u64, (a, b): (u64, u64)| ((k * a) % n1, (k * b) % n2);
        let order = |g: (u64, u64)| (1..=n1 * n2).find(|&k| mul(k, g) == (0, 0)).unwrap();
        for &g in &elems {
            if m1 % order(g) != 0 {
                continue;
            }
            for &h in &elems {
                if m2 % order(h) != 0 {
                    continue;
                }
                let mut image = HashSet::new();
                for i in 0..m1 {
                    for j in 0..m2 {
                        let (a, b) = mul(i, g);
                        let (c, d) = mul(j, h);
                        image.insert(((a + c) % n1, (b + d) % n2));
                    }
                }
                if image.len() as u64 == m1 * m2 {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn embedding_criterion_matches_brute_force() {
        assert!(embeds(
            &AbelianSpec::new(2, 1).unwrap(),
            &GroupShape { n1: 4, n2: 1 }
        ));
        assert!(!embeds(
            &AbelianSpec::new(2, 2).unwrap(),
            &GroupShape { n1: 4, n2: 1 }
        ));
        assert!(embeds(
            &AbelianSpec::new(6, 2).unwrap(),
            &GroupShape { n1: 12, n2: 2 }
        ));
        assert!(injects_brute(6, 2, 12, 2));
        for n1 in 1..=48u64 {
            for n2 in (1..=n1).filter(|d| n1 % d == 0 && n1 * d <= 48) {
                for m1 in 1..=n1 {
                    for m2 in (1..=m1).filter(|d| m1 % d == 0 && m1 * d <= n1 * n2) {
                        let spec = AbelianSpec::new(m1, m2).unwrap();
                        let shape = GroupShape { n1, n2 };
                        assert_eq!(
                            embeds(&spec, &shape),
                            injects_brute(m1, m2, n1, n2),
                            "A = ({m1},{m2}) into ({n1},{n2})"
                        );
                        if embeds(&spec, &shape) {
                            assert_eq!(shape.order() % spec.order(), 0);
                        }
                    }
                }
            }
        }
        assert!(AbelianSpec::new(4, 3).is_err());
    }

    #[test]
    fn automorphism_examples() {
        let f5 = f(5);
        // j not in {0, 1728}
        let e = WeierstrassCurve::from_ints(&f5, [0, 0, 0, 1, 1]);
        assert!(!e.is_singular());
        assert_eq!(e.aut_count(), 2);
        let f7 = f(7);
        assert_eq!(
            WeierstrassCurve::from_ints(&f7, [0, 0, 0, 0, 1]).aut_count(),
            6
        );
        let f2 = f(2);
        let ss = WeierstrassCurve::from_ints(&f2, [0, 0, 1, 0, 0]);
        // over F_2 itself only two of the 24 geometric automorphisms are rational
        assert_eq!(ss.aut_count(), 2);
    }

    /// Splits all nonsingular tuples into orbits under the substitution group.
    fn orbit_sizes(ctx: &FieldCtx) -> Vec<(u64, u64)> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for coeffs in all_tuples(ctx) {
            let e = WeierstrassCurve::new_unchecked(ctx, coeffs);
            if e.is_singular() || seen.contains(&coeffs) {
                continue;
            }
            let mut orbit = HashSet::new();
            for u in ctx.enumerate().skip(1) {
                for r in ctx.enumerate() {
                    for s in ctx.enumerate() {
                        for t in ctx.enumerate() {
                            orbit.insert(e.transform(u, r, s, t).unwrap().coefficients());
                        }
                    }
                }
            }
            out.push((orbit.len() as u64, e.aut_count()));
            seen.extend(orbit);
        }
        out
    }

    #[test]
    fn orbit_stabilizer_consistency() {
        for q in [2u64, 3, 4, 5] {
            let ctx = f(q);
            let group = q.pow(3) * (q - 1);
            let orbits = orbit_sizes(&ctx);
            let mut total = 0;
            let mut mass = ExactRat::zero();
            for (size, aut) in orbits {
                assert_eq!(size * aut, group, "q = {q}");
                total += size;
                mass += ExactRat::new(BigInt::one(), BigInt::from(aut));
            }
            assert_eq!(total, q.pow(4) * (q - 1));
            assert_eq!(mass, ExactRat::from_integer(BigInt::from(q)));
        }
    }

    #[test]
    fn census_basics() {
        let ctx = f(5);
        let census = ShapeCensus::compute(&ctx, 2).unwrap();
        assert_eq!(census.nonsingular_count(), 5u64.pow(4) * 4);
        let report = census.report(&AbelianSpec::trivial());
        assert_eq!(report.total_mass, ExactRat::from_integer(BigInt::from(5)));
        assert_eq!(
            census.moment(&AbelianSpec::trivial(), 2).unwrap(),
            ExactRat::one()
        );
        // 5 | #E forces t = 1 (mod 5)
        let z5 = AbelianSpec::new(5, 1).unwrap();
        for t in census.traces() {
            if t.rem_euclid(5) != 1 {
                assert!(census.bucket(&z5, t).is_zero());
            }
        }
        assert!(!census.bucket(&z5, 1).is_zero());
        // A = Z/15 x Z/3 cannot embed since 3 does not divide q - 1
        assert!(census
            .moment(&AbelianSpec::new(15, 3).unwrap(), 4)
            .unwrap()
            .is_zero());
        assert!(census.prob_class(&AbelianSpec::trivial(), 9).is_zero());
        assert!(census.moment(&AbelianSpec::trivial(), 1).is_err());
    }

    #[test]
    fn census_parity_at_q2() {
        let ctx = f(2);
        let census = ShapeCensus::compute(&ctx, 1).unwrap();
        let z2 = AbelianSpec::new(2, 1).unwrap();
        for t in census.traces() {
            let b = census.bucket(&z2, t);
            if t % 2 == 0 {
                assert!(b.is_zero());
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let ctx = f(2);
        let report = census(&ctx, &AbelianSpec::new(2, 1).unwrap(), 1).unwrap();
        let v = report.to_json_value();
        assert_eq!(v["q"], 2);
        assert_eq!(v["total_mass"], "2/1");
        let b = v["buckets"].as_array().unwrap();
        assert!(b
            .iter()
            .all(|x| x.get("mass_A").is_some() && x.get("mass_all").is_some()));
    }
}

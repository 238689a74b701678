//! Solution counts of the diagonal systems behind the power sums of `T`.
//!
//! Write `fp(x) = (x^2, x^{d1}, x^{d2})`. Expanding `T = S(1) + S(lambda)`
//! and summing over `(a, b, c)` gives
//!
//! ```text
//! sum T^j = q^3 * sum_{y in {1, lambda}^j} #{ (x_1..x_j) : sum_i y_i fp(x_i) = 0 }
//! ```
//!
//! The count only depends on how many `y_i` equal `lambda` (the `x_i` are
//! interchangeable, and `lambda^{-2}` is a square of `F_{q0}` that
//! `fp(lambda^{-1} x)` absorbs), and is unchanged when that number `c` is
//! replaced by `j - c`. Seven numbers therefore carry all four moments; see
//! [`PatternCounts`].
//!
//! Pair fingerprints `y1 fp(x1) + y2 fp(x2)` are tallied in open-addressed
//! tables ([`crate::count_table`]), which turns the quartic systems into
//! `O(q^2)` work. Two layouts are provided:
//!
//! * [`FingerprintHistogram`] holds all `q^2` pairs at once. It is what the
//!   lemma statements are phrased in and is used for small `q`.
//! * [`PatternCounts::sharded`] groups pairs by their first coordinate `u`
//!   and only keeps the shards for `u` and `-u` alive, so memory stays
//!   `O(q)`. Pairs with `x1^2 + y x2^2 = u` are enumerated by solving for
//!   `x2` with a square root from the log table.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::count_table::CountTable;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, LOG_ZERO};
use crate::params::{CodeContext, CodeParams};

/// Largest `q^2` for which a full [`FingerprintHistogram`] is built.
pub const FULL_HISTOGRAM_PAIRS: u64 = 1 << 23;

/// Largest `q` whose fingerprints pack into one `u64`.
pub const MAX_PACKED_Q: u64 = 1 << 21;

fn add_checked(acc: &mut u128, x: u128) -> Result<()> {
    *acc = acc
        .checked_add(x)
        .ok_or(Error::IntegerOverflow("solution count"))?;
    Ok(())
}

fn mul_checked(x: u64, y: u64) -> u128 {
    x as u128 * y as u128
}

/// `(u, v, w)` packed as `(u q + v) q + w`.
#[derive(Debug, Clone, Copy)]
struct Packer {
    q: u64,
}

impl Packer {
    fn new(q: u64) -> Result<Self> {
        if q > MAX_PACKED_Q {
            return Err(Error::BudgetExceeded(format!(
                "fingerprints of q = {q} do not pack into 64 bits"
            )));
        }
        Ok(Packer { q })
    }

    #[inline]
    fn pack(&self, u: Elem, v: Elem, w: Elem) -> u64 {
        (u.index() as u64 * self.q + v.index() as u64) * self.q + w.index() as u64
    }

    /// Key of the componentwise negation.
    #[inline]
    fn negate(&self, f: &FieldCtx, key: u64) -> u64 {
        let q = self.q;
        let [u, v, w] = [key / (q * q), (key / q) % q, key % q].map(|i| f.neg(Elem(i as u32)));
        self.pack(u, v, w)
    }

    /// Key of the componentwise product with `y`.
    #[inline]
    fn scale(&self, f: &FieldCtx, key: u64, y: Elem) -> u64 {
        let q = self.q;
        let [u, v, w] = [key / (q * q), (key / q) % q, key % q].map(|i| f.mul(y, Elem(i as u32)));
        self.pack(u, v, w)
    }
}

/// Logs of `(x^2, x^{d1}, x^{d2})` for every `x`, by index.
fn fingerprint_logs(cc: &CodeContext) -> Vec<[u32; 3]> {
    let f = &cc.field;
    f.elements()
        .map(|x| cc.monomials(x).map(|e| f.log_of(e)))
        .collect()
}

/// Counts of `y1 fp(x1) + y2 fp(x2)` over all `q^2` pairs.
#[derive(Debug, Clone)]
pub struct FingerprintHistogram {
    pub scales: (Elem, Elem),
    packer: Packer,
    table: CountTable,
}

impl FingerprintHistogram {
    /// Work is split over `x1`; each worker fills a local table and the
    /// tables are summed, which is order independent.
    pub fn build(cc: &CodeContext, y1: Elem, y2: Elem) -> Result<Self> {
        let f = &cc.field;
        let q = f.q() as u64;
        if q * q > FULL_HISTOGRAM_PAIRS {
            return Err(Error::BudgetExceeded(format!(
                "full histogram over {} pairs exceeds 2^23",
                q * q
            )));
        }
        let packer = Packer::new(q)?;
        let logs = fingerprint_logs(cc);
        let scaled = |y: Elem| -> Vec<[u32; 3]> {
            let ly = f.log_of(y);
            logs.iter().map(|l| l.map(|e| f.log_mul(ly, e))).collect()
        };
        let (p1, p2) = (scaled(y1), scaled(y2));
        let table = p1
            .par_iter()
            .fold(
                || CountTable::with_capacity(q as usize),
                |mut table, a| {
                    for b in &p2 {
                        let [u, v, w] = [0, 1, 2].map(|i| f.from_log(f.log_add(a[i], b[i])));
                        table.add(packer.pack(u, v, w), 1);
                    }
                    table
                },
            )
            .reduce(CountTable::default, CountTable::merge);
        Ok(FingerprintHistogram {
            scales: (y1, y2),
            packer,
            table,
        })
    }

    pub fn get(&self, u: Elem, v: Elem, w: Elem) -> u64 {
        self.table.get(self.packer.pack(u, v, w))
    }

    pub fn total(&self) -> u64 {
        self.table.total()
    }

    /// Number of distinct fingerprints.
    pub fn support(&self) -> usize {
        self.table.len()
    }

    /// `(key, count)` entries; keys are `(u q + v) q + w` on element indices.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.table.iter()
    }

    fn get_key(&self, key: u64) -> u64 {
        self.table.get(key)
    }
}

/// Whether `H_{(-y1,-y2)}[-t] = H_{(y1,y2)}[t]` for every fingerprint `t`,
/// with both sides built by full enumeration.
pub fn negation_symmetry(
    cc: &CodeContext,
    plain: &FingerprintHistogram,
    negated: &FingerprintHistogram,
) -> bool {
    let f = &cc.field;
    let (y1, y2) = plain.scales;
    debug_assert_eq!(negated.scales, (f.neg(y1), f.neg(y2)));
    plain.support() == negated.support()
        && plain
            .entries()
            .all(|(key, n)| negated.get_key(plain.packer.negate(f, key)) == n)
}

/// The seven solution counts that determine the power sums of `T`.
///
/// With `F = fp`:
/// `c0 = #{F1 + F2 = 0}`, `c1 = #{F1 + lambda F2 = 0}`,
/// `b0 = #{F1 + F2 + F3 = 0}`, `b1 = #{F1 + F2 + lambda F3 = 0}`,
/// `a0 = #{F1 + F2 + F3 + F4 = 0}`, `a1 = #{F1 + F2 + F3 + lambda F4 = 0}`,
/// `a2 = #{F1 + F2 + lambda F3 + lambda F4 = 0}`, and
/// `square_sum = #{F1 + F2 = F3 + F4}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PatternCounts {
    pub c0: u128,
    pub c1: u128,
    pub b0: u128,
    pub b1: u128,
    pub a0: u128,
    pub a1: u128,
    pub a2: u128,
    pub square_sum: u128,
}

impl PatternCounts {
    /// From full histograms with scales `(1, 1)` and `(1, lambda)`.
    pub fn from_histograms(
        cc: &CodeContext,
        h11: &FingerprintHistogram,
        h1l: &FingerprintHistogram,
    ) -> Result<Self> {
        let f = &cc.field;
        let lambda = cc.lambda;
        debug_assert_eq!(h11.scales, (Elem::ONE, Elem::ONE));
        debug_assert_eq!(h1l.scales, (Elem::ONE, lambda));
        let pk = h11.packer;
        let z = Elem::ZERO;
        let mut out = PatternCounts {
            c0: h11.get(z, z, z) as u128,
            c1: h1l.get(z, z, z) as u128,
            ..Default::default()
        };
        let neg_lambda = f.neg(lambda);
        for x in f.elements() {
            let [u, v, w] = cc.monomials(x);
            let key = pk.pack(u, v, w);
            add_checked(&mut out.b0, h11.get_key(pk.negate(f, key)) as u128)?;
            add_checked(
                &mut out.b1,
                h11.get_key(pk.scale(f, key, neg_lambda)) as u128,
            )?;
        }
        for (key, n) in h11.entries() {
            let neg = pk.negate(f, key);
            add_checked(&mut out.a0, mul_checked(n, h11.get_key(neg)))?;
            add_checked(&mut out.a1, mul_checked(n, h1l.get_key(neg)))?;
            add_checked(&mut out.square_sum, mul_checked(n, n))?;
        }
        for (key, n) in h1l.entries() {
            add_checked(&mut out.a2, mul_checked(n, h1l.get_key(pk.negate(f, key))))?;
        }
        Ok(out)
    }

    /// Shard-by-shard computation in `O(q)` memory; see the module docs.
    pub fn sharded(cc: &CodeContext) -> Result<Self> {
        let f = &cc.field;
        let q = f.q() as u64;
        let builder = ShardBuilder::new(cc)?;
        let lambda = cc.lambda;
        let ll = f.log_of(lambda);

        // Representatives of {u, -u} for u != 0, plus u = 0 on its own.
        let reps: Vec<Elem> = f
            .elements()
            .filter(|&u| u.is_zero() || u.index() < f.neg(u).index())
            .collect();
        let partials = reps
            .par_iter()
            .map_init(
                || {
                    (
                        [(); 4].map(|_| CountTable::with_capacity(2 * q as usize)),
                        Vec::new(),
                    )
                },
                |(shards, roots), &u| -> Result<PatternCounts> {
                    let mut out = PatternCounts::default();
                    let nu = f.neg(u);
                    let [s11, s11n, s1l, s1ln] = shards;
                    builder.fill(u, 0, s11);
                    builder.fill(u, ll, s1l);
                    if u.is_zero() {
                        let zero = builder.key(Elem::ZERO, Elem::ZERO);
                        out.c0 = s11.get(zero) as u128;
                        out.c1 = s1l.get(zero) as u128;
                        out.b0 = out.c0;
                        out.b1 = out.c0;
                        out.a0 = builder.convolve(s11, s11)?;
                        out.a1 = builder.convolve(s11, s1l)?;
                        out.a2 = builder.convolve(s1l, s1l)?;
                        out.square_sum = builder.square_sum(s11)?;
                        return Ok(out);
                    }
                    builder.fill(nu, 0, s11n);
                    builder.fill(nu, ll, s1ln);
                    out.a0 = 2 * builder.convolve(s11, s11n)?;
                    out.a1 = builder.convolve(s11, s1ln)? + builder.convolve(s11n, s1l)?;
                    out.a2 = 2 * builder.convolve(s1l, s1ln)?;
                    out.square_sum = builder.square_sum(s11)? + builder.square_sum(s11n)?;
                    // Third coordinates: -fp(x) lands in shard u when
                    // x^2 = -u, and -lambda fp(x) when x^2 = -u / lambda.
                    for (target, shard) in [(u, &*s11), (nu, &*s11n)] {
                        let minus = f.neg(target);
                        builder.square_roots(minus, roots);
                        for &x in roots.iter() {
                            let [_, v, w] = cc.monomials(x);
                            add_checked(
                                &mut out.b0,
                                shard.get(builder.key(f.neg(v), f.neg(w))) as u128,
                            )?;
                        }
                        let over = f.div(minus, lambda).expect("lambda != 0");
                        builder.square_roots(over, roots);
                        let nl = f.neg(lambda);
                        for &x in roots.iter() {
                            let [_, v, w] = cc.monomials(x);
                            add_checked(
                                &mut out.b1,
                                shard.get(builder.key(f.mul(nl, v), f.mul(nl, w))) as u128,
                            )?;
                        }
                    }
                    Ok(out)
                },
            )
            .collect::<Result<Vec<_>>>()?;
        let mut total = PatternCounts::default();
        for p in partials {
            total.accumulate(&p)?;
        }
        Ok(total)
    }

    fn accumulate(&mut self, o: &PatternCounts) -> Result<()> {
        add_checked(&mut self.c0, o.c0)?;
        add_checked(&mut self.c1, o.c1)?;
        add_checked(&mut self.b0, o.b0)?;
        add_checked(&mut self.b1, o.b1)?;
        add_checked(&mut self.a0, o.a0)?;
        add_checked(&mut self.a1, o.a1)?;
        add_checked(&mut self.a2, o.a2)?;
        add_checked(&mut self.square_sum, o.square_sum)
    }

    /// `sum T^j` for `j = 1..4`.
    pub fn moments(&self, params: &CodeParams) -> [BigInt; 4] {
        let q3 = BigInt::from(params.q).pow(3);
        let b = |x: u128| BigInt::from(x);
        [
            BigInt::from(2) * &q3,
            &q3 * (b(self.c0) * 2 + b(self.c1) * 2),
            &q3 * (b(self.b0) * 2 + b(self.b1) * 6),
            &q3 * (b(self.a0) * 2 + b(self.a1) * 8 + b(self.a2) * 6),
        ]
    }
}

/// `#{x : fp(x) = 0}`, which the first moment `2 q^3` takes to be 1.
pub fn single_fingerprint_zeros(cc: &CodeContext) -> u64 {
    cc.field
        .elements()
        .filter(|&x| cc.monomials(x).iter().all(|e| e.is_zero()))
        .count() as u64
}

/// Enumerates the pairs `(x1, x2)` with `x1^2 + y x2^2 = u` and tallies
/// `(x1^{d1} + y x2^{d1}, x1^{d2} + y x2^{d2})`.
struct ShardBuilder<'a> {
    f: &'a FieldCtx,
    q: u64,
    /// Logs of `x^2`, `x^{d1}`, `x^{d2}` by element index.
    logs: Vec<[u32; 3]>,
    d1: u64,
    d2: u64,
}

impl<'a> ShardBuilder<'a> {
    fn new(cc: &'a CodeContext) -> Result<Self> {
        let q = cc.field.q() as u64;
        Packer::new(q)?;
        Ok(ShardBuilder {
            f: &cc.field,
            q,
            logs: fingerprint_logs(cc),
            d1: cc.d1,
            d2: cc.d2,
        })
    }

    #[inline]
    fn key(&self, v: Elem, w: Elem) -> u64 {
        v.index() as u64 * self.q + w.index() as u64
    }

    /// Fills `out` with the shard at `u` for scale `y = pi^{ly}`.
    fn fill(&self, u: Elem, ly: u32, out: &mut CountTable) {
        let f = self.f;
        let n = f.order() as u64;
        let lu = f.log_of(u);
        out.clear();
        let half = (n / 2) as u32;
        for lx in &self.logs {
            // y x2^2 = u - x1^2
            let r = f.log_add(lu, f.log_neg(lx[0]));
            let emit = |h: u32, out: &mut CountTable| {
                let (e1, e2) = if h == LOG_ZERO {
                    (LOG_ZERO, LOG_ZERO)
                } else {
                    let h = h as u64;
                    (((h * self.d1) % n) as u32, ((h * self.d2) % n) as u32)
                };
                let v = f.log_add(lx[1], f.log_mul(ly, e1));
                let w = f.log_add(lx[2], f.log_mul(ly, e2));
                out.add(self.key(f.from_log(v), f.from_log(w)), 1);
            };
            if r == LOG_ZERO {
                emit(LOG_ZERO, out);
                continue;
            }
            let s = f.log_div(r, ly);
            if s.is_multiple_of(2) {
                emit(s / 2, out);
                emit(s / 2 + half, out);
            }
        }
    }

    /// Square roots of `a` in `F_q`, written into `out`.
    fn square_roots(&self, a: Elem, out: &mut Vec<Elem>) {
        out.clear();
        let f = self.f;
        match f.log_of(a) {
            LOG_ZERO => out.push(Elem::ZERO),
            l if l % 2 == 0 => {
                out.push(f.from_log(l / 2));
                out.push(f.from_log(l / 2 + f.order() / 2));
            }
            _ => {}
        }
    }

    #[inline]
    fn negate(&self, key: u64) -> u64 {
        let f = self.f;
        let v = f.neg(Elem((key / self.q) as u32));
        let w = f.neg(Elem((key % self.q) as u32));
        self.key(v, w)
    }

    /// `sum_k a[k] b[-k]`.
    fn convolve(&self, a: &CountTable, b: &CountTable) -> Result<u128> {
        let mut acc = 0u128;
        for (k, n) in a.iter() {
            add_checked(&mut acc, mul_checked(n, b.get(self.negate(k))))?;
        }
        Ok(acc)
    }

    fn square_sum(&self, a: &CountTable) -> Result<u128> {
        let mut acc = 0u128;
        for (_, n) in a.iter() {
            add_checked(&mut acc, mul_checked(n, n))?;
        }
        Ok(acc)
    }
}

/// One claimed count against the computed one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub name: String,
    pub expected: u128,
    pub actual: u128,
}

impl LemmaCheck {
    fn new(name: &str, expected: u128, actual: u128) -> Self {
        LemmaCheck {
            name: name.to_string(),
            expected,
            actual,
        }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }

    pub fn into_result(self) -> Result<u128> {
        if self.passed() {
            Ok(self.actual)
        } else {
            Err(Error::LemmaMismatch {
                name: self.name,
                expected: self.expected.to_string(),
                actual: self.actual.to_string(),
            })
        }
    }
}

/// The closed-form counts, stated for `q0 = 3 (mod 4)` where `lambda = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaValues {
    pub n2: u128,
    pub n2_bar: u128,
    pub n3: u128,
    pub n3_bar: u128,
    pub n4: u128,
    pub n4_bar: u128,
    pub n4_tilde: u128,
}

impl LemmaValues {
    pub fn closed_form(params: &CodeParams) -> Self {
        let (p, m, d) = (params.p as u128, params.m, params.d);
        let (pm, pd) = (p.pow(m), p.pow(d));
        let n3 = pm * pd + pm - pd;
        let n4 = 1 + (pm - 1) * (pd + 1) * (2 * pm - pd + 1);
        LemmaValues {
            n2: 1,
            n2_bar: 2 * pm - 1,
            n3,
            n3_bar: n3,
            n4,
            n4_bar: pm * pd * pd + pm - pd * pd,
            n4_tilde: n4,
        }
    }
}

/// Checks the seven counting lemmas against computed pattern counts.
///
/// The lemmas take `lambda = -1`, so they apply only when `q0 = 3 (mod 4)`;
/// otherwise [`Error::LemmaMismatch`] is not meaningful and `None` is
/// returned.
pub fn lemma_checks(params: &CodeParams, counts: &PatternCounts) -> Option<Vec<LemmaCheck>> {
    if params.q0_mod4 != 3 {
        return None;
    }
    let want = LemmaValues::closed_form(params);
    Some(vec![
        LemmaCheck::new("N2", want.n2, counts.c0),
        LemmaCheck::new("N2_bar", want.n2_bar, counts.c1),
        LemmaCheck::new("N3", want.n3, counts.b0),
        LemmaCheck::new("N3_bar", want.n3_bar, counts.b1),
        LemmaCheck::new("N4", want.n4, counts.a0),
        LemmaCheck::new("N4_bar", want.n4_bar, counts.a1),
        LemmaCheck::new("N4_tilde", want.n4_tilde, counts.square_sum),
    ])
}

/// `(N2, N2_bar)`, failing on a mismatch with the closed forms.
pub fn count_pair_systems(params: &CodeParams, counts: &PatternCounts) -> Result<(u128, u128)> {
    let checks = checked(params, counts)?;
    Ok((
        checks[0].clone().into_result()?,
        checks[1].clone().into_result()?,
    ))
}

/// `(N3, N3_bar)`, failing on a mismatch with the closed forms.
pub fn count_triple_systems(params: &CodeParams, counts: &PatternCounts) -> Result<(u128, u128)> {
    let checks = checked(params, counts)?;
    Ok((
        checks[2].clone().into_result()?,
        checks[3].clone().into_result()?,
    ))
}

/// `(N4, N4_bar, N4_tilde)`, failing on a mismatch with the closed forms.
pub fn count_quad_systems(
    params: &CodeParams,
    counts: &PatternCounts,
) -> Result<(u128, u128, u128)> {
    let checks = checked(params, counts)?;
    Ok((
        checks[4].clone().into_result()?,
        checks[5].clone().into_result()?,
        checks[6].clone().into_result()?,
    ))
}

fn checked(params: &CodeParams, counts: &PatternCounts) -> Result<Vec<LemmaCheck>> {
    lemma_checks(params, counts).ok_or_else(|| Error::LemmaMismatch {
        name: "counting lemmas".into(),
        expected: "q0 = 3 (mod 4)".into(),
        actual: format!("q0 = {} (mod 4)", params.q0_mod4),
    })
}

/// How often each solution count occurs over `(b, c) in (F_q^*)^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SublemmaDistribution {
    pub name: String,
    /// The count at `(b, c) = (1, 1)`.
    pub at_one: u64,
    /// Solution count -> number of `(b, c) != (1, 1)` attaining it.
    pub multiplicities: BTreeMap<u64, u64>,
}

/// Solution counts of
/// `x1^2 + x2^2 = 1, x1^{d1} + x2^{d1} = b, x1^{d2} + x2^{d2} = c` (`N1`),
/// the same with right-hand side `(-1, -b, -c)` (`N2`), and
/// `x1^2 - x2^2 = -1, x1^{d1} - x2^{d1} = -b, x1^{d2} - x2^{d2} = -c` (`N3`),
/// together with whether `N1(b, c) = N2(b, c)` for every `(b, c)`.
pub fn sublemma_distributions(cc: &CodeContext) -> Result<([SublemmaDistribution; 3], bool)> {
    let f = &cc.field;
    let builder = ShardBuilder::new(cc)?;
    let one = Elem::ONE;
    let minus = f.neg(one);
    let lminus = f.log_of(minus);
    let q = builder.q as usize;
    let mut shards = [(); 3].map(|_| CountTable::with_capacity(2 * q));
    builder.fill(one, 0, &mut shards[0]);
    builder.fill(minus, 0, &mut shards[1]);
    builder.fill(minus, lminus, &mut shards[2]);

    let nonzero = |key: u64| key / builder.q != 0 && !key.is_multiple_of(builder.q);
    // N1 reads its shard at (b, c); N2 and N3 at (-b, -c). Re-key all three
    // by (b, c).
    let lookup: [Box<dyn Fn(u64) -> u64 + '_>; 3] = [
        Box::new(|k| shards[0].get(k)),
        Box::new(|k| shards[1].get(builder.negate(k))),
        Box::new(|k| shards[2].get(builder.negate(k))),
    ];
    let key_one = builder.key(one, one);
    let names = ["N1", "N2", "N3"];
    let dists = [0, 1, 2].map(|i| {
        let mut multiplicities = BTreeMap::new();
        let mut hit = 0u64;
        let source = &shards[i];
        for (k, _) in source.iter() {
            let bc = if i == 0 { k } else { builder.negate(k) };
            if nonzero(bc) && bc != key_one {
                let n = lookup[i](bc);
                *multiplicities.entry(n).or_insert(0) += 1;
                hit += 1;
            }
        }
        let buckets = (q as u64 - 1).pow(2) - 1;
        if buckets > hit {
            *multiplicities.entry(0).or_insert(0) += buckets - hit;
        }
        SublemmaDistribution {
            name: names[i].to_string(),
            at_one: lookup[i](key_one),
            multiplicities,
        }
    });
    let mut keys: Vec<u64> = shards[0]
        .iter()
        .map(|(k, _)| k)
        .chain(shards[1].iter().map(|(k, _)| builder.negate(k)))
        .filter(|&k| nonzero(k))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let n1_equals_n2 = keys.iter().all(|&k| lookup[0](k) == lookup[1](k));
    Ok((dists, n1_equals_n2))
}

/// Checks the sub-lemma distributions: `N1(1,1) = N2(1,1) = q0 + 1` with the
/// value `2(q0 + 1)` taken `(q - q0) / (2(q0 + 1))` times and 0 otherwise,
/// and `N3(1,1) = q0 - 1` with `2(q0 - 1)` taken `(q - q0) / (2(q0 - 1))`
/// times. Returns `None` unless `q0 = 3 (mod 4)`.
pub fn sublemma_checks(
    params: &CodeParams,
    dists: &[SublemmaDistribution; 3],
    n1_equals_n2: bool,
) -> Option<Vec<LemmaCheck>> {
    if params.q0_mod4 != 3 {
        return None;
    }
    let (q, q0) = (params.q as u128, params.q0 as u128);
    let mut checks = Vec::new();
    for (dist, base) in dists.iter().zip([q0 + 1, q0 + 1, q0 - 1]) {
        let name = &dist.name;
        checks.push(LemmaCheck::new(
            &format!("{name}(1,1)"),
            base,
            dist.at_one as u128,
        ));
        let large = dist
            .multiplicities
            .get(&(2 * base as u64))
            .copied()
            .unwrap_or(0);
        checks.push(LemmaCheck::new(
            &format!("{name} buckets at {}", 2 * base),
            (q - q0) / (2 * base),
            large as u128,
        ));
        let other = dist
            .multiplicities
            .keys()
            .filter(|&&v| v != 0 && v != 2 * base as u64)
            .count();
        checks.push(LemmaCheck::new(
            &format!("{name} other values"),
            0,
            other as u128,
        ));
    }
    checks.push(LemmaCheck::new(
        "N1 = N2 everywhere",
        1,
        n1_equals_n2 as u128,
    ));
    Some(checks)
}

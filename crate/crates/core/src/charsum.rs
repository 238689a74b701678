//! `T(a,b,c)` evaluated literally as an element of `Z[zeta_p]`.
//!
//! A character sum `sum_x zeta_p^{f(x)}` is stored as the count vector
//! `n_j = #{x : f(x) = j}`. Since `1 + zeta + ... + zeta^{p-1} = 0` is the only
//! relation among the powers of `zeta_p`, the sum is an ordinary integer
//! exactly when `n_1 = ... = n_{p-1}`, and it then equals `n_0 - n_1`. No
//! floating point is involved anywhere, so the signs of the Gauss sums come
//! out exactly.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::params::CodeContext;
use crate::quadform::Classifier;
use crate::spectrum::ValueDistribution;

/// `sum_j n_j zeta_p^j` as its count vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclotomicSum {
    pub counts: Vec<u64>,
}

impl CyclotomicSum {
    pub fn zero(p: u32) -> Self {
        CyclotomicSum {
            counts: vec![0; p as usize],
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn add(&self, other: &CyclotomicSum) -> CyclotomicSum {
        CyclotomicSum {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn reduce_rational(&self) -> Result<i64> {
        reduce_rational(&self.counts)
    }
}

/// `n_0 - n_1` if all of `n_1, ..., n_{p-1}` agree, [`Error::NotRational`]
/// otherwise.
pub fn reduce_rational(counts: &[u64]) -> Result<i64> {
    let tail = &counts[1..];
    if tail.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::NotRational {
            tail: tail.to_vec(),
        });
    }
    Ok(counts[0] as i64 - tail.first().copied().unwrap_or(0) as i64)
}

/// `sum_x zeta_p^{Tr^{q0}_p(scale * Q_{a,b,c}(x))}`, iterating every `x`.
pub fn form_char_sum(cc: &CodeContext, a: Elem, b: Elem, c: Elem, scale: Elem) -> CyclotomicSum {
    let f = &cc.field;
    let d = cc.params.d;
    let mut sum = CyclotomicSum::zero(f.p());
    for x in f.elements() {
        let q = cc.quadratic_form(a, b, c, x);
        let j = f
            .relative_trace(f.mul(scale, q), d, 1)
            .expect("1 | d | m")
            .index();
        sum.counts[j as usize] += 1;
    }
    sum
}

/// `T(a,b,c)`: the form sums at scales 1 and `lambda`, added and reduced.
pub fn t_oracle(cc: &CodeContext, a: Elem, b: Elem, c: Elem) -> Result<i64> {
    t_oracle_with_lambda(cc, a, b, c, cc.lambda)
}

/// As [`t_oracle`] with an arbitrary second scale; any non-square of
/// `F_{p^t}` gives the same value.
pub fn t_oracle_with_lambda(
    cc: &CodeContext,
    a: Elem,
    b: Elem,
    c: Elem,
    lambda: Elem,
) -> Result<i64> {
    form_char_sum(cc, a, b, c, Elem::ONE)
        .add(&form_char_sum(cc, a, b, c, lambda))
        .reduce_rational()
}

/// Exhaustive evaluation of `T` from precomputed trace rows.
///
/// Because the scales lie in `F_{q0}`, `Tr^{q0}_p(y Q(x)) = Tr^q_p(y a x^2 +
/// y b x^{d1} + y c x^{d2})`, and `Tr^q_p(z x^e)` is tabulated per monomial
/// as one byte per `(z, x)`. The scale-`lambda` row of `z` is the row of
/// `lambda z`.
pub struct OracleSweep<'a> {
    cc: &'a CodeContext,
    q: usize,
    p: u8,
    /// `rows[e][z * q + x] = Tr^q_p(z x^{e})`.
    rows: [Vec<u8>; 3],
}

/// Largest `3 q^2` for which [`OracleSweep`] builds its byte tables.
pub const ORACLE_TABLE_LIMIT: u64 = 1 << 28;

impl<'a> OracleSweep<'a> {
    pub fn new(cc: &'a CodeContext) -> Result<Self> {
        let f = &cc.field;
        let q = f.q() as usize;
        if 3 * (q as u64).pow(2) > ORACLE_TABLE_LIMIT {
            return Err(Error::BudgetExceeded(format!(
                "oracle trace rows for q = {q} exceed 2^28 bytes"
            )));
        }
        let trace = f.trace_table(1)?;
        let powers: Vec<[Elem; 3]> = f.elements().map(|x| cc.monomials(x)).collect();
        let rows = [0, 1, 2].map(|e| {
            let mut table = vec![0u8; q * q];
            table
                .par_chunks_mut(q)
                .zip(f.elements().collect::<Vec<_>>())
                .for_each(|(row, z)| {
                    for (slot, mono) in row.iter_mut().zip(&powers) {
                        *slot = trace[f.mul(z, mono[e]).index() as usize] as u8;
                    }
                });
            table
        });
        Ok(OracleSweep {
            cc,
            q,
            p: f.p() as u8,
            rows,
        })
    }

    fn row(&self, e: usize, z: Elem) -> &[u8] {
        &self.rows[e][z.index() as usize * self.q..][..self.q]
    }

    /// Row of `Tr^q_p(a x^2 + b x^{d1})` over all `x`, reduced mod `p`.
    fn prefix(&self, a: Elem, b: Elem, out: &mut [u8]) {
        let p = self.p;
        for ((o, &x), &y) in out.iter_mut().zip(self.row(0, a)).zip(self.row(1, b)) {
            let s = x + y;
            *o = if s >= p { s - p } else { s };
        }
    }

    /// Count vector of `prefix + Tr(c x^{d2})`.
    fn complete(&self, prefix: &[u8], c: Elem, scratch: &mut [u8], counts: &mut [u64]) {
        let p = self.p;
        for ((o, &x), &y) in scratch.iter_mut().zip(prefix).zip(self.row(2, c)) {
            let s = x + y;
            *o = if s >= p { s - p } else { s };
        }
        let mut rest = self.q as u64;
        for (j, slot) in counts.iter_mut().enumerate().skip(1) {
            let n = scratch.iter().filter(|&&v| v == j as u8).count() as u64;
            *slot = n;
            rest -= n;
        }
        counts[0] = rest;
    }

    /// `T(a, b, c)` for one triple.
    pub fn t_value(&self, a: Elem, b: Elem, c: Elem) -> Result<i64> {
        let f = &self.cc.field;
        let lambda = self.cc.lambda;
        let mut prefix = vec![0u8; self.q];
        let mut scratch = vec![0u8; self.q];
        let mut one = vec![0u64; self.p as usize];
        let mut other = vec![0u64; self.p as usize];
        self.prefix(a, b, &mut prefix);
        self.complete(&prefix, c, &mut scratch, &mut one);
        self.prefix(f.mul(lambda, a), f.mul(lambda, b), &mut prefix);
        self.complete(&prefix, f.mul(lambda, c), &mut scratch, &mut other);
        let sum: Vec<u64> = one.iter().zip(&other).map(|(x, y)| x + y).collect();
        reduce_rational(&sum)
    }
}

/// Outcome of comparing the oracle against the classifier on every triple.
#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    pub triples: u128,
    pub mismatches: u128,
    /// First disagreement found: `(a, b, c, oracle, classifier)` as indices.
    pub first_mismatch: Option<(u32, u32, u32, i64, i64)>,
    pub distribution: ValueDistribution,
}

/// Runs the oracle and the classifier on all `q^3` triples.
pub fn compare_with_classifier(cc: &CodeContext) -> Result<OracleComparison> {
    let sweep = OracleSweep::new(cc)?;
    let classifier = Classifier::new(cc);
    let f = &cc.field;
    let lambda = cc.lambda;
    let q = sweep.q;
    let pz = sweep.p as usize;
    let elems: Vec<Elem> = f.elements().collect();
    type Partial = (u128, Option<(u32, u32, u32, i64, i64)>, ValueDistribution);
    let partials = elems
        .par_iter()
        .map(|&a| -> Result<Partial> {
            let mut mismatches = 0u128;
            let mut first = None;
            let mut tally = std::collections::BTreeMap::new();
            let (mut pre1, mut pre2) = (vec![0u8; q], vec![0u8; q]);
            let mut scratch = vec![0u8; q];
            let (mut c1, mut c2) = (vec![0u64; pz], vec![0u64; pz]);
            let mut sum = vec![0u64; pz];
            let mut gram_scratch = Vec::new();
            let la = f.mul(lambda, a);
            for &b in &elems {
                sweep.prefix(a, b, &mut pre1);
                sweep.prefix(la, f.mul(lambda, b), &mut pre2);
                let gram = classifier.prefix(a, b);
                let nonzero = !(a.is_zero() && b.is_zero());
                for &c in &elems {
                    sweep.complete(&pre1, c, &mut scratch, &mut c1);
                    sweep.complete(&pre2, f.mul(lambda, c), &mut scratch, &mut c2);
                    for ((s, x), y) in sum.iter_mut().zip(&c1).zip(&c2) {
                        *s = x + y;
                    }
                    let oracle = reduce_rational(&sum)?;
                    let class = classifier
                        .classify_with_prefix(&gram, nonzero, c, &mut gram_scratch)?
                        .t_value;
                    if oracle != class {
                        mismatches += 1;
                        first.get_or_insert((a.index(), b.index(), c.index(), oracle, class));
                    }
                    *tally.entry(oracle).or_insert(0u128) += 1;
                }
            }
            Ok((mismatches, first, ValueDistribution { freq: tally }))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = OracleComparison {
        triples: (q as u128).pow(3),
        mismatches: 0,
        first_mismatch: None,
        distribution: ValueDistribution::default(),
    };
    for (n, first, dist) in partials {
        out.mismatches += n;
        if out.first_mismatch.is_none() {
            out.first_mismatch = first;
        }
        out.distribution = out.distribution.merge(&dist);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::classify;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_triple(cc: &CodeContext, rng: &mut impl Rng) -> [Elem; 3] {
        let q = cc.field.q() as u64;
        [0; 3].map(|_| cc.field.elem(rng.random_range(0..q)).unwrap())
    }

    #[test]
    fn reduction() {
        assert_eq!(reduce_rational(&[243, 0, 0]), Ok(243));
        assert_eq!(reduce_rational(&[10, 4, 4, 4, 4]), Ok(6));
        assert_eq!(
            reduce_rational(&[1, 2, 3]),
            Err(Error::NotRational { tail: vec![2, 3] })
        );
    }

    #[test]
    fn zero_triple() {
        let cc = CodeContext::from_parts(3, 5, 1, 1).unwrap();
        let z = Elem::ZERO;
        let s = form_char_sum(&cc, z, z, z, Elem::ONE);
        assert_eq!(s.counts, vec![243, 0, 0]);
        assert_eq!(t_oracle(&cc, z, z, z), Ok(486));
    }

    #[test]
    fn odd_rank_single_sums_are_not_rational() {
        // Tr(x^2) has rank 5; a single Gauss sum of odd rank is
        // +-sqrt(-3)^5 times a rational, which is not rational.
        let cc = CodeContext::from_parts(3, 5, 1, 1).unwrap();
        let s = form_char_sum(&cc, Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ONE);
        assert_eq!(s.total(), 243);
        assert!(s.reduce_rational().is_err());
        let both = s.add(&form_char_sum(
            &cc,
            Elem::ONE,
            Elem::ZERO,
            Elem::ZERO,
            cc.lambda,
        ));
        assert_eq!(both.total(), 486);
        assert_eq!(both.reduce_rational(), Ok(0));
    }

    #[test]
    fn oracle_matches_classifier_on_random_triples() {
        for params in [(3, 5, 1, 1), (5, 5, 1, 1), (3, 10, 2, 2)] {
            let cc = CodeContext::from_parts(params.0, params.1, params.2, params.3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(31);
            for _ in 0..20 {
                let [a, b, c] = random_triple(&cc, &mut rng);
                let t = t_oracle(&cc, a, b, c).unwrap();
                assert_eq!(t, classify(&cc, a, b, c).unwrap().t_value, "{params:?}");
            }
        }
    }

    #[test]
    fn another_non_square_gives_the_same_value() {
        let cc = CodeContext::from_parts(3, 10, 2, 2).unwrap();
        let f = &cc.field;
        let other = f.pow(cc.lambda, 3);
        assert_ne!(other, cc.lambda);
        assert_eq!(f.quadratic_character(other, 2), Ok(-1));
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..5 {
            let [a, b, c] = random_triple(&cc, &mut rng);
            assert_eq!(
                t_oracle_with_lambda(&cc, a, b, c, other),
                t_oracle(&cc, a, b, c)
            );
        }
    }

    #[test]
    fn sweep_rows_match_the_literal_sum() {
        let cc = CodeContext::from_parts(3, 5, 1, 1).unwrap();
        let sweep = OracleSweep::new(&cc).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..50 {
            let [a, b, c] = random_triple(&cc, &mut rng);
            assert_eq!(sweep.t_value(a, b, c), t_oracle(&cc, a, b, c));
        }
    }
}

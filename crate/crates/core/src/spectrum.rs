//! Value distribution of `T` and weight distribution of the code.
//!
//! Frequencies are exact throughout: `u128` for counts (the largest total is
//! `q^3 <= 2^72`) and `BigInt` for the closed forms and power sums.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::params::{CodeContext, CodeParams};
use crate::quadform::{admissible_values, Classifier};

/// Map from a value of `T` to the number of triples `(a, b, c)` giving it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValueDistribution {
    pub freq: BTreeMap<i64, u128>,
}

impl ValueDistribution {
    pub fn from_counts(counts: impl IntoIterator<Item = (i64, u128)>) -> Self {
        let mut freq = BTreeMap::new();
        for (v, n) in counts {
            *freq.entry(v).or_insert(0) += n;
        }
        ValueDistribution { freq }
    }

    pub fn get(&self, value: i64) -> u128 {
        self.freq.get(&value).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.freq.values().sum()
    }

    pub fn merge(mut self, other: &ValueDistribution) -> Self {
        for (&v, &n) in &other.freq {
            *self.freq.entry(v).or_insert(0) += n;
        }
        self
    }

    /// Drops zero-frequency entries, so that distributions compare as sets.
    pub fn normalized(mut self) -> Self {
        self.freq.retain(|_, n| *n > 0);
        self
    }

    /// `sum_T freq(T) * T^j`.
    pub fn power_sum(&self, j: u32) -> BigInt {
        self.freq
            .iter()
            .map(|(&v, &n)| BigInt::from(v).pow(j) * BigInt::from(n))
            .sum()
    }

    /// Pushes every value through [`weight_from_t`].
    pub fn to_weights(&self, params: &CodeParams) -> Result<WeightHistogram> {
        let mut counts = Vec::with_capacity(self.freq.len());
        for (&v, &n) in &self.freq {
            counts.push((weight_from_t(params, v)?, n));
        }
        Ok(WeightHistogram::from_counts(counts))
    }
}

/// Map from Hamming weight to the number of codewords of that weight.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WeightHistogram {
    pub freq: BTreeMap<u64, u128>,
}

impl WeightHistogram {
    pub fn from_counts(counts: impl IntoIterator<Item = (u64, u128)>) -> Self {
        let mut freq = BTreeMap::new();
        for (w, n) in counts {
            *freq.entry(w).or_insert(0) += n;
        }
        WeightHistogram { freq }
    }

    pub fn get(&self, weight: u64) -> u128 {
        self.freq.get(&weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.freq.values().sum()
    }

    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.freq
            .iter()
            .find(|&(&w, &n)| w > 0 && n > 0)
            .map(|(&w, _)| w)
    }
}

fn pow(base: u64, e: u32) -> BigInt {
    BigInt::from(base).pow(e)
}

fn to_u128(x: &BigInt, what: &str) -> Result<u128> {
    if x.is_negative() {
        return Err(Error::NonIntegralFrequency(format!("{what} = {x}")));
    }
    x.to_u128()
        .ok_or(Error::IntegerOverflow("frequency exceeds u128"))
}

fn exact_div(num: BigInt, den: &BigInt, what: &str) -> Result<u128> {
    let (quot, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return Err(Error::NonIntegralFrequency(format!("{what} = {num}/{den}")));
    }
    to_u128(&quot, what)
}

/// The four signed magnitudes `2p^{(m+d)/2}`, `-2p^{(m+d)/2}`,
/// `2p^{(m+3d)/2}`, `-2p^{(m+3d)/2}`, in that order.
fn signed_values(params: &CodeParams) -> [i64; 4] {
    let v = admissible_values(params);
    [v[2], v[3], v[4], v[5]]
}

/// Closed-form value distribution of `T`.
pub fn table1_closed_form(params: &CodeParams) -> Result<ValueDistribution> {
    let (p, m, d) = (params.p as u64, params.m, params.d);
    let pm = pow(p, m);
    let one = BigInt::one();
    let zero_freq = (&pm - &one)
        * (pow(p, 2 * m) - pow(p, 2 * m - d) + pow(p, 2 * m - 4 * d) + &pm
            - pow(p, m - d)
            - pow(p, m - 3 * d)
            + &one);
    let den = BigInt::from(2) * (pow(p, 2 * d) - &one);
    let inner = pow(p, 2 * m) - pow(p, 2 * m - 2 * d) - pow(p, 2 * m - 3 * d)
        + pow(p, m - 2 * d)
        + pow(p, m - 3 * d)
        - &one;
    let outer = (&pm - &one) * (pow(p, m - d) - &one);
    let (a1, b1) = (pow(p, m + d), pow(p, (m + 3 * d) / 2));
    let (a2, b2) = (pow(p, m - 3 * d), pow(p, (m - 3 * d) / 2));
    let n10 = exact_div((&a1 + &b1) * &inner, &den, "n10")?;
    let n11 = exact_div((&a1 - &b1) * &inner, &den, "n11")?;
    let n20 = exact_div((&a2 + &b2) * &outer, &den, "n20")?;
    let n21 = exact_div((&a2 - &b2) * &outer, &den, "n21")?;
    let [v10, v11, v20, v21] = signed_values(params);
    let dist = ValueDistribution::from_counts([
        (2 * params.q as i64, 1),
        (0, to_u128(&zero_freq, "n0")?),
        (v10, n10),
        (v11, n11),
        (v20, n20),
        (v21, n21),
    ]);
    let total = (params.q as u128).pow(3);
    if dist.total() != total {
        return Err(Error::NonIntegralFrequency(format!(
            "frequencies sum to {} instead of q^3 = {total}",
            dist.total()
        )));
    }
    Ok(dist)
}

/// The five nonzero weights `(p^t-1) p^{m-t}`, `(p^t-1)(p^{m-t} -+ p^{(m+d-2t)/2})`
/// and `(p^t-1)(p^{m-t} -+ p^{(m+3d-2t)/2})`, listed against the values of
/// `T` they come from: `0`, `+-2p^{(m+d)/2}`, `+-2p^{(m+3d)/2}`.
pub fn closed_form_weights(params: &CodeParams) -> [(i64, u64); 5] {
    let (p, m, d, t) = (params.p as u64, params.m, params.d, params.t);
    let base = p.pow(m - t);
    let small = p.pow((m + d - 2 * t) / 2);
    let large = p.pow((m + 3 * d - 2 * t) / 2);
    let scale = params.pt - 1;
    let [v10, v11, v20, v21] = signed_values(params);
    [
        (0, scale * base),
        (v10, scale * (base - small)),
        (v11, scale * (base + small)),
        (v20, scale * (base - large)),
        (v21, scale * (base + large)),
    ]
}

/// Closed-form weight distribution, including weight 0 with frequency 1.
pub fn table2_closed_form(params: &CodeParams) -> Result<WeightHistogram> {
    let table1 = table1_closed_form(params)?;
    let mut counts = vec![(0u64, 1u128)];
    counts.extend(
        closed_form_weights(params)
            .iter()
            .map(|&(v, w)| (w, table1.get(v))),
    );
    Ok(WeightHistogram::from_counts(counts))
}

/// `W = p^{m-t}(p^t - 1) - (p^t - 1) T / (2 p^t)`, with exactness checked.
pub fn weight_from_t(params: &CodeParams, t_value: i64) -> Result<u64> {
    let pt = params.pt as i128;
    let num = (pt - 1) * t_value as i128;
    if num % (2 * pt) != 0 {
        return Err(Error::NonIntegralWeight(t_value));
    }
    let base = (params.p as i128).pow(params.m - params.t) * (pt - 1);
    let w = base - num / (2 * pt);
    if w < 0 || w > params.q as i128 - 1 {
        return Err(Error::NonIntegralWeight(t_value));
    }
    Ok(w as u64)
}

/// Largest `q^3` the exhaustive classification sweep accepts.
pub const ENUMERATION_BUDGET: u128 = 1 << 36;

/// Classifies every triple `(a, b, c)` and tallies `T`.
///
/// Work is split over `a` and the per-worker tallies are summed, so the
/// result does not depend on scheduling.
pub fn enumerate_distribution(cc: &CodeContext) -> Result<ValueDistribution> {
    let q = cc.field.q() as u64;
    let work = (q as u128).pow(3);
    if work > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "enumeration of {work} triples exceeds 2^36"
        )));
    }
    let classifier = Classifier::new(cc);
    let elems: Vec<Elem> = cc.field.elements().collect();
    let partials = elems
        .par_iter()
        .map(|&a| -> Result<BTreeMap<i64, u128>> {
            let mut local = BTreeMap::new();
            let mut scratch = Vec::new();
            for &b in &elems {
                let prefix = classifier.prefix(a, b);
                let nonzero = !(a.is_zero() && b.is_zero());
                let mut last = (i64::MIN, 0u128);
                for &c in &elems {
                    let t = classifier
                        .classify_with_prefix(&prefix, nonzero, c, &mut scratch)?
                        .t_value;
                    if t == last.0 {
                        last.1 += 1;
                    } else {
                        if last.1 > 0 {
                            *local.entry(last.0).or_insert(0) += last.1;
                        }
                        last = (t, 1);
                    }
                }
                *local.entry(last.0).or_insert(0) += last.1;
            }
            Ok(local)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ValueDistribution::from_counts(
        partials.into_iter().flatten(),
    ))
}

/// Recovers the distribution from the power sums `M_j = sum T^j`, `j = 1..4`.
///
/// The unknowns are the frequencies of the four signed values; the zero
/// triple contributes `(2q)^j` to every `M_j` and the value 0 contributes
/// nothing, so its frequency is the complement to `q^3`. The 4x4 system is
/// solved by Cramer's rule over the integers with each quotient checked.
pub fn moment_solve_distribution(
    params: &CodeParams,
    moments: &[BigInt; 4],
) -> Result<ValueDistribution> {
    let values = signed_values(params);
    let two_q = BigInt::from(2 * params.q);
    let matrix: Vec<Vec<BigInt>> = (1..=4u32)
        .map(|j| values.iter().map(|&v| BigInt::from(v).pow(j)).collect())
        .collect();
    let rhs: Vec<BigInt> = (1..=4u32)
        .zip(moments)
        .map(|(j, mj)| mj - two_q.pow(j))
        .collect();
    let det = determinant(matrix.clone());
    if det.is_zero() {
        return Err(Error::SingularSystem);
    }
    let mut counts = vec![(2 * params.q as i64, 1u128)];
    let mut nonzero_total = 1u128;
    for (col, &v) in values.iter().enumerate() {
        let mut replaced = matrix.clone();
        for (row, b) in replaced.iter_mut().zip(&rhs) {
            row[col] = b.clone();
        }
        let num = determinant(replaced);
        let (quot, rem) = num.div_rem(&det);
        if !rem.is_zero() || quot.is_negative() {
            return Err(Error::NonIntegralSolution(format!(
                "frequency of {v} = {num}/{det}"
            )));
        }
        let n = quot
            .to_u128()
            .ok_or(Error::IntegerOverflow("moment solution exceeds u128"))?;
        nonzero_total += n;
        counts.push((v, n));
    }
    let zero = (params.q as u128)
        .pow(3)
        .checked_sub(nonzero_total)
        .ok_or_else(|| Error::NonIntegralSolution("frequency of 0 is negative".into()))?;
    counts.push((0, zero));
    Ok(ValueDistribution::from_counts(counts))
}

/// Fraction-free (Bareiss) determinant.
fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Observed against expected count for one value of `T` in a sample.
#[derive(Debug, Clone, Serialize)]
pub struct Deviation {
    pub value: i64,
    pub observed: u64,
    pub expected: f64,
    /// Binomial standard deviation `sqrt(n p (1 - p))`.
    pub sigma: f64,
    pub z: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    /// Random draws, excluding the forced zero triple.
    pub n: u64,
    pub seed: u64,
    pub zero_triple_t: i64,
    pub deviations: Vec<Deviation>,
    pub max_abs_z: f64,
}

/// Deviations at or above this many standard deviations fail a sample.
pub const SAMPLE_SIGMA_LIMIT: f64 = 5.0;

impl SampleReport {
    pub fn within_limit(&self) -> bool {
        self.max_abs_z < SAMPLE_SIGMA_LIMIT
    }
}

/// Classifies `n` random triples plus the zero triple.
///
/// The zero triple is checked on its own and kept out of the statistics.
/// Every value must be admissible ([`Error::InadmissibleValue`] otherwise);
/// the bucket proportions are compared with the closed form and reported in
/// units of the binomial standard deviation.
pub fn sample_check(cc: &CodeContext, n: u64, seed: u64) -> Result<SampleReport> {
    let params = &cc.params;
    let classifier = Classifier::new(cc);
    let admissible = admissible_values(params);
    let check = |t: i64| {
        if admissible.contains(&t) {
            Ok(t)
        } else {
            Err(Error::InadmissibleValue(t))
        }
    };
    let z = Elem::ZERO;
    let zero_triple_t = check(classifier.classify(z, z, z)?.t_value)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = cc.field.q() as u64;
    let triples: Vec<[Elem; 3]> = (0..n)
        .map(|_| [0; 3].map(|_| cc.field.elem(rng.random_range(0..q)).expect("in range")))
        .collect();
    let values = triples
        .par_iter()
        .map(|&[a, b, c]| check(classifier.classify(a, b, c)?.t_value))
        .collect::<Result<Vec<i64>>>()?;
    let mut observed: BTreeMap<i64, u64> = BTreeMap::new();
    for v in values {
        *observed.entry(v).or_insert(0) += 1;
    }

    let reference = table1_closed_form(params)?;
    let total = reference.total() as f64;
    let deviations: Vec<Deviation> = reference
        .freq
        .iter()
        .map(|(&value, &freq)| {
            let prob = freq as f64 / total;
            let expected = n as f64 * prob;
            let sigma = (n as f64 * prob * (1.0 - prob)).sqrt();
            let got = observed.get(&value).copied().unwrap_or(0);
            let diff = got as f64 - expected;
            let z = if sigma > 0.0 {
                diff / sigma
            } else if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            Deviation {
                value,
                observed: got,
                expected,
                sigma,
                z,
            }
        })
        .collect();
    let max_abs_z = deviations.iter().map(|d| d.z.abs()).fold(0.0, f64::max);
    Ok(SampleReport {
        n,
        seed,
        zero_triple_t,
        deviations,
        max_abs_z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, m: u32, k: u32, t: u32) -> CodeParams {
        CodeParams::validate(p, m, k, t).unwrap()
    }

    #[test]
    fn table1_at_the_smallest_point() {
        let p = params(3, 5, 1, 1);
        let t1 = table1_closed_form(&p).unwrap();
        assert_eq!(t1.get(486), 1);
        assert_eq!(t1.get(0), 9740258);
        assert_eq!(t1.get(54), 2548260);
        assert_eq!(t1.get(-54), 2038608);
        assert_eq!(t1.get(162), 14520);
        assert_eq!(t1.get(-162), 7260);
        assert_eq!(t1.total(), 3u128.pow(15));
    }

    #[test]
    fn table2_matches_the_worked_example() {
        let p = params(3, 7, 1, 1);
        let t2 = table2_closed_form(&p).unwrap();
        let expected = [
            (0, 1),
            (1296, 8951670),
            (1404, 1732767876),
            (1458, 7102473578),
            (1512, 1608998742),
            (1620, 7161336),
        ];
        assert_eq!(t2, WeightHistogram::from_counts(expected));
        assert_eq!(t2.total(), 3u128.pow(21));
        assert_eq!(t2.min_nonzero_weight(), Some(p.minimum_distance()));
    }

    #[test]
    fn weights_from_values() {
        let p = params(3, 5, 1, 1);
        assert_eq!(weight_from_t(&p, 486).unwrap(), 0);
        assert_eq!(weight_from_t(&p, 0).unwrap(), 162);
        assert_eq!(weight_from_t(&p, 54).unwrap(), 144);
        assert_eq!(weight_from_t(&p, -162).unwrap(), 216);
        assert_eq!(weight_from_t(&p, 5), Err(Error::NonIntegralWeight(5)));
    }

    #[test]
    fn closed_form_weights_agree_with_the_value_map() {
        for (pp, m, k, t) in [
            (3, 5, 1, 1),
            (3, 7, 1, 1),
            (3, 10, 2, 2),
            (5, 5, 1, 1),
            (3, 15, 3, 1),
        ] {
            let p = params(pp, m, k, t);
            let t1 = table1_closed_form(&p).unwrap();
            assert_eq!(t1.to_weights(&p).unwrap(), table2_closed_form(&p).unwrap());
        }
    }

    #[test]
    fn closed_form_is_integral_at_the_even_k_point() {
        let p = params(3, 10, 2, 2);
        let t1 = table1_closed_form(&p).unwrap();
        assert_eq!(t1.total(), 3u128.pow(30));
        let keys: Vec<i64> = t1.freq.keys().copied().collect();
        assert_eq!(keys, vec![-13122, -1458, 0, 1458, 13122, 2 * 59049]);
    }

    #[test]
    fn closed_form_moments() {
        for (pp, m, k, t) in [(3, 5, 1, 1), (3, 7, 1, 1), (5, 5, 1, 1)] {
            let p = params(pp, m, k, t);
            let t1 = table1_closed_form(&p).unwrap();
            let q = BigInt::from(p.q);
            let n3 = pow(pp, m + p.d) + pow(pp, m) - pow(pp, p.d);
            assert_eq!(t1.power_sum(1), BigInt::from(2) * q.pow(3));
            assert_eq!(t1.power_sum(2), BigInt::from(4) * q.pow(4));
            assert_eq!(t1.power_sum(3), BigInt::from(8) * q.pow(3) * &n3);
            assert_eq!(t1.power_sum(4), BigInt::from(16) * q.pow(4) * &n3);
        }
    }

    #[test]
    fn moment_solve_round_trips() {
        for (pp, m, k, t) in [(3, 5, 1, 1), (3, 7, 1, 1), (3, 10, 2, 2)] {
            let p = params(pp, m, k, t);
            let t1 = table1_closed_form(&p).unwrap();
            let moments = [1, 2, 3, 4].map(|j| t1.power_sum(j));
            assert_eq!(moment_solve_distribution(&p, &moments).unwrap(), t1);
        }
    }

    #[test]
    fn moment_solve_rejects_inconsistent_input() {
        let p = params(3, 5, 1, 1);
        let t1 = table1_closed_form(&p).unwrap();
        let mut moments = [1, 2, 3, 4].map(|j| t1.power_sum(j));
        moments[0] += 1;
        assert!(matches!(
            moment_solve_distribution(&p, &moments),
            Err(Error::NonIntegralSolution(_))
        ));
    }

    #[test]
    fn determinant_of_small_matrices() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect()
        };
        assert_eq!(determinant(m(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert_eq!(determinant(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(m(&[&[1, 2], &[2, 4]])), BigInt::from(0));
        assert_eq!(
            determinant(m(&[&[0, 2, 1], &[3, 1, 4], &[5, 9, 2]])),
            BigInt::from(-2 * (6 - 20) + (27 - 5))
        );
    }

    #[test]
    fn sampling_is_deterministic() {
        let cc = CodeContext::from_parts(3, 5, 1, 1).unwrap();
        let a = sample_check(&cc, 2000, 7).unwrap();
        let b = sample_check(&cc, 2000, 7).unwrap();
        assert_eq!(a.zero_triple_t, 486);
        assert_eq!(
            a.deviations.iter().map(|d| d.observed).collect::<Vec<_>>(),
            b.deviations.iter().map(|d| d.observed).collect::<Vec<_>>()
        );
        assert!(a.within_limit());
    }
}

//! Serializable verification reports and the orchestration behind each
//! command-line subcommand.
//!
//! Everything here is deterministic given the parameters and the seed; the
//! only timing field, `runtime_ms`, is filled in by the caller.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::charsum::t_oracle;
use crate::code::{codeword_weight_direct, lfsr_membership, parity_check_polynomial, FACTOR_NAMES};
use crate::counting::{
    lemma_checks, negation_symmetry, sublemma_checks, sublemma_distributions, FingerprintHistogram,
    LemmaCheck, PatternCounts, FULL_HISTOGRAM_PAIRS,
};
use crate::error::Result;
use crate::field::Elem;
use crate::params::{CodeContext, CodeParams, LambdaRule};
use crate::quadform::{admissible_values, Classifier};
use crate::spectrum::{
    enumerate_distribution, moment_solve_distribution, sample_check, table1_closed_form,
    table2_closed_form, weight_from_t, ValueDistribution, WeightHistogram, SAMPLE_SIGMA_LIMIT,
};

/// How `verify` obtains the value distribution of `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Full,
    Moments,
    Sample { n: u64, seed: u64 },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::Moments => "moments",
            Mode::Sample { .. } => "sample",
        }
    }
}

/// Which closed-form table `table` prints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    Values,
    Weights,
}

/// The parameter derivation echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct ParamsEcho {
    pub p: u32,
    pub m: u32,
    pub k: u32,
    pub t: u32,
    pub d: u32,
    pub s: u32,
    pub m0: u32,
    pub q: u64,
    pub q0: u64,
    pub pt: u64,
    pub q0_mod4: u8,
    /// `p^k + 1` and `p^{2k} + 1`, reduced modulo `q - 1`.
    pub d1: u64,
    pub d2: u64,
    pub lambda_rule: LambdaRule,
    /// Index of the non-square `lambda`.
    pub lambda: u32,
    /// Index of the primitive element `pi`.
    pub primitive: u32,
    pub modulus: Vec<u32>,
    pub minimum_distance: u64,
}

impl ParamsEcho {
    pub fn new(cc: &CodeContext) -> Self {
        let p = &cc.params;
        ParamsEcho {
            p: p.p,
            m: p.m,
            k: p.k,
            t: p.t,
            d: p.d,
            s: p.s,
            m0: p.m0,
            q: p.q,
            q0: p.q0,
            pt: p.pt,
            q0_mod4: p.q0_mod4,
            d1: cc.d1,
            d2: cc.d2,
            lambda_rule: p.lambda_rule,
            lambda: cc.lambda.index(),
            primitive: cc.field.primitive().index(),
            modulus: cc.field.params().modulus.clone(),
            minimum_distance: p.minimum_distance(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }

    fn with_pass(name: impl Into<String>, expected: String, actual: String, pass: bool) -> Self {
        Check {
            name: name.into(),
            expected,
            actual,
            pass,
        }
    }
}

impl From<LemmaCheck> for Check {
    fn from(c: LemmaCheck) -> Self {
        Check::new(c.name, c.expected, c.actual)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValueEntry {
    pub t: String,
    pub freq: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightEntry {
    pub w: u64,
    pub freq: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedPolynomial {
    pub name: String,
    /// Coefficient indices, low degree first.
    pub coeffs: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub params: ParamsEcho,
    pub mode: String,
    pub checks: Vec<Check>,
    pub value_distribution: Vec<ValueEntry>,
    pub weight_distribution: Vec<WeightEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub polynomials: Vec<NamedPolynomial>,
    /// Further computed quantities as decimal strings.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
    pub runtime_ms: u64,
}

impl VerificationReport {
    fn new(cc: &CodeContext, mode: &str) -> Self {
        VerificationReport {
            params: ParamsEcho::new(cc),
            mode: mode.to_string(),
            checks: Vec::new(),
            value_distribution: Vec::new(),
            weight_distribution: Vec::new(),
            polynomials: Vec::new(),
            details: BTreeMap::new(),
            runtime_ms: 0,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    fn set_values(&mut self, dist: &ValueDistribution) {
        self.value_distribution = dist
            .freq
            .iter()
            .map(|(t, f)| ValueEntry {
                t: t.to_string(),
                freq: f.to_string(),
            })
            .collect();
    }

    fn set_weights(&mut self, hist: &WeightHistogram) {
        self.weight_distribution = hist
            .freq
            .iter()
            .map(|(&w, f)| WeightEntry {
                w,
                freq: f.to_string(),
            })
            .collect();
    }

    fn detail(&mut self, key: &str, value: impl ToString) {
        self.details.insert(key.to_string(), value.to_string());
    }
}

/// Closed forms of the first three power sums of `T`:
/// `2q^3`, `4q^4` and `8q^3 (p^{m+d} + p^m - p^d)`.
pub fn claimed_moments(params: &CodeParams) -> [BigInt; 3] {
    let p = BigInt::from(params.p);
    let q = p.pow(params.m);
    let q0 = p.pow(params.d);
    let q3 = q.pow(3);
    [2 * &q3, 4 * q.pow(4), 8 * &q3 * (&q * &q0 + &q - &q0)]
}

fn moment_checks(params: &CodeParams, path: &str, moments: &[BigInt]) -> Vec<Check> {
    claimed_moments(params)
        .iter()
        .zip(moments)
        .enumerate()
        .map(|(i, (want, got))| Check::new(format!("{path} power sum j={}", i + 1), want, got))
        .collect()
}

fn distribution_check(name: &str, want: &ValueDistribution, got: &ValueDistribution) -> Check {
    Check::new(name, render_values(want), render_values(got))
}

fn weights_check(name: &str, want: &WeightHistogram, got: &WeightHistogram) -> Check {
    Check::new(name, render_weights(want), render_weights(got))
}

fn render_values(d: &ValueDistribution) -> String {
    let parts: Vec<String> = d.freq.iter().map(|(t, f)| format!("{t}:{f}")).collect();
    parts.join(" ")
}

fn render_weights(h: &WeightHistogram) -> String {
    let parts: Vec<String> = h.freq.iter().map(|(w, f)| format!("{w}:{f}")).collect();
    parts.join(" ")
}

/// Checks every report carries: the closed forms are consistent with one
/// another and with the minimum distance.
fn closed_form_checks(
    report: &mut VerificationReport,
    params: &CodeParams,
) -> Result<(ValueDistribution, WeightHistogram)> {
    let table1 = table1_closed_form(params)?;
    let table2 = table2_closed_form(params)?;
    let q3 = (params.q as u128).pow(3);
    report
        .checks
        .push(Check::new("closed-form value total", q3, table1.total()));
    report
        .checks
        .push(Check::new("closed-form weight total", q3, table2.total()));
    report.checks.push(Check::new(
        "minimum distance",
        params.minimum_distance(),
        table2.min_nonzero_weight().unwrap_or(0),
    ));
    Ok((table1, table2))
}

/// Tables 1 and 2 by the chosen computation path, compared with the closed
/// forms.
pub fn verify(cc: &CodeContext, mode: Mode) -> Result<VerificationReport> {
    let params = &cc.params;
    let mut report = VerificationReport::new(cc, mode.name());
    let (table1, table2) = closed_form_checks(&mut report, params)?;
    match mode {
        Mode::Full => {
            let dist = enumerate_distribution(cc)?;
            let weights = dist.to_weights(params)?;
            report.checks.push(distribution_check(
                "enumeration = closed-form values",
                &table1,
                &dist,
            ));
            report.checks.push(weights_check(
                "enumeration = closed-form weights",
                &table2,
                &weights,
            ));
            let sums: Vec<BigInt> = (1..=3).map(|j| dist.power_sum(j)).collect();
            report
                .checks
                .extend(moment_checks(params, "enumerated", &sums));
            report.set_values(&dist);
            report.set_weights(&weights);
        }
        Mode::Moments => {
            let counts = PatternCounts::sharded(cc)?;
            let moments = counts.moments(params);
            report
                .checks
                .extend(moment_checks(params, "counted", &moments[..3]));
            let dist = moment_solve_distribution(params, &moments)?;
            let weights = dist.to_weights(params)?;
            report.checks.push(distribution_check(
                "moment solution = closed-form values",
                &table1,
                &dist,
            ));
            report.checks.push(weights_check(
                "moment solution = closed-form weights",
                &table2,
                &weights,
            ));
            for (j, mj) in moments.iter().enumerate() {
                report.detail(&format!("M{}", j + 1), mj);
            }
            report.set_values(&dist);
            report.set_weights(&weights);
        }
        Mode::Sample { n, seed } => {
            let sample = sample_check(cc, n, seed)?;
            report.checks.push(Check::new(
                "zero triple",
                2 * params.q,
                sample.zero_triple_t,
            ));
            for dev in &sample.deviations {
                report.checks.push(Check::with_pass(
                    format!("sample z at T={}", dev.value),
                    format!("|z| < {SAMPLE_SIGMA_LIMIT}"),
                    format!("{:.4}", dev.z),
                    dev.z.abs() < SAMPLE_SIGMA_LIMIT,
                ));
            }
            let observed = ValueDistribution::from_counts(
                sample
                    .deviations
                    .iter()
                    .map(|d| (d.value, d.observed as u128)),
            );
            report.set_values(&observed);
            report.set_weights(&observed.to_weights(params)?);
            report.detail("n", sample.n);
            report.detail("seed", sample.seed);
            report.detail("max_abs_z", format!("{:.4}", sample.max_abs_z));
        }
    }
    Ok(report)
}

/// The seven counting lemmas and the sub-lemma distributions.
///
/// The lemmas are stated for `q0 = 3 (mod 4)`. At other points the pattern
/// counts are still computed and reported under `details`, and the
/// sub-lemma distributions are summarized, but nothing is checked against
/// the closed forms.
pub fn lemmas(cc: &CodeContext) -> Result<VerificationReport> {
    let params = &cc.params;
    let mut report = VerificationReport::new(cc, "lemmas");
    let counts = PatternCounts::sharded(cc)?;
    let q = params.q;
    if q * q <= FULL_HISTOGRAM_PAIRS {
        let f = &cc.field;
        let one = Elem::ONE;
        let plain = FingerprintHistogram::build(cc, one, one)?;
        let mixed = FingerprintHistogram::build(cc, one, cc.lambda)?;
        let minus = f.neg(one);
        let negated = FingerprintHistogram::build(cc, minus, minus)?;
        let full = PatternCounts::from_histograms(cc, &plain, &mixed)?;
        report.checks.push(Check::new(
            "full histograms = sharded counts",
            format!("{full:?}"),
            format!("{counts:?}"),
        ));
        report.checks.push(Check::new(
            "fingerprint negation symmetry",
            true,
            negation_symmetry(cc, &plain, &negated),
        ));
    }
    match lemma_checks(params, &counts) {
        Some(checks) => report.checks.extend(checks.into_iter().map(Check::from)),
        None => report.detail("lemma_regime", "q0 = 1 (mod 4): closed forms not claimed"),
    }
    for (key, v) in [
        ("c0", counts.c0),
        ("c1", counts.c1),
        ("b0", counts.b0),
        ("b1", counts.b1),
        ("a0", counts.a0),
        ("a1", counts.a1),
        ("a2", counts.a2),
        ("square_sum", counts.square_sum),
    ] {
        report.detail(key, v);
    }
    let moments = counts.moments(params);
    report
        .checks
        .extend(moment_checks(params, "counted", &moments[..3]));

    let (dists, same) = sublemma_distributions(cc)?;
    for dist in &dists {
        report.detail(&format!("{}(1,1)", dist.name), dist.at_one);
        let parts: Vec<String> = dist
            .multiplicities
            .iter()
            .map(|(v, n)| format!("{v}:{n}"))
            .collect();
        report.detail(&format!("{} multiplicities", dist.name), parts.join(" "));
    }
    match sublemma_checks(params, &dists, same) {
        Some(checks) => report.checks.extend(checks.into_iter().map(Check::from)),
        None => report.detail("N1 = N2 everywhere", same),
    }
    Ok(report)
}

/// Closed forms only.
pub fn table(cc: &CodeContext, which: Table) -> Result<VerificationReport> {
    let params = &cc.params;
    let mode = match which {
        Table::Values => "table1",
        Table::Weights => "table2",
    };
    let mut report = VerificationReport::new(cc, mode);
    let (table1, table2) = closed_form_checks(&mut report, params)?;
    let sums: Vec<BigInt> = (1..=3).map(|j| table1.power_sum(j)).collect();
    report
        .checks
        .extend(moment_checks(params, "closed-form", &sums));
    match which {
        Table::Values => report.set_values(&table1),
        Table::Weights => report.set_weights(&table2),
    }
    Ok(report)
}

/// One codeword: direct weight, classification of its form, the oracle
/// value of `T` and membership in the code.
pub fn codeword(cc: &CodeContext, a: u64, b: u64, c: u64) -> Result<VerificationReport> {
    let params = &cc.params;
    let f = &cc.field;
    let (a, b, c) = (f.elem(a)?, f.elem(b)?, f.elem(c)?);
    let mut report = VerificationReport::new(cc, "codeword");
    let class = Classifier::new(cc).classify(a, b, c)?;
    let predicted = weight_from_t(params, class.t_value)?;
    let direct = codeword_weight_direct(cc, a, b, c);
    let oracle = t_oracle(cc, a, b, c)?;
    let pc = parity_check_polynomial(cc)?;
    report.checks.push(Check::new(
        "T admissible",
        true,
        admissible_values(params).contains(&class.t_value),
    ));
    report
        .checks
        .push(Check::new("oracle T = classified T", oracle, class.t_value));
    report.checks.push(Check::new(
        "direct weight = weight from T",
        predicted,
        direct,
    ));
    report.checks.push(Check::new(
        "satisfies h0 h1 h2 recurrence",
        true,
        lfsr_membership(cc, &pc, a, b, c),
    ));
    report.detail("rank", class.rank);
    report.detail("disc_class", class.disc_class);
    report.detail("T", class.t_value);
    report.detail("weight", direct);
    report.set_values(&ValueDistribution::from_counts([(class.t_value, 1)]));
    report.set_weights(&WeightHistogram::from_counts([(direct, 1)]));
    Ok(report)
}

/// The parity-check factors and their product.
pub fn minpoly(cc: &CodeContext) -> Result<VerificationReport> {
    let params = &cc.params;
    let mut report = VerificationReport::new(cc, "minpoly");
    let pc = parity_check_polynomial(cc)?;
    for (name, h) in FACTOR_NAMES.iter().zip(&pc.factors) {
        report
            .checks
            .push(Check::new(format!("deg {name}"), params.m0, h.degree()));
        report.polynomials.push(NamedPolynomial {
            name: name.to_string(),
            coeffs: h.indices(),
        });
    }
    report.checks.push(Check::new(
        "deg h0 h1 h2",
        3 * params.m0,
        pc.product.degree(),
    ));
    report.polynomials.push(NamedPolynomial {
        name: "h0 h1 h2".into(),
        coeffs: pc.product.indices(),
    });
    for (name, coset) in FACTOR_NAMES.iter().zip(&pc.cosets) {
        let parts: Vec<String> = coset.orbit.iter().map(u64::to_string).collect();
        report.detail(&format!("coset {name}"), parts.join(" "));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, m: u32, k: u32, t: u32) -> CodeContext {
        CodeContext::from_parts(p, m, k, t).unwrap()
    }

    #[test]
    fn moments_mode_at_the_smallest_point() {
        let cc = ctx(3, 5, 1, 1);
        let r = verify(&cc, Mode::Moments).unwrap();
        assert!(r.all_passed(), "{:?}", r.failed().collect::<Vec<_>>());
        assert_eq!(r.weight_distribution.len(), 6);
        assert_eq!(r.weight_distribution[1].w, 108);
        assert_eq!(r.weight_distribution[1].freq, "14520");
    }

    #[test]
    fn sample_mode_is_reproducible() {
        let cc = ctx(3, 5, 1, 1);
        let mode = Mode::Sample { n: 2000, seed: 7 };
        let a = verify(&cc, mode).unwrap();
        let b = verify(&cc, mode).unwrap();
        assert!(a.all_passed());
        assert_eq!(a.checks, b.checks);
        assert_eq!(a.value_distribution, b.value_distribution);
    }

    #[test]
    fn lemma_report() {
        let r = lemmas(&ctx(3, 5, 1, 1)).unwrap();
        assert!(r.all_passed(), "{:?}", r.failed().collect::<Vec<_>>());
        assert!(r
            .checks
            .iter()
            .any(|c| c.name == "N4_bar" && c.actual == "2421"));
    }

    #[test]
    fn lemma_report_outside_the_claimed_regime() {
        // q0 = 5 = 1 (mod 4): counts reported, no lemma checks.
        let r = lemmas(&ctx(5, 5, 1, 1)).unwrap();
        assert!(!r.checks.iter().any(|c| c.name == "N2"));
        assert!(r.details.contains_key("a2"));
    }

    #[test]
    fn single_codeword() {
        let cc = ctx(3, 5, 1, 1);
        let r = codeword(&cc, 5, 17, 200).unwrap();
        assert!(r.all_passed(), "{:?}", r.failed().collect::<Vec<_>>());
        let r = codeword(&cc, 0, 0, 0).unwrap();
        assert_eq!(r.details["weight"], "0");
        assert!(codeword(&cc, 243, 0, 0).is_err());
    }

    #[test]
    fn minimal_polynomials() {
        let r = minpoly(&ctx(3, 10, 2, 2)).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.polynomials.len(), 4);
        assert_eq!(r.polynomials[3].coeffs.len(), 16);
    }

    #[test]
    fn closed_form_tables() {
        let cc = ctx(3, 7, 1, 1);
        let r = table(&cc, Table::Weights).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.weight_distribution[1].freq, "8951670");
        assert!(r.value_distribution.is_empty());
    }
}

//! Acceptance criteria, one test per criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line before asserting.
//!
//! Run with `cargo test -p weightdist --test acceptance -- --nocapture` to see
//! the lines; the extended probe at `(3, 10, 2, 2)` is `#[ignore]`d.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weightdist::charsum::{compare_with_classifier, t_oracle, t_oracle_with_lambda};
use weightdist::code::{
    codeword_weight_direct, direct_weight_distribution, lfsr_membership, parity_check_polynomial,
};
use weightdist::counting::{
    lemma_checks, negation_symmetry, sublemma_checks, sublemma_distributions, FingerprintHistogram,
    PatternCounts,
};
use weightdist::quadform::{power_basis, Classifier};
use weightdist::spectrum::{
    enumerate_distribution, moment_solve_distribution, sample_check, table1_closed_form,
    table2_closed_form, weight_from_t, ValueDistribution, WeightHistogram,
};
use weightdist::{CodeContext, Elem};

fn verdict(id: u32, what: &str, pass: bool, detail: String) {
    println!(
        "criterion {id}: {} {what} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} failed: {what}: {detail}");
}

fn ctx(p: u64, m: u32, k: u32, t: u32) -> &'static CodeContext {
    static SMALL: OnceLock<CodeContext> = OnceLock::new();
    static EXAMPLE: OnceLock<CodeContext> = OnceLock::new();
    static EVEN_K: OnceLock<CodeContext> = OnceLock::new();
    let cell = match (p, m, k, t) {
        (3, 5, 1, 1) => &SMALL,
        (3, 7, 1, 1) => &EXAMPLE,
        (3, 10, 2, 2) => &EVEN_K,
        _ => unreachable!(),
    };
    cell.get_or_init(|| CodeContext::from_parts(p, m, k, t).unwrap())
}

/// The full classification sweep at (3, 5, 1, 1), shared by criteria 1 and 5.
fn enumerated_small() -> &'static (ValueDistribution, Duration) {
    static CELL: OnceLock<(ValueDistribution, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let dist = enumerate_distribution(ctx(3, 5, 1, 1)).unwrap();
        (dist, start.elapsed())
    })
}

fn expected_small_weights() -> WeightHistogram {
    WeightHistogram::from_counts([
        (0, 1),
        (108, 14520),
        (144, 2548260),
        (162, 9740258),
        (180, 2038608),
        (216, 7260),
    ])
}

#[test]
fn criterion_1_full_enumeration() {
    let cc = ctx(3, 5, 1, 1);
    let (dist, elapsed) = enumerated_small();
    let closed = table1_closed_form(&cc.params).unwrap();
    let weights = dist.to_weights(&cc.params).unwrap();
    let expected = expected_small_weights();
    let pass = *dist == closed
        && weights == expected
        && weights == table2_closed_form(&cc.params).unwrap()
        && expected.total() == 3u128.pow(15)
        && *elapsed <= Duration::from_secs(300);
    verdict(
        1,
        "enumeration of 3^15 triples reproduces both tables at (3,5,1,1)",
        pass,
        format!(
            "{:.1}s on {} workers",
            elapsed.as_secs_f64(),
            rayon::current_num_threads()
        ),
    );
}

#[test]
fn criterion_1_direct_codeword_sweep() {
    // Independent of every T-based path: count nonzero symbols of all
    // 3^15 codewords.
    let cc = ctx(3, 5, 1, 1);
    let start = Instant::now();
    let direct = direct_weight_distribution(cc).unwrap();
    let pass = direct == expected_small_weights()
        && direct.min_nonzero_weight() == Some(cc.params.minimum_distance());
    verdict(
        1,
        "direct weights of all 3^15 codewords match the weight table",
        pass,
        format!("{:.1}s", start.elapsed().as_secs_f64()),
    );
}

#[test]
fn criterion_2_oracle_equivalence() {
    let cc = ctx(3, 5, 1, 1);
    let start = Instant::now();
    let cmp = compare_with_classifier(cc).unwrap();
    let pass = cmp.triples == 3u128.pow(15)
        && cmp.mismatches == 0
        && cmp.distribution == table1_closed_form(&cc.params).unwrap();
    verdict(
        2,
        "character-sum oracle equals the classifier on all 3^15 triples",
        pass,
        format!(
            "{} mismatches, first {:?}, {:.1}s",
            cmp.mismatches,
            cmp.first_mismatch,
            start.elapsed().as_secs_f64()
        ),
    );
}

#[test]
fn criterion_3_example_by_moments() {
    let cc = ctx(3, 7, 1, 1);
    let start = Instant::now();
    let counts = PatternCounts::sharded(cc).unwrap();
    let dist = moment_solve_distribution(&cc.params, &counts.moments(&cc.params)).unwrap();
    let weights = dist.to_weights(&cc.params).unwrap();
    let elapsed = start.elapsed();
    let example = WeightHistogram::from_counts([
        (0, 1),
        (1296, 8951670),
        (1404, 1732767876),
        (1458, 7102473578),
        (1512, 1608998742),
        (1620, 7161336),
    ]);
    let pass =
        weights == example && weights.total() == 10460353203 && elapsed <= Duration::from_secs(120);
    verdict(
        3,
        "moment method reproduces the [2186,21,1296] weight enumerator",
        pass,
        format!("{:.1}s", elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_4_counting_lemmas() {
    let mut details = Vec::new();
    let mut pass = true;
    for (p, m) in [(3, 5), (3, 7)] {
        let cc = ctx(p, m, 1, 1);
        let one = Elem::ONE;
        let h11 = FingerprintHistogram::build(cc, one, one).unwrap();
        let h1l = FingerprintHistogram::build(cc, one, cc.lambda).unwrap();
        let full = PatternCounts::from_histograms(cc, &h11, &h1l).unwrap();
        let sharded = PatternCounts::sharded(cc).unwrap();
        pass &= full == sharded;
        let checks = lemma_checks(&cc.params, &full).unwrap();
        let (dists, same) = sublemma_distributions(cc).unwrap();
        let sub = sublemma_checks(&cc.params, &dists, same).unwrap();
        for c in checks.iter().chain(&sub) {
            if !c.passed() {
                pass = false;
                details.push(format!("m={m} {}: {} != {}", c.name, c.actual, c.expected));
            }
        }
        details.push(format!(
            "m={m}: N2={} N2_bar={} N3={} N3_bar={} N4={} N4_bar={} N4_tilde={}",
            full.c0, full.c1, full.b0, full.b1, full.a0, full.a1, full.square_sum
        ));
    }
    verdict(
        4,
        "seven counting lemmas and sub-lemma distributions at m = 5, 7",
        pass,
        details.join("; "),
    );
}

#[test]
fn criterion_5_moment_identities() {
    let cc = ctx(3, 5, 1, 1);
    let (dist, _) = enumerated_small();
    let q = BigInt::from(cc.params.q);
    let n3 = BigInt::from(3u64.pow(6) + 3u64.pow(5) - 3);
    let claimed = [
        BigInt::from(2) * q.pow(3),
        BigInt::from(4) * q.pow(4),
        BigInt::from(8) * q.pow(3) * &n3,
        BigInt::from(16) * q.pow(4) * &n3,
    ];
    let counted = PatternCounts::sharded(cc).unwrap().moments(&cc.params);
    let enumerated: Vec<BigInt> = (1..=4).map(|j| dist.power_sum(j)).collect();
    let pass = (0..3).all(|i| enumerated[i] == claimed[i] && counted[i] == claimed[i])
        && enumerated[3] == counted[3];
    verdict(
        5,
        "power sums j = 1, 2, 3 by enumeration and by counting",
        pass,
        format!("enumerated {enumerated:?}"),
    );
}

#[test]
fn criterion_6_even_k_probe() {
    let cc = ctx(3, 10, 2, 2);
    let params = &cc.params;
    let closed = table1_closed_form(params).unwrap();
    let integral = closed.total() == (params.q as u128).pow(3);
    let sample = sample_check(cc, 100_000, 0).unwrap();
    let pc = parity_check_polynomial(cc).unwrap();
    let degrees: Vec<usize> = pc.factors.iter().map(|h| h.degree()).collect();
    let pass = integral
        && sample.zero_triple_t == 2 * 59049
        && sample.within_limit()
        && degrees == vec![5, 5, 5];
    verdict(
        6,
        "(3,10,2,2): closed form integral, 10^5 samples admissible and within 5 sigma, h_i of degree 5",
        pass,
        format!("max |z| = {:.2}, degrees {degrees:?}", sample.max_abs_z),
    );
}

#[test]
#[ignore = "extended run: about 7e9 pair enumerations"]
fn criterion_6_extended_moment_run() {
    let cc = ctx(3, 10, 2, 2);
    let start = Instant::now();
    let counts = PatternCounts::sharded(cc).unwrap();
    let result = moment_solve_distribution(&cc.params, &counts.moments(&cc.params));
    let closed = table1_closed_form(&cc.params).unwrap();
    let pass = result.as_ref().ok() == Some(&closed);
    verdict(
        6,
        "(3,10,2,2) extended: moment-method distribution equals the closed form",
        pass,
        format!(
            "{:.0}s, counts {counts:?}, solve {result:?}",
            start.elapsed().as_secs_f64()
        ),
    );
}

#[test]
fn criterion_7_property_suites() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    for (p, m) in [(3u64, 5u32), (3, 10), (5, 4)] {
        let f = weightdist::FieldCtx::build(p, m).unwrap();
        let q = f.q() as u64;
        for _ in 0..10_000 {
            let [x, y, z] = [0; 3].map(|_| f.elem(rng.random_range(0..q)).unwrap());
            if f.add(f.add(x, y), z) != f.add(x, f.add(y, z))
                || f.mul(f.mul(x, y), z) != f.mul(x, f.mul(y, z))
                || f.mul(x, f.add(y, z)) != f.add(f.mul(x, y), f.mul(x, z))
                || (!x.is_zero() && f.mul(x, f.inv(x).unwrap()) != Elem::ONE)
            {
                failures.push(format!("field axioms in F_{p}^{m}"));
                break;
            }
        }
    }

    let f = &ctx(3, 10, 2, 2).field;
    for r in [1, 2, 5, 10] {
        let mut hits = vec![0u64; f.q() as usize];
        for x in f.elements() {
            hits[f.trace(x, r).unwrap().index() as usize] += 1;
        }
        let per_value = 3u64.pow(10 - r);
        let balanced = hits.iter().filter(|&&h| h > 0).all(|&h| h == per_value)
            && hits.iter().filter(|&&h| h > 0).count() == 3usize.pow(r);
        if !balanced {
            failures.push(format!("trace balance r = {r}"));
        }
    }
    for _ in 0..100 {
        let x = f.elem(rng.random_range(0..f.q() as u64)).unwrap();
        let direct = f.trace(x, 1).unwrap();
        let composed = f.relative_trace(f.trace(x, 2).unwrap(), 2, 1).unwrap();
        if direct != composed {
            failures.push("trace transitivity".into());
            break;
        }
    }

    let cc = ctx(3, 5, 1, 1);
    let pc = parity_check_polynomial(cc).unwrap();
    let random =
        |rng: &mut ChaCha8Rng| [0; 3].map(|_| cc.field.elem(rng.random_range(0..243)).unwrap());
    for _ in 0..100 {
        let [a, b, c] = random(&mut rng);
        if !lfsr_membership(cc, &pc, a, b, c) {
            failures.push("lfsr membership".into());
            break;
        }
    }

    let u = cc.field.primitive_pow(101);
    let scaled = power_basis(cc)
        .into_iter()
        .map(|e| cc.field.mul(e, u))
        .collect();
    let (plain, other) = (Classifier::new(cc), Classifier::with_basis(cc, scaled));
    for _ in 0..100 {
        let [a, b, c] = random(&mut rng);
        if plain.classify(a, b, c).unwrap() != other.classify(a, b, c).unwrap() {
            failures.push("basis invariance".into());
            break;
        }
    }
    let even_k = ctx(3, 10, 2, 2);
    let other_lambda = even_k.field.pow(even_k.lambda, 3);
    for _ in 0..3 {
        let [a, b, c] = [0; 3].map(|_| even_k.field.elem(rng.random_range(0..59049)).unwrap());
        if t_oracle(even_k, a, b, c) != t_oracle_with_lambda(even_k, a, b, c, other_lambda) {
            failures.push("lambda invariance".into());
            break;
        }
    }

    let one = Elem::ONE;
    let minus = cc.field.neg(one);
    let h = FingerprintHistogram::build(cc, one, one).unwrap();
    let hn = FingerprintHistogram::build(cc, minus, minus).unwrap();
    if !negation_symmetry(cc, &h, &hn) || h.total() != 243 * 243 {
        failures.push("histogram negation symmetry".into());
    }

    for _ in 0..100 {
        let [a, b, c] = random(&mut rng);
        let t = plain.classify(a, b, c).unwrap().t_value;
        if codeword_weight_direct(cc, a, b, c) != weight_from_t(&cc.params, t).unwrap() {
            failures.push("direct weight vs formula weight".into());
            break;
        }
    }

    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed <= Duration::from_secs(60);
    verdict(
        7,
        "property suites",
        pass,
        format!("{:.1}s, failures {failures:?}", elapsed.as_secs_f64()),
    );
}

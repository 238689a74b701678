//! The cyclic code itself: parity-check polynomial, codewords in trace form,
//! and the direct Hamming-weight oracle.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, LOG_ZERO};
use crate::params::CodeContext;
use crate::spectrum::WeightHistogram;

/// Orbit of an exponent under multiplication by `multiplier` modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCoset {
    pub base: u64,
    pub orbit: Vec<u64>,
}

impl CyclotomicCoset {
    pub fn new(base: u64, modulus: u64, multiplier: u64) -> Self {
        let base = base % modulus;
        let mut orbit = vec![base];
        let mut e = (base as u128 * multiplier as u128 % modulus as u128) as u64;
        while e != base {
            orbit.push(e);
            e = (e as u128 * multiplier as u128 % modulus as u128) as u64;
        }
        CyclotomicCoset { base, orbit }
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }
}

/// Monic polynomial whose coefficients lie in the subfield `F_{p^t}`,
/// stored low degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfieldPolynomial {
    coeffs: Vec<Elem>,
}

impl SubfieldPolynomial {
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients as canonical element indices, low degree first.
    pub fn indices(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.index()).collect()
    }

    pub fn eval(&self, field: &FieldCtx, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn mul(&self, field: &FieldCtx, other: &Self) -> Self {
        SubfieldPolynomial {
            coeffs: poly_mul(field, &self.coeffs, &other.coeffs),
        }
    }
}

fn poly_mul(field: &FieldCtx, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    out
}

/// Remainder modulo a monic polynomial.
fn poly_rem_monic(field: &FieldCtx, a: &[Elem], f: &[Elem]) -> Vec<Elem> {
    let df = f.len() - 1;
    let mut r = a.to_vec();
    while r.len() > df {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - df;
        for (i, &c) in f[..df].iter().enumerate() {
            r[shift + i] = field.sub(r[shift + i], field.mul(lead, c));
        }
    }
    r.resize(df, Elem::ZERO);
    r
}

/// `x^e mod f` for monic `f` of positive degree.
fn x_pow_mod(field: &FieldCtx, mut e: u64, f: &[Elem]) -> Vec<Elem> {
    let mut base = poly_rem_monic(field, &[Elem::ZERO, Elem::ONE], f);
    let mut acc = poly_rem_monic(field, &[Elem::ONE], f);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem_monic(field, &poly_mul(field, &acc, &base), f);
        }
        base = poly_rem_monic(field, &poly_mul(field, &base, &base), f);
        e >>= 1;
    }
    acc
}

/// Minimal polynomial of `beta` over `F_{p^t}`: the product of `x - gamma`
/// over the orbit of `beta` under `x -> x^{p^t}`.
pub fn minimal_polynomial(cc: &CodeContext, beta: Elem) -> Result<SubfieldPolynomial> {
    let f = &cc.field;
    let t = cc.params.t;
    let mut orbit = vec![beta];
    let mut g = f.frobenius(beta, t);
    while g != beta {
        orbit.push(g);
        g = f.frobenius(g, t);
    }
    let coeffs = orbit.iter().fold(vec![Elem::ONE], |acc, &root| {
        poly_mul(f, &acc, &[f.neg(root), Elem::ONE])
    });
    if let Some(bad) = coeffs
        .iter()
        .find(|&&c| !f.is_in_subfield(c, t).unwrap_or(false))
    {
        return Err(Error::DegenerateFactor {
            which: format!("minimal polynomial of element {}", beta.index()),
            reason: format!("coefficient {} outside F_(p^{t})", bad.index()),
        });
    }
    Ok(SubfieldPolynomial { coeffs })
}

/// `h0`, `h1`, `h2` and their product, with the cosets that predict their
/// degrees.
#[derive(Debug, Clone)]
pub struct ParityCheck {
    pub factors: [SubfieldPolynomial; 3],
    pub cosets: [CyclotomicCoset; 3],
    pub product: SubfieldPolynomial,
}

/// Names used in reports for the three factors.
pub const FACTOR_NAMES: [&str; 3] = ["h0", "h1", "h2"];

/// Builds `h0 h1 h2` for the roots `pi^{-2}`, `pi^{-d1}`, `pi^{-d2}` and
/// checks the degree, distinctness and divisibility properties the code
/// construction relies on.
pub fn parity_check_polynomial(cc: &CodeContext) -> Result<ParityCheck> {
    let f = &cc.field;
    let n = f.order() as u64;
    let m0 = cc.params.m0 as usize;
    let exponents = [2, cc.d1, cc.d2];
    let mut factors = Vec::with_capacity(3);
    let mut cosets = Vec::with_capacity(3);
    for (name, &e) in FACTOR_NAMES.iter().zip(&exponents) {
        let beta = f.primitive_pow(-(e as i64));
        let h = minimal_polynomial(cc, beta)?;
        let coset = CyclotomicCoset::new(n - e % n, n, cc.params.pt);
        if h.degree() != m0 || coset.len() != m0 {
            return Err(Error::DegenerateFactor {
                which: name.to_string(),
                reason: format!(
                    "degree {} (coset size {}), expected m0 = {m0}",
                    h.degree(),
                    coset.len()
                ),
            });
        }
        if !h.eval(f, beta).is_zero() {
            return Err(Error::DegenerateFactor {
                which: name.to_string(),
                reason: "does not vanish at its defining root".into(),
            });
        }
        factors.push(h);
        cosets.push(coset);
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if factors[i] == factors[j] {
                return Err(Error::DegenerateFactor {
                    which: format!("{}, {}", FACTOR_NAMES[i], FACTOR_NAMES[j]),
                    reason: "factors coincide".into(),
                });
            }
        }
    }
    let product = factors[0].mul(f, &factors[1]).mul(f, &factors[2]);
    let rem = x_pow_mod(f, n, &product.coeffs);
    if rem[0] != Elem::ONE || rem[1..].iter().any(|c| !c.is_zero()) {
        return Err(Error::DegenerateFactor {
            which: "h0 h1 h2".into(),
            reason: "does not divide x^(q-1) - 1".into(),
        });
    }
    let [h0, h1, h2]: [SubfieldPolynomial; 3] = factors.try_into().unwrap();
    let [c0, c1, c2]: [CyclotomicCoset; 3] = cosets.try_into().unwrap();
    Ok(ParityCheck {
        factors: [h0, h1, h2],
        cosets: [c0, c1, c2],
        product,
    })
}

/// Logs of `pi^{2i}`, `pi^{d1 i}`, `pi^{d2 i}` advance by these steps.
fn exponent_steps(cc: &CodeContext) -> [u32; 3] {
    let n = cc.field.order() as u64;
    [2 % n, cc.d1 % n, cc.d2 % n].map(|e| e as u32)
}

/// Symbol stream `Tr^{q}_{p^t}(a pi^{2i} + b pi^{d1 i} + c pi^{d2 i})` for
/// `i = 0, ..., q - 2`.
pub fn codeword_symbols<'a>(
    cc: &'a CodeContext,
    a: Elem,
    b: Elem,
    c: Elem,
) -> impl Iterator<Item = Elem> + 'a {
    let f = &cc.field;
    let steps = exponent_steps(cc);
    let mut logs = [f.log_of(a), f.log_of(b), f.log_of(c)];
    let trace = f.trace_table(cc.params.t).expect("t divides m");
    (0..f.order()).map(move |_| {
        let z = logs.iter().fold(LOG_ZERO, |acc, &l| f.log_add(acc, l));
        for (l, &s) in logs.iter_mut().zip(&steps) {
            *l = f.log_mul(*l, s);
        }
        Elem(trace[f.from_log(z).index() as usize])
    })
}

/// The full codeword as a vector of `F_{p^t}` elements.
pub fn codeword(cc: &CodeContext, a: Elem, b: Elem, c: Elem) -> Vec<Elem> {
    codeword_symbols(cc, a, b, c).collect()
}

/// Hamming weight of `c(a,b,c)`, counted symbol by symbol.
pub fn codeword_weight_direct(cc: &CodeContext, a: Elem, b: Elem, c: Elem) -> u64 {
    codeword_symbols(cc, a, b, c)
        .filter(|s| !s.is_zero())
        .count() as u64
}

/// Whether `seq` satisfies `sum_j h_j seq[i - j] = 0` at every index,
/// taken cyclically.
pub fn satisfies_recurrence(field: &FieldCtx, h: &SubfieldPolynomial, seq: &[Elem]) -> bool {
    let n = seq.len();
    (0..n).all(|i| {
        h.coeffs
            .iter()
            .enumerate()
            .fold(Elem::ZERO, |acc, (j, &hj)| {
                field.add(acc, field.mul(hj, seq[(i + n * h.coeffs.len() - j) % n]))
            })
            .is_zero()
    })
}

/// Whether `c(a,b,c)` satisfies the recurrence with characteristic
/// polynomial `h0 h1 h2`.
pub fn lfsr_membership(cc: &CodeContext, pc: &ParityCheck, a: Elem, b: Elem, c: Elem) -> bool {
    satisfies_recurrence(&cc.field, &pc.product, &codeword(cc, a, b, c))
}

/// Upper bound on `q^3 (q - 1)` symbol evaluations for the exhaustive sweep.
pub const DIRECT_SWEEP_BUDGET: u128 = 1 << 32;

/// Weight distribution of the whole code by counting the nonzero symbols of
/// every codeword.
///
/// Each symbol `y` of `F_{p^t}` is represented by its coordinates
/// `Tr^{p^t}_p(w_j y)` against a basis `w_j`, which is injective because the
/// trace form is nondegenerate. Codewords are `F_p`-linear in `(a, b, c)`, so
/// each codeword's coordinate vector is the byte-wise sum mod `p` of three
/// precomputed rows.
pub fn direct_weight_distribution(cc: &CodeContext) -> Result<WeightHistogram> {
    let f = &cc.field;
    let q = f.q() as usize;
    let n = f.order() as usize;
    let work = (q as u128).pow(3) * n as u128;
    if work > DIRECT_SWEEP_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "direct weight sweep needs {work} symbol evaluations"
        )));
    }
    let t = cc.params.t as usize;
    let p = f.p() as u8;
    let generator = f.subfield_generator(cc.params.t)?;
    let basis: Vec<Elem> = (0..t as u64).map(|j| f.pow(generator, j)).collect();
    let trace_p = f.trace_table(1)?;
    let steps = exponent_steps(cc);
    let width = n * t;

    // rows[e][z] = coordinates of Tr(z pi^{e i}) for i = 0..n
    let rows: Vec<Vec<u8>> = steps
        .iter()
        .map(|&step| {
            let mut table = vec![0u8; q * width];
            for z in f.elements() {
                let row = &mut table[z.index() as usize * width..][..width];
                let mut l = f.log_of(z);
                for i in 0..n {
                    for (j, &w) in basis.iter().enumerate() {
                        let v = f.from_log(f.log_mul(l, f.log_of(w)));
                        row[i * t + j] = trace_p[v.index() as usize] as u8;
                    }
                    l = f.log_mul(l, step);
                }
            }
            table
        })
        .collect();
    let row = |e: usize, z: usize| &rows[e][z * width..][..width];

    let counts = (0..q)
        .into_par_iter()
        .map(|a| {
            let mut local = vec![0u64; n + 1];
            let mut ab = vec![0u8; width];
            for b in 0..q {
                for ((dst, &x), &y) in ab.iter_mut().zip(row(0, a)).zip(row(1, b)) {
                    let s = x + y;
                    *dst = if s >= p { s - p } else { s };
                }
                for c in 0..q {
                    local[nonzero_symbols(&ab, row(2, c), p, t)] += 1;
                }
            }
            local
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut acc, other| {
                acc.iter_mut().zip(other).for_each(|(x, y)| *x += y);
                acc
            },
        );

    Ok(WeightHistogram::from_counts(
        counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(w, c)| (w as u64, c as u128)),
    ))
}

/// Number of positions where `x + y` (mod `p`, per coordinate) is nonzero.
#[inline]
fn nonzero_symbols(x: &[u8], y: &[u8], p: u8, t: usize) -> usize {
    if t == 1 {
        x.iter()
            .zip(y)
            .map(|(&a, &b)| {
                let s = a + b;
                (s != 0 && s != p) as usize
            })
            .sum()
    } else {
        x.chunks_exact(t)
            .zip(y.chunks_exact(t))
            .filter(|(a, b)| a.iter().zip(*b).any(|(&u, &v)| u + v != 0 && u + v != p))
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(p: u64, m: u32, k: u32, t: u32) -> CodeContext {
        CodeContext::from_parts(p, m, k, t).unwrap()
    }

    fn random_triple(cc: &CodeContext, rng: &mut impl Rng) -> [Elem; 3] {
        let q = cc.field.q() as u64;
        [0; 3].map(|_| cc.field.elem(rng.random_range(0..q)).unwrap())
    }

    #[test]
    fn cosets() {
        let c = CyclotomicCoset::new(2, 242, 3);
        assert_eq!(c.orbit, vec![2, 6, 18, 54, 162]);
        // d1 = 3^2 + 1 under x9 modulo 3^10 - 1 has m0 = 5 elements.
        assert_eq!(CyclotomicCoset::new(10, 59048, 9).len(), 5);
        assert_eq!(CyclotomicCoset::new(0, 242, 3).len(), 1);
    }

    #[test]
    fn minimal_polynomials() {
        let cc = ctx(3, 5, 1, 1);
        let f = &cc.field;
        let one = minimal_polynomial(&cc, Elem::ONE).unwrap();
        assert_eq!(one.coeffs(), &[f.from_int(-1), Elem::ONE]);
        let beta = f.primitive_pow(-2);
        let h0 = minimal_polynomial(&cc, beta).unwrap();
        assert_eq!(h0.degree(), 5);
        assert!(h0.eval(f, beta).is_zero());

        let cc = ctx(3, 10, 2, 2);
        let beta = cc.field.primitive_pow(-(cc.d1 as i64));
        assert_eq!(minimal_polynomial(&cc, beta).unwrap().degree(), 5);
    }

    #[test]
    fn parity_check_degrees() {
        for (params, degree) in [((3, 5, 1, 1), 15), ((3, 7, 1, 1), 21), ((3, 10, 2, 2), 15)] {
            let cc = ctx(params.0, params.1, params.2, params.3);
            let pc = parity_check_polynomial(&cc).unwrap();
            assert_eq!(pc.product.degree(), degree);
            for h in &pc.factors {
                assert_eq!(h.degree(), cc.params.m0 as usize);
                assert!(h
                    .coeffs()
                    .iter()
                    .all(|&c| cc.field.is_in_subfield(c, cc.params.t).unwrap()));
            }
        }
    }

    #[test]
    fn codeword_membership() {
        let cc = ctx(3, 5, 1, 1);
        let pc = parity_check_polynomial(&cc).unwrap();
        let z = Elem::ZERO;
        assert!(lfsr_membership(&cc, &pc, z, z, z));
        assert_eq!(codeword_weight_direct(&cc, z, z, z), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let [a, b, c] = random_triple(&cc, &mut rng);
            assert!(lfsr_membership(&cc, &pc, a, b, c));
        }
        let [a, b, c] = [Elem::ONE, Elem::ONE, Elem::ZERO];
        let mut word = codeword(&cc, a, b, c);
        assert!(satisfies_recurrence(&cc.field, &pc.product, &word));
        word[17] = cc.field.add(word[17], Elem::ONE);
        assert!(!satisfies_recurrence(&cc.field, &pc.product, &word));
    }

    #[test]
    fn membership_over_a_proper_subfield() {
        let cc = ctx(3, 10, 2, 2);
        let pc = parity_check_polynomial(&cc).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..3 {
            let [a, b, c] = random_triple(&cc, &mut rng);
            assert!(lfsr_membership(&cc, &pc, a, b, c));
        }
    }

    #[test]
    fn distinct_triples_give_distinct_codewords() {
        let cc = ctx(3, 5, 1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let x = random_triple(&cc, &mut rng);
            let y = random_triple(&cc, &mut rng);
            if x != y {
                assert_ne!(
                    codeword(&cc, x[0], x[1], x[2]),
                    codeword(&cc, y[0], y[1], y[2])
                );
            }
        }
    }

    #[test]
    fn direct_sweep_agrees_with_streamed_weights_on_a_slice() {
        let cc = ctx(3, 5, 1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        // The sweep itself is exercised in the integration tests; here the
        // coordinate trick is checked on single codewords.
        let f = &cc.field;
        let trace_p = f.trace_table(1).unwrap();
        for _ in 0..20 {
            let [a, b, c] = random_triple(&cc, &mut rng);
            let streamed = codeword_weight_direct(&cc, a, b, c);
            let by_coordinates = codeword(&cc, a, b, c)
                .iter()
                .filter(|s| trace_p[s.index() as usize] != 0)
                .count() as u64;
            assert_eq!(streamed, by_coordinates);
        }
    }
}

//! Arithmetic in `F_{p^m}` and its subfields.
//!
//! Elements are stored by their canonical index `sum c_i p^i`, where `c_i` are
//! the coefficients of the polynomial-basis representation modulo the field's
//! defining polynomial. Multiplication goes through discrete-log tables and
//! addition through a Zech-logarithm table, so every operation is a handful of
//! array lookups. The index of an element of the prime field equals its
//! integer value.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, pow_mod, prime_factors};

/// Largest field the table-driven context accepts.
pub const MAX_FIELD_SIZE: u64 = 1 << 24;

/// Sentinel used for `log(0)` in log-domain arithmetic.
pub const LOG_ZERO: u32 = u32::MAX;

/// An element of a [`FieldCtx`], identified by its canonical index.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Characteristic, degree and defining polynomial of a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldParams {
    pub p: u32,
    pub m: u32,
    pub q: u32,
    /// Monic irreducible modulus, coefficients low degree first (length `m + 1`).
    pub modulus: Vec<u32>,
}

/// Immutable table-driven context for `F_{p^m}`.
#[derive(Debug)]
pub struct FieldCtx {
    params: FieldParams,
    /// Multiplicative group order `q - 1`.
    order: u32,
    primitive: Elem,
    log: Vec<u32>,
    exp: Vec<u32>,
    /// `zech[e] = log(1 + pi^e)`, or [`LOG_ZERO`] when `1 + pi^e = 0`.
    zech: Vec<u32>,
    /// Lazily built `Tr^{p^m}_{p^r}` tables, indexed by `r`.
    traces: Vec<OnceLock<Vec<u32>>>,
}

impl FieldCtx {
    /// Builds `F_{p^m}` with the lexicographically smallest monic irreducible
    /// modulus (coefficients compared from the constant term up) and the
    /// generator of smallest index as primitive element.
    pub fn build(p: u64, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::NonPositive { name: "m" });
        }
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge { p, m })?;
        let (p32, q32) = (p as u32, q as u32);

        let modulus = smallest_irreducible(p, m as usize);
        let poly = PolyRing {
            p,
            modulus: &modulus,
        };
        let order = q - 1;
        let order_factors = prime_factors(order);
        let primitive = (1..q)
            .find(|&idx| {
                let g = poly.from_index(idx);
                order_factors
                    .iter()
                    .all(|&l| !poly.is_one(&poly.pow(&g, order / l)))
            })
            .expect("the multiplicative group of a finite field is cyclic");

        let mut log = vec![LOG_ZERO; q as usize];
        let mut exp = vec![0u32; order as usize];
        let g = poly.from_index(primitive);
        let mut cur = poly.from_index(1);
        for e in 0..order as usize {
            let idx = poly.to_index(&cur);
            assert_eq!(
                log[idx as usize], LOG_ZERO,
                "primitive element has short order"
            );
            exp[e] = idx as u32;
            log[idx as usize] = e as u32;
            cur = poly.mul(&cur, &g);
        }

        // 1 + x only touches the constant coefficient.
        let zech = exp
            .iter()
            .map(|&idx| {
                let plus_one = if idx % p32 == p32 - 1 {
                    idx + 1 - p32
                } else {
                    idx + 1
                };
                log[plus_one as usize]
            })
            .collect();

        Ok(FieldCtx {
            params: FieldParams {
                p: p32,
                m,
                q: q32,
                modulus: modulus.iter().map(|&c| c as u32).collect(),
            },
            order: order as u32,
            primitive: Elem(primitive as u32),
            log,
            exp,
            zech,
            traces: (0..=m).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.params.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.params.m
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.params.q
    }

    /// Order of the multiplicative group, `q - 1`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    /// Element with the given canonical index.
    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index < self.params.q as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(Error::InvalidElement {
                index,
                q: self.params.q as u64,
            })
        }
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.params.p as i64) as u32)
    }

    /// Every element of the field in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.params.q).map(Elem)
    }

    pub fn coefficients(&self, x: Elem) -> Vec<u32> {
        let p = self.params.p;
        let mut idx = x.0;
        (0..self.params.m)
            .map(|_| {
                let c = idx % p;
                idx /= p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<Elem> {
        let p = self.params.p as u64;
        if coeffs.len() > self.params.m as usize {
            return Err(Error::InvalidElement {
                index: u64::MAX,
                q: self.params.q as u64,
            });
        }
        let idx = coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + (c as u64 % p));
        self.elem(idx)
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.from_log(self.log_add(self.log_of(x), self.log_of(y)))
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.from_log(self.log_neg(self.log_of(x)))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.from_log(self.log_mul(self.log_of(x), self.log_of(y)))
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        match self.log_of(x) {
            LOG_ZERO => Err(Error::DivisionByZero),
            l => Ok(self.from_log(if l == 0 { 0 } else { self.order - l })),
        }
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e`, with `0^0 = 1`.
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        match self.log_of(x) {
            LOG_ZERO => Elem::ZERO,
            l => {
                let n = self.order as u64;
                self.from_log(((l as u64 * (e % n)) % n) as u32)
            }
        }
    }

    /// `pi^e` for any integer exponent.
    pub fn primitive_pow(&self, e: i64) -> Elem {
        self.from_log(e.rem_euclid(self.order as i64) as u32)
    }

    /// `x^(p^i)`.
    pub fn frobenius(&self, x: Elem, i: u32) -> Elem {
        match self.log_of(x) {
            LOG_ZERO => Elem::ZERO,
            l => {
                let n = self.order as u64;
                let shift = pow_mod(self.params.p as u64, i as u64, n);
                self.from_log(((l as u64 * shift) % n) as u32)
            }
        }
    }

    /// Whether `x` is fixed by `x -> x^(p^r)`, i.e. lies in `F_{p^r}`.
    pub fn is_in_subfield(&self, x: Elem, r: u32) -> Result<bool> {
        self.check_divisor(r)?;
        Ok(self.frobenius(x, r) == x)
    }

    /// `Tr^{p^m}_{p^r}(x)`.
    pub fn trace(&self, x: Elem, r: u32) -> Result<Elem> {
        Ok(Elem(self.trace_table(r)?[x.0 as usize]))
    }

    /// `Tr^{p^from}_{p^to}(x)` for `x` in the intermediate field `F_{p^from}`.
    pub fn relative_trace(&self, x: Elem, from: u32, to: u32) -> Result<Elem> {
        if !self.is_in_subfield(x, from)? {
            return Err(Error::NotInSubfield {
                index: x.0,
                r: from,
            });
        }
        if to == 0 || !from.is_multiple_of(to) {
            return Err(Error::NotADivisor { r: to, m: from });
        }
        Ok((0..from / to).fold(Elem::ZERO, |acc, j| {
            self.add(acc, self.frobenius(x, to * j))
        }))
    }

    /// Full table of `Tr^{p^m}_{p^r}` indexed by element index.
    pub fn trace_table(&self, r: u32) -> Result<&[u32]> {
        self.check_divisor(r)?;
        Ok(self.traces[r as usize].get_or_init(|| self.build_trace_table(r)))
    }

    fn build_trace_table(&self, r: u32) -> Vec<u32> {
        let terms = self.params.m / r;
        let n = self.order as u64;
        let shifts: Vec<u64> = (0..terms)
            .map(|j| pow_mod(self.params.p as u64, (r * j) as u64, n))
            .collect();
        let table: Vec<u32> = (0..self.params.q)
            .map(|idx| match self.log[idx as usize] {
                LOG_ZERO => 0,
                l => {
                    let acc = shifts.iter().fold(LOG_ZERO, |acc, &sh| {
                        self.log_add(acc, ((l as u64 * sh) % n) as u32)
                    });
                    self.from_log(acc).0
                }
            })
            .collect();
        debug_assert!(table.iter().all(|&t| self.frobenius(Elem(t), r) == Elem(t)));
        table
    }

    /// Quadratic character of `F_{p^r}` evaluated at `x`: `0`, `+1` or `-1`.
    pub fn quadratic_character(&self, x: Elem, r: u32) -> Result<i8> {
        if !self.is_in_subfield(x, r)? {
            return Err(Error::NotInSubfield { index: x.0, r });
        }
        Ok(match self.log_of(x) {
            LOG_ZERO => 0,
            l => {
                // Subfield elements are the powers of pi^((q-1)/(p^r-1)).
                let cofactor = self.order / (self.params.p.pow(r) - 1);
                if (l / cofactor).is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
        })
    }

    /// Generator of the multiplicative group of `F_{p^r}`.
    pub fn subfield_generator(&self, r: u32) -> Result<Elem> {
        self.check_divisor(r)?;
        Ok(self.from_log(self.order / (self.params.p.pow(r) - 1)))
    }

    fn check_divisor(&self, r: u32) -> Result<()> {
        if r == 0 || !self.params.m.is_multiple_of(r) {
            Err(Error::NotADivisor {
                r,
                m: self.params.m,
            })
        } else {
            Ok(())
        }
    }

    /// Coefficient-wise addition; slow, kept as an independent check on the
    /// Zech table.
    pub fn add_by_coefficients(&self, x: Elem, y: Elem) -> Elem {
        let p = self.params.p;
        let cx = self.coefficients(x);
        let cy = self.coefficients(y);
        let sum: Vec<u32> = cx.iter().zip(&cy).map(|(a, b)| (a + b) % p).collect();
        self.from_coefficients(&sum).expect("length m")
    }

    // --- log domain -------------------------------------------------------

    /// Discrete log of `x`, [`LOG_ZERO`] for zero.
    #[inline]
    pub fn log_of(&self, x: Elem) -> u32 {
        self.log[x.0 as usize]
    }

    #[inline]
    pub fn from_log(&self, l: u32) -> Elem {
        if l == LOG_ZERO {
            Elem::ZERO
        } else {
            Elem(self.exp[l as usize])
        }
    }

    #[inline]
    pub fn log_mul(&self, a: u32, b: u32) -> u32 {
        if a == LOG_ZERO || b == LOG_ZERO {
            return LOG_ZERO;
        }
        let s = a + b;
        if s >= self.order {
            s - self.order
        } else {
            s
        }
    }

    #[inline]
    pub fn log_neg(&self, a: u32) -> u32 {
        if a == LOG_ZERO {
            return LOG_ZERO;
        }
        let s = a + self.order / 2;
        if s >= self.order {
            s - self.order
        } else {
            s
        }
    }

    /// `a / b` in log form; `b` must be nonzero.
    #[inline]
    pub fn log_div(&self, a: u32, b: u32) -> u32 {
        debug_assert_ne!(b, LOG_ZERO);
        if a == LOG_ZERO {
            return LOG_ZERO;
        }
        if a >= b {
            a - b
        } else {
            a + self.order - b
        }
    }

    /// Field addition on discrete logs via the Zech table.
    #[inline]
    pub fn log_add(&self, a: u32, b: u32) -> u32 {
        if a == LOG_ZERO {
            return b;
        }
        if b == LOG_ZERO {
            return a;
        }
        let diff = if b >= a { b - a } else { b + self.order - a };
        let z = self.zech[diff as usize];
        if z == LOG_ZERO {
            return LOG_ZERO;
        }
        let s = a + z;
        if s >= self.order {
            s - self.order
        } else {
            s
        }
    }
}

/// Arithmetic in `F_p[x] / (f)` on dense coefficient vectors; used only while
/// building the tables.
struct PolyRing<'a> {
    p: u64,
    modulus: &'a [u64],
}

impl PolyRing<'_> {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn from_index(&self, mut idx: u64) -> Vec<u64> {
        (0..self.degree())
            .map(|_| {
                let c = idx % self.p;
                idx /= self.p;
                c
            })
            .collect()
    }

    fn to_index(&self, a: &[u64]) -> u64 {
        a.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn is_one(&self, a: &[u64]) -> bool {
        a[0] == 1 && a[1..].iter().all(|&c| c == 0)
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let prod = poly_mul(a, b, self.p);
        let mut r = poly_rem(&prod, self.modulus, self.p);
        r.resize(self.degree(), 0);
        r
    }

    fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.from_index(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo `f` (leading coefficient of `f` nonzero).
fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let f = trim(f.to_vec());
    let df = f.len() - 1;
    if df == 0 {
        return vec![0];
    }
    let lead_inv = pow_mod(f[df], p - 2, p);
    let mut r = trim(a.to_vec());
    while r.len() > df {
        let shift = r.len() - 1 - df;
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &c) in f.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - factor * c % p) % p;
        }
        r = trim(r);
        if r.len() == 1 && r[0] == 0 {
            break;
        }
    }
    r
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's irreducibility test for a monic polynomial over `F_p`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let ring = PolyRing { p, modulus: f };
    let x = ring.from_index(p);
    // frob[i] = x^(p^(i+1)) mod f
    let mut frob = Vec::with_capacity(m);
    let mut h = x.clone();
    for _ in 0..m {
        h = ring.pow(&h, p);
        frob.push(h.clone());
    }
    if frob[m - 1] != x {
        return false;
    }
    prime_factors(m as u64).into_iter().all(|l| {
        let h = &frob[m / l as usize - 1];
        let g = poly_gcd(&poly_sub(h, &x, p), f, p);
        g.len() == 1 && g[0] != 0
    })
}

/// Smallest monic irreducible of degree `m`, ordering candidates by
/// `(c_0, c_1, ..., c_{m-1})` lexicographically.
fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    let count = p.pow(m as u32);
    (0..count)
        .map(|n| {
            // c_0 is the most significant digit of n.
            let mut f = vec![0u64; m + 1];
            let mut rest = n;
            for i in (0..m).rev() {
                f[i] = rest % p;
                rest /= p;
            }
            f[m] = 1;
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(ctx: &FieldCtx, rng: &mut impl Rng) -> Elem {
        Elem(rng.random_range(0..ctx.q()))
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert_eq!(
            FieldCtx::build(2, 5).unwrap_err(),
            Error::EvenCharacteristic
        );
        assert_eq!(FieldCtx::build(9, 2).unwrap_err(), Error::NonPrime(9));
        assert!(matches!(
            FieldCtx::build(3, 16).unwrap_err(),
            Error::FieldTooLarge { .. }
        ));
    }

    #[test]
    fn small_fields() {
        let f3 = FieldCtx::build(3, 1).unwrap();
        assert_eq!(f3.q(), 3);
        assert_eq!(f3.primitive(), Elem(2));
        assert_eq!(f3.add(Elem(2), Elem(2)), Elem(1));
        assert_eq!(f3.pow(f3.primitive(), 2), Elem::ONE);

        let f = FieldCtx::build(3, 5).unwrap();
        assert_eq!(f.q(), 243);
        assert_eq!(f.params().modulus.len(), 6);
        let pi = f.primitive();
        assert_eq!(f.pow(pi, 242), Elem::ONE);
        for l in [2u64, 11] {
            assert_ne!(f.pow(pi, 242 / l), Elem::ONE);
        }
        assert_eq!(f.inv(Elem::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn modulus_is_lexicographically_smallest() {
        // Over F_3 in degree 2: x^2 + 1 is the first candidate with c_0 = 1
        // that has no root.
        let f = FieldCtx::build(3, 2).unwrap();
        assert_eq!(f.params().modulus, vec![1, 0, 1]);
        // Degree 5 over F_3: brute-force the first candidate with no factor of
        // degree 1 or 2 by checking it has no roots in F_9.
        let f5 = FieldCtx::build(3, 5).unwrap();
        let f9 = FieldCtx::build(3, 2).unwrap();
        let modulus = &f5.params().modulus;
        let has_root_in_f9 = |coeffs: &[u32]| {
            f9.elements().any(|z| {
                let mut acc = Elem::ZERO;
                for &c in coeffs.iter().rev() {
                    acc = f9.add(f9.mul(acc, z), Elem(c));
                }
                acc.is_zero()
            })
        };
        assert!(!has_root_in_f9(modulus));
        // Every lexicographically smaller candidate is reducible.
        let key = |c: &[u32]| c[..5].iter().fold(0u32, |acc, &d| acc * 3 + d);
        for n in 0..key(modulus) {
            let mut c = vec![0u32; 6];
            let mut rest = n;
            for i in (0..5).rev() {
                c[i] = rest % 3;
                rest /= 3;
            }
            c[5] = 1;
            assert!(has_root_in_f9(&c), "candidate {c:?} should be reducible");
        }
    }

    #[test]
    fn zech_addition_matches_coefficients() {
        for (p, m) in [(3, 5), (5, 3), (7, 2), (3, 1)] {
            let f = FieldCtx::build(p, m).unwrap();
            for x in f.elements() {
                for y in f.elements().step_by(7) {
                    assert_eq!(f.add(x, y), f.add_by_coefficients(x, y));
                }
            }
        }
    }

    #[test]
    fn log_tables_are_bijective() {
        let f = FieldCtx::build(3, 7).unwrap();
        let mut seen = vec![false; f.q() as usize];
        for l in 0..f.order() {
            let x = f.from_log(l);
            assert!(!seen[x.index() as usize]);
            seen[x.index() as usize] = true;
            assert_eq!(f.log_of(x), l);
        }
        assert!(!seen[0]);
    }

    #[test]
    fn field_axioms_on_random_triples() {
        for (p, m) in [(3, 5), (3, 10), (5, 4)] {
            let f = FieldCtx::build(p, m).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..10_000 {
                let (x, y, z) = (
                    random(&f, &mut rng),
                    random(&f, &mut rng),
                    random(&f, &mut rng),
                );
                assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                assert_eq!(f.add(x, f.neg(x)), Elem::ZERO);
                assert_eq!(f.sub(f.add(x, y), y), x);
                if !x.is_zero() {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), Elem::ONE);
                }
            }
        }
    }

    #[test]
    fn trace_values() {
        let f = FieldCtx::build(3, 5).unwrap();
        assert_eq!(f.trace(Elem::ONE, 1).unwrap(), Elem(2));
        assert_eq!(
            f.trace(Elem::ONE, 2).unwrap_err(),
            Error::NotADivisor { r: 2, m: 5 }
        );
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let x = random(&f, &mut rng);
            assert_eq!(
                f.trace(f.frobenius(x, 1), 1).unwrap(),
                f.trace(x, 1).unwrap()
            );
        }
    }

    #[test]
    fn trace_transitivity() {
        let f = FieldCtx::build(3, 10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let x = random(&f, &mut rng);
            let direct = f.trace(x, 1).unwrap();
            let via_2 = f.relative_trace(f.trace(x, 2).unwrap(), 2, 1).unwrap();
            let via_5 = f.relative_trace(f.trace(x, 5).unwrap(), 5, 1).unwrap();
            assert_eq!(direct, via_2);
            assert_eq!(direct, via_5);
        }
    }

    #[test]
    fn trace_is_balanced() {
        for (p, m) in [(3u64, 5u32), (3, 10), (5, 4)] {
            let f = FieldCtx::build(p, m).unwrap();
            for r in (1..=m).filter(|r| m % r == 0) {
                let mut hits = vec![0u64; f.q() as usize];
                for x in f.elements() {
                    hits[f.trace(x, r).unwrap().index() as usize] += 1;
                }
                let expected = p.pow(m - r);
                let values: Vec<_> = hits.iter().filter(|&&h| h > 0).collect();
                assert_eq!(values.len() as u64, p.pow(r));
                assert!(values.iter().all(|&&h| h == expected), "r = {r}");
            }
        }
    }

    #[test]
    fn quadratic_character_conventions() {
        let f = FieldCtx::build(3, 5).unwrap();
        assert_eq!(f.quadratic_character(Elem::ZERO, 5).unwrap(), 0);
        assert_eq!(f.quadratic_character(f.from_int(-1), 5).unwrap(), -1);
        assert_eq!(f.quadratic_character(f.from_int(-1), 1).unwrap(), -1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let y = random(&f, &mut rng);
            if !y.is_zero() {
                assert_eq!(f.quadratic_character(f.mul(y, y), 5).unwrap(), 1);
            }
        }
        assert_eq!(f.quadratic_character(f.primitive(), 5).unwrap(), -1);
        assert!(matches!(
            f.quadratic_character(f.primitive(), 1),
            Err(Error::NotInSubfield { .. })
        ));

        let f10 = FieldCtx::build(3, 10).unwrap();
        let g9 = f10.subfield_generator(2).unwrap();
        assert_eq!(f10.quadratic_character(g9, 2).unwrap(), -1);
        // -1 is a square in F_9.
        assert_eq!(f10.quadratic_character(f10.from_int(-1), 2).unwrap(), 1);
    }

    #[test]
    fn builds_are_deterministic() {
        let a = FieldCtx::build(5, 4).unwrap();
        let b = FieldCtx::build(5, 4).unwrap();
        assert_eq!(a.params(), b.params());
        assert_eq!(a.primitive(), b.primitive());
        assert_eq!(a.exp, b.exp);
        assert_eq!(a.zech, b.zech);
    }

    #[test]
    fn coefficient_round_trip() {
        let f = FieldCtx::build(5, 3).unwrap();
        for x in f.elements() {
            assert_eq!(f.from_coefficients(&f.coefficients(x)).unwrap(), x);
        }
    }
}

//! Parameter validation and the derived constants every other module reads.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, MAX_FIELD_SIZE};
use crate::numtheory::{is_prime, pow_mod};

/// How the non-square `lambda` of `F_{p^t}` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaRule {
    /// `p^t = 3 (mod 4)`, so `-1` is a non-square.
    MinusOne,
    /// Otherwise the generator of `F_{p^t}^*`.
    SubfieldGenerator,
}

/// Validated `(p, m, k, t)` together with everything derived from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub p: u32,
    pub m: u32,
    pub k: u32,
    pub t: u32,
    /// `gcd(m, k)`
    pub d: u32,
    /// `m / d`, odd and at least 5.
    pub s: u32,
    /// `m / t`, the degree of each parity-check factor.
    pub m0: u32,
    pub q: u64,
    /// `p^d`
    pub q0: u64,
    /// `p^t`, the alphabet size of the code.
    pub pt: u64,
    pub q0_mod4: u8,
    pub lambda_rule: LambdaRule,
}

impl CodeParams {
    pub fn validate(p: u64, m: u32, k: u32, t: u32) -> Result<Self> {
        for (name, v) in [("m", m), ("k", k), ("t", t)] {
            if v == 0 {
                return Err(Error::NonPositive { name });
            }
        }
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        let d = m.gcd(&k);
        let s = m / d;
        if s < 5 || s.is_multiple_of(2) {
            return Err(Error::InvalidS { s });
        }
        if !d.is_multiple_of(t) || (d / t).is_multiple_of(2) {
            return Err(Error::InvalidT { t, d });
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge { p, m })?;
        let q0 = p.pow(d);
        let pt = p.pow(t);
        Ok(CodeParams {
            p: p as u32,
            m,
            k,
            t,
            d,
            s,
            m0: m / t,
            q,
            q0,
            pt,
            q0_mod4: (q0 % 4) as u8,
            lambda_rule: if pt % 4 == 3 {
                LambdaRule::MinusOne
            } else {
                LambdaRule::SubfieldGenerator
            },
        })
    }

    /// Exponent `p^k + 1` reduced modulo `q - 1`.
    pub fn d1(&self) -> u64 {
        (pow_mod(self.p as u64, self.k as u64, self.q - 1) + 1) % (self.q - 1)
    }

    /// Exponent `p^{2k} + 1` reduced modulo `q - 1`.
    pub fn d2(&self) -> u64 {
        (pow_mod(self.p as u64, 2 * self.k as u64, self.q - 1) + 1) % (self.q - 1)
    }

    /// Minimum distance `(p^t - 1)(p^{m-t} - p^{(m+3d-2t)/2})`.
    pub fn minimum_distance(&self) -> u64 {
        let p = self.p as u64;
        (self.pt - 1) * (p.pow(self.m - self.t) - p.pow((self.m + 3 * self.d - 2 * self.t) / 2))
    }
}

/// A validated parameter point bound to its field and its non-square `lambda`.
#[derive(Debug)]
pub struct CodeContext {
    pub params: CodeParams,
    pub field: FieldCtx,
    pub lambda: Elem,
    /// `x -> x^{d1}` as a log multiplier.
    pub d1: u64,
    pub d2: u64,
}

impl CodeContext {
    pub fn new(params: CodeParams) -> Result<Self> {
        let field = FieldCtx::build(params.p as u64, params.m)?;
        let lambda = match params.lambda_rule {
            LambdaRule::MinusOne => field.from_int(-1),
            LambdaRule::SubfieldGenerator => field.subfield_generator(params.t)?,
        };
        debug_assert_eq!(field.quadratic_character(lambda, params.t), Ok(-1));
        debug_assert_eq!(field.quadratic_character(lambda, params.d), Ok(-1));
        let (d1, d2) = (params.d1(), params.d2());
        Ok(CodeContext {
            params,
            field,
            lambda,
            d1,
            d2,
        })
    }

    pub fn from_parts(p: u64, m: u32, k: u32, t: u32) -> Result<Self> {
        Self::new(CodeParams::validate(p, m, k, t)?)
    }

    /// `(x^2, x^{d1}, x^{d2})`.
    #[inline]
    pub fn monomials(&self, x: Elem) -> [Elem; 3] {
        let f = &self.field;
        [f.pow(x, 2), f.pow(x, self.d1), f.pow(x, self.d2)]
    }

    /// `a x^2 + b x^{d1} + c x^{d2}` before any trace is taken.
    pub fn trinomial(&self, a: Elem, b: Elem, c: Elem, x: Elem) -> Elem {
        let f = &self.field;
        let [x2, x1, x3] = self.monomials(x);
        f.add(f.add(f.mul(a, x2), f.mul(b, x1)), f.mul(c, x3))
    }

    /// `Q_{a,b,c}(x) = Tr^{q}_{q0}(a x^2 + b x^{d1} + c x^{d2})`.
    pub fn quadratic_form(&self, a: Elem, b: Elem, c: Elem, x: Elem) -> Elem {
        self.field
            .trace(self.trinomial(a, b, c, x), self.params.d)
            .expect("d divides m")
    }
}

//! Classification of `Q_{a,b,c}(x) = Tr^q_{q0}(a x^2 + b x^{d1} + c x^{d2})`
//! as a quadratic form in `s` variables over `F_{q0}`.
//!
//! The rank and the square class of the discriminant determine `T(a,b,c)`
//! completely, so this module is the fast path for every sweep. Matrix
//! entries are kept as discrete logs throughout: congruence elimination is
//! then only table lookups.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, LOG_ZERO};
use crate::params::{CodeContext, CodeParams};

/// Symmetric `s x s` Gram matrix over `F_{q0}`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    pub s: usize,
    pub entries: Vec<Elem>,
    /// Basis of `F_q` over `F_{q0}` the matrix is written in.
    pub basis: Vec<Elem>,
}

impl GramMatrix {
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.s + j]
    }

    /// `X A X^T` for a coordinate vector `X` over `F_{q0}`.
    pub fn evaluate(&self, f: &FieldCtx, coords: &[Elem]) -> Elem {
        let mut acc = Elem::ZERO;
        for (i, &xi) in coords.iter().enumerate() {
            for (j, &xj) in coords.iter().enumerate() {
                acc = f.add(acc, f.mul(f.mul(xi, xj), self.get(i, j)));
            }
        }
        acc
    }

    /// The field element with coordinates `X` in this basis.
    pub fn point(&self, f: &FieldCtx, coords: &[Elem]) -> Elem {
        coords
            .iter()
            .zip(&self.basis)
            .fold(Elem::ZERO, |acc, (&x, &e)| f.add(acc, f.mul(x, e)))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.s).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// The default basis `1, pi, ..., pi^{s-1}`.
pub fn power_basis(cc: &CodeContext) -> Vec<Elem> {
    (0..cc.params.s as i64)
        .map(|j| cc.field.primitive_pow(j))
        .collect()
}

pub fn gram_matrix(cc: &CodeContext, a: Elem, b: Elem, c: Elem) -> GramMatrix {
    gram_matrix_in_basis(cc, a, b, c, power_basis(cc))
}

/// Gram matrix by polarization: `A_ii = Q(e_i)` and
/// `A_ij = (Q(e_i + e_j) - Q(e_i) - Q(e_j)) / 2`.
pub fn gram_matrix_in_basis(
    cc: &CodeContext,
    a: Elem,
    b: Elem,
    c: Elem,
    basis: Vec<Elem>,
) -> GramMatrix {
    let f = &cc.field;
    let s = basis.len();
    let q = |x: Elem| cc.quadratic_form(a, b, c, x);
    let half = f.inv(f.from_int(2)).expect("odd characteristic");
    let diag: Vec<Elem> = basis.iter().map(|&e| q(e)).collect();
    let mut entries = vec![Elem::ZERO; s * s];
    for i in 0..s {
        entries[i * s + i] = diag[i];
        for j in 0..i {
            let cross = f.sub(f.sub(q(f.add(basis[i], basis[j])), diag[i]), diag[j]);
            let v = f.mul(cross, half);
            entries[i * s + j] = v;
            entries[j * s + i] = v;
        }
    }
    GramMatrix { s, entries, basis }
}

/// Rank and discriminant class of a symmetric matrix over `F_{p^r}`.
///
/// The discriminant class is `eta0` of the product of the nonzero diagonal
/// entries after congruence diagonalization, and 0 for the zero form.
pub fn rank_and_discriminant(f: &FieldCtx, a: &GramMatrix, r: u32) -> Result<(usize, i8)> {
    let mut logs: Vec<u32> = a.entries.iter().map(|&x| f.log_of(x)).collect();
    let (rank, det) = diagonalize_logs(f, &mut logs, a.s);
    if rank == 0 {
        return Ok((0, 0));
    }
    Ok((rank, f.quadratic_character(f.from_log(det), r)?))
}

/// Congruence diagonalization of an `n x n` symmetric matrix given by logs,
/// destroyed in the process. Returns the rank and the log of the product of
/// the pivots.
fn diagonalize_logs(f: &FieldCtx, m: &mut [u32], n: usize) -> (usize, u32) {
    let mut active: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    let mut det = 0u32;
    let two = f.log_of(f.from_int(2));
    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| m[i * n + i] != LOG_ZERO) {
            Some(pos) => pos,
            None => {
                // Zero diagonal: row/column j into row/column i makes
                // A_ii = 2 A_ij, nonzero in odd characteristic.
                let Some((pi, j)) = active.iter().enumerate().find_map(|(pi, &i)| {
                    active
                        .iter()
                        .find(|&&j| j != i && m[i * n + j] != LOG_ZERO)
                        .map(|&j| (pi, j))
                }) else {
                    break;
                };
                let i = active[pi];
                let aij = m[i * n + j];
                for &k in &active {
                    if k != i {
                        let v = f.log_add(m[i * n + k], m[j * n + k]);
                        m[i * n + k] = v;
                        m[k * n + i] = v;
                    }
                }
                m[i * n + i] = f.log_mul(two, aij);
                pi
            }
        };
        let i = active.swap_remove(pivot);
        let piv = m[i * n + i];
        rank += 1;
        det = f.log_mul(det, piv);
        for &j in &active {
            let aji = m[j * n + i];
            if aji == LOG_ZERO {
                continue;
            }
            let factor = f.log_neg(f.log_div(aji, piv));
            for &k in &active {
                let aik = m[i * n + k];
                if aik != LOG_ZERO && k >= j {
                    let v = f.log_add(m[j * n + k], f.log_mul(factor, aik));
                    m[j * n + k] = v;
                    m[k * n + j] = v;
                }
            }
        }
    }
    (rank, det)
}

/// Rank, discriminant class and the resulting value of `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormClass {
    pub rank: usize,
    pub disc_class: i8,
    pub t_value: i64,
}

/// `T` from rank and discriminant class alone.
///
/// Odd rank gives 0, rank 0 gives `2q`, and even rank `r` gives
/// `sign * 2 * q0^{s - r/2}` with the sign read off the Gauss sum of a
/// diagonal form: `disc * (-1)^{(d-1) r}`, times `(-1)^{d r / 2}` when
/// `p = 3 (mod 4)`.
pub fn t_closed_form(params: &CodeParams, rank: usize, disc_class: i8) -> i64 {
    let r = rank as u32;
    if r == 0 {
        return 2 * params.q as i64;
    }
    if r % 2 == 1 {
        return 0;
    }
    let d = params.d;
    let mut sign = disc_class as i64;
    if ((d - 1) * r) % 2 == 1 {
        sign = -sign;
    }
    if params.p % 4 == 3 && ((d * r / 2) % 2 == 1) {
        sign = -sign;
    }
    sign * 2 * (params.q0 as i64).pow(params.s - r / 2)
}

/// The admissible values of `T`: `2q`, `0`, `+-2 p^{(m+d)/2}`, `+-2 p^{(m+3d)/2}`.
pub fn admissible_values(params: &CodeParams) -> [i64; 6] {
    let p = params.p as i64;
    let e1 = 2 * p.pow((params.m + params.d) / 2);
    let e2 = 2 * p.pow((params.m + 3 * params.d) / 2);
    [2 * params.q as i64, 0, e1, -e1, e2, -e2]
}

fn finish(params: &CodeParams, rank: usize, disc: i8, nonzero: bool) -> Result<FormClass> {
    let bound = params.s as usize - 4;
    if nonzero && rank < bound {
        return Err(Error::RankBoundViolation { rank, bound });
    }
    Ok(FormClass {
        rank,
        disc_class: disc,
        t_value: t_closed_form(params, rank, disc),
    })
}

/// Builds the Gram matrix, diagonalizes it and maps to `T`. Fails with
/// [`Error::RankBoundViolation`] if a nonzero triple gives rank below `s - 4`.
pub fn classify(cc: &CodeContext, a: Elem, b: Elem, c: Elem) -> Result<FormClass> {
    let gram = gram_matrix(cc, a, b, c);
    let (rank, disc) = rank_and_discriminant(&cc.field, &gram, cc.params.d)?;
    let nonzero = !(a.is_zero() && b.is_zero() && c.is_zero());
    finish(&cc.params, rank, disc, nonzero)
}

/// Largest `3 q s^2` for which [`Classifier`] precomputes per-coefficient
/// Gram matrices (4 bytes per entry).
pub const CLASSIFIER_TABLE_LIMIT: u64 = 1 << 26;

/// Table-driven classifier for sweeps.
///
/// The Gram matrix is additive in `(a, b, c)`, so the matrices of
/// `Tr(z x^2)`, `Tr(z x^{d1})` and `Tr(z x^{d2})` are stored for every `z`
/// and a triple costs `2 s^2` Zech additions plus one elimination. Above
/// [`CLASSIFIER_TABLE_LIMIT`] the per-coefficient matrices are built on the
/// fly instead.
pub struct Classifier<'a> {
    cc: &'a CodeContext,
    s: usize,
    basis: Vec<Elem>,
    /// `tables[e][z * s^2 + ij]`, logs of the Gram entries.
    tables: Option<[Vec<u32>; 3]>,
    subfield_step: u32,
}

impl<'a> Classifier<'a> {
    pub fn new(cc: &'a CodeContext) -> Self {
        Self::with_basis(cc, power_basis(cc))
    }

    pub fn with_basis(cc: &'a CodeContext, basis: Vec<Elem>) -> Self {
        let f = &cc.field;
        let s = basis.len();
        let q = f.q() as u64;
        let tables = (3 * q * (s * s) as u64 <= CLASSIFIER_TABLE_LIMIT).then(|| {
            [0usize, 1, 2].map(|e| {
                let mut table = vec![LOG_ZERO; q as usize * s * s];
                for z in f.elements() {
                    let m = monomial_gram(cc, &basis, e, z);
                    table[z.index() as usize * s * s..][..s * s].copy_from_slice(&m);
                }
                table
            })
        });
        // eta0 of an element of F_{q0} from its log in F_q: the log is a
        // multiple of (q-1)/(q0-1) and the character is the parity of the
        // quotient.
        let step = ((q - 1) / (cc.params.q0 - 1)) as u32;
        Classifier {
            cc,
            s,
            basis,
            tables,
            subfield_step: step,
        }
    }

    pub fn context(&self) -> &CodeContext {
        self.cc
    }

    pub fn is_tabulated(&self) -> bool {
        self.tables.is_some()
    }

    fn monomial(&self, e: usize, z: Elem) -> std::borrow::Cow<'_, [u32]> {
        let n = self.s * self.s;
        match &self.tables {
            Some(t) => std::borrow::Cow::Borrowed(&t[e][z.index() as usize * n..][..n]),
            None => std::borrow::Cow::Owned(monomial_gram(self.cc, &self.basis, e, z)),
        }
    }

    /// Log-form Gram matrix of `a x^2 + b x^{d1}`, to be completed by
    /// [`Classifier::classify_with_prefix`].
    pub fn prefix(&self, a: Elem, b: Elem) -> Vec<u32> {
        let f = &self.cc.field;
        let (ma, mb) = (self.monomial(0, a), self.monomial(1, b));
        ma.iter()
            .zip(mb.iter())
            .map(|(&x, &y)| f.log_add(x, y))
            .collect()
    }

    pub fn classify_with_prefix(
        &self,
        prefix: &[u32],
        nonzero_prefix: bool,
        c: Elem,
        scratch: &mut Vec<u32>,
    ) -> Result<FormClass> {
        let f = &self.cc.field;
        let mc = self.monomial(2, c);
        scratch.clear();
        scratch.extend(prefix.iter().zip(mc.iter()).map(|(&x, &y)| f.log_add(x, y)));
        let (rank, det) = diagonalize_logs(f, scratch, self.s);
        let disc = if rank == 0 {
            0
        } else {
            debug_assert_eq!(det % self.subfield_step, 0);
            if (det / self.subfield_step).is_multiple_of(2) {
                1
            } else {
                -1
            }
        };
        finish(&self.cc.params, rank, disc, nonzero_prefix || !c.is_zero())
    }

    pub fn classify(&self, a: Elem, b: Elem, c: Elem) -> Result<FormClass> {
        let prefix = self.prefix(a, b);
        let mut scratch = Vec::with_capacity(self.s * self.s);
        self.classify_with_prefix(&prefix, !(a.is_zero() && b.is_zero()), c, &mut scratch)
    }
}

/// Logs of the Gram matrix of `x -> Tr^q_{q0}(z x^{e})` for the monomial
/// with index `e` in `(2, d1, d2)`.
fn monomial_gram(cc: &CodeContext, basis: &[Elem], e: usize, z: Elem) -> Vec<u32> {
    let zero = Elem::ZERO;
    let coeffs = match e {
        0 => [z, zero, zero],
        1 => [zero, z, zero],
        _ => [zero, zero, z],
    };
    let g = gram_matrix_in_basis(cc, coeffs[0], coeffs[1], coeffs[2], basis.to_vec());
    g.entries.iter().map(|&x| cc.field.log_of(x)).collect()
}

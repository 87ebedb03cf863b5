//! Arithmetic in small finite fields `GF(p^n)`.
//!
//! Elements are canonical integer indices: the element whose polynomial
//! representative is `c_0 + c_1 x + ... + c_{n-1} x^{n-1}` has index
//! `sum c_i p^i`, so index 0 is the additive identity and index 1 the
//! multiplicative identity. Addition works digit-wise on the base-p digits
//! (plain XOR in characteristic 2); multiplication, inversion and
//! exponentiation go through discrete-log tables built once at construction
//! from a fixed generator of the multiplicative group.
//!
//! The supported order is capped at `p^n <= 2^20` so the tables stay small.

use serde::Serialize;
use thiserror::Error;

/// Largest supported field order `p^n`.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Errors from field construction and arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// The requested characteristic is not a prime number.
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    /// A supplied modulus factors over GF(p).
    #[error("modulus {coeffs:?} is not irreducible over GF({p})")]
    NotIrreducible { coeffs: Vec<u32>, p: u64 },
    /// `p^n` exceeds [`MAX_FIELD_ORDER`].
    #[error("field order {p}^{n} exceeds the supported maximum 2^20")]
    SizeExceeded { p: u64, n: u32 },
    /// The extension degree must be at least 1.
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    /// A supplied modulus has the wrong shape (length, leading coefficient,
    /// or a coefficient outside `[0, p)`).
    #[error("modulus must be monic of degree {degree} with coefficients in [0, {p}), got {coeffs:?}")]
    InvalidModulus { degree: u32, p: u64, coeffs: Vec<u32> },
    /// Multiplicative inverse of zero requested.
    #[error("division by zero")]
    DivisionByZero,
    /// An element index at or beyond the field order.
    #[error("index {index} is out of range for a field of order {order}")]
    IndexOutOfRange { index: u64, order: u64 },
}

/// An element of `GF(p^n)`, stored as its canonical index.
///
/// The index is only meaningful relative to a [`FieldSpec`]; operations that
/// combine elements from structurally different fields are rejected by the
/// higher-level APIs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FieldElement(pub u32);

impl FieldElement {
    /// The additive identity.
    pub const ZERO: FieldElement = FieldElement(0);
    /// The multiplicative identity.
    pub const ONE: FieldElement = FieldElement(1);

    /// The element's index as a `usize`, suitable for table lookups.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// True iff this is the additive identity.
    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete field `GF(p^n)`: modulus, order, and multiplication tables.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    order: u32,
    /// Modulus coefficients, constant term first, length `n + 1`, monic.
    modulus: Vec<u32>,
    /// Index of the generator whose powers populate `antilog`.
    generator: u32,
    /// `log[x]` = discrete log of nonzero `x` base `generator`; `log[0]` is a
    /// sentinel and must never be read.
    log: Vec<u32>,
    /// `antilog[i] = generator^i` for `i` in `0..2*(order-1)`, i.e. the table
    /// holds two full periods so `antilog[log x + log y]` needs no reduction.
    antilog: Vec<u32>,
}

const LOG_OF_ZERO: u32 = u32::MAX;

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds `GF(p^n)` with the default modulus: the lexicographically
    /// smallest monic irreducible polynomial of degree `n` over `GF(p)`,
    /// where coefficient lists are compared constant term first. The scan is
    /// deterministic, so two runs always agree on the modulus; reports echo
    /// it to keep the encoding unambiguous.
    pub fn new(p: u64, n: u32) -> Result<FieldSpec, FieldError> {
        Self::build(p, n, None)
    }

    /// Builds `GF(p^n)` with an explicit modulus, given as `n + 1`
    /// coefficients, constant term first; the polynomial must be monic and
    /// irreducible over `GF(p)`.
    pub fn with_modulus(p: u64, n: u32, modulus: &[u32]) -> Result<FieldSpec, FieldError> {
        Self::build(p, n, Some(modulus))
    }

    fn build(p: u64, n: u32, modulus: Option<&[u32]>) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let mut order: u64 = 1;
        for _ in 0..n {
            order = order.saturating_mul(p);
            if order > MAX_FIELD_ORDER {
                return Err(FieldError::SizeExceeded { p, n });
            }
        }

        let modulus = match modulus {
            Some(coeffs) => {
                let ok = coeffs.len() == n as usize + 1
                    && coeffs.last() == Some(&1)
                    && coeffs.iter().all(|&c| u64::from(c) < p);
                if !ok {
                    return Err(FieldError::InvalidModulus {
                        degree: n,
                        p,
                        coeffs: coeffs.to_vec(),
                    });
                }
                if !is_irreducible(coeffs, p) {
                    return Err(FieldError::NotIrreducible {
                        coeffs: coeffs.to_vec(),
                        p,
                    });
                }
                coeffs.to_vec()
            }
            None => default_modulus(p, n),
        };

        let mut field = FieldSpec {
            p: p as u32,
            n,
            order: order as u32,
            modulus,
            generator: 0,
            log: Vec::new(),
            antilog: Vec::new(),
        };
        field.build_log_tables();
        Ok(field)
    }

    /// Populates `log`/`antilog` from the smallest-index generator of the
    /// multiplicative group. Uses schoolbook polynomial multiplication; this
    /// runs once per field.
    fn build_log_tables(&mut self) {
        let order = self.order;
        let group = order - 1;
        self.log = vec![LOG_OF_ZERO; order as usize];
        self.antilog = vec![0; 2 * group.max(1) as usize];

        let generator = if group == 1 {
            1
        } else {
            let factors = prime_factors(u64::from(group));
            (2..order)
                .find(|&g| {
                    factors
                        .iter()
                        .all(|&q| self.pow_schoolbook(g, u64::from(group) / q) != 1)
                })
                .expect("the multiplicative group of a finite field is cyclic")
        };
        self.generator = generator;

        let mut acc = 1u32;
        for i in 0..group {
            self.antilog[i as usize] = acc;
            self.antilog[(i + group) as usize] = acc;
            self.log[acc as usize] = i;
            acc = self.mul_schoolbook(acc, generator);
        }
        debug_assert_eq!(acc, 1, "generator order must divide the group order");
    }

    /// Characteristic `p`.
    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Extension degree `n`.
    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Field order `p^n`.
    #[inline]
    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// Modulus coefficients, constant term first (length `n + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The generator whose discrete logs the tables use.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.generator)
    }

    /// Validates an index and wraps it as an element.
    pub fn element(&self, index: u64) -> Result<FieldElement, FieldError> {
        if index < u64::from(self.order) {
            Ok(FieldElement(index as u32))
        } else {
            Err(FieldError::IndexOutOfRange {
                index,
                order: u64::from(self.order),
            })
        }
    }

    /// All elements in ascending index order — the canonical iteration order
    /// of every exhaustive search in this crate.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    /// Digit-wise sum of the base-p coordinate vectors.
    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        debug_assert!(x.0 < self.order && y.0 < self.order);
        if self.p == 2 {
            return FieldElement(x.0 ^ y.0);
        }
        let p = self.p;
        let (mut xi, mut yi) = (x.0, y.0);
        let mut out = 0;
        let mut place = 1;
        while xi != 0 || yi != 0 {
            out += ((xi % p + yi % p) % p) * place;
            place *= p;
            xi /= p;
            yi /= p;
        }
        FieldElement(out)
    }

    /// Additive inverse.
    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        debug_assert!(x.0 < self.order);
        if self.p == 2 {
            return x;
        }
        let p = self.p;
        let mut xi = x.0;
        let mut out = 0;
        let mut place = 1;
        while xi != 0 {
            out += ((p - xi % p) % p) * place;
            place *= p;
            xi /= p;
        }
        FieldElement(out)
    }

    /// Digit-wise difference `x - y`.
    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        debug_assert!(x.0 < self.order && y.0 < self.order);
        if self.p == 2 {
            return FieldElement(x.0 ^ y.0);
        }
        let p = self.p;
        let (mut xi, mut yi) = (x.0, y.0);
        let mut out = 0;
        let mut place = 1;
        while xi != 0 || yi != 0 {
            out += ((p + xi % p - yi % p) % p) * place;
            place *= p;
            xi /= p;
            yi /= p;
        }
        FieldElement(out)
    }

    /// Product via the log tables; zero absorbs.
    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        debug_assert!(x.0 < self.order && y.0 < self.order);
        if x.0 == 0 || y.0 == 0 {
            return FieldElement::ZERO;
        }
        FieldElement(self.antilog[(self.log[x.index()] + self.log[y.index()]) as usize])
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        if x.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let group = self.order - 1;
        Ok(FieldElement(
            self.antilog[(group - self.log[x.index()]) as usize],
        ))
    }

    /// Quotient `x / y` for nonzero `y`.
    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// Exponentiation with the exponent reduced mod `order - 1` for nonzero
    /// bases. By convention `pow(0, 0) = 1` (matching univariate polynomial
    /// evaluation, where `x^0`'s coefficient is the constant term) and
    /// `pow(0, e) = 0` for `e > 0`.
    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        debug_assert!(x.0 < self.order);
        if x.0 == 0 {
            return if e == 0 {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            };
        }
        let group = u64::from(self.order - 1);
        let reduced = (u64::from(self.log[x.index()]) * (e % group.max(1))) % group.max(1);
        FieldElement(self.antilog[reduced as usize])
    }

    /// True iff `x` lies in the subfield `GF(p^d)`, i.e. `x^{p^d} = x`.
    /// Meaningful when `d` divides `n`; other `d` values simply select the
    /// elements fixed by that Frobenius power.
    pub fn in_subfield(&self, x: FieldElement, d: u32) -> bool {
        let pd = (0..d).fold(1u64, |acc, _| acc * u64::from(self.p));
        self.pow(x, pd) == x
    }

    /// All elements of the subfield `GF(p^d)`, ascending.
    pub fn subfield_elements(&self, d: u32) -> Vec<FieldElement> {
        self.elements().filter(|&x| self.in_subfield(x, d)).collect()
    }

    /// Reference multiplication: convolve the digit vectors and reduce by the
    /// modulus. Quadratic in `n`; used to build the log tables and as the
    /// oracle the table-driven `mul` is tested against.
    pub(crate) fn mul_schoolbook(&self, x: u32, y: u32) -> u32 {
        let p = u64::from(self.p);
        let n = self.n as usize;
        let xd = self.digits(x);
        let yd = self.digits(y);
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &xi) in xd.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in yd.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u64::from(xi) * u64::from(yj)) % p;
            }
        }
        // Reduce x^k for k >= n using x^n = -(modulus without leading term).
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &mj) in self.modulus[..n].iter().enumerate() {
                let sub = (c * u64::from(mj)) % p;
                prod[k - n + j] = (prod[k - n + j] + p - sub) % p;
            }
        }
        let mut out = 0u64;
        for &d in prod[..n].iter().rev() {
            out = out * p + d;
        }
        out as u32
    }

    fn pow_schoolbook(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_schoolbook(acc, base);
            }
            base = self.mul_schoolbook(base, base);
            e >>= 1;
        }
        acc
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut out = vec![0u32; self.n as usize];
        for d in out.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        out
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Remainder of `num` divided by the monic polynomial `den` over `GF(p)`.
/// Both are coefficient lists with the constant term first.
fn poly_rem(num: &[u32], den: &[u32], p: u64) -> Vec<u64> {
    let dn = den.len() - 1;
    let mut rem: Vec<u64> = num.iter().map(|&c| u64::from(c)).collect();
    for i in (dn..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        rem[i] = 0;
        for (j, &dj) in den[..dn].iter().enumerate() {
            let sub = (c * u64::from(dj)) % p;
            rem[i - dn + j] = (rem[i - dn + j] + p - sub) % p;
        }
    }
    rem.truncate(dn);
    rem
}

/// Irreducibility over `GF(p)` by trial division against every monic
/// polynomial of degree up to half the candidate's degree. Quadratic-ish but
/// comfortably fast at the supported sizes (degree <= 20, p^(n/2) <= 2^10).
fn is_irreducible(poly: &[u32], p: u64) -> bool {
    let degree = poly.len() - 1;
    if degree == 1 {
        return true;
    }
    for d in 1..=degree / 2 {
        let count = p.pow(d as u32);
        let mut den = vec![0u32; d + 1];
        den[d] = 1;
        for k in 0..count {
            let mut kk = k;
            for digit in den[..d].iter_mut() {
                *digit = (kk % p) as u32;
                kk /= p;
            }
            if poly_rem(poly, &den, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree `n` over
/// `GF(p)`, comparing coefficient lists constant term first.
fn default_modulus(p: u64, n: u32) -> Vec<u32> {
    let n = n as usize;
    let count = p.pow(n as u32);
    let mut coeffs = vec![0u32; n + 1];
    coeffs[n] = 1;
    for k in 0..count {
        // The constant term is the most significant digit of k, so ascending
        // k enumerates coefficient lists in constant-term-first lex order.
        let mut kk = k;
        for i in (0..n).rev() {
            coeffs[i] = (kk % p) as u32;
            kk /= p;
        }
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf8() -> FieldSpec {
        FieldSpec::with_modulus(2, 3, &[1, 1, 0, 1]).unwrap()
    }

    #[test]
    fn build_rejects_bad_parameters() {
        assert_eq!(FieldSpec::new(4, 2).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(FieldSpec::new(1, 2).unwrap_err(), FieldError::NotPrime(1));
        assert_eq!(FieldSpec::new(2, 0).unwrap_err(), FieldError::ZeroDegree);
        assert_eq!(
            FieldSpec::new(2, 21).unwrap_err(),
            FieldError::SizeExceeded { p: 2, n: 21 }
        );
        assert_eq!(
            FieldSpec::new(3, 13).unwrap_err(),
            FieldError::SizeExceeded { p: 3, n: 13 }
        );
        // Wrong length and non-monic shapes.
        assert!(matches!(
            FieldSpec::with_modulus(2, 3, &[1, 1, 1]).unwrap_err(),
            FieldError::InvalidModulus { .. }
        ));
        assert!(matches!(
            FieldSpec::with_modulus(3, 2, &[1, 0, 2]).unwrap_err(),
            FieldError::InvalidModulus { .. }
        ));
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        // x^3 + 1 = (x + 1)(x^2 + x + 1) over GF(2).
        assert_eq!(
            FieldSpec::with_modulus(2, 3, &[1, 0, 0, 1]).unwrap_err(),
            FieldError::NotIrreducible {
                coeffs: vec![1, 0, 0, 1],
                p: 2
            }
        );
    }

    #[test]
    fn default_modulus_is_smallest_constant_first() {
        // Frozen outputs of the documented scan order.
        assert_eq!(FieldSpec::new(3, 2).unwrap().modulus(), &[1, 0, 1]); // x^2 + 1
        assert_eq!(FieldSpec::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]); // x^3 + x^2 + 1
        assert_eq!(FieldSpec::new(2, 4).unwrap().modulus(), &[1, 0, 0, 1, 1]); // x^4 + x^3 + 1
        assert_eq!(FieldSpec::new(2, 1).unwrap().modulus(), &[0, 1]); // x itself
    }

    #[test]
    fn addition_matches_digit_arithmetic() {
        let f8 = gf8();
        assert_eq!(f8.add(FieldElement(3), FieldElement(5)), FieldElement(6));
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.add(FieldElement(2), FieldElement(2)), FieldElement(1));
        for x in f9.elements() {
            assert_eq!(f9.add(x, f9.neg(x)), FieldElement::ZERO);
            assert_eq!(f9.sub(x, x), FieldElement::ZERO);
        }
    }

    #[test]
    fn multiplication_basics() {
        let f8 = gf8();
        assert_eq!(f8.mul(FieldElement(2), FieldElement(3)), FieldElement(6));
        for x in f8.elements().skip(1) {
            assert_eq!(f8.mul(x, f8.inv(x).unwrap()), FieldElement::ONE);
            assert_eq!(f8.pow(x, 7), FieldElement::ONE);
        }
        assert_eq!(f8.inv(FieldElement::ZERO), Err(FieldError::DivisionByZero));
        assert_eq!(
            f8.div(FieldElement(5), FieldElement::ZERO),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn pow_conventions() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.pow(FieldElement::ZERO, 0), FieldElement::ONE);
        assert_eq!(f9.pow(FieldElement::ZERO, 5), FieldElement::ZERO);
        for x in f9.elements().skip(1) {
            // Exponent reduction mod the group order.
            assert_eq!(f9.pow(x, 11), f9.pow(x, 11 % 8));
            assert_eq!(f9.pow(x, 0), FieldElement::ONE);
        }
    }

    #[test]
    fn table_mul_matches_schoolbook_exhaustively() {
        for field in [
            gf8(),
            FieldSpec::new(2, 4).unwrap(),
            FieldSpec::new(3, 3).unwrap(),
            FieldSpec::new(5, 2).unwrap(),
            FieldSpec::new(7, 2).unwrap(),
        ] {
            for x in field.elements() {
                for y in field.elements() {
                    assert_eq!(field.mul(x, y).0, field.mul_schoolbook(x.0, y.0));
                }
            }
        }
    }

    #[test]
    fn table_mul_matches_schoolbook_sampled_large() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for field in [FieldSpec::new(2, 16).unwrap(), FieldSpec::new(3, 9).unwrap()] {
            let order = field.order() as u32;
            for _ in 0..2000 {
                let x = FieldElement(rng.gen_range(0..order));
                let y = FieldElement(rng.gen_range(0..order));
                assert_eq!(field.mul(x, y).0, field.mul_schoolbook(x.0, y.0));
            }
        }
    }

    #[test]
    fn antilog_table_wraps_with_period_order_minus_one() {
        for field in [gf8(), FieldSpec::new(3, 4).unwrap(), FieldSpec::new(2, 1).unwrap()] {
            let group = (field.order() - 1).max(1);
            for i in 0..group {
                assert_eq!(field.antilog[i], field.antilog[i + group]);
            }
            for x in field.elements().skip(1) {
                assert_eq!(field.antilog[field.log[x.index()] as usize], x.0);
            }
        }
    }

    #[test]
    fn field_axioms_hold_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [
            FieldSpec::new(2, 10).unwrap(),
            FieldSpec::new(3, 6).unwrap(),
            FieldSpec::new(11, 2).unwrap(),
        ] {
            let order = field.order() as u32;
            for _ in 0..500 {
                let x = FieldElement(rng.gen_range(0..order));
                let y = FieldElement(rng.gen_range(0..order));
                let z = FieldElement(rng.gen_range(0..order));
                assert_eq!(field.add(x, y), field.add(y, x));
                assert_eq!(field.mul(x, y), field.mul(y, x));
                assert_eq!(field.add(field.add(x, y), z), field.add(x, field.add(y, z)));
                assert_eq!(field.mul(field.mul(x, y), z), field.mul(x, field.mul(y, z)));
                assert_eq!(
                    field.mul(x, field.add(y, z)),
                    field.add(field.mul(x, y), field.mul(x, z))
                );
                assert_eq!(field.add(x, FieldElement::ZERO), x);
                assert_eq!(field.mul(x, FieldElement::ONE), x);
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for field in [gf8(), FieldSpec::new(3, 4).unwrap(), FieldSpec::new(5, 2).unwrap()] {
            let p = u64::from(field.p());
            for x in field.elements() {
                for y in field.elements() {
                    assert_eq!(
                        field.pow(field.add(x, y), p),
                        field.add(field.pow(x, p), field.pow(y, p))
                    );
                }
            }
        }
    }

    #[test]
    fn subfield_membership() {
        let f81 = FieldSpec::new(3, 4).unwrap();
        let sub = f81.subfield_elements(2);
        assert_eq!(sub.len(), 9);
        // Closed under addition and multiplication.
        for &x in &sub {
            for &y in &sub {
                assert!(sub.contains(&f81.add(x, y)));
                assert!(sub.contains(&f81.mul(x, y)));
            }
        }
        assert_eq!(f81.subfield_elements(1).len(), 3);
        assert_eq!(f81.subfield_elements(4).len(), 81);
    }

    #[test]
    fn element_range_checks() {
        let f8 = gf8();
        assert_eq!(f8.element(7).unwrap(), FieldElement(7));
        assert_eq!(
            f8.element(8).unwrap_err(),
            FieldError::IndexOutOfRange { index: 8, order: 8 }
        );
        let elems: Vec<_> = f8.elements().collect();
        assert_eq!(elems.len(), 8);
        assert_eq!(elems[0], FieldElement::ZERO);
        assert_eq!(elems[1], FieldElement::ONE);
    }

    #[test]
    fn two_element_field_works() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.mul(FieldElement::ONE, FieldElement::ONE), FieldElement::ONE);
        assert_eq!(f2.pow(FieldElement::ONE, 12), FieldElement::ONE);
        assert_eq!(f2.inv(FieldElement::ONE).unwrap(), FieldElement::ONE);
        assert_eq!(f2.add(FieldElement::ONE, FieldElement::ONE), FieldElement::ZERO);
    }
}

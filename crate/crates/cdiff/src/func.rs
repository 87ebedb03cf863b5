//! Functions `F : GF(p^n) -> GF(p^n)` as lookup tables.
//!
//! Every function is stored as a full table (`table[x] = F(x)` by element
//! index), which makes each evaluation inside the exhaustive searches O(1).
//! Construction from a monomial exponent or a univariate coefficient list
//! records that symbolic origin so the algebraic degree can be read off the
//! exponents; raw tables are interpolated on demand (O(order²)) when their
//! degree is requested.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};

/// Errors from function construction and combination.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FuncError {
    /// Monomial exponent outside `[0, p^n - 1]`.
    #[error("exponent {exponent} is out of range (maximum {max})")]
    ExponentOutOfRange { exponent: u64, max: u64 },
    /// More univariate coefficients than field elements.
    #[error("{got} coefficients exceed the field order {max}")]
    TooManyCoefficients { got: usize, max: usize },
    /// A raw table whose length is not the field order.
    #[error("lookup table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },
    /// A table entry or coefficient that is not a valid element index.
    #[error("value {value} at position {position} is not an element index below {order}")]
    InvalidEntry { position: usize, value: u64, order: usize },
    /// Two operands live in structurally different fields.
    #[error("operands belong to different fields")]
    FieldMismatch,
}

/// How a function's table was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionOrigin {
    /// `F(x) = x^exponent` under the `pow` convention (`0^0 = 1`).
    Monomial { exponent: u64 },
    /// `F(x) = sum coeffs[i] * x^i`, constant term first.
    Univariate { coeffs: Vec<FieldElement> },
    /// Table supplied directly or produced by table-level arithmetic.
    Raw,
}

/// An `(n,n,p)`-function: a full lookup table plus its symbolic origin.
///
/// Immutable after construction; the field is shared behind an [`Arc`] so
/// derivative pipelines can spawn many functions cheaply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldFunction {
    field: Arc<FieldSpec>,
    table: Vec<FieldElement>,
    origin: FunctionOrigin,
}

impl FieldFunction {
    /// The power map `x -> x^d`, `0 <= d <= p^n - 1`.
    pub fn from_monomial(field: &Arc<FieldSpec>, d: u64) -> Result<FieldFunction, FuncError> {
        let max = field.order() as u64 - 1;
        if d > max {
            return Err(FuncError::ExponentOutOfRange { exponent: d, max });
        }
        let table = field.elements().map(|x| field.pow(x, d)).collect();
        Ok(FieldFunction {
            field: Arc::clone(field),
            table,
            origin: FunctionOrigin::Monomial { exponent: d },
        })
    }

    /// The polynomial `sum coeffs[i] * x^i` (constant term first), evaluated
    /// by Horner's rule at every point. At most `p^n` coefficients.
    pub fn from_univariate(
        field: &Arc<FieldSpec>,
        coeffs: &[FieldElement],
    ) -> Result<FieldFunction, FuncError> {
        if coeffs.len() > field.order() {
            return Err(FuncError::TooManyCoefficients {
                got: coeffs.len(),
                max: field.order(),
            });
        }
        for (position, &c) in coeffs.iter().enumerate() {
            if c.index() >= field.order() {
                return Err(FuncError::InvalidEntry {
                    position,
                    value: u64::from(c.0),
                    order: field.order(),
                });
            }
        }
        let table = field
            .elements()
            .map(|x| {
                coeffs
                    .iter()
                    .rev()
                    .fold(FieldElement::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
            })
            .collect();
        Ok(FieldFunction {
            field: Arc::clone(field),
            table,
            origin: FunctionOrigin::Univariate {
                coeffs: coeffs.to_vec(),
            },
        })
    }

    /// Wraps an explicit lookup table (`table[x] = F(x)` by index).
    pub fn from_table(
        field: &Arc<FieldSpec>,
        table: Vec<FieldElement>,
    ) -> Result<FieldFunction, FuncError> {
        if table.len() != field.order() {
            return Err(FuncError::TableLength {
                expected: field.order(),
                got: table.len(),
            });
        }
        for (position, &v) in table.iter().enumerate() {
            if v.index() >= field.order() {
                return Err(FuncError::InvalidEntry {
                    position,
                    value: u64::from(v.0),
                    order: field.order(),
                });
            }
        }
        Ok(FieldFunction {
            field: Arc::clone(field),
            table,
            origin: FunctionOrigin::Raw,
        })
    }

    /// Builds a function directly from per-point values; used internally by
    /// the derivative routines where entries are known to be valid.
    pub(crate) fn from_values(field: &Arc<FieldSpec>, table: Vec<FieldElement>) -> FieldFunction {
        debug_assert_eq!(table.len(), field.order());
        FieldFunction {
            field: Arc::clone(field),
            table,
            origin: FunctionOrigin::Raw,
        }
    }

    /// The field this function is defined over.
    #[inline]
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    /// The full lookup table, indexed by element index.
    #[inline]
    pub fn table(&self) -> &[FieldElement] {
        &self.table
    }

    /// The recorded symbolic origin.
    #[inline]
    pub fn origin(&self) -> &FunctionOrigin {
        &self.origin
    }

    /// `F(x)` by table lookup.
    #[inline]
    pub fn evaluate(&self, x: FieldElement) -> FieldElement {
        self.table[x.index()]
    }

    /// True iff every value appears exactly once in the table.
    pub fn is_permutation(&self) -> bool {
        self.max_preimage().0 == 1
    }

    /// Number of preimages of each value: entry `b` is `|F^{-1}(b)|`.
    pub fn preimage_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.field.order()];
        for &v in &self.table {
            counts[v.index()] += 1;
        }
        counts
    }

    /// The largest preimage count `max_b |F^{-1}(b)|` together with the
    /// smallest-index `b` attaining it.
    pub fn max_preimage(&self) -> (usize, FieldElement) {
        let counts = self.preimage_counts();
        let (best, &delta) = counts
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("field order is at least 2");
        (delta, FieldElement(best as u32))
    }

    /// The algebraic degree: the maximum base-p digit sum of an exponent
    /// with nonzero coefficient in the (unique) univariate representation of
    /// degree below `p^n`. The zero function reports the sentinel −1.
    ///
    /// Symbolic origins are read directly; raw tables are interpolated
    /// first, which costs O(order²).
    pub fn algebraic_degree(&self) -> i64 {
        let p = self.field.p();
        match &self.origin {
            FunctionOrigin::Monomial { exponent } => i64::from(digit_sum(*exponent, p)),
            FunctionOrigin::Univariate { coeffs } => degree_of_coeffs(coeffs, p),
            FunctionOrigin::Raw => degree_of_coeffs(&self.interpolation_coeffs(), p),
        }
    }

    /// The unique coefficient list (constant term first, length `p^n`) whose
    /// polynomial of degree below `p^n` produces this table.
    ///
    /// Uses `F(x) = Σ_a F(a) (1 − (x−a)^{q−1})` expanded by the binomial
    /// theorem; the binomial coefficients `C(q−1, k)` reduce mod p to
    /// `(−1)^{digit sum of k}` because every base-p digit of `q−1` is `p−1`.
    pub fn interpolation_coeffs(&self) -> Vec<FieldElement> {
        let f = &*self.field;
        let q = f.order();
        let group = (q - 1) as u64;
        let minus_one = f.neg(FieldElement::ONE);
        let mut coeffs = vec![FieldElement::ZERO; q];
        coeffs[0] = self.table[0];
        for (k, coeff) in coeffs.iter_mut().enumerate().skip(1) {
            let mut s = FieldElement::ZERO;
            for a in f.elements() {
                let term = f.mul(self.table[a.index()], f.pow(f.neg(a), group - k as u64));
                s = f.add(s, term);
            }
            let binom = if digit_sum(k as u64, f.p()).is_multiple_of(2) {
                FieldElement::ONE
            } else {
                minus_one
            };
            *coeff = f.neg(f.mul(binom, s));
        }
        coeffs
    }

    /// The same table re-tagged with its interpolated univariate origin.
    pub fn interpolated(&self) -> FieldFunction {
        FieldFunction {
            field: Arc::clone(&self.field),
            table: self.table.clone(),
            origin: FunctionOrigin::Univariate {
                coeffs: self.interpolation_coeffs(),
            },
        }
    }

    /// Pointwise sum `x -> F(x) + G(x)`.
    pub fn pointwise_add(&self, other: &FieldFunction) -> Result<FieldFunction, FuncError> {
        self.check_same_field(other)?;
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(FieldFunction::from_values(&self.field, table))
    }

    /// Pointwise product `x -> F(x) · G(x)`.
    pub fn pointwise_mul(&self, other: &FieldFunction) -> Result<FieldFunction, FuncError> {
        self.check_same_field(other)?;
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| self.field.mul(a, b))
            .collect();
        Ok(FieldFunction::from_values(&self.field, table))
    }

    /// Short human-readable description for report headers.
    pub fn descriptor(&self) -> String {
        match &self.origin {
            FunctionOrigin::Monomial { exponent } => format!("x^{exponent}"),
            FunctionOrigin::Univariate { coeffs } => {
                format!("univariate polynomial ({} coefficients)", coeffs.len())
            }
            FunctionOrigin::Raw => "raw lookup table".to_string(),
        }
    }

    pub(crate) fn check_same_field(&self, other: &FieldFunction) -> Result<(), FuncError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FuncError::FieldMismatch)
        }
    }
}

fn degree_of_coeffs(coeffs: &[FieldElement], p: u32) -> i64 {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, _)| i64::from(digit_sum(i as u64, p)))
        .max()
        .unwrap_or(-1)
}

fn digit_sum(mut x: u64, p: u32) -> u32 {
    let p = u64::from(p);
    let mut sum = 0;
    while x != 0 {
        sum += (x % p) as u32;
        x /= p;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf8() -> Arc<FieldSpec> {
        Arc::new(FieldSpec::with_modulus(2, 3, &[1, 1, 0, 1]).unwrap())
    }

    fn gf9() -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(3, 2).unwrap())
    }

    fn random_table(field: &Arc<FieldSpec>, rng: &mut ChaCha8Rng) -> FieldFunction {
        let order = field.order() as u32;
        let table = (0..order).map(|_| FieldElement(rng.gen_range(0..order))).collect();
        FieldFunction::from_table(field, table).unwrap()
    }

    #[test]
    fn monomial_inverse_map_over_gf8() {
        let field = gf8();
        let inv = FieldFunction::from_monomial(&field, 6).unwrap();
        assert_eq!(inv.evaluate(FieldElement::ZERO), FieldElement::ZERO);
        for x in field.elements().skip(1) {
            assert_eq!(inv.evaluate(x), field.inv(x).unwrap());
        }
    }

    #[test]
    fn monomial_identity_and_range_check() {
        let field = gf8();
        let id = FieldFunction::from_monomial(&field, 1).unwrap();
        for x in field.elements() {
            assert_eq!(id.evaluate(x), x);
        }
        assert_eq!(
            FieldFunction::from_monomial(&field, 8).unwrap_err(),
            FuncError::ExponentOutOfRange { exponent: 8, max: 7 }
        );
    }

    #[test]
    fn univariate_basics() {
        let field = gf8();
        let c = FieldElement(5);
        let constant = FieldFunction::from_univariate(&field, &[c]).unwrap();
        assert!(field.elements().all(|x| constant.evaluate(x) == c));

        let a = FieldElement(3);
        let translate = FieldFunction::from_univariate(&field, &[a, FieldElement::ONE]).unwrap();
        for x in field.elements() {
            assert_eq!(translate.evaluate(x), field.add(x, a));
        }

        // x^3 + x equals the pointwise sum of the two monomial tables.
        let cubic_plus_id = FieldFunction::from_univariate(
            &field,
            &[
                FieldElement::ZERO,
                FieldElement::ONE,
                FieldElement::ZERO,
                FieldElement::ONE,
            ],
        )
        .unwrap();
        let sum = FieldFunction::from_monomial(&field, 3)
            .unwrap()
            .pointwise_add(&FieldFunction::from_monomial(&field, 1).unwrap())
            .unwrap();
        assert_eq!(cubic_plus_id.table(), sum.table());

        let too_many = vec![FieldElement::ZERO; field.order() + 1];
        assert_eq!(
            FieldFunction::from_univariate(&field, &too_many).unwrap_err(),
            FuncError::TooManyCoefficients { got: 9, max: 8 }
        );
    }

    #[test]
    fn table_validation() {
        let field = gf8();
        assert_eq!(
            FieldFunction::from_table(&field, vec![FieldElement::ZERO; 7]).unwrap_err(),
            FuncError::TableLength { expected: 8, got: 7 }
        );
        let mut table: Vec<_> = field.elements().collect();
        table[3] = FieldElement(9);
        assert_eq!(
            FieldFunction::from_table(&field, table).unwrap_err(),
            FuncError::InvalidEntry { position: 3, value: 9, order: 8 }
        );
    }

    #[test]
    fn algebraic_degree_of_monomials() {
        let field = gf8();
        // Every Frobenius power x^{p^k} is linear.
        for k in 0..3 {
            let f = FieldFunction::from_monomial(&field, 1 << k).unwrap();
            assert_eq!(f.algebraic_degree(), 1);
        }
        // The inverse map x^{2^n-2} has degree n-1.
        for n in 3..6 {
            let f = Arc::new(FieldSpec::new(2, n).unwrap());
            let inv = FieldFunction::from_monomial(&f, (1 << n) - 2).unwrap();
            assert_eq!(inv.algebraic_degree(), i64::from(n) - 1);
        }
        let f81 = Arc::new(FieldSpec::new(3, 4).unwrap());
        for k in 0..4u32 {
            let f = FieldFunction::from_monomial(&f81, 3u64.pow(k)).unwrap();
            assert_eq!(f.algebraic_degree(), 1);
        }
    }

    #[test]
    fn algebraic_degree_of_constants_and_zero() {
        let field = gf9();
        let nonzero = FieldFunction::from_univariate(&field, &[FieldElement(2)]).unwrap();
        assert_eq!(nonzero.algebraic_degree(), 0);
        let zero = FieldFunction::from_univariate(&field, &[]).unwrap();
        assert_eq!(zero.algebraic_degree(), -1);
        // A raw all-zero table also reports the sentinel.
        let raw_zero =
            FieldFunction::from_table(&field, vec![FieldElement::ZERO; field.order()]).unwrap();
        assert_eq!(raw_zero.algebraic_degree(), -1);
    }

    #[test]
    fn interpolation_reproduces_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for field in [
            Arc::new(FieldSpec::new(2, 4).unwrap()),
            Arc::new(FieldSpec::new(3, 3).unwrap()),
            Arc::new(FieldSpec::new(5, 2).unwrap()),
            Arc::new(FieldSpec::new(2, 1).unwrap()),
        ] {
            for _ in 0..10 {
                let f = random_table(&field, &mut rng);
                let coeffs = f.interpolation_coeffs();
                let rebuilt = FieldFunction::from_univariate(&field, &coeffs).unwrap();
                assert_eq!(rebuilt.table(), f.table());
            }
        }
    }

    #[test]
    fn interpolating_a_monomial_recovers_its_single_coefficient() {
        let field = gf9();
        for d in 0..field.order() as u64 {
            let table = FieldFunction::from_monomial(&field, d).unwrap().table().to_vec();
            let raw = FieldFunction::from_table(&field, table).unwrap();
            let coeffs = raw.interpolation_coeffs();
            for (i, &c) in coeffs.iter().enumerate() {
                // pow(0,0) = 1 shifts the d = 0 monomial to the constant 1.
                let expected = if i as u64 == d { FieldElement::ONE } else { FieldElement::ZERO };
                assert_eq!(c, expected, "d={d} coefficient {i}");
            }
            assert_eq!(raw.interpolated().algebraic_degree(), raw.algebraic_degree());
        }
    }

    #[test]
    fn preimage_statistics() {
        let field = gf8();
        let id = FieldFunction::from_monomial(&field, 1).unwrap();
        assert!(id.is_permutation());
        assert_eq!(id.max_preimage(), (1, FieldElement::ZERO));

        // Frobenius squaring is a bijection in characteristic 2.
        let frob = FieldFunction::from_monomial(&field, 2).unwrap();
        assert!(frob.is_permutation());

        // x^4 over GF(9): 0 -> 0 and the nonzero fourth powers are ±1, each
        // hit four times, so the max preimage count is 4 at b = 1.
        let field9 = gf9();
        let quartic = FieldFunction::from_monomial(&field9, 4).unwrap();
        assert!(!quartic.is_permutation());
        assert_eq!(quartic.max_preimage(), (4, FieldElement::ONE));
        let counts = quartic.preimage_counts();
        assert_eq!(counts.iter().sum::<usize>(), 9);
        assert_eq!(counts[0], 1);
    }

    #[test]
    fn pointwise_ops_reject_different_fields() {
        let a = gf8();
        let b = Arc::new(FieldSpec::with_modulus(2, 3, &[1, 0, 1, 1]).unwrap());
        let fa = FieldFunction::from_monomial(&a, 3).unwrap();
        let fb = FieldFunction::from_monomial(&b, 3).unwrap();
        assert_eq!(fa.pointwise_add(&fb).unwrap_err(), FuncError::FieldMismatch);
        assert_eq!(fa.pointwise_mul(&fb).unwrap_err(), FuncError::FieldMismatch);
        // Same construction parameters in a separate allocation compare equal.
        let a2 = gf8();
        let fa2 = FieldFunction::from_monomial(&a2, 3).unwrap();
        assert!(fa.pointwise_add(&fa2).is_ok());
    }

    #[test]
    fn pointwise_mul_matches_field_mul() {
        let field = gf9();
        let f = FieldFunction::from_monomial(&field, 2).unwrap();
        let g = FieldFunction::from_monomial(&field, 3).unwrap();
        let prod = f.pointwise_mul(&g).unwrap();
        for x in field.elements() {
            assert_eq!(prod.evaluate(x), field.mul(f.evaluate(x), g.evaluate(x)));
        }
        // x^2 * x^3 = x^5 pointwise (pow convention keeps 0 consistent).
        let quintic = FieldFunction::from_monomial(&field, 5).unwrap();
        assert_eq!(prod.table(), quintic.table());
    }

    #[test]
    fn descriptors_are_stable() {
        let field = gf8();
        assert_eq!(FieldFunction::from_monomial(&field, 6).unwrap().descriptor(), "x^6");
        assert_eq!(
            FieldFunction::from_univariate(&field, &[FieldElement::ONE]).unwrap().descriptor(),
            "univariate polynomial (1 coefficients)"
        );
        let raw = FieldFunction::from_table(&field, field.elements().collect()).unwrap();
        assert_eq!(raw.descriptor(), "raw lookup table");
    }
}

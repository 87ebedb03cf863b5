//! Multiplicative c-derivatives `x -> F(x+a) - c·F(x)` and their
//! higher-order extensions.
//!
//! Two independent evaluation strategies are provided: the recursive
//! definition (fold one shift at a time) and the closed-form
//! inclusion–exclusion sum over shift subsets. They agree on every input;
//! keeping both first-class lets each serve as the oracle for the other, and
//! the closed form doubles as the branch-free inner loop of the spectrum
//! searches.
//!
//! The module also provides checkers for the structural identities the
//! derivative satisfies: the reconstruction of `F(x + Σaᵢ)` from all
//! lower-order derivatives, linearity in `F`, and the product rule.

use thiserror::Error;

use crate::field::FieldElement;
use crate::func::{FieldFunction, FuncError};

/// Cap on the order accepted by the subset-enumerating routines (the closed
/// form walks `2^t` subsets).
pub const MAX_CLOSED_ORDER: usize = 20;

/// Errors from derivative evaluation and identity checks.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivError {
    /// Order beyond [`MAX_CLOSED_ORDER`] requested from a subset-enumerating
    /// routine.
    #[error("derivative order {order} exceeds the supported maximum {max}")]
    OrderTooHigh { order: usize, max: usize },
    /// The two functions of a binary identity live in different fields.
    #[error("operands belong to different fields")]
    FieldMismatch,
}

impl From<FuncError> for DerivError {
    fn from(e: FuncError) -> Self {
        match e {
            FuncError::FieldMismatch => DerivError::FieldMismatch,
            other => unreachable!("unexpected function error in derivative: {other}"),
        }
    }
}

/// The data identifying a t-th order c-derivative: the multiplier `c` and
/// the ordered shifts `[a₁, …, a_t]`. An empty shift list denotes the 0-th
/// derivative, which is `F` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeSpec {
    /// The multiplier applied to the untranslated copy.
    pub c: FieldElement,
    /// The shifts, applied innermost-first: `a₁` produces the first
    /// derivative, `a₂` differentiates that result, and so on.
    pub shifts: Vec<FieldElement>,
}

impl DerivativeSpec {
    /// Convenience constructor.
    pub fn new(c: FieldElement, shifts: Vec<FieldElement>) -> DerivativeSpec {
        DerivativeSpec { c, shifts }
    }

    /// The derivative order `t`.
    pub fn order(&self) -> usize {
        self.shifts.len()
    }
}

/// First derivative: the table of `x -> F(x+a) - c·F(x)`.
pub fn c_derivative(f: &FieldFunction, a: FieldElement, c: FieldElement) -> FieldFunction {
    let field = f.field();
    let table = field
        .elements()
        .map(|x| field.sub(f.evaluate(field.add(x, a)), field.mul(c, f.evaluate(x))))
        .collect();
    FieldFunction::from_values(field, table)
}

/// Higher-order derivative by the definition: differentiate once per shift,
/// in order. Order 0 returns `f` unchanged.
pub fn higher_c_derivative_recursive(f: &FieldFunction, spec: &DerivativeSpec) -> FieldFunction {
    let mut current = f.clone();
    for &a in &spec.shifts {
        current = c_derivative(&current, a, spec.c);
    }
    current
}

/// Higher-order derivative by inclusion–exclusion:
/// `Σ over subsets I of {1..t} of (-c)^{t-|I|} · F(x + Σ_{i∈I} aᵢ)`.
///
/// One pass over the table per subset, so O(2^t · order) total; the order is
/// capped at [`MAX_CLOSED_ORDER`]. Because the formula only sees subset
/// sums, the result is invariant under any permutation of the shifts.
pub fn higher_c_derivative_closed(
    f: &FieldFunction,
    spec: &DerivativeSpec,
) -> Result<FieldFunction, DerivError> {
    let t = spec.order();
    if t > MAX_CLOSED_ORDER {
        return Err(DerivError::OrderTooHigh {
            order: t,
            max: MAX_CLOSED_ORDER,
        });
    }
    let field = f.field();
    let minus_c = field.neg(spec.c);
    let mut weight = vec![FieldElement::ONE; t + 1];
    for j in 1..=t {
        weight[j] = field.mul(weight[j - 1], minus_c);
    }
    let mut out = vec![FieldElement::ZERO; field.order()];
    for mask in 0u32..1 << t {
        let w = weight[t - mask.count_ones() as usize];
        if w.is_zero() {
            continue;
        }
        let shift = spec
            .shifts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(FieldElement::ZERO, |acc, (_, &a)| field.add(acc, a));
        for x in field.elements() {
            let term = field.mul(w, f.evaluate(field.add(x, shift)));
            out[x.index()] = field.add(out[x.index()], term);
        }
    }
    Ok(FieldFunction::from_values(field, out))
}

/// Checks that `F(x + Σaᵢ)` is recovered by summing `c^{t-i}`-weighted i-th
/// derivatives over every subset of the shifts:
/// `F(x + Σaᵢ) = Σ_{I⊆{1..t}} c^{t-|I|} · D^{(|I|)}_{a_I}F(x)` at every `x`.
pub fn verify_reconstruction(
    f: &FieldFunction,
    spec: &DerivativeSpec,
) -> Result<bool, DerivError> {
    let t = spec.order();
    if t > MAX_CLOSED_ORDER {
        return Err(DerivError::OrderTooHigh {
            order: t,
            max: MAX_CLOSED_ORDER,
        });
    }
    let field = f.field();
    let mut cpow = vec![FieldElement::ONE; t + 1];
    for j in 1..=t {
        cpow[j] = field.mul(cpow[j - 1], spec.c);
    }
    let mut rhs = vec![FieldElement::ZERO; field.order()];
    for mask in 0u32..1 << t {
        let w = cpow[t - mask.count_ones() as usize];
        if w.is_zero() {
            continue;
        }
        let subset: Vec<FieldElement> = spec
            .shifts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a)
            .collect();
        let d = higher_c_derivative_closed(f, &DerivativeSpec::new(spec.c, subset))?;
        for x in field.elements() {
            rhs[x.index()] = field.add(rhs[x.index()], field.mul(w, d.evaluate(x)));
        }
    }
    let total: FieldElement = spec
        .shifts
        .iter()
        .fold(FieldElement::ZERO, |acc, &a| field.add(acc, a));
    Ok(field
        .elements()
        .all(|x| rhs[x.index()] == f.evaluate(field.add(x, total))))
}

/// Checks linearity: `D_a(F+G) = D_aF + D_aG` pointwise (same `c` on both
/// sides).
pub fn verify_sum_rule(
    f: &FieldFunction,
    g: &FieldFunction,
    a: FieldElement,
    c: FieldElement,
) -> Result<bool, DerivError> {
    f.check_same_field(g)?;
    let lhs = c_derivative(&f.pointwise_add(g)?, a, c);
    let rhs = c_derivative(f, a, c).pointwise_add(&c_derivative(g, a, c))?;
    Ok(lhs.table() == rhs.table())
}

/// Checks the product rule
/// `D_a(F·G)(x) = F(x+a)·D_aG(x) + (F(x+a) - F(x))·c·G(x)`,
/// where the left factor of the second term is the classical (`c = 1`)
/// derivative of `F`. Expanding shows both sides equal
/// `F(x+a)G(x+a) - c·F(x)G(x)` identically, for every `c`.
pub fn verify_product_rule(
    f: &FieldFunction,
    g: &FieldFunction,
    a: FieldElement,
    c: FieldElement,
) -> Result<bool, DerivError> {
    f.check_same_field(g)?;
    let field = f.field();
    let lhs = c_derivative(&f.pointwise_mul(g)?, a, c);
    let dg = c_derivative(g, a, c);
    let df_classical = c_derivative(f, a, FieldElement::ONE);
    Ok(field.elements().all(|x| {
        let first = field.mul(f.evaluate(field.add(x, a)), dg.evaluate(x));
        let second = field.mul(df_classical.evaluate(x), field.mul(c, g.evaluate(x)));
        lhs.evaluate(x) == field.add(first, second)
    }))
}

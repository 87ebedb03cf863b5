//! Ready-made surveys of three function families whose higher-order
//! derivative spectra have known structure: the multiplicative inverse map
//! `x^{2^n-2}` in characteristic 2, Gold power maps `x^{p^k+1}`, and
//! quadratic functions whose exponents are built from powers of `q = p^h`.
//!
//! Each driver runs exhaustive `spectrum` searches and packages the results
//! together with the structural facts they are expected to satisfy: the
//! second-order bound of 6 for the inverse map, the `p^{gcd(k,n)}+1` bound
//! for Gold maps, and the collapse of subfield-multiplier uniformity to the
//! preimage maximum for quadratic functions. The inverse survey also carries
//! two independent cross-checks — a quartic-polynomial solution count and
//! the multipliers that make pairs of special points coincide — so the
//! lookup-table searches are validated against closed-form algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::deriv::{higher_c_derivative_recursive, DerivativeSpec};
use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::func::{FieldFunction, FuncError, FunctionOrigin};
use crate::spectrum::{self, SearchOptions, ShiftDomain, SpectrumError, Witness};

/// Errors from the case-study drivers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CaseError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Func(#[from] FuncError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    /// An argument outside the domain a driver is defined on.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    /// The function's exponents do not fit the quadratic shape
    /// `Σ c_{i,j} x^{q^i+q^j} + Σ c_l x^{p^l}`.
    #[error("not a quadratic form over q = p^h: {reason}")]
    NotQuadraticForm { reason: String },
}

/// One row of the inverse-map second-order survey over `GF(2^n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InverseCaseReport {
    /// Extension degree.
    pub n: u32,
    /// Modulus used (constant term first), echoed for reproducibility.
    pub modulus: Vec<u32>,
    /// Max count at `c = 1` over pairwise-distinct nonzero shift pairs (the
    /// classical second-derivative convention; a zero or repeated shift
    /// makes the classical second derivative vanish identically).
    pub c_one_max: usize,
    /// Max count over every `c ∉ {0, 1}` (full shift domain).
    pub c_general_max: usize,
    /// Smallest multiplier attaining `c_general_max`.
    pub c_general_argmax: FieldElement,
    /// Max count at `c = 0` (always 1: the inverse map is a permutation and
    /// permutations have bijective derivatives at `c = 0`).
    pub c_zero_max: usize,
    /// Whether `c_general_max ≤ 6` (guaranteed for `n ≥ 4`).
    pub bound_satisfied: bool,
    /// Whether the quartic solution count agreed with the lookup-table count
    /// on every `(a₂, c, b)` instance checked at `a₁ = 1`.
    pub quartic_cross_check: bool,
    /// Number of `(a₂, c, b)` instances the quartic cross-check covered
    /// (exhaustive for `n ≤ 7`, strided above).
    pub quartic_pairs_checked: u64,
    /// Witnesses for the `c = 1` maximum.
    pub c_one_witnesses: Vec<Witness>,
    /// Witnesses for the `c ∉ {0,1}` maximum (at `c_general_argmax`).
    pub c_general_witnesses: Vec<Witness>,
}

/// The published survey row `(c=1 max, max over c ∉ {0,1}, c=0 max)` for the
/// inverse map over `GF(2^n)`, available for `4 ≤ n ≤ 9`.
pub fn expected_inverse_row(n: u32) -> Option<(usize, usize, usize)> {
    match n {
        4 => Some((4, 5, 1)),
        5 => Some((4, 4, 1)),
        6 => Some((8, 5, 1)),
        7 => Some((8, 5, 1)),
        8 => Some((8, 6, 1)),
        9 => Some((8, 6, 1)),
        _ => None,
    }
}

/// Runs the full second-order survey of `x^{2^n-2}` for each requested `n`:
/// exhaustive maxima in the three multiplier regimes (with the `a₁ = 1`
/// reduction), the `≤ 6` bound check, and the quartic cross-check.
pub fn inverse_second_order_table(n_range: &[u32]) -> Result<Vec<InverseCaseReport>, CaseError> {
    let mut rows = Vec::with_capacity(n_range.len());
    for &n in n_range {
        if n < 3 {
            return Err(CaseError::PreconditionViolated(format!(
                "inverse survey requires n >= 3, got {n}"
            )));
        }
        let field = Arc::new(FieldSpec::new(2, n)?);
        let q = field.order();
        let inv = FieldFunction::from_monomial(&field, q as u64 - 2)?;

        let classical_options = SearchOptions {
            reduce_power: true,
            shift_domain: ShiftDomain::DistinctNonzero,
            ..SearchOptions::default()
        };
        let general_options = SearchOptions {
            reduce_power: true,
            ..SearchOptions::default()
        };

        let c_one = spectrum::uniformity(&inv, 2, FieldElement::ONE, &classical_options)?;
        let c_zero = spectrum::uniformity(&inv, 2, FieldElement::ZERO, &general_options)?;

        let c_set: Vec<FieldElement> = field.elements().filter(|c| c.0 > 1).collect();
        let sweep = spectrum::uniformity_sweep(&inv, 2, &c_set, &general_options)?;
        let mut c_general_max = 0;
        let mut c_general_argmax = FieldElement::ZERO;
        let mut c_general_witnesses = Vec::new();
        for (&c, report) in &sweep {
            if report.max_count > c_general_max {
                c_general_max = report.max_count;
                c_general_argmax = c;
                c_general_witnesses = report.witnesses.clone();
            }
        }

        let (quartic_ok, quartic_pairs) = quartic_cross_check(&field, &inv)?;
        rows.push(InverseCaseReport {
            n,
            modulus: field.modulus().to_vec(),
            c_one_max: c_one.max_count,
            c_general_max,
            c_general_argmax,
            c_zero_max: c_zero.max_count,
            bound_satisfied: c_general_max <= 6,
            quartic_cross_check: quartic_ok,
            quartic_pairs_checked: quartic_pairs,
            c_one_witnesses: c_one.witnesses,
            c_general_witnesses,
        });
    }
    Ok(rows)
}

/// Compares [`inverse_quartic_count`] against the lookup-table count for
/// every `(a₂, c, b)` at `a₁ = 1` — exhaustively for `n ≤ 7`, with a stride
/// of `4^(n-7)` on `c` and `b` above that. Returns whether every instance
/// agreed, and how many were checked.
fn quartic_cross_check(
    field: &Arc<FieldSpec>,
    inv: &FieldFunction,
) -> Result<(bool, u64), CaseError> {
    let q = field.order() as u32;
    let n = field.n();
    let stride = if n <= 7 { 1usize } else { 1 << (2 * (n - 7)) };
    let a1 = FieldElement::ONE;
    let a2s: Vec<FieldElement> = field.elements().collect();
    let per_shift: Result<Vec<(bool, u64)>, CaseError> = a2s
        .par_iter()
        .map(|&a2| {
            let mut ok = true;
            let mut pairs = 0u64;
            for c_idx in (0..q).step_by(stride) {
                let c = FieldElement(c_idx);
                let d = higher_c_derivative_recursive(inv, &DerivativeSpec::new(c, vec![a1, a2]));
                let counts = d.preimage_counts();
                for b_idx in (0..q).step_by(stride) {
                    let b = FieldElement(b_idx);
                    ok &= inverse_quartic_count(field, a1, a2, c, b)? == counts[b.index()];
                    pairs += 1;
                }
            }
            Ok((ok, pairs))
        })
        .collect();
    Ok(per_shift?
        .into_iter()
        .fold((true, 0), |(ok, total), (o, p)| (ok && o, total + p)))
}

/// Counts the solutions of the second c-derivative equation of the inverse
/// map over `GF(2^n)` structurally, without its lookup table.
///
/// For distinct nonzero shifts the solutions off the special points
/// `{0, a₁, a₂, a₁+a₂}` are exactly the roots of the quartic
/// `b x⁴ + (1+c²) x³ + [(1+c)A + b(e₂+A²)] x² +
///  [e₂ + cA² + c²A² + c²e₂ + b e₂ A] x + c² e₂ A`
/// with `A = a₁+a₂`, `e₂ = a₁a₂`; each special point is then tested by
/// direct substitution. Equal shifts collapse the derivative to `(1+c²)F`,
/// and a single zero shift to `(1+c)(F(x+a) + cF(x))`, both counted by their
/// own closed forms.
pub fn inverse_quartic_count(
    field: &FieldSpec,
    a1: FieldElement,
    a2: FieldElement,
    c: FieldElement,
    b: FieldElement,
) -> Result<usize, CaseError> {
    if field.p() != 2 {
        return Err(CaseError::PreconditionViolated(
            "the inverse-map analysis requires characteristic 2".to_string(),
        ));
    }
    let q = field.order();
    let d_exp = q as u64 - 2;
    let fe = |y: FieldElement| field.pow(y, d_exp);
    let one = FieldElement::ONE;

    if a1 == a2 {
        // Derivative is (1+c²)·F; F is a permutation.
        let scale = field.add(one, field.mul(c, c));
        if scale.is_zero() {
            return Ok(if b.is_zero() { q } else { 0 });
        }
        return Ok(1);
    }
    if a1.is_zero() || a2.is_zero() {
        // One zero shift: derivative is (1+c)(F(x+a) + cF(x)).
        let a = if a1.is_zero() { a2 } else { a1 };
        let scale = field.add(one, c);
        if scale.is_zero() {
            return Ok(if b.is_zero() { q } else { 0 });
        }
        let bp = field.div(b, scale)?;
        // Off {0, a}: multiply 1/(x+a) + c/x = b' by x(x+a).
        let lin = field.add(field.add(one, c), field.mul(a, bp));
        let mut count = 0;
        for x in field.elements() {
            if x.is_zero() || x == a {
                continue;
            }
            let v = field.add(
                field.mul(bp, field.mul(x, x)),
                field.add(field.mul(lin, x), field.mul(c, a)),
            );
            if v.is_zero() {
                count += 1;
            }
        }
        // x = 0 solves iff F(a) = b'; x = a iff c·F(a) = b'.
        if fe(a) == bp {
            count += 1;
        }
        if field.mul(c, fe(a)) == bp {
            count += 1;
        }
        return Ok(count);
    }

    // Distinct nonzero shifts: four distinct special points and the quartic.
    let aa = field.add(a1, a2);
    let e2 = field.mul(a1, a2);
    let c2 = field.mul(c, c);
    let aa2 = field.mul(aa, aa);
    let coef4 = b;
    let coef3 = field.add(one, c2);
    let coef2 = field.add(
        field.mul(field.add(one, c), aa),
        field.mul(b, field.add(e2, aa2)),
    );
    let coef1 = field.add(
        field.add(e2, field.mul(c, aa2)),
        field.add(
            field.add(field.mul(c2, aa2), field.mul(c2, e2)),
            field.mul(b, field.mul(e2, aa)),
        ),
    );
    let coef0 = field.mul(c2, field.mul(e2, aa));

    let special = [FieldElement::ZERO, a1, a2, aa];
    let mut count = 0;
    for x in field.elements() {
        if special.contains(&x) {
            continue;
        }
        let mut v = coef4;
        for &coef in &[coef3, coef2, coef1, coef0] {
            v = field.add(field.mul(v, x), coef);
        }
        if v.is_zero() {
            count += 1;
        }
    }
    for &s in &special {
        // Direct evaluation: F(s+a1+a2) + cF(s+a2) + cF(s+a1) + c²F(s).
        let v = field.add(
            field.add(
                fe(field.add(s, aa)),
                field.mul(c, fe(field.add(s, a2))),
            ),
            field.add(field.mul(c, fe(field.add(s, a1))), field.mul(c2, fe(s))),
        );
        if v == b {
            count += 1;
        }
    }
    Ok(count)
}

/// One multiplier that makes a specific pair of special points of the
/// inverse map's second derivative coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoincidenceMultiplier {
    /// The multiplier value.
    pub c: FieldElement,
    /// The two special points whose derivative values become equal at `c`.
    pub pair: (FieldElement, FieldElement),
    /// Whether `c ∉ {0, 1}` (only such multipliers occur in the `c ≠ 1`
    /// searches; `c = 1` happens exactly when `a₁² + a₂² + a₁a₂ = 0`, which
    /// needs even `n` and `a₁ = a₂ω` for a cube root of unity `ω`).
    pub valid: bool,
}

/// The up-to-four multipliers that let two special points of the inverse
/// second derivative share a value, for one shift pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoincidenceSet {
    pub a1: FieldElement,
    pub a2: FieldElement,
    pub multipliers: [CoincidenceMultiplier; 4],
}

/// Computes the four coincidence multipliers for distinct nonzero shifts
/// over a characteristic-2 field:
/// `c₀ = a₁²/((a₁+a₂)a₂)` pairs `{0, a₁}`, `c₁ = a₂²/((a₁+a₂)a₁)` pairs
/// `{0, a₂}`, `c₂ = a₁(a₁+a₂)/a₂²` pairs `{a₁+a₂, a₁}`, and
/// `c₃ = a₂(a₁+a₂)/a₁²` pairs `{a₁+a₂, a₂}`. Swapping `a₁ ↔ a₂` swaps
/// `c₀ ↔ c₁` and `c₂ ↔ c₃`.
pub fn coincidence_multipliers(
    field: &FieldSpec,
    a1: FieldElement,
    a2: FieldElement,
) -> Result<CoincidenceSet, CaseError> {
    if field.p() != 2 {
        return Err(CaseError::PreconditionViolated(
            "the inverse-map analysis requires characteristic 2".to_string(),
        ));
    }
    if a1 == a2 || a1.is_zero() || a2.is_zero() {
        return Err(CaseError::PreconditionViolated(
            "coincidence multipliers require distinct nonzero shifts".to_string(),
        ));
    }
    let aa = field.add(a1, a2);
    let zero = FieldElement::ZERO;
    let c0 = field.div(field.mul(a1, a1), field.mul(aa, a2))?;
    let c1 = field.div(field.mul(a2, a2), field.mul(aa, a1))?;
    let c2 = field.div(field.mul(a1, aa), field.mul(a2, a2))?;
    let c3 = field.div(field.mul(a2, aa), field.mul(a1, a1))?;
    let tag = |c: FieldElement, pair: (FieldElement, FieldElement)| CoincidenceMultiplier {
        c,
        pair,
        valid: !c.is_zero() && c != FieldElement::ONE,
    };
    Ok(CoincidenceSet {
        a1,
        a2,
        multipliers: [
            tag(c0, (zero, a1)),
            tag(c1, (zero, a2)),
            tag(c2, (aa, a1)),
            tag(c3, (aa, a2)),
        ],
    })
}

/// Result of the exhaustive second-order Gold search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldSecondOrderReport {
    pub p: u32,
    pub n: u32,
    pub k: u32,
    /// `p^{gcd(k,n)} + 1`.
    pub bound: usize,
    /// Exhaustive max over `c ≠ 1` (including `c = 0`), all shift pairs, and
    /// all outputs.
    pub max_count: usize,
    /// Whether the bound is attained exactly.
    pub attained: bool,
    /// Smallest multiplier at which `max_count` occurs.
    pub witness_c: Option<FieldElement>,
    /// Smallest witness at that multiplier.
    pub witness: Option<Witness>,
}

/// Exhaustive second-order search for the Gold map `x^{p^k+1}`: the maximum
/// solution count over `c ≠ 1` equals `p^{gcd(k,n)} + 1` and is attained.
///
/// # Panics
/// If `k` is outside `1 ≤ k < n`.
pub fn gold_second_order_max(
    field: &Arc<FieldSpec>,
    k: u32,
) -> Result<GoldSecondOrderReport, CaseError> {
    assert!(k >= 1 && k < field.n(), "gold exponent requires 1 <= k < n");
    let p = u64::from(field.p());
    let f = FieldFunction::from_monomial(field, p.pow(k) + 1)?;
    let bound = p.pow(gcd(k, field.n())) as usize + 1;
    let options = SearchOptions {
        reduce_power: true,
        ..SearchOptions::default()
    };
    let c_set: Vec<FieldElement> = field
        .elements()
        .filter(|&c| c != FieldElement::ONE)
        .collect();
    let sweep = spectrum::uniformity_sweep(&f, 2, &c_set, &options)?;
    let mut max_count = 0;
    let mut witness_c = None;
    let mut witness = None;
    for (&c, report) in &sweep {
        if report.max_count > max_count {
            max_count = report.max_count;
            witness_c = Some(c);
            witness = report.witnesses.first().cloned();
        }
    }
    Ok(GoldSecondOrderReport {
        p: field.p(),
        n: field.n(),
        k,
        bound,
        max_count,
        attained: max_count == bound,
        witness_c,
        witness,
    })
}

/// Per-multiplier uniformity of a Gold map restricted to subfield
/// multipliers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldSubfieldReport {
    pub p: u32,
    pub n: u32,
    pub k: u32,
    pub t: usize,
    /// Order of the subfield `GF(p^{gcd(k,n)})` the multipliers range over.
    pub subfield_order: usize,
    /// `gcd(p^k + 1, p^n − 1)`.
    pub expected: usize,
    /// Uniformity for each subfield `c ≠ 1`.
    pub per_c: BTreeMap<FieldElement, usize>,
    /// Whether every entry equals `expected`.
    pub all_match: bool,
}

/// For the Gold map `x^{p^k+1}` and every multiplier `c ≠ 1` in the subfield
/// `GF(p^{gcd(k,n)})`, the t-order uniformity is `gcd(p^k+1, p^n−1)` — for
/// every order `t ≥ 1`.
///
/// # Panics
/// If `k` is outside `1 ≤ k < n`.
pub fn gold_subfield_uniformity(
    field: &Arc<FieldSpec>,
    k: u32,
    t: usize,
) -> Result<GoldSubfieldReport, CaseError> {
    assert!(k >= 1 && k < field.n(), "gold exponent requires 1 <= k < n");
    let p = u64::from(field.p());
    let g = gcd(k, field.n());
    let f = FieldFunction::from_monomial(field, p.pow(k) + 1)?;
    let expected = gcd_u64(p.pow(k) + 1, field.order() as u64 - 1) as usize;
    let options = SearchOptions {
        reduce_power: true,
        ..SearchOptions::default()
    };
    let mut per_c = BTreeMap::new();
    for c in field.subfield_elements(g) {
        if c == FieldElement::ONE {
            continue;
        }
        per_c.insert(c, spectrum::uniformity(&f, t, c, &options)?.max_count);
    }
    let all_match = per_c.values().all(|&u| u == expected);
    Ok(GoldSubfieldReport {
        p: field.p(),
        n: field.n(),
        k,
        t,
        subfield_order: p.pow(g) as usize,
        expected,
        per_c,
        all_match,
    })
}

/// Per-multiplier uniformity of a quadratic function restricted to subfield
/// multipliers, against the preimage maximum `δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticSubfieldReport {
    /// The declared coefficient-structure exponent (`q = p^h`).
    pub h: u32,
    pub t: usize,
    /// Order of the subfield `GF(p^{gcd(n,h)})` the multipliers range over.
    pub subfield_order: usize,
    /// `δ = max_b |F⁻¹(b)|`.
    pub delta: usize,
    /// Uniformity for each subfield `c ≠ 1`.
    pub per_c: BTreeMap<FieldElement, usize>,
    /// Whether every entry equals `delta`.
    pub all_match: bool,
}

/// For a quadratic function `F = Σ c_{i,j} x^{q^i+q^j} + Σ c_l x^{p^l}` with
/// `q = p^h`, every multiplier `c ≠ 1` in `GF(p^{gcd(n,h)})` gives t-order
/// uniformity exactly `δ = max_b |F⁻¹(b)|`.
///
/// The function must carry a symbolic origin whose exponents all have the
/// shape `p^u + p^v` with `u, v` multiples of `gcd(n, h)` (that is, `q^i +
/// q^j` reduced mod `x^{p^n} - x`) or `p^l` with any `l < n`; anything else
/// — including raw tables, which declare no structure — is rejected.
pub fn quadratic_subfield_uniformity(
    f: &FieldFunction,
    h: u32,
    t: usize,
) -> Result<QuadraticSubfieldReport, CaseError> {
    if h == 0 {
        return Err(CaseError::PreconditionViolated(
            "the coefficient-structure exponent h must be at least 1".to_string(),
        ));
    }
    let field = f.field();
    let p = u64::from(field.p());
    let n = field.n();
    let g = gcd(h, n);

    let exponents: Vec<u64> = match f.origin() {
        FunctionOrigin::Monomial { exponent } => vec![*exponent],
        FunctionOrigin::Univariate { coeffs } => coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i as u64)
            .collect(),
        FunctionOrigin::Raw => {
            return Err(CaseError::NotQuadraticForm {
                reason: "raw lookup table declares no exponent structure".to_string(),
            })
        }
    };
    for &e in &exponents {
        if !is_linear_exponent(e, p, n) && !is_quadratic_exponent(e, p, n, g) {
            return Err(CaseError::NotQuadraticForm {
                reason: format!("exponent {e} is neither p^l nor q^i + q^j for q = p^{h}"),
            });
        }
    }

    let delta = f.max_preimage().0;
    let options = SearchOptions {
        reduce_power: matches!(f.origin(), FunctionOrigin::Monomial { .. }),
        ..SearchOptions::default()
    };
    let mut per_c = BTreeMap::new();
    for c in field.subfield_elements(g) {
        if c == FieldElement::ONE {
            continue;
        }
        per_c.insert(c, spectrum::uniformity(f, t, c, &options)?.max_count);
    }
    let all_match = per_c.values().all(|&u| u == delta);
    Ok(QuadraticSubfieldReport {
        h,
        t,
        subfield_order: p.pow(g) as usize,
        delta,
        per_c,
        all_match,
    })
}

/// `e = p^l` for some `0 ≤ l < n`.
fn is_linear_exponent(e: u64, p: u64, n: u32) -> bool {
    (0..n).any(|l| p.pow(l) == e)
}

/// `e = p^u + p^v` with `u, v` multiples of `g` below `n` (`u = v` allowed).
fn is_quadratic_exponent(e: u64, p: u64, n: u32, g: u32) -> bool {
    let powers: Vec<u64> = (0..n).step_by(g as usize).map(|u| p.pow(u)).collect();
    powers
        .iter()
        .any(|&pu| powers.iter().any(|&pv| pu + pv == e))
}

fn gcd(a: u32, b: u32) -> u32 {
    gcd_u64(u64::from(a), u64::from(b)) as u32
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

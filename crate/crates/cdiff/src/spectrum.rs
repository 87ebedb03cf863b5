//! Exhaustive solution-count spectra and t-order c-differential uniformity.
//!
//! For a fixed multiplier `c` and order `t`, the search enumerates shift
//! tuples `(a₁, …, a_t)` and, for each tuple, histograms the values of the
//! t-th derivative so that every output `b` contributes its solution count
//! `#{x : D(x) = b}`. The report aggregates a histogram over all enumerated
//! `(a-tuple, b)` pairs, the maximum count (the uniformity for this `c`),
//! and the lexicographically smallest witnesses attaining it.
//!
//! Derivative values are never recomputed from scratch per tuple: the search
//! walks the tuple tree depth-first, materializing the derivative table of
//! each prefix once, so a leaf costs two table passes. Parallel runs split
//! the outermost enumerated dimension into contiguous chunks whose partial
//! results merge by pointwise histogram addition and sorted witness merging
//! — associative and commutative, so the report is bit-identical to a serial
//! run regardless of thread count or scheduling.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::deriv::{higher_c_derivative_recursive, DerivativeSpec, MAX_CLOSED_ORDER};
use crate::field::{FieldElement, FieldSpec};
use crate::func::{FieldFunction, FunctionOrigin};

/// Errors from spectrum searches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    /// The `a₁ = 1` reduction was requested for a function that is not a
    /// monomial power map.
    #[error("the a1=1 reduction requires a monomial function")]
    ReductionUnavailable,
    /// Order beyond the supported cap.
    #[error("derivative order {order} exceeds the supported maximum {max}")]
    OrderTooHigh { order: usize, max: usize },
}

/// Which shift tuples a search enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftDomain {
    /// Every tuple in `GF(p^n)^t`. When `c = 1` the all-zero tuple is
    /// excluded (the classical derivative degenerates there); for any other
    /// `c` it is included and contributes `(1-c)^t F`.
    Full,
    /// Tuples whose shifts are nonzero and pairwise distinct — the classical
    /// convention for higher-order derivatives at `c = 1`, where a repeated
    /// or zero shift makes the derivative identically zero.
    DistinctNonzero,
}

/// Search configuration.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Fix `a₁ = 1` and sweep only the remaining shifts. Valid for monomial
    /// functions, where `Δ(a₁,…,a_t; b) = Δ(1, a₂/a₁,…,a_t/a₁; b/a₁^d)`
    /// makes every tuple with some nonzero shift equivalent to one with
    /// `a₁ = 1` (after the permutation invariance reorders it). The all-zero
    /// tuple, which has no such representative, is enumerated separately
    /// when the domain admits it.
    pub reduce_power: bool,
    /// Which tuples to enumerate.
    pub shift_domain: ShiftDomain,
    /// Maximum number of witnesses kept (smallest lexicographic first).
    pub witness_cap: usize,
    /// Split the outermost dimension across the rayon pool.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            reduce_power: false,
            shift_domain: ShiftDomain::Full,
            witness_cap: 16,
            parallel: true,
        }
    }
}

/// An `(a-tuple, b)` pair attaining the maximum solution count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    /// The shift tuple `(a₁, …, a_t)`.
    pub shifts: Vec<FieldElement>,
    /// The output value.
    pub b: FieldElement,
}

/// What the search actually enumerated, echoed for reproducibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchDomain {
    /// Whether `a₁` was fixed to 1.
    pub reduced: bool,
    /// The tuple domain.
    pub shift_domain: ShiftDomain,
    /// Whether the all-zero tuple was excluded from an otherwise full
    /// domain (the `c = 1` rule).
    pub zero_tuple_excluded: bool,
    /// Number of shift tuples enumerated.
    pub tuples_enumerated: u64,
}

/// Result of a spectrum search at fixed `(t, c)`.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    /// Derivative order.
    pub t: usize,
    /// The multiplier.
    pub c: FieldElement,
    /// Maximum solution count over all enumerated `(a-tuple, b)` pairs —
    /// the t-order c-differential uniformity on the enumerated domain.
    pub max_count: usize,
    /// `histogram[k]` = number of `(a-tuple, b)` pairs with exactly `k`
    /// solutions. For each tuple the counts over `b` sum to the field order.
    pub histogram: BTreeMap<usize, u64>,
    /// Up to `witness_cap` smallest witnesses attaining `max_count`.
    pub witnesses: Vec<Witness>,
    /// Echo of the enumerated domain.
    pub search_domain: SearchDomain,
    /// Wall time of the search; excluded from serialization and equality so
    /// reports compare and serialize reproducibly.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for SpectrumReport {
    fn eq(&self, other: &Self) -> bool {
        self.t == other.t
            && self.c == other.c
            && self.max_count == other.max_count
            && self.histogram == other.histogram
            && self.witnesses == other.witnesses
            && self.search_domain == other.search_domain
    }
}

impl Eq for SpectrumReport {}

/// `#{x : D(x) = b}` for the derivative identified by `spec`.
pub fn count_solutions(f: &FieldFunction, spec: &DerivativeSpec, b: FieldElement) -> usize {
    let d = higher_c_derivative_recursive(f, spec);
    d.table().iter().filter(|&&v| v == b).count()
}

/// Exhaustive t-order spectrum search at a fixed multiplier.
///
/// Enumerates the tuples selected by `options.shift_domain` (with the
/// `a₁ = 1` reduction when requested) and aggregates the solution-count
/// histogram over every `(a-tuple, b)` pair. At order 0 the derivative is
/// `F` itself and the report is its preimage spectrum.
pub fn uniformity(
    f: &FieldFunction,
    t: usize,
    c: FieldElement,
    options: &SearchOptions,
) -> Result<SpectrumReport, SpectrumError> {
    if options.reduce_power && !matches!(f.origin(), FunctionOrigin::Monomial { .. }) {
        return Err(SpectrumError::ReductionUnavailable);
    }
    if t > MAX_CLOSED_ORDER {
        return Err(SpectrumError::OrderTooHigh {
            order: t,
            max: MAX_CLOSED_ORDER,
        });
    }
    let start = Instant::now();
    let field = f.field().as_ref();
    let cap = options.witness_cap;
    let exclude_zero_tuple =
        c == FieldElement::ONE && options.shift_domain == ShiftDomain::Full && t >= 1;

    let ctx = SearchCtx {
        field,
        c,
        t,
        domain: options.shift_domain,
        skip_all_zero: exclude_zero_tuple,
        cap,
        parallel: options.parallel,
    };
    let mut state = WorkerState::new(field.order(), cap);
    if t == 0 {
        state.process_table(field, f.table(), &[]);
    } else if options.reduce_power {
        // The all-zero tuple is the one orbit without an a₁ = 1
        // representative; enumerate it first so witness order stays global.
        if options.shift_domain == ShiftDomain::Full && c != FieldElement::ONE {
            let scale = scalar_power(field, field.sub(FieldElement::ONE, c), t);
            let zero_table: Vec<FieldElement> =
                f.table().iter().map(|&v| field.mul(scale, v)).collect();
            state.process_table(field, &zero_table, &vec![FieldElement::ZERO; t]);
        }
        let prefix = vec![FieldElement::ONE];
        if t == 1 {
            state.process_last(field, f.table(), c, &prefix, FieldElement::ONE);
        } else {
            let g1 = deriv_table(field, f.table(), FieldElement::ONE, c);
            let axis = candidates(field, options.shift_domain, &prefix);
            let run = run_axis(&ctx, &g1, &prefix, &axis);
            state.merge(run);
        }
    } else {
        let prefix = Vec::new();
        let axis = candidates(field, options.shift_domain, &prefix);
        let run = run_axis(&ctx, f.table(), &prefix, &axis);
        state.merge(run);
    }

    Ok(SpectrumReport {
        t,
        c,
        max_count: state.max,
        histogram: state
            .histo
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(k, &m)| (k, m))
            .collect(),
        witnesses: state.witnesses,
        search_domain: SearchDomain {
            reduced: options.reduce_power && t >= 1,
            shift_domain: options.shift_domain,
            zero_tuple_excluded: exclude_zero_tuple,
            tuples_enumerated: state.tuples,
        },
        elapsed: start.elapsed(),
    })
}

/// One [`uniformity`] report per multiplier in `c_set`; with `parallel` the
/// per-c searches are distributed across the pool. Reports are keyed by `c`.
pub fn uniformity_sweep(
    f: &FieldFunction,
    t: usize,
    c_set: &[FieldElement],
    options: &SearchOptions,
) -> Result<BTreeMap<FieldElement, SpectrumReport>, SpectrumError> {
    if options.parallel {
        let results: Result<Vec<_>, SpectrumError> = c_set
            .par_iter()
            .map(|&c| uniformity(f, t, c, options).map(|r| (c, r)))
            .collect();
        Ok(results?.into_iter().collect())
    } else {
        let mut out = BTreeMap::new();
        for &c in c_set {
            out.insert(c, uniformity(f, t, c, options)?);
        }
        Ok(out)
    }
}

/// Checks `δ⁽ᵗ⁾ ≥ δ⁽ᵗ⁻¹⁾` for `1 ≤ t ≤ t_max` at a fixed `c ≠ 1` (the
/// `a_t = 0` embedding makes each level dominate the previous one). The
/// order-0 baseline is the preimage spectrum of `F` itself. Monomials are
/// searched with the `a₁ = 1` reduction automatically.
///
/// # Panics
/// If `c = 1`, where the embedding argument does not apply.
pub fn verify_monotonicity(
    f: &FieldFunction,
    t_max: usize,
    c: FieldElement,
) -> Result<bool, SpectrumError> {
    assert!(c != FieldElement::ONE, "monotonicity requires c != 1");
    let options = SearchOptions {
        reduce_power: matches!(f.origin(), FunctionOrigin::Monomial { .. }),
        ..SearchOptions::default()
    };
    let mut previous = f.max_preimage().0;
    for t in 1..=t_max {
        let report = uniformity(f, t, c, &options)?;
        if report.max_count < previous {
            return Ok(false);
        }
        previous = report.max_count;
    }
    Ok(true)
}

/// `base^t` as a field scalar.
fn scalar_power(field: &FieldSpec, base: FieldElement, t: usize) -> FieldElement {
    field.pow(base, t as u64)
}

/// The values the next shift may take, given the shifts chosen so far.
fn candidates(
    field: &FieldSpec,
    domain: ShiftDomain,
    prefix: &[FieldElement],
) -> Vec<FieldElement> {
    match domain {
        ShiftDomain::Full => field.elements().collect(),
        ShiftDomain::DistinctNonzero => field
            .elements()
            .skip(1)
            .filter(|a| !prefix.contains(a))
            .collect(),
    }
}

/// First-derivative table of a raw table: `x -> g(x+a) - c·g(x)`.
fn deriv_table(
    field: &FieldSpec,
    g: &[FieldElement],
    a: FieldElement,
    c: FieldElement,
) -> Vec<FieldElement> {
    field
        .elements()
        .map(|x| field.sub(g[field.add(x, a).index()], field.mul(c, g[x.index()])))
        .collect()
}

/// Immutable parameters shared by every worker of one search.
struct SearchCtx<'a> {
    field: &'a FieldSpec,
    c: FieldElement,
    t: usize,
    domain: ShiftDomain,
    /// Skip the all-zero tuple (the `c = 1` exclusion on a full domain).
    skip_all_zero: bool,
    cap: usize,
    parallel: bool,
}

/// Distributes the given axis values (the outermost free dimension) over the
/// pool when requested, then merges the per-chunk states.
fn run_axis(
    ctx: &SearchCtx<'_>,
    g: &[FieldElement],
    prefix: &[FieldElement],
    axis: &[FieldElement],
) -> WorkerState {
    let order = ctx.field.order();
    if ctx.parallel && axis.len() > 1 {
        axis.par_iter()
            .fold(
                || WorkerState::new(order, ctx.cap),
                |mut st, &a| {
                    descend(ctx, g, &mut prefix.to_vec(), a, &mut st);
                    st
                },
            )
            .reduce(
                || WorkerState::new(order, ctx.cap),
                |mut left, right| {
                    left.merge(right);
                    left
                },
            )
    } else {
        let mut st = WorkerState::new(order, ctx.cap);
        let mut prefix = prefix.to_vec();
        for &a in axis {
            descend(ctx, g, &mut prefix, a, &mut st);
        }
        st
    }
}

/// Applies shift `a` on top of `prefix` (whose derivative table is `g`) and
/// either counts the finished tuple or recurses one level deeper.
fn descend(
    ctx: &SearchCtx<'_>,
    g: &[FieldElement],
    prefix: &mut Vec<FieldElement>,
    a: FieldElement,
    state: &mut WorkerState,
) {
    if prefix.len() + 1 == ctx.t {
        if ctx.skip_all_zero && a.is_zero() && prefix.iter().all(|s| s.is_zero()) {
            return;
        }
        state.process_last(ctx.field, g, ctx.c, prefix, a);
        return;
    }
    let g_next = deriv_table(ctx.field, g, a, ctx.c);
    prefix.push(a);
    for next in candidates(ctx.field, ctx.domain, prefix) {
        descend(ctx, &g_next, prefix, next, state);
    }
    prefix.pop();
}

/// Accumulator for one worker: flat histogram, running maximum, capped
/// sorted witness list, and a reusable counting buffer.
struct WorkerState {
    counts: Vec<u32>,
    histo: Vec<u64>,
    max: usize,
    witnesses: Vec<Witness>,
    tuples: u64,
    cap: usize,
}

impl WorkerState {
    fn new(order: usize, cap: usize) -> WorkerState {
        WorkerState {
            counts: vec![0; order],
            histo: vec![0; order + 1],
            max: 0,
            witnesses: Vec::new(),
            tuples: 0,
            cap,
        }
    }

    /// Counts a finished tuple whose full derivative table is given.
    fn process_table(&mut self, field: &FieldSpec, d: &[FieldElement], shifts: &[FieldElement]) {
        self.counts.fill(0);
        for &v in d {
            self.counts[v.index()] += 1;
        }
        self.scan(field, shifts, None);
    }

    /// Counts a finished tuple `prefix + [last]` from the prefix derivative
    /// table `g`: the final derivative value at `x` is `g(x+last) - c·g(x)`.
    fn process_last(
        &mut self,
        field: &FieldSpec,
        g: &[FieldElement],
        c: FieldElement,
        prefix: &[FieldElement],
        last: FieldElement,
    ) {
        self.counts.fill(0);
        for x in field.elements() {
            let v = field.sub(g[field.add(x, last).index()], field.mul(c, g[x.index()]));
            self.counts[v.index()] += 1;
        }
        self.scan(field, prefix, Some(last));
    }

    /// Folds the per-b counts of the current tuple into the histogram and
    /// witness list. `b` ascends, so pushes stay lexicographically sorted.
    fn scan(&mut self, field: &FieldSpec, shifts: &[FieldElement], last: Option<FieldElement>) {
        self.tuples += 1;
        for b in field.elements() {
            let k = self.counts[b.index()] as usize;
            self.histo[k] += 1;
            if k > self.max {
                self.max = k;
                self.witnesses.clear();
            }
            if k == self.max && self.witnesses.len() < self.cap {
                let mut tuple = shifts.to_vec();
                if let Some(a) = last {
                    tuple.push(a);
                }
                self.witnesses.push(Witness { shifts: tuple, b });
            }
        }
    }

    /// Combines two partial results. Histogram addition commutes; witness
    /// lists are sorted, so a truncating sorted merge keeps the global
    /// smallest. The operation is associative with `new` as identity, which
    /// makes the parallel reduction schedule-independent.
    fn merge(&mut self, other: WorkerState) {
        for (h, o) in self.histo.iter_mut().zip(&other.histo) {
            *h += o;
        }
        self.tuples += other.tuples;
        match self.max.cmp(&other.max) {
            std::cmp::Ordering::Less => {
                self.max = other.max;
                self.witnesses = other.witnesses;
            }
            std::cmp::Ordering::Greater => {}
            std::cmp::Ordering::Equal => {
                let mut merged = Vec::with_capacity(self.cap.min(
                    self.witnesses.len() + other.witnesses.len(),
                ));
                let mut left = self.witnesses.iter().peekable();
                let mut right = other.witnesses.iter().peekable();
                while merged.len() < self.cap {
                    match (left.peek(), right.peek()) {
                        (Some(&l), Some(&r)) => {
                            if l <= r {
                                merged.push(l.clone());
                                left.next();
                            } else {
                                merged.push(r.clone());
                                right.next();
                            }
                        }
                        (Some(&l), None) => {
                            merged.push(l.clone());
                            left.next();
                        }
                        (None, Some(&r)) => {
                            merged.push(r.clone());
                            right.next();
                        }
                        (None, None) => break,
                    }
                }
                self.witnesses = merged;
            }
        }
    }
}

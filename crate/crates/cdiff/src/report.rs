//! Stable JSON and CSV rendering of search results.
//!
//! Everything outside the optional `meta` block (elapsed time, thread count)
//! is a pure function of the inputs, so two runs of the same configuration
//! can be compared byte-for-byte after [`strip_meta`]. Every report echoes
//! the field, its modulus, and the element encoding, making the integer
//! indices in payloads unambiguous.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::field::{FieldElement, FieldSpec};
use crate::spectrum::{SpectrumReport, Witness};

/// Version tag embedded in every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

/// How indices map to field elements; quoted in every header.
const ELEMENT_ENCODING: &str = "index sum(c_i p^i) encodes c_0 + c_1 x + ... + c_{n-1} x^{n-1}";

/// Field parameters echoed in every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldHeader {
    pub p: u32,
    pub n: u32,
    pub order: usize,
    /// Modulus coefficients, constant term first.
    pub modulus: Vec<u32>,
    pub element_encoding: &'static str,
}

impl FieldHeader {
    pub fn new(field: &FieldSpec) -> Self {
        FieldHeader {
            p: field.p(),
            n: field.n(),
            order: field.order(),
            modulus: field.modulus().to_vec(),
            element_encoding: ELEMENT_ENCODING,
        }
    }
}

/// Timing and scheduling facts that legitimately vary between runs,
/// segregated so the rest of a report stays byte-identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RunMeta {
    pub elapsed_ms: u64,
    pub threads: usize,
}

/// Versioned JSON envelope around an arbitrary payload.
#[derive(Debug, Clone, Serialize)]
pub struct Report<T: Serialize> {
    pub schema: u32,
    pub kind: String,
    pub field: FieldHeader,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    pub data: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<RunMeta>,
}

impl<T: Serialize> Report<T> {
    pub fn new(kind: &str, field: &FieldSpec, data: T) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            kind: kind.to_string(),
            field: FieldHeader::new(field),
            function: None,
            data,
            meta: None,
        }
    }

    /// Attaches the function descriptor shown in the envelope.
    pub fn with_function(mut self, descriptor: String) -> Self {
        self.function = Some(descriptor);
        self
    }

    /// Attaches run metadata (the only non-deterministic part).
    pub fn with_meta(mut self, meta: RunMeta) -> Self {
        self.meta = Some(meta);
        self
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        s.push('\n');
        s
    }
}

/// Re-serializes a JSON report with its top-level `meta` block removed,
/// normalizing key order, so two runs of the same configuration compare
/// equal as strings.
pub fn strip_meta(json: &str) -> Result<String, serde_json::Error> {
    let mut value: serde_json::Value = serde_json::from_str(json)?;
    if let Some(object) = value.as_object_mut() {
        object.remove("meta");
    }
    let mut s = serde_json::to_string_pretty(&value)?;
    s.push('\n');
    Ok(s)
}

/// Renders a histogram as `count:multiplicity` pairs joined by `;`,
/// ascending by count. Empty histograms render as the empty string.
pub fn format_histogram(histogram: &BTreeMap<usize, u64>) -> String {
    histogram
        .iter()
        .map(|(count, mult)| format!("{count}:{mult}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// Renders a witness as space-separated shift indices, `->`, and the output
/// index: `1 3 -> 7`.
pub fn format_witness(witness: &Witness) -> String {
    let shifts = witness
        .shifts
        .iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    format!("{shifts} -> {}", witness.b)
}

/// Renders a multiplier sweep as CSV: `#`-prefixed header lines echoing the
/// field, modulus, encoding, and function, then one row per multiplier in
/// ascending order with columns `c, t, max_count, histogram, first_witness`.
pub fn sweep_to_csv(
    field: &FieldSpec,
    function: &str,
    sweep: &BTreeMap<FieldElement, SpectrumReport>,
) -> String {
    let modulus = field
        .modulus()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mut out = String::new();
    out.push_str(&format!(
        "# p={} n={} order={} modulus={}\n",
        field.p(),
        field.n(),
        field.order(),
        modulus
    ));
    out.push_str(&format!("# encoding={ELEMENT_ENCODING}\n"));
    out.push_str(&format!("# function={function}\n"));
    out.push_str("c,t,max_count,histogram,first_witness\n");
    for (c, report) in sweep {
        let witness = report
            .witnesses
            .first()
            .map(format_witness)
            .unwrap_or_default();
        out.push_str(&format!(
            "{c},{},{},{},{}\n",
            report.t,
            report.max_count,
            format_histogram(&report.histogram),
            witness
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::func::FieldFunction;
    use crate::spectrum::{self, SearchOptions, ShiftDomain};

    fn frobenius_sweep() -> (Arc<FieldSpec>, BTreeMap<FieldElement, SpectrumReport>) {
        let field = Arc::new(FieldSpec::new(2, 2).unwrap());
        let f = FieldFunction::from_monomial(&field, 2).unwrap();
        let c_set: Vec<FieldElement> = field.elements().collect();
        let sweep = spectrum::uniformity_sweep(&f, 1, &c_set, &SearchOptions::default()).unwrap();
        (field, sweep)
    }

    #[test]
    fn header_echoes_field_and_modulus() {
        let field = FieldSpec::new(2, 4).unwrap();
        let header = FieldHeader::new(&field);
        assert_eq!(header.p, 2);
        assert_eq!(header.n, 4);
        assert_eq!(header.order, 16);
        assert_eq!(header.modulus, vec![1, 0, 0, 1, 1]);
        assert!(header.element_encoding.contains("p^i"));
    }

    #[test]
    fn envelope_shape_and_meta_segregation() {
        let (field, sweep) = frobenius_sweep();
        let report = Report::new("spectrum", &field, &sweep[&FieldElement::ZERO])
            .with_function("x^2".to_string());
        let json = report.to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["schema"], 1);
        assert_eq!(value["kind"], "spectrum");
        assert_eq!(value["field"]["order"], 4);
        assert_eq!(value["function"], "x^2");
        assert_eq!(value["data"]["max_count"], 1);
        assert!(value.get("meta").is_none());

        let timed = Report::new("spectrum", &field, &sweep[&FieldElement::ZERO])
            .with_function("x^2".to_string())
            .with_meta(RunMeta {
                elapsed_ms: 12345,
                threads: 8,
            });
        let timed_json = timed.to_json();
        assert_ne!(json, timed_json);
        assert_eq!(strip_meta(&json).unwrap(), strip_meta(&timed_json).unwrap());
    }

    #[test]
    fn csv_rows_are_exact() {
        let (field, sweep) = frobenius_sweep();
        let csv = sweep_to_csv(&field, "x^2", &sweep);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# p=2 n=2 order=4 modulus=1,1,1");
        assert!(lines[1].starts_with("# encoding="));
        assert_eq!(lines[2], "# function=x^2");
        assert_eq!(lines[3], "c,t,max_count,histogram,first_witness");
        // x^2 is linearized: bijective derivatives except at c = 1, where
        // the derivative is the constant a^2.
        assert_eq!(lines[4], "0,1,1,1:16,0 -> 0");
        assert_eq!(lines[5], "1,1,4,0:9;4:3,1 -> 1");
        assert_eq!(lines[6], "2,1,1,1:16,0 -> 0");
        assert_eq!(lines[7], "3,1,1,1:16,0 -> 0");
        assert_eq!(lines.len(), 8);
    }

    #[test]
    fn empty_search_renders_empty_cells() {
        // Four pairwise-distinct nonzero shifts cannot exist among three
        // nonzero elements, so the search is empty.
        let field = Arc::new(FieldSpec::new(2, 2).unwrap());
        let f = FieldFunction::from_monomial(&field, 2).unwrap();
        let options = SearchOptions {
            shift_domain: ShiftDomain::DistinctNonzero,
            ..SearchOptions::default()
        };
        let report = spectrum::uniformity(&f, 4, FieldElement::ZERO, &options).unwrap();
        assert_eq!(report.search_domain.tuples_enumerated, 0);
        let mut sweep = BTreeMap::new();
        sweep.insert(FieldElement::ZERO, report);
        let csv = sweep_to_csv(&field, "x^2", &sweep);
        assert!(csv.ends_with("0,4,0,,\n"), "{csv}");
    }

    #[test]
    fn witness_and_histogram_formatting() {
        let witness = Witness {
            shifts: vec![FieldElement(1), FieldElement(3)],
            b: FieldElement(7),
        };
        assert_eq!(format_witness(&witness), "1 3 -> 7");
        let mut histogram = BTreeMap::new();
        histogram.insert(0usize, 9u64);
        histogram.insert(4, 3);
        assert_eq!(format_histogram(&histogram), "0:9;4:3");
        assert_eq!(format_histogram(&BTreeMap::new()), "");
    }
}

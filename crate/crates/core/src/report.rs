//! Report documents for the command-line driver, with canonical JSON and a
//! plain-text rendering carrying the same numbers.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arrangement::{dimension_function_with_limits, Arrangement, Limits, Subset};
use crate::error::{Error, Result};
use crate::formats::FIXTURES;
use crate::gpca::{RankMode, RecoveryResult};
use crate::hilbert::{hilbert_report, transversal_hilbert_function, HilbertReport};
use crate::oracle::hilbert_table_parallel;
use crate::ratpoly::{format_rational, QPolynomial, Rational};

fn strings(p: &QPolynomial) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

fn int_string(q: &Rational) -> String {
    format_rational(q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionEntry {
    /// One-based subspace indices.
    pub subset: Vec<usize>,
    pub dim: usize,
    pub codim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialEntry {
    pub subset: Vec<usize>,
    pub coefficients: Vec<String>,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesSection {
    /// Ascending coefficients of the numerator over `(1 - t)^denominator_power`.
    pub numerator: Vec<String>,
    pub denominator_power: usize,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedBettiEntry {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiSection {
    pub betti: Vec<String>,
    pub graded: Vec<GradedBettiEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialSection {
    pub coefficients: Vec<String>,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueEntry {
    pub d: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalSection {
    pub series: SeriesSection,
    /// Binomial-sum values of `h_I = h_J` for `d = m..=max_degree`.
    pub values: Vec<ValueEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    pub d: usize,
    pub dim_i: String,
    pub dim_j: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSection {
    pub table: Vec<OracleRow>,
    pub agrees: bool,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub dimension_function: Vec<DimensionEntry>,
    pub transversal: bool,
    pub ps_family: Vec<PolynomialEntry>,
    pub hilbert_series_j: SeriesSection,
    pub hilbert_function_j: Vec<ValueEntry>,
    pub betti_j: BettiSection,
    pub hilbert_polynomial_j: PolynomialSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transversal_formulas: Option<TransversalSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Largest degree tabulated; defaults to `m + n - 1`.
    pub max_degree: Option<usize>,
    pub oracle: bool,
    pub jobs: usize,
    pub limits: Limits,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            max_degree: None,
            oracle: false,
            jobs: 1,
            limits: Limits::default(),
        }
    }
}

fn series_section(numerator: &QPolynomial, power: usize) -> SeriesSection {
    SeriesSection {
        numerator: strings(numerator),
        denominator_power: power,
        display: format!("({numerator})/(1 - t)^{power}"),
    }
}

fn subset_indices(s: Subset) -> Vec<usize> {
    s.members().map(|i| i + 1).collect()
}

/// Runs the closed forms (and optionally the oracle) on an arrangement.
pub fn analyze(a: &Arrangement, opts: &AnalyzeOptions) -> Result<ReportDocument> {
    let dims = dimension_function_with_limits(a, &opts.limits)?;
    let (n, m) = (dims.n(), dims.m());
    let max_degree = opts.max_degree.unwrap_or(m + n - 1);
    let HilbertReport {
        family,
        series_j,
        betti,
        hilbert_polynomial_j,
        transversal,
        transversal_series,
    } = hilbert_report(&dims)?;

    let j_values = series_j.series(max_degree);
    let hilbert_function_j: Vec<ValueEntry> = j_values
        .coeffs()
        .iter()
        .enumerate()
        .map(|(d, v)| ValueEntry {
            d,
            value: int_string(v),
        })
        .collect();

    let codims = dims.codims();
    let transversal_formulas = match &transversal_series {
        Some(f) => Some(TransversalSection {
            series: series_section(&f.numerator, f.denom_power),
            values: (m..=max_degree)
                .map(|d| {
                    Ok(ValueEntry {
                        d,
                        value: transversal_hilbert_function(&codims, n, d)?.to_string(),
                    })
                })
                .collect::<Result<_>>()?,
        }),
        None => None,
    };

    let oracle = if opts.oracle {
        let table = hilbert_table_parallel(a, max_degree, &opts.limits, opts.jobs)?;
        let mut mismatches = Vec::new();
        for row in &table {
            let d = row.degree;
            let closed_j = j_values.coeff(d);
            if Rational::from_integer(row.dim_j.into()) != *closed_j {
                mismatches.push(format!(
                    "d = {d}: dim J_d = {} but H(J, t) gives {closed_j}",
                    row.dim_j
                ));
            }
            if d >= m {
                let poly = hilbert_polynomial_j.eval(d as i64);
                if Rational::from_integer(row.dim_j.into()) != poly {
                    mismatches.push(format!(
                        "d = {d}: dim J_d = {} but the Hilbert polynomial gives {poly}",
                        row.dim_j
                    ));
                }
                if transversal {
                    let expected = transversal_hilbert_function(&codims, n, d)?;
                    if BigInt::from(row.dim_i) != expected || BigInt::from(row.dim_j) != expected {
                        mismatches.push(format!(
                            "d = {d}: dim I_d = {}, dim J_d = {} but the binomial sum gives {expected}",
                            row.dim_i, row.dim_j
                        ));
                    }
                }
            }
        }
        Some(OracleSection {
            table: table
                .iter()
                .map(|r| OracleRow {
                    d: r.degree,
                    dim_i: r.dim_i.to_string(),
                    dim_j: r.dim_j.to_string(),
                })
                .collect(),
            agrees: mismatches.is_empty(),
            mismatches,
        })
    } else {
        None
    };

    Ok(ReportDocument {
        name: a.name().map(str::to_owned),
        n,
        m,
        max_degree,
        dimension_function: Subset::all(m)
            .map(|s| DimensionEntry {
                subset: subset_indices(s),
                dim: dims.dim(s),
                codim: dims.codim(s),
            })
            .collect(),
        transversal,
        ps_family: Subset::all(m)
            .map(|s| PolynomialEntry {
                subset: subset_indices(s),
                coefficients: strings(family.get(s)),
                display: family.get(s).to_string(),
            })
            .collect(),
        hilbert_series_j: series_section(series_j.numerator(), n),
        hilbert_function_j,
        betti_j: BettiSection {
            betti: betti.betti().iter().map(ToString::to_string).collect(),
            graded: betti
                .graded()
                .into_iter()
                .map(|g| GradedBettiEntry {
                    i: g.i,
                    j: g.j,
                    value: g.value.to_string(),
                })
                .collect(),
        },
        hilbert_polynomial_j: PolynomialSection {
            coefficients: strings(hilbert_polynomial_j.coeffs()),
            display: hilbert_polynomial_j.to_string(),
        },
        transversal_formulas,
        oracle,
    })
}

/// Pretty JSON with keys in sorted order, so re-rendering parsed output is
/// byte-identical.
pub fn to_canonical_json<T: Serialize>(doc: &T) -> Result<String> {
    let value = serde_json::to_value(doc).map_err(|e| Error::InvalidInput(e.to_string()))?;
    canonical_json_value(&value)
}

pub fn canonical_json_value(value: &serde_json::Value) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn join(items: &[String]) -> String {
    format!("[{}]", items.join(", "))
}

fn fmt_subset(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

impl ReportDocument {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        if let Some(name) = &self.name {
            let _ = writeln!(w, "arrangement: {name}");
        }
        let _ = writeln!(w, "n = {}, m = {}, degrees tabulated: 0..={}", self.n, self.m, self.max_degree);
        let _ = writeln!(w, "\ndimension function (S: n_S, c_S)");
        for e in &self.dimension_function {
            let _ = writeln!(w, "  {}: {}, {}", fmt_subset(&e.subset), e.dim, e.codim);
        }
        let _ = writeln!(w, "transversal: {}", self.transversal);
        let _ = writeln!(w, "\np_S(t)");
        for e in &self.ps_family {
            let _ = writeln!(w, "  {}: {}  {}", fmt_subset(&e.subset), e.display, join(&e.coefficients));
        }
        let s = &self.hilbert_series_j;
        let _ = writeln!(w, "\nH(J, t) = {}", s.display);
        let _ = writeln!(w, "  numerator coefficients: {}", join(&s.numerator));
        let vals: Vec<String> = self.hilbert_function_j.iter().map(|v| v.value.clone()).collect();
        let _ = writeln!(w, "  h_J(d), d = 0..={}: {}", self.max_degree, join(&vals));
        let _ = writeln!(w, "\nBetti numbers of J: {}", join(&self.betti_j.betti));
        for g in &self.betti_j.graded {
            let _ = writeln!(w, "  beta_{{{},{}}} = {}", g.i, g.j, g.value);
        }
        let hp = &self.hilbert_polynomial_j;
        let _ = writeln!(w, "\nHilbert polynomial of J: {}", hp.display);
        let _ = writeln!(w, "  coefficients in d: {}", join(&hp.coefficients));
        if let Some(t) = &self.transversal_formulas {
            let _ = writeln!(w, "\nf(t) = {}", t.series.display);
            let _ = writeln!(w, "  numerator coefficients: {}", join(&t.series.numerator));
            let vals: Vec<String> = t.values.iter().map(|v| v.value.clone()).collect();
            let _ = writeln!(w, "  h_I(d) = h_J(d), d = {}..={}: {}", self.m, self.max_degree, join(&vals));
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(w, "\noracle (d: dim I_d, dim J_d)");
            for r in &o.table {
                let _ = writeln!(w, "  {}: {}, {}", r.d, r.dim_i, r.dim_j);
            }
            let _ = writeln!(w, "agreement with closed forms: {}", if o.agrees { "yes" } else { "NO" });
            for msg in &o.mismatches {
                let _ = writeln!(w, "  mismatch: {msg}");
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecoveryDocument {
    pub mode: String,
    pub n: usize,
    pub m: usize,
    /// `h(I, d)` for `d = m..=m+n-1`.
    pub values: Vec<String>,
    pub multiplicities: Vec<usize>,
    pub codims: Vec<usize>,
    pub dims: Vec<usize>,
}

impl RecoveryDocument {
    pub fn new(result: &RecoveryResult, m: usize, values: &[BigInt], mode: RankMode) -> Self {
        Self {
            mode: match mode {
                RankMode::Exact => "exact".into(),
                RankMode::Approx { rel_tol } => format!("approx(tol = {rel_tol:e})"),
            },
            n: result.ambient_dim,
            m,
            values: values.iter().map(ToString::to_string).collect(),
            multiplicities: result.multiplicities.clone(),
            codims: result.codims.clone(),
            dims: result.dims(),
        }
    }

    pub fn to_text(&self) -> String {
        let nums = |v: &[usize]| join(&v.iter().map(ToString::to_string).collect::<Vec<_>>());
        let mut out = String::new();
        let _ = writeln!(out, "mode: {}", self.mode);
        let _ = writeln!(out, "n = {}, m = {}", self.n, self.m);
        let _ = writeln!(out, "h_I(d), d = {}..={}: {}", self.m, self.m + self.n - 1, join(&self.values));
        let _ = writeln!(out, "codimension multiplicities r_1..r_{}: {}", self.n.saturating_sub(1), nums(&self.multiplicities));
        let _ = writeln!(out, "codimensions: {}", nums(&self.codims));
        let _ = writeln!(out, "dimensions: {}", nums(&self.dims));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// End-to-end golden checks on the bundled example arrangements.
pub fn selftest() -> Vec<SelftestCheck> {
    let mut checks = Vec::new();
    let mut check = |name: &str, result: Result<(bool, String)>| {
        let (passed, detail) = result.unwrap_or_else(|e| (false, e.to_string()));
        checks.push(SelftestCheck {
            name: name.to_string(),
            passed,
            detail,
        });
    };
    let opts = AnalyzeOptions {
        max_degree: Some(5),
        oracle: true,
        ..AnalyzeOptions::default()
    };
    let run = |stem: &str| -> Result<ReportDocument> {
        let text = FIXTURES
            .iter()
            .find(|(s, _)| *s == stem)
            .map(|(_, t)| *t)
            .ok_or_else(|| Error::InvalidInput(format!("no fixture {stem}")))?;
        analyze(&crate::formats::parse_arrangement(text, &Limits::default())?, &opts)
    };
    let column = |doc: &ReportDocument, pick: fn(&OracleRow) -> &String| -> Vec<String> {
        doc.oracle
            .as_ref()
            .map(|o| o.table.iter().map(|r| pick(r).clone()).collect())
            .unwrap_or_default()
    };
    let s = |v: &[i64]| v.iter().map(ToString::to_string).collect::<Vec<_>>();

    check("coordinate axes: closed forms and oracle", run("coordinate_axes").map(|d| {
        let ok = d.hilbert_series_j.numerator == s(&[0, 0, 0, 7, -9, 3])
            && d.betti_j.betti == s(&[7, 9, 3])
            && d.transversal
            && d.hilbert_polynomial_j.coefficients == ["-2", "3/2", "1/2"]
            && column(&d, |r| &r.dim_i) == s(&[0, 0, 3, 7, 12, 18])
            && column(&d, |r| &r.dim_j) == s(&[0, 0, 0, 7, 12, 18])
            && d.oracle.as_ref().is_some_and(|o| o.agrees);
        (ok, d.hilbert_series_j.display.clone())
    }));
    check("collinear points: same H(J, t), different I", run("collinear_points").map(|d| {
        let ok = d.hilbert_series_j.numerator == s(&[0, 0, 0, 7, -9, 3])
            && d.transversal
            && column(&d, |r| &r.dim_i) == s(&[0, 1, 3, 7, 12, 18])
            && d.oracle.as_ref().is_some_and(|o| o.agrees);
        (ok, d.hilbert_series_j.display.clone())
    }));
    check("planes spanning Q^4: I table", run("planes_spanning").map(|d| {
        // (3t^2 - 2t^3)/(1 - t)^4
        let ok = column(&d, |r| &r.dim_i) == s(&[0, 0, 3, 10, 22, 40])
            && d.oracle.as_ref().is_some_and(|o| o.agrees);
        (ok, format!("I: {:?}", column(&d, |r| &r.dim_i)))
    }));
    check("coplanar planes in Q^4: non-transversal", run("planes_coplanar").map(|d| {
        // (t + t^3 - t^4)/(1 - t)^4
        let ok = !d.transversal
            && d.hilbert_series_j.numerator == s(&[0, 0, 0, 7, -9, 3])
            && d.hilbert_series_j.denominator_power == 4
            && column(&d, |r| &r.dim_i) == s(&[0, 1, 4, 11, 23, 41])
            && d.oracle.as_ref().is_some_and(|o| o.agrees);
        (ok, format!("I: {:?}", column(&d, |r| &r.dim_i)))
    }));
    check(
        "recovery from (7, 12, 18)",
        crate::gpca::recover_codimensions(&[7, 12, 18].map(BigInt::from), 3, 3)
            .map(|r| (r.codims == [2, 2, 2], format!("codims {:?}", r.codims))),
    );
    checks
}

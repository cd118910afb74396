//! Output rendering and the table wire formats.
//!
//! JSON and CSV never put a dimension through a native number type:
//! multiplicities, E-polynomial coefficients and fiber counts are
//! decimal strings, so arbitrary-precision values survive any consumer.
//! The exported table schema is `{"g0", "k", "pieces": [{"i", "w", "p",
//! "q", "dim"}]}` with pieces in lexicographic `(i, w, p, q)` order, and
//! the CSV counterpart has columns `i,w,p,q,dim` in the same order; both
//! round-trip losslessly through [`read_table_json`] / [`read_table_csv`].
//! All output is deterministic byte for byte: fixed orderings, no
//! timestamps.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use jbar_core::closed_form::CurveParams;
use jbar_core::table::{HodgePiece, MixedHodgeTable};

use crate::report::VerificationReport;
use crate::{CliError, OutputFormat, Route};

// ── wire structs ────────────────────────────────────────────────────

#[derive(Debug, Serialize, Deserialize)]
pub struct PieceWire {
    pub i: u32,
    pub w: u32,
    pub p: u32,
    pub q: u32,
    pub dim: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TableWire {
    pub g0: u32,
    pub k: u32,
    pub pieces: Vec<PieceWire>,
}

#[derive(Serialize)]
struct BettiWire<'a> {
    g0: u32,
    k: u32,
    route: &'a str,
    betti: Vec<String>,
}

#[derive(Serialize)]
struct WeightEntryWire {
    i: u32,
    l: u32,
    dim: String,
}

#[derive(Serialize)]
struct WeightsWire<'a> {
    g0: u32,
    k: u32,
    route: &'a str,
    entries: Vec<WeightEntryWire>,
}

#[derive(Serialize)]
struct HodgeEntryWire {
    i: u32,
    l: u32,
    p: u32,
    q: u32,
    dim: String,
}

#[derive(Serialize)]
struct HodgeWire<'a> {
    g0: u32,
    k: u32,
    route: &'a str,
    entries: Vec<HodgeEntryWire>,
}

#[derive(Serialize)]
struct EpolyEntryWire {
    p: u32,
    q: u32,
    coeff: String,
}

#[derive(Serialize)]
struct EpolyWire<'a> {
    g0: u32,
    k: u32,
    route: &'a str,
    coefficients: Vec<EpolyEntryWire>,
}

/// One codimension of the strata census.
#[derive(Debug, Clone)]
pub struct StrataRow {
    pub r: u32,
    pub upstream: u64,
    pub downstream: u64,
    pub fiber_count: BigUint,
    pub local_model: String,
}

#[derive(Serialize)]
struct StrataRowWire {
    r: u32,
    upstream: String,
    downstream: String,
    fiber_count: String,
    local_model: String,
}

#[derive(Serialize)]
struct StrataWire {
    k: u32,
    rows: Vec<StrataRowWire>,
}

#[derive(Serialize)]
struct RecordWire {
    g0: u32,
    k: u32,
    i: u32,
    l: u32,
    p: u32,
    q: u32,
    corrected: String,
    structural: String,
    census: String,
    printed: String,
    agree: bool,
}

#[derive(Serialize)]
struct DiscrepancyWire {
    kind: &'static str,
    g0: u32,
    k: u32,
    i: u32,
    l: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<u32>,
    printed: String,
    reference: String,
}

#[derive(Serialize)]
struct ReportWire {
    g0_max: u32,
    k_max: u32,
    cells: u32,
    instances_checked: u64,
    all_routes_agree: bool,
    route_mismatches: Vec<RecordWire>,
    printed_disagreements: Vec<DiscrepancyWire>,
    records: Vec<RecordWire>,
}

// ── helpers ─────────────────────────────────────────────────────────

fn json_line<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("wire structs serialize");
    text.push('\n');
    text
}

/// Two-space separated columns, each padded to its widest cell.
fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let render_row = |cells: Vec<String>, out: &mut String| {
        let mut line = String::new();
        for (idx, cell) in cells.iter().enumerate() {
            if idx > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if idx + 1 < cells.len() {
                for _ in cell.len()..widths[idx] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    render_row(header.iter().map(|h| h.to_string()).collect(), &mut out);
    for row in rows {
        render_row(row.clone(), &mut out);
    }
    out
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("csv header");
    for row in rows {
        writer.write_record(row).expect("csv row");
    }
    String::from_utf8(writer.into_inner().expect("csv flush")).expect("csv is utf-8")
}

// ── per-command rendering ───────────────────────────────────────────

pub fn render_betti(
    params: CurveParams,
    route: Route,
    values: &[BigUint],
    format: OutputFormat,
) -> Result<String, CliError> {
    Ok(match format {
        OutputFormat::Table => {
            let mut line = values
                .iter()
                .map(BigUint::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            line.push('\n');
            line
        }
        OutputFormat::Json => json_line(&BettiWire {
            g0: params.g0,
            k: params.k,
            route: route.name(),
            betti: values.iter().map(BigUint::to_string).collect(),
        }),
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = values
                .iter()
                .enumerate()
                .map(|(i, b)| vec![i.to_string(), b.to_string()])
                .collect();
            csv_table(&["i", "dim"], &rows)
        }
    })
}

pub fn render_weights(
    params: CurveParams,
    route: Route,
    entries: &[(u32, u32, BigUint)],
    format: OutputFormat,
) -> Result<String, CliError> {
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|(i, l, dim)| vec![i.to_string(), l.to_string(), dim.to_string()])
        .collect();
    Ok(match format {
        OutputFormat::Table => columns(&["i", "l", "dim"], &rows),
        OutputFormat::Csv => csv_table(&["i", "l", "dim"], &rows),
        OutputFormat::Json => json_line(&WeightsWire {
            g0: params.g0,
            k: params.k,
            route: route.name(),
            entries: entries
                .iter()
                .map(|(i, l, dim)| WeightEntryWire {
                    i: *i,
                    l: *l,
                    dim: dim.to_string(),
                })
                .collect(),
        }),
    })
}

pub fn render_hodge(
    params: CurveParams,
    route: Route,
    entries: &[(u32, u32, u32, u32, BigUint)],
    format: OutputFormat,
) -> Result<String, CliError> {
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|(i, l, p, q, dim)| {
            vec![
                i.to_string(),
                l.to_string(),
                p.to_string(),
                q.to_string(),
                dim.to_string(),
            ]
        })
        .collect();
    Ok(match format {
        OutputFormat::Table => columns(&["i", "l", "p", "q", "dim"], &rows),
        OutputFormat::Csv => csv_table(&["i", "l", "p", "q", "dim"], &rows),
        OutputFormat::Json => json_line(&HodgeWire {
            g0: params.g0,
            k: params.k,
            route: route.name(),
            entries: entries
                .iter()
                .map(|(i, l, p, q, dim)| HodgeEntryWire {
                    i: *i,
                    l: *l,
                    p: *p,
                    q: *q,
                    dim: dim.to_string(),
                })
                .collect(),
        }),
    })
}

pub fn render_epoly(
    params: CurveParams,
    route: Route,
    coefficients: &[(u32, u32, BigInt)],
    format: OutputFormat,
) -> Result<String, CliError> {
    let rows: Vec<Vec<String>> = coefficients
        .iter()
        .map(|(p, q, coeff)| vec![p.to_string(), q.to_string(), coeff.to_string()])
        .collect();
    Ok(match format {
        OutputFormat::Table => columns(&["p", "q", "coeff"], &rows),
        OutputFormat::Csv => csv_table(&["p", "q", "coeff"], &rows),
        OutputFormat::Json => json_line(&EpolyWire {
            g0: params.g0,
            k: params.k,
            route: route.name(),
            coefficients: coefficients
                .iter()
                .map(|(p, q, coeff)| EpolyEntryWire {
                    p: *p,
                    q: *q,
                    coeff: coeff.to_string(),
                })
                .collect(),
        }),
    })
}

pub fn render_strata(k: u32, rows: &[StrataRow], format: OutputFormat) -> Result<String, CliError> {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            vec![
                row.r.to_string(),
                row.upstream.to_string(),
                row.downstream.to_string(),
                row.fiber_count.to_string(),
                row.local_model.clone(),
            ]
        })
        .collect();
    let header = ["r", "upstream", "downstream", "fiber_count", "local_model"];
    Ok(match format {
        OutputFormat::Table => columns(&header, &cells),
        OutputFormat::Csv => csv_table(&header, &cells),
        OutputFormat::Json => json_line(&StrataWire {
            k,
            rows: rows
                .iter()
                .map(|row| StrataRowWire {
                    r: row.r,
                    upstream: row.upstream.to_string(),
                    downstream: row.downstream.to_string(),
                    fiber_count: row.fiber_count.to_string(),
                    local_model: row.local_model.clone(),
                })
                .collect(),
        }),
    })
}

// ── table export and import ─────────────────────────────────────────

fn table_wire(params: CurveParams, table: &MixedHodgeTable) -> TableWire {
    TableWire {
        g0: params.g0,
        k: params.k,
        pieces: table
            .iter()
            .map(|(piece, dim)| PieceWire {
                i: piece.degree(),
                w: piece.weight(),
                p: piece.hodge_p(),
                q: piece.hodge_q(),
                dim: dim.to_string(),
            })
            .collect(),
    }
}

pub fn render_table_export(
    params: CurveParams,
    table: &MixedHodgeTable,
    format: OutputFormat,
) -> Result<String, CliError> {
    let wire = table_wire(params, table);
    Ok(match format {
        OutputFormat::Json => json_line(&wire),
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = wire
                .pieces
                .iter()
                .map(|p| {
                    vec![
                        p.i.to_string(),
                        p.w.to_string(),
                        p.p.to_string(),
                        p.q.to_string(),
                        p.dim.clone(),
                    ]
                })
                .collect();
            csv_table(&["i", "w", "p", "q", "dim"], &rows)
        }
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = wire
                .pieces
                .iter()
                .map(|p| {
                    vec![
                        p.i.to_string(),
                        p.w.to_string(),
                        p.p.to_string(),
                        p.q.to_string(),
                        p.dim.clone(),
                    ]
                })
                .collect();
            columns(&["i", "w", "p", "q", "dim"], &rows)
        }
    })
}

fn parse_error(what: &str, detail: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("invalid {what}: {detail}"))
}

fn table_from_wire(wire: TableWire) -> Result<(CurveParams, MixedHodgeTable), CliError> {
    let mut pieces = Vec::with_capacity(wire.pieces.len());
    for entry in wire.pieces {
        let piece = HodgePiece::new(entry.i, entry.w, entry.p, entry.q)
            .map_err(|e| parse_error("table piece", e))?;
        let dim: BigUint = entry
            .dim
            .parse()
            .map_err(|e| parse_error("table dim", format!("{e:?}")))?;
        pieces.push((piece, dim));
    }
    Ok((
        CurveParams::new(wire.g0, wire.k),
        MixedHodgeTable::from_pieces(pieces),
    ))
}

/// Parses a table exported as JSON back into a [`MixedHodgeTable`].
pub fn read_table_json(text: &str) -> Result<(CurveParams, MixedHodgeTable), CliError> {
    let wire: TableWire = serde_json::from_str(text).map_err(|e| parse_error("table JSON", e))?;
    table_from_wire(wire)
}

/// Parses a table exported as CSV; the curve parameters are not part of
/// the CSV schema, only the pieces.
pub fn read_table_csv(text: &str) -> Result<MixedHodgeTable, CliError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut pieces = Vec::new();
    for record in reader.deserialize::<PieceWire>() {
        let entry = record.map_err(|e| parse_error("table CSV", e))?;
        let piece = HodgePiece::new(entry.i, entry.w, entry.p, entry.q)
            .map_err(|e| parse_error("table piece", e))?;
        let dim: BigUint = entry
            .dim
            .parse()
            .map_err(|e| parse_error("table dim", format!("{e:?}")))?;
        pieces.push((piece, dim));
    }
    Ok(MixedHodgeTable::from_pieces(pieces))
}

// ── verification report ─────────────────────────────────────────────

fn record_wire(rec: &crate::report::InstanceRecord) -> RecordWire {
    RecordWire {
        g0: rec.g0,
        k: rec.k,
        i: rec.i,
        l: rec.l,
        p: rec.p,
        q: rec.q,
        corrected: rec.corrected.to_string(),
        structural: rec.structural.to_string(),
        census: rec.census.to_string(),
        printed: rec.printed.to_string(),
        agree: rec.agree,
    }
}

pub fn render_report(report: &VerificationReport, format: OutputFormat) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => Ok(json_line(&ReportWire {
            g0_max: report.g0_max,
            k_max: report.k_max,
            cells: report.cells,
            instances_checked: report.instances_checked,
            all_routes_agree: report.all_routes_agree(),
            route_mismatches: report.route_mismatches().map(record_wire).collect(),
            printed_disagreements: report
                .printed_disagreements
                .iter()
                .map(|d| DiscrepancyWire {
                    kind: d.kind(),
                    g0: d.g0,
                    k: d.k,
                    i: d.i,
                    l: d.l,
                    p: d.p,
                    q: d.q,
                    printed: d.printed.to_string(),
                    reference: d.reference.to_string(),
                })
                .collect(),
            records: report.records.iter().map(record_wire).collect(),
        })),
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = report
                .records
                .iter()
                .map(|r| {
                    vec![
                        r.g0.to_string(),
                        r.k.to_string(),
                        r.i.to_string(),
                        r.l.to_string(),
                        r.p.to_string(),
                        r.q.to_string(),
                        r.corrected.to_string(),
                        r.structural.to_string(),
                        r.census.to_string(),
                        r.printed.to_string(),
                        r.agree.to_string(),
                    ]
                })
                .collect();
            Ok(csv_table(
                &[
                    "g0",
                    "k",
                    "i",
                    "l",
                    "p",
                    "q",
                    "corrected",
                    "structural",
                    "census",
                    "printed",
                    "agree",
                ],
                &rows,
            ))
        }
        OutputFormat::Table => {
            let mut out = String::new();
            out.push_str(&format!(
                "verification sweep: g0 <= {}, k <= {} ({} cells)\n",
                report.g0_max, report.k_max, report.cells
            ));
            out.push_str(&format!(
                "hodge slots compared: {}\n",
                report.instances_checked
            ));
            let mismatches: Vec<_> = report.route_mismatches().collect();
            if mismatches.is_empty() {
                out.push_str("route agreement: corrected = structural = census everywhere\n");
            } else {
                out.push_str(&format!(
                    "route agreement: FAILED at {} slots\n",
                    mismatches.len()
                ));
                let rows: Vec<Vec<String>> = mismatches
                    .iter()
                    .map(|r| {
                        vec![
                            r.g0.to_string(),
                            r.k.to_string(),
                            r.i.to_string(),
                            r.l.to_string(),
                            r.p.to_string(),
                            r.q.to_string(),
                            r.corrected.to_string(),
                            r.structural.to_string(),
                            r.census.to_string(),
                        ]
                    })
                    .collect();
                out.push_str(&columns(
                    &["g0", "k", "i", "l", "p", "q", "corrected", "structural", "census"],
                    &rows,
                ));
            }
            out.push_str(&format!(
                "printed-formula disagreements: {}\n",
                report.printed_disagreements.len()
            ));
            if !report.printed_disagreements.is_empty() {
                let rows: Vec<Vec<String>> = report
                    .printed_disagreements
                    .iter()
                    .map(|d| {
                        vec![
                            d.kind().to_string(),
                            d.g0.to_string(),
                            d.k.to_string(),
                            d.i.to_string(),
                            d.l.to_string(),
                            d.p.map_or_else(|| "-".into(), |p| p.to_string()),
                            d.q.map_or_else(|| "-".into(), |q| q.to_string()),
                            d.printed.to_string(),
                            d.reference.to_string(),
                        ]
                    })
                    .collect();
                out.push_str(&columns(
                    &["kind", "g0", "k", "i", "l", "p", "q", "printed", "reference"],
                    &rows,
                ));
            }
            out.push_str(if mismatches.is_empty() {
                "verdict: VERIFIED\n"
            } else {
                "verdict: FAILED\n"
            });
            Ok(out)
        }
    }
}

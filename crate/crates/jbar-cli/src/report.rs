//! The cross-route verification sweep.
//!
//! For every parameter cell `(g0, k)` in the sweep this computes the
//! census table once and compares, over the full index rectangle
//! (one degree past the top, so spurious nonzeros cannot hide), the
//! corrected closed form, the structural Künneth table and the census
//! at every Hodge slot `(i, l, p, q)`. Route disagreement means an
//! implementation bug and fails verification. Separately, the
//! as-printed closed forms are evaluated at every weight slot `(i, l)`
//! and every Hodge slot and their disagreements with the census are
//! collected into the errata report — those are expected, are part of
//! the output, and do not fail verification.

use num_bigint::BigUint;
use num_traits::Zero;

use jbar_core::census::{kunneth_census, CensusError};
use jbar_core::closed_form::{self, CurveParams};
use jbar_core::table::MixedHodgeTable;

use crate::parallel::map_indexed;

/// One compared Hodge slot where at least one route is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceRecord {
    pub g0: u32,
    pub k: u32,
    pub i: u32,
    pub l: u32,
    pub p: u32,
    pub q: u32,
    pub corrected: BigUint,
    pub structural: BigUint,
    pub census: BigUint,
    pub printed: BigUint,
    /// corrected == structural == census
    pub agree: bool,
}

/// One slot where an as-printed formula disagrees with the census.
/// Weight-level entries (`weight_printed`) carry no `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub g0: u32,
    pub k: u32,
    pub i: u32,
    pub l: u32,
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub printed: BigUint,
    pub reference: BigUint,
}

impl Discrepancy {
    pub fn kind(&self) -> &'static str {
        if self.p.is_some() {
            "hodge"
        } else {
            "weight"
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub g0_max: u32,
    pub k_max: u32,
    pub cells: u32,
    /// Hodge slots compared, including the all-zero ones.
    pub instances_checked: u64,
    /// Slots where some route is nonzero, in (g0, k, i, l, p) order.
    pub records: Vec<InstanceRecord>,
    /// Printed-formula errata, same order; does not affect the verdict.
    pub printed_disagreements: Vec<Discrepancy>,
}

impl VerificationReport {
    pub fn all_routes_agree(&self) -> bool {
        self.records.iter().all(|r| r.agree)
    }

    pub fn route_mismatches(&self) -> impl Iterator<Item = &InstanceRecord> {
        self.records.iter().filter(|r| !r.agree)
    }
}

struct CellReport {
    records: Vec<InstanceRecord>,
    printed_disagreements: Vec<Discrepancy>,
    instances: u64,
}

/// Sweeps all `g0 <= g0_max`, `k <= k_max`; cells may be checked on
/// `workers` threads, and the report is assembled in cell order, so the
/// result does not depend on the worker count.
pub fn run_sweep(
    g0_max: u32,
    k_max: u32,
    cap: u64,
    workers: usize,
) -> Result<VerificationReport, CensusError> {
    let cells: Vec<(u32, u32)> = (0..=g0_max)
        .flat_map(|g0| (0..=k_max).map(move |k| (g0, k)))
        .collect();
    let outcomes = map_indexed(&cells, workers, |&(g0, k)| check_cell(g0, k, cap));

    let mut report = VerificationReport {
        g0_max,
        k_max,
        cells: cells.len() as u32,
        instances_checked: 0,
        records: Vec::new(),
        printed_disagreements: Vec::new(),
    };
    for outcome in outcomes {
        let cell = outcome?;
        report.instances_checked += cell.instances;
        report.records.extend(cell.records);
        report
            .printed_disagreements
            .extend(cell.printed_disagreements);
    }
    Ok(report)
}

fn check_cell(g0: u32, k: u32, cap: u64) -> Result<CellReport, CensusError> {
    let census = kunneth_census(g0, k, cap)?;
    let structural = MixedHodgeTable::compactified_jacobian(g0, k);
    let params = CurveParams::new(g0, k);
    // One past the top degree, so vanishing outside the support is
    // checked too.
    let top = i64::from(params.top_degree()) + 1;

    let mut cell = CellReport {
        records: Vec::new(),
        printed_disagreements: Vec::new(),
        instances: 0,
    };
    for i in 0..=top {
        for l in 0..=top {
            let weight_printed = closed_form::weight_printed(params, i, l);
            let weight_reference = census.weight_dim(i, l);
            if weight_printed != weight_reference {
                cell.printed_disagreements.push(Discrepancy {
                    g0,
                    k,
                    i: i as u32,
                    l: l as u32,
                    p: None,
                    q: None,
                    printed: weight_printed,
                    reference: weight_reference,
                });
            }
            for p in 0..=l {
                let q = l - p;
                cell.instances += 1;
                let corrected = closed_form::hodge_corrected(params, i, l, p, q);
                let structural_dim = structural.hodge_number(i, p, q);
                let census_dim = census.hodge_number(i, p, q);
                let printed = closed_form::hodge_printed(params, i, l, p, q);
                if printed != census_dim {
                    cell.printed_disagreements.push(Discrepancy {
                        g0,
                        k,
                        i: i as u32,
                        l: l as u32,
                        p: Some(p as u32),
                        q: Some(q as u32),
                        printed: printed.clone(),
                        reference: census_dim.clone(),
                    });
                }
                let zero =
                    corrected.is_zero() && structural_dim.is_zero() && census_dim.is_zero() && printed.is_zero();
                if !zero {
                    let agree = corrected == structural_dim && structural_dim == census_dim;
                    cell.records.push(InstanceRecord {
                        g0,
                        k,
                        i: i as u32,
                        l: l as u32,
                        p: p as u32,
                        q: q as u32,
                        corrected,
                        structural: structural_dim,
                        census: census_dim,
                        printed,
                        agree,
                    });
                }
            }
        }
    }
    Ok(cell)
}

//! Combinatorial census of the stratification of the compactified
//! Jacobian by successive singular loci.
//!
//! A point lies in the depth-`r` stratum when the corresponding sheaf
//! fails to be locally free at exactly `r` of the `k` nodes; there the
//! space looks like a product of `r` normal crossings
//! (`C[[u1,v1,...]]/(u1*v1,...)`). Upstream, in the normalisation of the
//! family, a stratum piece is indexed by the size-`r` support set
//! together with a choice of one of the two section divisors over each
//! supported node; the quotient map identifies all `2^r` choices over a
//! fixed support, which is why each downstream point has exactly `2^r`
//! preimages.
//!
//! Records here are index sets, not claimed connected components: the
//! quotient's components are not part of this census.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

/// One stratum of the census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumRecord {
    /// Sorted node indices from `1..=k` where local freeness fails.
    pub support: Vec<u32>,
    /// For upstream strata: which of the two section divisors is chosen
    /// over each supported node (values 1 or 2, domain exactly the
    /// support). Absent downstream, where the quotient has identified
    /// the choices.
    pub labeling: Option<BTreeMap<u32, u8>>,
    /// Equals the support size.
    pub codimension: u32,
    /// Complete local ring of the ambient space along this stratum.
    pub local_model: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrataError {
    CodimensionOutOfRange { k: u32, r: u32 },
}

impl fmt::Display for StrataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrataError::CodimensionOutOfRange { k, r } => {
                write!(f, "codimension {r} out of range for {k} nodes")
            }
        }
    }
}

impl core::error::Error for StrataError {}

/// Label of the complete local ring along a depth-`r` stratum: a product
/// of `r` normal crossings, `"smooth"` when `r = 0`. A string label only
/// — no commutative algebra happens here.
pub fn local_model(r: u32) -> String {
    if r == 0 {
        return String::from("smooth");
    }
    let vars: Vec<String> = (1..=r)
        .flat_map(|i| [alloc::format!("u{i}"), alloc::format!("v{i}")])
        .collect();
    let relations: Vec<String> = (1..=r).map(|i| alloc::format!("u{i}*v{i}")).collect();
    alloc::format!("C[[{}]]/({})", vars.join(","), relations.join(", "))
}

/// Number of distinct upstream objects inducing the same sheaf that is
/// non-free at `r` nodes: `2^r`.
pub fn gpb_fiber_count(r: u32) -> BigUint {
    BigUint::one() << r
}

/// Upstream census at codimension `r`: every size-`r` support set paired
/// with every labeling of its nodes, `C(k,r) * 2^r` records in
/// lexicographic (support, labeling) order.
pub fn enumerate_strata_upstream(k: u32, r: u32) -> Result<Vec<StratumRecord>, StrataError> {
    if r > k {
        return Err(StrataError::CodimensionOutOfRange { k, r });
    }
    let model = local_model(r);
    let mut records = Vec::new();
    for support in combinations(k, r) {
        for code in 0u64..(1 << r) {
            let labeling: BTreeMap<u32, u8> = support
                .iter()
                .enumerate()
                .map(|(pos, &node)| (node, 1 + ((code >> (r as usize - 1 - pos)) & 1) as u8))
                .collect();
            records.push(StratumRecord {
                support: support.clone(),
                labeling: Some(labeling),
                codimension: r,
                local_model: model.clone(),
            });
        }
    }
    Ok(records)
}

/// Downstream census at codimension `r`: one record per size-`r`
/// support set (the quotient identifies the `2^r` labelings), `C(k,r)`
/// records in lexicographic support order.
pub fn enumerate_strata_downstream(k: u32, r: u32) -> Result<Vec<StratumRecord>, StrataError> {
    if r > k {
        return Err(StrataError::CodimensionOutOfRange { k, r });
    }
    let model = local_model(r);
    Ok(combinations(k, r)
        .into_iter()
        .map(|support| StratumRecord {
            support,
            labeling: None,
            codimension: r,
            local_model: model.clone(),
        })
        .collect())
}

/// Size-`r` subsets of `{1..=k}` in lexicographic order.
fn combinations(k: u32, r: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if r == 0 {
        out.push(Vec::new());
        return out;
    }
    if r > k {
        return out;
    }
    let mut current: Vec<u32> = (1..=r).collect();
    loop {
        out.push(current.clone());
        // rightmost position that can still advance
        let mut pos = r as usize;
        while pos > 0 && current[pos - 1] == k - (r - pos as u32) {
            pos -= 1;
        }
        if pos == 0 {
            return out;
        }
        current[pos - 1] += 1;
        for j in pos..r as usize {
            current[j] = current[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_model_labels() {
        assert_eq!(local_model(0), "smooth");
        assert_eq!(local_model(1), "C[[u1,v1]]/(u1*v1)");
        assert_eq!(local_model(2), "C[[u1,v1,u2,v2]]/(u1*v1, u2*v2)");
    }

    #[test]
    fn fiber_counts() {
        assert_eq!(gpb_fiber_count(0), BigUint::from(1u32));
        assert_eq!(gpb_fiber_count(1), BigUint::from(2u32));
        assert_eq!(gpb_fiber_count(5), BigUint::from(32u32));
    }

    #[test]
    fn upstream_counts() {
        assert_eq!(enumerate_strata_upstream(2, 1).unwrap().len(), 4);
        assert_eq!(enumerate_strata_upstream(3, 0).unwrap().len(), 1);
        assert_eq!(enumerate_strata_upstream(3, 3).unwrap().len(), 8);
    }

    #[test]
    fn downstream_counts() {
        assert_eq!(enumerate_strata_downstream(2, 1).unwrap().len(), 2);
        assert_eq!(enumerate_strata_downstream(1, 1).unwrap().len(), 1);
        assert_eq!(enumerate_strata_downstream(4, 2).unwrap().len(), 6);
    }

    #[test]
    fn upstream_order_is_lexicographic() {
        let records = enumerate_strata_upstream(2, 1).unwrap();
        let flat: Vec<(Vec<u32>, Vec<u8>)> = records
            .iter()
            .map(|rec| {
                (
                    rec.support.clone(),
                    rec.labeling.as_ref().unwrap().values().copied().collect(),
                )
            })
            .collect();
        assert_eq!(
            flat,
            [
                (alloc::vec![1], alloc::vec![1]),
                (alloc::vec![1], alloc::vec![2]),
                (alloc::vec![2], alloc::vec![1]),
                (alloc::vec![2], alloc::vec![2]),
            ]
        );
    }

    #[test]
    fn record_invariants() {
        for rec in enumerate_strata_upstream(4, 2).unwrap() {
            assert_eq!(rec.codimension as usize, rec.support.len());
            let labeling = rec.labeling.as_ref().unwrap();
            let domain: Vec<u32> = labeling.keys().copied().collect();
            assert_eq!(domain, rec.support);
            assert!(labeling.values().all(|&v| v == 1 || v == 2));
        }
        for rec in enumerate_strata_downstream(4, 2).unwrap() {
            assert!(rec.labeling.is_none());
            assert_eq!(rec.codimension, 2);
        }
    }

    #[test]
    fn totals_and_fiber_ratio() {
        for k in 0..6u32 {
            let mut upstream = 0u64;
            let mut downstream = 0u64;
            for r in 0..=k {
                let up = enumerate_strata_upstream(k, r).unwrap().len() as u64;
                let down = enumerate_strata_downstream(k, r).unwrap().len() as u64;
                assert_eq!(
                    BigUint::from(up),
                    BigUint::from(down) * gpb_fiber_count(r),
                    "k={k} r={r}"
                );
                upstream += up;
                downstream += down;
            }
            assert_eq!(upstream, 3u64.pow(k), "k={k}");
            assert_eq!(downstream, 2u64.pow(k), "k={k}");
        }
    }

    #[test]
    fn census_is_stable() {
        assert_eq!(
            enumerate_strata_upstream(3, 2).unwrap(),
            enumerate_strata_upstream(3, 2).unwrap()
        );
    }

    #[test]
    fn out_of_range_rejected() {
        assert_eq!(
            enumerate_strata_upstream(2, 3).unwrap_err(),
            StrataError::CodimensionOutOfRange { k: 2, r: 3 }
        );
        assert!(enumerate_strata_downstream(0, 1).is_err());
    }
}

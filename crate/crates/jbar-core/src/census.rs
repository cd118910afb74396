//! Brute-force census of the Künneth basis of `H*(J_0 x R^k)`.
//!
//! This is the enumeration route: it walks every basis element of the
//! product cohomology exactly once, reads off its degree, weight and
//! Hodge type, and tallies. A basis element is a [`GeneratorChoice`]: a
//! subset of the `g0` holomorphic and a subset of the `g0`
//! antiholomorphic degree-one torus generators, plus one of
//! `H^0, H^1, H^2` of the one-nodal rational curve for each of the `k`
//! factors. No binomial coefficient appears anywhere on this path — that
//! is the point; it is what makes the census an independent check on the
//! closed-form and tensor routes.
//!
//! The census over a choice space of size `4^g0 * 3^k` is additive over
//! any partition of the (flattened) choice index space, so it can be
//! split across workers; [`census_range`] computes the tally of one
//! index interval and the merge is plain table addition, which makes the
//! result independent of the partition.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::table::{HodgePiece, MixedHodgeTable};

/// Default bound on the number of basis elements a single census call
/// may enumerate.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 28;

/// Resource errors from the census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CensusError {
    /// The choice space `4^g0 * 3^k` exceeds the configured cap.
    CapExceeded {
        g0: u32,
        k: u32,
        required: u128,
        cap: u64,
    },
    /// The choice space does not even fit the 64-bit index space.
    TooLarge { g0: u32, k: u32 },
}

impl fmt::Display for CensusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusError::CapExceeded {
                g0,
                k,
                required,
                cap,
            } => write!(
                f,
                "census of g0={g0}, k={k} needs {required} basis choices, over the cap of {cap}"
            ),
            CensusError::TooLarge { g0, k } => write!(
                f,
                "census of g0={g0}, k={k} exceeds the 64-bit choice index space"
            ),
        }
    }
}

impl core::error::Error for CensusError {}

/// Which cohomology class of the one-nodal rational curve a product
/// factor contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RClass {
    H0,
    H1,
    H2,
}

impl RClass {
    pub fn degree(self) -> u32 {
        match self {
            RClass::H0 => 0,
            RClass::H1 => 1,
            RClass::H2 => 2,
        }
    }

    /// `H^0` and `H^1` sit in weight 0; `H^2` is pure of weight 2.
    pub fn weight(self) -> u32 {
        match self {
            RClass::H0 | RClass::H1 => 0,
            RClass::H2 => 2,
        }
    }

    fn from_digit(d: u8) -> Self {
        match d {
            0 => RClass::H0,
            1 => RClass::H1,
            _ => RClass::H2,
        }
    }
}

/// One Künneth basis element of `H*(J_0 x R^k)`.
///
/// `torus_holo` and `torus_anti` are bitmasks over the torus generators
/// `1..=g0` (bit `i-1` set means generator `i` is chosen); the former
/// picks type-`(1,0)` generators, the latter type-`(0,1)`. `r_choices`
/// has one entry per node factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorChoice {
    pub torus_holo: u64,
    pub torus_anti: u64,
    pub r_choices: Vec<RClass>,
}

impl GeneratorChoice {
    /// Decodes the flat census index: low `2*g0` bits are the two torus
    /// masks, the rest is the base-3 code of the node factor choices.
    pub fn from_index(g0: u32, k: u32, index: u64) -> Self {
        let torus_holo = index & mask_low(g0);
        let torus_anti = (index >> g0) & mask_low(g0);
        let mut code = index >> (2 * g0);
        let mut r_choices = Vec::with_capacity(k as usize);
        for _ in 0..k {
            r_choices.push(RClass::from_digit((code % 3) as u8));
            code /= 3;
        }
        Self {
            torus_holo,
            torus_anti,
            r_choices,
        }
    }

    /// The graded slot this basis element lives in. Degrees and weights
    /// of the chosen generators add; each chosen torus generator
    /// contributes `(1,0)` or `(0,1)` to the type and each `H^2` factor
    /// contributes `(1,1)`.
    pub fn hodge_piece(&self) -> HodgePiece {
        let a = self.torus_holo.count_ones();
        let b = self.torus_anti.count_ones();
        let rdeg: u32 = self.r_choices.iter().map(|c| c.degree()).sum();
        let rwt: u32 = self.r_choices.iter().map(|c| c.weight()).sum();
        let h2 = self
            .r_choices
            .iter()
            .filter(|c| **c == RClass::H2)
            .count() as u32;
        piece_from_counts(a, b, rdeg, rwt, h2)
    }
}

fn mask_low(bits: u32) -> u64 {
    if bits == 0 {
        0
    } else {
        u64::MAX >> (64 - bits)
    }
}

fn piece_from_counts(a: u32, b: u32, rdeg: u32, rwt: u32, h2: u32) -> HodgePiece {
    HodgePiece::new(a + b + rdeg, a + b + rwt, a + h2, b + h2)
        .expect("census weight bookkeeping keeps p + q = w")
}

/// Size of the choice space, `4^g0 * 3^k`; `None` on 128-bit overflow.
pub fn choice_count(g0: u32, k: u32) -> Option<u128> {
    let torus = 1u128.checked_shl(2 * g0)?;
    let nodes = 3u128.checked_pow(k)?;
    torus.checked_mul(nodes)
}

/// Validates the enumeration bound and returns the total choice count
/// as a usable 64-bit index limit.
pub fn checked_total(g0: u32, k: u32, cap: u64) -> Result<u64, CensusError> {
    let required = choice_count(g0, k).ok_or(CensusError::TooLarge { g0, k })?;
    if required > u128::from(cap) {
        return Err(CensusError::CapExceeded {
            g0,
            k,
            required,
            cap,
        });
    }
    Ok(required as u64)
}

/// Full census: enumerates all `4^g0 * 3^k` basis choices and tallies
/// their slots, provided the choice space is within `cap`.
pub fn kunneth_census(g0: u32, k: u32, cap: u64) -> Result<MixedHodgeTable, CensusError> {
    let total = checked_total(g0, k, cap)?;
    Ok(census_range(g0, k, 0, total).with_label(alloc::format!("census g0={g0} k={k}")))
}

/// Census of the flat index interval `lo..hi`.
///
/// Partial tallies merge by [`MixedHodgeTable::direct_sum`]; any
/// partition of `0..total` reproduces the full census exactly. The
/// caller is responsible for the enumeration bound (see
/// [`checked_total`]); `hi` beyond the choice space panics.
pub fn census_range(g0: u32, k: u32, lo: u64, hi: u64) -> MixedHodgeTable {
    let total = checked_total(g0, k, u64::MAX).expect("choice space fits 64-bit indices");
    assert!(lo <= hi && hi <= total, "census range {lo}..{hi} out of bounds");

    let mut tally = Tally::new(g0, k);
    let mask_count = 1u64 << (2 * g0);
    let mask_bits = mask_low(2 * g0);

    // Odometer over the base-3 node code, advanced once per block of
    // 4^g0 consecutive indices; the torus masks are the low bits.
    let mut digits = vec![0u8; k as usize];
    let mut code = lo >> (2 * g0);
    let (mut rdeg, mut rwt, mut h2) = (0u32, 0u32, 0u32);
    for d in digits.iter_mut() {
        *d = (code % 3) as u8;
        code /= 3;
        rdeg += u32::from(*d);
        if *d == 2 {
            rwt += 2;
            h2 += 1;
        }
    }

    let mut idx = lo;
    while idx < hi {
        let block_end = ((idx / mask_count) + 1).saturating_mul(mask_count);
        let stop = block_end.min(hi);
        for m in (idx & mask_bits)..((idx & mask_bits) + (stop - idx)) {
            let a = (m & mask_low(g0)).count_ones();
            let b = (m >> g0).count_ones();
            tally.bump(a + b + rdeg, a + b + rwt, a + h2, b + h2);
        }
        idx = stop;
        if idx < hi {
            bump_code(&mut digits, &mut rdeg, &mut rwt, &mut h2);
        }
    }

    tally.into_table()
}

/// Advance the base-3 odometer by one, maintaining the running degree,
/// weight and `H^2` counts.
fn bump_code(digits: &mut [u8], rdeg: &mut u32, rwt: &mut u32, h2: &mut u32) {
    for d in digits.iter_mut() {
        match *d {
            0 => {
                *d = 1;
                *rdeg += 1;
                return;
            }
            1 => {
                *d = 2;
                *rdeg += 1;
                *rwt += 2;
                *h2 += 1;
                return;
            }
            _ => {
                *d = 0;
                *rdeg -= 2;
                *rwt -= 2;
                *h2 -= 1;
            }
        }
    }
}

/// Dense accumulator over the bounded slot rectangle; one add per choice.
struct Tally {
    counts: Vec<u64>,
    deg_bound: u32,
    type_bound: u32,
}

impl Tally {
    fn new(g0: u32, k: u32) -> Self {
        let deg_bound = 2 * (g0 + k) + 1;
        let type_bound = g0 + k + 1;
        Self {
            counts: vec![0; (deg_bound * deg_bound * type_bound * type_bound) as usize],
            deg_bound,
            type_bound,
        }
    }

    #[inline]
    fn bump(&mut self, deg: u32, wt: u32, p: u32, q: u32) {
        let idx = ((deg * self.deg_bound + wt) * self.type_bound + p) * self.type_bound + q;
        self.counts[idx as usize] += 1;
    }

    fn into_table(self) -> MixedHodgeTable {
        let mut pieces = Vec::new();
        for deg in 0..self.deg_bound {
            for wt in 0..self.deg_bound {
                for p in 0..self.type_bound {
                    for q in 0..self.type_bound {
                        let idx =
                            ((deg * self.deg_bound + wt) * self.type_bound + p) * self.type_bound
                                + q;
                        let count = self.counts[idx as usize];
                        if count > 0 {
                            pieces.push((
                                HodgePiece::new(deg, wt, p, q)
                                    .expect("tallied slots satisfy p + q = w"),
                                BigUint::from(count),
                            ));
                        }
                    }
                }
            }
        }
        MixedHodgeTable::from_pieces(pieces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_of_single_nodal_curve() {
        let t = kunneth_census(0, 1, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(t, MixedHodgeTable::nodal_rational());
    }

    #[test]
    fn census_of_torus() {
        let t = kunneth_census(1, 0, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(t, MixedHodgeTable::jacobian(1));
    }

    #[test]
    fn census_two_nodes_by_hand() {
        // Nine choices: degrees (0; 1,1; 2,2,2; 3,3; 4), with the two
        // degree-2 weight-2 classes coming from an H^2 on either factor.
        let t = kunneth_census(0, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        let betti: Vec<u64> = t
            .poincare_polynomial()
            .iter()
            .map(|b| u64::try_from(b).unwrap())
            .collect();
        assert_eq!(betti, vec![1, 2, 3, 2, 1]);
        assert_eq!(t.weight_dim(2, 2), BigUint::from(2u32));
    }

    #[test]
    fn census_agrees_with_choice_iteration() {
        let g0 = 2;
        let k = 2;
        let total = checked_total(g0, k, DEFAULT_ENUMERATION_CAP).unwrap();
        let tallied = MixedHodgeTable::from_pieces(
            (0..total).map(|i| {
                (
                    GeneratorChoice::from_index(g0, k, i).hodge_piece(),
                    BigUint::from(1u32),
                )
            }),
        );
        assert_eq!(
            tallied,
            kunneth_census(g0, k, DEFAULT_ENUMERATION_CAP).unwrap()
        );
    }

    #[test]
    fn census_is_partition_independent() {
        let g0 = 2;
        let k = 3;
        let total = checked_total(g0, k, DEFAULT_ENUMERATION_CAP).unwrap();
        let full = kunneth_census(g0, k, DEFAULT_ENUMERATION_CAP).unwrap();
        for split in [1, 7, total / 3, total / 2, total - 1] {
            let merged = census_range(g0, k, 0, split).direct_sum(&census_range(g0, k, split, total));
            assert_eq!(merged, full, "split at {split}");
        }
    }

    #[test]
    fn census_is_conjugation_symmetric() {
        let t = kunneth_census(2, 1, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(t.is_conjugation_symmetric());
    }

    #[test]
    fn cap_is_enforced_and_named() {
        let err = kunneth_census(0, 1, 2).unwrap_err();
        assert_eq!(
            err,
            CensusError::CapExceeded {
                g0: 0,
                k: 1,
                required: 3,
                cap: 2
            }
        );
        let msg = alloc::format!("{err}");
        assert!(msg.contains("cap of 2"));
        assert!(msg.contains("3 basis choices"));
    }

    #[test]
    fn choice_count_overflow_is_reported() {
        // 4^40 fits in 128 bits but not 64: over any u64 cap.
        assert!(matches!(
            checked_total(40, 0, u64::MAX),
            Err(CensusError::CapExceeded { .. })
        ));
        // 4^100 does not even fit the 128-bit count.
        assert!(matches!(
            checked_total(100, 0, u64::MAX),
            Err(CensusError::TooLarge { .. })
        ));
    }

    #[test]
    fn total_dimension_is_4_pow_g0_times_3_pow_k() {
        for g0 in 0..3u32 {
            for k in 0..4u32 {
                let t = kunneth_census(g0, k, DEFAULT_ENUMERATION_CAP).unwrap();
                let expected = 4u64.pow(g0) * 3u64.pow(k);
                assert_eq!(t.total_dimension(), BigUint::from(expected));
            }
        }
    }
}

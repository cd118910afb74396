//! Property tests for the table algebra, the census partition law and
//! the chain-complex machinery.

use num_bigint::BigUint;
use proptest::prelude::*;

use jbar_core::census::{census_range, checked_total, kunneth_census, GeneratorChoice};
use jbar_core::homology::{kunneth_check, scrambled_complex};
use jbar_core::table::{HodgePiece, MixedHodgeTable};

fn arb_piece() -> impl Strategy<Value = HodgePiece> {
    (0u32..6, 0u32..4, 0u32..4).prop_map(|(extra, p, q)| HodgePiece::of_type(p + q + extra, p, q))
}

fn arb_table() -> impl Strategy<Value = MixedHodgeTable> {
    proptest::collection::vec((arb_piece(), 0u64..6), 0..8).prop_map(|pairs| {
        MixedHodgeTable::from_pieces(
            pairs
                .into_iter()
                .map(|(piece, mult)| (piece, BigUint::from(mult))),
        )
    })
}

proptest! {
    #[test]
    fn tensor_is_bilinear(a in arb_table(), b in arb_table(), c in arb_table()) {
        prop_assert_eq!(
            a.direct_sum(&b).tensor(&c),
            a.tensor(&c).direct_sum(&b.tensor(&c))
        );
    }

    #[test]
    fn tensor_is_commutative(a in arb_table(), b in arb_table()) {
        prop_assert_eq!(a.tensor(&b), b.tensor(&a));
    }

    #[test]
    fn tensor_is_associative(a in arb_table(), b in arb_table(), c in arb_table()) {
        prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
    }

    #[test]
    fn unit_is_two_sided(a in arb_table()) {
        let unit = MixedHodgeTable::unit();
        prop_assert_eq!(a.tensor(&unit), a.clone());
        prop_assert_eq!(unit.tensor(&a), a);
    }

    #[test]
    fn weight_dims_refine_betti(a in arb_table()) {
        for i in 0..=a.max_degree().map_or(0, i64::from) {
            let by_weight: BigUint = (0..=2 * i).map(|l| a.weight_dim(i, l)).sum();
            prop_assert_eq!(by_weight, a.betti(i));
        }
    }

    #[test]
    fn hodge_numbers_refine_weight_dims(a in arb_table()) {
        for (piece, _) in a.iter() {
            let i = i64::from(piece.degree());
            let l = i64::from(piece.weight());
            let by_type: BigUint = (0..=l).map(|p| a.hodge_number(i, p, l - p)).sum();
            prop_assert_eq!(by_type, a.weight_dim(i, l));
        }
    }

    #[test]
    fn census_is_independent_of_partition(
        g0 in 0u32..3,
        k in 0u32..4,
        cuts in proptest::collection::vec(0.0f64..1.0, 0..4),
    ) {
        let total = checked_total(g0, k, 1 << 28).unwrap();
        let mut bounds: Vec<u64> = cuts.iter().map(|c| (c * total as f64) as u64).collect();
        bounds.push(0);
        bounds.push(total);
        bounds.sort_unstable();
        let merged = bounds
            .windows(2)
            .map(|w| census_range(g0, k, w[0], w[1]))
            .fold(MixedHodgeTable::empty(), |acc, part| acc.direct_sum(&part));
        prop_assert_eq!(merged, kunneth_census(g0, k, 1 << 28).unwrap());
    }

    #[test]
    fn census_agrees_with_per_choice_tally(g0 in 0u32..3, k in 0u32..3) {
        let total = checked_total(g0, k, 1 << 28).unwrap();
        let tallied = MixedHodgeTable::from_pieces((0..total).map(|idx| {
            (
                GeneratorChoice::from_index(g0, k, idx).hodge_piece(),
                BigUint::from(1u32),
            )
        }));
        prop_assert_eq!(tallied, kunneth_census(g0, k, 1 << 28).unwrap());
    }

    #[test]
    fn scrambled_complexes_obey_kunneth(
        seed_a in 0u64..1 << 32,
        seed_b in 0u64..1 << 32,
        betti_a in proptest::collection::vec(0usize..3, 1..4),
        betti_b in proptest::collection::vec(0usize..3, 1..4),
    ) {
        let pairs_a = vec![1; betti_a.len().saturating_sub(1)];
        let pairs_b = vec![2; betti_b.len().saturating_sub(1)];
        let a = scrambled_complex(&betti_a, &pairs_a, 30, seed_a);
        let b = scrambled_complex(&betti_b, &pairs_b, 30, seed_b);
        // Scrambling preserves the prescribed homology...
        prop_assert_eq!(a.betti(), betti_a);
        prop_assert_eq!(b.betti(), betti_b);
        // ...and the product complex has the convolved Betti numbers.
        prop_assert!(kunneth_check(&a, &b, 64).unwrap());
    }
}

//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `cargo test --test acceptance -- --nocapture` to see
//! them). Everything is exact equality of arbitrary-precision integers;
//! there are no tolerances anywhere.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Zero;

use jbar_core::census::{kunneth_census, DEFAULT_ENUMERATION_CAP};
use jbar_core::closed_form::{self, CurveParams};
use jbar_core::homology::{
    kunneth_check, nodal_rational_model, scrambled_complex, torus_model,
};
use jbar_core::strata;
use jbar_core::table::MixedHodgeTable;

const SWEEP_G0: u32 = 4;
const SWEEP_K: u32 = 6;

fn criterion(number: u32, name: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("acceptance criterion {number} ({name}): PASS"),
        Err(payload) => {
            println!("acceptance criterion {number} ({name}): FAIL");
            resume_unwind(payload);
        }
    }
}

fn sweep_cells() -> impl Iterator<Item = (u32, u32)> {
    (0..=SWEEP_G0).flat_map(|g0| (0..=SWEEP_K).map(move |k| (g0, k)))
}

fn census(g0: u32, k: u32) -> MixedHodgeTable {
    kunneth_census(g0, k, DEFAULT_ENUMERATION_CAP).unwrap()
}

#[test]
fn criterion_1_master_sweep() {
    criterion(1, "three-route agreement on the master sweep", || {
        let started = Instant::now();
        for (g0, k) in sweep_cells() {
            let params = CurveParams::new(g0, k);
            let census = census(g0, k);
            let structural = MixedHodgeTable::compactified_jacobian(g0, k);
            // Full rectangle one degree past the top: agreement on the
            // support and vanishing off it.
            let top = i64::from(params.top_degree()) + 1;
            for i in 0..=top {
                for l in 0..=top {
                    for p in 0..=l {
                        let q = l - p;
                        let closed = closed_form::hodge_corrected(params, i, l, p, q);
                        let tensor = structural.hodge_number(i, p, q);
                        let counted = census.hodge_number(i, p, q);
                        assert_eq!(closed, tensor, "g0={g0} k={k} i={i} l={l} p={p} q={q}");
                        assert_eq!(tensor, counted, "g0={g0} k={k} i={i} l={l} p={p} q={q}");
                    }
                }
            }
        }
        let elapsed = started.elapsed();
        assert!(
            elapsed.as_secs() < 60,
            "master sweep took {elapsed:?}, budget is 60s single-threaded"
        );
    });
}

#[test]
fn criterion_2_betti_identities() {
    criterion(2, "Betti identities on the sweep", || {
        for (g0, k) in sweep_cells() {
            let params = CurveParams::new(g0, k);
            let table = census(g0, k);
            let top = params.top_degree();
            for i in 0..=i64::from(top) + 1 {
                assert_eq!(
                    closed_form::betti(params, i),
                    table.betti(i),
                    "g0={g0} k={k} i={i}"
                );
            }
            // palindromic around g0 + k
            for i in 0..=top {
                assert_eq!(
                    table.betti(i64::from(i)),
                    table.betti(i64::from(top - i)),
                    "g0={g0} k={k} i={i}"
                );
            }
            let total: BigUint = (0..=i64::from(top)).map(|i| table.betti(i)).sum();
            assert_eq!(total, BigUint::from(4u64.pow(g0) * 3u64.pow(k)));
            let expected_euler = if g0 == 0 { 1 } else { 0 };
            assert_eq!(
                table.euler_characteristic(),
                expected_euler.into(),
                "g0={g0} k={k}"
            );
        }
    });
}

#[test]
fn criterion_3_weight_identities() {
    criterion(3, "weight identities and odd-weight vanishing", || {
        for (g0, k) in sweep_cells() {
            let params = CurveParams::new(g0, k);
            let top = i64::from(params.top_degree()) + 1;
            for i in 0..=top {
                let by_weight: BigUint = (0..=top)
                    .map(|l| closed_form::weight_corrected(params, i, l))
                    .sum();
                assert_eq!(by_weight, closed_form::betti(params, i), "g0={g0} k={k} i={i}");
            }
        }
        for k in 0..=SWEEP_K {
            let powers = MixedHodgeTable::nodal_rational().power(k);
            for i in 0..=i64::from(2 * k) + 1 {
                for l in (1..=i64::from(2 * k) + 1).step_by(2) {
                    assert!(
                        powers.weight_dim(i, l).is_zero(),
                        "odd weight k={k} i={i} l={l}"
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_4_errata_detection() {
    criterion(4, "printed-formula errata are detected and reported", || {
        // weight formula as printed: 1, every other route: 2
        let p11 = CurveParams::new(1, 1);
        assert_eq!(closed_form::weight_printed(p11, 2, 2), BigUint::from(1u32));
        assert_eq!(census(1, 1).weight_dim(2, 2), BigUint::from(2u32));

        // Hodge formula as printed: 0, the torus h^{1,0}: 1
        let p10 = CurveParams::new(1, 0);
        assert!(closed_form::hodge_printed(p10, 1, 1, 1, 0).is_zero());
        assert_eq!(census(1, 0).hodge_number(1, 1, 0), BigUint::from(1u32));

        // verify must list both yet still exit 0
        let output = std::process::Command::new(env!("CARGO_BIN_EXE_jbar"))
            .args(["--format", "json", "verify"])
            .output()
            .expect("spawn jbar");
        assert_eq!(output.status.code(), Some(0), "verify exit code");
        let report: serde_json::Value =
            serde_json::from_slice(&output.stdout).expect("verify JSON");
        assert_eq!(report["all_routes_agree"], serde_json::Value::Bool(true));
        let listed = report["printed_disagreements"].as_array().unwrap();
        assert!(listed.iter().any(|d| d["kind"] == "weight"
            && d["g0"] == 1
            && d["k"] == 1
            && d["i"] == 2
            && d["l"] == 2
            && d["printed"] == "1"
            && d["reference"] == "2"));
        assert!(listed.iter().any(|d| d["kind"] == "hodge"
            && d["g0"] == 1
            && d["k"] == 0
            && d["i"] == 1
            && d["l"] == 1
            && d["p"] == 1
            && d["q"] == 0
            && d["printed"] == "0"
            && d["reference"] == "1"));
    });
}

#[test]
fn criterion_5_fixed_vectors() {
    criterion(5, "fixed Betti vectors", || {
        let expect = |g0: u32, k: u32, want: &[u64]| {
            for table in [
                census(g0, k),
                MixedHodgeTable::compactified_jacobian(g0, k),
            ] {
                let got: Vec<u64> = table
                    .poincare_polynomial()
                    .iter()
                    .map(|b| u64::try_from(b).unwrap())
                    .collect();
                assert_eq!(got, want, "g0={g0} k={k}");
            }
            let params = CurveParams::new(g0, k);
            for (i, &want_i) in want.iter().enumerate() {
                assert_eq!(
                    closed_form::betti(params, i as i64),
                    BigUint::from(want_i),
                    "g0={g0} k={k} i={i}"
                );
            }
        };
        expect(0, 1, &[1, 1, 1]);
        expect(0, 2, &[1, 2, 3, 2, 1]);
        expect(1, 1, &[1, 3, 4, 3, 1]);
    });
}

#[test]
fn criterion_6_chain_complex_oracle() {
    criterion(6, "chain-complex oracle", || {
        // Seeded randomized pairs with nonzero differentials.
        let mut trials = 0;
        for seed in 0..60u64 {
            let spread = |x: u64| (x % 3) as usize;
            let betti_a = vec![spread(seed), spread(seed / 3) + 1, spread(seed / 9)];
            let betti_b = vec![spread(seed / 2) + 1, spread(seed / 5)];
            let a = scrambled_complex(&betti_a, &[2, 1], 40, seed * 2 + 1);
            let b = scrambled_complex(&betti_b, &[2], 40, seed * 3 + 7);
            assert!(
                (1..a.dims().len()).any(|i| !a.differential(i).unwrap().is_zero()),
                "seed {seed}: left factor has zero differentials"
            );
            assert!(
                !b.differential(1).unwrap().is_zero(),
                "seed {seed}: right factor has zero differentials"
            );
            assert!(kunneth_check(&a, &b, 64).unwrap(), "seed {seed} (a, b)");
            assert!(kunneth_check(&b, &a, 64).unwrap(), "seed {seed} (b, a)");
            trials += 2;
        }
        assert!(trials >= 100);

        // Product of the cellular models matches the census Betti
        // numbers over the whole sweep.
        for (g0, k) in sweep_cells() {
            let mut complex = torus_model(g0);
            for _ in 0..k {
                complex = complex.tensor(&nodal_rational_model());
            }
            let expected: Vec<usize> = census(g0, k)
                .poincare_polynomial()
                .iter()
                .map(|b| usize::try_from(b).unwrap())
                .collect();
            assert_eq!(complex.betti(), expected, "g0={g0} k={k}");
        }
    });
}

#[test]
fn criterion_7_strata_census() {
    criterion(7, "strata census totals", || {
        let started = Instant::now();
        for k in 0..=8u32 {
            let mut upstream_total = BigUint::zero();
            let mut downstream_total = BigUint::zero();
            for r in 0..=k {
                let upstream = strata::enumerate_strata_upstream(k, r).unwrap().len();
                let downstream = strata::enumerate_strata_downstream(k, r).unwrap().len();
                assert_eq!(
                    BigUint::from(upstream),
                    BigUint::from(downstream) * strata::gpb_fiber_count(r),
                    "k={k} r={r}"
                );
                upstream_total += BigUint::from(upstream);
                downstream_total += BigUint::from(downstream);
            }
            assert_eq!(upstream_total, BigUint::from(3u64.pow(k)), "k={k}");
            assert_eq!(downstream_total, BigUint::from(2u64.pow(k)), "k={k}");
        }
        let elapsed = started.elapsed();
        assert!(elapsed.as_secs() < 1, "strata census took {elapsed:?}");
    });
}

#[test]
fn criterion_8_census_determinism() {
    criterion(8, "census determinism across worker counts", || {
        let max_workers = std::thread::available_parallelism().map_or(4, |n| n.get());
        let reference = jbar_cli::parallel::census_parallel(2, 3, DEFAULT_ENUMERATION_CAP, 1)
            .unwrap();
        let params = CurveParams::new(2, 3);
        let reference_bytes = jbar_cli::render::render_table_export(
            params,
            &reference,
            jbar_cli::OutputFormat::Json,
        )
        .unwrap();
        for workers in [1usize, 2, max_workers] {
            let table =
                jbar_cli::parallel::census_parallel(2, 3, DEFAULT_ENUMERATION_CAP, workers)
                    .unwrap();
            let bytes = jbar_cli::render::render_table_export(
                params,
                &table,
                jbar_cli::OutputFormat::Json,
            )
            .unwrap();
            assert_eq!(bytes, reference_bytes, "workers={workers}");
        }

        // End to end through the binary as well.
        let run_export = |workers: usize| {
            let output = std::process::Command::new(env!("CARGO_BIN_EXE_jbar"))
                .args([
                    "--normalization-genus",
                    "2",
                    "--nodes",
                    "3",
                    "--route",
                    "census",
                    "--format",
                    "json",
                    "--workers",
                    &workers.to_string(),
                    "hodge",
                ])
                .output()
                .expect("spawn jbar");
            assert_eq!(output.status.code(), Some(0));
            output.stdout
        };
        let one = run_export(1);
        assert_eq!(one, run_export(2), "1 vs 2 workers");
        assert_eq!(one, run_export(max_workers), "1 vs max workers");
    });
}

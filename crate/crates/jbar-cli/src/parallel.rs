//! Thread drivers for the census and the verification sweep.
//!
//! Both reductions are commutative and merged in a fixed order, so the
//! results are identical for any worker count.

use jbar_core::census::{census_range, checked_total, CensusError};
use jbar_core::table::MixedHodgeTable;

/// Census split into `workers` contiguous index ranges, one thread per
/// range, merged by table addition in range order.
pub fn census_parallel(
    g0: u32,
    k: u32,
    cap: u64,
    workers: usize,
) -> Result<MixedHodgeTable, CensusError> {
    let total = checked_total(g0, k, cap)?;
    let workers = workers.max(1).min(total.max(1) as usize);
    let table = if workers == 1 {
        census_range(g0, k, 0, total)
    } else {
        let chunk = total / workers as u64;
        let remainder = total % workers as u64;
        let bounds: Vec<(u64, u64)> = (0..workers as u64)
            .map(|w| {
                let lo = w * chunk + w.min(remainder);
                let hi = lo + chunk + u64::from(w < remainder);
                (lo, hi)
            })
            .collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = bounds
                .into_iter()
                .map(|(lo, hi)| scope.spawn(move || census_range(g0, k, lo, hi)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("census worker panicked"))
                .fold(MixedHodgeTable::empty(), |acc, part| acc.direct_sum(&part))
        })
    };
    Ok(table.with_label(format!("census g0={g0} k={k}")))
}

/// Runs `job` over the indexed inputs on `workers` threads and returns
/// the outputs in input order.
pub fn map_indexed<T, R, F>(inputs: &[T], workers: usize, job: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = workers.max(1).min(inputs.len().max(1));
    if workers == 1 {
        return inputs.iter().map(&job).collect();
    }
    let mut slots: Vec<Option<R>> = Vec::with_capacity(inputs.len());
    slots.resize_with(inputs.len(), || None);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let job = &job;
                scope.spawn(move || -> Vec<(usize, R)> {
                    inputs
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(idx, input)| (idx, job(input)))
                        .collect()
                })
            })
            .collect();
        for handle in handles {
            for (idx, result) in handle.join().expect("sweep worker panicked") {
                slots[idx] = Some(result);
            }
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.expect("worker filled every slot"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use jbar_core::census::kunneth_census;

    #[test]
    fn parallel_census_matches_serial_for_any_worker_count() {
        let serial = kunneth_census(2, 3, 1 << 28).unwrap();
        for workers in [1, 2, 3, 7, 64] {
            assert_eq!(
                census_parallel(2, 3, 1 << 28, workers).unwrap(),
                serial,
                "workers={workers}"
            );
        }
    }

    #[test]
    fn map_indexed_preserves_order() {
        let inputs: Vec<u64> = (0..37).collect();
        let doubled = map_indexed(&inputs, 5, |x| x * 2);
        assert_eq!(doubled, inputs.iter().map(|x| x * 2).collect::<Vec<_>>());
    }

    #[test]
    fn cap_errors_propagate() {
        assert!(census_parallel(0, 2, 3, 4).is_err());
    }
}

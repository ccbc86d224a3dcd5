//! Wynn's epsilon algorithm for accelerating partial sums of slowly
//! converging, sign-alternating series.

use crate::specfun::Complex;

/// Returns the extrapolated limit of `sums` and an error estimate.
///
/// Every even column of the epsilon table is a sequence of limit
/// estimates; the column whose two most recent entries agree best wins,
/// and their difference is the error estimate.
pub(crate) fn wynn_epsilon(sums: &[Complex]) -> (Complex, f64) {
    let n = sums.len();
    match n {
        0 => return (Complex::new(0.0, 0.0), f64::INFINITY),
        1 => return (sums[0], f64::INFINITY),
        _ => {}
    }
    let mut best = sums[n - 1];
    let mut best_err = (sums[n - 1] - sums[n - 2]).norm();

    let mut prev: Vec<Complex> = vec![Complex::new(0.0, 0.0); n + 1];
    let mut cur: Vec<Complex> = sums.to_vec();
    let mut k = 0;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for j in 0..cur.len() - 1 {
            let delta = cur[j + 1] - cur[j];
            if delta.norm() <= f64::MIN_POSITIVE * 1e3 {
                if j + 2 == cur.len() {
                    // The newest entries agree exactly.
                    return (cur[j + 1], 0.0);
                }
                return (best, best_err);
            }
            next.push(prev[j + 1] + delta.inv());
        }
        k += 1;
        prev = cur;
        cur = next;
        if k % 2 == 0 && cur.len() >= 2 {
            let m = cur.len();
            let err = (cur[m - 1] - cur[m - 2]).norm();
            if err.is_finite() && err < best_err {
                best = cur[m - 1];
                best_err = err;
            }
        }
    }
    (best, best_err)
}

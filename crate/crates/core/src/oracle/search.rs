//! Derivative-free local maximization used by the oracle optimizers.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization of `f` on `[lo, hi]` down to width `tol`.
/// Returns the best abscissa seen and its value.
pub(crate) fn golden_max(
    mut f: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64) {
    let mut a = hi - INV_PHI * (hi - lo);
    let mut b = lo + INV_PHI * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > tol {
        if fa >= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - INV_PHI * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + INV_PHI * (hi - lo);
            fb = f(b);
        }
    }
    if fa >= fb {
        (a, fa)
    } else {
        (b, fb)
    }
}

/// Cyclic coordinate ascent with golden-section line searches.
///
/// `half_widths` are the initial search radii per coordinate; radii shrink
/// to a few times the last move once the search settles. Stops when a full
/// sweep moves no coordinate by more than `tol`.
pub(crate) fn coordinate_ascent(
    mut f: impl FnMut(&[f64]) -> f64,
    mut x: Vec<f64>,
    mut value: f64,
    half_widths: &[f64],
    tol: f64,
    max_sweeps: usize,
) -> (Vec<f64>, f64) {
    let mut widths = half_widths.to_vec();
    for _ in 0..max_sweeps {
        let mut largest_move = 0.0f64;
        for i in 0..x.len() {
            let centre = x[i];
            let w = widths[i];
            let mut probe = x.clone();
            let (best, fbest) = golden_max(
                |t| {
                    probe[i] = t;
                    f(&probe)
                },
                centre - w,
                centre + w,
                tol,
            );
            let moved = if fbest > value {
                x[i] = best;
                value = fbest;
                (best - centre).abs()
            } else {
                0.0
            };
            largest_move = largest_move.max(moved);
            widths[i] = if moved > 0.9 * w {
                (2.0 * w).min(half_widths[i])
            } else {
                (4.0 * moved).max(8.0 * tol).min(half_widths[i])
            };
        }
        if largest_move <= tol {
            break;
        }
    }
    (x, value)
}

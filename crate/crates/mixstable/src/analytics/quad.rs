//! Adaptive Simpson quadrature on finite intervals.

/// Adaptive Simpson integration of `f` over `[a, b]`.
///
/// `tol` is treated as an absolute tolerance on the whole interval and split
/// across subintervals. The first ten levels refine unconditionally so that
/// integrand mass localized in a small fraction of the interval cannot slip
/// between the coarse nodes; recursion stops at depth 60 regardless. Accurate
/// for smooth integrands and integrands with mild endpoint kinks; callers
/// must substitute away genuine singularities first.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(f, a, b, fa, fm, fb, whole, tol, 60, 10)
}

#[inline]
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    force: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || (force == 0 && delta.abs() <= 15.0 * tol) {
        // Richardson correction
        left + right + delta / 15.0
    } else {
        let force = force.saturating_sub(1);
        adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, force)
            + adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, force)
    }
}

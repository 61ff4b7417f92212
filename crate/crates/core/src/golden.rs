//! Golden-section maximization of a unimodal scalar function.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes `f` on [lo, hi]; returns (argmax, max). `f` must be unimodal
/// (monotone functions converge to the boundary). The interval shrinks by
/// the golden ratio each step, so `iters` around 120 reaches machine
/// precision for any practical interval.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    debug_assert!(lo <= hi);
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if hi - lo <= 1e-15 * (1.0 + lo.abs() + hi.abs()) {
            break;
        }
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

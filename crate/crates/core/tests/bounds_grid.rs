use submax::solvers::{mixed_coefficients, optimize_bound_params, GreedyCoefficients, DEFAULT_FLIP_POINT};

/// Plain enumeration of every `(t, p₁, p₃)` grid point in `t ∈ [lo, hi]`, written
/// independently of the library's pruned search.
fn naive(lo: u32, hi: u32, eps: f64) -> (f64, f64) {
    let step = 1e-3;
    let mut best = (0.0, 0.0);
    for ti in lo..=hi {
        let t = ti as f64 * step;
        let g = (t - 1.0).exp();
        let et = (-t).exp();
        let (c_opt, c_union, c_inter) = (g * (2.0 - t - et), -g * (2.0 - t - 2.0 * et), -g * (1.0 - et));
        for i3 in 0..=1000u32 {
            for i1 in 0..=(1000 - i3) {
                let (p1, p3) = (i1 as f64 * step, i3 as f64 * step);
                let p2 = (1000 - i3 - i1) as f64 * step;
                let union = p1 / (2.0 + eps) + p3 * c_union;
                let inter = p2 / (1.0 + eps) + p1 / (2.0 + eps) + p3 * c_inter;
                if union >= 0.0 && inter >= 0.0 && p3 * c_opt > best.0 {
                    best = (p3 * c_opt, t);
                }
            }
        }
    }
    best
}

#[test]
fn pruned_search_matches_enumeration_near_optimum() {
    let eps = 1e-6;
    let fast = optimize_bound_params(None, eps);
    let (value, t) = naive(300, 420, eps);
    assert!((fast.bound_value - value).abs() < 1e-12, "{fast:?} vs {value}");
    assert!((fast.t_s - t).abs() < 1e-12);
    assert!((fast.t_s - DEFAULT_FLIP_POINT).abs() < 1e-12);
}

#[test]
fn coarse_enumeration_never_beats_the_search() {
    // Every tenth flip point over the whole range: none may exceed the reported optimum.
    let eps = 1e-6;
    let fast = optimize_bound_params(None, eps);
    for ti in (0..=1000).step_by(100) {
        let (value, _) = naive(ti, ti, eps);
        assert!(value <= fast.bound_value + 1e-12, "t = {ti}e-3");
    }
}

#[test]
fn reported_weights_are_feasible() {
    for k in [None, Some(5), Some(50)] {
        let b = optimize_bound_params(k, 0.01);
        let c = match k {
            None => GreedyCoefficients::limit(b.t_s),
            Some(k) => GreedyCoefficients::finite(k, b.t_s, 0.01),
        };
        let (opt, union, inter) = mixed_coefficients(c, 0.01, b.p1, b.p2, b.p3);
        assert!(union >= 0.0 && inter >= 0.0, "{k:?}: {b:?}");
        assert!((opt - b.bound_value).abs() < 1e-12);
        assert!((b.p1 + b.p2 + b.p3 - 1.0).abs() < 1e-9);
    }
}

#[test]
fn limit_bound_beats_one_over_e() {
    let b = optimize_bound_params(None, 1e-6);
    assert!(b.bound_value > 0.385);
    assert!(b.bound_value > (-1.0f64).exp());
}

//! Approximation guarantee of the combined solver as a function of the flip point.
//!
//! Mixing the two local optimality inequalities of `Z` (weights `p₁`, `p₂`) with the
//! guided greedy guarantee (weight `p₃`) gives a lower bound on `E[max(f(Z), f(A))]` of the
//! form `c_opt·f(OPT) + c_union·f(OPT ∪ Z) + c_inter·f(OPT ∩ Z)`. The last two terms can be
//! dropped when their coefficients are non-negative, leaving `c_opt` as the guarantee.

/// Flip point shipped as the default: the argmax of [`optimize_bound_params`] in the
/// `k → ∞` limit at `ε = 1e−6` (bound ≈ 0.38560, `p₁ = 0.201`, `p₃ = 0.775`).
pub const DEFAULT_FLIP_POINT: f64 = 0.362;

const GRID: u32 = 1000;

/// Guided greedy guarantee at flip point `t`: coefficients of `f(OPT)`, `f(OPT ∪ Z)` and
/// `f(OPT ∩ Z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreedyCoefficients {
    pub opt: f64,
    pub union: f64,
    pub inter: f64,
}

impl GreedyCoefficients {
    /// `k → ∞` limit, with the `O(ε)` loss omitted.
    pub fn limit(t: f64) -> Self {
        let g = (t - 1.0).exp();
        let et = (-t).exp();
        Self {
            opt: g * (2.0 - t - et),
            union: -g * (2.0 - t - 2.0 * et),
            inter: -g * (1.0 - et),
        }
    }

    /// Exact expression for a finite `k`, with `α = 1 − 1/k`, including the
    /// `−2ε(1 − α^k)` loss on `f(OPT)`.
    pub fn finite(k: usize, t: f64, eps: f64) -> Self {
        let kf = k as f64;
        let alpha = 1.0 - 1.0 / kf;
        let pow = |e: i64| if e <= 0 { 1.0 } else { alpha.powi(e as i32) };
        let k_i = k as i64;
        let up = (kf * t - 1e-9).ceil().max(0.0) as i64;
        let down = (kf * t + 1e-9).floor() as i64;
        let ak = pow(k_i);
        Self {
            opt: (k_i - up) as f64 / kf * pow(k_i - up - 1) + pow(k_i - up) - ak - 2.0 * eps * (1.0 - ak),
            union: ak + pow(k_i - 1) - (2 * k_i - up - 1) as f64 / kf * pow(k_i - down),
            inter: ak - pow(k_i - up),
        }
    }
}

/// Mixing weights, flip point, and the guarantee they certify.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub t_s: f64,
    pub bound_value: f64,
}

/// Coefficients of `f(OPT)`, `f(OPT ∪ Z)`, `f(OPT ∩ Z)` of the mixed bound.
pub fn mixed_coefficients(c: GreedyCoefficients, eps: f64, p1: f64, p2: f64, p3: f64) -> (f64, f64, f64) {
    (
        p3 * c.opt,
        p1 / (2.0 + eps) + p3 * c.union,
        p2 / (1.0 + eps) + p1 / (2.0 + eps) + p3 * c.inter,
    )
}

/// Grid search (step `1e−3`) over `t_s ∈ [0, 1]` and the `(p₁, p₂, p₃)` simplex for the
/// largest `f(OPT)` coefficient whose two companion coefficients are non-negative.
/// `k = None` uses the `k → ∞` limit. Ties keep the smallest `t_s`, then the smallest `p₃`.
pub fn optimize_bound_params(k: Option<usize>, eps: f64) -> BoundParams {
    let mut best = BoundParams {
        p1: 1.0,
        p2: 0.0,
        p3: 0.0,
        t_s: 0.0,
        bound_value: 0.0,
    };
    let step = 1.0 / GRID as f64;
    for ti in 0..=GRID {
        let t = ti as f64 * step;
        let c = match k {
            None => GreedyCoefficients::limit(t),
            Some(k) => GreedyCoefficients::finite(k.max(1), t, eps),
        };
        for i3 in 1..=GRID {
            let p3 = i3 as f64 * step;
            let value = p3 * c.opt;
            if value <= best.bound_value {
                continue;
            }
            // With p₁ + p₂ fixed, moving weight from p₁ to p₂ only helps the intersection
            // coefficient, so the smallest p₁ meeting the union constraint is optimal.
            let union_ok = |i1: u32| i1 as f64 * step / (2.0 + eps) + p3 * c.union >= 0.0;
            let rest = GRID - i3;
            let guess = (-p3 * c.union * (2.0 + eps) * GRID as f64).ceil().max(0.0) as u32;
            let mut i1 = guess.min(rest + 1);
            while i1 > 0 && union_ok(i1 - 1) {
                i1 -= 1;
            }
            while i1 <= rest && !union_ok(i1) {
                i1 += 1;
            }
            if i1 > rest {
                continue;
            }
            let (p1, p2) = (i1 as f64 * step, (rest - i1) as f64 * step);
            let (_, _, inter) = mixed_coefficients(c, eps, p1, p2, p3);
            if inter >= 0.0 {
                best = BoundParams {
                    p1,
                    p2,
                    p3,
                    t_s: t,
                    bound_value: value,
                };
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_optimum_exceeds_0385() {
        let b = optimize_bound_params(None, 1e-6);
        assert!(b.bound_value > 0.385, "{b:?}");
        assert!((b.t_s - DEFAULT_FLIP_POINT).abs() < 1e-9);
        assert!((b.p1 + b.p2 + b.p3 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_p3_means_zero_bound() {
        let c = GreedyCoefficients::limit(0.3);
        assert_eq!(mixed_coefficients(c, 0.1, 0.5, 0.5, 0.0).0, 0.0);
    }

    #[test]
    fn finite_coefficients_approach_limit() {
        for &t in &[0.0, 0.25, 0.362, 0.8, 1.0] {
            let lim = GreedyCoefficients::limit(t);
            let fin = GreedyCoefficients::finite(100_000, t, 0.0);
            assert!((lim.opt - fin.opt).abs() < 1e-3, "t = {t}");
            assert!((lim.union - fin.union).abs() < 1e-3, "t = {t}");
            assert!((lim.inter - fin.inter).abs() < 1e-3, "t = {t}");
        }
    }

    #[test]
    fn flip_point_zero_is_random_greedy() {
        // Without guidance only the 1/e guarantee remains.
        let c = GreedyCoefficients::limit(0.0);
        assert!((c.opt - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(c.inter, 0.0);
    }

    #[test]
    fn finite_k_bound_converges() {
        // k = 1: the single pick is the best singleton, up to the 2ε sampling loss.
        let one = optimize_bound_params(Some(1), 0.01);
        assert!((one.bound_value - 0.98).abs() < 1e-12);
        let lim = optimize_bound_params(None, 1e-6);
        let big = optimize_bound_params(Some(100_000), 1e-6);
        assert!((big.bound_value - lim.bound_value).abs() < 1e-4);
    }
}

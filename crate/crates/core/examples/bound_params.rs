//! The approximation guarantee as a function of the flip point, and the optimized mixing
//! weights for a few values of k.

use submax::solvers::{optimize_bound_params, GreedyCoefficients, DEFAULT_FLIP_POINT};

fn main() {
    println!("{:>6} {:>10} {:>10} {:>10}", "t", "c_opt", "c_union", "c_inter");
    for i in 0..=10 {
        let t = i as f64 / 10.0;
        let c = GreedyCoefficients::limit(t);
        println!("{t:>6.2} {:>10.5} {:>10.5} {:>10.5}", c.opt, c.union, c.inter);
    }

    println!();
    println!(
        "{:>8} {:>10} {:>7} {:>7} {:>7} {:>7}",
        "k", "bound", "t_s", "p1", "p2", "p3"
    );
    for k in [Some(5), Some(20), Some(100), Some(10_000), None] {
        let b = optimize_bound_params(k, 1e-6);
        let label = k.map_or("inf".to_string(), |k| k.to_string());
        println!(
            "{label:>8} {:>10.6} {:>7.3} {:>7.3} {:>7.3} {:>7.3}",
            b.bound_value, b.t_s, b.p1, b.p2, b.p3
        );
    }
    println!("default flip point {DEFAULT_FLIP_POINT}");
}

// The barrier Dirichlet problem on a small grid, and the order of the
// stencil on the fundamental solution.

use heisenberg_cr::grid::{dirichlet_solve, fundamental_convergence, DomainMask, GridSpec, NodeClass, C0};

pub fn run_example() {
    let mask = DomainMask::barrier_domain(GridSpec::cubic(25).unwrap());
    println!("interior nodes: {}", mask.count(NodeClass::Interior));
    for eps in [0.0, 0.01] {
        let r = dirichlet_solve(&mask, eps, C0).unwrap();
        println!(
            "eps = {eps}: {} iterations, residual {:.1e}, sigma(0) = {:.6}, flagged {}",
            r.iterations,
            r.relative_residual,
            r.origin_value,
            r.flagged.len()
        );
    }
    let c = fundamental_convergence(25, 3).unwrap();
    println!("stencil residuals {:?}, orders {:?}", c.residuals, c.orders);
}

fn main() {
    run_example();
}

use torsor_core::arith::*;
fn main() {
    let cps: Vec<u64> = vec![1_000, 3_162, 10_000, 31_623, 100_000, 316_228, 1_000_000, 3_162_278, 10_000_000];
    let report = count_kummer_at(3, &cps).unwrap();
    for c in &report.checkpoints {
        let b = c.b as f64;
        println!("B = {:>10}  N = {:>12}  N/B = {:.4}  N/(B lnB) = {:.5}", c.b, c.connected, c.connected as f64 / b, c.connected as f64 / (b * b.ln()));
    }
    // r(B) = N/B should be ~ K(ln B + D): estimate K, D from the two ends
    let first = &report.checkpoints[0];
    let last = report.checkpoints.last().unwrap();
    let r1 = first.connected as f64 / first.b as f64;
    let r2 = last.connected as f64 / last.b as f64;
    let l1 = (first.b as f64).ln();
    let l2 = (last.b as f64).ln();
    let k = (r2 - r1) / (l2 - l1);
    let d = r1 / k - l1;
    println!("slope K = {k:.5}, offset D = {d:.3}");
    let decades: Vec<(u64,u64)> = report.checkpoints.iter().filter(|c| [1_000, 10_000, 100_000, 1_000_000, 10_000_000].contains(&c.b)).map(|c| (c.b, c.connected)).collect();
    let fit = fit_growth(&decades).unwrap();
    println!("5-point fit: alpha = {:.4} beta = {:.4} intercept = {:.4}", fit.alpha_hat, fit.beta_hat, fit.intercept);
    let allpts: Vec<(u64,u64)> = report.checkpoints.iter().map(|c| (c.b, c.connected)).collect();
    let fit = fit_growth(&allpts).unwrap();
    println!("9-point fit: alpha = {:.4} beta = {:.4} intercept = {:.4}", fit.alpha_hat, fit.beta_hat, fit.intercept);
}

//! Enumerate LR fillings and check count(mu, nu, lambda) = count(nu, mu, lambda).
//!
//! ```bash
//! cargo run --example count_fillings -- 7,4,2,1 8,5,4,2 11,10,7,5
//! ```

use lrpairs::tableaux::{enumerate_fillings, lr_coefficient, render_skew, Partition};

fn arg(n: usize, default: &[u32]) -> lrpairs::Result<Partition> {
    let parts = match std::env::args().nth(n) {
        Some(s) => s.split(',').map(|p| p.trim().parse().expect("integer part")).collect(),
        None => default.to_vec(),
    };
    Ok(Partition::new(parts)?)
}

fn main() -> lrpairs::Result<()> {
    let mu = arg(1, &[7, 4, 2, 1])?;
    let nu = arg(2, &[8, 5, 4, 2])?;
    let lambda = arg(3, &[11, 10, 7, 5])?;
    let all = enumerate_fillings(&mu, &nu, &lambda);
    for f in &all {
        println!("{}", render_skew(f, &mu, &lambda));
    }
    let dual = lr_coefficient(&nu, &mu, &lambda);
    println!("c = {} fillings, dual count {}", all.len(), dual);
    Ok(())
}

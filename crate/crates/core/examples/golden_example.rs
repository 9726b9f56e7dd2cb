//! The 4x4 example: realize a filling of (11,10,7,5)/(7,4,2,1) with content
//! (8,5,4,2), then read it back off the minors of N.
//!
//! ```bash
//! cargo run --example golden_example
//! ```

use lrpairs::extract::{extract, row_sum_check};
use lrpairs::matrix::invariant_partition;
use lrpairs::partition;
use lrpairs::realize::realize;
use lrpairs::tableaux::{render_skew, Filling};

fn main() -> lrpairs::Result<()> {
    let mu = partition![7, 4, 2, 1];
    let filling = Filling::new(vec![vec![4], vec![2, 4], vec![1, 1, 3], vec![1, 0, 1, 2]])?;

    let real = realize(&filling, &mu)?;
    println!("N =\n{}", real.n);
    println!("M N =\n{}", real.product());
    println!(
        "inv(N) = {}, inv(MN) = {}",
        invariant_partition(&real.n)?,
        invariant_partition(&real.product())?
    );

    let ex = extract(&real.n, &mu)?;
    println!("\nminor orders (rows p..q omitted, right-most columns):");
    for b in &ex.minor_orders.omitted {
        println!("  O({}, {}) = {}", b.from, b.to, b.order);
    }
    println!("det order {}", ex.minor_orders.full);

    println!("\nextracted filling:\n{}", render_skew(&ex.filling, &ex.mu, &ex.lambda));
    assert_eq!(ex.filling, filling);

    let sums = row_sum_check(&ex.filling, &real.n)?;
    println!("row sums: {} checked, {} failures", sums.checked, sums.failures.len());
    Ok(())
}

//! Factored realizations of random LR fillings.
//!
//! ```bash
//! cargo run --example realize -- 5
//! ```

use lrpairs::realize::{random_filling, realize};
use lrpairs::tableaux::render_skew;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lrpairs::Result<()> {
    let count: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..count {
        let (f, mu, nu, lambda) = random_filling(&mut rng, 3, 4)?;
        let real = realize(&f, &mu)?;
        println!("mu = {mu}, nu = {nu}, lambda = {lambda}");
        println!("{}", render_skew(&f, &mu, &lambda));
        for (i, n_i) in real.factors.iter().enumerate() {
            println!("N_{} =\n{n_i}", i + 1);
        }
        println!("N =\n{}", real.n);
        for rep in &real.inv_reports {
            println!(
                "  inv(N_1..N_{}) = {}, inv(M N_1..N_{}) = {}",
                rep.i, rep.inv_n, rep.i, rep.inv_mn
            );
        }
        println!();
    }
    Ok(())
}

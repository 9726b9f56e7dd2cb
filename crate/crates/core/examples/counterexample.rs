//! Two pairs with mu = (6,3,1), the same filling, and no Q relating them.

use lrpairs::extract::counterexample_demo;
use lrpairs::tableaux::render_skew;

fn main() -> lrpairs::Result<()> {
    let rep = counterexample_demo()?;
    println!("N =\n{}\nN' =\n{}", rep.n, rep.n_prime);
    println!("det-gap: {} / {}", rep.generic.passed(), rep.generic_prime.passed());
    println!("inv(N) = {}, inv(N') = {}", rep.nu, rep.nu_prime);
    println!("same filling: {}", rep.same_filling);
    println!("{}", render_skew(&rep.filling, &rep.mu, &rep.lambda));

    println!("residue relations on c(q11), c(q22), c(q33):");
    for (rel, row) in rep.relations.iter().zip(&rep.diagonal_system) {
        let row: Vec<String> = row.iter().map(|c| format!("{c:>3}")).collect();
        println!("  entry {:?} at t^{}: [{}] = 0", rel.entry, rel.order, row.join(" "));
    }
    println!(
        "determinant {}, pairs equivalent: {}",
        rep.determinant, !rep.not_equivalent
    );
    Ok(())
}

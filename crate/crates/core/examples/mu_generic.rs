//! Reduce a scrambled pair to (D_mu, N*) with N* mu-generic, and look at the
//! certificate.

use lrpairs::generic::{act, to_mu_generic, verify_mu_generic, GroupElement, MatrixPair, VerifyMode};
use lrpairs::partition;
use lrpairs::realize::realize;
use lrpairs::tableaux::Filling;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lrpairs::Result<()> {
    let mu = partition![4, 2, 1];
    let f = Filling::new(vec![vec![2], vec![1, 2], vec![0, 1, 1]])?;
    let real = realize(&f, &mu)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    let g = GroupElement::random(&mut rng, 3, 2);
    let pair = act(&g, &MatrixPair::new(real.m, real.n)?)?;
    println!("M =\n{}\nN =\n{}", pair.first, pair.second);

    let cert = to_mu_generic(&pair, &mut rng, 20)?;
    println!("N* =\n{}", cert.n_star);
    println!(
        "certificate: {} checks ({}), {} failures, {} attempt(s)",
        cert.verification.checked,
        cert.verification.mode,
        cert.verification.failures.len(),
        cert.attempts
    );

    let det_gap = verify_mu_generic(&cert.n_star, &mu, VerifyMode::Full);
    println!(
        "det-gap inequalities: {} checked, passed = {}",
        det_gap.checked,
        det_gap.passed()
    );
    Ok(())
}

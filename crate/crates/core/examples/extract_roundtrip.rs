//! realize, scramble by a random (P, Q, T), extract; repeated.

use lrpairs::extract::extract_from_pair;
use lrpairs::generic::{act, GroupElement, MatrixPair};
use lrpairs::realize::{random_filling, realize};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lrpairs::Result<()> {
    let trials: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut resamples = 0;
    for trial in 1..=trials {
        let (f, mu, _, _) = random_filling(&mut rng, 4, 5)?;
        let real = realize(&f, &mu)?;
        let g = GroupElement::random(&mut rng, f.r(), 3);
        let pair = act(&g, &MatrixPair::new(real.m, real.n)?)?;
        let out = extract_from_pair(&pair, &mut rng)?;
        resamples += out.certificate.resamples.len();
        let ok = out.extraction.filling == f;
        println!("{trial:3}: r = {}, mu = {mu}, recovered = {ok}", f.r());
        assert!(ok);
    }
    println!("{trials} trials, {resamples} resamples");
    Ok(())
}

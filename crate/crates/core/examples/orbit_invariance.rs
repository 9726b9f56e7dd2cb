//! The filling does not move along an orbit, for general (P, Q, T) and for
//! the stabilizer of D_mu.

use lrpairs::extract::extract_from_pair;
use lrpairs::generic::{act, GroupElement, MatrixPair};
use lrpairs::realize::{random_filling, realize};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lrpairs::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for trial in 0..6 {
        let (f, mu, _, _) = random_filling(&mut rng, 3, 4)?;
        let real = realize(&f, &mu)?;
        let pair = MatrixPair::new(real.m, real.n)?;
        let r = pair.size();
        let g = if trial % 2 == 0 {
            GroupElement::random(&mut rng, r, 3)
        } else {
            GroupElement::random_stabilizer(&mut rng, &mu, r, 3)
        };
        let moved = act(&g, &pair)?;
        let before = extract_from_pair(&pair, &mut rng)?.extraction.filling;
        let after = extract_from_pair(&moved, &mut rng)?.extraction.filling;
        let kind = if trial % 2 == 0 { "general" } else { "stabilizer" };
        println!("{kind:10} mu = {mu}: before {before:?}, after {after:?}");
        assert_eq!(before, after);
    }
    Ok(())
}

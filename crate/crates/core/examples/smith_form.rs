//! Smith form over R of a random matrix, against the gcd-of-minors oracle.

use lrpairs::dvr::{random_unit, RingElem};
use lrpairs::matrix::{invariant_partition_oracle, smith_transforms, RMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> lrpairs::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = RMatrix::from_fn(4, |_, _| {
        let u = &random_unit(&mut rng) + &RingElem::t_pow(1);
        u.mul_t_pow(rng.gen_range(0..5))
    });
    let s = smith_transforms(&m)?;
    println!("A =\n{m}\nD =\n{}", s.d);
    println!("P A Q^-1 = D: {}", &(&s.p * &m) * &s.q.inverse()? == s.d);
    println!(
        "invariants {} (oracle {})",
        s.invariants,
        invariant_partition_oracle(&m)?
    );
    Ok(())
}

//! The eight acceptance criteria, one PASS/FAIL line each.
//!
//! ```bash
//! cargo test --test acceptance
//! ```

mod common;

use std::time::{Duration, Instant};

use common::*;
use lrpairs::cli::{cmd_counterexample, RunConfig};
use lrpairs::dvr::{random_unit, RingElem};
use lrpairs::extract::{extract, extract_from_pair_with, row_sum_check};
use lrpairs::generic::{
    act, corner_invariant_check, index_pairs, verify_certificate, verify_mu_generic, GroupElement, MatrixPair,
    MuGenericCertificate, VerifyMode, DEFAULT_MAX_RETRIES,
};
use lrpairs::matrix::{invariant_partition, invariant_partition_oracle, RMatrix};
use lrpairs::partition;
use lrpairs::realize::{random_filling, realize};
use lrpairs::tableaux::{enumerate_fillings, lr_coefficient, validate_filling};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240611;

#[derive(Default)]
struct Tally {
    attempts: usize,
    resamples: usize,
    calls: usize,
    successes: usize,
    certificates: Vec<MuGenericCertificate>,
}

impl Tally {
    fn extract(&mut self, pair: &MatrixPair, rng: &mut ChaCha8Rng) -> Option<lrpairs::tableaux::Filling> {
        self.calls += 1;
        match extract_from_pair_with(pair, rng, DEFAULT_MAX_RETRIES, VerifyMode::auto(pair.size())) {
            Ok(out) => {
                self.successes += 1;
                self.attempts += out.certificate.attempts;
                self.resamples += out.certificate.resamples.len();
                let f = out.extraction.filling;
                self.certificates.push(out.certificate);
                Some(f)
            }
            Err(e) => {
                eprintln!("  extraction failed: {e}");
                None
            }
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn golden() -> Outcome {
    let start = Instant::now();
    let real = realize(&golden_filling(), &golden_mu()).unwrap();
    let mut ok = real.n == golden_n() && real.product() == golden_mn();
    ok &= invariant_partition(&real.n).unwrap() == partition![8, 5, 4, 2];
    ok &= invariant_partition(&real.product()).unwrap() == partition![11, 10, 7, 5];
    let ex = extract(&real.n, &golden_mu()).unwrap();
    let f = &ex.filling;
    ok &= (f.k(1, 1), f.k(1, 2), f.k(1, 3), f.k(1, 4)) == (4, 2, 1, 1);
    ok &= f.column_prefix(2, 2) == 6 && f.column_prefix(2, 3) == 2 && f.column_prefix(2, 4) == 1;
    ok &= f.column_prefix(3, 3) == 5 && f.column_prefix(3, 4) == 2 && f.column_prefix(4, 4) == 4;
    ok &= *f == golden_filling();
    ok &= row_sum_check(f, &real.n).unwrap().passed();
    let t = start.elapsed();
    check(ok && t < Duration::from_secs(1), format!("exact match, {t:.2?}"))
}

fn roundtrip(tally: &mut Tally) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ok = 0;
    let trials = 200;
    for _ in 0..trials {
        let (f, mu, _, _) = random_filling(&mut rng, 4, 6).unwrap();
        let real = realize(&f, &mu).unwrap();
        let pair = MatrixPair::new(real.m, real.n).unwrap();
        if tally.extract(&pair, &mut rng).as_ref() == Some(&f) {
            ok += 1;
        }
    }
    check(
        ok == trials,
        format!("{ok}/{trials} recovered, {:.1?}", start.elapsed()),
    )
}

fn orbits(tally: &mut Tally) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let (mut general, mut stab) = (0, 0);
    for trial in 0..50 {
        let (f, mu, _, _) = random_filling(&mut rng, 4, 6).unwrap();
        let real = realize(&f, &mu).unwrap();
        let pair = MatrixPair::new(real.m, real.n).unwrap();
        let r = pair.size();
        let stabilizer = trial % 2 == 1;
        let g = if stabilizer {
            GroupElement::random_stabilizer(&mut rng, &mu, r, 3)
        } else {
            GroupElement::random(&mut rng, r, 3)
        };
        let moved = act(&g, &pair).unwrap();
        let before = tally.extract(&pair, &mut rng);
        let after = tally.extract(&moved, &mut rng);
        if before.is_some() && before == after && before.as_ref() == Some(&f) {
            if stabilizer {
                stab += 1;
            } else {
                general += 1;
            }
        }
    }
    check(
        general + stab == 50,
        format!("general {general}/25, stabilizer {stab}/25, {:.1?}", start.elapsed()),
    )
}

fn certificates(tally: &Tally) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut bad = 0;
    let mut checks = 0;
    for c in &tally.certificates {
        let r = c.n_star.size();
        let pairs = index_pairs(r, VerifyMode::Full, &mut rng);
        let lemma = verify_certificate(&c.n_prime, &c.n_star, &c.mu, &c.factors, &pairs, VerifyMode::Full);
        let det_gap = verify_mu_generic(&c.n_star, &c.mu, VerifyMode::Full);
        let corner = corner_invariant_check(&c.n_star, &c.mu);
        checks += lemma.checked + det_gap.checked;
        let ok = c.verification.mode == VerifyMode::Full
            && c.verification.passed()
            && lemma.passed()
            && det_gap.passed()
            && corner.passed();
        if !ok {
            bad += 1;
        }
    }
    let n = tally.certificates.len();
    check(
        bad == 0 && n > 0,
        format!("{}/{n} certificates, {checks} checks, {:.1?}", n - bad, start.elapsed()),
    )
}

fn smith() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut ok = 0;
    let mut n = 0;
    while n < 100 {
        let r = rng.gen_range(1..=4);
        let m = RMatrix::from_fn(r, |_, _| {
            if rng.gen_bool(0.2) {
                RingElem::zero()
            } else {
                (&random_unit(&mut rng) + &RingElem::t_pow(rng.gen_range(1..4))).mul_t_pow(rng.gen_range(0..=6))
            }
        });
        if !m.is_full_rank() {
            continue;
        }
        n += 1;
        if invariant_partition(&m).unwrap() == invariant_partition_oracle(&m).unwrap() {
            ok += 1;
        }
    }
    check(ok == n, format!("{ok}/{n} agree"))
}

fn counterexample() -> Outcome {
    let start = Instant::now();
    let out = cmd_counterexample(&RunConfig::default()).unwrap();
    let rep = &out.report;
    let ok = out.passed
        && rep.same_filling
        && rep.generic.passed()
        && rep.generic_prime.passed()
        && !rep.determinant.is_zero()
        && rep.not_equivalent;
    let t = start.elapsed();
    check(
        ok && t < Duration::from_secs(1),
        format!("det {}, {t:.2?}", rep.determinant),
    )
}

fn combinatorics() -> Outcome {
    let (mu, nu, lambda) = (golden_mu(), partition![8, 5, 4, 2], partition![11, 10, 7, 5]);
    let all = enumerate_fillings(&mu, &nu, &lambda);
    let mut ok = all.contains(&golden_filling());
    ok &= all
        .iter()
        .all(|f| validate_filling(f, &mu, &nu, &lambda).unwrap().is_valid());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut symmetric = 0;
    let mut valid = 0;
    for _ in 0..20 {
        let (_, mu, nu, lambda) = random_filling(&mut rng, 4, 5).unwrap();
        let fs = enumerate_fillings(&mu, &nu, &lambda);
        if fs.len() == lr_coefficient(&nu, &mu, &lambda) {
            symmetric += 1;
        }
        if fs
            .iter()
            .all(|f| validate_filling(f, &mu, &nu, &lambda).unwrap().is_valid())
        {
            valid += 1;
        }
    }
    ok &= symmetric == 20 && valid == 20;
    check(
        ok,
        format!(
            "golden triple: {} fillings; symmetric {symmetric}/20; LR1-LR4 {valid}/20",
            all.len()
        ),
    )
}

fn robustness(tally: &Tally) -> Outcome {
    let rate = tally.resamples as f64 / tally.attempts.max(1) as f64;
    check(
        tally.successes == tally.calls && rate < 0.05,
        format!(
            "{}/{} succeeded, {} resamples in {} attempts ({:.2}%)",
            tally.successes,
            tally.calls,
            tally.resamples,
            tally.attempts,
            100.0 * rate
        ),
    )
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut tally = Tally::default();
    let results = [
        ("1 golden example", golden()),
        ("2 roundtrip", roundtrip(&mut tally)),
        ("3 orbit invariance", orbits(&mut tally)),
        ("4 mu-generic certificates", certificates(&tally)),
        ("5 smith cross-validation", smith()),
        ("6 counterexample", counterexample()),
        ("7 combinatorial engine", combinatorics()),
        ("8 genericity robustness", robustness(&tally)),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}

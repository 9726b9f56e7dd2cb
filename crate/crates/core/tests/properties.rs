mod common;

use common::*;
use lrpairs::dvr::{random_unit, RingElem, Valuation};
use lrpairs::extract::{extract, extract_from_pair, MinorOrderTable};
use lrpairs::generic::{act, GroupElement, MatrixPair};
use lrpairs::realize::{random_filling, realize};
use lrpairs::tableaux::Filling;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn elem(rng: &mut ChaCha8Rng) -> RingElem {
    if rng.gen_bool(0.1) {
        return RingElem::zero();
    }
    let num = &random_unit(rng) + &RingElem::t_pow(rng.gen_range(1..3));
    let den = &random_unit(rng) + &RingElem::t_pow(1);
    num.checked_div(&den).unwrap().mul_t_pow(rng.gen_range(-2..4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuation_is_additive_and_ultrametric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (elem(&mut rng), elem(&mut rng));
        prop_assert_eq!((&a * &b).valuation(), a.valuation() + b.valuation());
        prop_assert!((&a + &b).valuation() >= a.valuation().min(b.valuation()));
        if a.valuation() != b.valuation() {
            prop_assert_eq!((&a + &b).valuation(), a.valuation().min(b.valuation()));
        }
    }

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (elem(&mut rng), elem(&mut rng), elem(&mut rng));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a);
        }
    }

    #[test]
    fn ring_elements_survive_json(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = elem(&mut rng);
        let back: RingElem = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn realized_fillings_come_back(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, mu, nu, lambda) = random_filling(&mut rng, 3, 4).unwrap();
        let real = realize(&f, &mu).unwrap();
        prop_assert_eq!((&real.nu, &real.lambda), (&nu, &lambda));
        let ex = extract(&real.n, &mu).unwrap();
        prop_assert_eq!(&ex.filling, &f);
        let pair = MatrixPair::new(real.m, real.n).unwrap();
        prop_assert_eq!(extract_from_pair(&pair, &mut rng).unwrap().extraction.filling, f);
    }

    #[test]
    fn action_preserves_invariants_and_filling(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, mu, _, _) = random_filling(&mut rng, 3, 4).unwrap();
        let real = realize(&f, &mu).unwrap();
        let pair = MatrixPair::new(real.m, real.n).unwrap();
        let g = if rng.gen_bool(0.5) {
            GroupElement::random(&mut rng, pair.size(), 3)
        } else {
            GroupElement::random_stabilizer(&mut rng, &mu, pair.size(), 3)
        };
        let moved = act(&g, &pair).unwrap();
        prop_assert_eq!(moved.invariants().unwrap(), pair.invariants().unwrap());
        prop_assert_eq!(extract_from_pair(&moved, &mut rng).unwrap().extraction.filling, f);
    }

    // with S(i,j) = k_1j + ... + k_ij:
    // S(i,j) + ... + S(i,l) = O(j-i, j-1) - O(l-i+1, l)
    // k_ii + ... + k_ij = O(j-i+2, j) - O(j-i+1, j)
    #[test]
    fn minor_order_identities(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, mu, _, _) = random_filling(&mut rng, 4, 5).unwrap();
        let n = realize(&f, &mu).unwrap().n;
        let table = MinorOrderTable::compute(&n).unwrap();
        let r = f.r();
        for i in 1..=r {
            for j in i..=r {
                prop_assert_eq!(table.column_prefix(i, j), f.column_prefix(i, j));
                prop_assert_eq!(f.content_range(i, i, j), table.get(j - i + 2, j) - table.get(j - i + 1, j));
                for l in j..=r {
                    let sum: i64 = (j..=l).map(|b| table.column_prefix(i, b)).sum();
                    prop_assert_eq!(sum, table.get(j - i, j - 1) - table.get(l - i + 1, l));
                }
            }
        }
        prop_assert_eq!(Valuation::Finite(table.full), n.det().valuation());
    }

    #[test]
    fn fillings_survive_json(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, _, _, _) = random_filling(&mut rng, 5, 5).unwrap();
        let back: Filling = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn top_row_orders_are_the_diagonal_filling() {
    let n = golden_n();
    let f = golden_filling();
    for i in 1..=4 {
        assert_eq!(n[(0, i - 1)].valuation(), Valuation::Finite(f.k(i, i)));
    }
}

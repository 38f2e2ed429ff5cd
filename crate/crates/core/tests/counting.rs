use hzeta::combinat::{partitions_below, partitions_in_box, Partition};
use hzeta::counting::*;
use hzeta::ratfunc::LaurentPoly;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn boxes() -> Vec<Partition> {
    (1..=6).flat_map(|n| partitions_in_box(n, 3)).filter(|l| l.size() <= 6).collect()
}

#[test]
fn alpha_matches_enumeration() {
    for lambda in boxes() {
        for p in [2u64, 3] {
            let hist = subgroup_type_counts(&lambda, p).unwrap();
            for mu in partitions_below(&lambda) {
                let want = hist.get(&mu).cloned().unwrap_or_default();
                let got = eval_at_prime(&alpha(&lambda, &mu).unwrap(), p);
                assert_eq!(got, want, "lambda={lambda} mu={mu} p={p}");
            }
            assert_eq!(hist.keys().filter(|m| !m.dominated_by(&lambda)).count(), 0);
        }
    }
}

#[test]
fn alpha_has_nonnegative_coefficients() {
    for lambda in boxes() {
        for mu in partitions_below(&lambda) {
            let a = alpha(&lambda, &mu).unwrap();
            assert!(a.terms().iter().all(|(_, c)| !c.is_negative()), "lambda={lambda} mu={mu}");
        }
    }
}

fn random_pair(rng: &mut ChaCha8Rng) -> (Partition, Partition) {
    let n = rng.gen_range(1..=6);
    let lambda = Partition::sorted((0..n).map(|_| rng.gen_range(0..=5)).collect());
    let mu0 = Partition::sorted((0..n).map(|_| rng.gen_range(0..=5)).collect());
    let mu = mu0.parts().iter().zip(lambda.parts()).map(|(a, b)| *a.min(b)).collect();
    (lambda, Partition::new(mu).unwrap())
}

#[test]
fn split_lemmas_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..1000 {
        let (lambda, mu) = random_pair(&mut rng);
        let r = hzeta::combinat::pair_decomposition(&mu, &lambda).unwrap().r();
        let mut prod = LaurentPoly::one();
        for i in 1..=r {
            assert!(check_mu_split(&lambda, &mu, i), "mu-split lambda={lambda} mu={mu} i={i}");
            assert!(check_lambda_split(&lambda, &mu, i), "lambda-split lambda={lambda} mu={mu} i={i}");
            prod = prod
                .mul(&mu_split_rhs(&lambda, &mu, i).unwrap())
                .mul(&lambda_split_rhs(&lambda, &mu, i).unwrap());
        }
        assert_eq!(prod, alpha(&lambda, &mu).unwrap(), "lambda={lambda} mu={mu}");
    }
}

#[test]
fn alpha_rejects_undominated() {
    let lambda = Partition::new(vec![2, 1]).unwrap();
    let mu = Partition::new(vec![3, 0]).unwrap();
    assert!(alpha(&lambda, &mu).is_err());
    assert_eq!(alpha_bruteforce(&lambda, &mu, 2).unwrap(), 0.into());
}

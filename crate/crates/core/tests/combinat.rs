use std::collections::BTreeSet;

use hzeta::combinat::*;
use hzeta::ratfunc::{LaurentPoly, Monomial, Var};
use num_bigint::BigInt;
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = (Partition, Partition)> {
    (1usize..=5).prop_flat_map(|n| {
        (prop::collection::vec(0u32..=4, n), prop::collection::vec(0u32..=4, n)).prop_map(|(a, b)| {
            let lambda = Partition::sorted(a);
            let mu0 = Partition::sorted(b);
            let mu: Vec<u32> = mu0.parts().iter().zip(lambda.parts()).map(|(x, y)| *x.min(y)).collect();
            (Partition::new(mu).unwrap(), lambda)
        })
    })
}

fn subsets(m: usize) -> Vec<Vec<usize>> {
    (0u32..1 << m)
        .map(|mask| (1..=m).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dual_is_an_involution(parts in prop::collection::vec(0u32..=6, 0..7)) {
        let lambda = Partition::sorted(parts);
        let dd = lambda.dual().dual();
        let stripped: Vec<u32> = lambda.parts().iter().copied().filter(|&x| x > 0).collect();
        prop_assert_eq!(dd.parts(), &stripped[..]);
    }

    #[test]
    fn pair_word_is_valid((mu, lambda) in pair()) {
        let w = dyck_of_pair(&mu, &lambda).unwrap();
        let bd = block_decomposition(&w);
        prop_assert!(satisfies_chain(&mu, &lambda, &bd));
        prop_assert!((1..=bd.r()).all(|i| bd.L(i) >= bd.M(i)));
        prop_assert_eq!(bd.word(), w);
    }

    #[test]
    fn partial_sums_reconstruct((mu, lambda) in pair()) {
        let bd = block_decomposition(&dyck_of_pair(&mu, &lambda).unwrap());
        let (r, s) = successive_differences(&mu, &lambda, &bd);
        let n = bd.n();
        let rs = |j: usize| r[j - 1] as u64;
        let ss = |j: usize| if j <= n { s[j - 1] as u64 } else { 0 };
        let mu_sum: u64 = (1..=n).map(|j| j as u64 * rs(j)).sum::<u64>()
            + (1..bd.r()).map(|i| bd.M(i) as u64 * (bd.L(i) + 1..=bd.L(i + 1)).map(ss).sum::<u64>()).sum::<u64>();
        let lambda_sum: u64 = (1..=n).map(|j| j as u64 * ss(j)).sum::<u64>()
            + (1..=bd.r()).map(|i| bd.L(i) as u64 * (bd.M(i - 1) + 1..=bd.M(i)).map(rs).sum::<u64>()).sum::<u64>();
        prop_assert_eq!(mu_sum, mu.size());
        prop_assert_eq!(lambda_sum, lambda.size());
        for i in 1..bd.r() {
            prop_assert!(r[bd.M(i) - 1] > 0);
        }
    }

    #[test]
    fn support_is_dual_to_jumps((mu, lambda) in pair()) {
        let bd = block_decomposition(&dyck_of_pair(&mu, &lambda).unwrap());
        let (r, s) = successive_differences(&mu, &lambda, &bd);
        let (jm, jl) = jump_sets(&mu, &lambda, &bd);
        for i in 1..=bd.r() {
            let h = bd.M(i) - bd.M(i - 1);
            let want: BTreeSet<usize> = jm[i - 1].iter().map(|j| h - j).collect();
            prop_assert_eq!(support_in_block(&r, bd.M(i - 1), bd.M(i)), want);
            let h = bd.L(i) - bd.L(i - 1);
            let want: BTreeSet<usize> = jl[i - 1].iter().map(|j| h - j).collect();
            prop_assert_eq!(support_in_block(&s, bd.L(i - 1), bd.L(i)), want);
        }
    }
}

#[test]
fn pair_decomposition_matches_search() {
    for n in 1..=4 {
        for lambda in partitions_in_box(n, 3) {
            for mu in partitions_below(&lambda) {
                let got = pair_decomposition(&mu, &lambda).unwrap();
                let found: Vec<BlockDecomposition> = dyck_words(n)
                    .iter()
                    .map(block_decomposition)
                    .filter(|bd| satisfies_chain(&mu, &lambda, bd))
                    .collect();
                assert_eq!(found, vec![got], "mu={mu:?} lambda={lambda:?}");
            }
        }
    }
}

#[test]
fn catalan_numbers() {
    let cat = [1usize, 2, 5, 14, 42, 132, 429, 1430];
    for (n, &c) in (1..=8).zip(&cat) {
        let words = dyck_words(n);
        assert_eq!(words.len(), c);
        assert!(words.windows(2).all(|w| w[0].letters() < w[1].letters()));
    }
}

#[test]
fn ordered_bell_numbers() {
    let bell = [1usize, 3, 13, 75, 541, 4683];
    for (h, &b) in (1..=6).zip(&bell) {
        assert_eq!(weak_orderings(h).len(), b);
        assert_eq!(chains(h).len(), b);
    }
}

#[test]
fn descent_classes_count_multinomials() {
    for h in 1..=6 {
        let perms = permutations(h);
        for j in subsets(h - 1) {
            let js: BTreeSet<usize> = j.iter().copied().collect();
            let direct = perms.iter().filter(|s| descents(s).is_subset(&js)).count();
            assert_eq!(BigInt::from(direct), multinomial_count(h, &j), "h={h} J={j:?}");
            // Y^length summed over the same class
            let mut by_len = LaurentPoly::zero();
            for s in perms.iter().filter(|s| descents(s).is_subset(&js)) {
                let len = permutation_stats(s).length as i64;
                by_len = by_len.add(&LaurentPoly::monomial(Monomial::var(Var::Y).pow(len)));
            }
            assert_eq!(by_len, gaussian_multinomial(h, &j).unwrap());
        }
    }
}

#[test]
fn reflected_multinomials_agree() {
    for h in 1..=6 {
        for j in subsets(h - 1) {
            let refl = reflect_subset(h, &j);
            assert_eq!(gaussian_multinomial(h, &refl).unwrap(), gaussian_multinomial(h, &j).unwrap());
        }
    }
}

#[test]
fn length_and_major_index_equidistribute() {
    for h in 1..=6 {
        let (mut len, mut maj) = (LaurentPoly::zero(), LaurentPoly::zero());
        for s in permutations(h) {
            let st = permutation_stats(&s);
            len = len.add(&LaurentPoly::monomial(Monomial::var(Var::Y).pow(st.length as i64)));
            maj = maj.add(&LaurentPoly::monomial(Monomial::var(Var::Y).pow(st.maj as i64)));
        }
        assert_eq!(len, maj, "h={h}");
    }
}

#[test]
fn beta_counts_tuples() {
    for n in 1..=5usize {
        for lambda in partitions_in_box(n, 3) {
            let mut direct = 0u64;
            let total = 4u64.pow(n as u32);
            for mut code in 0..total {
                let mut ell = Vec::with_capacity(n);
                for _ in 0..n {
                    ell.push((code % 4) as u32);
                    code /= 4;
                }
                if Partition::sorted(ell) == lambda {
                    direct += 1;
                }
            }
            assert_eq!(beta(&lambda), BigInt::from(direct), "lambda={lambda:?}");
        }
    }
}

#[test]
fn gaussian_binomial_examples() {
    let y = |c: &[i64]| LaurentPoly::univariate(Var::Y, &c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    assert_eq!(gaussian_binomial(2, 1).unwrap(), y(&[1, 1]));
    assert_eq!(gaussian_binomial(4, 2).unwrap(), y(&[1, 1, 2, 1, 1]));
    for n in 0..=8 {
        assert_eq!(gaussian_binomial(n, 0).unwrap(), LaurentPoly::one());
    }
    assert!(gaussian_binomial(1, 2).is_err());
    assert_eq!(multinomial_count(3, &[1, 2]), BigInt::from(6));
    assert_eq!(multinomial_count(3, &[2]), BigInt::from(3));
}

#[test]
fn phi_embeddings_are_injective() {
    for f in [vec![1u32, 1], vec![1, 1, 1], vec![1, 1, 1, 1], vec![1, 2, 1]] {
        let n = f.iter().sum::<u32>() as usize;
        for w in dyck_words(n) {
            let mut seen = BTreeSet::new();
            for a in compatible_partitions(&w, &f) {
                let lists: Vec<Vec<WeakOrdering>> = a.blocks.iter().map(|b| weak_orderings(b.len())).collect();
                let mut idx = vec![0usize; lists.len()];
                loop {
                    let vs: Vec<WeakOrdering> = idx.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect();
                    let v = phi_a(&a, &vs).unwrap();
                    assert_eq!(partition_of(&w, &f, &v).as_ref(), Some(&a));
                    assert!(seen.insert(v));
                    let mut pos = 0;
                    while pos < idx.len() {
                        idx[pos] += 1;
                        if idx[pos] < lists[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                        pos += 1;
                    }
                    if pos == idx.len() {
                        break;
                    }
                }
            }
        }
    }
}

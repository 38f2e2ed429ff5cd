use hzeta::combinat::{compatible_partitions, compositions, dyck_words};
use hzeta::funceq::*;
use hzeta::zeta::{d_w_a, t_prefactor, zeta_ab, zeta_unramified};
use hzeta::ratfunc::RatFunc;
use rayon::prelude::*;

#[test]
fn unramified_up_to_four() {
    let fs: Vec<Vec<u32>> = (1..=4).flat_map(compositions).collect();
    assert_eq!(fs.len(), 15);
    fs.par_iter().for_each(|f| {
        let n: u32 = f.iter().sum();
        let z = zeta_unramified(f).unwrap();
        assert!(
            check_funceq(&z.w, expected_symmetry_unramified(n as usize)),
            "f={f:?}"
        );
    });
}

#[test]
fn unramified_degree_five() {
    for f in [vec![5u32], vec![1, 4], vec![1, 1, 1, 1, 1]] {
        let z = zeta_unramified(&f).unwrap();
        assert!(check_funceq(&z.w, expected_symmetry_unramified(5)), "f={f:?}");
    }
}

#[test]
fn every_dwa_up_to_four() {
    let mut cases = Vec::new();
    for n in 1..=4usize {
        for f in compositions(n) {
            for w in dyck_words(n) {
                for a in compatible_partitions(&w, &f) {
                    cases.push((f.clone(), w.clone(), a));
                }
            }
        }
    }
    cases.par_iter().for_each(|(f, w, a)| {
        let d = d_w_a(f, w, a).unwrap();
        let sym = expected_symmetry_dwa(w.n(), f.len());
        assert!(check_funceq(&d, sym), "f={f:?} w={w} a={a:?}");
    });
}

#[test]
fn auxiliary_factors() {
    for f in [vec![1u32], vec![2, 1], vec![1, 1, 2]] {
        let n = f.iter().sum::<u32>() as usize;
        let pre = RatFunc::from_poly(t_prefactor(&f));
        assert!(check_funceq(&pre, symmetry_t_prefactor(n, f.len())));
        assert!(check_funceq(&zeta_ab(2 * n), symmetry_abelian(2 * n)));
    }
}

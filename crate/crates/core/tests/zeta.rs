use hzeta::combinat::{compatible_partitions, compositions, dyck_words, gaussian_multinomial_at, DecompType, YSpec};
use hzeta::zeta::*;
use rayon::prelude::*;

fn dyck_sum_series(f: &[u32], order: usize) -> hzeta::ratfunc::TruncatedSeries {
    dyck_sum(f).unwrap().series(order).unwrap()
}

#[test]
fn closed_form_matches_direct_sum() {
    let fs: Vec<Vec<u32>> = (1..=4).flat_map(compositions).collect();
    fs.par_iter().for_each(|f| {
        let d = DecompType::unramified(f.clone()).unwrap();
        assert_eq!(dyck_sum_series(f, 12), d_series(&d, 12), "f={f:?}");
    });
}

#[test]
fn invariant_under_permuting_f() {
    for f in [vec![1u32, 2], vec![1, 3], vec![1, 1, 2]] {
        let base = zeta_unramified(&f).unwrap().w;
        let mut g = f.clone();
        g.reverse();
        assert!(zeta_unramified(&g).unwrap().w.equals(&base), "f={f:?}");
        if f.len() == 3 {
            assert!(zeta_unramified(&[1, 2, 1]).unwrap().w.equals(&base));
        }
    }
}

#[test]
fn totally_split_collapses() {
    for n in 1..=4usize {
        let f = vec![1u32; n];
        for w in dyck_words(n) {
            let parts = compatible_partitions(&w, &f);
            let bd = hzeta::combinat::block_decomposition(&w);
            let lset: Vec<usize> = (1..bd.r()).map(|i| bd.L(i)).collect();
            let count = gaussian_multinomial_at(n, &lset, YSpec::One).unwrap();
            let count: i64 = count.as_constant().unwrap().to_integer().try_into().unwrap();
            assert_eq!(parts.len() as i64, count, "w={w}");
            let one = d_w_a(&f, &w, &parts[0]).unwrap();
            for a in &parts {
                assert!(d_w_a(&f, &w, a).unwrap().equals(&one));
            }
            let total = d_w(&f, &w).unwrap();
            assert!(total.equals(&one.scale_int(count)));
            assert!(total.equals(&d_w_totally_split(n, &w).unwrap()), "w={w}");
        }
        assert!(zeta_unramified(&f).unwrap().w.equals(&zeta_totally_split(n).unwrap().w));
    }
}

#[test]
fn inert_only_trivial_word() {
    for n in 1..=4usize {
        let f = vec![n as u32];
        for w in dyck_words(n) {
            let trivial = w.to_string() == "0".repeat(n) + &"1".repeat(n);
            assert_eq!(compatible_partitions(&w, &f).is_empty(), !trivial);
            if !trivial {
                assert!(d_w(&f, &w).unwrap().is_zero());
            }
        }
        assert!(zeta_unramified(&f).unwrap().w.equals(&zeta_inert(n).unwrap().w));
    }
}

#[test]
fn series_count_subgroups() {
    for f in (1..=4).flat_map(compositions) {
        let s = zeta_unramified(&f).unwrap().w.series(10).unwrap();
        assert!(s.is_counting_series(), "f={f:?}");
        let d = DecompType::unramified(f.clone()).unwrap();
        assert_eq!(zeta_series(&d, 10).unwrap(), s, "f={f:?}");
    }
}

#[test]
fn ramified_series_runs() {
    let d = DecompType::new(vec![2], vec![1]).unwrap();
    let s = zeta_series(&d, 6).unwrap();
    assert_eq!(s.coeff(0), &hzeta::ratfunc::LaurentPoly::one());
    assert!(zeta_closed_form(&d).is_err());
}

#[test]
fn orderings_sum_to_partition_term() {
    for f in (1..=4).flat_map(compositions) {
        let n = f.iter().sum::<u32>() as usize;
        for w in dyck_words(n) {
            for a in compatible_partitions(&w, &f) {
                let vs = orderings_of(&f, &w, &a);
                assert!(!vs.is_empty());
                let total = hzeta::ratfunc::RatFunc::sum(vs.iter().map(|v| d_w_v(&f, &w, v).unwrap()));
                assert!(total.equals(&d_w_a(&f, &w, &a).unwrap()), "f={f:?} w={w} a={a:?}");
            }
        }
    }
}

mod common;

use common::{all_perms, stirling_by_filter, Naive, NaiveWord};
use stirling_lab::combgen::{gen_signed_perms, gen_stirling, Limits};
use stirling_lab::families::{build_by_enumeration, build_by_recurrence, FamilyId, KParam};
use stirling_lab::stats::{perm_stats, signed_stats, stirling_stats};
use stirling_lab::{poly, Poly};

#[test]
fn perm_stats_match_definitions() {
    for n in 1..=6 {
        for pi in all_perms(n) {
            let s = perm_stats(&pi);
            let o = Naive(&pi);
            let got = [
                s.des, s.asc, s.des_star, s.asc_star, s.exc, s.drop, s.fix, s.cyc, s.lrmin, s.rlmin, s.lrmax, s.rlmax,
                s.pk, s.val, s.dasc, s.ddes, s.pasc, s.pdes, s.pasc_hat,
            ];
            let want = [
                o.des(), o.asc(), o.des_star(), o.asc_star(), o.exc(), o.drop(), o.fix(), o.cyc(), o.lrmin(),
                o.rlmin(), o.lrmax(), o.rlmax(), o.pk(), o.val(), o.dasc(), o.ddes(), o.pasc(), o.pdes(),
                o.pasc_hat(),
            ];
            assert_eq!(got, want, "{pi:?}");
            assert_eq!(s.impasc, s.asc_star - s.pasc);
            assert_eq!(s.impdes, s.des_star - s.pdes);
            assert_eq!(s.impasc_hat, s.asc - s.pasc_hat);
        }
    }
}

#[test]
fn stirling_generator_matches_filter() {
    for k in 1..=3 {
        for n in 0..=(if k == 1 { 5 } else { 4 }) {
            let mut a: Vec<Vec<usize>> =
                gen_stirling(n, k, &Limits::default()).unwrap().map(|w| w.as_slice().to_vec()).collect();
            let mut b = stirling_by_filter(n, k);
            a.sort();
            b.sort();
            assert_eq!(a, b, "n={n}, k={k}");
        }
    }
}

#[test]
fn word_stats_match_definitions() {
    for k in 1..=3 {
        for n in 1..=4 {
            for w in stirling_by_filter(n, k) {
                let s = stirling_stats(&w, k);
                let o = NaiveWord(&w, k);
                assert_eq!((s.lap, s.ap, s.plap, s.implap), (o.lap(), o.ap(), o.plap(), o.lap() - o.plap()), "{w:?}");
                assert_eq!(s.ap2, o.ap2(), "{w:?}");
            }
        }
    }
}

#[test]
fn long_word_proper_values() {
    let w = [1, 1, 2, 4, 5, 5, 4, 7, 7, 2, 3, 3, 6, 6];
    assert_eq!(NaiveWord(&w, 2).proper_values(), vec![1, 3, 6]);
    assert_eq!(stirling_stats(&w, 2).plap, 3);
}

// Q_2 gives y^2 + x + x; S_2 gives y^2 * 1 + x * 2.
#[test]
fn thmproper_at_two_by_hand() {
    let mut q = Poly::from_i64(0);
    for w in stirling_by_filter(2, 2) {
        let o = NaiveWord(&w, 2);
        let imp = o.lap() - o.plap();
        q += &(&Poly::var_pow("x", imp) * &Poly::var_pow("y", o.plap()));
    }
    assert_eq!(q, poly("y^2 + 2*x"));
}

#[test]
fn type_b_by_hand() {
    // des_B with the comparison against 0: B_3 = 1 + 23 x + 23 x^2 + x^3 over 48 objects
    let mut count = 0;
    let mut b = Poly::from_i64(0);
    for s in gen_signed_perms(3, &Limits::default()).unwrap() {
        count += 1;
        let v = s.as_slice();
        let d = std::iter::once(0).chain(v.iter().copied()).collect::<Vec<i64>>().windows(2).filter(|w| w[0] > w[1]).count();
        assert_eq!(signed_stats(v).des_b as usize, d);
        b += &Poly::var_pow("x", d as u32);
    }
    assert_eq!(count, 48);
    assert_eq!(b, poly("1 + 23*x + 23*x^2 + x^3"));
    assert_eq!(build_by_enumeration(FamilyId::B, 3, None).unwrap(), b);
}

// 2^n A_n = sum C(n, i) N_i N_{n-i} at n = 2 by hand: 4(x + x^2) = 2 N_2 + 2 N_1^2 = 4x + 2x^2 + 2x^2.
#[test]
fn convolution_small_by_hand() {
    let a2 = build_by_recurrence(FamilyId::A, 2, None).unwrap();
    assert_eq!(a2, poly("x + x^2"));
    let n1 = build_by_recurrence(FamilyId::N, 1, None).unwrap();
    let n2 = build_by_recurrence(FamilyId::N, 2, None).unwrap();
    assert_eq!(a2.scale(&4.into()), &n2.scale(&2.into()) + &(&n1 * &n1).scale(&2.into()));
}

#[test]
fn ak_at_k1_is_eulerian() {
    for n in 1..=7 {
        let a = build_by_recurrence(FamilyId::A, n, None).unwrap();
        let ak = build_by_recurrence(FamilyId::Ak, n, Some(KParam::Int(1))).unwrap();
        assert_eq!(&poly("x") * &ak, a);
    }
}

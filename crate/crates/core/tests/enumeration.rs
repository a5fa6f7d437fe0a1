use involution_paths::oracle::brute_force_members;
use involution_paths::perm::{contains_pattern, enumerate, enumerate_filtered, is_involution, Constraint};
use involution_paths::qalg::binomial;
use involution_paths::verify::{genfun, GenFunSpec};
use involution_paths::{Exec, Family, Pattern, Permutation, Stat};
use num_bigint::BigInt;
use proptest::prelude::*;

fn entries(ps: Vec<Permutation>) -> Vec<Vec<usize>> {
    ps.into_iter().map(|p| p.entries().to_vec()).collect()
}

#[test]
fn enumeration_matches_brute_force() {
    for family in [Family::I321, Family::I123] {
        for n in 0..=12 {
            let mut expected = brute_force_members(family, n).unwrap();
            expected.sort();
            assert_eq!(entries(enumerate(family, n)), expected, "{family} n={n}");
        }
    }
    for family in [Family::S321, Family::S123, Family::Inv, Family::All] {
        for n in 0..=8 {
            let mut expected = brute_force_members(family, n).unwrap();
            expected.sort();
            assert_eq!(entries(enumerate(family, n)), expected, "{family} n={n}");
        }
    }
}

#[test]
fn central_binomial_counts() {
    for n in 0..=16i64 {
        let c = binomial(n, n / 2);
        for family in [Family::I321, Family::I123] {
            assert_eq!(BigInt::from(enumerate(family, n as usize).len()), c, "{family} n={n}");
        }
    }
}

#[test]
fn lead_counts_sum_to_total() {
    for n in 1..=16i64 {
        let total: BigInt = (1..=n / 2 + 1).map(|l| binomial(n - l, (n + 1) / 2 - 1)).sum();
        assert_eq!(total, binomial(n, n / 2), "n={n}");
        for l in 1..=n / 2 + 1 {
            let c = Constraint::new(Stat::Lead, l).unwrap();
            let got = enumerate_filtered(Family::I321, n as usize, c).len();
            assert_eq!(BigInt::from(got), binomial(n - l, (n + 1) / 2 - 1), "n={n} l={l}");
        }
    }
}

#[test]
fn sums_do_not_depend_on_order_or_mode() {
    for n in 0..=10 {
        let spec = GenFunSpec::weighted(Family::I321, n, Stat::Lead).signed(Stat::Maj);
        let forward: i64 = enumerate(Family::I321, n)
            .iter()
            .map(|p| if p.stat(Stat::Maj) % 2 == 0 { 1 } else { -1 })
            .sum();
        let backward: i64 = enumerate(Family::I321, n)
            .iter()
            .rev()
            .map(|p| if p.stat(Stat::Maj) % 2 == 0 { 1 } else { -1 })
            .sum();
        assert_eq!(forward, backward);
        let seq = genfun(&spec, Exec::Sequential);
        assert_eq!(seq, genfun(&spec, Exec::Parallel));
        assert_eq!(seq.evaluate(1).unwrap(), BigInt::from(forward));
    }
}

fn permutation(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (0..=max).prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
}

proptest! {
    #[test]
    fn stat_record_is_consistent(e in permutation(12)) {
        let p = Permutation::new(e.clone()).unwrap();
        let s = p.stats();
        prop_assert_eq!(s.des, s.des_set.len());
        prop_assert_eq!(s.maj, s.des_set.iter().sum::<usize>() as u64);
        prop_assert_eq!(s.ldes, s.des_set.last().copied().unwrap_or(0));
        prop_assert_eq!(s.lead, e.first().copied());
        for stat in Stat::ALL {
            let field = match stat {
                Stat::Inv => s.inv as i64,
                Stat::Des => s.des as i64,
                Stat::Maj => s.maj as i64,
                Stat::Ldes => s.ldes as i64,
                Stat::Lead => s.lead.unwrap_or(0) as i64,
            };
            prop_assert_eq!(p.stat(stat), field);
        }
    }

    #[test]
    fn text_roundtrip(e in permutation(14)) {
        let p = Permutation::new(e).unwrap();
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn pattern_test_matches_triple_scan(e in permutation(10)) {
        for pattern in [Pattern::P321, Pattern::P123] {
            let mut naive = false;
            for i in 0..e.len() {
                for j in i + 1..e.len() {
                    for k in j + 1..e.len() {
                        naive |= match pattern {
                            Pattern::P321 => e[i] > e[j] && e[j] > e[k],
                            Pattern::P123 => e[i] < e[j] && e[j] < e[k],
                        };
                    }
                }
            }
            prop_assert_eq!(contains_pattern(&e, pattern), naive);
        }
        let inverse_equal = e.iter().enumerate().all(|(i, &v)| e[v - 1] == i + 1);
        prop_assert_eq!(is_involution(&e), inverse_equal);
    }

    #[test]
    fn family_membership_agrees_with_enumeration(n in 0usize..=9, pick in any::<prop::sample::Index>()) {
        let members = enumerate(Family::I321, n);
        let p = &members[pick.index(members.len())];
        prop_assert!(Family::I321.contains(p));
        prop_assert!(p.is_involution() && !p.contains_pattern(Pattern::P321));
    }
}

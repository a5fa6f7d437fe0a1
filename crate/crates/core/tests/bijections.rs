use std::collections::{BTreeSet, HashMap};

use involution_paths::bijection::{delta, delta_inv, from_grand, to_grand, xi, xi_inv, CoupledPath};
use involution_paths::path::{grand_paths, partial_dyck_paths};
use involution_paths::perm::enumerate;
use involution_paths::qalg::binomial;
use involution_paths::rsk::{inverse_rsk, rsk, transpose_involution};
use involution_paths::{Family, LatticePath, Pattern, Permutation, Stat, Step};
use num_bigint::BigInt;
use proptest::prelude::*;

fn peak_sums(p: &LatticePath) -> Vec<usize> {
    let mut v: Vec<usize> = p.peaks().iter().map(|c| c.x + c.y).collect();
    v.sort_unstable();
    v
}

#[test]
fn to_grand_is_a_bijection() {
    for n in 0..=14 {
        let members = enumerate(Family::I321, n);
        let mut image = BTreeSet::new();
        for sigma in &members {
            let pi = to_grand(sigma).unwrap();
            assert_eq!(from_grand(&pi, n).unwrap(), *sigma);
            image.insert(pi);
        }
        assert_eq!(BigInt::from(image.len()), binomial(n as i64, n as i64 / 2));
        let target: BTreeSet<LatticePath> = grand_paths(n / 2, n.div_ceil(2)).into_iter().collect();
        assert_eq!(image, target, "n={n}");
    }
}

#[test]
fn statistics_are_transported() {
    for n in 0..=14 {
        for sigma in enumerate(Family::I321, n) {
            let tau = delta(&sigma).unwrap();
            let pi = xi(&tau).unwrap();
            let maj = sigma.stat(Stat::Maj) as usize;
            assert_eq!(tau.sump(), maj);
            assert_eq!(pi.sump(), maj);
            let des = sigma.stat(Stat::Des) as usize;
            assert_eq!(tau.peaks().len(), des);
            assert_eq!(pi.peaks().len(), des);
            assert_eq!(peak_sums(&tau), peak_sums(&pi));
            if n > 0 {
                let lead = sigma.stat(Stat::Lead) as usize;
                assert_eq!(pi.b_subset_index().unwrap() + 1, lead);
                assert!((1..=n / 2 + 1).contains(&lead));
            }
        }
    }
}

#[test]
fn delta_and_xi_invert_on_their_domains() {
    for n in 0..=14 {
        for tau in partial_dyck_paths(n) {
            let sigma = delta_inv(&tau).unwrap();
            assert!(Family::I321.contains(&sigma));
            assert_eq!(delta(&sigma).unwrap(), tau);
            let pi = xi(&tau).unwrap();
            assert_eq!(pi.endpoint(), (n.div_ceil(2), n / 2));
            assert_eq!(xi_inv(&pi).unwrap(), tau);
        }
    }
}

/// Partner of each north step found by following the slope-1 ray from its
/// midpoint to the first step midpoint it meets. Doubled coordinates.
fn ray_couples(path: &LatticePath) -> Vec<(usize, usize)> {
    let mut mids = HashMap::new();
    let (mut x, mut y) = (0i64, 0i64);
    for (i, &s) in path.steps().iter().enumerate() {
        match s {
            Step::N => {
                mids.insert((2 * x, 2 * y + 1), (i + 1, s));
                y += 1;
            }
            Step::E => {
                mids.insert((2 * x + 1, 2 * y), (i + 1, s));
                x += 1;
            }
        }
    }
    let limit = 2 * path.len() as i64 + 2;
    let mut out = Vec::new();
    for (&(mx, my), &(i, s)) in &mids {
        if s != Step::N {
            continue;
        }
        let hit = (1..=limit).find_map(|t| mids.get(&(mx + t, my + t)));
        if let Some(&(j, Step::E)) = hit {
            out.push((i, j));
        }
    }
    out.sort_unstable();
    out
}

#[test]
fn stack_matching_agrees_with_geometry() {
    for len in 0..=10 {
        for bits in 0u32..1 << len {
            let path = LatticePath::new(
                (0..len)
                    .map(|i| if bits >> i & 1 == 1 { Step::N } else { Step::E })
                    .collect(),
            );
            let c = CoupledPath::facing(&path);
            assert_eq!(c.couples, ray_couples(&path), "{path}");
            let paired: BTreeSet<usize> = c.couples.iter().flat_map(|&(a, b)| [a, b]).collect();
            assert_eq!(paired.len() + c.uncoupled.len() + c.uncoupled_east.len(), len);
        }
    }
}

#[test]
fn transpose_complements_descents() {
    for n in 0..=12 {
        for sigma in enumerate(Family::I321, n) {
            let t = transpose_involution(&sigma).unwrap();
            assert!(t.is_involution() && !t.contains_pattern(Pattern::P123), "{sigma}");
            assert_eq!(transpose_involution(&t).unwrap(), sigma);
            let des: BTreeSet<usize> = sigma.stats().des_set.into_iter().collect();
            let complement: Vec<usize> = (1..n).filter(|i| !des.contains(i)).collect();
            assert_eq!(t.stats().des_set, complement, "{sigma}");
        }
        let images: BTreeSet<Permutation> = enumerate(Family::I321, n)
            .iter()
            .map(|s| transpose_involution(s).unwrap())
            .collect();
        let i123: BTreeSet<Permutation> = enumerate(Family::I123, n).into_iter().collect();
        assert_eq!(images, i123);
    }
}

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max).prop_flat_map(|n| {
        Just((1..=n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|e| Permutation::new(e).unwrap())
    })
}

proptest! {
    #[test]
    fn rsk_roundtrip(sigma in permutation(12)) {
        let (p, q) = rsk(&sigma);
        prop_assert_eq!(p.shape(), q.shape());
        prop_assert_eq!(inverse_rsk(&p, &q).unwrap(), sigma.clone());
        prop_assert_eq!(p == q, sigma.is_involution());
    }

    #[test]
    fn rsk_of_inverse_swaps_tableaux(sigma in permutation(10)) {
        let mut inv = vec![0; sigma.len()];
        for (i, &v) in sigma.entries().iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        let (p, q) = rsk(&sigma);
        let (pi, qi) = rsk(&Permutation::new(inv).unwrap());
        prop_assert_eq!(p, qi);
        prop_assert_eq!(q, pi);
    }
}

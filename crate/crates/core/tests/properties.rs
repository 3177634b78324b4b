use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use orbitlab::orbit::Canonicalizer;
use orbitlab::residue::{sl2_order, StateCodec};
use orbitlab::*;
use proptest::prelude::*;

const GRID: [(u64, usize); 4] = [(2, 8), (3, 4), (5, 3), (7, 2)];

fn zp(p: u64, n: usize) -> GroupSpec {
    GroupSpec::uniform(p, n).unwrap()
}

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    prop::collection::vec(2u64..7, 0..4).prop_map(|m| GroupSpec::new(m).unwrap())
}

fn valid_word_strategy() -> impl Strategy<Value = Vec<u8>> {
    // each entry picks a letter in 1..=bound by taking it modulo the bound
    prop::collection::vec(any::<u8>(), 0..16).prop_map(|raw| {
        let mut max = 1u8;
        raw.into_iter()
            .map(|r| {
                let bound = (max + 1).min(4);
                let letter = r % bound + 1;
                max = max.max(letter);
                letter
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn index_round_trips(spec in spec_strategy(), seed in any::<u64>()) {
        let codec = StateCodec::new(&spec).unwrap();
        let i = seed % codec.state_count();
        let s = state_from_index(i, &spec).unwrap();
        prop_assert_eq!(state_index(&s).unwrap(), i);
    }

    #[test]
    fn right_action_composes(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        n in 0usize..4,
        seed in any::<u64>(),
        a in any::<prop::sample::Index>(),
        b in any::<prop::sample::Index>(),
    ) {
        let spec = zp(p, n);
        let group = enumerate_sl2(p).unwrap();
        let (a, b) = (a.get(&group), b.get(&group));
        let codec = StateCodec::new(&spec).unwrap();
        let s = codec.state(seed % codec.state_count()).unwrap();
        let lhs = apply_mat(&apply_mat(&s, a).unwrap(), b).unwrap();
        let rhs = apply_mat(&s, &a.mul(b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn prefixes_of_valid_words_are_valid(letters in valid_word_strategy()) {
        prop_assert!(is_valid_word(&letters));
        for cut in 0..letters.len() {
            prop_assert!(is_valid_word(&letters[..cut]));
        }
    }

    #[test]
    fn encoded_shape_matches_length(letters in valid_word_strategy()) {
        prop_assume!(!letters.is_empty());
        let w = RGWord::new(letters.clone()).unwrap();
        let s = encode_word(&w).unwrap();
        prop_assert_eq!(s.spec(), &zp(2, letters.len()));
        for (row, &l) in s.rows().zip(&letters) {
            prop_assert_eq!(row, encode_letter(l).unwrap());
        }
    }
}

#[test]
fn sl2_is_distinct_and_special() {
    for p in [2, 3, 5, 7, 11, 13] {
        let group = enumerate_sl2(p).unwrap();
        let distinct: BTreeSet<_> = group.iter().collect();
        assert_eq!(distinct.len(), group.len());
        assert_eq!(BigInt::from(group.len()), BigInt::from(sl2_order(p)));
        for m in &group {
            let [a, b, c, d] = m.entries();
            assert_eq!((a * d + p * p - b * c) % p, 1);
        }
    }
}

#[test]
fn three_methods_agree_on_grid() {
    let engine = OrbitEngine::new();
    for (p, n_max) in GRID {
        for n in 0..=n_max {
            let spec = zp(p, n);
            let bfs = engine.count_orbits_bfs(&spec).unwrap().orbit_count;
            let canonical = engine.count_orbits_canonical(&spec).unwrap().orbit_count;
            let burnside = engine.count_orbits_burnside(&spec).unwrap().orbit_count;
            assert_eq!(bfs, canonical, "p={p} n={n}");
            assert_eq!(bfs, burnside, "p={p} n={n}");
            assert_eq!(bfs, r_formula(p, n as i64).unwrap(), "p={p} n={n}");
        }
    }
}

#[test]
fn summaries_conserve_and_divide() {
    let engine = OrbitEngine::new();
    for (p, n_max) in GRID {
        let group_order = BigInt::from(sl2_order(p));
        for n in 0..=n_max {
            let list = engine.orbit_summaries_zp(p, n).unwrap();
            let total: BigInt = list.iter().map(|s| &s.size).sum();
            assert_eq!(total, BigInt::from(p).pow(2 * n as u32));
            for s in &list {
                assert_eq!(&group_order % &s.size, BigInt::from(0));
                assert_eq!(s.stabilizer_order.clone().unwrap() * &s.size, group_order);
            }
        }
    }
}

#[test]
fn difference_law_on_grid() {
    let engine = OrbitEngine::new();
    for (p, n_max) in GRID {
        let counts: Vec<BigInt> = (0..=n_max)
            .map(|n| engine.count_orbits_bfs(&zp(p, n)).unwrap().orbit_count)
            .collect();
        for n in 1..n_max {
            assert_eq!(&counts[n + 1] - &counts[n], f_closed(p, n as u64).unwrap());
        }
    }
}

#[test]
fn canonical_form_is_constant_on_bfs_orbits() {
    for (p, n_max) in [(2, 3), (3, 2)] {
        for n in 0..=n_max {
            let spec = zp(p, n);
            let codec = StateCodec::new(&spec).unwrap();
            for i in 0..codec.state_count() {
                let s = codec.state(i).unwrap();
                let c = canonical_form(&s).unwrap();
                for member in orbit_of(&s) {
                    assert_eq!(canonical_form(&member).unwrap(), c);
                }
            }
        }
    }
}

#[test]
fn word_counts_match_closed_form() {
    for m in 0..=30 {
        assert_eq!(count_words(m), r_formula(2, m as i64).unwrap());
    }
    for m in 0..=10 {
        assert_eq!(
            BigInt::from(enumerate_words(m).unwrap().len()),
            count_words(m as u64)
        );
    }
}

#[test]
fn encoding_is_injective_on_states() {
    for m in 1..=8 {
        let states: BTreeSet<PairState> = enumerate_words(m)
            .unwrap()
            .iter()
            .map(|w| encode_word(w).unwrap())
            .collect();
        assert_eq!(BigInt::from(states.len()), count_words(m as u64));
    }
}

#[test]
fn bridge_is_bijective_through_m10() {
    let engine = OrbitEngine::new();
    for m in 1..=10 {
        let report = verify_bridge(m, &engine).unwrap();
        assert!(
            report.is_surjective_on_orbits,
            "m={m}: {:?}",
            report.missed_orbits
        );
        assert!(
            report.is_injective_on_orbits,
            "m={m}: {:?}",
            report.collisions
        );
        assert_eq!(report.word_count, report.orbit_count);
        assert_eq!(report.word_count, r_formula(2, m as i64).unwrap());
    }
}

#[test]
fn bridge_hits_each_orbit_once_by_bfs_oracle() {
    // orbit ids from the S/T closure rather than the canonicalizer
    let m = 4;
    let spec = zp(2, m);
    let codec = StateCodec::new(&spec).unwrap();
    let mut orbit_id = BTreeMap::new();
    for i in 0..codec.state_count() {
        let s = codec.state(i).unwrap();
        if orbit_id.contains_key(&s) {
            continue;
        }
        for member in orbit_of(&s) {
            orbit_id.insert(member, i);
        }
    }
    let orbits: BTreeSet<u64> = orbit_id.values().copied().collect();
    let hit: Vec<u64> = enumerate_words(m)
        .unwrap()
        .iter()
        .map(|w| orbit_id[&encode_word(w).unwrap()])
        .collect();
    let hit_set: BTreeSet<u64> = hit.iter().copied().collect();
    assert_eq!(hit.len(), hit_set.len());
    assert_eq!(hit_set, orbits);
}

#[test]
fn canonicalizer_agrees_with_value_level_canonical_form() {
    let spec = zp(3, 3);
    let canon = Canonicalizer::new(&spec).unwrap();
    let codec = canon.codec();
    for i in (0..codec.state_count()).step_by(7) {
        let s = codec.state(i).unwrap();
        assert_eq!(
            canon.canonical_index(i),
            codec.index(&canonical_form(&s).unwrap())
        );
    }
}

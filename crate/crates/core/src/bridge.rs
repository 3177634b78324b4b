//! From restricted-growth words to pair states over `Z_2^m`.
//!
//! Letter `i` of a word becomes matrix row `i`:
//!
//! | letter | row `(g_i, k_i)` |
//! |--------|------------------|
//! | 1      | 00               |
//! | 2      | 10               |
//! | 3      | 11               |
//! | 4      | 01               |
//!
//! [`verify_bridge`] checks whether the induced map from words of length `m`
//! to orbits of `Z_2^m x Z_2^m` is onto and one-to-one, and returns explicit
//! counterexamples when it is not.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::orbit::{Canonicalizer, OrbitEngine};
use crate::residue::{GroupSpec, PairState};
use crate::rg::{count_words, RGWord, Words};

pub fn encode_letter(letter: u8) -> Result<(u64, u64)> {
    match letter {
        1 => Ok((0, 0)),
        2 => Ok((1, 0)),
        3 => Ok((1, 1)),
        4 => Ok((0, 1)),
        other => Err(Error::InvalidLetter(other as u32)),
    }
}

/// Row `i` of the result is the encoding of letter `i`.
pub fn encode_word(word: &RGWord) -> Result<PairState> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let spec = GroupSpec::uniform(2, word.len())?;
    let rows = word
        .letters()
        .iter()
        .map(|&l| encode_letter(l))
        .collect::<Result<Vec<_>>>()?;
    PairState::from_rows(&spec, &rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeReport {
    pub m: usize,
    pub word_count: BigInt,
    pub orbit_count: BigInt,
    pub is_injective_on_orbits: bool,
    pub is_surjective_on_orbits: bool,
    /// Pairs of words landing in one orbit; the first word is the earliest
    /// one seen for that orbit.
    pub collisions: Vec<(RGWord, RGWord)>,
    /// Canonical representatives of orbits that no word reaches.
    pub missed_orbits: Vec<PairState>,
}

impl BridgeReport {
    pub fn is_bijective(&self) -> bool {
        self.is_injective_on_orbits && self.is_surjective_on_orbits
    }
}

/// Encodes every word of length `m` and compares the orbits hit against all
/// orbits of `Z_2^m`.
pub fn verify_bridge(m: usize, engine: &OrbitEngine) -> Result<BridgeReport> {
    if m == 0 {
        return Err(Error::ArgumentTooSmall {
            name: "m",
            value: 0,
            min: 1,
        });
    }
    let spec = GroupSpec::uniform(2, m)?;
    engine.check_budget(&spec, "encoding verification")?;
    let canon = Canonicalizer::new(&spec)?;
    let codec = canon.codec();

    let mut hit: BTreeMap<u64, RGWord> = BTreeMap::new();
    let mut collisions = Vec::new();
    let mut word_count = 0u64;
    for word in Words::new(m) {
        word_count += 1;
        let state = encode_word(&word)?;
        let c = canon.canonical_index(codec.index(&state));
        match hit.entry(c) {
            Entry::Vacant(slot) => {
                slot.insert(word);
            }
            Entry::Occupied(first) => collisions.push((first.get().clone(), word)),
        }
    }

    let mut orbit_count = 0u64;
    let mut missed_orbits = Vec::new();
    for i in 0..codec.state_count() {
        if canon.canonical_index(i) == i {
            orbit_count += 1;
            if !hit.contains_key(&i) {
                missed_orbits.push(codec.state(i)?);
            }
        }
    }

    debug_assert_eq!(BigInt::from(word_count), count_words(m as u64));
    Ok(BridgeReport {
        m,
        word_count: word_count.into(),
        orbit_count: orbit_count.into(),
        is_injective_on_orbits: collisions.is_empty(),
        is_surjective_on_orbits: missed_orbits.is_empty(),
        collisions,
        missed_orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::canonical_form;
    use crate::rg::enumerate_words;

    fn word(s: &str) -> RGWord {
        s.parse().unwrap()
    }

    fn rows(s: &PairState) -> Vec<(u64, u64)> {
        s.rows().collect()
    }

    #[test]
    fn letter_table() {
        assert_eq!(encode_letter(2).unwrap(), (1, 0));
        assert_eq!(encode_letter(3).unwrap(), (1, 1));
        assert_eq!(encode_letter(1).unwrap(), (0, 0));
        assert_eq!(encode_letter(4).unwrap(), (0, 1));
        assert_eq!(encode_letter(5), Err(Error::InvalidLetter(5)));
        assert_eq!(encode_letter(0), Err(Error::InvalidLetter(0)));
    }

    #[test]
    fn word_examples() {
        assert!(encode_word(&word("11")).unwrap().is_zero());
        assert_eq!(rows(&encode_word(&word("12")).unwrap()), [(0, 0), (1, 0)]);
        assert_eq!(rows(&encode_word(&word("21")).unwrap()), [(1, 0), (0, 0)]);
        assert_eq!(rows(&encode_word(&word("22")).unwrap()), [(1, 0), (1, 0)]);
        assert_eq!(rows(&encode_word(&word("23")).unwrap()), [(1, 0), (1, 1)]);
        assert_eq!(
            rows(&encode_word(&word("234")).unwrap()),
            [(1, 0), (1, 1), (0, 1)]
        );
        assert_eq!(encode_word(&word("")), Err(Error::EmptyWord));
    }

    #[test]
    fn small_bridges_are_bijective() {
        let engine = OrbitEngine::new();
        let r2 = verify_bridge(2, &engine).unwrap();
        assert_eq!(
            (r2.word_count.clone(), r2.orbit_count.clone()),
            (5.into(), 5.into())
        );
        assert!(r2.is_bijective());
        assert!(r2.collisions.is_empty() && r2.missed_orbits.is_empty());
        let r1 = verify_bridge(1, &engine).unwrap();
        assert_eq!(
            (r1.word_count.clone(), r1.orbit_count.clone()),
            (2.into(), 2.into())
        );
        assert!(r1.is_bijective());
    }

    #[test]
    fn bridge_errors() {
        assert!(verify_bridge(0, &OrbitEngine::new()).is_err());
        assert!(matches!(
            verify_bridge(5, &OrbitEngine::with_budget(1000)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn encoded_words_land_on_distinct_orbits() {
        // independent of the Canonicalizer: canonical_form on PairState values
        for m in 1..=4 {
            let mut seen = std::collections::BTreeSet::new();
            for w in enumerate_words(m).unwrap() {
                let s = encode_word(&w).unwrap();
                assert_eq!(s.spec().n(), m);
                assert!(seen.insert(canonical_form(&s).unwrap()));
            }
        }
    }
}

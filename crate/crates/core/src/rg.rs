//! Restricted-growth words over `{1, 2, 3, 4}`.
//!
//! A word is valid when, reading left to right with an implicit leading `1`,
//! every letter is at most one more than the largest letter seen so far.
//! Length counts the displayed letters only, so there are `r(2, m)` words of
//! length `m`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

pub const ALPHABET_MAX: u8 = 4;

/// Default cap on the number of words [`enumerate_words`] will materialize.
pub const DEFAULT_WORD_BUDGET: u64 = 1 << 24;

/// Checks the growth rule and reports the first violation.
pub fn validate(letters: &[u8]) -> Result<()> {
    let mut running_max = 1u8;
    for (pos, &letter) in letters.iter().enumerate() {
        if !(1..=ALPHABET_MAX).contains(&letter) {
            return Err(Error::InvalidLetter(letter as u32));
        }
        let bound = (running_max + 1).min(ALPHABET_MAX);
        if letter > bound {
            return Err(Error::GrowthBound {
                position: pos + 1,
                letter: letter as u32,
                bound: bound as u32,
            });
        }
        running_max = running_max.max(letter);
    }
    Ok(())
}

pub fn is_valid_word(letters: &[u8]) -> bool {
    validate(letters).is_ok()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RGWord {
    letters: Vec<u8>,
}

impl RGWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        validate(&letters)?;
        Ok(RGWord { letters })
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl FromStr for RGWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<Vec<u8>>>()
            .ok_or_else(|| Error::UnparsableWord(s.to_string()))?;
        RGWord::new(letters)
    }
}

impl fmt::Display for RGWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Lexicographic stream of all valid words of one length.
///
/// Each step bumps the rightmost letter that still has room under its prefix
/// bound and resets the suffix to `1`s.
#[derive(Clone, Debug)]
pub struct Words {
    current: Option<Vec<u8>>,
}

impl Words {
    pub fn new(m: usize) -> Self {
        Words {
            current: Some(vec![1; m]),
        }
    }
}

impl Iterator for Words {
    type Item = RGWord;

    fn next(&mut self) -> Option<RGWord> {
        let word = self.current.take()?;
        let mut next = word.clone();
        let mut prefix_max = Vec::with_capacity(next.len());
        let mut running = 1u8;
        for &l in &next {
            prefix_max.push(running);
            running = running.max(l);
        }
        if let Some(pos) = (0..next.len())
            .rev()
            .find(|&i| next[i] < (prefix_max[i] + 1).min(ALPHABET_MAX))
        {
            next[pos] += 1;
            next[pos + 1..].fill(1);
            self.current = Some(next);
        }
        Some(RGWord { letters: word })
    }
}

/// All valid words of length `m`, in lexicographic order.
pub fn enumerate_words(m: usize) -> Result<Vec<RGWord>> {
    enumerate_words_with_budget(m, DEFAULT_WORD_BUDGET)
}

pub fn enumerate_words_with_budget(m: usize, budget: u64) -> Result<Vec<RGWord>> {
    Ok(words_with_budget(m, budget)?.collect())
}

/// Lazy version of [`enumerate_words_with_budget`]; the budget is checked up front.
pub fn words_with_budget(m: usize, budget: u64) -> Result<Words> {
    let needed = count_words(m as u64);
    if needed > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            what: "word enumeration",
            required: needed.to_string(),
            budget,
        });
    }
    Ok(Words::new(m))
}

/// Number of valid words of length `m`, by dynamic programming over the
/// running maximum.
pub fn count_words(m: u64) -> BigInt {
    // by_max[j] = number of prefixes whose running maximum is j + 1
    let mut by_max: [BigInt; ALPHABET_MAX as usize] = Default::default();
    by_max[0] = BigInt::from(1);
    for _ in 0..m {
        let mut next: [BigInt; ALPHABET_MAX as usize] = Default::default();
        for (j, count) in by_max.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            let max = j + 1;
            // letters 1..=max keep the maximum
            next[j] += count * BigInt::from(max);
            if max < ALPHABET_MAX as usize {
                next[j + 1] += count;
            }
        }
        by_max = next;
    }
    by_max.into_iter().sum()
}

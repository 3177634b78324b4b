use num_bigint::BigInt;
use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is invalid, every modulus must be at least 2")]
    InvalidModulus(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("operation requires a uniform prime group Z_p^n, got moduli {0:?}")]
    NotUniformPrime(Vec<u64>),

    #[error("incompatible group specs: {0}")]
    SpecMismatch(String),

    #[error("matrix [[{a},{b}],[{c},{d}]] has determinant {det} mod {p}, expected 1")]
    NotSpecialLinear {
        p: u64,
        a: u64,
        b: u64,
        c: u64,
        d: u64,
        det: u64,
    },

    #[error("state index {index} out of range, the group has {count} states")]
    IndexOutOfRange { index: u64, count: u64 },

    #[error("state space of {0} states does not fit a 64-bit index")]
    IndexOverflow(String),

    #[error("{what} needs {required} states, which exceeds the budget of {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: String,
        budget: u64,
    },

    #[error("argument {name} = {value} is below the minimum {min}")]
    ArgumentTooSmall {
        name: &'static str,
        value: i64,
        min: i64,
    },

    #[error("exact division failed: {numerator} is not divisible by {denominator}")]
    InexactDivision {
        numerator: BigInt,
        denominator: BigInt,
    },

    #[error("letter {0} is outside the alphabet {{1,2,3,4}}")]
    InvalidLetter(u32),

    #[error("letter {letter} at position {position} violates the growth bound: at most {bound} allowed there")]
    GrowthBound {
        position: usize,
        letter: u32,
        bound: u32,
    },

    #[error("cannot parse {0:?} as a word, expected a string of digits 1-4")]
    UnparsableWord(String),

    #[error("the empty word has no encoding, words must have length at least 1")]
    EmptyWord,
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised while building moduli, classes, fields and sequences.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factor list is empty")]
    EmptyFactorList,

    #[error("exponent of {prime} must be at least 1")]
    ZeroExponent { prime: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} is even or listed more than once")]
    EvenOrRepeatedPrime(u64),

    #[error(
        "gcd condition violated for factors {i} and {j} ({p_i}^{e_i} and {p_j}^{e_j}): gcd = {gcd}, expected 2"
    )]
    GcdConditionViolated {
        i: usize,
        j: usize,
        p_i: u64,
        e_i: u32,
        p_j: u64,
        e_j: u32,
        gcd: u64,
    },

    #[error("modulus does not fit below 2^63")]
    Overflow,

    #[error("{g} is not a primitive root modulo {modulus}")]
    NotPrimitiveRoot { g: u64, modulus: u64 },

    #[error("vector for divisor {divisor} is zero")]
    ZeroVector { divisor: u64 },

    #[error("vector for divisor {divisor} has {got} bits, expected {expected}")]
    VectorLength {
        divisor: u64,
        expected: usize,
        got: usize,
    },

    #[error("{d} is not a divisor greater than 1 of {n}")]
    NotADivisor { d: u64, n: u64 },

    #[error("no vector assigned to divisor {0}")]
    MissingDivisorVector(u64),

    #[error("malformed line {line}: {reason}")]
    MalformedSpec { line: usize, reason: String },

    #[error("gcd of two zero polynomials is undefined")]
    BothZero,

    #[error("period {n} needs GF(2^{m}) but the degree cap is {cap}")]
    DegreeCapExceeded { n: u64, m: u64, cap: u64 },

    #[error("period {0} must be odd and greater than 1")]
    InvalidPeriod(u64),

    #[error("no closed form for primes {p1} and {p2}: both must be 3 mod 4")]
    OutsideCaseTable { p1: u64, p2: u64 },

    #[error("malformed sequence: {0}")]
    MalformedSequence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

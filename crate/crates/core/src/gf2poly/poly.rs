use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use crate::error::{Error, Result};

/// Polynomial over GF(2), bit `i` of the word vector is the coefficient of
/// `x^i`. The top word is never zero, so the zero polynomial has no words.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly2 {
    words: Vec<u64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { words: Vec::new() }
    }

    pub fn one() -> Self {
        Poly2 { words: vec![1] }
    }

    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / 64 + 1];
        words[k / 64] = 1 << (k % 64);
        Poly2 { words }
    }

    /// `x^n + 1`.
    pub fn x_pow_plus_one(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.toggle(0);
        p
    }

    /// Low bits of `v` as coefficients.
    pub fn from_u64(v: u64) -> Self {
        Self::from_words(vec![v])
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = Poly2 { words };
        p.trim();
        p
    }

    /// `Σ x^i` over the given exponents (repeated exponents cancel).
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = Poly2::zero();
        for e in exps {
            p.toggle(e);
        }
        p
    }

    /// `Σ bits[i] x^i`.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut words = vec![0u64; bits.len().div_ceil(64)];
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Self::from_words(words)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some(64 * (self.words.len() - 1) + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.words
            .get(i / 64)
            .map_or(0, |w| ((w >> (i % 64)) & 1) as u8)
    }

    pub fn toggle(&mut self, i: usize) {
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] ^= 1 << (i % 64);
        self.trim();
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            (0..64)
                .filter(move |b| (w >> b) & 1 == 1)
                .map(move |b| 64 * k + b)
        })
    }

    /// `self ^= other · x^shift` without trimming.
    fn xor_shifted(&mut self, other: &[u64], shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let need = ws + other.len() + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        for (k, &w) in other.iter().enumerate() {
            self.words[ws + k] ^= w << bs;
            if bs != 0 {
                self.words[ws + k + 1] ^= w >> (64 - bs);
            }
        }
    }

    pub fn shl(&self, k: usize) -> Self {
        let mut p = Poly2::zero();
        p.xor_shifted(&self.words, k);
        p.trim();
        p
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Poly2) -> (Poly2, Poly2) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly2::zero();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            rem.xor_shifted(&divisor.words, shift);
            rem.trim();
            quot.toggle(shift);
        }
        (quot, rem)
    }

    pub fn rem(&self, divisor: &Poly2) -> Poly2 {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            rem.xor_shifted(&divisor.words, dr - dd);
            rem.trim();
        }
        rem
    }

    pub fn mul_mod(&self, other: &Poly2, modulus: &Poly2) -> Poly2 {
        (self * other).rem(modulus)
    }
}

/// Monic gcd by Euclid's algorithm.
pub fn poly_gcd(a: &Poly2, b: &Poly2) -> Result<Poly2> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    Ok(a)
}

impl AddAssign<&Poly2> for Poly2 {
    fn add_assign(&mut self, rhs: &Poly2) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (w, r) in self.words.iter_mut().zip(&rhs.words) {
            *w ^= r;
        }
        self.trim();
    }
}

impl Add for &Poly2 {
    type Output = Poly2;

    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;

    fn mul(self, rhs: &Poly2) -> Poly2 {
        let (small, big) = if self.weight() <= rhs.weight() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Poly2 {
            words: Vec::with_capacity(self.words.len() + rhs.words.len() + 1),
        };
        for e in small.exponents() {
            out.xor_shifted(&big.words, e);
        }
        out.trim();
        out
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let exps: Vec<usize> = self.exponents().collect();
        let terms: Vec<String> = exps
            .iter()
            .rev()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

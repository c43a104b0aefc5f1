//! Linear complexity of one period by three independent routes:
//! Berlekamp-Massey over two periods, `n - deg gcd(S(x), x^n + 1)`, and
//! counting the roots of `S` among the powers of a primitive `n`-th root of
//! unity.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2poly::{berlekamp_massey, poly_gcd, BinaryField, Poly2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Bm,
    Gcd,
    Spectral,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Bm => "BM",
            Method::Gcd => "GCD",
            Method::Spectral => "SPECTRAL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinComplexity {
    pub value: usize,
    pub method: Method,
    /// Number of `v ∈ 0..n` with `S(alpha^v) = 0`; absent for BM.
    pub zero_count: Option<usize>,
    /// The spectral zero set itself, only for the spectral method.
    pub zeros: Option<Vec<u64>>,
}

/// `S(x) = Σ_{i : s_i = 1} x^i`.
pub fn sequence_polynomial(bits: &[u8]) -> Poly2 {
    Poly2::from_bits(bits)
}

pub fn lincomp_bm(bits: &[u8]) -> LinComplexity {
    let mut two = Vec::with_capacity(2 * bits.len());
    two.extend_from_slice(bits);
    two.extend_from_slice(bits);
    LinComplexity {
        value: berlekamp_massey(&two),
        method: Method::Bm,
        zero_count: None,
        zeros: None,
    }
}

pub fn lincomp_gcd(bits: &[u8]) -> LinComplexity {
    let n = bits.len();
    let g = poly_gcd(&sequence_polynomial(bits), &Poly2::x_pow_plus_one(n))
        .expect("x^n + 1 is nonzero");
    let zeros = g.degree().expect("gcd is nonzero");
    LinComplexity {
        value: n - zeros,
        method: Method::Gcd,
        zero_count: Some(zeros),
        zeros: None,
    }
}

/// `S(alpha^v)` for `v = 0..n`.
pub fn spectrum(bits: &[u8], field: &BinaryField) -> Result<Vec<Poly2>> {
    let n = bits.len() as u64;
    if field.n() != n {
        return Err(Error::InvalidPeriod(n));
    }
    let table = field.power_table();
    let support: Vec<u64> = (0..n).filter(|&i| bits[i as usize] & 1 == 1).collect();
    Ok((0..n)
        .map(|v| table.sum_at(support.iter().copied(), v))
        .collect())
}

pub fn lincomp_spectral(bits: &[u8], field: &BinaryField) -> Result<LinComplexity> {
    let values = spectrum(bits, field)?;
    let zeros: Vec<u64> = values
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_zero())
        .map(|(v, _)| v as u64)
        .collect();
    Ok(LinComplexity {
        value: bits.len() - zeros.len(),
        method: Method::Spectral,
        zero_count: Some(zeros.len()),
        zeros: Some(zeros),
    })
}

use num_bigint::BigUint;
use num_traits::One;

use super::poly::{poly_gcd, Poly2};
use crate::error::{Error, Result};
use crate::numtheory::{factorize, order_of_two};

/// Default cap on the extension degree used by the spectral method.
pub const DEFAULT_DEGREE_CAP: u64 = 64;
/// Hard upper bound for the configurable degree cap.
pub const MAX_DEGREE_CAP: u64 = 512;

/// Rabin's test: `x^{2^m} ≡ x (mod f)` and `gcd(x^{2^{m/q}} - x, f) = 1` for
/// every prime `q | m`.
pub fn is_irreducible(f: &Poly2) -> bool {
    let Some(m) = f.degree() else { return false };
    if m == 0 {
        return false;
    }
    let x = Poly2::monomial(1).rem(f);
    // x^{2^k} mod f for k = 0..=m
    let mut frob = Vec::with_capacity(m + 1);
    frob.push(x.clone());
    for k in 0..m {
        let prev = &frob[k];
        frob.push(prev.mul_mod(prev, f));
    }
    if frob[m] != x {
        return false;
    }
    factorize(m as u64).into_iter().all(|(q, _)| {
        let h = &frob[m / q as usize] + &x;
        poly_gcd(&h, f).map(|g| g.is_one()).unwrap_or(false)
    })
}

/// Smallest irreducible polynomial of degree `m`, comparing coefficient
/// vectors as binary numbers.
pub fn smallest_irreducible(m: usize) -> Poly2 {
    let top = Poly2::monomial(m);
    let mut low = 1u64;
    loop {
        // Constant term 1 (else x divides) and odd weight (else x + 1 divides).
        if m == 1 || (low.count_ones() + 1) % 2 == 1 {
            let cand = &top + &Poly2::from_u64(low);
            if is_irreducible(&cand) {
                return cand;
            }
        }
        low += 2;
    }
}

/// GF(2^m) = GF(2)[x]/(f) together with a primitive `n`-th root of unity.
#[derive(Debug, Clone)]
pub struct BinaryField {
    n: u64,
    m: u64,
    modulus: Poly2,
    alpha: Poly2,
}

/// Builds the field holding a primitive `n`-th root of unity, where
/// `m = ord_n(2)` must not exceed `cap`.
pub fn build_field(n: u64, cap: u64) -> Result<BinaryField> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidPeriod(n));
    }
    let m = order_of_two(n);
    let cap = cap.min(MAX_DEGREE_CAP);
    if m > cap {
        return Err(Error::DegreeCapExceeded { n, m, cap });
    }
    let modulus = smallest_irreducible(m as usize);
    let mut field = BinaryField {
        n,
        m,
        modulus,
        alpha: Poly2::one(),
    };

    let cofactor = ((BigUint::one() << m) - BigUint::one()) / BigUint::from(n);
    let n_primes: Vec<u64> = factorize(n).into_iter().map(|(q, _)| q).collect();
    let mut candidate = 2u64;
    field.alpha = loop {
        let e = Poly2::from_u64(candidate).rem(&field.modulus);
        let a = field.pow_big(&e, &cofactor);
        if field.pow(&a, n).is_one() && n_primes.iter().all(|q| !field.pow(&a, n / q).is_one()) {
            break a;
        }
        candidate += 1;
    };
    Ok(field)
}

impl BinaryField {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> u64 {
        self.m
    }

    pub fn modulus_poly(&self) -> &Poly2 {
        &self.modulus
    }

    pub fn alpha(&self) -> &Poly2 {
        &self.alpha
    }

    pub fn mul(&self, a: &Poly2, b: &Poly2) -> Poly2 {
        a.mul_mod(b, &self.modulus)
    }

    pub fn pow(&self, a: &Poly2, mut e: u64) -> Poly2 {
        let mut base = a.clone();
        let mut acc = Poly2::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn pow_big(&self, a: &Poly2, e: &BigUint) -> Poly2 {
        let mut acc = Poly2::one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// `alpha^k`.
    pub fn alpha_pow(&self, k: u64) -> Poly2 {
        self.pow(&self.alpha, k % self.n)
    }

    /// Table of `alpha^0, …, alpha^{n-1}`.
    pub fn power_table(&self) -> PowerTable {
        let width = (self.m as usize).div_ceil(64);
        let mut data = Vec::with_capacity(width * self.n as usize);
        let mut cur = Poly2::one();
        for _ in 0..self.n {
            let mut w = cur.words().to_vec();
            w.resize(width, 0);
            data.extend_from_slice(&w);
            cur = self.mul(&cur, &self.alpha);
        }
        debug_assert!(cur.is_one());
        PowerTable {
            n: self.n,
            width,
            data,
        }
    }
}

/// Horner evaluation of `f` at a field element.
pub fn eval_poly(f: &Poly2, x: &Poly2, field: &BinaryField) -> Poly2 {
    let Some(deg) = f.degree() else {
        return Poly2::zero();
    };
    let mut acc = Poly2::zero();
    for i in (0..=deg).rev() {
        acc = field.mul(&acc, x);
        if f.coeff(i) == 1 {
            acc += &Poly2::one();
        }
    }
    acc
}

/// Flat table of the powers of `alpha`, for evaluating index-set sums
/// `S_A(alpha^v) = Σ_{i∈A} alpha^{v·i}` with additions only.
#[derive(Debug, Clone)]
pub struct PowerTable {
    n: u64,
    width: usize,
    data: Vec<u64>,
}

impl PowerTable {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn get(&self, k: u64) -> Poly2 {
        let k = (k % self.n) as usize;
        Poly2::from_words(self.data[k * self.width..(k + 1) * self.width].to_vec())
    }

    /// `Σ_{i ∈ exps} alpha^{v·i}`, exponents taken mod `n`.
    pub fn sum_at<I: IntoIterator<Item = u64>>(&self, exps: I, v: u64) -> Poly2 {
        let mut acc = vec![0u64; self.width];
        let v = (v % self.n) as u128;
        for i in exps {
            let k = ((v * i as u128) % self.n as u128) as usize;
            let row = &self.data[k * self.width..(k + 1) * self.width];
            for (a, r) in acc.iter_mut().zip(row) {
                *a ^= r;
            }
        }
        Poly2::from_words(acc)
    }
}

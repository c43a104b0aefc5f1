//! Elementary number theory over `u64`: primality, factorization,
//! primitive roots modulo odd prime powers, the CRT isomorphism
//! `Z_n ≅ Z_{p_1^{e_1}} × … × Z_{p_t^{e_t}}` and multiplicative orders.
//!
//! Products are computed through `u128`, so every modulus below 2^63 is safe.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest admissible modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 63;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let egcd = (a as i128 % m as i128).extended_gcd(&(m as i128));
    if egcd.gcd != 1 {
        return None;
    }
    Some(egcd.x.rem_euclid(m as i128) as u64)
}

// Sufficient for every n < 3.3 * 10^24.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut q) = (2u64, 2u64, 1u64);
        let mut g = 1u64;
        let mut r = 1u64;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
            continue;
        }
        let f = pollard_brent(m);
        stack.push(f);
        stack.push(m / f);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(1, |acc, (p, e)| acc * p.pow(e - 1) * (p - 1))
}

/// Carmichael's function: exponent of the unit group of `Z_n`.
pub fn carmichael(n: u64) -> u64 {
    factorize(n).into_iter().fold(1, |acc, (p, e)| {
        let lambda = match (p, e) {
            (2, 1) => 1,
            (2, 2) => 2,
            (2, _) => 1 << (e - 2),
            _ => p.pow(e - 1) * (p - 1),
        };
        acc.lcm(&lambda)
    })
}

/// Order of `a` in `Z_n*`, or `None` when `a` is not a unit.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if a.gcd(&n) != 1 {
        return None;
    }
    let lambda = carmichael(n);
    let mut order = lambda;
    for (q, _) in factorize(lambda) {
        while order.is_multiple_of(q) && pow_mod(a, order / q, n) == 1 {
            order /= q;
        }
    }
    Some(order)
}

/// Multiplicative order of 2 modulo an odd `n > 1`; this is the degree of
/// the smallest extension of GF(2) holding a primitive `n`-th root of unity.
pub fn order_of_two(n: u64) -> u64 {
    debug_assert!(n > 1 && n % 2 == 1);
    multiplicative_order(2, n).expect("n is odd")
}

/// Is `g` a generator of `Z_{p^e}*`?
pub fn is_primitive_root(g: u64, p: u64, e: u32) -> bool {
    let q = p.pow(e);
    if g.is_multiple_of(p) {
        return false;
    }
    let group = p.pow(e - 1) * (p - 1);
    let mut primes: Vec<u64> = factorize(p - 1).into_iter().map(|(r, _)| r).collect();
    if e > 1 {
        primes.push(p);
    }
    primes.iter().all(|&r| pow_mod(g, group / r, q) != 1)
}

/// Smallest positive primitive root modulo `p^e` for an odd prime `p`.
pub fn primitive_root(p: u64, e: u32) -> u64 {
    debug_assert!(p > 2 && e >= 1);
    (2..)
        .find(|&g| is_primitive_root(g, p, e))
        .expect("odd prime powers are cyclic")
}

/// Legendre symbol `(a / p)` by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Every divisor `d > 1` of `n`, ascending (including `n`).
pub fn proper_divisors_gt1(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for &d in &divs {
            let mut x = d;
            for _ in 0..=e {
                next.push(x);
                x *= p;
            }
        }
        divs = next;
    }
    divs.retain(|&d| d > 1);
    divs.sort_unstable();
    divs
}

/// An odd prime power `p^e` dividing the period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn value(&self) -> u64 {
        self.prime.pow(self.exponent)
    }

    /// `p^{e-1}(p-1)`, the order of `Z_{p^e}*`.
    pub fn totient(&self) -> u64 {
        self.prime.pow(self.exponent - 1) * (self.prime - 1)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.prime, self.exponent)
    }
}

/// A period `n = p_1^{e_1} ⋯ p_t^{e_t}` whose prime-power unit groups have
/// pairwise gcd exactly 2. Factors are kept in ascending prime order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    factors: Vec<PrimePower>,
    n: u64,
}

/// Residues of one element of `Z_n` modulo each prime-power factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtView {
    pub residues: Vec<u64>,
}

pub fn validate_modulus(factor_list: &[(u64, u32)]) -> Result<Modulus> {
    if factor_list.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    let mut factors: Vec<PrimePower> = Vec::with_capacity(factor_list.len());
    for &(prime, exponent) in factor_list {
        if prime <= 2 {
            return Err(Error::EvenOrRepeatedPrime(prime));
        }
        if exponent == 0 {
            return Err(Error::ZeroExponent { prime });
        }
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        factors.push(PrimePower { prime, exponent });
    }
    factors.sort();
    if factors.windows(2).any(|w| w[0].prime == w[1].prime) {
        let dup = factors
            .windows(2)
            .find(|w| w[0].prime == w[1].prime)
            .unwrap()[0]
            .prime;
        return Err(Error::EvenOrRepeatedPrime(dup));
    }

    let mut n: u64 = 1;
    for f in &factors {
        let q = f.prime.checked_pow(f.exponent).ok_or(Error::Overflow)?;
        n = n
            .checked_mul(q)
            .filter(|&v| v < MAX_MODULUS)
            .ok_or(Error::Overflow)?;
    }

    for i in 0..factors.len() {
        for j in (i + 1)..factors.len() {
            let g = factors[i].totient().gcd(&factors[j].totient());
            if g != 2 {
                return Err(Error::GcdConditionViolated {
                    i,
                    j,
                    p_i: factors[i].prime,
                    e_i: factors[i].exponent,
                    p_j: factors[j].prime,
                    e_j: factors[j].exponent,
                    gcd: g,
                });
            }
        }
    }
    Ok(Modulus { factors, n })
}

impl Modulus {
    /// Factor `n` and validate it.
    pub fn from_n(n: u64) -> Result<Modulus> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::EvenOrRepeatedPrime(2));
        }
        validate_modulus(&factorize(n))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    /// Number of distinct primes, `t`.
    pub fn num_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn totient(&self) -> u64 {
        self.factors.iter().map(PrimePower::totient).product()
    }

    pub fn split(&self, x: u64) -> CrtView {
        CrtView {
            residues: self.factors.iter().map(|f| x % f.value()).collect(),
        }
    }

    /// Every divisor `d > 1` as its own modulus, ascending by value.
    ///
    /// A divisor inherits the gcd condition, so no re-validation is needed.
    pub fn divisors(&self) -> Vec<Modulus> {
        let mut out = vec![Vec::<PrimePower>::new()];
        for f in &self.factors {
            let mut next = Vec::new();
            for partial in &out {
                next.push(partial.clone());
                for l in 1..=f.exponent {
                    let mut v = partial.clone();
                    v.push(PrimePower {
                        prime: f.prime,
                        exponent: l,
                    });
                    next.push(v);
                }
            }
            out = next;
        }
        let mut divs: Vec<Modulus> = out
            .into_iter()
            .filter(|fs| !fs.is_empty())
            .map(|factors| {
                let n = factors.iter().map(PrimePower::value).product();
                Modulus { factors, n }
            })
            .collect();
        divs.sort_by_key(Modulus::n);
        divs
    }

    /// The divisor with value `d`, if `d > 1` divides `n`.
    pub fn divisor(&self, d: u64) -> Option<Modulus> {
        if d <= 1 || !self.n.is_multiple_of(d) {
            return None;
        }
        let factors = self
            .factors
            .iter()
            .filter_map(|f| {
                let mut l = 0;
                let mut rest = d;
                while rest.is_multiple_of(f.prime) {
                    rest /= f.prime;
                    l += 1;
                }
                (l > 0).then_some(PrimePower {
                    prime: f.prime,
                    exponent: l,
                })
            })
            .collect();
        Some(Modulus { factors, n: d })
    }

    /// `p:e,p:e,...` as accepted on the command line.
    pub fn factor_spec(&self) -> String {
        self.factors
            .iter()
            .map(|f| format!("{}:{}", f.prime, f.exponent))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("*"))
    }
}

/// Least nonnegative `x` with `x ≡ r_i (mod p_i^{e_i})` for every factor.
///
/// Panics if the view does not carry one residue per factor.
pub fn crt_combine(view: &CrtView, modulus: &Modulus) -> u64 {
    assert_eq!(
        view.residues.len(),
        modulus.factors.len(),
        "one residue per factor"
    );
    let n = modulus.n;
    view.residues
        .iter()
        .zip(&modulus.factors)
        .fold(0u64, |acc, (&r, f)| {
            let q = f.value();
            let cofactor = n / q;
            let inv = inverse_mod(cofactor % q, q).expect("factors are coprime");
            let term = mul_mod(mul_mod(r % q, inv, q), cofactor, n);
            (acc + term) % n
        })
}

/// `g` with `g ≡ primitive_root(p_i, e_i) (mod p_i^{e_i})` for every `i`.
pub fn combined_root(modulus: &Modulus) -> u64 {
    let view = CrtView {
        residues: modulus
            .factors
            .iter()
            .map(|f| primitive_root(f.prime, f.exponent))
            .collect(),
    };
    crt_combine(&view, modulus)
}

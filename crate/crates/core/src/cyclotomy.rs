//! Cyclotomic classes of order two.
//!
//! For a prime power `p^e` the classes are the squares `D_0` of `Z_{p^e}*`
//! and the coset `D_1 = g·D_0`. For a divisor `d` with prime powers
//! `q_1, …, q_m` and a nonzero vector `a ∈ Z_2^m`, a unit `x` of `Z_d` falls
//! in class `Σ i_k a_k mod 2`, where `i_k` is the class of `x mod q_k`.
//! The layers `(n/d)·Z_d*` over all `d | n, d > 1` partition `Z_n ∖ {0}`,
//! which gives the global partition `{C_0, C_1}` with `0 ∈ C_1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::numtheory::{
    crt_combine, is_primitive_root, legendre, mul_mod, primitive_root, CrtView, Modulus, PrimePower,
};

/// Class index (0 or 1) of `x` in `Z_{p^e}`, or `None` for non-units.
///
/// A unit mod an odd prime power is a square iff it is a square mod `p`.
#[inline]
pub fn prime_power_class_of(x: u64, pp: &PrimePower) -> Option<u8> {
    match legendre((x % pp.prime) as i64, pp.prime) {
        0 => None,
        1 => Some(0),
        _ => Some(1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerClasses {
    pub prime_power: u64,
    pub d0: Vec<u64>,
    pub d1: Vec<u64>,
}

/// `D_0 = {g^{2j}}` and `D_1 = g·D_0` in `Z_{p^e}`.
pub fn prime_power_classes(p: u64, e: u32, g: u64) -> Result<PrimePowerClasses> {
    let q = p.pow(e);
    if !is_primitive_root(g % q, p, e) {
        return Err(Error::NotPrimitiveRoot { g, modulus: q });
    }
    let half = (p.pow(e - 1) * (p - 1) / 2) as usize;
    let g2 = mul_mod(g, g, q);
    let mut d0 = Vec::with_capacity(half);
    let mut x = 1u64;
    for _ in 0..half {
        d0.push(x);
        x = mul_mod(x, g2, q);
    }
    let mut d1: Vec<u64> = d0.iter().map(|&y| mul_mod(y, g, q)).collect();
    d0.sort_unstable();
    d1.sort_unstable();
    Ok(PrimePowerClasses {
        prime_power: q,
        d0,
        d1,
    })
}

/// A vector `a_d ∈ Z_2^m`, coordinates in ascending prime order of `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassVector(Vec<u8>);

impl ClassVector {
    pub fn new(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        ClassVector(bits)
    }

    /// `(0, …, 0, 1)`.
    pub fn last_unit(len: usize) -> Self {
        let mut bits = vec![0; len];
        if let Some(last) = bits.last_mut() {
            *last = 1;
        }
        ClassVector(bits)
    }

    pub fn all_ones(len: usize) -> Self {
        ClassVector(vec![1; len])
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    pub fn has_odd_sum(&self) -> bool {
        self.0.iter().filter(|&&b| b == 1).count() % 2 == 1
    }

    /// `Σ i_k a_k mod 2`.
    pub fn dot(&self, tuple: &[u8]) -> u8 {
        self.0
            .iter()
            .zip(tuple)
            .fold(0, |acc, (a, i)| acc ^ (a & i))
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for ClassVector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty bit string".into());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(format!("invalid bit {other:?}")),
            })
            .collect::<std::result::Result<Vec<u8>, _>>()
            .map(ClassVector)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSets {
    pub i0: Vec<Vec<u8>>,
    pub i1: Vec<Vec<u8>>,
}

/// Split `{0,1}^m` by the parity of `Σ i_k a_k`. Tuples come out in
/// lexicographic order.
pub fn index_sets(a: &ClassVector) -> Result<IndexSets> {
    if a.is_zero() {
        return Err(Error::ZeroVector { divisor: 0 });
    }
    let m = a.len();
    let mut sets = IndexSets {
        i0: Vec::with_capacity(1 << (m - 1)),
        i1: Vec::with_capacity(1 << (m - 1)),
    };
    for code in 0u64..(1 << m) {
        let tuple: Vec<u8> = (0..m).map(|k| ((code >> (m - 1 - k)) & 1) as u8).collect();
        if a.dot(&tuple) == 0 {
            sets.i0.push(tuple);
        } else {
            sets.i1.push(tuple);
        }
    }
    Ok(sets)
}

fn check_vector(divisor: &Modulus, a: &ClassVector) -> Result<()> {
    if a.len() != divisor.num_primes() {
        return Err(Error::VectorLength {
            divisor: divisor.n(),
            expected: divisor.num_primes(),
            got: a.len(),
        });
    }
    if a.is_zero() {
        return Err(Error::ZeroVector {
            divisor: divisor.n(),
        });
    }
    Ok(())
}

/// Membership rule for `D_0^{(a,d)}`, `D_1^{(a,d)}` without materializing
/// the sets.
#[derive(Debug, Clone)]
pub struct ClassRule {
    divisor: Modulus,
    vector: ClassVector,
}

impl ClassRule {
    pub fn new(divisor: &Modulus, vector: &ClassVector) -> Result<Self> {
        check_vector(divisor, vector)?;
        Ok(ClassRule {
            divisor: divisor.clone(),
            vector: vector.clone(),
        })
    }

    pub fn divisor(&self) -> &Modulus {
        &self.divisor
    }

    /// `Some(j)` if `x ∈ D_j`, `None` if `x` is not a unit mod `d`.
    #[inline]
    pub fn class_of(&self, x: u64) -> Option<u8> {
        let mut j = 0u8;
        for (pp, a) in self.divisor.factors().iter().zip(self.vector.bits()) {
            let i = prime_power_class_of(x, pp)?;
            j ^= i & a;
        }
        Some(j)
    }
}

/// Materialized generalized classes for one divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPair {
    pub divisor: Modulus,
    pub vector: ClassVector,
    pub d0: Vec<u64>,
    pub d1: Vec<u64>,
    /// `b` with `D_1 = b·D_0`, chosen as `min(D_1)·min(D_0)^{-1}`.
    pub coset_rep: u64,
}

impl ClassPair {
    pub fn class(&self, j: u8) -> &[u64] {
        if j & 1 == 0 {
            &self.d0
        } else {
            &self.d1
        }
    }
}

/// Smallest primitive root of every prime-power factor of `divisor`.
pub fn default_roots(divisor: &Modulus) -> Vec<u64> {
    divisor
        .factors()
        .iter()
        .map(|f| primitive_root(f.prime, f.exponent))
        .collect()
}

/// Builds `D_j = φ^{-1}(E_j)` where `E_j` is the union over `I_j` of the
/// products of per-factor classes.
pub fn generalized_classes(divisor: &Modulus, a: &ClassVector, roots: &[u64]) -> Result<ClassPair> {
    check_vector(divisor, a)?;
    let per_factor: Vec<PrimePowerClasses> = divisor
        .factors()
        .iter()
        .zip(roots)
        .map(|(f, &g)| prime_power_classes(f.prime, f.exponent, g))
        .collect::<Result<_>>()?;
    let sets = index_sets(a)?;

    let expand = |tuples: &[Vec<u8>]| -> Vec<u64> {
        let mut out = Vec::new();
        for tuple in tuples {
            let choices: Vec<&[u64]> = tuple
                .iter()
                .zip(&per_factor)
                .map(|(&i, c)| if i == 0 { &c.d0[..] } else { &c.d1[..] })
                .collect();
            let mut residues = vec![0u64; choices.len()];
            product_into(&choices, 0, &mut residues, &mut |r| {
                out.push(crt_combine(
                    &CrtView {
                        residues: r.to_vec(),
                    },
                    divisor,
                ))
            });
        }
        out.sort_unstable();
        out
    };

    let d0 = expand(&sets.i0);
    let d1 = expand(&sets.i1);
    let d = divisor.n();
    let inv = crate::numtheory::inverse_mod(d0[0], d).expect("class members are units");
    let coset_rep = mul_mod(d1[0], inv, d);
    Ok(ClassPair {
        divisor: divisor.clone(),
        vector: a.clone(),
        d0,
        d1,
        coset_rep,
    })
}

fn product_into(choices: &[&[u64]], k: usize, cur: &mut Vec<u64>, emit: &mut impl FnMut(&[u64])) {
    if k == choices.len() {
        emit(cur);
        return;
    }
    for &x in choices[k] {
        cur[k] = x;
        product_into(choices, k + 1, cur, emit);
    }
}

/// One nonzero vector `a_d` per divisor `d > 1` of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorAssignment {
    n: u64,
    vectors: BTreeMap<u64, ClassVector>,
}

impl VectorAssignment {
    /// Validates each entry; divisors without an entry stay unassigned.
    pub fn new(
        modulus: &Modulus,
        entries: impl IntoIterator<Item = (u64, ClassVector)>,
    ) -> Result<Self> {
        let mut vectors = BTreeMap::new();
        for (d, a) in entries {
            let divisor = modulus
                .divisor(d)
                .ok_or(Error::NotADivisor { d, n: modulus.n() })?;
            check_vector(&divisor, &a)?;
            vectors.insert(d, a);
        }
        Ok(VectorAssignment {
            n: modulus.n(),
            vectors,
        })
    }

    /// Like [`VectorAssignment::new`], filling every missing divisor with
    /// `(0, …, 0, 1)`.
    pub fn with_defaults(
        modulus: &Modulus,
        entries: impl IntoIterator<Item = (u64, ClassVector)>,
    ) -> Result<Self> {
        let mut asg = Self::new(modulus, entries)?;
        for d in modulus.divisors() {
            asg.vectors
                .entry(d.n())
                .or_insert_with(|| ClassVector::last_unit(d.num_primes()));
        }
        Ok(asg)
    }

    /// `a_d = (0, …, 0, 1)` for every divisor.
    pub fn default_for(modulus: &Modulus) -> Self {
        Self::with_defaults(modulus, []).expect("default vectors are valid")
    }

    /// `a_n` all ones, every other divisor at the default.
    pub fn all_ones_top(modulus: &Modulus) -> Self {
        let top = ClassVector::all_ones(modulus.num_primes());
        Self::with_defaults(modulus, [(modulus.n(), top)]).expect("all-ones is nonzero")
    }

    /// Parses `d:bits` lines. Blank lines and `#` comments are skipped;
    /// missing divisors take the default vector.
    pub fn parse_spec(text: &str, modulus: &Modulus) -> Result<Self> {
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let malformed = |reason: String| Error::MalformedSpec {
                line: idx + 1,
                reason,
            };
            let (d, bits) = line
                .split_once(':')
                .ok_or_else(|| malformed(format!("expected `d:bits`, got {line:?}")))?;
            let d: u64 = d
                .trim()
                .parse()
                .map_err(|_| malformed(format!("invalid divisor {:?}", d.trim())))?;
            let a: ClassVector = bits.parse().map_err(malformed)?;
            let divisor = modulus
                .divisor(d)
                .ok_or_else(|| malformed(Error::NotADivisor { d, n: modulus.n() }.to_string()))?;
            check_vector(&divisor, &a).map_err(|e| malformed(e.to_string()))?;
            entries.push((d, a));
        }
        Self::with_defaults(modulus, entries)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn vector(&self, d: u64) -> Option<&ClassVector> {
        self.vectors.get(&d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &ClassVector)> {
        self.vectors.iter().map(|(&d, a)| (d, a))
    }

    /// Every assigned vector has an odd coordinate sum.
    pub fn all_sums_odd(&self) -> bool {
        self.vectors.values().all(ClassVector::has_odd_sum)
    }

    /// One `d:bits` line per divisor.
    pub fn to_spec(&self) -> String {
        self.iter().map(|(d, a)| format!("{d}:{a}\n")).collect()
    }
}

impl fmt::Display for VectorAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(d, a)| format!("{d}:{a}")).collect();
        f.write_str(&parts.join(";"))
    }
}

/// `{C_0, C_1}` as sorted residue lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub c0: Vec<u64>,
    pub c1: Vec<u64>,
}

/// `C_0 = ∪ (n/d)·D_0^{(a_d,d)}`, `C_1 = ∪ (n/d)·D_1^{(a_d,d)} ∪ {0}`.
pub fn global_partition(modulus: &Modulus, assignment: &VectorAssignment) -> Result<Partition> {
    let n = modulus.n();
    let mut c0 = Vec::new();
    let mut c1 = vec![0u64];
    for divisor in modulus.divisors() {
        let d = divisor.n();
        let a = assignment.vector(d).ok_or(Error::MissingDivisorVector(d))?;
        let pair = generalized_classes(&divisor, a, &default_roots(&divisor))?;
        let scale = n / d;
        c0.extend(pair.d0.iter().map(|&x| x * scale));
        c1.extend(pair.d1.iter().map(|&x| x * scale));
    }
    c0.sort_unstable();
    c1.sort_unstable();
    Ok(Partition { c0, c1 })
}

/// For `i ∈ Z_n ∖ {0}`, the divisor `d` and unit `x ∈ Z_d*` with
/// `i = (n/d)·x`.
#[inline]
pub fn layer_of(i: u64, n: u64) -> (u64, u64) {
    let scale = i.gcd(&n);
    (n / scale, i / scale)
}

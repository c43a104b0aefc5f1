//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Expected values come from the brute-force oracles below (trial-division
//! factoring, Euler-criterion classes, circulant rank over GF(2)), not from
//! the library code under test.

use std::process::ExitCode;
use std::time::Instant;

use dhseq::cyclotomy::{default_roots, generalized_classes, global_partition, ClassVector};
use dhseq::gf2poly::{build_field, DEFAULT_DEGREE_CAP};
use dhseq::lincomp::{lincomp_bm, lincomp_gcd, lincomp_spectral};
use dhseq::numtheory::combined_root;
use dhseq::sequence::{delta, generate};
use dhseq::theorems::{
    check_lemma1, check_lemma2, check_lemma3, check_lemma4, check_theorem1, pairing_failure,
    Spectral,
};
use dhseq::{Modulus, VectorAssignment};
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

// ---- oracles ----

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let (mut acc, mut b, m) = (1u128 % m as u128, b as u128 % m as u128, m as u128);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn oracle_valid(n: u64) -> bool {
    if n < 3 || n.is_multiple_of(2) {
        return false;
    }
    let lams: Vec<u64> = trial_factor(n)
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .collect();
    (0..lams.len()).all(|i| (i + 1..lams.len()).all(|j| gcd(lams[i], lams[j]) == 2))
}

fn oracle_primes(n: u64) -> Vec<u64> {
    trial_factor(n).into_iter().map(|(p, _)| p).collect()
}

fn nonresidue(x: u64, p: u64) -> bool {
    pow_mod(x % p, (p - 1) / 2, p) == p - 1
}

/// Class of a unit `x` of `Z_d`: parity of `Σ a_k [x is a nonresidue mod p_k]`.
fn oracle_class(x: u64, primes: &[u64], a: &[u8]) -> u8 {
    primes
        .iter()
        .zip(a)
        .map(|(&p, &ak)| ak & u8::from(nonresidue(x, p)))
        .fold(0, |s, b| s ^ b)
}

fn oracle_sequence(n: u64, asg: &VectorAssignment) -> Vec<u8> {
    (0..n)
        .map(|i| {
            if i == 0 {
                return 1;
            }
            let s = gcd(i, n);
            let (d, x) = (n / s, i / s);
            oracle_class(x, &oracle_primes(d), asg.vector(d).unwrap().bits())
        })
        .collect()
}

/// Rank over GF(2) of the `n x n` circulant matrix of `bits`, which equals
/// the linear complexity of the periodic sequence.
fn circulant_rank(bits: &[u8]) -> usize {
    let n = bits.len();
    let w = n.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|r| {
            let mut row = vec![0u64; w];
            for j in 0..n {
                if bits[(j + r) % n] == 1 {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(piv) = (rank..n).find(|&r| rows[r][word] & bit != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[word] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn oracle_primitive_root(p: u64, e: u32) -> u64 {
    let q = p.pow(e);
    let phi = p.pow(e - 1) * (p - 1);
    (2..q)
        .find(|&g| gcd(g, q) == 1 && (1..phi).all(|k| pow_mod(g, k, q) != 1))
        .unwrap()
}

/// Closed-form two-prime table, restated independently of the library.
fn table_l(p1: u64, p2: u64) -> Option<u64> {
    Some(match (p1 % 8, p2 % 8) {
        (3, 3) => p1 + p2 - 1,
        (3, 7) => p1 + (p2 - 1) / 2,
        (7, 3) => p2 + (p1 - 1) / 2,
        (7, 7) => (p1 + p2) / 2,
        _ => return None,
    })
}

fn odd_vectors(t: usize) -> Vec<ClassVector> {
    (1u32..1 << t)
        .filter(|m| m.count_ones() % 2 == 1)
        .map(|m| ClassVector::new((0..t).map(|k| ((m >> k) & 1) as u8).collect()))
        .collect()
}

/// Every assignment whose vectors all have odd coordinate sum.
fn odd_assignments(m: &Modulus) -> Vec<VectorAssignment> {
    let mut acc: Vec<Vec<(u64, ClassVector)>> = vec![vec![]];
    for d in m.divisors() {
        let (d, opts) = (d.n(), odd_vectors(d.num_primes()));
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |a| {
                    let mut p = prefix.clone();
                    p.push((d, a.clone()));
                    p
                })
            })
            .collect();
    }
    acc.into_iter()
        .map(|e| VectorAssignment::new(m, e).unwrap())
        .collect()
}

fn valid_moduli(max: u64) -> Result<Vec<Modulus>, String> {
    let mut out = Vec::new();
    for n in (3..=max).step_by(2) {
        let lib = Modulus::from_n(n);
        if lib.is_ok() != oracle_valid(n) {
            return Err(format!("validity of n={n} disagrees with the oracle"));
        }
        if let Ok(m) = lib {
            out.push(m);
        }
    }
    Ok(out)
}

fn first_error(results: Vec<Result<(), String>>) -> Result<(), String> {
    results
        .into_iter()
        .collect::<Result<Vec<()>, String>>()
        .map(|_| ())
}

// ---- criteria ----

fn ac1() -> Outcome {
    let pairs: Vec<(u64, u64)> = (3..=333u64)
        .filter(|&p| trial_factor(p) == [(p, 1)])
        .flat_map(|p1| {
            (p1 + 1..=1000 / p1)
                .filter(|&p2| trial_factor(p2) == [(p2, 1)])
                .map(move |p2| (p1, p2))
        })
        .filter(|&(p1, p2)| p1 % 4 == 3 && p2 % 4 == 3 && oracle_valid(p1 * p2))
        .collect();
    let checked: Vec<Result<(), String>> = pairs
        .par_iter()
        .map(|&(p1, p2)| {
            let m = Modulus::from_n(p1 * p2).map_err(|e| e.to_string())?;
            let asg = VectorAssignment::all_ones_top(&m);
            let bits = generate(&m, &asg)
                .map_err(|e| e.to_string())?
                .bits()
                .to_vec();
            if bits != oracle_sequence(p1 * p2, &asg) {
                return Err(format!("sequence differs from oracle at n={}", p1 * p2));
            }
            let want = table_l(p1, p2).unwrap() as usize;
            let (bm, gc, rk) = (
                lincomp_bm(&bits).value,
                lincomp_gcd(&bits).value,
                circulant_rank(&bits),
            );
            if (bm, gc, rk) != (want, want, want) {
                return Err(format!(
                    "n={}: BM={bm} GCD={gc} rank={rk}, table {want}",
                    p1 * p2
                ));
            }
            Ok(())
        })
        .collect();
    first_error(checked)?;
    if pairs.is_empty() {
        return Err("no pairs enumerated".into());
    }
    Ok(format!(
        "{} pairs p1*p2 <= 1000 match the closed form",
        pairs.len()
    ))
}

fn ac2() -> Outcome {
    let moduli = valid_moduli(2000)?;
    let checked: Vec<Result<(), String>> = moduli
        .par_iter()
        .map(|m| {
            let n = m.n();
            let asg = VectorAssignment::default_for(m);
            let bits = oracle_sequence(n, &asg);
            let weight = bits.iter().filter(|&&b| b == 1).count() as u64;
            let d = u64::from(weight.is_multiple_of(2));
            let l = lincomp_gcd(&bits).value as u64;
            if l < n.div_ceil(2) - d {
                return Err(format!("n={n}: L={l} below {}", n.div_ceil(2) - d));
            }
            let v = check_theorem1(m, &asg, None).map_err(|e| e.to_string())?;
            if !v.applicable || !v.holds {
                return Err(format!("n={n}: {v}"));
            }
            Ok(())
        })
        .collect();
    first_error(checked)?;
    Ok(format!(
        "bound holds for all {} valid n <= 2000",
        moduli.len()
    ))
}

fn ac3() -> Outcome {
    let mut count = 0;
    for m in valid_moduli(300)? {
        let n = m.n();
        let fs = trial_factor(n);
        if fs.len() != 2 || fs.iter().any(|&(_, e)| e != 1) {
            continue;
        }
        let Ok(sp) = Spectral::build(n, 64) else {
            continue;
        };
        let asg = VectorAssignment::all_ones_top(&m);
        let v = check_lemma4(&m, &asg, &sp).map_err(|e| e.to_string())?;
        if !v.applicable || !v.holds {
            return Err(format!("n={n}: {v}"));
        }
        let (p1, p2) = (fs[0].0, fs[1].0);
        let units = (p1 - 1) * (p2 - 1);
        let l = circulant_rank(&oracle_sequence(n, &asg)) as u64;
        let zeros_on_units = p1 % 4 == 3 && p2 % 4 == 3;
        if zeros_on_units && l > n - units || !zeros_on_units && l < units {
            return Err(format!("n={n}: rank {l} inconsistent with unit spectrum"));
        }
        count += 1;
    }
    Ok(format!("{count} two-prime moduli n <= 300 with m <= 64"))
}

fn ac4() -> Outcome {
    let moduli = valid_moduli(500)?;
    let checked: Vec<Result<(), String>> = moduli
        .par_iter()
        .map(|m| {
            let n = m.n();
            let field = build_field(n, DEFAULT_DEGREE_CAP).ok();
            for asg in [
                VectorAssignment::default_for(m),
                VectorAssignment::all_ones_top(m),
            ] {
                let bits = oracle_sequence(n, &asg);
                let rk = circulant_rank(&bits);
                let bm = lincomp_bm(&bits).value;
                let gc = lincomp_gcd(&bits).value;
                if bm != rk || gc != rk {
                    return Err(format!("n={n} {asg}: BM={bm} GCD={gc} rank={rk}"));
                }
                if let Some(f) = &field {
                    let sp = lincomp_spectral(&bits, f).map_err(|e| e.to_string())?.value;
                    if sp != rk {
                        return Err(format!("n={n} {asg}: SPECTRAL={sp} rank={rk}"));
                    }
                }
            }
            Ok(())
        })
        .collect();
    first_error(checked)?;
    Ok(format!(
        "{} valid n <= 500, two assignments each",
        moduli.len()
    ))
}

fn ac5() -> Outcome {
    let moduli = valid_moduli(2000)?;
    let checked: Vec<Result<usize, String>> = moduli
        .par_iter()
        .map(|m| {
            let n = m.n();
            let g = combined_root(m);
            for &(p, e) in &trial_factor(n) {
                let q = p.pow(e);
                if g % q != oracle_primitive_root(p, e) {
                    return Err(format!("n={n}: combined root {g} wrong mod {q}"));
                }
            }
            let mut count = 0;
            for div in m.divisors() {
                let d = div.n();
                let primes = oracle_primes(d);
                for a in odd_vectors(primes.len()) {
                    let v = check_lemma1(m, d, &a).map_err(|e| e.to_string())?;
                    if !v.applicable || !v.holds {
                        return Err(format!("n={n}: {v}"));
                    }
                    let pair = generalized_classes(&div, &a, &default_roots(&div))
                        .map_err(|e| e.to_string())?;
                    let units: Vec<u64> = (1..d).filter(|&x| gcd(x, d) == 1).collect();
                    let d1: Vec<u64> = units
                        .iter()
                        .copied()
                        .filter(|&x| oracle_class(x, &primes, a.bits()) == 1)
                        .collect();
                    if pair.d1 != d1 {
                        return Err(format!("n={n} d={d} a={a}: D1 differs from oracle"));
                    }
                    if let Some(x) = units.iter().find(|&&x| {
                        oracle_class(x, &primes, a.bits())
                            == oracle_class(g % d * x % d, &primes, a.bits())
                    }) {
                        return Err(format!("n={n} d={d} a={a}: g does not swap x={x}"));
                    }
                    count += 1;
                }
            }
            Ok(count)
        })
        .collect();
    let total: usize = checked.into_iter().sum::<Result<usize, String>>()?;
    Ok(format!(
        "{total} (divisor, vector) cases over {} moduli",
        moduli.len()
    ))
}

const SMALL: [u64; 5] = [9, 15, 21, 33, 105];

fn ac6() -> Outcome {
    let mut cases = 0;
    for n in SMALL {
        let m = Modulus::from_n(n).map_err(|e| e.to_string())?;
        let sp = Spectral::build(n, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())?;
        let mut asgs = odd_assignments(&m);
        asgs.push(VectorAssignment::default_for(&m));
        for asg in &asgs {
            for div in m.divisors() {
                let d = div.n();
                let l2 = check_lemma2(&m, asg, d, Some(&sp)).map_err(|e| e.to_string())?;
                let l3 = check_lemma3(&m, asg, d, &sp).map_err(|e| e.to_string())?;
                for v in [l2, l3] {
                    if !v.applicable || !v.holds || v.witness.is_some() {
                        return Err(format!("n={n} {asg}: {v}"));
                    }
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (assignment, divisor) cases on {SMALL:?}"))
}

fn ac7() -> Outcome {
    let mut cases = 0;
    for n in SMALL {
        let m = Modulus::from_n(n).map_err(|e| e.to_string())?;
        let sp = Spectral::build(n, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())?;
        let g = combined_root(&m);
        for asg in odd_assignments(&m) {
            let bits = oracle_sequence(n, &asg);
            if let Some(v) = pairing_failure(&bits, g, &sp) {
                return Err(format!("n={n} {asg}: pairing fails at v={v}"));
            }
            // S(a^v) and S(a^{gv}) are never both zero, so at most half of
            // the nonzero exponents are roots.
            let l = circulant_rank(&bits);
            if n as usize - l > (n as usize - 1) / 2 + 1 {
                return Err(format!("n={n} {asg}: rank {l} too small for the pairing"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} all-odd assignments on {SMALL:?}"))
}

fn ac8() -> Outcome {
    let moduli = valid_moduli(2000)?;
    let checked: Vec<Result<(), String>> = moduli
        .par_iter()
        .map(|m| {
            let n = m.n();
            let field = build_field(n, DEFAULT_DEGREE_CAP).ok();
            for asg in [
                VectorAssignment::default_for(m),
                VectorAssignment::all_ones_top(m),
            ] {
                let part = global_partition(m, &asg).map_err(|e| e.to_string())?;
                let mut all: Vec<u64> = part.c0.iter().chain(&part.c1).copied().collect();
                all.sort_unstable();
                if all != (0..n).collect::<Vec<_>>() {
                    return Err(format!("n={n} {asg}: C0, C1 do not partition Z_n"));
                }
                if part.c1.len() as u64 != n.div_ceil(2) || part.c0.len() as u64 != (n - 1) / 2 {
                    return Err(format!(
                        "n={n} {asg}: class sizes {} / {}",
                        part.c0.len(),
                        part.c1.len()
                    ));
                }
                let seq = generate(m, &asg).map_err(|e| e.to_string())?;
                let bits = oracle_sequence(n, &asg);
                if seq.bits() != bits.as_slice() {
                    return Err(format!("n={n} {asg}: sequence differs from oracle"));
                }
                let ones: Vec<u64> = (0..n).filter(|&i| bits[i as usize] == 1).collect();
                if ones != part.c1 {
                    return Err(format!("n={n} {asg}: C1 differs from oracle support"));
                }
                let s_at_one = ones.len() % 2;
                if delta(n) != u8::from(s_at_one == 0) || delta(n) != u8::from(n % 4 == 3) {
                    return Err(format!("n={n}: delta mismatch"));
                }
                if let Some(f) = &field {
                    let zeros = lincomp_spectral(&bits, f)
                        .map_err(|e| e.to_string())?
                        .zeros
                        .unwrap();
                    if zeros
                        .iter()
                        .any(|&v| zeros.binary_search(&(2 * v % n)).is_err())
                    {
                        return Err(format!("n={n} {asg}: zero set not closed under v -> 2v"));
                    }
                }
            }
            Ok(())
        })
        .collect();
    first_error(checked)?;
    Ok(format!("{} valid n <= 2000", moduli.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1", "two-prime closed form (BM, GCD) for n <= 1000", ac1),
        (
            "AC2",
            "lower bound (n+1)/2 - delta, default assignment, n <= 2000",
            ac2,
        ),
        (
            "AC3",
            "unit spectrum of two-prime (1,1) sequences, n <= 300",
            ac3,
        ),
        ("AC4", "BM = GCD = SPECTRAL agreement, n <= 500", ac4),
        (
            "AC5",
            "root swaps the two classes, odd-sum vectors, n <= 2000",
            ac5,
        ),
        (
            "AC6",
            "class evaluation and CRT product identities on small moduli",
            ac6,
        ),
        ("AC7", "pairing identity under all-odd assignments", ac7),
        (
            "AC8",
            "partition, weight, delta and Frobenius closure, n <= 2000",
            ac8,
        ),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {id} {title}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {why} ({secs:.1}s)");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! One period of the sequence: `s_i = 1` iff `i mod n ∈ C_1`.

use crate::cyclotomy::{layer_of, ClassRule, VectorAssignment};
use crate::error::{Error, Result};
use crate::numtheory::Modulus;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhSequence {
    modulus: Modulus,
    assignment: VectorAssignment,
    bits: Vec<u8>,
}

/// Generates one period. Each index is classified through its layer
/// `(n/d)·Z_d*` and the membership rule of that divisor.
pub fn generate(modulus: &Modulus, assignment: &VectorAssignment) -> Result<DhSequence> {
    let n = modulus.n();
    let rules: Vec<(u64, ClassRule)> = modulus
        .divisors()
        .iter()
        .map(|d| {
            let a = assignment
                .vector(d.n())
                .ok_or(Error::MissingDivisorVector(d.n()))?;
            Ok((d.n(), ClassRule::new(d, a)?))
        })
        .collect::<Result<_>>()?;

    let mut bits = vec![0u8; n as usize];
    bits[0] = 1;
    for (i, bit) in bits.iter_mut().enumerate().skip(1) {
        let (d, x) = layer_of(i as u64, n);
        let idx = rules
            .binary_search_by_key(&d, |(dd, _)| *dd)
            .expect("every layer divisor has a rule");
        *bit = rules[idx].1.class_of(x).expect("layer element is a unit");
    }
    Ok(DhSequence {
        modulus: modulus.clone(),
        assignment: assignment.clone(),
        bits,
    })
}

impl DhSequence {
    pub fn n(&self) -> u64 {
        self.modulus.n()
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn assignment(&self) -> &VectorAssignment {
        &self.assignment
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn weight(&self) -> usize {
        weight(&self.bits)
    }

    /// The sequence file body: the bits as ASCII and a trailing newline.
    pub fn to_line(&self) -> String {
        format_bits(&self.bits)
    }

    /// `key=value` sidecar describing the sequence.
    pub fn metadata(&self) -> String {
        format!(
            "n={}\nfactors={}\nassignment={}\nweight={}\n",
            self.n(),
            self.modulus.factor_spec(),
            self.assignment,
            self.weight()
        )
    }
}

pub fn weight(bits: &[u8]) -> usize {
    bits.iter().filter(|&&b| b & 1 == 1).count()
}

/// 1 if `n ≡ 3 (mod 4)`, else 0; this is the indicator of `S(1) = 0`.
pub fn delta(n: u64) -> u8 {
    u8::from(n % 4 == 3)
}

pub fn format_bits(bits: &[u8]) -> String {
    let mut s: String = bits
        .iter()
        .map(|&b| if b & 1 == 1 { '1' } else { '0' })
        .collect();
    s.push('\n');
    s
}

/// Reads a sequence file: one line of `0`/`1`, trailing newline optional.
pub fn parse_bits(text: &str) -> Result<Vec<u8>> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    if line.is_empty() {
        return Err(Error::MalformedSequence("empty sequence".into()));
    }
    line.chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::MalformedSequence(format!(
                "unexpected {other:?} at column {}",
                i + 1
            ))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomy::global_partition;
    use crate::numtheory::validate_modulus;

    fn default_seq(f: &[(u64, u32)]) -> DhSequence {
        let m = validate_modulus(f).unwrap();
        generate(&m, &VectorAssignment::default_for(&m)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(default_seq(&[(3, 1)]).bits(), &[1, 0, 1]);
        let s21 = default_seq(&[(3, 1), (7, 1)]);
        assert_eq!(s21.weight(), 11);
        let s9 = default_seq(&[(3, 2)]);
        let ones: Vec<usize> = (0..9).filter(|&i| s9.bits()[i] == 1).collect();
        assert_eq!(ones, vec![0, 2, 5, 6, 8]);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(15), 1);
        assert_eq!(delta(21), 0);
        assert_eq!(delta(33), 0);
        assert_eq!(delta(3), 1);
    }

    #[test]
    fn matches_materialized_partition() {
        for n in (3..=2000u64).step_by(2) {
            let Ok(m) = Modulus::from_n(n) else { continue };
            for asg in [
                VectorAssignment::default_for(&m),
                VectorAssignment::all_ones_top(&m),
            ] {
                let seq = generate(&m, &asg).unwrap();
                let part = global_partition(&m, &asg).unwrap();
                let ones: Vec<u64> = (0..n).filter(|&i| seq.bits()[i as usize] == 1).collect();
                assert_eq!(ones, part.c1, "n = {n}");
                assert_eq!(seq.weight() as u64, n.div_ceil(2));
                assert_eq!(delta(n), 1 - (seq.weight() % 2) as u8);
                assert_eq!(generate(&m, &asg).unwrap(), seq);
            }
        }
    }

    #[test]
    fn missing_vector_is_reported() {
        let m = validate_modulus(&[(3, 1), (7, 1)]).unwrap();
        let partial = VectorAssignment::new(&m, []).unwrap();
        assert_eq!(generate(&m, &partial), Err(Error::MissingDivisorVector(3)));
    }

    #[test]
    fn file_format() {
        let s = default_seq(&[(3, 1), (7, 1)]);
        let line = s.to_line();
        assert_eq!(line.len(), 22);
        assert!(line.ends_with('\n'));
        assert_eq!(parse_bits(&line).unwrap(), s.bits());
        assert_eq!(
            s.metadata(),
            "n=21\nfactors=3:1,7:1\nassignment=3:1;7:1;21:01\nweight=11\n"
        );
        assert!(parse_bits("10x1\n").is_err());
        assert!(parse_bits("\n").is_err());
        assert_eq!(parse_bits("101").unwrap(), vec![1, 0, 1]);
    }
}

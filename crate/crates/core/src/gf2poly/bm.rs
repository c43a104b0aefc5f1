/// Linear complexity of a finite binary string (Berlekamp-Massey over GF(2)).
///
/// Entries are read as their low bit. The empty string has complexity 0.
pub fn berlekamp_massey(bits: &[u8]) -> usize {
    let len = bits.len();
    let s: Vec<u8> = bits.iter().map(|b| b & 1).collect();
    // connection polynomial C and the copy B from before the last length change
    let mut c = vec![0u8; len + 1];
    let mut b = vec![0u8; len + 1];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut m: isize = -1;

    for i in 0..len {
        let mut d = s[i];
        for j in 1..=l {
            d ^= c[j] & s[i - j];
        }
        if d == 0 {
            continue;
        }
        let shift = (i as isize - m) as usize;
        if 2 * l <= i {
            let prev = c.clone();
            for j in 0..=(len - shift) {
                c[j + shift] ^= b[j];
            }
            l = i + 1 - l;
            m = i as isize;
            b = prev;
        } else {
            for j in 0..=(len - shift) {
                c[j + shift] ^= b[j];
            }
        }
    }
    l
}

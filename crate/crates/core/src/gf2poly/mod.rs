//! Arithmetic over GF(2) and GF(2^m): bit-packed polynomials, extension
//! fields holding a primitive `n`-th root of unity, and Berlekamp-Massey
//! synthesis for binary strings.

mod bm;
mod field;
mod poly;

pub use bm::berlekamp_massey;
pub use field::{
    build_field, eval_poly, is_irreducible, smallest_irreducible, BinaryField, PowerTable,
    DEFAULT_DEGREE_CAP, MAX_DEGREE_CAP,
};
pub use poly::{poly_gcd, Poly2};

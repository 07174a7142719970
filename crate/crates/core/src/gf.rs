//! Finite-field layer: GF(2^8) = F2[X]/Q(X) and GF(2^32) = GF(2^8)[X]/P(X).
//!
//! Elements of GF(2^8) are stored as their 8-bit image under the polynomial
//! basis `(b^7, .., b, 1)`; elements of GF(2^32) are stored as 32-bit words whose
//! byte `k` (little-endian position, `(w >> 8k) & 0xff`) is the coefficient of
//! `a^k`. Addition in both fields is XOR.
//!
//! The LFSR only ever multiplies or divides by `a`, which is a byte shift plus
//! a mask looked up from the byte that falls off. The masks are generated here
//! from the two defining polynomials instead of being transcribed.

use std::fmt;
use std::sync::OnceLock;

use crate::Error;

/// Low eight bits of `Q(X) = X^8 + X^7 + X^5 + X^3 + 1`, i.e. `b^8` in GF(2^8).
pub const Q_REDUCTION: u8 = 0xA9;

/// Exponents `k` such that `P(X) = X^4 + b^k3 X^3 + b^k2 X^2 + b^k1 X + b^k0`,
/// listed as `[k0, k1, k2, k3]`.
pub const P_COEFF_EXPONENTS: [u32; 4] = [239, 48, 245, 23];

/// An element of GF(2^8).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf8(pub u8);

impl fmt::Debug for Gf8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf8({:#04x})", self.0)
    }
}

impl std::ops::Add for Gf8 {
    type Output = Gf8;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf8) -> Gf8 {
        Gf8(self.0 ^ rhs.0)
    }
}

impl std::ops::Mul for Gf8 {
    type Output = Gf8;
    fn mul(self, rhs: Gf8) -> Gf8 {
        gf8_mul(self, rhs)
    }
}

impl Gf8 {
    pub const ZERO: Gf8 = Gf8(0);
    pub const ONE: Gf8 = Gf8(1);
    /// The generator `b`, a root of `Q(X)`.
    pub const BETA: Gf8 = Gf8(2);

    /// Multiplicative inverse; zero maps to zero.
    pub fn inverse(self) -> Gf8 {
        // a^254 = a^-1 for a != 0, by square-and-multiply.
        let mut result = Gf8::ONE;
        let mut base = self;
        let mut e = 254u32;
        while e != 0 {
            if e & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            e >>= 1;
        }
        result
    }
}

/// An element of GF(2^32), stored as its word image.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf32(pub u32);

impl fmt::Debug for Gf32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf32({:#010x})", self.0)
    }
}

impl std::ops::Add for Gf32 {
    type Output = Gf32;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf32) -> Gf32 {
        Gf32(self.0 ^ rhs.0)
    }
}

impl Gf32 {
    /// Builds an element from its four GF(2^8) coefficients `[y0, y1, y2, y3]`.
    pub fn from_coeffs(c: [Gf8; 4]) -> Gf32 {
        Gf32(u32::from_le_bytes([c[0].0, c[1].0, c[2].0, c[3].0]))
    }

    /// Coefficients `[y0, y1, y2, y3]` of `a^0 .. a^3`.
    pub fn coeffs(self) -> [Gf8; 4] {
        self.0.to_le_bytes().map(Gf8)
    }

    pub fn mul_alpha(self) -> Gf32 {
        Gf32(mul_alpha(self.0, AlphaTables::get()))
    }

    pub fn div_alpha(self) -> Gf32 {
        Gf32(div_alpha(self.0, AlphaTables::get()))
    }
}

/// Schoolbook shift-and-XOR multiplication reduced modulo `Q(X)`.
pub fn gf8_mul(a: Gf8, b: Gf8) -> Gf8 {
    let (mut a, mut b) = (a.0, b.0);
    let mut acc = 0u8;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        let carry = a & 0x80 != 0;
        a <<= 1;
        if carry {
            a ^= Q_REDUCTION;
        }
        b >>= 1;
    }
    Gf8(acc)
}

/// `b^k` for `0 <= k <= 254`, by repeated multiplication by `b`.
pub fn gf8_beta_pow(k: u32) -> Result<Gf8, Error> {
    if k > 254 {
        return Err(Error::Domain(format!("GF(2^8) exponent {k} outside 0..=254")));
    }
    Ok((0..k).fold(Gf8::ONE, |acc, _| gf8_mul(acc, Gf8::BETA)))
}

/// Coefficients `[c0, c1, c2, c3]` of `P(X)`, so that `a^4 = c3 a^3 + c2 a^2 + c1 a + c0`.
pub fn p_coefficients() -> [Gf8; 4] {
    P_COEFF_EXPONENTS.map(|k| gf8_beta_pow(k).expect("exponent in range"))
}

/// Masks for multiplication and division by `a`.
///
/// `mul_mask[b]` is the contribution of a top byte `b` shifted out by `z << 8`;
/// `div_mask[b]` is the contribution of a bottom byte `b` shifted out by `z >> 8`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlphaTables {
    pub mul_mask: [u32; 256],
    pub div_mask: [u32; 256],
}

impl fmt::Debug for AlphaTables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlphaTables")
            .field("mul_mask[1]", &format_args!("{:#010x}", self.mul_mask[1]))
            .field("div_mask[1]", &format_args!("{:#010x}", self.div_mask[1]))
            .finish_non_exhaustive()
    }
}

static TABLES: OnceLock<AlphaTables> = OnceLock::new();

impl AlphaTables {
    /// Process-wide tables, built on first use.
    pub fn get() -> &'static AlphaTables {
        TABLES.get_or_init(build_alpha_tables)
    }
}

/// Generates both mask tables from `Q(X)` and `P(X)`.
pub fn build_alpha_tables() -> AlphaTables {
    let [c0, c1, c2, c3] = p_coefficients();
    let c0_inv = c0.inverse();
    let mut mul_mask = [0u32; 256];
    let mut div_mask = [0u32; 256];
    for b in 0..=255u8 {
        let y = Gf8(b);
        // a * (y a^3) = y a^4 = y c3 a^3 + y c2 a^2 + y c1 a + y c0
        mul_mask[b as usize] = Gf32::from_coeffs([y * c0, y * c1, y * c2, y * c3]).0;
        // a^-1 = c0^-1 (a^3 + c3 a^2 + c2 a + c1)
        let t = y * c0_inv;
        div_mask[b as usize] = Gf32::from_coeffs([t * c1, t * c2, t * c3, t]).0;
    }
    AlphaTables { mul_mask, div_mask }
}

/// `a * z`.
#[inline(always)]
pub fn mul_alpha(z: u32, t: &AlphaTables) -> u32 {
    (z << 8) ^ t.mul_mask[(z >> 24) as usize]
}

/// `z / a`.
#[inline(always)]
pub fn div_alpha(z: u32, t: &AlphaTables) -> u32 {
    (z >> 8) ^ t.div_mask[(z & 0xff) as usize]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand::rngs::StdRng;

    /// Carry-less product then long division by the full 9-bit Q(X).
    fn poly_mul_mod_q(a: u8, b: u8) -> u8 {
        let mut prod = 0u16;
        for i in 0..8 {
            if (b >> i) & 1 == 1 {
                prod ^= (a as u16) << i;
            }
        }
        for deg in (8..16).rev() {
            if (prod >> deg) & 1 == 1 {
                prod ^= 0x1A9 << (deg - 8);
            }
        }
        prod as u8
    }

    #[test]
    fn multiplicative_identity() {
        for x in 0..=255u8 {
            assert_eq!(gf8_mul(Gf8(x), Gf8::ONE), Gf8(x));
        }
    }

    #[test]
    fn beta_to_the_eighth() {
        assert_eq!(poly_mul_mod_q(0x02, 0x80), 0xA9);
        assert_eq!(gf8_mul(Gf8(0x02), Gf8(0x80)), Gf8(0xA9));
        assert_eq!(gf8_beta_pow(8).unwrap(), Gf8(0xA9));
    }

    #[test]
    fn beta_powers() {
        assert_eq!(gf8_beta_pow(0).unwrap(), Gf8(0x01));
        assert_eq!(gf8_beta_pow(23).unwrap(), Gf8(0xE1));
        assert!(matches!(gf8_beta_pow(255), Err(Error::Domain(_))));
        // b generates the multiplicative group.
        let mut seen = [false; 256];
        for k in 0..=254 {
            let v = gf8_beta_pow(k).unwrap().0 as usize;
            assert!(!seen[v], "b^{k} repeats");
            seen[v] = true;
        }
        assert!(!seen[0]);
    }

    #[test]
    fn mul_matches_polynomial_oracle_exhaustively() {
        for a in 0..=255u8 {
            for b in 0..=255u8 {
                assert_eq!(gf8_mul(Gf8(a), Gf8(b)).0, poly_mul_mod_q(a, b));
            }
        }
    }

    #[test]
    fn field_axioms_spot_check() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..10_000 {
            let (a, b, c) = (Gf8(rng.gen()), Gf8(rng.gen()), Gf8(rng.gen()));
            assert_eq!(a * b, b * a);
            assert_eq!((a * b) * c, a * (b * c));
            assert_eq!(a * (b + c), a * b + a * c);
        }
        for a in 1..=255u8 {
            assert_eq!(Gf8(a) * Gf8(a).inverse(), Gf8::ONE);
        }
        assert_eq!(Gf8::ZERO.inverse(), Gf8::ZERO);
    }

    #[test]
    fn table_corner_entries() {
        let t = AlphaTables::get();
        assert_eq!(t.mul_mask[0], 0);
        assert_eq!(t.div_mask[0], 0);
        let want = u32::from_le_bytes([
            gf8_beta_pow(239).unwrap().0,
            gf8_beta_pow(48).unwrap().0,
            gf8_beta_pow(245).unwrap().0,
            gf8_beta_pow(23).unwrap().0,
        ]);
        assert_eq!(t.mul_mask[1], want);
        // Entries [1] of the tables shipped with the reference implementation.
        assert_eq!(t.mul_mask[1], 0xE19F_CF13);
        assert_eq!(t.div_mask[1], 0x180F_40CD);
    }

    #[test]
    fn alpha_basics() {
        let t = AlphaTables::get();
        assert_eq!(mul_alpha(0, t), 0);
        assert_eq!(mul_alpha(1, t), 0x100);
        assert_eq!(div_alpha(0, t), 0);
        assert_eq!(div_alpha(0x100, t), 1);
    }

    #[test]
    fn alpha_round_trip_two_byte_values() {
        let t = AlphaTables::get();
        for hi in 0..=255u32 {
            for lo in 0..=255u32 {
                for z in [(hi << 24) | lo, (hi << 16) | (lo << 8)] {
                    assert_eq!(div_alpha(mul_alpha(z, t), t), z);
                    assert_eq!(mul_alpha(div_alpha(z, t), t), z);
                }
            }
        }
    }

    #[test]
    fn alpha_is_additive() {
        let t = AlphaTables::get();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..10_000 {
            let (x, y): (u32, u32) = (rng.gen(), rng.gen());
            assert_eq!(mul_alpha(x ^ y, t), mul_alpha(x, t) ^ mul_alpha(y, t));
            assert_eq!(div_alpha(x ^ y, t), div_alpha(x, t) ^ div_alpha(y, t));
        }
    }

    #[test]
    fn gf32_coefficient_layout() {
        let z = Gf32::from_coeffs([Gf8(1), Gf8(2), Gf8(3), Gf8(4)]);
        assert_eq!(z.0, 0x0403_0201);
        assert_eq!(z.coeffs(), [Gf8(1), Gf8(2), Gf8(3), Gf8(4)]);
        assert_eq!(Gf32(1).mul_alpha(), Gf32(0x100));
    }
}

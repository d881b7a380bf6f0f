//! Exact modular arithmetic over odd primes.
//!
//! Everything in here works on 64-bit integers with 128-bit intermediates, so
//! products never overflow for any modulus that fits in a `u64`. The
//! closed-form DFT routines reduce all phase integers with these helpers
//! before anything is converted to floating point.

use std::f64::consts::PI;
use std::fmt;

use bitvec::prelude::*;
use num_complex::Complex64;

use crate::error::{Result, ZcError};

/// Witnesses that make Miller-Rabin deterministic below 2^64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduces any signed integer into `0..m`.
pub(crate) fn reduce(n: i128, m: u64) -> u64 {
    n.rem_euclid(m as i128) as u64
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// True iff `n` is a prime greater than 2. Deterministic for every `u64`.
pub fn is_odd_prime(n: u64) -> bool {
    if n < 3 || n.is_multiple_of(2) {
        return false;
    }
    for &p in &MR_WITNESSES[1..] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
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

/// An odd prime, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(value: u64) -> Result<Self> {
        if is_odd_prime(value) {
            Ok(Self(value))
        } else {
            Err(ZcError::NotPrime { value })
        }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    /// `(m + 1) / 2`, the inverse of 2 modulo `m`.
    #[inline]
    pub fn half(self) -> u64 {
        self.0.div_ceil(2)
    }

    /// True when `m ≡ 3 (mod 4)`.
    #[inline]
    pub fn is_three_mod_four(self) -> bool {
        self.0 % 4 == 3
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<PrimeModulus> for u64 {
    fn from(m: PrimeModulus) -> u64 {
        m.0
    }
}

/// Multiplicative inverse of `u` modulo `m`, via the extended Euclidean
/// algorithm. The result lies in `1..m`.
pub fn mod_inverse(u: i64, m: PrimeModulus) -> Result<u64> {
    let modulus = m.value();
    let a = reduce(u as i128, modulus);
    if a == 0 {
        return Err(ZcError::ZeroResidue { value: u, modulus });
    }
    Ok(inverse_mod(a, modulus).expect("nonzero residue of a prime is invertible"))
}

/// Extended Euclid; `None` when `gcd(a, m) != 1`.
pub(crate) fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| reduce(t0, m))
}

/// Legendre symbol of `n` with respect to `m`, by Euler's criterion.
pub fn legendre_symbol(n: i64, m: PrimeModulus) -> i8 {
    legendre_of_residue(reduce(n as i128, m.value()), m)
}

pub(crate) fn legendre_of_residue(a: u64, m: PrimeModulus) -> i8 {
    let modulus = m.value();
    let a = a % modulus;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (modulus - 1) / 2, modulus) == 1 {
        1
    } else {
        -1
    }
}

/// The classic quadratic Gauss sum `Σ exp(j2πn²/m)`, in closed form.
pub fn quadratic_gauss_sum(m: PrimeModulus) -> Complex64 {
    let root = (m.value() as f64).sqrt();
    if m.is_three_mod_four() {
        Complex64::new(0.0, root)
    } else {
        Complex64::new(root, 0.0)
    }
}

/// `1` for `m ≡ 1 (mod 4)`, `-j` for `m ≡ 3 (mod 4)`.
pub fn eta_coefficient(m: PrimeModulus) -> Complex64 {
    if m.is_three_mod_four() {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::new(1.0, 0.0)
    }
}

const TABLE_MAGIC: &[u8; 4] = b"ZCLT";
const TABLE_VERSION: u32 = 1;
const TABLE_HEADER_LEN: usize = 16;

/// Packed Legendre symbols for `n = 1..m-1`.
///
/// Bit `n - 1` holds the symbol of `n`: set for a quadratic residue, clear
/// otherwise. Bits are packed LSB-first, so the raw byte slice is exactly the
/// serialized payload.
#[derive(Clone, PartialEq, Eq)]
pub struct LegendreTable {
    modulus: PrimeModulus,
    bits: BitVec<u8, Lsb0>,
}

impl LegendreTable {
    /// Marks every `k²` for `k = 1..=(m-1)/2`; those are all the nonzero
    /// residues, each hit exactly once.
    pub fn build(m: PrimeModulus) -> Self {
        let modulus = m.value();
        let len = (modulus - 1) as usize;
        let mut bits = bitvec![u8, Lsb0; 0; len];
        for k in 1..=(modulus - 1) / 2 {
            let sq = mul_mod(k, k, modulus);
            bits.set((sq - 1) as usize, true);
        }
        Self { modulus: m, bits }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    /// Symbol of any integer; `0` for multiples of the modulus.
    #[inline]
    pub fn lookup(&self, n: i64) -> i8 {
        self.lookup_residue(reduce(n as i128, self.modulus.value()))
    }

    #[inline]
    pub(crate) fn lookup_residue(&self, r: u64) -> i8 {
        let r = r % self.modulus.value();
        if r == 0 {
            0
        } else if self.bits[(r - 1) as usize] {
            1
        } else {
            -1
        }
    }

    /// Number of payload bits, always `m - 1`.
    pub fn payload_bits(&self) -> usize {
        self.bits.len()
    }

    pub fn residue_count(&self) -> usize {
        self.bits.count_ones()
    }

    /// Serialized form: `"ZCLT"`, `u32` version, `u64` modulus (both
    /// little-endian), then `ceil((m-1)/8)` payload bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let payload = self.bits.as_raw_slice();
        let mut out = Vec::with_capacity(TABLE_HEADER_LEN + payload.len());
        out.extend_from_slice(TABLE_MAGIC);
        out.extend_from_slice(&TABLE_VERSION.to_le_bytes());
        out.extend_from_slice(&self.modulus.value().to_le_bytes());
        out.extend_from_slice(payload);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < TABLE_HEADER_LEN {
            return Err(ZcError::Format("legendre table shorter than header".into()));
        }
        if &bytes[..4] != TABLE_MAGIC {
            return Err(ZcError::Format("bad legendre table magic".into()));
        }
        let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
        if version != TABLE_VERSION {
            return Err(ZcError::Format(format!(
                "unsupported legendre table version {version}"
            )));
        }
        let modulus = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
        let m = PrimeModulus::new(modulus)?;
        let len = (modulus - 1) as usize;
        let payload = &bytes[TABLE_HEADER_LEN..];
        if payload.len() != len.div_ceil(8) {
            return Err(ZcError::Format(format!(
                "payload is {} bytes, expected {}",
                payload.len(),
                len.div_ceil(8)
            )));
        }
        let mut bits = BitVec::<u8, Lsb0>::from_slice(payload);
        if bits[len..].any() {
            return Err(ZcError::Format("nonzero padding bits".into()));
        }
        bits.truncate(len);
        if bits.count_ones() != len / 2 {
            return Err(ZcError::Format(
                "table does not mark exactly half the residues".into(),
            ));
        }
        Ok(Self { modulus: m, bits })
    }
}

impl fmt::Debug for LegendreTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LegendreTable")
            .field("modulus", &self.modulus.value())
            .field("payload_bits", &self.bits.len())
            .finish()
    }
}

/// `exp(jπ·num/den)` with `num` reduced exactly into `0..2·den` first.
pub(crate) fn unit_phase(num: i128, den: u64) -> Complex64 {
    let period = 2 * den as u128;
    let r = num.rem_euclid(period as i128) as u128;
    // map into (-den, den] to keep the float angle small
    let signed = if r > den as u128 {
        r as f64 - period as f64
    } else {
        r as f64
    };
    let (s, c) = (PI * signed / den as f64).sin_cos();
    Complex64::new(c, s)
}

//! Arithmetic in GF(2^k), elements stored as bit-polynomials in a `u32`.

/// The field GF(2^k) with a fixed irreducible modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gf2k {
    k: u32,
    modulus: u64,
}

impl Gf2k {
    /// Uses the numerically smallest irreducible polynomial of degree `k`.
    pub fn new(k: u32) -> Gf2k {
        assert!((1..=24).contains(&k), "unsupported field degree {k}");
        let modulus = (1u64 << k..1u64 << (k + 1))
            .find(|&f| is_irreducible(f))
            .expect("an irreducible polynomial exists in every degree");
        Gf2k { k, modulus }
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        1 << self.k
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let product = clmul(a as u64, b as u64);
        poly_mod(product, self.modulus) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Coefficient of `x^{k-1}`: the leftmost bit of the k-bit representation.
    pub fn leading_bit(&self, a: u32) -> bool {
        a >> (self.k - 1) & 1 == 1
    }
}

/// Carry-less multiplication.
pub fn clmul(a: u64, b: u64) -> u64 {
    let mut out = 0;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            out ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    out
}

fn degree_of(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

pub fn poly_mod(mut a: u64, m: u64) -> u64 {
    let dm = degree_of(m);
    while a != 0 && degree_of(a) >= dm {
        a ^= m << (degree_of(a) - dm);
    }
    a
}

/// Trial division by every polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: u64) -> bool {
    let d = degree_of(f);
    if d < 1 {
        return false;
    }
    (2u64..1u64 << (d / 2 + 1)).all(|g| degree_of(g) > d / 2 || poly_mod(f, g) != 0)
}

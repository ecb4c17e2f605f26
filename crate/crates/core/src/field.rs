//! Arithmetic in GF(p^k).
//!
//! Elements are integers whose base-`p` digits are the coefficients of a
//! residue polynomial of degree `< k` (digit `i` is the coefficient of
//! `x^i`). The ordering of these integers is the canonical element order used
//! by the plane construction.

use std::fmt;

use thiserror::Error;

/// Largest field order with a tabulated reduction polynomial.
pub const MAX_SUPPORTED_ORDER: u32 = 32;

/// Reduction polynomials for the non-prime orders up to [`MAX_SUPPORTED_ORDER`].
/// Coefficients are listed from `x^0` upward, without the leading monic term.
const REDUCTION_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),          // x^2 + x + 1
    (2, 3, &[1, 1, 0]),       // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0]),    // x^4 + x + 1
    (2, 5, &[1, 0, 1, 0, 0]), // x^5 + x^2 + 1
    (3, 2, &[1, 0]),          // x^2 + 1
    (3, 3, &[1, 2, 0]),       // x^3 + 2x + 1
    (5, 2, &[2, 0]),          // x^2 + 2
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u32),
    #[error("field order {0} is not supported (maximum {MAX_SUPPORTED_ORDER})")]
    UnsupportedOrder(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// Element of a [`FieldContext`], stored as its canonical integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Returns `Some((p, k))` when `q = p^k` for a prime `p` and `k >= 1`.
pub fn prime_power_decomposition(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

pub fn is_prime_power(q: u32) -> bool {
    prime_power_decomposition(q).is_some()
}

/// Immutable description of GF(p^k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldContext {
    p: u32,
    k: u32,
    q: u32,
    /// Monic reduction polynomial, coefficients from `x^0` to `x^k` inclusive.
    reduction: Vec<u32>,
}

impl FieldContext {
    /// Builds GF(q) for a supported prime power `q`.
    pub fn new(q: u32) -> Result<Self, FieldError> {
        let (p, k) = prime_power_decomposition(q).ok_or(FieldError::NotAPrimePower(q))?;
        if q > MAX_SUPPORTED_ORDER {
            return Err(FieldError::UnsupportedOrder(q));
        }
        let reduction = if k == 1 {
            // x, so residues are constants
            vec![0, 1]
        } else {
            let (_, _, low) = REDUCTION_TABLE
                .iter()
                .find(|(tp, tk, _)| *tp == p && *tk == k)
                .ok_or(FieldError::UnsupportedOrder(q))?;
            let mut coeffs = low.to_vec();
            coeffs.push(1);
            coeffs
        };
        Ok(FieldContext { p, k, q, reduction })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the monic reduction polynomial, lowest degree first.
    pub fn reduction_polynomial(&self) -> &[u32] {
        &self.reduction
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn element(&self, value: u32) -> Option<FieldElement> {
        (value < self.q).then_some(FieldElement(value))
    }

    fn digits(&self, a: FieldElement) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut v = a.0;
        for _ in 0..self.k {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn from_digits(&self, digits: &[u32]) -> FieldElement {
        FieldElement(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&sum)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let d: Vec<u32> = self
            .digits(a)
            .into_iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let p = self.p;
        let mut prod = vec![0u32; 2 * k - 1];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // Reduce from the top: x^k = -(lower terms of the reduction polynomial).
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, r) in self.reduction[..k].iter().enumerate() {
                let idx = top - k + i;
                prod[idx] = (prod[idx] + (p - c) * r) % p;
            }
        }
        self.from_digits(&prod[..k])
    }

    pub fn pow(&self, a: FieldElement, mut e: u32) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via `a^(q-2)`.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let mut x = a;
        let mut ord = 1;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            ord += 1;
        }
        Some(ord)
    }

    /// Smallest element generating the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.elements()
            .skip(1)
            .find(|&a| self.multiplicative_order(a) == Some(self.q - 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

/// Monic polynomials over GF(p) of the given degree, lowest coefficient first.
fn monic_polynomials(p: u32, degree: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = p.pow(degree as u32);
    (0..count).map(move |mut v| {
        let mut c = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            c.push(v % p);
            v /= p;
        }
        c.push(1);
        c
    })
}

fn poly_rem(p: u32, num: &[u32], den: &[u32]) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = (1..p).find(|x| x * den[dd] % p == 1).unwrap_or(1);
    while r.len() > dd && !r.is_empty() {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for (i, d) in den.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = (r[idx] + (p - c) * d % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial-division irreducibility test over GF(p) against every monic
/// polynomial of degree `1..=deg/2`.
pub fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let deg = poly.len() - 1;
    (1..=deg / 2).all(|d| {
        monic_polynomials(p, d).all(|div| poly_rem(p, poly, &div).iter().any(|&c| c != 0))
    })
}

//! Arithmetic in `F_q`, `q = p^m`.
//!
//! Elements are canonical integer codes in `[0, q)`. For `m > 1` the code is
//! the residue polynomial modulo the defining modulus, read as a base-`p`
//! integer (coefficient of `x^0` is the least significant digit).

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Canonical code of a field element.
pub type Elem = u32;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeP(u32),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: usize },
    #[error("modulus must be monic")]
    NotMonic,
    #[error("modulus coefficient {0} is not reduced mod p")]
    BadCoefficient(u32),
    #[error("field order {0} exceeds the supported maximum")]
    TooLarge(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("division by zero")]
    DivisionByZero,
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    // exp/log tables, only populated for m > 1
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field description. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}{:?}", self.0.p, self.0.m, self.0.modulus)
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Remainder of `a` modulo the monic `b` over F_p, both low-to-high.
fn fp_poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let t = (lead as u64 * bc as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

impl Field {
    /// Prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    /// `F_{p^m}` defined by a monic modulus given low-to-high. The modulus may
    /// be omitted when `m = 1`.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeP(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q64 = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER {
            return Err(FieldError::TooLarge(q64));
        }
        let q = q64 as u32;
        let modulus = match (m, modulus) {
            (1, None) => vec![0, 1],
            (_, None) => return Err(FieldError::DegreeMismatch { expected: m, found: 0 }),
            (_, Some(c)) => {
                if c.len() != m as usize + 1 {
                    return Err(FieldError::DegreeMismatch {
                        expected: m,
                        found: c.len().saturating_sub(1),
                    });
                }
                if let Some(&bad) = c.iter().find(|&&x| x >= p) {
                    return Err(FieldError::BadCoefficient(bad));
                }
                if c[m as usize] != 1 {
                    return Err(FieldError::NotMonic);
                }
                c.to_vec()
            }
        };
        if m > 1 && !Self::irreducible(p, &modulus) {
            return Err(FieldError::ReducibleModulus(p));
        }
        let mut inner = Inner { p, m, q, modulus, exp: Vec::new(), log: Vec::new() };
        if m > 1 {
            Self::build_tables(&mut inner);
        }
        Ok(Field(Arc::new(inner)))
    }

    /// `F_q` for a prime power `q`, using the irreducible monic modulus with
    /// the smallest code (coefficients read as base-`p` digits, low first).
    pub fn from_order(q: u32) -> Result<Self, FieldError> {
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(FieldError::NonPrimeP(q))?;
        let (mut rest, mut m) = (q, 0u32);
        while rest % p == 0 {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(FieldError::NonPrimeP(q));
        }
        if m == 1 {
            return Self::prime(p);
        }
        if (q as u64) > MAX_ORDER {
            return Err(FieldError::TooLarge(q as u64));
        }
        for code in 0..q {
            let mut c = Vec::with_capacity(m as usize + 1);
            let mut x = code;
            for _ in 0..m {
                c.push(x % p);
                x /= p;
            }
            c.push(1);
            if Self::irreducible(p, &c) {
                return Self::new(p, m, Some(&c));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    // No monic factor of degree 1..=m/2.
    fn irreducible(p: u32, f: &[u32]) -> bool {
        let m = f.len() - 1;
        for d in 1..=m / 2 {
            let count = (p as u64).pow(d as u32);
            for code in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut c = code;
                for _ in 0..d {
                    g.push((c % p as u64) as u32);
                    c /= p as u64;
                }
                g.push(1);
                if fp_poly_rem(p, f, &g).iter().all(|&x| x == 0) {
                    return false;
                }
            }
        }
        true
    }

    fn schoolbook_mul(inner: &Inner, a: u32, b: u32) -> u32 {
        let (p, m) = (inner.p, inner.m as usize);
        let digits = |mut x: u32| {
            let mut d = vec![0u32; m];
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let (da, db) = (digits(a), digits(b));
        let mut prod = vec![0u32; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        let r = fp_poly_rem(p, &prod, &inner.modulus);
        r.iter().rev().fold(0u32, |acc, &c| acc * p + c)
    }

    fn build_tables(inner: &mut Inner) {
        let q = inner.q;
        let factors = prime_factors(q - 1);
        let pow = |inner: &Inner, a: u32, mut e: u32| {
            let (mut base, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = Self::schoolbook_mul(inner, acc, base);
                }
                base = Self::schoolbook_mul(inner, base, base);
                e >>= 1;
            }
            acc
        };
        let generator = (2..q)
            .find(|&g| factors.iter().all(|&r| pow(inner, g, (q - 1) / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; q as usize - 1];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = Self::schoolbook_mul(inner, x, generator);
        }
        inner.exp = exp;
        inner.log = log;
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.0.m
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, low-to-high (`[0, 1]` for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.0.q
    }

    pub fn nonzero_elements(&self) -> core::ops::Range<Elem> {
        1..self.0.q
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.0.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.0;
        if f.m == 1 {
            let s = a + b;
            if s >= f.p {
                s - f.p
            } else {
                s
            }
        } else if f.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
            for _ in 0..f.m {
                out += ((a % f.p + b % f.p) % f.p) * place;
                a /= f.p;
                b /= f.p;
                place *= f.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let f = &*self.0;
        if a == 0 {
            0
        } else if f.m == 1 {
            f.p - a
        } else if f.p == 2 {
            a
        } else {
            let (mut a, mut out, mut place) = (a, 0u32, 1u32);
            for _ in 0..f.m {
                out += ((f.p - a % f.p) % f.p) * place;
                a /= f.p;
                place *= f.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.0;
        if f.m == 1 {
            (a as u64 * b as u64 % f.p as u64) as Elem
        } else if a == 0 || b == 0 {
            0
        } else {
            let s = f.log[a as usize] + f.log[b as usize];
            let n = f.q - 1;
            f.exp[(if s >= n { s - n } else { s }) as usize]
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let f = &*self.0;
        if f.m == 1 {
            Ok(self.pow(a, (f.p - 2) as u64))
        } else {
            let n = f.q - 1;
            Ok(f.exp[((n - f.log[a as usize]) % n) as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with `0^0 = 1`.
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Sum of products, `sum_i a_i b_i`.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        debug_assert_eq!(a.len(), b.len());
        if self.is_prime_field() {
            let p = self.0.p as u64;
            let mut acc = 0u64;
            for (&x, &y) in a.iter().zip(b) {
                acc += x as u64 * y as u64;
                if acc >= 1 << 62 {
                    acc %= p;
                }
            }
            (acc % p) as Elem
        } else {
            a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
        }
    }

    /// Uniform element.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.gen_range(0..self.0.q)
    }

    /// Uniform nonzero element.
    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.gen_range(1..self.0.q)
    }
}

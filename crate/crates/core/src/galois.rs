//! Exact arithmetic in `F_{p^m}` for odd primes `p`.
//!
//! Elements are stored as the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` of
//! their coordinates in the power basis of the field modulus. Multiplication
//! goes through discrete-log tables built once per field, so fields are capped
//! at [`MAX_FIELD_ORDER`] elements.
//!
//! Orderings used for the deterministic choices (modulus, primitive element)
//! compare that integer encoding, i.e. the highest coordinate is the most
//! significant one.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::Poly;

/// Largest field order accepted by [`FieldSpec::build`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// An element of some [`FieldSpec`], identified by its coordinate encoding.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub(crate) fn from_index(i: u32) -> Self {
        FieldElement(i)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldInner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, constant term first. `x` for prime fields.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    primitive: u32,
}

/// The finite field `F_q`, `q = p^m`, together with its arithmetic tables.
///
/// Cloning is cheap; all clones share the same tables.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.inner.q)
    }
}

/// Arithmetic operation selector for [`FieldSpec::arith`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow(u64),
}

impl FieldSpec {
    /// Builds `F_{p^m}` with the smallest monic irreducible modulus of degree `m`.
    pub fn build(p: u64, m: u32) -> Result<Self> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u128).checked_pow(m).filter(|&q| q <= MAX_FIELD_ORDER as u128);
        let q = q.ok_or(Error::FieldTooLarge { p, m })? as u32;
        let p = p as u32;

        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, m)?
        };

        let slow_mul = |a: u32, b: u32| -> u32 { poly_mulmod_index(p, m, &modulus, a, b) };
        let slow_pow = |mut base: u32, mut e: u64| -> u32 {
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };

        let group = (q - 1) as u64;
        let factors = prime_factors(group);
        let primitive = (1..q)
            .find(|&g| factors.iter().all(|&l| slow_pow(g, group / l) != 1))
            .ok_or_else(|| Error::Inconsistent("no primitive element found".into()))?;

        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = acc;
            log[acc as usize] = i as u32;
            acc = slow_mul(acc, primitive);
        }
        if acc != 1 {
            return Err(Error::Inconsistent("primitive element has wrong order".into()));
        }

        Ok(FieldSpec {
            inner: Arc::new(FieldInner { p, m, q, modulus, exp, log, primitive }),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p as u64
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    pub fn q(&self) -> u64 {
        self.inner.q as u64
    }

    /// Coefficients of the modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Element with the given coordinate encoding.
    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.q() {
            return Err(Error::ForeignElement { index, q: self.q() });
        }
        Ok(FieldElement(index as u32))
    }

    /// Validates that `x` is an element of this field.
    pub fn check(&self, x: FieldElement) -> Result<FieldElement> {
        self.element(x.0 as u64)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.inner.p as i64) as u32)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() != self.inner.m as usize || coords.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::Precondition(format!(
                "expected {} coordinates below {}",
                self.inner.m, self.inner.p
            )));
        }
        let mut idx = 0u32;
        for &c in coords.iter().rev() {
            idx = idx * self.inner.p + c;
        }
        Ok(FieldElement(idx))
    }

    pub fn coords(&self, x: FieldElement) -> Vec<u32> {
        let mut v = x.0;
        (0..self.inner.m)
            .map(|_| {
                let c = v % self.inner.p;
                v /= self.inner.p;
                c
            })
            .collect()
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if self.inner.m == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if self.inner.m == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.inner.q - 1;
        let l = self.inner.log[a.0 as usize] + self.inner.log[b.0 as usize];
        FieldElement(self.inner.exp[(if l >= n { l - n } else { l }) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        let n = self.inner.q - 1;
        let l = self.inner.log[a.0 as usize];
        Ok(FieldElement(self.inner.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = (self.inner.q - 1) as u64;
        let l = self.inner.log[a.0 as usize] as u64;
        FieldElement(self.inner.exp[((l * (e % n)) % n) as usize])
    }

    /// Operation dispatch with operand validation. `Inv` ignores `y`.
    pub fn arith(&self, op: FieldOp, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let x = self.check(x)?;
        let y = self.check(y)?;
        Ok(match op {
            FieldOp::Add => self.add(x, y),
            FieldOp::Sub => self.sub(x, y),
            FieldOp::Mul => self.mul(x, y),
            FieldOp::Inv => self.inv(x)?,
            FieldOp::Pow(e) => self.pow(x, e),
        })
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElement) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        let n = (self.inner.q - 1) as u64;
        let l = self.inner.log[a.0 as usize] as u64;
        Ok(n / gcd(n, l))
    }

    /// The least element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(self.inner.primitive)
    }

    /// `omega^((q-1)/n)` for the primitive element `omega`; has order exactly `n`.
    pub fn unity_root(&self, n: u64) -> Result<FieldElement> {
        let q1 = self.q() - 1;
        if n == 0 || q1 % n != 0 {
            return Err(Error::NoRootOfUnity { n, q_minus_one: q1 });
        }
        Ok(self.pow(self.primitive_element(), q1 / n))
    }

    /// Renders an element: a residue for prime fields, the coordinate encoding otherwise.
    pub fn render(&self, a: FieldElement) -> String {
        a.0.to_string()
    }
}

/// `q = 2^a * b + sign` with `b` odd and `a >= 2`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignDecomposition {
    pub sign: i8,
    pub a: u32,
    pub b: u64,
}

/// Splits an odd `q >= 3` as `2^a b + 1` (when `q = 1 mod 4`) or `2^a b - 1`.
pub fn decompose_q(q: u64) -> Result<SignDecomposition> {
    if q % 2 == 0 || q < 3 {
        return Err(Error::EvenOrder(q));
    }
    let (sign, mut rest) = if q % 4 == 1 { (1i8, q - 1) } else { (-1i8, q + 1) };
    let mut a = 0;
    while rest % 2 == 0 {
        rest /= 2;
        a += 1;
    }
    Ok(SignDecomposition { sign, a, b: rest })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, m)` when `q = p^m` for a prime `p`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut m = 0;
    let mut v = q;
    while v % p == 0 {
        v /= p;
        m += 1;
    }
    Some((p, m))
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Multiplicative order of `q` modulo `n` (`gcd(q, n) = 1`, `n >= 1`).
pub fn ord_mod(q: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let q = q % n;
    let mut acc = q;
    let mut k = 1;
    while acc != 1 {
        acc = ((acc as u128 * q as u128) % n as u128) as u64;
        k += 1;
    }
    k
}

fn smallest_irreducible(p: u32, m: u32) -> Result<Vec<u32>> {
    let prime = FieldSpec::build(p as u64, 1)?;
    let count = (p as u64).pow(m);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(m as usize + 1);
        let mut v = idx;
        for _ in 0..m {
            coeffs.push((v % p as u64) as u32);
            v /= p as u64;
        }
        coeffs.push(1);
        if coeffs[0] == 0 {
            continue;
        }
        let poly = Poly::new(
            &prime,
            coeffs.iter().map(|&c| FieldElement(c)).collect(),
        );
        if poly.is_irreducible() {
            return Ok(coeffs);
        }
    }
    Err(Error::Inconsistent(format!("no irreducible polynomial of degree {m} over F_{p}")))
}

fn poly_mulmod_index(p: u32, m: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
    let p64 = p as u64;
    let m = m as usize;
    let digits = |mut v: u32| -> Vec<u64> {
        (0..m)
            .map(|_| {
                let c = (v % p) as u64;
                v /= p;
                c
            })
            .collect()
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p64;
        }
    }
    for deg in (m..2 * m).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for k in 0..m {
            let sub = c * modulus[k] as u64 % p64;
            let slot = &mut prod[deg - m + k];
            *slot = (*slot + p64 - sub) % p64;
        }
    }
    prod[..m].iter().rev().fold(0u32, |acc, &c| acc * p + c as u32)
}

//! Dense univariate polynomials over a [`FieldSpec`].
//!
//! Text form: terms from the highest degree down, e.g. `x^4 + 3*x + 10`.
//! Prime-subfield coefficients print as least residues; other coefficients
//! print as powers of the primitive element, `w^k`. The parser accepts the same
//! grammar plus signs, implicit multiplication and parenthesized powers such as
//! `(x+1)^2(x^2-5)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::galois::{prime_factors, FieldElement, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

/// Operation selector for [`Poly::arith`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Pow(u64),
}

impl Poly {
    /// Builds a polynomial from coefficients, constant term first. Trailing zeros are dropped.
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_ints(field: &FieldSpec, ints: &[i64]) -> Self {
        Self::new(field, ints.iter().map(|&v| field.from_int(v)).collect())
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &FieldSpec, c: FieldElement) -> Self {
        Self::new(field, vec![c])
    }

    pub fn x(field: &FieldSpec) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &FieldSpec, c: FieldElement, deg: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; deg + 1];
        coeffs[deg] = c;
        Self::new(field, coeffs)
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(field: &FieldSpec, n: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[0] = field.neg(field.one());
        coeffs[n] = field.one();
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElement::ONE
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(FieldElement::ONE)
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    /// Checked dispatch; the operator impls panic on mixed fields instead.
    pub fn arith(op: PolyOp, a: &Poly, b: &Poly) -> Result<Poly> {
        if let PolyOp::Pow(e) = op {
            return Ok(a.pow(e));
        }
        a.same_field(b)?;
        Ok(match op {
            PolyOp::Add => a + b,
            PolyOp::Sub => a - b,
            PolyOp::Mul => a * b,
            PolyOp::Pow(_) => unreachable!(),
        })
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales to a monic polynomial; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(self.field.inv(l).expect("nonzero leading coefficient")),
        }
    }

    /// Returns `(quotient, remainder)` with `self = quotient * b + remainder`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(b)?;
        let f = &self.field;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let Some(da) = self.degree() else {
            return Ok((Poly::zero(f), Poly::zero(f)));
        };
        if da < db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lead = f.inv(b.coeffs[db])?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::ZERO; da - db + 1];
        for i in (0..=da - db).rev() {
            let c = rem[i + db];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, inv_lead);
            quot[i] = factor;
            for (j, &bc) in b.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(factor, bc));
            }
        }
        rem.truncate(db);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    /// Exact quotient; fails when `b` does not divide `self`.
    pub fn div_exact(&self, b: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Precondition(format!("{b} does not divide {self}")))
        }
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, b: &Poly) -> Result<Poly> {
        self.same_field(b)?;
        if self.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut u, mut v) = (self.clone(), b.clone());
        while !v.is_zero() {
            let r = u.rem(&v)?;
            u = v;
            v = r;
        }
        Ok(u.monic())
    }

    /// Monic least common multiple.
    pub fn lcm(&self, b: &Poly) -> Result<Poly> {
        let g = self.gcd(b)?;
        if self.is_zero() || b.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        Ok((self * b).div_exact(&g)?.monic())
    }

    /// `h(0)^{-1} x^{deg h} h(1/x)`.
    pub fn reciprocal(&self) -> Result<Poly> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv = self.field.inv(c0)?;
        let rev: Vec<_> = self.coeffs.iter().rev().map(|&c| self.field.mul(c, inv)).collect();
        Ok(Poly::new(&self.field, rev))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, mut e: u128, modulus: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Rabin's irreducibility test over the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let f = self.monic();
        let q = self.field.q() as u128;
        let x = Poly::x(&self.field);
        // frob[i] = x^(q^i) mod f
        let mut frob = vec![x.rem(&f).expect("nonzero modulus")];
        for i in 1..=d {
            let next = frob[i - 1].powmod(q, &f).expect("nonzero modulus");
            frob.push(next);
        }
        if frob[d] != x.rem(&f).expect("nonzero modulus") {
            return false;
        }
        prime_factors(d as u64).into_iter().all(|l| {
            let h = &frob[d / l as usize] - &x;
            h.gcd(&f).map(|g| g.is_one()).unwrap_or(false)
        })
    }

    /// Parses the text grammar described in the module docs.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Poly> {
        let mut p = Parser { field, src: text.as_bytes(), pos: 0 };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(out)
    }

    fn render_coeff(&self, c: FieldElement) -> String {
        let f = &self.field;
        if (c.index() as u64) < f.p() {
            return c.index().to_string();
        }
        let w = f.primitive_element();
        let k = (1..f.q()).find(|&k| f.pow(w, k) == c).expect("nonzero element");
        format!("w^{k}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let cs = self.render_coeff(c);
            match (deg, c == FieldElement::ONE) {
                (0, _) => write!(out, "{cs}")?,
                (1, true) => write!(out, "x")?,
                (1, false) => write!(out, "{cs}*x")?,
                (_, true) => write!(out, "x^{deg}")?,
                (_, false) => write!(out, "{cs}*x^{deg}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert!(self.field == rhs.field, "mixed fields");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert!(self.field == rhs.field, "mixed fields");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(self.field == rhs.field, "mixed fields");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }
}

struct Parser<'a> {
    field: &'a FieldSpec,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.field);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c == b'(' || c == b'x' || c == b'w' || c.is_ascii_digit() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly::x(self.field))
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(Poly::constant(self.field, self.field.primitive_element()))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let c = self.field.from_int((v % self.field.p()) as i64);
                Ok(Poly::constant(self.field, c))
            }
            Some(_) => Err(self.err("expected a term")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(Error::Parse { pos: start, msg: "integer too large".into() })
    }
}

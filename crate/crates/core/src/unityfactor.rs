//! Irreducible factorization of `x^(2^r) - 1` over `F_q` through cyclotomic cosets.

use crate::cosets::{cyclotomic_cosets, CosetTable};
use crate::error::{Error, Result};
use crate::galois::{ord_mod, FieldElement, FieldSpec};
use crate::polyring::Poly;

/// `F_q[y] / (f)` for a monic irreducible `f` of degree `t`; elements are residues mod `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionField {
    base: FieldSpec,
    modulus: Poly,
}

impl ExtensionField {
    /// Degree-`t` extension with the smallest monic irreducible modulus (coefficient index order,
    /// highest coefficient most significant).
    pub fn build(base: &FieldSpec, t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::ZeroDegree);
        }
        order_of(base, t)?;
        let q = base.q();
        let mut idx: u128 = 0;
        loop {
            let mut coeffs = Vec::with_capacity(t as usize + 1);
            let mut v = idx;
            for _ in 0..t {
                coeffs.push(FieldElement::from_index((v % q as u128) as u32));
                v /= q as u128;
            }
            if v > 0 {
                return Err(Error::Inconsistent(format!("no irreducible of degree {t} found")));
            }
            coeffs.push(base.one());
            let f = Poly::new(base, coeffs);
            if f.is_irreducible() {
                return Ok(ExtensionField { base: base.clone(), modulus: f });
            }
            idx += 1;
        }
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> u32 {
        self.modulus.degree().expect("nonzero modulus") as u32
    }

    /// Order of the extension field.
    pub fn order(&self) -> Result<u128> {
        order_of(&self.base, self.degree())
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.modulus).expect("nonzero modulus")
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a * b))
    }

    pub fn pow(&self, a: &Poly, e: u128) -> Poly {
        a.powmod(e, &self.modulus).expect("nonzero modulus")
    }

    /// Element with the given index `sum c_i q^i`.
    pub fn element(&self, mut idx: u128) -> Poly {
        let q = self.base.q() as u128;
        let coeffs = (0..self.degree())
            .map(|_| {
                let c = (idx % q) as u32;
                idx /= q;
                FieldElement::from_index(c)
            })
            .collect();
        Poly::new(&self.base, coeffs)
    }

    pub fn embed(&self, c: FieldElement) -> Poly {
        Poly::constant(&self.base, c)
    }
}

fn order_of(base: &FieldSpec, t: u32) -> Result<u128> {
    (base.q() as u128).checked_pow(t).ok_or(Error::ExtensionTooLarge(t))
}

/// Splitting data for `x^(2^r) - 1` over `base`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub base: FieldSpec,
    pub r: u32,
    pub ext: ExtensionField,
    /// Primitive `2^r`-th root of unity, as an element of `ext`.
    pub beta: Poly,
    pub cosets: CosetTable,
    /// `(rep, m_rep)` sorted by representative.
    pub minpolys: Vec<(u64, Poly)>,
}

/// Builds the extension of degree `ord_{2^r}(q)`, a primitive root `beta` and all minimal polynomials.
///
/// When `2^r | q - 1`, `beta = omega^((q-1)/2^r)` for the primitive element `omega` of the base.
/// Otherwise `beta = z^((Q-1)/2^r)` for the least `z` (index order) for which this has order `2^r`.
pub fn root_system(base: &FieldSpec, r: u32) -> Result<RootSystem> {
    let n = 1u64 << r;
    let q = base.q();
    let t = ord_mod(q, n) as u32;
    let ext = ExtensionField::build(base, t)?;
    let beta = if t == 1 {
        ext.embed(base.unity_root(n)?)
    } else {
        let big_q = ext.order()?;
        let cofactor = (big_q - 1) / n as u128;
        let one = Poly::one(base);
        let mut found = None;
        for z in 1..big_q {
            let cand = ext.pow(&ext.element(z), cofactor);
            if n == 1 || ext.pow(&cand, (n / 2) as u128) != one {
                found = Some(cand);
                break;
            }
        }
        found.ok_or_else(|| Error::Inconsistent("no primitive root of unity".into()))?
    };
    let cosets = cyclotomic_cosets(n, q);
    let mut rs = RootSystem { base: base.clone(), r, ext, beta, cosets, minpolys: Vec::new() };
    let mut minpolys = Vec::new();
    for rep in rs.cosets.reps() {
        minpolys.push((rep, expand_minimal(&rs, rep)?));
    }
    rs.minpolys = minpolys;
    Ok(rs)
}

fn expand_minimal(rs: &RootSystem, s: u64) -> Result<Poly> {
    let coset = rs.cosets.coset(s)?;
    let ext = &rs.ext;
    let base = &rs.base;
    // Coefficients in ext, constant term first.
    let mut acc: Vec<Poly> = vec![Poly::one(base)];
    for &i in coset {
        let root = ext.pow(&rs.beta, i as u128);
        let mut next = vec![Poly::zero(base); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            next[k] = &next[k] - &ext.mul(c, &root);
        }
        acc = next;
    }
    let mut out = Vec::with_capacity(acc.len());
    for c in acc {
        match c.degree() {
            None => out.push(base.zero()),
            Some(0) => out.push(c.coeff(0)),
            Some(_) => return Err(Error::CoefficientOutsideBase(s)),
        }
    }
    Ok(Poly::new(base, out))
}

/// `m_s` for a canonical representative `s`.
pub fn minimal_poly(rs: &RootSystem, s: u64) -> Result<Poly> {
    rs.minpolys
        .iter()
        .find(|(rep, _)| *rep == s)
        .map(|(_, m)| m.clone())
        .ok_or(Error::NotARepresentative(s))
}

/// One `(rep, m_rep)` per coset, sorted by representative; the product is `x^(2^r) - 1`.
pub fn factor_unity(base: &FieldSpec, r: u32) -> Result<Vec<(u64, Poly)>> {
    Ok(root_system(base, r)?.minpolys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::negate_rep;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::build(p, 1).unwrap()
    }

    fn multiset(f: &FieldSpec, list: &[&str]) -> Vec<String> {
        let mut v: Vec<String> = list.iter().map(|s| Poly::parse(f, s).unwrap().to_string()).collect();
        v.sort();
        v
    }

    fn factors(f: &FieldSpec, r: u32) -> Vec<String> {
        let mut v: Vec<String> = factor_unity(f, r).unwrap().into_iter().map(|(_, m)| m.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn root_systems() {
        let rs = root_system(&fp(17), 3).unwrap();
        assert_eq!(rs.ext.degree(), 1);
        assert_eq!(rs.beta, Poly::from_ints(&fp(17), &[9]));
        assert_eq!(root_system(&fp(13), 3).unwrap().ext.degree(), 2);
        assert_eq!(root_system(&fp(3), 3).unwrap().ext.degree(), 2);
    }

    #[test]
    fn minimal_polynomials() {
        let f13 = fp(13);
        let rs = root_system(&f13, 3).unwrap();
        assert_eq!(minimal_poly(&rs, 0).unwrap(), Poly::parse(&f13, "x-1").unwrap());
        assert_eq!(minimal_poly(&rs, 4).unwrap(), Poly::parse(&f13, "x+1").unwrap());
        let m1 = minimal_poly(&rs, 1).unwrap();
        assert!(m1 == Poly::parse(&f13, "x^2+5").unwrap() || m1 == Poly::parse(&f13, "x^2-5").unwrap());
        assert_eq!(minimal_poly(&rs, 5).unwrap_err(), Error::NotARepresentative(5));
    }

    #[test]
    fn factorizations_mod_8() {
        let f17 = fp(17);
        assert_eq!(
            factors(&f17, 3),
            multiset(&f17, &["x-1", "x+1", "x-2", "x+2", "x-4", "x+4", "x-8", "x+8"])
        );
        let f11 = fp(11);
        assert_eq!(factors(&f11, 3), multiset(&f11, &["x-1", "x+1", "x^2+1", "x^2+3x+10", "x^2+8x+10"]));
        let f7 = fp(7);
        assert_eq!(factors(&f7, 3), multiset(&f7, &["x-1", "x+1", "x^2+1", "x^2+3x+1", "x^2+4x+1"]));
    }

    #[test]
    fn product_degree_and_pairing() {
        let fields = [fp(3), fp(5), fp(7), fp(11), fp(13), fp(17), FieldSpec::build(3, 2).unwrap()];
        for f in &fields {
            for r in 1..=5 {
                let rs = root_system(f, r).unwrap();
                let n = 1usize << r;
                let mut prod = Poly::one(f);
                let mut total = 0;
                for (rep, m) in &rs.minpolys {
                    assert!(m.is_monic());
                    assert!(m.is_irreducible(), "{m} over {f:?}");
                    assert_eq!(m.degree().unwrap(), rs.cosets.size(*rep).unwrap());
                    total += m.degree().unwrap();
                    prod = &prod * m;
                    let neg = negate_rep(&rs.cosets, *rep).unwrap();
                    assert_eq!(m.reciprocal().unwrap(), minimal_poly(&rs, neg).unwrap());
                }
                assert_eq!(total, n);
                assert_eq!(prod, Poly::x_n_minus_one(f, n));
            }
        }
    }
}

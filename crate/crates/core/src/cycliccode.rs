//! Repeated-root cyclic codes of length `2^r p^s` over `F_q`, stored as exponent vectors over
//! the canonical coset representatives of `Z_{2^r}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::cosets::{structured_reps, StructuredReps};
use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use crate::polyring::Poly;
use crate::unityfactor::{root_system, RootSystem};

struct FamilyInner {
    field: FieldSpec,
    r: u32,
    s: u32,
    ps: u64,
    n: u64,
    roots: RootSystem,
    structured: StructuredReps,
    reps: Vec<u64>,
    minpolys: Vec<Poly>,
    degrees: Vec<u64>,
    weights: Vec<u64>,
    partner: Vec<usize>,
    pub(crate) layer_cache: Mutex<HashMap<Vec<bool>, Option<u64>>>,
}

/// All cyclic codes of length `2^r p^s` over one field, with the shared factorization data.
#[derive(Clone)]
pub struct CodeFamily {
    inner: Arc<FamilyInner>,
}

impl PartialEq for CodeFamily {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.field == other.inner.field
                && self.inner.r == other.inner.r
                && self.inner.s == other.inner.s)
    }
}

impl Eq for CodeFamily {}

impl fmt::Debug for CodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CodeFamily(n={}, {:?})", self.inner.n, self.inner.field)
    }
}

impl CodeFamily {
    pub fn new(field: &FieldSpec, r: u32, s: u32) -> Result<Self> {
        if r > 10 {
            return Err(Error::Precondition(format!("r = {r} is too large")));
        }
        let ps = field
            .p()
            .checked_pow(s)
            .filter(|&v| v <= 1 << 20)
            .ok_or_else(|| Error::Precondition(format!("p^s too large for s = {s}")))?;
        let n = ps << r;
        let roots = root_system(field, r)?;
        let structured = structured_reps(field.q(), r)?;
        let reps = roots.cosets.reps();
        let minpolys: Vec<Poly> = roots.minpolys.iter().map(|(_, m)| m.clone()).collect();
        let degrees = minpolys.iter().map(|m| m.degree().expect("nonzero") as u64).collect();
        let pos = |rep: u64| reps.iter().position(|&x| x == rep).expect("canonical rep");
        let mut weights = vec![0; reps.len()];
        let mut partner = vec![0; reps.len()];
        for e in &structured.entries {
            weights[pos(e.rep)] = e.weight;
            partner[pos(e.rep)] = pos(e.partner_rep);
        }
        Ok(CodeFamily {
            inner: Arc::new(FamilyInner {
                field: field.clone(),
                r,
                s,
                ps,
                n,
                roots,
                structured,
                reps,
                minpolys,
                degrees,
                weights,
                partner,
                layer_cache: Mutex::new(HashMap::new()),
            }),
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.inner.field
    }

    pub fn r(&self) -> u32 {
        self.inner.r
    }

    pub fn s(&self) -> u32 {
        self.inner.s
    }

    /// `p^s`, the largest admissible exponent.
    pub fn ps(&self) -> u64 {
        self.inner.ps
    }

    pub fn n(&self) -> u64 {
        self.inner.n
    }

    /// `2^r`.
    pub fn base_len(&self) -> u64 {
        1 << self.inner.r
    }

    pub fn roots(&self) -> &RootSystem {
        &self.inner.roots
    }

    pub fn structured(&self) -> &StructuredReps {
        &self.inner.structured
    }

    /// Canonical representatives, in increasing order; exponent vectors are aligned to this.
    pub fn reps(&self) -> &[u64] {
        &self.inner.reps
    }

    pub fn minpolys(&self) -> &[Poly] {
        &self.inner.minpolys
    }

    /// Degrees of the minimal polynomials.
    pub fn degrees(&self) -> &[u64] {
        &self.inner.degrees
    }

    /// Closed-form degrees from the structured representative families.
    pub fn weights(&self) -> &[u64] {
        &self.inner.weights
    }

    /// Index of the dual partner of each representative, from the structured families.
    pub fn partners(&self) -> &[usize] {
        &self.inner.partner
    }

    pub(crate) fn layer_cache(&self) -> &Mutex<HashMap<Vec<bool>, Option<u64>>> {
        &self.inner.layer_cache
    }

    pub fn index_of(&self, rep: u64) -> Result<usize> {
        self.inner.reps.iter().position(|&x| x == rep).ok_or(Error::NotARepresentative(rep))
    }

    /// Number of codes in the family, `(p^s + 1)^{|T_n|}`.
    pub fn total_codes(&self) -> BigUint {
        BigUint::from(self.inner.ps + 1).pow(self.inner.reps.len() as u32)
    }

    /// Code with the given exponents, aligned to [`CodeFamily::reps`].
    pub fn code(&self, exps: Vec<u64>) -> Result<RepeatedRootCode> {
        code_build(self, ExponentVector(exps))
    }

    /// Code from `(rep, j)` pairs; unspecified representatives get exponent 0.
    pub fn code_from_pairs(&self, pairs: &[(u64, u64)]) -> Result<RepeatedRootCode> {
        let mut exps = vec![0; self.inner.reps.len()];
        for &(rep, j) in pairs {
            exps[self.index_of(rep)?] = j;
        }
        self.code(exps)
    }

    /// Code at a position of the lexicographic enumeration order.
    pub fn code_at(&self, mut index: u128) -> RepeatedRootCode {
        let radix = (self.inner.ps + 1) as u128;
        let len = self.inner.reps.len();
        let mut exps = vec![0u64; len];
        for slot in exps.iter_mut().rev() {
            *slot = (index % radix) as u64;
            index /= radix;
        }
        self.code(exps).expect("in-range exponents")
    }

    /// Renders a factored generator `(m_h)^{j_h}...`; `1` for the full space.
    pub fn factored_text(&self, exps: &[u64]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .zip(&self.inner.minpolys)
            .filter(|(&j, _)| j > 0)
            .map(|(&j, m)| if j == 1 { format!("({m})") } else { format!("({m})^{j}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("")
        }
    }
}

/// Exponents `j_h`, aligned to the family's canonical representatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(pub Vec<u64>);

impl ExponentVector {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

#[derive(Clone)]
pub struct RepeatedRootCode {
    family: CodeFamily,
    exps: Vec<u64>,
    k: u64,
    generator: OnceLock<Poly>,
}

impl PartialEq for RepeatedRootCode {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.exps == other.exps
    }
}

impl Eq for RepeatedRootCode {}

impl fmt::Debug for RepeatedRootCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] {:?}", self.n(), self.k, self.exps)
    }
}

pub fn code_build(family: &CodeFamily, exps: ExponentVector) -> Result<RepeatedRootCode> {
    let exps = exps.0;
    if exps.len() != family.reps().len() {
        return Err(Error::Precondition(format!(
            "exponent vector has {} entries, expected {}",
            exps.len(),
            family.reps().len()
        )));
    }
    for (i, &j) in exps.iter().enumerate() {
        if j > family.ps() {
            return Err(Error::ExponentOutOfRange { rep: family.reps()[i], exp: j, max: family.ps() });
        }
    }
    let removed: u64 = exps.iter().zip(family.degrees()).map(|(j, d)| j * d).sum();
    Ok(RepeatedRootCode { family: family.clone(), k: family.n() - removed, exps, generator: OnceLock::new() })
}

impl RepeatedRootCode {
    pub fn family(&self) -> &CodeFamily {
        &self.family
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn exponent_vector(&self) -> ExponentVector {
        ExponentVector(self.exps.clone())
    }

    pub fn exp_of(&self, rep: u64) -> Result<u64> {
        Ok(self.exps[self.family.index_of(rep)?])
    }

    pub fn n(&self) -> u64 {
        self.family.n()
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn is_zero_code(&self) -> bool {
        self.k == 0
    }

    /// `prod_h m_h^{j_h}`, computed once.
    pub fn generator(&self) -> &Poly {
        self.generator.get_or_init(|| {
            self.exps
                .iter()
                .zip(self.family.minpolys())
                .fold(Poly::one(self.family.field()), |acc, (&j, m)| &acc * &m.pow(j))
        })
    }

    pub fn generator_text(&self) -> String {
        self.family.factored_text(&self.exps)
    }

    /// The dual code. For `r >= 3` the exponents come from the structured pairing
    /// `j'_h = p^s - j_{partner(h)}`; for smaller `r` from the reciprocal of the check polynomial.
    pub fn dual(&self) -> RepeatedRootCode {
        if self.family.r() < 3 {
            return self.dual_generic().expect("dual of a divisor of x^n - 1");
        }
        let ps = self.family.ps();
        let exps = self.family.partners().iter().map(|&p| ps - self.exps[p]).collect();
        self.family.code(exps).expect("in-range exponents")
    }

    /// `C^⊥ = <reciprocal((x^n - 1) / g)>`.
    pub fn dual_generic(&self) -> Result<RepeatedRootCode> {
        let f = self.family.field();
        let check = Poly::x_n_minus_one(f, self.n() as usize).div_exact(self.generator())?;
        let g = check.reciprocal()?;
        let code = self.family.code(exponents_of(&self.family, &g)?.0)?;
        let _ = code.generator.set(g);
        Ok(code)
    }

    /// `C ∩ C^⊥`, by pointwise maximum of the exponents of `C` and `C^⊥`.
    pub fn hull(&self) -> RepeatedRootCode {
        let d = self.dual();
        let exps = self.exps.iter().zip(d.exps()).map(|(&a, &b)| a.max(b)).collect();
        self.family.code(exps).expect("in-range exponents")
    }

    /// `C ∩ C^⊥` generated by `lcm(g, g^⊥)`.
    pub fn hull_via_lcm(&self) -> Result<RepeatedRootCode> {
        let d = self.dual_generic()?;
        let l = self.generator().lcm(d.generator())?;
        self.family.code(exponents_of(&self.family, &l)?.0)
    }

    /// `C^⊥ ⊆ C`, from the exponent inequalities: `2 j_h < p^s` on self-paired representatives,
    /// `j_h + j_{-h} <= p^s` on paired ones.
    pub fn is_dual_containing(&self) -> bool {
        let ps = self.family.ps();
        self.family.partners().iter().enumerate().all(|(h, &p)| {
            if p == h {
                2 * self.exps[h] < ps
            } else {
                self.exps[h] + self.exps[p] <= ps
            }
        })
    }

    /// `C^⊥ ⊆ C` as `g | g^⊥`.
    pub fn dual_containing_by_divisibility(&self) -> Result<bool> {
        let d = self.dual_generic()?;
        self.generator().divides(d.generator())
    }

    /// Dimension from the closed-form degrees of the structured families.
    pub fn closed_form_k(&self) -> u64 {
        let removed: u64 = self.exps.iter().zip(self.family.weights()).map(|(j, w)| j * w).sum();
        self.n() - removed
    }

    pub fn record(&self) -> CodeRecord {
        let reps = self.family.reps();
        let map = |e: &[u64]| reps.iter().copied().zip(e.iter().copied()).collect();
        let dual = self.dual();
        CodeRecord {
            p: self.family.field().p(),
            m: self.family.field().m(),
            r: self.family.r(),
            s: self.family.s(),
            n: self.n(),
            exponents: map(&self.exps),
            k: self.k,
            generator: self.generator_text(),
            dual_exponents: map(dual.exps()),
            hull_dim: self.hull().k(),
            dual_containing: self.is_dual_containing(),
        }
    }
}

/// JSON form of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeRecord {
    pub p: u64,
    pub m: u32,
    pub r: u32,
    pub s: u32,
    pub n: u64,
    pub exponents: BTreeMap<u64, u64>,
    pub k: u64,
    pub generator: String,
    pub dual_exponents: BTreeMap<u64, u64>,
    pub hull_dim: u64,
    pub dual_containing: bool,
}

/// Exponents of a monic divisor of `x^n - 1`, found by repeated division by each `m_h`.
pub fn exponents_of(family: &CodeFamily, g: &Poly) -> Result<ExponentVector> {
    if g.is_zero() {
        return Err(Error::NotADivisor(family.n()));
    }
    let mut rest = g.monic();
    let mut exps = vec![0u64; family.reps().len()];
    for (h, m) in family.minpolys().iter().enumerate() {
        loop {
            let (q, r) = rest.divmod(m)?;
            if !r.is_zero() {
                break;
            }
            rest = q;
            exps[h] += 1;
        }
        if exps[h] > family.ps() {
            return Err(Error::NotADivisor(family.n()));
        }
    }
    if !rest.is_one() {
        return Err(Error::NotADivisor(family.n()));
    }
    Ok(ExponentVector(exps))
}

/// Exponents of a generator written as a product of powers of irreducible factors.
pub fn parse_generator(family: &CodeFamily, text: &str) -> Result<ExponentVector> {
    let f = family.field();
    Poly::parse(f, text)?;
    let mut exps = vec![0u64; family.reps().len()];
    for (factor_text, e) in split_factors(text)? {
        let factor = Poly::parse(f, &factor_text)?;
        match factor.degree() {
            None => return Err(Error::NotADivisor(family.n())),
            Some(0) => continue,
            Some(_) => {}
        }
        let monic = factor.monic();
        if !monic.is_irreducible() {
            return Err(Error::NotIrreducible(factor.to_string()));
        }
        let h = family
            .minpolys()
            .iter()
            .position(|m| *m == monic)
            .ok_or(Error::NotAFactor { factor: monic.to_string(), n: family.base_len() })?;
        exps[h] += e;
        if exps[h] > family.ps() {
            return Err(Error::ExponentOutOfRange { rep: family.reps()[h], exp: exps[h], max: family.ps() });
        }
    }
    Ok(ExponentVector(exps))
}

/// Splits a product into `(factor text, exponent)` pairs at parenthesis depth 0.
/// A top-level sum is a single factor.
pub(crate) fn split_factors(text: &str) -> Result<Vec<(String, u64)>> {
    let bytes = text.as_bytes();
    let mut depth = 0i32;
    for &c in bytes {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => return Ok(vec![(text.to_string(), 1)]),
            _ => {}
        }
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() || c == b'*' {
            i += 1;
            continue;
        }
        let start = i;
        if c == b'(' {
            let mut d = 0;
            while i < bytes.len() {
                match bytes[i] {
                    b'(' => d += 1,
                    b')' => {
                        d -= 1;
                        if d == 0 {
                            i += 1;
                            break;
                        }
                    }
                    _ => {}
                }
                i += 1;
            }
        } else {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() && c.is_ascii_digit() {
                i += 1;
            }
        }
        let body = text[start..i].to_string();
        let mut e = 1u64;
        let mut j = i;
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        if j < bytes.len() && bytes[j] == b'^' {
            j += 1;
            while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                j += 1;
            }
            let es = j;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            e = text[es..j].parse().map_err(|_| Error::Parse { pos: es, msg: "expected an integer".into() })?;
            i = j;
        }
        out.push((body, e));
    }
    Ok(out)
}

/// `C ⊆ C'`, i.e. every exponent of `C'` is at most the matching exponent of `C`.
pub fn is_subcode(c: &RepeatedRootCode, c_prime: &RepeatedRootCode) -> Result<bool> {
    if c.family != c_prime.family {
        return Err(Error::MismatchedAmbient);
    }
    Ok(c_prime.exps.iter().zip(&c.exps).all(|(a, b)| a <= b))
}

/// Number of dual-containing codes in the family, by the closed forms for `r >= 2`
/// and by enumeration for `r = 1`.
pub fn count_dual_containing(family: &CodeFamily) -> Result<BigUint> {
    let r = family.r();
    if r == 1 {
        let all = enumerate_codes(family, &|c| c.is_dual_containing(), u64::MAX, 1)?;
        return Ok(BigUint::from(all.len()));
    }
    let ps = BigUint::from(family.ps());
    let two = BigUint::from(2u32);
    let plus2 = &ps + &two;
    let half = (&ps + 1u32) / &two;
    let dec = family.structured().decomposition;
    let a = dec.a;
    let pow = |b: &BigUint, e: u64| b.pow(e as u32);
    let (e2, eh) = if dec.sign > 0 {
        if r <= a {
            ((1u64 << (r - 1)) - 1, (1u64 << (r - 1)) + 1)
        } else {
            let base = (1u64 << (a - 1)) + (r - a) as u64 * (1u64 << (a - 2));
            (base - 1, base + 1)
        }
    } else if a == 2 {
        ((r - 2) as u64, (r + 1) as u64)
    } else if r >= a {
        let pairs = (r - a) as u64 * (1u64 << (a - 2));
        (pairs, (1u64 << (a - 1)) + pairs + 1)
    } else {
        return Ok(count_dual_containing_by_pairs(family));
    };
    Ok(pow(&plus2, e2) * pow(&half, eh))
}

/// `((p^s+1)/2)^{#self-paired} * ((p^s+2)(p^s+1)/2)^{#pairs}` from the representative pairing.
pub fn count_dual_containing_by_pairs(family: &CodeFamily) -> BigUint {
    let ps = BigUint::from(family.ps());
    let half = (&ps + 1u32) / BigUint::from(2u32);
    let pair = (&ps + 2u32) * &half;
    let partners = family.partners();
    let selfs = partners.iter().enumerate().filter(|(h, &p)| *h == p).count();
    let pairs = (partners.len() - selfs) / 2;
    half.pow(selfs as u32) * pair.pow(pairs as u32)
}

/// All codes satisfying `predicate`, in lexicographic exponent order (first representative most
/// significant). Runs on `jobs` worker threads (0 = rayon default); output order does not depend on it.
pub fn enumerate_codes(
    family: &CodeFamily,
    predicate: &(dyn Fn(&RepeatedRootCode) -> bool + Sync),
    budget: u64,
    jobs: usize,
) -> Result<Vec<RepeatedRootCode>> {
    let total = family.total_codes();
    if total > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { needed: total.to_string(), budget });
    }
    let total: u64 = total.try_into().expect("checked against a u64 budget");
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?;
    Ok(pool.install(|| {
        (0..total)
            .into_par_iter()
            .filter_map(|i| {
                let c = family.code_at(i as u128);
                predicate(&c).then_some(c)
            })
            .collect()
    }))
}

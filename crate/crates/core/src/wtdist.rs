//! Hamming distance of repeated-root cyclic codes through the layer decomposition
//! `d(C) = min_t P_t d(C_t)`, a direct oracle, and MDS classification.

use serde::Serialize;

use crate::cycliccode::RepeatedRootCode;
use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use crate::polyring::Poly;

/// `P_t = prod (t_i + 1)` over the base-`p` digits of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PAdicWeight {
    pub t: u64,
    /// Least significant digit first, exactly `s` digits.
    pub digits: Vec<u64>,
    pub p_t: u64,
}

pub fn p_weight(t: u64, p: u64, s: u32) -> Result<PAdicWeight> {
    let bound = p.pow(s);
    if t >= bound {
        return Err(Error::LayerOutOfRange { t, bound });
    }
    let mut v = t;
    let digits: Vec<u64> = (0..s)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect();
    let p_t = digits.iter().map(|d| d + 1).product();
    Ok(PAdicWeight { t, digits, p_t })
}

/// The `(k, tau)` with `p^s - p^{s-k} + tau p^{s-k-1} + 1 <= l <= p^s - p^{s-k} + (tau+1) p^{s-k-1}`.
/// Then `min { P_t : t >= l } = (tau + 2) p^k`.
pub fn t_interval(l: u64, p: u64, s: u32) -> Result<(u32, u64)> {
    let ps = p.pow(s);
    if l == 0 || l >= ps {
        return Err(Error::IntervalOutOfRange(l));
    }
    for k in 0..s {
        let base = ps - p.pow(s - k);
        let step = p.pow(s - k - 1);
        for tau in 0..=p - 2 {
            if base + tau * step < l && l <= base + (tau + 1) * step {
                return Ok((k, tau));
            }
        }
    }
    Err(Error::IntervalOutOfRange(l))
}

/// Upper end of the interval containing `l`.
pub fn interval_end(l: u64, p: u64, s: u32) -> Result<u64> {
    let (k, tau) = t_interval(l, p, s)?;
    Ok(p.pow(s) - p.pow(s - k) + (tau + 1) * p.pow(s - k - 1))
}

/// Simple-root cyclic code of length `2^r` generated by `prod_{j_h > t} m_h`.
#[derive(Clone, Debug)]
pub struct LayerCode {
    pub t: u64,
    /// `mask[h]` is true when `m_h` divides the layer generator.
    pub mask: Vec<bool>,
    pub generator: Poly,
    pub k: u64,
}

impl LayerCode {
    pub fn is_zero(&self) -> bool {
        self.k == 0
    }
}

pub fn layer_code(c: &RepeatedRootCode, t: u64) -> Result<LayerCode> {
    let fam = c.family();
    if t >= fam.ps() {
        return Err(Error::LayerOutOfRange { t, bound: fam.ps() });
    }
    let mask: Vec<bool> = c.exps().iter().map(|&j| j > t).collect();
    let mut generator = Poly::one(fam.field());
    let mut deg = 0;
    for (h, &on) in mask.iter().enumerate() {
        if on {
            generator = &generator * &fam.minpolys()[h];
            deg += fam.degrees()[h];
        }
    }
    Ok(LayerCode { t, mask, generator, k: fam.base_len() - deg })
}

/// Minimum distance of a cyclic code of length `2^r` (at most 64).
pub fn simple_distance(field: &FieldSpec, generator: &Poly, len: usize) -> Result<u64> {
    if len > 64 {
        return Err(Error::Precondition(format!("layer length {len} exceeds 64")));
    }
    cyclic_min_distance(field, generator, len)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerEntry {
    pub t: u64,
    #[serde(rename = "P_t")]
    pub p_t: u64,
    pub d_t: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub d: u64,
    pub witness_t: u64,
    pub layers: Vec<LayerEntry>,
}

/// `d(C) = min { P_t d(C_t) : t in [0, p^s), C_t nonzero }`.
pub fn distance(c: &RepeatedRootCode) -> Result<DistanceReport> {
    if c.is_zero_code() {
        return Err(Error::ZeroCode);
    }
    let fam = c.family();
    let p = fam.field().p();
    let mut layers = Vec::new();
    let mut best: Option<(u64, u64)> = None;
    for t in 0..fam.ps() {
        let mask: Vec<bool> = c.exps().iter().map(|&j| j > t).collect();
        let d_t = match layer_distance(c, &mask)? {
            Some(d) => d,
            None => continue,
        };
        let p_t = p_weight(t, p, fam.s())?.p_t;
        layers.push(LayerEntry { t, p_t, d_t });
        if best.map_or(true, |(d, _)| p_t * d_t < d) {
            best = Some((p_t * d_t, t));
        }
    }
    let (d, witness_t) = best.ok_or(Error::ZeroCode)?;
    Ok(DistanceReport { d, witness_t, layers })
}

fn layer_distance(c: &RepeatedRootCode, mask: &[bool]) -> Result<Option<u64>> {
    let fam = c.family();
    if let Some(&d) = fam.layer_cache().lock().expect("cache lock").get(mask) {
        return Ok(d);
    }
    let d = if mask.iter().all(|&m| m) {
        None
    } else {
        let g = mask
            .iter()
            .zip(fam.minpolys())
            .filter(|(&on, _)| on)
            .fold(Poly::one(fam.field()), |acc, (_, m)| &acc * m);
        Some(simple_distance(fam.field(), &g, fam.base_len() as usize)?)
    };
    fam.layer_cache().lock().expect("cache lock").insert(mask.to_vec(), d);
    Ok(d)
}

/// Direct minimum distance on the full length, for `n <= max_n`.
pub fn brute_distance(c: &RepeatedRootCode, max_n: u64) -> Result<u64> {
    if c.n() > max_n {
        return Err(Error::BudgetExceeded { needed: format!("length {}", c.n()), budget: max_n });
    }
    if c.is_zero_code() {
        return Err(Error::ZeroCode);
    }
    cyclic_min_distance(c.family().field(), c.generator(), c.n() as usize)
}

/// Minimum distance of the cyclic code `<g>` of length `n`, `g | x^n - 1`.
///
/// Finds the least `w` such that some `w` columns `x^i mod g` of the parity-check matrix are
/// dependent, restricted to sets containing column 0 (every codeword has a cyclic shift with
/// a nonzero first coordinate). When the remaining column search is estimated to cost more than
/// listing all `q^k` codewords, it lists the codewords instead.
pub fn cyclic_min_distance(field: &FieldSpec, g: &Poly, n: usize) -> Result<u64> {
    let Some(rdeg) = g.degree() else { return Err(Error::ZeroCode) };
    if rdeg >= n {
        return Err(Error::ZeroCode);
    }
    if rdeg == 0 {
        return Ok(1);
    }
    let g = g.monic();
    let k = n - rdeg;
    let cols = parity_columns(field, &g, n);

    let enum_cost = (field.q() as f64).powi(k as i32) * n as f64;
    let mut spent = 0.0f64;
    for w in 2..=rdeg + 1 {
        let level = binomial(n - 1, w - 1) * (rdeg * w) as f64;
        if spent + level > enum_cost {
            return Ok(enumerate_min_weight(field, &g, n));
        }
        spent += level;
        let mut search = ColumnSearch { field, cols: &cols, basis: Vec::new() };
        if search.dependent_with(w) {
            return Ok(w as u64);
        }
    }
    Err(Error::Inconsistent("no dependent column set within the Singleton bound".into()))
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn parity_columns(field: &FieldSpec, g: &Poly, n: usize) -> Vec<Vec<u32>> {
    let r = g.degree().expect("nonzero");
    let gc: Vec<_> = g.coeffs().to_vec();
    let mut cols = Vec::with_capacity(n);
    let mut cur = vec![crate::galois::FieldElement::ZERO; r];
    cur[0] = field.one();
    for _ in 0..n {
        cols.push(cur.iter().map(|e| e.index()).collect());
        // cur <- x * cur mod g
        let top = cur[r - 1];
        for i in (1..r).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = field.zero();
        if !top.is_zero() {
            for i in 0..r {
                cur[i] = field.sub(cur[i], field.mul(top, gc[i]));
            }
        }
    }
    cols
}

struct ColumnSearch<'a> {
    field: &'a FieldSpec,
    cols: &'a [Vec<u32>],
    /// Echelon rows with a unit pivot: `(pivot, row)`.
    basis: Vec<(usize, Vec<u32>)>,
}

impl ColumnSearch<'_> {
    /// Reduces `v` against the basis; `None` when it becomes zero.
    fn reduce(&self, v: &[u32]) -> Option<(usize, Vec<u32>)> {
        let f = self.field;
        let mut v: Vec<_> = v.iter().map(|&x| f.element(x as u64).expect("element")).collect();
        for (pivot, row) in &self.basis {
            let c = v[*pivot];
            if c.is_zero() {
                continue;
            }
            for (x, &b) in v.iter_mut().zip(row) {
                if b != 0 {
                    *x = f.sub(*x, f.mul(c, f.element(b as u64).expect("element")));
                }
            }
        }
        let pivot = v.iter().position(|x| !x.is_zero())?;
        let inv = f.inv(v[pivot]).expect("nonzero pivot");
        Some((pivot, v.iter().map(|&x| f.mul(x, inv).index()).collect()))
    }

    /// Whether some `w` columns including column 0 are dependent.
    fn dependent_with(&mut self, w: usize) -> bool {
        let first = self.reduce(&self.cols[0]).expect("nonzero column");
        self.basis.push(first);
        let found = self.extend(1, w);
        self.basis.clear();
        found
    }

    fn extend(&mut self, start: usize, w: usize) -> bool {
        let depth = self.basis.len();
        let n = self.cols.len();
        if depth + 1 == w {
            return (start..n).any(|j| self.reduce(&self.cols[j]).is_none());
        }
        let Some(last) = n.checked_sub(w - depth) else { return false };
        for j in start..=last {
            match self.reduce(&self.cols[j]) {
                None => return true,
                Some(row) => {
                    self.basis.push(row);
                    let found = self.extend(j + 1, w);
                    self.basis.pop();
                    if found {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Minimum nonzero weight over all `q^k` multiples `m(x) g(x)`, `deg m < k`, walking an
/// `F_p`-odometer over the additive basis `e_j x^i g`.
fn enumerate_min_weight(field: &FieldSpec, g: &Poly, n: usize) -> u64 {
    let r = g.degree().expect("nonzero");
    let k = n - r;
    let p = field.p() as u32;
    let m = field.m();
    let mut rows: Vec<Vec<crate::galois::FieldElement>> = Vec::with_capacity(k * m as usize);
    for i in 0..k {
        for e in 0..m {
            let unit = field.element((p as u64).pow(e)).expect("basis element");
            let mut row = vec![field.zero(); n];
            for (d, &c) in g.coeffs().iter().enumerate() {
                row[i + d] = field.mul(unit, c);
            }
            rows.push(row);
        }
    }
    let mut word = vec![field.zero(); n];
    let mut digits = vec![0u32; rows.len()];
    let mut best = n as u64;
    loop {
        let mut idx = 0;
        loop {
            if idx == rows.len() {
                return best;
            }
            for (x, &y) in word.iter_mut().zip(&rows[idx]) {
                *x = field.add(*x, y);
            }
            digits[idx] += 1;
            if digits[idx] < p {
                break;
            }
            digits[idx] = 0;
            idx += 1;
        }
        let wt = word.iter().filter(|x| !x.is_zero()).count() as u64;
        if wt > 0 && wt < best {
            best = wt;
        }
    }
}

/// Result of the split-case closed form.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem14 {
    /// Some exponent is zero; only `d <= 2^r` is asserted.
    Bound(u64),
    Exact(u64),
}

/// Closed-form distance for `q = 2^a b + 1` with `a >= r`:
/// `min_h (tau_h + 2) p^{k_h} d(C_{t_h})` over `0 < j_h < p^s`, with `t_h` the end of the
/// interval containing `j_h`.
pub fn theorem14_eval(c: &RepeatedRootCode) -> Result<Theorem14> {
    let fam = c.family();
    let dec = fam.structured().decomposition;
    if dec.sign < 0 || dec.a < fam.r() {
        return Err(Error::NotSplitCase);
    }
    if c.is_zero_code() {
        return Err(Error::ZeroCode);
    }
    if c.exps().iter().any(|&j| j == 0) {
        return Ok(Theorem14::Bound(fam.base_len()));
    }
    let (p, s, ps) = (fam.field().p(), fam.s(), fam.ps());
    let mut best = u64::MAX;
    for &j in c.exps() {
        if j == 0 || j >= ps {
            continue;
        }
        let (k, tau) = t_interval(j, p, s)?;
        let end = interval_end(j, p, s)?;
        let mask: Vec<bool> = c.exps().iter().map(|&x| x > end).collect();
        if let Some(d) = layer_distance(c, &mask)? {
            best = best.min((tau + 2) * p.pow(k) * d);
        }
    }
    if best == u64::MAX {
        return Err(Error::ZeroCode);
    }
    Ok(Theorem14::Exact(best))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MdsClass {
    NotMds,
    /// `d = 1`, the full space.
    MdsD1,
    /// `d = 2`.
    MdsD2,
    /// `d = n`.
    MdsDn,
}

impl std::fmt::Display for MdsClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MdsClass::NotMds => "NotMDS",
            MdsClass::MdsD1 => "MDS_d1",
            MdsClass::MdsD2 => "MDS_d2",
            MdsClass::MdsDn => "MDS_dn",
        })
    }
}

/// Representatives on which a single unit exponent yields an MDS code: every representative when
/// `q = 2^a b + 1`, `a >= r`; the linear ones `{0, 2^{r-1}} ∪ 2^{r-i} D_i (i <= a)` when `a < r`;
/// `{0, 2^{r-1}}` when `q = 2^a b - 1`.
pub fn mds_allowed(c: &RepeatedRootCode) -> Vec<bool> {
    use crate::cosets::FamilyKind;
    let fam = c.family();
    let st = fam.structured();
    let dec = st.decomposition;
    let half = fam.base_len() / 2;
    fam.reps()
        .iter()
        .map(|&rep| {
            let e = st.entry(rep).expect("structured entry");
            match e.kind {
                FamilyKind::Direct => fam.degrees()[fam.index_of(rep).expect("rep")] == 1,
                _ if rep == 0 || rep == half => true,
                FamilyKind::D => dec.a >= fam.r() || e.i <= dec.a,
                _ => false,
            }
        })
        .collect()
}

pub fn classify_mds(c: &RepeatedRootCode) -> MdsClass {
    let ps = c.family().ps();
    let allowed = mds_allowed(c);
    let exps = c.exps();
    if exps.iter().all(|&j| j == 0) {
        return MdsClass::MdsD1;
    }
    let single = |hit: u64, rest: u64| {
        let off: Vec<usize> = (0..exps.len()).filter(|&h| exps[h] != rest).collect();
        off.len() == 1 && exps[off[0]] == hit && allowed[off[0]]
    };
    if single(1, 0) {
        MdsClass::MdsD2
    } else if single(ps - 1, ps) {
        MdsClass::MdsDn
    } else {
        MdsClass::NotMds
    }
}

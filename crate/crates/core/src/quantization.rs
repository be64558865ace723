//! Standard elementary monomials `e_I`, their quantum analogues `E_I` and
//! the quantization map `theta : e_I -> E_I`.
//!
//! Decomposition into standard monomials uses the straightening identity
//! `e_b^p e_a^p = e_{b+1}^p e_{a-1}^p + e_b^p e_a^{p+1} - e_{a-1}^p e_{b+1}^{p+1}`
//! (upper index = number of variables), which pushes a repeated level `p`
//! outward and upward until every level carries at most one factor.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::algebra::{elementary_symmetric, variables, Family, Monomial, Polynomial, SymbolicMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantizationError {
    #[error("index {0:?} is not standard: entry r must lie in 0..=r")]
    NotStandard(Vec<u32>),
    #[error("expected a polynomial in the x variables only, found {0}")]
    NotXOnly(String),
}

/// `I = (i_1, i_2, ..)` with `0 <= i_r <= r`, trailing zeros removed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StandardIndex(Vec<u32>);

impl StandardIndex {
    pub fn new(mut entries: Vec<u32>) -> Result<Self, QuantizationError> {
        if entries.iter().enumerate().any(|(r, &i)| i as usize > r + 1) {
            return Err(QuantizationError::NotStandard(entries));
        }
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Ok(StandardIndex(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `i_p`, zero past the end.
    pub fn get(&self, p: usize) -> u32 {
        self.0.get(p - 1).copied().unwrap_or(0)
    }

    fn with(&self, p: usize, value: u32) -> StandardIndex {
        let mut v = self.0.clone();
        if v.len() < p {
            v.resize(p, 0);
        }
        v[p - 1] = value;
        while v.last() == Some(&0) {
            v.pop();
        }
        StandardIndex(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Every standard index of total degree `d` using levels `1..=max_level`.
    pub fn all_of_degree(d: u32, max_level: usize) -> Vec<StandardIndex> {
        fn go(level: usize, max: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<StandardIndex>) {
            if level > max {
                if rest == 0 {
                    out.push(StandardIndex::new(cur.clone()).unwrap());
                }
                return;
            }
            for i in 0..=rest.min(level as u32) {
                cur.push(i);
                go(level + 1, max, rest - i, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(1, max_level, d, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Debug for StandardIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Integer coefficients over standard monomials.
pub type StandardDecomposition = BTreeMap<StandardIndex, BigInt>;

type Cache<K, V> = Mutex<HashMap<K, Arc<OnceLock<V>>>>;

fn cache<K, V>() -> Cache<K, V> {
    Mutex::new(HashMap::new())
}

fn cached<K: std::hash::Hash + Eq + Clone, V: Clone>(
    map: &Mutex<HashMap<K, Arc<OnceLock<V>>>>,
    key: &K,
    compute: impl FnOnce() -> V,
) -> V {
    let cell = map.lock().expect("cache poisoned").entry(key.clone()).or_default().clone();
    cell.get_or_init(compute).clone()
}

/// `[E_0^p, .., E_p^p]`, the coefficients of `det(C_p - t)`.
pub fn quantum_elementary_row(p: usize) -> Vec<Polynomial> {
    static ROWS: OnceLock<Cache<usize, Vec<Polynomial>>> = OnceLock::new();
    cached(ROWS.get_or_init(cache), &p, || SymbolicMatrix::quantum_tridiagonal(p).char_poly_coeffs())
}

/// `E_i^p`, zero outside `0..=p`.
pub fn quantum_elementary(i: i64, p: i64) -> Polynomial {
    if i < 0 || p < 0 || i > p {
        return Polynomial::zero();
    }
    quantum_elementary_row(p as usize)[i as usize].clone()
}

/// `e_i^p = e_i(x_1, .., x_p)`, zero outside `0..=p`.
pub fn classical_elementary(i: i64, p: i64) -> Polynomial {
    if i < 0 || p < 0 || i > p {
        return Polynomial::zero();
    }
    elementary_symmetric(i as usize, &variables(Family::X, p as u32))
}

/// `e_I = prod_r e_{i_r}^r`.
pub fn e_monomial(index: &StandardIndex) -> Polynomial {
    index
        .0
        .iter()
        .enumerate()
        .map(|(r, &i)| classical_elementary(i as i64, r as i64 + 1))
        .product()
}

/// `E_I = prod_r E_{i_r}^r`.
pub fn quantum_e_monomial(index: &StandardIndex) -> Polynomial {
    static CACHE: OnceLock<Mutex<HashMap<StandardIndex, Arc<OnceLock<Polynomial>>>>> = OnceLock::new();
    cached(CACHE.get_or_init(cache), index, || {
        index
            .0
            .iter()
            .enumerate()
            .map(|(r, &i)| quantum_elementary(i as i64, r as i64 + 1))
            .product()
    })
}

fn add_into(acc: &mut FxHashMap<StandardIndex, i64>, from: &FxHashMap<StandardIndex, i64>, scale: i64) {
    for (k, v) in from {
        let slot = acc.entry(k.clone()).or_insert(0);
        *slot += v * scale;
    }
}

/// Standard form of `e_I * e_i^p`.
fn multiply_elementary(index: &StandardIndex, p: usize, i: u32) -> FxHashMap<StandardIndex, i64> {
    type Memo = Mutex<HashMap<(StandardIndex, usize, u32), Arc<OnceLock<FxHashMap<StandardIndex, i64>>>>>;
    static MEMO: OnceLock<Memo> = OnceLock::new();
    if i == 0 {
        return std::iter::once((index.clone(), 1)).collect();
    }
    if i as usize > p {
        return FxHashMap::default();
    }
    let j = index.get(p);
    if j == 0 {
        return std::iter::once((index.with(p, i), 1)).collect();
    }
    cached(MEMO.get_or_init(cache), &(index.clone(), p, i), || {
        let (a, b) = (i.min(j), i.max(j));
        let mut acc = FxHashMap::default();
        if (b + 1) as usize <= p {
            add_into(&mut acc, &multiply_elementary(&index.with(p, b + 1), p, a - 1), 1);
        }
        add_into(&mut acc, &multiply_elementary(&index.with(p, b), p + 1, a), 1);
        add_into(&mut acc, &multiply_elementary(&index.with(p, a - 1), p + 1, b + 1), -1);
        acc.retain(|_, v| *v != 0);
        acc
    })
}

/// Standard form of the monomial `x^gamma`, built from `x_r = e_1^r - e_1^{r-1}`.
fn decompose_monomial(exponents: &[u32]) -> FxHashMap<StandardIndex, i64> {
    type Memo = Mutex<HashMap<Vec<u32>, Arc<OnceLock<FxHashMap<StandardIndex, i64>>>>>;
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let mut exps = exponents.to_vec();
    while exps.last() == Some(&0) {
        exps.pop();
    }
    let Some(r) = exps.iter().rposition(|&e| e > 0) else {
        return std::iter::once((StandardIndex::default(), 1)).collect();
    };
    cached(MEMO.get_or_init(cache), &exps.clone(), || {
        let mut smaller = exps.clone();
        smaller[r] -= 1;
        let base = decompose_monomial(&smaller);
        let p = r + 1;
        let mut acc = FxHashMap::default();
        for (idx, c) in &base {
            add_into(&mut acc, &multiply_elementary(idx, p, 1), *c);
            if p > 1 {
                add_into(&mut acc, &multiply_elementary(idx, p - 1, 1), -*c);
            }
        }
        acc.retain(|_, v| *v != 0);
        acc
    })
}

/// The unique integer expansion of an `x`-polynomial over the `e_I`.
pub fn standard_decompose(f: &Polynomial) -> Result<StandardDecomposition, QuantizationError> {
    if f.uses_family(Family::A) || f.uses_family(Family::Q) {
        return Err(QuantizationError::NotXOnly(f.to_string()));
    }
    let mut acc: FxHashMap<StandardIndex, BigInt> = FxHashMap::default();
    for (m, c) in f.terms() {
        for (idx, k) in decompose_monomial(&m.x_exponents()) {
            *acc.entry(idx).or_default() += c * k;
        }
    }
    Ok(acc.into_iter().filter(|p| !p.1.is_zero()).collect())
}

/// `sum_I c_I e_I`.
pub fn reconstruct_standard(d: &StandardDecomposition) -> Polynomial {
    d.iter().map(|(i, c)| e_monomial(i).scale(c)).sum()
}

fn quantize_x_part(f: &Polynomial) -> Polynomial {
    let d = standard_decompose(f).expect("x-only stratum");
    d.iter().map(|(i, c)| quantum_e_monomial(i).scale(c)).sum()
}

/// The quantization map: on each `(a, q)`-monomial stratum, write the `x`
/// coefficient in standard monomials and replace `e_I` by `E_I`.
pub fn theta(f: &Polynomial) -> Polynomial {
    f.split_by_coefficient_monomial()
        .into_iter()
        .map(|(m, xpart)| quantize_x_part(&xpart).mul_monomial(&m))
        .sum()
}

fn q_degree(m: &Monomial) -> u32 {
    m.family_degree(Family::Q)
}

/// Inverse of [`theta`]: peels off the part of lowest `q`-degree, on which
/// `theta` acts as the identity modulo higher `q`-degree.
pub fn theta_inverse(g: &Polynomial) -> Polynomial {
    let mut rest = g.clone();
    let mut out = Polynomial::zero();
    while let Some(low) = rest.terms().map(|(m, _)| q_degree(m)).min() {
        let part = rest.filter_terms(|m| q_degree(m) == low);
        rest -= theta(&part);
        out += part;
    }
    out
}

/// Difference of the two sides of the classical straightening identity
/// `e_i^p e_j^p = e_{i-1}^p e_{j+1}^p + e_j^p e_i^{p+1} - e_{i-1}^p e_{j+1}^{p+1}`.
pub fn classical_relation_defect(i: i64, j: i64, p: i64) -> Polynomial {
    let e = classical_elementary;
    e(i, p) * e(j, p) - (e(i - 1, p) * e(j + 1, p) + e(j, p) * e(i, p + 1) - e(i - 1, p) * e(j + 1, p + 1))
}

/// Difference of the two sides of the quantum straightening identity
/// `E_i^p E_j^p = E_{i-1}^p E_{j+1}^p + E_j^p E_i^{p+1} - E_{i-1}^p E_{j+1}^{p+1}
///  + q_p (E_{j-1}^{p-1} E_{i-1}^p - E_{i-2}^{p-1} E_j^p)`.
pub fn quantum_relation_defect(i: i64, j: i64, p: i64) -> Polynomial {
    let e = quantum_elementary;
    let qp = if p >= 1 { Polynomial::q(p as u32) } else { Polynomial::zero() };
    let rhs = e(i - 1, p) * e(j + 1, p) + e(j, p) * e(i, p + 1) - e(i - 1, p) * e(j + 1, p + 1)
        + qp * (e(j - 1, p - 1) * e(i - 1, p) - e(i - 2, p - 1) * e(j, p));
    e(i, p) * e(j, p) - rhs
}

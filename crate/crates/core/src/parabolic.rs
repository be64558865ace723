//! Partial flag varieties: the matrices `D^P`, the polynomials `G_i^j`,
//! parabolic quantum double Schubert polynomials, parabolic quantization
//! and the parabolic Cauchy formula.
//!
//! A context `(n_1, .., n_k)` is always read as the infinite composition
//! `(n_1, .., n_k, 1, 1, ..)`; stability makes every computation
//! independent of how many trailing blocks are written out.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::algebra::{Family, Monomial, Polynomial, SymbolicMatrix, Variable};
use crate::schubert::{classical_at_minus_a, divided_difference, divided_difference_w};
use crate::weyl::{left_weak_ideal, ParabolicContext, Permutation, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParabolicError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("G_{i}^{j} is out of range for {ctx}")]
    OutOfRange { ctx: ParabolicContext, i: usize, j: usize },
    #[error("polynomial is not invariant under s_{0} acting on x")]
    NotInvariant(u32),
    #[error("{w} moves a position of the last block of {ctx}")]
    MovesLastBlock { ctx: ParabolicContext, w: Permutation },
    #[error("context has no block to remove")]
    EmptyContext,
    #[error("invalid partition tuple: {0}")]
    InvalidPartitionTuple(String),
}

/// The `n x n` matrix with `x_i` on the diagonal, `-1` above it, and
/// `-(-1)^{n_{j+1}} q_j` at `(N_{j+1}, N_{j-1} + 1)`.
pub fn build_d(ctx: &ParabolicContext) -> SymbolicMatrix {
    let n = ctx.n();
    let mut m = SymbolicMatrix::zero(n);
    for i in 1..=n {
        m.set(i, i, Polynomial::x(i as u32));
        if i < n {
            m.set(i, i + 1, Polynomial::constant(-1));
        }
    }
    for j in 1..ctx.k() {
        let sign = if ctx.block_size(j + 1).is_multiple_of(2) { -1 } else { 1 };
        let q = Polynomial::constant(sign) * Polynomial::q(j as u32);
        m.set(ctx.partial_sum(j + 1) as usize, ctx.partial_sum(j - 1) as usize + 1, q);
    }
    m
}

/// `D_j`, the leading `N_j x N_j` block of `D^P`.
pub fn build_d_block(ctx: &ParabolicContext, j: usize) -> SymbolicMatrix {
    build_d(ctx).leading_block(ctx.partial_sum(j) as usize)
}

fn composition_prefix(ctx: &ParabolicContext, j: usize) -> Vec<u32> {
    (1..=j).map(|t| ctx.block_size(t)).collect()
}

/// `[G_0^j, .., G_{N_j}^j]` for the (infinitely extended) context.
fn g_row(ctx: &ParabolicContext, j: usize) -> Vec<Polynomial> {
    type Rows = Mutex<HashMap<Vec<u32>, Arc<OnceLock<Vec<Polynomial>>>>>;
    static ROWS: OnceLock<Rows> = OnceLock::new();
    let prefix = composition_prefix(ctx, j);
    let cell = ROWS
        .get_or_init(Default::default)
        .lock()
        .expect("G cache poisoned")
        .entry(prefix.clone())
        .or_default()
        .clone();
    cell.get_or_init(|| {
        let sub = ParabolicContext::new(prefix).expect("prefix of a composition");
        build_d(&sub).char_poly_coeffs()
    })
    .clone()
}

/// `G_i^j`, defined by `det(D_j - t) = sum_i (-t)^{N_j - i} G_i^j`.
pub fn g_polynomial(ctx: &ParabolicContext, i: usize, j: usize) -> Result<Polynomial, ParabolicError> {
    if j == 0 || j > ctx.k() || i > ctx.partial_sum(j) as usize {
        return Err(ParabolicError::OutOfRange { ctx: ctx.clone(), i, j });
    }
    Ok(g_row(ctx, j)[i].clone())
}

/// `G_i^j` for any level `j >= 1` of the infinite composition; zero when
/// `i > N_j`.
fn g_stable(ctx: &ParabolicContext, i: u32, j: usize) -> Polynomial {
    if i > ctx.partial_sum(j) {
        return Polynomial::zero();
    }
    g_row(ctx, j)[i as usize].clone()
}

/// `prod_{j=1}^{k-1} prod_{i=n-N_{j+1}+1}^{n-N_j} det(D_j - a_i)`.
pub fn parabolic_top(ctx: &ParabolicContext) -> Polynomial {
    let n = ctx.n() as u32;
    let d = build_d(ctx);
    let mut out = Polynomial::one();
    for j in 1..ctx.k() {
        let block = d.leading_block(ctx.partial_sum(j) as usize);
        for i in n - ctx.partial_sum(j + 1) + 1..=n - ctx.partial_sum(j) {
            out = &out * &block.det_shifted(&Polynomial::a(i));
        }
    }
    out
}

/// The defining formula `(-1)^{l(u)} d_u top` with `u = w (w_0^P)^{-1}`,
/// evaluated without memoization or stability shortcuts.
pub fn parabolic_q_double_schubert_direct(
    ctx: &ParabolicContext,
    w: &Permutation,
) -> Result<Polynomial, ParabolicError> {
    if !ctx.contains_minimal(w) {
        return Err(WeylError::NotMinimal { w: w.clone(), ctx: ctx.clone() }.into());
    }
    let u = w.compose(&ctx.longest_minimal().inverse());
    let f = divided_difference_w(&u, &parabolic_top(ctx));
    Ok(if u.length() % 2 == 1 { -f } else { f })
}

/// The parabolic quantum double Schubert polynomial of `w` in `W^P`.
pub fn parabolic_q_double_schubert(ctx: &ParabolicContext, w: &Permutation) -> Result<Polynomial, ParabolicError> {
    if !ctx.contains_minimal(w) {
        return Err(WeylError::NotMinimal { w: w.clone(), ctx: ctx.clone() }.into());
    }
    Ok(parabolic_stable(ctx, w))
}

/// Same as [`parabolic_q_double_schubert`] for any `w` that is a minimal
/// coset representative of the infinite composition, possibly outside `S_n`.
pub fn parabolic_stable(ctx: &ParabolicContext, w: &Permutation) -> Polynomial {
    assert!(ctx.is_minimal(w), "{w} is not minimal for {ctx}");
    let mut c = ctx.clone();
    while c.n() < w.one_line().len() {
        c = c.extended(&[1]).expect("appending a block");
    }
    while c.k() >= 1 && w.one_line().len() <= c.partial_sum(c.k() - 1) as usize {
        c = c.without_last_block();
    }
    if c.k() <= 1 {
        debug_assert!(w.is_identity());
        return Polynomial::one();
    }
    type Cache = Mutex<HashMap<(Vec<u32>, Permutation), Arc<OnceLock<Polynomial>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cell = CACHE
        .get_or_init(Default::default)
        .lock()
        .expect("parabolic cache poisoned")
        .entry((c.composition().to_vec(), w.clone()))
        .or_default()
        .clone();
    cell.get_or_init(|| {
        if *w == c.longest_minimal() {
            return parabolic_top(&c);
        }
        let inv = w.inverse();
        let i = (1..c.n() as u32)
            .find(|&i| inv.apply(i) < inv.apply(i + 1) && c.is_minimal(&w.mul_simple_left(i)))
            .expect("W^P is a left weak order interval below w_0^P");
        -divided_difference(i, &parabolic_stable(&c, &w.mul_simple_left(i)))
    })
    .clone()
}

/// Drops the last block when `w` fixes all of its positions.
pub fn stability_trim(
    ctx: &ParabolicContext,
    w: &Permutation,
) -> Result<(ParabolicContext, Permutation), ParabolicError> {
    if ctx.k() == 0 {
        return Err(ParabolicError::EmptyContext);
    }
    if w.one_line().len() > ctx.partial_sum(ctx.k() - 1) as usize {
        return Err(ParabolicError::MovesLastBlock { ctx: ctx.clone(), w: w.clone() });
    }
    Ok((ctx.without_last_block(), w.clone()))
}

/// `sum_{v <= w} Schub_{v w^-1}(-a) qSchub^P_v(x)` over the left weak ideal.
pub fn parabolic_cauchy_rhs(ctx: &ParabolicContext, w: &Permutation) -> Result<Polynomial, ParabolicError> {
    if !ctx.contains_minimal(w) {
        return Err(WeylError::NotMinimal { w: w.clone(), ctx: ctx.clone() }.into());
    }
    let winv = w.inverse();
    Ok(left_weak_ideal(w)
        .iter()
        .map(|v| {
            let qp = parabolic_stable(ctx, v).set_zero(|x| x.family == Family::A);
            &classical_at_minus_a(&v.compose(&winv)) * &qp
        })
        .sum())
}

/// A tuple of partitions `(lambda^(1), lambda^(2), ..)`, trailing empty
/// partitions removed. Parts are stored in weakly decreasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PartitionTuple(Vec<Vec<u32>>);

impl PartitionTuple {
    pub fn new(mut parts: Vec<Vec<u32>>) -> Result<Self, ParabolicError> {
        for p in &mut parts {
            if p.contains(&0) {
                return Err(ParabolicError::InvalidPartitionTuple(format!("{parts:?}")));
            }
            p.sort_unstable_by(|a, b| b.cmp(a));
        }
        while parts.last().is_some_and(|p| p.is_empty()) {
            parts.pop();
        }
        Ok(PartitionTuple(parts))
    }

    pub fn partitions(&self) -> &[Vec<u32>] {
        &self.0
    }

    /// True if `lambda^(j)` fits in the `n_{j+1} x N_j` rectangle for all `j`.
    pub fn fits(&self, ctx: &ParabolicContext) -> bool {
        self.0.iter().enumerate().all(|(idx, p)| {
            let j = idx + 1;
            p.len() <= ctx.block_size(j + 1) as usize && p.iter().all(|&x| x <= ctx.partial_sum(j))
        })
    }

    fn from_levels(levels: &GMonomial) -> Self {
        PartitionTuple::new(levels.0.clone()).expect("levels hold positive parts")
    }

    /// `g = prod_j prod_parts e_part(x_1, .., x_{N_j})`.
    pub fn g_monomial(&self, ctx: &ParabolicContext) -> Polynomial {
        self.product(|i, j| {
            crate::algebra::elementary_symmetric(
                i as usize,
                &crate::algebra::variables(Family::X, ctx.partial_sum(j)),
            )
        })
    }

    /// `G = prod_j prod_parts G_part^j`.
    pub fn big_g_monomial(&self, ctx: &ParabolicContext) -> Polynomial {
        self.product(|i, j| g_stable(ctx, i, j))
    }

    fn product<F: Fn(u32, usize) -> Polynomial>(&self, factor: F) -> Polynomial {
        let mut out = Polynomial::one();
        for (idx, p) in self.0.iter().enumerate() {
            for &i in p {
                out = &out * &factor(i, idx + 1);
            }
        }
        out
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", parts.join(","))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PartitionTuple {
    type Err = ParabolicError;

    /// Parses `[[2,1],[],[3]]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParabolicError::InvalidPartitionTuple(s.to_string());
        let v: Vec<Vec<u32>> = serde_json::from_str(s).map_err(|_| bad())?;
        PartitionTuple::new(v)
    }
}

/// A product of `g_r^j = e_r(x_1, .., x_{N_j})` stored level by level;
/// each level is a sorted list of positive indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
struct GMonomial(Vec<Vec<u32>>);

impl GMonomial {
    fn factor(level: usize, r: u32) -> Self {
        let mut v = vec![Vec::new(); level];
        if r > 0 {
            v[level - 1].push(r);
        }
        GMonomial(v).normalized()
    }

    fn normalized(mut self) -> Self {
        for l in &mut self.0 {
            l.sort_unstable();
        }
        while self.0.last().is_some_and(|l| l.is_empty()) {
            self.0.pop();
        }
        self
    }

    fn mul(&self, other: &GMonomial) -> GMonomial {
        let len = self.0.len().max(other.0.len());
        let mut v = vec![Vec::new(); len];
        for (k, slot) in v.iter_mut().enumerate() {
            if let Some(l) = self.0.get(k) {
                slot.extend_from_slice(l);
            }
            if let Some(l) = other.0.get(k) {
                slot.extend_from_slice(l);
            }
        }
        GMonomial(v).normalized()
    }
}

type GPoly = FxHashMap<GMonomial, BigInt>;

fn gpoly_add(acc: &mut GPoly, m: GMonomial, c: BigInt) {
    let slot = acc.entry(m).or_default();
    *slot += c;
}

fn gpoly_clean(mut p: GPoly) -> GPoly {
    p.retain(|_, c| !c.is_zero());
    p
}

fn gpoly_mul(ctx: &ParabolicContext, a: &GPoly, b: &GPoly) -> GPoly {
    let mut acc = GPoly::default();
    for (ma, ca) in a {
        for (mb, cb) in b {
            for (m, c) in straighten(ctx, &ma.mul(mb)) {
                gpoly_add(&mut acc, m, c * ca * cb);
            }
        }
    }
    gpoly_clean(acc)
}

fn permutations(m: usize) -> Vec<(Vec<usize>, i64)> {
    Permutation::all(m)
        .into_iter()
        .map(|p| {
            let v: Vec<usize> = p.padded(m).iter().map(|&x| x as usize - 1).collect();
            let sign = if p.length() % 2 == 0 { 1 } else { -1 };
            (v, sign)
        })
        .collect()
}

/// Rewrites a product of `g`s into the basis where level `j` carries at
/// most `n_{j+1}` factors.
///
/// For `m + 1 > n_{j+1}` level-`j` factors `g_{r_0} .. g_{r_m}` (sorted,
/// `s_a = r_a + a`), the determinant `det[g_{s_a - b}]` with its first
/// column lifted to level `j + 1` equals the all-level-`j` determinant,
/// because `e_t` of the `n_{j+1}` new variables vanishes for `t > m`. The
/// diagonal term of the latter is the product being rewritten.
fn straighten(ctx: &ParabolicContext, mono: &GMonomial) -> GPoly {
    type Memo = Mutex<HashMap<(Vec<u32>, GMonomial), Arc<OnceLock<GPoly>>>>;
    static MEMO: OnceLock<Memo> = OnceLock::new();

    for (idx, level) in mono.0.iter().enumerate() {
        if level.iter().any(|&r| r > ctx.partial_sum(idx + 1)) {
            return GPoly::default();
        }
    }
    let Some(idx) = mono
        .0
        .iter()
        .enumerate()
        .position(|(idx, level)| level.len() > ctx.block_size(idx + 2) as usize)
    else {
        return std::iter::once((mono.clone(), BigInt::one())).collect();
    };
    let key = (ctx.composition().to_vec(), mono.clone());
    let cell = MEMO.get_or_init(Default::default).lock().expect("straightening memo poisoned").entry(key).or_default().clone();
    cell.get_or_init(|| {
        let j = idx + 1;
        let m = ctx.block_size(j + 1) as usize;
        let level = &mono.0[idx];
        let chosen: Vec<u32> = level[..=m].to_vec();
        let mut rest = mono.clone();
        rest.0[idx] = level[m + 1..].to_vec();
        let s: Vec<i64> = chosen.iter().enumerate().map(|(a, &r)| r as i64 + a as i64).collect();

        let mut acc = GPoly::default();
        let mut emit = |factors: Vec<(usize, i64)>, sign: i64| {
            let mut g = rest.clone();
            for (lvl, r) in factors {
                if r < 0 {
                    return;
                }
                g = g.mul(&GMonomial::factor(lvl, r as u32));
            }
            for (mm, c) in straighten(ctx, &g) {
                gpoly_add(&mut acc, mm, c * sign);
            }
        };
        // expansion of the lifted determinant along its first column
        let minors = permutations(m);
        for a in 0..=m {
            let rows: Vec<usize> = (0..=m).filter(|&c| c != a).collect();
            let row_sign = if a % 2 == 0 { 1 } else { -1 };
            for (tau, tau_sign) in &minors {
                let mut factors = vec![(j + 1, s[a])];
                factors.extend(rows.iter().enumerate().map(|(pos, &c)| (j, s[c] - (tau[pos] as i64 + 1))));
                emit(factors, row_sign * tau_sign);
            }
        }
        // minus the off-diagonal terms of the level-j determinant
        for (sigma, sign) in permutations(m + 1) {
            if sigma.iter().enumerate().all(|(a, &b)| a == b) {
                continue;
            }
            let factors = (0..=m).map(|a| (j, s[a] - sigma[a] as i64)).collect();
            emit(factors, -sign);
        }
        gpoly_clean(acc)
    })
    .clone()
}

fn g_factor_poly(level: usize, r: u32) -> GPoly {
    std::iter::once((GMonomial::factor(level, r), BigInt::one())).collect()
}

/// `e_s` of the variables in block `j`, written in `g`s:
/// `e_s(B_j) = sum_u (-1)^u h_u(x_1..x_{N_{j-1}}) e_{s-u}(x_1..x_{N_j})`.
fn block_elementary(ctx: &ParabolicContext, j: usize, s: u32) -> GPoly {
    // h_u of the previous level via h_u = sum_k (-1)^{k-1} e_k h_{u-k}
    let prev = if j >= 2 { ctx.partial_sum(j - 1) } else { 0 };
    let mut h: Vec<GPoly> = vec![g_factor_poly(1, 0)];
    for u in 1..=s {
        let mut acc = GPoly::default();
        for k in 1..=u.min(prev) {
            let term = gpoly_mul(ctx, &g_factor_poly(j - 1, k), &h[(u - k) as usize]);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            for (m, c) in term {
                gpoly_add(&mut acc, m, c * sign);
            }
        }
        h.push(gpoly_clean(acc));
    }
    let mut acc = GPoly::default();
    for u in 0..=s {
        let sign = if u % 2 == 0 { 1 } else { -1 };
        for (m, c) in gpoly_mul(ctx, &h[u as usize], &g_factor_poly(j, s - u)) {
            gpoly_add(&mut acc, m, c * sign);
        }
    }
    gpoly_clean(acc)
}

/// Checks invariance under the Levi subgroup acting on `x`.
pub fn check_invariant(ctx: &ParabolicContext, f: &Polynomial) -> Result<(), ParabolicError> {
    for i in ctx.levi_generators() {
        if f.swap_variables(Variable::x(i), Variable::x(i + 1)) != *f {
            return Err(ParabolicError::NotInvariant(i));
        }
    }
    Ok(())
}

fn lex_leading(f: &Polynomial) -> Option<(Vec<u32>, BigInt)> {
    f.terms()
        .map(|(m, c)| (m.x_exponents(), c))
        .max_by(|a, b| {
            let len = a.0.len().max(b.0.len());
            (0..len)
                .map(|i| a.0.get(i).copied().unwrap_or(0).cmp(&b.0.get(i).copied().unwrap_or(0)))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .map(|(e, c)| (e, c.clone()))
}

/// Expands an invariant `x`-polynomial over the basis `g_lambda`.
fn g_expand_x(ctx: &ParabolicContext, f: &Polynomial) -> Result<GPoly, ParabolicError> {
    check_invariant(ctx, f)?;
    let mut rest = f.clone();
    let mut out = GPoly::default();
    while let Some((gamma, c)) = lex_leading(&rest) {
        // the leading exponent is weakly decreasing on each block; peel off
        // prod_s e_s(B_j)^{gamma_{lo+s-1} - gamma_{lo+s}}
        let mut poly = Polynomial::one();
        let mut g = g_factor_poly(1, 0);
        let mut j = 1;
        while (ctx.partial_sum(j - 1) as usize) < gamma.len() {
            let lo = ctx.partial_sum(j - 1) as usize;
            let size = ctx.block_size(j) as usize;
            let at = |t: usize| gamma.get(t).copied().unwrap_or(0);
            let block_vars: Vec<Variable> = (lo + 1..=lo + size).map(|t| Variable::x(t as u32)).collect();
            for sidx in 1..=size {
                let e = at(lo + sidx - 1) - if sidx < size { at(lo + sidx) } else { 0 };
                if e == 0 {
                    continue;
                }
                let es = crate::algebra::elementary_symmetric(sidx, &block_vars);
                poly = &poly * &es.pow(e);
                let bg = block_elementary(ctx, j, sidx as u32);
                for _ in 0..e {
                    g = gpoly_mul(ctx, &g, &bg);
                }
            }
            j += 1;
        }
        rest -= poly.scale(&c);
        for (m, k) in g {
            gpoly_add(&mut out, m, k * &c);
        }
    }
    Ok(gpoly_clean(out))
}

/// The expansion of an invariant `x`-polynomial over `{g_lambda}`.
pub fn g_decompose(ctx: &ParabolicContext, f: &Polynomial) -> Result<BTreeMap<PartitionTuple, BigInt>, ParabolicError> {
    if f.uses_family(Family::A) || f.uses_family(Family::Q) {
        return Err(ParabolicError::InvalidPartitionTuple("input must use x variables only".into()));
    }
    Ok(g_expand_x(ctx, f)?.into_iter().map(|(m, c)| (PartitionTuple::from_levels(&m), c)).collect())
}

/// Parabolic quantization: on each `(a, q)`-monomial stratum, expand the
/// invariant `x`-part over `g_lambda` and replace each by `G_lambda`.
pub fn theta_p(ctx: &ParabolicContext, f: &Polynomial) -> Result<Polynomial, ParabolicError> {
    let mut out = Polynomial::zero();
    for (m, xpart) in f.split_by_coefficient_monomial() {
        let expansion = g_expand_x(ctx, &xpart)?;
        let quantized: Polynomial = expansion
            .iter()
            .map(|(g, c)| PartitionTuple::from_levels(g).big_g_monomial(ctx).scale(c))
            .sum();
        out += quantized.mul_monomial(&m);
    }
    Ok(out)
}

/// `d_{n-1} .. d_2 d_1 a^beta`.
pub fn descending_chain_on_monomial(beta: &[u32]) -> Polynomial {
    let n = beta.len() as u32;
    let m = Monomial::from_pairs(beta.iter().enumerate().map(|(i, &e)| (Variable::a(i as u32 + 1), e)));
    let word: Vec<u32> = (1..n).rev().collect();
    crate::schubert::divided_difference_word(&word, &Polynomial::monomial(m))
}

/// `G_i^j` at any level, with `G^0 = 1` and zero for negative `i`.
fn g_level(ctx: &ParabolicContext, i: i64, j: usize) -> Polynomial {
    match (i, j) {
        (i, _) if i < 0 => Polynomial::zero(),
        (0, 0) => Polynomial::one(),
        (_, 0) => Polynomial::zero(),
        (i, j) => g_stable(ctx, i as u32, j),
    }
}

/// Difference of the two sides of the level-`p` straightening relation
/// `G^p_i G^{p+1}_{j+1} + G^p_{i+1} G^p_j + q_p G^{p-1}_{i+1-m} G^p_j
///  = G^p_j G^{p+1}_{i+1} + G^p_{j+1} G^p_i + q_p G^{p-1}_{j+1-m} G^p_i`
/// with `m = n_p + n_{p+1}`. It holds whenever `n_{p+1} = 1`, in particular
/// for every `p >= k`.
pub fn g_relation_defect(ctx: &ParabolicContext, i: i64, j: i64, p: usize) -> Polynomial {
    let g = |i: i64, j: usize| g_level(ctx, i, j);
    let m = (ctx.block_size(p) + ctx.block_size(p + 1)) as i64;
    let qp = Polynomial::q(p as u32);
    let lhs = g(i, p) * g(j + 1, p + 1) + g(i + 1, p) * g(j, p) + &qp * &(g(i + 1 - m, p - 1) * g(j, p));
    let rhs = g(j, p) * g(i + 1, p + 1) + g(j + 1, p) * g(i, p) + &qp * &(g(j + 1 - m, p - 1) * g(i, p));
    lhs - rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_text;
    use crate::schubert::{schubert_polynomial, SchubertFamily};

    fn ctx(s: &str) -> ParabolicContext {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn poly(s: &str) -> Polynomial {
        parse_text(s).unwrap()
    }

    #[test]
    fn all_ones_gives_tridiagonal() {
        for n in 1..=5 {
            assert_eq!(build_d(&ParabolicContext::full_flag(n)), SymbolicMatrix::quantum_tridiagonal(n));
        }
    }

    #[test]
    fn d_blocks_for_2_1_3() {
        let c = ctx("2,1,3");
        let t = Polynomial::a(7);
        assert_eq!(build_d_block(&c, 1).det_shifted(&t), poly("(x1 - a7)*(x2 - a7)"));
        assert_eq!(build_d_block(&c, 2).det_shifted(&t), poly("(x1 - a7)*(x2 - a7)*(x3 - a7) + q1"));
        assert_eq!(g_polynomial(&c, 0, 2).unwrap(), Polynomial::one());
        assert_eq!(g_polynomial(&c, 3, 2).unwrap(), poly("x1*x2*x3 + q1"));
        assert!(g_polynomial(&c, 4, 2).is_err());
        assert!(g_polynomial(&c, 0, 4).is_err());
    }

    #[test]
    fn g_at_q_zero_is_elementary() {
        let c = ctx("2,1,3");
        for j in 1..=3 {
            let nj = c.partial_sum(j);
            for i in 0..=nj as usize {
                let g = g_polynomial(&c, i, j).unwrap().set_zero(|v| v.family == Family::Q);
                let e = crate::algebra::elementary_symmetric(i, &crate::algebra::variables(Family::X, nj));
                assert_eq!(g, e);
            }
        }
    }

    #[test]
    fn longest_minimal_example() {
        let c = ctx("2,1,3");
        let expected = poly("(x1 - a4)*(x2 - a4)")
            * (1..=3)
                .map(|i| poly(&format!("(x1 - a{i})*(x2 - a{i})*(x3 - a{i}) + q1")))
                .product::<Polynomial>();
        let w = p("[5,6,4,1,2,3]");
        assert_eq!(parabolic_q_double_schubert(&c, &w).unwrap(), expected);
        assert_eq!(parabolic_q_double_schubert_direct(&c, &w).unwrap(), expected);
    }

    #[test]
    fn identity_and_rejections() {
        let c = ctx("2,1");
        assert_eq!(parabolic_q_double_schubert(&c, &Permutation::identity()).unwrap(), Polynomial::one());
        assert_eq!(parabolic_q_double_schubert_direct(&c, &Permutation::identity()).unwrap(), Polynomial::one());
        assert!(parabolic_q_double_schubert(&c, &p("[2,1]")).is_err());
        assert!(parabolic_q_double_schubert(&c, &p("[1,2,4,3]")).is_err());
    }

    #[test]
    fn all_ones_reproduces_full_flag() {
        let c = ParabolicContext::full_flag(4);
        for w in Permutation::all(4) {
            assert_eq!(
                parabolic_q_double_schubert(&c, &w).unwrap(),
                schubert_polynomial(&w, SchubertFamily::QuantumDouble),
                "{w}"
            );
        }
    }

    #[test]
    fn memoized_matches_direct() {
        for n in 1..=4 {
            for c in ParabolicContext::all_compositions(n) {
                for w in c.minimal_elements() {
                    assert_eq!(
                        parabolic_q_double_schubert(&c, &w).unwrap(),
                        parabolic_q_double_schubert_direct(&c, &w).unwrap(),
                        "{c} {w}"
                    );
                }
            }
        }
    }

    #[test]
    fn trimming() {
        let c = ctx("2,1,3");
        let w = p("[1,3,2]");
        let (c2, w2) = stability_trim(&c, &w).unwrap();
        assert_eq!(c2, ctx("2,1"));
        assert_eq!(
            parabolic_q_double_schubert_direct(&c, &w).unwrap(),
            parabolic_q_double_schubert_direct(&c2, &w2).unwrap()
        );
        let single = ctx("3");
        let (empty, id) = stability_trim(&single, &Permutation::identity()).unwrap();
        assert_eq!(empty.k(), 0);
        assert_eq!(parabolic_stable(&empty, &id), Polynomial::one());
        assert!(stability_trim(&c, &p("[1,2,3,5,4]")).is_err());
        let extended = c.extended(&[2]).unwrap();
        assert_eq!(stability_trim(&extended, &w).unwrap(), (c, w));
    }

    #[test]
    fn cauchy_examples() {
        let c = ctx("2,2");
        assert_eq!(parabolic_cauchy_rhs(&c, &Permutation::identity()).unwrap(), Polynomial::one());
        let s2 = Permutation::simple(2);
        let qp = parabolic_q_double_schubert(&c, &s2).unwrap().set_zero(|v| v.family == Family::A);
        let expected = qp + classical_at_minus_a(&s2);
        assert_eq!(parabolic_cauchy_rhs(&c, &s2).unwrap(), expected);
        assert_eq!(parabolic_cauchy_rhs(&c, &s2).unwrap(), parabolic_q_double_schubert(&c, &s2).unwrap());
    }

    #[test]
    fn partition_tuple_text() {
        let t: PartitionTuple = "[[2,1],[],[3]]".parse().unwrap();
        assert_eq!(t.to_string(), "[[2,1],[],[3]]");
        assert_eq!("[[1,2],[]]".parse::<PartitionTuple>().unwrap().to_string(), "[[2,1]]");
        assert!("[[0]]".parse::<PartitionTuple>().is_err());
        assert!("[1]".parse::<PartitionTuple>().is_err());
    }

    #[test]
    fn g_basis_elements_decompose_to_themselves() {
        let c = ctx("2,1");
        for t in ["[[1]]", "[[2],[1]]", "[[],[3]]", "[[2],[2],[1]]", "[[1],[3],[4]]"] {
            let t: PartitionTuple = t.parse().unwrap();
            assert!(t.fits(&c));
            let d = g_decompose(&c, &t.g_monomial(&c)).unwrap();
            assert_eq!(d, [(t.clone(), BigInt::one())].into_iter().collect(), "{t}");
            assert_eq!(theta_p(&c, &t.g_monomial(&c)).unwrap(), t.big_g_monomial(&c));
        }
    }

    #[test]
    fn decomposition_reconstructs() {
        let c = ctx("2,2");
        let f = poly("(x1 + x2)^3 * x3 * x4 - 2*(x1*x2)^2 + (x3 + x4)^2");
        let d = g_decompose(&c, &f).unwrap();
        for t in d.keys() {
            assert!(t.fits(&c), "{t}");
        }
        let back: Polynomial = d.iter().map(|(t, k)| t.g_monomial(&c).scale(k)).sum();
        assert_eq!(back, f);
        assert!(matches!(g_decompose(&c, &poly("x1")), Err(ParabolicError::NotInvariant(1))));
    }

    #[test]
    fn theta_p_on_schubert_polynomials() {
        let c = ctx("2,2");
        for w in c.minimal_elements() {
            let classical = schubert_polynomial(&w, SchubertFamily::Classical);
            let expected = parabolic_q_double_schubert(&c, &w).unwrap().set_zero(|v| v.family == Family::A);
            assert_eq!(theta_p(&c, &classical).unwrap(), expected, "{w}");
        }
    }

    #[test]
    fn descending_chain_small() {
        assert_eq!(descending_chain_on_monomial(&[1, 0]), Polynomial::one());
        assert_eq!(descending_chain_on_monomial(&[0, 1]), poly("-1"));
        assert_eq!(descending_chain_on_monomial(&[2, 1, 0]), poly("a1"));
    }

    #[test]
    fn g_relation_holds_past_the_last_block() {
        for n in 1..=4 {
            for ctx in ParabolicContext::all_compositions(n) {
                for p in ctx.k()..=ctx.k() + 2 {
                    for i in 0..=6 {
                        for j in 0..=6 {
                            assert!(g_relation_defect(&ctx, i, j, p).is_zero(), "{ctx} p={p} i={i} j={j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn g_relation_needs_the_shifted_index() {
        // with q_p G^{p-1}_{i-m} in place of G^{p-1}_{i+1-m} no choice of signs works
        let ctx: ParabolicContext = "2,2".parse().unwrap();
        let p = 2;
        let g = |i: i64, j: usize| g_level(&ctx, i, j);
        let qp = Polynomial::q(p as u32);
        let m = 3;
        let found = [(1, 1), (1, -1), (-1, 1), (-1, -1)].into_iter().any(|(s1, s2): (i64, i64)| {
            (0..=5).all(|i| {
                (0..=5).all(|j| {
                    let lhs = g(i, p) * g(j + 1, p + 1)
                        + g(i + 1, p) * g(j, p)
                        + (&qp * &(g(i - m, p - 1) * g(j, p))).scale(&s1.into());
                    let rhs = g(j, p) * g(i + 1, p + 1)
                        + g(j + 1, p) * g(i, p)
                        + (&qp * &(g(j - m, p - 1) * g(i, p))).scale(&s2.into());
                    lhs == rhs
                })
            })
        });
        assert!(!found);
    }
}

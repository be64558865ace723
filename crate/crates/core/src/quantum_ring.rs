//! Chevalley-Monk rules for every flavor of Schubert polynomial, the root
//! bijection behind the equivariant quantum rule, and equivariant quantum
//! structure constants obtained by expanding products in the (parabolic)
//! quantum double basis and truncating.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{format_text, fundamental_weight, parse_text, Family, ParseError, Polynomial};
use crate::parabolic::{parabolic_stable, theta_p};
use crate::quantization::{quantum_elementary, standard_decompose, StandardIndex};
use crate::schubert::{classical_at_minus_a, expand_with, schubert_polynomial, SchubertError, SchubertFamily};
use crate::weyl::{left_weak_ideal, ParabolicContext, Permutation, Root, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Expansion(#[from] SchubertError),
    #[error("{i} is not a node of {ctx}")]
    NotANode { i: u32, ctx: ParabolicContext },
    #[error("the parabolic flavor needs a composition")]
    MissingContext,
    #[error("{w} is outside S_{n}")]
    OutOfRange { w: Permutation, n: usize },
    #[error("invalid structure table: {0}")]
    InvalidTable(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Classical,
    Quantum,
    Double,
    QuantumDouble,
    Parabolic,
}

impl Flavor {
    pub const FULL_FLAG: [Flavor; 4] = [Flavor::Classical, Flavor::Quantum, Flavor::Double, Flavor::QuantumDouble];

    fn has_weight(self) -> bool {
        matches!(self, Flavor::Double | Flavor::QuantumDouble | Flavor::Parabolic)
    }

    fn has_quantum(self) -> bool {
        matches!(self, Flavor::Quantum | Flavor::QuantumDouble | Flavor::Parabolic)
    }

    fn family(self) -> Option<SchubertFamily> {
        match self {
            Flavor::Classical => Some(SchubertFamily::Classical),
            Flavor::Quantum => Some(SchubertFamily::Quantum),
            Flavor::Double => Some(SchubertFamily::Double),
            Flavor::QuantumDouble => Some(SchubertFamily::QuantumDouble),
            Flavor::Parabolic => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Parabolic => "parabolic",
            f => f.family().unwrap().name(),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("parabolic") {
            return Ok(Flavor::Parabolic);
        }
        Ok(match s.parse::<SchubertFamily>()? {
            SchubertFamily::Classical => Flavor::Classical,
            SchubertFamily::Quantum => Flavor::Quantum,
            SchubertFamily::Double => Flavor::Double,
            SchubertFamily::QuantumDouble => Flavor::QuantumDouble,
        })
    }
}

/// The roots entering the Chevalley-Monk rule for `s_i * w`: `a` indexes
/// Bruhat covers, `b` the quantum terms. Only roots `alpha_{rs}` with
/// `r <= i < s` are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyRootSets {
    pub a: BTreeSet<Root>,
    pub b: BTreeSet<Root>,
    pub dynkin_node: u32,
}

/// Search windows `s <= bound` for the two root sets.
#[derive(Clone, Copy, Debug)]
pub struct RootWindow {
    pub a: u32,
    pub b: u32,
}

fn default_window(w: &Permutation, i: u32, ctx: Option<&ParabolicContext>) -> RootWindow {
    let m = w.one_line().len() as u32;
    match ctx {
        None => RootWindow { a: m.max(i) + 1, b: m.max(1) },
        Some(c) => {
            let base = m.max(i).max(c.n() as u32);
            // a quantum root needs 2(s - r) <= l(w) + 1 once s leaves the blocks
            RootWindow { a: base + 1, b: base + w.length() as u32 + 1 }
        }
    }
}

/// True if `i` is a node `N_j` of the infinite composition.
fn is_stable_node(ctx: &ParabolicContext, i: u32) -> bool {
    i >= ctx.n() as u32 || ctx.is_node(i)
}

fn check_parabolic(ctx: &ParabolicContext, w: &Permutation, i: u32) -> Result<(), RingError> {
    if !ctx.is_minimal(w) {
        return Err(WeylError::NotMinimal { w: w.clone(), ctx: ctx.clone() }.into());
    }
    if !is_stable_node(ctx, i) {
        return Err(RingError::NotANode { i, ctx: ctx.clone() });
    }
    Ok(())
}

/// Root sets enumerated within an explicit window; used to test the
/// default bounds.
pub fn chevalley_root_sets_in_window(
    w: &Permutation,
    i: u32,
    ctx: Option<&ParabolicContext>,
    window: RootWindow,
) -> Result<ChevalleyRootSets, RingError> {
    if let Some(c) = ctx {
        check_parabolic(c, w, i)?;
    }
    let len = w.length() as i64;
    let mut a = BTreeSet::new();
    let mut b = BTreeSet::new();
    for r in 1..=i {
        for s in i + 1..=window.a.max(window.b) {
            let alpha = Root::new(r, s);
            let ws = w.reflect(alpha);
            match ctx {
                None => {
                    if s <= window.a && alpha.is_cover_of(w) {
                        a.insert(alpha);
                    }
                    if s <= window.b && ws.length() as i64 == len + 1 - alpha.pair_two_rho() {
                        b.insert(alpha);
                    }
                }
                Some(c) => {
                    if c.root_in_levi(alpha) {
                        continue;
                    }
                    if s <= window.a && alpha.is_cover_of(w) && c.is_minimal(&ws) {
                        a.insert(alpha);
                    }
                    if s <= window.b
                        && c.project(&ws).length() as i64 == len + 1 - c.pair_two_rho_minus_rho_p(alpha)
                    {
                        b.insert(alpha);
                    }
                }
            }
        }
    }
    Ok(ChevalleyRootSets { a, b, dynkin_node: i })
}

/// The root sets `A_w`, `B_w` (or `A_{P,w}`, `B_{P,w}` with a context).
pub fn chevalley_root_sets(
    w: &Permutation,
    i: u32,
    ctx: Option<&ParabolicContext>,
) -> Result<ChevalleyRootSets, RingError> {
    chevalley_root_sets_in_window(w, i, ctx, default_window(w, i, ctx))
}

/// `-omega_i(a) + a_{w(1)} + .. + a_{w(i)}`.
pub fn weight_coefficient(w: &Permutation, i: u32) -> Polynomial {
    let moved: Polynomial = (1..=i).map(|t| Polynomial::a(w.apply(t))).sum();
    moved - fundamental_weight(Family::A, i)
}

fn member(flavor: Flavor, ctx: Option<&ParabolicContext>, w: &Permutation) -> Polynomial {
    match flavor.family() {
        Some(f) => schubert_polynomial(w, f),
        None => parabolic_stable(ctx.expect("parabolic flavor has a context"), w),
    }
}

fn context_for(flavor: Flavor, ctx: Option<&ParabolicContext>) -> Result<Option<&ParabolicContext>, RingError> {
    match flavor {
        Flavor::Parabolic => ctx.map(Some).ok_or(RingError::MissingContext),
        _ => Ok(None),
    }
}

/// Right-hand side of the Chevalley-Monk rule for `P_{s_i} * P_w`.
pub fn chevalley_rhs(
    i: u32,
    w: &Permutation,
    flavor: Flavor,
    ctx: Option<&ParabolicContext>,
) -> Result<Polynomial, RingError> {
    let pctx = context_for(flavor, ctx)?;
    let sets = chevalley_root_sets(w, i, pctx)?;
    let mut out = Polynomial::zero();
    if flavor.has_weight() {
        out += &weight_coefficient(w, i) * &member(flavor, pctx, w);
    }
    for &alpha in &sets.a {
        out += member(flavor, pctx, &w.reflect(alpha)).scale(&alpha.pair_omega(i).into());
    }
    if flavor.has_quantum() {
        for &alpha in &sets.b {
            let pair = alpha.pair_omega(i).into();
            let term = match pctx {
                None => &alpha.q_monomial() * &member(flavor, None, &w.reflect(alpha)),
                Some(c) => &c.eta_p(alpha) * &member(flavor, pctx, &c.project(&w.reflect(alpha))),
            };
            out += term.scale(&pair);
        }
    }
    Ok(out)
}

/// Outcome of [`verify_chevalley`]: `difference` is `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyCheck {
    pub difference: Polynomial,
}

impl ChevalleyCheck {
    pub fn holds(&self) -> bool {
        self.difference.is_zero()
    }
}

/// Compares `P_{s_i} P_w` with [`chevalley_rhs`].
pub fn verify_chevalley(
    i: u32,
    w: &Permutation,
    flavor: Flavor,
    ctx: Option<&ParabolicContext>,
) -> Result<ChevalleyCheck, RingError> {
    let rhs = chevalley_rhs(i, w, flavor, ctx)?;
    let pctx = context_for(flavor, ctx)?;
    let lhs = &member(flavor, pctx, &Permutation::simple(i)) * &member(flavor, pctx, w);
    Ok(ChevalleyCheck { difference: lhs - rhs })
}

/// Summary of a bijection check at one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub node: u32,
    pub domain_size: usize,
    pub codomain_size: usize,
    pub ok: bool,
}

fn b_set(v: &Permutation, i: u32, ctx: Option<&ParabolicContext>) -> BTreeSet<Root> {
    chevalley_root_sets(v, i, ctx).expect("validated input").b
}

/// Checks at node `i` that `(v, alpha) -> (pi(v s_alpha), alpha)` maps
/// `{(v, alpha) : v <= w, alpha in B_v}` bijectively onto
/// `{(u, alpha) : alpha in B_w, u <= pi(w s_alpha)}` and preserves
/// `v w^-1 = pi(v s_alpha) pi(w s_alpha)^-1`.
pub fn bijection_check_at(w: &Permutation, i: u32, ctx: Option<&ParabolicContext>) -> Result<BijectionReport, RingError> {
    if let Some(c) = ctx {
        check_parabolic(c, w, i)?;
    }
    let project = |x: &Permutation| match ctx {
        Some(c) => c.project(x),
        None => x.clone(),
    };
    let mut domain = BTreeSet::new();
    for v in left_weak_ideal(w) {
        for alpha in b_set(&v, i, ctx) {
            domain.insert((v.clone(), alpha));
        }
    }
    let mut codomain = BTreeSet::new();
    for alpha in b_set(w, i, ctx) {
        for u in left_weak_ideal(&project(&w.reflect(alpha))) {
            codomain.insert((u, alpha));
        }
    }
    let winv = w.inverse();
    let mut image = BTreeSet::new();
    let mut ok = true;
    for (v, alpha) in &domain {
        let u = project(&v.reflect(*alpha));
        let index_kept = v.compose(&winv) == u.compose(&project(&w.reflect(*alpha)).inverse());
        ok &= index_kept && codomain.contains(&(u.clone(), *alpha));
        image.insert((u, *alpha));
    }
    ok &= image.len() == domain.len() && image == codomain;
    Ok(BijectionReport { node: i, domain_size: domain.len(), codomain_size: codomain.len(), ok })
}

/// [`bijection_check_at`] for every relevant node: `1..=n(w)` without a
/// context, the nodes `N_1, .., N_k` with one.
pub fn bijection_check(w: &Permutation, ctx: Option<&ParabolicContext>) -> Result<Vec<BijectionReport>, RingError> {
    let nodes: Vec<u32> = match ctx {
        None => (1..=w.min_n() as u32).collect(),
        Some(c) => (1..=c.k()).map(|j| c.partial_sum(j)).collect(),
    };
    nodes.into_iter().map(|i| bijection_check_at(w, i, ctx)).collect()
}

/// Structure constants of one product: `w -> coefficient in Z[q, a]`.
pub type StructureRow = BTreeMap<Permutation, Polynomial>;

/// Sets `q_i` (`i >= q_bound`) and `a_i` (`i > n`) to zero.
fn truncate_variables(f: &Polynomial, n: usize, q_bound: u32) -> Polynomial {
    f.set_zero(|v| match v.family {
        Family::Q => v.index >= q_bound,
        Family::A => v.index as usize > n,
        Family::X => false,
    })
}

fn truncate(expansion: BTreeMap<Permutation, Polynomial>, n: usize) -> StructureRow {
    expansion.into_iter().filter(|(w, c)| w.in_s_n(n) && !c.is_zero()).collect()
}

type Memo<K> = Mutex<HashMap<(K, usize), Arc<OnceLock<Polynomial>>>>;

fn memoized<K, F>(memo: &'static OnceLock<Memo<K>>, key: &K, n: usize, compute: F) -> Polynomial
where
    K: Clone + Eq + std::hash::Hash,
    F: FnOnce() -> Polynomial,
{
    let cell = {
        let mut map = memo.get_or_init(Default::default).lock().expect("memo poisoned");
        map.entry((key.clone(), n)).or_default().clone()
    };
    cell.get_or_init(compute).clone()
}

/// Largest `S_m` whose quantum double polynomials are taken from the
/// memoized family when building truncated basis elements.
const RECURSION_LIMIT: usize = 5;

/// The quantum double polynomial of `w` with `q_i` (`i >= n`) and `a_i`
/// (`i > n`) set to zero. Every basis element has `x`-leading coefficient 1,
/// so expanding a truncated product in truncated basis elements yields the
/// truncated coefficients.
pub fn truncated_quantum_double(w: &Permutation, n: usize) -> Polynomial {
    static MEMO: OnceLock<Memo<Permutation>> = OnceLock::new();
    memoized(&MEMO, w, n, || {
        if w.min_n() <= RECURSION_LIMIT {
            truncate_variables(&schubert_polynomial(w, SchubertFamily::QuantumDouble), n, n as u32)
        } else {
            truncated_by_cauchy(w, n)
        }
    })
}

/// `sum_{v <= w} Schub_{v w^-1}(-a) theta(Schub_v)` over the left weak order
/// ideal, truncated as in [`truncated_quantum_double`]. Avoids the top
/// polynomial of `S_{n(w)}`, which is out of reach beyond `S_6`.
fn truncated_by_cauchy(w: &Permutation, n: usize) -> Polynomial {
    static MEMO: OnceLock<Memo<Permutation>> = OnceLock::new();
    let winv = w.inverse();
    left_weak_ideal(w)
        .iter()
        .map(|v| {
            let quantum = memoized(&MEMO, v, n, || {
                let classical = schubert_polynomial(v, SchubertFamily::Classical);
                let d = standard_decompose(&classical).expect("classical polynomials are x-only");
                d.iter().map(|(index, c)| truncated_e_monomial(index, n).scale(c)).sum()
            });
            &truncate_variables(&classical_at_minus_a(&v.compose(&winv)), n, n as u32) * &quantum
        })
        .sum()
}

/// `E_I` with `q_i` (`i >= n`) set to zero, built from truncated factors.
fn truncated_e_monomial(index: &StandardIndex, n: usize) -> Polynomial {
    static MEMO: OnceLock<Memo<StandardIndex>> = OnceLock::new();
    memoized(&MEMO, index, n, || {
        index
            .entries()
            .iter()
            .enumerate()
            .map(|(r, &i)| truncate_variables(&quantum_elementary(i as i64, r as i64 + 1), n, n as u32))
            .product()
    })
}

/// The parabolic analogue of [`truncated_quantum_double`]: `parabolic_stable`
/// with `q_i` (`i >= k`) and `a_i` (`i > n`) set to zero.
pub fn truncated_parabolic(ctx: &ParabolicContext, w: &Permutation) -> Polynomial {
    static MEMO: OnceLock<Memo<(Vec<u32>, Permutation)>> = OnceLock::new();
    let (n, q_bound) = (ctx.n(), ctx.k() as u32);
    memoized(&MEMO, &(ctx.composition().to_vec(), w.clone()), 0, || {
        if w.one_line().len() <= RECURSION_LIMIT {
            truncate_variables(&parabolic_stable(ctx, w), n, q_bound)
        } else {
            parabolic_by_cauchy(ctx, w)
        }
    })
}

/// `sum_{v <= w} Schub_{v w^-1}(-a) theta^P(Schub_v)`, truncated, with
/// `theta^P` taken for `ctx` extended by blocks of size 1 up to `n(w)`.
fn parabolic_by_cauchy(ctx: &ParabolicContext, w: &Permutation) -> Polynomial {
    static MEMO: OnceLock<Memo<(Vec<u32>, Permutation)>> = OnceLock::new();
    let (n, q_bound) = (ctx.n(), ctx.k() as u32);
    let mut stable = ctx.clone();
    while stable.n() < w.one_line().len() {
        stable = stable.extended(&[1]).expect("appending a block");
    }
    let winv = w.inverse();
    left_weak_ideal(w)
        .iter()
        .map(|v| {
            let quantum = memoized(&MEMO, &(ctx.composition().to_vec(), v.clone()), stable.n(), || {
                let classical = schubert_polynomial(v, SchubertFamily::Classical);
                let quantized = theta_p(&stable, &classical).expect("classical polynomials are W_P-invariant for v in W^P");
                truncate_variables(&quantized, n, q_bound)
            });
            &truncate_variables(&classical_at_minus_a(&v.compose(&winv)), n, q_bound) * &quantum
        })
        .sum()
}

/// Equivariant quantum structure constants of `Fl_n` for `u * v`.
pub fn structure_constants(n: usize, u: &Permutation, v: &Permutation) -> Result<StructureRow, RingError> {
    for w in [u, v] {
        if !w.in_s_n(n) {
            return Err(RingError::OutOfRange { w: w.clone(), n });
        }
    }
    let fam = SchubertFamily::QuantumDouble;
    let product = truncate_variables(&(&schubert_polynomial(u, fam) * &schubert_polynomial(v, fam)), n, n as u32);
    let expansion = expand_with(&product, |w| truncated_quantum_double(w, n), |_| true)?;
    Ok(truncate(expansion.coefficients, n))
}

/// Structure constants of the partial flag variety of `ctx` for `u * v`.
pub fn parabolic_structure_constants(
    ctx: &ParabolicContext,
    u: &Permutation,
    v: &Permutation,
) -> Result<StructureRow, RingError> {
    for w in [u, v] {
        if !ctx.contains_minimal(w) {
            return Err(WeylError::NotMinimal { w: w.clone(), ctx: ctx.clone() }.into());
        }
    }
    let (n, q_bound) = (ctx.n(), ctx.k() as u32);
    let product = truncate_variables(&(&parabolic_stable(ctx, u) * &parabolic_stable(ctx, v)), n, q_bound);
    let expansion = expand_with(&product, |w| truncated_parabolic(ctx, w), |w| ctx.is_minimal(w))?;
    Ok(truncate(expansion.coefficients, n))
}

/// Predicted product `sigma^{s_i} sigma^w` in `QH^T(Fl_n)` (or the partial
/// flag variety), using roots inside `S_n` only.
pub fn chevalley_row(n: usize, i: u32, w: &Permutation, ctx: Option<&ParabolicContext>) -> StructureRow {
    let mut row = StructureRow::new();
    let mut add = |x: Permutation, c: Polynomial| {
        let slot = row.entry(x.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            row.remove(&x);
        }
    };
    add(w.clone(), weight_coefficient(w, i));
    for r in 1..=i {
        for s in i + 1..=n as u32 {
            let alpha = Root::new(r, s);
            let ws = w.reflect(alpha);
            match ctx {
                None => {
                    if alpha.is_cover_of(w) {
                        add(ws.clone(), Polynomial::one());
                    }
                    if ws.length() as i64 == w.length() as i64 + 1 - alpha.pair_two_rho() {
                        add(ws, alpha.q_monomial());
                    }
                }
                Some(c) => {
                    if c.root_in_levi(alpha) {
                        continue;
                    }
                    if alpha.is_cover_of(w) && c.is_minimal(&ws) {
                        add(ws.clone(), Polynomial::one());
                    }
                    let proj = c.project(&ws);
                    if proj.length() as i64 == w.length() as i64 + 1 - c.pair_two_rho_minus_rho_p(alpha) {
                        add(proj, c.eta_p(alpha));
                    }
                }
            }
        }
    }
    row
}

/// A full multiplication table in the Schubert basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    pub n: usize,
    pub parabolic: Option<ParabolicContext>,
    pub entries: BTreeMap<(Permutation, Permutation), StructureRow>,
}

impl StructureTable {
    /// The indexing set: `S_n`, or `W^P` inside `S_n`.
    pub fn basis(&self) -> Vec<Permutation> {
        match &self.parabolic {
            None => Permutation::all(self.n),
            Some(c) => c.minimal_elements(),
        }
    }

    /// Computes every product, in parallel over pairs.
    pub fn compute(n: usize, parabolic: Option<ParabolicContext>) -> Result<Self, RingError> {
        let n = parabolic.as_ref().map_or(n, |c| c.n());
        let mut table = StructureTable { n, parabolic, entries: BTreeMap::new() };
        let basis = table.basis();
        let pairs: Vec<(Permutation, Permutation)> =
            basis.iter().flat_map(|u| basis.iter().map(move |v| (u.clone(), v.clone()))).collect();
        let rows: Result<Vec<_>, RingError> = pairs
            .into_par_iter()
            .map(|(u, v)| {
                let row = match &table.parabolic {
                    None => structure_constants(n, &u, &v)?,
                    Some(c) => parabolic_structure_constants(c, &u, &v)?,
                };
                Ok(((u, v), row))
            })
            .collect();
        table.entries = rows?.into_iter().collect();
        Ok(table)
    }

    pub fn get(&self, u: &Permutation, v: &Permutation) -> Option<&StructureRow> {
        self.entries.get(&(u.clone(), v.clone()))
    }

    pub fn is_commutative(&self) -> bool {
        self.entries.iter().all(|((u, v), row)| self.get(v, u) == Some(row))
    }

    /// `sum_x c_x sigma^x sigma^w` (or `sigma^w sigma^x` when `left` is
    /// false) expanded with the table.
    fn combine(&self, coefficients: &StructureRow, w: &Permutation, left: bool) -> StructureRow {
        let mut out = StructureRow::new();
        for (x, c) in coefficients {
            let row = if left { self.get(x, w) } else { self.get(w, x) };
            for (y, d) in row.expect("complete table") {
                *out.entry(y.clone()).or_default() += c * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// True if `(u v) w = u (v w)` for the given triple.
    pub fn associates(&self, u: &Permutation, v: &Permutation, w: &Permutation) -> bool {
        let left = self.combine(self.get(u, v).expect("complete table"), w, true);
        let right = self.combine(self.get(v, w).expect("complete table"), u, false);
        left == right
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.n;
        let entries: Vec<JsonEntry> = self
            .entries
            .iter()
            .map(|((u, v), row)| JsonEntry {
                u: padded_text(u, n),
                v: padded_text(v, n),
                terms: row.iter().map(|(w, c)| JsonTerm { w: padded_text(w, n), coeff: format_text(c) }).collect(),
            })
            .collect();
        serde_json::to_value(JsonTable {
            n,
            parabolic: self.parabolic.as_ref().map(|c| c.composition().to_vec()),
            entries,
        })
        .expect("table serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, RingError> {
        let t: JsonTable =
            serde_json::from_value(value.clone()).map_err(|e| RingError::InvalidTable(e.to_string()))?;
        let parabolic = t.parabolic.map(ParabolicContext::new).transpose()?;
        let mut entries = BTreeMap::new();
        for e in t.entries {
            let mut row = StructureRow::new();
            for term in e.terms {
                row.insert(term.w.parse()?, parse_text(&term.coeff)?);
            }
            entries.insert((e.u.parse()?, e.v.parse()?), row);
        }
        Ok(StructureTable { n: t.n, parabolic, entries })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ((u, v), row) in &self.entries {
            let rhs: Vec<String> = row.iter().map(|(w, c)| format!("({})*s{}", format_text(c), padded_text(w, self.n))).collect();
            let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join(" + ") };
            out.push_str(&format!("s{} * s{} = {}\n", padded_text(u, self.n), padded_text(v, self.n), rhs));
        }
        out
    }
}

fn padded_text(w: &Permutation, n: usize) -> String {
    let parts: Vec<String> = w.padded(n.max(1)).iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    n: usize,
    parabolic: Option<Vec<u32>>,
    entries: Vec<JsonEntry>,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    u: String,
    v: String,
    terms: Vec<JsonTerm>,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    w: String,
    coeff: String,
}

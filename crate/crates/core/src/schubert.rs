//! Divided differences in the `a` variables and the classical, double,
//! quantum and quantum double Schubert polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::algebra::poly::accumulate;
use crate::algebra::{Family, Monomial, Polynomial, SymbolicMatrix, Variable};
use crate::weyl::{left_weak_ideal, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchubertFamily {
    Classical,
    Double,
    Quantum,
    QuantumDouble,
}

impl SchubertFamily {
    pub const ALL: [SchubertFamily; 4] = [
        SchubertFamily::Classical,
        SchubertFamily::Double,
        SchubertFamily::Quantum,
        SchubertFamily::QuantumDouble,
    ];

    pub fn uses_a(self) -> bool {
        matches!(self, SchubertFamily::Double | SchubertFamily::QuantumDouble)
    }

    pub fn uses_q(self) -> bool {
        matches!(self, SchubertFamily::Quantum | SchubertFamily::QuantumDouble)
    }

    pub fn name(self) -> &'static str {
        match self {
            SchubertFamily::Classical => "classical",
            SchubertFamily::Double => "double",
            SchubertFamily::Quantum => "quantum",
            SchubertFamily::QuantumDouble => "quantum-double",
        }
    }

    /// True if `v` may occur in a member of this family or in a
    /// coefficient of an expansion in it.
    pub fn allows(self, v: Variable) -> bool {
        match v.family {
            Family::X => true,
            Family::A => self.uses_a(),
            Family::Q => self.uses_q(),
        }
    }
}

impl fmt::Display for SchubertFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchubertFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "classical" => Ok(SchubertFamily::Classical),
            "double" => Ok(SchubertFamily::Double),
            "quantum" => Ok(SchubertFamily::Quantum),
            "quantum-double" => Ok(SchubertFamily::QuantumDouble),
            _ => Err(format!("unknown family {s:?}; expected classical, double, quantum or quantum-double")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchubertError {
    #[error("variable {variable} is not allowed in the {family} family")]
    WrongRing { family: SchubertFamily, variable: Variable },
    #[error("expansion did not terminate after {0} steps")]
    NonTermination(usize),
    #[error("leading term x^code({0}) does not index a basis element")]
    Inadmissible(Permutation),
}

/// `d_i f = (f - s_i f) / (a_i - a_{i+1})`, where `s_i` exchanges `a_i` and
/// `a_{i+1}`.
pub fn divided_difference(i: u32, f: &Polynomial) -> Polynomial {
    let (ai, aj) = (Variable::a(i), Variable::a(i + 1));
    let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
    for (m, c) in f.terms() {
        let p = m.exponent(ai);
        let r = m.exponent(aj);
        if p == r {
            continue;
        }
        // a_i^p a_{i+1}^r with p > r gives a_i^r a_{i+1}^r h_{p-r-1}(a_i, a_{i+1})
        let (low, d, coeff) = if p > r { (r, p - r, c.clone()) } else { (p, r - p, -c) };
        for k in 0..d {
            accumulate(&mut acc, m.with_adjacent_exponents(ai, low + k, aj, low + d - 1 - k), coeff.clone());
        }
    }
    Polynomial::from_accumulator(acc)
}

/// Applies `d_{i_1} ... d_{i_l}` (rightmost first).
pub fn divided_difference_word(word: &[u32], f: &Polynomial) -> Polynomial {
    word.iter().rev().fold(f.clone(), |g, &i| divided_difference(i, &g))
}

/// `d_w` along the canonical reduced word of `w`.
pub fn divided_difference_w(w: &Permutation, f: &Polynomial) -> Polynomial {
    divided_difference_word(&w.reduced_word(), f)
}

/// `prod_{i=1}^{n-1} prod_{j<=i} (x_j - a_{n-i})`.
pub fn double_top(n: usize) -> Polynomial {
    let mut out = Polynomial::one();
    for i in 1..n {
        let a = Polynomial::a((n - i) as u32);
        for j in 1..=i {
            out = &out * &(Polynomial::x(j as u32) - &a);
        }
    }
    out
}

/// `prod_{i=1}^{n-1} det(C_i - a_{n-i})`.
pub fn quantum_double_top(n: usize) -> Polynomial {
    let mut out = Polynomial::one();
    for i in 1..n {
        let det = SymbolicMatrix::quantum_tridiagonal(i).det_shifted(&Polynomial::a((n - i) as u32));
        out = &out * &det;
    }
    out
}

fn clear_a(f: &Polynomial) -> Polynomial {
    f.set_zero(|v| v.family == Family::A)
}

/// The family member for `w` computed straight from the defining formula
/// inside `S_n`; `n` must be at least the smallest symmetric group
/// containing `w`.
pub fn schubert_polynomial_in(w: &Permutation, family: SchubertFamily, n: usize) -> Polynomial {
    assert!(w.in_s_n(n), "{w} is not in S_{n}");
    let w0 = Permutation::longest(n);
    let u = w.compose(&w0);
    let top = if family.uses_q() { quantum_double_top(n) } else { double_top(n) };
    let mut f = divided_difference_w(&u, &top);
    if u.length() % 2 == 1 {
        f = -f;
    }
    if family.uses_a() {
        f
    } else {
        clear_a(&f)
    }
}

type Cache = Mutex<HashMap<(SchubertFamily, Permutation), Arc<OnceLock<Polynomial>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached<F: FnOnce() -> Polynomial>(family: SchubertFamily, w: &Permutation, compute: F) -> Polynomial {
    let cell = {
        let mut map = cache().lock().expect("schubert cache poisoned");
        map.entry((family, w.clone())).or_default().clone()
    };
    cell.get_or_init(compute).clone()
}

/// The member of `family` indexed by `w`.
///
/// Double and quantum double polynomials are computed by descending from
/// the longest element: if `s_i w > w` then `P_w = -d_i P_{s_i w}`.
/// Classical polynomials descend from the staircase monomial and quantum
/// ones are quantum double polynomials at `a = 0`. Results are memoized.
pub fn schubert_polynomial(w: &Permutation, family: SchubertFamily) -> Polynomial {
    cached(family, w, || match family {
        SchubertFamily::Classical => classical_by_descent(w),
        SchubertFamily::Quantum => clear_a(&schubert_polynomial(w, SchubertFamily::QuantumDouble)),
        _ => {
            let n = w.min_n();
            if *w == Permutation::longest(n) {
                return if family.uses_q() { quantum_double_top(n) } else { double_top(n) };
            }
            let inv = w.inverse();
            let i = (1..n as u32)
                .find(|&i| inv.apply(i) < inv.apply(i + 1))
                .expect("a non-longest element has a left ascent");
            -divided_difference(i, &schubert_polynomial(&w.mul_simple_left(i), family))
        }
    })
}

fn rename_family(f: &Polynomial, from: Family, to: Family) -> Polynomial {
    f.rename(|v| if v.family == from { Variable::new(to, v.index) } else { v })
}

/// Classical polynomials descend from the staircase monomial
/// `x_1^{n-1} x_2^{n-2} ... x_{n-1}`: `Schub_w = d_i Schub_{w s_i}` when
/// `w(i) < w(i+1)`. The operators act on `a`, so each step renames `x` to `a`
/// and back.
fn classical_by_descent(w: &Permutation) -> Polynomial {
    let n = w.min_n();
    if *w == Permutation::longest(n) {
        return (1..n).map(|i| Polynomial::x(i as u32).pow((n - i) as u32)).product();
    }
    let i = (1..n as u32)
        .find(|&i| w.apply(i) < w.apply(i + 1))
        .expect("a non-longest element has a right ascent");
    let above = schubert_polynomial(&w.mul_simple_right(i), SchubertFamily::Classical);
    rename_family(&divided_difference(i, &rename_family(&above, Family::X, Family::A)), Family::A, Family::X)
}

/// A finite `Z[q, a]`-combination of family members.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchubertExpansion {
    pub coefficients: BTreeMap<Permutation, Polynomial>,
}

impl SchubertExpansion {
    pub fn get(&self, w: &Permutation) -> Polynomial {
        self.coefficients.get(w).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &Polynomial)> {
        self.coefficients.iter()
    }

    pub fn add_term(&mut self, w: Permutation, c: Polynomial) {
        let slot = self.coefficients.entry(w.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coefficients.remove(&w);
        }
    }

    /// `sum_w c_w P_w`.
    pub fn reconstruct(&self, family: SchubertFamily) -> Polynomial {
        self.coefficients.iter().map(|(w, c)| c * &schubert_polynomial(w, family)).sum()
    }
}

/// Expands `f` in the given family by repeatedly cancelling the
/// `x`-leading term `c x^gamma` against `c P_w` with `code(w) = gamma`.
pub fn expand_in_schubert_basis(f: &Polynomial, family: SchubertFamily) -> Result<SchubertExpansion, SchubertError> {
    if let Some(v) = f.variables().into_iter().find(|&v| !family.allows(v)) {
        return Err(SchubertError::WrongRing { family, variable: v });
    }
    expand_with(f, |w| schubert_polynomial(w, family), |_| true)
}

/// The leading-term expansion loop shared with the parabolic basis.
/// `admissible` rejects permutations outside the intended index set.
pub(crate) fn expand_with<P, A>(f: &Polynomial, basis: P, admissible: A) -> Result<SchubertExpansion, SchubertError>
where
    P: Fn(&Permutation) -> Polynomial,
    A: Fn(&Permutation) -> bool,
{
    let mut out = SchubertExpansion::default();
    let mut rest = f.clone();
    // every step removes the current leading monomial and introduces only
    // smaller ones in finitely many variables, so this bound is generous
    let limit = 1_000_000;
    for _ in 0..limit {
        let Some((lead, coeff)) = rest.x_leading() else {
            return Ok(out);
        };
        let w = Permutation::from_code(&lead.x_exponents());
        if !admissible(&w) {
            return Err(SchubertError::Inadmissible(w));
        }
        rest -= &coeff * &basis(&w);
        out.add_term(w, coeff);
    }
    Err(SchubertError::NonTermination(limit))
}

/// `Schub_u(-a)`: the classical polynomial with `x_i` replaced by `-a_i`.
pub fn classical_at_minus_a(u: &Permutation) -> Polynomial {
    let f = schubert_polynomial(u, SchubertFamily::Classical);
    let vars: Vec<Variable> = f.variables().into_iter().collect();
    let assignment: HashMap<Variable, Polynomial> =
        vars.into_iter().map(|v| (v, -Polynomial::a(v.index))).collect();
    f.specialize(&assignment)
}

/// `sum_{v <= w} Schub_{v w^-1}(-a) P_v(x)` over the left weak order ideal,
/// with `P` the quantum or classical family.
pub fn cauchy_rhs(w: &Permutation, quantum: bool) -> Polynomial {
    let family = if quantum { SchubertFamily::Quantum } else { SchubertFamily::Classical };
    let winv = w.inverse();
    left_weak_ideal(w)
        .iter()
        .map(|v| &classical_at_minus_a(&v.compose(&winv)) * &schubert_polynomial(v, family))
        .sum()
}

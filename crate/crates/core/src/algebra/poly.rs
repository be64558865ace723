use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

/// The three families of indeterminates: `x` (Chern roots), `a` (equivariant
/// parameters) and `q` (quantum parameters).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    X,
    A,
    Q,
}

impl Family {
    pub fn symbol(self) -> char {
        match self {
            Family::X => 'x',
            Family::A => 'a',
            Family::Q => 'q',
        }
    }
}

/// A single indeterminate `x_i`, `a_i` or `q_i`. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub family: Family,
    pub index: u32,
}

impl Variable {
    pub fn new(family: Family, index: u32) -> Self {
        assert!(index >= 1, "variable indices are 1-based");
        Variable { family, index }
    }

    pub fn x(index: u32) -> Self {
        Self::new(Family::X, index)
    }

    pub fn a(index: u32) -> Self {
        Self::new(Family::A, index)
    }

    pub fn q(index: u32) -> Self {
        Self::new(Family::Q, index)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.symbol(), self.index)
    }
}

fn push_pair(out: &mut SmallVec<[(Variable, u32); 12]>, u: Variable, eu: u32, v: Variable, ev: u32) {
    if eu > 0 {
        out.push((u, eu));
    }
    if ev > 0 {
        out.push((v, ev));
    }
}

/// A power product of variables, stored as a sorted list of
/// `(variable, exponent)` pairs with every exponent positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[(Variable, u32); 12]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Variable) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Variable, e: u32) -> Self {
        let mut m = SmallVec::new();
        if e > 0 {
            m.push((v, e));
        }
        Monomial(m)
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged
    /// and zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (Variable, u32)>>(pairs: I) -> Self {
        let mut v: SmallVec<[(Variable, u32); 12]> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_by_key(|p| p.0);
        let mut out: SmallVec<[(Variable, u32); 12]> = SmallVec::new();
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.0
            .binary_search_by_key(&v, |p| p.0)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn family_degree(&self, family: Family) -> u32 {
        self.0.iter().filter(|p| p.0.family == family).map(|p| p.1).sum()
    }

    /// Returns a copy with the exponent of `v` replaced by `e`.
    pub fn with_exponent(&self, v: Variable, e: u32) -> Monomial {
        let mut out = self.0.clone();
        match out.binary_search_by_key(&v, |p| p.0) {
            Ok(i) if e == 0 => {
                out.remove(i);
            }
            Ok(i) => out[i].1 = e,
            Err(_) if e == 0 => {}
            Err(i) => out.insert(i, (v, e)),
        }
        Monomial(out)
    }

    /// Replaces the exponents of two variables adjacent in the variable order
    /// (`u` immediately before `v`) in one pass.
    pub(crate) fn with_adjacent_exponents(&self, u: Variable, eu: u32, v: Variable, ev: u32) -> Monomial {
        let mut out = SmallVec::with_capacity(self.0.len() + 2);
        let mut placed = false;
        for &(var, e) in &self.0 {
            if var == u || var == v {
                continue;
            }
            if !placed && var > v {
                push_pair(&mut out, u, eu, v, ev);
                placed = true;
            }
            out.push((var, e));
        }
        if !placed {
            push_pair(&mut out, u, eu, v, ev);
        }
        Monomial(out)
    }

    /// The factor made of variables from `family` only.
    pub fn family_part(&self, family: Family) -> Monomial {
        Monomial(self.0.iter().copied().filter(|p| p.0.family == family).collect())
    }

    /// Splits into the `x`-part and the remaining `(a, q)`-part.
    pub fn split_x(&self) -> (Monomial, Monomial) {
        let mut xs = SmallVec::new();
        let mut rest = SmallVec::new();
        for &p in &self.0 {
            if p.0.family == Family::X {
                xs.push(p);
            } else {
                rest.push(p);
            }
        }
        (Monomial(xs), Monomial(rest))
    }

    /// Dense exponent vector of the `x`-part: entry `i-1` is the exponent of `x_i`.
    pub fn x_exponents(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for &(v, e) in &self.0 {
            if v.family == Family::X {
                let i = v.index as usize;
                if out.len() < i {
                    out.resize(i, 0);
                }
                out[i - 1] = e;
            }
        }
        out
    }

    pub fn from_x_exponents(exps: &[u32]) -> Monomial {
        Monomial(
            exps.iter()
                .enumerate()
                .filter(|p| *p.1 > 0)
                .map(|(i, &e)| (Variable::x(i as u32 + 1), e))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.0.iter().map(|p| p.0)
    }
}

/// A polynomial in `Z[x; a; q]`: a finite map from monomials to nonzero
/// integers, kept sorted by monomial so that equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, BigInt)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::term(c.into(), Monomial::one())
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(BigInt::one(), m)
    }

    pub fn var(v: Variable) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn x(i: u32) -> Self {
        Self::var(Variable::x(i))
    }

    pub fn a(i: u32) -> Self {
        Self::var(Variable::a(i))
    }

    pub fn q(i: u32) -> Self {
        Self::var(Variable::q(i))
    }

    /// Collects terms, merging equal monomials and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (m, c) in terms {
            accumulate(&mut acc, m, c);
        }
        Self::from_accumulator(acc)
    }

    pub(crate) fn from_accumulator(acc: FxHashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> = acc.into_iter().filter(|t| !t.1.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn into_terms(self) -> Vec<(Monomial, BigInt)> {
        self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms
            .binary_search_by(|t| t.0.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    /// The constant term.
    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one())
    }

    pub fn variables(&self) -> std::collections::BTreeSet<Variable> {
        self.terms.iter().flat_map(|t| t.0.variables()).collect()
    }

    pub fn uses_family(&self, family: Family) -> bool {
        self.terms.iter().any(|t| t.0.variables().any(|v| v.family == family))
    }

    /// Largest ordinary total degree of a term (`None` for zero).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        // multiplying by a monomial is injective and order-preserving on the
        // storage order only up to re-sorting, so sort again
        let mut terms: Vec<_> = self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Polynomial { terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Keeps only the terms for which `keep` holds.
    pub fn filter_terms<F: FnMut(&Monomial) -> bool>(&self, mut keep: F) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().filter(|t| keep(&t.0)).cloned().collect(),
        }
    }

    /// Sets every variable satisfying `pred` to zero.
    pub fn set_zero<F: Fn(Variable) -> bool>(&self, pred: F) -> Polynomial {
        self.filter_terms(|m| !m.variables().any(&pred))
    }

    /// Substitutes polynomials for some variables; unassigned variables are
    /// left untouched.
    pub fn specialize(&self, assignment: &HashMap<Variable, Polynomial>) -> Polynomial {
        if assignment.is_empty() {
            return self.clone();
        }
        let mut powers: HashMap<(Variable, u32), Polynomial> = HashMap::new();
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Polynomial::constant(c.clone());
            let mut vanished = false;
            for &(v, e) in m.pairs() {
                match assignment.get(&v) {
                    None => kept.push((v, e)),
                    Some(p) => {
                        if p.is_zero() {
                            vanished = true;
                            break;
                        }
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        factor = &factor * &*pw;
                    }
                }
            }
            if vanished {
                continue;
            }
            let rest = Monomial::from_pairs(kept);
            for (fm, fc) in factor.terms {
                accumulate(&mut acc, fm.mul(&rest), fc);
            }
        }
        Polynomial::from_accumulator(acc)
    }

    /// Renames variables through `f`, which must be injective on the
    /// variables that occur.
    pub fn rename<F: Fn(Variable) -> Variable>(&self, f: F) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (f(v), e))), c.clone())),
        )
    }

    /// Exchanges two variables.
    pub fn swap_variables(&self, u: Variable, v: Variable) -> Polynomial {
        self.rename(|w| {
            if w == u {
                v
            } else if w == v {
                u
            } else {
                w
            }
        })
    }

    /// Groups terms by their `x`-monomial; values are the `(a, q)` coefficients.
    pub fn split_by_x(&self) -> std::collections::BTreeMap<Monomial, Polynomial> {
        let mut groups: std::collections::BTreeMap<Monomial, Vec<(Monomial, BigInt)>> = Default::default();
        for (m, c) in &self.terms {
            let (xm, rest) = m.split_x();
            groups.entry(xm).or_default().push((rest, c.clone()));
        }
        groups.into_iter().map(|(k, v)| (k, Polynomial::from_terms(v))).collect()
    }

    /// Groups terms by their `(a, q)`-monomial; values are `x`-polynomials.
    pub fn split_by_coefficient_monomial(&self) -> std::collections::BTreeMap<Monomial, Polynomial> {
        let mut groups: std::collections::BTreeMap<Monomial, Vec<(Monomial, BigInt)>> = Default::default();
        for (m, c) in &self.terms {
            let (xm, rest) = m.split_x();
            groups.entry(rest).or_default().push((xm, c.clone()));
        }
        groups.into_iter().map(|(k, v)| (k, Polynomial::from_terms(v))).collect()
    }

    /// Degree under a grading where `x_i`, `a_i` have degree 1 and `q_j` has
    /// degree `q_degree(j)`.
    pub fn graded_degree<F: Fn(u32) -> u32>(&self, q_degree: F) -> GradedDegree {
        let mut deg = None;
        for (m, _) in &self.terms {
            let d: u32 = m
                .pairs()
                .iter()
                .map(|&(v, e)| match v.family {
                    Family::Q => q_degree(v.index) * e,
                    _ => e,
                })
                .sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return GradedDegree::Inhomogeneous,
                _ => {}
            }
        }
        match deg {
            None => GradedDegree::Zero,
            Some(d) => GradedDegree::Homogeneous(d),
        }
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })));
        Polynomial { terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if other.terms.len() == 1 && other.terms[0].0.is_one() {
            return self.scale(&other.terms[0].1);
        }
        if self.terms.len() == 1 && self.terms[0].0.is_one() {
            return other.scale(&self.terms[0].1);
        }
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        acc.reserve(self.terms.len().saturating_mul(other.terms.len()).min(1 << 16));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                accumulate(&mut acc, m1.mul(m2), c1 * c2);
            }
        }
        Polynomial::from_accumulator(acc)
    }
}

pub(crate) fn accumulate(acc: &mut FxHashMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
    use std::collections::hash_map::Entry;
    match acc.entry(m) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// Leading-term order on the `x`-parts of two monomials: higher total
/// `x`-degree wins, then the larger exponent at the largest index where the
/// exponents differ. `Greater` means `m` is more leading than `n`.
pub fn x_leading_cmp(m: &Monomial, n: &Monomial) -> Ordering {
    let dm = m.family_degree(Family::X);
    let dn = n.family_degree(Family::X);
    if dm != dn {
        return dm.cmp(&dn);
    }
    let em = m.x_exponents();
    let en = n.x_exponents();
    let len = em.len().max(en.len());
    for i in (0..len).rev() {
        let a = em.get(i).copied().unwrap_or(0);
        let b = en.get(i).copied().unwrap_or(0);
        if a != b {
            return a.cmp(&b);
        }
    }
    Ordering::Equal
}

impl Polynomial {
    /// The term whose `x`-part is maximal for [`x_leading_cmp`], together
    /// with its full `(a, q)` coefficient.
    pub fn x_leading(&self) -> Option<(Monomial, Polynomial)> {
        let lead = self
            .terms
            .iter()
            .map(|t| t.0.family_part(Family::X))
            .max_by(x_leading_cmp)?;
        let coeff = Polynomial::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (xm, rest) = m.split_x();
            (xm == lead).then(|| (rest, c.clone()))
        }));
        Some((lead, coeff))
    }
}

/// Result of [`Polynomial::graded_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradedDegree {
    Homogeneous(u32),
    Inhomogeneous,
    /// The zero polynomial, homogeneous of every degree.
    Zero,
}

impl GradedDegree {
    /// True when the polynomial is zero or homogeneous of degree `d`.
    pub fn is(&self, d: u32) -> bool {
        matches!(self, GradedDegree::Zero) || *self == GradedDegree::Homogeneous(d)
    }
}

/// Full-flag grading: `deg q_j = 2`.
pub fn full_flag_q_degree(_: u32) -> u32 {
    2
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                let f: fn(&Polynomial, &Polynomial) -> Polynomial = $body;
                f(self, rhs)
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.merge(b, false));
forward_binop!(Sub, sub, |a, b| a.merge(b, true));
forward_binop!(Mul, mul, |a, b| a.product(b));

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        *self = self.merge(rhs, false);
    }
}

impl AddAssign<Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        *self = self.merge(&rhs, false);
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        *self = self.merge(rhs, true);
    }
}

impl SubAssign<Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: Polynomial) {
        *self = self.merge(&rhs, true);
    }
}

impl MulAssign<&Polynomial> for Polynomial {
    fn mul_assign(&mut self, rhs: &Polynomial) {
        *self = self.product(rhs);
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -self.clone()
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Variable> for Polynomial {
    fn from(v: Variable) -> Self {
        Polynomial::var(v)
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for p in iter {
            for (m, c) in p.terms {
                accumulate(&mut acc, m, c);
            }
        }
        Polynomial::from_accumulator(acc)
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |acc, p| &acc * &p)
    }
}

/// `e_i` of the listed variables; `1` for `i = 0`, `0` when `i` exceeds the
/// number of variables.
pub fn elementary_symmetric(i: usize, vars: &[Variable]) -> Polynomial {
    // e_i(v_1..v_m) via the recurrence e_i(.., v_m) = e_i(..) + v_m e_{i-1}(..)
    let mut table = vec![Polynomial::zero(); i + 1];
    table[0] = Polynomial::one();
    for &v in vars {
        let xv = Polynomial::var(v);
        for k in (1..=i).rev() {
            if table[k - 1].is_zero() {
                continue;
            }
            let add = &table[k - 1] * &xv;
            table[k] += add;
        }
    }
    table.swap_remove(i)
}

/// `h_i` of the listed variables.
pub fn complete_homogeneous(i: usize, vars: &[Variable]) -> Polynomial {
    let mut table = vec![Polynomial::zero(); i + 1];
    table[0] = Polynomial::one();
    for &v in vars {
        let xv = Polynomial::var(v);
        for k in 1..=i {
            let add = &table[k - 1] * &xv;
            table[k] += add;
        }
    }
    table.swap_remove(i)
}

/// `omega_i(x) = x_1 + ... + x_i` style sums over one family.
pub fn fundamental_weight(family: Family, i: u32) -> Polynomial {
    (1..=i).map(|k| Polynomial::var(Variable::new(family, k))).sum()
}

/// The variables `x_1..x_n` (or `a`, `q`) as a list.
pub fn variables(family: Family, n: u32) -> Vec<Variable> {
    (1..=n).map(|i| Variable::new(family, i)).collect()
}

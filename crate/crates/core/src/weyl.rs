//! Type A Weyl group combinatorics: permutations of `S_infinity`, positive
//! roots and coroots, and parabolic subgroups given by compositions.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{Monomial, Polynomial, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("permutation {w} moves positions beyond n = {n}")]
    OutOfRange { w: Permutation, n: usize },
    #[error("permutation {w} is not a minimal coset representative for {ctx}")]
    NotMinimal { w: Permutation, ctx: ParabolicContext },
}

/// An element of `S_infinity` in one-line notation with trailing fixed
/// points removed, so the identity is the empty sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity() -> Self {
        Permutation(Vec::new())
    }

    /// Validates and trims a one-line notation.
    pub fn new(one_line: Vec<u32>) -> Result<Self, WeylError> {
        let m = one_line.len();
        let mut seen = vec![false; m + 1];
        for &v in &one_line {
            if v == 0 || v as usize > m || seen[v as usize] {
                return Err(WeylError::NotAPermutation(format!("{one_line:?}")));
            }
            seen[v as usize] = true;
        }
        Ok(Self::trimmed(one_line))
    }

    fn trimmed(mut v: Vec<u32>) -> Self {
        while v.last().is_some_and(|&x| x as usize == v.len()) {
            v.pop();
        }
        Permutation(v)
    }

    /// The simple transposition `s_i`.
    pub fn simple(i: u32) -> Self {
        assert!(i >= 1);
        Self::transposition(i, i + 1)
    }

    /// The transposition exchanging `r` and `s`.
    pub fn transposition(r: u32, s: u32) -> Self {
        assert!(r >= 1 && r != s);
        let m = r.max(s);
        let mut v: Vec<u32> = (1..=m).collect();
        v.swap(r as usize - 1, s as usize - 1);
        Self::trimmed(v)
    }

    /// The product `s_{i_1} s_{i_2} ...` of simple transpositions.
    pub fn from_word(word: &[u32]) -> Self {
        word.iter().fold(Permutation::identity(), |w, &i| w.mul_simple_right(i))
    }

    /// The longest element of `S_n`.
    pub fn longest(n: usize) -> Self {
        Self::trimmed((1..=n as u32).rev().collect())
    }

    /// The cycle `c_{i,p} = s_{p+1-i} ... s_{p-1} s_p`.
    pub fn cycle(i: u32, p: u32) -> Self {
        assert!(1 <= i && i <= p);
        let word: Vec<u32> = (p + 1 - i..=p).collect();
        Self::from_word(&word)
    }

    pub fn one_line(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// The smallest `n >= 1` with `w` in `S_n`.
    pub fn min_n(&self) -> usize {
        self.0.len().max(1)
    }

    /// One-line notation padded with fixed points to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        for i in v.len()..n {
            v.push(i as u32 + 1);
        }
        v
    }

    /// `w(i)`.
    pub fn apply(&self, i: u32) -> u32 {
        self.0.get(i as usize - 1).copied().unwrap_or(i)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation(inv)
    }

    /// The composition `self * other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        let m = self.0.len().max(other.0.len());
        Self::trimmed((1..=m as u32).map(|i| self.apply(other.apply(i))).collect())
    }

    /// `w s_i`: swaps the entries in positions `i` and `i + 1`.
    pub fn mul_simple_right(&self, i: u32) -> Self {
        self.swap_positions(i, i + 1)
    }

    /// `s_i w`: swaps the values `i` and `i + 1`.
    pub fn mul_simple_left(&self, i: u32) -> Self {
        let mut v = self.padded(i as usize + 1);
        for x in v.iter_mut() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
        Self::trimmed(v)
    }

    fn swap_positions(&self, r: u32, s: u32) -> Self {
        let mut v = self.padded(r.max(s) as usize);
        v.swap(r as usize - 1, s as usize - 1);
        Self::trimmed(v)
    }

    /// `w s_alpha` for `alpha = alpha_{rs}`: swaps positions `r` and `s`.
    pub fn reflect(&self, alpha: Root) -> Self {
        self.swap_positions(alpha.r, alpha.s)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Lehmer code `c_i = #{j > i : w(j) < w(i)}`, trailing zeros removed.
    pub fn code(&self) -> Vec<u32> {
        let v = &self.0;
        let mut c: Vec<u32> = (0..v.len())
            .map(|i| v[i + 1..].iter().filter(|&&x| x < v[i]).count() as u32)
            .collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        c
    }

    /// The unique permutation with the given Lehmer code.
    pub fn from_code(code: &[u32]) -> Self {
        let m = code
            .iter()
            .enumerate()
            .map(|(i, &c)| i + 1 + c as usize)
            .max()
            .unwrap_or(0)
            .max(code.len());
        let mut available: Vec<u32> = (1..=m as u32).collect();
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let c = code.get(i).copied().unwrap_or(0) as usize;
            out.push(available.remove(c));
        }
        Self::trimmed(out)
    }

    /// `i` with `w(i) > w(i+1)`.
    pub fn right_descents(&self) -> Vec<u32> {
        (1..self.0.len() as u32).filter(|&i| self.apply(i) > self.apply(i + 1)).collect()
    }

    pub fn has_right_descent(&self, i: u32) -> bool {
        self.apply(i) > self.apply(i + 1)
    }

    /// `i` with `l(s_i w) < l(w)`, i.e. `i + 1` appears before `i`.
    pub fn has_left_descent(&self, i: u32) -> bool {
        let inv = self.inverse();
        inv.apply(i) > inv.apply(i + 1)
    }

    pub fn left_descents(&self) -> Vec<u32> {
        let inv = self.inverse();
        (1..self.0.len() as u32).filter(|&i| inv.apply(i) > inv.apply(i + 1)).collect()
    }

    /// Lexicographically smallest reduced word `[i_1, .., i_l]` with
    /// `w = s_{i_1} ... s_{i_l}`.
    pub fn reduced_word(&self) -> Vec<u32> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while let Some(&i) = w.left_descents().first() {
            word.push(i);
            w = w.mul_simple_left(i);
        }
        word
    }

    /// Every element of `S_n`, in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut v: Vec<u32> = (1..=n as u32).collect();
        let mut out = vec![Self::trimmed(v.clone())];
        loop {
            let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
                return out;
            };
            let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
            v.swap(i - 1, j);
            v[i..].reverse();
            out.push(Self::trimmed(v.clone()));
        }
    }

    pub fn in_s_n(&self, n: usize) -> bool {
        self.0.len() <= n
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.padded(self.min_n());
        write!(f, "[")?;
        for (k, x) in v.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int_list(s: &str) -> Option<Vec<u32>> {
    let t = s.trim();
    let t = t.strip_prefix('[').map(|r| r.strip_suffix(']')).unwrap_or(Some(t))?;
    if t.trim().is_empty() {
        return Some(Vec::new());
    }
    t.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().ok())
        .collect()
}

impl FromStr for Permutation {
    type Err = WeylError;

    /// Accepts `[3,1,2]`, `3,1,2` or `3 1 2`; `[]` and `[1]` are the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v = parse_int_list(s).ok_or_else(|| WeylError::NotAPermutation(s.to_string()))?;
        Permutation::new(v)
    }
}

/// Bruhat order by comparing rank matrices.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> bool {
    let n = u.0.len().max(w.0.len());
    if u.length() > w.length() {
        return false;
    }
    let (uv, wv) = (u.padded(n), w.padded(n));
    for j in 1..=n as u32 {
        let (mut cu, mut cw) = (0, 0);
        for i in 0..n {
            if uv[i] >= j {
                cu += 1;
            }
            if wv[i] >= j {
                cw += 1;
            }
            if cu > cw {
                return false;
            }
        }
    }
    true
}

/// Left weak order: `l(w v^-1) + l(v) = l(w)`.
pub fn left_weak_leq(v: &Permutation, w: &Permutation) -> bool {
    w.compose(&v.inverse()).length() + v.length() == w.length()
}

/// All `v` with `v <= w` in left weak order, found by repeatedly removing
/// left descents.
pub fn left_weak_ideal(w: &Permutation) -> Vec<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut stack = vec![w.clone()];
    seen.insert(w.clone());
    while let Some(v) = stack.pop() {
        for i in v.left_descents() {
            let u = v.mul_simple_left(i);
            if seen.insert(u.clone()) {
                stack.push(u);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
    out
}

/// The positive root `alpha_{rs} = a_r - a_s`, `r < s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub r: u32,
    pub s: u32,
}

impl Root {
    pub fn new(r: u32, s: u32) -> Self {
        assert!(1 <= r && r < s, "root needs 1 <= r < s, got ({r}, {s})");
        Root { r, s }
    }

    /// `<alpha^vee, omega_i>`.
    pub fn pair_omega(&self, i: u32) -> i64 {
        i64::from(self.r <= i && i < self.s)
    }

    /// `<alpha^vee, 2 rho>` with `rho = (0, -1, -2, ...)`.
    pub fn pair_two_rho(&self) -> i64 {
        2 * (self.s - self.r) as i64
    }

    pub fn coroot(&self) -> CorootVector {
        CorootVector((self.r..self.s).map(|t| (t, 1)).collect())
    }

    /// `q_{alpha^vee} = q_r q_{r+1} ... q_{s-1}`.
    pub fn q_monomial(&self) -> Polynomial {
        self.coroot().q_monomial()
    }

    pub fn is_simple(&self) -> bool {
        self.s == self.r + 1
    }

    /// True if `w s_alpha` covers `w` in Bruhat order.
    pub fn is_cover_of(&self, w: &Permutation) -> bool {
        let (wr, ws) = (w.apply(self.r), w.apply(self.s));
        wr < ws
            && !(self.r + 1..self.s).any(|k| {
                let wk = w.apply(k);
                wr < wk && wk < ws
            })
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha_{},{}", self.r, self.s)
    }
}

/// A coroot-lattice vector `sum_i k_i alpha_i^vee`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CorootVector(pub BTreeMap<u32, i64>);

impl CorootVector {
    pub fn coefficient(&self, i: u32) -> i64 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    /// `q^beta = prod q_i^{k_i}`; all coefficients must be nonnegative.
    pub fn q_monomial(&self) -> Polynomial {
        let pairs = self.0.iter().filter(|p| *p.1 != 0).map(|(&i, &k)| {
            let e = u32::try_from(k).expect("q-monomial needs a nonnegative coroot");
            (Variable::q(i), e)
        });
        Polynomial::monomial(Monomial::from_pairs(pairs))
    }
}

/// The parabolic subgroup given by a composition `(n_1, .., n_k)` of `n`.
///
/// Positions beyond `n` behave as blocks of size one, which is how the
/// infinite composition `(n_1, .., n_k, 1, 1, ..)` is represented.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicContext {
    composition: Vec<u32>,
    partial_sums: Vec<u32>,
}

impl ParabolicContext {
    pub fn new(composition: Vec<u32>) -> Result<Self, WeylError> {
        if composition.contains(&0) {
            return Err(WeylError::InvalidComposition(format!("{composition:?} has a zero part")));
        }
        let mut partial_sums = vec![0];
        for &c in &composition {
            partial_sums.push(partial_sums.last().unwrap() + c);
        }
        Ok(ParabolicContext { composition, partial_sums })
    }

    /// The composition `(1, .., 1)` of `n`, giving the full flag variety.
    pub fn full_flag(n: usize) -> Self {
        Self::new(vec![1; n]).expect("ones form a composition")
    }

    pub fn composition(&self) -> &[u32] {
        &self.composition
    }

    /// Number of blocks `k`.
    pub fn k(&self) -> usize {
        self.composition.len()
    }

    /// Total size `n = N_k`.
    pub fn n(&self) -> usize {
        *self.partial_sums.last().unwrap() as usize
    }

    /// Block size `n_j` (1-based); blocks past `k` have size one.
    pub fn block_size(&self, j: usize) -> u32 {
        assert!(j >= 1);
        self.composition.get(j - 1).copied().unwrap_or(1)
    }

    /// `N_j = n_1 + .. + n_j`, continued by the implicit size-one blocks.
    pub fn partial_sum(&self, j: usize) -> u32 {
        if j <= self.k() {
            self.partial_sums[j]
        } else {
            self.n() as u32 + (j - self.k()) as u32
        }
    }

    /// The nodes `N_1, .., N_{k-1}`.
    pub fn nodes(&self) -> Vec<u32> {
        self.partial_sums[1..self.k().max(1)].to_vec()
    }

    pub fn is_node(&self, i: u32) -> bool {
        self.partial_sums[1..self.k().max(1)].contains(&i)
    }

    /// `deg q_j = n_j + n_{j+1}`.
    pub fn q_degree(&self, j: u32) -> u32 {
        self.block_size(j as usize) + self.block_size(j as usize + 1)
    }

    /// Index `j` of the block containing position `t`.
    pub fn block_of(&self, t: u32) -> usize {
        if t as usize > self.n() {
            return self.k() + (t as usize - self.n());
        }
        self.partial_sums.iter().position(|&s| s >= t).expect("position within n")
    }

    /// `2 rho_P(t)`: the Levi half sum is centred within each block, so
    /// position `t` at offset `o` of a block of size `m` gets `m - 1 - 2o`.
    pub fn two_rho_p(&self, t: u32) -> i64 {
        let j = self.block_of(t);
        let offset = (t - self.partial_sum(j - 1) - 1) as i64;
        self.block_size(j) as i64 - 1 - 2 * offset
    }

    /// `<alpha^vee, 2 (rho - rho_P)>`, equal to the degree of
    /// `q_{eta_P(alpha^vee)}`.
    pub fn pair_two_rho_minus_rho_p(&self, alpha: Root) -> i64 {
        alpha.pair_two_rho() - (self.two_rho_p(alpha.r) - self.two_rho_p(alpha.s))
    }

    /// True if `alpha` is a root of the Levi subgroup.
    pub fn root_in_levi(&self, alpha: Root) -> bool {
        self.block_of(alpha.r) == self.block_of(alpha.s)
    }

    /// `q_{eta_P(alpha^vee)} = prod_{j : r <= N_j < s} q_j`.
    pub fn eta_p(&self, alpha: Root) -> Polynomial {
        let mut v = CorootVector::default();
        for j in 1.. {
            let nj = self.partial_sum(j);
            if nj >= alpha.s {
                break;
            }
            if nj >= alpha.r {
                v.0.insert(j as u32, 1);
            }
        }
        v.q_monomial()
    }

    /// True if `w` is increasing on each block of positions (a minimal
    /// coset representative for the infinite composition).
    pub fn is_minimal(&self, w: &Permutation) -> bool {
        (1..=self.k()).all(|j| {
            let lo = self.partial_sum(j - 1) + 1;
            let hi = self.partial_sum(j);
            (lo..hi).all(|t| w.apply(t) < w.apply(t + 1))
        })
    }

    /// `w` in `W^P` and inside `S_n`.
    pub fn contains_minimal(&self, w: &Permutation) -> bool {
        w.in_s_n(self.n()) && self.is_minimal(w)
    }

    /// True if `w` is in the Levi subgroup `W_P`.
    pub fn in_levi(&self, w: &Permutation) -> bool {
        w.in_s_n(self.n()) && (1..=w.one_line().len() as u32).all(|t| self.block_of(w.apply(t)) == self.block_of(t))
    }

    /// `pi_P(w)`: sort the values of `w` within each block of positions.
    pub fn project(&self, w: &Permutation) -> Permutation {
        let mut v = w.padded(self.n().max(w.one_line().len()));
        for j in 1..=self.k() {
            let lo = self.partial_sum(j - 1) as usize;
            let hi = self.partial_sum(j) as usize;
            v[lo..hi].sort_unstable();
        }
        Permutation::trimmed(v)
    }

    /// `w = w^P w_P` with `w^P` minimal and `w_P` in `W_P`.
    pub fn decompose(&self, w: &Permutation) -> Result<(Permutation, Permutation), WeylError> {
        if !w.in_s_n(self.n()) {
            return Err(WeylError::OutOfRange { w: w.clone(), n: self.n() });
        }
        let min = self.project(w);
        let levi = min.inverse().compose(w);
        Ok((min, levi))
    }

    /// The longest element `w_{0,P}` of `W_P`.
    pub fn longest_levi(&self) -> Permutation {
        let mut v = Vec::with_capacity(self.n());
        for j in 1..=self.k() {
            let lo = self.partial_sum(j - 1);
            let hi = self.partial_sum(j);
            v.extend((lo + 1..=hi).rev());
        }
        Permutation::trimmed(v)
    }

    /// The longest minimal coset representative `w_0^P`.
    pub fn longest_minimal(&self) -> Permutation {
        self.project(&Permutation::longest(self.n()))
    }

    /// All of `W^P` inside `S_n`.
    pub fn minimal_elements(&self) -> Vec<Permutation> {
        Permutation::all(self.n()).into_iter().filter(|w| self.is_minimal(w)).collect()
    }

    /// The context with the last block removed.
    pub fn without_last_block(&self) -> ParabolicContext {
        let mut c = self.composition.clone();
        c.pop();
        ParabolicContext::new(c).expect("prefix of a composition")
    }

    /// The context with blocks appended.
    pub fn extended(&self, extra: &[u32]) -> Result<ParabolicContext, WeylError> {
        let mut c = self.composition.clone();
        c.extend_from_slice(extra);
        ParabolicContext::new(c)
    }

    /// Every composition of `n`.
    pub fn all_compositions(n: usize) -> Vec<ParabolicContext> {
        fn go(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<ParabolicContext>) {
            if rest == 0 {
                out.push(ParabolicContext::new(cur.clone()).unwrap());
                return;
            }
            for first in 1..=rest {
                cur.push(first);
                go(rest - first, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n as u32, &mut Vec::new(), &mut out);
        out
    }

    /// The set of simple reflections generating `W_P`.
    pub fn levi_generators(&self) -> BTreeSet<u32> {
        (1..self.n() as u32).filter(|&i| !self.is_node(i)).collect()
    }
}

impl fmt::Display for ParabolicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.composition.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for ParabolicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for ParabolicContext {
    type Err = WeylError;

    /// Accepts `2,1,3` (optionally bracketed).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts: Option<Vec<u32>> = t.split(',').map(|p| p.trim().parse().ok()).collect();
        match parts {
            Some(v) if !v.is_empty() => ParabolicContext::new(v),
            _ => Err(WeylError::InvalidComposition(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn length_examples() {
        assert_eq!(Permutation::identity().length(), 0);
        assert_eq!(p("[3,1,2]").length(), 2);
        assert_eq!(p("[3,2,1]").length(), 3);
    }

    #[test]
    fn code_examples() {
        assert!(Permutation::identity().code().is_empty());
        assert_eq!(p("[1,3,2]").code(), vec![0, 1]);
        assert_eq!(p("[3,1,2]").code(), vec![2]);
        assert_eq!(Permutation::from_code(&[]), Permutation::identity());
        assert_eq!(Permutation::from_code(&[1]), p("[2,1]"));
        assert_eq!(Permutation::from_code(&[2]), p("[3,1,2]"));
    }

    #[test]
    fn reduced_word_examples() {
        assert!(Permutation::identity().reduced_word().is_empty());
        assert_eq!(p("[2,1]").reduced_word(), vec![1]);
        assert_eq!(p("[3,1,2]").reduced_word(), vec![2, 1]);
        assert_eq!(Permutation::from_word(&[2, 1]), p("[3,1,2]"));
    }

    #[test]
    fn order_examples() {
        let w = p("[3,1,2]");
        assert!(left_weak_leq(&Permutation::identity(), &w));
        assert!(left_weak_leq(&p("[2,1]"), &w));
        assert!(!left_weak_leq(&p("[1,3,2]"), &w));
        assert!(bruhat_leq(&Permutation::identity(), &w));
        assert!(bruhat_leq(&p("[2,1]"), &w));
        assert!(!bruhat_leq(&p("[2,1]"), &p("[1,3,2]")));
    }

    #[test]
    fn root_pairings() {
        let a13 = Root::new(1, 3);
        assert_eq!(a13.pair_omega(1), 1);
        assert_eq!(Root::new(1, 2).pair_two_rho(), 2);
        assert_eq!(a13.q_monomial(), Polynomial::q(1) * Polynomial::q(2));
        assert_eq!(p("[2,1]").reflect(Root::new(1, 3)), p("[3,1,2]"));
    }

    #[test]
    fn parabolic_decomposition_examples() {
        let ctx: ParabolicContext = "2,1,3".parse().unwrap();
        let (min, levi) = ctx.decompose(&Permutation::longest(6)).unwrap();
        assert_eq!(min, p("[5,6,4,1,2,3]"));
        assert_eq!(levi, p("[2,1,3,6,5,4]"));
        assert_eq!(ctx.longest_levi(), levi);
        assert_eq!(ctx.longest_minimal(), min);
        let w = p("[1,3,2,4]");
        assert!(ctx.is_minimal(&w));
        assert_eq!(ctx.decompose(&w).unwrap(), (w.clone(), Permutation::identity()));
        assert_eq!(ctx.decompose(&Permutation::simple(1)).unwrap(), (Permutation::identity(), Permutation::simple(1)));
        assert!(ctx.decompose(&p("[1,2,3,4,5,7,6]")).is_err());
    }

    #[test]
    fn eta_examples() {
        let ctx: ParabolicContext = "2,2".parse().unwrap();
        assert_eq!(ctx.eta_p(Root::new(1, 2)), Polynomial::one());
        assert_eq!(ctx.eta_p(Root::new(1, 4)), Polynomial::q(1));
        let ones = ParabolicContext::full_flag(3);
        assert_eq!(ones.eta_p(Root::new(1, 3)), Polynomial::q(1) * Polynomial::q(2));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("[1]"), Permutation::identity());
        assert_eq!(p("[]"), Permutation::identity());
        assert_eq!(Permutation::identity().to_string(), "[1]");
        assert_eq!(p("3, 1, 2").to_string(), "[3,1,2]");
        assert_eq!(p("[2,1,3]").to_string(), "[2,1]");
        assert!("[1,1]".parse::<Permutation>().is_err());
        assert!("[0]".parse::<Permutation>().is_err());
        assert!("[a]".parse::<Permutation>().is_err());
        assert_eq!("2,1,3".parse::<ParabolicContext>().unwrap().to_string(), "2,1,3");
        assert!("2,0".parse::<ParabolicContext>().is_err());
        assert!("".parse::<ParabolicContext>().is_err());
    }

    #[test]
    fn cycles() {
        assert_eq!(Permutation::cycle(2, 2), p("[2,3,1]"));
        assert_eq!(Permutation::cycle(1, 3), Permutation::simple(3));
    }

    #[test]
    fn context_data() {
        let ctx: ParabolicContext = "2,1,3".parse().unwrap();
        assert_eq!(ctx.nodes(), vec![2, 3]);
        assert_eq!(ctx.q_degree(1), 3);
        assert_eq!(ctx.q_degree(2), 4);
        assert_eq!(ctx.two_rho_p(4), 2);
        assert_eq!(ctx.two_rho_p(5), 0);
        assert_eq!(ctx.two_rho_p(7), 0);
        assert_eq!(ctx.levi_generators().into_iter().collect::<Vec<_>>(), vec![1, 4, 5]);
        assert_eq!(ParabolicContext::all_compositions(4).len(), 8);
    }

    #[test]
    fn rho_pairing_is_q_degree() {
        for n in 1..=5 {
            for ctx in ParabolicContext::all_compositions(n) {
                for r in 1..=n as u32 + 2 {
                    for s in r + 1..=n as u32 + 3 {
                        let alpha = Root::new(r, s);
                        if ctx.root_in_levi(alpha) {
                            continue;
                        }
                        let deg: u32 = (1..)
                            .map(|j| (j, ctx.partial_sum(j)))
                            .take_while(|&(_, nj)| nj < s)
                            .filter(|&(_, nj)| nj >= r)
                            .map(|(j, _)| ctx.q_degree(j as u32))
                            .sum();
                        assert_eq!(ctx.pair_two_rho_minus_rho_p(alpha), deg as i64, "{ctx} {alpha:?}");
                    }
                }
            }
        }
    }
}

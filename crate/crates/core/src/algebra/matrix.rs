use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use super::poly::Polynomial;

/// A square matrix with polynomial entries. Missing entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    size: usize,
    entries: BTreeMap<(usize, usize), Polynomial>,
}

impl SymbolicMatrix {
    pub fn zero(size: usize) -> Self {
        SymbolicMatrix { size, entries: BTreeMap::new() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Sets entry `(row, col)`, 1-based.
    pub fn set(&mut self, row: usize, col: usize, value: Polynomial) {
        assert!(
            (1..=self.size).contains(&row) && (1..=self.size).contains(&col),
            "entry ({row}, {col}) outside a {0}x{0} matrix",
            self.size
        );
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Polynomial {
        self.entries.get(&(row, col)).cloned().unwrap_or_default()
    }

    /// The upper-left `m x m` block.
    pub fn leading_block(&self, m: usize) -> SymbolicMatrix {
        assert!(m <= self.size);
        SymbolicMatrix {
            size: m,
            entries: self
                .entries
                .iter()
                .filter(|((r, c), _)| *r <= m && *c <= m)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// The tridiagonal matrix with `x_i` on the diagonal, `-1` above it and
    /// `q_i` at `(i+1, i)`.
    pub fn quantum_tridiagonal(n: usize) -> SymbolicMatrix {
        let mut m = SymbolicMatrix::zero(n);
        for i in 1..=n {
            m.set(i, i, Polynomial::x(i as u32));
            if i < n {
                m.set(i, i + 1, Polynomial::constant(-1));
                m.set(i + 1, i, Polynomial::q(i as u32));
            }
        }
        m
    }

    /// Coefficients `[E_0, .., E_n]` with `det(M - t) = sum_j (-t)^(n-j) E_j`.
    ///
    /// `E_j` is the sum of the principal `j x j` minors; each minor is
    /// expanded row by row over the sparse entries, with subsets of used
    /// columns as the dynamic-programming state.
    pub fn char_poly_coeffs(&self) -> Vec<Polynomial> {
        let n = self.size;
        assert!(n <= 30, "matrix too large for subset expansion");
        let mut rows: Vec<Vec<(usize, &Polynomial)>> = vec![Vec::new(); n];
        for ((r, c), v) in &self.entries {
            rows[r - 1].push((c - 1, v));
        }
        // state: columns used so far -> coefficients indexed by the power of t
        let mut states: FxHashMap<u32, Vec<Polynomial>> = FxHashMap::default();
        states.insert(0, vec![Polynomial::one()]);
        for (r, row) in rows.iter().enumerate() {
            let mut next: FxHashMap<u32, Vec<Polynomial>> = FxHashMap::default();
            for (mask, by_t) in states {
                let mut push = |col: usize, factor: &Polynomial, shift: usize| {
                    let bit = 1u32 << col;
                    if mask & bit != 0 {
                        return;
                    }
                    let above = (mask >> col >> 1).count_ones();
                    let negate = above % 2 == 1;
                    let slot = next.entry(mask | bit).or_default();
                    for (d, p) in by_t.iter().enumerate() {
                        if p.is_zero() {
                            continue;
                        }
                        let mut term = p * factor;
                        if negate {
                            term = -term;
                        }
                        let idx = d + shift;
                        if slot.len() <= idx {
                            slot.resize(idx + 1, Polynomial::zero());
                        }
                        slot[idx] += term;
                    }
                };
                for &(c, v) in row {
                    push(c, v, 0);
                }
                push(r, &Polynomial::constant(-1), 1);
            }
            states = next;
        }
        let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
        let by_t = states.remove(&full).unwrap_or_default();
        (0..=n)
            .map(|j| {
                // coefficient of t^(n-j) equals (-1)^(n-j) E_j
                let p = by_t.get(n - j).cloned().unwrap_or_default();
                if (n - j) % 2 == 1 {
                    -p
                } else {
                    p
                }
            })
            .collect()
    }

    /// `det(M - t Id)` evaluated at a polynomial `t`.
    pub fn det_shifted(&self, t: &Polynomial) -> Polynomial {
        let coeffs = self.char_poly_coeffs();
        let n = self.size;
        let minus_t = -t;
        let mut power = Polynomial::one();
        let mut out = Polynomial::zero();
        for j in (0..=n).rev() {
            out += &coeffs[j] * &power;
            power = &power * &minus_t;
        }
        out
    }

    pub fn determinant(&self) -> Polynomial {
        self.char_poly_coeffs().pop().unwrap_or_else(Polynomial::one)
    }
}

/// `det(C_n - t)` expanded through the three-term recurrence for the
/// coefficients; independent of [`SymbolicMatrix::char_poly_coeffs`].
pub fn quantum_elementary_by_recurrence(n: usize) -> Vec<Vec<Polynomial>> {
    // rows[p][i] = E_i^p
    let mut rows: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one()]];
    for p in 0..n {
        let mut row = vec![Polynomial::zero(); p + 2];
        for (i, slot) in row.iter_mut().enumerate() {
            let mut v = rows[p].get(i).cloned().unwrap_or_default();
            if i >= 1 {
                if let Some(prev) = rows[p].get(i - 1) {
                    v += prev * &Polynomial::x(p as u32 + 1);
                }
            }
            if i >= 2 && p >= 1 {
                if let Some(prev) = rows[p - 1].get(i - 2) {
                    v += prev * &Polynomial::q(p as u32);
                }
            }
            *slot = v;
        }
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{elementary_symmetric, full_flag_q_degree, variables, Family};

    #[test]
    fn tridiagonal_small_cases() {
        let c1 = SymbolicMatrix::quantum_tridiagonal(1).char_poly_coeffs();
        assert_eq!(c1, vec![Polynomial::one(), Polynomial::x(1)]);
        let c2 = SymbolicMatrix::quantum_tridiagonal(2).char_poly_coeffs();
        // (x1 - t)(x2 - t) + q1
        assert_eq!(
            c2,
            vec![
                Polynomial::one(),
                Polynomial::x(1) + Polynomial::x(2),
                Polynomial::x(1) * Polynomial::x(2) + Polynomial::q(1),
            ]
        );
    }

    #[test]
    fn det_shifted_matches_hand_expansion() {
        let m = SymbolicMatrix::quantum_tridiagonal(2);
        let t = Polynomial::a(3);
        let expected = (Polynomial::x(1) - &t) * (Polynomial::x(2) - &t) + Polynomial::q(1);
        assert_eq!(m.det_shifted(&t), expected);
    }

    #[test]
    fn subset_expansion_agrees_with_recurrence() {
        let rec = quantum_elementary_by_recurrence(6);
        for (n, expected) in rec.iter().enumerate().skip(1) {
            let coeffs = SymbolicMatrix::quantum_tridiagonal(n).char_poly_coeffs();
            assert_eq!(&coeffs, expected, "n = {n}");
        }
    }

    #[test]
    fn quantum_elementary_are_homogeneous_and_classical_at_q_zero() {
        for n in 1..=6 {
            let coeffs = SymbolicMatrix::quantum_tridiagonal(n).char_poly_coeffs();
            let xs = variables(Family::X, n as u32);
            for (j, e) in coeffs.iter().enumerate() {
                assert!(e.graded_degree(full_flag_q_degree).is(j as u32));
                let classical = e.set_zero(|v| v.family == Family::Q);
                assert_eq!(classical, elementary_symmetric(j, &xs));
            }
        }
    }

    #[test]
    fn dense_determinant() {
        // [[1, 2], [3, 4]] has determinant -2
        let mut m = SymbolicMatrix::zero(2);
        m.set(1, 1, Polynomial::constant(1));
        m.set(1, 2, Polynomial::constant(2));
        m.set(2, 1, Polynomial::constant(3));
        m.set(2, 2, Polynomial::constant(4));
        assert_eq!(m.determinant(), Polynomial::constant(-2));
        assert_eq!(m.char_poly_coeffs()[1], Polynomial::constant(5));
    }
}

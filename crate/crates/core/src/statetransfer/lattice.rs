//! Saturated integer kernels of rational matrices.
//!
//! For a matrix `M` with rows `m_1, ..., m_r`, the relation lattice is
//! `{ℓ ∈ Z^r : Σ ℓ_i m_i = 0}`. It is computed by unimodular row reduction of
//! `[M | I]`: rows whose `M` part vanishes carry a basis of every integer
//! relation, not just of some sublattice.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactfield::Rat;

/// Basis of all integer vectors `ℓ` with `Σ_i ℓ_i·row_i = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl RelationLattice {
    /// Length of each lattice vector (the number of matrix rows).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `gcd` of a linear functional over the basis; the functional's image
    /// on the lattice is exactly `g·Z`.
    pub fn image_gcd(&self, weights: impl Fn(usize) -> i64) -> BigInt {
        self.basis
            .iter()
            .map(|b| functional(b, &weights))
            .fold(BigInt::zero(), |g, s| g.gcd(&s))
    }

    /// A lattice vector on which `weights` evaluates to exactly `target_gcd`
    /// (the value of [`image_gcd`](Self::image_gcd)), built by extended
    /// Euclid over the basis.
    pub fn combination_hitting_gcd(&self, weights: impl Fn(usize) -> i64) -> Option<Vec<BigInt>> {
        let mut acc: Option<(BigInt, Vec<BigInt>)> = None;
        for b in &self.basis {
            let s = functional(b, &weights);
            acc = Some(match acc {
                None => (s, b.clone()),
                Some((g, v)) => {
                    let e = g.extended_gcd(&s);
                    let combined = v
                        .iter()
                        .zip(b)
                        .map(|(x, y)| &e.x * x + &e.y * y)
                        .collect();
                    (e.gcd, combined)
                }
            });
        }
        let (g, mut v) = acc?;
        if g.is_zero() {
            return None;
        }
        if g.is_negative() {
            v.iter_mut().for_each(|x| *x = -x.clone());
        }
        Some(v)
    }
}

fn functional(v: &[BigInt], weights: impl Fn(usize) -> i64) -> BigInt {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| x * BigInt::from(weights(i)))
        .sum()
}

/// Saturated integer kernel of the row space relation `Σ ℓ_i·rows[i] = 0`.
///
/// Identical rows are merged first: for a group of equal rows the
/// differences `e_j - e_first` are relations, and the remaining relations are
/// lifts of relations among distinct rows onto the first member of each
/// group. Both parts together generate the full lattice.
pub fn integer_kernel(rows: &[Vec<Rat>]) -> RelationLattice {
    let dim = rows.len();
    let mut group_of: HashMap<&[Rat], usize> = HashMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let g = *group_of.entry(row.as_slice()).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        members[g].push(i);
    }

    let mut basis = Vec::new();
    for group in &members {
        for &j in &group[1..] {
            let mut v = vec![BigInt::zero(); dim];
            v[j] = BigInt::one();
            v[group[0]] = -BigInt::one();
            basis.push(v);
        }
    }

    let distinct: Vec<&Vec<Rat>> = members.iter().map(|g| &rows[g[0]]).collect();
    for relation in distinct_kernel(&distinct) {
        let mut v = vec![BigInt::zero(); dim];
        for (g, c) in relation.into_iter().enumerate() {
            v[members[g][0]] = c;
        }
        basis.push(v);
    }
    RelationLattice { dim, basis }
}

fn distinct_kernel(rows: &[&Vec<Rat>]) -> Vec<Vec<BigInt>> {
    let r = rows.len();
    let cols = rows.iter().map(|row| row.len()).max().unwrap_or(0);

    // clear denominators column by column
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); cols]; r];
    for c in 0..cols {
        let lcm = rows
            .iter()
            .filter_map(|row| row.get(c))
            .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        for (i, row) in rows.iter().enumerate() {
            if let Some(q) = row.get(c) {
                m[i][c] = q.numer() * (&lcm / q.denom());
            }
        }
    }
    let mut t: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            let mut e = vec![BigInt::zero(); r];
            e[i] = BigInt::one();
            e
        })
        .collect();

    let mut pivot = 0;
    for c in 0..cols {
        if pivot == r {
            break;
        }
        loop {
            let best = (pivot..r)
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let Some(best) = best else { break };
            m.swap(pivot, best);
            t.swap(pivot, best);
            let mut clean = true;
            for i in pivot + 1..r {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = &m[i][c] / &m[pivot][c];
                if !q.is_zero() {
                    let (head, tail) = m.split_at_mut(i);
                    sub_scaled(&mut tail[0], &head[pivot], &q);
                    let (head, tail) = t.split_at_mut(i);
                    sub_scaled(&mut tail[0], &head[pivot], &q);
                }
                if !m[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                pivot += 1;
                break;
            }
        }
    }
    t.split_off(pivot)
}

fn sub_scaled(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    for (x, y) in target.iter_mut().zip(source) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

//! Point and plane censuses over finite fields.
//!
//! Subspaces are enumerated through reduced-row-echelon canonical bases,
//! one representative per subspace, so raw counts are trustworthy: the
//! number of visits for fixed pivot columns is q^(#free entries) and the
//! grand total is the Gaussian binomial.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::ops::ControlFlow;

use super::field::FiniteField;
use super::FqPencil;
use crate::{Error, Result};

/// Number of k-dimensional subspaces of an n-dimensional space over F_q.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - BigUint::one();
        den *= q.pow((i + 1) as u32) - BigUint::one();
    }
    num / den
}

/// Default ceiling on enumeration visits; override with PENCILLAB_CEILING.
pub const DEFAULT_CEILING: u128 = 100_000_000;

pub fn enumeration_ceiling() -> u128 {
    std::env::var("PENCILLAB_CEILING")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_CEILING)
}

/// Visits every point of P^(n-1) over the field exactly once (first nonzero
/// coordinate normalized to 1).
pub fn for_each_projective_point<F: FiniteField, V>(field: &F, n: usize, mut visit: V)
where
    V: FnMut(&[F::Elem]),
{
    let elems = field.elements();
    let mut coords = vec![field.zero(); n];
    for pivot in 0..n {
        for c in coords.iter_mut().take(pivot) {
            *c = field.zero();
        }
        coords[pivot] = field.one();
        let free = n - pivot - 1;
        let mut idx = vec![0usize; free];
        loop {
            for (slot, &i) in idx.iter().enumerate() {
                coords[pivot + 1 + slot] = elems[i];
            }
            visit(&coords);
            // odometer
            let mut carry = true;
            for slot in (0..free).rev() {
                idx[slot] += 1;
                if idx[slot] == elems.len() {
                    idx[slot] = 0;
                } else {
                    carry = false;
                    break;
                }
            }
            if carry {
                break;
            }
        }
    }
}

/// Number of points of P^(n-1) over F_q.
pub fn projective_point_count(n: usize, q: u64) -> u128 {
    let mut total = 0u128;
    let mut pow = 1u128;
    for _ in 0..n {
        total += pow;
        pow *= q as u128;
    }
    total
}

/// Value of the quadratic form with Gram matrix `g` (entries reduced) on a
/// vector over the field.
pub fn eval_quadric<F: FiniteField>(field: &F, g: &[Vec<F::Elem>], v: &[F::Elem]) -> F::Elem {
    let n = v.len();
    let mut acc = field.zero();
    for i in 0..n {
        if field.is_zero(v[i]) {
            continue;
        }
        let mut row = field.zero();
        for j in 0..n {
            if !field.is_zero(v[j]) {
                row = field.add(row, field.mul(g[i][j], v[j]));
            }
        }
        acc = field.add(acc, field.mul(v[i], row));
    }
    acc
}

/// Lifts a matrix of F_p entries into an extension via `embed`.
pub fn lift_matrix<F: FiniteField>(
    _field: &F,
    embed: impl Fn(u64) -> F::Elem,
    m: &[Vec<u64>],
) -> Vec<Vec<F::Elem>> {
    m.iter()
        .map(|row| row.iter().map(|&x| embed(x)).collect())
        .collect()
}

/// |X(F)| for the base locus of a reduced pencil, by direct enumeration.
pub fn count_points_over<F: FiniteField>(
    field: &F,
    q0: &[Vec<F::Elem>],
    q1: &[Vec<F::Elem>],
) -> u64 {
    let n = q0.len();
    let mut count = 0u64;
    for_each_projective_point(field, n, |v| {
        if field.is_zero(eval_quadric(field, q0, v)) && field.is_zero(eval_quadric(field, q1, v)) {
            count += 1;
        }
    });
    count
}

/// |X(F_p)| for a reduced pencil.
pub fn count_points(fp: &FqPencil) -> u64 {
    let field = fp.field();
    count_points_over(&field, &fp.q0, &fp.q1)
}

/// A plane over F_p given by k row vectors (not necessarily in canonical
/// form; full rank is the caller's responsibility for random planes).
pub type FqPlane = Vec<Vec<u64>>;

/// Canonical RREF enumeration of k-dimensional subspaces of F_q^n. The
/// visitor can stop the walk early. Returns whether the walk was stopped.
pub fn for_each_rref_subspace<F, V>(field: &F, n: usize, k: usize, mut visit: V) -> bool
where
    F: FiniteField,
    V: FnMut(&[Vec<F::Elem>]) -> ControlFlow<()>,
{
    for pattern in pivot_patterns(n, k) {
        if for_each_rref_for_pattern(field, n, &pattern, &mut visit) {
            return true;
        }
    }
    false
}

/// All pivot-column patterns for RREF enumeration, used to shard work.
fn pivot_patterns(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        out.push(pivots.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < n - (k - i) {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Rank of a small matrix over the field, by destructive elimination.
pub fn rank_over<F: FiniteField>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..m.len()).find(|&r| !field.is_zero(m[r][col])) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = field.inv(m[rank][col]).expect("nonzero entry");
        for c in 0..ncols {
            m[rank][c] = field.mul(m[rank][c], inv);
        }
        for r in 0..m.len() {
            if r != rank && !field.is_zero(m[r][col]) {
                let f = m[r][col];
                for c in 0..ncols {
                    let sub = field.mul(f, m[rank][c]);
                    m[r][c] = field.sub(m[r][c], sub);
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Row basis (size = rank) of the row space of `rows`.
fn row_basis<F: FiniteField>(field: &F, rows: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let mut basis: Vec<Vec<F::Elem>> = Vec::new();
    for row in rows {
        let mut candidate: Vec<Vec<F::Elem>> = basis.clone();
        candidate.push(row.clone());
        if rank_over(field, &candidate) > basis.len() {
            basis.push(row.clone());
        }
    }
    basis
}

fn plane_on_x<F: FiniteField>(
    field: &F,
    q0: &[Vec<F::Elem>],
    q1: &[Vec<F::Elem>],
    basis: &[Vec<F::Elem>],
) -> bool {
    // B Q B^T = 0 for both forms; early exit on first nonzero entry.
    for g in [q0, q1] {
        for bi in basis {
            let gb: Vec<F::Elem> = (0..bi.len())
                .map(|c| {
                    let mut acc = field.zero();
                    for (j, &x) in bi.iter().enumerate() {
                        if !field.is_zero(x) {
                            acc = field.add(acc, field.mul(g[j][c], x));
                        }
                    }
                    acc
                })
                .collect();
            for bj in basis {
                let mut acc = field.zero();
                for (c, &y) in bj.iter().enumerate() {
                    if !field.is_zero(y) {
                        acc = field.add(acc, field.mul(gb[c], y));
                    }
                }
                if !field.is_zero(acc) {
                    return false;
                }
            }
        }
    }
    true
}

/// Census of r-planes on the base locus over F_p, partitioned against an
/// optional reference plane by intersection dimension and whether the span
/// of the pair stays on the base locus.
#[derive(Debug, Clone)]
pub struct PlaneCensus {
    pub prime: u64,
    pub r: usize,
    pub total: u64,
    /// Keyed by (projective intersection dimension, span contained in X).
    pub partition: BTreeMap<(i64, bool), u64>,
}

impl PlaneCensus {
    pub fn partition_total(&self) -> u64 {
        self.partition.values().sum()
    }

    pub fn count_where(&self, dim: i64) -> u64 {
        self.partition
            .iter()
            .filter(|((d, _), _)| *d == dim)
            .map(|(_, c)| *c)
            .sum()
    }

    /// Planes meeting the reference in dimension r-1 whose joint span
    /// leaves the base locus: the right-hand side of the reduction
    /// bijection.
    pub fn bijection_rhs(&self, r: usize) -> u64 {
        self.partition
            .iter()
            .filter(|((d, span_in), _)| *d == r as i64 - 1 && !span_in)
            .map(|(_, c)| *c)
            .sum()
    }
}

pub fn census_planes(
    fp: &FqPencil,
    r: usize,
    reference: Option<&FqPlane>,
    ceiling: u128,
) -> Result<PlaneCensus> {
    let n = fp.size();
    let k = r + 1;
    let estimate = gaussian_binomial(n, k, fp.prime);
    if estimate.to_u128().is_none_or(|e| e > ceiling) {
        return Err(Error::CeilingExceeded {
            estimate: estimate.to_u128().unwrap_or(u128::MAX),
            ceiling,
        });
    }
    let field = fp.field();
    let patterns = pivot_patterns(n, k);
    let censuses: Vec<PlaneCensus> = patterns
        .par_iter()
        .map(|pattern| {
            let mut census = PlaneCensus {
                prime: fp.prime,
                r,
                total: 0,
                partition: BTreeMap::new(),
            };
            for_each_rref_for_pattern(&field, n, pattern, |basis| {
                if plane_on_x(&field, &fp.q0, &fp.q1, basis) {
                    census.total += 1;
                    if let Some(ell) = reference {
                        let mut stacked: Vec<Vec<u64>> = ell.clone();
                        stacked.extend(basis.iter().cloned());
                        let rank = rank_over(&field, &stacked);
                        let int_dim = ell.len() as i64 + basis.len() as i64 - rank as i64 - 1;
                        let span = row_basis(&field, &stacked);
                        let span_in_x = plane_on_x(&field, &fp.q0, &fp.q1, &span);
                        *census.partition.entry((int_dim, span_in_x)).or_insert(0) += 1;
                    }
                }
                ControlFlow::<()>::Continue(())
            });
            census
        })
        .collect();
    let mut total = PlaneCensus {
        prime: fp.prime,
        r,
        total: 0,
        partition: BTreeMap::new(),
    };
    for c in censuses {
        total.total += c.total;
        for (key, v) in c.partition {
            *total.partition.entry(key).or_insert(0) += v;
        }
    }
    Ok(total)
}

/// RREF enumeration restricted to one pivot pattern.
fn for_each_rref_for_pattern<F, V>(field: &F, n: usize, pivots: &[usize], mut visit: V) -> bool
where
    F: FiniteField,
    V: FnMut(&[Vec<F::Elem>]) -> ControlFlow<()>,
{
    let elems = field.elements();
    let k = pivots.len();
    let mut free_pos: Vec<(usize, usize)> = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        for c in p + 1..n {
            if !pivots.contains(&c) {
                free_pos.push((i, c));
            }
        }
    }
    let mut basis = vec![vec![field.zero(); n]; k];
    for (i, &p) in pivots.iter().enumerate() {
        basis[i][p] = field.one();
    }
    let mut idx = vec![0usize; free_pos.len()];
    loop {
        for (slot, &(i, c)) in free_pos.iter().enumerate() {
            basis[i][c] = elems[idx[slot]];
        }
        if let ControlFlow::Break(()) = visit(&basis) {
            return true;
        }
        let mut carry = true;
        for slot in (0..idx.len()).rev() {
            idx[slot] += 1;
            if idx[slot] == elems.len() {
                idx[slot] = 0;
            } else {
                carry = false;
                break;
            }
        }
        if carry {
            return false;
        }
    }
}

/// Total number of subspaces visited by the canonical enumeration,
/// independent of the base locus. Sanity oracle for the enumerator.
pub fn count_all_subspaces(p: u64, n: usize, k: usize) -> Result<u64> {
    let field = super::field::PrimeField::new(p)?;
    let mut count = 0u64;
    for_each_rref_subspace(&field, n, k, |_| {
        count += 1;
        ControlFlow::<()>::Continue(())
    });
    Ok(count)
}

/// Searches for one r-plane on the base locus. Exhaustive (definitive)
/// when the subspace count fits under the ceiling; otherwise a seeded
/// random search that errors out if nothing is found within the budget.
pub fn find_plane(fp: &FqPencil, r: usize, seed: u64, ceiling: u128) -> Result<Option<FqPlane>> {
    let n = fp.size();
    let k = r + 1;
    let field = fp.field();
    let estimate = gaussian_binomial(n, k, fp.prime);
    if estimate.to_u128().is_some_and(|e| e <= ceiling) {
        let mut found: Option<FqPlane> = None;
        for_each_rref_subspace(&field, n, k, |basis| {
            if plane_on_x(&field, &fp.q0, &fp.q1, basis) {
                found = Some(basis.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        return Ok(found);
    }
    // Random search: a hit certifies nonemptiness; exhausting the budget
    // is inconclusive and reported as a ceiling error.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x66696e64);
    let budget = ceiling.min(20_000_000) as u64;
    for _ in 0..budget {
        let basis: Vec<Vec<u64>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(0..fp.prime)).collect())
            .collect();
        if rank_over(&field, &basis) < k {
            continue;
        }
        if plane_on_x(&field, &fp.q0, &fp.q1, &basis) {
            return Ok(Some(basis));
        }
    }
    Err(Error::CeilingExceeded {
        estimate: estimate.to_u128().unwrap_or(u128::MAX),
        ceiling,
    })
}

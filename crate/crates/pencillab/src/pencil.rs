//! Pencils of two quadrics: smoothness, linear subspaces on the base locus,
//! standard coordinates adapted to a subspace, and hyperbolic reduction.
//!
//! A pencil is the family s*Q0 + t*Q1 of quadrics in P^N. Its base locus X
//! is smooth exactly when det(s*Q0 + t*Q1) is squarefree of degree N+1.
//! Given an r-plane on X, the hyperbolic reduction is a quadric fibration
//! over P^1 of relative dimension lower by 2(r+1); each fiber loses r+1
//! hyperbolic planes of signature (1,1).

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::poly::repeated_part;
use crate::exact::{
    binary_det, is_squarefree, rat, signature_of, BinaryForm, Mat, Rat, Signature, SymMat,
};
use crate::{Error, Result};

/// A pencil of quadrics in P^N, given by two (N+1)x(N+1) rational Gram
/// matrices. Construction rejects degenerate pencils (identically vanishing
/// determinant form).
#[derive(Debug, Clone)]
pub struct QuadricPencil {
    ambient_dim: usize,
    q0: SymMat,
    q1: SymMat,
    delta: BinaryForm,
}

/// Outcome of the smoothness test for the base locus.
#[derive(Debug, Clone)]
pub enum Smoothness {
    Smooth,
    /// The product of repeated factors of the determinant form.
    Singular {
        witness: BinaryForm,
    },
}

impl QuadricPencil {
    pub fn new(q0: SymMat, q1: SymMat) -> Result<Self> {
        if q0.dim() != q1.dim() {
            return Err(Error::Shape("pencil matrices differ in dimension".into()));
        }
        if q0.dim() < 3 {
            return Err(Error::Shape("ambient dimension must be at least 2".into()));
        }
        let ambient_dim = q0.dim() - 1;
        let delta = binary_det(&q0, &q1)?;
        if delta.is_zero() {
            return Err(Error::MalformedPencil);
        }
        Ok(QuadricPencil {
            ambient_dim,
            q0,
            q1,
            delta,
        })
    }

    /// Ambient projective dimension N.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Matrix size N+1.
    pub fn size(&self) -> usize {
        self.ambient_dim + 1
    }

    pub fn q0(&self) -> &SymMat {
        &self.q0
    }

    pub fn q1(&self) -> &SymMat {
        &self.q1
    }

    /// The degeneracy form det(s*Q0 + t*Q1).
    pub fn delta(&self) -> &BinaryForm {
        &self.delta
    }

    /// Gram matrix of the fiber over `[s:t]`.
    pub fn fiber(&self, s: &Rat, t: &Rat) -> SymMat {
        assert!(!(s.is_zero() && t.is_zero()), "fiber at [0:0]");
        self.q0.pencil_at(&self.q1, s, t)
    }

    /// Smooth iff the degeneracy form is squarefree (it automatically has
    /// degree N+1 when nonzero).
    pub fn validate_smooth(&self) -> Result<Smoothness> {
        if is_squarefree(&self.delta)? {
            Ok(Smoothness::Smooth)
        } else {
            Ok(Smoothness::Singular {
                witness: repeated_part(&self.delta)?,
            })
        }
    }

    pub fn ensure_smooth(&self) -> Result<()> {
        match self.validate_smooth()? {
            Smoothness::Smooth => Ok(()),
            Smoothness::Singular { witness } => Err(Error::SingularPencil {
                witness: witness.to_string(),
            }),
        }
    }

    /// Both Gram matrices transformed by the same congruence.
    pub fn congruence(&self, p: &Mat) -> Result<QuadricPencil> {
        QuadricPencil::new(self.q0.congruence(p), self.q1.congruence(p))
    }

    /// Reparametrizes the pencil by an invertible change of the two
    /// generators: (a*Q0 + b*Q1, c*Q0 + d*Q1). Same quadric family, new
    /// coordinates on the parameter line.
    pub fn reparametrize(&self, a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> Result<QuadricPencil> {
        if (a * d - b * c).is_zero() {
            return Err(Error::Shape("parameter change must be invertible".into()));
        }
        QuadricPencil::new(
            self.q0.pencil_at(&self.q1, a, b),
            self.q0.pencil_at(&self.q1, c, d),
        )
    }
}

/// An r-plane in P^N, spanned by the rows of a full-rank (r+1)x(N+1) matrix.
#[derive(Debug, Clone)]
pub struct LinearSubspace {
    r: usize,
    basis: Mat,
}

impl LinearSubspace {
    pub fn new(basis: Mat) -> Result<Self> {
        if basis.nrows() == 0 {
            return Err(Error::Shape("empty subspace basis".into()));
        }
        if basis.rank() < basis.nrows() {
            return Err(Error::RankDeficientBasis);
        }
        Ok(LinearSubspace {
            r: basis.nrows() - 1,
            basis,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        LinearSubspace::new(Mat::from_i64(rows))
    }

    /// Projective dimension of the plane.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// Projective dimension of the intersection with another plane
    /// (-1 when disjoint).
    pub fn intersection_dim(&self, other: &LinearSubspace) -> i64 {
        let stacked = self.basis.vstack(&other.basis);
        let rank = stacked.rank();
        (self.r as i64 + 1) + (other.r as i64 + 1) - rank as i64 - 1
    }
}

/// True iff the plane lies on the whole base locus: the basis is isotropic
/// for both Gram matrices.
pub fn contains_subspace(pencil: &QuadricPencil, ell: &LinearSubspace) -> Result<bool> {
    if ell.basis.ncols() != pencil.size() {
        return Err(Error::Shape(
            "subspace and pencil ambient dimensions differ".into(),
        ));
    }
    Ok(pencil.q0.restrict(&ell.basis).mat().is_zero()
        && pencil.q1.restrict(&ell.basis).mat().is_zero())
}

/// Coordinates adapted to a plane on the base locus: the plane becomes
/// {x_{r+1} = ... = x_N = 0}, both transformed Gram matrices acquire a zero
/// upper-left (r+1)x(r+1) block, and the quadrics decompose as
/// sum_j l_{ij}(y) x_j + q_i(y) with y the remaining variables.
#[derive(Debug, Clone)]
pub struct StandardPosition {
    /// Invertible P with points transforming as x = P x'.
    pub change_of_basis: Mat,
    pub ambient_dim: usize,
    pub r: usize,
    /// `l_forms[i][j]`: coefficient vector (length N-r) of the linear form
    /// l_{ij} in the tail variables.
    pub l_forms: [Vec<Vec<Rat>>; 2],
    /// Gram matrices of the purely quadratic parts q_0, q_1.
    pub q_forms: [SymMat; 2],
    /// The transformed Gram matrices P^T Q_i P.
    pub transformed: [SymMat; 2],
}

impl StandardPosition {
    /// Rebuilds the transformed Gram matrices from (l_forms, q_forms).
    /// Used as a round-trip self-check and by tests.
    pub fn reassemble(&self) -> [SymMat; 2] {
        let k = self.r + 1;
        let tail = self.ambient_dim + 1 - k;
        let build = |i: usize| {
            let mut m = Mat::zero(k + tail, k + tail);
            for j in 0..k {
                for c in 0..tail {
                    let half = &self.l_forms[i][j][c] / rat(2);
                    m.rows[j][k + c] = half.clone();
                    m.rows[k + c][j] = half;
                }
            }
            for a in 0..tail {
                for b in 0..tail {
                    m.rows[k + a][k + b] = self.q_forms[i].entry(a, b).clone();
                }
            }
            SymMat::new(m).expect("reassembled matrix is symmetric")
        };
        [build(0), build(1)]
    }
}

/// Moves a plane on the base locus into standard coordinates.
pub fn to_standard_position(
    pencil: &QuadricPencil,
    ell: &LinearSubspace,
) -> Result<StandardPosition> {
    if !contains_subspace(pencil, ell)? {
        return Err(Error::PlaneNotOnPencil);
    }
    pencil.ensure_smooth()?;
    let n1 = pencil.size();
    let k = ell.r + 1;
    // Columns of P: the plane basis, then identity vectors on the non-pivot
    // columns of its RREF.
    let (_, pivots) = ell.basis.rref();
    let mut cols: Vec<Vec<Rat>> = ell.basis.rows.clone();
    for c in 0..n1 {
        if !pivots.contains(&c) {
            let mut e = vec![Rat::zero(); n1];
            e[c] = rat(1);
            cols.push(e);
        }
    }
    let p = Mat::new(cols).transpose();
    debug_assert!(!p.det().is_zero());
    let t0 = pencil.q0.congruence(&p);
    let t1 = pencil.q1.congruence(&p);
    let tail = n1 - k;
    let extract = |t: &SymMat| {
        let mut lin = Vec::with_capacity(k);
        for j in 0..k {
            lin.push(
                (0..tail)
                    .map(|c| t.entry(j, k + c) * rat(2))
                    .collect::<Vec<_>>(),
            );
        }
        let mut q = Mat::zero(tail, tail);
        for a in 0..tail {
            for b in 0..tail {
                q.rows[a][b] = t.entry(k + a, k + b).clone();
            }
        }
        (lin, SymMat::new(q).expect("symmetric block"))
    };
    let (l0, q0) = extract(&t0);
    let (l1, q1) = extract(&t1);
    let sp = StandardPosition {
        change_of_basis: p,
        ambient_dim: pencil.ambient_dim,
        r: ell.r,
        l_forms: [l0, l1],
        q_forms: [q0, q1],
        transformed: [t0, t1],
    };
    // The zero corner and the reassembly identity are structural; verify.
    let reassembled = sp.reassemble();
    for i in 0..2 {
        for a in 0..k {
            for b in 0..k {
                if !sp.transformed[i].entry(a, b).is_zero() {
                    return Err(Error::Internal(
                        "standard position corner block is nonzero".into(),
                    ));
                }
            }
        }
        if reassembled[i] != sp.transformed[i] {
            return Err(Error::Internal(
                "standard position reassembly mismatch".into(),
            ));
        }
    }
    Ok(sp)
}

/// Sparse polynomial over the variables (s, t, y_{r+1}, ..., y_N), used for
/// the defining equations of the reduced fibration. Exponent vectors have
/// length 2 + (N - r); terms are sorted descending lexicographically and
/// the coefficients are normalized to content 1 with positive leading sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    pub terms: Vec<(Vec<u32>, Rat)>,
}

impl SparsePoly {
    fn normalized(mut terms: Vec<(Vec<u32>, Rat)>) -> SparsePoly {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        if let Some((_, lead)) = terms.first() {
            use num_bigint::BigInt;
            use num_integer::Integer;
            use num_traits::One;
            let mut den_lcm = BigInt::one();
            let mut num_gcd = BigInt::zero();
            for (_, c) in &terms {
                den_lcm = den_lcm.lcm(c.denom());
                num_gcd = num_gcd.gcd(c.numer());
            }
            let mut scale = Rat::new(den_lcm, num_gcd);
            if lead < &Rat::zero() {
                scale = -scale;
            }
            for (_, c) in terms.iter_mut() {
                *c = &*c * &scale;
            }
        }
        SparsePoly { terms }
    }

    pub fn eval(&self, vals: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (e, v) in exps.iter().zip(vals) {
                for _ in 0..*e {
                    term *= v;
                }
            }
            acc += term;
        }
        acc
    }
}

/// The reduced fibration inside P^1 x P^(N-r-1): r+1 equations of bidegree
/// (1,1) and one of bidegree (1,2).
#[derive(Debug, Clone)]
pub struct ReducedPencil {
    pub ambient_dim: usize,
    pub r: usize,
    pub equations: Vec<SparsePoly>,
}

/// Emits the defining equations of the reduced fibration from standard
/// position: s*l_{0j} + t*l_{1j} for each j, then s*q_0 + t*q_1.
pub fn hyperbolic_reduce(pencil: &QuadricPencil, ell: &LinearSubspace) -> Result<ReducedPencil> {
    let sp = to_standard_position(pencil, ell)?;
    Ok(reduced_equations(&sp))
}

pub fn reduced_equations(sp: &StandardPosition) -> ReducedPencil {
    let k = sp.r + 1;
    let tail = sp.ambient_dim + 1 - k;
    let nvars = 2 + tail;
    let mut equations = Vec::with_capacity(k + 1);
    for j in 0..k {
        let mut terms = Vec::new();
        for m in 0..tail {
            let mut e = vec![0u32; nvars];
            e[0] = 1;
            e[2 + m] = 1;
            terms.push((e, sp.l_forms[0][j][m].clone()));
            let mut e = vec![0u32; nvars];
            e[1] = 1;
            e[2 + m] = 1;
            terms.push((e, sp.l_forms[1][j][m].clone()));
        }
        equations.push(SparsePoly::normalized(terms));
    }
    let mut terms = Vec::new();
    for (slot, q) in sp.q_forms.iter().enumerate() {
        for a in 0..tail {
            for b in a..tail {
                let coeff = if a == b {
                    q.entry(a, b).clone()
                } else {
                    q.entry(a, b) * rat(2)
                };
                let mut e = vec![0u32; nvars];
                e[slot] = 1;
                e[2 + a] += 1;
                e[2 + b] += 1;
                terms.push((e, coeff));
            }
        }
    }
    equations.push(SparsePoly::normalized(terms));
    ReducedPencil {
        ambient_dim: sp.ambient_dim,
        r: sp.r,
        equations,
    }
}

/// One fiber of the reduced fibration: the original fiber form restricted
/// to a complement of the plane inside its orthogonal space.
#[derive(Debug, Clone)]
pub struct ReducedFiber {
    pub point: (Rat, Rat),
    pub gram: SymMat,
    /// Rows: the complement basis used, in the original coordinates.
    pub basis_used: Mat,
    pub signature: Signature,
}

/// Reduces a single symmetric form by an isotropic subspace: restrict to
/// the orthogonal complement of the subspace and quotient by the subspace
/// itself. The complement is chosen from the reduced-row-echelon kernel
/// basis; any two choices are congruent, so signatures downstream agree.
pub fn reduce_gram(m: &SymMat, isotropic: &Mat) -> Result<(SymMat, Mat)> {
    let k = isotropic.nrows();
    let n = m.dim();
    if isotropic.ncols() != n {
        return Err(Error::Shape("isotropic basis has wrong width".into()));
    }
    if !m.restrict(isotropic).mat().is_zero() {
        return Err(Error::DegenerateConfiguration(
            "subspace is not isotropic for the fiber form".into(),
        ));
    }
    let perp = isotropic.mul(m.mat()).kernel_basis();
    if perp.nrows() != n - k {
        return Err(Error::DegenerateConfiguration(format!(
            "orthogonal space has dimension {} instead of {}",
            perp.nrows(),
            n - k
        )));
    }
    // Extend the plane basis to a basis of the orthogonal space; the new
    // rows form the complement.
    let mut acc = isotropic.clone();
    let mut complement: Vec<Vec<Rat>> = Vec::with_capacity(n - 2 * k);
    for row in &perp.rows {
        let mut candidate = acc.rows.clone();
        candidate.push(row.clone());
        let cand = Mat::new(candidate);
        if cand.rank() > acc.nrows() {
            complement.push(row.clone());
            acc = cand;
        }
    }
    if complement.len() != n - 2 * k {
        return Err(Error::DegenerateConfiguration(format!(
            "complement has dimension {} instead of {}",
            complement.len(),
            n - 2 * k
        )));
    }
    let c = Mat::new(complement);
    Ok((m.restrict(&c), c))
}

/// Specializes the reduced fibration at a rational point of P^1.
pub fn reduced_fiber(
    pencil: &QuadricPencil,
    ell: &LinearSubspace,
    s: &Rat,
    t: &Rat,
) -> Result<ReducedFiber> {
    if !contains_subspace(pencil, ell)? {
        return Err(Error::PlaneNotOnPencil);
    }
    pencil.ensure_smooth()?;
    let m = pencil.fiber(s, t);
    let (gram, basis) = reduce_gram(&m, ell.basis())?;
    let signature = signature_of(&gram);
    Ok(ReducedFiber {
        point: (s.clone(), t.clone()),
        gram,
        basis_used: basis,
        signature,
    })
}

/// A generated test pencil: smooth, containing two disjoint rational
/// r-planes known by construction.
#[derive(Debug, Clone)]
pub struct GeneratedPencil {
    pub pencil: QuadricPencil,
    pub plane: LinearSubspace,
    pub partner_plane: LinearSubspace,
}

/// Builds a smooth pencil in P^N containing a rational r-plane, by the
/// block normal form: zero (r+1)x(r+1) corner, identity and distinct
/// diagonal off-blocks, random symmetric tail, followed by a random
/// unimodular congruence. Resamples on accidental singularity.
pub fn generate_test_pencil(n: usize, r: usize, seed: u64) -> Result<GeneratedPencil> {
    if n < 2 {
        return Err(Error::Shape("ambient dimension must be at least 2".into()));
    }
    if r + 1 > n / 2 {
        return Err(Error::Shape(format!(
            "no r-planes with r = {r} on a smooth base locus in P^{n}"
        )));
    }
    let size = n + 1;
    let k = r + 1;
    let tail = size - 2 * k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x70656e63);
    for _attempt in 0..200 {
        let mut q0 = Mat::zero(size, size);
        for j in 0..k {
            q0.rows[j][k + j] = rat(1);
            q0.rows[k + j][j] = rat(1);
        }
        for j in 0..tail {
            q0.rows[2 * k + j][2 * k + j] = rat(1);
        }
        let mut q1 = Mat::zero(size, size);
        let mut diags: Vec<i64> = Vec::new();
        while diags.len() < k {
            let d = rng.gen_range(-9..=9);
            if !diags.contains(&d) {
                diags.push(d);
            }
        }
        for j in 0..k {
            q1.rows[j][k + j] = rat(diags[j]);
            q1.rows[k + j][j] = rat(diags[j]);
        }
        for i in 0..2 * k {
            for j in 0..tail {
                let c = rat(rng.gen_range(-4..=4));
                q1.rows[i][2 * k + j] = c.clone();
                q1.rows[2 * k + j][i] = c;
            }
        }
        for a in 0..tail {
            for b in a..tail {
                let c = rat(rng.gen_range(-4..=4));
                q1.rows[2 * k + a][2 * k + b] = c.clone();
                q1.rows[2 * k + b][2 * k + a] = c;
            }
        }
        // Keep only the first-block rows isotropic: zero the corner the
        // random fill may have touched is already guaranteed by indexing.
        let q0 = SymMat::new(q0).expect("symmetric by construction");
        let q1 = SymMat::new(q1).expect("symmetric by construction");
        let Ok(pencil) = QuadricPencil::new(q0, q1) else {
            continue;
        };
        if !matches!(pencil.validate_smooth()?, Smoothness::Smooth) {
            continue;
        }
        let p = random_unimodular(size, &mut rng);
        let p_inv_t = p.inverse().expect("unimodular").transpose();
        let moved = pencil.congruence(&p)?;
        let plane_rows = |offset: usize| {
            let mut b = Mat::zero(k, size);
            for j in 0..k {
                b.rows[j][offset + j] = rat(1);
            }
            b.mul(&p_inv_t)
        };
        let plane = LinearSubspace::new(plane_rows(0))?;
        let partner = LinearSubspace::new(plane_rows(k))?;
        debug_assert!(contains_subspace(&moved, &plane)?);
        debug_assert!(contains_subspace(&moved, &partner)?);
        return Ok(GeneratedPencil {
            pencil: moved,
            plane,
            partner_plane: partner,
        });
    }
    Err(Error::Internal(
        "failed to generate a smooth pencil after 200 attempts".into(),
    ))
}

fn random_unimodular(size: usize, rng: &mut ChaCha8Rng) -> Mat {
    let mut p = Mat::identity(size);
    for _ in 0..3 * size {
        let i = rng.gen_range(0..size);
        let mut j = rng.gen_range(0..size);
        while j == i {
            j = rng.gen_range(0..size);
        }
        let lambda = rat(rng.gen_range(-2..=2i64));
        if lambda.is_zero() {
            continue;
        }
        // column operation keeps det = +-1
        for row in 0..size {
            let add = &p.rows[row][i] * &lambda;
            p.rows[row][j] += add;
        }
    }
    p
}

/// A pencil whose degeneracy form splits with all roots rational, plus a
/// rational r-plane. Built from simultaneously diagonal forms with the
/// plane spanned by all-ones vectors on disjoint 3-coordinate supports.
#[derive(Debug, Clone)]
pub struct DiagonalPencil {
    pub pencil: QuadricPencil,
    pub plane: LinearSubspace,
    /// The rational roots of the degeneracy form, as values of s/t.
    pub roots: Vec<Rat>,
}

pub fn generate_diagonal_pencil(n: usize, r: usize, seed: u64) -> Result<DiagonalPencil> {
    let size = n + 1;
    if 3 * (r + 1) > size {
        return Err(Error::Shape(format!(
            "diagonal construction needs 3(r+1) <= N+1; got r = {r}, N = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x64696167);
    let mut lambdas: Vec<i64> = Vec::new();
    while lambdas.len() < size {
        let l = rng.gen_range(-15..=15);
        if !lambdas.contains(&l) {
            lambdas.push(l);
        }
    }
    let mut scales = vec![Rat::zero(); size];
    for j in 0..=r {
        let (a, b, c) = (3 * j, 3 * j + 1, 3 * j + 2);
        // v = e_a + e_b + e_c isotropic for both diag(scales) and
        // diag(scales * lambdas): solve the 2x2 system with c_c = 1.
        let (la, lb, lc) = (rat(lambdas[a]), rat(lambdas[b]), rat(lambdas[c]));
        let ca = (&lb - &lc) / (&la - &lb);
        let cb = (&lc - &la) / (&la - &lb);
        scales[a] = ca;
        scales[b] = cb;
        scales[c] = rat(1);
    }
    for s in scales.iter_mut().skip(3 * (r + 1)) {
        let mut v = 0;
        while v == 0 {
            v = rng.gen_range(-3..=3);
        }
        *s = rat(v);
    }
    let q0 = SymMat::diagonal(&scales);
    let q1 = SymMat::diagonal(
        &scales
            .iter()
            .zip(&lambdas)
            .map(|(c, &l)| c * rat(l))
            .collect::<Vec<_>>(),
    );
    let pencil = QuadricPencil::new(q0, q1)?;
    pencil.ensure_smooth()?;
    let mut basis = Mat::zero(r + 1, size);
    for j in 0..=r {
        for d in 0..3 {
            basis.rows[j][3 * j + d] = rat(1);
        }
    }
    let plane = LinearSubspace::new(basis)?;
    debug_assert!(contains_subspace(&pencil, &plane)?);
    let roots = lambdas.iter().map(|&l| rat(-l)).collect();
    Ok(DiagonalPencil {
        pencil,
        plane,
        roots,
    })
}

//! Seeded cross-module property batteries.
//!
//! Every battery takes an explicit seed and scale so runs are reproducible;
//! the verify subcommand runs all of them and the acceptance tests run the
//! heavier ones at their pinned scales. A battery reports failures as
//! messages rather than panicking, so the harness can list each property
//! with its outcome.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::poly::repeated_part;
use crate::exact::roots::SturmChain;
use crate::exact::{
    binary_det, is_squarefree, isolate_real_roots, rat, ratio, signature_of, squarefree_part,
    BinaryForm, Mat, Rat, SymMat,
};
use crate::fforacle::{
    census::count_all_subspaces, census_planes, check_reduction_bijection, gaussian_binomial,
    FqPencil, ReducedModP,
};
use crate::krasnov::{
    compute_walk, height_frequency_of_walk, krasnov_of, reconstruct_walk, validate_walk,
};
use crate::pencil::{
    contains_subspace, generate_diagonal_pencil, generate_test_pencil, reduce_gram, reduced_fiber,
    to_standard_position, QuadricPencil,
};
use crate::verdict::{decide, enumerate_isotopy};
use num_bigint::BigUint;

/// Result of one property battery.
#[derive(Debug, Clone)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub trials: u64,
    pub failures: Vec<String>,
}

impl PropertyOutcome {
    fn new(name: &'static str) -> Self {
        PropertyOutcome {
            name,
            trials: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok && self.failures.len() < 8 {
            self.failures.push(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 8 {
            self.failures.push(msg);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_sym(rng: &mut ChaCha8Rng, n: usize, with_zero_rows: bool) -> SymMat {
    let mut m = Mat::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let v = rat(rng.gen_range(-6..=6));
            m.rows[i][j] = v.clone();
            m.rows[j][i] = v;
        }
    }
    if with_zero_rows && rng.gen_bool(0.3) {
        let z = rng.gen_range(0..n);
        for j in 0..n {
            m.rows[z][j] = Rat::zero();
            m.rows[j][z] = Rat::zero();
        }
    }
    SymMat::new(m).expect("symmetric by construction")
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    loop {
        let m = Mat::new(
            (0..n)
                .map(|_| (0..n).map(|_| rat(rng.gen_range(-4..=4))).collect())
                .collect(),
        );
        if !m.det().is_zero() {
            return m;
        }
    }
}

fn random_form(rng: &mut ChaCha8Rng) -> BinaryForm {
    // products of random linear and irreducible quadratic factors, with
    // occasional repeats and an occasional factor of t
    let mut f = BinaryForm::from_i64(&[rng.gen_range(1..=3)]);
    let factors = rng.gen_range(1..=4);
    for _ in 0..factors {
        let factor = if rng.gen_bool(0.7) {
            let a = rng.gen_range(-4..=4i64);
            let b = rng.gen_range(1..=4i64);
            BinaryForm::from_i64(&[b, a])
        } else {
            BinaryForm::from_i64(&[1, 0, rng.gen_range(1..=4)])
        };
        let power = if rng.gen_bool(0.25) { 2 } else { 1 };
        for _ in 0..power {
            f = f.mul(&factor);
        }
    }
    if rng.gen_bool(0.2) {
        f = f.mul(&BinaryForm::from_i64(&[0, 1]));
    }
    f
}

pub fn signature_congruence_invariance(seed: u64, trials: u64) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("exact: signature is congruence invariant");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = rng.gen_range(2..=6);
        let m = random_sym(&mut rng, n, true);
        let p = random_invertible(&mut rng, n);
        let a = signature_of(&m);
        let b = signature_of(&m.congruence(&p));
        out.check(a == b, || {
            format!("signature changed under congruence: {a} vs {b}")
        });
    }
    out
}

pub fn signature_sums_to_dimension(seed: u64, trials: u64) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("exact: signature components sum to dimension");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    for _ in 0..trials {
        let n = rng.gen_range(1..=7);
        let m = random_sym(&mut rng, n, true);
        let s = signature_of(&m);
        out.check(s.dim() == n, || {
            format!("signature {s} does not sum to {n}")
        });
    }
    out
}

pub fn binary_det_matches_direct(seed: u64, trials: u64) -> PropertyOutcome {
    let mut out =
        PropertyOutcome::new("exact: interpolated determinant form matches direct determinants");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    for _ in 0..trials {
        let n = rng.gen_range(2..=5);
        let a = random_sym(&mut rng, n, false);
        let b = random_sym(&mut rng, n, false);
        let Ok(form) = binary_det(&a, &b) else {
            out.fail("binary_det failed on matched dimensions".into());
            continue;
        };
        for _ in 0..5 {
            let s = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5));
            let t = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5));
            let direct = a.pencil_at(&b, &s, &t).mat().det();
            out.check(form.eval(&s, &t) == direct, || {
                format!("det form disagrees at ({s}, {t})")
            });
        }
    }
    out
}

pub fn root_isolation_consistency(seed: u64, trials: u64) -> PropertyOutcome {
    let mut out = PropertyOutcome::new(
        "exact: root isolation agrees with Sturm counts and brackets sign changes",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    for _ in 0..trials {
        let f = random_form(&mut rng);
        let Ok(sf) = squarefree_part(&f) else {
            continue;
        };
        let Ok(iso) = isolate_real_roots(&sf) else {
            out.fail("isolation rejected a squarefree form".into());
            continue;
        };
        let dehom = sf.dehomogenize();
        if dehom.degree().unwrap_or(0) > 0 {
            let chain = SturmChain::new(&dehom);
            out.check(iso.intervals.len() == chain.total_real_roots(), || {
                "interval count disagrees with Sturm total".into()
            });
            for (lo, hi) in &iso.intervals {
                let s = crate::exact::rat::sign(&dehom.eval(lo))
                    * crate::exact::rat::sign(&dehom.eval(hi));
                out.check(s == -1, || {
                    format!("interval ({lo}, {hi}) does not bracket")
                });
            }
        }
        out.check(
            iso.infinity_root == (sf.infinity_multiplicity() == 1),
            || "infinity marker wrong".into(),
        );
    }
    out
}

pub fn squarefree_part_degree_iff(seed: u64, trials: u64) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("exact: squarefree iff radical has full degree");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));
    for _ in 0..trials {
        let f = random_form(&mut rng);
        let sf = is_squarefree(&f).expect("nonzero");
        let rad = squarefree_part(&f).expect("nonzero");
        out.check(sf == (rad.degree == f.degree), || {
            format!("squarefree flag mismatch on degree-{} form", f.degree)
        });
        // the repeated part divides f with squarefree quotient
        let rep = repeated_part(&f).expect("nonzero");
        out.check(sf == (rep.degree == 0), || {
            "repeated part nonconstant on a squarefree form".into()
        });
        let (quot, rem) = f.dehomogenize().div_rem(&rep.dehomogenize());
        let inf_quot = f.infinity_multiplicity() - rep.infinity_multiplicity();
        out.check(rem.is_zero() && inf_quot <= 1, || {
            "repeated part does not divide the form".into()
        });
        if rem.is_zero() && quot.degree().unwrap_or(0) > 0 {
            out.check(quot.gcd(&quot.derivative()).degree() == Some(0), || {
                "quotient by the repeated part is not squarefree".into()
            });
        }
    }
    out
}

/// Admissible plane dimensions r for ambient dimension n.
pub fn admissible_r(n: usize) -> Vec<usize> {
    (0..=(n / 2).saturating_sub(1)).collect()
}

/// Rational sample points off the degeneracy locus.
fn off_locus_samples(
    pencil: &QuadricPencil,
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Vec<(Rat, Rat)> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let s = ratio(rng.gen_range(-20..=20), rng.gen_range(1..=7));
        let t = rat(1);
        if !pencil.delta().eval(&s, &t).is_zero() {
            out.push((s, t));
        }
    }
    out
}

/// Fiberwise signature law: reducing by an r-plane removes exactly r+1
/// hyperbolic summands and preserves corank.
pub fn reduction_signature_law(
    seed: u64,
    pencils_per_n: u64,
    ns: &[usize],
    points: usize,
) -> PropertyOutcome {
    let mut out =
        PropertyOutcome::new("pencil: reduction removes (r+1, r+1) from fiber signatures");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(5));
    for &n in ns {
        for i in 0..pencils_per_n {
            for r in admissible_r(n) {
                let gen = match generate_test_pencil(n, r, seed ^ ((n as u64) << 8) ^ i) {
                    Ok(g) => g,
                    Err(e) => {
                        out.fail(format!("generator failed (N={n}, r={r}): {e}"));
                        continue;
                    }
                };
                // preconditions once per pencil; the per-point loop goes
                // straight to the fiberwise reduction
                if gen.pencil.ensure_smooth().is_err()
                    || !contains_subspace(&gen.pencil, &gen.plane).unwrap_or(false)
                {
                    out.fail(format!("generated pencil invalid (N={n}, r={r})"));
                    continue;
                }
                for (s, t) in off_locus_samples(&gen.pencil, &mut rng, points) {
                    let fiber = gen.pencil.fiber(&s, &t);
                    let fiber_sig = signature_of(&fiber);
                    match reduce_gram(&fiber, gen.plane.basis()) {
                        Ok((gram, _)) => {
                            let red = signature_of(&gram);
                            let ok = red.positives + r + 1 == fiber_sig.positives
                                && red.negatives + r + 1 == fiber_sig.negatives
                                && red.corank == fiber_sig.corank;
                            out.check(ok, || {
                                format!(
                                    "signature law fails (N={n}, r={r}, [{s}:{t}]): fiber {fiber_sig}, reduced {red}"
                                )
                            });
                        }
                        Err(e) => out.fail(format!("reduction failed (N={n}, r={r}): {e}")),
                    }
                }
            }
        }
    }
    out
}

/// Degeneracy preservation: on split-degeneracy pencils the reduced fiber
/// is corank 1 exactly at the rational roots, corank 0 elsewhere.
pub fn degeneracy_preservation(
    seed: u64,
    pencils_per_n: u64,
    ns: &[usize],
    nonroot_samples: usize,
) -> PropertyOutcome {
    let mut out =
        PropertyOutcome::new("pencil: reduction preserves the degeneracy locus with corank 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(6));
    for &n in ns {
        for i in 0..pencils_per_n {
            let d = match generate_diagonal_pencil(n, 0, seed ^ ((n as u64) << 16) ^ i) {
                Ok(d) => d,
                Err(e) => {
                    out.fail(format!("diagonal generator failed (N={n}): {e}"));
                    continue;
                }
            };
            for root in &d.roots {
                match reduced_fiber(&d.pencil, &d.plane, root, &rat(1)) {
                    Ok(f) => out.check(f.signature.corank == 1, || {
                        format!("corank {} at root {root} (N={n})", f.signature.corank)
                    }),
                    Err(e) => out.fail(format!("reduction failed at root {root}: {e}")),
                }
            }
            for (s, t) in off_locus_samples(&d.pencil, &mut rng, nonroot_samples) {
                match reduced_fiber(&d.pencil, &d.plane, &s, &t) {
                    Ok(f) => out.check(f.signature.corank == 0, || {
                        format!("corank {} off the locus at [{s}:{t}]", f.signature.corank)
                    }),
                    Err(e) => out.fail(format!("reduction failed off locus: {e}")),
                }
            }
        }
    }
    out
}

/// One-step reduction by an r-plane agrees fiberwise with r+1 nested
/// one-point reductions.
pub fn iterated_reduction_agrees(seed: u64, trials: u64) -> PropertyOutcome {
    let mut out =
        PropertyOutcome::new("pencil: one-shot reduction agrees with iterated point reductions");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(7));
    for i in 0..trials {
        let n = [5, 6, 7][rng.gen_range(0..3)];
        let r = rng.gen_range(1..=(n / 2 - 1));
        let gen = match generate_test_pencil(n, r, seed ^ 0xabc ^ i) {
            Ok(g) => g,
            Err(e) => {
                out.fail(format!("generator failed: {e}"));
                continue;
            }
        };
        for (s, t) in off_locus_samples(&gen.pencil, &mut rng, 3) {
            let m = gen.pencil.fiber(&s, &t);
            let one_shot = match reduce_gram(&m, gen.plane.basis()) {
                Ok((g, _)) => signature_of(&g),
                Err(e) => {
                    out.fail(format!("one-shot reduction failed: {e}"));
                    continue;
                }
            };
            match iterate_point_reductions(&m, gen.plane.basis()) {
                Ok(iterated) => out.check(one_shot == iterated, || {
                    format!("iterated {iterated} vs one-shot {one_shot} (N={n}, r={r})")
                }),
                Err(e) => out.fail(format!("iterated reduction failed: {e}")),
            }
        }
    }
    out
}

/// Reduces by the first basis vector, transports the remaining vectors
/// into the quotient coordinates, and recurses; returns the signature of
/// the final form.
fn iterate_point_reductions(m: &SymMat, plane: &Mat) -> crate::Result<crate::exact::Signature> {
    let mut current = m.clone();
    let mut rows: Vec<Vec<Rat>> = plane.rows.clone();
    while !rows.is_empty() {
        let first = Mat::new(vec![rows[0].clone()]);
        let (next, complement) = reduce_gram(&current, &first)?;
        let basis = first.vstack(&complement);
        let cols = basis.nrows();
        let mut new_rows = Vec::new();
        for row in rows.iter().skip(1) {
            // solve row = coeffs * basis; keep the complement components
            let mut aug = basis.transpose();
            aug.rows
                .iter_mut()
                .zip(row)
                .for_each(|(a, v)| a.push(v.clone()));
            let (rref, pivots) = aug.rref();
            if pivots.iter().any(|&p| p >= cols) {
                return Err(crate::Error::Internal(
                    "plane row left the orthogonal space during iteration".into(),
                ));
            }
            let mut coeffs = vec![Rat::zero(); cols];
            for (ri, &pc) in pivots.iter().enumerate() {
                coeffs[pc] = rref.rows[ri][cols].clone();
            }
            new_rows.push(coeffs[1..].to_vec());
        }
        current = next;
        rows = new_rows;
    }
    Ok(signature_of(&current))
}

/// Two disjoint planes on the same pencil give reduced fibers with equal
/// signatures at common sample points.
pub fn reduction_plane_independence(seed: u64, trials: u64) -> PropertyOutcome {
    let mut out =
        PropertyOutcome::new("pencil: reduced fiber signatures do not depend on the plane");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(8));
    for i in 0..trials {
        let n = [4, 5, 6, 7][rng.gen_range(0..4)];
        let r = rng.gen_range(0..=(n / 2 - 1));
        let gen = match generate_test_pencil(n, r, seed ^ 0xdef ^ i) {
            Ok(g) => g,
            Err(e) => {
                out.fail(format!("generator failed: {e}"));
                continue;
            }
        };
        if gen.plane.intersection_dim(&gen.partner_plane) != -1 {
            out.fail("generated planes are not disjoint".into());
            continue;
        }
        for (s, t) in off_locus_samples(&gen.pencil, &mut rng, 10) {
            let a = reduced_fiber(&gen.pencil, &gen.plane, &s, &t);
            let b = reduced_fiber(&gen.pencil, &gen.partner_plane, &s, &t);
            match (a, b) {
                (Ok(a), Ok(b)) => out.check(a.signature == b.signature, || {
                    format!("plane-dependent signatures at [{s}:{t}]")
                }),
                _ => out.fail("reduction failed on one of the planes".into()),
            }
        }
    }
    out
}

/// Walk structure: 2r crossings, unit steps, antipodal swap, nondegenerate
/// arcs, and the height bound h <= N - 2r - 1 forced by the generated
/// rational r-plane.
pub fn walk_structure(seed: u64, trials: u64, ns: &[usize]) -> PropertyOutcome {
    let mut out =
        PropertyOutcome::new("krasnov: walk structure and height bound from a rational plane");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(9));
    for i in 0..trials {
        let n = ns[rng.gen_range(0..ns.len())];
        let r_plane = rng.gen_range(0..=(n / 2 - 1));
        let gen = match generate_test_pencil(n, r_plane, seed ^ 0x77a1 ^ i) {
            Ok(g) => g,
            Err(e) => {
                out.fail(format!("generator failed: {e}"));
                continue;
            }
        };
        let walk = match compute_walk(&gen.pencil) {
            Ok(w) => w,
            Err(e) => {
                out.fail(format!("walk failed (N={n}): {e}"));
                continue;
            }
        };
        out.check(validate_walk(&walk).is_ok(), || {
            "walk validation failed".into()
        });
        let iso = isolate_real_roots(gen.pencil.delta()).expect("smooth");
        let expect_crossings = 2 * iso.count();
        out.check(walk.crossings.len() == expect_crossings, || {
            format!(
                "crossing count {} vs isolated roots {}",
                walk.crossings.len(),
                iso.count()
            )
        });
        let hf = height_frequency_of_walk(&walk);
        out.check(hf.h + 2 * r_plane < n, || {
            format!("height {} too large for an r={r_plane} plane (N={n})", hf.h)
        });
    }
    out
}

/// Reconstruction fidelity: multiset of arc signatures and (h, f) match
/// between the computed walk and the one rebuilt from its invariant.
pub fn krasnov_reconstruction_fidelity(seed: u64, trials: u64, ns: &[usize]) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("krasnov: walk rebuilds from its invariant");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(10));
    for i in 0..trials {
        let n = ns[rng.gen_range(0..ns.len())];
        let r_plane = rng.gen_range(0..=(n / 2 - 1));
        let gen = match generate_test_pencil(n, r_plane, seed ^ 0x4e57 ^ i) {
            Ok(g) => g,
            Err(e) => {
                out.fail(format!("generator failed: {e}"));
                continue;
            }
        };
        let walk = match compute_walk(&gen.pencil) {
            Ok(w) => w,
            Err(e) => {
                out.fail(format!("walk failed: {e}"));
                continue;
            }
        };
        let inv = krasnov_of(&walk).expect("valid walk");
        let rebuilt = reconstruct_walk(&inv).expect("valid invariant");
        let mut a: Vec<(usize, usize)> = walk
            .arcs
            .iter()
            .map(|s| (s.positives, s.negatives))
            .collect();
        let mut b: Vec<(usize, usize)> = rebuilt
            .arcs
            .iter()
            .map(|s| (s.positives, s.negatives))
            .collect();
        a.sort_unstable();
        b.sort_unstable();
        out.check(a == b, || format!("arc multiset mismatch for {inv}"));
        out.check(
            height_frequency_of_walk(&walk) == height_frequency_of_walk(&rebuilt),
            || format!("height/frequency mismatch for {inv}"),
        );
    }
    out
}

/// The canonical invariant, h, and f are unchanged by orientation
/// reversal, reparametrization of the pencil, and congruence.
pub fn krasnov_invariances(seed: u64, trials: u64, ns: &[usize]) -> PropertyOutcome {
    let mut out = PropertyOutcome::new(
        "krasnov: invariant stable under reversal, reparametrization, congruence",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(11));
    for i in 0..trials {
        let n = ns[rng.gen_range(0..ns.len())];
        let r_plane = rng.gen_range(0..=(n / 2 - 1));
        let gen = match generate_test_pencil(n, r_plane, seed ^ 0x1234 ^ i) {
            Ok(g) => g,
            Err(e) => {
                out.fail(format!("generator failed: {e}"));
                continue;
            }
        };
        let base = match crate::krasnov::krasnov_of_pencil(&gen.pencil) {
            Ok(x) => x,
            Err(e) => {
                out.fail(format!("pipeline failed: {e}"));
                continue;
            }
        };
        // orientation reversal: (Q0, -Q1) runs the circle backwards
        match gen
            .pencil
            .reparametrize(&rat(1), &rat(0), &rat(0), &rat(-1))
            .and_then(|p| crate::krasnov::krasnov_of_pencil(&p))
        {
            Ok(x) => out.check(x.0 == base.0 && x.1 == base.1, || {
                format!("orientation reversal changed {} -> {}", base.0, x.0)
            }),
            Err(e) => out.fail(format!("reversed pipeline failed: {e}")),
        }
        // random invertible reparametrization
        let (a, b, c, d) = loop {
            let a = rat(rng.gen_range(-3..=3i64));
            let b = rat(rng.gen_range(-3..=3i64));
            let c = rat(rng.gen_range(-3..=3i64));
            let d = rat(rng.gen_range(-3..=3i64));
            if !(&a * &d - &b * &c).is_zero() {
                break (a, b, c, d);
            }
        };
        match gen
            .pencil
            .reparametrize(&a, &b, &c, &d)
            .and_then(|p| crate::krasnov::krasnov_of_pencil(&p))
        {
            Ok(x) => out.check(x.0 == base.0 && x.1 == base.1, || {
                format!("reparametrization changed {} -> {}", base.0, x.0)
            }),
            Err(e) => out.fail(format!("reparametrized pipeline failed: {e}")),
        }
        // congruence
        let p = random_invertible(&mut rng, n + 1);
        match gen
            .pencil
            .congruence(&p)
            .and_then(|q| crate::krasnov::krasnov_of_pencil(&q))
        {
            Ok(x) => out.check(x.0 == base.0 && x.1 == base.1, || {
                format!("congruence changed {} -> {}", base.0, x.0)
            }),
            Err(e) => out.fail(format!("congruent pipeline failed: {e}")),
        }
        out.check((base.1.h + n + 1).is_multiple_of(2), || {
            format!("height parity violated: h = {} at N = {n}", base.1.h)
        });
    }
    out
}

/// Every verdict table across a dimension range passes its internal
/// monotonicity and implication checks (run inside decide).
pub fn verdict_consistency(ns: &[usize]) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("verdict: tables are monotone and implication-consistent");
    for &n in ns {
        match enumerate_isotopy(n) {
            Ok(classes) => {
                for c in classes {
                    match decide(n, &c.invariant) {
                        Ok(_) => out.check(true, String::new),
                        Err(e) => {
                            out.fail(format!("decide failed for {} at N={n}: {e}", c.invariant))
                        }
                    }
                }
            }
            Err(e) => out.fail(format!("enumeration failed at N={n}: {e}")),
        }
    }
    out
}

/// The RREF subspace enumerator visits exactly the Gaussian binomial many
/// subspaces.
pub fn subspace_enumeration_counts(seed: u64, trials: u64) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("fforacle: subspace enumeration matches Gaussian binomials");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(12));
    for _ in 0..trials.min(12) {
        let p = [3u64, 5, 7][rng.gen_range(0..3)];
        let n = rng.gen_range(2..=5);
        let k = rng.gen_range(1..=n);
        match count_all_subspaces(p, n, k) {
            Ok(c) => out.check(BigUint::from(c) == gaussian_binomial(n, k, p), || {
                format!("enumerator count {c} wrong for [{n},{k}]_{p}")
            }),
            Err(e) => out.fail(format!("enumeration failed: {e}")),
        }
    }
    out
}

/// Census partitions sum to the census total, and the bijection between
/// reduced-scheme points and planes holds on a small seeded configuration.
pub fn census_and_bijection(seed: u64, trials: u64) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("fforacle: census partition sums and reduction bijection");
    for i in 0..trials.min(5) {
        let Some((gen, prime)) = find_good_reduction(4, 0, seed ^ 0xff00 ^ i, &[3, 5]) else {
            out.fail("no good-reduction pencil found".into());
            continue;
        };
        let sp = match to_standard_position(&gen.pencil, &gen.plane) {
            Ok(sp) => sp,
            Err(e) => {
                out.fail(format!("standard position failed: {e}"));
                continue;
            }
        };
        let rp = match ReducedModP::new(&sp, prime) {
            Ok(rp) => rp,
            Err(e) => {
                out.fail(format!("mod-p reduction failed: {e}"));
                continue;
            }
        };
        match check_reduction_bijection(&rp) {
            Ok(counts) => {
                out.check(counts.lhs == counts.rhs, || {
                    format!(
                        "bijection count mismatch mod {prime}: lhs {} vs rhs {}",
                        counts.lhs, counts.rhs
                    )
                });
            }
            Err(e) => out.fail(format!("bijection check failed: {e}")),
        }
        match census_planes(
            &rp.ambient,
            0,
            Some(&rp.standard_plane()),
            crate::fforacle::enumeration_ceiling(),
        ) {
            Ok(census) => out.check(census.partition_total() == census.total, || {
                "census partition does not sum to total".into()
            }),
            Err(e) => out.fail(format!("census failed: {e}")),
        }
    }
    out
}

/// Searches seeds until a generated pencil has good reduction at one of
/// the given primes and its plane stays full rank mod p. The standard
/// position must also reduce well; callers reconstruct it themselves.
pub fn find_good_reduction(
    n: usize,
    r: usize,
    seed: u64,
    primes: &[u64],
) -> Option<(crate::pencil::GeneratedPencil, u64)> {
    for attempt in 0..200u64 {
        let Ok(gen) = generate_test_pencil(n, r, seed.wrapping_add(attempt * 7919)) else {
            continue;
        };
        for &p in primes {
            if crate::fforacle::denominators_clear(&gen.pencil, p)
                && FqPencil::reduce(&gen.pencil, p).is_ok()
                && crate::fforacle::reduce_plane(&gen.plane, p).is_ok()
                && contains_subspace(&gen.pencil, &gen.plane).unwrap_or(false)
            {
                // the transformed pencil must keep good reduction too
                if let Ok(sp) = to_standard_position(&gen.pencil, &gen.plane) {
                    if ReducedModP::new(&sp, p).is_ok() {
                        return Some((gen, p));
                    }
                }
            }
        }
    }
    None
}

/// Everything, at a scale controlled by `trials`.
pub fn run_all(seed: u64, trials: u64) -> Vec<PropertyOutcome> {
    let small_ns = [4usize, 5, 6];
    let walk_ns = [3usize, 4, 5, 6];
    let per_n = trials.div_ceil(10).clamp(1, 6);
    let mut outcomes = vec![
        signature_congruence_invariance(seed, trials),
        signature_sums_to_dimension(seed, trials),
        binary_det_matches_direct(seed, trials.min(30)),
        root_isolation_consistency(seed, trials),
        squarefree_part_degree_iff(seed, trials),
    ];
    if trials > 0 {
        outcomes.extend([
            reduction_signature_law(seed, per_n, &small_ns, 4),
            degeneracy_preservation(seed, per_n, &small_ns, 8),
            iterated_reduction_agrees(seed, trials.min(10)),
            reduction_plane_independence(seed, trials.min(10)),
            walk_structure(seed, trials.min(25), &walk_ns),
            krasnov_reconstruction_fidelity(seed, trials.min(25), &walk_ns),
            krasnov_invariances(seed, trials.min(10), &walk_ns),
            verdict_consistency(&[3, 4, 5, 6, 7, 8]),
            subspace_enumeration_counts(seed, trials),
            census_and_bijection(seed, trials.min(3)),
        ]);
    }
    outcomes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_batteries_pass_quickly() {
        for outcome in run_all(7, 4) {
            assert!(
                outcome.passed(),
                "{} failed: {:?}",
                outcome.name,
                outcome.failures
            );
        }
    }

    #[test]
    fn harness_reports_injected_fault_by_name() {
        // Corrupt a walk's antipodal structure and confirm the validator
        // backing the walk-structure battery names the broken check.
        let gen = generate_test_pencil(5, 0, 3).unwrap();
        let mut walk = compute_walk(&gen.pencil).unwrap();
        let m = walk.arcs.len();
        assert!(m >= 4);
        let r = m / 2;
        walk.arcs.swap(r, r + 1);
        let err = validate_walk(&walk).unwrap_err().to_string();
        assert!(
            err.contains("antipodal") || err.contains("step"),
            "unexpected failure message: {err}"
        );
    }

    #[test]
    fn zero_trials_is_a_vacuous_pass() {
        let outcomes = run_all(1, 0);
        assert!(outcomes.iter().all(|o| o.passed()));
        assert!(outcomes.iter().all(|o| o.trials == 0));
    }
}

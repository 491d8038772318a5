//! Signature walks around the unit circle and their run-length invariant.
//!
//! As (s, t) traverses the circle counterclockwise, the signature of
//! s*Q0 + t*Q1 is locally constant, jumping by one positive eigenvalue at
//! each lift of a real root of the degeneracy form. The cyclic sequence of
//! jumps, compressed to the lengths of its maximal ascending runs, is a
//! complete isotopy invariant; its derived height and frequency control
//! real points and connectivity downstream.

use serde::{Deserialize, Serialize};

use crate::exact::roots::gap_samples;
use crate::exact::{isolate_real_roots, rat, signature_of, Rat, Signature};
use crate::pencil::QuadricPencil;
use crate::{Error, Result};

/// Which affine chart of P^1 an isolating interval lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    /// Coordinate s/t (finite roots).
    #[serde(rename = "s/t")]
    SOverT,
    /// Coordinate t/s (used for the root `[1:0]`).
    #[serde(rename = "t/s")]
    TOverS,
}

/// One degeneracy point on the circle: an isolated root of the degeneracy
/// form together with the half-circle its lift lies on.
#[derive(Debug, Clone)]
pub struct Crossing {
    pub chart: Chart,
    pub interval: (Rat, Rat),
    pub lower_half: bool,
}

/// Signature jump at a crossing: the positive count moves by exactly one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    #[serde(rename = "+")]
    Up,
    #[serde(rename = "-")]
    Down,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Step::Up => '+',
            Step::Down => '-',
        }
    }
}

/// The walk: 2r crossings in cyclic order starting just past angle 0, the
/// signature on each open arc, and the step at the crossing closing each
/// arc (`steps[j] = positives(arcs[j+1]) - positives(arcs[j])` cyclically).
/// When there are no real degeneracy points the walk is a single arc.
#[derive(Debug, Clone)]
pub struct SignatureWalk {
    pub ambient_dim: usize,
    pub crossings: Vec<Crossing>,
    pub arcs: Vec<Signature>,
    pub steps: Vec<Step>,
    /// True for walks rebuilt from an invariant, whose crossing positions
    /// are abstract (the crossings list is empty).
    pub abstract_positions: bool,
}

impl SignatureWalk {
    pub fn steps_string(&self) -> String {
        self.steps.iter().map(|s| s.symbol()).collect()
    }
}

/// Structural checks every walk must satisfy: full-rank arcs summing to
/// N+1, unit steps consistent with the arc sequence, and the antipodal
/// signature swap between opposite arcs.
pub fn validate_walk(walk: &SignatureWalk) -> Result<()> {
    let n1 = walk.ambient_dim + 1;
    let m = walk.arcs.len();
    if m == 0 {
        return Err(Error::Internal("walk with no arcs".into()));
    }
    for arc in &walk.arcs {
        if arc.corank != 0 {
            return Err(Error::Internal("degenerate arc signature".into()));
        }
        if arc.positives + arc.negatives != n1 {
            return Err(Error::Internal("arc signature does not sum to N+1".into()));
        }
    }
    if m == 1 {
        if !walk.steps.is_empty() {
            return Err(Error::Internal("single-arc walk with steps".into()));
        }
        if walk.arcs[0].positives != walk.arcs[0].negatives {
            return Err(Error::Internal(
                "crossing-free walk must be balanced".into(),
            ));
        }
        return Ok(());
    }
    if !m.is_multiple_of(2) || walk.steps.len() != m {
        return Err(Error::Internal("walk arc/step counts inconsistent".into()));
    }
    for j in 0..m {
        let next = &walk.arcs[(j + 1) % m];
        let diff = next.positives as i64 - walk.arcs[j].positives as i64;
        if diff != walk.steps[j].delta() {
            return Err(Error::Internal(format!(
                "step {j} does not match arc signatures"
            )));
        }
    }
    let r = m / 2;
    for j in 0..r {
        if walk.arcs[j + r].positives != walk.arcs[j].negatives {
            return Err(Error::Internal(format!(
                "antipodal swap fails between arcs {j} and {}",
                j + r
            )));
        }
    }
    Ok(())
}

/// Computes the signature walk of a smooth pencil exactly.
///
/// Real roots of the degeneracy form are isolated by Sturm sequences; each
/// open arc gets an exact rational sample strictly between crossings, where
/// the fiber signature is computed by congruence elimination.
pub fn compute_walk(pencil: &QuadricPencil) -> Result<SignatureWalk> {
    pencil.ensure_smooth()?;
    let n = pencil.ambient_dim();
    let delta = pencil.delta();
    let iso = isolate_real_roots(delta)?;
    if iso.count() == 0 {
        let arc = signature_of(&pencil.fiber(&rat(1), &rat(0)));
        let walk = SignatureWalk {
            ambient_dim: n,
            crossings: vec![],
            arcs: vec![arc],
            steps: vec![],
            abstract_positions: false,
        };
        validate_walk(&walk)?;
        return Ok(walk);
    }

    let dehom = delta.dehomogenize();
    let gaps = gap_samples(&dehom, &iso);
    // Upper-half crossings ordered by angle: [1:0] first when present, then
    // finite roots by descending s/t value. Samples are taken in the chart
    // t = 1, where positive multiples do not change the signature.
    let mut upper: Vec<Crossing> = Vec::new();
    if iso.infinity_root {
        let bound = dehom.root_bound();
        let inv_bound = rat(1) / bound;
        upper.push(Crossing {
            chart: Chart::TOverS,
            interval: (-inv_bound.clone(), inv_bound),
            lower_half: false,
        });
    }
    for interval in gaps.refined.iter().rev() {
        upper.push(Crossing {
            chart: Chart::SOverT,
            interval: interval.clone(),
            lower_half: false,
        });
    }
    let r = upper.len();
    debug_assert_eq!(r, iso.count());

    // Sample of arc j (between upper crossings j and j+1; the last upper
    // arc runs to the antipode of crossing 0 and is sampled below every
    // finite root).
    let k = gaps.refined.len(); // finite roots, ascending
    let mut samples: Vec<Rat> = Vec::with_capacity(r);
    if iso.infinity_root {
        if k > 0 {
            samples.push(gaps.after.clone());
            for j in 0..k.saturating_sub(1) {
                samples.push(gaps.between[k - 2 - j].clone());
            }
            samples.push(gaps.before.clone());
        } else {
            // Only [1:0] degenerates: one upper arc, any finite direction.
            samples.push(rat(0));
        }
    } else {
        for j in 0..k - 1 {
            samples.push(gaps.between[k - 2 - j].clone());
        }
        samples.push(gaps.before.clone());
    }
    debug_assert_eq!(samples.len(), r);

    let mut arcs: Vec<Signature> = Vec::with_capacity(2 * r);
    for c in &samples {
        arcs.push(signature_of(&pencil.fiber(c, &rat(1))));
    }
    // Antipodal arcs, computed directly at (-c, -1) and cross-checked
    // against the swap they must equal.
    for (j, c) in samples.iter().enumerate() {
        let direct = signature_of(&pencil.fiber(&-c.clone(), &rat(-1)));
        if direct != arcs[j].swapped() {
            return Err(Error::Internal(
                "antipodal arc signature does not swap".into(),
            ));
        }
        arcs.push(direct);
    }

    let mut crossings = upper.clone();
    crossings.extend(upper.into_iter().map(|mut c| {
        c.lower_half = true;
        c
    }));

    let m = 2 * r;
    let mut steps = Vec::with_capacity(m);
    for j in 0..m {
        let diff = arcs[(j + 1) % m].positives as i64 - arcs[j].positives as i64;
        steps.push(match diff {
            1 => Step::Up,
            -1 => Step::Down,
            _ => {
                return Err(Error::Internal(format!(
                    "signature jump of {diff} at crossing {}",
                    (j + 1) % m
                )))
            }
        });
    }
    let walk = SignatureWalk {
        ambient_dim: n,
        crossings,
        arcs,
        steps,
        abstract_positions: false,
    };
    validate_walk(&walk)?;
    Ok(walk)
}

/// The run-length invariant: lengths of the maximal ascending runs around
/// the circle, canonicalized to the lexicographic minimum over all cyclic
/// rotations and reversals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KrasnovInvariant {
    runs: Vec<usize>,
    ambient_dim: usize,
}

impl KrasnovInvariant {
    pub fn new(runs: Vec<usize>, ambient_dim: usize) -> Result<Self> {
        let n1 = ambient_dim + 1;
        if runs.is_empty() {
            if !n1.is_multiple_of(2) {
                return Err(Error::MalformedInvariant(
                    "empty invariant needs odd ambient dimension".into(),
                ));
            }
            return Ok(KrasnovInvariant { runs, ambient_dim });
        }
        if runs.len().is_multiple_of(2) {
            return Err(Error::MalformedInvariant(
                "invariant must have an odd number of runs".into(),
            ));
        }
        if runs.contains(&0) {
            return Err(Error::MalformedInvariant("runs must be positive".into()));
        }
        let total: usize = runs.iter().sum();
        if total > n1 {
            return Err(Error::MalformedInvariant(format!(
                "run sum {total} exceeds N+1 = {n1}"
            )));
        }
        if total % 2 != n1 % 2 {
            return Err(Error::MalformedInvariant(format!(
                "run sum {total} has wrong parity for N+1 = {n1}"
            )));
        }
        Ok(KrasnovInvariant {
            runs: canonical_necklace(&runs),
            ambient_dim,
        })
    }

    pub fn runs(&self) -> &[usize] {
        &self.runs
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Number of real degeneracy points this invariant encodes.
    pub fn total(&self) -> usize {
        self.runs.iter().sum()
    }
}

impl std::fmt::Display for KrasnovInvariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.runs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// Lexicographic minimum over all rotations of the sequence and of its
/// reversal.
pub fn canonical_necklace(seq: &[usize]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    let n = seq.len();
    let mut consider = |cand: Vec<usize>| {
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    };
    for start in 0..n {
        let rot: Vec<usize> = (0..n).map(|i| seq[(start + i) % n]).collect();
        let mut rev = rot.clone();
        rev.reverse();
        consider(rot);
        consider(rev);
    }
    best.unwrap_or_default()
}

/// Extracts the invariant from a walk: maximal cyclic runs of ascending
/// steps, in circular order.
pub fn krasnov_of(walk: &SignatureWalk) -> Result<KrasnovInvariant> {
    validate_walk(walk)?;
    if walk.steps.is_empty() {
        return KrasnovInvariant::new(vec![], walk.ambient_dim);
    }
    let m = walk.steps.len();
    let start = walk
        .steps
        .iter()
        .position(|s| *s == Step::Down)
        .ok_or_else(|| Error::Internal("walk with only ascending steps".into()))?;
    let mut runs = Vec::new();
    let mut current = 0usize;
    for i in 0..m {
        match walk.steps[(start + i) % m] {
            Step::Up => current += 1,
            Step::Down => {
                if current > 0 {
                    runs.push(current);
                    current = 0;
                }
            }
        }
    }
    if current > 0 {
        runs.push(current);
    }
    if runs.len() % 2 == 0 {
        return Err(Error::Internal(
            "walk produced an even number of ascending runs".into(),
        ));
    }
    KrasnovInvariant::new(runs, walk.ambient_dim)
}

/// Rebuilds the full walk (with abstract crossing positions) determined by
/// an invariant: the interleaved sign pattern for the first half circle,
/// its negation for the second, and absolute arc values solved from the
/// antipodal constraint p_{j+r} = (N+1) - p_j, which forces
/// p_j = (N+1 - S_j)/2 with S_j the signed sum of the r steps after arc j.
pub fn reconstruct_walk(inv: &KrasnovInvariant) -> Result<SignatureWalk> {
    let n = inv.ambient_dim;
    let n1 = n + 1;
    if inv.runs.is_empty() {
        return Ok(SignatureWalk {
            ambient_dim: n,
            crossings: vec![],
            arcs: vec![Signature {
                positives: n1 / 2,
                negatives: n1 / 2,
                corank: 0,
            }],
            steps: vec![],
            abstract_positions: true,
        });
    }
    let u = (inv.runs.len() - 1) / 2;
    let mut half: Vec<Step> = Vec::new();
    for m in 0..inv.runs.len() {
        let (step, run) = if m % 2 == 0 {
            (Step::Up, inv.runs[m / 2])
        } else {
            (Step::Down, inv.runs[u + m.div_ceil(2)])
        };
        half.extend(std::iter::repeat_n(step, run));
    }
    let r = inv.total();
    debug_assert_eq!(half.len(), r);
    let mut steps = half.clone();
    steps.extend(half.iter().map(|s| match s {
        Step::Up => Step::Down,
        Step::Down => Step::Up,
    }));
    let m = 2 * r;
    let mut arcs = Vec::with_capacity(m);
    for j in 0..m {
        let s_j: i64 = (0..r).map(|i| steps[(j + i) % m].delta()).sum();
        let num = n1 as i64 - s_j;
        if num % 2 != 0 || num < 0 {
            return Err(Error::MalformedInvariant(format!(
                "step sum {s_j} incompatible with N+1 = {n1}"
            )));
        }
        let p = (num / 2) as usize;
        if p > n1 {
            return Err(Error::MalformedInvariant(
                "reconstructed arc out of range".into(),
            ));
        }
        arcs.push(Signature {
            positives: p,
            negatives: n1 - p,
            corank: 0,
        });
    }
    let walk = SignatureWalk {
        ambient_dim: n,
        crossings: vec![],
        arcs,
        steps,
        abstract_positions: true,
    };
    validate_walk(&walk)?;
    Ok(walk)
}

/// Minimal negative count over the circle, with the derived height
/// h = N+1 - 2*I_min and the number of arcs attaining the minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightFrequency {
    pub i_min: usize,
    pub h: usize,
    pub f: usize,
}

/// Height and frequency read off an explicit walk.
pub fn height_frequency_of_walk(walk: &SignatureWalk) -> HeightFrequency {
    let i_min = walk.arcs.iter().map(|a| a.negatives).min().expect("arcs");
    let f = walk.arcs.iter().filter(|a| a.negatives == i_min).count();
    HeightFrequency {
        i_min,
        h: walk.ambient_dim + 1 - 2 * i_min,
        f,
    }
}

/// Height and frequency of an invariant, via reconstruction.
pub fn height_frequency(inv: &KrasnovInvariant) -> Result<HeightFrequency> {
    Ok(height_frequency_of_walk(&reconstruct_walk(inv)?))
}

/// Full pipeline on a pencil. Height/frequency are computed both directly
/// from the walk and through reconstruction; disagreement is an internal
/// error.
pub fn krasnov_of_pencil(pencil: &QuadricPencil) -> Result<(KrasnovInvariant, HeightFrequency)> {
    let walk = compute_walk(pencil)?;
    let inv = krasnov_of(&walk)?;
    let direct = height_frequency_of_walk(&walk);
    let reconstructed = height_frequency(&inv)?;
    if direct != reconstructed {
        return Err(Error::Internal(format!(
            "height/frequency mismatch: walk gives {direct:?}, reconstruction gives {reconstructed:?}"
        )));
    }
    Ok((inv, direct))
}

//! Real root isolation for squarefree binary forms via Sturm sequences.
//!
//! Roots on the projective line are reported in the chart t = 1 (coordinate
//! x = s/t) as open rational intervals containing exactly one root each,
//! plus an explicit marker for the root `[1:0]`. Intervals can be refined to
//! any requested width, which is what the signature walk relies on to pick
//! exact sample points strictly between crossings.

use num_traits::{Signed, Zero};

use super::poly::{is_squarefree, BinaryForm, UniPoly};
use super::rat::{rat, Rat};
use crate::Error;

/// Isolated real roots of a squarefree binary form.
#[derive(Debug, Clone)]
pub struct RootIsolation {
    /// Disjoint open intervals (a, b), ascending, one real root each, in the
    /// chart t = 1.
    pub intervals: Vec<(Rat, Rat)>,
    /// Whether `[1:0]` is a root of the form.
    pub infinity_root: bool,
    /// Isolation was performed on squarefree input.
    pub multiplicity_free: bool,
}

impl RootIsolation {
    /// Total number of real projective roots.
    pub fn count(&self) -> usize {
        self.intervals.len() + usize::from(self.infinity_root)
    }
}

/// Sturm chain of a squarefree polynomial, content-normalized at each step
/// (positive scalars preserve the sign-variation count).
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(f: &UniPoly) -> SturmChain {
        let mut chain = vec![f.primitive()];
        let d = f.derivative();
        if !d.is_zero() {
            chain.push(d.primitive());
            loop {
                let k = chain.len();
                let (_, r) = chain[k - 2].div_rem(&chain[k - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg().primitive_keep_sign());
            }
        }
        SturmChain { chain }
    }

    fn variations<F: Fn(&UniPoly) -> i32>(&self, sign_of: F) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.chain {
            let s = sign_of(p);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    pub fn variations_at(&self, x: &Rat) -> usize {
        self.variations(|p| super::rat::sign(&p.eval(x)))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        self.variations(|p| match p.degree() {
            None => 0,
            Some(d) => {
                let s = super::rat::sign(&p.leading());
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        })
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        self.variations(|p| match p.degree() {
            None => 0,
            Some(_) => super::rat::sign(&p.leading()),
        })
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn roots_in(&self, a: &Rat, b: &Rat) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }

    pub fn total_real_roots(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

impl UniPoly {
    /// Like `primitive` but preserving the sign (used inside Sturm chains,
    /// where flipping signs would corrupt variation counts).
    fn primitive_keep_sign(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.primitive();
        if self.leading().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Cauchy bound: all real roots lie in (-B, B).
    pub fn root_bound(&self) -> Rat {
        let d = self.degree().expect("root bound of zero polynomial");
        let lead = self.leading();
        let mut max = Rat::zero();
        for c in &self.coeffs[..d] {
            let q = (c / &lead).abs();
            if q > max {
                max = q;
            }
        }
        max + rat(1)
    }
}

/// Isolates every real projective root of a squarefree binary form.
pub fn isolate_real_roots(f: &BinaryForm) -> Result<RootIsolation, Error> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if !is_squarefree(f)? {
        return Err(Error::NotSquarefree);
    }
    let infinity_root = f.infinity_multiplicity() == 1;
    let p = f.dehomogenize();
    if p.degree().unwrap_or(0) == 0 {
        return Ok(RootIsolation {
            intervals: vec![],
            infinity_root,
            multiplicity_free: true,
        });
    }
    let chain = SturmChain::new(&p);
    let bound = p.root_bound();
    let mut intervals = Vec::new();
    // (a, b] segments with their root counts; split until each holds one.
    let total = chain.roots_in(&-bound.clone(), &bound);
    let mut stack = vec![(-bound.clone(), bound.clone(), total)];
    while let Some((a, b, k)) = stack.pop() {
        match k {
            0 => {}
            1 => intervals.push(settle_single(&p, &chain, a, b)),
            _ => {
                let mid = (&a + &b) / rat(2);
                let left = chain.roots_in(&a, &mid);
                stack.push((a, mid.clone(), left));
                stack.push((mid, b, k - left));
            }
        }
    }
    intervals.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(RootIsolation {
        intervals,
        infinity_root,
        multiplicity_free: true,
    })
}

/// Turns a half-open (a, b] known to hold exactly one root into an open
/// interval with non-root endpoints. Either endpoint can be an exact
/// rational root hit by bisection: b when it is the isolated root itself,
/// a when it carries the root of the adjacent segment.
fn settle_single(p: &UniPoly, chain: &SturmChain, a: Rat, b: Rat) -> (Rat, Rat) {
    if p.eval(&b).is_zero() {
        // b is the isolated root; shrink symmetrically around it.
        let mut delta = (&b - &a) / rat(4);
        loop {
            let lo = &b - &delta;
            let hi = &b + &delta;
            if !p.eval(&lo).is_zero() && !p.eval(&hi).is_zero() && chain.roots_in(&lo, &hi) == 1 {
                return (lo, hi);
            }
            delta /= rat(2);
        }
    }
    let mut lo = a;
    if p.eval(&lo).is_zero() {
        // The root in (a, b] is strictly above a; nudge the left end.
        let mut delta = (&b - &lo) / rat(4);
        loop {
            let cand = &lo + &delta;
            if !p.eval(&cand).is_zero() && chain.roots_in(&cand, &b) == 1 {
                lo = cand;
                break;
            }
            delta /= rat(2);
        }
    }
    (lo, b)
}

/// Bisects an isolating interval of `p` until it is narrower than `width`.
pub fn refine_interval(p: &UniPoly, interval: &(Rat, Rat), width: &Rat) -> (Rat, Rat) {
    let (mut lo, mut hi) = interval.clone();
    let sign_lo = super::rat::sign(&p.eval(&lo));
    debug_assert!(sign_lo != 0, "isolating interval endpoint is a root");
    while &hi - &lo >= *width {
        let mid = (&lo + &hi) / rat(2);
        let sm = super::rat::sign(&p.eval(&mid));
        if sm == 0 {
            // The root is exactly mid; clamp a tiny symmetric interval.
            let quarter = (&hi - &lo) / rat(8);
            return ((&mid - &quarter).max(lo), (&mid + &quarter).min(hi));
        }
        if sm == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Refines the isolation until consecutive intervals are separated by a
/// positive gap, then returns exact rational samples strictly between
/// consecutive roots: `before` (below every root), `between[i]` (between
/// root i and root i+1), `after` (above every root). These are non-roots by
/// construction since they avoid every isolating interval.
pub struct GapSamples {
    pub refined: Vec<(Rat, Rat)>,
    pub before: Rat,
    pub between: Vec<Rat>,
    pub after: Rat,
}

pub fn gap_samples(p: &UniPoly, isolation: &RootIsolation) -> GapSamples {
    let mut refined = isolation.intervals.clone();
    while !refined.windows(2).all(|w| w[0].1 < w[1].0) {
        for iv in refined.iter_mut() {
            let half = (&iv.1 - &iv.0) / rat(2);
            *iv = refine_interval(p, iv, &half);
        }
    }
    let before = refined.first().map_or_else(Rat::zero, |iv| &iv.0 - rat(1));
    let after = refined.last().map_or_else(Rat::zero, |iv| &iv.1 + rat(1));
    let between = refined
        .windows(2)
        .map(|w| (&w[0].1 + &w[1].0) / rat(2))
        .collect();
    GapSamples {
        refined,
        before,
        between,
        after,
    }
}

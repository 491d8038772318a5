//! Brute-force finite-field oracles: point counts, plane censuses, the
//! reduction bijection, and reduced-scheme lengths, all by exhaustive
//! enumeration at desk scale.

pub mod census;
pub mod field;
pub mod schemes;

pub use census::{
    census_planes, count_points, enumeration_ceiling, find_plane, gaussian_binomial, FqPlane,
    PlaneCensus, DEFAULT_CEILING,
};
pub use field::{FiniteField, FpPoly, PrimeField, QuadExtField};
pub use schemes::{
    check_reduction_bijection, reduced_scheme_length, BijectionCounts, LengthReport, ReducedModP,
};

use num_traits::Zero;

use crate::exact::{Mat, Rat, SymMat};
use crate::pencil::{LinearSubspace, QuadricPencil};
use crate::{Error, Result};

/// One rational reduced modulo p; denominators prime to p required.
pub fn rat_mod_p(x: &Rat, field: &PrimeField) -> Result<u64> {
    let p = field.p;
    let pb = num_bigint::BigInt::from(p);
    let den = (x.denom() % &pb + &pb) % &pb;
    let den: u64 = den.try_into().expect("residue fits");
    let Some(den_inv) = field.inv(den) else {
        return Err(Error::BadReduction {
            prime: p,
            reason: format!("denominator of {x} vanishes"),
        });
    };
    let num = (x.numer() % &pb + &pb) % &pb;
    let num: u64 = num.try_into().expect("residue fits");
    Ok(field.mul(num, den_inv))
}

pub fn mat_mod_p(m: &Mat, field: &PrimeField) -> Result<Vec<Vec<u64>>> {
    m.rows
        .iter()
        .map(|row| row.iter().map(|x| rat_mod_p(x, field)).collect())
        .collect()
}

/// A pencil with good reduction modulo an odd prime: entries reduce and
/// the degeneracy form stays squarefree of full degree.
#[derive(Debug, Clone)]
pub struct FqPencil {
    pub prime: u64,
    pub ambient_dim: usize,
    pub q0: Vec<Vec<u64>>,
    pub q1: Vec<Vec<u64>>,
    /// Coefficients of the degeneracy form mod p (c_i multiplies
    /// s^(N+1-i) t^i).
    pub delta: Vec<u64>,
}

impl FqPencil {
    pub fn reduce(pencil: &QuadricPencil, prime: u64) -> Result<FqPencil> {
        FqPencil::from_sym_mats(pencil.ambient_dim(), pencil.q0(), pencil.q1(), prime)
    }

    pub fn from_sym_mats(
        ambient_dim: usize,
        q0: &SymMat,
        q1: &SymMat,
        prime: u64,
    ) -> Result<FqPencil> {
        let field = PrimeField::new(prime)?;
        let q0m = mat_mod_p(q0.mat(), &field)?;
        let q1m = mat_mod_p(q1.mat(), &field)?;
        let delta_form = crate::exact::binary_det(q0, q1)?;
        if delta_form.is_zero() {
            return Err(Error::MalformedPencil);
        }
        let delta: Vec<u64> = delta_form
            .coeffs
            .iter()
            .map(|c| rat_mod_p(c, &field))
            .collect::<Result<Vec<_>>>()?;
        // Good reduction: squarefree of full degree N+1 over F_p. The
        // infinity multiplicity is the number of leading zero
        // coefficients; the finite part must be squarefree.
        if delta.iter().all(|&c| c == 0) {
            return Err(Error::BadReduction {
                prime,
                reason: "degeneracy form vanishes".into(),
            });
        }
        let inf_mult = delta.iter().take_while(|&&c| c == 0).count();
        if inf_mult > 1 {
            return Err(Error::BadReduction {
                prime,
                reason: "repeated degeneration at [1:0]".into(),
            });
        }
        let dehom = FpPoly::new(delta.iter().rev().copied().collect(), &field);
        let fine = match dehom.degree() {
            None | Some(0) => false,
            Some(_) => dehom.is_squarefree(&field),
        };
        if !fine {
            return Err(Error::BadReduction {
                prime,
                reason: "degeneracy form is not squarefree".into(),
            });
        }
        Ok(FqPencil {
            prime,
            ambient_dim,
            q0: q0m,
            q1: q1m,
            delta,
        })
    }

    pub fn size(&self) -> usize {
        self.ambient_dim + 1
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.prime }
    }

    /// Dehomogenized degeneracy form over F_p.
    pub fn delta_poly(&self, field: &PrimeField) -> FpPoly {
        FpPoly::new(self.delta.iter().rev().copied().collect(), field)
    }
}

/// Reduces a plane basis modulo p, requiring full rank downstairs.
pub fn reduce_plane(ell: &LinearSubspace, prime: u64) -> Result<FqPlane> {
    let field = PrimeField::new(prime)?;
    let rows = mat_mod_p(ell.basis(), &field)?;
    if census::rank_over(&field, &rows) < rows.len() {
        return Err(Error::BadReduction {
            prime,
            reason: "plane basis drops rank".into(),
        });
    }
    Ok(rows)
}

/// True if every denominator in the pencil is a unit mod p (cheap
/// pre-check before attempting reduction).
pub fn denominators_clear(pencil: &QuadricPencil, prime: u64) -> bool {
    let pb = num_bigint::BigInt::from(prime);
    let ok = |m: &SymMat| {
        m.mat()
            .rows
            .iter()
            .all(|row| row.iter().all(|x| !(x.denom() % &pb).is_zero()))
    };
    ok(pencil.q0()) && ok(pencil.q1())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn reduction_respects_denominators() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(rat_mod_p(&ratio(1, 2), &f).unwrap(), 3); // 1/2 = 3 mod 5
        assert_eq!(rat_mod_p(&ratio(-1, 3), &f).unwrap(), 3); // -2 * 2 = ... check: -1/3 = 4 * 2 = 8 = 3
        assert!(rat_mod_p(&ratio(1, 5), &f).is_err());
    }

    #[test]
    fn good_reduction_detects_collisions() {
        // diag(1, 2, 7) collides with diag(1, 2, 2) mod 5
        let p = QuadricPencil::new(SymMat::identity(3), SymMat::diagonal_i64(&[1, 2, 7])).unwrap();
        assert!(FqPencil::reduce(&p, 5).is_err());
        // roots -1, -2, -7 also collide mod 3 (both -1 and -7 become 2)
        assert!(FqPencil::reduce(&p, 3).is_err());
        assert!(FqPencil::reduce(&p, 11).is_ok());
    }

    #[test]
    fn point_count_on_smooth_curve() {
        // A smooth (2,2) curve in P^3 has genus 1, so it always has points
        // over F_7 by the Hasse bound.
        let p = QuadricPencil::new(
            SymMat::diagonal_i64(&[1, -1, 1, -2]),
            SymMat::diagonal_i64(&[2, -1, 3, -1]),
        )
        .unwrap();
        let fp = FqPencil::reduce(&p, 7).unwrap();
        let n = count_points(&fp);
        assert!(n >= 1, "genus-1 curve must have F_7 points");
    }
}

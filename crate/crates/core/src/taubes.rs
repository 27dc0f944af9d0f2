//! Decidable nonvanishing classifiers for the Gromov-Taubes and
//! Seiberg-Witten invariants on the Enriques surface and its one-point
//! blowup, and the connected embedded-representative criterion.
//!
//! A class on the blowup is `B + l e` with `B` in the Enriques lattice
//! (torsion bit meaningful) and `l` the exceptional multiplicity. The
//! orientation convention is fixed throughout: the symplectic form pairs
//! positively with `e`, so the symplectic canonical class is `K - e` and
//! flipping the sign of `l` is *not* a symmetry of the classifiers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{forward_reference, l as l_class, pairing, psi, square, Basis, LatticeVector};
use crate::rat::{rat_int, Rat};

/// `B + l e` on the blowup; `l = 0` covers classes on the minimal surface,
/// where the two dimension formulas agree.
#[derive(Debug, Clone)]
pub struct BlowupClass {
    pub b: LatticeVector,
    pub l: i64,
}

impl BlowupClass {
    pub fn new(b: LatticeVector, l: i64) -> Result<Self> {
        if b.basis() != Basis::E {
            return Err(Error::BasisMismatch {
                expected: Basis::E,
                got: b.basis(),
            });
        }
        Ok(Self { b, l })
    }

    pub fn is_trivial(&self) -> bool {
        self.b.is_trivial() && self.l == 0
    }
}

/// Complex Gromov-Taubes dimension `(B^2 + c1 . B~) / 2`. On the blowup the
/// first Chern class is `c1(S) - e` with `c1(S)` torsion, giving
/// `(B^2 - l^2 + l) / 2`; `l = 0` recovers `B^2 / 2` on the minimal surface.
pub fn gt_dimension(class: &BlowupClass) -> Rat {
    let b_sq = square(&class.b);
    let l = rat_int(class.l);
    (b_sq - &l * &l + l) / rat_int(2)
}

/// Membership of the torsion-free part in the closed forward cone:
/// zero, or nonnegative square pairing positively with the reference class.
pub fn forward_closure_member(b: &LatticeVector) -> Result<bool> {
    let bf = b.torsion_free();
    if bf.is_zero() {
        return Ok(true);
    }
    let sq = square(&bf);
    if sq < Rat::from_integer(0.into()) {
        return Ok(false);
    }
    let toward = pairing(&bf, &forward_reference(bf.basis())?)?;
    Ok(toward > Rat::from_integer(0.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub gr_nonzero: bool,
    pub gr_prime_nonzero: bool,
    pub sw_nonzero: bool,
}

/// The nonvanishing classification on the blowup:
/// * `Gr(B + le) != 0` iff `B^2 >= l^2 - l`, `l <= 1`, and the torsion-free
///   part is in the closed forward cone;
/// * `Gr'(B + le) != 0` iff `SW(B + le) != 0` iff the cone condition holds
///   and either `B^2 >= l^2 - l` or `l >= 2`.
///
/// With `l = 0` all three coincide with the minimal-surface criterion.
pub fn classify(class: &BlowupClass) -> Result<Classification> {
    let fwd = forward_closure_member(&class.b)?;
    let b_sq = square(&class.b);
    let dim_ok = b_sq >= rat_int(class.l * class.l - class.l);
    let gr_nonzero = fwd && dim_ok && class.l <= 1;
    let sw_nonzero = fwd && (dim_ok || class.l >= 2);
    Ok(Classification {
        gr_nonzero,
        gr_prime_nonzero: sw_nonzero,
        sw_nonzero,
    })
}

/// Criterion for a connected embedded symplectic representative on the
/// blowup: `B^2 >= l^2 - l`, `l <= 0`, torsion-free part in the closed
/// forward cone. The zero class is rejected as degenerate.
pub fn connected_rep_exists(class: &BlowupClass) -> Result<bool> {
    if class.is_trivial() {
        return Err(Error::ZeroClass);
    }
    let b_sq = square(&class.b);
    Ok(b_sq >= rat_int(class.l * class.l - class.l)
        && class.l <= 0
        && forward_closure_member(&class.b)?)
}

/// Whether an `L`-basis class on the blowup is realized by a symplectic
/// form: positive square, forward, and nonzero pairing with the exceptional
/// class.
pub fn symplectic_cone_member(a: &LatticeVector) -> Result<bool> {
    if a.basis() != Basis::L {
        return Err(Error::BasisMismatch {
            expected: Basis::L,
            got: a.basis(),
        });
    }
    let sq = square(a);
    let toward = pairing(a, &l_class(0))?;
    let e_img = psi(&LatticeVector::zero(Basis::E), &Rat::from_integer(1.into()))?;
    let with_e = pairing(a, &e_img)?;
    use num_traits::Zero;
    Ok(sq > Rat::from_integer(0.into())
        && toward > Rat::from_integer(0.into())
        && !with_e.is_zero())
}

//! Invariants over the chamber: the isotropic-class infimum, algebraic
//! capacities, the squared symplectic radius, the two Kahler-function bounds,
//! and the witness comparison between them.
//!
//! Classes of `Q_S` are enumerated in `L` coordinates as
//! `F = c l0 - sum d_i l_i` with `sum d_i = 3c` (orthogonality to `k`).
//! Enumeration is bounded by `c <= c_max`; results are labeled as verified up
//! to the bound rather than claimed globally minimal, except where a
//! monotonicity argument applies.

use num_traits::{One, Signed};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chamber::{extreme_points, ChamberPoint, Region};
use crate::error::{Error, Result};
use crate::lattice::{pairing, Basis, LatticeVector};
use crate::rat::{rat, rat_int, rat_str, Rat};

/// Bound on the `l0`-coefficient of enumerated classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBound(pub u32);

impl EnumerationBound {
    pub fn c_max(self) -> i64 {
        i64::from(self.0.max(1))
    }
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as i64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Minimum of `sum d_i^2` over `m` integers summing to `s`.
fn min_sumsq(s: i64, m: i64) -> i64 {
    let q = s.div_euclid(m);
    let r = s.rem_euclid(m);
    (m - r) * q * q + r * (q + 1) * (q + 1)
}

/// All integer tuples `(d_1..d_10)` with `sum d = target_sum` and
/// `sq_min <= sum d^2 <= sq_max`, in lexicographic order.
fn enumerate_d(target_sum: i64, sq_min: i64, sq_max: i64) -> Vec<[i64; 10]> {
    let mut out = Vec::new();
    let mut d = [0i64; 10];
    fn go(
        pos: usize,
        rem_sum: i64,
        rem_sq_lo: i64,
        rem_sq_hi: i64,
        d: &mut [i64; 10],
        out: &mut Vec<[i64; 10]>,
    ) {
        let m = (10 - pos) as i64;
        if m == 0 {
            if rem_sum == 0 && rem_sq_lo <= 0 && rem_sq_hi >= 0 {
                out.push(*d);
            }
            return;
        }
        if min_sumsq(rem_sum, m) > rem_sq_hi {
            return;
        }
        let bound = isqrt(rem_sq_hi);
        for v in -bound..=bound {
            d[pos] = v;
            go(
                pos + 1,
                rem_sum - v,
                rem_sq_lo - v * v,
                rem_sq_hi - v * v,
                d,
                out,
            );
        }
        d[pos] = 0;
    }
    go(0, target_sum, sq_min, sq_max, &mut d, &mut out);
    out
}

fn qs_class(c: i64, d: &[i64; 10]) -> LatticeVector {
    let mut coeffs = [0i64; 11];
    coeffs[0] = c;
    for (i, &di) in d.iter().enumerate() {
        coeffs[i + 1] = -di;
    }
    LatticeVector::integral(Basis::L, &coeffs).unwrap()
}

/// All integral isotropic classes of `Q_S` with `1 <= c <= c_max`:
/// `sum d_i = 3c` and `sum d_i^2 = c^2`.
pub fn isotropic_enumerate(bound: EnumerationBound) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    for c in 1..=bound.c_max() {
        for d in enumerate_d(3 * c, c * c, c * c) {
            out.push(qs_class(c, &d));
        }
    }
    out
}

fn require_closed(p: &ChamberPoint) -> Result<()> {
    if p.in_region(Region::ClosedChamber) {
        Ok(())
    } else {
        Err(Error::OutsideChamber)
    }
}

/// The closed form of the isotropic infimum on the chamber: the last
/// coordinate.
pub fn phi_closed_form(p: &ChamberPoint) -> Result<Rat> {
    require_closed(p)?;
    Ok(p.coords()[9].clone())
}

/// Brute-force isotropic infimum: minimum of `|b . F|` over the classes
/// enumerated up to the bound, together with the minimizer. Verified up to
/// the bound only; global minimality is a convexity statement, not
/// re-established by finite search.
pub fn phi_bruteforce(
    p: &ChamberPoint,
    bound: EnumerationBound,
) -> Result<(Rat, LatticeVector)> {
    require_closed(p)?;
    let classes = isotropic_enumerate(bound);
    if classes.is_empty() {
        return Err(Error::InfeasibleBound(bound.0));
    }
    let b = p.class();
    // ties broken toward lexicographically least coefficients (smallest c,
    // then greatest d), so symmetric points yield the canonical minimizer
    let mut best: Option<(Rat, LatticeVector)> = None;
    for f in classes {
        let v = pairing(&b, &f)?.abs();
        let better = match best.as_ref() {
            None => true,
            Some((bv, bf)) => v < *bv || (v == *bv && f.coeffs() < bf.coeffs()),
        };
        if better {
            best = Some((v, f));
        }
    }
    Ok(best.unwrap())
}

/// Which classes count as nef in the capacity enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NefModel {
    /// The closed forward cone: the unnodal model, where no smooth
    /// `(-2)`-curve obstructs.
    ForwardCone,
    /// Nonnegative pairing with all nine vertex classes: the dual of the
    /// fundamental cone.
    ChamberDual,
}

impl Default for NefModel {
    fn default() -> Self {
        NefModel::ForwardCone
    }
}

#[derive(Debug, Clone)]
pub struct CapacityResult {
    pub value: Rat,
    pub argmin: LatticeVector,
    pub certified: bool,
}

fn is_nef(f: &LatticeVector, c: i64, f_sq: i64, model: NefModel, vclasses: &[LatticeVector]) -> bool {
    match model {
        NefModel::ForwardCone => f_sq >= 0 && c > 0,
        NefModel::ChamberDual => vclasses
            .iter()
            .all(|vc| !pairing(vc, f).expect("same basis").is_negative()),
    }
}

/// Minimum of `b . F` over nonzero integral `F` in `Q_S` with `F^2 >= 2k`
/// and the chosen nef condition, `1 <= c <= c_max`.
///
/// `certified` is set when the equal-coefficient monotonicity argument
/// applies: at a point with all coordinates equal, `b . F = c (1 - 3 b1)`
/// grows strictly with `c`, so no class beyond the bound can undercut a
/// minimizer found within it.
pub fn alg_capacity(
    p: &ChamberPoint,
    k: i64,
    bound: EnumerationBound,
    model: NefModel,
) -> Result<CapacityResult> {
    assert!(k >= 0, "capacities are defined for k >= 0");
    require_closed(p)?;
    let b = p.class();
    // all ten extreme-point classes; for the enumerated c >= 1 the apex
    // pairing c/10 is automatically positive, so this matches the
    // wall-vertex test there while staying sound as a chamber-dual cone
    let vclasses: Vec<LatticeVector> = extreme_points().iter().map(ChamberPoint::class).collect();
    // ties broken toward lexicographically greatest d, so symmetric points
    // get the canonical descending representative
    let mut best: Option<(Rat, [i64; 10], LatticeVector)> = None;
    for c in 1..=bound.c_max() {
        let sq_hi = c * c - 2 * k;
        if sq_hi < min_sumsq(3 * c, 10) {
            continue;
        }
        for d in enumerate_d(3 * c, 0, sq_hi) {
            let sumsq: i64 = d.iter().map(|x| x * x).sum();
            let f = qs_class(c, &d);
            if !is_nef(&f, c, c * c - sumsq, model, &vclasses) {
                continue;
            }
            let v = pairing(&b, &f)?;
            let better = match best.as_ref() {
                None => true,
                Some((bv, bd, _)) => v < *bv || (v == *bv && d > *bd),
            };
            if better {
                best = Some((v, d, f));
            }
        }
    }
    let best = best.map(|(v, _, f)| (v, f));
    let (value, argmin) = best.ok_or(Error::InfeasibleBound(bound.0))?;
    let equal_point = p.coords().windows(2).all(|w| w[0] == w[1]);
    Ok(CapacityResult {
        value,
        argmin,
        certified: equal_point,
    })
}

/// `1 - sum b_i^2`, the square of the supremal exceptional weight carried by
/// a symplectic class over the chamber point.
pub fn symp_radius_squared(p: &ChamberPoint) -> Result<Rat> {
    require_closed(p)?;
    let sumsq: Rat = p.coords().iter().map(|b| b * b).sum();
    Ok(Rat::one() - sumsq)
}

/// The sandwich `(b10, 2 b10)` bounding the Kahler function.
pub fn kahler_bounds(p: &ChamberPoint) -> Result<(Rat, Rat)> {
    let phi = phi_closed_form(p)?;
    let upper = rat_int(2) * &phi;
    Ok((phi, upper))
}

/// Exact comparison of the squared symplectic radius against the squared
/// Kahler upper bound. A `true` verdict certifies a chamber point where the
/// symplectic cone strictly exceeds the Kahler cone of the blowup.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub s_squared: String,
    pub upper_squared: String,
    pub verdict: bool,
    pub margin: String,
}

pub fn non_kahler_witness(p: &ChamberPoint) -> Result<WitnessReport> {
    let s2 = symp_radius_squared(p)?;
    let (_, upper) = kahler_bounds(p)?;
    let upper2 = &upper * &upper;
    let margin = &s2 - &upper2;
    Ok(WitnessReport {
        s_squared: rat_str(&s2),
        upper_squared: rat_str(&upper2),
        verdict: margin.is_positive(),
        margin: rat_str(&margin),
    })
}

/// Full exact record for one chamber point.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub point: ChamberPoint,
    pub phi: String,
    pub c_alg: Vec<CapacityEntry>,
    pub s_squared: String,
    pub kahler_lower: String,
    pub kahler_upper: String,
    pub non_kahler: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CapacityEntry {
    pub k: i64,
    pub value: String,
    pub argmin: LatticeVector,
    pub certified: bool,
}

pub fn invariant_report(
    p: &ChamberPoint,
    ks: &[i64],
    bound: EnumerationBound,
    model: NefModel,
) -> Result<InvariantReport> {
    let phi = phi_closed_form(p)?;
    let (lower, upper) = kahler_bounds(p)?;
    let s2 = symp_radius_squared(p)?;
    let witness = non_kahler_witness(p)?;
    let mut c_alg = Vec::new();
    for &k in ks {
        let cap = alg_capacity(p, k, bound, model)?;
        c_alg.push(CapacityEntry {
            k,
            value: rat_str(&cap.value),
            argmin: cap.argmin,
            certified: cap.certified,
        });
    }
    Ok(InvariantReport {
        point: p.clone(),
        phi: rat_str(&phi),
        c_alg,
        s_squared: rat_str(&s2),
        kahler_lower: rat_str(&lower),
        kahler_upper: rat_str(&upper),
        non_kahler: witness.verdict,
    })
}

// --- region sampling ----------------------------------------------------------

/// Draws from `[lo, hi]` with extra mass on the endpoints; the chamber is
/// thin around the equal-coefficient apex, so pushing toward range edges
/// is what reaches the small-`b10` corner where witnesses live.
fn spread(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    match rng.gen_range(0..4u32) {
        0 => lo,
        1 => hi,
        _ => rng.gen_range(lo..=hi),
    }
}

/// Builds one sorted tuple `n1 >= ... >= n10 >= 1` with `sum = 3 denom` and
/// `n1+n2+n3 <= denom` by sampling each part inside its exact feasibility
/// window: first the top-three sum `t` (forced into `[ceil(9 denom/10),
/// denom]`), then `n3, n2` (with `n1` the remainder of the block), then the
/// tail where the `i`-th part is the max of the `m` still unplaced and so
/// lives in `[ceil(R/m), min(prev, R-(m-1))]`. Returns `None` when a window
/// closes, which only happens for denominators too small to reach the
/// chamber.
fn sample_point(rng: &mut ChaCha8Rng, denom: i64) -> Option<[i64; 10]> {
    let total = 3 * denom;
    let t_lo = (9 * denom + 9) / 10;
    if t_lo > denom {
        return None;
    }
    let t = spread(rng, t_lo, denom);
    let lo3 = 1.max((total - t + 6) / 7);
    let hi3 = t / 3;
    if lo3 > hi3 {
        return None;
    }
    let n3 = spread(rng, lo3, hi3);
    let hi2 = (t - n3) / 2;
    if n3 > hi2 {
        return None;
    }
    let n2 = spread(rng, n3, hi2);
    let mut parts = [0i64; 10];
    parts[0] = t - n2 - n3;
    parts[1] = n2;
    parts[2] = n3;
    let mut r = total - t;
    let mut prev = n3;
    for i in 3..10 {
        let m = (10 - i) as i64;
        if m == 1 {
            parts[9] = r;
            break;
        }
        let lo = (r + m - 1) / m;
        let hi = prev.min(r - (m - 1));
        if lo > hi {
            return None;
        }
        let v = spread(rng, lo, hi);
        parts[i] = v;
        prev = v;
        r -= v;
    }
    if parts[9] < 1 || parts[9] > parts[8] {
        return None;
    }
    Some(parts)
}

/// Deterministic sampler for rational chamber points with the given
/// denominator; each point is emitted with its witness report.
pub fn sample_region(
    n: usize,
    seed: u64,
    denom: u64,
) -> Result<Vec<(ChamberPoint, WitnessReport)>> {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_tries_per_point: u64 = 10_000;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut tries = 0u64;
        loop {
            tries += 1;
            if tries > max_tries_per_point {
                return Err(Error::SamplingExhausted {
                    denom,
                    tries: max_tries_per_point,
                });
            }
            let Some(parts) = sample_point(&mut rng, denom as i64) else {
                continue;
            };
            let p = ChamberPoint::from_i64(&parts, denom as i64);
            debug_assert!(p.in_region(Region::Chamber));
            let report = non_kahler_witness(&p)?;
            out.push((p, report));
            break;
        }
    }
    Ok(out)
}

/// Fraction of `true` verdicts in a sample.
pub fn witness_fraction(sample: &[(ChamberPoint, WitnessReport)]) -> Rat {
    let hits = sample.iter().filter(|(_, r)| r.verdict).count();
    rat(hits as i64, sample.len() as i64)
}

//! The covering K3 lattice `2(-E8) + 3U`, the covering involution, its
//! invariant and anti-invariant sublattices, the pullback from the Enriques
//! lattice, and bounded period-point checks.
//!
//! Block order is `x, y, z1, z2, z3`: two `-E8` blocks in the `r0..r7` basis
//! followed by three hyperbolic planes.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{minus_e8_gram, Basis, LatticeVector};
use crate::rat::{common_denominator, parse_rat, rat_str, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K3Vector {
    pub x: [Rat; 8],
    pub y: [Rat; 8],
    pub z1: [Rat; 2],
    pub z2: [Rat; 2],
    pub z3: [Rat; 2],
}

fn zeros<const N: usize>() -> [Rat; N] {
    std::array::from_fn(|_| Rat::zero())
}

impl K3Vector {
    pub fn zero() -> Self {
        Self {
            x: zeros(),
            y: zeros(),
            z1: zeros(),
            z2: zeros(),
            z3: zeros(),
        }
    }

    pub fn from_integral(x: [i64; 8], y: [i64; 8], z1: [i64; 2], z2: [i64; 2], z3: [i64; 2]) -> Self {
        let conv = |v: i64| Rat::from_integer(BigInt::from(v));
        Self {
            x: x.map(conv),
            y: y.map(conv),
            z1: z1.map(conv),
            z2: z2.map(conv),
            z3: z3.map(conv),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.flat().iter().all(|c| c.is_zero())
    }

    pub fn neg(&self) -> Self {
        Self {
            x: self.x.clone().map(|c| -c),
            y: self.y.clone().map(|c| -c),
            z1: self.z1.clone().map(|c| -c),
            z2: self.z2.clone().map(|c| -c),
            z3: self.z3.clone().map(|c| -c),
        }
    }

    pub fn flat(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(22);
        out.extend(self.x.iter().cloned());
        out.extend(self.y.iter().cloned());
        out.extend(self.z1.iter().cloned());
        out.extend(self.z2.iter().cloned());
        out.extend(self.z3.iter().cloned());
        out
    }

    pub fn from_flat(coeffs: &[Rat]) -> Result<Self> {
        if coeffs.len() != 22 {
            return Err(Error::BadRank {
                basis: Basis::K3,
                expected: 22,
                got: coeffs.len(),
            });
        }
        let mut v = K3Vector::zero();
        for i in 0..8 {
            v.x[i] = coeffs[i].clone();
            v.y[i] = coeffs[8 + i].clone();
        }
        for i in 0..2 {
            v.z1[i] = coeffs[16 + i].clone();
            v.z2[i] = coeffs[18 + i].clone();
            v.z3[i] = coeffs[20 + i].clone();
        }
        Ok(v)
    }

    pub fn to_lattice_vector(&self) -> LatticeVector {
        LatticeVector::new(Basis::K3, self.flat()).unwrap()
    }
}

fn u_pairing(a: &[Rat; 2], b: &[Rat; 2]) -> Rat {
    &a[0] * &b[1] + &a[1] * &b[0]
}

fn e8_block_pairing(a: &[Rat; 8], b: &[Rat; 8]) -> Rat {
    let g = minus_e8_gram();
    let mut acc = Rat::zero();
    for (i, gi) in g.iter().enumerate() {
        if a[i].is_zero() {
            continue;
        }
        for (j, &gij) in gi.iter().enumerate() {
            if gij != 0 {
                acc += &a[i] * &b[j] * Rat::from_integer(BigInt::from(gij));
            }
        }
    }
    acc
}

pub fn k3_pairing(v: &K3Vector, w: &K3Vector) -> Rat {
    e8_block_pairing(&v.x, &w.x)
        + e8_block_pairing(&v.y, &w.y)
        + u_pairing(&v.z1, &w.z1)
        + u_pairing(&v.z2, &w.z2)
        + u_pairing(&v.z3, &w.z3)
}

pub fn k3_square(v: &K3Vector) -> Rat {
    k3_pairing(v, v)
}

/// The covering involution on cohomology:
/// `(x, y, z1, z2, z3) -> (y, x, -z1, z3, z2)`.
pub fn iota_star(v: &K3Vector) -> K3Vector {
    K3Vector {
        x: v.y.clone(),
        y: v.x.clone(),
        z1: v.z1.clone().map(|c| -c),
        z2: v.z3.clone(),
        z3: v.z2.clone(),
    }
}

pub struct Sublattice {
    pub basis: Vec<K3Vector>,
    pub rank: usize,
    pub gram: Vec<Vec<BigInt>>,
}

fn sublattice_from_basis(basis: Vec<K3Vector>) -> Sublattice {
    let rank = basis.len();
    let mut gram = vec![vec![BigInt::zero(); rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            let p = k3_pairing(&basis[i], &basis[j]);
            debug_assert!(p.denom().is_one());
            gram[i][j] = p.numer().clone();
        }
    }
    Sublattice { basis, rank, gram }
}

/// Integral basis of the invariant sublattice `{x, x, 0, z, z}`, rank 10.
pub fn invariant_sublattice() -> Sublattice {
    let mut basis = Vec::new();
    for i in 0..8 {
        let mut x = [0i64; 8];
        x[i] = 1;
        basis.push(K3Vector::from_integral(x, x, [0, 0], [0, 0], [0, 0]));
    }
    for i in 0..2 {
        let mut z = [0i64; 2];
        z[i] = 1;
        basis.push(K3Vector::from_integral([0; 8], [0; 8], [0, 0], z, z));
    }
    sublattice_from_basis(basis)
}

/// Integral basis of the anti-invariant sublattice `{x, -x, z1, z2, -z2}`,
/// rank 12.
pub fn anti_invariant_sublattice() -> Sublattice {
    let mut basis = Vec::new();
    for i in 0..8 {
        let mut x = [0i64; 8];
        x[i] = 1;
        let mut neg = [0i64; 8];
        neg[i] = -1;
        basis.push(K3Vector::from_integral(x, neg, [0, 0], [0, 0], [0, 0]));
    }
    for i in 0..2 {
        let mut z = [0i64; 2];
        z[i] = 1;
        basis.push(K3Vector::from_integral([0; 8], [0; 8], z, [0, 0], [0, 0]));
    }
    for i in 0..2 {
        let mut z = [0i64; 2];
        z[i] = 1;
        let mut neg = [0i64; 2];
        neg[i] = -1;
        basis.push(K3Vector::from_integral([0; 8], [0; 8], [0, 0], z, neg));
    }
    sublattice_from_basis(basis)
}

/// The pullback of the covering map: `x + z -> (x, x, 0, z, z)`.
/// Doubles the pairing.
pub fn pullback(v: &LatticeVector) -> Result<K3Vector> {
    if v.basis() != Basis::E {
        return Err(Error::BasisMismatch {
            expected: Basis::E,
            got: v.basis(),
        });
    }
    let c = v.coeffs();
    let x: [Rat; 8] = std::array::from_fn(|i| c[i].clone());
    let z: [Rat; 2] = std::array::from_fn(|i| c[8 + i].clone());
    Ok(K3Vector {
        x: x.clone(),
        y: x,
        z1: zeros(),
        z2: z.clone(),
        z3: z,
    })
}

/// Real and imaginary parts of a period class, both constrained to the
/// anti-invariant sublattice by block structure.
#[derive(Debug, Clone)]
pub struct PeriodCandidate {
    p: K3Vector,
    q: K3Vector,
}

fn check_anti_invariant(v: &K3Vector) -> Result<()> {
    for i in 0..8 {
        if v.y[i] != -&v.x[i] {
            return Err(Error::NotAntiInvariant);
        }
    }
    for i in 0..2 {
        if v.z3[i] != -&v.z2[i] {
            return Err(Error::NotAntiInvariant);
        }
    }
    // structural pattern implies the eigenvalue equation; cross-check
    debug_assert_eq!(iota_star(v), v.neg());
    Ok(())
}

impl PeriodCandidate {
    pub fn new(p: K3Vector, q: K3Vector) -> Result<Self> {
        check_anti_invariant(&p)?;
        check_anti_invariant(&q)?;
        Ok(Self { p, q })
    }

    pub fn real(&self) -> &K3Vector {
        &self.p
    }

    pub fn imag(&self) -> &K3Vector {
        &self.q
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PeriodReport {
    pub isotropic: bool,
    pub positive: bool,
    pub d0_up_to_bound: bool,
    pub bound: u32,
    pub violating_root: Option<K3Vector>,
}

/// Checks the period conditions for `p + i q`:
/// * isotropy of the complex class: `p^2 = q^2` and `(p, q) = 0`;
/// * positivity of the pairing with the conjugate: `p^2 + q^2 > 0`;
/// * root avoidance up to the bound: no anti-invariant `l` with `l^2 = -2`,
///   all block coefficients of height `<= bound`, and `(l,p) = (l,q) = 0`.
///
/// The root search is bounded, never exhaustive; the report says so.
pub fn period_point_check(pc: &PeriodCandidate, bound: u32) -> PeriodReport {
    let p2 = k3_square(&pc.p);
    let q2 = k3_square(&pc.q);
    let pq = k3_pairing(&pc.p, &pc.q);
    let isotropic = p2 == q2 && pq.is_zero();
    let positive = (&p2 + &q2).is_positive();
    let violating_root = find_orthogonal_root(&pc.p, &pc.q, bound);
    PeriodReport {
        isotropic,
        positive,
        d0_up_to_bound: violating_root.is_none(),
        bound,
        violating_root,
    }
}

/// First anti-invariant `(-2)`-root of coefficient height `<= bound`
/// orthogonal to both `p` and `q`, scanning the free coefficients
/// `(x, a, b, c, d)` in a fixed deterministic order; `None` when there is
/// none. Roots come in `+-` pairs, so which representative is reported is a
/// matter of scan order only.
///
/// Anti-invariant roots are `l = (x, -x, (a,b), (c,d), (-c,-d))` with
/// `x^2 + ab + 2cd = -1` in the `-E8` form.
fn find_orthogonal_root(p: &K3Vector, q: &K3Vector, bound: u32) -> Option<K3Vector> {
    let h = bound as i64;
    // clear denominators of p and q so every pairing below is integral
    let mut all: Vec<Rat> = p.flat();
    all.extend(q.flat());
    let denom = common_denominator(&all);
    let int_of = |r: &Rat| -> i64 {
        let v = (r.numer() * &denom) / r.denom();
        i64::try_from(&v).expect("cleared coefficient fits in i64")
    };
    let px: [i64; 8] = std::array::from_fn(|i| int_of(&p.x[i]));
    let qx: [i64; 8] = std::array::from_fn(|i| int_of(&q.x[i]));
    let pz1: [i64; 2] = std::array::from_fn(|i| int_of(&p.z1[i]));
    let qz1: [i64; 2] = std::array::from_fn(|i| int_of(&q.z1[i]));
    let pz2: [i64; 2] = std::array::from_fn(|i| int_of(&p.z2[i]));
    let qz2: [i64; 2] = std::array::from_fn(|i| int_of(&q.z2[i]));

    let g = minus_e8_gram();
    // t = ab + 2cd is bounded by 3 h^2 in height h
    let t_bound = 3 * h * h;

    let mut x = [-h; 8];
    loop {
        // x^2 in the -E8 block
        let mut xsq = 0i64;
        for i in 0..8 {
            if x[i] == 0 {
                continue;
            }
            for j in 0..8 {
                xsq += x[i] * g[i][j] * x[j];
            }
        }
        let t = -1 - xsq; // required ab + 2cd
        if t.abs() <= t_bound {
            // pairings of the x-part with p and q are doubled by the mirror block
            let mut xdp = 0i64;
            let mut xdq = 0i64;
            for i in 0..8 {
                if x[i] == 0 {
                    continue;
                }
                for j in 0..8 {
                    xdp += x[i] * g[i][j] * px[j];
                    xdq += x[i] * g[i][j] * qx[j];
                }
            }
            xdp *= 2;
            xdq *= 2;
            for a in -h..=h {
                for b in -h..=h {
                    let z1p = a * pz1[1] + b * pz1[0];
                    let z1q = a * qz1[1] + b * qz1[0];
                    for c in -h..=h {
                        for d in -h..=h {
                            if a * b + 2 * c * d != t {
                                continue;
                            }
                            let lp = xdp + z1p + 2 * (c * pz2[1] + d * pz2[0]);
                            if lp != 0 {
                                continue;
                            }
                            let lq = xdq + z1q + 2 * (c * qz2[1] + d * qz2[0]);
                            if lq != 0 {
                                continue;
                            }
                            let mut neg_x = [0i64; 8];
                            for i in 0..8 {
                                neg_x[i] = -x[i];
                            }
                            return Some(K3Vector::from_integral(
                                x,
                                neg_x,
                                [a, b],
                                [c, d],
                                [-c, -d],
                            ));
                        }
                    }
                }
            }
        }
        // advance x through [-h, h]^8 lexicographically
        let mut i = 7;
        loop {
            x[i] += 1;
            if x[i] <= h {
                break;
            }
            x[i] = -h;
            if i == 0 {
                return None;
            }
            i -= 1;
        }
    }
}

// --- serialization -------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct K3Literal {
    x: Vec<String>,
    y: Vec<String>,
    z1: Vec<String>,
    z2: Vec<String>,
    z3: Vec<String>,
}

impl Serialize for K3Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        K3Literal {
            x: self.x.iter().map(rat_str).collect(),
            y: self.y.iter().map(rat_str).collect(),
            z1: self.z1.iter().map(rat_str).collect(),
            z2: self.z2.iter().map(rat_str).collect(),
            z3: self.z3.iter().map(rat_str).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for K3Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let lit = K3Literal::deserialize(deserializer)?;
        fn arr<const N: usize, E: serde::de::Error>(v: &[String]) -> std::result::Result<[Rat; N], E> {
            if v.len() != N {
                return Err(E::custom(format!("expected {N} coefficients, got {}", v.len())));
            }
            let mut out: [Rat; N] = std::array::from_fn(|_| Rat::zero());
            for (i, s) in v.iter().enumerate() {
                out[i] = parse_rat(s).map_err(E::custom)?;
            }
            Ok(out)
        }
        Ok(K3Vector {
            x: arr(&lit.x)?,
            y: arr(&lit.y)?,
            z1: arr(&lit.z1)?,
            z2: arr(&lit.z2)?,
            z3: arr(&lit.z3)?,
        })
    }
}

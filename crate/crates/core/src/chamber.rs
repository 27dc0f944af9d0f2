//! The normalized fundamental chamber, its defining cone, the nine vertices,
//! and the constructive reduction of forward-cone classes into the chamber.
//!
//! A point `(b1,...,b10)` of the chamber stands for the class
//! `b = l0 - sum b_i l_i`. The chamber is cut out by
//! `sum b_i = 3`, `b1 + b2 + b3 <= 1`, `b1 >= ... >= b10 > 0`;
//! the closure relaxes the last inequality to `>= 0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{
    self, l, orthogonal_to_k, pairing, psi, reflect, square, Basis, LatticeVector,
    ReflectionDescriptor,
};
use crate::rat::{common_denominator, parse_rat, rat, rat_int, rat_str, Rat};

/// A rational point of the (closed) chamber.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChamberPoint {
    b: Vec<Rat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Open chamber: `b10 > 0`.
    Chamber,
    /// Closure: `b10 >= 0`.
    ClosedChamber,
}

impl ChamberPoint {
    pub fn new(b: Vec<Rat>) -> Result<Self> {
        if b.len() != 10 {
            return Err(Error::BadRank {
                basis: Basis::E,
                expected: 10,
                got: b.len(),
            });
        }
        Ok(Self { b })
    }

    pub fn from_i64(numerators: &[i64; 10], denom: i64) -> Self {
        Self {
            b: numerators.iter().map(|&n| rat(n, denom)).collect(),
        }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.b
    }

    /// The class `l0 - sum b_i l_i` in the blowup lattice.
    pub fn class(&self) -> LatticeVector {
        let mut coeffs = Vec::with_capacity(11);
        coeffs.push(Rat::one());
        coeffs.extend(self.b.iter().map(|bi| -bi));
        LatticeVector::new(Basis::L, coeffs).unwrap()
    }

    pub fn in_region(&self, region: Region) -> bool {
        let sum: Rat = self.b.iter().sum();
        if sum != rat_int(3) {
            return false;
        }
        let top3: Rat = self.b.iter().take(3).sum();
        if top3 > Rat::one() {
            return false;
        }
        for w in self.b.windows(2) {
            if w[0] < w[1] {
                return false;
            }
        }
        match region {
            Region::Chamber => self.b[9].is_positive(),
            Region::ClosedChamber => !self.b[9].is_negative(),
        }
    }
}

/// Exact test of the cone inequalities for an 11-tuple `(a, b1..b10)`.
/// Returns the scale `a` when the tuple belongs to the cone.
pub fn cone_membership(tuple: &[Rat]) -> Option<Rat> {
    if tuple.len() != 11 {
        return None;
    }
    let a = &tuple[0];
    let b = &tuple[1..];
    let sum: Rat = b.iter().sum();
    if sum != rat_int(3) * a {
        return None;
    }
    let top3: Rat = b.iter().take(3).sum();
    if &top3 > a {
        return None;
    }
    for w in b.windows(2) {
        if w[0] < w[1] {
            return None;
        }
    }
    Some(a.clone())
}

/// The nine vertices on the wall `b1+b2+b3 = 1`, in the order they are
/// usually listed. Together with the apex they are the extreme points of the
/// closed chamber; see [`apex`].
pub fn vertices() -> Vec<ChamberPoint> {
    [
        ([3, 2, 2, 2, 2, 2, 2, 2, 2, 2], 7),
        ([5, 5, 4, 4, 4, 4, 4, 4, 4, 4], 14),
        ([7, 7, 7, 6, 6, 6, 6, 6, 6, 6], 21),
        ([6, 6, 6, 6, 5, 5, 5, 5, 5, 5], 18),
        ([5, 5, 5, 5, 5, 4, 4, 4, 4, 4], 15),
        ([4, 4, 4, 4, 4, 4, 3, 3, 3, 3], 12),
        ([3, 3, 3, 3, 3, 3, 3, 2, 2, 2], 9),
        ([2, 2, 2, 2, 2, 2, 2, 2, 1, 1], 6),
        ([1, 1, 1, 1, 1, 1, 1, 1, 1, 0], 3),
    ]
    .iter()
    .map(|(n, d)| ChamberPoint::from_i64(n, *d))
    .collect()
}

/// The class `v_i = l0 - sum V_i[j] l_j` of the i-th vertex (0-based).
pub fn vertex_class(i: usize) -> LatticeVector {
    vertices()[i].class()
}

/// The equal-coefficient extreme point `(3/10, ..., 3/10)`, the unique
/// extreme point of the closed chamber off the wall `b1+b2+b3 = 1` (all
/// nine chain equalities are tight there, so it cannot be a convex
/// combination of the wall vertices; a bounded 9-dimensional polytope
/// needs at least ten extreme points).
pub fn apex() -> ChamberPoint {
    ChamberPoint::from_i64(&[3; 10], 10)
}

/// All ten extreme points: the nine wall vertices followed by the apex.
pub fn extreme_points() -> Vec<ChamberPoint> {
    let mut pts = vertices();
    pts.push(apex());
    pts
}

/// Independent vertex enumeration of the polytope
/// `{sum b = 3, b1+b2+b3 <= 1, b1 >= ... >= b10 >= 0}` by solving all
/// maximal tight constraint subsets exactly. Returns the ten extreme
/// points: the nine wall vertices plus the apex.
///
/// The polytope is 9-dimensional in R^10 (one equality), with 11 facet
/// inequalities; a vertex is a feasible point where 9 of them are tight and
/// the resulting square system is nonsingular.
pub fn enumerate_vertices_oracle() -> Vec<ChamberPoint> {
    // inequality rows g_i(b) >= 0 written as (coeffs, constant): coeffs.b + const >= 0
    let mut ineqs: Vec<(Vec<Rat>, Rat)> = Vec::new();
    // 1 - b1 - b2 - b3 >= 0
    let mut row = vec![Rat::zero(); 10];
    for c in row.iter_mut().take(3) {
        *c = rat_int(-1);
    }
    ineqs.push((row, Rat::one()));
    // b_i - b_{i+1} >= 0
    for i in 0..9 {
        let mut row = vec![Rat::zero(); 10];
        row[i] = Rat::one();
        row[i + 1] = rat_int(-1);
        ineqs.push((row, Rat::zero()));
    }
    // b10 >= 0
    let mut row = vec![Rat::zero(); 10];
    row[9] = Rat::one();
    ineqs.push((row, Rat::zero()));

    let n = ineqs.len(); // 11
    let mut found: Vec<ChamberPoint> = Vec::new();
    // all 9-subsets of the 11 inequalities, plus the equality sum b = 3
    for skip_a in 0..n {
        for skip_b in skip_a + 1..n {
            let mut mat: Vec<Vec<Rat>> = Vec::with_capacity(10);
            let mut rhs: Vec<Rat> = Vec::with_capacity(10);
            mat.push(vec![Rat::one(); 10]);
            rhs.push(rat_int(3));
            for (i, (coeffs, cst)) in ineqs.iter().enumerate() {
                if i == skip_a || i == skip_b {
                    continue;
                }
                mat.push(coeffs.clone());
                rhs.push(-cst.clone());
            }
            let Some(x) = lattice::solve_rational(&mat, &rhs) else {
                continue;
            };
            let feasible = ineqs.iter().all(|(coeffs, cst)| {
                let v: Rat = coeffs.iter().zip(&x).map(|(c, xi)| c * xi).sum::<Rat>() + cst;
                !v.is_negative()
            });
            if !feasible {
                continue;
            }
            let p = ChamberPoint::new(x).unwrap();
            if !found.contains(&p) {
                found.push(p);
            }
        }
    }
    // canonical order: lexicographically by coordinates, descending
    found.sort_by(|a, b| b.coords().cmp(a.coords()));
    found
}

// --- reduction ---------------------------------------------------------------

/// The word of reflections, sign flip, and rescaling that carries the input
/// of a reduction to its output.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub sign_flip: bool,
    pub word: Vec<ReflectionDescriptor>,
    pub scale: Rat,
}

impl ReductionTrace {
    /// Applies sign flip, then the word in order, then the scale.
    pub fn replay(&self, input: &LatticeVector) -> Result<LatticeVector> {
        let mut v = if self.sign_flip {
            input.neg()
        } else {
            input.clone()
        };
        for root in &self.word {
            v = reflect(&v, root)?;
        }
        Ok(v.scale(&self.scale))
    }

    /// Applies the inverse: unscale, the word backwards, then the sign flip.
    pub fn replay_inverse(&self, output: &LatticeVector) -> Result<LatticeVector> {
        let mut v = output.scale(&self.scale.recip());
        for root in self.word.iter().rev() {
            v = reflect(&v, root)?;
        }
        Ok(if self.sign_flip { v.neg() } else { v })
    }
}

/// Result of reducing a forward-cone class into the fundamental cone.
#[derive(Debug, Clone)]
pub struct Reduction {
    /// The reduced class in `L` coordinates, `(a, -b1, ..., -b10)` pattern.
    pub vector: LatticeVector,
    /// The normalized chamber point, present when `normalize` was requested.
    pub point: Option<ChamberPoint>,
    pub trace: ReductionTrace,
}

fn transposition_root(i: usize, j: usize) -> ReflectionDescriptor {
    ReflectionDescriptor::new(l(i).sub(&l(j)).unwrap()).unwrap()
}

fn cremona_root() -> ReflectionDescriptor {
    let root = l(0)
        .sub(&l(1))
        .unwrap()
        .sub(&l(2))
        .unwrap()
        .sub(&l(3))
        .unwrap();
    ReflectionDescriptor::new(root).unwrap()
}

/// Reduces a class of `Q_S (x) Q` into the fundamental cone by the moves of
/// the chamber construction: stable descending sort of the `l1..l10`
/// coefficients via transpositions, and the reflection along
/// `l0 - l1 - l2 - l3` whenever `a < b1 + b2 + b3`.
///
/// Accepts `L`-basis vectors orthogonal to `k`, or `E`-basis vectors (mapped
/// through the isomorphism with zero exceptional part). Requires positive
/// square, or zero square with a nonzero vector (boundary mode, where the
/// final `b10` may be zero).
pub fn reduce(v: &LatticeVector, normalize: bool) -> Result<Reduction> {
    let input = match v.basis() {
        Basis::L => {
            if !orthogonal_to_k(v)? {
                return Err(Error::NotInQs);
            }
            v.clone()
        }
        Basis::E => psi(v, &Rat::zero())?,
        Basis::K3 => return Err(Error::UnsupportedBasis(Basis::K3)),
    };
    let sq = square(&input);
    if sq.is_negative() || (sq.is_zero() && input.is_zero()) {
        return Err(Error::NotReducible);
    }

    // clear denominators; the integer loop below works on (a, b1..b10) with
    // b_i the *negated* l_i coefficients
    let denom = common_denominator(input.coeffs());
    let mut a: BigInt = (input.coeffs()[0].numer() * &denom) / input.coeffs()[0].denom();
    let mut b: Vec<BigInt> = input.coeffs()[1..]
        .iter()
        .map(|c| -(c.numer() * &denom) / c.denom())
        .collect();

    let sign_flip = a.is_negative();
    if sign_flip {
        a = -a;
        for bi in b.iter_mut() {
            *bi = -bi.clone();
        }
    }

    let mut word: Vec<ReflectionDescriptor> = Vec::new();
    loop {
        // stable insertion sort, descending, recording each adjacent swap
        for i in 1..10 {
            let mut j = i;
            while j > 0 && b[j - 1] < b[j] {
                b.swap(j - 1, j);
                word.push(transposition_root(j, j + 1));
                j -= 1;
            }
        }
        let top3 = &b[0] + &b[1] + &b[2];
        if a >= top3 {
            break;
        }
        // (a, b1, b2, b3) -> (2a - b1 - b2 - b3, a - b2 - b3, a - b1 - b3, a - b1 - b2)
        let new_a = &a + &a - &top3;
        let (b1, b2, b3) = (b[0].clone(), b[1].clone(), b[2].clone());
        b[0] = &a - &b2 - &b3;
        b[1] = &a - &b1 - &b3;
        b[2] = &a - &b1 - &b2;
        a = new_a;
        word.push(cremona_root());
        debug_assert!(a.is_positive());
    }

    let a_rat = Rat::from_integer(a.clone());
    let denom_rat = Rat::from_integer(denom);
    let scale = if normalize {
        &denom_rat / &a_rat
    } else {
        Rat::one()
    };
    // reduced integer vector is denom * word(+-input); rescale accordingly
    let unit = &scale / &denom_rat;
    let mut coeffs = Vec::with_capacity(11);
    coeffs.push(&a_rat * &unit);
    for bi in &b {
        coeffs.push(Rat::from_integer(-bi.clone()) * &unit);
    }
    let vector = LatticeVector::new(Basis::L, coeffs)?;
    let point = if normalize {
        let p = ChamberPoint::new(b.iter().map(|bi| Rat::new(bi.clone(), a.clone())).collect())?;
        debug_assert!(p.in_region(Region::ClosedChamber));
        Some(p)
    } else {
        None
    };
    Ok(Reduction {
        vector,
        point,
        trace: ReductionTrace {
            sign_flip,
            word,
            scale,
        },
    })
}

// --- comparison on the chamber -------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    FDominates,
    GDominates,
    Equal,
    Incomparable,
}

fn as_l_class(v: &LatticeVector) -> Result<LatticeVector> {
    match v.basis() {
        Basis::L => Ok(v.clone()),
        Basis::E => psi(v, &Rat::zero()),
        Basis::K3 => Err(Error::UnsupportedBasis(Basis::K3)),
    }
}

/// Compares two classes as functions on the closed chamber by pairing with
/// all ten extreme-point classes; convexity extends the comparison to the
/// whole chamber. (The apex matters: `l0-l1-l2-l3` pairs to zero at every
/// wall vertex but to 1/10 at the apex.)
pub fn compare_on_chamber(f: &LatticeVector, g: &LatticeVector) -> Result<Comparison> {
    let f = as_l_class(f)?;
    let g = as_l_class(g)?;
    let mut ge = true;
    let mut le = true;
    for p in extreme_points() {
        let vc = p.class();
        let pf = pairing(&vc, &f)?;
        let pg = pairing(&vc, &g)?;
        if pf < pg {
            ge = false;
        }
        if pf > pg {
            le = false;
        }
    }
    Ok(match (ge, le) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::FDominates,
        (false, true) => Comparison::GDominates,
        (false, false) => Comparison::Incomparable,
    })
}

// --- serialization -------------------------------------------------------------

impl Serialize for ChamberPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ChamberPoint", 1)?;
        st.serialize_field("b", &self.b.iter().map(rat_str).collect::<Vec<_>>())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for ChamberPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Lit {
            b: Vec<String>,
        }
        let lit = Lit::deserialize(deserializer)?;
        let b = lit
            .b
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        ChamberPoint::new(b).map_err(D::Error::custom)
    }
}

impl Serialize for ReductionTrace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            root: &'a LatticeVector,
        }
        let mut st = serializer.serialize_struct("ReductionTrace", 3)?;
        st.serialize_field("sign_flip", &self.sign_flip)?;
        st.serialize_field(
            "word",
            &self
                .word
                .iter()
                .map(|r| Entry { root: r.root() })
                .collect::<Vec<_>>(),
        )?;
        st.serialize_field("scale", &rat_str(&self.scale))?;
        st.end()
    }
}

//! The three lattices, the isomorphism between the Enriques lattice plus an
//! exceptional class and `I_{1,10}`, reflections, and cone predicates.
//!
//! Basis conventions:
//! * `L` is `I_{1,10}` with the orthogonal basis `l0,...,l10`,
//!   `l0^2 = 1`, `li^2 = -1`.
//! * `E` is the Enriques lattice `-E8 + U` with the basis
//!   `r0,...,r7,s1,s2`; its Gram matrix is derived by pushing the basis
//!   through the isomorphism and pairing in `L`.
//! * `K3` is `2(-E8) + 3U`, rank 22, block order `x, y, z1, z2, z3`.
//!
//! Vectors of different bases are never mixed implicitly; the map between
//! `E` (plus an `e`-multiple) and `L` must be invoked explicitly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{parse_rat, rat_int, rat_str, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    L,
    E,
    K3,
}

impl Basis {
    pub fn rank(self) -> usize {
        match self {
            Basis::L => 11,
            Basis::E => 10,
            Basis::K3 => 22,
        }
    }
}

/// An exact-rational vector tagged with the lattice basis it is written in.
///
/// The torsion bit models the `Z_2` summand of `H^2(S;Z)`; it is carried for
/// class identity but never enters the pairing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    basis: Basis,
    coeffs: Vec<Rat>,
    torsion: bool,
}

impl LatticeVector {
    pub fn new(basis: Basis, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != basis.rank() {
            return Err(Error::BadRank {
                basis,
                expected: basis.rank(),
                got: coeffs.len(),
            });
        }
        Ok(Self {
            basis,
            coeffs,
            torsion: false,
        })
    }

    pub fn integral(basis: Basis, coeffs: &[i64]) -> Result<Self> {
        Self::new(basis, coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero(basis: Basis) -> Self {
        Self {
            basis,
            coeffs: vec![Rat::zero(); basis.rank()],
            torsion: false,
        }
    }

    pub fn with_torsion(mut self, torsion: bool) -> Self {
        self.torsion = torsion;
        self
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn torsion(&self) -> bool {
        self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Zero coefficients and no torsion.
    pub fn is_trivial(&self) -> bool {
        self.is_zero() && !self.torsion
    }

    /// The torsion-free part: same coefficients, torsion bit cleared.
    pub fn torsion_free(&self) -> LatticeVector {
        self.clone().with_torsion(false)
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            torsion: self.torsion,
        }
    }

    pub fn add(&self, other: &LatticeVector) -> Result<LatticeVector> {
        self.check_same_basis(other)?;
        Ok(LatticeVector {
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            torsion: self.torsion ^ other.torsion,
        })
    }

    pub fn sub(&self, other: &LatticeVector) -> Result<LatticeVector> {
        self.add(&other.neg())
    }

    pub fn scale(&self, t: &Rat) -> LatticeVector {
        LatticeVector {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|c| c * t).collect(),
            torsion: self.torsion,
        }
    }

    fn check_same_basis(&self, other: &LatticeVector) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                expected: self.basis,
                got: other.basis,
            });
        }
        Ok(())
    }

    /// `true` when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }
}

// --- standard classes -------------------------------------------------------

/// `l_i` in the `L` basis, `0 <= i <= 10`.
pub fn l(i: usize) -> LatticeVector {
    assert!(i <= 10);
    let mut v = LatticeVector::zero(Basis::L);
    v.coeffs[i] = Rat::one();
    v
}

/// `k = -3 l0 + l1 + ... + l10`.
pub fn k_class() -> LatticeVector {
    let mut coeffs = vec![1i64; 11];
    coeffs[0] = -3;
    LatticeVector::integral(Basis::L, &coeffs).unwrap()
}

/// `r_i` in the `E` basis. For `i <= 7` these are basis vectors; `r8, r9`
/// are `l8 - l9` and `l9 - l10` pulled back through the isomorphism.
pub fn r(i: usize) -> LatticeVector {
    assert!(i <= 9);
    if i <= 7 {
        let mut v = LatticeVector::zero(Basis::E);
        v.coeffs[i] = Rat::one();
        v
    } else {
        let root = l(i).sub(&l(i + 1)).unwrap();
        let (v, e_mult) = psi_inv(&root).unwrap();
        debug_assert!(e_mult.is_zero());
        v
    }
}

/// `s_1` or `s_2` in the `E` basis.
pub fn s(i: usize) -> LatticeVector {
    assert!(i == 1 || i == 2);
    let mut v = LatticeVector::zero(Basis::E);
    v.coeffs[7 + i] = Rat::one();
    v
}

/// The canonical class of the Enriques surface: pure torsion.
pub fn canonical_class() -> LatticeVector {
    LatticeVector::zero(Basis::E).with_torsion(true)
}

// --- Gram matrices ----------------------------------------------------------

fn gram_l() -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; 11]; 11];
    g[0][0] = 1;
    for (i, row) in g.iter_mut().enumerate().skip(1) {
        row[i] = -1;
    }
    g
}

/// The 11x11 integer matrix of the isomorphism, columns ordered
/// `r0..r7, s1, s2, e`, rows in `l0..l10` coordinates.
static PSI_MATRIX: Lazy<Vec<Vec<i64>>> = Lazy::new(|| {
    let mut cols: Vec<Vec<i64>> = Vec::with_capacity(11);
    // r0 -> l0 - l1 - l2 - l3
    cols.push(vec![1, -1, -1, -1, 0, 0, 0, 0, 0, 0, 0]);
    // r_i -> l_i - l_{i+1}, 1 <= i <= 7
    for i in 1..=7 {
        let mut c = vec![0i64; 11];
        c[i] = 1;
        c[i + 1] = -1;
        cols.push(c);
    }
    // s1 -> 3 l0 - l1 - ... - l9
    let mut s1 = vec![-1i64; 11];
    s1[0] = 3;
    s1[10] = 0;
    cols.push(s1);
    // s2 -> 3 l0 - l1 - ... - l8 - l10
    let mut s2 = vec![-1i64; 11];
    s2[0] = 3;
    s2[9] = 0;
    cols.push(s2);
    // e -> -k = 3 l0 - l1 - ... - l10
    let mut e = vec![-1i64; 11];
    e[0] = 3;
    cols.push(e);

    // transpose: rows = l-coordinates, columns = domain basis
    let mut m = vec![vec![0i64; 11]; 11];
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            m[i][j] = v;
        }
    }
    m
});

/// Exact inverse of the isomorphism matrix. Integral since the determinant
/// is a unit; checked on construction.
static PSI_INVERSE: Lazy<Vec<Vec<i64>>> = Lazy::new(|| {
    let inv = invert_rational(&PSI_MATRIX).expect("isomorphism matrix is invertible");
    inv.iter()
        .map(|row| {
            row.iter()
                .map(|r| {
                    assert!(r.denom().is_one(), "inverse must be integral");
                    let n = r.numer();
                    i64::try_from(n).expect("entry fits in i64")
                })
                .collect()
        })
        .collect()
});

/// Gram matrix of `{r0..r7, s1, s2}`, computed by pairing the images of the
/// basis vectors in `L`.
static GRAM_E: Lazy<Vec<Vec<i64>>> = Lazy::new(|| {
    let gl = gram_l();
    let m = &*PSI_MATRIX;
    let mut g = vec![vec![0i64; 10]; 10];
    for a in 0..10 {
        for b in 0..10 {
            let mut acc = 0i64;
            for (i, gli) in gl.iter().enumerate() {
                for (j, &glij) in gli.iter().enumerate() {
                    acc += m[i][a] * glij * m[j][b];
                }
            }
            g[a][b] = acc;
        }
    }
    g
});

static GRAM_K3: Lazy<Vec<Vec<i64>>> = Lazy::new(|| {
    let e8 = minus_e8_gram();
    let mut g = vec![vec![0i64; 22]; 22];
    for i in 0..8 {
        for j in 0..8 {
            g[i][j] = e8[i][j];
            g[8 + i][8 + j] = e8[i][j];
        }
    }
    for b in 0..3 {
        let o = 16 + 2 * b;
        g[o][o + 1] = 1;
        g[o + 1][o] = 1;
    }
    g
});

/// The derived 10x10 Gram matrix of the Enriques basis.
pub fn gram_of_enriques_basis() -> &'static [Vec<i64>] {
    &GRAM_E
}

/// The `-E8` block of the Enriques Gram matrix, in the `r0..r7` basis.
pub fn minus_e8_gram() -> [[i64; 8]; 8] {
    let g = &*GRAM_E;
    let mut out = [[0i64; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            out[i][j] = g[i][j];
        }
    }
    out
}

pub fn gram(basis: Basis) -> Vec<Vec<i64>> {
    match basis {
        Basis::L => gram_l(),
        Basis::E => GRAM_E.clone(),
        Basis::K3 => GRAM_K3.clone(),
    }
}

// --- operations -------------------------------------------------------------

/// The symmetric bilinear form of the shared basis. Torsion bits are ignored.
pub fn pairing(v: &LatticeVector, w: &LatticeVector) -> Result<Rat> {
    v.check_same_basis(w)?;
    let g = match v.basis {
        Basis::L => gram_l(),
        Basis::E => GRAM_E.clone(),
        Basis::K3 => GRAM_K3.clone(),
    };
    let mut acc = Rat::zero();
    for (i, gi) in g.iter().enumerate() {
        if v.coeffs[i].is_zero() {
            continue;
        }
        for (j, &gij) in gi.iter().enumerate() {
            if gij != 0 {
                acc += &v.coeffs[i] * &w.coeffs[j] * rat_int(gij);
            }
        }
    }
    Ok(acc)
}

pub fn square(v: &LatticeVector) -> Rat {
    pairing(v, v).expect("same basis")
}

/// A reflection root: self-pairing -2 (sphere classes) or -1 (the
/// exceptional class).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionDescriptor {
    root: LatticeVector,
    root_square: Rat,
}

impl ReflectionDescriptor {
    pub fn new(root: LatticeVector) -> Result<Self> {
        let sq = square(&root);
        if sq != rat_int(-2) && sq != rat_int(-1) {
            return Err(Error::BadRoot(rat_str(&sq)));
        }
        Ok(Self {
            root,
            root_square: sq,
        })
    }

    pub fn root(&self) -> &LatticeVector {
        &self.root
    }
}

/// `beta - 2 (alpha, beta) / (alpha, alpha) * alpha`.
pub fn reflect(beta: &LatticeVector, alpha: &ReflectionDescriptor) -> Result<LatticeVector> {
    let p = pairing(beta, &alpha.root)?;
    let t = rat_int(2) * p / &alpha.root_square;
    beta.sub(&alpha.root.scale(&t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeLocation {
    Interior,
    Boundary,
    Outside,
}

/// Reference class of the forward cone: `l0` in `L`, `s1 + s2` in `E`.
pub fn forward_reference(basis: Basis) -> Result<LatticeVector> {
    match basis {
        Basis::L => Ok(l(0)),
        Basis::E => s(1).add(&s(2)),
        Basis::K3 => Err(Error::UnsupportedBasis(Basis::K3)),
    }
}

/// Position of `v` relative to the closed forward cone of its basis.
pub fn forward_cone_membership(v: &LatticeVector) -> Result<ConeLocation> {
    let reference = forward_reference(v.basis)?;
    let sq = square(v);
    let toward = pairing(v, &reference)?;
    if sq.is_positive() && toward.is_positive() {
        Ok(ConeLocation::Interior)
    } else if sq.is_zero() && !v.is_zero() && toward.is_positive() {
        Ok(ConeLocation::Boundary)
    } else {
        Ok(ConeLocation::Outside)
    }
}

/// Maps an `E`-basis vector plus a multiple of the exceptional class into `L`.
pub fn psi(v: &LatticeVector, e_mult: &Rat) -> Result<LatticeVector> {
    if v.basis != Basis::E {
        return Err(Error::BasisMismatch {
            expected: Basis::E,
            got: v.basis,
        });
    }
    let m = &*PSI_MATRIX;
    let mut out = vec![Rat::zero(); 11];
    for (i, row) in m.iter().enumerate() {
        let mut acc = Rat::zero();
        for (j, &mij) in row.iter().enumerate() {
            if mij == 0 {
                continue;
            }
            let c = if j < 10 { &v.coeffs[j] } else { e_mult };
            acc += c * rat_int(mij);
        }
        out[i] = acc;
    }
    Ok(LatticeVector::new(Basis::L, out)?.with_torsion(v.torsion))
}

/// Inverse of the isomorphism: splits an `L`-vector into its `E`-part and
/// the exceptional multiplicity.
pub fn psi_inv(v: &LatticeVector) -> Result<(LatticeVector, Rat)> {
    if v.basis != Basis::L {
        return Err(Error::BasisMismatch {
            expected: Basis::L,
            got: v.basis,
        });
    }
    let m = &*PSI_INVERSE;
    let mut out = vec![Rat::zero(); 11];
    for (i, row) in m.iter().enumerate() {
        let mut acc = Rat::zero();
        for (j, &mij) in row.iter().enumerate() {
            if mij != 0 {
                acc += &v.coeffs[j] * rat_int(mij);
            }
        }
        out[i] = acc;
    }
    let e_mult = out.pop().unwrap();
    Ok((
        LatticeVector::new(Basis::E, out)?.with_torsion(v.torsion),
        e_mult,
    ))
}

/// `true` when the `L`-vector pairs to zero with `k`, i.e. lies in the image
/// of the Enriques lattice.
pub fn orthogonal_to_k(v: &LatticeVector) -> Result<bool> {
    Ok(pairing(v, &k_class())?.is_zero())
}

// --- exact linear algebra helpers -------------------------------------------

/// Determinant of an integer matrix, computed exactly over the rationals.
pub fn integer_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .map(|row| row.iter().map(|&x| rat_int(x)).collect())
        .collect();
    let mut det = Rat::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else {
            return BigInt::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pv;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    debug_assert!(det.denom().is_one());
    det.numer().clone()
}

/// Signature (n_plus, n_minus) of a symmetric integer matrix, by exact
/// symmetric Gaussian reduction (Jacobi / Lagrange diagonalization).
pub fn signature(m: &[Vec<i64>]) -> (usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .map(|row| row.iter().map(|&x| rat_int(x)).collect())
        .collect();
    let mut plus = 0;
    let mut minus = 0;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][k].is_zero()) {
                // mix row/col j into k with a sign that makes the new
                // diagonal 2s*a[j][k] + a[j][j] nonzero
                let plus_diag = rat_int(2) * &a[j][k] + &a[j][j];
                let sign = if plus_diag.is_zero() {
                    rat_int(-1)
                } else {
                    rat_int(1)
                };
                for c in 0..n {
                    let add = &sign * &a[j][c];
                    a[k][c] += add;
                }
                for r in 0..n {
                    let add = &sign * &a[r][j];
                    a[r][k] += add;
                }
            } else {
                continue; // zero row: contributes to the radical
            }
        }
        let d = a[k][k].clone();
        if d.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &d;
            for c in 0..n {
                let sub = &f * &a[k][c];
                a[r][c] -= sub;
            }
        }
        for c in k + 1..n {
            a[k][c] = Rat::zero();
        }
        for r in k + 1..n {
            a[r][k] = Rat::zero();
        }
    }
    (plus, minus)
}

fn invert_rational(m: &[Vec<i64>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .map(|row| row.iter().map(|&x| rat_int(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        inv.swap(p, col);
        let pv = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= &pv;
            inv[col][c] /= &pv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let s1 = &f * &a[col][c];
                a[r][c] -= s1;
                let s2 = &f * &inv[col][c];
                inv[r][c] -= s2;
            }
        }
    }
    Some(inv)
}

/// Solves `m x = rhs` exactly; `None` when the system is singular or
/// inconsistent.
pub fn solve_rational(m: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut b: Vec<Rat> = rhs.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        b.swap(p, row);
        let pv = a[row][col].clone();
        for c in 0..cols {
            a[row][c] /= &pv;
        }
        b[row] /= &pv;
        for r in 0..rows {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..cols {
                let s = &f * &a[row][c];
                a[r][c] -= s;
            }
            let s = &f * &b[row];
            b[r] -= s;
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if pivots.len() < cols {
        return None; // underdetermined
    }
    for r in row..rows {
        if !b[r].is_zero() {
            return None; // inconsistent
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = b[r].clone();
    }
    Some(x)
}

// --- serialization ----------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct VectorLiteral {
    pub basis: Basis,
    pub coeffs: Vec<String>,
    #[serde(default)]
    pub torsion: u8,
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        VectorLiteral {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(rat_str).collect(),
            torsion: u8::from(self.torsion),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let lit = VectorLiteral::deserialize(deserializer)?;
        let coeffs = lit
            .coeffs
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let v = LatticeVector::new(lit.basis, coeffs).map_err(D::Error::custom)?;
        Ok(v.with_torsion(lit.torsion != 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn pairing_of_hyperbolic_basis() {
        assert_eq!(pairing(&s(1), &s(2)).unwrap(), rat_int(1));
        assert_eq!(square(&s(1)), rat_int(0));
        assert_eq!(square(&s(2)), rat_int(0));
    }

    #[test]
    fn pairing_in_l() {
        assert_eq!(square(&l(0)), rat_int(1));
        assert_eq!(square(&l(5)), rat_int(-1));
        assert_eq!(square(&k_class()), rat_int(-1));
    }

    #[test]
    fn pairing_rejects_basis_mismatch() {
        assert!(pairing(&l(0), &s(1)).is_err());
    }

    #[test]
    fn rational_self_pairing_denominator() {
        let v = LatticeVector::new(Basis::L, {
            let mut c = vec![Rat::zero(); 11];
            c[0] = rat(1, 3);
            c[1] = rat(1, 4);
            c
        })
        .unwrap();
        // 1/9 - 1/16 = 7/144; denominator divides 12^2
        assert_eq!(square(&v), rat(7, 144));
    }

    #[test]
    fn enriques_gram_matches_dynkin_diagram() {
        let g = gram_of_enriques_basis();
        // r-block: squares -2, chain r1-...-r7 with r0 attached to r3
        for i in 0..8 {
            assert_eq!(g[i][i], -2);
        }
        assert_eq!(g[0][3], 1);
        assert_eq!(g[0][1], 0);
        assert_eq!(g[0][2], 0);
        for i in 1..7 {
            assert_eq!(g[i][i + 1], 1);
        }
        // U-block on s1, s2
        assert_eq!(g[8][8], 0);
        assert_eq!(g[9][9], 0);
        assert_eq!(g[8][9], 1);
        // r-block and U-block are orthogonal
        for i in 0..8 {
            assert_eq!(g[i][8], 0);
            assert_eq!(g[i][9], 0);
        }
    }

    #[test]
    fn enriques_gram_unimodular_even_signature() {
        let g = gram_of_enriques_basis();
        assert_eq!(integer_determinant(g), BigInt::from(-1));
        assert_eq!(signature(g), (1, 9));
        for i in 0..10 {
            assert_eq!(g[i][i] % 2, 0);
        }
        for i in 0..10 {
            for j in 0..10 {
                assert_eq!(g[i][j], g[j][i]);
            }
        }
    }

    #[test]
    fn psi_sends_listed_basis_vectors() {
        let r0 = psi(&r(0), &Rat::zero()).unwrap();
        let expect = LatticeVector::integral(Basis::L, &[1, -1, -1, -1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(r0, expect.unwrap());

        let e_img = psi(&LatticeVector::zero(Basis::E), &Rat::one()).unwrap();
        assert_eq!(e_img, k_class().neg());

        let s1 = psi(&s(1), &Rat::zero()).unwrap();
        let expect = LatticeVector::integral(Basis::L, &[3, -1, -1, -1, -1, -1, -1, -1, -1, -1, 0]);
        assert_eq!(s1, expect.unwrap());
    }

    #[test]
    fn psi_is_unimodular() {
        let det = integer_determinant(&PSI_MATRIX);
        assert!(det == BigInt::from(1) || det == BigInt::from(-1));
    }

    #[test]
    fn psi_round_trip() {
        let v = LatticeVector::integral(Basis::E, &[2, -1, 3, 0, 5, -2, 1, 0, 4, -3]).unwrap();
        let m = rat(7, 3);
        let img = psi(&v, &m).unwrap();
        let (back, back_m) = psi_inv(&img).unwrap();
        assert_eq!(back, v);
        assert_eq!(back_m, m);
    }

    #[test]
    fn psi_preserves_pairing() {
        // pairing in E + (-1) e-part must equal pairing of images in L
        let v = LatticeVector::integral(Basis::E, &[1, 0, -2, 3, 0, 1, -1, 2, 1, -1]).unwrap();
        let w = LatticeVector::integral(Basis::E, &[0, 2, 1, -1, 1, 0, 3, -2, 0, 1]).unwrap();
        let (mv, mw) = (rat_int(2), rat_int(-3));
        let lhs = pairing(&v, &w).unwrap() + &mv * &mw * rat_int(-1);
        let rhs = pairing(&psi(&v, &mv).unwrap(), &psi(&w, &mw).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn k_is_orthogonal_to_image_of_e() {
        for i in 0..10 {
            let mut v = LatticeVector::zero(Basis::E);
            v.coeffs[i] = Rat::one();
            let img = psi(&v, &Rat::zero()).unwrap();
            assert!(pairing(&img, &k_class()).unwrap().is_zero());
        }
    }

    #[test]
    fn r8_r9_are_simple_roots() {
        assert_eq!(square(&r(8)), rat_int(-2));
        assert_eq!(square(&r(9)), rat_int(-2));
        assert_eq!(psi(&r(8), &Rat::zero()).unwrap(), l(8).sub(&l(9)).unwrap());
    }

    #[test]
    fn reflect_negates_root() {
        let alpha = ReflectionDescriptor::new(r(3)).unwrap();
        assert_eq!(reflect(&r(3), &alpha).unwrap(), r(3).neg());
    }

    #[test]
    fn reflect_transposes_l_classes() {
        let root = ReflectionDescriptor::new(l(1).sub(&l(2)).unwrap()).unwrap();
        assert_eq!(reflect(&l(1), &root).unwrap(), l(2));
        assert_eq!(reflect(&l(2), &root).unwrap(), l(1));
    }

    #[test]
    fn reflect_is_involutive_and_isometric() {
        let root = ReflectionDescriptor::new(
            LatticeVector::integral(Basis::L, &[1, -1, -1, -1, 0, 0, 0, 0, 0, 0, 0]).unwrap(),
        )
        .unwrap();
        let v = LatticeVector::integral(Basis::L, &[5, 1, 2, -1, 0, 3, 1, 1, 0, 2, 1]).unwrap();
        let w = LatticeVector::integral(Basis::L, &[2, 0, 1, 1, -2, 0, 1, 3, 1, 0, 0]).unwrap();
        let rv = reflect(&v, &root).unwrap();
        let rw = reflect(&w, &root).unwrap();
        assert_eq!(reflect(&rv, &root).unwrap(), v);
        assert_eq!(pairing(&rv, &rw).unwrap(), pairing(&v, &w).unwrap());
    }

    #[test]
    fn reflect_rejects_bad_root() {
        assert!(ReflectionDescriptor::new(l(0)).is_err());
        assert!(ReflectionDescriptor::new(s(1)).is_err());
    }

    #[test]
    fn forward_cone_examples() {
        assert_eq!(
            forward_cone_membership(&l(0)).unwrap(),
            ConeLocation::Interior
        );
        assert_eq!(
            forward_cone_membership(&l(0).neg()).unwrap(),
            ConeLocation::Outside
        );
        let psi_s1 = psi(&s(1), &Rat::zero()).unwrap();
        assert_eq!(
            forward_cone_membership(&psi_s1).unwrap(),
            ConeLocation::Boundary
        );
    }

    #[test]
    fn torsion_is_excluded_from_pairing() {
        let kc = canonical_class();
        assert_eq!(square(&kc), rat_int(0));
        assert_eq!(pairing(&kc, &s(1)).unwrap(), rat_int(0));
    }

    #[test]
    fn vector_literal_round_trip() {
        let v = LatticeVector::new(Basis::E, {
            let mut c = vec![Rat::zero(); 10];
            c[0] = rat(1, 3);
            c[9] = rat_int(-2);
            c
        })
        .unwrap()
        .with_torsion(true);
        let json = serde_json::to_string(&v).unwrap();
        let back: LatticeVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn k3_gram_is_even_rank_22_signature() {
        let g = gram(Basis::K3);
        assert_eq!(g.len(), 22);
        for i in 0..22 {
            assert_eq!(g[i][i] % 2, 0);
        }
        assert_eq!(signature(&g), (3, 19));
    }
}

//! Property-based checks of the algebraic identities behind the library.

use proptest::prelude::*;

use enriques_core::chamber::reduce;
use enriques_core::k3::{iota_star, k3_pairing, K3Vector};
use enriques_core::lattice::{
    l, pairing, psi, psi_inv, reflect, square, Basis, LatticeVector, ReflectionDescriptor,
};
use enriques_core::rat::{rat, rat_int, Rat};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn e_vector() -> impl Strategy<Value = LatticeVector> {
    (prop::collection::vec(small_rat(), 10), any::<bool>())
        .prop_map(|(coeffs, t)| LatticeVector::new(Basis::E, coeffs).unwrap().with_torsion(t))
}

fn root() -> impl Strategy<Value = ReflectionDescriptor> {
    // transpositions l_i - l_j and the Cremona root l_0 - l_1 - l_2 - l_3
    (1usize..=10, 1usize..=10).prop_map(|(i, j)| {
        let root = if i == j {
            l(0).sub(&l(1)).unwrap().sub(&l(2)).unwrap().sub(&l(3)).unwrap()
        } else {
            l(i).sub(&l(j)).unwrap()
        };
        ReflectionDescriptor::new(root).unwrap()
    })
}

fn l_vector() -> impl Strategy<Value = LatticeVector> {
    prop::collection::vec(-9i64..=9, 11)
        .prop_map(|c| LatticeVector::integral(Basis::L, &c).unwrap())
}

fn k3_vector() -> impl Strategy<Value = K3Vector> {
    prop::collection::vec(-9i64..=9, 22).prop_map(|c| {
        let mut x = [0i64; 8];
        let mut y = [0i64; 8];
        x.copy_from_slice(&c[..8]);
        y.copy_from_slice(&c[8..16]);
        K3Vector::from_integral(
            x,
            y,
            [c[16], c[17]],
            [c[18], c[19]],
            [c[20], c[21]],
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_round_trips(v in e_vector(), e_num in -6i64..=6) {
        let e_mult = rat_int(e_num);
        let image = psi(&v, &e_mult).unwrap();
        let (back, back_mult) = psi_inv(&image).unwrap();
        prop_assert_eq!(back.coeffs(), v.coeffs());
        prop_assert_eq!(back_mult, e_mult);
    }

    #[test]
    fn psi_is_an_isometry(v in e_vector(), w in e_vector()) {
        let iv = psi(&v, &Rat::from_integer(0.into())).unwrap();
        let iw = psi(&w, &Rat::from_integer(0.into())).unwrap();
        prop_assert_eq!(pairing(&iv, &iw).unwrap(), pairing(&v, &w).unwrap());
    }

    #[test]
    fn reflections_are_isometric_involutions(v in l_vector(), w in l_vector(), r in root()) {
        let rv = reflect(&v, &r).unwrap();
        let rw = reflect(&w, &r).unwrap();
        prop_assert_eq!(reflect(&rv, &r).unwrap(), v.clone());
        prop_assert_eq!(pairing(&rv, &rw).unwrap(), pairing(&v, &w).unwrap());
    }

    #[test]
    fn reduction_replays_and_preserves_squares(
        a in 4i64..=200,
        perturb in prop::collection::vec(-3i64..=3, 10),
        word in prop::collection::vec(root(), 0..6),
    ) {
        // near-equal forward vector, perturbed while keeping the square positive
        let q = 3 * a / 10;
        let rem = (3 * a - 10 * q) as usize;
        let mut b: Vec<i64> = (0..10).map(|i| q + i64::from(i < rem)).collect();
        for (i, d) in perturb.iter().enumerate() {
            b[i] += d;
            b[(i + 1) % 10] -= d;
        }
        let sumsq: i64 = b.iter().map(|x| x * x).sum();
        prop_assume!(sumsq < a * a);
        let mut coeffs = vec![rat_int(a)];
        coeffs.extend(b.iter().map(|&x| rat_int(-x)));
        let mut v = LatticeVector::new(Basis::L, coeffs).unwrap();
        for r in &word {
            v = reflect(&v, r).unwrap();
        }
        let red = reduce(&v, false).unwrap();
        prop_assert_eq!(red.trace.replay(&v).unwrap(), red.vector.clone());
        prop_assert_eq!(red.trace.replay_inverse(&red.vector).unwrap(), v.clone());
        prop_assert_eq!(square(&red.vector), square(&v));
        prop_assert!(reduce(&red.vector, false).unwrap().trace.word.is_empty());
    }

    #[test]
    fn iota_is_an_isometric_involution(v in k3_vector(), w in k3_vector()) {
        prop_assert_eq!(iota_star(&iota_star(&v)), v.clone());
        prop_assert_eq!(k3_pairing(&iota_star(&v), &iota_star(&w)), k3_pairing(&v, &w));
    }

    #[test]
    fn integral_k3_squares_are_even(v in k3_vector()) {
        use enriques_core::k3::k3_square;
        let sq = k3_square(&v);
        prop_assert!(sq.is_integer());
        prop_assert!(sq.numer() % 2 == 0.into());
    }
}

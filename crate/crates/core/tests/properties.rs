use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use supercoind::enveloping::{Enveloping, Mode, UElement};
use supercoind::harness::catalog_entry;
use supercoind::{koszul_sign, supertrace, Fp, Matrix, Parity};

const PRIMES: [u32; 5] = [3, 5, 7, 11, 13];

fn field() -> impl Strategy<Value = Fp> {
    prop::sample::select(&PRIMES[..]).prop_map(|p| Fp::new(p).unwrap())
}

fn parity() -> impl Strategy<Value = Parity> {
    prop::bool::ANY.prop_map(|b| if b { Parity::Odd } else { Parity::Even })
}

/// A matrix of parity `q` over a superspace graded by `pars`.
fn homogeneous(f: Fp, pars: &[Parity], q: Parity, raw: &[u32]) -> Matrix {
    let n = pars.len();
    Matrix::from_fn(n, n, |i, j| if pars[i] + pars[j] == q { raw[i * n + j] % f.p() } else { 0 })
}

proptest! {
    #[test]
    fn field_axioms(f in field(), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let (a, b, c) = (a % f.p(), b % f.p(), c % f.p());
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.pow(a, u64::from(f.p() - 1)), 1);
        } else {
            prop_assert!(f.inv(a).is_none());
        }
    }

    #[test]
    fn koszul_sign_extremes(perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let f = Fp::new(7).unwrap();
        let inversions = (0..perm.len())
            .flat_map(|a| (a + 1..perm.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| perm[a] > perm[b])
            .count();
        let odd = vec![Parity::Odd; perm.len()];
        let even = vec![Parity::Even; perm.len()];
        prop_assert_eq!(koszul_sign(f, &perm, &odd).unwrap(), f.sign(inversions % 2 == 1));
        prop_assert_eq!(koszul_sign(f, &perm, &even).unwrap(), 1);
    }

    #[test]
    fn koszul_sign_is_multiplicative(
        perms in (Just((0..5).collect::<Vec<usize>>()).prop_shuffle(), Just((0..5).collect::<Vec<usize>>()).prop_shuffle()),
        pars in prop::collection::vec(parity(), 5),
    ) {
        let f = Fp::new(5).unwrap();
        let (s, t) = perms;
        // apply s, then t to the reordered symbols
        let st: Vec<usize> = t.iter().map(|&k| s[k]).collect();
        let moved: Vec<Parity> = s.iter().map(|&k| pars[k]).collect();
        let lhs = koszul_sign(f, &st, &pars).unwrap();
        let rhs = f.mul(koszul_sign(f, &s, &pars).unwrap(), koszul_sign(f, &t, &moved).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn supertrace_is_supersymmetric(
        f in field(),
        pars in prop::collection::vec(parity(), 1..5),
        qa in parity(),
        qb in parity(),
        raw in prop::collection::vec(0u32..1000, 32),
    ) {
        let n = pars.len();
        let a = homogeneous(f, &pars, qa, &raw[..n * n]);
        let b = homogeneous(f, &pars, qb, &raw[16..16 + n * n]);
        let ab = supertrace(f, &a.mul(f, &b), &pars).unwrap();
        let ba = supertrace(f, &b.mul(f, &a), &pars).unwrap();
        prop_assert_eq!(ab, f.mul(f.sign(qa.is_odd() && qb.is_odd()), ba));
        // supercommutators are supertraceless
        prop_assert_eq!(supertrace(f, &a.supercommutator(f, &b, qa, qb), &pars).unwrap(), 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enveloping_products_associate(
        name in prop::sample::select(&["sl2-p5", "gl11-p3", "heisenberg-p3", "odd-abelian-p3"][..]),
        restricted in prop::bool::ANY,
        seed in any::<u64>(),
    ) {
        let alg = catalog_entry(name).unwrap().algebra().unwrap();
        let mode = if restricted { Mode::Restricted } else { Mode::Unrestricted };
        let env = Enveloping::new(alg, mode).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [x, y, z] = [0; 3].map(|_| env.random_element(&mut rng, 2, 3));
        let mul = |a: &UElement, b: &UElement| env.multiply(a, b).unwrap();
        prop_assert_eq!(mul(&mul(&x, &y), &z), mul(&x, &mul(&y, &z)));
        let lhs = env.coproduct(&mul(&x, &y));
        let rhs = env.tensor_mul(&env.coproduct(&x), &env.coproduct(&y));
        prop_assert_eq!(lhs, rhs);
    }
}

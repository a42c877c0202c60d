#![allow(dead_code)]

use std::sync::Arc;

use supercoind::enveloping::{Enveloping, Mode, Monomial};
use supercoind::harness::{catalog, Instance};
use supercoind::lie::LieSuperalgebra;
use supercoind::{Fp, Parity, Scalar};

pub struct Entry {
    pub name: String,
    pub alg: Arc<LieSuperalgebra>,
    pub instances: Vec<Instance>,
}

pub fn entries() -> Vec<Entry> {
    catalog()
        .into_iter()
        .map(|def| {
            let (alg, instances) = def.build().expect("catalog entries build");
            Entry { name: def.name, alg, instances }
        })
        .collect()
}

pub fn restricted(alg: &Arc<LieSuperalgebra>) -> Arc<Enveloping> {
    Arc::new(Enveloping::new(alg.clone(), Mode::Restricted).unwrap())
}

/// An abelian algebra with the given parities and zero p-map.
pub fn abelian(p: u32, parities: &[Parity]) -> Arc<LieSuperalgebra> {
    let f = Fp::new(p).unwrap();
    let basis = parities.iter().enumerate().map(|(i, &q)| (format!("x{i}"), q)).collect();
    let pm = (0..parities.len()).filter(|&i| !parities[i].is_odd()).map(|i| (i, vec![0; parities.len()])).collect();
    Arc::new(LieSuperalgebra::new(f, basis, &[], Some(pm)).unwrap())
}

/// `C(n, k) mod p` from Pascal's triangle over the integers.
pub fn binomial_mod(n: u32, k: u32, p: u32) -> Scalar {
    if k > n {
        return 0;
    }
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    (row[k as usize] % p as u128) as Scalar
}

/// Odd generators of `m`, as global indices.
pub fn odd_letters(alg: &LieSuperalgebra, m: &Monomial) -> Vec<usize> {
    (0..alg.dim()).filter(|&i| alg.parity(i).is_odd() && m.exponent(i) == 1).collect()
}

pub fn sign(f: Fp, negative: bool) -> Scalar {
    if negative {
        f.neg(1)
    } else {
        1
    }
}

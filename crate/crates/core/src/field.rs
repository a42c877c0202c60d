//! Arithmetic in the prime field F_p, Z/2 parities and the Koszul sign rule.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::linalg::Matrix;

/// A residue in `[0, p-1]`. The modulus lives in the ambient [`Fp`] context.
pub type Scalar = u32;

/// The prime field F_p for an odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    /// Builds the context, rejecting `p <= 2` and composite moduli.
    pub fn new(p: u32) -> Result<Self> {
        if p <= 2 {
            return arg(format!("the characteristic must be an odd prime p > 2, got {p}"));
        }
        if p > 65_521 {
            return arg(format!("p = {p} is outside the supported range (p <= 65521)"));
        }
        if (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return arg(format!("{p} is not prime"));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 * b as u64) % self.p as u64) as Scalar
    }

    /// `a + b*c`
    #[inline]
    pub fn mul_add(self, a: Scalar, b: Scalar, c: Scalar) -> Scalar {
        ((a as u64 + b as u64 * c as u64) % self.p as u64) as Scalar
    }

    pub fn pow(self, mut a: Scalar, mut e: u64) -> Scalar {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: Scalar) -> Option<Scalar> {
        if a % self.p == 0 {
            None
        } else {
            Some(self.pow(a, (self.p - 2) as u64))
        }
    }

    /// Division by a nonzero scalar. Panics on division by zero.
    pub fn div(self, a: Scalar, b: Scalar) -> Scalar {
        self.mul(a, self.inv(b).expect("division by zero in F_p"))
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        v.rem_euclid(self.p as i64) as Scalar
    }

    /// The representative in `(-p/2, p/2]`, for display.
    pub fn to_signed(self, a: Scalar) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// `(-1)^k` as a field element.
    #[inline]
    pub fn sign(self, odd: bool) -> Scalar {
        if odd {
            self.p - 1
        } else {
            1
        }
    }

    /// 1/2, which exists because p is odd.
    pub fn half(self) -> Scalar {
        (self.p + 1) / 2
    }

    pub fn factorial(self, n: u64) -> Scalar {
        (1..=n).fold(1 % self.p, |acc, k| self.mul(acc, (k % self.p as u64) as Scalar))
    }

    /// Binomial coefficient reduced mod p, via Lucas' theorem.
    pub fn binomial(self, mut n: u64, mut k: u64) -> Scalar {
        if k > n {
            return 0;
        }
        let p = self.p as u64;
        let mut acc = 1;
        while k > 0 || n > 0 {
            let (nd, kd) = (n % p, k % p);
            if kd > nd {
                return 0;
            }
            acc = self.mul(acc, self.small_binomial(nd, kd));
            n /= p;
            k /= p;
        }
        acc
    }

    fn small_binomial(self, n: u64, k: u64) -> Scalar {
        let num = self.factorial(n);
        let den = self.mul(self.factorial(k), self.factorial(n - k));
        self.div(num, den)
    }

    /// All residues, for exhaustive checks.
    pub fn elements(self) -> impl Iterator<Item = Scalar> {
        0..self.p
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// An element of Z/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u32) -> Self {
        if bit % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    #[inline]
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    #[inline]
    pub fn bit(self) -> u32 {
        self as u32
    }

    /// Whether `(-1)^{|self||other|}` is `-1`.
    #[inline]
    pub fn clashes(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }

    pub fn flip(self) -> Self {
        self + Parity::Odd
    }

    /// Sum of parities.
    pub fn sum<I: IntoIterator<Item = Parity>>(it: I) -> Parity {
        it.into_iter().fold(Parity::Even, |a, b| a + b)
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_odd() { "1" } else { "0" })
    }
}

/// The common parity of a family of homogeneous pieces, `None` if they
/// disagree; an empty family is even.
pub(crate) fn common_parity(parities: impl IntoIterator<Item = Parity>) -> Option<Parity> {
    let mut it = parities.into_iter();
    let first = it.next().unwrap_or(Parity::Even);
    it.all(|q| q == first).then_some(first)
}

/// Sign of reordering homogeneous symbols.
///
/// `permutation[t]` is the original position of the symbol placed at slot `t`.
/// The result is `(-1)^N` where `N` counts pairs of odd symbols whose relative
/// order is inverted.
pub fn koszul_sign(field: Fp, permutation: &[usize], parities: &[Parity]) -> Result<Scalar> {
    let k = permutation.len();
    if parities.len() != k {
        return Err(Error::Argument(format!(
            "permutation has length {k} but {} parities were given",
            parities.len()
        )));
    }
    let mut seen = vec![false; k];
    for &i in permutation {
        if i >= k || seen[i] {
            return arg("permutation is not a bijection of {0..k-1}");
        }
        seen[i] = true;
    }
    Ok(field.sign(koszul_odd(permutation, parities)))
}

/// Unchecked parity of the Koszul sign: `true` iff the sign is `-1`.
pub(crate) fn koszul_odd(permutation: &[usize], parities: &[Parity]) -> bool {
    let mut odd = false;
    for a in 0..permutation.len() {
        for b in a + 1..permutation.len() {
            let (i, j) = (permutation[a], permutation[b]);
            if i > j && parities[i].clashes(parities[j]) {
                odd = !odd;
            }
        }
    }
    odd
}

/// Supertrace of a square matrix: even diagonal entries minus odd ones.
pub fn supertrace(field: Fp, m: &Matrix, parities: &[Parity]) -> Result<Scalar> {
    if m.rows() != m.cols() {
        return arg(format!("supertrace of a non-square {}x{} matrix", m.rows(), m.cols()));
    }
    if parities.len() != m.rows() {
        return arg("parity list does not match the matrix size");
    }
    Ok(parities.iter().enumerate().fold(0, |acc, (i, par)| {
        let d = m.get(i, i);
        if par.is_odd() {
            field.sub(acc, d)
        } else {
            field.add(acc, d)
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_composite_moduli() {
        assert!(Fp::new(2).is_err());
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(9).is_err());
        assert!(Fp::new(7).is_ok());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for p in [3, 5, 7] {
            let f = Fp::new(p).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn lucas_binomials() {
        let f = Fp::new(3).unwrap();
        // C(9,3) = 84 = 0 mod 3, C(4,1) = 4 = 1 mod 3
        assert_eq!(f.binomial(9, 3), 0);
        assert_eq!(f.binomial(4, 1), 1);
        assert_eq!(f.binomial(8, 2), (28 % 3) as Scalar);
        let f5 = Fp::new(5).unwrap();
        for n in 0..30u64 {
            let mut row = vec![1u64];
            for k in 1..=n {
                row.push(row[k as usize - 1] * (n - k + 1) / k);
            }
            for k in 0..=n {
                assert_eq!(f5.binomial(n, k), (row[k as usize] % 5) as Scalar, "C({n},{k})");
            }
        }
    }

    #[test]
    fn koszul_examples() {
        let f = Fp::new(5).unwrap();
        let (e, o) = (Parity::Even, Parity::Odd);
        assert_eq!(koszul_sign(f, &[1, 0], &[o, o]).unwrap(), 4);
        assert_eq!(koszul_sign(f, &[1, 0], &[o, e]).unwrap(), 1);
        assert_eq!(koszul_sign(f, &[2, 1, 0], &[o, o, o]).unwrap(), 4);
        assert!(koszul_sign(f, &[1, 0], &[o]).is_err());
        assert!(koszul_sign(f, &[0, 0], &[o, o]).is_err());
    }

    /// Brute-force oracle: count adjacent odd transpositions of a bubble sort.
    fn bubble_sign(perm: &[usize], parities: &[Parity]) -> bool {
        let mut word: Vec<usize> = perm.to_vec();
        let mut odd = false;
        loop {
            let mut swapped = false;
            for t in 0..word.len().saturating_sub(1) {
                if word[t] > word[t + 1] {
                    if parities[word[t]].clashes(parities[word[t + 1]]) {
                        odd = !odd;
                    }
                    word.swap(t, t + 1);
                    swapped = true;
                }
            }
            if !swapped {
                return odd;
            }
        }
    }

    #[test]
    fn koszul_matches_bubble_sort_on_all_small_permutations() {
        fn perms(k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(k - 1) {
                for pos in 0..k {
                    let mut q = p.clone();
                    q.insert(pos, k - 1);
                    out.push(q);
                }
            }
            out
        }
        for k in 0..=5 {
            for mask in 0..(1u32 << k) {
                let par: Vec<Parity> = (0..k).map(|i| Parity::from_bit(mask >> i)).collect();
                for p in perms(k) {
                    assert_eq!(koszul_odd(&p, &par), bubble_sign(&p, &par));
                }
            }
        }
    }

    #[test]
    fn supertrace_examples() {
        let f = Fp::new(5).unwrap();
        let (e, o) = (Parity::Even, Parity::Odd);
        assert_eq!(supertrace(f, &Matrix::identity(2), &[e, o]).unwrap(), 0);
        assert_eq!(supertrace(f, &Matrix::from_rows(&[vec![2]]), &[e]).unwrap(), 2);
        let m = Matrix::from_rows(&[vec![3, 0], vec![0, 1]]);
        assert_eq!(supertrace(f, &m, &[e, o]).unwrap(), 2);
        assert!(supertrace(f, &Matrix::zeros(2, 3), &[e, e]).is_err());
    }
}

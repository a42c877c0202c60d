use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Fp, Scalar};

use super::{Enveloping, Monomial, UElement};

/// An element of `U ⊗ U` in the PBW tensor basis.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl TensorElement {
    pub fn terms(&self) -> &BTreeMap<(Monomial, Monomial), Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, a: &Monomial, b: &Monomial) -> Scalar {
        self.terms.get(&(a.clone(), b.clone())).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, f: Fp, a: Monomial, b: Monomial, c: Scalar) {
        if c == 0 {
            return;
        }
        let key = (a, b);
        let s = f.add(self.terms.get(&key).copied().unwrap_or(0), c);
        if s == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, s);
        }
    }

    pub fn add_scaled(&mut self, f: Fp, c: Scalar, other: &TensorElement) {
        for ((a, b), &x) in &other.terms {
            self.add_term(f, a.clone(), b.clone(), f.mul(c, x));
        }
    }

    /// `u ⊗ v` for elements in normal form.
    pub fn pure(f: Fp, u: &UElement, v: &UElement) -> TensorElement {
        let mut out = TensorElement::default();
        for (a, &x) in u.terms() {
            for (b, &y) in v.terms() {
                out.add_term(f, a.clone(), b.clone(), f.mul(x, y));
            }
        }
        out
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((a, b), c)| format!("{c}*{a:?}⊗{b:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Enveloping {
    /// Coproduct of a PBW monomial: each factor `g^a` splits binomially and
    /// odd left pieces passing odd right pieces contribute a sign.
    pub fn coproduct_monomial(&self, m: &Monomial) -> TensorElement {
        let f = self.field();
        let dim = self.dim();
        let alg = self.algebra();
        // (left exps, right exps, coefficient, parity of right part so far)
        let mut partial: Vec<(Vec<u32>, Vec<u32>, Scalar, bool)> = vec![(Vec::new(), Vec::new(), 1, false)];
        for i in 0..dim {
            let a = m.exponent(i);
            let odd = alg.parity(i).is_odd();
            let mut next = Vec::with_capacity(partial.len() * (a as usize + 1));
            for (l, r, c, right_odd) in &partial {
                for k in 0..=a {
                    let b = f.binomial(a as u64, k as u64);
                    if b == 0 {
                        continue;
                    }
                    // left piece g^k passes the accumulated right part
                    let sign = f.sign(odd && k % 2 == 1 && *right_odd);
                    let mut l2 = l.clone();
                    l2.push(k);
                    let mut r2 = r.clone();
                    r2.push(a - k);
                    let ro = *right_odd ^ (odd && (a - k) % 2 == 1);
                    next.push((l2, r2, f.mul(*c, f.mul(b, sign)), ro));
                }
            }
            partial = next;
        }
        let mut out = TensorElement::default();
        for (l, r, c, _) in partial {
            out.add_term(f, Monomial::from_vec(l), Monomial::from_vec(r), c);
        }
        out
    }

    pub fn coproduct(&self, u: &UElement) -> TensorElement {
        let f = self.field();
        let mut out = TensorElement::default();
        for (m, &c) in u.terms() {
            out.add_scaled(f, c, &self.coproduct_monomial(m));
        }
        out
    }

    /// `(u1⊗u2)(v1⊗v2) = (-1)^{|u2||v1|} u1v1 ⊗ u2v2`.
    pub fn tensor_mul(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        let f = self.field();
        let mut out = TensorElement::default();
        for ((u1, u2), &a) in x.terms() {
            for ((v1, v2), &b) in y.terms() {
                let s = f.sign(self.monomial_parity(u2).clashes(self.monomial_parity(v1)));
                let left = self.mul(&self.from_monomial(u1.clone()), &self.from_monomial(v1.clone()));
                let right = self.mul(&self.from_monomial(u2.clone()), &self.from_monomial(v2.clone()));
                let coef = f.mul(s, f.mul(a, b));
                out.add_scaled(f, coef, &TensorElement::pure(f, &left, &right));
            }
        }
        out
    }

    pub fn counit(&self, u: &UElement) -> Scalar {
        u.coefficient(&Monomial::one(self.dim()))
    }

    /// The antipode: `S(x) = -x` on generators, extended as a super
    /// anti-automorphism.
    pub fn antipode(&self, u: &UElement) -> UElement {
        let f = self.field();
        let mut out = self.zero();
        for (m, &c) in u.terms() {
            out.add_scaled(f, c, &self.antipode_monomial(m));
        }
        out
    }

    fn antipode_monomial(&self, m: &Monomial) -> UElement {
        let f = self.field();
        let word = m.word();
        let odd = word.iter().filter(|&&g| self.algebra().parity(g).is_odd()).count();
        // reversing the word swaps each pair of odd letters once
        let flips = word.len() + odd * odd.saturating_sub(1) / 2;
        let mut acc = self.one();
        for &g in &word {
            acc = self.left_mul_generator(g, &acc);
        }
        acc.scale(f, f.sign(flips % 2 == 1))
    }

    /// `m ∘ (A ⊗ B)` applied to a tensor, where `A`, `B` act on monomials.
    pub fn contract(
        &self,
        t: &TensorElement,
        left: impl Fn(&UElement) -> UElement,
        right: impl Fn(&UElement) -> UElement,
    ) -> UElement {
        let f = self.field();
        let mut out = self.zero();
        for ((a, b), &c) in t.terms() {
            let x = left(&self.from_monomial(a.clone()));
            let y = right(&self.from_monomial(b.clone()));
            out.add_scaled(f, c, &self.mul(&x, &y));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::env;
    use super::super::Mode;
    use super::*;
    use crate::lie::tests::{gl11, sl2};
    use crate::lie::LieSuperalgebra;
    use crate::field::Parity;
    use std::sync::Arc;

    fn heisenberg_like() -> Arc<LieSuperalgebra> {
        let f = Fp::new(5).unwrap();
        let basis = vec![("z".into(), Parity::Even), ("a".into(), Parity::Odd), ("b".into(), Parity::Odd)];
        let br = vec![(1, 2, vec![1, 0, 0])];
        Arc::new(LieSuperalgebra::new(f, basis, &br, Some(vec![(0, vec![1, 0, 0])])).unwrap())
    }

    #[test]
    fn coproduct_examples() {
        let e = env(sl2(5, 1), Mode::Unrestricted);
        let f = e.field();
        let one = Monomial::one(3);
        let d1 = e.coproduct(&e.one());
        assert_eq!(d1.terms().len(), 1);
        assert_eq!(d1.coefficient(&one, &one), 1);

        let h2 = e.monomial(&[0, 2, 0]).unwrap();
        let h1 = e.monomial(&[0, 1, 0]).unwrap();
        let d = e.coproduct(&e.from_monomial(h2.clone()));
        assert_eq!(d.terms().len(), 3);
        assert_eq!(d.coefficient(&h2, &one), 1);
        assert_eq!(d.coefficient(&h1, &h1), 2);
        assert_eq!(d.coefficient(&one, &h2), 1);

        let o = env(heisenberg_like(), Mode::Unrestricted);
        let ab = o.monomial(&[0, 1, 1]).unwrap();
        let a = o.monomial(&[0, 1, 0]).unwrap();
        let b = o.monomial(&[0, 0, 1]).unwrap();
        let one = Monomial::one(3);
        let d = o.coproduct(&o.from_monomial(ab.clone()));
        assert_eq!(d.terms().len(), 4);
        assert_eq!(d.coefficient(&ab, &one), 1);
        assert_eq!(d.coefficient(&a, &b), 1);
        assert_eq!(d.coefficient(&b, &a), f.neg(1));
        assert_eq!(d.coefficient(&one, &ab), 1);
        // oracle: product of generator coproducts with the tensor sign rule
        let dg = |i| o.coproduct(&o.generator(i));
        assert_eq!(o.tensor_mul(&dg(1), &dg(2)), d);
    }

    #[test]
    fn antipode_examples() {
        let e = env(sl2(5, 1), Mode::Unrestricted);
        let f = e.field();
        assert_eq!(e.antipode(&e.one()), e.one());
        assert_eq!(e.antipode(&e.generator(0)), e.generator(0).scale(f, f.neg(1)));
        let ef = e.multiply(&e.generator(0), &e.generator(2)).unwrap();
        let fe = e.multiply(&e.generator(2), &e.generator(0)).unwrap();
        assert_eq!(e.antipode(&ef), fe);
        let h = e.generator(1);
        assert_eq!(fe, ef.sub(f, &h));
    }

    #[test]
    fn antipode_gives_counit_on_small_monomials() {
        for alg in [sl2(3, 1), gl11(3), heisenberg_like()] {
            for mode in [Mode::Restricted, Mode::Unrestricted] {
                let e = env(alg.clone(), mode);
                let f = e.field();
                let monos = super::super::exponent_box(
                    &(0..alg.dim()).map(|i| if alg.parity(i).is_odd() { 2 } else { 3 }).collect::<Vec<_>>(),
                );
                for m in monos.into_iter().filter(|m| m.degree() <= 3) {
                    let u = e.from_monomial(m);
                    let lhs = e.contract(&e.coproduct(&u), |x| e.antipode(x), |x| x.clone());
                    assert_eq!(lhs, e.one().scale(f, e.counit(&u)));
                    let rhs = e.contract(&e.coproduct(&u), |x| x.clone(), |x| e.antipode(x));
                    assert_eq!(rhs, e.one().scale(f, e.counit(&u)));
                }
            }
        }
    }
}

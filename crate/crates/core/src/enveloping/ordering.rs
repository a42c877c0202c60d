use std::collections::BTreeMap;

use crate::error::{arg, Error, Result};
use crate::lie::SubalgebraSplit;

use super::{exponent_box, Enveloping, Mode, Monomial, UElement};

/// `u = Σ_c h_c · c` (left) or `u = Σ_c c · h_c` (right), keyed by complement
/// monomial `c`, with every `h_c` in U(h).
pub type HDecomposition = BTreeMap<Monomial, UElement>;

fn check_split(env: &Enveloping, split: &SubalgebraSplit) -> Result<()> {
    if **split.algebra() != **env.algebra() {
        return arg("split belongs to a different algebra");
    }
    Ok(())
}

/// Complement monomials `e^a ε^α` with even exponents below `p`.
pub fn complement_basis(split: &SubalgebraSplit) -> Vec<Monomial> {
    complement_basis_level(split, 0)
}

/// Complement monomials with even exponents below `p^{r+1}`, i.e. the
/// complement factors spanning the filtration piece `F_r` over U(h).
pub fn complement_basis_level(split: &SubalgebraSplit, r: u32) -> Vec<Monomial> {
    let alg = split.algebra();
    let top = alg.field().p().pow(r + 1);
    let bounds: Vec<u32> = (0..alg.dim())
        .map(|i| {
            if split.in_h(i) {
                1
            } else if alg.parity(i).is_odd() {
                2
            } else {
                top
            }
        })
        .collect();
    exponent_box(&bounds)
}

impl Enveloping {
    fn normal_order_h(&self, u: &UElement, split: &SubalgebraSplit, h_left: bool) -> Result<HDecomposition> {
        check_split(self, split)?;
        let f = self.field();
        let mut residual = u.clone();
        let mut out = HDecomposition::new();
        while let Some((top, coef)) = residual
            .terms()
            .iter()
            .max_by(|a, b| (a.0.degree(), a.0).cmp(&(b.0.degree(), b.0)))
            .map(|(m, &c)| (m.clone(), c))
        {
            let hm = top.restrict(|i| split.in_h(i));
            let cm = top.restrict(|i| !split.in_h(i));
            let (hu, cu) = (self.from_monomial(hm.clone()), self.from_monomial(cm.clone()));
            let prod = if h_left { self.mul(&hu, &cu) } else { self.mul(&cu, &hu) };
            let s = prod.coefficient(&top);
            let Some(inv) = f.inv(s) else {
                return Err(Error::Validation(format!("leading term {top:?} lost while reordering")));
            };
            let c = f.mul(coef, inv);
            residual.add_scaled(f, f.neg(c), &prod);
            out.entry(cm).or_insert_with(|| self.zero()).add_term(f, hm, c);
        }
        out.retain(|_, h| !h.is_zero());
        Ok(out)
    }

    /// Writes `u = Σ h_c · c` with `h_c ∈ U(h)` and `c` a complement monomial.
    pub fn normal_order_h_left(&self, u: &UElement, split: &SubalgebraSplit) -> Result<HDecomposition> {
        self.normal_order_h(u, split, true)
    }

    /// Writes `u = Σ c · h_c` with `h_c ∈ U(h)` and `c` a complement monomial.
    pub fn normal_order_h_right(&self, u: &UElement, split: &SubalgebraSplit) -> Result<HDecomposition> {
        self.normal_order_h(u, split, false)
    }

    /// Multiplies a decomposition back out.
    pub fn expand_h(&self, d: &HDecomposition, h_left: bool) -> UElement {
        let f = self.field();
        let mut out = self.zero();
        for (c, h) in d {
            let cu = self.from_monomial(c.clone());
            let prod = if h_left { self.mul(h, &cu) } else { self.mul(&cu, h) };
            out.add_scaled(f, 1, &prod);
        }
        out
    }
}

/// Least `r >= -1` with `u ∈ F_r`: every complement monomial in the h-left
/// normal order has even exponents below `p^{r+1}`; `-1` iff `u ∈ U(h)`.
pub fn filtration_degree(env: &Enveloping, u: &UElement, split: &SubalgebraSplit) -> Result<i64> {
    if env.mode() != Mode::Unrestricted {
        return Err(Error::Unsupported("the filtration is defined on U(g) only".into()));
    }
    let p = env.field().p() as u64;
    let d = env.normal_order_h_left(u, split)?;
    let mut best = -1i64;
    for c in d.keys() {
        if c.is_one() {
            continue;
        }
        let top = c
            .exponents()
            .iter()
            .enumerate()
            .filter(|(i, _)| !env.algebra().parity(*i).is_odd())
            .map(|(_, &a)| a as u64)
            .max()
            .unwrap_or(0);
        let mut r = 0i64;
        let mut bound = p;
        while top >= bound {
            bound *= p;
            r += 1;
        }
        best = best.max(r);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::super::tests::env;
    use super::*;
    use crate::lie::tests::{gl11, sl2};
    use crate::lie::SubalgebraSplit;

    #[test]
    fn h_elements_are_constant_terms() {
        let alg = sl2(5, 1);
        let e = env(alg.clone(), Mode::Unrestricted);
        let split = SubalgebraSplit::new(alg, &[0, 1]).unwrap();
        let u = e.multiply(&e.generator(0), &e.generator(1)).unwrap();
        let d = e.normal_order_h_left(&u, &split).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[&Monomial::one(3)], u);
    }

    #[test]
    fn sl2_borel_examples() {
        let alg = sl2(5, 1);
        let e = env(alg.clone(), Mode::Unrestricted);
        let f = e.field();
        let split = SubalgebraSplit::new(alg, &[0, 1]).unwrap();
        let fm = Monomial::generator(3, 2);
        let one = Monomial::one(3);
        // f h = h f + 2 f
        let fh = e.multiply(&e.generator(2), &e.generator(1)).unwrap();
        let d = e.normal_order_h_left(&fh, &split).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[&fm], e.generator(1).add(f, &e.one().scale(f, 2)));
        // h f = f h - 2 f
        let hf = e.multiply(&e.generator(1), &e.generator(2)).unwrap();
        let d = e.normal_order_h_right(&hf, &split).unwrap();
        assert_eq!(d[&fm], e.generator(1).sub(f, &e.one().scale(f, 2)));
        assert!(!d.contains_key(&one));
    }

    #[test]
    fn gl11_examples() {
        let alg = gl11(5);
        let e = env(alg.clone(), Mode::Unrestricted);
        let f = e.field();
        let split = SubalgebraSplit::new(alg, &[0, 1, 2]).unwrap();
        let e21 = Monomial::generator(4, 3);
        let one = Monomial::one(4);
        let u = e.multiply(&e.generator(3), &e.generator(2)).unwrap();
        let d = e.normal_order_h_left(&u, &split).unwrap();
        assert_eq!(d[&e21], e.generator(2).scale(f, f.neg(1)));
        assert_eq!(d[&one], e.generator(0).add(f, &e.generator(1)));
        let u = e.multiply(&e.generator(2), &e.generator(3)).unwrap();
        let d = e.normal_order_h_right(&u, &split).unwrap();
        assert_eq!(d[&e21], e.generator(2).scale(f, f.neg(1)));
        assert_eq!(d[&one], e.generator(0).add(f, &e.generator(1)));
    }

    #[test]
    fn filtration_examples() {
        let alg = sl2(3, 1);
        let e = env(alg.clone(), Mode::Unrestricted);
        let split = SubalgebraSplit::new(alg, &[0, 1]).unwrap();
        assert_eq!(filtration_degree(&e, &e.one(), &split).unwrap(), -1);
        assert_eq!(filtration_degree(&e, &e.generator(2), &split).unwrap(), 0);
        let f3 = e.from_monomial(e.monomial(&[0, 0, 3]).unwrap());
        assert_eq!(filtration_degree(&e, &f3, &split).unwrap(), 1);
        let f9 = e.from_monomial(e.monomial(&[0, 0, 9]).unwrap());
        assert_eq!(filtration_degree(&e, &f9, &split).unwrap(), 2);
        let r = env(sl2(3, 1), Mode::Restricted);
        assert!(filtration_degree(&r, &r.one(), &split).is_err());
    }

    #[test]
    fn complement_basis_sizes() {
        let alg = gl11(5);
        let split = SubalgebraSplit::new(alg.clone(), &[0, 1, 2]).unwrap();
        assert_eq!(complement_basis(&split).len(), 2);
        let split = SubalgebraSplit::new(sl2(5, 1), &[0, 1]).unwrap();
        assert_eq!(complement_basis(&split).len(), 5);
        assert_eq!(complement_basis_level(&split, 1).len(), 25);
    }
}

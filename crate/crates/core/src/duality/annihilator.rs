use std::collections::HashMap;
use std::sync::Arc;

use crate::enveloping::{Enveloping, Monomial, UElement};
use crate::error::Result;
use crate::field::Scalar;
use crate::lie::SubalgebraSplit;
use crate::linalg::{nullspace, subspace_equal, SparseMatrix, SubspaceBasis};
use crate::outcome::Outcome;
use crate::repr::{Coinduced, Induced, ModuleAction, Representation};

/// Which module of `π` to take the annihilator of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnnihilatorOf {
    Induced,
    Coinduced,
}

/// A subspace of `U'(g)` in the coordinates of the restricted PBW basis.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    pub monomials: Vec<Monomial>,
    pub space: SubspaceBasis,
}

impl IdealBasis {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    fn index(&self) -> HashMap<&Monomial, usize> {
        self.monomials.iter().enumerate().map(|(i, m)| (m, i)).collect()
    }

    pub fn coordinates(&self, u: &UElement) -> Vec<Scalar> {
        let index = self.index();
        let mut v = vec![0; self.monomials.len()];
        for (m, &c) in u.terms() {
            v[index[m]] = c;
        }
        v
    }

    pub fn element(&self, env: &Enveloping, coords: &[Scalar]) -> UElement {
        let mut u = env.zero();
        for (m, &c) in self.monomials.iter().zip(coords) {
            u.add_term(env.field(), m.clone(), c);
        }
        u
    }

    pub fn contains(&self, env: &Enveloping, u: &UElement) -> bool {
        self.space.contains(env.field(), &self.coordinates(u))
    }

    /// The image under a linear map of `U'(g)`.
    pub fn image(&self, env: &Enveloping, map: impl Fn(&UElement) -> UElement) -> IdealBasis {
        let vecs = self.space.vectors().iter().map(|v| self.coordinates(&map(&self.element(env, v))));
        IdealBasis {
            monomials: self.monomials.clone(),
            space: SubspaceBasis::span(env.field(), self.monomials.len(), vecs.collect::<Vec<_>>()),
        }
    }

    /// Closure under left and right multiplication by every generator of `g`.
    pub fn is_two_sided(&self, env: &Enveloping) -> Result<bool> {
        for v in self.space.vectors() {
            let b = self.element(env, v);
            for i in 0..env.dim() {
                let g = env.generator(i);
                if !self.contains(env, &env.multiply(&g, &b)?) || !self.contains(env, &env.multiply(&b, &g)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Kernel of `U'(g) → End(M)`: the nullspace of the matrix whose columns are
/// the flattened action matrices of the PBW basis.
pub fn annihilator(env: &Enveloping, module: &ModuleAction) -> Result<IdealBasis> {
    let f = env.field();
    let monomials = env.restricted_basis()?;
    let d = module.dim();
    let mut m = SparseMatrix::new(d * d, monomials.len());
    for (j, b) in monomials.iter().enumerate() {
        let a = module.action_matrix(&env.from_monomial(b.clone()));
        for r in 0..d {
            for c in 0..d {
                let x = a.get(r, c);
                if x != 0 {
                    m.add_to(f, r * d + c, j, x);
                }
            }
        }
    }
    Ok(IdealBasis { space: nullspace(f, &m), monomials })
}

/// The annihilator of `Ind(π)` or `Coind(π)`.
pub fn annihilator_of(
    env: &Arc<Enveloping>,
    split: &SubalgebraSplit,
    rep: &Representation,
    which: AnnihilatorOf,
) -> Result<IdealBasis> {
    match which {
        AnnihilatorOf::Coinduced => annihilator(env, Coinduced::new(env.clone(), split, rep.clone())?.module()),
        AnnihilatorOf::Induced => annihilator(env, Induced::new(env.clone(), split, rep.clone())?.module()),
    }
}

/// `Π^m k_strad ⊗ π*`, the module for which the duality gives the reverse inclusion.
pub fn reverse_twist(split: &SubalgebraSplit, rep: &Representation) -> Result<Representation> {
    let strad = split.strad()?;
    Ok(rep.contragredient(split).twist_left(split, &strad, split.m() as u32))
}

fn one_direction(env: &Arc<Enveloping>, split: &SubalgebraSplit, rep: &Representation, tag: &str) -> Result<Outcome> {
    let f = split.field();
    let strad = split.strad()?;
    let dual = rep.contragredient(split).twist(&strad.negate(f), split.m() as u32);
    let i = annihilator_of(env, split, rep, AnnihilatorOf::Coinduced)?;
    let j = annihilator_of(env, split, &dual, AnnihilatorOf::Coinduced)?;
    let sj = j.image(env, |u| env.antipode(u));
    let out = Outcome::pass()
        .with_dim(&format!("{tag}_U"), i.ambient_dim())
        .with_dim(&format!("{tag}_I"), i.dim())
        .with_dim(&format!("{tag}_J"), j.dim());
    if !i.is_two_sided(env)? || !j.is_two_sided(env)? {
        return Ok(Outcome::fail(format!("{tag}: annihilator is not a two-sided ideal")).and(out));
    }
    if !subspace_equal(&i.space, &sj.space)? {
        return Ok(Outcome::fail(format!("{tag}: dim I = {}, dim S(J) = {}, subspaces differ", i.dim(), sj.dim())).and(out));
    }
    Ok(out)
}

/// `I_π = S(I_{π* ⊗ Π^m k_{−strad}})` for the annihilators of the coinduced
/// modules, followed by the same check for `Π^m k_strad ⊗ π*`.
pub fn kernel_duality_check(env: &Arc<Enveloping>, split: &SubalgebraSplit, rep: &Representation) -> Result<Outcome> {
    let forward = one_direction(env, split, rep, "forward")?;
    let reverse = one_direction(env, split, &reverse_twist(split, rep)?, "reverse")?;
    Ok(forward.and(reverse))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enveloping::tests::env;
    use crate::enveloping::Mode;
    use crate::field::{Fp, Parity};
    use crate::lie::tests::{gl11, sl2};
    use crate::lie::{Character, LieSuperalgebra};
    use crate::linalg::Matrix;
    use crate::repr::tests::gl11_natural;

    fn abelian_e() -> Arc<LieSuperalgebra> {
        let f = Fp::new(3).unwrap();
        Arc::new(LieSuperalgebra::new(f, vec![("e".into(), Parity::Even)], &[], Some(vec![(0, vec![0])])).unwrap())
    }

    #[test]
    fn abelian_coordinate_algebra_is_faithful() {
        let alg = abelian_e();
        let e = Arc::new(env(alg.clone(), Mode::Restricted));
        let split = SubalgebraSplit::new(alg, &[]).unwrap();
        let rep = Representation::trivial(&split);
        let i = annihilator_of(&e, &split, &rep, AnnihilatorOf::Coinduced).unwrap();
        assert_eq!(i.dim(), 0);
        assert!(kernel_duality_check(&e, &split, &rep).unwrap().passed);
    }

    #[test]
    fn trivial_module_annihilator_is_augmentation_ideal() {
        let alg = sl2(3, 1);
        let e = Arc::new(env(alg.clone(), Mode::Restricted));
        let split = SubalgebraSplit::new(alg, &[0, 1, 2]).unwrap();
        let i = annihilator_of(&e, &split, &Representation::trivial(&split), AnnihilatorOf::Coinduced).unwrap();
        assert_eq!(i.dim(), 26);
        assert!(i.is_two_sided(&e).unwrap());
        assert!(!i.contains(&e, &e.one()));
    }

    #[test]
    fn corrupted_action_has_larger_kernel() {
        let alg = sl2(5, 1);
        let e = Arc::new(env(alg.clone(), Mode::Restricted));
        let split = SubalgebraSplit::new(alg, &[0, 1]).unwrap();
        let co = Coinduced::new(e.clone(), &split, Representation::trivial(&split)).unwrap();
        let good = annihilator(&e, co.module()).unwrap();
        let mut bad = co.module().clone();
        bad.generators[2] = Matrix::zeros(bad.dim(), bad.dim());
        let worse = annihilator(&e, &bad).unwrap();
        assert!(worse.dim() > good.dim());
    }

    #[test]
    fn kernel_duality_examples() {
        let alg = sl2(5, 1);
        let e = Arc::new(env(alg.clone(), Mode::Restricted));
        let split = SubalgebraSplit::new(alg, &[0, 1]).unwrap();
        let mut chi = Character::zero(&split);
        chi.values.insert(1, 1);
        let rep = Representation::character(&split, &chi, Parity::Even);
        let out = kernel_duality_check(&e, &split, &rep).unwrap();
        assert!(out.passed, "{:?}", out.witness);

        let alg = gl11(3);
        let e = Arc::new(env(alg.clone(), Mode::Restricted));
        let split = SubalgebraSplit::new(alg, &[0, 1, 2]).unwrap();
        let out = kernel_duality_check(&e, &split, &gl11_natural(&split)).unwrap();
        assert!(out.passed, "{:?}", out.witness);
    }
}

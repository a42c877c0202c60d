use std::collections::HashMap;
use std::sync::Arc;

use crate::enveloping::{complement_basis, Enveloping, Mode, Monomial, UElement};
use crate::error::{Error, Result};
use crate::field::{Parity, Scalar};
use crate::lie::SubalgebraSplit;
use crate::linalg::Matrix;

use super::{ModuleAction, Representation};

fn check_restricted(env: &Enveloping, rep: &Representation) -> Result<()> {
    if env.mode() != Mode::Restricted || !rep.is_restricted() {
        return Err(Error::Unsupported("finite Ind/Coind need restricted mode and a restricted π".into()));
    }
    Ok(())
}

/// Shared layout: coordinates indexed by (complement monomial, basis of V).
#[derive(Clone, Debug)]
struct Layout {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    dim_v: usize,
    /// Coproduct of each basis monomial as `(i₁, i₂, coefficient, |c₁|, |c₂|)`.
    splits: Arc<Vec<Vec<(usize, usize, Scalar, Parity, Parity)>>>,
}

impl Layout {
    fn new(env: &Enveloping, split: &SubalgebraSplit, dim_v: usize) -> Self {
        let basis = complement_basis(split);
        let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        let splits = basis
            .iter()
            .map(|c| {
                env.coproduct_monomial(c)
                    .terms()
                    .iter()
                    .map(|((c1, c2), &coef)| (index[c1], index[c2], coef, env.monomial_parity(c1), env.monomial_parity(c2)))
                    .collect()
            })
            .collect();
        Layout { basis, index, dim_v, splits: Arc::new(splits) }
    }

    fn parities(&self, env: &Enveloping, rep: &Representation) -> Vec<Parity> {
        self.basis
            .iter()
            .flat_map(|c| {
                let pc = env.monomial_parity(c);
                rep.parities().iter().map(move |&pv| pc + pv)
            })
            .collect()
    }
}

/// `Coind(π)`: h-equivariant maps `U'(g) → V`, stored by their values on the
/// complement monomials.
#[derive(Clone, Debug)]
pub struct Coinduced {
    env: Arc<Enveloping>,
    split: SubalgebraSplit,
    rep: Representation,
    layout: Layout,
    module: ModuleAction,
}

impl Coinduced {
    pub fn new(env: Arc<Enveloping>, split: &SubalgebraSplit, rep: Representation) -> Result<Self> {
        check_restricted(&env, &rep)?;
        let layout = Layout::new(&env, split, rep.dim());
        let parities = layout.parities(&env, &rep);
        let mut this = Coinduced {
            env,
            split: split.clone(),
            rep,
            layout,
            module: ModuleAction { field: split.field(), parities, generators: Vec::new() },
        };
        let generators = (0..split.algebra().dim())
            .map(|i| this.action_matrix_direct(&this.env.generator(i)))
            .collect::<Result<Vec<_>>>()?;
        this.module.generators = generators;
        Ok(this)
    }

    pub fn env(&self) -> &Arc<Enveloping> {
        &self.env
    }

    pub fn split(&self) -> &SubalgebraSplit {
        &self.split
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn module(&self) -> &ModuleAction {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Complement monomials indexing the coordinates.
    pub fn basis(&self) -> &[Monomial] {
        &self.layout.basis
    }

    pub fn monomial_index(&self, c: &Monomial) -> Option<usize> {
        self.layout.index.get(c).copied()
    }

    /// Coordinate index of `(c, v_k)`.
    pub fn coord(&self, c: usize, k: usize) -> usize {
        c * self.layout.dim_v + k
    }

    pub fn parities(&self) -> &[Parity] {
        &self.module.parities
    }

    /// The value `⟨c, λ⟩ ∈ V` at the `c`-th complement monomial.
    pub fn value<'a>(&self, lambda: &'a [Scalar], c: usize) -> &'a [Scalar] {
        let d = self.layout.dim_v;
        &lambda[c * d..(c + 1) * d]
    }

    /// `⟨u, λ⟩ = Σ_c π(h_c)⟨c, λ⟩` for `u = Σ h_c c`.
    pub fn eval(&self, u: &UElement, lambda: &[Scalar]) -> Result<Vec<Scalar>> {
        let f = self.split.field();
        let d = self.env.normal_order_h_left(u, &self.split)?;
        let mut out = vec![0; self.layout.dim_v];
        for (c, h) in &d {
            let v = self.rep.act_u(h)?.apply(f, self.value(lambda, self.layout.index[c]));
            for (o, x) in out.iter_mut().zip(v) {
                *o = f.add(*o, x);
            }
        }
        Ok(out)
    }

    /// Matrix of `u` computed from `⟨c, u·λ⟩ = ⟨c·u, λ⟩` for every `c`.
    pub fn action_matrix_direct(&self, u: &UElement) -> Result<Matrix> {
        let f = self.split.field();
        let dv = self.layout.dim_v;
        let n = self.layout.basis.len() * dv;
        let mut m = Matrix::zeros(n, n);
        for (ci, c) in self.layout.basis.iter().enumerate() {
            let cu = self.env.mul(&self.env.from_monomial(c.clone()), u);
            for (c2, h) in self.env.normal_order_h_left(&cu, &self.split)? {
                let block = self.rep.act_u(&h)?;
                let cj = self.layout.index[&c2];
                for j in 0..dv {
                    for k in 0..dv {
                        let x = f.add(m.get(ci * dv + j, cj * dv + k), block.get(j, k));
                        m.set(ci * dv + j, cj * dv + k, x);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn action_matrix(&self, u: &UElement) -> Matrix {
        self.module.action_matrix(u)
    }

    /// The unit vector at coordinate `(c, v_k)`.
    pub fn unit(&self, c: usize, k: usize) -> Vec<Scalar> {
        self.unit_at(self.coord(c, k))
    }

    pub fn unit_at(&self, j: usize) -> Vec<Scalar> {
        let mut v = vec![0; self.dim()];
        v[j] = 1;
        v
    }
}

/// `Ind(π) = U'(g) ⊗_{U'(h)} V` on the basis `c ⊗ v_k`.
#[derive(Clone, Debug)]
pub struct Induced {
    env: Arc<Enveloping>,
    split: SubalgebraSplit,
    rep: Representation,
    layout: Layout,
    module: ModuleAction,
}

impl Induced {
    pub fn new(env: Arc<Enveloping>, split: &SubalgebraSplit, rep: Representation) -> Result<Self> {
        check_restricted(&env, &rep)?;
        let layout = Layout::new(&env, split, rep.dim());
        let parities = layout.parities(&env, &rep);
        let mut this = Induced {
            env,
            split: split.clone(),
            rep,
            layout,
            module: ModuleAction { field: split.field(), parities, generators: Vec::new() },
        };
        let generators = (0..split.algebra().dim())
            .map(|i| this.action_matrix_direct(&this.env.generator(i)))
            .collect::<Result<Vec<_>>>()?;
        this.module.generators = generators;
        Ok(this)
    }

    pub fn env(&self) -> &Arc<Enveloping> {
        &self.env
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn module(&self) -> &ModuleAction {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.layout.basis
    }

    pub fn coord(&self, c: usize, k: usize) -> usize {
        c * self.layout.dim_v + k
    }

    pub fn parities(&self) -> &[Parity] {
        &self.module.parities
    }

    /// Coordinates of `u ⊗ v` after moving the U(h) part of `u` onto `v`.
    pub fn tensor(&self, u: &UElement, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let f = self.split.field();
        let dv = self.layout.dim_v;
        let mut out = vec![0; self.dim()];
        for (c, h) in self.env.normal_order_h_right(u, &self.split)? {
            let w = self.rep.act_u(&h)?.apply(f, v);
            let ci = self.layout.index[&c];
            for (k, x) in w.into_iter().enumerate() {
                out[ci * dv + k] = f.add(out[ci * dv + k], x);
            }
        }
        Ok(out)
    }

    /// Matrix of `u` computed from `u·(c ⊗ v) = (u c) ⊗ v`.
    pub fn action_matrix_direct(&self, u: &UElement) -> Result<Matrix> {
        let dv = self.layout.dim_v;
        let n = self.layout.basis.len() * dv;
        let mut cols = Vec::with_capacity(n);
        for c in &self.layout.basis {
            let uc = self.env.mul(u, &self.env.from_monomial(c.clone()));
            for k in 0..dv {
                let mut v = vec![0; dv];
                v[k] = 1;
                cols.push(self.tensor(&uc, &v)?);
            }
        }
        Ok(Matrix::from_columns(n, &cols))
    }

    pub fn action_matrix(&self, u: &UElement) -> Matrix {
        self.module.action_matrix(u)
    }
}

/// The product `Coind(V) × Coind(W) → Coind(V ⊗ W)`,
/// `⟨u, λμ⟩ = Σ (−1)^{|λ||u₍₂₎|} ⟨u₍₁₎, λ⟩ ⊗ ⟨u₍₂₎, μ⟩`, applied coordinatewise
/// so that inhomogeneous arguments are handled by linearity.
pub fn coinduced_product(x: &Coinduced, lambda: &[Scalar], y: &Coinduced, mu: &[Scalar]) -> Vec<Scalar> {
    let env = x.env();
    let f = env.field();
    let (dv, dw) = (x.rep().dim(), y.rep().dim());
    debug_assert_eq!(x.basis(), y.basis());
    let mut out = vec![0; x.basis().len() * dv * dw];
    for (ci, terms) in x.layout.splits.iter().enumerate() {
        for &(i1, i2, coef, p1, p2) in terms {
            let (a, b) = (x.value(lambda, i1), y.value(mu, i2));
            if b.iter().all(|&t| t == 0) {
                continue;
            }
            for k in 0..dv {
                if a[k] == 0 {
                    continue;
                }
                let s = f.sign((p1 + x.rep().parity(k)).clashes(p2));
                let ak = f.mul(coef, f.mul(s, a[k]));
                for l in 0..dw {
                    let t = ci * dv * dw + k * dw + l;
                    out[t] = f.mul_add(out[t], ak, b[l]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enveloping::tests::env;
    use crate::field::Fp;
    use crate::lie::tests::{gl11, sl2};
    use crate::lie::LieSuperalgebra;
    use crate::repr::tests::gl11_natural;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn abelian_e(p: u32) -> Arc<LieSuperalgebra> {
        let f = Fp::new(p).unwrap();
        Arc::new(LieSuperalgebra::new(f, vec![("e".into(), Parity::Even)], &[], Some(vec![(0, vec![0])])).unwrap())
    }

    #[test]
    fn coinduced_examples() {
        let alg = abelian_e(3);
        let e = Arc::new(env(alg.clone(), Mode::Restricted));
        let split = SubalgebraSplit::new(alg, &[]).unwrap();
        let co = Coinduced::new(e.clone(), &split, Representation::trivial(&split)).unwrap();
        assert_eq!(co.dim(), 3);
        let eta = co.unit(1, 0);
        assert_eq!(co.action_matrix(&e.one()), Matrix::identity(3));
        let moved = co.action_matrix(&e.generator(0)).apply(e.field(), &eta);
        assert_eq!(moved, vec![1, 0, 0]);
        // ⟨1, u·λ⟩ = ⟨u, λ⟩
        let u = e.generator(0);
        assert_eq!(co.eval(&e.one(), &moved).unwrap(), co.eval(&u, &eta).unwrap());
    }

    #[test]
    fn induced_examples() {
        let alg = sl2(5, 1);
        let e = Arc::new(env(alg.clone(), Mode::Restricted));
        let split = SubalgebraSplit::new(alg, &[0, 1]).unwrap();
        let ind = Induced::new(e.clone(), &split, Representation::trivial(&split)).unwrap();
        assert_eq!(ind.dim(), 5);
        let f = e.field();
        let one = ind.tensor(&e.one(), &[1]).unwrap();
        let f1 = ind.action_matrix(&e.generator(2)).apply(f, &one);
        assert_eq!(f1, ind.tensor(&e.generator(2), &[1]).unwrap());
        let ef1 = ind.action_matrix(&e.generator(0)).apply(f, &f1);
        assert!(ef1.iter().all(|&x| x == 0));
    }

    #[test]
    fn generator_matrices_give_module_actions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cases: Vec<(Arc<LieSuperalgebra>, Vec<usize>)> = vec![(sl2(3, 1), vec![0, 1]), (gl11(3), vec![0, 1, 2])];
        for (alg, h) in cases {
            let e = Arc::new(env(alg.clone(), Mode::Restricted));
            let split = SubalgebraSplit::new(alg.clone(), &h).unwrap();
            let reps = if alg.odd_dim() > 0 {
                vec![Representation::trivial(&split), gl11_natural(&split)]
            } else {
                vec![Representation::trivial(&split)]
            };
            for rep in reps {
                let co = Coinduced::new(e.clone(), &split, rep.clone()).unwrap();
                let ind = Induced::new(e.clone(), &split, rep).unwrap();
                co.module().check_representation(&e).unwrap();
                ind.module().check_representation(&e).unwrap();
                for _ in 0..10 {
                    let u = e.random_element(&mut rng, 2, 4);
                    assert_eq!(co.action_matrix(&u), co.action_matrix_direct(&u).unwrap());
                    assert_eq!(ind.action_matrix(&u), ind.action_matrix_direct(&u).unwrap());
                }
            }
        }
    }

    #[test]
    fn product_with_unit_is_identity() {
        let alg = gl11(5);
        let e = Arc::new(env(alg.clone(), Mode::Restricted));
        let split = SubalgebraSplit::new(alg, &[0, 1, 2]).unwrap();
        let a = Coinduced::new(e.clone(), &split, Representation::trivial(&split)).unwrap();
        let v = Coinduced::new(e, &split, gl11_natural(&split)).unwrap();
        let one = a.unit(0, 0);
        for k in 0..v.dim() {
            let mut x = vec![0; v.dim()];
            x[k] = 1;
            assert_eq!(coinduced_product(&a, &one, &v, &x), x);
            assert_eq!(coinduced_product(&v, &x, &a, &one), x);
        }
    }
}

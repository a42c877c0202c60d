use std::sync::Arc;

use crate::enveloping::{Enveloping, Monomial};
use crate::error::{Error, Result};
use crate::field::{common_parity, Fp, Parity, Scalar};
use crate::lie::{Character, SubalgebraSplit};
use crate::linalg::{inverse, Matrix};
use crate::outcome::Outcome;

use super::{coinduced_product, Coinduced, ModuleAction, Representation};

/// The local algebra `A = Coind(k)`, with coordinates `η_1..η_n` (even) and
/// `ζ_1..ζ_m` (odd).
///
/// Elements are stored in the dual-monomial basis `δ_c` (`⟨c', δ_c⟩ = [c = c']`).
/// The monomial chart `η^a ζ^α` is a diagonal rescaling of that basis.
#[derive(Clone, Debug)]
pub struct AlgebraA {
    co: Coinduced,
    chart_scale: Vec<Scalar>,
}

impl AlgebraA {
    pub fn new(env: Arc<Enveloping>, split: &SubalgebraSplit) -> Result<Self> {
        let co = Coinduced::new(env, split, Representation::trivial(split))?;
        let mut this = AlgebraA { co, chart_scale: Vec::new() };
        let f = this.field();
        let mut scale = Vec::with_capacity(this.dim());
        for (k, c) in this.co.basis().iter().enumerate() {
            let v = this.poly(c);
            if v.iter().enumerate().any(|(j, &x)| j != k && x != 0) || v[k] == 0 {
                return Err(Error::Validation(format!("monomial chart is not diagonal at {c:?}")));
            }
            scale.push(v[k]);
        }
        debug_assert!(scale.iter().all(|&s| f.inv(s).is_some()));
        this.chart_scale = scale;
        Ok(this)
    }

    pub fn field(&self) -> Fp {
        self.co.split().field()
    }

    pub fn coinduced(&self) -> &Coinduced {
        &self.co
    }

    pub fn split(&self) -> &SubalgebraSplit {
        self.co.split()
    }

    pub fn dim(&self) -> usize {
        self.co.dim()
    }

    pub fn n(&self) -> usize {
        self.split().n()
    }

    pub fn m(&self) -> usize {
        self.split().m()
    }

    pub fn basis(&self) -> &[Monomial] {
        self.co.basis()
    }

    pub fn parities(&self) -> &[Parity] {
        self.co.parities()
    }

    pub fn index(&self, c: &Monomial) -> usize {
        self.co.monomial_index(c).expect("complement monomial")
    }

    /// `η^a ζ^α = scale · δ_{e^a ε^α}`.
    pub fn chart_scale(&self, c: usize) -> Scalar {
        self.chart_scale[c]
    }

    pub fn one(&self) -> Vec<Scalar> {
        self.co.unit(0, 0)
    }

    fn delta_at(&self, global: usize) -> Vec<Scalar> {
        let dim = self.split().algebra().dim();
        self.co.unit(self.index(&Monomial::generator(dim, global)), 0)
    }

    pub fn eta(&self, i: usize) -> Vec<Scalar> {
        self.delta_at(self.split().p_indices()[i])
    }

    pub fn zeta(&self, s: usize) -> Vec<Scalar> {
        self.delta_at(self.split().p_indices()[self.n() + s])
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        coinduced_product(&self.co, a, &self.co, b)
    }

    /// The product `η_1^{a_1}…η_n^{a_n} ζ^α` read off a complement monomial.
    pub fn poly(&self, c: &Monomial) -> Vec<Scalar> {
        let mut acc = self.one();
        for (t, &g) in self.split().p_indices().iter().enumerate() {
            let gen = if t < self.n() { self.eta(t) } else { self.zeta(t - self.n()) };
            for _ in 0..c.exponent(g) {
                acc = self.mul(&acc, &gen);
            }
        }
        acc
    }

    /// Constant term `⟨1, a⟩`.
    pub fn constant_term(&self, a: &[Scalar]) -> Scalar {
        a[0]
    }

    pub fn parity(&self, a: &[Scalar]) -> Option<Parity> {
        common_parity(a.iter().zip(self.parities()).filter(|(&x, _)| x != 0).map(|(_, &q)| q))
    }

    /// Matrix of left multiplication by `a`.
    pub fn mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|k| self.mul(a, &self.co.unit(k, 0))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// `∂/∂η_i` on the monomial chart, as a matrix in the `δ` basis.
    pub fn partial_even(&self, i: usize) -> Matrix {
        let f = self.field();
        let g = self.split().p_indices()[i];
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (k, c) in self.basis().iter().enumerate() {
            let a = c.exponent(g);
            if a == 0 {
                continue;
            }
            let lower = self.index(&c.with_exponent(g, a - 1));
            let coef = f.div(f.mul(a % f.p(), self.chart_scale[lower]), self.chart_scale[k]);
            m.set(lower, k, coef);
        }
        m
    }

    /// Left odd derivative `∂/∂ζ_s`: `ζ_s` is moved to the front before removal.
    pub fn partial_odd(&self, s: usize) -> Matrix {
        let f = self.field();
        let n = self.n();
        let g = self.split().p_indices()[n + s];
        let earlier = &self.split().p_indices()[n..n + s];
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (k, c) in self.basis().iter().enumerate() {
            if c.exponent(g) == 0 {
                continue;
            }
            let passed = earlier.iter().filter(|&&t| c.exponent(t) == 1).count();
            let lower = self.index(&c.with_exponent(g, 0));
            let coef = f.div(f.mul(f.sign(passed % 2 == 1), self.chart_scale[lower]), self.chart_scale[k]);
            m.set(lower, k, coef);
        }
        m
    }

    /// `δ_X`: the action of `X ∈ g` on `A`.
    pub fn delta(&self, x: usize) -> &Matrix {
        &self.co.module().generators[x]
    }

    /// Expands `δ_X = Σ f_j ∂_j + Σ g_t ∂̄_t` and checks it on the whole basis.
    pub fn delta_expansion(&self, x: usize) -> Result<DerivationOfA> {
        let f = self.field();
        let dx = self.delta(x);
        let parity = self.split().algebra().parity(x);
        let d = DerivationOfA {
            parity,
            f: (0..self.n()).map(|i| dx.apply(f, &self.eta(i))).collect(),
            g: (0..self.m()).map(|s| dx.apply(f, &self.zeta(s))).collect(),
        };
        if d.to_matrix(self) != *dx {
            return Err(Error::Validation(format!(
                "δ_{} is not determined by its values on the coordinates",
                self.split().algebra().name(x)
            )));
        }
        Ok(d)
    }

    /// `Div(D) = Σ ∂_i f_i − (−1)^{|D|} Σ ∂̄_s g_s`.
    pub fn divergence(&self, d: &DerivationOfA) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![0; self.dim()];
        let add = |out: &mut Vec<Scalar>, v: Vec<Scalar>, c: Scalar| {
            for (o, x) in out.iter_mut().zip(v) {
                *o = f.mul_add(*o, c, x);
            }
        };
        for (i, fi) in d.f.iter().enumerate() {
            add(&mut out, self.partial_even(i).apply(f, fi), 1);
        }
        let s = f.neg(f.sign(d.parity.is_odd()));
        for (t, gt) in d.g.iter().enumerate() {
            add(&mut out, self.partial_odd(t).apply(f, gt), s);
        }
        out
    }

    /// The top monomial `η_1^{p−1}…η_n^{p−1} ζ_1…ζ_m` as an element.
    pub fn top_monomial(&self) -> Monomial {
        let p = self.field().p();
        let alg = self.split().algebra();
        let exps: Vec<u32> = (0..alg.dim())
            .map(|i| {
                if self.split().in_h(i) {
                    0
                } else if alg.parity(i).is_odd() {
                    1
                } else {
                    p - 1
                }
            })
            .collect();
        Monomial::from_vec(exps)
    }
}

/// Sign of sorting the odd letters of `α` followed by those of `β` into
/// increasing order, by counting the adjacent swaps of a bubble sort.
fn odd_merge_sign(alpha: &[usize], beta: &[usize]) -> bool {
    let mut word: Vec<usize> = alpha.iter().chain(beta).copied().collect();
    let mut odd = false;
    for i in 0..word.len() {
        for j in 0..word.len() - 1 - i {
            if word[j] > word[j + 1] {
                word.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    odd
}

impl AlgebraA {
    /// The product law on dual monomials:
    /// `δ_{e^a ε^α} δ_{e^b ε^β} = ∏ C(a_i+b_i, a_i) (−1)^{Inv(α,β) + |α||β|} δ_{e^{a+b} ε^{α+β}}`,
    /// where `|α||β|` is the Koszul sign of the pairing `⟨c₁⊗c₂, λ⊗μ⟩`; zero when an exponent leaves `[0, p−1]` or `α, β` overlap. Together with
    /// `η_i^p = 0` and `ζ_s^2 = 0`, checked on every pair of basis elements.
    pub fn dual_law_check(&self) -> Outcome {
        let f = self.field();
        let p = f.p();
        let alg = self.split().algebra();
        let dim = alg.dim();
        let fail = |w: String| Outcome::fail(w).with_dim("A", self.dim());
        for (i, a) in self.basis().iter().enumerate() {
            for (j, b) in self.basis().iter().enumerate() {
                let got = self.mul(&self.co.unit(i, 0), &self.co.unit(j, 0));
                let mut want = vec![0; self.dim()];
                let sum: Vec<u32> = (0..dim).map(|g| a.exponent(g) + b.exponent(g)).collect();
                let fits = (0..dim).all(|g| sum[g] < if alg.parity(g).is_odd() { 2 } else { p });
                if fits {
                    let mut c = 1;
                    for g in (0..dim).filter(|&g| !alg.parity(g).is_odd()) {
                        c = f.mul(c, f.binomial(sum[g] as u64, a.exponent(g) as u64));
                    }
                    let odd = |m: &Monomial| (0..dim).filter(|&g| alg.parity(g).is_odd() && m.exponent(g) == 1).collect::<Vec<_>>();
                    let (oa, ob) = (odd(a), odd(b));
                    let koszul = oa.len() % 2 == 1 && ob.len() % 2 == 1;
                    c = f.mul(c, f.sign(odd_merge_sign(&oa, &ob) != koszul));
                    want[self.index(&Monomial::from_vec(sum))] = c;
                }
                if got != want {
                    return fail(format!("δ_{a:?}·δ_{b:?} = {got:?}, expected {want:?}"));
                }
            }
        }
        for i in 0..self.n() {
            let mut pw = self.one();
            for _ in 0..p {
                pw = self.mul(&pw, &self.eta(i));
            }
            if pw.iter().any(|&x| x != 0) {
                return fail(format!("η_{}^p ≠ 0", i + 1));
            }
        }
        for s in 0..self.m() {
            if self.mul(&self.zeta(s), &self.zeta(s)).iter().any(|&x| x != 0) {
                return fail(format!("ζ_{}^2 ≠ 0", s + 1));
            }
        }
        Outcome::pass().with_dim("A", self.dim())
    }
}

/// A derivation `Σ f_i ∂_i + Σ g_s ∂̄_s` of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationOfA {
    pub parity: Parity,
    pub f: Vec<Vec<Scalar>>,
    pub g: Vec<Vec<Scalar>>,
}

impl DerivationOfA {
    pub fn to_matrix(&self, a: &AlgebraA) -> Matrix {
        let fld = a.field();
        let mut out = Matrix::zeros(a.dim(), a.dim());
        for (i, fi) in self.f.iter().enumerate() {
            out = out.add(fld, &a.mult_matrix(fi).mul(fld, &a.partial_even(i)));
        }
        for (s, gs) in self.g.iter().enumerate() {
            out = out.add(fld, &a.mult_matrix(gs).mul(fld, &a.partial_odd(s)));
        }
        out
    }

    /// `D(xy) = D(x)y + (−1)^{|D||x|} x D(y)` for homogeneous `x`.
    pub fn satisfies_leibniz(&self, a: &AlgebraA, x: &[Scalar], y: &[Scalar]) -> bool {
        let f = a.field();
        let m = self.to_matrix(a);
        let px = a.parity(x).unwrap_or(Parity::Even);
        let lhs = m.apply(f, &a.mul(x, y));
        let t1 = a.mul(&m.apply(f, x), y);
        let t2 = a.mul(x, &m.apply(f, y));
        let s = f.sign(self.parity.clashes(px));
        lhs.iter().zip(t1.iter().zip(&t2)).all(|(&l, (&u, &v))| l == f.mul_add(u, s, v))
    }
}

/// The Berezin line `Ω = A·ω_e`, with `ω_e` of parity `m`.
#[derive(Clone, Debug)]
pub struct BerezinLine<'a> {
    pub algebra: &'a AlgebraA,
}

impl<'a> BerezinLine<'a> {
    pub fn new(algebra: &'a AlgebraA) -> Self {
        BerezinLine { algebra }
    }

    /// `L_D(a ω_e) = D(a) ω_e + (−1)^{|D||a|} a Div(D) ω_e`, as a matrix on the
    /// coefficient `a`.
    pub fn lie_derivative_matrix(&self, d: &DerivationOfA) -> Matrix {
        let a = self.algebra;
        let f = a.field();
        let dm = d.to_matrix(a);
        let div = a.divergence(d);
        let cols: Vec<Vec<Scalar>> = (0..a.dim())
            .map(|k| {
                let x = a.coinduced().unit(k, 0);
                let s = f.sign(d.parity.clashes(a.parities()[k]));
                let mut v = dm.apply(f, &x);
                for (o, y) in v.iter_mut().zip(a.mul(&x, &div)) {
                    *o = f.mul_add(*o, s, y);
                }
                v
            })
            .collect();
        Matrix::from_columns(a.dim(), &cols)
    }

    pub fn lie_derivative(&self, d: &DerivationOfA, coeff: &[Scalar]) -> Vec<Scalar> {
        self.lie_derivative_matrix(d).apply(self.algebra.field(), coeff)
    }

    /// `Ω` as a `g`-module: `X` acts by `L_{δ_X}`.
    pub fn module(&self) -> Result<ModuleAction> {
        let a = self.algebra;
        let m = a.m() as u32;
        let dim = a.split().algebra().dim();
        let generators = (0..dim)
            .map(|x| Ok(self.lie_derivative_matrix(&a.delta_expansion(x)?)))
            .collect::<Result<Vec<_>>>()?;
        let parities = a.parities().iter().map(|&q| q + Parity::from_bit(m)).collect();
        Ok(ModuleAction { field: a.field(), parities, generators })
    }
}

impl AlgebraA {
    /// The module `Ω` and the matrix of `χ: ω ↦ [c ↦ cl(c·ω)]` in the
    /// complement-monomial coordinates.
    pub fn omega_chart(&self) -> Result<(ModuleAction, Matrix)> {
        let omega = BerezinLine::new(self).module()?;
        let env = self.co.env();
        omega.check_representation(env)?;
        let rows: Vec<Vec<Scalar>> = self
            .basis()
            .iter()
            .map(|c| omega.action_matrix(&env.from_monomial(c.clone())).row(0).to_vec())
            .collect();
        Ok((omega, Matrix::from_rows(&rows)))
    }

    /// Checks that `ω ↦ [c ↦ cl(c·ω)]` is an isomorphism of `A`-modules and
    /// `U'(g)`-modules from `Ω` onto `Coind(Π^m k_ψ)` with `ψ = −strad`
    /// (or `+strad` when `flip_sign` is set, which should fail when strad ≠ 0).
    pub fn omega_iso_check(&self, flip_sign: bool) -> Result<Outcome> {
        let f = self.field();
        let split = self.split();
        let alg = split.algebra();
        let strad = split.strad()?;
        let psi: Character = if flip_sign { strad } else { strad.negate(f) };
        let target_rep = Representation::trivial(split).twist(&psi, self.m() as u32);
        let target = Coinduced::new(self.co.env().clone(), split, target_rep)?;
        let fail = |w: String| Ok(Outcome::fail(w).with_dim("omega", self.dim()));
        let (omega, chi) = match self.omega_chart() {
            Ok(pair) => pair,
            Err(e) => return fail(format!("Ω is not a module: {e}")),
        };
        for &h in split.h_indices() {
            let lhs = omega.generators[h].row(0).to_vec();
            let want: Vec<Scalar> = (0..self.dim()).map(|k| if k == 0 { psi.value(h) } else { 0 }).collect();
            if lhs != want {
                return fail(format!("cl({}·ω) ≠ {}·cl(ω)", alg.name(h), psi.value(h)));
            }
        }
        for x in 0..alg.dim() {
            let lhs = chi.mul(f, &omega.generators[x]);
            let rhs = target.module().generators[x].mul(f, &chi);
            if lhs != rhs {
                return fail(format!("χ is not equivariant for {}", alg.name(x)));
            }
        }
        for k in 0..self.dim() {
            let a = self.co.unit(k, 0);
            let lhs = chi.mul(f, &self.mult_matrix(&a));
            for j in 0..self.dim() {
                let w = self.co.unit(j, 0);
                let image = chi.apply(f, &w);
                let rhs = coinduced_product(&self.co, &a, &target, &image);
                if lhs.column(j) != rhs {
                    return fail(format!("χ is not A-linear on basis pair ({k}, {j})"));
                }
            }
        }
        if inverse(f, &chi).is_none() {
            return fail("χ is not bijective".into());
        }
        Ok(Outcome::pass().with_dim("omega", self.dim()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enveloping::tests::env;
    use crate::enveloping::Mode;
    use crate::lie::tests::{gl11, sl2};
    use crate::lie::LieSuperalgebra;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn abelian(p: u32, parities: &[Parity]) -> Arc<LieSuperalgebra> {
        let f = Fp::new(p).unwrap();
        let basis = parities.iter().enumerate().map(|(i, &q)| (format!("x{i}"), q)).collect();
        let pm = (0..parities.len()).filter(|&i| !parities[i].is_odd()).map(|i| (i, vec![0; parities.len()])).collect();
        Arc::new(LieSuperalgebra::new(f, basis, &[], Some(pm)).unwrap())
    }

    fn algebra(alg: Arc<LieSuperalgebra>, h: &[usize]) -> AlgebraA {
        let e = Arc::new(env(alg.clone(), Mode::Restricted));
        AlgebraA::new(e, &SubalgebraSplit::new(alg, h).unwrap()).unwrap()
    }

    #[test]
    fn dual_monomial_products() {
        // δ_{e^a} δ_{e^b} = C(a+b, a) δ_{e^{a+b}}, and η^p = 0
        for p in [3, 5] {
            let a = algebra(abelian(p, &[Parity::Even]), &[]);
            let f = a.field();
            for i in 0..p {
                for j in 0..p {
                    let prod = a.mul(&a.coinduced().unit(i as usize, 0), &a.coinduced().unit(j as usize, 0));
                    let mut want = vec![0; p as usize];
                    if i + j < p {
                        want[(i + j) as usize] = f.binomial((i + j) as u64, i as u64);
                    }
                    assert_eq!(prod, want);
                }
            }
            let mut pw = a.one();
            for _ in 0..p {
                pw = a.mul(&pw, &a.eta(0));
            }
            assert!(pw.iter().all(|&x| x == 0));
        }
        let a = algebra(abelian(3, &[Parity::Odd, Parity::Odd]), &[]);
        let f = a.field();
        let z1 = a.zeta(0);
        assert!(a.mul(&z1, &z1).iter().all(|&x| x == 0));
        let z12 = a.mul(&z1, &a.zeta(1));
        let z21 = a.mul(&a.zeta(1), &z1);
        assert_eq!(z12[3], f.neg(1));
        assert_eq!(z21, z12.iter().map(|&x| f.neg(x)).collect::<Vec<_>>());
    }

    #[test]
    fn dual_law_on_small_splits() {
        for p in [3, 5] {
            for parities in [vec![Parity::Even, Parity::Even], vec![Parity::Even, Parity::Odd, Parity::Odd], vec![Parity::Odd, Parity::Odd]] {
                let out = algebra(abelian(p, &parities), &[]).dual_law_check();
                assert!(out.passed, "{:?}", out.witness);
            }
        }
        for h in [vec![], vec![0, 1]] {
            assert!(algebra(sl2(5, 1), &h).dual_law_check().passed);
        }
        assert!(algebra(gl11(3), &[]).dual_law_check().passed);
        assert!(odd_merge_sign(&[2], &[1]));
        assert!(odd_merge_sign(&[1, 3], &[2, 4]));
        assert!(!odd_merge_sign(&[3], &[1, 2]));
    }

    #[test]
    fn delta_expansion_examples() {
        let a = algebra(sl2(5, 1), &[0, 1]);
        let f = a.field();
        for h in [0, 1] {
            let d = a.delta_expansion(h).unwrap();
            assert_eq!(a.constant_term(&d.f[0]), 0);
        }
        let d = a.delta_expansion(2).unwrap();
        assert_eq!(a.constant_term(&d.f[0]), 1);
        let dh = a.delta_expansion(1).unwrap();
        assert_eq!(a.divergence(&dh), a.one().iter().map(|&x| f.mul(x, 2)).collect::<Vec<_>>());

        let b = algebra(abelian(3, &[Parity::Even]), &[]);
        // δ_e on the δ-basis is the shift δ_{e^k} ↦ δ_{e^{k−1}}
        let want = Matrix::from_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        assert_eq!(*b.delta(0), want);
        let d = b.delta_expansion(0).unwrap();
        assert_eq!(d.f[0], b.one());
    }

    #[test]
    fn divergence_examples() {
        let a = algebra(abelian(3, &[Parity::Even, Parity::Odd]), &[]);
        let f = a.field();
        let zero = vec![0; a.dim()];
        let constant = DerivationOfA { parity: Parity::Even, f: vec![a.one()], g: vec![zero.clone()] };
        assert_eq!(a.divergence(&constant), zero);
        let euler = DerivationOfA { parity: Parity::Even, f: vec![a.eta(0)], g: vec![zero.clone()] };
        assert_eq!(a.divergence(&euler), a.one());
        let odd_euler = DerivationOfA { parity: Parity::Even, f: vec![zero.clone()], g: vec![a.zeta(0)] };
        assert_eq!(a.divergence(&odd_euler), a.one().iter().map(|&x| f.neg(x)).collect::<Vec<_>>());
        let line = BerezinLine::new(&a);
        assert_eq!(line.lie_derivative(&constant, &a.one()), zero);
    }

    #[test]
    fn derivations_satisfy_leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (alg, h) in [(sl2(3, 1), vec![0, 1]), (gl11(3), vec![0, 1, 2]), (gl11(5), vec![0, 1])] {
            let a = algebra(alg.clone(), &h);
            for x in 0..alg.dim() {
                let d = a.delta_expansion(x).unwrap();
                for _ in 0..5 {
                    let i = rng.gen_range(0..a.dim());
                    let j = rng.gen_range(0..a.dim());
                    let (u, v) = (a.coinduced().unit(i, 0), a.coinduced().unit(j, 0));
                    assert!(d.satisfies_leibniz(&a, &u, &v));
                }
            }
        }
    }

    #[test]
    fn lie_derivative_at_closed_point_is_minus_strad() {
        for (alg, h) in [(sl2(5, 1), vec![0, 1]), (gl11(5), vec![0, 1, 2])] {
            let a = algebra(alg, &h);
            let f = a.field();
            let strad = a.split().strad().unwrap();
            let line = BerezinLine::new(&a);
            for &x in &h {
                let v = line.lie_derivative(&a.delta_expansion(x).unwrap(), &a.one());
                assert_eq!(a.constant_term(&v), f.neg(strad.value(x)));
            }
        }
    }

    #[test]
    fn omega_examples() {
        let a = algebra(abelian(3, &[Parity::Even]), &[]);
        assert!(a.omega_iso_check(false).unwrap().passed);
        let a = algebra(sl2(5, 1), &[0, 1]);
        assert!(a.omega_iso_check(false).unwrap().passed);
        assert!(!a.omega_iso_check(true).unwrap().passed);
        let a = algebra(gl11(3), &[0, 1, 2]);
        assert!(a.omega_iso_check(false).unwrap().passed);
        assert!(!a.omega_iso_check(true).unwrap().passed);
    }
}

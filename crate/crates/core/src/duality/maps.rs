use std::sync::Arc;

use crate::enveloping::Enveloping;
use crate::error::{Error, Result};
use crate::field::{Parity, Scalar};
use crate::lie::SubalgebraSplit;
use crate::linalg::{inverse, Matrix};
use crate::outcome::Outcome;
use crate::repr::{coinduced_product, AlgebraA, Coinduced, Induced, ModuleAction, Representation};

use super::lambda::lambda;

/// The spaces attached to `(h ⊂ g, π)`: `Coind(π)`, the source
/// `Ind(Π^m k_strad ⊗ π)` of `Φ`, and `Coind(π* ⊗ Π^m k_{−strad})`, which is
/// the coinduced module of the dual of that source.
#[derive(Clone, Debug)]
pub struct Duality {
    pub env: Arc<Enveloping>,
    pub split: SubalgebraSplit,
    pub algebra: AlgebraA,
    pub coind: Coinduced,
    pub source: Induced,
    pub dual: Coinduced,
}

impl Duality {
    pub fn new(env: Arc<Enveloping>, split: &SubalgebraSplit, rep: Representation) -> Result<Self> {
        let f = split.field();
        let m = split.m() as u32;
        let strad = split.strad()?;
        let algebra = AlgebraA::new(env.clone(), split)?;
        let twisted = rep.twist_left(split, &strad, m);
        let dual_rep = rep.contragredient(split).twist(&strad.negate(f), m);
        Ok(Duality {
            coind: Coinduced::new(env.clone(), split, rep)?,
            source: Induced::new(env.clone(), split, twisted)?,
            dual: Coinduced::new(env.clone(), split, dual_rep)?,
            algebra,
            split: split.clone(),
            env,
        })
    }

    pub fn rep(&self) -> &Representation {
        self.coind.rep()
    }

    pub fn dim(&self) -> usize {
        self.coind.dim()
    }
}

/// Matrix of `Φ: Ind(Π^m k_strad ⊗ π) → Coind(π)`,
/// `c ⊗ (Λ ⊗ v_k) ↦ c·(Λ v̂_k)` with `v̂_k = δ_1 ⊗ v_k`.
pub fn phi(d: &Duality) -> Matrix {
    let f = d.split.field();
    let lam = lambda(&d.algebra);
    let a = d.algebra.coinduced();
    let hats: Vec<Vec<Scalar>> =
        (0..d.rep().dim()).map(|k| coinduced_product(a, &lam, &d.coind, &d.coind.unit(0, k))).collect();
    let mut cols = Vec::with_capacity(d.source.dim());
    for c in d.source.basis() {
        let act = d.coind.action_matrix(&d.env.from_monomial(c.clone()));
        for hat in &hats {
            cols.push(act.apply(f, hat));
        }
    }
    Matrix::from_columns(d.coind.dim(), &cols)
}

/// Checks that `Φ` is bijective and intertwines every generator.
pub fn phi_check(d: &Duality) -> Outcome {
    let f = d.split.field();
    let alg = d.split.algebra();
    let m = phi(d);
    let dims = |o: Outcome| o.with_dim("source", d.source.dim()).with_dim("target", d.coind.dim());
    if d.source.dim() != d.coind.dim() {
        return dims(Outcome::fail("source and target dimensions differ"));
    }
    let rank = m.rank(f);
    if rank != d.coind.dim() {
        return dims(Outcome::fail(format!("Φ has rank {rank} < {}", d.coind.dim())));
    }
    for x in 0..alg.dim() {
        let lhs = m.mul(f, &d.source.module().generators[x]);
        let rhs = d.coind.module().generators[x].mul(f, &m);
        if lhs != rhs {
            let col = (0..lhs.cols()).find(|&j| lhs.column(j) != rhs.column(j)).unwrap_or(0);
            return dims(Outcome::fail(format!("Φ({}·w_{col}) ≠ {}·Φ(w_{col})", alg.name(x), alg.name(x))));
        }
    }
    dims(Outcome::pass())
}

/// `(−1)^{n(n−1)/2} / ((p−1)!)^n`.
pub fn psi_normalization(split: &SubalgebraSplit) -> Scalar {
    let f = split.field();
    let n = split.n() as u64;
    let fact = f.factorial(f.p() as u64 - 1);
    let denom = f.pow(fact, n);
    f.mul(f.sign((n * n.saturating_sub(1) / 2) % 2 == 1), f.inv(denom).expect("(p−1)! is a unit"))
}

/// Gram matrix of `Ψ(λ, μ) = N·⟨top, χ⁻¹⟨λ, μ⟩⟩` on `Coind(π) × Coind(π* ⊗ Π^m k_{−strad})`.
///
/// `⟨λ, μ⟩ ∈ Coind(Π^m k_{−strad})` contracts `v_k ⊗ v_l^*` to `(−1)^{|v_k|}δ_{kl}`,
/// and `χ: Ω → Coind(Π^m k_{−strad})` identifies it with `a·ω_e`; `Ψ` reads off
/// the top coefficient of `a`.
pub fn psi(d: &Duality) -> Result<Matrix> {
    let f = d.split.field();
    let env = &d.env;
    let rep = d.rep();
    let norm = psi_normalization(&d.split);
    let (_, chi) = d.algebra.omega_chart()?;
    let chi_inv = inverse(f, &chi).ok_or_else(|| Error::Validation("χ is not invertible".into()))?;
    let top = d.algebra.index(&d.algebra.top_monomial());
    let ell = chi_inv.row(top);
    let mut g = Matrix::zeros(d.coind.dim(), d.dual.dim());
    for (ci, c) in d.algebra.basis().iter().enumerate() {
        let weight = f.mul(norm, ell[ci]);
        if weight == 0 {
            continue;
        }
        for ((c1, c2), &coef) in env.coproduct_monomial(c).terms() {
            let (i1, i2) = (d.coind.monomial_index(c1).unwrap(), d.dual.monomial_index(c2).unwrap());
            let (p1, p2) = (env.monomial_parity(c1), env.monomial_parity(c2));
            for k in 0..rep.dim() {
                let s = f.mul(f.sign((p1 + rep.parity(k)).clashes(p2)), f.sign(rep.parity(k).is_odd()));
                let (r, col) = (d.coind.coord(i1, k), d.dual.coord(i2, k));
                g.set(r, col, f.add(g.get(r, col), f.mul(weight, f.mul(s, coef))));
            }
        }
    }
    Ok(g)
}

/// Full rank and `Ψ(Xλ, μ) + (−1)^{|X||λ|} Ψ(λ, Xμ) = 0` on all generators and basis pairs.
pub fn psi_check(d: &Duality) -> Result<Outcome> {
    let f = d.split.field();
    let alg = d.split.algebra();
    let g = psi(d)?;
    let dims = |o: Outcome| Ok(o.with_dim("coind", d.coind.dim()).with_dim("dual", d.dual.dim()));
    if g.rank(f) != d.coind.dim() || d.coind.dim() != d.dual.dim() {
        return dims(Outcome::fail(format!("Gram matrix has rank {}", g.rank(f))));
    }
    for x in 0..alg.dim() {
        let ax = &d.coind.module().generators[x];
        let bx = &d.dual.module().generators[x];
        let left = ax.transpose().mul(f, &g);
        let right = g.mul(f, bx);
        for i in 0..g.rows() {
            let s = f.sign(alg.parity(x).clashes(d.coind.parities()[i]));
            for j in 0..g.cols() {
                if f.mul_add(left.get(i, j), s, right.get(i, j)) != 0 {
                    return dims(Outcome::fail(format!("Ψ is not invariant under {} on pair ({i}, {j})", alg.name(x))));
                }
            }
        }
    }
    dims(Outcome::pass())
}

/// Contragredient of a module action: `X* = −(−1)^{|X||col|}Xᵀ`.
pub(crate) fn dual_action(m: &ModuleAction, parities: &[Parity]) -> ModuleAction {
    let f = m.field;
    let generators = m
        .generators
        .iter()
        .zip(parities)
        .map(|(g, &px)| {
            Matrix::from_fn(g.rows(), g.cols(), |k, l| {
                f.neg(f.mul(f.sign(px.clashes(m.parities[l])), g.get(l, k)))
            })
        })
        .collect();
    ModuleAction { field: f, parities: m.parities.clone(), generators }
}

/// Matrix of `Θ: Coind(W*) → Ind(W)*`, `Θ(μ)(c ⊗ w) = (−1)^{|μ||c|}⟨μ(S(c)), w⟩`,
/// for `W` the source representation of `Φ`. Rows are the dual basis of `Ind(W)`.
pub fn theta(d: &Duality) -> Result<Matrix> {
    let f = d.split.field();
    let env = &d.env;
    let dw = d.source.rep().dim();
    let mut t = Matrix::zeros(d.source.dim(), d.dual.dim());
    for (ci, c) in d.source.basis().iter().enumerate() {
        let sc = env.antipode(&env.from_monomial(c.clone()));
        let pc = env.monomial_parity(c);
        for j in 0..d.dual.dim() {
            let val = d.dual.eval(&sc, &d.dual.unit_at(j))?;
            let s = f.sign(pc.clashes(d.dual.parities()[j]));
            for k in 0..dw {
                t.set(d.source.coord(ci, k), j, f.mul(s, val[k]));
            }
        }
    }
    Ok(t)
}

/// `Θ` is bijective and intertwines `Coind(W*)` with the contragredient of `Ind(W)`.
pub fn theta_check(d: &Duality) -> Result<Outcome> {
    let f = d.split.field();
    let alg = d.split.algebra();
    let t = theta(d)?;
    let dims = |o: Outcome| o.with_dim("coind", d.dual.dim()).with_dim("induced", d.source.dim());
    if t.rank(f) != d.dual.dim() || d.dual.dim() != d.source.dim() {
        return Ok(dims(Outcome::fail(format!("Θ has rank {}", t.rank(f)))));
    }
    let ind_dual = dual_action(d.source.module(), alg.parities());
    for x in 0..alg.dim() {
        if t.mul(f, &d.dual.module().generators[x]) != ind_dual.generators[x].mul(f, &t) {
            return Ok(dims(Outcome::fail(format!("Θ does not intertwine {}", alg.name(x)))));
        }
    }
    Ok(dims(Outcome::pass()))
}

/// Sign relating the normalization `N` of [`psi`] to the chart used here:
/// `(−1)^{m(m−1)/2}` from ordering `ζ_1…ζ_m` into the top dual monomial,
/// `(−1)^m` from moving `ω_e` past the coefficient, and `(−1)^{n(n−1)/2}`
/// cancelling the even-coordinate sign of `N`, which has no counterpart for
/// commuting `η`s.
pub fn comparison_sign(split: &SubalgebraSplit) -> Scalar {
    let (n, m) = (split.n(), split.m());
    split.field().sign((n * n.saturating_sub(1) / 2 + m * (m + 1) / 2) % 2 == 1)
}

/// Matrix of `ᵗΦ ∘ Ψ♮`, with `Ψ♮(μ)(λ) = ε·(−1)^{|λ||μ|} Ψ(λ, μ)` and `ε` the
/// [`comparison_sign`]. Rows are the dual basis of `Ind(W)`.
pub fn phi_psi_composite(d: &Duality) -> Result<Matrix> {
    let f = d.split.field();
    let eps = comparison_sign(&d.split);
    let raw = phi(d).transpose().mul(f, &psi(d)?);
    Ok(Matrix::from_fn(raw.rows(), raw.cols(), |i, j| {
        let s = f.sign(d.source.parities()[i].clashes(d.dual.parities()[j]));
        f.mul(f.mul(eps, s), raw.get(i, j))
    }))
}

/// `ᵗΦ ∘ Ψ♮ = Θ` entry by entry.
pub fn comparison_check(d: &Duality) -> Result<Outcome> {
    let lhs = phi_psi_composite(d)?;
    let rhs = theta(d)?;
    let dims = |o: Outcome| o.with_dim("induced", d.source.dim()).with_dim("coind", d.dual.dim());
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            if lhs.get(i, j) != rhs.get(i, j) {
                return Ok(dims(Outcome::fail(format!(
                    "entry ({i}, {j}): ᵗΦΨ♮ gives {}, Θ gives {}",
                    lhs.get(i, j),
                    rhs.get(i, j)
                ))));
            }
        }
    }
    Ok(dims(Outcome::pass()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enveloping::tests::env;
    use crate::enveloping::Mode;
    use crate::field::Fp;
    use crate::harness::catalog;
    use crate::lie::tests::gl11;
    use crate::lie::LieSuperalgebra;
    use crate::repr::tests::gl11_natural;

    fn abelian(parity: Parity) -> Arc<LieSuperalgebra> {
        let f = Fp::new(3).unwrap();
        let pm = if parity.is_odd() { vec![] } else { vec![(0, vec![0])] };
        Arc::new(LieSuperalgebra::new(f, vec![("x".into(), parity)], &[], Some(pm)).unwrap())
    }

    fn setup(alg: Arc<LieSuperalgebra>, h: &[usize], rep: impl Fn(&SubalgebraSplit) -> Representation) -> Duality {
        let e = Arc::new(env(alg.clone(), Mode::Restricted));
        let split = SubalgebraSplit::new(alg, h).unwrap();
        let r = rep(&split);
        Duality::new(e, &split, r).unwrap()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }

    #[test]
    fn dual_module_is_the_contragredient_of_the_source() {
        let d = setup(gl11(3), &[0, 1, 2], gl11_natural);
        assert_eq!(d.dual.rep(), &d.source.rep().contragredient(&d.split));
    }

    #[test]
    fn phi_abelian_example() {
        let d = setup(abelian(Parity::Even), &[], Representation::trivial);
        // Λ = η² = 2δ₂ and e shifts δ_k to δ_{k−1}
        let want = Matrix::from_fn(3, 3, |i, j| if i + j == 2 { 2 } else { 0 });
        assert_eq!(phi(&d), want);
        assert!(phi_check(&d).passed);
        assert_eq!(phi(&d).column(0), coinduced_product(d.algebra.coinduced(), &lambda(&d.algebra), &d.coind, &d.coind.unit(0, 0)));
    }

    #[test]
    fn psi_examples() {
        // h = g: the pairing is the contraction of V with V*
        let d = setup(abelian(Parity::Odd), &[0], |s| {
            let x = Matrix::from_rows(&[vec![0, 1], vec![0, 0]]);
            Representation::new(s, vec![Parity::Even, Parity::Odd], [(0, x)].into_iter().collect(), true).unwrap()
        });
        let f = d.split.field();
        assert_eq!(psi(&d).unwrap(), Matrix::from_rows(&[vec![1, 0], vec![0, f.neg(1)]]));
        assert!(psi_check(&d).unwrap().passed);

        // n = 0, m = 1: antidiagonal between {1, ζ} and {ζ, 1}
        let d = setup(abelian(Parity::Odd), &[], Representation::trivial);
        let g = psi(&d).unwrap();
        assert_eq!((g.get(0, 0), g.get(1, 1)), (0, 0));
        assert!(g.get(0, 1) != 0 && g.get(1, 0) != 0);

        // n = 1, p = 3: Ψ(δ_a, δ_b) = N·C(2, a) when a + b = 2
        let d = setup(abelian(Parity::Even), &[], Representation::trivial);
        let g = psi(&d).unwrap();
        let norm = psi_normalization(&d.split);
        for a in 0..3u64 {
            for b in 0..3u64 {
                let want = if a + b == 2 { f.mul(norm, (binomial(2, a) % 3) as Scalar) } else { 0 };
                assert_eq!(g.get(a as usize, b as usize), want);
            }
        }
        assert!(psi_check(&d).unwrap().passed);
    }

    #[test]
    fn normalization_uses_wilson() {
        for p in [3, 5, 7] {
            let f = Fp::new(p).unwrap();
            assert_eq!(f.factorial(p as u64 - 1), f.neg(1));
        }
        let d = setup(abelian(Parity::Even), &[], Representation::trivial);
        assert_eq!(psi_normalization(&d.split), 2);
    }

    #[test]
    fn theta_examples() {
        let d = setup(abelian(Parity::Even), &[], Representation::trivial);
        let t = theta(&d).unwrap();
        // S(e^a) = (−1)^a e^a
        assert_eq!(t, Matrix::from_fn(3, 3, |i, j| if i == j { d.split.field().sign(i % 2 == 1) } else { 0 }));
        assert!(theta_check(&d).unwrap().passed);

        let d = setup(gl11(3), &[0, 1, 2], gl11_natural);
        let t = theta(&d).unwrap();
        for k in 0..2 {
            let row: Vec<Scalar> = (0..t.cols()).map(|j| t.get(d.source.coord(0, k), j)).collect();
            assert_eq!(row, d.dual.unit(0, k));
        }
        assert!(theta_check(&d).unwrap().passed);
    }

    #[test]
    fn comparison_examples() {
        let cases = [
            setup(abelian(Parity::Even), &[0], Representation::trivial),
            setup(abelian(Parity::Even), &[], Representation::trivial),
            setup(gl11(3), &[0, 1, 2], gl11_natural),
            setup(gl11(3), &[0, 1, 2], Representation::trivial),
        ];
        for d in &cases {
            let out = comparison_check(d).unwrap();
            assert!(out.passed, "{:?}", out.witness);
        }
    }

    #[test]
    fn all_maps_on_the_catalog() {
        for def in catalog() {
            let (alg, instances) = def.build().unwrap();
            let env = Arc::new(Enveloping::new(alg, Mode::Restricted).unwrap());
            for inst in instances {
                let d = Duality::new(env.clone(), &inst.split, inst.rep.clone()).unwrap();
                let tag = format!("{} {} {}", inst.algebra, inst.split_name, inst.rep_name);
                assert!(phi_check(&d).passed, "{tag}");
                assert!(psi_check(&d).unwrap().passed, "{tag}");
                assert!(theta_check(&d).unwrap().passed, "{tag}");
                assert!(comparison_check(&d).unwrap().passed, "{tag}");
            }
        }
    }
}

//! Level-`r` evaluation maps `Φʳ` on the unrestricted enveloping algebra.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::enveloping::{complement_basis_level, filtration_degree, Enveloping, Mode, Monomial, UElement};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::lie::SubalgebraSplit;
use crate::outcome::Outcome;
use crate::repr::Representation;

use super::lambda::{lambda_level_coefficient, level_top};

/// A sparse element of the dual of the complement: coefficients on `δ_c`.
pub type DualElement = BTreeMap<Monomial, Scalar>;

/// `Σ_t u_t ⊗ (Λ_{≤r} ⊗ v_t)` with complement monomials `u_t`.
#[derive(Clone, Debug, Default)]
pub struct InducedSample {
    pub terms: Vec<(Monomial, Vec<Scalar>)>,
}

/// How often `Φʳ` commuted with a generator, among samples where both sides are defined.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EquivarianceReport {
    pub samples: usize,
    pub defined: usize,
    pub agreed: usize,
}

fn require_unrestricted(env: &Enveloping) -> Result<()> {
    if env.mode() != Mode::Unrestricted {
        return Err(Error::Unsupported("the level-r maps live on U(g)".into()));
    }
    Ok(())
}

fn in_level(env: &Enveloping, split: &SubalgebraSplit, x: &UElement, r: u32) -> Result<bool> {
    Ok(filtration_degree(env, x, split)? <= r as i64)
}

/// `⟨x, Λ_{≤r} v̂⟩ = κ·π(h_top) v` where `h_top` is the `U(h)` coefficient of the
/// level-`r` top monomial in the h-left decomposition of `x ∈ F_r`.
fn eval_lambda_hat(
    env: &Enveloping,
    split: &SubalgebraSplit,
    rep: &Representation,
    x: &UElement,
    r: u32,
    v: &[Scalar],
) -> Result<Vec<Scalar>> {
    let f = env.field();
    let d = env.normal_order_h_left(x, split)?;
    let Some(h) = d.get(&level_top(split, r)) else {
        return Ok(vec![0; rep.dim()]);
    };
    let kappa = lambda_level_coefficient(split, r);
    Ok(rep.act_u(h)?.apply(f, v).into_iter().map(|y| f.mul(kappa, y)).collect())
}

/// `Φʳ_{u⊗(Λ_{≤r}⊗v)}(w) = ⟨wu, Λ_{≤r} v̂_π⟩`, defined when `wu ∈ F_r`.
pub fn phi_r_eval(
    env: &Enveloping,
    split: &SubalgebraSplit,
    rep: &Representation,
    u: &UElement,
    v: &[Scalar],
    r: u32,
    w: &UElement,
) -> Result<Vec<Scalar>> {
    require_unrestricted(env)?;
    let x = env.multiply(w, u)?;
    if !in_level(env, split, &x, r)? {
        return Err(Error::Precondition(format!("w·u is not in F_{r}")));
    }
    eval_lambda_hat(env, split, rep, &x, r, v)
}

/// [`phi_r_eval`] summed over the terms of a sample.
pub fn phi_r_eval_sample(
    env: &Enveloping,
    split: &SubalgebraSplit,
    rep: &Representation,
    sample: &InducedSample,
    r: u32,
    w: &UElement,
) -> Result<Vec<Scalar>> {
    let f = env.field();
    let mut out = vec![0; rep.dim()];
    for (u, v) in &sample.terms {
        let y = phi_r_eval(env, split, rep, &env.from_monomial(u.clone()), v, r, w)?;
        for (o, y) in out.iter_mut().zip(y) {
            *o = f.add(*o, y);
        }
    }
    Ok(out)
}

/// Product in the dual of the complement, `⟨c, ab⟩ = Σ (−1)^{|c₁||c₂|}⟨c₁, a⟩⟨c₂, b⟩`.
pub fn dual_mul(env: &Enveloping, a: &DualElement, b: &DualElement) -> DualElement {
    let f = env.field();
    let alg = env.algebra();
    let mut out = DualElement::new();
    for ca in a.keys() {
        for cb in b.keys() {
            let exps: Vec<u32> = ca.exponents().iter().zip(cb.exponents()).map(|(x, y)| x + y).collect();
            if (0..alg.dim()).any(|i| alg.parity(i).is_odd() && exps[i] > 1) {
                continue;
            }
            let c = Monomial::from_vec(exps);
            if out.contains_key(&c) {
                continue;
            }
            let mut acc = 0;
            for ((c1, c2), &coef) in env.coproduct_monomial(&c).terms() {
                if let (Some(&x), Some(&y)) = (a.get(c1), b.get(c2)) {
                    let s = f.sign(env.monomial_parity(c1).clashes(env.monomial_parity(c2)));
                    acc = f.add(acc, f.mul(f.mul(coef, s), f.mul(x, y)));
                }
            }
            out.insert(c, acc);
        }
    }
    out.retain(|_, x| *x != 0);
    out
}

/// `η_{i,j} = δ_{e_i^{p^j}}` for the `i`-th even complement coordinate.
pub fn level_eta(split: &SubalgebraSplit, i: usize, j: u32) -> DualElement {
    let alg = split.algebra();
    let g = split.p_indices()[i];
    let exps = (0..alg.dim()).map(|k| if k == g { alg.field().p().pow(j) } else { 0 }).collect();
    DualElement::from([(Monomial::from_vec(exps), 1)])
}

/// `η_{1,j}^{p−1}⋯η_{n,j}^{p−1}`, multiplied out in the dual.
pub fn level_eta_block(env: &Enveloping, split: &SubalgebraSplit, j: u32) -> DualElement {
    let dim = split.algebra().dim();
    let mut acc = DualElement::from([(Monomial::one(dim), 1)]);
    for i in 0..split.n() {
        let eta = level_eta(split, i, j);
        for _ in 0..env.field().p() - 1 {
            acc = dual_mul(env, &acc, &eta);
        }
    }
    acc
}

/// `ι_{r,r+1}[Φʳ_{u⊗(Λ_{≤r}⊗v)}](w) = Φ^{r+1}_{u⊗(Λ_{≤r+1}⊗v)}(w)` for a complement
/// monomial `w`. The left side multiplies `Φʳ` by `η_{·,r+1}^{p−1}` through the
/// coproduct of `w`; the right side is a direct level-`r+1` evaluation.
pub fn iota_compat_check(
    env: &Enveloping,
    split: &SubalgebraSplit,
    rep: &Representation,
    u: &UElement,
    v: &[Scalar],
    r: u32,
    w: &Monomial,
) -> Result<Outcome> {
    require_unrestricted(env)?;
    let f = env.field();
    if !in_level(env, split, u, r)? {
        return Err(Error::Precondition(format!("u is not in F_{r}")));
    }
    let block = level_eta_block(env, split, r + 1);
    let mut lhs = vec![0; rep.dim()];
    for ((w1, w2), &coef) in env.coproduct_monomial(w).terms() {
        let Some(&e) = block.get(w2) else { continue };
        let y = phi_r_eval(env, split, rep, u, v, r, &env.from_monomial(w1.clone()))?;
        for (o, y) in lhs.iter_mut().zip(y) {
            *o = f.add(*o, f.mul(f.mul(coef, e), y));
        }
    }
    let rhs = phi_r_eval(env, split, rep, u, v, r + 1, &env.from_monomial(w.clone()))?;
    if lhs == rhs {
        Ok(Outcome::pass())
    } else {
        Ok(Outcome::fail(format!("w = {w:?}: ι side {lhs:?}, level r+1 side {rhs:?}")))
    }
}

/// The `U(h)`-balance of `Φʳ`: `Φʳ_{uH⊗(Λ⊗v)} = Φʳ_{u⊗H(Λ⊗v)}` with
/// `H(Λ ⊗ v) = Λ ⊗ ((−1)^{|H|m}π(H) + strad(H))v`, on random samples where
/// both sides are defined.
pub fn phi_r_balance_check<R: Rng>(
    env: &Enveloping,
    split: &SubalgebraSplit,
    rep: &Representation,
    r: u32,
    samples: usize,
    rng: &mut R,
) -> Result<Outcome> {
    require_unrestricted(env)?;
    let f = env.field();
    let alg = split.algebra();
    if split.h_indices().is_empty() {
        return Ok(Outcome::pass().with_dim("samples", 0));
    }
    let w_rep = rep.twist_left(split, &split.strad()?, split.m() as u32);
    let window = complement_basis_level(split, r);
    let mut done = 0;
    let mut attempts = 0;
    while done < samples && attempts < samples * 50 {
        attempts += 1;
        let u = env.from_monomial(window[rng.gen_range(0..window.len())].clone());
        let w = env.from_monomial(window[rng.gen_range(0..window.len())].clone());
        let h = split.h_indices()[rng.gen_range(0..split.h_indices().len())];
        let v: Vec<Scalar> = (0..rep.dim()).map(|_| rng.gen_range(0..f.p())).collect();
        let uh = env.multiply(&u, &env.generator(h))?;
        let lhs = match phi_r_eval(env, split, rep, &uh, &v, r, &w) {
            Err(Error::Precondition(_)) => continue,
            other => other?,
        };
        let hv = w_rep.matrix(h).apply(f, &v);
        let rhs = match phi_r_eval(env, split, rep, &u, &hv, r, &w) {
            Err(Error::Precondition(_)) => continue,
            other => other?,
        };
        if lhs != rhs {
            return Ok(Outcome::fail(format!(
                "u = {u:?}, H = {}, w = {w:?}: {lhs:?} ≠ {rhs:?}",
                alg.name(h)
            ))
            .with_dim("samples", done));
        }
        done += 1;
    }
    if done < samples {
        return Ok(Outcome::fail(format!("only {done} of {samples} samples satisfied the precondition")));
    }
    Ok(Outcome::pass().with_dim("samples", done))
}

/// A random nonzero-coefficient sample with `terms` complement monomials of level `r`.
pub fn random_induced_sample<R: Rng>(
    split: &SubalgebraSplit,
    dim_v: usize,
    r: u32,
    terms: usize,
    rng: &mut R,
) -> InducedSample {
    let p = split.field().p();
    let window = complement_basis_level(split, r);
    let terms = (0..terms)
        .map(|_| {
            let u = window[rng.gen_range(0..window.len())].clone();
            let v = (0..dim_v).map(|_| rng.gen_range(0..p)).collect();
            (u, v)
        })
        .collect();
    InducedSample { terms }
}

/// The monomial `ě^{ǎ} ε^{ᾱ}` with `ǎ = (p^{r+1}−1) − a` and `ᾱ = 1 − α`.
pub fn complementary_monomial(split: &SubalgebraSplit, r: u32, c: &Monomial) -> Monomial {
    let top = level_top(split, r);
    Monomial::from_vec(top.exponents().iter().zip(c.exponents()).map(|(t, a)| t - a).collect())
}

fn combine_terms(sample: &InducedSample) -> BTreeMap<Monomial, Vec<Scalar>> {
    let mut combined: BTreeMap<Monomial, Vec<Scalar>> = BTreeMap::new();
    for (u, v) in &sample.terms {
        let e = combined.entry(u.clone()).or_insert_with(|| vec![0; v.len()]);
        for (x, y) in e.iter_mut().zip(v) {
            *x += y;
        }
    }
    combined
}

/// For a nonzero sample, finds `w` in the domain of `Φʳ` with `Φʳ(w) ≠ 0`.
/// The complementary monomials of the terms are tried first, from the highest
/// degree down; when none of them lies in the domain (possible once the
/// complement does not commute) the whole level-`r` window is searched.
pub fn phi_r_injectivity_check(
    env: &Enveloping,
    split: &SubalgebraSplit,
    rep: &Representation,
    r: u32,
    sample: &InducedSample,
) -> Result<Outcome> {
    require_unrestricted(env)?;
    let p = env.field().p();
    let mut combined = combine_terms(sample);
    combined.retain(|_, v| v.iter().any(|x| x % p != 0));
    let reduced = InducedSample { terms: combined.iter().map(|(u, v)| (u.clone(), v.iter().map(|x| x % p).collect())).collect() };
    if combined.is_empty() {
        return Ok(Outcome::pass().with_dim("terms", 0));
    }
    let mut order: Vec<&Monomial> = combined.keys().collect();
    order.sort_by_key(|c| std::cmp::Reverse((c.degree(), (*c).clone())));
    let complementary = order.into_iter().map(|c| (complementary_monomial(split, r, c), true));
    let window = complement_basis_level(split, r).into_iter().rev().map(|w| (w, false));
    for (w, direct) in complementary.chain(window) {
        let w = env.from_monomial(w);
        match phi_r_eval_sample(env, split, rep, &reduced, r, &w) {
            Ok(y) if y.iter().any(|&x| x != 0) => {
                return Ok(Outcome::pass()
                    .with_dim("terms", combined.len())
                    .with_dim("witness_degree", w.degree().unwrap_or(0) as usize)
                    .with_dim("complementary_witness", direct as usize));
            }
            Ok(_) | Err(Error::Precondition(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(Outcome::fail(format!("no witness in the domain of Φʳ for {} terms: {:?}", combined.len(), reduced.terms)))
}

/// Compares `Φʳ_{Xu⊗(Λ⊗v)}(w)` with `(X·Φʳ_{u⊗(Λ⊗v)})(w) = Φʳ_{u⊗(Λ⊗v)}(wX)`.
pub fn phi_r_equivariance_report<R: Rng>(
    env: &Enveloping,
    split: &SubalgebraSplit,
    rep: &Representation,
    r: u32,
    samples: usize,
    rng: &mut R,
) -> Result<EquivarianceReport> {
    require_unrestricted(env)?;
    let f = env.field();
    let window = complement_basis_level(split, r);
    let mut report = EquivarianceReport { samples, ..Default::default() };
    for _ in 0..samples {
        let u = env.from_monomial(window[rng.gen_range(0..window.len())].clone());
        let w = env.from_monomial(window[rng.gen_range(0..window.len())].clone());
        let x = env.generator(rng.gen_range(0..env.dim()));
        let v: Vec<Scalar> = (0..rep.dim()).map(|_| rng.gen_range(0..f.p())).collect();
        let lhs = phi_r_eval(env, split, rep, &env.multiply(&x, &u)?, &v, r, &w);
        let rhs = phi_r_eval(env, split, rep, &u, &v, r, &env.multiply(&w, &x)?);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => {
                report.defined += 1;
                if a == b {
                    report.agreed += 1;
                }
            }
            (Err(Error::Precondition(_)), _) | (_, Err(Error::Precondition(_))) => {}
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enveloping::tests::env;
    use crate::field::{Fp, Parity};
    use crate::lie::tests::{gl11, sl2};
    use crate::lie::LieSuperalgebra;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn abelian(p: u32) -> Arc<LieSuperalgebra> {
        let f = Fp::new(p).unwrap();
        Arc::new(LieSuperalgebra::new(f, vec![("e".into(), Parity::Even)], &[], Some(vec![(0, vec![0])])).unwrap())
    }

    /// `Λ_{≤r}` multiplied out factor by factor in the dual.
    fn lambda_by_products(e: &Enveloping, split: &SubalgebraSplit, r: u32) -> DualElement {
        let dim = split.algebra().dim();
        let mut acc = DualElement::from([(Monomial::one(dim), 1)]);
        for j in 0..=r {
            acc = dual_mul(e, &acc, &level_eta_block(e, split, j));
        }
        for s in 0..split.m() {
            let g = split.p_indices()[split.n() + s];
            acc = dual_mul(e, &acc, &DualElement::from([(Monomial::generator(dim, g), 1)]));
        }
        acc
    }

    #[test]
    fn lambda_coefficient_matches_products() {
        let cases: Vec<(Arc<LieSuperalgebra>, Vec<usize>)> =
            vec![(abelian(3), vec![]), (sl2(3, 1), vec![0, 1]), (gl11(3), vec![]), (gl11(3), vec![0, 1])];
        for (alg, h) in cases {
            let e = env(alg.clone(), Mode::Unrestricted);
            let split = SubalgebraSplit::new(alg, &h).unwrap();
            for r in 0..2 {
                let lam = lambda_by_products(&e, &split, r);
                let want = DualElement::from([(level_top(&split, r), lambda_level_coefficient(&split, r))]);
                assert_eq!(lam, want, "r = {r}, h = {h:?}");
            }
        }
    }

    #[test]
    fn eval_examples() {
        let alg = abelian(3);
        let e = env(alg.clone(), Mode::Unrestricted);
        let split = SubalgebraSplit::new(alg, &[]).unwrap();
        let rep = Representation::trivial(&split);
        let one = e.one();
        // wu = e^2 is the level-0 top: value (p−1)! = 2
        let w = e.from_monomial(Monomial::from_vec(vec![2]));
        assert_eq!(phi_r_eval(&e, &split, &rep, &one, &[1], 0, &w).unwrap(), vec![2]);
        let w = e.from_monomial(Monomial::from_vec(vec![1]));
        assert_eq!(phi_r_eval(&e, &split, &rep, &one, &[1], 0, &w).unwrap(), vec![0]);
        let w = e.from_monomial(Monomial::from_vec(vec![3]));
        assert!(matches!(phi_r_eval(&e, &split, &rep, &one, &[1], 0, &w), Err(Error::Precondition(_))));
        // ι_{0,1} at w = e^8, u = 1
        let out = iota_compat_check(&e, &split, &rep, &one, &[1], 0, &Monomial::from_vec(vec![8])).unwrap();
        assert!(out.passed, "{:?}", out.witness);

        let alg = gl11(3);
        let e = env(alg.clone(), Mode::Unrestricted);
        let split = SubalgebraSplit::new(alg, &[0, 1, 2]).unwrap();
        let rep = Representation::trivial(&split);
        // the odd coordinate is missing
        assert_eq!(phi_r_eval(&e, &split, &rep, &e.one(), &[1], 0, &e.one()).unwrap(), vec![0]);
        assert_ne!(phi_r_eval(&e, &split, &rep, &e.one(), &[1], 0, &e.generator(3)).unwrap(), vec![0]);
    }

    #[test]
    fn lemmas_on_the_sl2_borel() {
        let alg = sl2(3, 1);
        let e = env(alg.clone(), Mode::Unrestricted);
        let split = SubalgebraSplit::new(alg, &[0, 1]).unwrap();
        let rep = Representation::trivial(&split).twist(&split.strad().unwrap(), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for r in 0..2 {
            assert!(phi_r_balance_check(&e, &split, &rep, r, 30, &mut rng).unwrap().passed);
            for _ in 0..10 {
                let s = random_induced_sample(&split, 1, r, 3, &mut rng);
                let o = phi_r_injectivity_check(&e, &split, &rep, r, &s).unwrap();
                assert!(o.passed, "{:?} {:?}", s, o.witness);
            }
            let window = complement_basis_level(&split, r + 1);
            for w in window.iter().step_by(3) {
                let u = e.one();
                match iota_compat_check(&e, &split, &rep, &u, &[1], r, w) {
                    Ok(o) => assert!(o.passed, "{:?}", o.witness),
                    Err(Error::Precondition(_)) => {}
                    Err(err) => panic!("{err}"),
                }
            }
        }
        let report = phi_r_equivariance_report(&e, &split, &rep, 0, 20, &mut rng).unwrap();
        assert_eq!(report.defined, report.agreed);
    }

    #[test]
    fn zero_sample_is_vacuous() {
        let alg = abelian(3);
        let e = env(alg.clone(), Mode::Unrestricted);
        let split = SubalgebraSplit::new(alg, &[]).unwrap();
        let rep = Representation::trivial(&split);
        let s = InducedSample { terms: vec![(Monomial::from_vec(vec![1]), vec![0])] };
        assert!(phi_r_injectivity_check(&e, &split, &rep, 0, &s).unwrap().passed);
    }
}

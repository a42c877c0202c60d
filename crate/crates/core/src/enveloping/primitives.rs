use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, SparseMatrix, SubspaceBasis};

use super::{exponent_box, Enveloping, Mode, Monomial};

/// The finite-dimensional window in which primitive elements are solved for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Window {
    /// All of U'(g).
    Restricted,
    /// Monomials of U(g) of total degree at most `p^{r+1}`.
    Level(u32),
}

#[derive(Clone, Debug)]
pub struct PrimitiveSpace {
    /// Coordinates of `space` refer to these monomials.
    pub monomials: Vec<Monomial>,
    pub space: SubspaceBasis,
}

fn window_monomials(env: &Enveloping, window: Window) -> Result<Vec<Monomial>> {
    match (window, env.mode()) {
        (Window::Restricted, Mode::Restricted) => env.restricted_basis(),
        (Window::Level(r), Mode::Unrestricted) => {
            let top = env.field().p().pow(r + 1);
            let alg = env.algebra();
            let bounds: Vec<u32> =
                (0..alg.dim()).map(|i| if alg.parity(i).is_odd() { 2 } else { top + 1 }).collect();
            Ok(exponent_box(&bounds).into_iter().filter(|m| m.degree() <= top).collect())
        }
        _ => Err(Error::Unsupported("window does not match the enveloping mode".into())),
    }
}

/// Nullspace of `x ↦ Δx − x⊗1 − 1⊗x` on the window.
pub fn primitives(env: &Enveloping, window: Window) -> Result<PrimitiveSpace> {
    let f = env.field();
    let monomials = window_monomials(env, window)?;
    let one = Monomial::one(env.dim());
    let mut rows: BTreeMap<(Monomial, Monomial), usize> = BTreeMap::new();
    let mut entries = Vec::new();
    for (col, m) in monomials.iter().enumerate() {
        let mut d = env.coproduct_monomial(m);
        d.add_term(f, m.clone(), one.clone(), f.neg(1));
        d.add_term(f, one.clone(), m.clone(), f.neg(1));
        for (key, &c) in d.terms() {
            let next = rows.len();
            let row = *rows.entry(key.clone()).or_insert(next);
            entries.push((row, col, c));
        }
    }
    let mut mat = SparseMatrix::new(rows.len(), monomials.len());
    for (r, c, v) in entries {
        mat.add_to(f, r, c, v);
    }
    let space = nullspace(f, &mat);
    Ok(PrimitiveSpace { monomials, space })
}

/// The span predicted for the window: `g` itself for U'(g); otherwise the
/// powers `e_i^{p^j}` of even basis vectors that fit, plus the odd basis.
pub fn expected_primitives(env: &Enveloping, window: Window) -> Result<SubspaceBasis> {
    let f = env.field();
    let monomials = window_monomials(env, window)?;
    let alg = env.algebra();
    let dim = alg.dim();
    let mut targets = Vec::new();
    for i in 0..dim {
        targets.push(Monomial::generator(dim, i));
        if let (Window::Level(r), false) = (window, alg.parity(i).is_odd()) {
            let mut q = f.p();
            for _ in 0..=r {
                targets.push(Monomial::generator(dim, i).with_exponent(i, q));
                q *= f.p();
            }
        }
    }
    let index: BTreeMap<&Monomial, usize> = monomials.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let vectors = targets.iter().map(|t| {
        let mut v = vec![0; monomials.len()];
        v[index[t]] = 1;
        v
    });
    Ok(SubspaceBasis::span(f, monomials.len(), vectors.collect::<Vec<_>>()))
}

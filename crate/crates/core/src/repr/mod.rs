//! Representations of a subalgebra `h`, induced and coinduced modules, and the
//! coordinate algebra `A = Coind(k)` with its derivations.

mod algebra_a;
mod coinduced;
mod module;

pub use algebra_a::{AlgebraA, BerezinLine, DerivationOfA};
pub use coinduced::{coinduced_product, Coinduced, Induced};
pub use module::ModuleAction;

use std::collections::BTreeMap;

use crate::enveloping::UElement;
use crate::error::{arg, Error, Result};
use crate::field::{Fp, Parity, Scalar};
use crate::lie::{Character, SubalgebraSplit};
use crate::linalg::Matrix;

/// A finite-dimensional representation of `h`, with matrices keyed by the
/// global index of each `h` basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    field: Fp,
    parities: Vec<Parity>,
    action: BTreeMap<usize, Matrix>,
    restricted: bool,
}

impl Representation {
    /// Builds and validates a representation of `split`'s subalgebra.
    pub fn new(
        split: &SubalgebraSplit,
        parities: Vec<Parity>,
        action: BTreeMap<usize, Matrix>,
        restricted: bool,
    ) -> Result<Self> {
        let rep = Representation { field: split.field(), parities, action, restricted };
        rep.validate(split)?;
        Ok(rep)
    }

    pub fn trivial(split: &SubalgebraSplit) -> Self {
        Self::character(split, &Character::zero(split), Parity::Even)
    }

    /// The one-dimensional module `k_χ` placed in the given parity.
    pub fn character(split: &SubalgebraSplit, chi: &Character, parity: Parity) -> Self {
        let action = split.h_indices().iter().map(|&i| (i, Matrix::scalar(1, chi.value(i)))).collect();
        Representation { field: split.field(), parities: vec![parity], action, restricted: split.algebra().is_restricted() }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn parity(&self, k: usize) -> Parity {
        self.parities[k]
    }

    pub fn is_restricted(&self) -> bool {
        self.restricted
    }

    pub fn matrices(&self) -> &BTreeMap<usize, Matrix> {
        &self.action
    }

    /// `π(b_i)` for an `h` basis index.
    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.action[&i]
    }

    /// `π(x)` for an element of `h` given in global coordinates.
    pub fn act_lie(&self, x: &[Scalar]) -> Result<Matrix> {
        let f = self.field;
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (i, &c) in x.iter().enumerate().filter(|(_, &c)| c != 0) {
            let Some(m) = self.action.get(&i) else {
                return arg(format!("basis index {i} is not in h"));
            };
            out = out.add(f, &m.scale(f, c));
        }
        Ok(out)
    }

    /// `π(u)` for `u ∈ U(h)`.
    pub fn act_u(&self, u: &UElement) -> Result<Matrix> {
        let f = self.field;
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (m, &c) in u.terms() {
            let mut acc = Matrix::identity(self.dim());
            for g in m.word() {
                let Some(pi) = self.action.get(&g) else {
                    return arg(format!("monomial {m:?} is not in U(h)"));
                };
                acc = acc.mul(f, pi);
            }
            out = out.add(f, &acc.scale(f, c));
        }
        Ok(out)
    }

    /// Checks parity, bracket compatibility and, if flagged, restrictedness.
    pub fn validate(&self, split: &SubalgebraSplit) -> Result<()> {
        let alg = split.algebra();
        let f = self.field;
        let n = self.dim();
        let fail = |msg: String| Err(Error::Validation(msg));
        let keys: Vec<usize> = self.action.keys().copied().collect();
        if keys != split.h_indices() {
            return fail(format!("representation acts on {keys:?}, expected h = {:?}", split.h_indices()));
        }
        for (&i, m) in &self.action {
            if m.rows() != n || m.cols() != n {
                return fail(format!("matrix of {} is not {n}x{n}", alg.name(i)));
            }
            if !m.is_homogeneous(&self.parities, &self.parities, alg.parity(i)) {
                return fail(format!("matrix of {} has the wrong parity", alg.name(i)));
            }
        }
        for &i in split.h_indices() {
            for &j in split.h_indices() {
                let lhs = self.act_lie(alg.basis_bracket(i, j))?;
                let rhs = self.action[&i].supercommutator(f, &self.action[&j], alg.parity(i), alg.parity(j));
                if lhs != rhs {
                    return fail(format!("bracket of {} and {} is not respected", alg.name(i), alg.name(j)));
                }
            }
            if self.restricted && !alg.parity(i).is_odd() {
                let Some(img) = alg.p_power(i) else {
                    return fail("restricted representation of an unrestricted algebra".into());
                };
                if self.action[&i].pow(f, f.p() as u64) != self.act_lie(img)? {
                    return fail(format!("{} does not act restrictedly", alg.name(i)));
                }
            }
        }
        Ok(())
    }

    /// `⟨π*(X)λ, v⟩ = −(−1)^{|X||λ|}⟨λ, π(X)v⟩` on the dual basis.
    pub fn contragredient(&self, split: &SubalgebraSplit) -> Representation {
        let f = self.field;
        let alg = split.algebra();
        let action = self
            .action
            .iter()
            .map(|(&i, m)| {
                let odd = alg.parity(i).is_odd();
                let dual = Matrix::from_fn(self.dim(), self.dim(), |k, l| {
                    let s = f.neg(f.sign(odd && self.parities[l].is_odd()));
                    f.mul(s, m.get(l, k))
                });
                (i, dual)
            })
            .collect();
        Representation { field: f, parities: self.parities.clone(), action, restricted: self.restricted }
    }

    /// `π ⊗ Π^m k_χ`: parities shifted by `m`, even `H` acting by `π(H) + χ(H)`.
    pub fn twist(&self, chi: &Character, shifts: u32) -> Representation {
        let f = self.field;
        let action = self
            .action
            .iter()
            .map(|(&i, m)| (i, m.add(f, &Matrix::scalar(self.dim(), chi.value(i)))))
            .collect();
        let flip = shifts % 2 == 1;
        let parities = self.parities.iter().map(|&q| if flip { q.flip() } else { q }).collect();
        Representation { field: f, parities, action, restricted: self.restricted }
    }

    /// `Π^m k_χ ⊗ π`: as [`Representation::twist`], but odd `H` pick up the
    /// sign `(−1)^m` from passing the one-dimensional factor.
    pub fn twist_left(&self, split: &SubalgebraSplit, chi: &Character, shifts: u32) -> Representation {
        let f = self.field;
        let alg = split.algebra();
        let flip = shifts % 2 == 1;
        let action = self
            .action
            .iter()
            .map(|(&i, m)| {
                let s = f.sign(flip && alg.parity(i).is_odd());
                (i, m.scale(f, s).add(f, &Matrix::scalar(self.dim(), chi.value(i))))
            })
            .collect();
        let parities = self.parities.iter().map(|&q| if flip { q.flip() } else { q }).collect();
        Representation { field: f, parities, action, restricted: self.restricted }
    }

    /// `π ⊗ ρ` on the basis `v_k ⊗ w_l` (index `k * dim ρ + l`).
    pub fn tensor(&self, split: &SubalgebraSplit, other: &Representation) -> Representation {
        let f = self.field;
        let alg = split.algebra();
        let (dv, dw) = (self.dim(), other.dim());
        let parities = (0..dv * dw).map(|t| self.parities[t / dw] + other.parities[t % dw]).collect();
        let action = self
            .action
            .iter()
            .map(|(&i, a)| {
                let b = &other.action[&i];
                let odd = alg.parity(i).is_odd();
                let m = Matrix::from_fn(dv * dw, dv * dw, |r, c| {
                    let (k2, l2, k, l) = (r / dw, r % dw, c / dw, c % dw);
                    let mut x = if l2 == l { a.get(k2, k) } else { 0 };
                    if k2 == k {
                        let s = f.sign(odd && self.parities[k].is_odd());
                        x = f.mul_add(x, s, b.get(l2, l));
                    }
                    x
                });
                (i, m)
            })
            .collect();
        Representation { field: f, parities, action, restricted: self.restricted && other.restricted }
    }
}

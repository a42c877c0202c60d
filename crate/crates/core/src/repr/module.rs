use crate::enveloping::{Enveloping, Mode, UElement};
use crate::error::{Error, Result};
use crate::field::{Fp, Parity, Scalar};
use crate::linalg::Matrix;

/// A finite-dimensional `g`-module given by one matrix per basis vector of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAction {
    pub field: Fp,
    pub parities: Vec<Parity>,
    pub generators: Vec<Matrix>,
}

impl ModuleAction {
    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    /// Matrix of `u`, each PBW monomial acting as the product of its letters.
    pub fn action_matrix(&self, u: &UElement) -> Matrix {
        let f = self.field;
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (m, &c) in u.terms() {
            let mut acc = Matrix::identity(self.dim());
            for g in m.word() {
                acc = acc.mul(f, &self.generators[g]);
            }
            out = out.add(f, &acc.scale(f, c));
        }
        out
    }

    pub fn act(&self, u: &UElement, v: &[Scalar]) -> Vec<Scalar> {
        self.action_matrix(u).apply(self.field, v)
    }

    /// Checks parity, the bracket relations and, in restricted mode, the
    /// p-power relations of the enveloping algebra.
    pub fn check_representation(&self, env: &Enveloping) -> Result<()> {
        let f = self.field;
        let alg = env.algebra();
        for i in 0..alg.dim() {
            if !self.generators[i].is_homogeneous(&self.parities, &self.parities, alg.parity(i)) {
                return Err(Error::Validation(format!("{} does not act with its parity", alg.name(i))));
            }
            for j in 0..alg.dim() {
                let lhs = self.action_matrix(&env.from_lie(alg.basis_bracket(i, j)));
                let rhs = self.generators[i].supercommutator(f, &self.generators[j], alg.parity(i), alg.parity(j));
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "bracket of {} and {} is not respected",
                        alg.name(i),
                        alg.name(j)
                    )));
                }
            }
            if env.mode() == Mode::Restricted {
                if let Some(img) = alg.p_power(i) {
                    if self.generators[i].pow(f, f.p() as u64) != self.action_matrix(&env.from_lie(img)) {
                        return Err(Error::Validation(format!("{} does not act restrictedly", alg.name(i))));
                    }
                }
            }
        }
        Ok(())
    }
}

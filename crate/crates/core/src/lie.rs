//! Finite-dimensional Lie superalgebras over F_p given by structure constants,
//! their restricted structure, and splittings `g = h + p` along a subalgebra.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{arg, Error, Result};
use crate::field::{common_parity, supertrace, Fp, Parity, Scalar};
use crate::linalg::Matrix;

/// Coordinate vector of a Lie algebra element in the global basis.
pub type LieElement = Vec<Scalar>;

/// A Lie superalgebra with an ordered homogeneous basis, even vectors first.
#[derive(Clone, PartialEq, Eq)]
pub struct LieSuperalgebra {
    field: Fp,
    names: Vec<String>,
    parities: Vec<Parity>,
    // brackets[i][j] = [b_i, b_j]
    brackets: Vec<Vec<LieElement>>,
    p_map: Option<Vec<Option<LieElement>>>,
}

/// First violation found by [`LieSuperalgebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Parity { i: usize, j: usize },
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
    PMapMissing { i: usize },
    PMapNotEven { i: usize },
    PMapAdjoint { i: usize },
}

impl Violation {
    pub fn describe(&self, alg: &LieSuperalgebra) -> String {
        let n = |i: &usize| alg.name(*i).to_string();
        match self {
            Violation::Parity { i, j } => format!("[{}, {}] has the wrong parity", n(i), n(j)),
            Violation::Antisymmetry { i, j } => {
                format!("super antisymmetry fails for ({}, {})", n(i), n(j))
            }
            Violation::Jacobi { i, j, k } => {
                format!("super Jacobi identity fails for ({}, {}, {})", n(i), n(j), n(k))
            }
            Violation::PMapMissing { i } => format!("no p-map value for even basis vector {}", n(i)),
            Violation::PMapNotEven { i } => format!("{}^[p] is not even", n(i)),
            Violation::PMapAdjoint { i } => format!("(ad {0})^p != ad({0}^[p])", n(i)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub violation: Option<Violation>,
    pub message: Option<String>,
}

impl LieSuperalgebra {
    /// Builds an algebra from brackets `(i, j, [b_i, b_j])`.
    ///
    /// A pair given in only one order is completed by super antisymmetry; pairs
    /// never mentioned bracket to zero. Only shapes are checked here; use
    /// [`LieSuperalgebra::validate`] for the axioms.
    pub fn new(
        field: Fp,
        basis: Vec<(String, Parity)>,
        brackets: &[(usize, usize, LieElement)],
        p_map: Option<Vec<(usize, LieElement)>>,
    ) -> Result<Self> {
        let dim = basis.len();
        if basis.windows(2).any(|w| w[0].1.is_odd() && !w[1].1.is_odd()) {
            return arg("basis must list all even vectors before all odd ones");
        }
        let check = |v: &LieElement| -> Result<LieElement> {
            if v.len() != dim {
                return arg(format!("coordinate vector of length {} in a {dim}-dimensional algebra", v.len()));
            }
            Ok(v.iter().map(|&x| x % field.p()).collect())
        };
        let (names, parities): (Vec<String>, Vec<Parity>) = basis.into_iter().unzip();
        let mut given: Vec<Vec<Option<LieElement>>> = vec![vec![None; dim]; dim];
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim {
                return arg(format!("bracket indices ({i}, {j}) out of range"));
            }
            if given[*i][*j].is_some() {
                return arg(format!("bracket ({i}, {j}) given twice"));
            }
            given[*i][*j] = Some(check(v)?);
        }
        let mut table = vec![vec![vec![0; dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                table[i][j] = match (&given[i][j], &given[j][i]) {
                    (Some(v), _) => v.clone(),
                    (None, Some(w)) => {
                        // [b_i, b_j] = -(-1)^{|i||j|} [b_j, b_i]
                        let s = if parities[i].clashes(parities[j]) { 1 } else { field.p() - 1 };
                        w.iter().map(|&x| field.mul(s, x)).collect()
                    }
                    (None, None) => vec![0; dim],
                };
            }
        }
        let p_map = match p_map {
            None => None,
            Some(entries) => {
                let mut pm = vec![None; dim];
                for (i, v) in entries {
                    if i >= dim {
                        return arg(format!("p-map index {i} out of range"));
                    }
                    if parities[i].is_odd() {
                        return arg(format!("p-map given on odd basis vector {}", names[i]));
                    }
                    pm[i] = Some(check(&v)?);
                }
                Some(pm)
            }
        };
        Ok(LieSuperalgebra { field, names, parities, brackets: table, p_map })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn even_dim(&self) -> usize {
        self.parities.iter().filter(|p| !p.is_odd()).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn is_restricted(&self) -> bool {
        self.p_map.is_some()
    }

    /// `b_i^{[p]}` for an even basis vector, when a p-map is present.
    pub fn p_power(&self, i: usize) -> Option<&LieElement> {
        self.p_map.as_ref().and_then(|pm| pm[i].as_ref())
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &LieElement {
        &self.brackets[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> LieElement {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// Parity of a coordinate vector, or `None` if it is not homogeneous.
    pub fn element_parity(&self, x: &[Scalar]) -> Option<Parity> {
        common_parity(x.iter().zip(&self.parities).filter(|(&c, _)| c != 0).map(|(_, &q)| q))
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> LieElement {
        let f = self.field;
        let mut out = vec![0; self.dim()];
        for (i, &a) in x.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in y.iter().enumerate().filter(|(_, &b)| b != 0) {
                let ab = f.mul(a, b);
                for (o, &c) in out.iter_mut().zip(&self.brackets[i][j]) {
                    if c != 0 {
                        *o = f.mul_add(*o, ab, c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad x` on the whole algebra (column j = `[x, b_j]`).
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<LieElement> = (0..self.dim()).map(|j| self.bracket(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Checks parity additivity, super antisymmetry, super Jacobi and, when a
    /// p-map is present, `(ad b_i)^p = ad(b_i^{[p]})` for every even `b_i`.
    pub fn validate(&self) -> ValidationReport {
        match self.first_violation() {
            None => ValidationReport { passed: true, violation: None, message: None },
            Some(v) => {
                let message = Some(v.describe(self));
                ValidationReport { passed: false, violation: Some(v), message }
            }
        }
    }

    fn first_violation(&self) -> Option<Violation> {
        let f = self.field;
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let target = self.parities[i] + self.parities[j];
                if self.brackets[i][j].iter().enumerate().any(|(k, &c)| c != 0 && self.parities[k] != target) {
                    return Some(Violation::Parity { i, j });
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let s = if self.parities[i].clashes(self.parities[j]) { 1 } else { f.p() - 1 };
                let ok = self.brackets[i][j]
                    .iter()
                    .zip(&self.brackets[j][i])
                    .all(|(&a, &b)| a == f.mul(s, b));
                if !ok {
                    return Some(Violation::Antisymmetry { i, j });
                }
            }
        }
        for i in 0..n {
            let x = self.basis_vector(i);
            for j in 0..n {
                let y = self.basis_vector(j);
                let xy = self.bracket(&x, &y);
                for k in 0..n {
                    let z = self.basis_vector(k);
                    // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
                    let lhs = self.bracket(&x, &self.bracket(&y, &z));
                    let a = self.bracket(&xy, &z);
                    let b = self.bracket(&y, &self.bracket(&x, &z));
                    let s = f.sign(self.parities[i].clashes(self.parities[j]));
                    let ok = lhs
                        .iter()
                        .zip(a.iter().zip(&b))
                        .all(|(&l, (&a, &b))| l == f.mul_add(a, s, b));
                    if !ok {
                        return Some(Violation::Jacobi { i, j, k });
                    }
                }
            }
        }
        if let Some(pm) = &self.p_map {
            for i in (0..n).filter(|&i| !self.parities[i].is_odd()) {
                let Some(img) = &pm[i] else {
                    return Some(Violation::PMapMissing { i });
                };
                if self.element_parity(img) != Some(Parity::Even) {
                    return Some(Violation::PMapNotEven { i });
                }
                let lhs = self.ad(&self.basis_vector(i)).pow(f, f.p() as u64);
                if lhs != self.ad(img) {
                    return Some(Violation::PMapAdjoint { i });
                }
            }
        }
        None
    }
}

impl fmt::Debug for LieSuperalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieSuperalgebra")
            .field("p", &self.field.p())
            .field("basis", &self.names)
            .field("restricted", &self.is_restricted())
            .finish()
    }
}

/// A splitting `g = h + p` where `h` is spanned by a subset of basis vectors
/// and `p` by the rest, ordered as even `e_1..e_n` then odd `eps_1..eps_m`.
#[derive(Clone, Debug)]
pub struct SubalgebraSplit {
    algebra: Arc<LieSuperalgebra>,
    h: Vec<usize>,
    complement: Vec<usize>,
    n: usize,
    m: usize,
}

impl SubalgebraSplit {
    /// Checks that the span of `h_indices` is a subalgebra (closed under the
    /// p-map as well when the algebra is restricted).
    pub fn new(algebra: Arc<LieSuperalgebra>, h_indices: &[usize]) -> Result<Self> {
        let dim = algebra.dim();
        let mut in_h = vec![false; dim];
        for &i in h_indices {
            if i >= dim || in_h[i] {
                return arg(format!("invalid subalgebra index list {h_indices:?}"));
            }
            in_h[i] = true;
        }
        let h: Vec<usize> = (0..dim).filter(|&i| in_h[i]).collect();
        let complement: Vec<usize> = (0..dim).filter(|&i| !in_h[i]).collect();
        let outside = |v: &LieElement| v.iter().enumerate().any(|(k, &c)| c != 0 && !in_h[k]);
        for &i in &h {
            for &j in &h {
                if outside(algebra.basis_bracket(i, j)) {
                    return Err(Error::Validation(format!(
                        "h is not closed under the bracket: [{}, {}] leaves h",
                        algebra.name(i),
                        algebra.name(j)
                    )));
                }
            }
            if let Some(img) = algebra.p_power(i) {
                if outside(img) {
                    return Err(Error::Validation(format!(
                        "h is not a restricted subalgebra: {}^[p] leaves h",
                        algebra.name(i)
                    )));
                }
            }
        }
        let n = complement.iter().filter(|&&i| !algebra.parity(i).is_odd()).count();
        let m = complement.len() - n;
        Ok(SubalgebraSplit { algebra, h, complement, n, m })
    }

    pub fn algebra(&self) -> &Arc<LieSuperalgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Fp {
        self.algebra.field()
    }

    /// Global indices spanning `h`, in increasing order.
    pub fn h_indices(&self) -> &[usize] {
        &self.h
    }

    /// Global indices spanning the complement: even ones, then odd ones.
    pub fn p_indices(&self) -> &[usize] {
        &self.complement
    }

    pub fn in_h(&self, i: usize) -> bool {
        self.h.binary_search(&i).is_ok()
    }

    /// Even dimension of `g/h`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Odd dimension of `g/h`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Parities of the complement basis.
    pub fn p_parities(&self) -> Vec<Parity> {
        self.complement.iter().map(|&i| self.algebra.parity(i)).collect()
    }

    /// Matrix of `X + h -> [H, X] + h` in the complement basis.
    pub fn adjoint_on_quotient(&self, h_elem: &[Scalar]) -> Result<Matrix> {
        if h_elem.len() != self.algebra.dim() {
            return arg("element has the wrong length");
        }
        if h_elem.iter().enumerate().any(|(k, &c)| c != 0 && !self.in_h(k)) {
            return arg("element does not lie in h");
        }
        let cols: Vec<Vec<Scalar>> = self
            .complement
            .iter()
            .map(|&j| {
                let br = self.algebra.bracket(h_elem, &self.algebra.basis_vector(j));
                self.complement.iter().map(|&k| br[k]).collect()
            })
            .collect();
        Ok(Matrix::from_columns(self.complement.len(), &cols))
    }

    /// The supertrace of the adjoint action of `h` on `g/h`, as a character.
    pub fn strad(&self) -> Result<Character> {
        let f = self.field();
        let pars = self.p_parities();
        let mut values = BTreeMap::new();
        for &i in &self.h {
            let v = if self.algebra.parity(i).is_odd() {
                0
            } else {
                supertrace(f, &self.adjoint_on_quotient(&self.algebra.basis_vector(i))?, &pars)?
            };
            values.insert(i, v);
        }
        let chi = Character { values };
        chi.check(self)?;
        Ok(chi)
    }
}

/// A character of `h`, stored by global basis index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    pub values: BTreeMap<usize, Scalar>,
}

impl Character {
    pub fn zero(split: &SubalgebraSplit) -> Self {
        Character { values: split.h_indices().iter().map(|&i| (i, 0)).collect() }
    }

    pub fn value(&self, i: usize) -> Scalar {
        self.values.get(&i).copied().unwrap_or(0)
    }

    /// Linear extension to an element of `h`.
    pub fn eval(&self, f: Fp, x: &[Scalar]) -> Scalar {
        x.iter().enumerate().fold(0, |acc, (i, &c)| f.mul_add(acc, c, self.value(i)))
    }

    pub fn negate(&self, f: Fp) -> Self {
        Character { values: self.values.iter().map(|(&i, &v)| (i, f.neg(v))).collect() }
    }

    /// Vanishing on odd vectors and on brackets `[h, h]`.
    pub fn check(&self, split: &SubalgebraSplit) -> Result<()> {
        let alg = split.algebra();
        let f = split.field();
        for &i in split.h_indices() {
            if alg.parity(i).is_odd() && self.value(i) != 0 {
                return Err(Error::Validation(format!("character is nonzero on odd {}", alg.name(i))));
            }
            for &j in split.h_indices() {
                if self.eval(f, alg.basis_bracket(i, j)) != 0 {
                    return Err(Error::Validation(format!(
                        "character does not vanish on [{}, {}]",
                        alg.name(i),
                        alg.name(j)
                    )));
                }
            }
        }
        Ok(())
    }
}

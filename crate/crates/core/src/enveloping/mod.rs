//! PBW normal forms in U(g) and the restricted quotient U'(g).

mod hopf;
mod ordering;
mod primitives;

pub use hopf::TensorElement;
pub use ordering::{complement_basis, complement_basis_level, filtration_degree, HDecomposition};
pub use primitives::{expected_primitives, primitives, PrimitiveSpace, Window};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::Rng;
use serde::Serialize;

use crate::error::{arg, Error, Result};
use crate::field::{common_parity, Fp, Parity, Scalar};
use crate::lie::LieSuperalgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Unrestricted,
    Restricted,
}

/// An ordered PBW monomial, stored as exponents over the global basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn generator(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Monomial(e)
    }

    pub(crate) fn from_vec(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn first_index(&self) -> Option<usize> {
        self.0.iter().position(|&a| a > 0)
    }

    /// Keeps the exponents at positions where `keep` holds and zeroes the rest.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Monomial {
        Monomial(self.0.iter().enumerate().map(|(i, &a)| if keep(i) { a } else { 0 }).collect())
    }

    /// Generators of the monomial as a word, in order.
    pub fn word(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat(i).take(a as usize)).collect()
    }

    pub(crate) fn with_exponent(&self, i: usize, a: u32) -> Monomial {
        let mut e = self.0.clone();
        e[i] = a;
        Monomial(e)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub(crate) type Terms = BTreeMap<Monomial, Scalar>;

pub(crate) fn add_term(f: Fp, terms: &mut Terms, m: Monomial, c: Scalar) {
    if c == 0 {
        return;
    }
    let entry = terms.entry(m);
    match entry {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = f.add(*o.get(), c);
            if s == 0 {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// An element of U(g) or U'(g) in PBW normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct UElement {
    mode: Mode,
    dim: usize,
    terms: Terms,
}

impl UElement {
    pub fn zero(mode: Mode, dim: usize) -> Self {
        UElement { mode, dim, terms: Terms::new() }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal total degree of a term, or `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, f: Fp, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.0.len(), self.dim);
        add_term(f, &mut self.terms, m, c);
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, f: Fp, c: Scalar, other: &UElement) {
        debug_assert_eq!((self.mode, self.dim), (other.mode, other.dim));
        for (m, &a) in &other.terms {
            add_term(f, &mut self.terms, m.clone(), f.mul(c, a));
        }
    }

    pub fn scale(&self, f: Fp, c: Scalar) -> UElement {
        let mut out = UElement::zero(self.mode, self.dim);
        out.add_scaled(f, c, self);
        out
    }

    pub fn add(&self, f: Fp, other: &UElement) -> UElement {
        let mut out = self.clone();
        out.add_scaled(f, 1, other);
        out
    }

    pub fn sub(&self, f: Fp, other: &UElement) -> UElement {
        let mut out = self.clone();
        out.add_scaled(f, f.neg(1), other);
        out
    }
}

impl fmt::Debug for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type Memo = RwLock<HashMap<(usize, Monomial), Arc<Terms>>>;

/// Straightening engine for one algebra and mode.
pub struct Enveloping {
    alg: Arc<LieSuperalgebra>,
    mode: Mode,
    degree_cap: u32,
    memo: Memo,
}

impl fmt::Debug for Enveloping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Enveloping").field("algebra", &self.alg).field("mode", &self.mode).finish()
    }
}

impl Enveloping {
    pub fn new(alg: Arc<LieSuperalgebra>, mode: Mode) -> Result<Self> {
        if mode == Mode::Restricted {
            let complete = (0..alg.dim()).all(|i| alg.parity(i).is_odd() || alg.p_power(i).is_some());
            if !complete {
                return Err(Error::Unsupported(
                    "restricted mode needs a p-map on every even basis vector".into(),
                ));
            }
        }
        let p = alg.field().p();
        Ok(Enveloping { alg, mode, degree_cap: p.saturating_pow(3), memo: RwLock::new(HashMap::new()) })
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn algebra(&self) -> &Arc<LieSuperalgebra> {
        &self.alg
    }

    pub fn field(&self) -> Fp {
        self.alg.field()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn zero(&self) -> UElement {
        UElement::zero(self.mode, self.dim())
    }

    pub fn one(&self) -> UElement {
        self.from_monomial(Monomial::one(self.dim()))
    }

    pub fn generator(&self, i: usize) -> UElement {
        self.from_monomial(Monomial::generator(self.dim(), i))
    }

    pub fn from_monomial(&self, m: Monomial) -> UElement {
        let mut out = self.zero();
        out.terms.insert(m, 1);
        out
    }

    /// The PBW monomial with the given exponents, checked against the mode.
    pub fn monomial(&self, exps: &[u32]) -> Result<Monomial> {
        if exps.len() != self.dim() {
            return arg(format!("expected {} exponents, got {}", self.dim(), exps.len()));
        }
        for (i, &a) in exps.iter().enumerate() {
            if self.alg.parity(i).is_odd() && a > 1 {
                return arg(format!("odd generator {} with exponent {a}", self.alg.name(i)));
            }
            if self.mode == Mode::Restricted && a >= self.field().p() {
                return arg(format!("exponent {a} of {} is not below p", self.alg.name(i)));
            }
        }
        Ok(Monomial(exps.to_vec()))
    }

    /// Image of a Lie algebra element.
    pub fn from_lie(&self, x: &[Scalar]) -> UElement {
        let mut out = self.zero();
        for (i, &c) in x.iter().enumerate() {
            out.add_term(self.field(), Monomial::generator(self.dim(), i), c);
        }
        out
    }

    pub fn monomial_parity(&self, m: &Monomial) -> Parity {
        let odd: u32 = m.0.iter().enumerate().filter(|(i, _)| self.alg.parity(*i).is_odd()).map(|(_, &a)| a).sum();
        Parity::from_bit(odd)
    }

    /// Parity of a homogeneous element; `None` if mixed.
    pub fn parity(&self, u: &UElement) -> Option<Parity> {
        common_parity(u.terms.keys().map(|m| self.monomial_parity(m)))
    }

    /// All PBW monomials of U'(g) in lexicographic exponent order.
    pub fn restricted_basis(&self) -> Result<Vec<Monomial>> {
        if self.mode != Mode::Restricted {
            return Err(Error::Unsupported("the PBW basis is finite only in restricted mode".into()));
        }
        let p = self.field().p();
        let bounds: Vec<u32> = (0..self.dim()).map(|i| if self.alg.parity(i).is_odd() { 2 } else { p }).collect();
        Ok(exponent_box(&bounds))
    }

    /// First pair `(i, k)` with `e_i^p - e_i^{[p]}` not commuting with `b_k`
    /// in U(g); `None` when every p-power relation is central.
    pub fn p_relations_central(&self) -> Option<(usize, usize)> {
        let alg = &self.alg;
        let f = self.field();
        let env = Enveloping::new(alg.clone(), Mode::Unrestricted).ok()?.with_degree_cap(f.p() + 1);
        for i in (0..alg.dim()).filter(|&i| !alg.parity(i).is_odd()) {
            let Some(img) = alg.p_power(i) else { continue };
            let pm = env.from_monomial(Monomial::generator(alg.dim(), i).with_exponent(i, f.p()));
            let z = pm.sub(f, &env.from_lie(img));
            for k in 0..alg.dim() {
                let x = env.generator(k);
                if env.mul(&z, &x) != env.mul(&x, &z) {
                    return Some((i, k));
                }
            }
        }
        None
    }

    /// Checked product: same mode and algebra, and below the degree cap in
    /// unrestricted mode.
    pub fn multiply(&self, u: &UElement, v: &UElement) -> Result<UElement> {
        for w in [u, v] {
            if w.mode != self.mode || w.dim != self.dim() {
                return arg("element belongs to a different enveloping algebra");
            }
        }
        if self.mode == Mode::Unrestricted {
            let degree = u.degree().unwrap_or(0) + v.degree().unwrap_or(0);
            if degree > self.degree_cap {
                return Err(Error::DegreeCap { degree, cap: self.degree_cap });
            }
        }
        Ok(self.mul(u, v))
    }

    pub(crate) fn mul(&self, u: &UElement, v: &UElement) -> UElement {
        let f = self.field();
        let mut out = self.zero();
        for (m, &c) in &u.terms {
            let mut acc = v.clone();
            for &g in m.word().iter().rev() {
                acc = self.left_mul_generator(g, &acc);
            }
            out.add_scaled(f, c, &acc);
        }
        out
    }

    /// `b_i * u`.
    pub fn left_mul_generator(&self, i: usize, u: &UElement) -> UElement {
        let f = self.field();
        let mut out = self.zero();
        for (m, &c) in &u.terms {
            let t = self.gen_times_mono(i, m);
            for (n, &a) in t.iter() {
                add_term(f, &mut out.terms, n.clone(), f.mul(c, a));
            }
        }
        out
    }

    fn gen_times_mono(&self, x: usize, m: &Monomial) -> Arc<Terms> {
        let key = (x, m.clone());
        if let Some(t) = self.memo.read().expect("memo poisoned").get(&key) {
            return t.clone();
        }
        let t = Arc::new(self.compute_gen_times_mono(x, m));
        self.memo.write().expect("memo poisoned").entry(key).or_insert(t).clone()
    }

    fn accumulate_lie_times(&self, acc: &mut Terms, scale: Scalar, x: &[Scalar], m: &Monomial) {
        let f = self.field();
        for (k, &c) in x.iter().enumerate().filter(|(_, &c)| c != 0) {
            let coef = f.mul(scale, c);
            for (n, &a) in self.gen_times_mono(k, m).iter() {
                add_term(f, acc, n.clone(), f.mul(coef, a));
            }
        }
    }

    fn compute_gen_times_mono(&self, x: usize, m: &Monomial) -> Terms {
        let f = self.field();
        let mut acc = Terms::new();
        let Some(j) = m.first_index() else {
            acc.insert(Monomial::generator(self.dim(), x), 1);
            return acc;
        };
        if x < j {
            acc.insert(m.with_exponent(x, 1), 1);
        } else if x == j {
            let rest = m.with_exponent(x, 0);
            if self.alg.parity(x).is_odd() {
                // x x = [x, x] / 2
                let sq = self.alg.basis_bracket(x, x).clone();
                self.accumulate_lie_times(&mut acc, f.half(), &sq, &rest);
            } else {
                let a = m.exponent(x) + 1;
                if self.mode == Mode::Restricted && a == f.p() {
                    let img = self.alg.p_power(x).expect("p-map checked at construction").clone();
                    self.accumulate_lie_times(&mut acc, 1, &img, &rest);
                } else {
                    acc.insert(m.with_exponent(x, a), 1);
                }
            }
        } else {
            // x g_j m' = (-1)^{|x||g_j|} g_j (x m') + [x, g_j] m'
            let mp = m.with_exponent(j, m.exponent(j) - 1);
            let s = f.sign(self.alg.parity(x).clashes(self.alg.parity(j)));
            let inner = self.gen_times_mono(x, &mp);
            for (n, &a) in inner.iter() {
                let coef = f.mul(s, a);
                for (q, &b) in self.gen_times_mono(j, n).iter() {
                    add_term(f, &mut acc, q.clone(), f.mul(coef, b));
                }
            }
            let br = self.alg.basis_bracket(x, j).clone();
            self.accumulate_lie_times(&mut acc, 1, &br, &mp);
        }
        acc
    }

    /// A random PBW monomial with total degree at most `max_degree` (even
    /// exponents below p in restricted mode).
    pub fn random_monomial<R: Rng>(&self, rng: &mut R, max_degree: u32) -> Monomial {
        let p = self.field().p();
        let mut exps = vec![0u32; self.dim()];
        let mut budget = max_degree;
        let mut order: Vec<usize> = (0..self.dim()).collect();
        for k in (1..order.len()).rev() {
            order.swap(k, rng.gen_range(0..=k));
        }
        for i in order {
            if budget == 0 {
                break;
            }
            let cap = if self.alg.parity(i).is_odd() {
                1
            } else if self.mode == Mode::Restricted {
                p - 1
            } else {
                budget
            };
            let a = rng.gen_range(0..=cap.min(budget));
            exps[i] = a;
            budget -= a;
        }
        Monomial(exps)
    }

    /// A random element with up to `terms` monomials of bounded degree.
    pub fn random_element<R: Rng>(&self, rng: &mut R, terms: usize, max_degree: u32) -> UElement {
        let f = self.field();
        let mut out = self.zero();
        for _ in 0..terms {
            let m = self.random_monomial(rng, max_degree);
            out.add_term(f, m, rng.gen_range(1..f.p()));
        }
        out
    }
}

/// All exponent vectors `a` with `0 <= a_i < bounds[i]`, lexicographically.
pub(crate) fn exponent_box(bounds: &[u32]) -> Vec<Monomial> {
    let mut out = vec![Vec::with_capacity(bounds.len())];
    for &b in bounds {
        let mut next = Vec::with_capacity(out.len() * b as usize);
        for prefix in &out {
            for a in 0..b {
                let mut v: Vec<u32> = prefix.clone();
                v.push(a);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Monomial).collect()
}

//! Line-oriented definition documents.
//!
//! ```text
//! [algebra]
//! name = sl2-p5
//! p = 5
//! basis = e:0 h:0 f:0
//!
//! [brackets]
//! e f = 0 1 0
//!
//! [pmap]
//! h = 0 1 0
//!
//! [split borel]
//! h = e h
//!
//! [representation two]
//! split = borel
//! parities = 0 0
//! e = 0 1; 0 0
//! h = 1 0; 0 4
//!
//! [character shift]
//! split = borel
//! h = 1
//! ```
//!
//! Brackets not listed are zero, and a pair given in one order is completed
//! by super antisymmetry. A missing `[pmap]` section means the algebra is not
//! restricted. Basis vectors may be referred to by name or by index.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fp, Parity, Scalar};
use crate::lie::{Character, LieSuperalgebra, SubalgebraSplit};
use crate::linalg::Matrix;
use crate::repr::Representation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDef {
    pub name: String,
    pub h: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepDef {
    pub name: String,
    pub split: String,
    pub parities: Vec<Parity>,
    pub matrices: BTreeMap<usize, Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharDef {
    pub name: String,
    pub split: String,
    pub parity: Parity,
    pub values: BTreeMap<usize, Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub p: u32,
    pub basis: Vec<(String, Parity)>,
    pub brackets: Vec<(usize, usize, Vec<Scalar>)>,
    pub p_map: Option<Vec<(usize, Vec<Scalar>)>>,
    pub splits: Vec<SplitDef>,
    pub representations: Vec<RepDef>,
    pub characters: Vec<CharDef>,
}

/// One (split, representation) pair of a definition, ready for the checks.
#[derive(Clone, Debug)]
pub struct Instance {
    pub algebra: String,
    pub split_name: String,
    pub rep_name: String,
    pub split: SubalgebraSplit,
    pub rep: Representation,
}

impl Definition {
    /// Structure constants only; see [`Definition::build`] for validation.
    pub fn algebra(&self) -> Result<Arc<LieSuperalgebra>> {
        let f = Fp::new(self.p)?;
        Ok(Arc::new(LieSuperalgebra::new(f, self.basis.clone(), &self.brackets, self.p_map.clone())?))
    }

    /// The validated algebra together with every (split, representation) pair.
    pub fn build(&self) -> Result<(Arc<LieSuperalgebra>, Vec<Instance>)> {
        let alg = self.algebra()?;
        let report = alg.validate();
        if !report.passed {
            return Err(Error::Validation(report.message.unwrap_or_default()));
        }
        let mut splits = BTreeMap::new();
        for s in &self.splits {
            splits.insert(s.name.clone(), SubalgebraSplit::new(alg.clone(), &s.h)?);
        }
        let lookup = |name: &str| {
            splits.get(name).ok_or_else(|| Error::Validation(format!("unknown split {name}")))
        };
        let restricted = alg.is_restricted();
        let mut out = Vec::new();
        for r in &self.representations {
            let split = lookup(&r.split)?;
            let rep = Representation::new(split, r.parities.clone(), r.matrices.clone(), restricted)
                .map_err(|e| Error::Validation(format!("representation {}: {e}", r.name)))?;
            out.push(Instance {
                algebra: self.name.clone(),
                split_name: r.split.clone(),
                rep_name: r.name.clone(),
                split: split.clone(),
                rep,
            });
        }
        for c in &self.characters {
            let split = lookup(&c.split)?;
            let chi = Character { values: split.h_indices().iter().map(|&i| (i, c.value(i))).collect() };
            chi.check(split).map_err(|e| Error::Validation(format!("character {}: {e}", c.name)))?;
            let rep = Representation::character(split, &chi, c.parity);
            rep.validate(split).map_err(|e| Error::Validation(format!("character {}: {e}", c.name)))?;
            out.push(Instance {
                algebra: self.name.clone(),
                split_name: c.split.clone(),
                rep_name: c.name.clone(),
                split: split.clone(),
                rep,
            });
        }
        out.sort_by(|a, b| (&a.split_name, &a.rep_name).cmp(&(&b.split_name, &b.rep_name)));
        Ok((alg, out))
    }

    /// Serializes to the text format; [`parse_definition`] inverts it.
    pub fn dump(&self) -> String {
        let name = |i: usize| self.basis[i].0.clone();
        let vec = |v: &[Scalar]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        let _ = writeln!(s, "[algebra]\nname = {}\np = {}", self.name, self.p);
        let basis: Vec<String> = self.basis.iter().map(|(n, q)| format!("{n}:{}", q.bit())).collect();
        let _ = writeln!(s, "basis = {}\n\n[brackets]", basis.join(" "));
        for (i, j, v) in &self.brackets {
            let _ = writeln!(s, "{} {} = {}", name(*i), name(*j), vec(v));
        }
        if let Some(pm) = &self.p_map {
            let _ = writeln!(s, "\n[pmap]");
            for (i, v) in pm {
                let _ = writeln!(s, "{} = {}", name(*i), vec(v));
            }
        }
        for sp in &self.splits {
            let h: Vec<String> = sp.h.iter().map(|&i| name(i)).collect();
            let _ = writeln!(s, "\n[split {}]\nh = {}", sp.name, h.join(" "));
        }
        for r in &self.representations {
            let pars: Vec<String> = r.parities.iter().map(|q| q.bit().to_string()).collect();
            let _ = writeln!(s, "\n[representation {}]\nsplit = {}\nparities = {}", r.name, r.split, pars.join(" "));
            for (&i, m) in &r.matrices {
                let rows: Vec<String> = (0..m.rows()).map(|k| vec(m.row(k))).collect();
                let _ = writeln!(s, "{} = {}", name(i), rows.join("; "));
            }
        }
        for c in &self.characters {
            let _ = writeln!(s, "\n[character {}]\nsplit = {}\nparity = {}", c.name, c.split, c.parity.bit());
            for (&i, v) in &c.values {
                let _ = writeln!(s, "{} = {v}", name(i));
            }
        }
        s
    }
}

impl CharDef {
    fn value(&self, i: usize) -> Scalar {
        self.values.get(&i).copied().unwrap_or(0)
    }
}

enum Section {
    None,
    Algebra,
    Brackets,
    PMap,
    Split(usize),
    Rep(usize),
    Char(usize),
}

struct Parser {
    def: Definition,
    dims_declared: BTreeMap<usize, usize>,
    line: usize,
}

impl Parser {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, message: message.into() })
    }

    fn index(&self, token: &str) -> Result<usize> {
        if let Some(i) = self.def.basis.iter().position(|(n, _)| n == token) {
            return Ok(i);
        }
        match token.parse::<usize>() {
            Ok(i) if i < self.def.basis.len() => Ok(i),
            _ => self.err(format!("unknown basis vector '{token}'")),
        }
    }

    fn scalars(&self, text: &str) -> Result<Vec<Scalar>> {
        let p = self.def.p as i64;
        text.split_whitespace()
            .map(|t| match t.parse::<i64>() {
                Ok(v) => Ok(v.rem_euclid(p) as Scalar),
                Err(_) => self.err(format!("'{t}' is not an integer")),
            })
            .collect()
    }

    fn coords(&self, text: &str) -> Result<Vec<Scalar>> {
        let v = self.scalars(text)?;
        if v.len() != self.def.basis.len() {
            return self.err(format!("expected {} coordinates, found {}", self.def.basis.len(), v.len()));
        }
        Ok(v)
    }

    fn parity(&self, t: &str) -> Result<Parity> {
        match t {
            "0" => Ok(Parity::Even),
            "1" => Ok(Parity::Odd),
            _ => self.err(format!("parity must be 0 or 1, found '{t}'")),
        }
    }

    fn need_basis(&self) -> Result<()> {
        if self.def.basis.is_empty() {
            return self.err("the [algebra] section with p and basis must come first");
        }
        Ok(())
    }

    fn key_value(&mut self, section: &Section, key: &str, value: &str) -> Result<()> {
        match section {
            Section::None => self.err("entry outside of any section"),
            Section::Algebra => match key {
                "name" => {
                    self.def.name = value.to_string();
                    Ok(())
                }
                "p" => {
                    let p: u32 = value.parse().or_else(|_| self.err("p must be an integer"))?;
                    if let Err(e) = Fp::new(p) {
                        return self.err(e.to_string());
                    }
                    self.def.p = p;
                    Ok(())
                }
                "basis" => {
                    if self.def.p == 0 {
                        return self.err("p must be given before the basis");
                    }
                    for tok in value.split_whitespace() {
                        let Some((n, q)) = tok.split_once(':') else {
                            return self.err(format!("basis entry '{tok}' must be name:parity"));
                        };
                        let q = self.parity(q)?;
                        if self.def.basis.iter().any(|(m, _)| m == n) {
                            return self.err(format!("duplicate basis name '{n}'"));
                        }
                        self.def.basis.push((n.to_string(), q));
                    }
                    Ok(())
                }
                _ => self.err(format!("unknown algebra key '{key}'")),
            },
            Section::Brackets => {
                self.need_basis()?;
                let names: Vec<&str> = key.split_whitespace().collect();
                if names.len() != 2 {
                    return self.err("bracket entries look like 'x y = coordinates'");
                }
                let (i, j) = (self.index(names[0])?, self.index(names[1])?);
                let v = self.coords(value)?;
                self.def.brackets.push((i, j, v));
                Ok(())
            }
            Section::PMap => {
                self.need_basis()?;
                let i = self.index(key)?;
                let v = self.coords(value)?;
                self.def.p_map.get_or_insert_with(Vec::new).push((i, v));
                Ok(())
            }
            Section::Split(k) => {
                if key != "h" {
                    return self.err(format!("unknown split key '{key}'"));
                }
                let h = value.split_whitespace().map(|t| self.index(t)).collect::<Result<Vec<_>>>()?;
                self.def.splits[*k].h = h;
                Ok(())
            }
            Section::Rep(k) => match key {
                "split" => {
                    self.def.representations[*k].split = value.to_string();
                    Ok(())
                }
                "dim" => {
                    let d: usize = value.parse().or_else(|_| self.err("dim must be an integer"))?;
                    self.dims_declared.insert(*k, d);
                    Ok(())
                }
                "parities" => {
                    let q = value.split_whitespace().map(|t| self.parity(t)).collect::<Result<Vec<_>>>()?;
                    self.def.representations[*k].parities = q;
                    Ok(())
                }
                _ => {
                    let i = self.index(key)?;
                    let rows = value.split(';').map(|r| self.scalars(r)).collect::<Result<Vec<_>>>()?;
                    let d = self.def.representations[*k].parities.len();
                    if d == 0 {
                        return self.err("parities must be given before matrices");
                    }
                    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                        return self.err(format!("matrix of {key} must be {d}x{d}"));
                    }
                    self.def.representations[*k].matrices.insert(i, Matrix::from_rows(&rows));
                    Ok(())
                }
            },
            Section::Char(k) => match key {
                "split" => {
                    self.def.characters[*k].split = value.to_string();
                    Ok(())
                }
                "parity" => {
                    self.def.characters[*k].parity = self.parity(value)?;
                    Ok(())
                }
                _ => {
                    let i = self.index(key)?;
                    let v = self.scalars(value)?;
                    if v.len() != 1 {
                        return self.err("a character value is a single scalar");
                    }
                    self.def.characters[*k].values.insert(i, v[0]);
                    Ok(())
                }
            },
        }
    }
}

/// Parses a definition document and checks that every index is in range and
/// every matrix has the declared shape. Algebraic validity is checked by
/// [`Definition::build`].
pub fn parse_definition(text: &str) -> Result<Definition> {
    let mut ps = Parser {
        def: Definition {
            name: String::new(),
            p: 0,
            basis: Vec::new(),
            brackets: Vec::new(),
            p_map: None,
            splits: Vec::new(),
            representations: Vec::new(),
            characters: Vec::new(),
        },
        dims_declared: BTreeMap::new(),
        line: 0,
    };
    let mut section = Section::None;
    for (no, raw) in text.lines().enumerate() {
        ps.line = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(head) = line.strip_prefix('[') {
            let Some(head) = head.strip_suffix(']') else {
                return ps.err("unterminated section header");
            };
            let mut parts = head.split_whitespace();
            let kind = parts.next().unwrap_or("");
            let name = parts.next().map(str::to_string);
            section = match (kind, name) {
                ("algebra", None) => Section::Algebra,
                ("brackets", None) => Section::Brackets,
                ("pmap", None) => {
                    ps.def.p_map.get_or_insert_with(Vec::new);
                    Section::PMap
                }
                ("split", Some(n)) => {
                    ps.def.splits.push(SplitDef { name: n, h: Vec::new() });
                    Section::Split(ps.def.splits.len() - 1)
                }
                ("representation", Some(n)) => {
                    ps.def.representations.push(RepDef {
                        name: n,
                        split: String::new(),
                        parities: Vec::new(),
                        matrices: BTreeMap::new(),
                    });
                    Section::Rep(ps.def.representations.len() - 1)
                }
                ("character", Some(n)) => {
                    ps.def.characters.push(CharDef {
                        name: n,
                        split: String::new(),
                        parity: Parity::Even,
                        values: BTreeMap::new(),
                    });
                    Section::Char(ps.def.characters.len() - 1)
                }
                _ => return ps.err(format!("unknown section '[{head}]'")),
            };
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return ps.err("expected 'key = value'");
        };
        ps.key_value(&section, key.trim(), value.trim())?;
    }
    ps.line = 0;
    if ps.def.p == 0 || ps.def.basis.is_empty() {
        return ps.err("missing p or basis in [algebra]");
    }
    for (k, r) in ps.def.representations.iter().enumerate() {
        if let Some(&d) = ps.dims_declared.get(&k) {
            if d != r.parities.len() {
                return ps.err(format!("representation {} declares dim {d} but lists {} parities", r.name, r.parities.len()));
            }
        }
    }
    Ok(ps.def)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SL2: &str = "
[algebra]
name = sl2-p5
p = 5
basis = e:0 h:0 f:0
[brackets]
e f = 0 1 0
h e = 2 0 0
h f = 0 0 -2
[pmap]
e = 0 0 0
h = 0 1 0
f = 0 0 0
[split borel]
h = e h
[representation two]
split = borel
dim = 2
parities = 0 0
e = 0 1; 0 0
h = 1 0; 0 -1
[character shift]
split = borel
h = 1
";

    #[test]
    fn parses_and_round_trips() {
        let def = parse_definition(SL2).unwrap();
        assert_eq!(def.basis.len(), 3);
        assert_eq!(def.brackets[2], (1, 2, vec![0, 0, 3]));
        let (alg, inst) = def.build().unwrap();
        assert!(alg.validate().passed);
        assert_eq!(inst.len(), 2);
        assert_eq!(parse_definition(&def.dump()).unwrap(), def);
    }

    #[test]
    fn reports_line_numbers() {
        let bad = SL2.replace("h f = 0 0 -2", "h f = 0 0");
        match parse_definition(&bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 9),
            other => panic!("unexpected {other:?}"),
        }
        let bad = SL2.replace("p = 5", "p = 2");
        assert!(matches!(parse_definition(&bad), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn rejects_invalid_algebra() {
        let bad = SL2.replace("h = 0 1 0\nf", "h = 0 0 0\nf");
        let def = parse_definition(&bad).unwrap();
        let err = def.build().unwrap_err();
        assert!(err.to_string().contains("h"), "{err}");
    }
}

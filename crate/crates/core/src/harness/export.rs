//! Diff-stable text dumps of multiplication and coproduct tables and of the
//! `Φ` and `Ψ` matrices.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use crate::duality::{phi, psi, Duality};
use crate::enveloping::{Enveloping, Mode, Monomial};
use crate::error::{Error, Result};
use crate::lie::LieSuperalgebra;
use crate::linalg::{determinant, Matrix};

use super::format::{Definition, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    Multiplication,
    Coproduct,
    PhiMatrix,
    PsiGram,
}

impl FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "multiplication" => Ok(Table::Multiplication),
            "coproduct" => Ok(Table::Coproduct),
            "phi-matrix" => Ok(Table::PhiMatrix),
            "psi-gram" => Ok(Table::PsiGram),
            _ => Err(Error::Argument(format!(
                "unknown table '{s}'; known: multiplication, coproduct, phi-matrix, psi-gram"
            ))),
        }
    }
}

fn monomial_name(alg: &LieSuperalgebra, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(i, &a)| if a == 1 { alg.name(i).to_string() } else { format!("{}^{a}", alg.name(i)) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn write_matrix(s: &mut String, m: &Matrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
}

fn pick_instance(instances: Vec<Instance>, split: Option<&str>, rep: Option<&str>) -> Result<Instance> {
    instances
        .into_iter()
        .find(|i| split.map_or(true, |s| s == i.split_name) && rep.map_or(true, |r| r == i.rep_name))
        .ok_or_else(|| Error::Argument("no instance matches the requested split/representation".into()))
}

/// Renders `table` for `def`; the matrix tables use the first instance that
/// matches `split` and `rep`.
pub fn export_table(def: &Definition, table: Table, split: Option<&str>, rep: Option<&str>) -> Result<String> {
    let (alg, instances) = def.build()?;
    if !alg.is_restricted() {
        return Err(Error::Unsupported("total tables need a restricted algebra".into()));
    }
    let env = Arc::new(Enveloping::new(alg.clone(), Mode::Restricted)?);
    let mut basis = env.restricted_basis()?;
    basis.sort();
    let name = |m: &Monomial| monomial_name(&alg, m);
    let mut s = String::new();
    let _ = writeln!(s, "# {} p={} {}", def.name, alg.field().p(), table_name(table));
    match table {
        Table::Multiplication => {
            let _ = writeln!(s, "# basis {}", basis.len());
            for a in &basis {
                for b in &basis {
                    let prod = env.multiply(&env.from_monomial(a.clone()), &env.from_monomial(b.clone()))?;
                    let terms: Vec<String> = prod.terms().iter().map(|(m, c)| format!("{c} {}", name(m))).collect();
                    let _ = writeln!(s, "{} * {} = {}", name(a), name(b), if terms.is_empty() { "0".into() } else { terms.join(" + ") });
                }
            }
        }
        Table::Coproduct => {
            let _ = writeln!(s, "# basis {}", basis.len());
            for a in &basis {
                let d = env.coproduct_monomial(a);
                let terms: Vec<String> =
                    d.terms().iter().map(|((x, y), c)| format!("{c} {} (x) {}", name(x), name(y))).collect();
                let _ = writeln!(s, "D {} = {}", name(a), terms.join(" + "));
            }
        }
        Table::PhiMatrix | Table::PsiGram => {
            let inst = pick_instance(instances, split, rep)?;
            let d = Duality::new(env, &inst.split, inst.rep.clone())?;
            let f = alg.field();
            let m = if table == Table::PhiMatrix { phi(&d) } else { psi(&d)? };
            let _ = writeln!(s, "# split {} representation {}", inst.split_name, inst.rep_name);
            let _ = writeln!(s, "# size {} rank {} det {}", m.rows(), m.rank(f), determinant(f, &m));
            write_matrix(&mut s, &m);
        }
    }
    Ok(s)
}

fn table_name(t: Table) -> &'static str {
    match t {
        Table::Multiplication => "multiplication",
        Table::Coproduct => "coproduct",
        Table::PhiMatrix => "phi-matrix",
        Table::PsiGram => "psi-gram",
    }
}

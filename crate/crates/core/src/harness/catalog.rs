//! Built-in example definitions.

use crate::error::{Error, Result};

use super::format::{parse_definition, Definition};

const ABELIAN_P3: &str = "
[algebra]
name = abelian-p3
p = 3
basis = e:0

[pmap]
e = 0

[split zero]
h =

[split full]
h = e

[representation trivial]
split = zero
parities = 0

[representation plane]
split = zero
parities = 0 1

[representation trivial]
split = full
parities = 0
e = 0

[representation nilpotent]
split = full
parities = 0 0
e = 0 1; 0 0
";

const ODD_ABELIAN_P3: &str = "
[algebra]
name = odd-abelian-p3
p = 3
basis = x:1

[pmap]

[split zero]
h =

[split full]
h = x

[representation trivial]
split = zero
parities = 0

[representation plane]
split = zero
parities = 0 1

[representation trivial]
split = full
parities = 0
x = 0

[representation nilpotent]
split = full
parities = 0 1
x = 0 1; 0 0
";

const HEISENBERG_P3: &str = "
[algebra]
name = heisenberg-p3
p = 3
basis = z:0 a:1 b:1

[brackets]
a b = 1 0 0

[pmap]
z = 1 0 0

[split center]
h = z

[split zero]
h =

[representation trivial]
split = center
parities = 0
z = 0

[character unit]
split = center
z = 1

[representation trivial]
split = zero
parities = 0

[representation plane]
split = zero
parities = 0 1
";

fn sl2(p: u32, with_zero_split: bool) -> String {
    let m2 = p - 2;
    let m1 = p - 1;
    let mut s = format!(
        "
[algebra]
name = sl2-p{p}
p = {p}
basis = e:0 h:0 f:0

[brackets]
e f = 0 1 0
h e = 2 0 0
h f = 0 0 {m2}

[pmap]
e = 0 0 0
h = 0 1 0
f = 0 0 0

[split borel]
h = e h

[representation trivial]
split = borel
parities = 0
e = 0
h = 0

[representation two]
split = borel
parities = 0 0
e = 0 1; 0 0
h = 1 0; 0 {m1}

[character shift]
split = borel
h = 1
"
    );
    if with_zero_split {
        s.push_str(
            "
[split zero]
h =

[representation trivial]
split = zero
parities = 0
",
        );
    }
    s
}

fn gl11(p: u32, with_zero_split: bool) -> String {
    let m1 = p - 1;
    let mut s = format!(
        "
[algebra]
name = gl11-p{p}
p = {p}
basis = E11:0 E22:0 E12:1 E21:1

[brackets]
E11 E12 = 0 0 1 0
E11 E21 = 0 0 0 {m1}
E22 E12 = 0 0 {m1} 0
E22 E21 = 0 0 0 1
E12 E21 = 1 1 0 0

[pmap]
E11 = 1 0 0 0
E22 = 0 1 0 0

[split borel]
h = E11 E22 E12

[representation trivial]
split = borel
parities = 0
E11 = 0
E22 = 0
E12 = 0

[representation natural]
split = borel
parities = 0 1
E11 = 1 0; 0 0
E22 = 0 0; 0 1
E12 = 0 1; 0 0

[character chi]
split = borel
E11 = 1
E22 = 2
"
    );
    if with_zero_split {
        s.push_str(
            "
[split zero]
h =

[representation trivial]
split = zero
parities = 0
",
        );
    }
    s
}

fn sources() -> Vec<String> {
    vec![
        ABELIAN_P3.to_string(),
        ODD_ABELIAN_P3.to_string(),
        HEISENBERG_P3.to_string(),
        sl2(3, true),
        sl2(5, false),
        gl11(3, true),
        gl11(5, false),
    ]
}

/// All built-in definitions, in a fixed order.
pub fn catalog() -> Vec<Definition> {
    sources().iter().map(|s| parse_definition(s).expect("catalog entries parse")).collect()
}

pub fn catalog_names() -> Vec<String> {
    catalog().into_iter().map(|d| d.name).collect()
}

pub fn catalog_entry(name: &str) -> Result<Definition> {
    catalog()
        .into_iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::Argument(format!("no catalog entry named '{name}'")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enveloping::{Enveloping, Mode};

    #[test]
    fn catalog_builds_and_round_trips() {
        let defs = catalog();
        assert_eq!(defs.len(), 7);
        let mut splits = 0;
        for d in &defs {
            let (alg, instances) = d.build().unwrap();
            assert!(alg.validate().passed, "{}", d.name);
            assert!(!instances.is_empty());
            splits += d.splits.len();
            assert_eq!(parse_definition(&d.dump()).unwrap(), *d);
            let env = Enveloping::new(alg.clone(), Mode::Restricted).unwrap();
            let expected = (alg.field().p() as usize).pow(alg.even_dim() as u32) << alg.odd_dim();
            assert_eq!(env.restricted_basis().unwrap().len(), expected);
        }
        assert!(splits >= 6);
        assert_eq!(catalog_entry("abelian-p3").unwrap().basis.len(), 1);
        assert!(catalog_entry("nope").is_err());
    }
}

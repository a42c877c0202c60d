//! Dispatch of the named checks over the instances of a definition.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::duality::{
    comparison_check, iota_compat_check, kernel_duality_check, lambda_character_check, lambda_omega_check,
    phi_check, phi_r_balance_check, phi_r_equivariance_report, phi_r_injectivity_check, psi_check,
    random_induced_sample, theta_check, Duality, LambdaWindow,
};
use crate::enveloping::{complement_basis_level, expected_primitives, primitives, Enveloping, Mode, UElement, Window};
use crate::error::{Error, Result};
use crate::lie::{LieSuperalgebra, SubalgebraSplit};
use crate::linalg::subspace_equal;
use crate::outcome::Outcome;
use crate::repr::AlgebraA;

use super::format::{Definition, Instance};

pub const CHECK_NAMES: [&str; 12] = [
    "validate",
    "primitives",
    "mu-product",
    "lambda-character",
    "phi",
    "psi",
    "theta",
    "comparison",
    "kernel-duality",
    "omega-iso",
    "iota-compat",
    "phi-r-injectivity",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub algebra: String,
    pub split: String,
    pub representation: String,
    pub status: Status,
    pub witness: Option<String>,
    pub dims: BTreeMap<String, usize>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub seed: u64,
    /// Largest level `r` for the unrestricted checks.
    pub level: u32,
    /// Random samples per level for the level-`r` lemmas.
    pub samples: usize,
    /// Run `omega-iso` against `+strad` instead of `−strad`.
    pub negative_control: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { seed: 1, level: 0, samples: 100, negative_control: false }
    }
}

/// Parses a comma-separated selection, rejecting unknown names.
pub fn parse_selection(spec: &str) -> Result<Vec<String>> {
    let names: Vec<String> = spec.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
    if let Some(bad) = names.iter().find(|n| !CHECK_NAMES.contains(&n.as_str())) {
        return Err(Error::Argument(format!("unknown check '{bad}'; known: {}", CHECK_NAMES.join(", "))));
    }
    Ok(names)
}

struct Context {
    name: String,
    alg: Arc<LieSuperalgebra>,
    restricted: Option<Arc<Enveloping>>,
    unrestricted: Arc<Enveloping>,
    splits: Vec<(String, SubalgebraSplit)>,
    instances: Vec<Instance>,
}

enum Scope<'a> {
    Algebra,
    Split(&'a str),
    Instance(&'a Instance),
}

fn report(ctx: &Context, check: &str, scope: &Scope, run: impl FnOnce() -> Result<Option<Outcome>>) -> CheckReport {
    let (split, representation) = match scope {
        Scope::Algebra => ("-".to_string(), "-".to_string()),
        Scope::Split(s) => (s.to_string(), "-".to_string()),
        Scope::Instance(i) => (i.split_name.clone(), i.rep_name.clone()),
    };
    let start = Instant::now();
    let (status, witness, dims) = match run() {
        Ok(Some(o)) => (if o.passed { Status::Pass } else { Status::Fail }, o.witness, o.dims),
        Ok(None) => (Status::Skipped, None, BTreeMap::new()),
        Err(Error::Unsupported(msg)) => (Status::Skipped, Some(msg), BTreeMap::new()),
        Err(e) => (Status::Fail, Some(e.to_string()), BTreeMap::new()),
    };
    CheckReport {
        check: check.to_string(),
        algebra: ctx.name.clone(),
        split,
        representation,
        status,
        witness,
        dims,
        elapsed: start.elapsed(),
    }
}

fn need_restricted(ctx: &Context) -> Result<&Arc<Enveloping>> {
    ctx.restricted.as_ref().ok_or_else(|| Error::Unsupported("the algebra has no p-map".into()))
}

fn check_validate(ctx: &Context) -> Result<Option<Outcome>> {
    let v = ctx.alg.validate();
    if !v.passed {
        return Ok(Some(Outcome::fail(v.message.unwrap_or_default())));
    }
    let mut out = Outcome::pass().with_dim("g", ctx.alg.dim());
    if let Some(env) = &ctx.restricted {
        let p = ctx.alg.field().p() as usize;
        let want = p.pow(ctx.alg.even_dim() as u32) * (1 << ctx.alg.odd_dim());
        let got = env.restricted_basis()?.len();
        out = out.with_dim("U'", got);
        if got != want {
            out = out.and(Outcome::fail(format!("dim U' = {got}, expected {want}")));
        }
        if let Some((i, k)) = env.p_relations_central() {
            let name = |j| ctx.alg.name(j);
            out = out.and(Outcome::fail(format!("{0}^p - {0}^[p] does not commute with {1}", name(i), name(k))));
        }
    }
    for inst in &ctx.instances {
        if let Err(e) = inst.rep.validate(&inst.split) {
            out = out.and(Outcome::fail(format!("{}/{}: {e}", inst.split_name, inst.rep_name)));
        }
    }
    Ok(Some(out))
}

fn primitive_outcome(env: &Enveloping, window: Window, tag: &str) -> Result<Outcome> {
    let got = primitives(env, window)?;
    let want = expected_primitives(env, window)?;
    let out = Outcome::pass().with_dim(&format!("{tag}_window"), got.monomials.len()).with_dim(tag, got.space.dim());
    if subspace_equal(&got.space, &want)? {
        Ok(out)
    } else {
        Ok(Outcome::fail(format!("{tag}: primitive space has dim {}, expected {}", got.space.dim(), want.dim())).and(out))
    }
}

fn check_primitives(ctx: &Context, opts: &CheckOptions) -> Result<Option<Outcome>> {
    let mut out = Outcome::pass();
    if let Some(env) = &ctx.restricted {
        out = out.and(primitive_outcome(env, Window::Restricted, "restricted")?);
    }
    for r in 0..=opts.level {
        out = out.and(primitive_outcome(&ctx.unrestricted, Window::Level(r), &format!("level{r}"))?);
    }
    Ok(Some(out))
}

fn check_lambda(ctx: &Context, split: &SubalgebraSplit, opts: &CheckOptions) -> Result<Option<Outcome>> {
    let mut out = Outcome::pass();
    if let Some(env) = &ctx.restricted {
        out = out.and(lambda_character_check(env, split, LambdaWindow::Restricted)?);
    }
    for r in 0..=opts.level {
        let o = lambda_character_check(&ctx.unrestricted, split, LambdaWindow::Level(r))?;
        out = out.and(Outcome { dims: o.dims.iter().map(|(k, &v)| (format!("level{r}_{k}"), v)).collect(), ..o });
    }
    Ok(Some(out))
}

fn duality(ctx: &Context, inst: &Instance) -> Result<Duality> {
    Duality::new(need_restricted(ctx)?.clone(), &inst.split, inst.rep.clone())
}

/// `Ψ` itself, then the Berezinian form of its invariance.
fn check_psi(ctx: &Context, inst: &Instance) -> Result<Option<Outcome>> {
    let d = duality(ctx, inst)?;
    Ok(Some(psi_check(&d)?.and(lambda_omega_check(&d.algebra)?)))
}

fn check_omega(ctx: &Context, split: &SubalgebraSplit, opts: &CheckOptions) -> Result<Option<Outcome>> {
    let a = AlgebraA::new(need_restricted(ctx)?.clone(), split)?;
    Ok(Some(a.omega_iso_check(opts.negative_control)?))
}

fn random_level_element<R: Rng>(env: &Enveloping, split: &SubalgebraSplit, r: u32, rng: &mut R) -> Result<UElement> {
    let window = complement_basis_level(split, r);
    let mut u = env.from_monomial(window[rng.gen_range(0..window.len())].clone());
    let h = split.h_indices();
    if !h.is_empty() && rng.gen_bool(0.5) {
        u = env.multiply(&env.generator(h[rng.gen_range(0..h.len())]), &u)?;
    }
    Ok(u)
}

/// `ι`-compatibility on random `(u, v, w)` and the `U(h)`-balance of `Φʳ`, for
/// every `r ≤ level`.
fn check_iota(ctx: &Context, inst: &Instance, opts: &CheckOptions, rng: &mut ChaCha8Rng) -> Result<Option<Outcome>> {
    let env = &ctx.unrestricted;
    let f = env.field();
    let mut out = Outcome::pass();
    for r in 0..=opts.level {
        let window = complement_basis_level(&inst.split, r + 1);
        let (mut done, mut attempts) = (0, 0);
        while done < opts.samples && attempts < opts.samples * 50 {
            attempts += 1;
            let u = random_level_element(env, &inst.split, r, rng)?;
            let v: Vec<_> = (0..inst.rep.dim()).map(|_| rng.gen_range(0..f.p())).collect();
            let w = &window[rng.gen_range(0..window.len())];
            // samples outside the domain of Φʳ or Φ^{r+1} are redrawn
            let o = match iota_compat_check(env, &inst.split, &inst.rep, &u, &v, r, w) {
                Err(Error::Precondition(_)) => continue,
                other => other?,
            };
            if !o.passed {
                return Ok(Some(o.with_dim("r", r as usize)));
            }
            done += 1;
        }
        if done < opts.samples {
            return Ok(Some(Outcome::fail(format!("level {r}: only {done} of {} samples lie in the domain", opts.samples))));
        }
        out = out.with_dim(&format!("level{r}_iota_samples"), done);
        let b = phi_r_balance_check(env, &inst.split, &inst.rep, r, opts.samples, rng)?;
        let samples = b.dims.get("samples").copied().unwrap_or(0);
        out = out.and(Outcome { dims: BTreeMap::new(), ..b }).with_dim(&format!("level{r}_balance_samples"), samples);
    }
    Ok(Some(out))
}

/// Injectivity witnesses on random nonzero samples; the equivariance of `Φʳ`
/// under `g` is only recorded in the dimensions.
fn check_injectivity(ctx: &Context, inst: &Instance, opts: &CheckOptions, rng: &mut ChaCha8Rng) -> Result<Option<Outcome>> {
    let env = &ctx.unrestricted;
    let mut out = Outcome::pass();
    for r in 0..=opts.level {
        for _ in 0..opts.samples {
            let terms = rng.gen_range(1..=3);
            let s = random_induced_sample(&inst.split, inst.rep.dim(), r, terms, rng);
            let o = phi_r_injectivity_check(env, &inst.split, &inst.rep, r, &s)?;
            if !o.passed {
                return Ok(Some(o.with_dim("r", r as usize)));
            }
        }
        let eq = phi_r_equivariance_report(env, &inst.split, &inst.rep, r, opts.samples.min(20), rng)?;
        out = out
            .with_dim(&format!("level{r}_samples"), opts.samples)
            .with_dim(&format!("level{r}_equivariance_defined"), eq.defined)
            .with_dim(&format!("level{r}_equivariance_agreed"), eq.agreed);
    }
    Ok(Some(out))
}

fn context(def: &Definition, opts: &CheckOptions) -> Result<Context> {
    let (alg, instances) = def.build()?;
    let restricted = if alg.is_restricted() { Some(Arc::new(Enveloping::new(alg.clone(), Mode::Restricted)?)) } else { None };
    // products of two elements of the level-(r+1) window
    let cap = 2 * alg.dim() as u32 * alg.field().p().pow(opts.level + 2);
    let unrestricted = Arc::new(Enveloping::new(alg.clone(), Mode::Unrestricted)?.with_degree_cap(cap));
    let mut splits = Vec::new();
    for s in &def.splits {
        splits.push((s.name.clone(), SubalgebraSplit::new(alg.clone(), &s.h)?));
    }
    splits.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Context { name: def.name.clone(), alg, restricted, unrestricted, splits, instances })
}

fn run_one(ctx: &Context, check: &str, opts: &CheckOptions, out: &mut Vec<CheckReport>) {
    let base = opts.seed ^ ((CHECK_NAMES.iter().position(|&c| c == check).unwrap_or(0) as u64) << 32);
    match check {
        "validate" => out.push(report(ctx, check, &Scope::Algebra, || check_validate(ctx))),
        "primitives" => out.push(report(ctx, check, &Scope::Algebra, || check_primitives(ctx, opts))),
        "mu-product" | "lambda-character" | "omega-iso" => {
            for (name, split) in &ctx.splits {
                let scope = Scope::Split(name);
                out.push(report(ctx, check, &scope, || match check {
                    "mu-product" => Ok(Some(AlgebraA::new(need_restricted(ctx)?.clone(), split)?.dual_law_check())),
                    "lambda-character" => check_lambda(ctx, split, opts),
                    _ => check_omega(ctx, split, opts),
                }));
            }
        }
        _ => {
            for (k, inst) in ctx.instances.iter().enumerate() {
                let mut rng = ChaCha8Rng::seed_from_u64(base.wrapping_add(k as u64));
                out.push(report(ctx, check, &Scope::Instance(inst), || match check {
                    "phi" => Ok(Some(phi_check(&duality(ctx, inst)?))),
                    "psi" => check_psi(ctx, inst),
                    "theta" => Ok(Some(theta_check(&duality(ctx, inst)?)?)),
                    "comparison" => Ok(Some(comparison_check(&duality(ctx, inst)?)?)),
                    "kernel-duality" => Ok(Some(kernel_duality_check(need_restricted(ctx)?, &inst.split, &inst.rep)?)),
                    "iota-compat" => check_iota(ctx, inst, opts, &mut rng),
                    "phi-r-injectivity" => check_injectivity(ctx, inst, opts, &mut rng),
                    other => Err(Error::Argument(format!("unknown check '{other}'"))),
                }));
            }
        }
    }
}

/// Runs the selected checks (all of them when `only` is `None`) and returns
/// the reports sorted by check name, then split, then representation.
pub fn run_checks(def: &Definition, only: Option<&[String]>, opts: &CheckOptions) -> Result<Vec<CheckReport>> {
    let selected: Vec<&str> = match only {
        Some(names) => {
            for n in names {
                if !CHECK_NAMES.contains(&n.as_str()) {
                    return Err(Error::Argument(format!("unknown check '{n}'")));
                }
            }
            CHECK_NAMES.iter().copied().filter(|c| names.iter().any(|n| n == c)).collect()
        }
        None => CHECK_NAMES.to_vec(),
    };
    let ctx = context(def, opts)?;
    let mut out = Vec::new();
    for check in selected {
        run_one(&ctx, check, opts, &mut out);
    }
    out.sort_by(|a, b| (&a.check, &a.split, &a.representation).cmp(&(&b.check, &b.split, &b.representation)));
    Ok(out)
}

/// True iff no report failed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

pub fn render_text(reports: &[CheckReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let dims: Vec<String> = r.dims.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = write!(
            s,
            "{status} {:<18} {}/{}/{} [{}] {:.1} ms",
            r.check,
            r.algebra,
            r.split,
            r.representation,
            dims.join(" "),
            r.elapsed.as_secs_f64() * 1e3
        );
        if let Some(w) = &r.witness {
            let _ = write!(s, " :: {w}");
        }
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
struct Document<'a> {
    passed: bool,
    reports: &'a [CheckReport],
}

/// The machine-readable form: deterministic for fixed inputs (no timings).
pub fn render_json(reports: &[CheckReport]) -> String {
    serde_json::to_string_pretty(&Document { passed: all_passed(reports), reports }).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::catalog_entry;

    #[test]
    fn full_suite_on_the_smallest_entry() {
        let def = catalog_entry("abelian-p3").unwrap();
        let opts = CheckOptions { samples: 10, ..Default::default() };
        let reports = run_checks(&def, None, &opts).unwrap();
        for r in &reports {
            assert_eq!(r.status, Status::Pass, "{}", render_text(std::slice::from_ref(r)));
        }
        let checks: std::collections::BTreeSet<_> = reports.iter().map(|r| r.check.as_str()).collect();
        assert_eq!(checks.len(), CHECK_NAMES.len());
        let again = run_checks(&def, None, &opts).unwrap();
        assert_eq!(render_json(&reports), render_json(&again));
    }

    #[test]
    fn selection_is_validated() {
        assert!(parse_selection("phi, psi").is_ok());
        assert!(matches!(parse_selection("phi,nope"), Err(Error::Argument(_))));
        let def = catalog_entry("abelian-p3").unwrap();
        assert!(run_checks(&def, Some(&["bogus".into()]), &CheckOptions::default()).is_err());
    }

    #[test]
    fn negative_control_fails_where_strad_is_nonzero() {
        let def = catalog_entry("sl2-p3").unwrap();
        let opts = CheckOptions { negative_control: true, ..Default::default() };
        let reports = run_checks(&def, Some(&["omega-iso".into()]), &opts).unwrap();
        let borel = reports.iter().find(|r| r.split == "borel").unwrap();
        assert_eq!(borel.status, Status::Fail);
        assert!(borel.witness.is_some());
        let zero = reports.iter().find(|r| r.split == "zero").unwrap();
        assert_eq!(zero.status, Status::Pass);
    }
}

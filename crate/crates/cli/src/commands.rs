use std::path::{Path, PathBuf};

use diffcalc_core::derham::{de_rham_of, CohomologyReport};
use diffcalc_core::hopf::{bicovariance_with, check_hopf_module, universal_coactions};
use diffcalc_core::io::{AlgebraFile, CalculusFile, MorphismFile, RelationsFile};
use diffcalc_core::kahler::kahler_from_universal;
use diffcalc_core::prolong::{maximal_prolongation_from, universal_prolongation, GradedCalculus};
use diffcalc_core::scalars::{calc_pullback, calc_pushforward};
use diffcalc_core::{
    de_rham_comparison, Algebra, Error, Field, FieldSpec, FirstOrderCalculus, PrimeField, Rationals, Result,
    UniversalCalculus,
};
use serde_json::{json, Value};

use crate::render::{columns, matrix, object, report, violations_text};

/// Default bound on the projected dimension of a single component.
pub const DEFAULT_MAX_DIM: u128 = 1_000_000;

#[derive(Clone, Debug)]
pub enum CalculusChoice {
    Universal,
    Kahler,
    Quotient(PathBuf),
}

impl std::str::FromStr for CalculusChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "universal" => Ok(Self::Universal),
            "kahler" => Ok(Self::Kahler),
            _ => match s.strip_prefix("quotient:") {
                Some(p) if !p.is_empty() => Ok(Self::Quotient(PathBuf::from(p))),
                _ => Err(format!("expected universal, kahler or quotient:<file>, got {s:?}")),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub enum Command {
    Check { file: PathBuf },
    Universal { file: PathBuf },
    Kahler { file: PathBuf },
    Prolong { file: PathBuf, calculus: CalculusChoice, max_degree: usize, force: bool, matrices: bool },
    Cohomology { file: PathBuf, kahler: bool, max_degree: usize, force: bool },
    Compare { file: PathBuf, max_degree: usize, force: bool },
    Extend { map: PathBuf, calculus: PathBuf },
    Restrict { map: PathBuf, calculus: PathBuf },
    HopfCheck { file: PathBuf },
    Bicovariant { file: PathBuf, relations: PathBuf },
}

/// A rendered result; `ok = false` means the input failed a check.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn new(json: Value) -> Self {
        let text = crate::render::text(&json);
        Self { json, text, ok: true }
    }
}

pub fn run(cmd: &Command) -> Result<Output> {
    let spec = match cmd {
        Command::Extend { map, .. } | Command::Restrict { map, .. } => MorphismFile::load(map)?.field(),
        Command::Check { file }
        | Command::Universal { file }
        | Command::Kahler { file }
        | Command::Prolong { file, .. }
        | Command::Cohomology { file, .. }
        | Command::Compare { file, .. }
        | Command::HopfCheck { file }
        | Command::Bicovariant { file, .. } => AlgebraFile::load(file)?.field,
    };
    match spec {
        FieldSpec::Rationals => run_over(&Rationals, cmd),
        FieldSpec::PrimeField(p) => run_over(&PrimeField::new(p)?, cmd),
    }
}

fn run_over<F: Field>(f: &F, cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Check { file } => check(f, file),
        Command::Universal { file } => universal(f, file),
        Command::Kahler { file } => kahler(f, file),
        Command::Prolong { file, calculus, max_degree, force, matrices } => {
            let a = AlgebraFile::load(file)?.algebra(f)?;
            guard(&a, *max_degree, *force)?;
            let g = prolongation(&a, calculus, *max_degree)?;
            prolong_output(&g, calculus, *matrices)
        }
        Command::Cohomology { file, kahler, max_degree, force } => {
            let a = AlgebraFile::load(file)?.algebra(f)?;
            guard(&a, *max_degree, *force)?;
            let choice = if *kahler { CalculusChoice::Kahler } else { CalculusChoice::Universal };
            let r = de_rham_of(prolongation(&a, &choice, *max_degree)?);
            let flavor = if *kahler { "kahler" } else { "universal" };
            Ok(Output::new(object(vec![
                ("command", json!("cohomology")),
                ("flavor", json!(flavor)),
                ("max_degree", json!(max_degree)),
                ("degrees", degrees(&r.cohomology)),
            ])))
        }
        Command::Compare { file, max_degree, force } => {
            let a = AlgebraFile::load(file)?.algebra(f)?;
            guard(&a, *max_degree, *force)?;
            let c = de_rham_comparison(&a, *max_degree)?;
            Ok(Output::new(object(vec![
                ("command", json!("compare")),
                ("max_degree", json!(max_degree)),
                ("degrees", degrees(&c.universal.cohomology)),
                ("kahler_degrees", degrees(&c.kahler.cohomology)),
                ("comparison", Value::Array(c.maps.iter().map(matrix).collect())),
            ])))
        }
        Command::Extend { map, calculus } => transport(f, map, calculus, true),
        Command::Restrict { map, calculus } => transport(f, map, calculus, false),
        Command::HopfCheck { file } => hopf_check(f, file),
        Command::Bicovariant { file, relations } => bicovariant(f, file, relations),
    }
}

fn check<F: Field>(f: &F, file: &Path) -> Result<Output> {
    let a = AlgebraFile::load(file)?.algebra_unchecked(f)?;
    let r = a.check();
    let json = object(vec![
        ("command", json!("check")),
        ("dim", json!(a.dim())),
        ("field", json!(f.spec().to_string())),
        ("valid", json!(r.is_ok())),
        ("violations", report(&r)),
    ]);
    Ok(Output { json, text: violations_text(&r), ok: r.is_ok() })
}

fn universal<F: Field>(f: &F, file: &Path) -> Result<Output> {
    let a = AlgebraFile::load(file)?.algebra(f)?;
    let u = UniversalCalculus::new(&a)?;
    let split = u.split_identity() == diffcalc_core::Mat::identity(f, u.dim()).neg();
    Ok(Output::new(object(vec![
        ("command", json!("universal")),
        ("algebra_dim", json!(a.dim())),
        ("dim", json!(u.dim())),
        ("kernel_basis", columns(&u.iota)),
        ("d", matrix(u.calc.d())),
        ("split_identity", json!(split)),
    ])))
}

fn kahler<F: Field>(f: &F, file: &Path) -> Result<Output> {
    let a = AlgebraFile::load(file)?.algebra(f)?;
    let u = UniversalCalculus::new(&a)?;
    let k = kahler_from_universal(&u)?;
    Ok(Output::new(object(vec![
        ("command", json!("kahler")),
        ("dim", json!(k.calc.dim())),
        ("relations", columns(&k.relations)),
        ("d", matrix(k.calc.d())),
        ("projection", matrix(&k.projection)),
    ])))
}

fn max_dim() -> u128 {
    std::env::var("OMEGA_MAX_DIM")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

/// Refuses degrees whose universal component `n₀(n₀−1)ᴺ` exceeds the bound.
fn guard<F: Field>(a: &Algebra<F>, n: usize, force: bool) -> Result<()> {
    let n0 = a.dim() as u128;
    let projected = (0..n).try_fold(n0, |acc, _| acc.checked_mul(n0.saturating_sub(1)));
    let limit = max_dim();
    match projected {
        Some(p) if p <= limit => Ok(()),
        _ if force => Ok(()),
        p => Err(Error::Precondition(format!(
            "degree {n} component would have dimension {}, above the limit {limit}; pass --force or set OMEGA_MAX_DIM",
            p.map_or("beyond u128".to_string(), |p| p.to_string())
        ))),
    }
}

fn prolongation<F: Field>(a: &Algebra<F>, choice: &CalculusChoice, n: usize) -> Result<GradedCalculus<F>> {
    let up = universal_prolongation(a, n)?;
    let c = match choice {
        CalculusChoice::Universal => return Ok(up.calc),
        CalculusChoice::Kahler => kahler_from_universal(&up.universal)?.calc,
        CalculusChoice::Quotient(path) => {
            let gens = RelationsFile::load(path)?.matrix(a.field(), up.universal.dim())?;
            let rel = up.universal.calc.omega().generated(&gens)?.inclusion;
            up.universal.calc.quotient(&rel)?.calc
        }
    };
    Ok(maximal_prolongation_from(&up, &c)?.calc)
}

fn prolong_output<F: Field>(g: &GradedCalculus<F>, choice: &CalculusChoice, matrices: bool) -> Result<Output> {
    let r = g.check();
    let name = match choice {
        CalculusChoice::Universal => "universal".to_string(),
        CalculusChoice::Kahler => "kahler".to_string(),
        CalculusChoice::Quotient(p) => format!("quotient:{}", p.display()),
    };
    let mut pairs = vec![
        ("command", json!("prolong")),
        ("calculus", json!(name)),
        ("max_degree", json!(g.max_degree())),
        ("dims", json!(g.dims())),
        ("valid", json!(r.is_ok())),
        ("violations", report(&r)),
    ];
    if matrices {
        let top = g.max_degree();
        let diffs = (0..top).map(|n| matrix(g.diff(n))).collect();
        let mut wedges = Vec::new();
        for i in 0..=top {
            for j in 0..=top - i {
                wedges.push(json!({ "i": i, "j": j, "matrix": matrix(g.wedge(i, j)) }));
            }
        }
        pairs.push(("diff", Value::Array(diffs)));
        pairs.push(("wedge", Value::Array(wedges)));
    }
    Ok(Output { ok: r.is_ok(), ..Output::new(object(pairs)) })
}

fn degrees<F: Field>(h: &CohomologyReport<F>) -> Value {
    Value::Array(
        h.degrees
            .iter()
            .map(|d| {
                json!({
                    "n": d.n,
                    "dim_omega": d.dim_omega,
                    "dim_H": d.dim_h,
                    "boundary_rank": d.boundary_rank,
                    "representatives": columns(&d.representatives),
                })
            })
            .collect(),
    )
}

fn calculus_json<F: Field>(c: &FirstOrderCalculus<F>) -> Value {
    json!({
        "dim": c.dim(),
        "d": matrix(c.d()),
        "classification": c.check().classification.as_str(),
    })
}

fn transport<F: Field>(f: &F, map: &Path, calculus: &Path, push: bool) -> Result<Output> {
    let m = MorphismFile::load(map)?.map(f)?;
    let file = CalculusFile::load(calculus)?;
    if file.field() != f.spec() {
        return Err(Error::FieldMismatch(file.field().to_string(), f.spec().to_string()));
    }
    let c = file.calculus(f)?;
    let t = if push { calc_pushforward(&m, &c)? } else { calc_pullback(&m, &c)? };
    let fodc = t.calc.check().classification == diffcalc_core::fodc::Classification::Fodc;
    let json = object(vec![
        ("command", json!(if push { "extend" } else { "restrict" })),
        ("input", calculus_json(&c)),
        ("result", calculus_json(&t.calc)),
        ("relations", columns(&t.relations)),
        ("is_fodc", json!(fodc)),
    ]);
    Ok(Output { ok: fodc, ..Output::new(json) })
}

fn hopf_check<F: Field>(f: &F, file: &Path) -> Result<Output> {
    let h = AlgebraFile::load(file)?.bimonoid_unchecked(f)?;
    let r = h.check();
    let mut pairs = vec![
        ("command", json!("hopf-check")),
        ("bimonoid_valid", json!(r.is_ok())),
        ("bimonoid_violations", report(&r)),
    ];
    let mut ok = r.is_ok();
    if ok {
        let uc = universal_coactions(&h)?;
        let mr = check_hopf_module(&h, &uc.module)?;
        let (dl, dr) = uc.d_is_comodule_map();
        ok = mr.is_ok() && dl && dr;
        pairs.push(("hopf_module_valid", json!(mr.is_ok())));
        pairs.push(("hopf_module_violations", report(&mr)));
        pairs.push(("d_left_comodule_map", json!(dl)));
        pairs.push(("d_right_comodule_map", json!(dr)));
    }
    Ok(Output { ok, ..Output::new(object(pairs)) })
}

fn bicovariant<F: Field>(f: &F, file: &Path, relations: &Path) -> Result<Output> {
    let h = AlgebraFile::load(file)?.bimonoid_unchecked(f)?;
    let uc = universal_coactions(&h)?;
    let gens = RelationsFile::load(relations)?.matrix(f, uc.universal.dim())?;
    let rel = uc.universal.calc.omega().generated(&gens)?.inclusion;
    let c = uc.universal.calc.quotient(&rel)?.calc;
    let b = bicovariance_with(&uc, &c)?;
    let quotient_ok = b.quotient_report.as_ref().is_none_or(|r| r.is_ok());
    let mut pairs = vec![
        ("command", json!("bicovariant")),
        ("bicovariant", json!(b.bicovariant)),
        ("dim", json!(c.dim())),
        ("relations", columns(&b.relations)),
        ("left_witness", json!(b.left_witness)),
        ("right_witness", json!(b.right_witness)),
    ];
    if let Some(r) = &b.quotient_report {
        pairs.push(("quotient_violations", report(r)));
    }
    Ok(Output { ok: quotient_ok, ..Output::new(object(pairs)) })
}

//! Command-line front end: requests, dispatch and output documents.

pub mod dsl;

use std::fmt::Write as _;

use covercalc::ends::{
    almost_invariant_rank, ends_estimate, swarup_kernel_test, AiFunction, GroupSpec,
};
use covercalc::finite_cover::{cover_type, mod_n_hom, CoverResult};
use covercalc::forge::{
    characteristic_constraint, classify_mod_n_cover_infinite, classify_uac, everything_covers_chain,
    evidence_consistent, uac_approximation_evidence, ChainTarget,
};
use covercalc::group::{fold_core_graph, Alphabet, CoreGraph, FiniteQuotientHom, Index, Perm, Word};
use covercalc::model::{build_named, classify_named, to_dot};
use covercalc::surface::FiniteSurface;
use covercalc::tree::{FreeProductAction, DEFAULT_TREE_RADIUS};
use covercalc::{Error, Limits};
use serde_json::{json, Value};
use thiserror::Error;

pub use dsl::{emit, parse_dsl, AiLiteral, HomSpec, ParseError, Statement, SurfaceSpec};

pub const SCHEMA: &str = "covercalc/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    ClassifyCover,
    Uac,
    ModN,
    Chain,
    Build,
    Ends,
    Ai,
    Tree,
    Fold,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::ClassifyCover => "classify-cover",
            Command::Uac => "uac",
            Command::ModN => "mod-n",
            Command::Chain => "chain",
            Command::Build => "build",
            Command::Ends => "ends",
            Command::Ai => "ai",
            Command::Tree => "tree",
            Command::Fold => "fold",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Options {
    pub radius: Option<u32>,
    /// Moduli for homology-cover evidence.
    pub ns: Vec<u64>,
    /// Force the regular cover for a permutation target.
    pub regular: bool,
    /// Run Serre's criterion on the subgroup generators.
    pub serre: bool,
    /// Ambient free rank for `fold`.
    pub rank: Option<usize>,
    pub limits: Limits,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub command: Command,
    pub format: Format,
    pub statements: Vec<Statement>,
    pub options: Options,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("usage: {0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Core(Error::Resource(_)) => 3,
            CliError::Core(Error::Consistency(_)) => 1,
            CliError::Core(_) => 2,
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

impl Request {
    fn surfaces(&self) -> Vec<&SurfaceSpec> {
        self.statements
            .iter()
            .filter_map(|s| match s {
                Statement::Surface(x) => Some(x),
                _ => None,
            })
            .collect()
    }

    fn surface(&self) -> Result<&SurfaceSpec, CliError> {
        match self.surfaces().as_slice() {
            [s] => Ok(s),
            [] => usage(format!("`{}` needs a surface", self.command.name())),
            _ => usage(format!("`{}` takes one surface", self.command.name())),
        }
    }

    fn hom(&self) -> Option<&HomSpec> {
        self.statements.iter().find_map(|s| match s {
            Statement::Hom(h) => Some(h),
            _ => None,
        })
    }

    fn group(&self) -> Result<&GroupSpec, CliError> {
        self.statements
            .iter()
            .find_map(|s| match s {
                Statement::Group(g) => Some(g),
                _ => None,
            })
            .map_or_else(|| usage(format!("`{}` needs a group", self.command.name())), Ok)
    }

    fn subgroup(&self) -> Option<&[Word]> {
        self.statements.iter().find_map(|s| match s {
            Statement::Subgroup(w) => Some(w.as_slice()),
            _ => None,
        })
    }

    fn aifn(&self) -> Option<&AiLiteral> {
        self.statements.iter().find_map(|s| match s {
            Statement::Aifn(a) => Some(a),
            _ => None,
        })
    }
}

fn finite_of(spec: &SurfaceSpec, what: &str) -> Result<FiniteSurface, CliError> {
    spec.finite()
        .map_or_else(|| usage(format!("{what} must be a finite-type surface")), Ok)
}

fn generator_index(s: &FiniteSurface, name: &str) -> Result<usize, CliError> {
    let alphabet = s.alphabet();
    match alphabet.index_of(name) {
        Some(i) if (i as usize) <= s.generator_count() => Ok(i as usize - 1),
        _ => Err(Error::Input(format!("`{name}` is not a standard generator of {s}")).into()),
    }
}

fn keyed_images<T: Clone>(s: &FiniteSurface, images: &[(String, T)]) -> Result<Vec<T>, CliError> {
    let k = s.generator_count();
    let mut out: Vec<Option<T>> = vec![None; k];
    for (name, img) in images {
        out[generator_index(s, name)?] = Some(img.clone());
    }
    out.into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                Error::Input(format!("no image given for `{}` (rank mismatch)", s.alphabet().name(i as u32 + 1)))
                    .into()
            })
        })
        .collect()
}

/// The homomorphism a `hom` statement describes on the standard generators of `s`.
pub fn build_hom(s: &FiniteSurface, h: &HomSpec) -> Result<(FiniteQuotientHom, bool), CliError> {
    Ok(match h {
        HomSpec::ModN(n) => (mod_n_hom(s, *n)?, true),
        HomSpec::Abelian { modulus, rank, images } => {
            if *modulus < 2 {
                return Err(Error::Input("modulus must be at least 2".into()).into());
            }
            let imgs = keyed_images(s, images)?;
            (FiniteQuotientHom::abelian(vec![*modulus; *rank as usize], imgs)?, true)
        }
        HomSpec::Permutation { degree, images } => {
            let imgs = keyed_images(s, images)?
                .iter()
                .map(|v| Perm::from_one_based(v))
                .collect::<covercalc::Result<Vec<_>>>()?;
            (FiniteQuotientHom::permutation(*degree as usize, imgs)?, false)
        }
    })
}

fn cover_json(r: &CoverResult) -> Value {
    json!({
        "degree": r.degree,
        "cover": r.cover,
        "euler_characteristic": r.cover.euler_characteristic(),
        "peripheral_lifts": r.peripheral_lifts,
    })
}

fn word_text(w: &Word) -> String {
    w.display(&Alphabet::Indexed).to_string()
}

/// A finished command: the structured result and a plain-text rendering.
struct Output {
    value: Value,
    text: String,
    dot: Option<String>,
}

fn classify_cover(req: &Request) -> Result<Output, CliError> {
    let s = finite_of(req.surface()?, "the base")?;
    let Some(h) = req.hom() else { return usage("`classify-cover` needs a hom") };
    let (hom, regular) = build_hom(&s, h)?;
    let r = cover_type(&s, &hom, regular || req.options.regular, &req.options.limits)?;
    Ok(Output {
        text: format!("degree {} cover of {s}: {}\n", r.degree, r.cover),
        value: {
            let mut v = cover_json(&r);
            v["base"] = json!(s);
            v
        },
        dot: None,
    })
}

fn uac(req: &Request) -> Result<Output, CliError> {
    let spec = req.surface()?;
    let named = spec.named();
    let out = classify_uac(&named);
    let mut value = json!({
        "surface": named,
        "uac": out,
        "characteristic_constraint": characteristic_constraint(&out),
    });
    let mut text = format!("universal abelian cover of {named}: {out}\n");
    if let Some(f) = spec.finite().filter(|f| f.has_nonabelian_pi1()) {
        let ns = if req.options.ns.is_empty() { vec![2, 3] } else { req.options.ns.clone() };
        let ev = uac_approximation_evidence(&f, &ns, &req.options.limits)?;
        let consistent = evidence_consistent(out, &ns, &ev);
        let items: Vec<Value> = ns
            .iter()
            .zip(&ev)
            .map(|(n, r)| {
                let _ = writeln!(text, "  n = {n}: {}", r.cover);
                json!({ "n": n, "result": cover_json(r) })
            })
            .collect();
        let _ = writeln!(text, "  evidence consistent: {consistent}");
        value["evidence"] = Value::Array(items);
        value["consistent"] = json!(consistent);
    }
    Ok(Output { value, text, dot: None })
}

fn mod_n(req: &Request) -> Result<Output, CliError> {
    let spec = req.surface()?;
    let n = match req.hom() {
        Some(HomSpec::ModN(n)) => *n,
        Some(_) => return usage("`mod-n` takes `hom mod-n <n>`"),
        None => return usage("`mod-n` needs n"),
    };
    if let Some(f) = spec.finite() {
        let r = cover_type(&f, &mod_n_hom(&f, n)?, true, &req.options.limits)?;
        return Ok(Output {
            text: format!("mod-{n} homology cover of {f}: {} (degree {})\n", r.cover, r.degree),
            value: json!({ "surface": f, "n": n, "result": cover_json(&r) }),
            dot: None,
        });
    }
    let named = spec.named();
    let g = build_named(named)?;
    let out = classify_mod_n_cover_infinite(&g, n, &req.options.limits)?;
    Ok(Output {
        text: format!("mod-{n} homology cover of {named}: {out}\n"),
        value: json!({
            "surface": named,
            "n": n,
            "cover": out,
            "characteristic_constraint": characteristic_constraint(&out),
        }),
        dot: None,
    })
}

fn chain(req: &Request) -> Result<Output, CliError> {
    let [source, target] = req.surfaces()[..] else {
        return usage("`chain` takes a source surface and a target surface");
    };
    let target = match target.finite() {
        Some(f) => ChainTarget::Finite(f),
        None => ChainTarget::Graph(build_named(target.named())?),
    };
    let c = everything_covers_chain(&source.named(), &target, &req.options.limits)?;
    let mut text = format!("{} covers {}\n", c.source, c.target);
    for step in c.steps.iter().rev() {
        let _ = writeln!(
            text,
            "  {} -> {} [{:?}] {}",
            step.source,
            step.target,
            step.kind,
            if step.ok { "ok" } else { "FAILED" }
        );
    }
    Ok(Output {
        text,
        value: json!({ "chain": c, "composes": c.composes(), "all_ok": c.all_ok() }),
        dot: None,
    })
}

fn build(req: &Request) -> Result<Output, CliError> {
    let named = req.surface()?.named();
    if !named.is_infinite_type() {
        return usage("`build` models infinite-type surfaces; use flute, lnm, slnm, cantor or bct");
    }
    let g = build_named(named)?;
    let r = req.options.radius.unwrap_or(3);
    let c = classify_named(&g, r, &req.options.limits)?;
    let dot = to_dot(&g, r, &req.options.limits, None)?;
    Ok(Output {
        text: format!(
            "{named}: classified as {} at radius {r}\n",
            c.surface.map_or_else(|| "unrecognized".to_string(), |s| s.to_string())
        ),
        value: json!({ "surface": named, "model": g, "classification": c }),
        dot: Some(dot),
    })
}

fn ends(req: &Request) -> Result<Output, CliError> {
    let g = req.group()?;
    let r = req.options.radius.unwrap_or(2);
    let est = ends_estimate(g, r, 3 * r, &req.options.limits)?;
    let mut value = json!({ "group": g.to_string(), "estimate": est,
        "count": est.count, "stabilized": est.stabilized, "diverging": est.diverging });
    let mut text = if est.stabilized {
        format!("{g}: {} ends (stable at radius {r})\n", est.count)
    } else if est.diverging {
        format!("{g}: at least {} ends at radius {r}, diverging\n", est.next_count)
    } else {
        format!("{g}: {} then {} components, not stabilized\n", est.count, est.next_count)
    };
    if est.stabilized {
        let rank = almost_invariant_rank(g, r, &req.options.limits)?;
        let _ = writeln!(text, "  rank of H^1(G, ZG) truncation: {}", rank.rank);
        value["rank"] = json!(rank.rank);
    }
    Ok(Output { value, text, dot: None })
}

fn ai(req: &Request) -> Result<Output, CliError> {
    let g = req.group()?;
    let Some(lit) = req.aifn() else { return usage("`ai` needs an aifn") };
    let elems = lit
        .values
        .iter()
        .map(|(w, v)| Ok((g.eval(w)?, *v)))
        .collect::<covercalc::Result<Vec<_>>>()?;
    let longest = elems.iter().map(|(e, _)| g.length(e)).max().unwrap_or(0) as u32;
    let radius = lit.radius.unwrap_or(longest.max(1));
    let x = AiFunction::new(g.clone(), radius, lit.default, elems)?;
    let limits = &req.options.limits;
    let boundary: Vec<String> = x.boundary_of(limits)?.iter().map(|e| word_text(&g.to_word(e))).collect();
    let cob = x.is_coboundary(limits)?;
    let mut text = format!("boundary: {{{}}}\ncoboundary: {cob}\n", boundary.join(", "));
    let mut value = json!({ "group": g.to_string(), "radius": radius, "boundary": boundary, "coboundary": cob });
    if let Some(h) = req.subgroup() {
        let m = h.iter().map(|w| g.eval(w).map(|e| g.length(&e))).collect::<covercalc::Result<Vec<_>>>()?;
        let m = m.into_iter().max().unwrap_or(0) as u32;
        let r = req.options.radius.unwrap_or(2 * radius + 2 * m + 2);
        let ok = swarup_kernel_test(&x, h, r, limits)?;
        let _ = writeln!(text, "constant on cosets away from a finite set: {ok}");
        value["swarup"] = json!({ "radius": r, "subgroup": h.iter().map(word_text).collect::<Vec<_>>(), "holds": ok });
    }
    Ok(Output { value, text, dot: None })
}

fn tree(req: &Request) -> Result<Output, CliError> {
    let factors = match req.group()? {
        GroupSpec::FreeProduct { factors } => factors.clone(),
        GroupSpec::FreeGroup { rank: 2 } => vec![0, 0],
        other => return usage(format!("`tree` needs a free product of two cyclic groups, got {other}")),
    };
    let action = FreeProductAction::new(&factors)?;
    let words = req.subgroup().unwrap_or(&[]);
    let r = req.options.radius.unwrap_or(DEFAULT_TREE_RADIUS);
    let mut text = String::new();
    let mut items = Vec::new();
    for w in words {
        let iso = action.classify_isometry(w)?;
        let fixed = action.fixed_subtree(w, r)?;
        let _ = writeln!(
            text,
            "{}: {}",
            word_text(w),
            match &iso {
                covercalc::tree::Isometry::Elliptic { vertex, .. } => format!("elliptic, fixes {vertex}"),
                covercalc::tree::Isometry::Hyperbolic { translation_length, .. } =>
                    format!("hyperbolic, translation length {translation_length}"),
            }
        );
        let fixed_list: Vec<String> = if fixed.everything {
            vec!["*".into()]
        } else {
            fixed.vertices.iter().map(|v| v.to_string()).collect()
        };
        items.push(json!({ "word": word_text(w), "isometry": iso, "fixed": fixed_list }));
    }
    let mut value = json!({ "factors": factors, "words": items });
    if req.options.serre {
        if words.is_empty() {
            return usage("Serre's criterion needs generators");
        }
        let out = action.serre_criterion(words)?;
        let _ = writeln!(text, "serre: {out:?}");
        value["serre"] = json!(out);
    }
    let dot = action.to_dot(req.options.radius.unwrap_or(3), words.first())?;
    Ok(Output { value, text, dot: Some(dot) })
}

fn core_graph_dot(g: &CoreGraph) -> String {
    let mut out = String::from("digraph core {\n  node [shape=circle];\n  n0 [style=filled, fillcolor=gold];\n");
    for v in 1..g.vertex_count {
        let _ = writeln!(out, "  n{v};");
    }
    for &(a, l, b) in &g.edges {
        let _ = writeln!(out, "  n{a} -> n{b} [label=\"{}\"];", Alphabet::Indexed.name(l));
    }
    out.push_str("}\n");
    out
}

fn fold(req: &Request) -> Result<Output, CliError> {
    let Some(gens) = req.subgroup() else { return usage("`fold` needs subgroup generators") };
    let needed = gens.iter().map(|w| w.max_index() as usize).max().unwrap_or(0).max(1);
    let rank = req.options.rank.unwrap_or(needed);
    if rank < needed {
        return Err(Error::Input(format!("generators use {needed} letters but the ambient rank is {rank}")).into());
    }
    let (graph, report) = fold_core_graph(gens, rank);
    let index = match report.index {
        Index::Finite(k) => json!(k),
        Index::Infinite => json!("infinite"),
    };
    let schreier = match report.index {
        Index::Finite(k) => Some(report.rank as i64 - 1 == k as i64 * (rank as i64 - 1)),
        Index::Infinite => None,
    };
    let basis: Vec<String> = report.free_basis.iter().map(word_text).collect();
    Ok(Output {
        text: format!("rank {}, index {index}\nfree basis: {}\n", report.rank, basis.join(", ")),
        value: json!({
            "ambient_rank": rank,
            "rank": report.rank,
            "index": index,
            "free_basis": basis,
            "nielsen_schreier": schreier,
            "core_graph": graph,
        }),
        dot: Some(core_graph_dot(&graph)),
    })
}

/// Runs a request and renders its output document.
pub fn run(req: &Request) -> Result<String, CliError> {
    let out = match req.command {
        Command::ClassifyCover => classify_cover(req),
        Command::Uac => uac(req),
        Command::ModN => mod_n(req),
        Command::Chain => chain(req),
        Command::Build => build(req),
        Command::Ends => ends(req),
        Command::Ai => ai(req),
        Command::Tree => tree(req),
        Command::Fold => fold(req),
    }?;
    match req.format {
        Format::Json => {
            let doc = json!({ "schema": SCHEMA, "command": req.command.name(), "result": out.value });
            Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
        }
        Format::Text => Ok(out.text),
        Format::Dot => out
            .dot
            .map_or_else(|| usage(format!("`{}` has no DOT output", req.command.name())), Ok),
    }
}

//! Command-line front end: argument parsing, embedding ingestion, and reports.

use crate::cones;
use crate::embed::{EmbeddingDatum, EmbeddingSpec};
use crate::error::{Error, Result};
use crate::liealg::RankOracle;
use crate::oracle;
use crate::popov::Context;
use crate::reproduce::{self, Settings, Status};
use crate::rootcore::{Isogeny, RootDatum};
use crate::strat;
use std::io::Write;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;

#[derive(Parser, Debug)]
#[command(name = "flagcone", version, about = "Unstable loci and ample cones for subgroups acting on G/B")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: RunConfig,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Ample-cone membership with the signed tree and an invariant-theory cross-check
    Ample,
    /// H-representations of C_1..C_k and the movable-chamber verdict
    Cones,
    /// Chamber graph with codimensions, walls and the no-jump audit
    Chambers,
    /// Stratifying pairs of the unstable locus
    Strata,
    /// Fit pairs for every maximal one-parameter subgroup
    FitPairs,
    /// Chambers of the hyperplane arrangement for the maximal torus only
    TChambers,
    /// Invariant dimensions and membership by brute force
    Oracle,
    /// Run the acceptance suite
    Reproduce,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// JSON embedding file, or a preset: diagonal:A2:3, principal:A2, identity:B2
    #[arg(long, global = true)]
    pub embedding: Option<String>,
    /// Comma-separated weight in fundamental coordinates of G
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Option<Vec<i64>>,
    #[arg(long, global = true, default_value_t = 2)]
    pub k: usize,
    #[arg(long, global = true, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_JMAX)]
    pub jmax: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = crate::embed::DEFAULT_WEYL_CAP)]
    pub cap_weyl: u64,
    #[arg(long, global = true, default_value_t = crate::liealg::DEFAULT_DIM_CAP)]
    pub cap_dim: usize,
}

/// Parses a preset such as `diagonal:A1:4` or reads a JSON [`EmbeddingSpec`] file.
pub fn load_embedding(arg: &str, cap_weyl: u64) -> Result<EmbeddingDatum> {
    let parts: Vec<&str> = arg.split(':').collect();
    let sc = |s: &str| RootDatum::parse(s, Isogeny::SimplyConnected);
    let e = match parts.as_slice() {
        ["diagonal", ty, k] => {
            let k = k
                .parse()
                .map_err(|_| Error::Validation(format!("bad copy count in {arg}")))?;
            EmbeddingDatum::diagonal(&sc(ty)?, k)?
        }
        ["principal", ty] => EmbeddingDatum::principal(sc(ty)?)?,
        ["identity", ty] => EmbeddingDatum::identity(sc(ty)?)?,
        _ => {
            let text = std::fs::read_to_string(arg)
                .map_err(|err| Error::Validation(format!("cannot read embedding {arg}: {err}")))?;
            let spec: EmbeddingSpec = serde_json::from_str(&text)
                .map_err(|err| Error::Validation(format!("embedding {arg} does not match the schema: {err}")))?;
            spec.build()?
        }
    };
    Ok(e.with_cap(cap_weyl))
}

/// A finished command: a JSON document plus its text rendering.
pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("reports serialize"),
            Format::Text => self.text.clone(),
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

impl RunConfig {
    fn embedding(&self) -> Result<EmbeddingDatum> {
        let arg = self
            .embedding
            .as_deref()
            .ok_or_else(|| Error::Validation("--embedding is required for this command".into()))?;
        load_embedding(arg, self.cap_weyl)
    }

    fn lambda(&self, e: &EmbeddingDatum) -> Result<Vec<i64>> {
        let lam = self
            .lambda
            .clone()
            .ok_or_else(|| Error::Validation("--lambda is required for this command".into()))?;
        if lam.len() != e.g.rank() {
            return Err(Error::Validation(format!(
                "--lambda has {} entries but G has rank {}",
                lam.len(),
                e.g.rank()
            )));
        }
        Ok(lam)
    }

    fn check_trials(&self) -> Result<()> {
        if self.trials < 3 {
            return Err(Error::Validation("--trials must be at least 3".into()));
        }
        Ok(())
    }
}

pub fn run(cmd: Command, cfg: &RunConfig) -> Result<Report> {
    match cmd {
        Command::Ample => cmd_ample(cfg),
        Command::Cones => cmd_cones(cfg),
        Command::Chambers => cmd_chambers(cfg),
        Command::Strata => cmd_strata(cfg),
        Command::FitPairs => cmd_fit_pairs(cfg),
        Command::TChambers => cmd_t_chambers(cfg),
        Command::Oracle => cmd_oracle(cfg),
        Command::Reproduce => Ok(cmd_reproduce(cfg)),
    }
}

pub fn cmd_ample(cfg: &RunConfig) -> Result<Report> {
    let e = cfg.embedding()?;
    let lam = cfg.lambda(&e)?;
    let mut cx = Context::new();
    let tree = cx.build_tree(&e, &lam)?;
    let ample = cx.is_ample(&e, &lam)?;
    let codim = strat::codim_unstable(&mut cx, &e, &lam)?;
    if ample != codim.is_some_and(|c| c >= 1) {
        return Err(crate::error::invariant(format!(
            "tree says ample = {ample} but the unstable locus has codimension {codim:?}"
        )));
    }
    let (cross, cross_text) = match oracle::membership(&e, &lam, cfg.jmax) {
        Ok(m) => {
            let agrees = m.is_positive() == ample;
            let text = format!("oracle: {:?} ({})", m.verdict, if agrees { "agrees" } else { "DISAGREES" });
            (json!({ "status": "ok", "agrees": agrees, "membership": m }), text)
        }
        Err(err @ Error::CapExceeded { .. }) => (
            json!({ "status": "skipped", "reason": err.to_string() }),
            format!("oracle: skipped ({err})"),
        ),
        Err(err) => return Err(err),
    };
    let json = json!({
        "command": "ample",
        "embedding": e.describe(),
        "lambda": lam,
        "basis": "signature of the Popov tree; codimension from the Kirwan-Ness strata",
        "ample": ample,
        "codim_unstable": codim,
        "tree": tree,
        "oracle": cross,
    });
    let codim_s = codim.map_or("none (every point semistable)".to_string(), |c| c.to_string());
    let text = format!(
        "{}  lambda = {lam:?}\nample: {ample}, codim(X^us) = {codim_s}\ntree root sign {:?}, {} children\n{cross_text}\n",
        e.describe(),
        tree.sign,
        tree.children.len()
    );
    Ok(Report { json, text })
}

pub fn cmd_cones(cfg: &RunConfig) -> Result<Report> {
    let e = cfg.embedding()?;
    cfg.check_trials()?;
    if cfg.k == 0 {
        return Err(Error::Validation("--k must be at least 1".into()));
    }
    let o = RankOracle::new(&e, cfg.cap_dim)?;
    let n = e.g.rank();
    let kmax = cfg.k.max(2);
    let mut cs = Vec::new();
    let mut text = format!("{}\n", e.describe());
    for k in 1..=kmax {
        let c = cones::ck_cone(&o, k, cfg.trials, cfg.seed)?;
        let _ = writeln!(
            text,
            "C_{k}: dim {} of {n}, {} functionals, interior point {:?}",
            c.dim,
            c.functionals.len(),
            c.interior_weight()
        );
        for (v, l) in c.functionals.iter().zip(&c.labels) {
            let _ = writeln!(text, "    lambda . {v:?} <= 0   [{l}]");
        }
        cs.push(c);
    }
    let nesting: Vec<Vec<usize>> = cs.windows(2).map(|w| cones::nesting_violations(&w[0], &w[1])).collect();
    let movable = cs[1].dim == n;
    let spherical = cs[1].dim == 0;
    let crit = cones::rho_criterion(&e)?;
    let mut cx = Context::new();
    let codim_rho = strat::codim_unstable(&mut cx, &e, &vec![1; n])?;
    let _ = writeln!(
        text,
        "movable chambers: {} (C_2 has dim {} of {n})\nC_2 = {{0}}: {spherical}\nrho criterion: {crit} (>= 2 forces movable chambers)\ncodim X^us(rho) = {codim_rho:?}",
        if movable { "exist" } else { "none" },
        cs[1].dim
    );
    let json = json!({
        "command": "cones",
        "embedding": e.describe(),
        "basis": "C_k cut out by fit pairs of length r - rhat - k + 1",
        "seed": cfg.seed,
        "trials": cfg.trials,
        "cones": cs.iter().take(cfg.k).map(to_value).collect::<Vec<_>>(),
        "c2": to_value(&cs[1]),
        "nesting_violations": nesting,
        "movable_chambers": movable,
        "c2_is_zero": spherical,
        "rho_criterion": crit.to_string(),
        "codim_unstable_rho": codim_rho,
    });
    Ok(Report { json, text })
}

pub fn cmd_chambers(cfg: &RunConfig) -> Result<Report> {
    let e = cfg.embedding()?;
    let mut cx = Context::new();
    let graph = cones::t_chambers(&mut cx, &e, cones::DEFAULT_HYPERPLANE_CAP)?;
    let audit = cones::no_jump_audit(&graph);
    let mut text = format!(
        "{}\n{} hyperplanes, {} chambers, {} facets, {} classes\n",
        e.describe(),
        graph.hyperplanes.len(),
        graph.chambers.len(),
        graph.facets.len(),
        graph.classes.len()
    );
    for (i, c) in graph.chambers.iter().enumerate() {
        let _ = writeln!(text, "  chamber {i}: sample {:?}, codim {:?}, class {}", c.sample, c.codim, c.class);
    }
    for f in &graph.facets {
        let _ = writeln!(
            text,
            "  facet {:?} on {:?}: codim {:?}, wall {}",
            f.chambers, graph.hyperplanes[f.hyperplane].normal, f.codim, f.g_wall
        );
    }
    let _ = writeln!(
        text,
        "no-jump audit: {} ({} adjacencies, {} closures)\nconvexity violations: {:?}",
        if audit.passed() { "pass" } else { "FAIL" },
        audit.adjacent_checked,
        audit.closure_checked,
        graph.convexity_violations
    );
    let json = json!({
        "command": "chambers",
        "embedding": e.describe(),
        "basis": "torus chambers merged across facets that are not walls",
        "graph": graph,
        "no_jump": audit,
    });
    Ok(Report { json, text })
}

pub fn cmd_t_chambers(cfg: &RunConfig) -> Result<Report> {
    let e = cfg.embedding()?;
    let arr = cones::t_arrangement(&e, cones::DEFAULT_HYPERPLANE_CAP)?;
    let mut text = format!("{}\n{} hyperplanes, {} chambers\n", e.describe(), arr.hyperplanes.len(), arr.chambers.len());
    for h in &arr.hyperplanes {
        let _ = writeln!(text, "  hyperplane {:?}  [{}]", h.normal, h.labels.join("; "));
    }
    for c in &arr.chambers {
        let _ = writeln!(text, "  chamber {:?}: sample {:?}, torus codim {:?}", c.signs, c.sample, c.t_codim);
    }
    let json = json!({
        "command": "t-chambers",
        "embedding": e.describe(),
        "basis": "hyperplanes lambda(w'^-1 xi') = 0 over maximal xi",
        "arrangement": arr,
    });
    Ok(Report { json, text })
}

pub fn cmd_strata(cfg: &RunConfig) -> Result<Report> {
    let e = cfg.embedding()?;
    let lam = cfg.lambda(&e)?;
    cfg.check_trials()?;
    let mut cx = Context::new();
    let (records, fit_note) = match RankOracle::new(&e, cfg.cap_dim) {
        Ok(o) => (strat::stratifying_pairs_with_fit(&mut cx, &o, &lam, cfg.trials, cfg.seed)?, None),
        Err(err @ Error::CapExceeded { .. }) => (strat::stratifying_pairs(&mut cx, &e, &lam)?, Some(err.to_string())),
        Err(err) => return Err(err),
    };
    let top = strat::top_strata(&e, &records);
    let codim = strat::codim_unstable(&mut cx, &e, &lam)?;
    let mut text = format!("{}  lambda = {lam:?}\ncodim(X^us) = {codim:?}\n", e.describe());
    for r in &records {
        let is_top = top.iter().any(|t| t.xi == r.xi && t.w == r.w);
        let _ = writeln!(
            text,
            "  xi {} w {:?} (w' {:?}): m = {}, dim {}, codim {}, fit {:?}{}",
            r.xi,
            r.w,
            r.w_prime,
            r.m,
            r.dim,
            r.codim,
            r.fit,
            if is_top { "  [component]" } else { "" }
        );
    }
    if let Some(note) = &fit_note {
        let _ = writeln!(text, "fitness not computed: {note}");
    }
    let json = json!({
        "command": "strata",
        "embedding": e.describe(),
        "lambda": lam,
        "basis": "stratifying pairs: restricted weight ample for the Levi subgroup",
        "seed": cfg.seed,
        "trials": cfg.trials,
        "codim_unstable": codim,
        "strata": records,
        "components": top,
        "fit_skipped": fit_note,
    });
    Ok(Report { json, text })
}

pub fn cmd_fit_pairs(cfg: &RunConfig) -> Result<Report> {
    let e = cfg.embedding()?;
    cfg.check_trials()?;
    let o = RankOracle::new(&e, cfg.cap_dim)?;
    let mut all = Vec::new();
    let mut text = format!("{}\n", e.describe());
    for levi in e.xi_max()? {
        for r in o.fit_pairs(&levi, cfg.trials, cfg.seed)? {
            let _ = writeln!(
                text,
                "  xi {} w {:?}: dim {} expected {} codim {} fit {} stabilized {}",
                r.xi, r.w, r.dim, r.expected, r.codim, r.fit, r.stabilized
            );
            all.push(r);
        }
    }
    let json = json!({
        "command": "fit-pairs",
        "embedding": e.describe(),
        "basis": "randomized tangent rank of the sweep",
        "seed": cfg.seed,
        "trials": cfg.trials,
        "pairs": all,
    });
    Ok(Report { json, text })
}

pub fn cmd_oracle(cfg: &RunConfig) -> Result<Report> {
    let e = cfg.embedding()?;
    let lam = cfg.lambda(&e)?;
    let dim = oracle::invariant_dim(&e, &lam)?;
    let m = oracle::membership(&e, &lam, cfg.jmax)?;
    let boundary = lam.contains(&0);
    let text = format!(
        "{}  lambda = {lam:?}\ndim V_lambda^Ghat = {dim}\nmembership: {:?}{}\n",
        e.describe(),
        m.verdict,
        if boundary { "\n(boundary weight: the tree criterion does not apply)" } else { "" }
    );
    let json = json!({
        "command": "oracle",
        "embedding": e.describe(),
        "lambda": lam,
        "basis": "restricted character and alternating sum over the Weyl group of Ghat",
        "invariant_dim": dim,
        "membership": m,
        "boundary": boundary,
    });
    Ok(Report { json, text })
}

pub fn cmd_reproduce(cfg: &RunConfig) -> Report {
    let st = Settings {
        trials: cfg.trials.max(3),
        seed: cfg.seed,
        j_max: cfg.jmax,
        cap_weyl: cfg.cap_weyl,
        cap_dim: cfg.cap_dim,
        ..Settings::default()
    };
    let results = reproduce::run_all(&st);
    let mut text = String::new();
    for r in &results {
        let tag = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let _ = writeln!(text, "{} {tag}  {}", r.id, r.title);
        for line in &r.detail {
            let _ = writeln!(text, "    {line}");
        }
    }
    let json = json!({ "command": "reproduce", "seed": st.seed, "trials": st.trials, "criteria": results });
    Report { json, text }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    match run(cli.command, &cli.opts) {
        Ok(report) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{}", report.render(cli.opts.format).trim_end());
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

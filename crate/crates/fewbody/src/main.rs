//! Thin command-line front end over the library. Every subcommand parses
//! arguments, calls one library entry point and prints or writes the result.

use clap::{Args, Parser, Subcommand};
use fewbody::atlas::{self, cache::RunCache, render, ScanConfig};
use fewbody::deduce::{Engine, Status};
use fewbody::fourbody::{self, vmc, ORE_BOUND, REFINED_BOUND};
use fewbody::systems::{canonicalize, ParticleSystem};
use fewbody::thresholds::lowest_threshold;
use fewbody::varsolve::{
    excess_binding_table, svm_optimize, ExcessBindingTable, SolverConfig, CERT_MARGIN_REL,
};
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "fewbody",
    about = "Stability of three- and four-body Coulomb systems",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide stability of one system with provenance
    Verdict(VerdictArgs),
    /// Run the variational solver on one system
    Solve(SolveArgs),
    /// Grid scans producing CSV/JSON/SVG maps
    #[command(subcommand)]
    Map(MapCommand),
    /// Four-body chains and bounds
    #[command(subcommand)]
    Fourbody(FourbodyCommand),
    /// Exploratory scans of the four-body conjecture
    #[command(subcommand)]
    Conjecture(ConjectureCommand),
    /// Build an axis excess-binding table with the solver
    Gtable(GtableArgs),
}

#[derive(Args)]
struct SystemArgs {
    /// System literal "m1:q1, m2:q2, m3:q3[, m4:q4]" with inf allowed
    #[arg(long, conflicts_with_all = ["masses", "charges"])]
    system: Option<String>,
    /// Comma-separated masses (electron-mass units; inf allowed)
    #[arg(long, requires = "charges")]
    masses: Option<String>,
    /// Comma-separated signed charges
    #[arg(long, requires = "masses")]
    charges: Option<String>,
}

impl SystemArgs {
    fn parse(&self) -> Result<ParticleSystem, String> {
        if let Some(lit) = &self.system {
            return ParticleSystem::from_str(lit).map_err(|e| e.to_string());
        }
        match (&self.masses, &self.charges) {
            (Some(m), Some(q)) => {
                let masses = parse_f64_list(m)?;
                let charges = parse_f64_list(q)?;
                ParticleSystem::from_masses(&masses, &charges).map_err(|e| e.to_string())
            }
            _ => Err("provide --system or --masses with --charges".into()),
        }
    }
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            if t.eq_ignore_ascii_case("inf") {
                Ok(f64::INFINITY)
            } else {
                t.parse::<f64>().map_err(|e| format!("bad number `{t}`: {e}"))
            }
        })
        .collect()
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 150)]
    max_basis: usize,
    #[arg(long, default_value_t = 25)]
    candidates: usize,
    /// Key-value config file overriding the flags above
    #[arg(long)]
    config: Option<PathBuf>,
}

impl SolverArgs {
    fn build(&self) -> Result<SolverConfig, String> {
        let mut cfg = SolverConfig::default()
            .with_seed(self.seed)
            .with_max_basis(self.max_basis)
            .with_candidates(self.candidates);
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
            apply_config_file(&mut cfg, &text)?;
        }
        Ok(cfg)
    }
}

/// Key-value solver configuration: one `key = value` pair per line, `#`
/// starts a comment. Keys: seed, max_basis, candidates_per_step, width_lo,
/// width_hi, overlap_cutoff, energy_tol.
fn apply_config_file(cfg: &mut SolverConfig, text: &str) -> Result<(), String> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let num = || value.parse::<f64>().map_err(|e| format!("line {}: {e}", lineno + 1));
        match key {
            "seed" => cfg.seed = num()? as u64,
            "max_basis" => cfg.max_basis = num()? as usize,
            "candidates_per_step" => cfg.candidates_per_step = num()? as usize,
            "width_lo" => cfg.width_range.0 = num()?,
            "width_hi" => cfg.width_range.1 = num()?,
            "overlap_cutoff" => cfg.overlap_cutoff = num()?,
            "energy_tol" => cfg.energy_tol = num()?,
            other => return Err(format!("line {}: unknown key `{other}`", lineno + 1)),
        }
    }
    Ok(())
}

#[derive(Args)]
struct VerdictArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// rules | variational | auto
    #[arg(long, default_value = "auto")]
    method: String,
    /// JSON file with a precomputed excess-binding table (see `gtable`)
    #[arg(long)]
    gtable: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
    /// Emit the verdict as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Append-only JSON-lines run cache
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum MapCommand {
    /// Scan the mass triangle at fixed charges
    Triangle(TriangleArgs),
    /// Scan the charge plane at fixed masses
    Charges(ChargesArgs),
}

#[derive(Args)]
struct TriangleArgs {
    #[arg(long, default_value_t = 1.0)]
    q2: f64,
    #[arg(long, default_value_t = 1.0)]
    q3: f64,
    /// Grid spacing h in [0.01, 0.25]
    #[arg(long, default_value_t = 0.05)]
    res: f64,
    /// CSV output path
    #[arg(long)]
    out: PathBuf,
    /// Optional SVG output path
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Optional JSON output path
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run the solver on nodes the rules leave unknown
    #[arg(long)]
    solver_fallback: bool,
    /// Cap on the number of solver nodes
    #[arg(long, default_value_t = 50)]
    solver_budget: usize,
    #[arg(long)]
    gtable: Option<PathBuf>,
    #[arg(long)]
    cache: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct ChargesArgs {
    /// Comma-separated masses m1,m2,m3 (inf allowed)
    #[arg(long)]
    masses: String,
    #[arg(long, default_value_t = 3.0)]
    qmax: f64,
    #[arg(long, default_value_t = 0.2)]
    res: f64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    solver_fallback: bool,
    #[arg(long, default_value_t = 50)]
    solver_budget: usize,
    #[arg(long)]
    cache: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Subcommand)]
enum FourbodyCommand {
    /// Concavity-chain certificate for A+B+C-C- masses
    Check(FourbodyCheckArgs),
    /// Monte Carlo scan of the exponential-cosh trial energy
    Vmc(VmcArgs),
}

#[derive(Args)]
struct FourbodyCheckArgs {
    /// Masses mA,mB,mC (the two C particles share the last mass; inf allowed)
    #[arg(long)]
    masses: String,
    /// Bound constant: 2.0168 or 2.06392
    #[arg(long, default_value_t = 2.0168)]
    constant: f64,
}

#[derive(Args)]
struct VmcArgs {
    /// Comma-separated beta values in [0, 1)
    #[arg(long, default_value = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
    betas: String,
    #[arg(long, default_value_t = 200_000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum ConjectureCommand {
    /// Sample random 2+2 systems and tally conjecture consistency
    Scan(ConjectureArgs),
}

#[derive(Args)]
struct ConjectureArgs {
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GtableArgs {
    /// Common charge magnitude q2 = q3
    #[arg(long, default_value_t = 1.0)]
    charge: f64,
    /// Comma-separated alpha1 grid nodes in (0, 1)
    #[arg(long)]
    nodes: String,
    /// Output JSON path
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
}

fn load_gtable(path: &PathBuf) -> Result<ExcessBindingTable, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn print_verdict(v: &fewbody::deduce::Verdict, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string_pretty(v).unwrap());
        return;
    }
    println!("status: {}", v.status);
    for rule in &v.provenance {
        println!("  via {}: {}", rule.rule, rule.citation);
    }
    if let Some(res) = &v.variational {
        println!(
            "  variational bound {:.6} (basis {}, seed {:?})",
            res.energy, res.basis_size, res.seed
        );
    }
    if let Some(thr) = v.threshold {
        println!("  threshold {thr:.6}");
    }
    if let Some(note) = &v.note {
        println!("  note: {note}");
    }
}

fn run() -> Result<(), String> {
    match Cli::parse().command {
        Command::Verdict(args) => {
            let sys = args.system.parse()?;
            let cfg = args.solver.build()?;
            let verdict = match sys.n() {
                3 => {
                    let mut engine = Engine::new();
                    if let Some(path) = &args.gtable {
                        engine = engine.with_gtable(load_gtable(path)?);
                    }
                    match args.method.as_str() {
                        "rules" => engine.evaluate_rules(&sys).map_err(|e| e.to_string())?,
                        "variational" => {
                            let canonical = canonicalize(&sys).map_err(|e| e.to_string())?.system;
                            let res = svm_optimize(&canonical, &cfg).map_err(|e| e.to_string())?;
                            let thr = lowest_threshold(&canonical).map_err(|e| e.to_string())?;
                            if res.energy <= thr.energy - CERT_MARGIN_REL * thr.energy.abs() {
                                fewbody::deduce::Verdict::numeric(res, thr.energy)
                            } else {
                                let mut v = fewbody::deduce::Verdict::unknown(
                                    "variational bound does not clear the certification margin",
                                );
                                v.variational = Some(res);
                                v.threshold = Some(thr.energy);
                                v
                            }
                        }
                        "auto" => {
                            let engine = engine.with_solver(cfg);
                            engine.evaluate_rules(&sys).map_err(|e| e.to_string())?
                        }
                        other => return Err(format!("unknown method `{other}`")),
                    }
                }
                4 => {
                    let solver = match args.method.as_str() {
                        "rules" => None,
                        _ => Some(&cfg),
                    };
                    fourbody::evaluate_fourbody(&sys, solver).map_err(|e| e.to_string())?
                }
                n => return Err(format!("unsupported particle count {n}")),
            };
            print_verdict(&verdict, args.json);
        }
        Command::Solve(args) => {
            let sys = args.system.parse()?;
            let canonical = canonicalize(&sys).map_err(|e| e.to_string())?.system;
            let cfg = args.solver.build()?;
            let res = if let Some(path) = &args.cache {
                let mut cache = RunCache::open(path).map_err(|e| e.to_string())?;
                if let Some(hit) = cache.get(&canonical, &cfg) {
                    hit
                } else {
                    let res = svm_optimize(&canonical, &cfg).map_err(|e| e.to_string())?;
                    cache.insert(&canonical, &cfg, &res).map_err(|e| e.to_string())?;
                    res
                }
            } else {
                svm_optimize(&canonical, &cfg).map_err(|e| e.to_string())?
            };
            let record = res.record(&canonical);
            if args.json {
                println!("{}", serde_json::to_string_pretty(&record).unwrap());
            } else {
                println!("energy {:.9} with {} basis functions (seed {})", res.energy, res.basis_size, cfg.seed);
                if let Ok(thr) = lowest_threshold(&canonical) {
                    println!("threshold {:.9} via {}", thr.energy, thr.partition);
                    let stable = res.energy <= thr.energy - CERT_MARGIN_REL * thr.energy.abs();
                    println!("numerically stable: {}", if stable { "yes" } else { "not shown" });
                }
            }
        }
        Command::Map(MapCommand::Triangle(args)) => {
            let cfg = ScanConfig {
                seed: args.solver.seed,
                solver: if args.solver_fallback { Some(args.solver.build()?) } else { None },
                solver_node_budget: args.solver_budget,
                gtable: match &args.gtable {
                    Some(p) => Some(load_gtable(p)?),
                    None => None,
                },
            };
            let mut cache = match &args.cache {
                Some(p) => Some(RunCache::open(p).map_err(|e| e.to_string())?),
                None => None,
            };
            let map = atlas::scan_triangle(args.q2, args.q3, args.res, &cfg, cache.as_mut())
                .map_err(|e| e.to_string())?;
            write_map_outputs(&map, &args.out, args.svg.as_ref(), args.json.as_ref())?;
        }
        Command::Map(MapCommand::Charges(args)) => {
            let masses = parse_f64_list(&args.masses)?;
            if masses.len() != 3 {
                return Err("charge-plane scans need exactly 3 masses".into());
            }
            let x: Vec<f64> =
                masses.iter().map(|&m| if m.is_infinite() { 0.0 } else { 1.0 / m }).collect();
            let cfg = ScanConfig {
                seed: args.solver.seed,
                solver: if args.solver_fallback { Some(args.solver.build()?) } else { None },
                solver_node_budget: args.solver_budget,
                gtable: None,
            };
            let mut cache = match &args.cache {
                Some(p) => Some(RunCache::open(p).map_err(|e| e.to_string())?),
                None => None,
            };
            let map = atlas::scan_charge_plane(
                &[x[0], x[1], x[2]],
                args.qmax,
                args.res,
                &cfg,
                cache.as_mut(),
            )
            .map_err(|e| e.to_string())?;
            write_map_outputs(&map, &args.out, args.svg.as_ref(), args.json.as_ref())?;
        }
        Command::Fourbody(FourbodyCommand::Check(args)) => {
            let masses = parse_f64_list(&args.masses)?;
            if masses.len() != 3 {
                return Err("fourbody check needs masses mA,mB,mC".into());
            }
            let constant = if (args.constant - ORE_BOUND.c).abs() < 1e-9 {
                ORE_BOUND
            } else if (args.constant - REFINED_BOUND.c).abs() < 1e-9 {
                REFINED_BOUND
            } else {
                fourbody::BoundConstant::new(args.constant, "user-supplied ratio")
                    .map_err(|e| e.to_string())?
            };
            let x: Vec<f64> =
                masses.iter().map(|&m| if m.is_infinite() { 0.0 } else { 1.0 / m }).collect();
            let holds = fourbody::abc_condition(x[0], x[1], x[2], constant);
            println!(
                "A+B+C-C- with (mA, mB, mC) = ({}, {}, {}), constant {}",
                masses[0], masses[1], masses[2], constant.c
            );
            println!(
                "concavity chain certifies stability: {}",
                if holds { "yes" } else { "no" }
            );
            if let Some(r) = fourbody::critical_mass_ratio(constant.c) {
                println!("critical ratio m_B/m_C for this constant: {r:.4}");
            }
        }
        Command::Fourbody(FourbodyCommand::Vmc(args)) => {
            let betas = parse_f64_list(&args.betas)?;
            let scan =
                vmc::ore_vmc_scan(&betas, args.samples, args.seed).map_err(|e| e.to_string())?;
            println!("beta    <H>          +-        E(scale-opt)  +-        acc");
            for e in &scan {
                println!(
                    "{:.2}  {:>10.6}  {:.6}  {:>11.6}  {:.6}  {:.2}",
                    e.beta, e.energy, e.stderr, e.scale_opt_energy, e.scale_opt_stderr, e.acceptance
                );
            }
            let best = scan
                .iter()
                .min_by(|a, b| a.scale_opt_energy.partial_cmp(&b.scale_opt_energy).unwrap())
                .unwrap();
            println!(
                "minimum at beta = {:.2}: E = {:.6} +- {:.6} (bound ratio {:.5})",
                best.beta,
                best.scale_opt_energy,
                best.scale_opt_stderr,
                best.scale_opt_energy / -0.25
            );
        }
        Command::Conjecture(ConjectureCommand::Scan(args)) => {
            let cfg = args.solver.build()?;
            let report = atlas::conjecture_scan(args.samples, args.solver.seed, &cfg)
                .map_err(|e| e.to_string())?;
            if args.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                for s in &report.samples {
                    println!(
                        "{} -> subsystems {:?}, four-body {}, {}",
                        s.system,
                        s.subsystem_statuses.iter().map(|st| st.to_string()).collect::<Vec<_>>(),
                        s.fourbody_status,
                        if !s.hypothesis_met {
                            "excluded (hypothesis unmet)"
                        } else if s.consistent {
                            "consistent"
                        } else {
                            "counterexample candidate (solver is one-sided)"
                        }
                    );
                }
                println!(
                    "supporting {}, candidates {}, excluded {}",
                    report.supporting, report.candidates, report.excluded
                );
            }
        }
        Command::Gtable(args) => {
            let nodes = parse_f64_list(&args.nodes)?;
            let cfg = args.solver.build()?;
            let table =
                excess_binding_table(args.charge, &nodes, &cfg).map_err(|e| e.to_string())?;
            std::fs::write(&args.out, serde_json::to_string_pretty(&table).unwrap())
                .map_err(|e| e.to_string())?;
            for e in &table.entries {
                println!("alpha1 = {:.4}: g = {:.5} (basis {})", e.alpha1, e.g, e.basis_size);
            }
            println!("wrote {}", args.out.display());
        }
    }
    Ok(())
}

fn write_map_outputs(
    map: &atlas::StabilityMap,
    csv: &PathBuf,
    svg: Option<&PathBuf>,
    json: Option<&PathBuf>,
) -> Result<(), String> {
    std::fs::write(csv, atlas::write_csv(map)).map_err(|e| e.to_string())?;
    println!("wrote {}", csv.display());
    if let Some(path) = svg {
        std::fs::write(path, render::render_svg(map)).map_err(|e| e.to_string())?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = json {
        std::fs::write(path, serde_json::to_string_pretty(map).unwrap())
            .map_err(|e| e.to_string())?;
        println!("wrote {}", path.display());
    }
    let counts = |s: Status| map.cells.iter().filter(|c| c.status == s).count();
    println!(
        "{} nodes: {} certified stable, {} certified unstable, {} numeric, {} unknown",
        map.cells.len(),
        counts(Status::CertifiedStable),
        counts(Status::CertifiedUnstable),
        counts(Status::NumericallyStable),
        counts(Status::Unknown)
    );
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

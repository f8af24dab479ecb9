//! Command-line front end. `run` takes the argument vector and two sinks so
//! it can be driven in-process.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input or usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dual::{
    canonical_dual_poset_compare, dual_family, is_tight_dual, lift_subframe_dual, PosetVerdict, TightDualOutcome,
};
use crate::error::FrameError;
use crate::frame::{frame_bounds, is_tight, Frame};
use crate::io::{
    fmt_g17, fmt_vector, frame_to_json, parse_document, sets_one_based, to_json, Document, DualExport, FrameFile,
};
use crate::linalg::ToleranceConfig;
use crate::lp::{check_all, random_duals, random_probes, run_lp_suite, strict_l2_gap, LpReport, LpSuiteConfig};
use crate::poset::{
    characteristic_of_poset, empty_cover, extend_preserving_poset, factor_poset_with_cap, poset_necessary_check,
    prime_factors_of_poset, project_to_onb_frame, realize_poset_r2, strongly_isomorphic, FactorPoset, IndexSet,
    RealizeOptions, RealizeOutcome, DEFAULT_CAP,
};
use crate::sampling::seeded_rng;
use crate::selftest::run_self_test;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "frameposet", version, about = "Tight subframes, factor posets and dual frames of finite frames")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Relative zero tolerance for tightness and dual checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for every randomized routine.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest ground set for exhaustive subset enumeration.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Exponents for lp-check, comma separated.
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub p: Vec<f64>,
    /// Scale of the alternate tight dual.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Write the Hasse diagram of the relevant factor poset to this file.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frame bounds, tightness and fingerprint of a frame.
    Analyze { input: PathBuf },
    /// Factor poset of a frame (or a poset file, echoed back).
    Poset { input: PathBuf },
    /// Empty cover: the minimal nonempty members.
    Ec { input: PathBuf },
    /// Characteristic: per-index count of empty-cover memberships.
    Char { input: PathBuf },
    /// Partition of a tight frame into prime tight subframes.
    Primes { input: PathBuf },
    /// Append random vectors without creating new tight subframes.
    Extend {
        input: PathBuf,
        /// Target number of vectors.
        #[arg(long)]
        to: usize,
    },
    /// Replace a real 2-dimensional frame by axis multiples with the same poset.
    ProjectOnb { input: PathBuf },
    /// Necessary conditions for a candidate poset to be a factor poset.
    PosetCheck { input: PathBuf },
    /// Search for a real 2-dimensional frame realizing a candidate poset.
    RealizeR2 {
        input: PathBuf,
        /// Largest absolute integer weight tried.
        #[arg(long, default_value_t = 4)]
        bound: i64,
        /// Search node budget.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Canonical dual (or a seeded random dual) of a frame.
    Dual {
        input: PathBuf,
        #[arg(long)]
        random: bool,
    },
    /// Alternate tight dual of a tight frame, scaled by --alpha.
    TightDual { input: PathBuf },
    /// Lift a dual of the subframe on --subset to a dual of the frame.
    LiftDual {
        input: PathBuf,
        /// Frame file holding the subframe dual.
        dual: PathBuf,
        /// 1-based indices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
    },
    /// Strong isomorphism of two posets, or of a frame's poset with its
    /// canonical dual's when only one file is given.
    Iso { left: PathBuf, right: Option<PathBuf> },
    /// Sampled lp comparison bounds, on one frame or a random suite.
    LpCheck {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        frames: usize,
        #[arg(long, default_value_t = 20)]
        duals: usize,
        #[arg(long, default_value_t = 50)]
        probes: usize,
    },
    /// Replay the built-in regression corpus.
    SelfTest,
}

struct Outcome {
    human: String,
    machine: Value,
    ok: bool,
    dot: Option<String>,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<FrameError> for Failure {
    fn from(e: FrameError) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

type VerbResult = std::result::Result<Outcome, Failure>;

/// Runs one invocation; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if let Some(path) = &cli.dot {
                match &outcome.dot {
                    Some(dot) => {
                        if let Err(e) = std::fs::write(path, dot) {
                            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                            return 2;
                        }
                    }
                    None => {
                        let _ = writeln!(err, "warning: --dot has no poset to draw for this command");
                    }
                }
            }
            let text = match cli.format {
                Format::Human => outcome.human,
                Format::Machine => to_json(&outcome.machine),
            };
            let _ = write!(out, "{text}");
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn tolerance(cli: &Cli) -> std::result::Result<ToleranceConfig, Failure> {
    let tol = ToleranceConfig::default().with_seed(cli.seed);
    Ok(match cli.tol {
        Some(t) => tol.with_zero_rel(t)?,
        None => tol,
    })
}

fn read_document(path: &Path) -> std::result::Result<Document, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure { code: 2, message: format!("cannot read {}: {e}", path.display()) })?;
    parse_document(&text).map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })
}

fn read_frame(path: &Path) -> std::result::Result<Frame, Failure> {
    match read_document(path)? {
        Document::Frame(f) => Ok(f),
        Document::Poset(_) => Err(Failure { code: 2, message: format!("{}: expected a frame file", path.display()) }),
    }
}

fn read_poset(path: &Path, tol: &ToleranceConfig, cap: usize) -> std::result::Result<FactorPoset, Failure> {
    match read_document(path)? {
        Document::Frame(f) => Ok(factor_poset_with_cap(&f, tol, cap)?),
        Document::Poset(p) => Ok(p),
    }
}

fn set_list(sets: &[IndexSet]) -> String {
    sets.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn execute(cli: &Cli) -> VerbResult {
    let tol = tolerance(cli)?;
    let cap = cli.cap.unwrap_or(DEFAULT_CAP);
    match &cli.command {
        Command::Analyze { input } => analyze(&read_frame(input)?, &tol),
        Command::Poset { input } => {
            let p = read_poset(input, &tol, cap)?;
            let members = sets_one_based(p.members());
            let hasse: Vec<Value> =
                p.hasse().iter().map(|(u, l)| json!([u.to_one_based(), l.to_one_based()])).collect();
            let human = format!("ground set: {}\nmembers ({}): {}\n", p.ground(), p.len(), set_list(p.members()));
            let machine = json!({"verb": "poset", "ground": p.ground(), "members": members, "hasse": hasse});
            Ok(Outcome { human, machine, ok: true, dot: Some(p.to_dot()) })
        }
        Command::Ec { input } => {
            let p = read_poset(input, &tol, cap)?;
            let ec = empty_cover(&p);
            let human = format!("empty cover ({}): {}\n", ec.sets.len(), set_list(&ec.sets));
            let machine = json!({"verb": "ec", "ground": p.ground(), "empty_cover": sets_one_based(&ec.sets)});
            Ok(Outcome { human, machine, ok: true, dot: Some(p.to_dot()) })
        }
        Command::Char { input } => {
            let p = read_poset(input, &tol, cap)?;
            let chi = characteristic_of_poset(&p);
            let counts: Vec<String> = chi.counts.iter().map(|c| c.to_string()).collect();
            let human = format!("characteristic: ({})\nuniform: {}\n", counts.join(", "), chi.is_uniform());
            let machine = json!({
                "verb": "char",
                "characteristic": chi.counts,
                "uniform": chi.is_uniform(),
                "positive_uniform": chi.is_positive_uniform(),
            });
            Ok(Outcome { human, machine, ok: true, dot: Some(p.to_dot()) })
        }
        Command::Primes { input } => {
            let p = read_poset(input, &tol, cap)?;
            let whole = IndexSet::full(p.ground());
            let result = if p.contains(whole) { prime_factors_of_poset(&p, whole) } else { Err(FrameError::NotTight) };
            match result {
                Ok(primes) => Ok(Outcome {
                    human: format!("prime factors ({}): {}\n", primes.len(), set_list(&primes)),
                    machine: json!({"verb": "primes", "tight": true, "primes": sets_one_based(&primes)}),
                    ok: true,
                    dot: Some(p.to_dot()),
                }),
                Err(FrameError::NotTight) => Ok(Outcome {
                    human: "not tight: the whole frame is not a member, no prime decomposition\n".into(),
                    machine: json!({"verb": "primes", "tight": false, "primes": Value::Null}),
                    ok: false,
                    dot: Some(p.to_dot()),
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::Extend { input, to } => {
            let f = read_frame(input)?;
            let g = extend_preserving_poset(&f, *to, &tol)?;
            let dot = factor_poset_with_cap(&g, &tol, cap).ok().map(|p| p.to_dot());
            let text = frame_to_json(&g);
            let machine = serde_json::to_value(FrameFile::from(&g)).expect("serializable");
            Ok(Outcome { human: text, machine, ok: true, dot })
        }
        Command::ProjectOnb { input } => {
            let f = read_frame(input)?;
            let proj = project_to_onb_frame(&f, &tol)?;
            let p = factor_poset_with_cap(&proj.frame, &tol, cap)?;
            let mut human = String::new();
            let _ = writeln!(human, "direction: ({}, {})", fmt_g17(proj.direction[0]), fmt_g17(proj.direction[1]));
            let _ = writeln!(human, "margin: {}", fmt_g17(proj.margin));
            for (i, (v, w)) in proj.frame.vectors().iter().zip(&proj.weights).enumerate() {
                let _ = writeln!(human, "g{} = {}  (weight {})", i + 1, fmt_vector(v, proj.frame.field()), fmt_g17(*w));
            }
            let _ = writeln!(human, "members ({}): {}", p.len(), set_list(p.members()));
            let machine = json!({
                "verb": "project-onb",
                "direction": proj.direction,
                "margin": proj.margin,
                "weights": proj.weights,
                "frame": FrameFile::from(&proj.frame),
                "members": sets_one_based(p.members()),
            });
            Ok(Outcome { human, machine, ok: true, dot: Some(p.to_dot()) })
        }
        Command::PosetCheck { input } => {
            let p = read_poset(input, &tol, cap)?;
            let check = poset_necessary_check(&p);
            let mut human = String::new();
            if check.passed() {
                human.push_str("passed: no necessary condition is violated\n");
            }
            for v in &check.violations {
                let _ = writeln!(human, "violated {}: {}", v.rule(), v);
            }
            let violations: Vec<Value> =
                check.violations.iter().map(|v| json!({"rule": v.rule(), "detail": v.to_string()})).collect();
            let machine = json!({"verb": "poset-check", "passed": check.passed(), "violations": violations});
            Ok(Outcome { human, machine, ok: check.passed(), dot: Some(p.to_dot()) })
        }
        Command::RealizeR2 { input, bound, budget } => {
            let p = read_poset(input, &tol, cap)?;
            let mut opts = RealizeOptions { weight_bound: *bound, ..RealizeOptions::default() };
            if let Some(b) = budget {
                opts.node_budget = *b;
            }
            let dot = Some(p.to_dot());
            match realize_poset_r2(&p, opts)? {
                RealizeOutcome::Realized { weights, frame } => {
                    let mut human = format!("realized with weights {weights:?}\n");
                    for (i, v) in frame.vectors().iter().enumerate() {
                        let _ = writeln!(human, "f{} = {}", i + 1, fmt_vector(v, frame.field()));
                    }
                    let machine = json!({
                        "verb": "realize-r2",
                        "status": "realized",
                        "weights": weights,
                        "frame": FrameFile::from(&frame),
                    });
                    Ok(Outcome { human, machine, ok: true, dot })
                }
                RealizeOutcome::NotFound => Ok(Outcome {
                    human: format!("not found within weight bound {bound}\n"),
                    machine: json!({"verb": "realize-r2", "status": "not-found", "weight_bound": bound}),
                    ok: false,
                    dot,
                }),
                RealizeOutcome::FailsNecessaryCheck(check) => {
                    let mut human = String::from("rejected by the necessary check\n");
                    for v in &check.violations {
                        let _ = writeln!(human, "violated {}: {}", v.rule(), v);
                    }
                    let violations: Vec<Value> =
                        check.violations.iter().map(|v| json!({"rule": v.rule(), "detail": v.to_string()})).collect();
                    let machine =
                        json!({"verb": "realize-r2", "status": "fails-necessary-check", "violations": violations});
                    Ok(Outcome { human, machine, ok: false, dot })
                }
            }
        }
        Command::Dual { input, random } => {
            let f = read_frame(input)?;
            let element = if *random {
                random_duals(&mut seeded_rng(tol.seed), &f, 1, &tol)?.remove(0)
            } else {
                dual_family(&f, &tol)?.canonical_element()
            };
            let export = DualExport::from(&element);
            Ok(Outcome {
                human: dual_human(&element),
                machine: serde_json::to_value(&export).expect("serializable"),
                ok: true,
                dot: None,
            })
        }
        Command::TightDual { input } => {
            let f = read_frame(input)?;
            let alpha = cli.alpha.unwrap_or(1.0);
            match crate::dual::tight_dual(&f, alpha, &tol) {
                Ok(TightDualOutcome::Alternate { element, bound }) => {
                    let cert = is_tight_dual(&element, &tol);
                    let (a, b) = frame_bounds(&element.as_frame(), &tol)?;
                    let human = format!(
                        "alternate tight dual, alpha {}\npredicted bound: {}\nobserved bounds: {} {}\n{}",
                        fmt_g17(alpha),
                        fmt_g17(bound),
                        fmt_g17(a),
                        fmt_g17(b),
                        dual_human(&element)
                    );
                    let machine = json!({
                        "verb": "tight-dual",
                        "status": "alternate",
                        "alpha": alpha,
                        "predicted_bound": bound,
                        "lower_bound": a,
                        "upper_bound": b,
                        "tight": cert.tight,
                        "dual": DualExport::from(&element),
                    });
                    Ok(Outcome { human, machine, ok: cert.tight, dot: None })
                }
                Ok(TightDualOutcome::CanonicalOnly { kernel_dim, n }) => {
                    let canonical = dual_family(&f, &tol)?.canonical_element();
                    let human = format!(
                        "only the canonical dual is tight (kernel dimension {kernel_dim} < n = {n})\n{}",
                        dual_human(&canonical)
                    );
                    let machine = json!({
                        "verb": "tight-dual",
                        "status": "canonical-only",
                        "kernel_dim": kernel_dim,
                        "n": n,
                        "dual": DualExport::from(&canonical),
                    });
                    Ok(Outcome { human, machine, ok: true, dot: None })
                }
                Err(FrameError::NotTight) => Ok(Outcome {
                    human: "not tight: tight duals are only constructed for tight frames\n".into(),
                    machine: json!({"verb": "tight-dual", "status": "not-tight"}),
                    ok: false,
                    dot: None,
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::LiftDual { input, dual, subset } => {
            let f = read_frame(input)?;
            let k = read_frame(dual)?;
            let j = IndexSet::from_one_based(subset)?;
            match lift_subframe_dual(&f, j, &k, &tol) {
                Ok(lifted) => {
                    let cert = is_tight_dual(&lifted.element, &tol);
                    let human = format!(
                        "lifted dual from {j}\nposet eligible: {}\ntight: {}\n{}",
                        lifted.poset_eligible,
                        cert.tight,
                        dual_human(&lifted.element)
                    );
                    let machine = json!({
                        "verb": "lift-dual",
                        "subset": j.to_one_based(),
                        "poset_eligible": lifted.poset_eligible,
                        "tight": cert.tight,
                        "dual": DualExport::from(&lifted.element),
                    });
                    Ok(Outcome { human, machine, ok: true, dot: None })
                }
                Err(e @ (FrameError::NotADual(_) | FrameError::SubframeNotFrame)) => Ok(Outcome {
                    human: format!("{e}\n"),
                    machine: json!({"verb": "lift-dual", "status": "rejected", "reason": e.to_string()}),
                    ok: false,
                    dot: None,
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::Iso { left, right } => iso(left, right.as_deref(), &tol, cap),
        Command::LpCheck { input, frames, duals, probes } => {
            let mut config =
                LpSuiteConfig { frames: *frames, duals: *duals, probes: *probes, ..LpSuiteConfig::default() };
            if !cli.p.is_empty() {
                if let Some(&bad) = cli.p.iter().find(|&&p| p.is_nan() || p <= 1.0 || p.is_infinite()) {
                    return Err(FrameError::InvalidExponent(bad).into());
                }
                config.general_p = cli.p.clone();
                config.p_gt2 = cli.p.iter().copied().filter(|&p| p > 2.0).collect();
            }
            match input {
                Some(path) => lp_on_frame(&read_frame(path)?, &config, &tol),
                None => {
                    let report = run_lp_suite(&config, &tol)?;
                    let mut human = lp_human(&report.reports);
                    let _ = writeln!(
                        human,
                        "strict l2 gap: {}/{} non-canonical duals",
                        report.converse.with_gap, report.converse.duals
                    );
                    let _ = writeln!(
                        human,
                        "holder sandwich: {} samples, {}",
                        report.holder_samples,
                        pass(report.holder_passed)
                    );
                    let _ = writeln!(human, "{}", pass(report.passed));
                    let mut machine = serde_json::to_value(&report).expect("serializable");
                    machine["verb"] = json!("lp-check");
                    Ok(Outcome { human, machine, ok: report.passed, dot: None })
                }
            }
        }
        Command::SelfTest => {
            let report = run_self_test(&tol)?;
            let mut human = String::new();
            for c in &report.cases {
                let _ = writeln!(human, "{} {}: {}", pass(c.passed), c.name, c.detail);
            }
            human.push_str(&lp_human(&report.lp.reports));
            let _ = writeln!(human, "{}", pass(report.passed));
            let mut machine = serde_json::to_value(&report).expect("serializable");
            machine["verb"] = json!("self-test");
            Ok(Outcome { human, machine, ok: report.passed, dot: None })
        }
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn analyze(f: &Frame, tol: &ToleranceConfig) -> VerbResult {
    let bounds = frame_bounds(f, tol).ok();
    let cert = is_tight(f, f.all_indices(), tol)?;
    let zeros: Vec<usize> =
        f.vectors().iter().enumerate().filter(|(_, v)| v.iter().all(|z| z.norm() == 0.0)).map(|(i, _)| i + 1).collect();
    let mut human = String::new();
    let _ = writeln!(human, "field: {}", if f.field() == crate::frame::Field::Real { "real" } else { "complex" });
    let _ = writeln!(human, "n: {}, k: {}", f.dim(), f.len());
    let _ = writeln!(human, "fingerprint: {}", f.fingerprint());
    match bounds {
        Some((a, b)) => {
            let _ = writeln!(human, "frame bounds: {} {}", fmt_g17(a), fmt_g17(b));
        }
        None => human.push_str("not a frame: the vectors do not span\n"),
    }
    let _ = writeln!(human, "tight: {} (diagram residual {})", cert.tight && bounds.is_some(), fmt_g17(cert.residual));
    if !zeros.is_empty() {
        let _ = writeln!(human, "zero vectors: {zeros:?}");
    }
    let machine = json!({
        "verb": "analyze",
        "field": f.field(),
        "n": f.dim(),
        "k": f.len(),
        "fingerprint": f.fingerprint(),
        "frame": bounds.is_some(),
        "lower_bound": bounds.map(|b| b.0),
        "upper_bound": bounds.map(|b| b.1),
        "tight": cert.tight && bounds.is_some(),
        "tightness_residual": cert.residual,
        "zero_vectors": zeros,
    });
    Ok(Outcome { human, machine, ok: true, dot: None })
}

fn iso(left: &Path, right: Option<&Path>, tol: &ToleranceConfig, cap: usize) -> VerbResult {
    let (p, q, verdict) = match right {
        None => {
            let f = read_frame(left)?;
            let cmp = canonical_dual_poset_compare(&f, tol)?;
            let verdict = match cmp.verdict {
                PosetVerdict::Equal => Some((0..f.len()).collect::<Vec<_>>()),
                PosetVerdict::StronglyIsomorphic(eta) => Some(eta),
                PosetVerdict::NotStronglyIsomorphic => None,
            };
            (cmp.frame_poset, cmp.dual_poset, verdict)
        }
        Some(right) => {
            let p = read_poset(left, tol, cap)?;
            let q = read_poset(right, tol, cap)?;
            let verdict = strongly_isomorphic(&p, &q)?;
            (p, q, verdict)
        }
    };
    let perm = verdict.as_ref().map(|eta| eta.iter().map(|i| i + 1).collect::<Vec<_>>());
    let mut human = format!("left members: {}\nright members: {}\n", set_list(p.members()), set_list(q.members()));
    match &perm {
        Some(eta) => {
            let _ = writeln!(human, "strongly isomorphic, permutation {eta:?}");
        }
        None => human.push_str("not strongly isomorphic\n"),
    }
    let machine = json!({
        "verb": "iso",
        "isomorphic": perm.is_some(),
        "permutation": perm,
        "left": sets_one_based(p.members()),
        "right": sets_one_based(q.members()),
    });
    Ok(Outcome { human, machine, ok: verdict.is_some(), dot: Some(q.to_dot()) })
}

fn dual_human(d: &crate::dual::DualElement) -> String {
    let field = d.family().field();
    let mut s =
        format!("kernel dimension: {}\nduality residual: {}\n", d.family().kernel_dim(), fmt_g17(d.duality_residual()));
    for (i, c) in d.materialized().columns().iter().enumerate() {
        let _ = writeln!(s, "g{} = {}", i + 1, fmt_vector(c, field));
    }
    s
}

fn lp_human(reports: &[LpReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let _ = writeln!(
            s,
            "{} {} p={} factor={} samples={} violations={} max_ratio={}",
            pass(r.passed),
            r.bound.name(),
            fmt_g17(r.p),
            fmt_g17(r.factor),
            r.samples,
            r.violations,
            fmt_g17(r.max_ratio)
        );
    }
    s
}

fn lp_on_frame(f: &Frame, config: &LpSuiteConfig, tol: &ToleranceConfig) -> VerbResult {
    let mut rng = seeded_rng(tol.seed);
    let duals = random_duals(&mut rng, f, config.duals, tol)?;
    let probes = random_probes(&mut rng, f.field(), f.dim(), config.probes);
    let mut reports = Vec::new();
    check_all(f, &duals, &probes, config, &mut reports)?;
    let converse_probes = random_probes(&mut rng, f.field(), f.dim(), config.converse_probes);
    let (mut tested, mut with_gap) = (0usize, 0usize);
    for d in &duals {
        if let Some(gap) = strict_l2_gap(d, &converse_probes)? {
            tested += 1;
            with_gap += gap as usize;
        }
    }
    let passed = reports.iter().all(|r| r.passed) && with_gap == tested;
    let mut human = lp_human(&reports);
    let _ = writeln!(human, "strict l2 gap: {with_gap}/{tested} non-canonical duals");
    let _ = writeln!(human, "{}", pass(passed));
    let machine = json!({
        "verb": "lp-check",
        "seed": tol.seed,
        "fingerprint": f.fingerprint(),
        "reports": reports,
        "converse": {"duals": tested, "with_gap": with_gap, "passed": with_gap == tested},
        "passed": passed,
    });
    Ok(Outcome { human, machine, ok: passed, dot: None })
}

//! Single-binary driver. Every command writes a JSON artifact (stdout or
//! --out) and prints a one-line summary on stderr. Exit codes follow the
//! verifier contract: 0 certified, 1 refuted, 2 inconclusive, 3 module
//! errors, 4 usage errors.

use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;
use serde_json::Value;
use std::path::PathBuf;
use std::process::ExitCode;

use tla_core::construct::{construct_free_action, construct_z_action, z_from_infinite_order_element};
use tla_core::defaults;
use tla_core::group::subgroup::CyclicSubgroup;
use tla_core::group::{presets, FiniteSubgroup, GroupElement, MarkedGroup, Subgroup};
use tla_core::piecewise::{
    extend_action, lift_graph_map, refine_subgroup_translation, translation_on_cyclic_subgroup,
    ActingGroup, PieceSpec, PiecewiseTranslation, TLAction,
};
use tla_core::serial::{self, dot};
use tla_core::verify::{
    check_cocompact, check_free, check_fundamental_domain, check_quotient_commutes,
    locally_elliptic_obstruction, wobble_constant, Candidate, Certificate, Verdict,
};
use tla_core::window::ends::count_ends;
use tla_core::window::expansion::{profile_of_window, ratio_string};
use tla_core::window::GraphWindow;
use tla_core::TlaError;

#[derive(Parser)]
#[command(
    name = "tla",
    about = "Translation-like actions on marked groups: windows, constructions, certificates",
    version
)]
struct Cli {
    /// Reserved for randomized tie-breaks; every built-in construction is
    /// deterministic, so this only labels the run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Cayley or Cayley-Abels window and emit it as JSON.
    BuildWindow(BuildWindowArgs),
    /// Estimate the number of ends from an annulus component count.
    Ends(EndsArgs),
    /// Exact sphere/ball expansion ratios of a Cayley ball.
    Expansion(ExpansionArgs),
    /// Hamiltonian path (cube-of-spanning-tree) Z-action on a window.
    ConstructZ(ConstructZArgs),
    /// Labeled-forest free-group action on a window.
    ConstructFree(ConstructFreeArgs),
    /// Piecewise translation carrying a finite subgroup K onto sK.
    Refine(RefineArgs),
    /// Lift a graph self-map of a coset window to the group.
    Lift(LiftArgs),
    /// Extend the translation action of a cyclic subgroup to the group.
    Extend(ExtendArgs),
    /// Check a claim about an action and emit a certificate.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CommonOut {
    /// Output file for the JSON artifact (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildWindowArgs {
    #[arg(long)]
    group: String,
    /// Window radius.
    #[arg(long = "R")]
    radius: u32,
    /// Finite subgroup K (comma-separated elements) for a coset window.
    #[arg(long)]
    subgroup: Option<String>,
    /// Step set T for a coset window (defaults to the marked generators).
    #[arg(long)]
    steps: Option<String>,
    #[arg(long = "emit-dot")]
    emit_dot: Option<PathBuf>,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct EndsArgs {
    #[arg(long)]
    group: String,
    /// Inner annulus radius.
    #[arg(long = "r", default_value_t = defaults::ENDS_INNER)]
    inner: u32,
    /// Outer ball radius.
    #[arg(long = "R", default_value_t = defaults::ENDS_OUTER)]
    outer: u32,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct ExpansionArgs {
    #[arg(long)]
    group: String,
    #[arg(long = "R", default_value_t = 8)]
    radius: u32,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct ConstructZArgs {
    #[arg(long)]
    group: String,
    #[arg(long = "R")]
    radius: u32,
    #[arg(long)]
    subgroup: Option<String>,
    #[arg(long)]
    steps: Option<String>,
    #[arg(long = "emit-dot")]
    emit_dot: Option<PathBuf>,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct ConstructFreeArgs {
    #[arg(long)]
    group: String,
    #[arg(long = "R")]
    radius: u32,
    /// Free rank d of the acting group.
    #[arg(long, default_value_t = 2)]
    rank: usize,
    /// Wobble budget for the 2-to-1 matching.
    #[arg(long, default_value_t = 2)]
    budget: u32,
    /// Expansion gate threshold as an exact fraction p/q.
    #[arg(long, default_value = "2/5")]
    threshold: String,
    #[arg(long = "emit-dot")]
    emit_dot: Option<PathBuf>,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct RefineArgs {
    #[arg(long)]
    group: String,
    /// Finite subgroup K, comma-separated elements.
    #[arg(long)]
    subgroup: String,
    /// The element s with target coset sK.
    #[arg(long)]
    s: String,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct LiftArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    subgroup: String,
    #[arg(long)]
    steps: Option<String>,
    #[arg(long = "R")]
    radius: u32,
    /// Path action to lift (defaults to construct-z on the window).
    #[arg(long)]
    action: Option<PathBuf>,
    /// Maximum witness word length over the steps.
    #[arg(long = "witness-depth", default_value_t = defaults::WITNESS_DEPTH)]
    witness_depth: u32,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct ExtendArgs {
    #[arg(long)]
    group: String,
    /// Generator of the cyclic subgroup H that acts on itself by
    /// translation before extension.
    #[arg(long = "subgroup-gen")]
    subgroup_gen: String,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct VerifyArgs {
    /// Expected group (checked against the action file when given).
    #[arg(long)]
    group: Option<String>,
    /// Claim to check.
    #[arg(long, default_value = "free", value_parser = [
        "free", "fundamental-domain", "cocompact", "quotient-commutes",
        "locally-elliptic", "wobble",
    ])]
    claim: String,
    /// Action artifact (tl-action, piecewise-translation, path-action or
    /// forest-action JSON).
    #[arg(long)]
    action: PathBuf,
    /// Graph map (path-action JSON) for quotient-commutes.
    #[arg(long = "graph-map")]
    graph_map: Option<PathBuf>,
    /// Fundamental domain: a piece-spec JSON file or inline JSON.
    #[arg(long)]
    fd: Option<String>,
    /// Window radius for the checks.
    #[arg(long = "R", default_value_t = 8)]
    radius: u32,
    #[arg(long)]
    subgroup: Option<String>,
    #[arg(long)]
    steps: Option<String>,
    /// Freeness depth L.
    #[arg(long, default_value_t = defaults::FREE_DEPTH)]
    depth: u32,
    /// Annulus radii for the cocompactness ends cross-check.
    #[arg(long = "ends-r", default_value_t = defaults::ENDS_INNER)]
    ends_inner: u32,
    #[arg(long = "ends-R", default_value_t = defaults::ENDS_OUTER)]
    ends_outer: u32,
    /// Translator-closure cap for locally-elliptic.
    #[arg(long = "closure-cap", default_value_t = defaults::CLOSURE_CAP)]
    closure_cap: usize,
    /// Word-metric BFS radius for wobble.
    #[arg(long = "word-radius", default_value_t = defaults::WORD_RADIUS)]
    word_radius: u32,
    #[command(flatten)]
    out: CommonOut,
}

enum CliError {
    Module(TlaError),
    Usage(String),
    Io(String),
}

impl From<TlaError> for CliError {
    fn from(e: TlaError) -> Self {
        CliError::Module(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn window_cap() -> usize {
    std::env::var("TLA_MAX_VERTICES")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(defaults::WINDOW_CAP)
}

fn resolve_group(spec: &str) -> CliResult<MarkedGroup> {
    let s = spec.trim();
    let preset = match s {
        "z" => Some(MarkedGroup::free_abelian(1)),
        "z2" => Some(MarkedGroup::free_abelian(2)),
        "z3" => Some(MarkedGroup::free_abelian(3)),
        "f2" => Some(MarkedGroup::free(2)),
        "f3" => Some(MarkedGroup::free(3)),
        "lamplighter" | "lamp" => Some(MarkedGroup::lamplighter()),
        "c12" => Some(presets::cyclic(12)),
        "d4" => Some(presets::dihedral4()),
        "s4" => Some(presets::symmetric4()),
        "zxc2" => Some(presets::z_cross_c2()),
        _ => None,
    };
    if let Some(g) = preset {
        return Ok(g);
    }
    let text = if s.starts_with('{') {
        s.to_string()
    } else {
        std::fs::read_to_string(s)
            .map_err(|e| CliError::Io(format!("cannot read group file {s}: {e}")))?
    };
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad group JSON: {e}")))?;
    Ok(serial::group_from_json(&v)?)
}

fn parse_subgroup(group: &MarkedGroup, spec: &str) -> CliResult<FiniteSubgroup> {
    let mut elems = group.parse_element_list(spec)?;
    if !elems.iter().any(|e| e.is_identity()) {
        elems.push(group.identity());
    }
    Ok(FiniteSubgroup::new(group, elems)?)
}

fn parse_steps(group: &MarkedGroup, spec: Option<&str>) -> CliResult<Vec<GroupElement>> {
    match spec {
        Some(s) => Ok(group.parse_element_list(s)?),
        None => Ok(group.generators().map(|(_, _, g)| g).collect()),
    }
}

fn build_window(
    group: &MarkedGroup,
    radius: u32,
    subgroup: Option<&str>,
    steps: Option<&str>,
) -> CliResult<GraphWindow> {
    match subgroup {
        Some(kspec) => {
            let k = parse_subgroup(group, kspec)?;
            let t = parse_steps(group, steps)?;
            Ok(GraphWindow::build_cayley_abels(
                group,
                &k,
                &t,
                radius,
                window_cap(),
            )?)
        }
        None => Ok(GraphWindow::build_cayley(group, radius, window_cap())?),
    }
}

fn write_artifact(out: &CommonOut, v: &Value) -> CliResult<()> {
    let text = serial::to_pretty(v);
    match &out.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_dot(path: &Option<PathBuf>, text: &str) -> CliResult<()> {
    if let Some(p) = path {
        std::fs::write(p, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn read_json(path: &PathBuf) -> CliResult<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad JSON: {e}")))
}

fn parse_threshold(s: &str) -> CliResult<Ratio<u64>> {
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| CliError::Usage(format!("threshold must be p/q, got {s:?}")))?;
    let p: u64 = p
        .trim()
        .parse()
        .map_err(|_| CliError::Usage("bad threshold numerator".into()))?;
    let q: u64 = q
        .trim()
        .parse()
        .map_err(|_| CliError::Usage("bad threshold denominator".into()))?;
    if q == 0 {
        return Err(CliError::Usage("threshold denominator is zero".into()));
    }
    Ok(Ratio::new(p, q))
}

fn emit_certificate(out: &CommonOut, cert: &Certificate) -> CliResult<i32> {
    let v = serde_json::to_value(cert).expect("certificate serializes");
    write_artifact(out, &v)?;
    eprintln!("{}", cert.summary());
    Ok(cert.verdict.exit_code())
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::BuildWindow(a) => {
            let group = resolve_group(&a.group)?;
            let w = build_window(&group, a.radius, a.subgroup.as_deref(), a.steps.as_deref())?;
            write_artifact(&a.out, &serial::window_to_json(&w))?;
            write_dot(&a.emit_dot, &dot::window_dot(&w))?;
            eprintln!(
                "window: {} vertices, {} edges, boundary {}, core radius {}",
                w.len(),
                w.edges().len(),
                w.boundary().len(),
                w.core_radius()
            );
            Ok(0)
        }
        Command::Ends(a) => {
            let group = resolve_group(&a.group)?;
            if a.inner >= a.outer {
                return Err(CliError::Usage("need --r < --R".into()));
            }
            let e = count_ends(&group, a.inner, a.outer, window_cap())?;
            write_artifact(&a.out, &serial::ends_to_json(&group, &e))?;
            eprintln!(
                "ends estimate at (r={}, R={}): verdict {} from {} boundary-touching components (fixed-radius estimate, not a proof)",
                e.inner, e.outer, e.verdict, e.components
            );
            Ok(0)
        }
        Command::Expansion(a) => {
            let group = resolve_group(&a.group)?;
            let w = GraphWindow::build_cayley(&group, a.radius, window_cap())?;
            let p = profile_of_window(&w);
            write_artifact(&a.out, &serial::expansion_to_json(&group, &p))?;
            eprintln!(
                "expansion: |sphere|/|ball| at radius {} is {}",
                a.radius,
                ratio_string(p.gate_value())
            );
            Ok(0)
        }
        Command::ConstructZ(a) => {
            let group = resolve_group(&a.group)?;
            let w = build_window(&group, a.radius, a.subgroup.as_deref(), a.steps.as_deref())?;
            let p = construct_z_action(&w)?;
            write_artifact(&a.out, &serial::path_action_to_json(&p, &w))?;
            write_dot(&a.emit_dot, &dot::path_dot(&p, &w))?;
            eprintln!(
                "construct-z: path covers {}/{} vertices, wobble {}, {}",
                p.order.len(),
                w.len(),
                p.wobble,
                if p.closes_cycle {
                    "closes into a cycle"
                } else {
                    "open path"
                }
            );
            Ok(0)
        }
        Command::ConstructFree(a) => {
            let group = resolve_group(&a.group)?;
            let w = build_window(&group, a.radius, None, None)?;
            let threshold = parse_threshold(&a.threshold)?;
            let f = construct_free_action(&w, a.rank, a.budget, threshold)?;
            write_artifact(&a.out, &serial::forest_action_to_json(&f, &w))?;
            write_dot(&a.emit_dot, &dot::forest_dot(&f, &w))?;
            eprintln!(
                "construct-free: rank {}, {} covered / {} interior vertices, wobble {}",
                f.rank,
                f.covered.len(),
                f.interior.len(),
                f.wobble
            );
            Ok(0)
        }
        Command::Refine(a) => {
            let group = resolve_group(&a.group)?;
            let k = parse_subgroup(&group, &a.subgroup)?;
            let s = group.parse_element_friendly(&a.s)?;
            let phi = refine_subgroup_translation(&k, &s)?;
            // Exhaustive self-check on the finite domain.
            let mut image: Vec<String> = k
                .elements()
                .iter()
                .map(|x| phi.apply(x).map(|y| y.canonical_string()))
                .collect::<Result<_, _>>()?;
            image.sort();
            image.dedup();
            let mut sk: Vec<String> = k
                .left_coset(&s)
                .iter()
                .map(|y| y.canonical_string())
                .collect();
            sk.sort();
            let ok = image == sk;
            write_artifact(&a.out, &serial::translation_doc_to_json(&phi))?;
            eprintln!(
                "refine: {} piece(s); image equals sK: {}; injective on K: {}",
                phi.pieces().len(),
                ok,
                image.len() == k.order()
            );
            Ok(if ok { 0 } else { 1 })
        }
        Command::Lift(a) => {
            let group = resolve_group(&a.group)?;
            let w = build_window(&group, a.radius, Some(&a.subgroup), a.steps.as_deref())?;
            let path = match &a.action {
                Some(p) => serial::path_action_from_json(&read_json(p)?, &w)?,
                None => construct_z_action(&w)?,
            };
            let alpha = path.successor_map(w.len());
            let lifted = lift_graph_map(&alpha, &w, a.witness_depth)?;
            write_artifact(&a.out, &serial::translation_doc_to_json(&lifted))?;
            let cert = check_quotient_commutes(&lifted, &alpha, &w)?;
            eprintln!("lift: {} pieces; {}", lifted.pieces().len(), cert.summary());
            Ok(cert.verdict.exit_code())
        }
        Command::Extend(a) => {
            let group = resolve_group(&a.group)?;
            let g = group.parse_element_friendly(&a.subgroup_gen)?;
            z_from_infinite_order_element(&g)?; // torsion check
            let cyclic = CyclicSubgroup::new(g);
            let (phi, fd) = translation_on_cyclic_subgroup(&cyclic)?;
            let h = Subgroup::Cyclic(cyclic);
            let restricted = TLAction::new(ActingGroup::Z, vec![phi], Some(fd))?;
            let extended = extend_action(&restricted, &h)?;
            write_artifact(&a.out, &serial::action_to_json(&extended))?;
            eprintln!(
                "extend: Z-action extended from the cyclic subgroup; {} piece(s) per generator",
                extended.generators[0].pieces().len()
            );
            Ok(0)
        }
        Command::Verify(a) => run_verify(a),
    }
}

fn run_verify(a: VerifyArgs) -> CliResult<i32> {
    let doc = read_json(&a.action)?;
    let kind = doc
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| CliError::Usage("action file has no \"kind\" field".into()))?
        .to_string();
    let embedded_group = doc
        .get("group")
        .ok_or_else(|| CliError::Usage("action file has no \"group\" field".into()))?;
    let group = serial::group_from_json(embedded_group)?;
    if let Some(gspec) = &a.group {
        let expected = resolve_group(gspec)?;
        if expected != group {
            return Err(CliError::Usage(
                "the --group flag names a different group than the action file".into(),
            ));
        }
    }

    // locally-elliptic needs no window.
    if a.claim == "locally-elliptic" {
        let phi = action_translation(&doc, &kind, &group)?;
        let cert = locally_elliptic_obstruction(&phi, a.closure_cap)?;
        return emit_certificate(&a.out, &cert);
    }

    let w = build_window(&group, a.radius, a.subgroup.as_deref(), a.steps.as_deref())?;

    let fd_piece = match &a.fd {
        Some(spec) => {
            let text = if spec.trim_start().starts_with('{') {
                spec.clone()
            } else {
                std::fs::read_to_string(spec)
                    .map_err(|e| CliError::Io(format!("cannot read fd {spec}: {e}")))?
            };
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad fd JSON: {e}")))?;
            Some(serial::piece_from_json(&group, &v)?)
        }
        None => None,
    };

    match a.claim.as_str() {
        "wobble" => {
            let phi = action_translation(&doc, &kind, &group)?;
            let value = wobble_constant(&phi, &w, a.word_radius)?;
            let mut cert = Certificate {
                schema: "tla/1".into(),
                claim: "wobble".into(),
                verdict: Verdict::Certified,
                witness: None,
                reason: Some(format!("maximum core displacement {value}")),
                core_radius: w.core_radius(),
                wobble: Some(value),
                freeness_depth: None,
                fd_report: None,
                cocompact_bound: None,
                closure_cap: None,
            };
            cert.wobble = Some(value);
            emit_certificate(&a.out, &cert)
        }
        "quotient-commutes" => {
            let phi = action_translation(&doc, &kind, &group)?;
            let map_path = a.graph_map.as_ref().ok_or_else(|| {
                CliError::Usage("quotient-commutes needs --graph-map <path-action.json>".into())
            })?;
            let path = serial::path_action_from_json(&read_json(map_path)?, &w)?;
            let alpha = path.successor_map(w.len());
            let cert = check_quotient_commutes(&phi, &alpha, &w)?;
            emit_certificate(&a.out, &cert)
        }
        claim => {
            // Claims over a candidate action.
            let tl;
            let path;
            let forest;
            let candidate = match kind.as_str() {
                "tl-action" => {
                    tl = serial::action_from_json(&doc)?;
                    Candidate::Tl(&tl)
                }
                "piecewise-translation" => {
                    let (_, phi) = serial::translation_doc_from_json(&doc)?;
                    tl = TLAction::new(ActingGroup::Z, vec![phi], None)?;
                    Candidate::Tl(&tl)
                }
                "path-action" => {
                    path = serial::path_action_from_json(&doc, &w)?;
                    Candidate::Path(&path)
                }
                "forest-action" => {
                    forest = serial::forest_action_from_json(&doc, &w)?;
                    Candidate::Forest(&forest)
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "cannot verify artifact of kind {other:?}"
                    )))
                }
            };
            let cert = match claim {
                "free" => check_free(&candidate, &w, a.depth)?,
                "fundamental-domain" => {
                    let d = fd_piece
                        .or_else(|| embedded_fd(&doc, &group))
                        .ok_or_else(|| {
                            CliError::Usage(
                                "no fundamental domain: pass --fd or embed one in the action"
                                    .into(),
                            )
                        })?;
                    check_fundamental_domain(&candidate, &d, &w, a.depth)?
                }
                "cocompact" => {
                    let d = fd_piece.or_else(|| embedded_fd(&doc, &group));
                    check_cocompact(
                        &candidate,
                        d.as_ref(),
                        &w,
                        a.depth,
                        a.ends_inner,
                        a.ends_outer,
                        window_cap(),
                    )?
                }
                other => {
                    return Err(CliError::Usage(format!("unknown claim {other:?}")));
                }
            };
            emit_certificate(&a.out, &cert)
        }
    }
}

fn embedded_fd(doc: &Value, group: &MarkedGroup) -> Option<PieceSpec> {
    let fv = doc.get("fundamental_domain")?;
    if fv.is_null() {
        return None;
    }
    serial::piece_from_json(group, fv).ok()
}

/// The piecewise translation named by an artifact: the single generator of
/// a Z tl-action, or a bare piecewise-translation document.
fn action_translation(
    doc: &Value,
    kind: &str,
    group: &MarkedGroup,
) -> CliResult<PiecewiseTranslation> {
    match kind {
        "tl-action" => {
            let a = serial::action_from_json(doc)?;
            if a.group() != group {
                return Err(CliError::Usage("group mismatch in action file".into()));
            }
            Ok(a.generators[0].clone())
        }
        "piecewise-translation" => {
            let (g, phi) = serial::translation_doc_from_json(doc)?;
            if g != *group {
                return Err(CliError::Usage("group mismatch in action file".into()));
            }
            Ok(phi)
        }
        other => Err(CliError::Usage(format!(
            "claim needs a piecewise translation, got artifact kind {other:?}"
        ))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(4);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(CliError::Module(e)) => {
            eprintln!("error: {e}");
            if let TlaError::NoMatching { witness, .. } = &e {
                eprintln!("hall-violating vertex set: {witness:?}");
            }
            ExitCode::from(3)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(4)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("io error: {msg}");
            ExitCode::from(3)
        }
    }
}

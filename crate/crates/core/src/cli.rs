//! Command-line front end: reports, verification campaigns, embedding
//! checks, and degree scans.
//!
//! Exit codes: 0 success, 1 computation or verification failure, 2 usage
//! error. Identical invocations produce byte-identical output; nothing
//! nondeterministic (timestamps, durations, map ordering) is ever printed.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::admissible::{
    check_admissible, compute_c_sigma, embed_sp_in_su, standard_rep_su, AdmissibleRep,
    EmbeddingData,
};
use crate::higgs::{
    curvature_and_trace_identity, make_sample, omega_two_routes, verify_wedge_collapse,
    SampleMode,
};
use crate::interval::DEFAULT_PI_BITS;
use crate::lie::{build_algebra, Family};
use crate::report::{build_report, build_scan, DegreeRow, MwReport, ReportOptions, ScanTable};
use crate::scalar::parse_rational;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    Su,
    Sp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

/// Deliberate corruption hooks: negative controls for the failure paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InjectFault {
    /// Negate the stored image of the central element.
    SignOfI,
    /// Skip the 1/sqrt(2) normalization of the conjugating matrix.
    DropTScale,
}

#[derive(Parser, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[command(
    name = "mwbound",
    version,
    about = "Certified Milnor-Wood degree bounds for su(p,q) and sp(2n,R), in exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Build the full certified report for one group.
    Report(ReportArgs),
    /// Run the structural checks plus a seeded identity campaign.
    Verify(VerifyArgs),
    /// Check the symplectic-into-unitary conjugation identities.
    CheckEmbedding(EmbeddingArgs),
    /// Tabulate gate decisions across the certified degree range.
    ScanDegrees(ScanArgs),
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSelect {
    /// Group family.
    #[arg(long, value_enum)]
    pub group: GroupKind,
    /// First block size for su(p,q).
    #[arg(long)]
    pub p: Option<usize>,
    /// Second block size for su(p,q).
    #[arg(long)]
    pub q: Option<usize>,
    /// Half-rank for sp(2n,R).
    #[arg(long)]
    pub n: Option<usize>,
}

impl GroupSelect {
    pub fn family(&self) -> Result<Family, String> {
        match self.group {
            GroupKind::Su => {
                if self.n.is_some() {
                    return Err("--n applies only to --group sp".into());
                }
                let (Some(p), Some(q)) = (self.p, self.q) else {
                    return Err("--group su requires --p and --q".into());
                };
                if p < 1 || q < 1 {
                    return Err("--p and --q must be at least 1".into());
                }
                Ok(Family::Su { p, q })
            }
            GroupKind::Sp => {
                if self.p.is_some() || self.q.is_some() {
                    return Err("--p and --q apply only to --group su".into());
                }
                let Some(n) = self.n else {
                    return Err("--group sp requires --n".into());
                };
                if n < 1 {
                    return Err("--n must be at least 1".into());
                }
                Ok(Family::Sp { n })
            }
        }
    }
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub group: GroupSelect,
    /// Normalized volume as an exact rational, e.g. "100" or "628/100".
    #[arg(long)]
    pub vol: String,
    /// Seed for the identity campaign samples.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Identity campaign trials embedded in the report.
    #[arg(long, default_value_t = 8)]
    pub trials: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Pi enclosure precision in bits; overrides MW_PI_BITS.
    #[arg(long)]
    pub pi_bits: Option<u32>,
    /// Write the payload to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub group: GroupSelect,
    /// Identity campaign trials.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Test hook: corrupt the build to exercise the failure paths.
    #[arg(long, value_enum)]
    pub debug_inject_fault: Option<InjectFault>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingArgs {
    /// Half-rank of the symplectic algebra to embed.
    #[arg(long)]
    pub n: usize,
    /// Test hook: corrupt the build to exercise the failure paths.
    #[arg(long, value_enum)]
    pub debug_inject_fault: Option<InjectFault>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub group: GroupSelect,
    /// Normalized volume as an exact rational.
    #[arg(long)]
    pub vol: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    /// Pi enclosure precision in bits; overrides MW_PI_BITS.
    #[arg(long)]
    pub pi_bits: Option<u32>,
    /// Write the payload to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Flat, serializable view of a parsed invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliConfig {
    pub subcommand: String,
    pub group: Option<GroupKind>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub n: Option<usize>,
    pub vol: Option<String>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub format: Option<OutputFormat>,
    pub pi_bits: Option<u32>,
    pub out: Option<PathBuf>,
    pub debug_inject_fault: Option<InjectFault>,
}

impl CliConfig {
    pub fn of(cli: &Cli) -> CliConfig {
        let empty = CliConfig {
            subcommand: String::new(),
            group: None,
            p: None,
            q: None,
            n: None,
            vol: None,
            seed: None,
            trials: None,
            format: None,
            pi_bits: None,
            out: None,
            debug_inject_fault: None,
        };
        match &cli.command {
            Command::Report(a) => CliConfig {
                subcommand: "report".into(),
                group: Some(a.group.group),
                p: a.group.p,
                q: a.group.q,
                n: a.group.n,
                vol: Some(a.vol.clone()),
                seed: Some(a.seed),
                trials: Some(a.trials),
                format: Some(a.format),
                pi_bits: a.pi_bits,
                out: a.out.clone(),
                ..empty
            },
            Command::Verify(a) => CliConfig {
                subcommand: "verify".into(),
                group: Some(a.group.group),
                p: a.group.p,
                q: a.group.q,
                n: a.group.n,
                seed: Some(a.seed),
                trials: Some(a.trials),
                debug_inject_fault: a.debug_inject_fault,
                ..empty
            },
            Command::CheckEmbedding(a) => CliConfig {
                subcommand: "check-embedding".into(),
                group: Some(GroupKind::Sp),
                n: Some(a.n),
                debug_inject_fault: a.debug_inject_fault,
                ..empty
            },
            Command::ScanDegrees(a) => CliConfig {
                subcommand: "scan-degrees".into(),
                group: Some(a.group.group),
                p: a.group.p,
                q: a.group.q,
                n: a.group.n,
                vol: Some(a.vol.clone()),
                format: Some(a.format),
                pi_bits: a.pi_bits,
                out: a.out.clone(),
                ..empty
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdResult {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn ok(stdout: String) -> CmdResult {
    CmdResult { stdout, stderr: String::new(), code: 0 }
}

fn usage(msg: &str) -> CmdResult {
    CmdResult { stdout: String::new(), stderr: format!("usage error: {msg}\n"), code: 2 }
}

fn failure(stdout: String, msg: &str) -> CmdResult {
    CmdResult { stdout, stderr: format!("error: {msg}\n"), code: 1 }
}

/// Precedence: explicit flag, then MW_PI_BITS, then the default.
fn resolve_pi_bits(flag: Option<u32>) -> Result<u32, String> {
    if let Some(bits) = flag {
        return Ok(bits);
    }
    match std::env::var("MW_PI_BITS") {
        Ok(s) => s
            .parse::<u32>()
            .map_err(|_| format!("MW_PI_BITS must be a bit count, got {s:?}")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_PI_BITS),
        Err(std::env::VarError::NotUnicode(_)) => Err("MW_PI_BITS is not valid unicode".into()),
    }
}

fn parse_vol(s: &str) -> Result<Rational, String> {
    let v = parse_rational(s).map_err(|e| format!("--vol: {e}"))?;
    if !v.is_positive() {
        return Err("--vol must be positive".into());
    }
    Ok(v)
}

fn deliver(payload: String, out: Option<&Path>) -> CmdResult {
    match out {
        None => ok(payload),
        Some(path) => match std::fs::write(path, &payload) {
            Ok(()) => ok(format!("wrote {}\n", path.display())),
            Err(e) => failure(String::new(), &format!("cannot write {}: {e}", path.display())),
        },
    }
}

fn degree_table_text(rows: &[DegreeRow]) -> String {
    let coeff_w = rows
        .iter()
        .map(|r| r.toledo_coeff.len())
        .chain(std::iter::once("toledo_coeff".len()))
        .max()
        .unwrap();
    let deg_w = rows
        .iter()
        .map(|r| r.degree.to_string().len())
        .chain(std::iter::once("degree".len()))
        .max()
        .unwrap();
    let mut s = format!(
        "{:>deg_w$}  {:>coeff_w$}  {:<4}  {}\n",
        "degree", "toledo_coeff", "gate", "margin"
    );
    for r in rows {
        s.push_str(&format!(
            "{:>deg_w$}  {:>coeff_w$}  {:<4}  {}\n",
            r.degree,
            r.toledo_coeff,
            r.gate.to_string(),
            r.margin
        ));
    }
    s
}

fn report_table_text(r: &MwReport) -> String {
    let cert = &r.certificates;
    let mut s = String::new();
    s.push_str(&format!("group        {}\n", r.group));
    s.push_str(&format!("matrix_size  {}\n", r.matrix_size));
    s.push_str(&format!(
        "dim          {} (k {}, p {})\n",
        r.dim, r.dim_k, r.dim_p
    ));
    s.push_str(&format!("rank         {}\n", r.rank));
    s.push_str(&format!("p_x          {}\n", r.p_x));
    s.push_str(&format!("c_sigma      {}\n", r.c_sigma));
    s.push_str(&format!("vol          {}\n", r.vol));
    s.push_str(&format!("pi_bits      {}\n", r.pi_bits));
    s.push_str(&format!("bound_lo     {}\n", r.bound_lo));
    s.push_str(&format!("bound_hi     {}\n", r.bound_hi));
    s.push_str(&format!("max_degree   {}\n", r.max_degree));
    s.push_str(&format!(
        "admissible   faithful={} sigma_pattern={} off_diagonal={} split=({},{})\n",
        cert.admissibility.faithful,
        cert.admissibility.sigma_i_pattern,
        cert.admissibility.off_diagonal,
        cert.admissibility.dim_v,
        cert.admissibility.dim_w
    ));
    s.push_str(&format!(
        "identities   trials={} wedge={} curvature={} routes={}\n\n",
        cert.identity_suite.trials,
        cert.identity_suite.wedge_collapse_pass,
        cert.identity_suite.curvature_pass,
        cert.identity_suite.route_agreement_pass
    ));
    s.push_str(&degree_table_text(&r.degrees));
    s
}

fn scan_table_text(t: &ScanTable) -> String {
    let mut s = format!(
        "group {}  vol {}  rank {}  c_sigma {}  max_degree {}\n\n",
        t.group, t.vol, t.rank, t.c_sigma, t.max_degree
    );
    s.push_str(&degree_table_text(&t.degrees));
    s
}

fn cmd_report(args: &ReportArgs) -> CmdResult {
    let family = match args.group.family() {
        Ok(f) => f,
        Err(m) => return usage(&m),
    };
    let vol = match parse_vol(&args.vol) {
        Ok(v) => v,
        Err(m) => return usage(&m),
    };
    if args.trials < 1 {
        return usage("--trials must be at least 1");
    }
    let pi_bits = match resolve_pi_bits(args.pi_bits) {
        Ok(b) => b,
        Err(m) => return usage(&m),
    };
    let opts = ReportOptions { seed: args.seed, trials: args.trials, pi_bits };
    let report = match build_report(family, &vol, &opts) {
        Ok(r) => r,
        Err(e) => return failure(String::new(), &e.to_string()),
    };
    let payload = match args.format {
        OutputFormat::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        OutputFormat::Csv => report.degree_table_csv(),
        OutputFormat::Table => report_table_text(&report),
    };
    deliver(payload, args.out.as_deref())
}

fn check_line(out: &mut String, name: &str, r: Result<(), String>) -> Result<(), String> {
    match r {
        Ok(()) => {
            out.push_str(&format!("check {name} ... PASS\n"));
            Ok(())
        }
        Err(e) => {
            out.push_str(&format!("check {name} ... FAIL\n"));
            Err(e)
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let family = match args.group.family() {
        Ok(f) => f,
        Err(m) => return usage(&m),
    };
    if args.trials < 1 {
        return usage("--trials must be at least 1");
    }
    if args.debug_inject_fault == Some(InjectFault::DropTScale)
        && !matches!(family, Family::Sp { .. })
    {
        return usage("--debug-inject-fault drop-t-scale applies only to --group sp");
    }
    let mut out = format!("verify {family} seed {} trials {}\n", args.seed, args.trials);

    macro_rules! step {
        ($name:literal, $expr:expr) => {
            if let Err(e) = check_line(&mut out, $name, $expr.map_err(|x| x.to_string())) {
                return failure(out, &e);
            }
        };
    }

    let g = match build_algebra(family) {
        Ok(g) => g,
        Err(e) => return failure(out, &e.to_string()),
    };
    step!("jacobi", g.check_jacobi_all());
    step!("killing-closed-form", g.check_killing_closed_form());
    step!("killing-signature", g.check_killing_signature());
    step!("ad-invariance", g.check_ad_invariance());
    step!("cartan-grading", g.check_cartan_grading());
    let h = match g.hermitian_structure() {
        Ok(h) => {
            out.push_str(&format!(
                "check hermitian-structure ... PASS (rank {})\n",
                h.rank()
            ));
            h
        }
        Err(e) => {
            out.push_str("check hermitian-structure ... FAIL\n");
            return failure(out, &e.to_string());
        }
    };
    let mut rep = {
        let built = match (family, args.debug_inject_fault) {
            (Family::Sp { n }, Some(InjectFault::DropTScale)) => {
                AdmissibleRep::from_embedding(&g, &h, EmbeddingData::new_unnormalized(n))
            }
            (Family::Sp { .. }, _) => embed_sp_in_su(&g, &h),
            (Family::Su { .. }, _) => standard_rep_su(&g, &h),
        };
        match built {
            Ok(r) => {
                out.push_str("check representation ... PASS\n");
                r
            }
            Err(e) => {
                out.push_str("check representation ... FAIL\n");
                return failure(out, &e.to_string());
            }
        }
    };
    if args.debug_inject_fault == Some(InjectFault::SignOfI) {
        rep.flip_sigma_sign();
    }
    if let Some(emb) = rep.embedding() {
        step!("embedding-s-involution", emb.verify_involution());
        step!("embedding-t-unitary", emb.verify_unitary());
        step!("embedding-images-in-target", emb.verify_images_in_target(&g));
        step!("embedding-block-display", emb.verify_block_display(&g));
        step!("embedding-trace-compat", emb.verify_trace_compat(&g));
    }
    step!("homomorphism", rep.check_homomorphism(&g));
    step!(
        "admissibility",
        check_admissible(&g, &rep, h.central()).map(|_| ())
    );
    let c_sigma = match compute_c_sigma(&g, &h, &rep) {
        Ok(c) => {
            out.push_str(&format!("check c-sigma ... PASS ({c})\n"));
            c
        }
        Err(e) => {
            out.push_str("check c-sigma ... FAIL\n");
            return failure(out, &e.to_string());
        }
    };

    let (v, w) = (rep.dim_v(), rep.dim_w());
    let modes: &[SampleMode] = if v * w >= 2 {
        &[SampleMode::IMultiple, SampleMode::ScalarMultiple, SampleMode::Structured]
    } else {
        &[SampleMode::IMultiple, SampleMode::ScalarMultiple]
    };
    for trial in 0..args.trials {
        let mode = modes[trial % modes.len()];
        let trial_seed = args.seed.wrapping_add(trial as u64);
        let outcome = make_sample(v, w, mode, trial_seed)
            .map_err(|e| e.to_string())
            .and_then(|s| {
                let wedge_report = verify_wedge_collapse(&s).map_err(|e| e.to_string())?;
                if !wedge_report.all_pass() {
                    let names: Vec<&str> = wedge_report
                        .checks
                        .iter()
                        .filter(|c| !c.pass)
                        .map(|c| c.name)
                        .collect();
                    return Err(format!("wedge identities failed: {}", names.join(", ")));
                }
                curvature_and_trace_identity(&s, &rep).map_err(|e| e.to_string())?;
                omega_two_routes(&s, &rep, &c_sigma).map_err(|e| e.to_string())?;
                Ok(())
            });
        match outcome {
            Ok(()) => out.push_str(&format!("trial {trial} {mode} ... PASS\n")),
            Err(e) => {
                out.push_str(&format!("trial {trial} {mode} ... FAIL\n"));
                return failure(out, &e);
            }
        }
    }
    out.push_str("verify: all checks passed\n");
    ok(out)
}

fn cmd_check_embedding(args: &EmbeddingArgs) -> CmdResult {
    if args.n < 1 {
        return usage("--n must be at least 1");
    }
    if args.debug_inject_fault == Some(InjectFault::SignOfI) {
        return usage("--debug-inject-fault sign-of-i applies only to verify");
    }
    let family = Family::Sp { n: args.n };
    let mut out = format!("check-embedding {family}\n");

    macro_rules! step {
        ($name:literal, $expr:expr) => {
            if let Err(e) = check_line(&mut out, $name, $expr.map_err(|x| x.to_string())) {
                return failure(out, &e);
            }
        };
    }

    let g = match build_algebra(family) {
        Ok(g) => g,
        Err(e) => return failure(out, &e.to_string()),
    };
    let emb = match args.debug_inject_fault {
        Some(InjectFault::DropTScale) => EmbeddingData::new_unnormalized(args.n),
        _ => EmbeddingData::new(args.n),
    };
    step!("s-involution", emb.verify_involution());
    step!("t-unitary", emb.verify_unitary());
    step!("images-in-target", emb.verify_images_in_target(&g));
    step!("block-display", emb.verify_block_display(&g));
    step!("trace-compat", emb.verify_trace_compat(&g));
    out.push_str("check-embedding: all checks passed\n");
    ok(out)
}

fn cmd_scan(args: &ScanArgs) -> CmdResult {
    let family = match args.group.family() {
        Ok(f) => f,
        Err(m) => return usage(&m),
    };
    let vol = match parse_vol(&args.vol) {
        Ok(v) => v,
        Err(m) => return usage(&m),
    };
    let pi_bits = match resolve_pi_bits(args.pi_bits) {
        Ok(b) => b,
        Err(m) => return usage(&m),
    };
    let table = match build_scan(family, &vol, pi_bits) {
        Ok(t) => t,
        Err(e) => return failure(String::new(), &e.to_string()),
    };
    let payload = match args.format {
        OutputFormat::Json => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Table => scan_table_text(&table),
    };
    deliver(payload, args.out.as_deref())
}

pub fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Report(a) => cmd_report(a),
        Command::Verify(a) => cmd_verify(a),
        Command::CheckEmbedding(a) => cmd_check_embedding(a),
        Command::ScanDegrees(a) => cmd_scan(a),
    }
}

/// Parses the process arguments, runs the command, prints its output, and
/// returns the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = dispatch(&cli);
    print!("{}", result.stdout);
    eprint!("{}", result.stderr);
    result.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(args).unwrap()
    }

    #[test]
    fn parsed_config_round_trips() {
        let cli = parse(&[
            "mwbound", "report", "--group", "su", "--p", "2", "--q", "3", "--vol", "628/100",
            "--seed", "5", "--trials", "12", "--format", "csv", "--pi-bits", "256",
        ]);
        let config = CliConfig::of(&cli);
        let json = serde_json::to_string(&config).unwrap();
        let back: CliConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(config, back);
        assert_eq!(config.subcommand, "report");
        assert_eq!(config.vol.as_deref(), Some("628/100"));
        assert_eq!(config.pi_bits, Some(256));

        let full = serde_json::to_string(&cli).unwrap();
        let cli_back: Cli = serde_json::from_str(&full).unwrap();
        assert_eq!(cli, cli_back);
    }

    #[test]
    fn group_selection_is_validated() {
        let cli = parse(&["mwbound", "verify", "--group", "su", "--p", "2", "--q", "2"]);
        let Command::Verify(a) = &cli.command else { panic!() };
        assert_eq!(a.group.family().unwrap(), Family::Su { p: 2, q: 2 });

        let cli = parse(&["mwbound", "verify", "--group", "su", "--p", "0", "--q", "3"]);
        let Command::Verify(a) = &cli.command else { panic!() };
        assert!(a.group.family().is_err());

        let cli = parse(&["mwbound", "verify", "--group", "su", "--p", "2", "--q", "2", "--n", "1"]);
        let Command::Verify(a) = &cli.command else { panic!() };
        assert!(a.group.family().is_err());

        let cli = parse(&["mwbound", "verify", "--group", "sp"]);
        let Command::Verify(a) = &cli.command else { panic!() };
        assert!(a.group.family().is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        let cli = parse(&[
            "mwbound", "report", "--group", "su", "--p", "0", "--q", "3", "--vol", "1",
        ]);
        let r = dispatch(&cli);
        assert_eq!(r.code, 2);
        assert!(r.stderr.starts_with("usage error:"));

        let cli = parse(&[
            "mwbound", "report", "--group", "su", "--p", "1", "--q", "1", "--vol", "0",
        ]);
        assert_eq!(dispatch(&cli).code, 2);

        let cli = parse(&[
            "mwbound", "report", "--group", "su", "--p", "1", "--q", "1", "--vol", "1.5",
        ]);
        assert_eq!(dispatch(&cli).code, 2);
    }

    #[test]
    fn report_csv_payload() {
        let cli = parse(&[
            "mwbound", "report", "--group", "sp", "--n", "1", "--vol", "1", "--format", "csv",
            "--pi-bits", "64",
        ]);
        let r = dispatch(&cli);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let lines: Vec<&str> = r.stdout.lines().collect();
        assert_eq!(lines[0], "degree,toledo_coeff,gate,margin");
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn verify_small_group_passes() {
        let cli = parse(&[
            "mwbound", "verify", "--group", "su", "--p", "1", "--q", "1", "--trials", "4",
        ]);
        let r = dispatch(&cli);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert!(r.stdout.contains("check jacobi ... PASS"));
        assert!(r.stdout.contains("check c-sigma ... PASS (-2)"));
        assert!(r.stdout.contains("trial 3"));
        assert!(r.stdout.ends_with("verify: all checks passed\n"));
    }

    #[test]
    fn verify_flagged_sigma_fault_fails() {
        let cli = parse(&[
            "mwbound", "verify", "--group", "su", "--p", "1", "--q", "2", "--trials", "1",
            "--debug-inject-fault", "sign-of-i",
        ]);
        let r = dispatch(&cli);
        assert_eq!(r.code, 1);
        assert!(r.stdout.contains("check admissibility ... FAIL"));
        assert!(!r.stderr.is_empty());
    }

    #[test]
    fn check_embedding_and_its_fault() {
        let cli = parse(&["mwbound", "check-embedding", "--n", "1"]);
        let r = dispatch(&cli);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert!(r.stdout.ends_with("check-embedding: all checks passed\n"));

        let cli = parse(&[
            "mwbound", "check-embedding", "--n", "1", "--debug-inject-fault", "drop-t-scale",
        ]);
        let r = dispatch(&cli);
        assert_eq!(r.code, 1);
        assert!(r.stdout.contains("check t-unitary ... FAIL"));
    }

    #[test]
    fn scan_degrees_window() {
        // rank 1, |c| = 2, vol 30: bound = 30/(4*pi) = 2.387..., so rows
        // -3..3 with the extremes as failing margin rows.
        let cli = parse(&[
            "mwbound", "scan-degrees", "--group", "su", "--p", "1", "--q", "1", "--vol", "30",
            "--format", "csv", "--pi-bits", "64",
        ]);
        let r = dispatch(&cli);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let lines: Vec<&str> = r.stdout.lines().collect();
        assert_eq!(lines.len(), 8);
        assert_eq!(lines[1], "-3,1/5,FAIL,true");
        assert_eq!(lines[4], "0,0,PASS,false");
        assert_eq!(lines[7], "3,-1/5,FAIL,true");
    }

    #[test]
    fn table_format_is_aligned_and_deterministic() {
        let cli = parse(&[
            "mwbound", "scan-degrees", "--group", "sp", "--n", "1", "--vol", "1", "--pi-bits",
            "64",
        ]);
        let a = dispatch(&cli);
        let b = dispatch(&cli);
        assert_eq!(a, b);
        assert!(a.stdout.starts_with("group sp(2,R)  vol 1  rank 1  c_sigma -2  max_degree 0\n"));
        assert!(a.stdout.contains("degree  toledo_coeff  gate  margin"));
    }
}

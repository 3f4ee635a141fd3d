//! Command-line driver: construct family members, run the verification
//! pipeline, and expose the individual checks.
//!
//! Exit codes: 0 success, 1 check refuted or inconclusive, 2 usage or
//! validation error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use planetwist::arith::parse_rational;
use planetwist::curves::{huggins_form, scaled_form, HugginsParams};
use planetwist::descent::{
    build_certificate, build_paper_cocycle, norm_obstruction, quaternion_embedding_check,
    validate_cocycle, CertificateConfig, CocycleValidation, NormConclusion, QuaternionOutcome,
};
use planetwist::serialize;
use planetwist::smooth::{certify_smooth_up_to, ProbeOutcome};
use planetwist::tower::spec_m_prime;

#[derive(Parser)]
#[command(
    name = "planetwist",
    version,
    about = "Exact construction and verification of Hessian-invariant plane sextics and their twists"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FamilyArgs {
    /// First parameter (rational, e.g. 2 or -3/4); u, v, uv must be
    /// non-squares
    #[arg(long)]
    u: String,
    /// Second parameter (rational)
    #[arg(long)]
    v: String,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member and print its JSON document
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        /// Prime for the scaled family; omit for the plain family
        #[arg(long)]
        p: Option<u64>,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full verification pipeline and emit a certificate
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        /// Prime for the twist
        #[arg(long)]
        p: u64,
        /// Output path for the certificate (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Height bound for the norm-equation search
        #[arg(long, default_value_t = 50)]
        height_bound: u32,
        /// Largest prime tried by the smoothness probe
        #[arg(long, default_value_t = 200)]
        qmax: u64,
        /// Also run the exact smoothness decision (slow)
        #[arg(long)]
        exact: bool,
        /// Work limit for the exact smoothness decision
        #[arg(long, default_value_t = planetwist::smooth::DEFAULT_EXACT_BUDGET)]
        exact_work_limit: u64,
        /// Seed for the deterministic trivialization trials
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record wall-clock timings (breaks byte-for-byte determinism)
        #[arg(long)]
        timings: bool,
    },
    /// Probe smoothness of a serialized form by good reduction
    Smoothness {
        /// Path to a form or curve JSON document
        #[arg(long)]
        form: PathBuf,
        #[arg(long, default_value_t = 200)]
        qmax: u64,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
    /// Norm/inertia obstruction for a prime p against Q(cos 2pi/7)
    NormCheck {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Quaternion-embedding criterion for L = Q(zeta3, sqrt u, sqrt v)
    QuaternionCheck {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 50)]
        height_bound: u32,
        #[arg(long)]
        json: bool,
    },
    /// Build the descent cocycle for p and validate it on all pairs
    CocycleCheck {
        /// Prime for the twist
        #[arg(long)]
        p: u64,
        /// Family parameter u (the cocycle lives over M' built from u, v)
        #[arg(long, default_value = "2")]
        u: String,
        /// Family parameter v
        #[arg(long, default_value = "13")]
        v: String,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &Option<PathBuf>, payload: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, payload)?,
        None => std::io::stdout().write_all(payload)?,
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Build { family, p, out } => {
            let u = parse_rational(&family.u)?;
            let v = parse_rational(&family.v)?;
            // parameter validation first: failures are usage errors
            HugginsParams::new(u.clone(), v.clone(), p)?;
            let curve = match p {
                None => huggins_form(&u, &v)?,
                Some(p) => scaled_form(&u, &v, p)?,
            };
            let doc = serialize::curve_to_value(&curve);
            let mut bytes = serde_json::to_vec_pretty(&doc)?;
            bytes.push(b'\n');
            emit(&out, &bytes)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            family,
            p,
            out,
            height_bound,
            qmax,
            exact,
            exact_work_limit,
            seed,
            timings,
        } => {
            let u = parse_rational(&family.u)?;
            let v = parse_rational(&family.v)?;
            HugginsParams::new(u.clone(), v.clone(), Some(p))?;
            let config = CertificateConfig {
                height_bound,
                qmax,
                exact_smoothness: exact,
                exact_work_limit,
                seed,
                timings,
            };
            let cert = build_certificate(&u, &v, p, &config)?;
            emit(&out, &cert.to_json_bytes()?)?;
            for check in &cert.checks {
                eprintln!("{:>16} {}", format!("[{:?}]", check.status), check.name);
            }
            if cert.all_computational_checks_verified() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Smoothness { form, qmax, json } => {
            let text = std::fs::read_to_string(&form)?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            let form = serialize::form_from_value(&value)?;
            let outcome = certify_smooth_up_to(&form, qmax)?;
            if json {
                let v = match &outcome {
                    ProbeOutcome::SmoothCertified { q, extension_degree } => serde_json::json!({
                        "outcome": "SmoothCertified", "q": q, "extension_degree": extension_degree,
                    }),
                    ProbeOutcome::SingularAtReduction { q, locus, point, .. } => serde_json::json!({
                        "outcome": "SingularAtReduction", "q": q, "locus": locus, "point": point,
                    }),
                    ProbeOutcome::Inadmissible { reason } => serde_json::json!({
                        "outcome": "Inadmissible", "reason": reason,
                    }),
                };
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                match &outcome {
                    ProbeOutcome::SmoothCertified { q, extension_degree } => {
                        println!("SmoothCertified at q={q} (extension degree {extension_degree})")
                    }
                    ProbeOutcome::SingularAtReduction { q, locus, point, .. } => {
                        println!("SingularAtReduction at q={q}: {locus}; point: {point:?}")
                    }
                    ProbeOutcome::Inadmissible { reason } => println!("Inadmissible: {reason}"),
                }
            }
            Ok(if outcome.is_smooth_certificate() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::NormCheck { p, json } => {
            let report = norm_obstruction(p)?;
            let nontrivial = report.conclusion == NormConclusion::NontrivialCocycle;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "p": report.p,
                        "residue_mod_7": report.residue_mod_7,
                        "order_mod_7": report.order_mod_7,
                        "inert": report.inert,
                        "conclusion": format!("{:?}", report.conclusion),
                        "narrative": report.narrative,
                    }))?
                );
            } else if nontrivial {
                println!(
                    "order {}, inert, not a norm: nontrivial",
                    report.order_mod_7.unwrap()
                );
            } else {
                println!(
                    "residue {} mod 7, order {:?}: inconclusive",
                    report.residue_mod_7, report.order_mod_7
                );
            }
            Ok(if nontrivial { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::QuaternionCheck { family, height_bound, json } => {
            let u = parse_rational(&family.u)?;
            let v = parse_rational(&family.v)?;
            let outcome = quaternion_embedding_check(&u, &v, height_bound)?;
            if json {
                let v = match &outcome {
                    QuaternionOutcome::Embeddable { x, y } => serde_json::json!({
                        "outcome": "Embeddable",
                        "x": serialize::element_to_value(x),
                        "y": serialize::element_to_value(y),
                    }),
                    QuaternionOutcome::NotEmbeddable { obstruction_prime } => serde_json::json!({
                        "outcome": "NotEmbeddable", "obstruction_prime": obstruction_prime,
                    }),
                    QuaternionOutcome::Inconclusive { height_bound } => serde_json::json!({
                        "outcome": "Inconclusive", "height_bound": height_bound,
                    }),
                };
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                match &outcome {
                    QuaternionOutcome::Embeddable { .. } => println!("Embeddable (witness found)"),
                    QuaternionOutcome::NotEmbeddable { obstruction_prime } => {
                        println!("NotEmbeddable (local obstruction at {obstruction_prime})")
                    }
                    QuaternionOutcome::Inconclusive { height_bound } => {
                        println!("Inconclusive up to height {height_bound}")
                    }
                }
            }
            Ok(match outcome {
                QuaternionOutcome::Inconclusive { .. } => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::CocycleCheck { p, u, v, json } => {
            let u = parse_rational(&u)?;
            let v = parse_rational(&v)?;
            let spec = spec_m_prime(&u, &v, p)?;
            let cocycle = build_paper_cocycle(p, &spec)?;
            let validation = validate_cocycle(&cocycle, None)?;
            if json {
                let v = match &validation {
                    CocycleValidation::Valid { pairs_checked } => serde_json::json!({
                        "outcome": "valid", "pairs_checked": pairs_checked,
                    }),
                    CocycleValidation::Invalid { pair } => serde_json::json!({
                        "outcome": "invalid", "failing_pair": [pair.0.clone(), pair.1.clone()],
                    }),
                };
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                match &validation {
                    CocycleValidation::Valid { pairs_checked } => {
                        println!("valid ({pairs_checked} pairs)")
                    }
                    CocycleValidation::Invalid { pair } => {
                        println!("invalid at pair {:?}, {:?}", pair.0, pair.1)
                    }
                }
            }
            Ok(if validation.is_valid() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

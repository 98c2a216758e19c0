//! JSON-in, JSON-out front end for the ephi library. Every command reads one
//! UTF-8 JSON document (file or stdin), runs one exact operation, and writes
//! one document (file or stdout). Certificate-emitting commands also accept a
//! previously emitted certificate and re-verify it, so outputs round-trip.
//!
//! Exit codes: 0 verified or success, 1 refuted, 2 any error.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use ephi::certificate::{Certificate, ClaimKind};
use ephi::json::{self, CoverDoc, ElementDoc, FormDoc, MatrixDoc, WordDoc};
use ephi::localglobal::{dilation_verify, quillen_patch_verify};
use ephi::parse::parse_element;
use ephi::ring::RingDescriptor;
use ephi::vaserstein;
use ephi::{selftest, Error};

#[derive(Parser)]
#[command(
    name = "ephi",
    version,
    about = "Exact certificates for elementary symplectic groups of alternating forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input document path, or - for stdin.
    #[arg(long, global = true, default_value = "-")]
    input: String,

    /// Output path, or - for stdout.
    #[arg(long, global = true, default_value = "-")]
    output: String,

    /// Require the Pfaffian to be exactly one when reducing a form.
    #[arg(long, global = true)]
    strict_pfaffian: bool,

    /// Seed for the selftest suite.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,

    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Pfaffian of an alternating matrix document; prints the value.
    Pfaffian,
    /// Membership certificate for {"form": ..., "matrix": ...}.
    VerifySp,
    /// Block decomposition c, nu, d, mu of an alternating form document.
    DecomposeForm,
    /// Translate E_ij(a) of GL_{2n-1} into one alpha/beta atom over Z[a].
    Translate {
        /// Half rank; the generators act in size 2n - 1.
        #[arg(long)]
        n: usize,
        /// Row index, 1-based; one of i, j must be 1.
        #[arg(long)]
        i: usize,
        /// Column index, 1-based.
        #[arg(long)]
        j: usize,
        /// Parameter, parsed over Z[a].
        #[arg(long)]
        a: String,
    },
    /// Symplectization certificate for a row/column block word document.
    Symplectize,
    /// Congruation certificate for an elementary word document of even size.
    Congruate,
    /// Reduction certificate for an alternating matrix document.
    ReduceForm,
    /// Expression certificate for {"target": ..., "phi": ...}.
    Express,
    /// Patching certificate for {"theta": ..., "cover": ...}.
    PatchVerify,
    /// Dilation certificate for {"theta_star", "theta", "a", "b", "d"}.
    DilationVerify,
    /// Evaluate a word document to its matrix.
    EvalWord,
    /// Run the seeded invariant suite and print its report.
    Selftest,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MembershipDoc {
    form: FormDoc,
    matrix: MatrixDoc,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpressDoc {
    target: WordDoc,
    phi: FormDoc,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PatchDoc {
    theta: WordDoc,
    cover: CoverDoc,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DilationDoc {
    theta_star: WordDoc,
    theta: WordDoc,
    a: ElementDoc,
    b: ElementDoc,
    d: u32,
}

/// Blocks of the inverse pair phi = [[0, -c], [c^t, nu]],
/// phi^{-1} = [[0, d], [-d^t, mu]], plus the Pfaffian.
#[derive(Serialize)]
struct DecomposeOut {
    c: MatrixDoc,
    nu: MatrixDoc,
    d: MatrixDoc,
    mu: MatrixDoc,
    pfaffian: String,
}

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;
type RunResult = CliResult<u8>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn write_output(path: &str, body: &str) -> CliResult<()> {
    if path == "-" {
        print!("{body}");
    } else {
        fs::write(path, body)?;
    }
    Ok(())
}

/// Detects a certificate document (by its claim field) so certificate
/// commands can re-verify their own outputs. Any other document shape falls
/// through to the command's native input.
fn try_certificate(text: &str, expected: ClaimKind) -> Result<Option<Certificate>, Error> {
    let looks_like = serde_json::from_str::<serde_json::Value>(text)
        .ok()
        .map_or(false, |v| v.get("claim").is_some());
    if !looks_like {
        return Ok(None);
    }
    let cert = json::decode_certificate(text)?;
    if cert.claim != expected {
        return Err(Error::Schema(format!(
            "certificate claims {:?}, which this command does not verify",
            cert.claim.label()
        )));
    }
    Ok(Some(cert))
}

fn emit_certificate(cli: &Cli, cert: &Certificate) -> RunResult {
    write_output(&cli.output, &json::encode_certificate(cert, cli.pretty)?)?;
    Ok(if cert.is_verified() { 0 } else { 1 })
}

fn certificate_command(
    cli: &Cli,
    expected: ClaimKind,
    build: impl FnOnce(&str) -> Result<Certificate, Error>,
) -> RunResult {
    let text = read_input(&cli.input)?;
    let cert = match try_certificate(&text, expected)? {
        Some(prior) => prior.reverify()?,
        None => build(&text)?,
    };
    emit_certificate(cli, &cert)
}

fn run(cli: Cli) -> RunResult {
    match &cli.command {
        Command::Pfaffian => {
            let m = json::decode_matrix(&read_input(&cli.input)?)?;
            let pf = m.pfaffian()?;
            write_output(&cli.output, &format!("{}\n", pf.render()))?;
            Ok(0)
        }
        Command::VerifySp => certificate_command(&cli, ClaimKind::SymplecticMembership, |text| {
            let doc: MembershipDoc = json::from_json(text)?;
            let form = json::form_from_doc(&doc.form)?;
            let matrix = json::matrix_from_doc(&doc.matrix)?;
            vaserstein::sp_membership_certificate(&form, &matrix)
        }),
        Command::DecomposeForm => {
            let form = json::decode_form(&read_input(&cli.input)?)?;
            let out = DecomposeOut {
                c: json::matrix_to_doc(form.c()),
                nu: json::matrix_to_doc(form.nu()),
                d: json::matrix_to_doc(form.d()),
                mu: json::matrix_to_doc(form.mu()),
                pfaffian: form.pfaffian().render(),
            };
            write_output(&cli.output, &json::to_json(&out, cli.pretty)?)?;
            Ok(0)
        }
        Command::Translate { n, i, j, a } => {
            let ring = RingDescriptor::polynomial(RingDescriptor::integers(), vec!["a".into()])?;
            let a = parse_element(a, &ring)?;
            let word = vaserstein::translate_elem(&ring, *n, *i, *j, &a)?;
            write_output(&cli.output, &json::to_json(&json::word_to_doc(&word), cli.pretty)?)?;
            Ok(0)
        }
        Command::Symplectize => certificate_command(&cli, ClaimKind::Symplectization, |text| {
            vaserstein::rao_swan_symplectize(&json::decode_word(text)?)
        }),
        Command::Congruate => certificate_command(&cli, ClaimKind::Symplectization, |text| {
            vaserstein::rao_swan_congruate(&json::decode_word(text)?)
        }),
        Command::ReduceForm => {
            let strict = cli.strict_pfaffian;
            certificate_command(&cli, ClaimKind::FormReduction, |text| {
                vaserstein::alternating_reduce(&json::decode_matrix(text)?, strict)
            })
        }
        Command::Express => certificate_command(&cli, ClaimKind::ExpressionInEphi, |text| {
            let doc: ExpressDoc = json::from_json(text)?;
            let target = json::word_from_doc(&doc.target)?;
            let phi = json::form_from_doc(&doc.phi)?;
            vaserstein::express_in_ephi(&target, &phi)
        }),
        Command::PatchVerify => certificate_command(&cli, ClaimKind::PatchingIdentity, |text| {
            let doc: PatchDoc = json::from_json(text)?;
            let theta = json::word_from_doc(&doc.theta)?;
            let cover = json::cover_from_doc(&doc.cover)?;
            quillen_patch_verify(&theta, &cover)
        }),
        Command::DilationVerify => {
            certificate_command(&cli, ClaimKind::DilationLocalization, |text| {
                let doc: DilationDoc = json::from_json(text)?;
                let theta_star = json::word_from_doc(&doc.theta_star)?;
                let theta = json::word_from_doc(&doc.theta)?;
                let a = json::element_from_doc(&doc.a)?;
                let b = json::element_from_doc(&doc.b)?;
                dilation_verify(&theta_star, &theta, &a, &b, doc.d)
            })
        }
        Command::EvalWord => {
            let w = json::decode_word(&read_input(&cli.input)?)?;
            let m = w.evaluate()?;
            write_output(&cli.output, &json::to_json(&json::matrix_to_doc(&m), cli.pretty)?)?;
            Ok(0)
        }
        Command::Selftest => {
            let report = selftest::run(cli.seed);
            write_output(&cli.output, &report.render())?;
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

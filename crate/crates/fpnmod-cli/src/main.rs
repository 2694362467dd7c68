//! Batch CLI for filtered (φ,N)-modules over Q_p.
//!
//! Subcommands: check | analyze | fm | sym | theorem1 | end.
//! Exit codes: 0 ok, 1 parse/usage error, 2 structural axiom failure,
//! 3 p-adic precision exhausted.

mod report;

use clap::{Parser, Subcommand};
use fpnmod::admissibility::{
    has_crystalline_filtration, is_strongly_irreducible_over_unramified, is_weakly_admissible,
    weakly_admissible_submodules, SearchParams,
};
use fpnmod::dichotomy::{
    assert_slopes_in_unit_interval, check_monodromy_lowers_slope, crystalline_dichotomy,
    slope_decomposition,
};
use fpnmod::doc::ModuleDocument;
use fpnmod::endo::{endomorphism_ring, semilinear_endomorphism_dimension};
use fpnmod::exact::rational::parse_rat;
use fpnmod::module::fm_example;
use fpnmod::Error;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fpnmod",
    version,
    about = "Exact computations with filtered (phi,N)-modules over Q_p"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Emit the canonical JSON report instead of the table.
    #[arg(long, global = true)]
    json: bool,

    /// p-adic working precision (digits) for slope computations.
    #[arg(long, global = true, default_value_t = 50)]
    precision: u32,

    /// Seed for the randomized stable-subspace search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the structural axioms of a module document.
    Check { file: PathBuf },
    /// Run the full analysis: numbers, slopes, admissibility, dichotomy,
    /// endomorphisms.
    Analyze { file: PathBuf },
    /// Generate the two-parameter example module document.
    Fm {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: i64,
        /// Rational scalar with v_p(b) = (s-1)/2, e.g. "5" or "5/2".
        #[arg(long)]
        b: String,
    },
    /// Write the n-th symmetric power of the input module.
    Sym {
        file: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Check Hodge-Tate type (0,1) plus weak admissibility, then run the
    /// crystalline dichotomy and print the witness chain.
    Theorem1 { file: PathBuf },
    /// Endomorphism ring dimensions; --semilinear adds the unramified
    /// base-change computation.
    End {
        file: PathBuf,
        #[arg(long)]
        semilinear: bool,
        /// Drop the filtration-preservation constraint.
        #[arg(long = "no-filtration")]
        no_filtration: bool,
    },
}

const EXIT_OK: u8 = 0;
const EXIT_PARSE: u8 = 1;
const EXIT_AXIOM: u8 = 2;
const EXIT_PRECISION: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Let clap render help/version normally; everything else is a
            // usage error (exit 1).
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::from(EXIT_OK);
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(error_exit_code(&err))
        }
    }
}

fn error_exit_code(err: &Error) -> u8 {
    match err {
        Error::PrecisionExhausted { .. } => EXIT_PRECISION,
        _ => EXIT_PARSE,
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.cmd {
        Cmd::Check { file } => cmd_check(cli, file),
        Cmd::Analyze { file } => cmd_analyze(cli, file),
        Cmd::Fm { p, s, b } => cmd_fm(cli, *p, *s, b),
        Cmd::Sym { file, n } => cmd_sym(cli, file, *n),
        Cmd::Theorem1 { file } => cmd_theorem1(cli, file),
        Cmd::End {
            file,
            semilinear,
            no_filtration,
        } => cmd_end(cli, file, *semilinear, *no_filtration),
    }
}

fn read_document(file: &Path) -> Result<(ModuleDocument, String), Error> {
    let bytes = std::fs::read(file)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", file.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|e| Error::Parse(format!("{} is not UTF-8: {e}", file.display())))?;
    let doc = ModuleDocument::parse(&text)?;
    Ok((doc, report::sha256_hex(text.as_bytes())))
}

fn emit(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(cli: &Cli, value: &serde_json::Value) -> Result<(), Error> {
    let text = if cli.json {
        report::to_canonical_string(value)
    } else {
        report::render_human(value)
    };
    emit(cli, &text)
}

fn search_params(cli: &Cli) -> SearchParams {
    SearchParams {
        seed: cli.seed,
        ..SearchParams::default()
    }
}

fn cmd_check(cli: &Cli, file: &Path) -> Result<u8, Error> {
    let (doc, hash) = read_document(file)?;
    let module = doc.to_module()?;
    let validation = module.validate();
    let value = json!({
        "header": report::header(&hash, cli.precision, cli.seed),
        "validation": report::validation_value(&validation),
    });
    emit_report(cli, &value)?;
    Ok(if validation.all_passed() {
        EXIT_OK
    } else {
        EXIT_AXIOM
    })
}

fn cmd_analyze(cli: &Cli, file: &Path) -> Result<u8, Error> {
    let (doc, hash) = read_document(file)?;
    let module = doc.to_module()?;
    let validation = module.validate();
    if !validation.all_passed() {
        let value = json!({
            "header": report::header(&hash, cli.precision, cli.seed),
            "validation": report::validation_value(&validation),
        });
        emit_report(cli, &value)?;
        return Ok(EXIT_AXIOM);
    }
    let params = search_params(cli);

    let decomposition = slope_decomposition(&module, cli.precision)?;
    let monodromy = check_monodromy_lowers_slope(&module, &decomposition);
    let interval = assert_slopes_in_unit_interval(&module, &params, cli.precision)?;

    let admissibility = is_weakly_admissible(&module, &params);
    let subs = weakly_admissible_submodules(&module, &params);
    let strong = is_strongly_irreducible_over_unramified(&module, &params);
    let chain = has_crystalline_filtration(&module, &params);

    let dichotomy_outcome = crystalline_dichotomy(&module, &params, cli.precision);
    if let Err(Error::PrecisionExhausted { precision, detail }) = &dichotomy_outcome {
        return Err(Error::PrecisionExhausted {
            precision: *precision,
            detail: detail.clone(),
        });
    }

    let filtered = endomorphism_ring(&module, true);
    let unfiltered = endomorphism_ring(&module, false);
    let semilinear = semilinear_endomorphism_dimension(&module);

    let value = json!({
        "header": report::header(&hash, cli.precision, cli.seed),
        "validation": report::validation_value(&validation),
        "numbers": report::numbers_value(&module),
        "slopes": report::slopes_value(&decomposition, &monodromy, &interval),
        "admissibility": report::admissibility_value(&admissibility, &subs, &strong, &chain),
        "dichotomy": report::dichotomy_value(&module, &dichotomy_outcome),
        "endomorphisms": report::endo_value(&filtered, &unfiltered, &semilinear),
    });
    emit_report(cli, &value)?;
    Ok(EXIT_OK)
}

fn cmd_fm(cli: &Cli, p: u64, s: i64, b: &str) -> Result<u8, Error> {
    let b = parse_rat(b)?;
    let module = fm_example(p, s, &b)?;
    let doc = ModuleDocument::from_module(&module);
    emit(cli, &doc.canonical_json())?;
    Ok(EXIT_OK)
}

fn cmd_sym(cli: &Cli, file: &Path, n: usize) -> Result<u8, Error> {
    let (doc, _) = read_document(file)?;
    let module = doc.to_module()?;
    let validation = module.validate();
    if !validation.all_passed() {
        eprintln!("input module fails validation; refusing to take a symmetric power");
        return Ok(EXIT_AXIOM);
    }
    let sym = module.sym_power(n)?;
    let out = ModuleDocument::from_module(&sym);
    emit(cli, &out.canonical_json())?;
    Ok(EXIT_OK)
}

fn cmd_theorem1(cli: &Cli, file: &Path) -> Result<u8, Error> {
    let (doc, hash) = read_document(file)?;
    let module = doc.to_module()?;
    let validation = module.validate();
    if !validation.all_passed() {
        let value = json!({
            "header": report::header(&hash, cli.precision, cli.seed),
            "validation": report::validation_value(&validation),
        });
        emit_report(cli, &value)?;
        return Ok(EXIT_AXIOM);
    }
    let params = search_params(cli);
    let outcome = crystalline_dichotomy(&module, &params, cli.precision);
    if let Err(Error::PrecisionExhausted { precision, detail }) = &outcome {
        return Err(Error::PrecisionExhausted {
            precision: *precision,
            detail: detail.clone(),
        });
    }
    let value = json!({
        "header": report::header(&hash, cli.precision, cli.seed),
        "theorem1": report::dichotomy_value(&module, &outcome),
    });
    emit_report(cli, &value)?;
    Ok(EXIT_OK)
}

fn cmd_end(cli: &Cli, file: &Path, semilinear: bool, no_filtration: bool) -> Result<u8, Error> {
    let (doc, hash) = read_document(file)?;
    let module = doc.to_module()?;
    let validation = module.validate();
    if !validation.all_passed() {
        let value = json!({
            "header": report::header(&hash, cli.precision, cli.seed),
            "validation": report::validation_value(&validation),
        });
        emit_report(cli, &value)?;
        return Ok(EXIT_AXIOM);
    }
    let respect = !no_filtration;
    let ring = endomorphism_ring(&module, respect);
    let mut value = json!({
        "header": report::header(&hash, cli.precision, cli.seed),
        "endomorphism_ring": {
            "dimension": ring.dimension,
            "used_filtration": ring.used_filtration,
            "basis": ring.basis.iter().map(report::matrix_value).collect::<Vec<_>>(),
        },
    });
    if semilinear {
        let sol = semilinear_endomorphism_dimension(&module);
        let unfiltered = endomorphism_ring(&module, false);
        value["semilinear"] = match &sol {
            Ok(s) => json!({
                "qp_dimension": s.qp_dimension,
                "trace": s.trace.iter().map(|(name, fate)| json!({
                    "unknown": name,
                    "fate": fate.describe(),
                })).collect::<Vec<_>>(),
            }),
            Err(Error::NotTriangular(reason)) => json!({
                "not_triangular": reason,
                "qp_linear_lower_bound": unfiltered.dimension,
            }),
            Err(other) => return Err(other.clone()),
        };
    }
    emit_report(cli, &value)?;
    Ok(EXIT_OK)
}

//! Command-line front end wiring the pipeline stages: LegalRuleML
//! ingestion, specialization into a concrete deontic logic, embedding
//! into THF, and ground-fragment satisfiability checking with SZS
//! status output.
//!
//! Exit codes: 0 on success (verdicts included), 1 on input or
//! validation errors, 2 on internal errors.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use norma_core::embed::{embed_aqvist_e, embed_modal_d};
use norma_core::lower::{ddl_nesting_diagnostics, to_ddl, to_sdl, LowerOptions};
use norma_core::lrml::{parse_lrml, translate_document};
use norma_core::nmf::{read_logic_spec, validate_nmf, TargetLogic};
use norma_core::semantics::{
    decide_sdl_global, decide_sdl_local, search_ddl_e_with, SearchOptions, SemanticsError,
    Verdict, DEFAULT_ENUMERATION_BUDGET,
};
use norma_core::tptp::{parse_problem, print_problem, LogicValue, Problem};
use norma_core::AssumptionMode;

/// Environment variable overriding the model-enumeration budget.
const BUDGET_ENV: &str = "NORMA_ENUM_BUDGET";

#[derive(Parser)]
#[command(
    name = "norma",
    about = "Translate LegalRuleML rules to TPTP deontic logic problems and check them",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate a LegalRuleML XML document to NMF (underspecified TPTP)
    Lrml2nmf {
        /// Input LegalRuleML file
        input: PathBuf,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Specialize an NMF problem into a concrete deontic logic
    Nmf2logic {
        /// Target logic
        #[arg(long)]
        logic: LogicArg,
        /// Keep `$true => x` implications instead of simplifying to `x`
        #[arg(long)]
        no_simplify_true: bool,
        /// Input NMF problem (.p)
        input: PathBuf,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Embed a specialized problem (SDL or Åqvist E) into classical THF
    Embed {
        /// Assumption mode for the embedding
        #[arg(long, value_enum, default_value_t = SemanticsArg::Global)]
        semantics: SemanticsArg,
        /// Input specialized problem (.p)
        input: PathBuf,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Decide/search satisfiability of a specialized ground problem
    Check {
        #[command(flatten)]
        check: CheckArgs,
        /// Input specialized problem (.p)
        input: PathBuf,
    },
    /// Run all stages on a LegalRuleML document
    Pipeline {
        /// Target logic
        #[arg(long)]
        logic: LogicArg,
        /// Also check satisfiability of the specialized problem
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        check_args: CheckArgs,
        /// Keep `$true => x` implications instead of simplifying to `x`
        #[arg(long)]
        no_simplify_true: bool,
        /// Input LegalRuleML file
        input: PathBuf,
    },
}

#[derive(Args)]
struct OutputArg {
    /// Output path; `-` writes to stdout. Defaults to the input name
    /// with the stage suffix.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct CheckArgs {
    /// Assumption mode: axioms at every world or at a designated one
    #[arg(long, value_enum, default_value_t = SemanticsArg::Global)]
    semantics: SemanticsArg,
    /// World bound for the bounded model search
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    max_worlds: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LogicArg {
    #[value(name = "sdl")]
    Sdl,
    #[value(name = "aqvistE")]
    AqvistE,
    #[value(name = "carmoJones")]
    CarmoJones,
}

impl From<LogicArg> for TargetLogic {
    fn from(arg: LogicArg) -> TargetLogic {
        match arg {
            LogicArg::Sdl => TargetLogic::Sdl,
            LogicArg::AqvistE => TargetLogic::AqvistE,
            LogicArg::CarmoJones => TargetLogic::CarmoJones,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SemanticsArg {
    Global,
    Local,
}

impl From<SemanticsArg> for AssumptionMode {
    fn from(arg: SemanticsArg) -> AssumptionMode {
        match arg {
            SemanticsArg::Global => AssumptionMode::Global,
            SemanticsArg::Local => AssumptionMode::Local,
        }
    }
}

enum CliError {
    Input(String),
    Internal(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(message) => write!(f, "error: {message}"),
            CliError::Internal(message) => write!(f, "internal error: {message}"),
        }
    }
}

fn input_err(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ CliError::Input(_)) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
        Err(e @ CliError::Internal(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Lrml2nmf { input, output } => {
            let problem = stage_lrml2nmf(&input)?;
            emit(&problem, &input, "nmf", &output)
        }
        Command::Nmf2logic {
            logic,
            no_simplify_true,
            input,
            output,
        } => {
            let target = TargetLogic::from(logic);
            let problem = stage_nmf2logic(&input, target, !no_simplify_true)?;
            let stage = stage_of_target(target);
            emit(&problem, &input, stage, &output)
        }
        Command::Embed {
            semantics,
            input,
            output,
        } => {
            let problem = stage_embed(&input, semantics.into())?;
            emit(&problem, &input, "thf", &output)
        }
        Command::Check { check, input } => {
            let problem = read_problem(&input)?;
            let verdict = run_check(&problem, check)?;
            println!("{}", verdict.szs_line(&problem_name(&input)));
            Ok(())
        }
        Command::Pipeline {
            logic,
            check,
            check_args,
            no_simplify_true,
            input,
        } => {
            let target = TargetLogic::from(logic);

            let nmf = stage_lrml2nmf(&input)?;
            let nmf_path = stage_path(&input, "nmf");
            write_file(&nmf_path, &print_problem(&nmf))?;

            let specialized = specialize(&nmf, target, !no_simplify_true)?;
            let stage = stage_of_target(target);
            let specialized_path = stage_path(&input, stage);
            write_file(&specialized_path, &print_problem(&specialized))?;

            if target == TargetLogic::CarmoJones {
                eprintln!("note: no HOL embedding is provided for carmoJones; stopping after the DDL stage");
                if check {
                    return Err(CliError::Input(
                        "unsupported target for checking: carmoJones".to_string(),
                    ));
                }
                return Ok(());
            }

            // the aqvistE embedding is always global; --semantics only
            // steers the modal embedding and the check below
            let embed_mode = match target {
                TargetLogic::AqvistE => AssumptionMode::Global,
                _ => check_args.semantics.into(),
            };
            let embedded = embed(&specialized, target, embed_mode)?;
            write_file(&stage_path(&input, "thf"), &print_problem(&embedded))?;

            if check {
                let verdict = run_check(&specialized, check_args)?;
                println!("{}", verdict.szs_line(&problem_name(&specialized_path)));
            }
            Ok(())
        }
    }
}

// ---- stages ---------------------------------------------------------------

fn stage_lrml2nmf(input: &Path) -> Result<Problem, CliError> {
    let xml = read_file(input)?;
    let document = parse_lrml(&xml).map_err(input_err)?;
    let problem = translate_document(&document).map_err(input_err)?;
    debug_assert!(validate_nmf(&problem).is_empty());
    Ok(problem)
}

fn stage_nmf2logic(
    input: &Path,
    target: TargetLogic,
    simplify: bool,
) -> Result<Problem, CliError> {
    let problem = read_problem(input)?;
    specialize(&problem, target, simplify)
}

fn specialize(
    problem: &Problem,
    target: TargetLogic,
    simplify: bool,
) -> Result<Problem, CliError> {
    // a logic specification already present in the file must agree with
    // the requested target; silent override would hide misconfiguration
    if let Some(declared) = read_logic_spec(problem).map_err(input_err)? {
        if declared != target {
            return Err(CliError::Input(format!(
                "input declares target '{declared}' but --logic requests '{target}'"
            )));
        }
    }
    let options = LowerOptions {
        simplify_true_antecedent: simplify,
    };
    match target {
        TargetLogic::Sdl => to_sdl(problem, options).map_err(input_err),
        TargetLogic::AqvistE | TargetLogic::CarmoJones => {
            let ddl = to_ddl(problem, target, options).map_err(input_err)?;
            for diagnostic in ddl_nesting_diagnostics(&ddl) {
                eprintln!("warning: {diagnostic}");
            }
            Ok(ddl)
        }
    }
}

fn stage_embed(input: &Path, mode: AssumptionMode) -> Result<Problem, CliError> {
    let problem = read_problem(input)?;
    let target = detect_target(&problem)?;
    embed(&problem, target, mode)
}

fn embed(
    problem: &Problem,
    target: TargetLogic,
    mode: AssumptionMode,
) -> Result<Problem, CliError> {
    match target {
        TargetLogic::Sdl => embed_modal_d(problem, mode).map_err(input_err),
        TargetLogic::AqvistE => {
            if mode == AssumptionMode::Local {
                return Err(CliError::Input(
                    "the aqvistE embedding only supports global assumptions".to_string(),
                ));
            }
            embed_aqvist_e(problem).map_err(input_err)
        }
        TargetLogic::CarmoJones => Err(CliError::Input(
            "no HOL embedding is provided for carmoJones".to_string(),
        )),
    }
}

fn run_check(problem: &Problem, args: CheckArgs) -> Result<Verdict, CliError> {
    if problem
        .formulas
        .iter()
        .any(|f| f.role == norma_core::tptp::Role::Conjecture)
    {
        return Err(CliError::Input(
            "conjecture checking is not supported; check handles axiom satisfiability".to_string(),
        ));
    }
    let target = detect_target(problem)?;
    // definitions are semantically axioms for satisfiability purposes
    let axioms: Vec<_> = problem
        .formulas
        .iter()
        .filter(|f| {
            matches!(
                f.role,
                norma_core::tptp::Role::Axiom | norma_core::tptp::Role::Definition
            )
        })
        .filter_map(|f| f.payload.as_formula().cloned())
        .collect();
    let mode = AssumptionMode::from(args.semantics);
    let verdict = match target {
        TargetLogic::Sdl => match mode {
            AssumptionMode::Global => decide_sdl_global(&axioms),
            AssumptionMode::Local => decide_sdl_local(&axioms),
        },
        TargetLogic::AqvistE => search_ddl_e_with(
            &axioms,
            &SearchOptions {
                max_worlds: args.max_worlds as usize,
                budget: budget_from_env()?,
                mode,
            },
        ),
        TargetLogic::CarmoJones => {
            return Err(CliError::Input(
                "unsupported target for checking: carmoJones".to_string(),
            ))
        }
    };
    verdict.map_err(|e| match e {
        SemanticsError::Resource { .. } => CliError::Internal(e.to_string()),
        other => CliError::Input(other.to_string()),
    })
}

/// Works out which concrete logic a specialized problem is in from its
/// logic specification.
fn detect_target(problem: &Problem) -> Result<TargetLogic, CliError> {
    let spec = problem.logic_spec().ok_or_else(|| {
        CliError::Input("problem has no logic specification; specialize it first".to_string())
    })?;
    match spec.name.as_str() {
        "$modal" => match spec.lookup("$modalities") {
            Some(LogicValue::Ident(system)) if system == "$modal_system_D" => {
                Ok(TargetLogic::Sdl)
            }
            _ => Err(CliError::Input(
                "unsupported $modal specification (expected $modal_system_D)".to_string(),
            )),
        },
        "$$ddl" => match spec.lookup("$$system") {
            Some(LogicValue::Ident(system)) if system == "$$aqvistE" => Ok(TargetLogic::AqvistE),
            Some(LogicValue::Ident(system)) if system == "$$carmoJones" => {
                Ok(TargetLogic::CarmoJones)
            }
            _ => Err(CliError::Input("unsupported $$ddl specification".to_string())),
        },
        "$$normative" => Err(CliError::Input(
            "problem is still underspecified NMF; run nmf2logic first".to_string(),
        )),
        other => Err(CliError::Input(format!(
            "unsupported logic specification '{other}'"
        ))),
    }
}

fn budget_from_env() -> Result<u64, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(text) => text.parse().map_err(|_| {
            CliError::Input(format!("{BUDGET_ENV} must be a positive integer, found '{text}'"))
        }),
        Err(_) => Ok(DEFAULT_ENUMERATION_BUDGET),
    }
}

// ---- file plumbing --------------------------------------------------------

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))
}

fn read_problem(path: &Path) -> Result<Problem, CliError> {
    let text = read_file(path)?;
    parse_problem(&text).map_err(input_err)
}

fn emit(
    problem: &Problem,
    input: &Path,
    stage: &str,
    output: &OutputArg,
) -> Result<(), CliError> {
    let text = print_problem(problem);
    match &output.output {
        Some(path) if path.as_os_str() == "-" => {
            print!("{text}");
            Ok(())
        }
        Some(path) => write_file(path, &text),
        None => write_file(&stage_path(input, stage), &text),
    }
}

fn stage_of_target(target: TargetLogic) -> &'static str {
    match target {
        TargetLogic::Sdl => "sdl",
        TargetLogic::AqvistE | TargetLogic::CarmoJones => "ddl",
    }
}

/// `dir/name.xml -> dir/name.<stage>.p`, stripping a previous stage
/// suffix if present (`name.nmf.p -> name.sdl.p`).
fn stage_path(input: &Path, stage: &str) -> PathBuf {
    let mut base = input.to_path_buf();
    if base
        .extension()
        .is_some_and(|e| e == "p" || e == "xml")
    {
        base.set_extension("");
    }
    if base
        .extension()
        .is_some_and(|e| matches!(e.to_str(), Some("nmf" | "sdl" | "ddl" | "thf")))
    {
        base.set_extension("");
    }
    let name = format!(
        "{}.{stage}.p",
        base.file_name().unwrap_or_default().to_string_lossy()
    );
    base.with_file_name(name)
}

fn problem_name(path: &Path) -> String {
    let name = path.file_name().unwrap_or_default().to_string_lossy();
    name.strip_suffix(".p").unwrap_or(&name).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_paths_chain() {
        assert_eq!(
            stage_path(Path::new("dir/chisholm.xml"), "nmf"),
            PathBuf::from("dir/chisholm.nmf.p")
        );
        assert_eq!(
            stage_path(Path::new("dir/chisholm.nmf.p"), "sdl"),
            PathBuf::from("dir/chisholm.sdl.p")
        );
        assert_eq!(
            stage_path(Path::new("chisholm.sdl.p"), "thf"),
            PathBuf::from("chisholm.thf.p")
        );
    }

    #[test]
    fn problem_names_drop_the_p_extension() {
        assert_eq!(problem_name(Path::new("a/chisholm.sdl.p")), "chisholm.sdl");
    }
}

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use atiyah::{execute, Command, Overrides};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "atiyah", version, about = "Exact checks for trivial Atiyah algebroids")]
struct Cli {
    #[command(subcommand)]
    group: Group,
}

#[derive(Args)]
struct Common {
    /// Input document.
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Seed for randomized corpora (overrides the document).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    seed: Option<u64>,
    /// Monomial degree bound (overrides the document).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    degree: Option<u32>,
    /// Compact JSON output (default).
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Group {
    /// Structure of a Lie algebra.
    Lie {
        #[command(subcommand)]
        action: LieAction,
    },
    /// Brackets, ideals and Poisson structure of a trivial algebroid.
    Algebroid {
        #[command(subcommand)]
        action: AlgebroidAction,
    },
    /// Curvature and the model form of a connection.
    Connection {
        #[command(subcommand)]
        action: ConnectionAction,
    },
    /// Twisted bracket of a model algebroid.
    Model {
        #[command(subcommand)]
        action: ModelAction,
    },
    /// Isomorphisms between model algebroids.
    Morphism {
        #[command(subcommand)]
        action: MorphismAction,
    },
}

#[derive(Subcommand)]
enum LieAction {
    /// Axioms, Killing form, center, derived algebra, reductivity.
    Analyze(Common),
    /// Simple ideals and maximal ideals of the semisimple part.
    Decompose(Common),
}

#[derive(Subcommand)]
enum AlgebroidAction {
    /// Bracket of the given sections, antisymmetry, anchor.
    Bracket(Common),
    /// Jacobi identity and Leibniz rule on the sections.
    Jacobi(Common),
    /// Membership of sections in the subalgebroid K_m.
    Membership(Common),
    /// Normalizer of K_m compared with a jet family.
    Normalizer(Common),
    /// Writes center sections vanishing at m as sums of brackets with A_m.
    Witness(Common),
    /// Poisson sections and their Jacobi identity.
    Poisson(Common),
}

#[derive(Subcommand)]
enum ConnectionAction {
    /// Curvature of a connection and its tensorial properties.
    Curvature(Common),
    /// Center-valued form of a connection and the bracket transfer.
    ModelForm(Common),
}

#[derive(Subcommand)]
enum ModelAction {
    /// Twisted bracket on model sections.
    Bracket(Common),
    /// Jacobiator of the twisted bracket against d omega.
    Jacobi(Common),
}

#[derive(Subcommand)]
enum MorphismAction {
    /// Bracket preservation of Phi1 or a full morphism.
    Verify(Common),
    /// Residual form in frame and direct form.
    Residual(Common),
    /// Recovery of r from a morphism and recomposition.
    Decompose(Common),
}

fn resolve(group: Group) -> (Command, Common) {
    match group {
        Group::Lie { action } => match action {
            LieAction::Analyze(c) => (Command::LieAnalyze, c),
            LieAction::Decompose(c) => (Command::LieDecompose, c),
        },
        Group::Algebroid { action } => match action {
            AlgebroidAction::Bracket(c) => (Command::AlgebroidBracket, c),
            AlgebroidAction::Jacobi(c) => (Command::AlgebroidJacobi, c),
            AlgebroidAction::Membership(c) => (Command::AlgebroidMembership, c),
            AlgebroidAction::Normalizer(c) => (Command::AlgebroidNormalizer, c),
            AlgebroidAction::Witness(c) => (Command::AlgebroidWitness, c),
            AlgebroidAction::Poisson(c) => (Command::AlgebroidPoisson, c),
        },
        Group::Connection { action } => match action {
            ConnectionAction::Curvature(c) => (Command::ConnectionCurvature, c),
            ConnectionAction::ModelForm(c) => (Command::ConnectionModelForm, c),
        },
        Group::Model { action } => match action {
            ModelAction::Bracket(c) => (Command::ModelBracket, c),
            ModelAction::Jacobi(c) => (Command::ModelJacobi, c),
        },
        Group::Morphism { action } => match action {
            MorphismAction::Verify(c) => (Command::MorphismVerify, c),
            MorphismAction::Residual(c) => (Command::MorphismResidual, c),
            MorphismAction::Decompose(c) => (Command::MorphismDecompose, c),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, common) = resolve(cli.group);
    let bytes = match std::fs::read(&common.input) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("atiyah: cannot read {}: {e}", common.input.display());
            return ExitCode::from(2);
        }
    };
    let overrides = Overrides {
        seed: common.seed,
        degree: common.degree,
    };
    let outcome = execute(cmd, &bytes, overrides);
    let text = if common.pretty {
        serde_json::to_string_pretty(&outcome.output)
    } else {
        serde_json::to_string(&outcome.output)
    }
    .expect("reports serialize");
    // a closed pipe only loses the report, not the exit status
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if let Some(err) = outcome.output.get("error") {
        eprintln!("atiyah: {}", err["message"].as_str().unwrap_or("input error"));
    }
    ExitCode::from(u8::try_from(outcome.exit_code).unwrap_or(2))
}

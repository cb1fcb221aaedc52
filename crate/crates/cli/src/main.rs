//! `renner`: query Coxeter groups and Renner–Coxeter monoids from the shell.
//!
//! Exit status is 0 on success, 1 when a checked property fails and 2 for
//! usage, parse or input errors.

/// `print!` that ignores a closed stdout, so piping into `head` is quiet.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use renner::adherence::Epsilon;
use renner::greens::{GreensRelation, Submonoid};

#[derive(Parser, Debug)]
#[command(name = "renner", version, about = "Standard forms, adherence orders and Green's classes of Renner-Coxeter monoids")]
pub struct Cli {
    /// Element budget for enumerations.
    #[arg(long, global = true, env = "RENNER_BUDGET", value_name = "N")]
    pub budget: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Summarize a Coxeter group: `A<n>`, `B<n>`, `I2(<m>)` or a matrix file.
    Group {
        group: String,
        /// List every element with its length.
        #[arg(long)]
        elements: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Summarize the rook monoid `R_n`.
    Rook {
        n: usize,
        /// List every element.
        #[arg(long)]
        elements: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Decide `r ≤ε s`.
    Order {
        #[command(flatten)]
        sys: SystemArgs,
        r: String,
        s: String,
        #[command(flatten)]
        eps: EpsilonArgs,
        /// Also print the witness `w` of the definition.
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Left, right, hybrid and vanilla forms of an element.
    Forms {
        #[command(flatten)]
        sys: SystemArgs,
        r: String,
        #[command(flatten)]
        out: Output,
    },
    /// Minimum and maximum of the classes of an element.
    Extrema {
        #[command(flatten)]
        sys: SystemArgs,
        r: String,
        /// One relation; all four when omitted.
        #[arg(long)]
        relation: Option<GreensRelation>,
        #[command(flatten)]
        eps: EpsilonArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Partition the monoid into classes of a Green's relation.
    Classes {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value = "J")]
        relation: GreensRelation,
        #[command(flatten)]
        out: Output,
    },
    /// Hasse diagram of `≤ε` on the monoid, one class or one submonoid.
    Hasse {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        eps: EpsilonArgs,
        /// Restrict to the class of this element.
        #[arg(long, value_name = "ELEMENT", conflicts_with = "submonoid")]
        class: Option<String>,
        /// Relation used with `--class`.
        #[arg(long, default_value = "J")]
        relation: GreensRelation,
        /// Restrict to `GJ`, `JG`, `N` or `O`.
        #[arg(long)]
        submonoid: Option<Submonoid>,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Run the property suites.
    Verify {
        #[command(flatten)]
        sys: SystemArgs,
        /// Run only the named suite.
        #[arg(long)]
        suite: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Check the incomparable H-class minima in `R_3`.
    Counterexample {
        #[command(flatten)]
        eps: EpsilonArgs,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
pub struct SystemArgs {
    /// `rook:<n>` or a system file.
    pub system: String,
    /// Work over the opposite lattice `w0 Λ w0`.
    #[arg(long)]
    pub opposite: bool,
}

#[derive(Args, Debug)]
pub struct EpsilonArgs {
    #[arg(long, conflicts_with = "minus")]
    pub plus: bool,
    #[arg(long)]
    pub minus: bool,
}

impl EpsilonArgs {
    pub fn get(&self) -> Epsilon {
        if self.minus {
            Epsilon::Minus
        } else {
            Epsilon::Plus
        }
    }
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// What a command concluded, apart from errors.
pub enum Status {
    Ok,
    PropertyFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::PropertyFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

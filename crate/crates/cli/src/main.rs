//! `digitsys`: expansions and expansion-property decisions for digit systems
//! over `E[x]/(P)`.
//!
//! Exit status is 0 for a definitive result, 2 when a verdict is unknown or
//! a cap was hit, and 1 for input errors.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use digitsys_core::digits::DEFAULT_STEP_CAP;
use digitsys_core::rings::RingDescriptor;
use digitsys_core::witness::{DecideOptions, Property, SeedMode, DEFAULT_CLOSURE_CAP};
use digitsys_core::{FpPolyRing, GaussianIntegers, Integers, Result};

use commands::SystemSpec;
use report::Report;

#[derive(Parser)]
#[command(name = "digitsys", version, about = "Digit systems over quotient rings E[x]/(P)")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SystemArgs {
    /// Coefficient ring: Z, Zi or Fp:<p>.
    #[arg(long, default_value = "Z")]
    ring: String,
    /// Defining polynomial P in x.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Comma-separated digits.
    #[arg(long, allow_hyphen_values = true)]
    digits: String,
}

impl SystemArgs {
    fn spec(&self) -> SystemSpec<'_> {
        SystemSpec {
            poly: &self.poly,
            digits: &self.digits,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Brunotte,
    Power,
}

impl From<Mode> for SeedMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Brunotte => SeedMode::Brunotte,
            Mode::Power => SeedMode::Power,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Fep,
    Pep,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Digit sequence of one element.
    Expand {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        /// Maximal number of T-steps.
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        cap: usize,
    },
    /// Decide the finite and periodic expansion properties.
    Decide {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, default_value = "both")]
        property: Which,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Maximal number of T-steps per orbit.
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        cap: usize,
        /// Maximal witness set size.
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        closure_cap: usize,
    },
    /// The shortest nonempty digit string representing 0.
    ZeroCycle {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        cap: usize,
    },
    /// Witness set closure, its verification and its orbit graph.
    Witness {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Maximal witness set size.
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: usize,
        /// Write the orbit graph in DOT format to this path.
        #[arg(long)]
        dot: Option<String>,
    },
    /// Shift radix system membership for rational parameters.
    Srs {
        /// Comma-separated fractions, e.g. "3/5,-2/5".
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, default_value = "0")]
        eps: String,
        /// Maximal witness set size.
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: usize,
    },
    /// Product digit systems built from factor systems.
    Product {
        #[arg(long, default_value = "Z")]
        ring: String,
        /// Factors as "P:d,d,...;P:d,...".
        #[arg(long, allow_hyphen_values = true)]
        factors: String,
        /// Polynomial to expand by the coupled recurrence.
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        cap: usize,
    },
    /// Digit systems over F_p[y]: degree criterion and zero-cycle rewriting.
    Ff {
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Target digits; the canonical digits when omitted.
        #[arg(long, allow_hyphen_values = true)]
        digits: Option<String>,
        /// Prove the FEP for the target digits from the canonical ones.
        #[arg(long)]
        prove_fep: bool,
        /// Element to expand over the target digits.
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        cap: usize,
    },
}

/// Runs `$body` with `$ring` bound to the ring named by `$name`.
macro_rules! with_ring {
    ($name:expr, |$ring:ident| $body:expr) => {
        match RingDescriptor::parse($name)? {
            RingDescriptor::Integers => {
                let $ring = Integers;
                $body
            }
            RingDescriptor::GaussianIntegers => {
                let $ring = GaussianIntegers;
                $body
            }
            RingDescriptor::PolynomialsOverPrimeField(p) => {
                let $ring = FpPolyRing::new(p)?;
                $body
            }
        }
    };
}

fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Expand { system, element, cap } => {
            with_ring!(&system.ring, |ring| commands::expand(ring, &system.spec(), element, *cap))
        }
        Command::Decide {
            system,
            property,
            mode,
            cap,
            closure_cap,
        } => {
            let opts = DecideOptions {
                closure_cap: *closure_cap,
                step_cap: *cap,
                mode: mode.map(Into::into),
                ..DecideOptions::default()
            };
            let props: &[Property] = match property {
                Which::Fep => &[Property::Fep],
                Which::Pep => &[Property::Pep],
                Which::Both => &[Property::Fep, Property::Pep],
            };
            with_ring!(&system.ring, |ring| commands::decide(ring, &system.spec(), props, &opts))
        }
        Command::ZeroCycle { system, cap } => {
            with_ring!(&system.ring, |ring| commands::zero_cycle(ring, &system.spec(), *cap))
        }
        Command::Witness {
            system,
            mode,
            cap,
            dot,
        } => with_ring!(&system.ring, |ring| commands::witness(
            ring,
            &system.spec(),
            mode.map(Into::into),
            *cap,
            dot.as_deref()
        )),
        Command::Srs { r, eps, cap } => {
            let opts = DecideOptions {
                closure_cap: *cap,
                ..DecideOptions::default()
            };
            commands::srs(r, eps, &opts)
        }
        Command::Product {
            ring,
            factors,
            element,
            cap,
        } => {
            let opts = DecideOptions::default();
            with_ring!(ring, |ring| commands::product(
                ring,
                factors,
                element.as_deref(),
                *cap,
                &opts
            ))
        }
        Command::Ff {
            p,
            poly,
            digits,
            prove_fep,
            element,
            cap,
        } => commands::ff(*p, poly, digits.as_deref(), *prove_fep, element.as_deref(), *cap),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

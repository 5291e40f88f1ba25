use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vll_cli::commands::{self, parse_variety, parse_words, LatticeQuery};
use vll_cli::suite::Profile;
use vll_cli::{read_file, CliError, CliResult, Output};
use vll_core::gset::EnumerationBudget;
use vll_core::lattice::{catalog, FiniteLattice};
use vll_core::{parse_identities, Bounds, BuiltinModel, FiniteSemigroup, Identity, IdentitySystem, PartitionLambda, Word};

#[derive(Parser)]
#[command(name = "vll", version, about = "Word problems, G-set congruences and lattice checks for semigroup varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IdentityInput {
    /// A single identity, e.g. "ab = aab" or "aa = 0".
    #[arg(long = "id")]
    id: Option<String>,
    /// File with one identity per line.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl IdentityInput {
    fn load(&self) -> CliResult<Vec<Identity>> {
        match (&self.id, &self.file) {
            (Some(id), None) => Ok(vec![id.parse()?]),
            (None, Some(path)) => Ok(parse_identities(&read_file(path)?)?),
            _ => Err(CliError::Usage("give exactly one of --id and --file".into())),
        }
    }

    fn single(&self) -> CliResult<Identity> {
        let mut ids = self.load()?;
        if ids.len() != 1 {
            return Err(CliError::Usage(format!("expected one identity, got {}", ids.len())));
        }
        Ok(ids.remove(0))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide identities in a named variety.
    Check {
        /// T, SL, LZ, RZ, COM, C<m>, P, Prev or ZR.
        #[arg(long)]
        variety: String,
        /// Comma separated zero patterns for ZR.
        #[arg(long)]
        patterns: Option<String>,
        #[command(flatten)]
        input: IdentityInput,
        #[arg(long)]
        json: bool,
    },
    /// Replay the modular-law argument on W_λ for a balanced identity.
    Replay {
        #[arg(long)]
        u: Word,
        #[arg(long)]
        v: Word,
        /// Rename letters and multiply on the right to meet the preconditions.
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the verification suite; exits non-zero on any failure.
    VerifyPaper {
        #[arg(long, default_value = "quick")]
        profile: Profile,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Inspect a finite lattice.
    Lattice {
        /// Lattice file: "n <size>" then cover lines "i < j".
        #[arg(long, conflicts_with = "catalog")]
        file: Option<PathBuf>,
        /// chain(n), boolean(n), M3, N5 or product(a,b).
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long)]
        classify: bool,
        #[arg(long)]
        zero_distributive: bool,
        #[arg(long)]
        congruences: bool,
        #[arg(long)]
        lemmas: bool,
        /// Work in the order dual.
        #[arg(long)]
        dual: bool,
    },
    /// Build W_λ and its congruences.
    Gset {
        /// Parts of λ, e.g. 2,1,1.
        #[arg(long)]
        lambda: PartitionLambda,
        #[arg(long)]
        enumerate: bool,
        /// Generating pairs "u=v", separated by ';'.
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long, default_value_t = 12)]
        max_carrier: usize,
    },
    /// Print the identity system S(G) or S(G,X).
    Sapir {
        #[arg(long)]
        r: u32,
        /// Comma separated basis words v_i.
        #[arg(long, default_value = "")]
        basis: String,
        /// File with basis words, one per line.
        #[arg(long, conflicts_with = "basis")]
        basis_file: Option<PathBuf>,
        /// Comma separated verbal generators.
        #[arg(long, default_value = "")]
        verbal: String,
        #[arg(long)]
        json: bool,
    },
    /// Search for a derivation from a system of identities.
    Derive {
        /// Axioms: an identity file.
        #[arg(long, conflicts_with = "variety")]
        system: Option<PathBuf>,
        /// Use the defining identities of a variety as axioms.
        #[arg(long)]
        variety: Option<String>,
        #[command(flatten)]
        input: IdentityInput,
        #[arg(long, default_value_t = Bounds::default().max_word_length)]
        max_len: usize,
        #[arg(long, default_value_t = Bounds::default().max_subst_image_length)]
        max_image: usize,
        #[arg(long, default_value_t = Bounds::default().max_states)]
        max_states: usize,
        #[arg(long)]
        json: bool,
    },
    /// Look for a falsifying assignment in finite models.
    Refute {
        /// Builtin models of this variety.
        #[arg(long)]
        variety: Option<String>,
        /// Builtin model names (LZ2, RZ2, SL2, Zr(3), CyclicMonoid(2), NilN2, Trivial).
        #[arg(long, value_delimiter = ',')]
        model: Vec<String>,
        /// Cayley table files.
        #[arg(long)]
        table: Vec<PathBuf>,
        #[command(flatten)]
        input: IdentityInput,
    },
}

fn load_lattice(file: Option<PathBuf>, name: Option<String>) -> CliResult<FiniteLattice> {
    match (file, name) {
        (Some(path), None) => {
            let l = FiniteLattice::parse(&read_file(&path)?)?;
            Ok(l.with_name(path.display().to_string()))
        }
        (None, Some(name)) => Ok(catalog(&name)?),
        _ => Err(CliError::Usage("give exactly one of --file and --catalog".into())),
    }
}

fn run(cli: Cli) -> CliResult<Output> {
    match cli.command {
        Command::Check {
            variety,
            patterns,
            input,
            json,
        } => commands::check(&parse_variety(&variety, patterns.as_deref())?, &input.load()?, json),
        Command::Replay { u, v, normalize, json } => commands::replay(&u, &v, normalize, json),
        Command::VerifyPaper { profile, json } => {
            let profile = Profile::from_env_or(profile).map_err(CliError::Usage)?;
            commands::verify_paper(profile, json.as_deref())
        }
        Command::Lattice {
            file,
            catalog,
            classify,
            zero_distributive,
            congruences,
            lemmas,
            dual,
        } => {
            let mut l = load_lattice(file, catalog)?;
            if dual {
                l = l.dual();
            }
            let q = LatticeQuery {
                classify,
                zero_distributive,
                congruences,
                lemmas,
            };
            commands::lattice(&l, q)
        }
        Command::Gset {
            lambda,
            enumerate,
            pairs,
            max_carrier,
        } => {
            let pairs = pairs
                .as_deref()
                .unwrap_or("")
                .split(';')
                .filter(|p| !p.trim().is_empty())
                .map(|p| match p.parse::<Identity>()? {
                    Identity::Equation(a, b) => Ok((a, b)),
                    Identity::Zero(_) => Err(CliError::Usage(format!("{p}: pairs are u=v"))),
                })
                .collect::<CliResult<Vec<_>>>()?;
            let budget = EnumerationBudget {
                max_carrier,
                ..EnumerationBudget::default()
            };
            commands::gset(&lambda, enumerate, &pairs, &budget)
        }
        Command::Sapir {
            r,
            basis,
            basis_file,
            verbal,
            json,
        } => {
            let basis = match basis_file {
                Some(path) => read_file(&path)?
                    .lines()
                    .map(|l| l.split('#').next().unwrap_or("").trim())
                    .filter(|l| !l.is_empty())
                    .map(|l| l.parse().map_err(CliError::from))
                    .collect::<CliResult<Vec<Word>>>()?,
                None => parse_words(&basis)?,
            };
            commands::sapir(r, &basis, &parse_words(&verbal)?, json)
        }
        Command::Derive {
            system,
            variety,
            input,
            max_len,
            max_image,
            max_states,
            json,
        } => {
            let system = match (system, variety) {
                (Some(path), None) => IdentitySystem::parse(&read_file(&path)?)?,
                (None, Some(v)) => parse_variety(&v, None)?.defining_system(),
                _ => return Err(CliError::Usage("give exactly one of --system and --variety".into())),
            };
            let bounds = Bounds {
                max_word_length: max_len,
                max_subst_image_length: max_image,
                max_states,
            };
            commands::derive(&system, &input.single()?, &bounds, json)
        }
        Command::Refute {
            variety,
            model,
            table,
            input,
        } => {
            let mut models = match variety {
                Some(v) => parse_variety(&v, None)?.builtin_models(),
                None => Vec::new(),
            };
            for name in &model {
                models.push(FiniteSemigroup::builtin(name.parse::<BuiltinModel>()?));
            }
            for path in &table {
                models.push(FiniteSemigroup::parse(path.display().to_string(), &read_file(path)?)?);
            }
            if models.is_empty() {
                return Err(CliError::Usage("no models given".into()));
            }
            commands::refute(&models, &input.single()?)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

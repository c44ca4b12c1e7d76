//! `fullgroup`: command-line access to tables, clopen sets, constructions
//! and invariants of continuous full groups of Markov shifts.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::CommandReport;

#[derive(Parser)]
#[command(
    name = "fullgroup",
    version,
    about = "Exact computations in continuous full groups of one-sided Markov shifts"
)]
struct Cli {
    /// Print the report as one JSON document.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check essentiality, irreducibility and condition (I) of a matrix.
    ValidateMatrix { matrix: PathBuf },
    /// List the admissible words of length k.
    Words {
        matrix: PathBuf,
        k: usize,
        /// Also print the shortest path from symbol U to symbol V.
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        connect: Option<Vec<u8>>,
        /// Also print the distinct path pair starting at this symbol.
        #[arg(long, value_name = "SYMBOL")]
        path_pair: Option<u8>,
    },
    /// Canonicalize, combine or compare clopen sets.
    Clopen {
        matrix: PathBuf,
        #[arg(value_enum)]
        op: ClopenOp,
        x: PathBuf,
        y: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Validate a table and print its uniform form.
    TableValidate { matrix: PathBuf, table: PathBuf },
    /// Compose two tables: `outer ∘ inner`.
    Compose {
        matrix: PathBuf,
        outer: PathBuf,
        inner: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Inverse table.
    Inverse {
        matrix: PathBuf,
        table: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Bring a table to canonical (coarsest) form.
    Reduce {
        matrix: PathBuf,
        table: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Order of a table, up to a bound.
    Order {
        matrix: PathBuf,
        table: PathBuf,
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
    },
    /// Support and fixed-point set.
    Support {
        matrix: PathBuf,
        table: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Orbit cocycles `k`, `l` per cylinder.
    Cocycles { matrix: PathBuf, table: PathBuf },
    /// Whether two tables commute.
    Commutes {
        matrix: PathBuf,
        first: PathBuf,
        second: PathBuf,
    },
    /// Membership in the local subgroup of a clopen set.
    LocalMember {
        matrix: PathBuf,
        table: PathBuf,
        o: PathBuf,
    },
    /// Split a table leaving O invariant into its parts on O and off O.
    Split {
        matrix: PathBuf,
        table: PathBuf,
        o: PathBuf,
        #[arg(short, long)]
        output_dir: Option<PathBuf>,
    },
    /// Run a construction and verify its output.
    Construct(ConstructArgs),
    /// Bounded search for a table satisfying the given predicates.
    WitnessSearch(SearchArgs),
    /// The pointed Bowen–Franks group of a matrix.
    Bf { matrix: PathBuf },
    /// Decide whether the full groups of two matrices are isomorphic.
    DecideIso { a: PathBuf, b: PathBuf },
    /// The class of a clopen set in the Bowen–Franks group.
    ClopenClass { matrix: PathBuf, x: PathBuf },
    /// Decide whether some element maps U onto V.
    GammaEquiv {
        matrix: PathBuf,
        u: PathBuf,
        v: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-validate a table and print support, fixed set and cocycles.
    Verify { matrix: PathBuf, table: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClopenOp {
    Canonical,
    Complement,
    Union,
    Intersection,
    Difference,
    Compare,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    /// Involution carrying a small neighbourhood of x in U into Y (--U --Y --x).
    #[value(name = "2.1")]
    InvolutionInto,
    /// Involution exchanging U and V = γ(U), agreeing with γ on U (--U --V --gamma).
    #[value(name = "2.2")]
    SwapInvolution,
    /// Elements ψ, φ of orders 2 and 3 supported in O with a witness set F (--O).
    #[value(name = "2.4")]
    FreePair,
    /// γ in the local subgroup of O with γ⁻¹ηγ nontrivial on U (--eta --U --O).
    #[value(name = "3.11")]
    Localize,
    /// Involution carrying the cylinder of ν into V (--nu --V).
    #[value(name = "4.1")]
    CylinderInvolution,
    /// Involution carrying U into a disjoint W (--U --W).
    #[value(name = "4.3")]
    Transport,
    /// Matched partitions of U ⊆ O and V ⊆ Oᶜ with transports into W, W2 (--O --U --V --W --W2 --gamma).
    #[value(name = "4.4")]
    PairedTransport,
    /// Split of γ leaving O invariant into parts on O and off O (--gamma --O).
    #[value(name = "4.7")]
    Split,
    /// Element carrying U into V (--U --V).
    #[value(name = "4.10")]
    Minimality,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    lemma: Lemma,
    matrix: PathBuf,
    #[arg(long = "U")]
    u: Option<PathBuf>,
    #[arg(long = "V")]
    v: Option<PathBuf>,
    #[arg(long = "W")]
    w: Option<PathBuf>,
    #[arg(long = "W2")]
    w2: Option<PathBuf>,
    #[arg(long = "Y")]
    y: Option<PathBuf>,
    #[arg(long = "O")]
    o: Option<PathBuf>,
    /// Point as `pre|per`, e.g. `1,2|2,1`.
    #[arg(long)]
    x: Option<String>,
    /// Word as `1,2,1`.
    #[arg(long)]
    nu: Option<String>,
    #[arg(long)]
    gamma: Option<PathBuf>,
    #[arg(long)]
    eta: Option<PathBuf>,
    /// Directory receiving the witness files.
    #[arg(short, long)]
    output_dir: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, default_value_t = 2)]
    depth: usize,
    #[arg(long, default_value_t = 3)]
    image_len: usize,
    #[arg(long, default_value_t = 1_000_000)]
    max_nodes: u64,
}

#[derive(Args)]
struct SearchArgs {
    matrix: PathBuf,
    #[command(flatten)]
    bounds: BoundArgs,
    /// Require γ(U) = V.
    #[arg(long, num_args = 2, value_names = ["U", "V"])]
    maps: Option<Vec<PathBuf>>,
    /// Require order exactly k.
    #[arg(long)]
    order: Option<usize>,
    /// Require support inside O.
    #[arg(long, value_name = "O")]
    support_in: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let report: CommandReport = commands::run(cli.command);
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{report}");
    }
    ExitCode::from(report.exit_code as u8)
}

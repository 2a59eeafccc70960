use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "k3lab",
    version,
    about = "Exact computations for K3 moduli, quadric systems and lattices"
)]
pub struct Cli {
    /// Output format; text is a flattening of the JSON report.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mukai vectors of sheaves on a K3 surface.
    #[command(subcommand)]
    Mukai(MukaiCommand),
    /// Integral lattices and overlattices.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Pencils of quadrics in four variables.
    #[command(subcommand)]
    Pencil(PencilCommand),
    /// Nets of quadrics in six variables.
    #[command(subcommand)]
    Net(NetCommand),
    /// Matrices of linear forms and the relation between their invariants.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Brill-Noether numbers and expected dimensions.
    #[command(subcommand)]
    Bn(BnCommand),
    /// Fano 3-fold genera and linear sections of homogeneous spaces.
    #[command(subcommand)]
    Fano(FanoCommand),
    /// Moduli of K3 surfaces with a curve and of curves.
    #[command(subcommand)]
    Pairs(PairsCommand),
}

#[derive(Subcommand, Debug)]
pub enum MukaiCommand {
    /// Dimension of the moduli space of sheaves with vector (r, L, s).
    Dim {
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        /// Self-intersection of the determinant class.
        #[arg(long, allow_hyphen_values = true)]
        l2: i64,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
    },
}

#[derive(Args, Debug)]
pub struct LatticeInput {
    /// Lattice file or inline JSON; defaults to the K3 lattice.
    #[arg(long)]
    pub lattice: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum LatticeCommand {
    /// Rank, determinant, parity and signature.
    Invariants {
        #[command(flatten)]
        input: LatticeInput,
    },
    /// The lattice generated by the orthogonal-mod-r sublattice and alpha / r.
    Overlattice {
        #[command(flatten)]
        input: LatticeInput,
        /// Comma-separated coordinates of alpha.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        r: i64,
    },
}

#[derive(Args, Debug)]
pub struct SystemArgs {
    /// System file or inline JSON; defaults to the bundled diagonal system.
    #[arg(long)]
    pub system: Option<String>,
}

#[derive(Args, Debug)]
pub struct PrimeList {
    /// Comma-separated odd primes.
    #[arg(long = "p", value_delimiter = ',')]
    pub primes: Vec<u64>,
}

#[derive(Subcommand, Debug)]
pub enum PencilCommand {
    /// The binary quartic det(l1 G1 + l2 G2).
    Disc {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// j-invariant of the branch quartic.
    Jinv {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// The double cover of the pencil line branched over the quartic.
    Cover {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Point counts of the base curve and the hyperelliptic model.
    Count {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        primes: PrimeList,
    },
}

#[derive(Subcommand, Debug)]
pub enum NetCommand {
    /// The plane sextic det(l1 G1 + l2 G2 + l3 G3).
    Disc {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// The double plane branched over the sextic, with a smoothness probe.
    Cover {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        primes: PrimeList,
    },
    /// Smoothness probe of the sextic over finite fields.
    Probe {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        primes: PrimeList,
    },
}

#[derive(Args, Debug)]
pub struct SamplingArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Odd prime to work over.
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum ConstructCommand {
    /// Samples 2x2 matrices with determinant in the pencil and checks T^2 = c disc(B).
    VerifyPencil {
        #[command(flatten)]
        args: SamplingArgs,
    },
    /// Samples alternating 4x4 matrices with Pfaffian in the net and checks T^2 = c disc(B).
    VerifyNet {
        #[command(flatten)]
        args: SamplingArgs,
    },
    /// Checks that (B, T) is unchanged by random special linear actions.
    Invariance {
        #[command(flatten)]
        args: SamplingArgs,
    },
}

#[allow(clippy::upper_case_acronyms)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LocusKind {
    #[value(name = "III")]
    III,
    #[value(name = "II")]
    II,
}

#[derive(Subcommand, Debug)]
pub enum BnCommand {
    /// Expected dimension of a rank-2 Brill-Noether locus.
    Dim {
        #[arg(long = "type", value_enum)]
        kind: LocusKind,
        #[arg(long)]
        g: i64,
        #[arg(long)]
        n: i64,
    },
    /// The Brill-Noether number g - (r + 1)(g - d + r).
    Rho {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        d: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum FanoCommand {
    /// Invariants of a transversal linear section.
    Section {
        /// grassmannian25, spinor10 or lagrangian6.
        #[arg(long)]
        variety: String,
        #[arg(long)]
        cuts: i64,
    },
    /// Genera of prime Fano 3-folds of index 1, or a check of one genus.
    Genus {
        #[arg(long)]
        g: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum PairsCommand {
    /// Dimensions of the moduli of (K3, curve) pairs and of curves of genus g.
    Dims {
        #[arg(long)]
        g: i64,
    },
}

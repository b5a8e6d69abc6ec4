use clap::{Args, Parser, Subcommand};
use online_cake::axioms::Property;
use online_cake::{Knowledge, Procedure};

#[derive(Debug, Parser)]
#[command(name = "online-cake", version, about = "Run and audit online cake-cutting procedures")]
pub struct Cli {
    /// Emit one JSON record per line instead of text.
    #[arg(long, global = true)]
    pub machine: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a scenario and print the allocation.
    Run {
        #[command(flatten)]
        input: ScenarioArgs,
        /// Print the event trace before the allocation.
        #[arg(long)]
        trace: bool,
    },
    /// Check properties of a scenario's outcome.
    Audit {
        #[command(flatten)]
        input: ScenarioArgs,
        /// Comma-separated property names; all properties when omitted.
        #[arg(long, value_delimiter = ',')]
        properties: Vec<Property>,
        /// Extra expected verdicts such as `proportional=false`; any
        /// disagreement exits with status 3.
        #[arg(long = "expect", value_name = "PROPERTY=BOOL", value_parser = parse_expectation)]
        expectations: Vec<(Property, bool)>,
        /// Audit under all three online procedures instead of one.
        #[arg(long, conflicts_with = "procedure")]
        all_procedures: bool,
    },
    /// Run every arrival order and report order-monotonicity violations.
    ScanOrders {
        #[command(flatten)]
        input: ScenarioArgs,
    },
    /// Inspect and verify the embedded fixture library.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum FixturesAction {
    List,
    Run {
        name: String,
        #[arg(long)]
        trace: bool,
    },
    VerifyAll,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Scenario file. A missing path whose stem names an embedded fixture
    /// loads that fixture.
    #[arg(required_unless_present = "seed")]
    pub scenario: Option<String>,
    #[arg(long)]
    pub procedure: Option<Procedure>,
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub knowledge: Option<Knowledge>,
    /// Generate a random scenario from this seed instead of reading a file.
    #[arg(long, conflicts_with = "scenario")]
    pub seed: Option<u64>,
    /// Number of players for `--seed`.
    #[arg(long, default_value_t = 3, requires = "seed")]
    pub players: usize,
    /// Maximum valuation segments for `--seed`.
    #[arg(long, default_value_t = 5, requires = "seed")]
    pub segments: usize,
}

fn parse_expectation(text: &str) -> Result<(Property, bool), String> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| format!("expected PROPERTY=BOOL, got {text:?}"))?;
    let value = match value {
        "true" | "✓" => true,
        "false" | "✗" => false,
        other => return Err(format!("expected true or false, got {other:?}")),
    };
    Ok((name.parse()?, value))
}

use anqg_cli::config::{parse_int_list, Command, DatumSpec, JobConfig};
use anqg_cli::run;
use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact computations for analytic quantum groups.
///
/// Reports are JSON on stdout (or in `--out`); a one-line summary goes to
/// stderr (stdout when `--out` is given). Exit codes: 0 ok, 1 mathematical
/// failure, 2 configuration error, 3 truncation window too small.
#[derive(Parser, Debug)]
#[command(name = "anqg", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON job file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Preset name (A1, A2, B2, G2, A1xA1) or path to a datum file.
    #[arg(long)]
    datum: Option<String>,
    /// Prime for valuations.
    #[arg(long)]
    p: Option<i64>,
    /// v_p(h) as a rational, e.g. 1/2.
    #[arg(long, allow_hyphen_values = true)]
    vh: Option<String>,
    /// Radius exponent r, as in r = p^{r_exp}.
    #[arg(long, allow_hyphen_values = true)]
    r_exp: Option<String>,
    /// Radius exponent s.
    #[arg(long, allow_hyphen_values = true)]
    s_exp: Option<String>,
    /// Largest total degree for Nichols dimensions.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Degree cap for products in U_q.
    #[arg(long)]
    cap: Option<usize>,
    /// Module truncation depth.
    #[arg(long)]
    depth: Option<usize>,
    /// Highest weight, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Number of tensor factors for braid-rep.
    #[arg(long)]
    strands: Option<usize>,
    /// Braid word, comma separated signed generators.
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    /// Window of the two-index module.
    #[arg(long)]
    i_max: Option<usize>,
    #[arg(long)]
    j_max: Option<usize>,
    /// Truncation order in h.
    #[arg(long)]
    order: Option<usize>,
    /// PBW window degree.
    #[arg(long)]
    window: Option<usize>,
    /// Largest PBW degree searched for gauge elements.
    #[arg(long)]
    search_degree: Option<usize>,
    /// Planted gauge: an element, or `name=element;...` for trivialize.
    #[arg(long, allow_hyphen_values = true)]
    plant: Option<String>,
    /// Add a non-removable term to the planted input.
    #[arg(long)]
    obstruct: bool,
}

fn flags(cli: &Cli) -> Result<JobConfig, String> {
    Ok(JobConfig {
        datum: cli.datum.clone().map(DatumSpec::Name),
        p: cli.p,
        vh: cli.vh.clone(),
        r_exp: cli.r_exp.clone(),
        s_exp: cli.s_exp.clone(),
        max_degree: cli.max_degree,
        cap: cli.cap,
        depth: cli.depth,
        lambda: cli.lambda.as_deref().map(|s| parse_int_list("lambda", s)).transpose().map_err(|e| e.0)?,
        strands: cli.strands,
        word: cli
            .word
            .as_deref()
            .map(|s| anqg::braided::parse_braid_word(s).map_err(|e| e.to_string()))
            .transpose()?,
        i_max: cli.i_max,
        j_max: cli.j_max,
        order: cli.order,
        window: cli.window,
        search_degree: cli.search_degree,
        plant: cli.plant.clone(),
        obstruct: cli.obstruct.then_some(true),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let loaded = match &cli.config {
        None => Ok(JobConfig::default()),
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| format!("config {}: {e}", path.display()))
            .and_then(|t| JobConfig::from_json(&t).map_err(|e| e.0)),
    };
    let config = match loaded.and_then(|base| flags(&cli).map(|f| base.merged(f))) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("ERROR (config): {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = run(cli.command, config);
    let text = outcome.render();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("ERROR (config): cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            println!("{}", outcome.summary);
        }
        None => {
            print!("{text}");
            eprintln!("{}", outcome.summary);
        }
    }
    ExitCode::from(outcome.exit_code as u8)
}

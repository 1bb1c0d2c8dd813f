use std::path::PathBuf;

use anyhow::Context;
use clap::Parser as ClapParser;

use redcx_cli::output::render_text;
use redcx_cli::parser::parse_session;
use redcx_cli::session::{run_session, Config};

/// Homological algebra sessions over graded quotient rings: resolutions,
/// Betti tables, Ext/Tor, pushouts and complexity certificates.
#[derive(ClapParser)]
#[command(name = "redcx", version)]
struct Args {
    /// session file (UTF-8; see the README for the grammar)
    session: PathBuf,
    /// internal degree truncation D
    #[arg(long, default_value_t = 16)]
    max_degree: i64,
    /// homological degree truncation H
    #[arg(long, default_value_t = 12)]
    max_hdeg: usize,
    /// seed for randomized unit searches
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// emit the JSON document instead of tables
    #[arg(long)]
    json: bool,
    /// directory for the content-addressed resolution cache
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

fn main() -> anyhow::Result<()> {
    let args = Args::parse();
    let text = std::fs::read_to_string(&args.session)
        .with_context(|| format!("reading {}", args.session.display()))?;
    let session = parse_session(&text).map_err(|e| anyhow::anyhow!("{e}"))?;
    let config = Config {
        max_degree: args.max_degree,
        max_hdeg: args.max_hdeg,
        seed: args.seed,
        cache_dir: args.cache_dir,
    };
    let out = run_session(&session, &config)?;
    if args.json {
        print!("{}", out.to_json_string());
    } else {
        print!("{}", render_text(&out.to_json()));
    }
    Ok(())
}

use std::path::PathBuf;

use chemfg::reward::{combined_reward, RewardConfig, TaskKind};
use serde::Deserialize;
use serde_json::json;

use crate::{io, Failure};

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Reward configuration JSON (tags and weights).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize)]
struct Case {
    response: String,
    gold: String,
    task_kind: String,
}

pub fn run(args: &Args) -> Result<usize, Failure> {
    let cfg = match &args.config {
        Some(p) => RewardConfig::from_json(&io::read_to_string(p)?).map_err(|e| Failure::Message(e.to_string()))?,
        None => RewardConfig::default(),
    };
    let reader = io::reader(args.input.as_deref())?;
    let mut out = io::writer(args.output.as_deref())?;
    let mut errors = 0;
    io::for_each_line(reader, |n, line| {
        let scored = serde_json::from_str::<Case>(line)
            .map_err(|e| e.to_string())
            .and_then(|c| Ok((c.task_kind.parse::<TaskKind>().map_err(|e| e.to_string())?, c)))
            .and_then(|(kind, c)| {
                if c.gold.trim().is_empty() {
                    return Err("empty gold answer".to_string());
                }
                serde_json::to_value(combined_reward(&c.response, &c.gold, kind, &cfg)).map_err(|e| e.to_string())
            });
        let record = scored.unwrap_or_else(|error| {
            errors += 1;
            json!({ "line": n, "error": error })
        });
        io::write_line(&mut *out, &record)
    })?;
    io::finish(out)?;
    Ok(errors)
}

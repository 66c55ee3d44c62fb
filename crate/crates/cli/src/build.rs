use std::io::Write as _;
use std::path::{Path, PathBuf};

use chemfg::corpus::{build_corpus, Blacklist, BuildConfig, EntryFormat, MixSpec};
use serde::Deserialize;

use crate::{catalog, io, Failure};

#[derive(clap::Args)]
pub struct Args {
    /// Corpus configuration JSON.
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Renderings per reaction, the original included.
    #[arg(long)]
    augment: Option<usize>,
    /// Restrict entries to one format.
    #[arg(long, value_parser = parse_format)]
    format: Option<EntryFormat>,
    #[arg(long)]
    blacklist: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    catalog: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<EntryFormat, String> {
    EntryFormat::from_name(s).ok_or_else(|| format!("expected markdown_list, markdown_table or json_dict, got {s:?}"))
}

#[derive(Deserialize)]
struct MixSource {
    source: String,
    weight: f64,
}

#[derive(Deserialize)]
struct MixConfig {
    ratio: Vec<MixSource>,
    #[serde(default)]
    max_total: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    molecules: Option<String>,
    reactions: Option<String>,
    blacklist: Option<String>,
    seed: Option<u64>,
    formats: Option<Vec<EntryFormat>>,
    augment: Option<usize>,
    mix: Option<MixConfig>,
    output: Option<String>,
    stats: Option<String>,
    catalog: Option<String>,
}

fn optional_text(path: Option<&Path>) -> Result<String, Failure> {
    path.map_or(Ok(String::new()), io::read_to_string)
}

pub fn run(args: &Args) -> Result<usize, Failure> {
    let file: FileConfig = serde_json::from_str(&io::read_to_string(&args.config)?)
        .map_err(|e| Failure::Message(format!("{}: {e}", args.config.display())))?;
    let resolve = |p: &Option<String>| p.as_deref().map(|p| io::relative_to(&args.config, p));

    let seed = args
        .seed
        .or(file.seed)
        .ok_or_else(|| Failure::Message("a seed is required (config \"seed\" or --seed)".into()))?;
    let mut config = BuildConfig::new(seed);
    if let Some(n) = args.augment.or(file.augment) {
        if n == 0 {
            return Err(Failure::Message("augmentation factor must be at least 1".into()));
        }
        config.augment = n;
    }
    if let Some(f) = args.format {
        config.formats = vec![f];
    } else if let Some(formats) = file.formats {
        if formats.is_empty() {
            return Err(Failure::Message("formats must not be empty".into()));
        }
        config.formats = formats;
    }
    config.mix = file.mix.map(|m| MixSpec {
        ratio: m.ratio.into_iter().map(|s| (s.source, s.weight)).collect(),
        max_total: m.max_total,
    });

    let molecules_path = resolve(&file.molecules);
    let reactions_path = resolve(&file.reactions);
    if molecules_path.is_none() && reactions_path.is_none() {
        return Err(Failure::Message("config names neither molecules nor reactions".into()));
    }
    let blacklist_path = args.blacklist.clone().or_else(|| resolve(&file.blacklist));
    let output = args.output.clone().or_else(|| resolve(&file.output));
    let stats_path = resolve(&file.stats).or_else(|| {
        output
            .as_ref()
            .filter(|p| p.as_path() != Path::new("-"))
            .map(|p| PathBuf::from(format!("{}.stats.json", p.display())))
    });
    let catalog = catalog(args.catalog.clone().or_else(|| resolve(&file.catalog)).as_deref())?;

    let molecules = optional_text(molecules_path.as_deref())?;
    let reactions = optional_text(reactions_path.as_deref())?;
    let blacklist = Blacklist::parse(&optional_text(blacklist_path.as_deref())?)
        .map_err(|e| Failure::Message(format!("blacklist: {e}")))?;
    let mut out = io::writer(output.as_deref())?;
    let mut stats_out = stats_path.as_deref().map(|p| io::writer(Some(p))).transpose()?;

    let corpus = build_corpus(&molecules, &reactions, &blacklist, &catalog, &config)
        .map_err(|e| Failure::Message(e.to_string()))?;
    out.write_all(corpus.to_jsonl().as_bytes())
        .map_err(|e| Failure::io(output.as_deref().unwrap_or(Path::new("<stdout>")), e))?;
    io::finish(out)?;
    let stats = serde_json::to_value(&corpus.stats).map_err(|e| Failure::Message(e.to_string()))?;
    if let Some(mut s) = stats_out.take() {
        io::write_line(&mut *s, &stats)?;
        io::finish(s)?;
    }

    let (m, r) = (corpus.stats.molecules, corpus.stats.reactions);
    eprintln!(
        "{} entries; molecules {} in, {} out, {} dropped, {} duplicates; reactions {} in, {} out, {} dropped ({} excluded), {} duplicates",
        corpus.entries.len(),
        m.input,
        m.output,
        m.dropped,
        m.deduped,
        r.input,
        r.output,
        r.dropped,
        r.excluded,
        r.deduped
    );
    // Blacklist drops are not failures.
    Ok(m.dropped + r.dropped - r.excluded)
}


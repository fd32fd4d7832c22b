//! Search flags, merged as: command-line flag > environment > config file >
//! built-in default.

use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::Args;
use serde::Deserialize;

use pivot_clir::engine::{DEFAULT_THRESHOLD, DEFAULT_TOP_K};
use pivot_clir::fetch::DEFAULT_TIMEOUT;
use pivot_clir::translate::RemoteTranslator;
use pivot_clir::wiki::DEFAULT_ENDPOINT;
use pivot_clir::{
    Error, FetchClient, Fusion, Glossary, SearchMode, SearchOptions, Translator, WikiFailurePolicy,
};

pub const ENDPOINT_ENV: &str = "PIVOT_CLIR_ENDPOINT";
pub const TIMEOUT_ENV: &str = "PIVOT_CLIR_TIMEOUT";
const DEFAULT_FIRST_N: &str = "20";

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// wiki, mt or fused.
    #[arg(long)]
    pub mode: Option<String>,
    /// Maximum number of results (default 15).
    #[arg(long)]
    pub top_k: Option<usize>,
    /// Keep only similarities strictly above this (default 1e-12).
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Use only the first N words of the pivot article (20 if given without a value).
    #[arg(long, num_args = 0..=1, default_missing_value = DEFAULT_FIRST_N)]
    pub first_n_words: Option<usize>,
    /// Weight of the wiki channel in fused mode; 0 disables it.
    #[arg(long)]
    pub weight_wiki: Option<f64>,
    /// Weight of the translation channel in fused mode; 0 disables it.
    #[arg(long)]
    pub weight_mt: Option<f64>,
    /// How fused channels combine shared terms: max or sum.
    #[arg(long)]
    pub fusion: Option<String>,
    /// In fused mode, fail instead of falling back when the pivot fails.
    #[arg(long)]
    pub strict_wiki: bool,
    /// Corpus language code (default ru).
    #[arg(long)]
    pub target_lang: Option<String>,
    /// Serve HTTP from recorded fixtures; never touch the network.
    #[arg(long)]
    pub offline: bool,
    /// Directory of recorded responses (index.tsv plus bodies).
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
    /// Record live responses as fixtures into this directory.
    #[arg(long, conflicts_with = "offline")]
    pub record: Option<PathBuf>,
    /// Wiki API base URL; `{lang}` is replaced by the language code.
    #[arg(long, env = ENDPOINT_ENV)]
    pub endpoint: Option<String>,
    /// HTTP timeout in seconds.
    #[arg(long, env = TIMEOUT_ENV)]
    pub timeout: Option<f64>,
    /// Stoplist the index was built with, checked against the index.
    #[arg(long)]
    pub stoplist: Option<PathBuf>,
    /// Glossary TSV (source<TAB>target) for the offline translator.
    #[arg(long)]
    pub glossary: Option<PathBuf>,
    /// Use a remote translation endpoint instead of the glossary.
    #[arg(long)]
    pub translate_endpoint: Option<String>,
    /// TOML file with defaults for the options above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub mode: Option<String>,
    pub top_k: Option<usize>,
    pub threshold: Option<f64>,
    pub first_n_words: Option<usize>,
    pub weight_wiki: Option<f64>,
    pub weight_mt: Option<f64>,
    pub fusion: Option<String>,
    pub target_lang: Option<String>,
    pub offline: Option<bool>,
    pub fixtures: Option<PathBuf>,
    pub endpoint: Option<String>,
    pub timeout_secs: Option<f64>,
    pub glossary: Option<PathBuf>,
    pub translate_endpoint: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidArgument(format!("cannot read config {}: {e}", path.display()))
        })?;
        toml::from_str(&text)
            .map_err(|e| Error::InvalidArgument(format!("config {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone)]
pub struct Resolved {
    pub mode: SearchMode,
    pub options: SearchOptions,
    pub fixtures: Option<PathBuf>,
    pub record: Option<PathBuf>,
    pub endpoint: String,
    pub timeout: Duration,
    pub stoplist: Option<PathBuf>,
    pub glossary: Option<PathBuf>,
    pub translate_endpoint: Option<String>,
}

pub fn resolve(args: &SearchArgs) -> Result<Resolved, Error> {
    let file = match &args.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };

    let mode = args
        .mode
        .clone()
        .or(file.mode)
        .map(|m| m.parse::<SearchMode>())
        .transpose()?
        .unwrap_or(SearchMode::Fused);
    let fusion = args
        .fusion
        .clone()
        .or(file.fusion)
        .map(|f| f.parse::<Fusion>().map_err(Error::InvalidArgument))
        .transpose()?
        .unwrap_or_default();

    let options = SearchOptions {
        top_k: args.top_k.or(file.top_k).unwrap_or(DEFAULT_TOP_K),
        threshold: args
            .threshold
            .or(file.threshold)
            .unwrap_or(DEFAULT_THRESHOLD),
        first_n_words: args.first_n_words.or(file.first_n_words),
        weight_wiki: args.weight_wiki.or(file.weight_wiki).unwrap_or(1.0),
        weight_mt: args.weight_mt.or(file.weight_mt).unwrap_or(1.0),
        wiki_failure_policy: if args.strict_wiki {
            WikiFailurePolicy::HardError
        } else {
            WikiFailurePolicy::FallbackToMt
        },
        fusion,
        target_lang: args
            .target_lang
            .clone()
            .or(file.target_lang)
            .unwrap_or_else(|| "ru".to_owned()),
    };
    options.validate()?;

    let offline = args.offline || file.offline.unwrap_or(false);
    let fixtures = args.fixtures.clone().or(file.fixtures);
    if offline && fixtures.is_none() {
        return Err(Error::InvalidArgument(
            "--offline needs --fixtures <dir>".into(),
        ));
    }

    let timeout = match args.timeout.or(file.timeout_secs) {
        Some(t) if t > 0.0 && t.is_finite() => Duration::from_secs_f64(t),
        Some(t) => return Err(Error::InvalidArgument(format!("bad timeout {t}"))),
        None => DEFAULT_TIMEOUT,
    };

    Ok(Resolved {
        mode,
        options,
        fixtures,
        record: args.record.clone(),
        endpoint: args
            .endpoint
            .clone()
            .or(file.endpoint)
            .unwrap_or_else(|| DEFAULT_ENDPOINT.to_owned()),
        timeout,
        stoplist: args.stoplist.clone(),
        glossary: args.glossary.clone().or(file.glossary),
        translate_endpoint: args.translate_endpoint.clone().or(file.translate_endpoint),
    })
}

impl Resolved {
    /// Replay whenever fixtures are given, live otherwise.
    pub fn fetch_client(&self) -> Result<FetchClient, Error> {
        match (&self.fixtures, &self.record) {
            (Some(dir), _) => FetchClient::replay(dir),
            (None, Some(dir)) => FetchClient::recording(self.timeout, dir),
            (None, None) => Ok(FetchClient::live(self.timeout)),
        }
    }

    pub fn translator(&self, client: FetchClient) -> Result<Translator, Error> {
        if let Some(endpoint) = &self.translate_endpoint {
            return Ok(Translator::Remote(RemoteTranslator::new(
                endpoint,
                "en",
                &self.options.target_lang,
                client,
            )?));
        }
        let glossary = match &self.glossary {
            Some(p) => Glossary::load(p)?,
            None => Glossary::bundled(),
        };
        Ok(Translator::Glossary(glossary))
    }
}

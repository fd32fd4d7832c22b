//! Wikipedia interlanguage pivot: source-language query -> source article ->
//! target-language counterpart -> its plain text.
//!
//! Talks to the MediaWiki Action API (`list=search`, `prop=langlinks`,
//! `prop=extracts`). The top search hit is trusted as-is, disambiguation
//! pages included.

use serde_json::Value;
use url::Url;

use crate::channel::{Provenance, QueryChannelResult};
use crate::corpus::CorpusIndex;
use crate::error::{Error, Result};
use crate::fetch::FetchClient;
use crate::text::analyze;
use crate::vector::build_vector;

/// Default endpoint template; `{lang}` is replaced by a wiki language code.
pub const DEFAULT_ENDPOINT: &str = "https://{lang}.wikipedia.org";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Article {
    pub title: String,
    pub url: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotResolution {
    pub query: String,
    pub source_title: String,
    pub source_url: String,
    pub target_lang: String,
    pub target_title: String,
    pub target_url: String,
    pub extracted_text: String,
    pub truncated_to: Option<usize>,
}

/// Pivot channel bound to an endpoint and a fetch client.
#[derive(Debug, Clone)]
pub struct WikiPivot {
    endpoint: String,
    source_lang: String,
    client: FetchClient,
}

impl WikiPivot {
    pub fn new(client: FetchClient) -> Self {
        Self::with_endpoint(DEFAULT_ENDPOINT, client)
    }

    /// `endpoint` is a base URL. If it contains `{lang}` the placeholder is
    /// filled per language, otherwise one base serves every language.
    pub fn with_endpoint(endpoint: impl Into<String>, client: FetchClient) -> Self {
        WikiPivot {
            endpoint: endpoint.into().trim_end_matches('/').to_owned(),
            source_lang: "en".to_owned(),
            client,
        }
    }

    pub fn client(&self) -> &FetchClient {
        &self.client
    }

    pub fn source_lang(&self) -> &str {
        &self.source_lang
    }

    fn base(&self, lang: &str) -> String {
        self.endpoint.replace("{lang}", lang)
    }

    fn api_url(&self, lang: &str, params: &[(&str, &str)]) -> Result<Url> {
        let base = format!("{}/w/api.php", self.base(lang));
        Url::parse_with_params(&base, params)
            .map_err(|e| Error::InvalidArgument(format!("bad endpoint {base:?}: {e}")))
    }

    /// Human-facing article URL, e.g. `https://ru.wikipedia.org/wiki/Биг-Бен`
    /// with the title percent-encoded.
    pub fn article_url(&self, lang: &str, title: &str) -> String {
        let base = self.base(lang);
        match Url::parse(&base) {
            Ok(mut url) => {
                if let Ok(mut segs) = url.path_segments_mut() {
                    segs.pop_if_empty()
                        .push("wiki")
                        .push(&title.replace(' ', "_"));
                }
                url.to_string()
            }
            Err(_) => format!("{base}/wiki/{}", title.replace(' ', "_")),
        }
    }

    fn get_json(&self, url: &Url) -> Result<Value> {
        let body = self.client.get(url)?;
        let value: Value = serde_json::from_str(&body).map_err(|e| Error::BadResponse {
            url: url.to_string(),
            message: e.to_string(),
        })?;
        if let Some(err) = value.get("error") {
            return Err(Error::BadResponse {
                url: url.to_string(),
                message: err
                    .get("info")
                    .and_then(Value::as_str)
                    .unwrap_or("api error")
                    .to_owned(),
            });
        }
        Ok(value)
    }

    pub fn find_source_article(&self, query: &str) -> Result<Article> {
        let query = query.trim();
        if query.is_empty() {
            return Err(Error::InvalidArgument("query is blank".into()));
        }
        let url = self.api_url(
            &self.source_lang,
            &[
                ("action", "query"),
                ("list", "search"),
                ("srsearch", query),
                ("format", "json"),
            ],
        )?;
        let json = self.get_json(&url)?;
        let title = json
            .pointer("/query/search/0/title")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::NoSourceArticle(query.to_owned()))?;
        Ok(Article {
            title: title.to_owned(),
            url: self.article_url(&self.source_lang, title),
        })
    }

    pub fn resolve_langlink(&self, source_title: &str, target_lang: &str) -> Result<Article> {
        let url = self.api_url(
            &self.source_lang,
            &[
                ("action", "query"),
                ("prop", "langlinks"),
                ("titles", source_title),
                ("lllang", target_lang),
                ("format", "json"),
            ],
        )?;
        let json = self.get_json(&url)?;
        let no_target = || Error::NoTargetArticle {
            source_title: source_title.to_owned(),
            target_lang: target_lang.to_owned(),
        };
        let page = first_page(&json).ok_or_else(no_target)?;
        if page.get("missing").is_some() {
            return Err(Error::NoSourceArticle(source_title.to_owned()));
        }
        let title = page
            .get("langlinks")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
            .find(|l| l.get("lang").and_then(Value::as_str) == Some(target_lang))
            // legacy format puts the title under "*", formatversion=2 under "title"
            .and_then(|l| l.get("*").or_else(|| l.get("title")))
            .and_then(Value::as_str)
            .filter(|t| !t.is_empty())
            .ok_or_else(no_target)?;
        Ok(Article {
            title: title.to_owned(),
            url: self.article_url(target_lang, title),
        })
    }

    /// Plain-text extract of `title` on the `lang` wiki.
    pub fn fetch_article_text(&self, title: &str, lang: &str) -> Result<String> {
        let url = self.api_url(
            lang,
            &[
                ("action", "query"),
                ("prop", "extracts"),
                ("explaintext", "1"),
                ("titles", title),
                ("format", "json"),
            ],
        )?;
        let json = self.get_json(&url)?;
        let text = first_page(&json)
            .and_then(|p| p.get("extract"))
            .and_then(Value::as_str)
            .unwrap_or_default();
        if text.trim().is_empty() {
            return Err(Error::EmptyExtract(title.to_owned()));
        }
        Ok(text.to_owned())
    }

    /// Full resolution chain for one query.
    pub fn resolve(
        &self,
        query: &str,
        target_lang: &str,
        first_n: Option<usize>,
    ) -> Result<PivotResolution> {
        let source = self.find_source_article(query)?;
        let target = self.resolve_langlink(&source.title, target_lang)?;
        let mut text = self.fetch_article_text(&target.title, target_lang)?;
        if let Some(n) = first_n {
            text = truncate_first_n_words(&text, n);
        }
        Ok(PivotResolution {
            query: query.trim().to_owned(),
            source_title: source.title,
            source_url: source.url,
            target_lang: target_lang.to_owned(),
            target_title: target.title,
            target_url: target.url,
            extracted_text: text,
            truncated_to: first_n,
        })
    }

    pub fn pivot_query_vector(
        &self,
        query: &str,
        target_lang: &str,
        first_n: Option<usize>,
        index: &CorpusIndex,
    ) -> Result<QueryChannelResult> {
        let resolution = self.resolve(query, target_lang, first_n)?;
        let vector = build_vector(&analyze(&resolution.extracted_text, index.config()), index);
        Ok(QueryChannelResult {
            vector,
            provenance: Provenance::Wiki(resolution),
        })
    }
}

fn first_page(json: &Value) -> Option<&Value> {
    match json.pointer("/query/pages")? {
        Value::Object(map) => map.values().next(),
        Value::Array(list) => list.first(),
        _ => None,
    }
}

/// The first `n` whitespace-delimited words of `text`, joined by single
/// spaces.
///
/// Panics if `n == 0`.
pub fn truncate_first_n_words(text: &str, n: usize) -> String {
    assert!(n >= 1, "word limit must be at least 1");
    text.split_whitespace()
        .take(n)
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation() {
        assert_eq!(truncate_first_n_words("a b c", 5), "a b c");
        assert_eq!(truncate_first_n_words("a b c d", 2), "a b");
        assert_eq!(truncate_first_n_words("  a\n\nb\tc ", 2), "a b");
        assert_eq!(truncate_first_n_words("", 3), "");
    }

    #[test]
    fn article_urls_are_percent_encoded() {
        let dir = tempfile::tempdir().unwrap();
        let pivot = WikiPivot::new(FetchClient::replay(dir.path()).unwrap());
        assert_eq!(
            pivot.article_url("en", "Bubble sort"),
            "https://en.wikipedia.org/wiki/Bubble_sort"
        );
        assert_eq!(
            pivot.article_url("ru", "Монотонная функция"),
            "https://ru.wikipedia.org/wiki/%D0%9C%D0%BE%D0%BD%D0%BE%D1%82%D0%BE%D0%BD%D0%BD%D0%B0%D1%8F_%D1%84%D1%83%D0%BD%D0%BA%D1%86%D0%B8%D1%8F"
        );
    }

    #[test]
    fn endpoint_without_placeholder_serves_all_languages() {
        let dir = tempfile::tempdir().unwrap();
        let client = FetchClient::replay(dir.path()).unwrap();
        let pivot = WikiPivot::with_endpoint("http://localhost:9000/", client);
        let url = pivot.api_url("ru", &[("a", "b")]).unwrap();
        assert_eq!(url.as_str(), "http://localhost:9000/w/api.php?a=b");
        assert_eq!(pivot.article_url("ru", "X"), "http://localhost:9000/wiki/X");
    }

    #[test]
    fn blank_query_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let pivot = WikiPivot::new(FetchClient::replay(dir.path()).unwrap());
        assert!(matches!(
            pivot.find_source_article("   "),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn first_page_handles_both_formats() {
        let legacy: Value = serde_json::json!({"query": {"pages": {"7": {"title": "A"}}}});
        let v2: Value = serde_json::json!({"query": {"pages": [{"title": "B"}]}});
        assert_eq!(first_page(&legacy).unwrap()["title"], "A");
        assert_eq!(first_page(&v2).unwrap()["title"], "B");
    }
}
